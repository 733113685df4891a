//! Everything derived from a geometry and a background mesh size: the
//! classified mesh, macro partitions, the discrete spaces and quadratures.

use std::sync::Arc;

use crate::error::Result;
use crate::geometry::{
    build_boundary_quadrature, build_cut_quadrature, classify_elements, BoundaryQuadrature, CutCellQuadrature,
    ElementClassification, LevelSet,
};
use crate::mesh::{build_macro_partitions, Aabb, ActiveMesh, BackgroundMesh, MacroPartition};
use crate::spaces::DiscreteSpace;

/// Default quadrature order for assembly.
pub const ASSEMBLY_ORDER: usize = 2;

pub struct Discretization {
    pub geometry: Arc<dyn LevelSet>,
    pub mesh: BackgroundMesh,
    pub classes: Vec<ElementClassification>,
    pub active: ActiveMesh,
    pub partitions: Vec<MacroPartition>,
    pub space: DiscreteSpace,
    pub cut_quadrature: Vec<CutCellQuadrature>,
    pub boundary_quadrature: Vec<BoundaryQuadrature>,
}

impl Discretization {
    pub fn new(geometry: Arc<dyn LevelSet>, n: usize, bbox: Aabb) -> Result<Self> {
        let mesh = BackgroundMesh::structured(n, bbox)?;
        Self::from_mesh(geometry, mesh)
    }

    pub fn from_mesh(geometry: Arc<dyn LevelSet>, mesh: BackgroundMesh) -> Result<Self> {
        let classes = classify_elements(&mesh, geometry.as_ref())?;
        let active = ActiveMesh::extract(&mesh, &classes)?;
        let partitions = build_macro_partitions(&mesh, &active);
        let space = DiscreteSpace::new(&mesh, &active, &partitions);
        let cut_quadrature = build_cut_quadrature(&active, &partitions, &classes, ASSEMBLY_ORDER)?;
        let boundary_quadrature =
            build_boundary_quadrature(geometry.as_ref(), &active, &partitions, &classes, ASSEMBLY_ORDER)?;
        Ok(Self {
            geometry,
            mesh,
            classes,
            active,
            partitions,
            space,
            cut_quadrature,
            boundary_quadrature,
        })
    }

    pub fn cut_quadrature_of_order(&self, order: usize) -> Result<Vec<CutCellQuadrature>> {
        build_cut_quadrature(&self.active, &self.partitions, &self.classes, order)
    }

    pub fn boundary_quadrature_of_order(&self, order: usize) -> Result<Vec<BoundaryQuadrature>> {
        build_boundary_quadrature(
            self.geometry.as_ref(),
            &self.active,
            &self.partitions,
            &self.classes,
            order,
        )
    }

    /// Active-element index of the `c`-th cut element.
    pub fn cut_to_active(&self, c: usize) -> usize {
        self.active.active_index[self.active.cut_elements[c]].unwrap()
    }
}
