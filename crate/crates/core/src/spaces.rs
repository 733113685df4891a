//! The enriched velocity space: continuous P1 vector fields plus one
//! constant-divergence face bubble per face, defined on the barycentric
//! macro partition. Pressures are element-wise constants and boundary
//! multipliers are element-wise constants on the cut elements.

use crate::error::{Error, Result};
use crate::mesh::{ActiveMesh, BackgroundMesh, MacroPartition};
use crate::point::{barycentric, barycentric_gradients, signed_area, Mat2, Vec2};

/// Local velocity functions per macro element: six vertex modes
/// (`2 * vertex + component`) followed by three face bubbles (`6 + face`).
pub const LOCAL_DOFS: usize = 9;

/// Linear pieces of the nine local functions on one sub-triangle.
#[derive(Clone, Debug)]
pub struct SubTriangleBasis {
    pub corners: [Vec2; 3],
    pub area: f64,
    /// `values[k][c]`: value of local function `k` at corner `c`.
    pub values: [[Vec2; 3]; LOCAL_DOFS],
    pub gradients: [Mat2; LOCAL_DOFS],
}

impl SubTriangleBasis {
    fn new(corners: [Vec2; 3], values: [[Vec2; 3]; LOCAL_DOFS]) -> Self {
        let bg = barycentric_gradients(&corners);
        let gradients = values.map(|v| {
            let mut g = Mat2::ZERO;
            for c in 0..3 {
                g = g + Mat2::outer(v[c], bg[c]);
            }
            g
        });
        Self {
            corners,
            area: signed_area(corners[0], corners[1], corners[2]),
            values,
            gradients,
        }
    }

    pub fn eval(&self, k: usize, bary: [f64; 3]) -> Vec2 {
        let v = &self.values[k];
        v[0] * bary[0] + v[1] * bary[1] + v[2] * bary[2]
    }
}

/// Basis tables of one active macro element, with face bubbles already
/// multiplied by their global orientation sign.
#[derive(Clone, Debug)]
pub struct ElementBasis {
    pub element: usize,
    pub area: f64,
    pub h: f64,
    pub sub: [SubTriangleBasis; 6],
    /// Constant divergence of each local function on the element.
    pub divergence: [f64; LOCAL_DOFS],
    /// Global velocity DOF of each local function.
    pub dofs: [usize; LOCAL_DOFS],
    pub face_signs: [f64; 3],
}

impl ElementBasis {
    /// Sub-triangle containing `x` and its barycentric coordinates there.
    /// Shared edges go to the lowest sub-triangle index. Points slightly
    /// outside the element (curved boundary points) are assigned to the
    /// nearest sub-triangle and evaluated by extrapolation.
    pub fn locate(&self, x: Vec2) -> Option<(usize, [f64; 3])> {
        let mut best = (0, [0.0; 3], f64::NEG_INFINITY);
        for (s, st) in self.sub.iter().enumerate() {
            let b = barycentric(&st.corners, x);
            let m = b[0].min(b[1]).min(b[2]);
            if m >= -1e-12 {
                return Some((s, b));
            }
            if m > best.2 {
                best = (s, b, m);
            }
        }
        (best.2 > -0.25).then_some((best.0, best.1))
    }

    /// Value, gradient and divergence of the field with local coefficients `c`.
    pub fn eval_on(&self, c: &[f64; LOCAL_DOFS], s: usize, bary: [f64; 3]) -> (Vec2, Mat2, f64) {
        let st = &self.sub[s];
        let mut v = Vec2::ZERO;
        let mut g = Mat2::ZERO;
        let mut d = 0.0;
        for k in 0..LOCAL_DOFS {
            if c[k] != 0.0 {
                v += st.eval(k, bary) * c[k];
                g = g + st.gradients[k].scale(c[k]);
                d += self.divergence[k] * c[k];
            }
        }
        (v, g, d)
    }

    pub fn gather(&self, global: &[f64]) -> [f64; LOCAL_DOFS] {
        self.dofs.map(|d| global[d])
    }
}

/// Unsigned face bubble of local face `face` on the six sub-triangles:
/// `ν_F φ_F + (1/3) (x_T − x_{T,F}) / ‖x_F − x_T‖ φ_T`, returned as corner
/// values per sub-triangle, together with its divergence `α`.
pub fn build_face_bubble(part: &MacroPartition, face: usize) -> ([[Vec2; 3]; 6], f64) {
    let x_t = part.x_t;
    let x_f = part.x_f[face];
    let dist = x_f.distance(x_t);
    let nu = (x_f - x_t) * (1.0 / dist);
    let at_center = (x_t - part.vertices[face]) * (1.0 / (3.0 * dist));
    let mut out = [[Vec2::ZERO; 3]; 6];
    for (s, corners) in part.sub_triangles.iter().enumerate() {
        for (c, &p) in corners.iter().enumerate() {
            out[s][c] = if c == 0 {
                at_center
            } else if s / 2 == face && p == x_f {
                nu
            } else {
                Vec2::ZERO
            };
        }
    }
    (out, 1.0 / (3.0 * dist))
}

/// Layout of the global unknown vector `[velocity | pressure | multiplier]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DofMap {
    pub n_vertices: usize,
    pub n_faces: usize,
    pub n_elements: usize,
    pub n_cut: usize,
    /// 2 for the vector multiplier, 1 for the scalar boundary pressure.
    pub multiplier_components: usize,
}

impl DofMap {
    pub fn n_velocity(&self) -> usize {
        2 * self.n_vertices + self.n_faces
    }
    pub fn pressure_offset(&self) -> usize {
        self.n_velocity()
    }
    pub fn multiplier_offset(&self) -> usize {
        self.n_velocity() + self.n_elements
    }
    pub fn n_multiplier(&self) -> usize {
        self.multiplier_components * self.n_cut
    }
    pub fn total(&self) -> usize {
        self.multiplier_offset() + self.n_multiplier()
    }
    pub fn vertex_dof(&self, active_vertex: usize, component: usize) -> usize {
        2 * active_vertex + component
    }
    pub fn face_dof(&self, active_face: usize) -> usize {
        2 * self.n_vertices + active_face
    }
    pub fn with_multiplier_components(mut self, c: usize) -> Self {
        self.multiplier_components = c;
        self
    }
}

/// Coefficient vectors in `DofMap` ordering.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FieldCoefficients {
    pub velocity: Vec<f64>,
    pub pressure: Vec<f64>,
    pub multiplier: Vec<f64>,
}

impl FieldCoefficients {
    pub fn zeros(map: &DofMap) -> Self {
        Self {
            velocity: vec![0.0; map.n_velocity()],
            pressure: vec![0.0; map.n_elements],
            multiplier: vec![0.0; map.n_multiplier()],
        }
    }

    pub fn from_vector(map: &DofMap, x: &[f64]) -> Self {
        assert_eq!(x.len(), map.total());
        Self {
            velocity: x[..map.pressure_offset()].to_vec(),
            pressure: x[map.pressure_offset()..map.multiplier_offset()].to_vec(),
            multiplier: x[map.multiplier_offset()..].to_vec(),
        }
    }

    pub fn to_vector(&self) -> Vec<f64> {
        let mut v = self.velocity.clone();
        v.extend_from_slice(&self.pressure);
        v.extend_from_slice(&self.multiplier);
        v
    }
}

#[derive(Clone, Debug)]
pub struct DiscreteSpace {
    pub elements: Vec<ElementBasis>,
    pub dofmap: DofMap,
}

impl DiscreteSpace {
    pub fn new(mesh: &BackgroundMesh, active: &ActiveMesh, partitions: &[MacroPartition]) -> Self {
        let dofmap = DofMap {
            n_vertices: active.active_vertices.len(),
            n_faces: active.active_faces.len(),
            n_elements: active.active_elements.len(),
            n_cut: active.cut_elements.len(),
            multiplier_components: 2,
        };
        let elements = active
            .active_elements
            .iter()
            .zip(partitions)
            .map(|(&t, part)| element_basis(mesh, active, &dofmap, t, part))
            .collect();
        Self { elements, dofmap }
    }

    /// Value, gradient and divergence of `velocity` at `x` in active element `k`.
    pub fn eval_velocity(&self, velocity: &[f64], k: usize, x: Vec2) -> Result<(Vec2, Mat2, f64)> {
        let eb = &self.elements[k];
        let (s, bary) = eb.locate(x).ok_or(Error::PointOutsideElement {
            element: eb.element,
            x: x.x,
            y: x.y,
        })?;
        Ok(eb.eval_on(&eb.gather(velocity), s, bary))
    }

    /// Element-wise constant divergence of `velocity` on every active element.
    pub fn divergence(&self, velocity: &[f64]) -> Vec<f64> {
        self.elements
            .iter()
            .map(|eb| {
                let c = eb.gather(velocity);
                (0..LOCAL_DOFS).map(|k| eb.divergence[k] * c[k]).sum()
            })
            .collect()
    }
}

fn element_basis(
    mesh: &BackgroundMesh,
    active: &ActiveMesh,
    map: &DofMap,
    t: usize,
    part: &MacroPartition,
) -> ElementBasis {
    let tri = mesh.triangles[t];
    let faces = mesh.element_faces[t];
    let mut dofs = [0; LOCAL_DOFS];
    for j in 0..3 {
        let v = active.vertex_index[tri[j]].expect("active vertex");
        dofs[2 * j] = map.vertex_dof(v, 0);
        dofs[2 * j + 1] = map.vertex_dof(v, 1);
    }
    let mut face_signs = [1.0; 3];
    for i in 0..3 {
        let f = faces[i];
        dofs[6 + i] = map.face_dof(active.face_index[f].expect("active face"));
        if active.face_owner(mesh, f) != t {
            face_signs[i] = -1.0;
        }
    }

    let bubbles: [([[Vec2; 3]; 6], f64); 3] = std::array::from_fn(|i| build_face_bubble(part, i));
    let sub: [SubTriangleBasis; 6] = std::array::from_fn(|s| {
        let corners = part.sub_triangles[s];
        let mut values = [[Vec2::ZERO; 3]; LOCAL_DOFS];
        for (c, &p) in corners.iter().enumerate() {
            let lam = barycentric(&part.vertices, p);
            for j in 0..3 {
                values[2 * j][c] = Vec2::new(lam[j], 0.0);
                values[2 * j + 1][c] = Vec2::new(0.0, lam[j]);
            }
            for i in 0..3 {
                values[6 + i][c] = bubbles[i].0[s][c] * face_signs[i];
            }
        }
        SubTriangleBasis::new(corners, values)
    });
    let mut divergence = [0.0; LOCAL_DOFS];
    for k in 0..6 {
        divergence[k] = sub[0].gradients[k].trace();
    }
    for i in 0..3 {
        divergence[6 + i] = face_signs[i] * bubbles[i].1;
    }
    ElementBasis {
        element: t,
        area: part.area(),
        h: mesh.h[t],
        sub,
        divergence,
        dofs,
        face_signs,
    }
}

/// Largest jump of any global basis function across the interior faces of
/// the active mesh, sampled at five points per face sub-edge. Faces on
/// `∂Ω_T` have no neighbor and are skipped.
pub fn continuity_audit(mesh: &BackgroundMesh, active: &ActiveMesh, space: &DiscreteSpace) -> f64 {
    let mut worst: f64 = 0.0;
    for &f in &active.interior_faces {
        let (t0, Some(t1)) = mesh.faces[f].elements else {
            continue;
        };
        let (k0, k1) = (active.active_index[t0].unwrap(), active.active_index[t1].unwrap());
        let (e0, e1) = (&space.elements[k0], &space.elements[k1]);
        let i0 = mesh.local_face(t0, f).unwrap();
        let [a, b] = mesh.faces[f].vertices.map(|v| mesh.vertices[v]);
        // x_F is the corner shared by the two sub-triangles on the face.
        let x_f = e0.sub[2 * i0].corners[2];
        for (p, q) in [(a, x_f), (x_f, b)] {
            for s in 0..5 {
                let x = p.lerp(q, s as f64 / 4.0);
                let side = |eb: &ElementBasis| {
                    let (st, bary) = eb.locate(x).expect("face point inside element");
                    let vals: Vec<(usize, Vec2)> = (0..LOCAL_DOFS)
                        .map(|k| (eb.dofs[k], eb.sub[st].eval(k, bary)))
                        .collect();
                    vals
                };
                let v0 = side(e0);
                let v1 = side(e1);
                let lookup = |vals: &[(usize, Vec2)], d: usize| {
                    vals.iter()
                        .filter(|(g, _)| *g == d)
                        .fold(Vec2::ZERO, |acc, (_, v)| acc + *v)
                };
                for &(d, _) in v0.iter().chain(&v1) {
                    let jump = (lookup(&v0, d) - lookup(&v1, d)).norm();
                    worst = worst.max(jump);
                }
            }
        }
    }
    worst
}
