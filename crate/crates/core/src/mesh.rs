//! Background triangulation, the active mesh extracted from it and the
//! barycentric macro-element partition carried by every active triangle.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{ElementClassification, ElementLabel};
use crate::point::{signed_area, Vec2};

/// Axis-aligned box `[min, max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aabb {
    pub min: Vec2,
    pub max: Vec2,
}

impl Aabb {
    pub fn new(min: Vec2, max: Vec2) -> Self {
        Self { min, max }
    }

    pub fn area(&self) -> f64 {
        (self.max.x - self.min.x) * (self.max.y - self.min.y)
    }
}

impl Default for Aabb {
    fn default() -> Self {
        Self::new(Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0))
    }
}

/// An edge of the background mesh. `vertices` are sorted ascending and
/// `elements.0 < elements.1` whenever the face is interior.
#[derive(Clone, Debug)]
pub struct Face {
    pub vertices: [usize; 2],
    pub elements: (usize, Option<usize>),
}

#[derive(Clone, Debug)]
pub struct BackgroundMesh {
    pub vertices: Vec<Vec2>,
    /// Counterclockwise vertex triples.
    pub triangles: Vec<[usize; 3]>,
    pub faces: Vec<Face>,
    /// `element_faces[t][i]` is the face opposite local vertex `i`.
    pub element_faces: Vec<[usize; 3]>,
    /// Element diameters.
    pub h: Vec<f64>,
    pub bbox: Aabb,
}

impl BackgroundMesh {
    /// Uniform `n × n` grid of squares, each split along its
    /// lower-left to upper-right diagonal.
    pub fn structured(n: usize, bbox: Aabb) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!("mesh divisions must be >= 2, got {n}")));
        }
        if !(bbox.max.x > bbox.min.x && bbox.max.y > bbox.min.y) {
            return Err(Error::Config("empty box".into()));
        }
        let dx = (bbox.max.x - bbox.min.x) / n as f64;
        let dy = (bbox.max.y - bbox.min.y) / n as f64;
        let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
        for j in 0..=n {
            for i in 0..=n {
                // Pin the last row/column to the box to keep the total area exact.
                let x = if i == n { bbox.max.x } else { bbox.min.x + i as f64 * dx };
                let y = if j == n { bbox.max.y } else { bbox.min.y + j as f64 * dy };
                vertices.push(Vec2::new(x, y));
            }
        }
        let id = |i: usize, j: usize| j * (n + 1) + i;
        let mut triangles = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for i in 0..n {
                let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
                triangles.push([a, b, c]);
                triangles.push([a, c, d]);
            }
        }
        Ok(Self::from_triangles(vertices, triangles, bbox))
    }

    /// Builds face and adjacency tables for a conforming triangulation.
    pub fn from_triangles(vertices: Vec<Vec2>, triangles: Vec<[usize; 3]>, bbox: Aabb) -> Self {
        let mut lookup: HashMap<[usize; 2], usize> = HashMap::new();
        let mut faces: Vec<Face> = Vec::new();
        let mut element_faces = Vec::with_capacity(triangles.len());
        for (t, tri) in triangles.iter().enumerate() {
            let mut local = [0; 3];
            for (i, slot) in local.iter_mut().enumerate() {
                let (a, b) = (tri[(i + 1) % 3], tri[(i + 2) % 3]);
                let key = [a.min(b), a.max(b)];
                *slot = *lookup.entry(key).or_insert_with(|| {
                    faces.push(Face {
                        vertices: key,
                        elements: (t, None),
                    });
                    faces.len() - 1
                });
                let f = &mut faces[*slot];
                if f.elements.0 != t {
                    debug_assert!(f.elements.1.is_none(), "non-manifold edge");
                    f.elements.1 = Some(t);
                }
            }
            element_faces.push(local);
        }
        let h = triangles
            .iter()
            .map(|tri| {
                let p = tri.map(|v| vertices[v]);
                p[0].distance(p[1]).max(p[1].distance(p[2])).max(p[2].distance(p[0]))
            })
            .collect();
        Self {
            vertices,
            triangles,
            faces,
            element_faces,
            h,
            bbox,
        }
    }

    pub fn corners(&self, t: usize) -> [Vec2; 3] {
        self.triangles[t].map(|v| self.vertices[v])
    }

    pub fn area(&self, t: usize) -> f64 {
        let p = self.corners(t);
        signed_area(p[0], p[1], p[2])
    }

    pub fn barycenter(&self, t: usize) -> Vec2 {
        let p = self.corners(t);
        (p[0] + p[1] + p[2]) * (1.0 / 3.0)
    }

    pub fn face_length(&self, f: usize) -> f64 {
        let [a, b] = self.faces[f].vertices;
        self.vertices[a].distance(self.vertices[b])
    }

    /// Local index (opposite vertex) of face `f` in element `t`.
    pub fn local_face(&self, t: usize, f: usize) -> Option<usize> {
        self.element_faces[t].iter().position(|&g| g == f)
    }

    pub fn neighbor(&self, t: usize, f: usize) -> Option<usize> {
        match self.faces[f].elements {
            (a, Some(b)) if a == t => Some(b),
            (a, Some(_)) => Some(a),
            _ => None,
        }
    }
}

/// The active mesh `T_h` together with its cut (`T_Γ`) and interior (`T_I`)
/// subsets and the face sets used by the stabilization terms.
#[derive(Clone, Debug)]
pub struct ActiveMesh {
    pub labels: Vec<ElementLabel>,
    /// Background ids of active elements, ascending.
    pub active_elements: Vec<usize>,
    pub cut_elements: Vec<usize>,
    pub interior_elements: Vec<usize>,
    /// Background element id → position in `active_elements`.
    pub active_index: Vec<Option<usize>>,
    /// Background element id → position in `cut_elements`.
    pub cut_index: Vec<Option<usize>>,
    /// Background vertex ids touched by active elements, ascending.
    pub active_vertices: Vec<usize>,
    pub vertex_index: Vec<Option<usize>>,
    /// Background face ids of faces of active elements, ascending.
    pub active_faces: Vec<usize>,
    pub face_index: Vec<Option<usize>>,
    /// Faces shared by two cut elements, `F_i(T_Γ)`.
    pub interior_faces_cut: Vec<usize>,
    /// Faces shared by two active elements.
    pub interior_faces: Vec<usize>,
    /// Faces with exactly one active neighbor, i.e. on `∂Ω_T`.
    pub mesh_boundary_faces: Vec<usize>,
    /// Reporting mesh size `1/√N` with `N` the number of active vertices.
    pub h: f64,
}

impl ActiveMesh {
    pub fn extract(mesh: &BackgroundMesh, classes: &[ElementClassification]) -> Result<Self> {
        let ne = mesh.triangles.len();
        let labels: Vec<ElementLabel> = classes.iter().map(|c| c.label).collect();
        assert_eq!(labels.len(), ne);
        let mut active_index = vec![None; ne];
        let mut cut_index = vec![None; ne];
        let mut active_elements = Vec::new();
        let mut cut_elements = Vec::new();
        let mut interior_elements = Vec::new();
        for (t, label) in labels.iter().enumerate() {
            match label {
                ElementLabel::Exterior => continue,
                ElementLabel::Cut => {
                    cut_index[t] = Some(cut_elements.len());
                    cut_elements.push(t);
                }
                ElementLabel::Interior => interior_elements.push(t),
            }
            active_index[t] = Some(active_elements.len());
            active_elements.push(t);
        }
        if active_elements.is_empty() {
            return Err(Error::EmptyActiveMesh);
        }

        let mut vertex_index = vec![None; mesh.vertices.len()];
        let mut face_index = vec![None; mesh.faces.len()];
        for &t in &active_elements {
            for v in mesh.triangles[t] {
                vertex_index[v] = Some(0);
            }
            for f in mesh.element_faces[t] {
                face_index[f] = Some(0);
            }
        }
        let active_vertices = number(&mut vertex_index);
        let active_faces = number(&mut face_index);

        let is_active = |t: usize| active_index[t].is_some();
        let is_cut = |t: usize| cut_index[t].is_some();
        let mut interior_faces_cut = Vec::new();
        let mut interior_faces = Vec::new();
        let mut mesh_boundary_faces = Vec::new();
        for &f in &active_faces {
            match mesh.faces[f].elements {
                (a, Some(b)) if is_active(a) && is_active(b) => {
                    interior_faces.push(f);
                    if is_cut(a) && is_cut(b) {
                        interior_faces_cut.push(f);
                    }
                }
                _ => mesh_boundary_faces.push(f),
            }
        }
        let h = 1.0 / (active_vertices.len() as f64).sqrt();
        Ok(Self {
            labels,
            active_elements,
            cut_elements,
            interior_elements,
            active_index,
            cut_index,
            active_vertices,
            vertex_index,
            active_faces,
            face_index,
            interior_faces_cut,
            interior_faces,
            mesh_boundary_faces,
            h,
        })
    }

    /// Active neighbor of `t` across `f`, if any.
    pub fn active_neighbor(&self, mesh: &BackgroundMesh, t: usize, f: usize) -> Option<usize> {
        mesh.neighbor(t, f).filter(|&n| self.active_index[n].is_some())
    }

    /// The element owning the orientation of face `f`: the lower-index active
    /// neighbor. Face normals and face-bubble signs point away from it.
    pub fn face_owner(&self, mesh: &BackgroundMesh, f: usize) -> usize {
        match mesh.faces[f].elements {
            (a, _) if self.active_index[a].is_some() => a,
            (_, Some(b)) => b,
            (a, None) => a,
        }
    }

    pub fn is_cut(&self, t: usize) -> bool {
        self.cut_index[t].is_some()
    }
}

fn number(marks: &mut [Option<usize>]) -> Vec<usize> {
    let mut ids = Vec::new();
    for (i, m) in marks.iter_mut().enumerate() {
        if m.is_some() {
            *m = Some(ids.len());
            ids.push(i);
        }
    }
    ids
}

/// Barycentric refinement of one active element into six sub-triangles.
///
/// Local face `i` is opposite vertex `i`. Sub-triangles `2i` and `2i + 1` are
/// `(x_T, v_{i+1}, x_F)` and `(x_T, x_F, v_{i+2})`; together they form the
/// sub-simplex `T_F` attached to face `i`.
#[derive(Clone, Debug)]
pub struct MacroPartition {
    pub element: usize,
    pub vertices: [Vec2; 3],
    pub x_t: Vec2,
    pub x_f: [Vec2; 3],
    pub sub_triangles: [[Vec2; 3]; 6],
}

impl MacroPartition {
    pub fn new(vertices: [Vec2; 3], x_f: [Vec2; 3], element: usize) -> Self {
        let x_t = (vertices[0] + vertices[1] + vertices[2]) * (1.0 / 3.0);
        let mut sub_triangles = [[Vec2::ZERO; 3]; 6];
        for i in 0..3 {
            let a = vertices[(i + 1) % 3];
            let b = vertices[(i + 2) % 3];
            sub_triangles[2 * i] = [x_t, a, x_f[i]];
            sub_triangles[2 * i + 1] = [x_t, x_f[i], b];
        }
        Self {
            element,
            vertices,
            x_t,
            x_f,
            sub_triangles,
        }
    }

    /// Standalone partition using face midpoints.
    pub fn with_midpoints(vertices: [Vec2; 3]) -> Self {
        let x_f = std::array::from_fn(|i| (vertices[(i + 1) % 3] + vertices[(i + 2) % 3]) * 0.5);
        Self::new(vertices, x_f, 0)
    }

    pub fn area(&self) -> f64 {
        signed_area(self.vertices[0], self.vertices[1], self.vertices[2])
    }
}

/// Face points `x_F` for every face of the active mesh, indexed by background
/// face id (`None` for inactive faces).
pub fn face_points(mesh: &BackgroundMesh, active: &ActiveMesh) -> Vec<Option<Vec2>> {
    let mut out = vec![None; mesh.faces.len()];
    for &f in &active.active_faces {
        let [a, b] = mesh.faces[f].vertices;
        let (pa, pb) = (mesh.vertices[a], mesh.vertices[b]);
        let x = match mesh.faces[f].elements {
            (t, Some(s)) if active.active_index[t].is_some() && active.active_index[s].is_some() => {
                barycenter_line_crossing(mesh.barycenter(t), mesh.barycenter(s), pa, pb)
            }
            _ => (pa + pb) * 0.5,
        };
        out[f] = Some(x);
    }
    out
}

/// Intersection of the segment `[c0, c1]` with the face `[a, b]`.
fn barycenter_line_crossing(c0: Vec2, c1: Vec2, a: Vec2, b: Vec2) -> Vec2 {
    let d = c1 - c0;
    let e = b - a;
    let denom = d.cross(e);
    assert!(denom.abs() > 0.0, "barycenter line parallel to its face");
    // c0 + s d = a + t e
    let t = (c0 - a).cross(d) / e.cross(d);
    let s = (a - c0).cross(e) / denom;
    assert!(
        (0.0..=1.0).contains(&s) && t > 0.0 && t < 1.0,
        "barycenter segment does not cross its shared face"
    );
    a + e * t
}

pub fn build_macro_partitions(mesh: &BackgroundMesh, active: &ActiveMesh) -> Vec<MacroPartition> {
    let xf = face_points(mesh, active);
    active
        .active_elements
        .iter()
        .map(|&t| {
            let faces = mesh.element_faces[t];
            let x_f = faces.map(|f| xf[f].expect("face of an active element"));
            MacroPartition::new(mesh.corners(t), x_f, t)
        })
        .collect()
}
