//! Bilinear and linear forms of the Lagrange-multiplier and Nitsche
//! formulations, assembled into one sparse saddle-point system.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::discretization::Discretization;
use crate::interpolation::VectorField;
use crate::point::{barycentric, Mat2, Vec2};
use crate::spaces::{DofMap, ElementBasis, LOCAL_DOFS};
use crate::sparse::CsrMatrix;

pub type Triplets = Vec<(usize, usize, f64)>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    #[default]
    Lagrange,
    Nitsche,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Parameters {
    /// Multiplier jump stabilization (Lagrange).
    pub gamma: f64,
    /// Nitsche penalty.
    pub gamma0: f64,
    /// Boundary-pressure jump stabilization (Nitsche).
    pub gamma1: f64,
    /// Ghost penalty (Nitsche).
    pub gamma2: f64,
    /// Weight of the curl stabilization on cut elements (Lagrange).
    pub curl_weight: f64,
    /// Angular velocity of the Coriolis term.
    pub omega: f64,
}

impl Default for Parameters {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            gamma0: 10.0,
            gamma1: 0.1,
            gamma2: 0.1,
            curl_weight: 1.0,
            omega: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRanges {
    pub velocity: Range<usize>,
    pub pressure: Range<usize>,
    pub multiplier: Range<usize>,
}

impl BlockRanges {
    pub fn new(map: &DofMap) -> Self {
        Self {
            velocity: 0..map.n_velocity(),
            pressure: map.pressure_offset()..map.multiplier_offset(),
            multiplier: map.multiplier_offset()..map.total(),
        }
    }
}

/// The individual forms, each stored at its global position.
#[derive(Clone, Debug)]
pub struct SystemParts {
    pub a: CsrMatrix,
    /// `b_h(q, v)`: pressure rows, velocity columns.
    pub b: CsrMatrix,
    /// `c(μ, v)`: velocity rows, multiplier columns (Lagrange only).
    pub c: CsrMatrix,
    /// Multiplier jump stabilization, unscaled.
    pub j: CsrMatrix,
    pub curl: CsrMatrix,
    pub coriolis: CsrMatrix,
    pub ghost: CsrMatrix,
    /// Nitsche boundary terms (consistency, symmetry, penalty, pressure coupling).
    pub nitsche: CsrMatrix,
}

#[derive(Clone, Debug)]
pub struct SaddleSystem {
    pub matrix: CsrMatrix,
    pub rhs: Vec<f64>,
    pub blocks: BlockRanges,
    pub dofmap: DofMap,
    pub formulation: Formulation,
    pub parameters: Parameters,
    pub parts: SystemParts,
}

/// Area of `T ∩ Ω` inside each macro sub-triangle of active element `k`.
fn sub_areas(disc: &Discretization, k: usize) -> [f64; 6] {
    let q = &disc.cut_quadrature[k];
    let mut w = [0.0; 6];
    for (&s, &wt) in q.sub_triangle.iter().zip(&q.weights) {
        w[s] += wt;
    }
    w
}

fn push_local(out: &mut Triplets, rows: &[usize], cols: &[usize], m: &[[f64; LOCAL_DOFS]; LOCAL_DOFS]) {
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            out.push((r, c, m[i][j]));
        }
    }
}

/// `∫_Ω ∇u : ∇v` with the gradients constant on each sub-triangle fragment.
pub fn assemble_a(disc: &Discretization) -> Triplets {
    let mut out = Vec::new();
    for (k, eb) in disc.space.elements.iter().enumerate() {
        let w = sub_areas(disc, k);
        let mut m = [[0.0; LOCAL_DOFS]; LOCAL_DOFS];
        for s in 0..6 {
            if w[s] == 0.0 {
                continue;
            }
            let g = &eb.sub[s].gradients;
            for i in 0..LOCAL_DOFS {
                for j in 0..LOCAL_DOFS {
                    m[i][j] += w[s] * g[i].contract(&g[j]);
                }
            }
        }
        push_local(&mut out, &eb.dofs, &eb.dofs, &m);
    }
    out
}

/// `b_h(q, v) = (q, ∇·v)_{Ω_T}` over full elements: pressure row of element
/// `T`, entry `|T| ∇·φ` for every local velocity function.
pub fn assemble_b_h(disc: &Discretization, map: &DofMap) -> Triplets {
    let mut out = Vec::new();
    for (k, eb) in disc.space.elements.iter().enumerate() {
        let row = map.pressure_offset() + k;
        for i in 0..LOCAL_DOFS {
            out.push((row, eb.dofs[i], eb.area * eb.divergence[i]));
        }
    }
    out
}

/// Basis values and gradients at a point of `Γ`, using the linear pieces of
/// sub-triangle `s` (extrapolated when the point lies just outside it).
fn boundary_eval(eb: &ElementBasis, s: usize, x: Vec2) -> ([Vec2; LOCAL_DOFS], [Mat2; LOCAL_DOFS]) {
    let st = &eb.sub[s];
    let bary = barycentric(&st.corners, x);
    (std::array::from_fn(|k| st.eval(k, bary)), st.gradients)
}

/// `c(μ, v) = ∫_Γ v·μ` for the vector multiplier: velocity rows, multiplier columns.
pub fn assemble_c(disc: &Discretization, map: &DofMap) -> Triplets {
    let mut out = Vec::new();
    for (c, q) in disc.boundary_quadrature.iter().enumerate() {
        let eb = &disc.space.elements[disc.cut_to_active(c)];
        let mut m = [Vec2::ZERO; LOCAL_DOFS];
        for ((&x, &w), &s) in q.points.iter().zip(&q.weights).zip(&q.sub_triangle) {
            let (vals, _) = boundary_eval(eb, s, x);
            for i in 0..LOCAL_DOFS {
                m[i] += vals[i] * w;
            }
        }
        let col = map.multiplier_offset() + 2 * c;
        for i in 0..LOCAL_DOFS {
            out.push((eb.dofs[i], col, m[i].x));
            out.push((eb.dofs[i], col + 1, m[i].y));
        }
    }
    out
}

/// Jump stabilization of element-wise constant multipliers over faces
/// between two cut elements: `h_F |F| [μ]·[w]` with `h_F` the mean diameter.
pub fn assemble_j(disc: &Discretization, map: &DofMap) -> Triplets {
    let comps = map.multiplier_components;
    let mut out = Vec::new();
    for &f in &disc.active.interior_faces_cut {
        let (t0, t1) = disc.mesh.faces[f].elements;
        let t1 = t1.expect("interior face");
        let h_f = 0.5 * (disc.mesh.h[t0] + disc.mesh.h[t1]);
        let w = h_f * disc.mesh.face_length(f);
        let c0 = disc.active.cut_index[t0].unwrap();
        let c1 = disc.active.cut_index[t1].unwrap();
        for d in 0..comps {
            let i0 = map.multiplier_offset() + comps * c0 + d;
            let i1 = map.multiplier_offset() + comps * c1 + d;
            out.extend([(i0, i0, w), (i1, i1, w), (i0, i1, -w), (i1, i0, -w)]);
        }
    }
    out
}

/// `Σ_{T ∈ T_Γ} h_T² (∇×u, ∇×v)_T` over full cut elements.
pub fn assemble_curl_stab(disc: &Discretization) -> Triplets {
    let mut out = Vec::new();
    for &t in &disc.active.cut_elements {
        let eb = &disc.space.elements[disc.active.active_index[t].unwrap()];
        let h2 = eb.h * eb.h;
        let mut m = [[0.0; LOCAL_DOFS]; LOCAL_DOFS];
        for st in &eb.sub {
            let curl = st.gradients.map(|g| g.curl());
            for i in 0..LOCAL_DOFS {
                for j in 0..LOCAL_DOFS {
                    m[i][j] += h2 * st.area * curl[i] * curl[j];
                }
            }
        }
        push_local(&mut out, &eb.dofs, &eb.dofs, &m);
    }
    out
}

/// `(2ω × u, v)_Ω` with `ω` along the z-axis; test rows, trial columns.
pub fn assemble_coriolis(disc: &Discretization, omega: f64) -> Triplets {
    let mut out = Vec::new();
    if omega == 0.0 {
        return out;
    }
    for (k, eb) in disc.space.elements.iter().enumerate() {
        let q = &disc.cut_quadrature[k];
        let mut m = [[0.0; LOCAL_DOFS]; LOCAL_DOFS];
        for ((&x, &w), &s) in q.points.iter().zip(&q.weights).zip(&q.sub_triangle) {
            let st = &eb.sub[s];
            let bary = barycentric(&st.corners, x);
            let vals: [Vec2; LOCAL_DOFS] = std::array::from_fn(|i| st.eval(i, bary));
            for i in 0..LOCAL_DOFS {
                for j in 0..LOCAL_DOFS {
                    m[i][j] += 2.0 * omega * w * vals[j].cross(vals[i]);
                }
            }
        }
        push_local(&mut out, &eb.dofs, &eb.dofs, &m);
    }
    out
}

/// Sub-triangle of element `t` adjacent to the half of local face `i` that
/// contains global vertex `v`.
fn face_sub_triangle(disc: &Discretization, t: usize, i: usize, v: usize) -> usize {
    if disc.mesh.triangles[t][(i + 1) % 3] == v {
        2 * i
    } else {
        2 * i + 1
    }
}

/// Ghost penalty `Σ_F h_F ∫_F [∇u] : [∇v]` over faces of cut elements whose
/// neighbor is also active. Gradients are constant on each half of a face.
pub fn assemble_ghost_penalty(disc: &Discretization) -> Triplets {
    let mut out = Vec::new();
    for &f in &disc.active.interior_faces {
        let (t0, t1) = disc.mesh.faces[f].elements;
        let t1 = t1.expect("interior face");
        if !disc.active.is_cut(t0) && !disc.active.is_cut(t1) {
            continue;
        }
        let e0 = &disc.space.elements[disc.active.active_index[t0].unwrap()];
        let e1 = &disc.space.elements[disc.active.active_index[t1].unwrap()];
        let i0 = disc.mesh.local_face(t0, f).unwrap();
        let i1 = disc.mesh.local_face(t1, f).unwrap();
        let h_f = 0.5 * (e0.h + e1.h);
        let x_f = disc.partitions[disc.active.active_index[t0].unwrap()].x_f[i0];
        let mut dofs: Vec<usize> = e0.dofs.iter().chain(&e1.dofs).copied().collect();
        dofs.sort_unstable();
        dofs.dedup();
        let n = dofs.len();
        let mut m = vec![vec![0.0; n]; n];
        for v in disc.mesh.faces[f].vertices {
            let len = disc.mesh.vertices[v].distance(x_f);
            let s0 = face_sub_triangle(disc, t0, i0, v);
            let s1 = face_sub_triangle(disc, t1, i1, v);
            let mut jumps = vec![Mat2::ZERO; n];
            for k in 0..LOCAL_DOFS {
                let a = dofs.binary_search(&e0.dofs[k]).unwrap();
                jumps[a] = jumps[a] + e0.sub[s0].gradients[k];
                let b = dofs.binary_search(&e1.dofs[k]).unwrap();
                jumps[b] = jumps[b] - e1.sub[s1].gradients[k];
            }
            for a in 0..n {
                for b in 0..n {
                    m[a][b] += h_f * len * jumps[a].contract(&jumps[b]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                out.push((dofs[a], dofs[b], m[a][b]));
            }
        }
    }
    out
}

/// Gradient-jump penalty on the six internal edges of the macro partition of
/// every cut element, where the composite basis has its kinks.
pub fn assemble_internal_ghost_penalty(disc: &Discretization) -> Triplets {
    let mut out = Vec::new();
    for &t in &disc.active.cut_elements {
        let k = disc.active.active_index[t].unwrap();
        let eb = &disc.space.elements[k];
        let part = &disc.partitions[k];
        let mut m = [[0.0; LOCAL_DOFS]; LOCAL_DOFS];
        for i in 0..3 {
            let next = 2 * ((i + 1) % 3);
            let edges = [
                (2 * i, 2 * i + 1, part.x_f[i]),
                (2 * i + 1, next, part.vertices[(i + 2) % 3]),
            ];
            for (s0, s1, end) in edges {
                let len = part.x_t.distance(end);
                let jumps: [Mat2; LOCAL_DOFS] =
                    std::array::from_fn(|a| eb.sub[s0].gradients[a] - eb.sub[s1].gradients[a]);
                for a in 0..LOCAL_DOFS {
                    for b in 0..LOCAL_DOFS {
                        m[a][b] += eb.h * len * jumps[a].contract(&jumps[b]);
                    }
                }
            }
        }
        push_local(&mut out, &eb.dofs, &eb.dofs, &m);
    }
    out
}

/// Nitsche boundary terms with a scalar boundary pressure `ρ` per cut element:
/// `−∫ ∂_n u·v − ∫ ∂_n v·u + (γ0/h_T) ∫ u·v + ∫ ρ n·v − ∫ ϖ n·u`.
pub fn assemble_nitsche_boundary(disc: &Discretization, map: &DofMap, gamma0: f64) -> Triplets {
    let mut out = Vec::new();
    for (c, q) in disc.boundary_quadrature.iter().enumerate() {
        let eb = &disc.space.elements[disc.cut_to_active(c)];
        let pen = gamma0 / eb.h;
        let mut m = [[0.0; LOCAL_DOFS]; LOCAL_DOFS];
        let mut coupling = [0.0; LOCAL_DOFS];
        for (((&x, &w), &n), &s) in q.points.iter().zip(&q.weights).zip(&q.normals).zip(&q.sub_triangle) {
            let (vals, grads) = boundary_eval(eb, s, x);
            let dn: [Vec2; LOCAL_DOFS] = std::array::from_fn(|k| grads[k].mul_vec(n));
            for i in 0..LOCAL_DOFS {
                for j in 0..LOCAL_DOFS {
                    m[i][j] += w * (pen * vals[j].dot(vals[i]) - dn[j].dot(vals[i]) - dn[i].dot(vals[j]));
                }
                coupling[i] += w * n.dot(vals[i]);
            }
        }
        push_local(&mut out, &eb.dofs, &eb.dofs, &m);
        let r = map.multiplier_offset() + c;
        for i in 0..LOCAL_DOFS {
            out.push((eb.dofs[i], r, coupling[i]));
            out.push((r, eb.dofs[i], -coupling[i]));
        }
    }
    out
}

/// Right-hand side: `∫_Ω f·v` in velocity rows and the boundary data in the
/// rows selected by the formulation.
pub fn assemble_rhs(
    disc: &Discretization,
    map: &DofMap,
    formulation: Formulation,
    params: &Parameters,
    f: &VectorField,
    u_gamma: &VectorField,
) -> Vec<f64> {
    let mut rhs = vec![0.0; map.total()];
    for (k, eb) in disc.space.elements.iter().enumerate() {
        let q = &disc.cut_quadrature[k];
        for ((&x, &w), &s) in q.points.iter().zip(&q.weights).zip(&q.sub_triangle) {
            let fx = f.value(x);
            if fx == Vec2::ZERO {
                continue;
            }
            let st = &eb.sub[s];
            let bary = barycentric(&st.corners, x);
            for i in 0..LOCAL_DOFS {
                rhs[eb.dofs[i]] += w * fx.dot(st.eval(i, bary));
            }
        }
    }
    for (c, q) in disc.boundary_quadrature.iter().enumerate() {
        let eb = &disc.space.elements[disc.cut_to_active(c)];
        for (((&x, &w), &n), &s) in q.points.iter().zip(&q.weights).zip(&q.normals).zip(&q.sub_triangle) {
            let g = u_gamma.value(x);
            match formulation {
                Formulation::Lagrange => {
                    let r = map.multiplier_offset() + 2 * c;
                    rhs[r] -= w * g.x;
                    rhs[r + 1] -= w * g.y;
                }
                Formulation::Nitsche => {
                    let (vals, grads) = boundary_eval(eb, s, x);
                    let pen = params.gamma0 / eb.h;
                    for i in 0..LOCAL_DOFS {
                        rhs[eb.dofs[i]] += w * (pen * g.dot(vals[i]) - grads[i].mul_vec(n).dot(g));
                    }
                    rhs[map.multiplier_offset() + c] -= w * n.dot(g);
                }
            }
        }
    }
    rhs
}

fn scaled(t: &Triplets, s: f64) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
    t.iter().map(move |&(r, c, v)| (r, c, s * v))
}

/// Assembles the full system of the chosen formulation.
pub fn build_system(
    disc: &Discretization,
    formulation: Formulation,
    params: &Parameters,
    f: &VectorField,
    u_gamma: &VectorField,
) -> SaddleSystem {
    let map = match formulation {
        Formulation::Lagrange => disc.space.dofmap.with_multiplier_components(2),
        Formulation::Nitsche => disc.space.dofmap.with_multiplier_components(1),
    };
    let n = map.total();
    let a = assemble_a(disc);
    let b = assemble_b_h(disc, &map);
    let j = assemble_j(disc, &map);
    let coriolis = assemble_coriolis(disc, params.omega);
    let (c, curl, ghost, nitsche) = match formulation {
        Formulation::Lagrange => (assemble_c(disc, &map), assemble_curl_stab(disc), Vec::new(), Vec::new()),
        Formulation::Nitsche => (
            Vec::new(),
            Vec::new(),
            [assemble_ghost_penalty(disc), assemble_internal_ghost_penalty(disc)].concat(),
            assemble_nitsche_boundary(disc, &map, params.gamma0),
        ),
    };

    let mut all: Triplets = Vec::new();
    all.extend(a.iter().copied());
    all.extend(b.iter().map(|&(r, c, v)| (c, r, -v)));
    all.extend(b.iter().copied());
    all.extend(c.iter().copied());
    all.extend(c.iter().map(|&(r, c, v)| (c, r, -v)));
    let (j_weight, curl_weight) = match formulation {
        Formulation::Lagrange => (params.gamma, params.curl_weight),
        Formulation::Nitsche => (params.gamma1, 0.0),
    };
    all.extend(scaled(&j, j_weight));
    if curl_weight != 0.0 {
        all.extend(scaled(&curl, curl_weight));
    }
    all.extend(coriolis.iter().copied());
    all.extend(scaled(&ghost, params.gamma2));
    all.extend(nitsche.iter().copied());

    let parts = SystemParts {
        a: CsrMatrix::from_triplets(n, n, &a),
        b: CsrMatrix::from_triplets(n, n, &b),
        c: CsrMatrix::from_triplets(n, n, &c),
        j: CsrMatrix::from_triplets(n, n, &j),
        curl: CsrMatrix::from_triplets(n, n, &curl),
        coriolis: CsrMatrix::from_triplets(n, n, &coriolis),
        ghost: CsrMatrix::from_triplets(n, n, &ghost),
        nitsche: CsrMatrix::from_triplets(n, n, &nitsche),
    };
    SaddleSystem {
        matrix: CsrMatrix::from_triplets(n, n, &all),
        rhs: assemble_rhs(disc, &map, formulation, params, f, u_gamma),
        blocks: BlockRanges::new(&map),
        dofmap: map,
        formulation,
        parameters: *params,
        parts,
    }
}

pub fn build_lagrange_system(
    disc: &Discretization,
    params: &Parameters,
    f: &VectorField,
    u_gamma: &VectorField,
) -> SaddleSystem {
    build_system(disc, Formulation::Lagrange, params, f, u_gamma)
}

pub fn build_nitsche_system(
    disc: &Discretization,
    params: &Parameters,
    f: &VectorField,
    u_gamma: &VectorField,
) -> SaddleSystem {
    build_system(disc, Formulation::Nitsche, params, f, u_gamma)
}

impl SaddleSystem {
    /// Largest `|K[r][c] + K[c][r]|` over pairs with `r` in `rows` and `c` in `cols`.
    pub fn skew_defect(&self, rows: Range<usize>, cols: Range<usize>) -> f64 {
        self.matrix
            .iter()
            .filter(|(r, c, _)| rows.contains(r) && cols.contains(c))
            .map(|(r, c, v)| (v + self.matrix.get(c, r)).abs())
            .fold(0.0, f64::max)
    }
}
