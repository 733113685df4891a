//! Analytic fields and the projections used for reference solutions and
//! error reporting: the divergence-commuting velocity interpolant, the
//! element-mean pressure projection and the multiplier projection on `Γ`.

use std::sync::Arc;

use crate::geometry::{BoundaryQuadrature, CutCellQuadrature};
use crate::mesh::{ActiveMesh, BackgroundMesh, MacroPartition};
use crate::point::{Mat2, Vec2};
use crate::quadrature::{line_rule, TriangleRule};
use crate::spaces::DiscreteSpace;

type VectorFn = Arc<dyn Fn(Vec2) -> Vec2 + Send + Sync>;
type MatrixFn = Arc<dyn Fn(Vec2) -> Mat2 + Send + Sync>;
type ScalarFn = Arc<dyn Fn(Vec2) -> f64 + Send + Sync>;

/// A vector field with an optional analytic gradient (`g[i][k] = ∂_k v_i`).
#[derive(Clone)]
pub struct VectorField {
    value: VectorFn,
    gradient: Option<MatrixFn>,
}

impl VectorField {
    pub fn new(f: impl Fn(Vec2) -> Vec2 + Send + Sync + 'static) -> Self {
        Self {
            value: Arc::new(f),
            gradient: None,
        }
    }

    pub fn constant(c: Vec2) -> Self {
        Self::new(move |_| c).with_gradient(|_| Mat2::ZERO)
    }

    pub fn with_gradient(mut self, g: impl Fn(Vec2) -> Mat2 + Send + Sync + 'static) -> Self {
        self.gradient = Some(Arc::new(g));
        self
    }

    pub fn value(&self, x: Vec2) -> Vec2 {
        (self.value)(x)
    }

    pub fn gradient(&self, x: Vec2) -> Option<Mat2> {
        self.gradient.as_ref().map(|g| g(x))
    }

    pub fn divergence(&self, x: Vec2) -> Option<f64> {
        self.gradient(x).map(|g| g.trace())
    }

    /// Compares the analytic gradient against central differences.
    pub fn gradient_consistent(&self, points: &[Vec2], rel_tol: f64) -> bool {
        let Some(g) = &self.gradient else { return true };
        let e = 1e-6;
        points.iter().all(|&x| {
            let gx = (self.value(x + Vec2::new(e, 0.0)) - self.value(x - Vec2::new(e, 0.0))) * (0.5 / e);
            let gy = (self.value(x + Vec2::new(0.0, e)) - self.value(x - Vec2::new(0.0, e))) * (0.5 / e);
            let fd = Mat2([[gx.x, gy.x], [gx.y, gy.y]]);
            let a = g(x);
            let scale = a.contract(&a).sqrt().max(1.0);
            (a - fd).contract(&(a - fd)).sqrt() <= rel_tol * scale
        })
    }
}

#[derive(Clone)]
pub struct ScalarField {
    value: ScalarFn,
    gradient: Option<VectorFn>,
}

impl ScalarField {
    pub fn new(f: impl Fn(Vec2) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            value: Arc::new(f),
            gradient: None,
        }
    }

    pub fn with_gradient(mut self, g: impl Fn(Vec2) -> Vec2 + Send + Sync + 'static) -> Self {
        self.gradient = Some(Arc::new(g));
        self
    }

    pub fn value(&self, x: Vec2) -> f64 {
        (self.value)(x)
    }

    pub fn gradient(&self, x: Vec2) -> Option<Vec2> {
        self.gradient.as_ref().map(|g| g(x))
    }

    pub fn gradient_consistent(&self, points: &[Vec2], rel_tol: f64) -> bool {
        let Some(g) = &self.gradient else { return true };
        let e = 1e-6;
        points.iter().all(|&x| {
            let fd = Vec2::new(
                (self.value(x + Vec2::new(e, 0.0)) - self.value(x - Vec2::new(e, 0.0))) * (0.5 / e),
                (self.value(x + Vec2::new(0.0, e)) - self.value(x - Vec2::new(0.0, e))) * (0.5 / e),
            );
            let a = g(x);
            (a - fd).norm() <= rel_tol * a.norm().max(1.0)
        })
    }
}

/// Quadrature order used for full-element projections.
const PROJECTION_ORDER: usize = 8;

/// Clément-type vertex values: on each element the L² projection of `v`
/// onto linears is evaluated at the vertex, and the patch values are
/// averaged with element areas as weights. Returned per active vertex.
pub fn clement_interpolate(
    mesh: &BackgroundMesh,
    active: &ActiveMesh,
    partitions: &[MacroPartition],
    v: &VectorField,
) -> Vec<Vec2> {
    let rule = TriangleRule::new(PROJECTION_ORDER);
    let nv = active.active_vertices.len();
    let mut sum = vec![Vec2::ZERO; nv];
    let mut weight = vec![0.0; nv];
    for (part, &t) in partitions.iter().zip(&active.active_elements) {
        let area = part.area();
        let mut rhs = [Vec2::ZERO; 3];
        for sub in &part.sub_triangles {
            for (x, w) in rule.map(sub) {
                let lam = crate::point::barycentric(&part.vertices, x);
                let fx = v.value(x);
                for j in 0..3 {
                    rhs[j] += fx * (w * lam[j]);
                }
            }
        }
        // Inverse of the P1 mass matrix |T|/12 (I + J) is (3/|T|)(4I − J).
        let total = rhs[0] + rhs[1] + rhs[2];
        for j in 0..3 {
            let c = (rhs[j] * 4.0 - total) * (3.0 / area);
            let gv = active.vertex_index[mesh.triangles[t][j]].unwrap();
            sum[gv] += c * area;
            weight[gv] += area;
        }
    }
    sum.iter().zip(&weight).map(|(s, w)| *s * (1.0 / w)).collect()
}

/// Outward unit normal of local face `i` of the counterclockwise triangle `p`.
pub fn face_normal(p: &[Vec2; 3], i: usize) -> Vec2 {
    let e = p[(i + 2) % 3] - p[(i + 1) % 3];
    Vec2::new(e.y, -e.x) * (1.0 / e.norm())
}

/// Divergence-commuting interpolant: Clément vertex values plus face-bubble
/// coefficients chosen so every face flux `∫_F π_h v · n_F` matches `v`.
pub fn pi_h(
    mesh: &BackgroundMesh,
    active: &ActiveMesh,
    partitions: &[MacroPartition],
    space: &DiscreteSpace,
    v: &VectorField,
) -> Vec<f64> {
    let map = space.dofmap;
    let vertex_values = clement_interpolate(mesh, active, partitions, v);
    let mut out = vec![0.0; map.n_velocity()];
    for (i, val) in vertex_values.iter().enumerate() {
        out[map.vertex_dof(i, 0)] = val.x;
        out[map.vertex_dof(i, 1)] = val.y;
    }
    let (gp, gw) = line_rule(9);
    for (af, &f) in active.active_faces.iter().enumerate() {
        let owner = active.face_owner(mesh, f);
        let k = active.active_index[owner].unwrap();
        let part = &partitions[k];
        let i = mesh.local_face(owner, f).unwrap();
        let n = face_normal(&part.vertices, i);
        let a = part.vertices[(i + 1) % 3];
        let b = part.vertices[(i + 2) % 3];
        let x_f = part.x_f[i];
        let mut target = 0.0;
        for (p, q) in [(a, x_f), (x_f, b)] {
            let len = p.distance(q);
            for (&s, &w) in gp.iter().zip(&gw) {
                target += w * len * v.value(p.lerp(q, s)).dot(n);
            }
        }
        let tri = mesh.triangles[owner];
        let va = vertex_values[active.vertex_index[tri[(i + 1) % 3]].unwrap()];
        let vb = vertex_values[active.vertex_index[tri[(i + 2) % 3]].unwrap()];
        let len = a.distance(b);
        let p1_flux = (va + vb).dot(n) * 0.5 * len;
        let nu = (x_f - part.x_t).normalized();
        let bubble_flux = nu.dot(n) * 0.5 * len;
        assert!(bubble_flux > 0.0, "face bubble with nonpositive flux");
        out[map.face_dof(af)] = (target - p1_flux) / bubble_flux;
    }
    out
}

/// Element values `|T|⁻¹ ∫_{T∩Ω} p`, per active element.
pub fn pi_t(space: &DiscreteSpace, quad: &[CutCellQuadrature], p: &ScalarField) -> Vec<f64> {
    space
        .elements
        .iter()
        .zip(quad)
        .map(|(eb, q)| {
            let s: f64 = q.points.iter().zip(&q.weights).map(|(&x, &w)| w * p.value(x)).sum();
            s / eb.area
        })
        .collect()
}

/// Mean of `mu` over each `Γ ∩ T`, two components per cut element.
pub fn pi_gamma(bquad: &[BoundaryQuadrature], mu: &VectorField) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * bquad.len());
    for q in bquad {
        let mut s = Vec2::ZERO;
        for (&x, &w) in q.points.iter().zip(&q.weights) {
            s += mu.value(x) * w;
        }
        let m = s * (1.0 / q.length());
        out.push(m.x);
        out.push(m.y);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretization::Discretization;
    use crate::geometry::{Disk, ElementLabel, LevelSet};
    use crate::mesh::Aabb;
    use crate::point::barycentric;
    use crate::problems::{manufactured_pressure, manufactured_velocity};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn disc(n: usize) -> Discretization {
        Discretization::new(std::sync::Arc::new(Disk::new(Vec2::ZERO, 0.5)), n, Aabb::default()).unwrap()
    }

    fn clement(d: &Discretization, v: &VectorField) -> Vec<Vec2> {
        clement_interpolate(&d.mesh, &d.active, &d.partitions, v)
    }

    fn interpolate(d: &Discretization, v: &VectorField) -> Vec<f64> {
        pi_h(&d.mesh, &d.active, &d.partitions, &d.space, v)
    }

    fn linear() -> VectorField {
        VectorField::new(|x: Vec2| Vec2::new(1.0 + 2.0 * x.x - x.y, 3.0 - x.x + 0.5 * x.y))
    }

    #[test]
    fn clement_reproduces_linears_and_constants() {
        let d = disc(8);
        for (i, val) in clement(&d, &linear()).iter().enumerate() {
            let x = d.mesh.vertices[d.active.active_vertices[i]];
            assert!((*val - linear().value(x)).norm() < 1e-12);
        }
        for val in clement(&d, &VectorField::constant(Vec2::new(1.0, 1.0))) {
            assert!((val - Vec2::new(1.0, 1.0)).norm() < 1e-13);
        }
    }

    /// Element L² projection onto linears by brute force: a uniform m×m
    /// sub-triangulation with the edge-midpoint rule feeds 3×3 normal
    /// equations solved by Cramer's rule.
    fn brute_projection(p: [Vec2; 3], f: impl Fn(Vec2) -> f64) -> [f64; 3] {
        let m = 64;
        let mut g = [[0.0; 3]; 3];
        let mut r = [0.0; 3];
        let at = |i: f64, j: f64| p[0] + (p[1] - p[0]) * (i / m as f64) + (p[2] - p[0]) * (j / m as f64);
        let area = 0.5 * (p[1] - p[0]).cross(p[2] - p[0]) / (m * m) as f64;
        let mut add = |tri: [Vec2; 3]| {
            for k in 0..3 {
                let x = (tri[k] + tri[(k + 1) % 3]) * 0.5;
                let phi = [1.0, x.x, x.y];
                let w = area / 3.0;
                for a in 0..3 {
                    r[a] += w * phi[a] * f(x);
                    for b in 0..3 {
                        g[a][b] += w * phi[a] * phi[b];
                    }
                }
            }
        };
        for i in 0..m {
            for j in 0..m - i {
                let (fi, fj) = (i as f64, j as f64);
                add([at(fi, fj), at(fi + 1.0, fj), at(fi, fj + 1.0)]);
                if i + j + 1 < m {
                    add([at(fi + 1.0, fj), at(fi + 1.0, fj + 1.0), at(fi, fj + 1.0)]);
                }
            }
        }
        let det = |m: [[f64; 3]; 3]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let d = det(g);
        std::array::from_fn(|c| {
            let mut mc = g;
            for row in 0..3 {
                mc[row][c] = r[row];
            }
            det(mc) / d
        })
    }

    #[test]
    fn clement_matches_brute_force_patch_average() {
        let d = disc(8);
        let f = |x: Vec2| x.x * x.x;
        let got = clement(&d, &VectorField::new(move |x| Vec2::new(f(x), 0.0)));
        let nv = d.active.active_vertices.len();
        let mut sum = vec![0.0; nv];
        let mut weight = vec![0.0; nv];
        for &t in &d.active.active_elements {
            let p = d.mesh.corners(t);
            let c = brute_projection(p, f);
            let area = d.mesh.area(t);
            for j in 0..3 {
                let gv = d.active.vertex_index[d.mesh.triangles[t][j]].unwrap();
                sum[gv] += area * (c[0] + c[1] * p[j].x + c[2] * p[j].y);
                weight[gv] += area;
            }
        }
        for i in 0..nv {
            assert!((got[i].x - sum[i] / weight[i]).abs() < 1e-8, "vertex {i}");
            assert_eq!(got[i].y, 0.0);
        }
    }

    #[test]
    fn pi_h_reproduces_linear_fields() {
        let d = disc(8);
        let c = interpolate(&d, &linear());
        let map = d.space.dofmap;
        for f in 0..map.n_faces {
            assert!(c[map.face_dof(f)].abs() < 1e-12);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (k, eb) in d.space.elements.iter().enumerate() {
            for _ in 0..5 {
                let (a, b): (f64, f64) = (rng.gen(), rng.gen());
                let (a, b) = if a + b > 1.0 { (1.0 - a, 1.0 - b) } else { (a, b) };
                let p = d.mesh.corners(eb.element);
                let x = p[0] + (p[1] - p[0]) * a + (p[2] - p[0]) * b;
                let (v, _, _) = d.space.eval_velocity(&c, k, x).unwrap();
                assert!((v - linear().value(x)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn pi_h_maps_solenoidal_field_to_zero_divergence() {
        let d = disc(16);
        let c = interpolate(&d, &manufactured_velocity());
        for div in d.space.divergence(&c) {
            assert!(div.abs() <= 1e-11, "{div}");
        }
    }

    /// Flux of `c` and of `v` through face `f` with the orientation of its owner.
    fn face_fluxes(d: &Discretization, c: &[f64], v: &VectorField, f: usize) -> (f64, f64) {
        let owner = d.active.face_owner(&d.mesh, f);
        let k = d.active.active_index[owner].unwrap();
        let i = d.mesh.local_face(owner, f).unwrap();
        let part = &d.partitions[k];
        let n = face_normal(&part.vertices, i);
        let ends = [part.vertices[(i + 1) % 3], part.x_f[i], part.vertices[(i + 2) % 3]];
        let (mut discrete, mut exact) = (0.0, 0.0);
        // Dense midpoint sums over both halves of the face.
        let m = 2000;
        for half in 0..2 {
            let (a, b) = (ends[half], ends[half + 1]);
            let len = a.distance(b);
            for j in 0..m {
                let x = a.lerp(b, (j as f64 + 0.5) / m as f64);
                let (vh, _, _) = d.space.eval_velocity(c, k, x).unwrap();
                discrete += vh.dot(n) * len / m as f64;
                exact += v.value(x).dot(n) * len / m as f64;
            }
        }
        (discrete, exact)
    }

    #[test]
    fn pi_h_preserves_face_fluxes() {
        let d = disc(16);
        let v = VectorField::new(|x: Vec2| Vec2::new((2.0 * x.y).sin() + x.x * x.x, (x.x * x.y).exp()));
        let c = interpolate(&d, &v);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = d.active.active_faces[rng.gen_range(0..d.active.active_faces.len())];
            let (discrete, exact) = face_fluxes(&d, &c, &v, f);
            assert!((discrete - exact).abs() < 1e-9 * d.mesh.face_length(f), "face {f}");
        }
    }

    #[test]
    fn pi_h_commutes_with_divergence() {
        let d = disc(8);
        let v = VectorField::new(|x: Vec2| Vec2::new(x.x.powi(3) - x.y, (x.x + x.y).sin()));
        let c = interpolate(&d, &v);
        let div = d.space.divergence(&c);
        let (gp, gw) = line_rule(11);
        for (k, eb) in d.space.elements.iter().enumerate() {
            let p = d.mesh.corners(eb.element);
            let mut flux = 0.0;
            for i in 0..3 {
                let (a, b) = (p[(i + 1) % 3], p[(i + 2) % 3]);
                let n = face_normal(&p, i);
                for (&s, &w) in gp.iter().zip(&gw) {
                    flux += w * a.distance(b) * v.value(a.lerp(b, s)).dot(n);
                }
            }
            assert!((div[k] - flux / eb.area).abs() < 1e-11);
        }
    }

    fn interpolation_errors(n: usize) -> (f64, f64, f64) {
        let d = disc(n);
        let u = manufactured_velocity();
        let c = interpolate(&d, &u);
        let quad = d.cut_quadrature_of_order(6).unwrap();
        let (mut l2, mut h1) = (0.0, 0.0);
        for (eb, q) in d.space.elements.iter().zip(&quad) {
            let cl = eb.gather(&c);
            for ((&x, &w), &s) in q.points.iter().zip(&q.weights).zip(&q.sub_triangle) {
                let (v, g, _) = eb.eval_on(&cl, s, barycentric(&eb.sub[s].corners, x));
                let ge = u.gradient(x).unwrap() - g;
                l2 += w * (u.value(x) - v).norm_squared();
                h1 += w * ge.contract(&ge);
            }
        }
        (2.0 / n as f64, l2.sqrt(), h1.sqrt())
    }

    #[test]
    fn pi_h_approximation_orders() {
        let r: Vec<_> = [16, 32, 64, 128].iter().map(|&n| interpolation_errors(n)).collect();
        for w in r.windows(2) {
            let l2 = (w[0].1 / w[1].1).log2();
            let h1 = (w[0].2 / w[1].2).log2();
            assert!(l2 >= 1.9 && h1 >= 0.9, "rates {l2} {h1}");
        }
    }

    #[test]
    fn pi_t_uses_full_element_measure() {
        let d = disc(16);
        let vals = pi_t(&d.space, &d.cut_quadrature, &ScalarField::new(|_| 1.0));
        for (k, &t) in d.active.active_elements.iter().enumerate() {
            match d.classes[t].label {
                ElementLabel::Interior => assert!((vals[k] - 1.0).abs() < 1e-14),
                _ => assert!((vals[k] - d.classes[t].inside_fraction).abs() < 1e-13),
            }
        }
    }

    #[test]
    fn pi_t_matches_sampled_mean_on_interior_element() {
        let d = disc(16);
        let p = manufactured_pressure();
        let vals = pi_t(&d.space, &d.cut_quadrature, &p);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &t in d.active.interior_elements.iter().take(5) {
            // Jittered sampling: one uniform point in each cell of an m×m
            // sub-triangulation.
            let c = d.mesh.corners(t);
            let m = 300;
            let mut s = 0.0;
            let mut count = 0;
            for i in 0..m {
                for j in 0..m - i {
                    for upper in [false, true] {
                        if upper && i + j + 1 >= m {
                            continue;
                        }
                        let (a, b): (f64, f64) = (rng.gen(), rng.gen());
                        let (a, b) = if a + b > 1.0 { (1.0 - a, 1.0 - b) } else { (a, b) };
                        let (a, b) = if upper { (1.0 - a, 1.0 - b) } else { (a, b) };
                        let u = (i as f64 + a) / m as f64;
                        let v = (j as f64 + b) / m as f64;
                        s += p.value(c[0] + (c[1] - c[0]) * u + (c[2] - c[0]) * v);
                        count += 1;
                    }
                }
            }
            let m = count;
            let k = d.active.active_index[t].unwrap();
            assert!((vals[k] - s / m as f64).abs() < 1e-4 * p.value(d.mesh.barycenter(t)).abs().max(1.0));
        }
    }

    #[test]
    fn pi_gamma_constants_and_normals() {
        let d = disc(16);
        let vals = pi_gamma(&d.boundary_quadrature, &VectorField::constant(Vec2::new(3.0, -1.0)));
        for c in vals.chunks(2) {
            assert!((c[0] - 3.0).abs() < 1e-14 && (c[1] + 1.0).abs() < 1e-14);
        }
        let normal = VectorField::new(|x: Vec2| x.normalized());
        for c in pi_gamma(&d.boundary_quadrature, &normal).chunks(2) {
            let m = (c[0] * c[0] + c[1] * c[1]).sqrt();
            assert!(m <= 1.0 + 1e-14 && m > 0.99);
        }
    }

    #[test]
    fn pi_gamma_matches_dense_curve_average() {
        // Dense trapezoid sums along the projected sub-segments of each cut.
        let d = disc(16);
        let geom = Disk::new(Vec2::ZERO, 0.5);
        let bq = d.boundary_quadrature_of_order(10).unwrap();
        let vals = pi_gamma(&bq, &VectorField::new(|x| x));
        for (c, &t) in d.active.cut_elements.iter().enumerate() {
            let iface = d.classes[t].interface.unwrap();
            let nodes: Vec<Vec2> = (0..=4)
                .map(|k| geom.project(iface.roots[0].lerp(iface.roots[1], k as f64 / 4.0)))
                .collect();
            let (mut s, mut len) = (Vec2::ZERO, 0.0);
            let m = 4000;
            for seg in nodes.windows(2) {
                let l = seg[0].distance(seg[1]);
                for j in 0..=m {
                    let w = if j == 0 || j == m { 0.5 } else { 1.0 } * l / m as f64;
                    s += geom.project(seg[0].lerp(seg[1], j as f64 / m as f64)) * w;
                    len += w;
                }
            }
            let mean = s * (1.0 / len);
            assert!((vals[2 * c] - mean.x).abs() < 1e-8 && (vals[2 * c + 1] - mean.y).abs() < 1e-8);
        }
    }
}
