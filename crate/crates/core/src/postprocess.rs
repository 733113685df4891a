//! Pressure extension, divergence diagnostics and error norms.

use serde::Serialize;

use crate::assembly::Formulation;
use crate::discretization::Discretization;
use crate::error::{Error, Result};
use crate::interpolation::{ScalarField, VectorField};
use crate::point::{barycentric, Vec2};
use crate::quadrature::TriangleRule;
use crate::spaces::FieldCoefficients;

/// Quadrature order for error integrals.
pub const ERROR_ORDER: usize = 8;

/// For each cut element (in cut order), the active index of the nearest
/// interior element by barycenter distance, ties to the lower element index.
pub fn nearest_interior(disc: &Discretization) -> Result<Vec<usize>> {
    let interior = &disc.active.interior_elements;
    if interior.is_empty() {
        return Err(Error::NoInteriorElements);
    }
    let centers: Vec<Vec2> = interior.iter().map(|&t| disc.mesh.barycenter(t)).collect();
    Ok(disc
        .active
        .cut_elements
        .iter()
        .map(|&t| {
            let x = disc.mesh.barycenter(t);
            let mut best = (f64::INFINITY, usize::MAX);
            for (&s, &c) in interior.iter().zip(&centers) {
                let d = (x - c).norm_squared();
                if d < best.0 {
                    best = (d, s);
                }
            }
            disc.active.active_index[best.1].unwrap()
        })
        .collect())
}

/// Mean-free pressure with every cut element taking the value of its nearest
/// interior element. The mean is `|T|`-weighted over all active elements.
pub fn extend_pressure(disc: &Discretization, pressure: &[f64]) -> Result<Vec<f64>> {
    let targets = nearest_interior(disc)?;
    let (mut num, mut den) = (0.0, 0.0);
    for (eb, &p) in disc.space.elements.iter().zip(pressure) {
        num += eb.area * p;
        den += eb.area;
    }
    let mean = num / den;
    let mut out: Vec<f64> = pressure.iter().map(|p| p - mean).collect();
    for (c, &t) in disc.active.cut_elements.iter().enumerate() {
        out[disc.active.active_index[t].unwrap()] = pressure[targets[c]] - mean;
    }
    Ok(out)
}

/// Element-wise constant divergence and its largest magnitude.
pub fn divergence_field(disc: &Discretization, velocity: &[f64]) -> (Vec<f64>, f64) {
    let d = disc.space.divergence(velocity);
    let m = d.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    (d, m)
}

/// `‖u_h‖_{H¹(Ω_T)}` over full active elements.
pub fn h1_norm_on_active(disc: &Discretization, velocity: &[f64]) -> f64 {
    let rule = TriangleRule::new(2);
    let mut s = 0.0;
    for eb in &disc.space.elements {
        let c = eb.gather(velocity);
        for (k, st) in eb.sub.iter().enumerate() {
            for (x, w) in rule.map(&st.corners) {
                let (v, g, _) = eb.eval_on(&c, k, barycentric(&st.corners, x));
                s += w * (v.norm_squared() + g.contract(&g));
            }
        }
    }
    s.sqrt()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ErrorReport {
    pub n: usize,
    pub h: f64,
    pub e_u_l2: f64,
    pub e_u_h1: f64,
    pub e_u_h1_semi: f64,
    pub e_p_interior: f64,
    pub e_p_extended: f64,
    pub e_lambda: f64,
    pub div_max: f64,
    pub u_h1_norm: f64,
    pub residual: f64,
}

impl ErrorReport {
    pub const HEADER: [&'static str; 11] = [
        "n",
        "h",
        "e_u_L2",
        "e_u_H1",
        "e_u_H1_semi",
        "e_p_interior",
        "e_p_extended",
        "e_lambda_L2Gamma",
        "div_max",
        "u_H1_norm",
        "residual",
    ];

    /// The quantities whose convergence rates are reported.
    pub fn rated(&self) -> [f64; 6] {
        [
            self.e_u_l2,
            self.e_u_h1,
            self.e_u_h1_semi,
            self.e_p_interior,
            self.e_p_extended,
            self.e_lambda,
        ]
    }

    pub const RATED: [&'static str; 6] = [
        "e_u_L2",
        "e_u_H1",
        "e_u_H1_semi",
        "e_p_interior",
        "e_p_extended",
        "e_lambda_L2Gamma",
    ];
}

/// Observed order between two meshes with reported sizes `h0 > h1`.
pub fn rate(e0: f64, e1: f64, h0: f64, h1: f64) -> f64 {
    (e0 / e1).ln() / (h0 / h1).ln()
}

/// Least-squares slope of `log e` against `log h`.
pub fn fitted_rate(h: &[f64], e: &[f64]) -> f64 {
    let x: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let y: Vec<f64> = e.iter().map(|v| v.ln()).collect();
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Rates of every rated quantity between consecutive reports.
pub fn rates(reports: &[ErrorReport]) -> Vec<[f64; 6]> {
    reports
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0].rated(), w[1].rated());
            std::array::from_fn(|i| rate(a[i], b[i], w[0].h, w[1].h))
        })
        .collect()
}

/// Mean of `p` over `Ω` by cut quadrature.
fn domain_mean(quad: &[crate::geometry::CutCellQuadrature], p: &ScalarField) -> f64 {
    let (mut s, mut m) = (0.0, 0.0);
    for q in quad {
        for (&x, &w) in q.points.iter().zip(&q.weights) {
            s += w * p.value(x);
            m += w;
        }
    }
    s / m
}

/// Errors of a discrete solution against exact velocity and pressure.
///
/// Pressures are compared modulo constants: the interior error removes the
/// `Ω_I` means of both fields, the extended pressure is compared with `p`
/// minus its mean over `Ω`. The multiplier is compared with the boundary
/// stress `−∂_n u + p n` (Lagrange) or with `p` (Nitsche).
pub fn compute_errors(
    disc: &Discretization,
    formulation: Formulation,
    sol: &FieldCoefficients,
    u: &VectorField,
    p: &ScalarField,
) -> Result<ErrorReport> {
    let quad = disc.cut_quadrature_of_order(ERROR_ORDER)?;
    let bquad = disc.boundary_quadrature_of_order(ERROR_ORDER)?;

    let (mut l2, mut semi) = (0.0, 0.0);
    for (eb, q) in disc.space.elements.iter().zip(&quad) {
        let c = eb.gather(&sol.velocity);
        for ((&x, &w), &s) in q.points.iter().zip(&q.weights).zip(&q.sub_triangle) {
            let (v, g, _) = eb.eval_on(&c, s, barycentric(&eb.sub[s].corners, x));
            let ge = u
                .gradient(x)
                .ok_or_else(|| Error::Config("exact velocity needs a gradient".into()))?;
            l2 += w * (u.value(x) - v).norm_squared();
            semi += w * (ge - g).contract(&(ge - g));
        }
    }

    let interior: Vec<usize> = disc
        .active
        .interior_elements
        .iter()
        .map(|&t| disc.active.active_index[t].unwrap())
        .collect();
    let (mut pe_int, mut ph_int, mut area_int) = (0.0, 0.0, 0.0);
    for &k in &interior {
        let q = &quad[k];
        for (&x, &w) in q.points.iter().zip(&q.weights) {
            pe_int += w * p.value(x);
            ph_int += w * sol.pressure[k];
            area_int += w;
        }
    }
    let (pe_mean, ph_mean) = (pe_int / area_int, ph_int / area_int);
    let mut ep_int = 0.0;
    for &k in &interior {
        let q = &quad[k];
        for (&x, &w) in q.points.iter().zip(&q.weights) {
            ep_int += w * ((p.value(x) - pe_mean) - (sol.pressure[k] - ph_mean)).powi(2);
        }
    }

    let ext = extend_pressure(disc, &sol.pressure)?;
    let p_mean = domain_mean(&quad, p);
    let mut ep_ext = 0.0;
    for (k, q) in quad.iter().enumerate() {
        for (&x, &w) in q.points.iter().zip(&q.weights) {
            ep_ext += w * (p.value(x) - p_mean - ext[k]).powi(2);
        }
    }

    let mut el = 0.0;
    for (c, q) in bquad.iter().enumerate() {
        for ((&x, &w), &n) in q.points.iter().zip(&q.weights).zip(&q.normals) {
            let pe = p.value(x);
            el += w * match formulation {
                Formulation::Lagrange => {
                    let g = u.gradient(x).unwrap_or_default();
                    let exact = n * pe - g.mul_vec(n);
                    (exact - Vec2::new(sol.multiplier[2 * c], sol.multiplier[2 * c + 1])).norm_squared()
                }
                Formulation::Nitsche => (pe - sol.multiplier[c]).powi(2),
            };
        }
    }

    let (_, div_max) = divergence_field(disc, &sol.velocity);
    Ok(ErrorReport {
        n: 0,
        h: disc.active.h,
        e_u_l2: l2.sqrt(),
        e_u_h1: (l2 + semi).sqrt(),
        e_u_h1_semi: semi.sqrt(),
        e_p_interior: ep_int.sqrt(),
        e_p_extended: ep_ext.sqrt(),
        e_lambda: el.sqrt(),
        div_max,
        u_h1_norm: h1_norm_on_active(disc, &sol.velocity),
        residual: 0.0,
    })
}

/// `(‖u_x‖, ‖u_y‖)` in `L²(Ω)` and `max |u_y|` at boundary quadrature points.
pub fn velocity_component_norms(disc: &Discretization, velocity: &[f64]) -> (f64, f64, f64) {
    let (mut sx, mut sy) = (0.0, 0.0);
    for (eb, q) in disc.space.elements.iter().zip(&disc.cut_quadrature) {
        let c = eb.gather(velocity);
        for ((&x, &w), &s) in q.points.iter().zip(&q.weights).zip(&q.sub_triangle) {
            let (v, _, _) = eb.eval_on(&c, s, barycentric(&eb.sub[s].corners, x));
            sx += w * v.x * v.x;
            sy += w * v.y * v.y;
        }
    }
    let mut boundary_max: f64 = 0.0;
    for (c, q) in disc.boundary_quadrature.iter().enumerate() {
        let eb = &disc.space.elements[disc.cut_to_active(c)];
        let cl = eb.gather(velocity);
        for (&x, &s) in q.points.iter().zip(&q.sub_triangle) {
            let (v, _, _) = eb.eval_on(&cl, s, barycentric(&eb.sub[s].corners, x));
            boundary_max = boundary_max.max(v.y.abs());
        }
    }
    (sx.sqrt(), sy.sqrt(), boundary_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Disk;
    use crate::interpolation::pi_h;
    use crate::mesh::Aabb;
    use crate::point::Mat2;
    use std::sync::Arc;

    fn disc(n: usize) -> Discretization {
        Discretization::new(Arc::new(Disk::new(Vec2::ZERO, 0.5)), n, Aabb::default()).unwrap()
    }

    #[test]
    fn extension_of_constant_is_zero() {
        let d = disc(16);
        let ext = extend_pressure(&d, &vec![3.5; d.space.elements.len()]).unwrap();
        assert!(ext.iter().all(|v| v.abs() < 1e-13));
    }

    #[test]
    fn extension_copies_interior_value_after_mean_shift() {
        let d = disc(16);
        let mut p = vec![5.0; d.space.elements.len()];
        let (mut a_int, mut a_cut) = (0.0, 0.0);
        for &t in &d.active.cut_elements {
            p[d.active.active_index[t].unwrap()] = 2.0;
            a_cut += d.mesh.area(t);
        }
        for &t in &d.active.interior_elements {
            a_int += d.mesh.area(t);
        }
        let mean = (5.0 * a_int + 2.0 * a_cut) / (a_int + a_cut);
        let ext = extend_pressure(&d, &p).unwrap();
        assert!(ext.iter().all(|v| (v - (5.0 - mean)).abs() < 1e-13));
    }

    #[test]
    fn nearest_interior_is_close() {
        for n in [16, 32] {
            let d = disc(n);
            let h = d.active.h;
            for (c, &k) in nearest_interior(&d).unwrap().iter().enumerate() {
                let t = d.active.cut_elements[c];
                let s = d.active.active_elements[k];
                assert!(d.active.interior_elements.contains(&s));
                assert!(d.mesh.barycenter(t).distance(d.mesh.barycenter(s)) <= 3.0 * h);
            }
        }
    }

    #[test]
    fn exact_fields_have_zero_error() {
        let d = disc(16);
        let u = VectorField::new(|x| x).with_gradient(|_| Mat2([[1.0, 0.0], [0.0, 1.0]]));
        let p = ScalarField::new(|_| 1.0);
        let map = d.space.dofmap;
        for formulation in [Formulation::Lagrange, Formulation::Nitsche] {
            let mut sol = FieldCoefficients::zeros(&map.with_multiplier_components(match formulation {
                Formulation::Lagrange => 2,
                Formulation::Nitsche => 1,
            }));
            sol.velocity = pi_h(&d.mesh, &d.active, &d.partitions, &d.space, &u);
            sol.pressure.iter_mut().for_each(|v| *v = -4.0);
            if formulation == Formulation::Nitsche {
                sol.multiplier.iter_mut().for_each(|v| *v = 1.0);
            }
            let r = compute_errors(&d, formulation, &sol, &u, &p).unwrap();
            for (name, e) in ErrorReport::RATED.iter().zip(r.rated()) {
                assert!(e < 1e-12, "{name} = {e}");
            }
        }
    }

    #[test]
    fn zero_solution_measures_exact_norms() {
        let d = disc(16);
        let u = VectorField::constant(Vec2::new(1.0, 0.0)).with_gradient(|_| Mat2::ZERO);
        let p = ScalarField::new(|_| 0.0);
        let sol = FieldCoefficients::zeros(&d.space.dofmap.with_multiplier_components(2));
        let r = compute_errors(&d, Formulation::Lagrange, &sol, &u, &p).unwrap();
        let area: f64 = d.cut_quadrature.iter().map(|q| q.measure()).sum();
        assert!((r.e_u_l2 - area.sqrt()).abs() < 1e-12);
        assert_eq!(r.e_u_h1_semi, 0.0);
        assert_eq!(r.div_max, 0.0);
    }

    #[test]
    fn component_norms_and_active_norm_of_constant() {
        let d = disc(16);
        let v = pi_h(
            &d.mesh,
            &d.active,
            &d.partitions,
            &d.space,
            &VectorField::constant(Vec2::new(1.0, 0.0)),
        );
        let (ux, uy, uy_max) = velocity_component_norms(&d, &v);
        let area: f64 = d.cut_quadrature.iter().map(|q| q.measure()).sum();
        assert!((ux - area.sqrt()).abs() < 1e-12);
        assert!(uy < 1e-14 && uy_max < 1e-14);
        let active: f64 = d.space.elements.iter().map(|e| e.area).sum();
        assert!((h1_norm_on_active(&d, &v) - active.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rates_of_power_laws() {
        assert!((rate(1.0, 0.25, 0.1, 0.05) - 2.0).abs() < 1e-14);
        let h = [0.1, 0.05, 0.025, 0.0125];
        let e: Vec<f64> = h.iter().map(|x: &f64| 3.0 * x.powf(1.5)).collect();
        assert!((fitted_rate(&h, &e) - 1.5).abs() < 1e-12);
    }
}
