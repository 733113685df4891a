//! Browser bindings: mesh classification, a Stokes solve on a user-placed
//! disk, and the rotating-frame sweep.

use cutstokes::assembly::{Formulation, Parameters};
use cutstokes::experiments::{solve_problem, RunConfig};
use cutstokes::geometry::ElementLabel;
use cutstokes::point::barycentric;
use cutstokes::postprocess::{extend_pressure, velocity_component_norms};
use cutstokes::problems::{manufactured, rotating_channel};
use wasm_bindgen::prelude::*;

/// Largest mesh size accepted from the page.
pub const MAX_N: usize = 96;

fn config(cx: f64, cy: f64, radius: f64, n: usize) -> Result<RunConfig, String> {
    if !(2..=MAX_N).contains(&n) {
        return Err(format!("mesh size must be between 2 and {MAX_N}"));
    }
    let c = RunConfig {
        center: [cx, cy],
        radius,
        n,
        ..RunConfig::default()
    };
    c.validate().map_err(|e| e.to_string())?;
    Ok(c)
}

#[wasm_bindgen(getter_with_clone)]
pub struct MeshView {
    /// Corner coordinates, six numbers per background triangle.
    pub triangles: Vec<f64>,
    /// 0 interior, 1 cut, 2 exterior.
    pub labels: Vec<u8>,
    pub area: f64,
    pub boundary_length: f64,
}

#[wasm_bindgen]
pub fn classify(cx: f64, cy: f64, radius: f64, n: usize) -> Result<MeshView, String> {
    let d = config(cx, cy, radius, n)?.discretize(n).map_err(|e| e.to_string())?;
    let mut triangles = Vec::with_capacity(6 * d.mesh.triangles.len());
    for t in 0..d.mesh.triangles.len() {
        for p in d.mesh.corners(t) {
            triangles.extend([p.x, p.y]);
        }
    }
    let labels = d
        .classes
        .iter()
        .map(|c| match c.label {
            ElementLabel::Interior => 0,
            ElementLabel::Cut => 1,
            ElementLabel::Exterior => 2,
        })
        .collect();
    Ok(MeshView {
        triangles,
        labels,
        area: d.cut_quadrature.iter().map(|q| q.measure()).sum(),
        boundary_length: d.boundary_quadrature.iter().map(|q| q.length()).sum(),
    })
}

#[wasm_bindgen(getter_with_clone)]
pub struct SolveView {
    /// Corner coordinates, six numbers per macro sub-triangle.
    pub triangles: Vec<f64>,
    /// Velocity at sub-triangle centroids, two numbers each.
    pub velocity: Vec<f64>,
    /// Extended pressure per sub-triangle.
    pub pressure: Vec<f64>,
    pub unknowns: usize,
    pub e_u_l2: f64,
    pub e_u_h1: f64,
    pub e_p: f64,
    pub div_max: f64,
    pub residual: f64,
}

/// Manufactured flow on the given disk; `nitsche` selects the scalar
/// boundary formulation.
#[wasm_bindgen]
pub fn solve(cx: f64, cy: f64, radius: f64, n: usize, nitsche: bool) -> Result<SolveView, String> {
    let c = config(cx, cy, radius, n)?;
    let formulation = if nitsche {
        Formulation::Nitsche
    } else {
        Formulation::Lagrange
    };
    let problem = manufactured();
    let d = c.discretize(n).map_err(|e| e.to_string())?;
    let sol = solve_problem(d, formulation, &c.parameters, &problem).map_err(|e| e.to_string())?;
    let report = sol.errors(&problem).map_err(|e| e.to_string())?;
    let d = &sol.discretization;
    let ext = extend_pressure(d, &sol.coefficients.pressure).map_err(|e| e.to_string())?;
    let mut view = SolveView {
        triangles: Vec::new(),
        velocity: Vec::new(),
        pressure: Vec::new(),
        unknowns: d.space.dofmap.total(),
        e_u_l2: report.e_u_l2,
        e_u_h1: report.e_u_h1,
        e_p: report.e_p_extended,
        div_max: report.div_max,
        residual: report.residual,
    };
    for (k, eb) in d.space.elements.iter().enumerate() {
        let local = eb.gather(&sol.coefficients.velocity);
        for (s, st) in eb.sub.iter().enumerate() {
            for p in st.corners {
                view.triangles.extend([p.x, p.y]);
            }
            let centroid = (st.corners[0] + st.corners[1] + st.corners[2]) * (1.0 / 3.0);
            let (v, _, _) = eb.eval_on(&local, s, barycentric(&st.corners, centroid));
            view.velocity.extend([v.x, v.y]);
            view.pressure.push(ext[k]);
        }
    }
    Ok(view)
}

/// `[‖u_x‖, ‖u_y‖]` per angular velocity for the uniform boundary flow on
/// the centered disk of radius 0.5.
#[wasm_bindgen]
pub fn coriolis_sweep(n: usize, omegas: Vec<f64>) -> Result<Vec<f64>, String> {
    let c = config(0.0, 0.0, 0.5, n)?;
    let mut out = Vec::with_capacity(2 * omegas.len());
    for omega in omegas {
        if omega.is_nan() || omega < 0.0 {
            return Err("angular velocities must be nonnegative".into());
        }
        let params = Parameters { omega, ..c.parameters };
        let d = c.discretize(n).map_err(|e| e.to_string())?;
        let sol =
            solve_problem(d, Formulation::Lagrange, &params, &rotating_channel(omega)).map_err(|e| e.to_string())?;
        let (ux, uy, _) = velocity_component_norms(&sol.discretization, &sol.coefficients.velocity);
        out.extend([ux, uy]);
    }
    Ok(out)
}
