//! Run configuration and the end-to-end experiments: convergence study on
//! the manufactured flow, rotating-frame study, and single solves.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::assembly::{build_system, Formulation, Parameters};
use crate::discretization::Discretization;
use crate::error::{Error, Result};
use crate::geometry::Disk;
use crate::mesh::Aabb;
use crate::point::Vec2;
use crate::postprocess::{
    compute_errors, divergence_field, extend_pressure, rates, velocity_component_norms, ErrorReport,
};
use crate::problems::{manufactured, rotating_channel, StokesProblem};
use crate::solve::{solve_direct, SolveStats};
use crate::spaces::FieldCoefficients;
use crate::vtk::{write_fields, FieldData};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Only `"disk"` is available.
    pub geometry: String,
    pub center: [f64; 2],
    pub radius: f64,
    /// `[x_min, y_min, x_max, y_max]`.
    #[serde(rename = "box")]
    pub bbox: [f64; 4],
    pub mesh_sizes: Vec<usize>,
    /// Mesh size of single solves and of the rotating-frame study.
    pub n: usize,
    pub formulation: Formulation,
    pub omegas: Vec<f64>,
    pub output: PathBuf,
    /// Also write `fields_*.vtk`.
    pub write_fields: bool,
    pub parameters: Parameters,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            geometry: "disk".into(),
            center: [0.0, 0.0],
            radius: 0.5,
            bbox: [-1.0, -1.0, 1.0, 1.0],
            mesh_sizes: vec![16, 32, 64, 128],
            n: 64,
            formulation: Formulation::Lagrange,
            omegas: vec![0.0, 100.0, 1000.0, 10000.0],
            output: PathBuf::from("output"),
            write_fields: true,
            parameters: Parameters::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let c: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.geometry != "disk" {
            return bad(format!("unknown geometry {:?}", self.geometry));
        }
        if !(self.radius > 0.0) {
            return bad("radius must be positive".into());
        }
        if !(self.bbox[2] > self.bbox[0] && self.bbox[3] > self.bbox[1]) {
            return bad("box must have positive extent".into());
        }
        if self.mesh_sizes.is_empty() || self.mesh_sizes.windows(2).any(|w| w[1] <= w[0]) {
            return bad("mesh_sizes must be nonempty and strictly increasing".into());
        }
        if self.mesh_sizes[0] < 2 || self.n < 2 {
            return bad("mesh sizes must be at least 2".into());
        }
        if self.omegas.iter().any(|&w| !(w >= 0.0)) || self.omegas.windows(2).any(|w| w[1] <= w[0]) {
            return bad("omegas must be nonnegative and strictly increasing".into());
        }
        let p = &self.parameters;
        if [p.gamma, p.gamma0, p.gamma1, p.gamma2, p.curl_weight, p.omega]
            .iter()
            .any(|v| !(*v >= 0.0))
        {
            return bad("parameters must be nonnegative".into());
        }
        Ok(())
    }

    pub fn bbox(&self) -> Aabb {
        Aabb::new(
            Vec2::new(self.bbox[0], self.bbox[1]),
            Vec2::new(self.bbox[2], self.bbox[3]),
        )
    }

    pub fn discretize(&self, n: usize) -> Result<Discretization> {
        let disk = Disk::new(Vec2::new(self.center[0], self.center[1]), self.radius);
        Discretization::new(Arc::new(disk), n, self.bbox())
    }
}

/// A solved problem on one mesh.
pub struct Solution {
    pub discretization: Discretization,
    pub coefficients: FieldCoefficients,
    pub stats: SolveStats,
    pub formulation: Formulation,
}

impl Solution {
    pub fn write_vtk(&self, path: &Path) -> Result<()> {
        let disc = &self.discretization;
        let ext = extend_pressure(disc, &self.coefficients.pressure)?;
        let (div, _) = divergence_field(disc, &self.coefficients.velocity);
        let comps = match self.formulation {
            Formulation::Lagrange => 2,
            Formulation::Nitsche => 1,
        };
        write_fields(
            path,
            disc,
            &FieldData {
                solution: &self.coefficients,
                extended_pressure: &ext,
                divergence: &div,
                multiplier_components: comps,
            },
        )
    }

    pub fn errors(&self, problem: &StokesProblem) -> Result<ErrorReport> {
        let (Some(u), Some(p)) = (&problem.velocity, &problem.pressure) else {
            return Err(Error::Config("problem has no exact solution".into()));
        };
        let mut r = compute_errors(&self.discretization, self.formulation, &self.coefficients, u, p)?;
        r.n = self.discretization.mesh.triangles.len();
        r.residual = self.stats.relative_residual;
        Ok(r)
    }
}

pub fn solve_problem(
    disc: Discretization,
    formulation: Formulation,
    params: &Parameters,
    problem: &StokesProblem,
) -> Result<Solution> {
    let system = build_system(&disc, formulation, params, &problem.force, &problem.boundary_velocity);
    let (coefficients, stats) = solve_direct(&system)?;
    Ok(Solution {
        discretization: disc,
        coefficients,
        stats,
        formulation,
    })
}

fn at_mesh<T>(n: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::AtMesh { n, source: Box::new(e) })
}

fn fmt(v: f64) -> String {
    format!("{v:.10e}")
}

pub struct ConvergenceResult {
    pub sizes: Vec<usize>,
    pub reports: Vec<ErrorReport>,
    /// Rates between consecutive meshes, in `ErrorReport::RATED` order.
    pub rates: Vec<[f64; 6]>,
}

impl ConvergenceResult {
    pub fn last_rates(&self) -> Option<&[f64; 6]> {
        self.rates.last()
    }

    pub fn rate_of(&self, name: &str) -> Option<f64> {
        let i = ErrorReport::RATED.iter().position(|&r| r == name)?;
        self.last_rates().map(|r| r[i])
    }
}

/// Convergence study on the manufactured flow over `config.mesh_sizes`.
/// Writes `errors.csv`, `rates.csv` and the finest fields when `out` is given.
pub fn run_convergence(config: &RunConfig, out: Option<&Path>) -> Result<ConvergenceResult> {
    config.validate()?;
    let problem = manufactured();
    let mut reports = Vec::new();
    let mut finest = None;
    for &n in &config.mesh_sizes {
        let sol = at_mesh(
            n,
            config
                .discretize(n)
                .and_then(|d| solve_problem(d, config.formulation, &config.parameters, &problem)),
        )?;
        let mut r = at_mesh(n, sol.errors(&problem))?;
        r.n = n;
        reports.push(r);
        finest = Some(sol);
    }
    let rates = rates(&reports);
    let result = ConvergenceResult {
        sizes: config.mesh_sizes.clone(),
        reports,
        rates,
    };
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        write_errors_csv(&dir.join("errors.csv"), &result.reports, result.last_rates())?;
        write_rates_csv(&dir.join("rates.csv"), &result)?;
        if let (true, Some(sol)) = (config.write_fields, &finest) {
            let n = config.mesh_sizes.last().unwrap();
            sol.write_vtk(&dir.join(format!("fields_n{n}.vtk")))?;
        }
    }
    Ok(result)
}

pub fn write_errors_csv(path: &Path, reports: &[ErrorReport], rates: Option<&[f64; 6]>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(ErrorReport::HEADER)?;
    for r in reports {
        w.write_record([
            r.n.to_string(),
            fmt(r.h),
            fmt(r.e_u_l2),
            fmt(r.e_u_h1),
            fmt(r.e_u_h1_semi),
            fmt(r.e_p_interior),
            fmt(r.e_p_extended),
            fmt(r.e_lambda),
            fmt(r.div_max),
            fmt(r.u_h1_norm),
            fmt(r.residual),
        ])?;
    }
    if let Some(rt) = rates {
        let mut row = vec!["rate".to_string(), String::new()];
        row.extend(rt.iter().map(|&v| format!("{v:.4}")));
        row.extend([String::new(), String::new(), String::new()]);
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_rates_csv(path: &Path, result: &ConvergenceResult) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["n_coarse", "n_fine"];
    header.extend(ErrorReport::RATED);
    w.write_record(&header)?;
    for (i, r) in result.rates.iter().enumerate() {
        let mut row = vec![result.sizes[i].to_string(), result.sizes[i + 1].to_string()];
        row.extend(r.iter().map(|&v| format!("{v:.4}")));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoriolisRow {
    pub omega: f64,
    pub u_x_l2: f64,
    pub u_y_l2: f64,
    pub u_y_boundary_max: f64,
    pub residual: f64,
}

/// Uniform boundary velocity in a rotating frame, one solve per `ω`.
pub fn run_coriolis(config: &RunConfig, out: Option<&Path>) -> Result<Vec<CoriolisRow>> {
    config.validate()?;
    let mut rows = Vec::new();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
    }
    for &omega in &config.omegas {
        let params = Parameters {
            omega,
            ..config.parameters
        };
        let problem = rotating_channel(omega);
        let sol = at_mesh(
            config.n,
            config
                .discretize(config.n)
                .and_then(|d| solve_problem(d, config.formulation, &params, &problem)),
        )?;
        let (ux, uy, uyb) = velocity_component_norms(&sol.discretization, &sol.coefficients.velocity);
        rows.push(CoriolisRow {
            omega,
            u_x_l2: ux,
            u_y_l2: uy,
            u_y_boundary_max: uyb,
            residual: sol.stats.relative_residual,
        });
        if let (Some(dir), true) = (out, config.write_fields) {
            sol.write_vtk(&dir.join(format!("fields_omega{omega}.vtk")))?;
        }
    }
    if let Some(dir) = out {
        let mut w = csv::Writer::from_path(dir.join("coriolis.csv"))?;
        w.write_record(["omega", "u_x_L2", "u_y_L2", "u_y_boundary_max", "residual"])?;
        for r in &rows {
            w.write_record([
                r.omega.to_string(),
                fmt(r.u_x_l2),
                fmt(r.u_y_l2),
                fmt(r.u_y_boundary_max),
                fmt(r.residual),
            ])?;
        }
        w.flush()?;
    }
    Ok(rows)
}

/// Manufactured flow on a single mesh of size `n`.
pub fn run_solve(config: &RunConfig, n: usize, out: Option<&Path>) -> Result<(Solution, ErrorReport)> {
    config.validate()?;
    let problem = manufactured();
    let sol = at_mesh(
        n,
        config
            .discretize(n)
            .and_then(|d| solve_problem(d, config.formulation, &config.parameters, &problem)),
    )?;
    let mut report = at_mesh(n, sol.errors(&problem))?;
    report.n = n;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        write_errors_csv(&dir.join("errors.csv"), std::slice::from_ref(&report), None)?;
        if config.write_fields {
            sol.write_vtk(&dir.join(format!("fields_n{n}.vtk")))?;
        }
    }
    Ok((sol, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vtk::read_legacy;

    fn small() -> RunConfig {
        RunConfig {
            mesh_sizes: vec![16, 32],
            n: 16,
            omegas: vec![0.0, 100.0],
            ..RunConfig::default()
        }
    }

    #[test]
    fn empty_config_is_default() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn config_keys_parse() {
        let c = RunConfig::from_toml(
            "radius = 0.4\nbox = [-2.0, -1.0, 2.0, 1.0]\nmesh_sizes = [8, 16]\nformulation = \"nitsche\"\n\n[parameters]\ngamma0 = 20.0\n",
        )
        .unwrap();
        assert_eq!(c.radius, 0.4);
        assert_eq!(c.bbox, [-2.0, -1.0, 2.0, 1.0]);
        assert_eq!(c.mesh_sizes, vec![8, 16]);
        assert_eq!(c.formulation, Formulation::Nitsche);
        assert_eq!(c.parameters.gamma0, 20.0);
        assert_eq!(c.parameters.gamma1, Parameters::default().gamma1);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        for text in [
            "radus = 0.5",
            "geometry = \"square\"",
            "radius = -1.0",
            "box = [1.0, -1.0, -1.0, 1.0]",
            "mesh_sizes = [32, 16]",
            "mesh_sizes = []",
            "omegas = [100.0, 10.0]",
            "[parameters]\ngamma = -1.0",
            "formulation = \"penalty\"",
        ] {
            assert!(matches!(RunConfig::from_toml(text), Err(Error::Config(_))), "{text}");
        }
    }

    #[test]
    fn convergence_outputs_are_reproducible() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = (dir.path().join("a"), dir.path().join("b"));
        let config = RunConfig {
            write_fields: false,
            ..small()
        };
        let r = run_convergence(&config, Some(&a)).unwrap();
        run_convergence(&config, Some(&b)).unwrap();
        for f in ["errors.csv", "rates.csv"] {
            assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap());
        }
        let text = std::fs::read_to_string(a.join("errors.csv")).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], ErrorReport::HEADER.join(","));
        assert!(lines[1].starts_with("16,") && lines[2].starts_with("32,") && lines[3].starts_with("rate,"));
        assert_eq!(r.rates.len(), 1);
        assert!(!a.join("fields_n32.vtk").exists());
    }

    #[test]
    fn single_solve_writes_readable_fields() {
        let dir = tempfile::tempdir().unwrap();
        let (sol, report) = run_solve(&small(), 16, Some(dir.path())).unwrap();
        assert!(report.residual <= 1e-9);
        assert!(report.div_max <= 1e-10);
        let v = read_legacy(&dir.path().join("fields_n16.vtk")).unwrap();
        assert_eq!(v.cells.len(), 6 * sol.discretization.space.elements.len());
        assert!(dir.path().join("errors.csv").exists());
    }

    #[test]
    fn rotating_frame_rows() {
        let dir = tempfile::tempdir().unwrap();
        let rows = run_coriolis(&small(), Some(dir.path())).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].u_y_l2 < 1e-12 && rows[1].u_y_l2 > rows[0].u_y_l2);
        assert!((rows[0].u_x_l2 - std::f64::consts::FRAC_PI_4.sqrt()).abs() < 1e-2);
        let csv = std::fs::read_to_string(dir.path().join("coriolis.csv")).unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(dir.path().join("fields_omega100.vtk").exists());
    }

    #[test]
    fn coarse_mesh_reports_its_size() {
        let config = RunConfig {
            radius: 0.05,
            ..small()
        };
        let err = run_solve(&config, 4, None).err().unwrap();
        assert!(matches!(err, Error::AtMesh { n: 4, .. }), "{err}");
    }
}
