//! Legacy ASCII VTK output of meshes and discrete fields, and a small reader
//! for the same subset.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::discretization::Discretization;
use crate::error::{Error, Result};
use crate::geometry::ElementLabel;
use crate::point::{barycentric, Vec2};
use crate::spaces::FieldCoefficients;

/// Background mesh as POLYDATA triangles with the element label
/// (0 interior, 1 cut, 2 exterior) as cell data.
pub fn write_mesh(path: &Path, disc: &Discretization) -> Result<()> {
    let mesh = &disc.mesh;
    let mut s = String::new();
    s.push_str("# vtk DataFile Version 3.0\nbackground mesh\nASCII\nDATASET POLYDATA\n");
    let _ = writeln!(s, "POINTS {} double", mesh.vertices.len());
    for v in &mesh.vertices {
        let _ = writeln!(s, "{} {} 0", v.x, v.y);
    }
    let _ = writeln!(s, "POLYGONS {} {}", mesh.triangles.len(), 4 * mesh.triangles.len());
    for t in &mesh.triangles {
        let _ = writeln!(s, "3 {} {} {}", t[0], t[1], t[2]);
    }
    let _ = writeln!(
        s,
        "CELL_DATA {}\nSCALARS label int 1\nLOOKUP_TABLE default",
        mesh.triangles.len()
    );
    for c in &disc.classes {
        let code = match c.label {
            ElementLabel::Interior => 0,
            ElementLabel::Cut => 1,
            ElementLabel::Exterior => 2,
        };
        let _ = writeln!(s, "{code}");
    }
    std::fs::write(path, s)?;
    Ok(())
}

/// Per-element data written alongside the velocity.
pub struct FieldData<'a> {
    pub solution: &'a FieldCoefficients,
    pub extended_pressure: &'a [f64],
    pub divergence: &'a [f64],
    /// Components of the boundary unknown per cut element (2 or 1).
    pub multiplier_components: usize,
}

/// Composite fields on the macro sub-triangles of all active elements.
/// Every sub-triangle has its own three points. The velocity is written as
/// point data and as its sub-triangle mean.
pub fn write_fields(path: &Path, disc: &Discretization, data: &FieldData) -> Result<()> {
    let n_cells = 6 * disc.space.elements.len();
    let mut pts = String::new();
    let mut cells = String::new();
    let mut vel = String::new();
    let mut cell_vel = String::new();
    let mut per_cell: [String; 5] = Default::default();
    for (k, eb) in disc.space.elements.iter().enumerate() {
        let c = eb.gather(&data.solution.velocity);
        let t = eb.element;
        let mult = match disc.active.cut_index[t] {
            Some(ci) if data.multiplier_components == 2 => {
                Vec2::new(data.solution.multiplier[2 * ci], data.solution.multiplier[2 * ci + 1])
            }
            Some(ci) => Vec2::new(data.solution.multiplier[ci], 0.0),
            None => Vec2::ZERO,
        };
        for (s, st) in eb.sub.iter().enumerate() {
            let base = 3 * (6 * k + s);
            let _ = writeln!(cells, "3 {} {} {}", base, base + 1, base + 2);
            for (i, p) in st.corners.iter().enumerate() {
                let mut b = [0.0; 3];
                b[i] = 1.0;
                let (v, _, _) = eb.eval_on(&c, s, b);
                let _ = writeln!(pts, "{} {} 0", p.x, p.y);
                let _ = writeln!(vel, "{} {} 0", v.x, v.y);
            }
            let centroid = (st.corners[0] + st.corners[1] + st.corners[2]) * (1.0 / 3.0);
            let (v, _, _) = eb.eval_on(&c, s, barycentric(&st.corners, centroid));
            let _ = writeln!(cell_vel, "{} {} 0", v.x, v.y);
            let _ = writeln!(per_cell[0], "{}", data.solution.pressure[k]);
            let _ = writeln!(per_cell[1], "{}", data.extended_pressure[k]);
            let _ = writeln!(per_cell[2], "{}", data.divergence[k]);
            let _ = writeln!(per_cell[3], "{} {} 0", mult.x, mult.y);
            let _ = writeln!(per_cell[4], "{}", t);
        }
    }
    let mut s = String::new();
    s.push_str("# vtk DataFile Version 3.0\ndiscrete fields\nASCII\nDATASET UNSTRUCTURED_GRID\n");
    let _ = writeln!(s, "POINTS {} double", 3 * n_cells);
    s.push_str(&pts);
    let _ = writeln!(s, "CELLS {} {}", n_cells, 4 * n_cells);
    s.push_str(&cells);
    let _ = writeln!(s, "CELL_TYPES {n_cells}");
    for _ in 0..n_cells {
        s.push_str("5\n");
    }
    let _ = writeln!(s, "POINT_DATA {}\nVECTORS velocity double", 3 * n_cells);
    s.push_str(&vel);
    let _ = writeln!(s, "CELL_DATA {n_cells}");
    let scalar = |s: &mut String, name: &str, body: &str| {
        let _ = writeln!(s, "SCALARS {name} double 1\nLOOKUP_TABLE default");
        s.push_str(body);
    };
    scalar(&mut s, "pressure", &per_cell[0]);
    scalar(&mut s, "extended_pressure", &per_cell[1]);
    scalar(&mut s, "divergence", &per_cell[2]);
    let _ = writeln!(s, "VECTORS multiplier double");
    s.push_str(&per_cell[3]);
    let _ = writeln!(s, "VECTORS cell_velocity double");
    s.push_str(&cell_vel);
    scalar(&mut s, "element", &per_cell[4]);
    std::fs::write(path, s)?;
    Ok(())
}

/// Contents of a legacy VTK file restricted to what this module writes.
#[derive(Clone, Debug, Default)]
pub struct VtkData {
    pub points: Vec<[f64; 3]>,
    pub cells: Vec<Vec<usize>>,
    /// Arrays by name, flattened (vectors have three entries per item).
    pub point_data: BTreeMap<String, Vec<f64>>,
    pub cell_data: BTreeMap<String, Vec<f64>>,
}

pub fn read_legacy(path: &Path) -> Result<VtkData> {
    let text = std::fs::read_to_string(path)?;
    let bad = |m: &str| Error::Config(format!("{}: {m}", path.display()));
    let mut tok = text.lines().skip(3).flat_map(str::split_whitespace).peekable();
    let mut out = VtkData::default();
    let num = |t: Option<&str>| -> Result<f64> { t.and_then(|t| t.parse().ok()).ok_or_else(|| bad("expected number")) };
    let mut section: Option<(bool, usize)> = None;
    while let Some(word) = tok.next() {
        match word {
            "DATASET" => {
                tok.next();
            }
            "POINTS" => {
                let n = num(tok.next())? as usize;
                tok.next();
                for _ in 0..n {
                    out.points.push([num(tok.next())?, num(tok.next())?, num(tok.next())?]);
                }
            }
            "POLYGONS" | "CELLS" => {
                let n = num(tok.next())? as usize;
                tok.next();
                for _ in 0..n {
                    let m = num(tok.next())? as usize;
                    let mut c = Vec::with_capacity(m);
                    for _ in 0..m {
                        c.push(num(tok.next())? as usize);
                    }
                    out.cells.push(c);
                }
            }
            "CELL_TYPES" => {
                let n = num(tok.next())? as usize;
                for _ in 0..n {
                    tok.next();
                }
            }
            "POINT_DATA" => section = Some((true, num(tok.next())? as usize)),
            "CELL_DATA" => section = Some((false, num(tok.next())? as usize)),
            "SCALARS" | "VECTORS" => {
                let (is_point, n) = section.ok_or_else(|| bad("data array outside a data section"))?;
                let name = tok.next().ok_or_else(|| bad("unnamed array"))?.to_string();
                tok.next();
                let width = if word == "VECTORS" {
                    3
                } else {
                    let w = match tok.peek() {
                        Some(t) if *t != "LOOKUP_TABLE" => num(tok.next())? as usize,
                        _ => 1,
                    };
                    if tok.peek() == Some(&"LOOKUP_TABLE") {
                        tok.next();
                        tok.next();
                    }
                    w
                };
                let vals = (0..n * width).map(|_| num(tok.next())).collect::<Result<Vec<_>>>()?;
                if is_point {
                    out.point_data.insert(name, vals);
                } else {
                    out.cell_data.insert(name, vals);
                }
            }
            other => return Err(bad(&format!("unexpected token {other}"))),
        }
    }
    Ok(out)
}
