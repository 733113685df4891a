//! Implicit domain description, element classification and quadrature on
//! cut cells `T ∩ Ω` and boundary pieces `Γ ∩ T`.
//!
//! Inside an element the interface is replaced by the chord through its two
//! edge roots for area integrals. Boundary integrals use the chord split into
//! `BOUNDARY_SUBSEGMENTS` pieces whose endpoints are projected onto the true
//! interface; each piece carries its own (discrete) outward normal.

use crate::error::{Error, Result};
use crate::mesh::{ActiveMesh, BackgroundMesh, MacroPartition};
use crate::point::{barycentric, polygon_area, signed_area, Vec2};
use crate::quadrature::{line_rule, TriangleRule};

/// Relative tolerance (times the element diameter) for vertex signs and roots.
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Cut elements with an area fraction below this (or above `1 - this`) are
/// reclassified by the sign at their barycenter.
pub const SLIVER_FRACTION: f64 = 1e-10;
pub const BOUNDARY_SUBSEGMENTS: usize = 4;

/// Signed scalar field: negative inside `Ω`, zero on `Γ`, positive outside.
pub trait LevelSet: Send + Sync {
    fn phi(&self, x: Vec2) -> f64;

    /// Gradient of `phi`; central differences unless overridden.
    fn gradient(&self, x: Vec2) -> Vec2 {
        let e = 1e-6;
        let gx = (self.phi(x + Vec2::new(e, 0.0)) - self.phi(x - Vec2::new(e, 0.0))) / (2.0 * e);
        let gy = (self.phi(x + Vec2::new(0.0, e)) - self.phi(x - Vec2::new(0.0, e))) / (2.0 * e);
        Vec2::new(gx, gy)
    }

    /// Maps a point near `Γ` onto `Γ`.
    fn project(&self, mut x: Vec2) -> Vec2 {
        for _ in 0..50 {
            let f = self.phi(x);
            if f.abs() < 1e-15 {
                break;
            }
            let g = self.gradient(x);
            let g2 = g.norm_squared();
            if g2 == 0.0 {
                break;
            }
            x = x - g * (f / g2);
        }
        x
    }
}

/// `phi(x) = |x − center| − radius`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub center: Vec2,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Vec2, radius: f64) -> Self {
        Self { center, radius }
    }
}

impl LevelSet for Disk {
    fn phi(&self, x: Vec2) -> f64 {
        (x - self.center).norm() - self.radius
    }

    fn gradient(&self, x: Vec2) -> Vec2 {
        let d = x - self.center;
        let r = d.norm();
        if r == 0.0 {
            Vec2::ZERO
        } else {
            d * (1.0 / r)
        }
    }

    fn project(&self, x: Vec2) -> Vec2 {
        let d = x - self.center;
        self.center + d * (self.radius / d.norm())
    }
}

type ScalarFn = Box<dyn Fn(Vec2) -> f64 + Send + Sync>;
type GradientFn = Box<dyn Fn(Vec2) -> Vec2 + Send + Sync>;

/// Level set given by an arbitrary closure, with an optional analytic gradient.
pub struct ImplicitCurve {
    phi: ScalarFn,
    gradient: Option<GradientFn>,
}

impl ImplicitCurve {
    pub fn new(phi: impl Fn(Vec2) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            phi: Box::new(phi),
            gradient: None,
        }
    }

    pub fn with_gradient(mut self, g: impl Fn(Vec2) -> Vec2 + Send + Sync + 'static) -> Self {
        self.gradient = Some(Box::new(g));
        self
    }
}

impl LevelSet for ImplicitCurve {
    fn phi(&self, x: Vec2) -> f64 {
        (self.phi)(x)
    }

    fn gradient(&self, x: Vec2) -> Vec2 {
        match &self.gradient {
            Some(g) => g(x),
            None => {
                let e = 1e-6;
                let f = &self.phi;
                Vec2::new(
                    (f(x + Vec2::new(e, 0.0)) - f(x - Vec2::new(e, 0.0))) / (2.0 * e),
                    (f(x + Vec2::new(0.0, e)) - f(x - Vec2::new(0.0, e))) / (2.0 * e),
                )
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementLabel {
    Interior,
    Cut,
    Exterior,
}

/// Straight approximation of `Γ ∩ T`: the chord between the two edge roots
/// and the half-plane `normal · x ≤ offset` that contains the inside vertices.
#[derive(Clone, Copy, Debug)]
pub struct Interface {
    pub roots: [Vec2; 2],
    pub normal: Vec2,
    pub offset: f64,
}

impl Interface {
    pub fn side(&self, x: Vec2) -> f64 {
        self.normal.dot(x) - self.offset
    }
}

#[derive(Clone, Debug)]
pub struct ElementClassification {
    pub element: usize,
    pub label: ElementLabel,
    /// `|T ∩ Ω| / |T|` with the chord approximation of the interface.
    pub inside_fraction: f64,
    pub interface: Option<Interface>,
}

/// Bisection on the segment `[a, b]` whose endpoints carry opposite signs.
fn edge_root(geom: &dyn LevelSet, a: Vec2, b: Vec2, tol: f64) -> Vec2 {
    let (fa, fb) = (geom.phi(a), geom.phi(b));
    if fa.abs() <= tol {
        return a;
    }
    if fb.abs() <= tol {
        return b;
    }
    if fa.signum() == fb.signum() {
        return if fa.abs() < fb.abs() { a } else { b };
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let neg_at_lo = fa < 0.0;
    let mut mid = 0.5;
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let f = geom.phi(a.lerp(b, mid));
        if f.abs() <= tol || hi - lo < 1e-17 {
            break;
        }
        if (f < 0.0) == neg_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    a.lerp(b, mid)
}

/// Sutherland–Hodgman clip of a convex polygon against `side(x) ≤ 0`.
pub fn clip_polygon(poly: &[Vec2], side: impl Fn(Vec2) -> f64) -> Vec<Vec2> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let (sp, sq) = (side(p), side(q));
        if sp <= 0.0 {
            out.push(p);
        }
        if (sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0) {
            out.push(p.lerp(q, sp / (sp - sq)));
        }
    }
    out
}

/// Labels every background element as interior, cut or exterior.
pub fn classify_elements(mesh: &BackgroundMesh, geom: &dyn LevelSet) -> Result<Vec<ElementClassification>> {
    (0..mesh.triangles.len())
        .map(|t| classify_element(mesh, geom, t))
        .collect()
}

fn classify_element(mesh: &BackgroundMesh, geom: &dyn LevelSet, t: usize) -> Result<ElementClassification> {
    let tri = mesh.triangles[t];
    let p = mesh.corners(t);
    let tol = ROOT_TOLERANCE * mesh.h[t];
    let bary = mesh.barycenter(t);
    let bary_inside = geom.phi(bary) <= 0.0;
    let inside: [bool; 3] = std::array::from_fn(|i| {
        let f = geom.phi(p[i]);
        if f.abs() < tol {
            bary_inside
        } else {
            f < 0.0
        }
    });

    // An edge whose endpoints agree in sign but whose midpoint does not is
    // crossed twice: the mesh does not resolve the interface.
    let mut extra_roots = 0;
    for i in 0..3 {
        let (a, b) = ((i + 1) % 3, (i + 2) % 3);
        if inside[a] == inside[b] {
            let fm = geom.phi((p[a] + p[b]) * 0.5);
            if fm.abs() > tol && (fm < 0.0) != inside[a] {
                extra_roots += 2;
            }
        }
    }
    let crossings = (0..3).filter(|&i| inside[(i + 1) % 3] != inside[(i + 2) % 3]).count();
    if extra_roots > 0 {
        return Err(Error::UnresolvedGeometry {
            element: t,
            roots: crossings + extra_roots,
        });
    }

    let whole = |label| ElementClassification {
        element: t,
        label,
        inside_fraction: if label == ElementLabel::Interior { 1.0 } else { 0.0 },
        interface: None,
    };
    if inside.iter().all(|&s| s) {
        return Ok(whole(ElementLabel::Interior));
    }
    if inside.iter().all(|&s| !s) {
        return Ok(whole(ElementLabel::Exterior));
    }

    // Exactly two edges change sign; find their roots with a deterministic
    // orientation (lower global vertex first) so neighbors agree bit for bit.
    let mut roots = Vec::with_capacity(2);
    for i in 0..3 {
        let (a, b) = ((i + 1) % 3, (i + 2) % 3);
        if inside[a] != inside[b] {
            let (a, b) = if tri[a] < tri[b] { (a, b) } else { (b, a) };
            roots.push(edge_root(geom, p[a], p[b], tol));
        }
    }
    let roots = [roots[0], roots[1]];
    let dir = roots[1] - roots[0];
    let chord_len = dir.norm();
    let interface = if chord_len > 0.0 {
        let mut normal = dir.perp() * (1.0 / chord_len);
        let mut offset = normal.dot(roots[0]);
        // A root may coincide with an inside vertex; orient by the farthest one.
        let in_vertex = (0..3)
            .filter(|&i| inside[i])
            .max_by(|&i, &j| {
                let di = (normal.dot(p[i]) - offset).abs();
                let dj = (normal.dot(p[j]) - offset).abs();
                di.total_cmp(&dj)
            })
            .unwrap();
        if normal.dot(p[in_vertex]) - offset > 0.0 {
            normal = -normal;
            offset = -offset;
        }
        Interface { roots, normal, offset }
    } else {
        // Both roots collapse onto a vertex: the element only touches Γ.
        let label = if bary_inside {
            ElementLabel::Interior
        } else {
            ElementLabel::Exterior
        };
        return Ok(whole(label));
    };
    let clipped = clip_polygon(&p, |x| interface.side(x));
    let fraction = polygon_area(&clipped) / signed_area(p[0], p[1], p[2]);
    if !(SLIVER_FRACTION..=1.0 - SLIVER_FRACTION).contains(&fraction) {
        let label = if bary_inside {
            ElementLabel::Interior
        } else {
            ElementLabel::Exterior
        };
        return Ok(whole(label));
    }
    Ok(ElementClassification {
        element: t,
        label: ElementLabel::Cut,
        inside_fraction: fraction,
        interface: Some(interface),
    })
}

/// Quadrature on `T ∩ Ω` for one active element. Every point records the
/// macro sub-triangle it lies in.
#[derive(Clone, Debug)]
pub struct CutCellQuadrature {
    pub element: usize,
    pub points: Vec<Vec2>,
    pub weights: Vec<f64>,
    pub sub_triangle: Vec<usize>,
    pub sub_polygon_count: usize,
}

impl CutCellQuadrature {
    pub fn measure(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// One rule per active element (in active order) on the six macro
/// sub-triangles, each clipped against the interface chord when cut.
pub fn build_cut_quadrature(
    active: &ActiveMesh,
    partitions: &[MacroPartition],
    classes: &[ElementClassification],
    order: usize,
) -> Result<Vec<CutCellQuadrature>> {
    let rule = TriangleRule::new(order.max(1));
    let mut out = Vec::with_capacity(active.active_elements.len());
    for (k, &t) in active.active_elements.iter().enumerate() {
        let part = &partitions[k];
        let mut q = CutCellQuadrature {
            element: t,
            points: Vec::new(),
            weights: Vec::new(),
            sub_triangle: Vec::new(),
            sub_polygon_count: 0,
        };
        let area = part.area();
        let push = |tri: &[Vec2; 3], s: usize, q: &mut CutCellQuadrature| {
            for (x, w) in rule.map(tri) {
                q.points.push(x);
                q.weights.push(w);
                q.sub_triangle.push(s);
            }
            q.sub_polygon_count += 1;
        };
        match classes[t].interface {
            None => {
                for (s, tri) in part.sub_triangles.iter().enumerate() {
                    push(tri, s, &mut q);
                }
            }
            Some(iface) => {
                for (s, tri) in part.sub_triangles.iter().enumerate() {
                    let poly = clip_polygon(tri, |x| iface.side(x));
                    for j in 1..poly.len().saturating_sub(1) {
                        let frag = [poly[0], poly[j], poly[j + 1]];
                        if signed_area(frag[0], frag[1], frag[2]).abs() > 1e-15 * area {
                            push(&frag, s, &mut q);
                        }
                    }
                }
                if q.points.is_empty() {
                    return Err(Error::QuadratureInconsistency {
                        element: t,
                        detail: "cut element with empty intersection".into(),
                    });
                }
            }
        }
        out.push(q);
    }
    Ok(out)
}

/// Quadrature on `Γ ∩ T` for one cut element.
#[derive(Clone, Debug)]
pub struct BoundaryQuadrature {
    pub element: usize,
    pub points: Vec<Vec2>,
    pub weights: Vec<f64>,
    /// Outward unit normals of the polygonal boundary approximation.
    pub normals: Vec<Vec2>,
    /// Macro sub-triangle whose linear pieces apply at each point.
    pub sub_triangle: Vec<usize>,
}

impl BoundaryQuadrature {
    pub fn length(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Sub-triangle of `part` with the largest minimal barycentric coordinate
/// of `x`.
fn nearest_sub_triangle(part: &MacroPartition, x: Vec2) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (s, tri) in part.sub_triangles.iter().enumerate() {
        let b = barycentric(tri, x);
        let m = b[0].min(b[1]).min(b[2]);
        if m > best.1 {
            best = (s, m);
        }
    }
    best.0
}

/// Parameters in `(0, 1)` where the projected path `s ↦ P(a + s (b − a))`
/// crosses one of the internal macro edges, found by bisection.
fn kink_parameters(geom: &dyn LevelSet, part: &MacroPartition, a: Vec2, b: Vec2) -> Vec<f64> {
    const SAMPLES: usize = 16;
    let ends = [
        part.vertices[0],
        part.vertices[1],
        part.vertices[2],
        part.x_f[0],
        part.x_f[1],
        part.x_f[2],
    ];
    let path = |s: f64| geom.project(a.lerp(b, s));
    let mut out = Vec::new();
    for e in ends {
        let dir = e - part.x_t;
        let dist = |s: f64| dir.cross(path(s) - part.x_t);
        let mut prev = dist(0.0);
        for k in 1..=SAMPLES {
            let s1 = k as f64 / SAMPLES as f64;
            let cur = dist(s1);
            if prev * cur < 0.0 {
                let (mut lo, mut hi) = ((k - 1) as f64 / SAMPLES as f64, s1);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if dist(mid) * prev > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
            prev = cur;
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    out
}

/// One rule per cut element (in cut order). Each chord is split into
/// sub-segments whose endpoints are projected onto `Γ`; each sub-segment is
/// further split where the projected path crosses a macro sub-triangle
/// edge, and carries a Gauss rule whose points are projected onto `Γ`.
pub fn build_boundary_quadrature(
    geom: &dyn LevelSet,
    active: &ActiveMesh,
    partitions: &[MacroPartition],
    classes: &[ElementClassification],
    order: usize,
) -> Result<Vec<BoundaryQuadrature>> {
    let (gp, gw) = line_rule(order.max(1));
    let mut out = Vec::with_capacity(active.cut_elements.len());
    for &t in &active.cut_elements {
        let part = &partitions[active.active_index[t].expect("cut element is active")];
        let iface = classes[t].interface.ok_or_else(|| Error::QuadratureInconsistency {
            element: t,
            detail: "cut element without interface".into(),
        })?;
        let nodes: Vec<Vec2> = (0..=BOUNDARY_SUBSEGMENTS)
            .map(|k| {
                let c = iface.roots[0].lerp(iface.roots[1], k as f64 / BOUNDARY_SUBSEGMENTS as f64);
                geom.project(c)
            })
            .collect();
        let mut q = BoundaryQuadrature {
            element: t,
            points: Vec::new(),
            weights: Vec::new(),
            normals: Vec::new(),
            sub_triangle: Vec::new(),
        };
        for seg in nodes.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let len = a.distance(b);
            if len == 0.0 {
                continue;
            }
            let mut n = (b - a).perp() * (1.0 / len);
            if n.dot(geom.gradient((a + b) * 0.5)) < 0.0 {
                n = -n;
            }
            let mut breaks = vec![0.0];
            breaks.extend(kink_parameters(geom, part, a, b));
            breaks.push(1.0);
            for piece in breaks.windows(2) {
                let (s0, s1) = (piece[0], piece[1]);
                if s1 - s0 <= 0.0 {
                    continue;
                }
                let sub = nearest_sub_triangle(part, geom.project(a.lerp(b, 0.5 * (s0 + s1))));
                for (&s, &w) in gp.iter().zip(&gw) {
                    q.points.push(geom.project(a.lerp(b, s0 + s * (s1 - s0))));
                    q.weights.push(w * len * (s1 - s0));
                    q.normals.push(n);
                    q.sub_triangle.push(sub);
                }
            }
        }
        if q.points.is_empty() {
            return Err(Error::QuadratureInconsistency {
                element: t,
                detail: "empty boundary segment".into(),
            });
        }
        out.push(q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_macro_partitions, Aabb};

    fn disk() -> Disk {
        Disk::new(Vec2::ZERO, 0.5)
    }

    #[test]
    fn disk_gradient_is_unit_radial() {
        let d = disk();
        let x = Vec2::new(0.3, -0.7);
        let g = d.gradient(x);
        assert!((g.norm() - 1.0).abs() < 1e-15);
        assert!((g.cross(x)).abs() < 1e-15);
        assert!((d.phi(d.project(x))).abs() < 1e-15);
    }

    #[test]
    fn generic_projection_lands_on_curve() {
        let ellipse = ImplicitCurve::new(|x: Vec2| (x.x * x.x / 0.25 + x.y * x.y / 0.09).sqrt() - 1.0);
        let p = ellipse.project(Vec2::new(0.4, 0.2));
        assert!(ellipse.phi(p).abs() < 1e-12);
    }

    #[test]
    fn interior_element_classified_fully_inside() {
        let mesh = BackgroundMesh::structured(16, Aabb::default()).unwrap();
        let classes = classify_elements(&mesh, &disk()).unwrap();
        // Square with lower-left corner at the origin is well inside the disk.
        let t = classes
            .iter()
            .position(|c| mesh.corners(c.element).contains(&Vec2::new(0.0, 0.0)))
            .unwrap();
        assert_eq!(classes[t].label, ElementLabel::Interior);
        assert_eq!(classes[t].inside_fraction, 1.0);
    }

    #[test]
    fn tangent_vertex_is_resolved_deterministically() {
        // Γ passes exactly through the vertex (0.5, 0) of a 4x4 grid on (-1,1)^2.
        let mesh = BackgroundMesh::structured(4, Aabb::default()).unwrap();
        let a = classify_elements(&mesh, &disk()).unwrap();
        let b = classify_elements(&mesh, &disk()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.label, y.label);
            assert_eq!(x.inside_fraction, y.inside_fraction);
            match x.label {
                ElementLabel::Cut => assert!(x.inside_fraction > 0.0 && x.inside_fraction < 1.0),
                ElementLabel::Interior => assert_eq!(x.inside_fraction, 1.0),
                ElementLabel::Exterior => assert_eq!(x.inside_fraction, 0.0),
            }
        }
    }

    #[test]
    fn wiggly_interface_is_rejected_on_coarse_mesh() {
        // A small disk sitting on the midpoint of an edge whose endpoints are outside.
        let blob = Disk::new(Vec2::new(0.5, 0.0), 0.1);
        let mesh = BackgroundMesh::structured(2, Aabb::default()).unwrap();
        let err = classify_elements(&mesh, &blob).unwrap_err();
        assert!(matches!(err, Error::UnresolvedGeometry { .. }));
    }

    #[test]
    fn clip_keeps_negative_side() {
        let sq = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ];
        let half = clip_polygon(&sq, |x| x.x - 0.25);
        assert!((polygon_area(&half) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn interior_quadrature_sums_to_element_area() {
        let mesh = BackgroundMesh::structured(8, Aabb::default()).unwrap();
        let classes = classify_elements(&mesh, &disk()).unwrap();
        let active = ActiveMesh::extract(&mesh, &classes).unwrap();
        let parts = build_macro_partitions(&mesh, &active);
        for order in [2, 4, 7] {
            let quad = build_cut_quadrature(&active, &parts, &classes, order).unwrap();
            for q in &quad {
                assert!(q.weights.iter().all(|&w| w > 0.0));
                let area = mesh.area(q.element);
                if classes[q.element].label == ElementLabel::Interior {
                    assert!((q.measure() - area).abs() < 1e-14 * area.max(1.0));
                    assert_eq!(q.sub_polygon_count, 6);
                } else {
                    let expect = classes[q.element].inside_fraction * area;
                    assert!((q.measure() - expect).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn boundary_normals_are_unit_and_outward() {
        let mesh = BackgroundMesh::structured(16, Aabb::default()).unwrap();
        let d = disk();
        let classes = classify_elements(&mesh, &d).unwrap();
        let active = ActiveMesh::extract(&mesh, &classes).unwrap();
        let bq = build_boundary_quadrature(&d, &active, &build_macro_partitions(&mesh, &active), &classes, 2).unwrap();
        for q in &bq {
            for (x, n) in q.points.iter().zip(&q.normals) {
                assert!((n.norm() - 1.0).abs() < 1e-12);
                assert!(d.phi(*x).abs() <= 1e-12);
                assert!(d.phi(*x + *n * 1e-6) > d.phi(*x));
            }
        }
    }
    #[test]
    fn vertex_on_interface_keeps_cut_side() {
        // (±0.5, 0) and (0, ±0.5) are mesh vertices on Γ; the point reflection
        // of every element must see the same cut fraction.
        let mesh = BackgroundMesh::structured(16, Aabb::default()).unwrap();
        let classes = classify_elements(&mesh, &disk()).unwrap();
        let key = |x: Vec2| ((x.x * 1e9).round() as i64, (x.y * 1e9).round() as i64);
        let by_center: std::collections::HashMap<_, _> = (0..mesh.triangles.len())
            .map(|t| (key(mesh.barycenter(t)), t))
            .collect();
        for c in &classes {
            let mirror = by_center[&key(mesh.barycenter(c.element) * -1.0)];
            assert_eq!(c.label, classes[mirror].label);
            assert!((c.inside_fraction - classes[mirror].inside_fraction).abs() < 1e-12);
        }
    }

    fn measures(n: usize) -> (f64, f64, f64, f64, Vec2) {
        let mesh = BackgroundMesh::structured(n, Aabb::default()).unwrap();
        let d = disk();
        let classes = classify_elements(&mesh, &d).unwrap();
        let active = ActiveMesh::extract(&mesh, &classes).unwrap();
        let parts = build_macro_partitions(&mesh, &active);
        let (mut area, mut moment) = (0.0, 0.0);
        for q in build_cut_quadrature(&active, &parts, &classes, 4).unwrap() {
            for (x, w) in q.points.iter().zip(&q.weights) {
                area += w;
                moment += w * x.norm_squared();
            }
        }
        let (mut len, mut x2, mut nsum) = (0.0, 0.0, Vec2::ZERO);
        for q in build_boundary_quadrature(&d, &active, &build_macro_partitions(&mesh, &active), &classes, 4).unwrap() {
            for ((x, w), n) in q.points.iter().zip(&q.weights).zip(&q.normals) {
                len += w;
                x2 += w * x.x * x.x;
                nsum += *n * *w;
            }
        }
        (area, len, moment, x2, nsum)
    }

    #[test]
    fn measures_converge_at_second_order() {
        use std::f64::consts::PI;
        let sizes = [16, 32, 64, 128];
        let m: Vec<_> = sizes.iter().map(|&n| measures(n)).collect();
        let exact = [PI / 4.0, PI, PI / 32.0, PI / 8.0];
        let errs = |i: usize| -> Vec<f64> {
            m.iter()
                .map(|r| {
                    let v = [r.0, r.1, r.2, r.3][i];
                    (v - exact[i]).abs()
                })
                .collect()
        };
        let h: Vec<f64> = sizes.iter().map(|&n| 2.0 / n as f64).collect();
        for i in 0..4 {
            let e = errs(i);
            let rate = crate::postprocess::fitted_rate(&h, &e);
            assert!(rate >= 1.9, "quantity {i}: rate {rate}, errors {e:?}");
        }
        for r in &m {
            assert!(r.4.norm() < 1e-12);
        }
    }
}
