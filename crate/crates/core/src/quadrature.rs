//! Reference quadrature rules: Gauss–Legendre on the unit interval and
//! collapsed (Duffy) Gauss rules on triangles. All weights are positive.

use crate::point::Vec2;

/// Gauss–Legendre nodes and weights on `[0, 1]`, weights summing to one.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (if n == 0 { 1.0 } else { p1 }, d)
}

/// Quadrature rule on the reference triangle `(0,0), (1,0), (0,1)`, stored as
/// barycentric-style coordinates `(ξ, η)` and weights summing to one (i.e.
/// weights are fractions of the triangle area).
#[derive(Clone, Debug)]
pub struct TriangleRule {
    pub points: Vec<(f64, f64)>,
    pub weights: Vec<f64>,
}

impl TriangleRule {
    /// Rule exact for polynomials of total degree `order`.
    pub fn new(order: usize) -> Self {
        if order <= 1 {
            return Self {
                points: vec![(1.0 / 3.0, 1.0 / 3.0)],
                weights: vec![1.0],
            };
        }
        if order == 2 {
            return Self {
                points: vec![(1.0 / 6.0, 1.0 / 6.0), (2.0 / 3.0, 1.0 / 6.0), (1.0 / 6.0, 2.0 / 3.0)],
                weights: vec![1.0 / 3.0; 3],
            };
        }
        // Collapsed Gauss: x = u, y = v (1 - u), Jacobian (1 - u).
        let n = (order + 2).div_ceil(2);
        let (g, w) = gauss_legendre(n);
        let mut points = Vec::with_capacity(n * n);
        let mut weights = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let u = g[i];
                let v = g[j];
                points.push((u, v * (1.0 - u)));
                weights.push(2.0 * w[i] * w[j] * (1.0 - u));
            }
        }
        Self { points, weights }
    }

    /// Maps the rule onto the physical triangle `p`, returning points and
    /// weights scaled by its area.
    pub fn map(&self, p: &[Vec2; 3]) -> impl Iterator<Item = (Vec2, f64)> + '_ {
        let area = crate::point::signed_area(p[0], p[1], p[2]).abs();
        let (a, b, c) = (p[0], p[1], p[2]);
        self.points
            .iter()
            .zip(&self.weights)
            .map(move |(&(s, t), &w)| (a + (b - a) * s + (c - a) * t, w * area))
    }
}

/// Gauss rule on `[0, 1]` exact for degree `order`.
pub fn line_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    gauss_legendre((order + 2) / 2)
}
