//! Small 2D vector and matrix helpers shared by every module.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Counterclockwise rotation by 90 degrees.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Vec2 {
        self * (1.0 / self.norm())
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self + (o - self) * t
    }

    pub fn distance(self, o: Vec2) -> f64 {
        (self - o).norm()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Row-major 2x2 matrix. For a velocity gradient `g[i][k] = ∂u_i/∂x_k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[0.0; 2]; 2]);

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Scalar curl of a velocity gradient, `∂u_y/∂x − ∂u_x/∂y`.
    pub fn curl(&self) -> f64 {
        self.0[1][0] - self.0[0][1]
    }

    /// Frobenius inner product `A : B`.
    pub fn contract(&self, o: &Mat2) -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for k in 0..2 {
                s += self.0[i][k] * o.0[i][k];
            }
        }
        s
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.0[0][0] * v.x + self.0[0][1] * v.y,
            self.0[1][0] * v.x + self.0[1][1] * v.y,
        )
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        let m = self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    /// Outer product `a ⊗ b`, i.e. `m[i][k] = a_i b_k`.
    pub fn outer(a: Vec2, b: Vec2) -> Mat2 {
        Mat2([[a.x * b.x, a.x * b.y], [a.y * b.x, a.y * b.y]])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(-1.0)
    }
}

/// Signed area of the triangle `(a, b, c)`; positive when counterclockwise.
pub fn signed_area(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    0.5 * (b - a).cross(c - a)
}

/// Gradients of the three barycentric coordinates of a nondegenerate triangle.
pub fn barycentric_gradients(p: &[Vec2; 3]) -> [Vec2; 3] {
    let mut out = [Vec2::ZERO; 3];
    for i in 0..3 {
        let a = p[(i + 1) % 3];
        let b = p[(i + 2) % 3];
        let e = b - a;
        let d = e.cross(p[i] - a);
        out[i] = Vec2::new(-e.y, e.x) * (1.0 / d);
    }
    out
}

/// Barycentric coordinates of `x` with respect to `p`.
pub fn barycentric(p: &[Vec2; 3], x: Vec2) -> [f64; 3] {
    let total = (p[1] - p[0]).cross(p[2] - p[0]);
    let l1 = (x - p[0]).cross(p[2] - p[0]) / total;
    let l2 = (p[1] - p[0]).cross(x - p[0]) / total;
    [1.0 - l1 - l2, l1, l2]
}

/// Area of a simple polygon given in order (shoelace formula, absolute value).
pub fn polygon_area(poly: &[Vec2]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        s += poly[i].cross(poly[(i + 1) % n]);
    }
    0.5 * s.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barycentric_gradients_match_coordinates() {
        let p = [Vec2::new(0.3, -0.2), Vec2::new(1.1, 0.1), Vec2::new(0.4, 0.9)];
        let g = barycentric_gradients(&p);
        let x = Vec2::new(0.5, 0.3);
        let dx = Vec2::new(1e-3, -2e-3);
        let l0 = barycentric(&p, x);
        let l1 = barycentric(&p, x + dx);
        for i in 0..3 {
            assert!((l1[i] - l0[i] - g[i].dot(dx)).abs() < 1e-13);
        }
        let at_vertex = barycentric(&p, p[2]);
        assert!((at_vertex[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn shoelace_unit_square() {
        let sq = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ];
        assert_eq!(polygon_area(&sq), 1.0);
        assert_eq!(signed_area(sq[0], sq[1], sq[2]), 0.5);
    }
}
