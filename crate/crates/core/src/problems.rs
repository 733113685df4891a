//! Reference problems: a boundary-driven manufactured Stokes flow and the
//! rotating-frame flow with uniform boundary velocity.

use crate::interpolation::{ScalarField, VectorField};
use crate::point::{Mat2, Vec2};

#[derive(Clone)]
pub struct StokesProblem {
    pub force: VectorField,
    pub boundary_velocity: VectorField,
    /// Exact solution, when known.
    pub velocity: Option<VectorField>,
    pub pressure: Option<ScalarField>,
}

/// `u = (20xy³, 5x⁴ − 5y⁴)`, `p = 60x²y − 20y³`, zero body force.
pub fn manufactured_velocity() -> VectorField {
    VectorField::new(|x: Vec2| Vec2::new(20.0 * x.x * x.y.powi(3), 5.0 * x.x.powi(4) - 5.0 * x.y.powi(4)))
        .with_gradient(|x: Vec2| {
            Mat2([
                [20.0 * x.y.powi(3), 60.0 * x.x * x.y * x.y],
                [20.0 * x.x.powi(3), -20.0 * x.y.powi(3)],
            ])
        })
}

pub fn manufactured_pressure() -> ScalarField {
    ScalarField::new(|x: Vec2| 60.0 * x.x * x.x * x.y - 20.0 * x.y.powi(3))
        .with_gradient(|x: Vec2| Vec2::new(120.0 * x.x * x.y, 60.0 * x.x * x.x - 60.0 * x.y * x.y))
}

pub fn manufactured() -> StokesProblem {
    let u = manufactured_velocity();
    StokesProblem {
        force: VectorField::constant(Vec2::ZERO),
        boundary_velocity: u.clone(),
        velocity: Some(u),
        pressure: Some(manufactured_pressure()),
    }
}

/// Uniform boundary velocity `(1, 0)` with no body force. With rotation the
/// exact velocity is unchanged and the pressure becomes `−2ωy + const`.
pub fn rotating_channel(omega: f64) -> StokesProblem {
    StokesProblem {
        force: VectorField::constant(Vec2::ZERO),
        boundary_velocity: VectorField::constant(Vec2::new(1.0, 0.0)),
        velocity: Some(VectorField::constant(Vec2::new(1.0, 0.0))),
        pressure: Some(
            ScalarField::new(move |x: Vec2| -2.0 * omega * x.y).with_gradient(move |_| Vec2::new(0.0, -2.0 * omega)),
        ),
    }
}
