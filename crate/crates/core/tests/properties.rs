use std::sync::Arc;

use cutstokes::assembly::{build_lagrange_system, build_nitsche_system, Parameters};
use cutstokes::discretization::Discretization;
use cutstokes::geometry::{Disk, ElementLabel};
use cutstokes::interpolation::{pi_h, VectorField};
use cutstokes::mesh::{Aabb, MacroPartition};
use cutstokes::point::{barycentric_gradients, signed_area};
use cutstokes::problems::manufactured;
use cutstokes::spaces::{build_face_bubble, continuity_audit};
use cutstokes::Vec2;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn point() -> impl Strategy<Value = Vec2> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(x, y)| Vec2::new(x, y))
}

fn disk(center: Vec2, r: f64) -> Option<Discretization> {
    Discretization::new(Arc::new(Disk::new(center, r)), 16, Aabb::default()).ok()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bubble_divergence_is_constant(a in point(), b in point(), c in point(), s in proptest::array::uniform3(0.2..0.8f64)) {
        let area = signed_area(a, b, c);
        prop_assume!(area.abs() > 0.05);
        let v = if area > 0.0 { [a, b, c] } else { [a, c, b] };
        let x_f = std::array::from_fn(|i| v[(i + 1) % 3].lerp(v[(i + 2) % 3], s[i]));
        let part = MacroPartition::new(v, x_f, 0);
        for face in 0..3 {
            let (vals, alpha) = build_face_bubble(&part, face);
            for (corners, vals) in part.sub_triangles.iter().zip(&vals) {
                let g = barycentric_gradients(corners);
                let div: f64 = (0..3).map(|k| vals[k].dot(g[k])).sum();
                prop_assert!((div - alpha).abs() <= 1e-10 * alpha.max(1.0));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn discrete_spaces_on_shifted_disks(x in -0.15..0.15f64, y in -0.15..0.15f64, r in 0.3..0.7f64, seed in any::<u64>()) {
        let Some(d) = disk(Vec2::new(x, y), r) else { return Ok(()) };
        prop_assert!(continuity_audit(&d.mesh, &d.active, &d.space) <= 1e-12);

        for (t, class) in d.classes.iter().enumerate() {
            let measure = d.active.active_index[t].map_or(0.0, |k| d.cut_quadrature[k].measure());
            match class.label {
                ElementLabel::Interior => prop_assert!((measure - d.mesh.area(t)).abs() < 1e-14),
                ElementLabel::Cut => prop_assert!(measure > 0.0 && measure < d.mesh.area(t) * (1.0 + 1e-12)),
                ElementLabel::Exterior => prop_assert!(measure == 0.0),
            }
        }

        let solenoidal = VectorField::new(|x: Vec2| {
            Vec2::new(x.x * x.x + x.x.sin() - x.x * x.y.sin(), -2.0 * x.x * x.y - x.y * x.x.cos() - x.y.cos())
        });
        let c = pi_h(&d.mesh, &d.active, &d.partitions, &d.space, &solenoidal);
        let worst = d.space.divergence(&c).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assert!(worst <= 1e-11, "divergence {}", worst);

        let p = manufactured();
        let params = Parameters { omega: 50.0, ..Parameters::default() };
        let lag = build_lagrange_system(&d, &params, &p.force, &p.boundary_velocity);
        let nit = build_nitsche_system(&d, &params, &p.force, &p.boundary_velocity);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut next = || rng.gen_range(-0.5..0.5);
        for _ in 0..4 {
            let x: Vec<f64> = (0..lag.matrix.n_rows).map(|_| next()).collect();
            for m in [&lag.parts.a, &lag.parts.curl, &lag.parts.j] {
                prop_assert!(m.quadratic_form(&x) >= -1e-12 * m.max_abs() * dot(&x, &x));
            }
            let cx = lag.parts.coriolis.quadratic_form(&x);
            prop_assert!(cx.abs() <= 1e-12 * lag.parts.coriolis.max_abs() * dot(&x, &x));
            let y: Vec<f64> = (0..nit.matrix.n_rows).map(|_| next()).collect();
            prop_assert!(nit.parts.ghost.quadratic_form(&y) >= -1e-12 * nit.parts.ghost.max_abs() * dot(&y, &y));
            prop_assert!(nit.parts.j.quadratic_form(&y) >= -1e-12 * nit.parts.j.max_abs().max(1e-300) * dot(&y, &y));
        }
    }
}
