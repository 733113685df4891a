//! Sparse direct solution of the assembled system.

use faer::linalg::solvers::Solve;
use faer::sparse::linalg::LuError;
use faer::sparse::{SparseColMat, Triplet};
use faer::Col;

use crate::assembly::SaddleSystem;
use crate::error::{Error, Result};
use crate::spaces::FieldCoefficients;
use crate::sparse::CsrMatrix;

/// Required relative residual `‖Kx − b‖ / ‖b‖`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;
const REFINEMENT_STEPS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveStats {
    pub relative_residual: f64,
    pub refinement_steps: usize,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residual(m: &CsrMatrix, x: &[f64], b: &[f64]) -> Vec<f64> {
    m.matvec(x).iter().zip(b).map(|(kx, b)| b - kx).collect()
}

/// LU factorization with partial pivoting, followed by iterative refinement.
pub fn solve_sparse(m: &CsrMatrix, b: &[f64]) -> Result<(Vec<f64>, SolveStats)> {
    assert_eq!(m.n_rows, m.n_cols);
    assert_eq!(b.len(), m.n_rows);
    let triplets: Vec<Triplet<usize, usize, f64>> = m.iter().map(|(r, c, v)| Triplet::new(r, c, v)).collect();
    let mat = SparseColMat::<usize, f64>::try_new_from_triplets(m.n_rows, m.n_cols, &triplets)
        .map_err(|e| Error::Singular(format!("{e:?}")))?;
    let lu = mat.sp_lu().map_err(|e| match e {
        LuError::SymbolicSingular { index } => Error::Singular(format!("structurally singular at column {index}")),
        LuError::Generic(e) => Error::Singular(format!("{e:?}")),
    })?;
    let solve = |rhs: &[f64]| -> Vec<f64> {
        let col = Col::from_fn(rhs.len(), |i| rhs[i]);
        let x = lu.solve(&col);
        (0..rhs.len()).map(|i| x[i]).collect()
    };

    let b_norm = norm(b);
    let mut x = solve(b);
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular("non-finite solution from factorization".into()));
    }
    if b_norm == 0.0 {
        return Ok((
            x,
            SolveStats {
                relative_residual: 0.0,
                refinement_steps: 0,
            },
        ));
    }
    let mut r = residual(m, &x, b);
    let mut rel = norm(&r) / b_norm;
    let mut steps = 0;
    while steps < REFINEMENT_STEPS && rel > 1e-14 {
        let dx = solve(&r);
        let candidate: Vec<f64> = x.iter().zip(&dx).map(|(a, d)| a + d).collect();
        let rc = residual(m, &candidate, b);
        let rel_c = norm(&rc) / b_norm;
        steps += 1;
        if !(rel_c < rel) {
            break;
        }
        x = candidate;
        r = rc;
        rel = rel_c;
    }
    if !rel.is_finite() {
        return Err(Error::Singular("non-finite residual".into()));
    }
    if rel > RESIDUAL_TOLERANCE {
        return Err(Error::Residual {
            residual: rel,
            tolerance: RESIDUAL_TOLERANCE,
        });
    }
    Ok((
        x,
        SolveStats {
            relative_residual: rel,
            refinement_steps: steps,
        },
    ))
}

pub fn solve_direct(system: &SaddleSystem) -> Result<(FieldCoefficients, SolveStats)> {
    let (x, stats) = solve_sparse(&system.matrix, &system.rhs)?;
    Ok((FieldCoefficients::from_vector(&system.dofmap, &x), stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spd_two_by_two() {
        let m = CsrMatrix::from_triplets(2, 2, &[(0, 0, 4.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 3.0)]);
        let (x, stats) = solve_sparse(&m, &[1.0, 2.0]).unwrap();
        assert!((x[0] - 1.0 / 11.0).abs() < 1e-15);
        assert!((x[1] - 7.0 / 11.0).abs() < 1e-15);
        assert!(stats.relative_residual < 1e-15);
    }

    #[test]
    fn zero_row_is_singular() {
        let m = CsrMatrix::from_triplets(3, 3, &[(0, 0, 1.0), (1, 1, 1.0), (0, 2, 1.0), (1, 2, 2.0)]);
        assert!(matches!(
            solve_sparse(&m, &[1.0, 1.0, 1.0]),
            Err(Error::Singular(_) | Error::Residual { .. })
        ));
    }
}
