//! Dense linear solves with an explicit residual check.
//!
//! Everything exact in this crate reduces to small dense systems (absorbing
//! one-step equations, fundamental matrices). Systems are solved by LU
//! factorization and the residual is verified against [`RESIDUAL_TOL`]; a
//! solve that cannot meet the tolerance is an error, never a silently noisy
//! answer.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Largest dense system the exact layer will attempt.
pub const DENSE_STATE_CAP: usize = 4096;

/// Maximum allowed relative infinity-norm residual `|Ax - b| / (|b| + 1)`.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Check a proposed state count against [`DENSE_STATE_CAP`].
pub fn check_state_cap(states: usize) -> Result<()> {
    if states > DENSE_STATE_CAP {
        return Err(Error::SystemTooLarge { states, cap: DENSE_STATE_CAP });
    }
    Ok(())
}

/// Solve `A x = b` by LU with partial pivoting, verifying the residual.
pub fn solve(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    debug_assert_eq!(a.nrows(), a.ncols());
    debug_assert_eq!(a.nrows(), b.len());
    check_state_cap(a.nrows())?;
    let x = a
        .clone()
        .lu()
        .solve(b)
        .ok_or(Error::SingularSystem { states: a.nrows() })?;
    let residual = (a * &x - b).amax();
    let scale = b.amax() + 1.0;
    if !(residual / scale).is_finite() || residual / scale > RESIDUAL_TOL {
        return Err(Error::ResidualTooLarge { residual: residual / scale, tol: RESIDUAL_TOL });
    }
    Ok(x)
}

/// Invert `A`, verifying `A A^{-1} = I` column-wise against the tolerance.
pub fn invert(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_state_cap(a.nrows())?;
    let inv = a
        .clone()
        .try_inverse()
        .ok_or(Error::SingularSystem { states: a.nrows() })?;
    let n = a.nrows();
    let mut residual = 0.0f64;
    let product = a * &inv;
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j { 1.0 } else { 0.0 };
            residual = residual.max((product[(i, j)] - expect).abs());
        }
    }
    if !residual.is_finite() || residual > RESIDUAL_TOL * n as f64 {
        return Err(Error::ResidualTooLarge {
            residual,
            tol: RESIDUAL_TOL * n as f64,
        });
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_small_system_exactly() {
        // 2x + y = 5, x + 3y = 10 -> x = 1, y = 3.
        let a = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let b = DVector::from_column_slice(&[5.0, 10.0]);
        let x = solve(&a, &b).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_singular_systems() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        let b = DVector::from_column_slice(&[1.0, 2.0]);
        assert!(solve(&a, &b).is_err());
    }

    #[test]
    fn rejects_oversized_systems() {
        let n = DENSE_STATE_CAP + 1;
        assert!(check_state_cap(n).is_err());
    }
}
