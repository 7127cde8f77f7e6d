//! Complex tridiagonal solver (Thomas algorithm).

use num_complex::Complex;

use crate::scalar::Real;

/// Zero or non-finite pivot encountered at the given row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroPivot(pub usize);

/// Solves `A x = rhs` for tridiagonal `A` given by its sub-diagonal `lower`
/// (`lower[0]` unused), diagonal `diag` and super-diagonal `upper`
/// (`upper[n-1]` unused). No pivoting.
pub fn solve<T: Real>(
    lower: &[Complex<T>],
    diag: &[Complex<T>],
    upper: &[Complex<T>],
    rhs: &[Complex<T>],
) -> Result<Vec<Complex<T>>, ZeroPivot> {
    let n = diag.len();
    assert!(lower.len() == n && upper.len() == n && rhs.len() == n);
    let mut c_prime = vec![Complex::new(T::zero(), T::zero()); n];
    let mut x = vec![Complex::new(T::zero(), T::zero()); n];

    let check = |p: Complex<T>, row: usize| {
        if p.norm_sqr() == T::zero() || !p.re.is_finite() || !p.im.is_finite() {
            Err(ZeroPivot(row))
        } else {
            Ok(())
        }
    };

    check(diag[0], 0)?;
    c_prime[0] = upper[0] / diag[0];
    x[0] = rhs[0] / diag[0];
    for i in 1..n {
        let pivot = diag[i] - lower[i] * c_prime[i - 1];
        check(pivot, i)?;
        if i + 1 < n {
            c_prime[i] = upper[i] / pivot;
        }
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] = x[i] - c_prime[i] * next;
    }
    Ok(x)
}
