//! Resultants of binary forms via the Sylvester matrix.

use crate::error::{Error, Result};
use crate::form::{BinaryForm, Rational};
use crate::linalg;
use num_traits::Zero;

/// The `(m+n)×(m+n)` Sylvester matrix of forms of degrees `m` and `n`:
/// `n` shifted rows of `f` followed by `m` shifted rows of `g`.
pub fn sylvester_matrix(f: &BinaryForm, g: &BinaryForm) -> Vec<Vec<Rational>> {
    let (m, n) = (f.degree(), g.degree());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (shift, src) in (0..n).map(|i| (i, f)).chain((0..m).map(|i| (i, g))) {
        let mut row = vec![Rational::zero(); size];
        for (k, c) in src.coeffs().iter().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Exact resultant of two nonzero homogeneous forms; zero iff they share a
/// projective root. Res(x, y) = 1.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(linalg::determinant(&sylvester_matrix(f, g)))
}
