//! Exact linear algebra over the rationals.
//!
//! Rational matrices are cleared of denominators row by row and then reduced
//! with Bareiss' fraction-free elimination over the integers, so every
//! intermediate entry is a minor of the scaled input and the exact divisions
//! never leave `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::form::Rational;

/// Row echelon form produced by fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
    /// Number of row transpositions performed.
    pub swaps: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Fraction-free Gaussian elimination (Bareiss) on an integer matrix.
///
/// Rank-deficient columns are skipped; the division by the previous pivot
/// stays exact because each updated entry is a minor of the input.
pub fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut swaps = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let v = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                debug_assert!((&v % &prev).is_zero());
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        // Entries left of the pivot in rows below are already zero; entries
        // of the pivot row itself are untouched from here on.
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Echelon {
        rows: m,
        pivots,
        swaps,
    }
}

/// Scales each row by the lcm of its denominators. Returns the integer rows
/// and the product of the scale factors.
pub fn clear_denominators(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut total = BigInt::one();
    let out = rows
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            total *= &l;
            row.iter()
                .map(|q| q.numer() * (&l / q.denom()))
                .collect()
        })
        .collect();
    (out, total)
}

fn ncols_of(m: &[Vec<Rational>]) -> usize {
    m.first().map_or(0, Vec::len)
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return Rational::one();
    }
    let (ints, scale) = clear_denominators(m);
    let ech = bareiss(ints, n);
    if ech.rank() < n {
        return Rational::zero();
    }
    let mut det = ech.rows[n - 1][n - 1].clone();
    if ech.swaps % 2 == 1 {
        det = -det;
    }
    Rational::new(det, scale)
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let (ints, _) = clear_denominators(m);
    bareiss(ints, ncols_of(m)).rank()
}

/// Basis of the right kernel `{v : m v = 0}` in reduced row echelon form.
pub fn kernel(m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (ints, _) = clear_denominators(m);
    let ech = bareiss(ints, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !ech.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rational::zero(); ncols];
        v[f] = Rational::one();
        for (i, &p) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[i];
            let mut acc = Rational::zero();
            for j in p + 1..ncols {
                if !row[j].is_zero() && !v[j].is_zero() {
                    acc += Rational::from_integer(row[j].clone()) * &v[j];
                }
            }
            v[p] = -acc / Rational::from_integer(row[p].clone());
        }
        basis.push(v);
    }
    rref(&basis)
}

/// Reduced row echelon form of the row space, zero rows dropped. This is the
/// canonical basis of the span: leading entries are 1 and pivot columns are
/// otherwise zero.
pub fn rref(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = ncols_of(&m);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..ncols {
                    let sub = &factor * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    m
}

/// Reduces `v` modulo the span of `basis`, which must be in reduced row
/// echelon form.
pub fn reduce_modulo(v: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    let mut out = v.to_vec();
    for row in basis {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if out[p].is_zero() {
            continue;
        }
        let factor = out[p].clone();
        for (o, b) in out.iter_mut().zip(row) {
            *o -= &factor * b;
        }
    }
    out
}

/// Scales a vector so its first nonzero entry is 1. Zero vectors are
/// returned unchanged.
pub fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x /= &lead;
        }
    }
}
