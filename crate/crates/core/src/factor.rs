//! Greatest common divisors and square-free decomposition of binary forms.
//!
//! Both work on homogeneous forms: the power of `y` dividing a form is split
//! off first (it carries the root `(1:0)`), and the remaining factor is
//! handled through its dehomogenization `f(x, 1)`, whose roots correspond
//! one-to-one with the other projective roots.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::{int, BinaryForm, Rational};

/// Dense univariate polynomial, ascending powers, no trailing zeros.
type Uni = Vec<Rational>;

fn trim(mut p: Uni) -> Uni {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn uni_monic(p: &Uni) -> Uni {
    match p.last() {
        Some(lc) => {
            let inv = lc.recip();
            p.iter().map(|c| c * &inv).collect()
        }
        None => Vec::new(),
    }
}

fn uni_divrem(a: &Uni, b: &Uni) -> (Uni, Uni) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem = a.clone();
    if a.len() < b.len() {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let lc_inv = b[db].recip();
    let mut quot = vec![Rational::zero(); a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] * &lc_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

fn uni_gcd(a: &Uni, b: &Uni) -> Uni {
    let (mut a, mut b) = (uni_monic(a), uni_monic(b));
    while !b.is_empty() {
        let (_, r) = uni_divrem(&a, &b);
        a = b;
        b = uni_monic(&r);
    }
    a
}

fn uni_derivative(p: &Uni) -> Uni {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * int(i as i64))
            .collect(),
    )
}

fn uni_sub(a: &Uni, b: &Uni) -> Uni {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
                let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
                x - y
            })
            .collect(),
    )
}

/// Splits a nonzero form as `y^v · h` and returns `(v, h(x, 1))`.
fn dehomogenize(f: &BinaryForm) -> (usize, Uni) {
    let v = f.y_valuation().expect("nonzero form");
    let p: Uni = f.coeffs()[v..].iter().rev().cloned().collect();
    (v, trim(p))
}

/// Inverse of [`dehomogenize`]: homogenizes `p` to its own degree and
/// multiplies by `y^v`.
fn homogenize(p: &Uni, v: usize) -> BinaryForm {
    let mut coeffs = vec![Rational::zero(); v];
    coeffs.extend(p.iter().rev().cloned());
    if coeffs.is_empty() {
        coeffs.push(Rational::one());
    }
    BinaryForm::new(coeffs)
}

/// Greatest common divisor over `Q`, normalized so its first nonzero plain
/// coefficient is 1.
pub fn gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => Err(Error::BothZero),
        (true, false) => Ok(g.monic()),
        (false, true) => Ok(f.monic()),
        (false, false) => {
            let (vf, pf) = dehomogenize(f);
            let (vg, pg) = dehomogenize(g);
            Ok(homogenize(&uni_gcd(&pf, &pg), vf.min(vg)).monic())
        }
    }
}

/// `f = unit · Π gᵢ^i` with each `gᵢ` square-free, monic and pairwise
/// coprime. Only multiplicities with a non-constant factor are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityProfile {
    pub unit: Rational,
    pub factors: BTreeMap<usize, BinaryForm>,
}

impl MultiplicityProfile {
    /// Highest root multiplicity `m` (0 for a constant form).
    pub fn max_multiplicity(&self) -> usize {
        self.factors.keys().next_back().copied().unwrap_or(0)
    }

    /// Number of distinct projective roots of multiplicity exactly `i`,
    /// counted over `C`.
    pub fn roots_of_multiplicity(&self, i: usize) -> usize {
        self.factors.get(&i).map_or(0, BinaryForm::degree)
    }

    pub fn reconstruct(&self) -> BinaryForm {
        let mut acc = BinaryForm::constant(self.unit.clone());
        for (&i, g) in &self.factors {
            acc = &acc * &g.pow(i);
        }
        acc
    }
}

/// Yun's square-free decomposition on the homogeneous form.
pub fn squarefree_decomposition(f: &BinaryForm) -> Result<MultiplicityProfile> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let (v, p) = dehomogenize(f);
    let mut parts: BTreeMap<usize, Uni> = BTreeMap::new();
    if p.len() > 1 {
        let dp = uni_derivative(&p);
        let a0 = uni_gcd(&p, &dp);
        let mut b = uni_divrem(&p, &a0).0;
        let c = uni_divrem(&dp, &a0).0;
        let mut d = uni_sub(&c, &uni_derivative(&b));
        let mut i = 1;
        while b.len() > 1 {
            let a = uni_gcd(&b, &d);
            let b_next = uni_divrem(&b, &a).0;
            let c_next = uni_divrem(&d, &a).0;
            d = uni_sub(&c_next, &uni_derivative(&b_next));
            b = b_next;
            if a.len() > 1 {
                parts.insert(i, uni_monic(&a));
            }
            i += 1;
        }
    }
    let mut factors: BTreeMap<usize, BinaryForm> = parts
        .into_iter()
        .map(|(i, a)| (i, homogenize(&a, 0).monic()))
        .collect();
    if v > 0 {
        let g = match factors.remove(&v) {
            Some(g) => &g * &BinaryForm::y(),
            None => BinaryForm::y(),
        };
        factors.insert(v, g.monic());
    }
    let mut profile = MultiplicityProfile {
        unit: Rational::one(),
        factors,
    };
    let rebuilt = profile.reconstruct();
    let k = f.y_valuation().expect("nonzero");
    profile.unit = f.coeff(k) / rebuilt.coeff(k);
    Ok(profile)
}

/// True when `f` has no repeated projective root.
pub fn is_squarefree(f: &BinaryForm) -> bool {
    squarefree_decomposition(f).is_ok_and(|p| p.max_multiplicity() <= 1)
}
