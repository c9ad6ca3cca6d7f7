//! Binary forms with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// How a coefficient list is to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// `f = Σ cₖ x^{d−k} y^k`.
    #[default]
    Plain,
    /// `f = Σ C(d,k) aₖ x^{d−k} y^k`, the classical normalization.
    Binomial,
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Convention::Plain),
            "binomial" => Ok(Convention::Binomial),
            other => Err(format!("unknown convention {other:?} (expected plain or binomial)")),
        }
    }
}

/// A homogeneous polynomial `f = Σ cₖ x^{d−k} y^k` of degree `d`.
///
/// Coefficients are always stored in the plain convention. The zero form is
/// representable (it still carries a degree) but rank operations reject it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

/// A constant-coefficient differential operator `q(∂x, ∂y)`, stored as a
/// binary form in the variables `X = ∂x`, `Y = ∂y`.
pub type DiffOperator = BinaryForm;

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n (n−1) ⋯ (n−k+1)`.
pub(crate) fn falling(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

impl BinaryForm {
    /// Builds a form from plain coefficients `c₀..c_d`. Panics on an empty list.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    /// `make_form`: validates the length and converts binomial input to plain.
    pub fn make(degree: usize, coeffs: Vec<Rational>, convention: Convention) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::LengthMismatch {
                expected: degree + 1,
                got: coeffs.len(),
            });
        }
        let coeffs = match convention {
            Convention::Plain => coeffs,
            Convention::Binomial => coeffs
                .into_iter()
                .enumerate()
                .map(|(k, a)| a * Rational::from_integer(binomial(degree, k)))
                .collect(),
        };
        Ok(BinaryForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_binomial_ints(coeffs: &[i64]) -> Self {
        let d = coeffs.len() - 1;
        Self::make(d, coeffs.iter().map(|&c| int(c)).collect(), Convention::Binomial)
            .expect("length matches by construction")
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn constant(c: Rational) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    /// The monomial `x^{d−k} y^k`.
    pub fn monomial(degree: usize, k: usize) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[k] = Rational::one();
        f
    }

    /// The linear form `a x + b y`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        BinaryForm { coeffs: vec![a, b] }
    }

    pub fn x() -> Self {
        Self::from_ints(&[1, 0])
    }

    pub fn y() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    /// Binomial-normalized coefficients `aₖ = cₖ / C(d,k)`.
    pub fn binomial_coeffs(&self) -> Vec<Rational> {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c / Rational::from_integer(binomial(d, k)))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero plain coefficient, i.e. the exponent of the
    /// largest power of `y` dividing the form.
    pub fn y_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Scales so the first nonzero plain coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.y_valuation() {
            Some(k) => self.scale(&self.coeffs[k].recip()),
            None => self.clone(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = BinaryForm::constant(Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `∂f/∂x`, of degree `d − 1` (the zero constant when `d = 0`).
    pub fn partial_x(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        BinaryForm {
            coeffs: (0..d)
                .map(|k| &self.coeffs[k] * int((d - k) as i64))
                .collect(),
        }
    }

    /// `∂f/∂y`.
    pub fn partial_y(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        BinaryForm {
            coeffs: (0..d)
                .map(|k| &self.coeffs[k + 1] * int((k + 1) as i64))
                .collect(),
        }
    }

    /// Evaluates `f(x, y)` at rational arguments.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let d = self.degree();
        let mut acc = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * pow_q(x, d - k) * pow_q(y, k);
            }
        }
        acc
    }

    /// Applies the operator `q(∂x, ∂y)` to `self`.
    ///
    /// The result has degree `d − s`; when `s > d` every operator kills the
    /// form and the zero constant is returned.
    pub fn apply_operator(&self, q: &DiffOperator) -> Self {
        let d = self.degree();
        let s = q.degree();
        if s > d {
            return Self::zero(0);
        }
        let e = d - s;
        let mut out = vec![Rational::zero(); e + 1];
        // ∂x^{s−j} ∂y^j maps x^{d−k} y^k with k = i + j onto x^{e−i} y^i.
        for (j, qj) in q.coeffs.iter().enumerate() {
            if qj.is_zero() {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                let k = i + j;
                let c = &self.coeffs[k];
                if c.is_zero() {
                    continue;
                }
                let factor = falling(d - k, s - j) * falling(k, j);
                *slot += qj * c * Rational::from_integer(factor);
            }
        }
        BinaryForm { coeffs: out }
    }

    /// `f(a x + b y, c x + d y)` for an arbitrary 2×2 matrix `[[a, b], [c, d]]`.
    pub fn substitute(&self, m: &[[Rational; 2]; 2]) -> Self {
        let d = self.degree();
        let lx = BinaryForm::linear(m[0][0].clone(), m[0][1].clone());
        let ly = BinaryForm::linear(m[1][0].clone(), m[1][1].clone());
        let xs = powers(&lx, d);
        let ys = powers(&ly, d);
        let mut acc = Self::zero(d);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = (&xs[d - k] * &ys[k]).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    /// The right action `f ↦ f∘M` of `SL₂`.
    pub fn sl2_substitute(&self, m: &UnimodularMatrix) -> Self {
        self.substitute(&m.entries)
    }

    /// Renders with explicit `*` and `^`, in a syntax the expression parser
    /// reads back.
    pub fn to_expression(&self) -> String {
        self.to_string()
    }
}

fn powers(l: &BinaryForm, n: usize) -> Vec<BinaryForm> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BinaryForm::constant(Rational::one()));
    for i in 0..n {
        let next = &out[i] * l;
        out.push(next);
    }
    out
}

pub(crate) fn pow_q(x: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm({self})")
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (ex, ey) = (d - k, k);
            let mut vars = Vec::new();
            match ex {
                0 => {}
                1 => vars.push("x".to_string()),
                n => vars.push(format!("x^{n}")),
            }
            match ey {
                0 => {}
                1 => vars.push("y".to_string()),
                n => vars.push(format!("y^{n}")),
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &BinaryForm {
    type Output = BinaryForm;

    fn add(self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), rhs.degree(), "adding forms of different degree");
        BinaryForm {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &BinaryForm {
    type Output = BinaryForm;

    fn sub(self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), rhs.degree(), "subtracting forms of different degree");
        BinaryForm {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &BinaryForm {
    type Output = BinaryForm;

    fn mul(self, rhs: &BinaryForm) -> BinaryForm {
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        BinaryForm { coeffs: out }
    }
}

impl Neg for &BinaryForm {
    type Output = BinaryForm;

    fn neg(self) -> BinaryForm {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BinaryForm {
            type Output = BinaryForm;
            fn $m(self, rhs: BinaryForm) -> BinaryForm {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A 2×2 rational matrix with determinant exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularMatrix {
    entries: [[Rational; 2]; 2],
}

impl UnimodularMatrix {
    pub fn new(entries: [[Rational; 2]; 2]) -> Result<Self> {
        let det = &entries[0][0] * &entries[1][1] - &entries[0][1] * &entries[1][0];
        if !det.is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(UnimodularMatrix { entries })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new([[int(a), int(b)], [int(c), int(d)]])
    }

    pub fn identity() -> Self {
        UnimodularMatrix {
            entries: [[int(1), int(0)], [int(0), int(1)]],
        }
    }

    pub fn entries(&self) -> &[[Rational; 2]; 2] {
        &self.entries
    }

    pub fn mul(&self, rhs: &UnimodularMatrix) -> UnimodularMatrix {
        UnimodularMatrix {
            entries: mat_mul(&self.entries, &rhs.entries),
        }
    }
}

pub(crate) fn mat_mul(a: &[[Rational; 2]; 2], b: &[[Rational; 2]; 2]) -> [[Rational; 2]; 2] {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(c)
    }

    #[test]
    fn make_form_conventions() {
        let plain = BinaryForm::make(6, [1, 0, 0, 0, 0, 0, 1].map(int).to_vec(), Convention::Plain).unwrap();
        assert_eq!(plain, f(&[1, 0, 0, 0, 0, 0, 1]));
        let b = BinaryForm::make(6, [0, 0, 0, 1, 0, 0, 0].map(int).to_vec(), Convention::Binomial).unwrap();
        assert_eq!(b, f(&[0, 0, 0, 20, 0, 0, 0]));
        assert_eq!(b.binomial_coeffs()[3], int(1));
        let all_ones = BinaryForm::from_binomial_ints(&[1; 7]);
        assert_eq!(all_ones, (BinaryForm::x() + BinaryForm::y()).pow(6));
        assert_eq!(
            BinaryForm::make(6, vec![int(1); 3], Convention::Plain),
            Err(Error::LengthMismatch { expected: 7, got: 3 })
        );
    }

    #[test]
    fn operator_action_examples() {
        let x6 = f(&[1, 0, 0, 0, 0, 0, 0]);
        let x5y = f(&[0, 1, 0, 0, 0, 0, 0]);
        assert!(x6.apply_operator(&BinaryForm::y()).is_zero());
        let xy = f(&[0, 1, 0]);
        assert_eq!(x5y.apply_operator(&xy), f(&[5, 0, 0, 0, 0]));
        let x6_minus_y6 = f(&[1, 0, 0, 0, 0, 0, -1]);
        assert!(x5y.apply_operator(&x6_minus_y6).is_zero());
        // Operators of higher degree than the form kill it.
        assert!(f(&[1, 2]).apply_operator(&f(&[1, 0, 0])).is_zero());
    }

    #[test]
    fn partials_match_operator_action() {
        let g = f(&[3, -1, 4, 1, -5, 9, 2]);
        assert_eq!(g.partial_x(), g.apply_operator(&BinaryForm::x()));
        assert_eq!(g.partial_y(), g.apply_operator(&BinaryForm::y()));
    }

    #[test]
    fn substitution_examples() {
        let g = f(&[1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(g.sl2_substitute(&UnimodularMatrix::identity()), g);
        let x6 = f(&[1, 0, 0, 0, 0, 0, 0]);
        let rot = UnimodularMatrix::from_ints(0, 1, -1, 0).unwrap();
        assert_eq!(x6.sl2_substitute(&rot), f(&[0, 0, 0, 0, 0, 0, 1]));
        let x5y = f(&[0, 1, 0, 0, 0, 0, 0]);
        let shear = UnimodularMatrix::from_ints(1, 1, 0, 1).unwrap();
        // x ↦ x + y turns x⁵y into (x + y)⁵y
        assert_eq!(x5y.sl2_substitute(&shear), f(&[0, 1, 5, 10, 10, 5, 1]));
        assert!(UnimodularMatrix::from_ints(2, 0, 0, 1).is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(f(&[1, 0, 0, 0, 0, 6, 5]).to_string(), "x^6 + 6*x*y^5 + 5*y^6");
        assert_eq!(f(&[-1, 0, 2]).to_string(), "-x^2 + 2*y^2");
        assert_eq!(BinaryForm::zero(3).to_string(), "0");
        let half = BinaryForm::new(vec![Rational::new(1.into(), 2.into()), int(-3)]);
        assert_eq!(half.to_string(), "1/2*x - 3*y");
    }

    fn small_form(deg: usize) -> impl Strategy<Value = BinaryForm> {
        prop::collection::vec(-5i64..=5, deg + 1).prop_map(|c| BinaryForm::from_ints(&c))
    }

    fn small_unimodular() -> impl Strategy<Value = UnimodularMatrix> {
        (-3i64..=3, -3i64..=3, any::<bool>()).prop_map(|(a, b, swap)| {
            let l = UnimodularMatrix::from_ints(1, a, 0, 1).unwrap();
            let u = UnimodularMatrix::from_ints(1, 0, b, 1).unwrap();
            let s = if swap {
                UnimodularMatrix::from_ints(0, 1, -1, 0).unwrap()
            } else {
                UnimodularMatrix::identity()
            };
            l.mul(&u).mul(&s)
        })
    }

    proptest! {
        #[test]
        fn operator_composition((q1, q2, g) in (small_form(2), small_form(3), small_form(7))) {
            let lhs = g.apply_operator(&(&q1 * &q2));
            let rhs = g.apply_operator(&q2).apply_operator(&q1);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn substitution_is_a_right_action(
            (g, m, n) in (small_form(6), small_unimodular(), small_unimodular())
        ) {
            let lhs = g.sl2_substitute(&m).sl2_substitute(&n);
            let rhs = g.sl2_substitute(&m.mul(&n));
            prop_assert_eq!(lhs.degree(), 6);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
