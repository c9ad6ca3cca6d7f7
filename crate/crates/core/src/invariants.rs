//! The even basic invariants of a binary sextic and the quotient map to the
//! weighted projective space `P(1,2,3,5)`.
//!
//! All formulas are written in the binomial coefficients `aₖ`.
//! `I₄` is the determinant of the 4×4 Hankel (catalecticant) matrix, `I₆` is
//! the determinant of the 3×3 Hankel matrix of the quadratic covariants
//! `b₀..b₄`, and `I₁₀ = 6⁻¹⁰ · Res(∂f/∂x, ∂f/∂y)` is the normalized
//! discriminant.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::{int, pow_q, BinaryForm, Rational};
use crate::linalg;
use crate::resultant::resultant;

/// Exact values of `I₂, I₄, I₆, I₁₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantVector {
    pub i2: Rational,
    pub i4: Rational,
    pub i6: Rational,
    pub i10: Rational,
}

impl InvariantVector {
    pub fn all_zero(&self) -> bool {
        self.i2.is_zero() && self.i4.is_zero() && self.i6.is_zero() && self.i10.is_zero()
    }

    pub fn as_array(&self) -> [&Rational; 4] {
        [&self.i2, &self.i4, &self.i6, &self.i10]
    }

    /// `I₂³ + I₆`, the equation of the curve `C` inside `{I₄ = 0}`.
    pub fn curve_equation(&self) -> Rational {
        pow_q(&self.i2, 3) + &self.i6
    }
}

fn sextic_coeffs(f: &BinaryForm) -> Result<Vec<Rational>> {
    if f.degree() != 6 {
        return Err(Error::WrongDegree {
            expected: 6,
            got: f.degree(),
        });
    }
    Ok(f.binomial_coeffs())
}

pub fn invariant_i2(f: &BinaryForm) -> Result<Rational> {
    let a = sextic_coeffs(f)?;
    Ok(-int(10) * &a[3] * &a[3] + int(15) * &a[2] * &a[4] - int(6) * &a[1] * &a[5]
        + &a[0] * &a[6])
}

pub(crate) fn hankel_i4(a: &[Rational]) -> Rational {
    let m: Vec<Vec<Rational>> = (0..4)
        .map(|i| (0..4).map(|j| a[i + j].clone()).collect())
        .collect();
    linalg::determinant(&m)
}

pub fn invariant_i4(f: &BinaryForm) -> Result<Rational> {
    Ok(hankel_i4(&sextic_coeffs(f)?))
}

/// The quadratic covariant coefficients `b₀..b₄`.
///
/// `b₄` is the mirror image of `b₀` under `aₖ ↦ a₆₋ₖ`.
pub fn covariant_b(f: &BinaryForm) -> Result<[Rational; 5]> {
    let a = sextic_coeffs(f)?;
    let b0 = int(6) * (&a[0] * &a[4] - int(4) * &a[1] * &a[3] + int(3) * &a[2] * &a[2]);
    let b1 = int(3) * (&a[0] * &a[5] - int(3) * &a[1] * &a[4] + int(2) * &a[2] * &a[3]);
    let b2 = &a[0] * &a[6] - int(9) * &a[2] * &a[4] + int(8) * &a[3] * &a[3];
    let b3 = int(3) * (&a[1] * &a[6] - int(3) * &a[2] * &a[5] + int(2) * &a[3] * &a[4]);
    let b4 = int(6) * (&a[2] * &a[6] - int(4) * &a[3] * &a[5] + int(3) * &a[4] * &a[4]);
    Ok([b0, b1, b2, b3, b4])
}

pub fn invariant_i6(f: &BinaryForm) -> Result<Rational> {
    let b = covariant_b(f)?;
    let m: Vec<Vec<Rational>> = (0..3)
        .map(|i| (0..3).map(|j| b[i + j].clone()).collect())
        .collect();
    Ok(linalg::determinant(&m))
}

pub fn invariant_i10(f: &BinaryForm) -> Result<Rational> {
    sextic_coeffs(f)?;
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let (fx, fy) = (f.partial_x(), f.partial_y());
    if fx.is_zero() || fy.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(resultant(&fx, &fy)? / int(6).pow(10))
}

pub fn invariants(f: &BinaryForm) -> Result<InvariantVector> {
    Ok(InvariantVector {
        i2: invariant_i2(f)?,
        i4: invariant_i4(f)?,
        i6: invariant_i6(f)?,
        i10: invariant_i10(f)?,
    })
}

const WEIGHTS: [usize; 4] = [1, 2, 3, 5];
const VERONESE_DEGREE: usize = 30;

/// Exponent vectors `(e₁, e₂, e₃, e₅)` with `e₁ + 2e₂ + 3e₃ + 5e₅ = 30`,
/// in lexicographic order.
fn veronese_exponents() -> &'static [[usize; 4]] {
    use std::sync::OnceLock;
    static EXPONENTS: OnceLock<Vec<[usize; 4]>> = OnceLock::new();
    EXPONENTS.get_or_init(|| {
        let mut out = Vec::new();
        for e1 in (0..=VERONESE_DEGREE).rev() {
            for e2 in (0..=(VERONESE_DEGREE - e1) / 2).rev() {
                let rest = VERONESE_DEGREE - e1 - 2 * e2;
                for e3 in (0..=rest / 3).rev() {
                    let r = rest - 3 * e3;
                    if r % 5 == 0 {
                        out.push([e1, e2, e3, r / 5]);
                    }
                }
            }
        }
        out
    })
}

/// A point `(z₁ : z₂ : z₃ : z₅)` of `P(1,2,3,5)`.
///
/// Two coordinate vectors name the same point iff `z' = (λ z₁, λ² z₂, λ³ z₃,
/// λ⁵ z₅)` for some complex `λ ≠ 0`. The point is keyed by its weight-30
/// monomial vector, scaled so the first nonzero entry is 1; since 30 is a
/// common multiple of the weights this embedding is injective, and weighted
/// equality becomes exact equality of the keys.
#[derive(Clone, Debug)]
pub struct WeightedPoint {
    coords: [Rational; 4],
    key: Vec<Rational>,
}

impl WeightedPoint {
    pub fn new(coords: [Rational; 4]) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::NullCone);
        }
        let powers: Vec<Vec<Rational>> = coords
            .iter()
            .zip(WEIGHTS)
            .map(|(z, w)| {
                let mut p = vec![Rational::one()];
                for i in 0..VERONESE_DEGREE / w {
                    let next = &p[i] * z;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut key: Vec<Rational> = veronese_exponents()
            .iter()
            .map(|e| {
                let mut m = Rational::one();
                for i in 0..4 {
                    if e[i] > 0 {
                        m *= &powers[i][e[i]];
                    }
                }
                m
            })
            .collect();
        linalg::normalize_leading(&mut key);
        Ok(WeightedPoint { coords, key })
    }

    pub fn from_ints(z1: i64, z2: i64, z3: i64, z5: i64) -> Result<Self> {
        Self::new([int(z1), int(z2), int(z3), int(z5)])
    }

    pub fn from_invariants(inv: &InvariantVector) -> Result<Self> {
        Self::new([inv.i2.clone(), inv.i4.clone(), inv.i6.clone(), inv.i10.clone()])
    }

    /// The coordinates this point was built from.
    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    /// Canonical key: the normalized weight-30 monomial vector.
    pub fn key(&self) -> &[Rational] {
        &self.key
    }

    /// A rational representative that is canonical whenever one is cheap to
    /// pick: `z₁ = 1` if `z₁ ≠ 0`, `z₂ = z₃` if only `z₁` vanishes, a single
    /// 1 if only one coordinate is nonzero. Otherwise the stored coordinates.
    pub fn representative(&self) -> [Rational; 4] {
        let [z1, z2, z3, _] = &self.coords;
        let nonzero = self.coords.iter().filter(|z| !z.is_zero()).count();
        if !z1.is_zero() {
            let l = z1.recip();
            return self.scaled(&l);
        }
        if nonzero == 1 {
            return self.coords.clone().map(|z| if z.is_zero() { z } else { Rational::one() });
        }
        if !z2.is_zero() && !z3.is_zero() {
            return self.scaled(&(z2 / z3));
        }
        self.coords.clone()
    }

    fn scaled(&self, l: &Rational) -> [Rational; 4] {
        let mut out = self.coords.clone();
        for (z, w) in out.iter_mut().zip(WEIGHTS) {
            *z *= pow_q(l, w);
        }
        out
    }

    /// On the curve `C : z₁³ + z₃ = z₂ = 0`.
    pub fn on_curve_c(&self) -> bool {
        let [z1, z2, z3, _] = &self.coords;
        z2.is_zero() && (pow_q(z1, 3) + z3).is_zero()
    }

    /// `p = (1 : 0 : −1 : 1)`, the image of the rank-2 forms.
    pub fn special_point() -> Self {
        Self::from_ints(1, 0, -1, 1).expect("nonzero")
    }

    /// `(10 : 1 : 8³ : 0)`, the image of every form with a triple root.
    pub fn triple_root_point() -> Self {
        Self::from_ints(10, 1, 512, 0).expect("nonzero")
    }
}

impl PartialEq for WeightedPoint {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for WeightedPoint {}

impl fmt::Display for WeightedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.representative();
        write!(f, "({} : {} : {} : {})", r[0], r[1], r[2], r[3])
    }
}

/// `π(f) = (I₂ : I₄ : I₆ : I₁₀)`; fails with [`Error::NullCone`] when all four
/// invariants vanish.
pub fn pi_point(f: &BinaryForm) -> Result<WeightedPoint> {
    WeightedPoint::from_invariants(&invariants(f)?)
}

pub fn weighted_eq(p: &WeightedPoint, q: &WeightedPoint) -> bool {
    p == q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::UnimodularMatrix;

    fn f(c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(c)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// `60 · x²y²(x+y)(x+ty)`, with `aₖ = (0, 0, 4, 3(1+t), 4t, 0, 0)`.
    fn sixty_ft(t: &Rational) -> BinaryForm {
        let a = [
            int(0),
            int(0),
            int(4),
            int(3) * (int(1) + t),
            int(4) * t,
            int(0),
            int(0),
        ];
        BinaryForm::make(6, a.to_vec(), crate::Convention::Binomial).unwrap()
    }

    /// `u x⁶ + v y⁶ + (x + y)⁶ + (x + t y)⁶`, the last term optional.
    fn normal_form(u: &Rational, v: &Rational, t: Option<&Rational>) -> BinaryForm {
        let x = BinaryForm::x();
        let y = BinaryForm::y();
        let mut g = &x.pow(6).scale(u) + &y.pow(6).scale(v);
        g = &g + &(&x + &y).pow(6);
        if let Some(t) = t {
            g = &g + &(&x + &y.scale(t)).pow(6);
        }
        g
    }

    #[test]
    fn i2_examples() {
        assert_eq!(invariant_i2(&f(&[1, 0, 0, 0, 0, 0, 1])).unwrap(), int(1));
        let g = normal_form(&int(2), &int(3), None);
        assert_eq!(invariant_i2(&g).unwrap(), int(11));
        assert_eq!(invariant_i2(&sixty_ft(&int(2))).unwrap(), int(-330));
        assert!(matches!(invariant_i2(&f(&[1, 0])), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn i4_examples() {
        assert_eq!(invariant_i4(&f(&[1, 0, 0, 0, 0, 0, 1])).unwrap(), int(0));
        let g = normal_form(&int(1), &int(1), Some(&int(-1)));
        assert_eq!(invariant_i4(&g).unwrap(), int(4));
        assert_eq!(invariant_i4(&sixty_ft(&int(1))).unwrap(), int(-176));
    }

    #[test]
    fn i6_examples() {
        assert_eq!(invariant_i6(&f(&[1, 0, 0, 0, 0, 0, 1])).unwrap(), int(-1));
        let g = normal_form(&int(1), &int(1), None);
        assert_eq!(invariant_i6(&g).unwrap(), int(27));
        assert_eq!(invariant_i6(&sixty_ft(&int(2))).unwrap(), int(32472576));
    }

    #[test]
    fn i10_examples() {
        assert_eq!(invariant_i10(&f(&[1, 0, 0, 0, 0, 0, 1])).unwrap(), int(1));
        let case_b = f(&[1, 0, 0, 0, 0, 6, 1]);
        let inv = invariants(&case_b).unwrap();
        assert_eq!(&inv.i10 / pow_q(&inv.i2, 5), int(-3124));
        // x²y²(x+y)(x+2y) = x⁴y² + 3x³y³ + 2x²y⁴
        assert_eq!(invariant_i10(&f(&[0, 0, 1, 3, 2, 0, 0])).unwrap(), int(0));
        assert_eq!(invariant_i10(&BinaryForm::zero(6)), Err(Error::ZeroForm));
    }

    #[test]
    fn pi_examples() {
        let x3y3 = f(&[0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(pi_point(&x3y3).unwrap(), WeightedPoint::triple_root_point());
        let p = pi_point(&f(&[1, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(p, WeightedPoint::special_point());
        assert_eq!(p.representative(), [int(1), int(0), int(-1), int(1)]);
        assert_eq!(pi_point(&f(&[0, 0, 1, 0, 0, 0, 0])).unwrap_err(), Error::NullCone);
    }

    #[test]
    fn weighted_equality_examples() {
        let p = WeightedPoint::from_ints(1, 0, -1, 1).unwrap();
        assert!(weighted_eq(&p, &WeightedPoint::from_ints(2, 0, -8, 32).unwrap()));
        assert!(!weighted_eq(&p, &WeightedPoint::from_ints(1, 0, -1, -3124).unwrap()));
        assert!(weighted_eq(
            &WeightedPoint::from_ints(10, 1, 512, 0).unwrap(),
            &WeightedPoint::from_ints(-10, 1, -512, 0).unwrap()
        ));
        // x⁶ + 2y⁶ lies in the orbit of x⁶ + y⁶.
        assert!(weighted_eq(&p, &pi_point(&f(&[1, 0, 0, 0, 0, 0, 2])).unwrap()));
    }

    #[test]
    fn weighted_equality_needs_complex_scalars() {
        // λ = i sends (0:1:0:0) to (0:−1:0:0).
        let a = WeightedPoint::from_ints(0, 1, 0, 0).unwrap();
        let b = WeightedPoint::from_ints(0, -1, 0, 0).unwrap();
        assert_eq!(a, b);
        // (0:1:1:0) and (0:1:−1:0) are related by λ = −1.
        assert_eq!(
            WeightedPoint::from_ints(0, 1, 1, 0).unwrap(),
            WeightedPoint::from_ints(0, 1, -1, 0).unwrap()
        );
        // (0:1:1:0) and (0:2:1:0) are not: λ² = 2 forces λ³ = ±2√2.
        assert_ne!(
            WeightedPoint::from_ints(0, 1, 1, 0).unwrap(),
            WeightedPoint::from_ints(0, 2, 1, 0).unwrap()
        );
    }

    #[test]
    fn representative_is_canonical_when_z1_nonzero() {
        let p = WeightedPoint::new([q(-10, 1), q(1, 1), q(-512, 1), int(0)]).unwrap();
        let r = p.representative();
        assert_eq!(r, [int(1), q(1, 100), q(64, 125), int(0)]);
        assert_eq!(WeightedPoint::new(r).unwrap(), p);
    }

    #[test]
    fn triple_root_forms_share_one_point() {
        // x³y²(x+y) and x³y(x+y)(x+2y)
        let a = f(&[0, 0, 0, 1, 1, 0, 0]);
        let c = &(&f(&[1, 0, 0, 0]) * &BinaryForm::y()) * &(&f(&[1, 1]) * &f(&[1, 2]));
        for g in [a, c] {
            assert_eq!(pi_point(&g).unwrap(), WeightedPoint::triple_root_point());
        }
    }

    #[test]
    fn invariants_survive_a_shear() {
        let g = f(&[3, -1, 4, 1, -5, 9, 2]);
        let m = UnimodularMatrix::from_ints(2, 1, 1, 1).unwrap();
        assert_eq!(invariants(&g).unwrap(), invariants(&g.sl2_substitute(&m)).unwrap());
    }
}
