//! Catalecticant matrices, apolar ideals and Sylvester's rank algorithm for
//! binary forms of any degree.
//!
//! For a form `f` of degree `d`, the degree-`s` part of `Ann(f)` is the kernel
//! of the contraction map `Q_s → S_{d−s}, q ↦ q·f`. The ideal is generated by
//! two forms `g₁, g₂` of degrees `d₁ ≤ d₂` with `d₁ + d₂ = d + 2`, and the
//! Waring rank is `d₁` when `g₁` is square-free and `d₂` otherwise.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::factor::is_squarefree;
use crate::form::{binomial, falling, BinaryForm, DiffOperator, Rational};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalecticantFlavor {
    /// Entry `(i, j)` is `a_{i+j}`.
    Hankel,
    /// The raw matrix of `q ↦ q·f` in monomial bases.
    Differential,
}

/// Rows index the output monomials `x^{d−s−i} y^i`, columns the operator
/// monomials `X^{s−j} Y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalecticantMatrix {
    pub s: usize,
    pub flavor: CatalecticantFlavor,
    pub entries: Vec<Vec<Rational>>,
}

impl CatalecticantMatrix {
    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries)
    }

    /// Determinant of a square catalecticant (`d = 2s`).
    pub fn determinant(&self) -> Option<Rational> {
        let n = self.entries.len();
        (self.entries.iter().all(|r| r.len() == n)).then(|| linalg::determinant(&self.entries))
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.s + 1
    }
}

pub fn catalecticant(
    f: &BinaryForm,
    s: usize,
    flavor: CatalecticantFlavor,
) -> Result<CatalecticantMatrix> {
    let d = f.degree();
    if s > d {
        return Err(Error::DegreeOutOfRange { s, d });
    }
    let a = f.binomial_coeffs();
    let entries = (0..=d - s)
        .map(|i| {
            (0..=s)
                .map(|j| match flavor {
                    CatalecticantFlavor::Hankel => a[i + j].clone(),
                    // q = X^{s−j}Y^j sends cₖ x^{d−k}y^k (k = i+j) to
                    // (d−k)!/(d−s−i)! · k!/i! · cₖ x^{d−s−i} y^i, which is
                    // d!/((d−s−i)! i!) · a_{i+j}.
                    CatalecticantFlavor::Differential => {
                        let k = i + j;
                        let factor = falling(d - k, s - j) * falling(k, j);
                        f.coeff(k) * Rational::from_integer(factor)
                    }
                })
                .collect()
        })
        .collect();
    Ok(CatalecticantMatrix { s, flavor, entries })
}

/// Basis of `Ann(f)_s` in reduced echelon form (first nonzero coefficient 1).
pub fn ann_basis(f: &BinaryForm, s: usize) -> Result<Vec<DiffOperator>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let vectors = if s > f.degree() {
        (0..=s)
            .map(|j| BinaryForm::monomial(s, j).coeffs().to_vec())
            .collect()
    } else {
        let cat = catalecticant(f, s, CatalecticantFlavor::Hankel)?;
        linalg::kernel(&cat.entries, s + 1)
    };
    Ok(vectors.into_iter().map(BinaryForm::new).collect())
}

/// The complete-intersection generators `(g₁, g₂)` of `Ann(f)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApolarIdeal {
    pub g1: DiffOperator,
    pub g2: DiffOperator,
    pub d1: usize,
    pub d2: usize,
}

impl ApolarIdeal {
    /// `Ann(f)_r` as an affine family: when `d₁ < d₂ = r` every element with a
    /// nonzero `g₂` component is (up to scale) `g₂ + g₁·q`, `q ∈ Q_{r−d₁}`.
    pub fn multiples_of_g1(&self, degree: usize) -> Vec<DiffOperator> {
        if degree < self.d1 {
            return Vec::new();
        }
        let e = degree - self.d1;
        (0..=e)
            .map(|j| &self.g1 * &BinaryForm::monomial(e, j))
            .collect()
    }
}

pub fn apolar_generators(f: &BinaryForm) -> Result<ApolarIdeal> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = f.degree();
    if d == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: 0 });
    }
    let (d1, kernel) = (1..=d + 1)
        .map(|s| (s, ann_basis(f, s)))
        .find_map(|(s, k)| match k {
            Ok(k) if !k.is_empty() => Some(Ok((s, k))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .expect("Ann(f) is nonzero in degree d + 1")?;
    let d2 = d + 2 - d1;
    let g1 = kernel[0].clone();
    if d1 == d2 {
        debug_assert_eq!(kernel.len(), 2);
        let g2 = kernel[1].clone();
        return Ok(ApolarIdeal { g1, g2, d1, d2 });
    }
    let partial = ApolarIdeal {
        g1: g1.clone(),
        g2: g1.clone(),
        d1,
        d2,
    };
    let span: Vec<Vec<Rational>> = partial
        .multiples_of_g1(d2)
        .iter()
        .map(|m| m.coeffs().to_vec())
        .collect();
    let span = linalg::rref(&span);
    let g2 = ann_basis(f, d2)?
        .iter()
        .map(|k| linalg::reduce_modulo(k.coeffs(), &span))
        .find(|r| r.iter().any(|x| !x.is_zero()))
        .map(|mut r| {
            linalg::normalize_leading(&mut r);
            BinaryForm::new(r)
        })
        .ok_or_else(|| Error::Inconsistent(format!("Ann(f)_{d2} is spanned by g1 multiples")))?;
    Ok(ApolarIdeal { g1, g2, d1, d2 })
}

/// Waring rank of a nonzero form of degree `d ≥ 1`.
pub fn sylvester_rank(f: &BinaryForm) -> Result<usize> {
    let ideal = apolar_generators(f)?;
    if ideal.d1 == ideal.d2 || is_squarefree(&ideal.g1) {
        Ok(ideal.d1)
    } else {
        Ok(ideal.d2)
    }
}

/// Rank of a general form of degree `d`: `⌊(d + 2)/2⌋`.
pub fn generic_rank(d: usize) -> usize {
    (d + 2) / 2
}

/// The product of row factors `d!/((d−s−i)! i!)` relating the two
/// catalecticant flavors; for `d = 6, s = 3` it is `2¹²·3⁶·5⁴`.
pub fn flavor_scale(d: usize, s: usize) -> Rational {
    (0..=d - s)
        .map(|i| Rational::from_integer(binomial(d - s, i) * falling(d, s)))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::int;

    fn f(c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(c)
    }

    #[test]
    fn hankel_layout() {
        let g = f(&[1, 0, 0, 0, 0, 0, 1]);
        let c = catalecticant(&g, 3, CatalecticantFlavor::Hankel).unwrap();
        let e = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(
            c.entries,
            vec![e(&[1, 0, 0, 0]), e(&[0, 0, 0, 0]), e(&[0, 0, 0, 0]), e(&[0, 0, 0, 1])]
        );
        assert_eq!(c.determinant(), Some(int(0)));
        let x5y = f(&[0, 1, 0, 0, 0, 0, 0]);
        let c = catalecticant(&x5y, 2, CatalecticantFlavor::Hankel).unwrap();
        assert_eq!((c.rows(), c.cols(), c.rank()), (5, 3, 2));
        assert!(catalecticant(&x5y, 7, CatalecticantFlavor::Hankel).is_err());
    }

    #[test]
    fn flavor_scale_value() {
        assert_eq!(flavor_scale(6, 3), int(2).pow(12) * int(3).pow(6) * int(5).pow(4));
    }

    #[test]
    fn differential_flavor_is_the_operator_matrix() {
        let g = f(&[3, -1, 4, 1, -5, 9, 2]);
        let c = catalecticant(&g, 2, CatalecticantFlavor::Differential).unwrap();
        for j in 0..=2 {
            let image = g.apply_operator(&BinaryForm::monomial(2, j));
            for i in 0..=4 {
                assert_eq!(&c.entries[i][j], image.coeff(i));
            }
        }
    }

    #[test]
    fn ann_basis_examples() {
        let x6 = f(&[1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(ann_basis(&x6, 1).unwrap(), vec![BinaryForm::y()]);
        let x5y = f(&[0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(ann_basis(&x5y, 2).unwrap(), vec![f(&[0, 0, 1])]);
        let x3y3 = f(&[0, 0, 0, 1, 0, 0, 0]);
        assert!(ann_basis(&x3y3, 3).unwrap().is_empty());
        assert_eq!(ann_basis(&BinaryForm::zero(6), 2), Err(Error::ZeroForm));
    }

    #[test]
    fn generator_examples() {
        let x5y = f(&[0, 1, 0, 0, 0, 0, 0]);
        let ideal = apolar_generators(&x5y).unwrap();
        assert_eq!((ideal.d1, ideal.d2), (2, 6));
        assert_eq!(ideal.g1, f(&[0, 0, 1]));
        assert_eq!(ideal.g2, f(&[1, 0, 0, 0, 0, 0, 0]));

        let ideal = apolar_generators(&f(&[1, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!((ideal.d1, ideal.d2), (2, 6));
        assert_eq!(ideal.g1, f(&[0, 1, 0]));

        let ideal = apolar_generators(&f(&[0, 0, 0, 1, 0, 0, 0])).unwrap();
        assert_eq!((ideal.d1, ideal.d2), (4, 4));
    }

    #[test]
    fn sylvester_rank_examples() {
        assert_eq!(sylvester_rank(&f(&[1, 0, 0, 0, 0, 0, 0])).unwrap(), 1);
        assert_eq!(sylvester_rank(&f(&[0, 1, 0, 0, 0, 0, 0])).unwrap(), 6);
        assert_eq!(sylvester_rank(&f(&[0, 1, 0, 0])).unwrap(), 3);
        assert_eq!(sylvester_rank(&f(&[1, 0, 0, 0, 0, 0, 1])).unwrap(), 2);
        assert_eq!(sylvester_rank(&BinaryForm::zero(4)), Err(Error::ZeroForm));
        assert!(sylvester_rank(&f(&[5])).is_err());
    }

    #[test]
    fn generic_rank_values() {
        assert_eq!(generic_rank(6), 4);
        assert_eq!(generic_rank(5), 3);
        assert_eq!(generic_rank(1), 1);
    }
}
