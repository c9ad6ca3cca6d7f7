//! Explicit Waring decompositions `f = Σⱼ ℓⱼ^d`.
//!
//! The rank always comes from exact arithmetic. Numerics only realize a
//! decomposition of that length: pick a square-free operator `h ∈ Ann(f)_r`,
//! find its `r` projective roots `(uⱼ : vⱼ)`, then solve the linear system
//! `f = Σ cⱼ (uⱼ x + vⱼ y)^d` and fold `cⱼ` into the linear forms.
//! `h(∂)` kills `(u x + v y)^d` exactly when `h(u, v) = 0`, which is what
//! ties the roots of `h` to the summands.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apolarity::{apolar_generators, sylvester_rank, ApolarIdeal};
use crate::classifier::rank_sextic;
use crate::error::{Error, Result};
use crate::factor::is_squarefree;
use crate::form::{binomial, int, BinaryForm, DiffOperator, Rational};
use crate::roots;

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    /// Acceptance threshold for the relative resubstitution residual.
    pub tol: f64,
    /// Seed of the square-free operator search.
    pub seed: u64,
    /// Candidate operators tried before giving up.
    pub max_tries: usize,
    /// Relative residual each polished root must reach.
    pub root_tol: f64,
    /// Largest accepted condition number of the coefficient system.
    pub max_condition: f64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            tol: 1e-9,
            seed: 0,
            max_tries: 64,
            root_tol: 1e-10,
            max_condition: 1e12,
        }
    }
}

/// `scale · (u x + v y)`, with `max(|u|, |v|) = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexLinearForm {
    pub u: Complex64,
    pub v: Complex64,
    pub scale: Complex64,
}

impl ComplexLinearForm {
    /// Coefficients of `x` and `y` with the scale folded in.
    pub fn coefficients(&self) -> (Complex64, Complex64) {
        (self.scale * self.u, self.scale * self.v)
    }

    /// Plain coefficients of `ℓ^d`.
    pub fn power_coeffs(&self, d: usize) -> Vec<Complex64> {
        let (a, b) = self.coefficients();
        (0..=d)
            .map(|k| {
                let c = binomial(d, k).to_f64().unwrap_or(f64::INFINITY);
                a.powu((d - k) as u32) * b.powu(k as u32) * c
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct WaringDecomposition {
    pub forms: Vec<ComplexLinearForm>,
    pub rank: usize,
    /// Max coefficient error of `Σ ℓⱼ^d − f`, relative to the largest
    /// coefficient of `f`.
    pub residual: f64,
    /// The apolar operator whose roots gave the linear forms.
    pub operator: DiffOperator,
}

impl WaringDecomposition {
    /// Plain coefficients of `Σ ℓⱼ^d`.
    pub fn expand(&self, d: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); d + 1];
        for l in &self.forms {
            for (o, c) in out.iter_mut().zip(l.power_coeffs(d)) {
                *o += c;
            }
        }
        out
    }

    /// Largest relative residual of the operator at the linear forms' points.
    pub fn duality_residual(&self) -> f64 {
        let h = to_complex(&self.operator);
        self.forms
            .iter()
            .map(|l| homogeneous_residual(&h, l.u, l.v))
            .fold(0.0, f64::max)
    }
}

fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Coefficients as floats after exact division by the largest magnitude.
fn to_complex(f: &BinaryForm) -> Vec<Complex64> {
    let max = f
        .coeffs()
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero);
    let max = if max.is_zero() { int(1) } else { max };
    f.coeffs()
        .iter()
        .map(|c| Complex64::new(rational_to_f64(&(c / &max)), 0.0))
        .collect()
}

fn homogeneous_residual(h: &[Complex64], u: Complex64, v: Complex64) -> f64 {
    let r = h.len() - 1;
    let mut val = Complex64::zero();
    let mut scale = 0.0;
    for (k, c) in h.iter().enumerate() {
        let m = u.powu((r - k) as u32) * v.powu(k as u32);
        val += c * m;
        scale += c.norm() * m.norm();
    }
    if scale == 0.0 {
        0.0
    } else {
        val.norm() / scale
    }
}

/// Members of `Ann(f)_r` proposed in a deterministic order.
struct Candidates {
    first: Option<DiffOperator>,
    /// Fixed part (`g₂` on the affine slice), or `None` for a linear family.
    base: Option<DiffOperator>,
    directions: Vec<DiffOperator>,
    rng: ChaCha8Rng,
    produced: usize,
}

impl Candidates {
    fn new(ideal: &ApolarIdeal, r: usize, seed: u64) -> Result<Self> {
        let ApolarIdeal { g1, g2, d1, d2 } = ideal;
        let (d1, d2) = (*d1, *d2);
        if r < d1 {
            return Err(Error::EmptyApolarComponent(r));
        }
        let mut directions = ideal.multiples_of_g1(r);
        let mut base = None;
        if r >= d2 {
            let e = r - d2;
            let g2_multiples: Vec<DiffOperator> =
                (0..=e).map(|j| g2 * &BinaryForm::monomial(e, j)).collect();
            if d1 < d2 && r == d2 {
                base = Some(g2.clone());
            } else {
                directions.extend(g2_multiples);
            }
        }
        let first = (r == d1).then(|| g1.clone());
        Ok(Candidates {
            first,
            base,
            directions,
            rng: ChaCha8Rng::seed_from_u64(seed),
            produced: 0,
        })
    }

    fn next_candidate(&mut self) -> DiffOperator {
        self.produced += 1;
        if let Some(g) = self.first.take() {
            return g;
        }
        // Heights 1, 2, 4, ... doubling every 8 draws.
        let height = 1i64 << ((self.produced / 8).min(20));
        let degree = self.directions[0].degree();
        let mut h = match &self.base {
            Some(b) => b.clone(),
            None => BinaryForm::zero(degree),
        };
        loop {
            for dir in &self.directions {
                let c: i64 = self.rng.gen_range(-height..=height);
                if c != 0 {
                    h = &h + &dir.scale(&int(c));
                }
            }
            if !h.is_zero() {
                return h;
            }
        }
    }
}

/// A square-free element of `Ann(f)_r`.
pub fn squarefree_apolar(f: &BinaryForm, r: usize, seed: u64) -> Result<DiffOperator> {
    let ideal = apolar_generators(f)?;
    let mut cands = Candidates::new(&ideal, r, seed)?;
    let tries = DecomposeOptions::default().max_tries;
    (0..tries)
        .map(|_| cands.next_candidate())
        .find(is_squarefree)
        .ok_or(Error::RetryBudgetExhausted { degree: r, tries })
}

/// The `r` distinct projective roots `(u : v)` of a square-free operator,
/// normalized to `max(|u|, |v|) = 1`.
pub fn operator_roots(h: &DiffOperator, tol: f64) -> Result<Vec<(Complex64, Complex64)>> {
    let r = h.degree();
    let coeffs = to_complex(h);
    let mut out = Vec::with_capacity(r);
    // p(z) = h(z, 1), ascending in z.
    let first = h.y_valuation().ok_or(Error::ZeroForm)?;
    if first > 1 {
        return Err(Error::NoConvergence { residual: f64::INFINITY });
    }
    if first == 1 {
        out.push((Complex64::new(1.0, 0.0), Complex64::zero()));
    }
    let p: Vec<Complex64> = coeffs[first..].iter().rev().copied().collect();
    // q(w) = h(1, w), ascending in w.
    let q: Vec<Complex64> = coeffs.clone();
    let zs = roots::aberth(&p).ok_or(Error::NoConvergence { residual: f64::INFINITY })?;
    let mut worst = 0.0f64;
    for z in zs {
        let (u, v, res) = if z.norm() <= 1.0 {
            let z = roots::polish(&p, z);
            (z, Complex64::new(1.0, 0.0), roots::relative_residual(&p, z))
        } else {
            let w = roots::polish(&q, Complex64::new(1.0, 0.0) / z);
            (Complex64::new(1.0, 0.0), w, roots::relative_residual(&q, w))
        };
        worst = worst.max(res);
        let m = u.norm().max(v.norm());
        out.push((u / m, v / m));
    }
    if !(worst < tol) {
        return Err(Error::NoConvergence { residual: worst });
    }
    Ok(out)
}

/// Principal `d`-th root, argument in `(−π/d, π/d]`.
fn principal_root(c: Complex64, d: usize) -> Complex64 {
    if c.norm() == 0.0 {
        return Complex64::zero();
    }
    let mut arg = c.arg();
    if arg <= -std::f64::consts::PI {
        arg += 2.0 * std::f64::consts::PI;
    }
    Complex64::from_polar(c.norm().powf(1.0 / d as f64), arg / d as f64)
}

/// Solves `f = Σ cⱼ (uⱼ x + vⱼ y)^d` in the least-squares sense and folds
/// each `cⱼ` into its linear form.
pub fn solve_coefficients(
    f: &BinaryForm,
    roots: &[(Complex64, Complex64)],
) -> Result<WaringDecomposition> {
    solve_with_condition(f, roots, DecomposeOptions::default().max_condition)
}

fn solve_with_condition(
    f: &BinaryForm,
    roots: &[(Complex64, Complex64)],
    max_condition: f64,
) -> Result<WaringDecomposition> {
    let d = f.degree();
    let r = roots.len();
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let target = to_complex(f);
    let unit = |(u, v): (Complex64, Complex64)| ComplexLinearForm {
        u,
        v,
        scale: Complex64::new(1.0, 0.0),
    };
    let columns: Vec<Vec<Complex64>> = roots.iter().map(|&p| unit(p).power_coeffs(d)).collect();
    let a = DMatrix::from_fn(d + 1, r, |k, j| columns[j][k]);
    let b = DVector::from_column_slice(&target);
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= max_condition) {
        return Err(Error::IllConditioned(condition));
    }
    let c = svd
        .solve(&b, 0.0)
        .map_err(|_| Error::IllConditioned(condition))?;
    // `target` was divided by the largest |coefficient| of f; undo that in
    // the folded scales so the forms reproduce f itself.
    let fmax = f
        .coeffs()
        .iter()
        .map(Signed::abs)
        .max()
        .map(|m| rational_to_f64(&m))
        .unwrap_or(1.0);
    let forms: Vec<ComplexLinearForm> = roots
        .iter()
        .zip(c.iter())
        .map(|(&(u, v), &cj)| ComplexLinearForm {
            u,
            v,
            scale: principal_root(cj * fmax, d),
        })
        .collect();
    let mut decomposition = WaringDecomposition {
        forms,
        rank: r,
        residual: 0.0,
        operator: BinaryForm::zero(0),
    };
    let approx = decomposition.expand(d);
    decomposition.residual = approx
        .iter()
        .zip(&target)
        .map(|(s, t)| (s / fmax - t).norm())
        .fold(0.0, f64::max);
    Ok(decomposition)
}

/// Tries to write `f` as a sum of exactly `terms` powers of linear forms.
pub fn decompose_with_terms(
    f: &BinaryForm,
    terms: usize,
    opts: &DecomposeOptions,
) -> Result<WaringDecomposition> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let ideal = apolar_generators(f)?;
    let mut cands = Candidates::new(&ideal, terms, opts.seed)?;
    let mut last_err = Error::RetryBudgetExhausted {
        degree: terms,
        tries: opts.max_tries,
    };
    let mut best: Option<WaringDecomposition> = None;
    for _ in 0..opts.max_tries {
        let h = cands.next_candidate();
        if !is_squarefree(&h) {
            continue;
        }
        let attempt = operator_roots(&h, opts.root_tol)
            .and_then(|roots| solve_with_condition(f, &roots, opts.max_condition));
        match attempt {
            Ok(mut dec) => {
                dec.operator = h;
                if dec.residual < opts.tol {
                    return Ok(dec);
                }
                if best.as_ref().is_none_or(|b| dec.residual < b.residual) {
                    best = Some(dec);
                }
            }
            Err(e) => last_err = e,
        }
    }
    Err(match best {
        Some(b) => Error::Tolerance {
            residual: b.residual,
            tol: opts.tol,
        },
        None => last_err,
    })
}

/// Decomposition of a sextic with as many terms as its exact rank.
pub fn decompose(f: &BinaryForm, opts: &DecomposeOptions) -> Result<WaringDecomposition> {
    let rank = rank_sextic(f)?.rank;
    decompose_with_terms(f, rank, opts)
}

/// Same as [`decompose`] for any degree, with the rank from Sylvester's
/// algorithm.
pub fn decompose_general(f: &BinaryForm, opts: &DecomposeOptions) -> Result<WaringDecomposition> {
    let rank = sylvester_rank(f)?;
    decompose_with_terms(f, rank, opts)
}
