//! Seeded generators of test sextics with planted structure.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::{gcd, is_squarefree, squarefree_decomposition};
use crate::form::{int, BinaryForm, Rational, UnimodularMatrix};
use crate::linalg;

/// What kind of sextic to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stratum {
    /// Planted Waring rank `1..=6`. Ranks up to 4 are sums of that many sixth
    /// powers; rank 5 alternates between stable forms on the curve `C` and
    /// forms with a quadruple root; rank 6 is `ℓ⁵ℓ'`.
    Rank(u8),
    /// `ℓ^m` times a square-free cofactor coprime to `ℓ`, `m ∈ 2..=6`.
    Multiplicity(u8),
    /// Stable forms with exactly `k ∈ 0..=3` double roots and simple
    /// otherwise. Mixes generic root patterns with planted low and high rank
    /// families where such rational forms exist.
    DoubleRoots(u8),
    /// `a₀x⁶ + 6a₅xy⁵ + a₆y⁶` moved by a random `SL₂` element.
    CaseB,
    /// Uniform small integer coefficients.
    Random,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::Rank(r) => write!(f, "rank:{r}"),
            Stratum::Multiplicity(m) => write!(f, "multiplicity:{m}"),
            Stratum::DoubleRoots(k) => write!(f, "double-roots:{k}"),
            Stratum::CaseB => f.write_str("case-b"),
            Stratum::Random => f.write_str("random"),
        }
    }
}

impl FromStr for Stratum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(s.to_string());
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let num = |lo: u8, hi: u8| -> Result<u8> {
            let v: u8 = arg.ok_or_else(bad)?.parse().map_err(|_| bad())?;
            (lo..=hi).contains(&v).then_some(v).ok_or_else(bad)
        };
        match kind {
            "rank" => Ok(Stratum::Rank(num(1, 6)?)),
            "multiplicity" | "mult" => Ok(Stratum::Multiplicity(num(2, 6)?)),
            "double-roots" => Ok(Stratum::DoubleRoots(num(0, 3)?)),
            "case-b" if arg.is_none() => Ok(Stratum::CaseB),
            "random" if arg.is_none() => Ok(Stratum::Random),
            _ => Err(bad()),
        }
    }
}

/// Every stratum, in the order the self-check cycles through them.
pub fn mixed_strata() -> Vec<Stratum> {
    let mut out: Vec<Stratum> = (1..=6).map(Stratum::Rank).collect();
    out.extend((2..=6).map(Stratum::Multiplicity));
    out.extend((0..=3).map(Stratum::DoubleRoots));
    out.push(Stratum::CaseB);
    out.push(Stratum::Random);
    out
}

pub struct FormGenerator {
    rng: ChaCha8Rng,
}

impl FormGenerator {
    pub fn new(seed: u64) -> Self {
        FormGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn nonzero(&mut self, h: i64) -> i64 {
        loop {
            let v = self.rng.gen_range(-h..=h);
            if v != 0 {
                return v;
            }
        }
    }

    pub fn linear(&mut self, h: i64) -> BinaryForm {
        loop {
            let (a, b) = (self.rng.gen_range(-h..=h), self.rng.gen_range(-h..=h));
            if a != 0 || b != 0 {
                return BinaryForm::from_ints(&[a, b]);
            }
        }
    }

    /// `n` pairwise non-proportional linear forms.
    pub fn distinct_linear(&mut self, n: usize, h: i64) -> Vec<BinaryForm> {
        let mut out: Vec<BinaryForm> = Vec::with_capacity(n);
        while out.len() < n {
            let l = self.linear(h);
            if out.iter().all(|m| !proportional(m, &l)) {
                out.push(l);
            }
        }
        out
    }

    /// Product of elementary shears with entries in `-2..=2`, sometimes
    /// followed by the quarter turn.
    pub fn unimodular(&mut self) -> UnimodularMatrix {
        let a = self.rng.gen_range(-2..=2);
        let b = self.rng.gen_range(-2..=2);
        let upper = UnimodularMatrix::from_ints(1, a, 0, 1).expect("det 1");
        let lower = UnimodularMatrix::from_ints(1, 0, b, 1).expect("det 1");
        let m = upper.mul(&lower);
        if self.rng.gen_bool(0.5) {
            m.mul(&UnimodularMatrix::from_ints(0, 1, -1, 0).expect("det 1"))
        } else {
            m
        }
    }

    /// A random rational unimodular matrix with entries of moderate height.
    pub fn rational_unimodular(&mut self) -> UnimodularMatrix {
        let a = Rational::new(self.rng.gen_range(-5..=5).into(), self.rng.gen_range(1..=4).into());
        let b = Rational::new(self.rng.gen_range(-5..=5).into(), self.rng.gen_range(1..=4).into());
        let upper = UnimodularMatrix::new([[int(1), a], [int(0), int(1)]]).expect("det 1");
        let lower = UnimodularMatrix::new([[int(1), int(0)], [b, int(1)]]).expect("det 1");
        let m = upper.mul(&lower);
        if self.rng.gen_bool(0.5) {
            m.mul(&UnimodularMatrix::from_ints(0, 1, -1, 0).expect("det 1"))
        } else {
            m
        }
    }

    /// A random integer 2×2 matrix with nonzero determinant other than 1.
    pub fn gl2(&mut self) -> [[Rational; 2]; 2] {
        loop {
            let e: [i64; 4] = std::array::from_fn(|_| self.rng.gen_range(-3..=3));
            let det = e[0] * e[3] - e[1] * e[2];
            if det != 0 && det != 1 {
                return [[int(e[0]), int(e[1])], [int(e[2]), int(e[3])]];
            }
        }
    }

    /// Square-free form of the given degree coprime to each of `avoid`.
    pub fn squarefree(&mut self, degree: usize, avoid: &[BinaryForm]) -> BinaryForm {
        if degree == 0 {
            return BinaryForm::constant(int(self.nonzero(5)));
        }
        loop {
            let c: Vec<i64> = (0..=degree).map(|_| self.rng.gen_range(-6..=6)).collect();
            let g = BinaryForm::from_ints(&c);
            if g.is_zero() || !is_squarefree(&g) {
                continue;
            }
            if avoid
                .iter()
                .all(|a| gcd(a, &g).map(|c| c.degree() == 0).unwrap_or(false))
            {
                return g;
            }
        }
    }

    pub fn random(&mut self) -> BinaryForm {
        loop {
            let c: Vec<i64> = (0..7).map(|_| self.rng.gen_range(-9..=9)).collect();
            let g = BinaryForm::from_ints(&c);
            if !g.is_zero() {
                return g;
            }
        }
    }

    /// `Σ cⱼ ℓⱼ⁶` over `r` non-proportional linear forms.
    pub fn sum_of_powers(&mut self, r: usize) -> BinaryForm {
        let ls = self.distinct_linear(r, 3);
        ls.iter().fold(BinaryForm::zero(6), |acc, l| {
            let c = int(self.nonzero(3));
            &acc + &l.pow(6).scale(&c)
        })
    }

    pub fn multiplicity(&mut self, m: usize) -> BinaryForm {
        let l = self.linear(3);
        let cof = self.squarefree(6 - m, std::slice::from_ref(&l));
        &l.pow(m) * &cof
    }

    pub fn case_b(&mut self) -> BinaryForm {
        let a0 = self.nonzero(4);
        let a5 = self.nonzero(3);
        let a6 = self.rng.gen_range(-4..=4);
        let g = BinaryForm::from_ints(&[a0, 0, 0, 0, 0, 6 * a5, a6]);
        let m = self.unimodular();
        g.sl2_substitute(&m)
    }

    /// Points `(p₁ : p₂)` with `p₂ ≠ 0`, pairwise distinct.
    fn distinct_points(&mut self, k: usize) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = Vec::new();
        while out.len() < k {
            let p = (self.rng.gen_range(-4..=4), self.rng.gen_range(1..=3));
            if out.iter().all(|q| q.0 * p.1 != q.1 * p.0) {
                out.push(p);
            }
        }
        out
    }

    /// A nonzero member of `span(basis)` vanishing to second order at each
    /// of `points`, or `None` when only the zero form qualifies.
    fn plant_double_roots(basis: &[BinaryForm], points: &[(i64, i64)]) -> Option<BinaryForm> {
        // With p₂ ≠ 0, F(p) = F_x(p) = 0 forces F_y(p) = 0 by Euler's identity.
        let mut rows = Vec::new();
        for &(p1, p2) in points {
            let (p1, p2) = (int(p1), int(p2));
            rows.push(basis.iter().map(|b| b.eval(&p1, &p2)).collect::<Vec<_>>());
            rows.push(basis.iter().map(|b| b.partial_x().eval(&p1, &p2)).collect());
        }
        let kernel = linalg::kernel(&rows, basis.len());
        let coeffs = kernel.first()?;
        let g = basis
            .iter()
            .zip(coeffs)
            .fold(BinaryForm::zero(6), |acc, (b, c)| &acc + &b.scale(c));
        (!g.is_zero()).then_some(g)
    }

    fn generic_double_roots(&mut self, k: usize) -> BinaryForm {
        let ls = self.distinct_linear(k, 3);
        let cof = self.squarefree(6 - 2 * k, &ls);
        ls.iter().fold(cof, |acc, l| &acc * &l.pow(2))
    }

    fn double_roots_candidate(&mut self, k: usize) -> Option<BinaryForm> {
        match self.rng.gen_range(0..4) {
            0 => Some(self.generic_double_roots(k)),
            // Few sixth powers: ranks 2 and 3 when the constraints leave room.
            family @ (1 | 2) => {
                let r = family + 1;
                let basis: Vec<BinaryForm> =
                    self.distinct_linear(r, 3).iter().map(|l| l.pow(6)).collect();
                if k == 0 {
                    return Some(basis.iter().fold(BinaryForm::zero(6), |acc, b| &acc + b));
                }
                let points = self.distinct_points(k);
                Self::plant_double_roots(&basis, &points)
            }
            // Stable forms on the curve C: rank 5.
            _ => {
                let basis = [
                    BinaryForm::monomial(6, 0),
                    BinaryForm::monomial(6, 5),
                    BinaryForm::monomial(6, 6),
                ];
                let g = if k == 0 {
                    let a0 = self.nonzero(4);
                    let a5 = self.nonzero(3);
                    let a6 = self.rng.gen_range(-4..=4);
                    BinaryForm::from_ints(&[a0, 0, 0, 0, 0, 6 * a5, a6])
                } else {
                    let points = self.distinct_points(k);
                    Self::plant_double_roots(&basis, &points)?
                };
                Some(g)
            }
        }
    }

    pub fn double_roots(&mut self, k: usize) -> BinaryForm {
        for _ in 0..64 {
            let Some(g) = self.double_roots_candidate(k) else {
                continue;
            };
            if has_double_root_pattern(&g, k) {
                let m = self.unimodular();
                return g.sl2_substitute(&m);
            }
        }
        let g = self.generic_double_roots(k);
        let m = self.unimodular();
        g.sl2_substitute(&m)
    }

    pub fn form(&mut self, stratum: Stratum) -> BinaryForm {
        match stratum {
            Stratum::Rank(r @ 1..=4) => self.sum_of_powers(r as usize),
            Stratum::Rank(5) => {
                if self.rng.gen_bool(0.5) {
                    self.case_b()
                } else {
                    self.multiplicity(4)
                }
            }
            Stratum::Rank(_) => self.multiplicity(5),
            Stratum::Multiplicity(m) => self.multiplicity(m as usize),
            Stratum::DoubleRoots(k) => self.double_roots(k as usize),
            Stratum::CaseB => self.case_b(),
            Stratum::Random => self.random(),
        }
    }
}

fn proportional(a: &BinaryForm, b: &BinaryForm) -> bool {
    (a.coeff(0) * b.coeff(1) - a.coeff(1) * b.coeff(0)).is_zero()
}

/// Exactly `k` double roots and `6 − 2k` simple roots.
pub fn has_double_root_pattern(g: &BinaryForm, k: usize) -> bool {
    if g.is_zero() {
        return false;
    }
    let p = squarefree_decomposition(g).expect("nonzero");
    p.max_multiplicity() <= 2 && p.roots_of_multiplicity(2) == k
}

/// `count` forms from one stratum, deterministic in `seed`.
pub fn generate(stratum: Stratum, count: usize, seed: u64) -> Vec<BinaryForm> {
    let mut g = FormGenerator::new(seed);
    (0..count).map(|_| g.form(stratum)).collect()
}
