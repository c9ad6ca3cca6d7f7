//! Waring rank of binary sextics from root multiplicities and invariants.
//!
//! The decision tree:
//!
//! | condition                                   | rank | branch        |
//! |---------------------------------------------|------|---------------|
//! | max root multiplicity 6                     | 1    | `M6`          |
//! | max root multiplicity 5                     | 6    | `M5`          |
//! | max root multiplicity 4                     | 5    | `M4`          |
//! | max root multiplicity 3                     | 4    | `M3`          |
//! | stable, `I₄ ≠ 0`                            | 4    | `S-I4-nonzero`|
//! | stable, `I₄ = 0`, `I₂³ + I₆ ≠ 0`            | 3    | `S-rank3`     |
//! | stable, `I₄ = 0`, `I₂³ + I₆ = 0`, `Ann₂ ≠ 0`| 2    | `S-rank2`     |
//! | stable, `I₄ = 0`, `I₂³ + I₆ = 0`, `Ann₂ = 0`| 5    | `S-rank5`     |

use std::fmt;

use num_traits::Zero;

use crate::apolarity::ann_basis;
use crate::error::{Error, Result};
use crate::factor::{squarefree_decomposition, MultiplicityProfile};
use crate::form::{BinaryForm, DiffOperator};
use crate::invariants::{invariants, InvariantVector, WeightedPoint};

/// Stratum of a sextic under the `SL₂` action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GitClass {
    /// A root of multiplicity at least 4; every invariant vanishes.
    NullCone,
    /// A root of multiplicity exactly 3.
    SemistableNotStable,
    /// All roots of multiplicity at most 2.
    Stable,
}

impl GitClass {
    pub fn label(self) -> &'static str {
        match self {
            GitClass::NullCone => "null-cone",
            GitClass::SemistableNotStable => "semistable-not-stable",
            GitClass::Stable => "stable",
        }
    }

    fn from_multiplicity(m: usize) -> Self {
        match m {
            0..=2 => GitClass::Stable,
            3 => GitClass::SemistableNotStable,
            _ => GitClass::NullCone,
        }
    }
}

impl fmt::Display for GitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    M6,
    M5,
    M4,
    M3,
    SI4Nonzero,
    SRank3,
    SRank2,
    SRank5,
}

impl Branch {
    pub const ALL: [Branch; 8] = [
        Branch::M6,
        Branch::M5,
        Branch::M4,
        Branch::M3,
        Branch::SI4Nonzero,
        Branch::SRank3,
        Branch::SRank2,
        Branch::SRank5,
    ];

    pub fn rank(self) -> usize {
        match self {
            Branch::M6 => 1,
            Branch::M5 => 6,
            Branch::M4 => 5,
            Branch::M3 => 4,
            Branch::SI4Nonzero => 4,
            Branch::SRank3 => 3,
            Branch::SRank2 => 2,
            Branch::SRank5 => 5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::M6 => "M6",
            Branch::M5 => "M5",
            Branch::M4 => "M4",
            Branch::M3 => "M3",
            Branch::SI4Nonzero => "S-I4-nonzero",
            Branch::SRank3 => "S-rank3",
            Branch::SRank2 => "S-rank2",
            Branch::SRank5 => "S-rank5",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Rank of a sextic together with the evidence behind it.
#[derive(Clone, Debug)]
pub struct RankCertificate {
    pub rank: usize,
    pub branch: Branch,
    pub class: GitClass,
    pub profile: MultiplicityProfile,
    pub invariants: InvariantVector,
    /// `π(f)`, present for semistable forms.
    pub pi: Option<WeightedPoint>,
    /// For `S-rank2` a basis of `Ann(f)₂`; for `S-rank3` and `S-rank5` the
    /// generator of `Ann(f)₃`.
    pub kernel: Vec<DiffOperator>,
}

impl RankCertificate {
    /// Re-checks the recorded witnesses against `f`.
    pub fn verify(&self, f: &BinaryForm) -> bool {
        if self.branch.rank() != self.rank || self.profile.reconstruct() != *f {
            return false;
        }
        if self.kernel.iter().any(|q| !f.apply_operator(q).is_zero()) {
            return false;
        }
        let stable = self.class == GitClass::Stable;
        match self.branch {
            Branch::SI4Nonzero => stable && !self.invariants.i4.is_zero(),
            Branch::SRank3 => {
                stable
                    && self.invariants.i4.is_zero()
                    && !self.invariants.curve_equation().is_zero()
                    && self.kernel.len() == 1
                    && self.kernel[0].degree() == 3
            }
            Branch::SRank2 => {
                stable
                    && self.kernel.first().is_some_and(|q| q.degree() == 2)
                    && self.pi.as_ref() == Some(&WeightedPoint::special_point())
            }
            Branch::SRank5 => {
                stable
                    && self.kernel.len() == 1
                    && self.kernel[0].degree() == 3
                    && self.pi.as_ref().is_some_and(|p| {
                        p.on_curve_c() && *p != WeightedPoint::special_point()
                    })
            }
            Branch::M3 => self.pi.as_ref() == Some(&WeightedPoint::triple_root_point()),
            Branch::M4 | Branch::M5 | Branch::M6 => self.invariants.all_zero(),
        }
    }
}

fn check_sextic(f: &BinaryForm) -> Result<()> {
    if f.degree() != 6 {
        return Err(Error::WrongDegree {
            expected: 6,
            got: f.degree(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(())
}

struct Stratified {
    class: GitClass,
    profile: MultiplicityProfile,
    invariants: InvariantVector,
}

fn stratify(f: &BinaryForm) -> Result<Stratified> {
    check_sextic(f)?;
    let profile = squarefree_decomposition(f)?;
    let invariants = invariants(f)?;
    let class = GitClass::from_multiplicity(profile.max_multiplicity());
    if invariants.all_zero() != (class == GitClass::NullCone) {
        return Err(Error::Inconsistent(format!(
            "multiplicity {} disagrees with invariant vanishing",
            profile.max_multiplicity()
        )));
    }
    Ok(Stratified {
        class,
        profile,
        invariants,
    })
}

pub fn git_class(f: &BinaryForm) -> Result<GitClass> {
    Ok(stratify(f)?.class)
}

pub fn rank_sextic(f: &BinaryForm) -> Result<RankCertificate> {
    let Stratified {
        class,
        profile,
        invariants,
    } = stratify(f)?;
    let pi = match class {
        GitClass::NullCone => None,
        _ => Some(WeightedPoint::from_invariants(&invariants)?),
    };
    let mut kernel = Vec::new();
    let branch = match profile.max_multiplicity() {
        6 => Branch::M6,
        5 => Branch::M5,
        4 => Branch::M4,
        3 => Branch::M3,
        _ if !invariants.i4.is_zero() => Branch::SI4Nonzero,
        _ => {
            // dim Ann(f)₃ is 1 unless Ann(f)₂ ≠ 0, which only happens at p.
            let ann3 = ann_basis(f, 3)?;
            let single = |ann3: Vec<DiffOperator>| {
                if ann3.len() == 1 {
                    Ok(ann3)
                } else {
                    Err(Error::Inconsistent(format!(
                        "stable sextic with I4 = 0 has dim Ann_3 = {}",
                        ann3.len()
                    )))
                }
            };
            if !invariants.curve_equation().is_zero() {
                kernel = single(ann3)?;
                Branch::SRank3
            } else {
                let ann2 = ann_basis(f, 2)?;
                if ann2.is_empty() {
                    kernel = single(ann3)?;
                    Branch::SRank5
                } else {
                    kernel = ann2;
                    Branch::SRank2
                }
            }
        }
    };
    Ok(RankCertificate {
        rank: branch.rank(),
        branch,
        class,
        profile,
        invariants,
        pi,
        kernel,
    })
}

/// Whether two stable sextics lie in one `SL₂(C)`-orbit: true iff their
/// images in `P(1,2,3,5)` agree.
pub fn orbit_equivalent(f: &BinaryForm, g: &BinaryForm) -> Result<bool> {
    let pf = stable_point(f)?;
    let pg = stable_point(g)?;
    Ok(pf == pg)
}

pub(crate) fn stable_point(f: &BinaryForm) -> Result<WeightedPoint> {
    let s = stratify(f)?;
    if s.class != GitClass::Stable {
        return Err(Error::NotStable(s.class));
    }
    WeightedPoint::from_invariants(&s.invariants)
}

/// Which case of the `I₄ = 0` locus a form falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElliottCase {
    /// `I₄ ≠ 0`.
    I4Nonzero,
    /// Stable, off the curve `C`: rank 3.
    Rank3OffCurve,
    /// Stable, at the point `p` of `C`: rank 2.
    Rank2AtPoint,
    /// Stable, on `C ∖ {p}`: rank 5.
    Rank5OnCurve,
    /// `I₄ = 0` because the form is in the null cone.
    NullCone,
}

impl ElliottCase {
    pub fn label(self) -> &'static str {
        match self {
            ElliottCase::I4Nonzero => "i4-nonzero",
            ElliottCase::Rank3OffCurve => "rank3-off-curve",
            ElliottCase::Rank2AtPoint => "rank2-at-p",
            ElliottCase::Rank5OnCurve => "rank5-on-curve",
            ElliottCase::NullCone => "null-cone",
        }
    }
}

/// Report on the old claim that `I₄ = 0` characterizes sums of three sixth
/// powers.
#[derive(Clone, Debug)]
pub struct ElliottReport {
    pub i4_zero: bool,
    pub case: ElliottCase,
    pub rank: usize,
    pub pi: Option<WeightedPoint>,
    /// True when the form has `I₄ = 0` and yet is not a sum of three sixth
    /// powers.
    pub counterexample: bool,
}

pub fn elliott_analysis(f: &BinaryForm) -> Result<ElliottReport> {
    let cert = rank_sextic(f)?;
    let i4_zero = cert.invariants.i4.is_zero();
    let case = match cert.branch {
        _ if !i4_zero => ElliottCase::I4Nonzero,
        Branch::SRank3 => ElliottCase::Rank3OffCurve,
        Branch::SRank2 => ElliottCase::Rank2AtPoint,
        Branch::SRank5 => ElliottCase::Rank5OnCurve,
        Branch::M4 | Branch::M5 | Branch::M6 => ElliottCase::NullCone,
        // Triple-root and I₄ ≠ 0 stable forms have I₄ ≠ 0.
        Branch::M3 | Branch::SI4Nonzero => {
            return Err(Error::Inconsistent("I4 vanishes on a rank-4 branch".into()))
        }
    };
    Ok(ElliottReport {
        i4_zero,
        case,
        rank: cert.rank,
        pi: cert.pi,
        counterexample: i4_zero && cert.rank > 3,
    })
}
