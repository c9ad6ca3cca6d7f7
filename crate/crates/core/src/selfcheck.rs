//! Built-in consistency checks: the invariant decision tree against
//! Sylvester's algorithm, `SL₂`-invariance, and certificate soundness.

use std::collections::BTreeMap;
use std::fmt;

use crate::apolarity::sylvester_rank;
use crate::classifier::{rank_sextic, Branch};
use crate::form::BinaryForm;
use crate::generate::{mixed_strata, FormGenerator};
use crate::invariants::invariants;

/// Plain coefficients and expected rank of forms that are replayed on every
/// run. Mostly boundary cases between branches.
pub const REGRESSION_FIXTURES: &[([i64; 7], usize)] = &[
    ([1, 0, 0, 0, 0, 0, 0], 1),
    ([1, 6, 15, 20, 15, 6, 1], 1),
    ([0, 1, 0, 0, 0, 0, 0], 6),
    ([0, 0, 1, 0, 0, 0, 0], 5),
    ([0, 0, 0, 1, 0, 0, 0], 4),
    ([0, 0, 1, 1, 0, 0, 0], 4),
    ([0, 1, 3, 2, 0, 0, 0], 4),
    ([0, 0, 0, 1, 3, 2, 0], 4),
    ([0, 0, 30, 0, 30, 0, 2], 3),
    ([0, 0, 30, 0, 30, 0, 30], 4),
    ([1, 0, 0, 0, 0, 6, 5], 5),
    ([1, 0, 0, 0, 0, 6, 1], 5),
    ([1, 0, 0, 0, 0, 0, 1], 2),
    ([0, 12, 0, 40, 0, 12, 0], 2),
];

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub form: BinaryForm,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.form, self.detail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SelfCheckReport {
    pub samples: usize,
    pub seed: u64,
    pub branch_counts: BTreeMap<Branch, usize>,
    /// Classifier rank differs from the apolarity rank.
    pub oracle: Vec<Mismatch>,
    /// Invariants or rank changed under a unimodular substitution.
    pub invariance: Vec<Mismatch>,
    /// The certificate failed re-verification or the classifier errored.
    pub soundness: Vec<Mismatch>,
    pub fixtures: Vec<Mismatch>,
}

impl SelfCheckReport {
    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn failures(&self) -> usize {
        self.oracle.len() + self.invariance.len() + self.soundness.len() + self.fixtures.len()
    }

    pub fn all_mismatches(&self) -> impl Iterator<Item = (&'static str, &Mismatch)> {
        [
            ("oracle", &self.oracle),
            ("invariance", &self.invariance),
            ("soundness", &self.soundness),
            ("fixture", &self.fixtures),
        ]
        .into_iter()
        .flat_map(|(name, v)| v.iter().map(move |m| (name, m)))
    }
}

impl fmt::Display for SelfCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "samples {} seed {}", self.samples, self.seed)?;
        for b in Branch::ALL {
            writeln!(f, "  {:<13} {}", b.label(), self.branch_counts.get(&b).unwrap_or(&0))?;
        }
        writeln!(f, "oracle equivalence   {} mismatches", self.oracle.len())?;
        writeln!(f, "SL2 invariance       {} mismatches", self.invariance.len())?;
        writeln!(f, "branch soundness     {} mismatches", self.soundness.len())?;
        write!(f, "regression fixtures  {} mismatches", self.fixtures.len())?;
        for (kind, m) in self.all_mismatches() {
            write!(f, "\n  [{kind}] {m}")?;
        }
        Ok(())
    }
}

fn check_form(f: &BinaryForm, gen: &mut FormGenerator, report: &mut SelfCheckReport) {
    let miss = |detail: String| Mismatch {
        form: f.clone(),
        detail,
    };
    let cert = match rank_sextic(f) {
        Ok(c) => c,
        Err(e) => {
            report.soundness.push(miss(format!("classifier error: {e}")));
            return;
        }
    };
    *report.branch_counts.entry(cert.branch).or_default() += 1;
    if !cert.verify(f) {
        report
            .soundness
            .push(miss(format!("certificate for {} does not verify", cert.branch)));
    }
    match sylvester_rank(f) {
        Ok(r) if r == cert.rank => {}
        Ok(r) => report.oracle.push(miss(format!(
            "classifier {} ({}) vs apolarity {r}",
            cert.rank, cert.branch
        ))),
        Err(e) => report.oracle.push(miss(format!("apolarity error: {e}"))),
    }
    let m = gen.unimodular();
    let moved = f.sl2_substitute(&m);
    let same_invariants = invariants(&moved).ok().as_ref() == Some(&cert.invariants);
    let same_rank = rank_sextic(&moved).map(|c| c.rank).ok() == Some(cert.rank);
    if !same_invariants || !same_rank {
        report
            .invariance
            .push(miss(format!("changed under {:?}", m.entries())));
    }
}

/// Replays [`REGRESSION_FIXTURES`] and checks `samples` seeded forms drawn
/// round-robin from every generator stratum.
pub fn run_selfcheck(samples: usize, seed: u64) -> SelfCheckReport {
    let mut report = SelfCheckReport {
        samples,
        seed,
        ..Default::default()
    };
    for (coeffs, expected) in REGRESSION_FIXTURES {
        let f = BinaryForm::from_ints(coeffs);
        let got = rank_sextic(&f).map(|c| c.rank);
        let oracle = sylvester_rank(&f);
        if got.as_ref() != Ok(expected) || oracle.as_ref() != Ok(expected) {
            report.fixtures.push(Mismatch {
                form: f,
                detail: format!("expected {expected}, classifier {got:?}, apolarity {oracle:?}"),
            });
        }
    }
    let strata = mixed_strata();
    let mut gen = FormGenerator::new(seed);
    for i in 0..samples {
        let f = gen.form(strata[i % strata.len()]);
        check_form(&f, &mut gen, &mut report);
    }
    report
}
