//! JSON report records. Exact quantities are strings (`"p/q"`, or an
//! integer when the denominator is 1); only numeric decompositions carry
//! floats.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use waring_core::{
    decompose, decompose_general, git_class, invariants, orbit_equivalent, rank_sextic,
    squarefree_decomposition, sylvester_rank, BinaryForm, DecomposeOptions, Error, GitClass,
    Rational, WaringDecomposition, WeightedPoint,
};

use crate::parse::parse_input;
use crate::CliError;

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub decompose: bool,
    /// Use Sylvester's algorithm for any degree instead of the sextic
    /// classifier.
    pub general: bool,
    pub tol: f64,
    pub seed: u64,
    pub timing: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            decompose: false,
            general: false,
            tol: DecomposeOptions::default().tol,
            seed: 0,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsRecord {
    #[serde(rename = "I2")]
    pub i2: String,
    #[serde(rename = "I4")]
    pub i4: String,
    #[serde(rename = "I6")]
    pub i6: String,
    #[serde(rename = "I10")]
    pub i10: String,
}

/// A weighted point `(z₁ : z₂ : z₃ : z₅)` or the label `"null-cone"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PiRecord {
    Point([String; 4]),
    Label(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub multiplicity: usize,
    /// Number of distinct roots with this multiplicity.
    pub roots: usize,
    /// Their product, monic in the first nonzero coefficient.
    pub factor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    /// Real and imaginary parts of the `x` coefficient.
    pub x: [f64; 2],
    pub y: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    /// Linear forms `ℓⱼ` with `f = Σ ℓⱼ^d`.
    pub terms: Vec<TermRecord>,
    pub residual: f64,
    pub operator: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    pub input: String,
    pub form: String,
    pub degree: usize,
    pub plain: Vec<String>,
    pub binomial: Vec<String>,
    /// `classifier` for the sextic decision tree, `apolarity` for the
    /// any-degree path.
    pub method: String,
    pub invariants: Option<InvariantsRecord>,
    pub pi: Option<PiRecord>,
    pub git_class: Option<String>,
    pub multiplicity_profile: Vec<ProfileEntry>,
    pub rank: usize,
    pub branch: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    /// `parse` or `math`.
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    pub input: String,
    pub error: ErrorBody,
}

pub fn error_record(input: &str, line: Option<usize>, e: &CliError) -> ErrorRecord {
    ErrorRecord {
        line,
        input: input.to_string(),
        error: ErrorBody {
            kind: e.kind().to_string(),
            message: e.to_string(),
            position: e.position(),
        },
    }
}

fn q(r: &Rational) -> String {
    r.to_string()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(q).collect()
}

fn pi_record(p: &WeightedPoint) -> PiRecord {
    PiRecord::Point(p.representative().each_ref().map(q))
}

fn profile_entries(f: &BinaryForm) -> Result<Vec<ProfileEntry>, CliError> {
    let p = squarefree_decomposition(f)?;
    Ok(p.factors
        .iter()
        .rev()
        .map(|(&m, g)| ProfileEntry {
            multiplicity: m,
            roots: g.degree(),
            factor: g.to_string(),
        })
        .collect())
}

fn decomposition_record(d: &WaringDecomposition) -> DecompositionRecord {
    DecompositionRecord {
        terms: d
            .forms
            .iter()
            .map(|l| {
                let (a, b) = l.coefficients();
                TermRecord {
                    x: [a.re, a.im],
                    y: [b.re, b.im],
                }
            })
            .collect(),
        residual: d.residual,
        operator: d.operator.to_string(),
    }
}

fn require_sextic(f: &BinaryForm) -> Result<(), CliError> {
    if f.degree() == 6 {
        Ok(())
    } else {
        Err(CliError::Math(Error::WrongDegree {
            expected: 6,
            got: f.degree(),
        }))
    }
}

/// Full report for one input line.
pub fn build_report(input: &str, opts: &ReportOptions) -> Result<ReportRecord, CliError> {
    let start = Instant::now();
    let f = parse_input(input)?;
    let mut rec = ReportRecord {
        line: None,
        input: input.trim().to_string(),
        form: f.to_string(),
        degree: f.degree(),
        plain: strings(f.coeffs()),
        binomial: strings(&f.binomial_coeffs()),
        method: String::new(),
        invariants: None,
        pi: None,
        git_class: None,
        multiplicity_profile: profile_entries(&f)?,
        rank: 0,
        branch: None,
        decomposition: None,
        timing_ms: None,
    };
    let dopts = DecomposeOptions {
        tol: opts.tol,
        seed: opts.seed,
        ..Default::default()
    };
    if opts.general {
        rec.method = "apolarity".into();
        rec.rank = sylvester_rank(&f)?;
        if opts.decompose {
            rec.decomposition = Some(decomposition_record(&decompose_general(&f, &dopts)?));
        }
    } else {
        require_sextic(&f)?;
        let cert = rank_sextic(&f)?;
        let inv = &cert.invariants;
        rec.method = "classifier".into();
        rec.invariants = Some(InvariantsRecord {
            i2: q(&inv.i2),
            i4: q(&inv.i4),
            i6: q(&inv.i6),
            i10: q(&inv.i10),
        });
        rec.pi = Some(match &cert.pi {
            Some(p) => pi_record(p),
            None => PiRecord::Label(GitClass::NullCone.label().into()),
        });
        rec.git_class = Some(cert.class.label().into());
        rec.rank = cert.rank;
        rec.branch = Some(cert.branch.label().into());
        if opts.decompose {
            rec.decomposition = Some(decomposition_record(&decompose(&f, &dopts)?));
        }
    }
    if opts.timing {
        rec.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(rec)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub input: String,
    pub form: String,
    pub invariants: InvariantsRecord,
    pub pi: PiRecord,
    pub git_class: String,
}

pub fn invariants_report(input: &str) -> Result<InvariantsReport, CliError> {
    let f = parse_input(input)?;
    require_sextic(&f)?;
    let inv = invariants(&f)?;
    let class = git_class(&f)?;
    let pi = if inv.all_zero() {
        PiRecord::Label(GitClass::NullCone.label().into())
    } else {
        pi_record(&WeightedPoint::from_invariants(&inv)?)
    };
    Ok(InvariantsReport {
        input: input.trim().to_string(),
        form: f.to_string(),
        invariants: InvariantsRecord {
            i2: q(&inv.i2),
            i4: q(&inv.i4),
            i6: q(&inv.i6),
            i10: q(&inv.i10),
        },
        pi,
        git_class: class.label().into(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub first: String,
    pub second: String,
    pub equivalent: bool,
    pub pi: [PiRecord; 2],
}

/// Whether two stable sextics are `SL₂`-equivalent. A non-stable input is
/// reported with its stratum.
pub fn orbit_report(a: &str, b: &str) -> Result<OrbitReport, CliError> {
    let f = parse_input(a)?;
    let g = parse_input(b)?;
    let mut points = Vec::new();
    for h in [&f, &g] {
        require_sextic(h)?;
        let class = git_class(h)?;
        if class != GitClass::Stable {
            return Err(CliError::Math(Error::NotStable(class)));
        }
        points.push(pi_record(&WeightedPoint::from_invariants(&invariants(h)?)?));
    }
    let equivalent = orbit_equivalent(&f, &g)?;
    let [p, q] = <[PiRecord; 2]>::try_from(points).expect("two points");
    Ok(OrbitReport {
        first: f.to_string(),
        second: g.to_string(),
        equivalent,
        pi: [p, q],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank(s: &str) -> (usize, Option<String>) {
        let r = build_report(s, &ReportOptions::default()).unwrap();
        (r.rank, r.branch)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank("x^6 + 6*x*y^5 + 5*y^6"), (5, Some("S-rank5".into())));
        assert_eq!(rank("binomial: 0,0,0,1,0,0,0"), (4, Some("M3".into())));
        assert_eq!(rank("x^5*y"), (6, Some("M5".into())));
    }

    #[test]
    fn general_path_handles_other_degrees() {
        let opts = ReportOptions {
            general: true,
            ..Default::default()
        };
        let r = build_report("x^2*y", &opts).unwrap();
        assert_eq!((r.rank, r.method.as_str(), r.branch), (3, "apolarity", None));
        let e = build_report("x^2*y", &ReportOptions::default()).unwrap_err();
        assert_eq!(e.exit_code(), crate::EXIT_MATH);
    }

    #[test]
    fn exact_strings() {
        let r = build_report("x^6 + 6*x*y^5 + y^6", &ReportOptions::default()).unwrap();
        assert_eq!(r.pi, Some(PiRecord::Point(["1", "0", "-1", "-3124"].map(String::from))));
        assert_eq!(r.binomial[5], "1");
        let n = build_report("x^4*y^2", &ReportOptions::default()).unwrap();
        assert_eq!(n.pi, Some(PiRecord::Label("null-cone".into())));
        assert_eq!(n.multiplicity_profile[0].multiplicity, 4);
    }

    #[test]
    fn orbit_examples() {
        assert!(orbit_report("x^6+y^6", "x^6+2*y^6").unwrap().equivalent);
        assert!(!orbit_report("x^6+y^6", "x^6+6*x*y^5+y^6").unwrap().equivalent);
        let e = orbit_report("x^3*y^3", "x^6+y^6").unwrap_err();
        assert!(e.to_string().contains("semistable-not-stable"), "{e}");
    }

    #[test]
    fn record_round_trips() {
        let opts = ReportOptions {
            decompose: true,
            ..Default::default()
        };
        let r = build_report("x^6 + y^6", &opts).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<ReportRecord>(&s).unwrap(), r);
    }
}
