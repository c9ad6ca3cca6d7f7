use thiserror::Error;

use crate::classifier::GitClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the zero form has no rank")]
    ZeroForm,
    #[error("gcd of two zero forms is undefined")]
    BothZero,
    #[error("expected a form of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("operation needs a form of degree at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("catalecticant degree {s} out of range 0..={d}")]
    DegreeOutOfRange { s: usize, d: usize },
    #[error("matrix determinant is {0}, expected 1")]
    NotUnimodular(String),
    #[error("all invariants vanish: the form lies in the null cone")]
    NullCone,
    #[error("form is not stable ({0})")]
    NotStable(GitClass),
    #[error("no square-free apolar operator of degree {degree} found after {tries} tries")]
    RetryBudgetExhausted { degree: usize, tries: usize },
    #[error("apolar ideal has no elements in degree {0}")]
    EmptyApolarComponent(usize),
    #[error("root finder did not converge (best residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error("coefficient system is ill-conditioned (condition number {0:e})")]
    IllConditioned(f64),
    #[error("residual {residual:e} exceeds tolerance {tol:e}")]
    Tolerance { residual: f64, tol: f64 },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
