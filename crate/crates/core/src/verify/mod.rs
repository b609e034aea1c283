//! Executable checks of the structural laws on concrete inputs.
//!
//! Each check returns a [`VerificationReport`]; a failing report always
//! carries a witness (the offending degree, point, box or trial) that can be
//! replayed in isolation from the same input and seed.

mod checks;
mod perturb;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num::Zero;
use thiserror::Error;

use crate::complex::{SimplicialComplex, VertexFunction};
use crate::exec::Exec;
use crate::linalg::{Field, FieldSpec};
use crate::persistence::PersistenceError;
use crate::value::{format_value, Value};

pub use checks::{
    verify_box_laws, verify_critical_support, verify_direct_sum, verify_duality, verify_genericity,
    verify_local_stability, verify_oracle, verify_orthogonality, verify_polynomial, verify_stability,
    verify_total_mass,
};
pub use perturb::{perturb_distinct, perturb_uniform, trial_rng, SHIFT_STEPS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("epsilon {} must be below a third of the grid gap {}", format_value(.epsilon), format_value(.gap))]
    EpsilonTooLarge { epsilon: Value, gap: Value },
    #[error("epsilon must be nonnegative, got {}", format_value(.0))]
    NegativeEpsilon(Value),
    #[error("duality needs an input flagged as a closed manifold")]
    NotManifold,
    #[error("the manifold is not orientable, so duality only holds over a field of characteristic 2, not {0}")]
    NotOrientable(FieldSpec),
    #[error("this check needs the rationals, not {0}")]
    NeedsRationals(FieldSpec),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: String,
    pub passed: bool,
    /// First counterexample found; present whenever the check failed.
    pub witness: Option<String>,
    pub details: Vec<String>,
    pub elapsed: Duration,
}

impl fmt::Display for VerificationReport {
    /// Timing is left out so reports are reproducible byte for byte.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.check)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// Accumulates failures while a check runs.
pub(crate) struct Tally {
    check: &'static str,
    start: Instant,
    failures: Vec<String>,
    details: Vec<String>,
}

impl Tally {
    pub(crate) fn start(check: &'static str) -> Self {
        Tally {
            check,
            start: Instant::now(),
            failures: Vec::new(),
            details: Vec::new(),
        }
    }

    pub(crate) fn fail(&mut self, witness: String) {
        self.failures.push(witness);
    }

    pub(crate) fn note(&mut self, detail: String) {
        self.details.push(detail);
    }

    pub(crate) fn finish(mut self) -> VerificationReport {
        if self.failures.len() > 1 {
            self.details.push(format!("{} failures in total", self.failures.len()));
        }
        VerificationReport {
            check: self.check.to_string(),
            passed: self.failures.is_empty(),
            witness: self.failures.into_iter().next(),
            details: self.details,
            elapsed: self.start.elapsed(),
        }
    }
}

/// How to draw perturbed functions: shift size, number of trials, base seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationSpec {
    pub epsilon: Value,
    pub trials: usize,
    pub seed: u64,
}

impl PerturbationSpec {
    pub fn new(epsilon: Value, trials: usize, seed: u64) -> Result<Self, VerifyError> {
        if epsilon < Value::zero() {
            return Err(VerifyError::NegativeEpsilon(epsilon));
        }
        Ok(PerturbationSpec { epsilon, trials, seed })
    }
}

/// The input a check runs on, including manifold metadata for duality.
#[derive(Debug, Clone, Copy)]
pub struct Subject<'a> {
    pub complex: &'a SimplicialComplex,
    pub function: &'a VertexFunction,
    pub manifold_dim: Option<usize>,
    pub orientable: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Mass,
    CriticalSupport,
    Stability,
    LocalStability,
    Duality,
    BoxLaws,
    Genericity,
    Oracle,
    DirectSum,
    Orthogonality,
    Polynomial,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Mass,
        Check::CriticalSupport,
        Check::Stability,
        Check::LocalStability,
        Check::Duality,
        Check::BoxLaws,
        Check::Genericity,
        Check::Oracle,
        Check::DirectSum,
        Check::Orthogonality,
        Check::Polynomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Mass => "mass",
            Check::CriticalSupport => "critical-support",
            Check::Stability => "stability",
            Check::LocalStability => "local-stability",
            Check::Duality => "duality",
            Check::BoxLaws => "box-laws",
            Check::Genericity => "genericity",
            Check::Oracle => "oracle",
            Check::DirectSum => "direct-sum",
            Check::Orthogonality => "orthogonality",
            Check::Polynomial => "polynomial",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown check {0:?}")]
pub struct UnknownCheck(pub String);

impl FromStr for Check {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

pub fn run_check<F: Field>(
    field: &F,
    check: Check,
    subject: &Subject<'_>,
    spec: &PerturbationSpec,
    exec: Exec,
) -> Result<VerificationReport, VerifyError> {
    let (k, f) = (subject.complex, subject.function);
    match check {
        Check::Mass => Ok(verify_total_mass(field, k, f, exec)?),
        Check::CriticalSupport => Ok(verify_critical_support(field, k, f, exec)?),
        Check::Stability => Ok(verify_stability(field, k, f, spec, exec)?),
        Check::LocalStability => verify_local_stability(field, k, f, spec, exec),
        Check::Duality => verify_duality(field, subject, exec),
        Check::BoxLaws => Ok(verify_box_laws(field, k, f, exec)?),
        Check::Genericity => Ok(verify_genericity(field, k, f, spec, exec)?),
        Check::Oracle => Ok(verify_oracle(field, k, f, exec)?),
        Check::DirectSum => Ok(verify_direct_sum(field, k, f, exec)?),
        Check::Orthogonality => match field.spec() {
            FieldSpec::Rationals => Ok(verify_orthogonality(k, f, exec)?),
            other => Err(VerifyError::NeedsRationals(other)),
        },
        Check::Polynomial => Ok(verify_polynomial(field, k, f, exec)?),
    }
}
