//! Outcome of a single exact identity check.

use std::fmt::Debug;

use crate::exact::poly::CoeffDisplay;
use crate::exact::{Ring, SparseMat};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Human-readable residual when the identity fails.
    pub witness: Option<String>,
    /// Extra output worth reporting on success (a polynomial, a root set).
    pub detail: Option<String>,
    pub assumptions: Vec<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, witness: None, detail: None, assumptions: Vec::new() }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { name: name.into(), passed: false, witness: Some(witness.into()), detail: None, assumptions: Vec::new() }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, witness())
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn with_assumptions<I, T>(mut self, a: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        self.assumptions.extend(a.into_iter().map(Into::into));
        self
    }
}

/// Compares two matrices exactly, reporting the first differing entry.
pub fn mat_eq<S: Ring + CoeffDisplay>(name: impl Into<String>, lhs: &SparseMat<S>, rhs: &SparseMat<S>) -> Check {
    let name = name.into();
    match lhs.sub(rhs) {
        Err(e) => Check::fail(name, e.to_string()),
        Ok(d) if d.is_zero() => Check::pass(name),
        Ok(d) => {
            let ((r, c), v) = d.entries().next().expect("nonzero difference");
            Check::fail(name, format!("{} nonzero residual entries, first at ({r}, {c}): {}", d.nnz(), v.coeff_text()))
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
