use serde::Serialize;

use crate::QPolynomial;

/// Three-valued outcome of a geometric decision.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<Y, N> {
    Yes(Y),
    No(N),
    Inconclusive(Unresolved),
}

/// Why a decision could not be reached, with the ideal left undecided.
#[derive(Clone, Debug, PartialEq)]
pub struct Unresolved {
    pub reason: String,
    pub ideal: Vec<QPolynomial>,
}

impl Unresolved {
    pub fn new(reason: impl Into<String>, ideal: Vec<QPolynomial>) -> Self {
        Unresolved {
            reason: reason.into(),
            ideal,
        }
    }
}

/// Serializable outcome tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Yes,
    No,
    Inconclusive,
}

impl<Y, N> Verdict<Y, N> {
    pub fn outcome(&self) -> Outcome {
        match self {
            Verdict::Yes(_) => Outcome::Yes,
            Verdict::No(_) => Outcome::No,
            Verdict::Inconclusive(_) => Outcome::Inconclusive,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive(_))
    }

    pub fn yes(self) -> Option<Y> {
        match self {
            Verdict::Yes(y) => Some(y),
            _ => None,
        }
    }

    pub fn no(self) -> Option<N> {
        match self {
            Verdict::No(n) => Some(n),
            _ => None,
        }
    }

    pub fn map_yes<Z>(self, f: impl FnOnce(Y) -> Z) -> Verdict<Z, N> {
        match self {
            Verdict::Yes(y) => Verdict::Yes(f(y)),
            Verdict::No(n) => Verdict::No(n),
            Verdict::Inconclusive(u) => Verdict::Inconclusive(u),
        }
    }

    pub fn map_no<Z>(self, f: impl FnOnce(N) -> Z) -> Verdict<Y, Z> {
        match self {
            Verdict::Yes(y) => Verdict::Yes(y),
            Verdict::No(n) => Verdict::No(f(n)),
            Verdict::Inconclusive(u) => Verdict::Inconclusive(u),
        }
    }

    pub fn as_ref(&self) -> Verdict<&Y, &N> {
        match self {
            Verdict::Yes(y) => Verdict::Yes(y),
            Verdict::No(n) => Verdict::No(n),
            Verdict::Inconclusive(u) => Verdict::Inconclusive(u.clone()),
        }
    }
}
