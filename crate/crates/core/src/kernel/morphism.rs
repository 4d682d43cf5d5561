use std::fmt;

use crate::error::{Error, Result};
use crate::log_product::{LogPair, PairKind};

/// A log morphism `f: (P^1, pt) -> (P^n, H)` with `f^* O(1) = O(degree)`,
/// meeting the boundary transversally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LogMorphism {
    source: LogPair,
    target: LogPair,
    degree: i64,
}

impl LogMorphism {
    pub fn new(source: LogPair, target: LogPair, degree: i64, boundary_transversal: bool) -> Result<Self> {
        if source != LogPair::p1() {
            return Err(Error::UnsupportedMorphism(format!("source {source} is not P1:pt")));
        }
        if !matches!(target.kind(), PairKind::ProjSpace(_)) {
            return Err(Error::UnsupportedMorphism(format!("target {target} is not projective space")));
        }
        if degree < 1 {
            return Err(Error::UnsupportedMorphism(format!("degree {degree} is not positive")));
        }
        if !boundary_transversal {
            return Err(Error::UnsupportedMorphism("image must meet the boundary transversally".into()));
        }
        Ok(Self {
            source,
            target,
            degree,
        })
    }

    /// Transversal morphism of the given degree.
    pub fn transversal(target: LogPair, degree: i64) -> Result<Self> {
        Self::new(LogPair::p1(), target, degree, true)
    }

    pub fn source(&self) -> LogPair {
        self.source
    }

    pub fn target(&self) -> LogPair {
        self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Dimension `n` of the target `P^n`.
    pub fn target_dim(&self) -> i64 {
        self.target.dim() as i64
    }

    pub fn is_identity(&self) -> bool {
        self.target == LogPair::p1() && self.degree == 1
    }

    /// Degree of `f^* O(k)`.
    pub fn pullback(&self, k: i64) -> i64 {
        self.degree * k
    }

    /// `then . self`; needs `self` to land in `P^1`.
    pub fn then(&self, then: &LogMorphism) -> Result<LogMorphism> {
        if self.target != then.source {
            return Err(Error::PairMismatch {
                expected: self.target.to_string(),
                found: then.source.to_string(),
            });
        }
        Ok(LogMorphism {
            source: self.source,
            target: then.target,
            degree: self.degree * then.degree,
        })
    }

    /// Degree of `K_f`, the twist in the right adjoint of `Gamma_{f,*}`:
    /// `d(n+1) - 2`.
    pub(crate) fn adjoint_twist(&self) -> i64 {
        self.degree * (self.target_dim() + 1) - 2
    }

    /// Shift in the right adjoint of `Gamma_{f,*}`: `1 - n`.
    pub(crate) fn adjoint_shift(&self) -> i64 {
        1 - self.target_dim()
    }
}

impl fmt::Display for LogMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} (deg {})", self.source, self.target, self.degree)
    }
}
