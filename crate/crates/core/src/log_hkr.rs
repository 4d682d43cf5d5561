//! Split models of log forms, the log Serre functor and log Hochschild
//! homology through the HKR decomposition
//! `HH_n = sum_{q-p=n} H^p(wedge^q Omega^log)`.

use std::fmt;

use crate::cohomology::{
    binomial, euler_characteristic, graded_cohomology, GradedDim, LineBundle, SplitBundle,
};
use crate::error::{Error, Result};
use crate::log_product::{LogPair, PairKind};

/// `Omega^1(log D)` as a split bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogCotangentModel {
    pub pair: LogPair,
    pub omega_log: SplitBundle,
}

/// `P^n`: `O(-1)^n`. Curves: one line bundle of degree `2g - 1`.
pub fn log_cotangent(pair: &LogPair) -> Result<LogCotangentModel> {
    pair.require_proper()?;
    let omega_log = match pair.kind() {
        PairKind::ProjSpace(n) => SplitBundle::line(*pair, LineBundle::Degree(-1), n as u64, 0),
        PairKind::Curve(g) => SplitBundle::line(*pair, LineBundle::Degree(2 * g as i64 - 1), 1, 0),
        PairKind::AffineLocal => unreachable!("rejected as non-proper"),
    };
    Ok(LogCotangentModel {
        pair: *pair,
        omega_log,
    })
}

/// `T(-log D)`, the dual model: `O(1)^n` on `P^n`, degree `1 - 2g` on curves.
pub fn log_tangent(pair: &LogPair) -> Result<SplitBundle> {
    Ok(log_cotangent(pair)?.omega_log.dual())
}

pub fn log_wedge(model: &LogCotangentModel, q: i64) -> Result<SplitBundle> {
    model.omega_log.exterior_power(q)
}

/// `sum_q wedge^q(bundle)[shift_sign * q]`.
fn graded_wedges(bundle: &SplitBundle, shift_sign: i64) -> Result<SplitBundle> {
    let mut total = SplitBundle::zero(*bundle.base());
    for q in 0..=bundle.rank() as i64 {
        total = total.direct_sum(&bundle.exterior_power(q)?.shift(shift_sign * q))?;
    }
    Ok(total)
}

/// `Sym(Omega^log[1])` as a shifted split bundle.
pub fn sym_omega_shifted(pair: &LogPair) -> Result<SplitBundle> {
    graded_wedges(&log_cotangent(pair)?.omega_log, 1)
}

/// Dimensions of `HH^log_n`.
pub fn hkr_homology(pair: &LogPair) -> Result<GradedDim> {
    // wedge^q[q] puts H^p in degree p - q = -n.
    Ok(graded_cohomology(&sym_omega_shifted(pair)?)?.negated())
}

/// Dimensions of `HH^n_log = sum_{p+q=n} H^p(wedge^q T^log)`.
pub fn hkr_cohomology(pair: &LogPair) -> Result<GradedDim> {
    graded_cohomology(&graded_wedges(&log_tangent(pair)?, -1)?)
}

/// `S^log_X = wedge^{dim} Omega^log [dim]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSerre {
    pub pair: LogPair,
    pub line: LineBundle,
    pub shift: i64,
}

impl LogSerre {
    pub fn bundle(&self) -> SplitBundle {
        SplitBundle::line(self.pair, self.line, 1, self.shift)
    }

    pub fn inverse(&self) -> LogSerre {
        LogSerre {
            pair: self.pair,
            line: self.line.dual(&self.pair),
            shift: -self.shift,
        }
    }

    pub fn degree(&self) -> i64 {
        self.line.degree(&self.pair)
    }
}

impl fmt::Display for LogSerre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bundle())
    }
}

pub fn log_serre(pair: &LogPair) -> Result<LogSerre> {
    let model = log_cotangent(pair)?;
    let dim = pair.dim() as i64;
    let top = log_wedge(&model, dim)?;
    let s = top.summands()[0];
    Ok(LogSerre {
        pair: *pair,
        line: s.line,
        shift: dim,
    })
}

/// Relative Serre functor of the log diagonal, `omega^{-1}(-D)[-dim]`,
/// computed from the canonical degree and the boundary degree alone.
pub fn relative_serre_of_log_diagonal(pair: &LogPair) -> Result<LogSerre> {
    pair.require_proper()?;
    let omega_degree = match pair.kind() {
        PairKind::ProjSpace(n) => -(n as i64) - 1,
        PairKind::Curve(g) => 2 * g as i64 - 2,
        PairKind::AffineLocal => unreachable!("rejected as non-proper"),
    };
    let boundary_degree = 1;
    Ok(LogSerre {
        pair: *pair,
        line: LineBundle::Degree(-omega_degree - boundary_degree).normalize(pair),
        shift: -(pair.dim() as i64),
    })
}

/// `h^p(P^n, Omega^q(k))` by Bott's formula.
pub fn bott_dims(n: u32, q: u32, k: i64) -> Result<GradedDim> {
    let (n64, q64) = (n as i64, q as i64);
    let mut g = GradedDim::new();
    if q > n {
        return Ok(g);
    }
    if k == 0 {
        g.add(q64, 1);
    } else if k > q64 {
        let a = binomial((k + n64 - q64) as u64, k as u64)?;
        let b = binomial((k - 1) as u64, q as u64)?;
        g.add(0, a.checked_mul(b).ok_or(Error::Overflow("Bott formula"))?);
    } else if k < q64 - n64 {
        let a = binomial((q64 - k) as u64, (-k) as u64)?;
        let b = binomial((-k - 1) as u64, (n - q) as u64)?;
        g.add(n64, a.checked_mul(b).ok_or(Error::Overflow("Bott formula"))?);
    }
    Ok(g)
}

/// Euler-characteristic form of the residue sequence
/// `0 -> Omega^q -> Omega^q(log H) -> Omega^{q-1}_H -> 0` on `P^n`,
/// checked against the split model.
pub fn residue_euler_check(n: u32, q: u32) -> Result<bool> {
    let pair = LogPair::projective(n)?;
    if q == 0 || q > n {
        return Err(Error::WedgeOutOfRange {
            q: q as i64,
            rank: n as u64,
        });
    }
    let model = euler_characteristic(&log_wedge(&log_cotangent(&pair)?, q as i64)?)?;
    let ambient = bott_dims(n, q, 0)?.euler();
    let hyperplane = bott_dims(n - 1, q - 1, 0)?.euler();
    Ok(model == ambient + hyperplane)
}

/// Whether `HH^log` is one-dimensional in degree 0.
pub fn is_scalar_regime(pair: &LogPair) -> Result<bool> {
    Ok(hkr_homology(pair)? == GradedDim::from_pairs([(0, 1)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> LogPair {
        LogPair::projective(n).unwrap()
    }

    #[test]
    fn cotangent_models() {
        assert_eq!(log_cotangent(&LogPair::p1()).unwrap().omega_log.to_string(), "O(-1)");
        assert_eq!(log_cotangent(&p(2)).unwrap().omega_log.to_string(), "O(-1)^2");
        assert_eq!(log_cotangent(&LogPair::curve(2)).unwrap().omega_log.to_string(), "O(3)");
        assert!(matches!(
            log_cotangent(&LogPair::affine_local()),
            Err(Error::NonProper(_))
        ));
    }

    #[test]
    fn wedges() {
        let m = log_cotangent(&p(2)).unwrap();
        assert_eq!(log_wedge(&m, 2).unwrap().to_string(), "O(-2)");
        assert_eq!(log_wedge(&m, 0).unwrap().to_string(), "O");
        assert!(matches!(log_wedge(&m, 3), Err(Error::WedgeOutOfRange { .. })));
    }

    #[test]
    fn serre_functors() {
        assert_eq!(log_serre(&LogPair::p1()).unwrap().to_string(), "O(-1)[1]");
        assert_eq!(log_serre(&p(2)).unwrap().to_string(), "O(-2)[2]");
        assert_eq!(log_serre(&LogPair::curve(3)).unwrap().to_string(), "O(5)[1]");
        for pair in [LogPair::p1(), p(2), p(4), LogPair::curve(1), LogPair::curve(3)] {
            assert_eq!(
                log_serre(&pair).unwrap().inverse(),
                relative_serre_of_log_diagonal(&pair).unwrap()
            );
        }
    }

    #[test]
    fn hkr_examples() {
        let k0 = GradedDim::from_pairs([(0, 1)]);
        assert_eq!(hkr_homology(&LogPair::p1()).unwrap(), k0);
        assert_eq!(hkr_homology(&p(2)).unwrap(), k0);
        assert_eq!(
            hkr_homology(&LogPair::curve(1)).unwrap(),
            GradedDim::from_pairs([(-1, 1), (0, 1), (1, 1)])
        );
        assert_eq!(hkr_cohomology(&p(2)).unwrap().get(0), 1);
    }

    #[test]
    fn bott_examples() {
        // Omega^1_{P^2} has only H^1 = k.
        assert_eq!(bott_dims(2, 1, 0).unwrap(), GradedDim::from_pairs([(1, 1)]));
        // Omega^1_{P^2}(2): Euler sequence gives 9 - 6 = 3 sections.
        assert_eq!(bott_dims(2, 1, 2).unwrap(), GradedDim::from_pairs([(0, 3)]));
        // Omega^0 = O recovers the line-bundle formula.
        assert_eq!(bott_dims(3, 0, -5).unwrap(), GradedDim::from_pairs([(3, 4)]));
        assert_eq!(bott_dims(3, 0, 2).unwrap(), GradedDim::from_pairs([(0, 10)]));
    }

    #[test]
    fn residue_checks() {
        assert!(residue_euler_check(2, 1).unwrap());
        assert!(residue_euler_check(1, 1).unwrap());
        assert!(residue_euler_check(3, 2).unwrap());
        assert!(residue_euler_check(3, 0).is_err());
    }
}
