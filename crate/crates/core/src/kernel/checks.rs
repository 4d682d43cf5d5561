//! Randomised law checks over the supported kernel combinations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::adjoint::{left_adjoint, right_adjoint};
use super::compose::compose;
use super::expr::{Atom, KernelExpr};
use super::hochschild::{hh_action, HochschildClass};
use super::morphism::LogMorphism;
use crate::error::Result;
use crate::log_product::LogPair;

/// Associativity and both unit laws on a random triple of diagonal atoms
/// drawn from `seed`.
pub fn bicategory_law_check(seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pair = random_projective(&mut rng, 1..=4);
    let [a, b, c] = [0; 3].map(|_| random_sum(&mut rng, |r| random_diag(r, pair)));
    let unit = KernelExpr::from_atom(Atom::diag(pair, 0, 0));
    let assoc = compose(&compose(&a, &b)?, &c)? == compose(&a, &compose(&b, &c)?)?;
    let mut units = true;
    for e in [&a, &b, &c] {
        units &= compose(&unit, e)? == *e && compose(e, &unit)? == *e;
    }
    Ok(assoc && units)
}

/// A composable pair `E: X -> Y`, `F: Y -> Z` with a supported composite.
#[derive(Clone, Debug)]
pub struct KernelPair {
    pub route: &'static str,
    pub first: KernelExpr,
    pub second: KernelExpr,
}

pub const ROUTES: [&str; 8] = [
    "diag.diag",
    "graph.diag",
    "diag.graph",
    "graph.tgraph",
    "tgraph.diag",
    "diag.tgraph",
    "graph.graph",
    "tgraph.tgraph",
];

fn random_projective<R: Rng>(rng: &mut R, range: std::ops::RangeInclusive<u32>) -> LogPair {
    LogPair::projective(rng.gen_range(range)).expect("positive dimension")
}

fn twist<R: Rng>(rng: &mut R) -> i64 {
    rng.gen_range(-5..=5)
}

fn shift<R: Rng>(rng: &mut R) -> i64 {
    rng.gen_range(-4..=4)
}

fn random_diag<R: Rng>(rng: &mut R, pair: LogPair) -> Atom {
    Atom::diag(pair, twist(rng), shift(rng))
}

fn random_graph<R: Rng>(rng: &mut R, f: LogMorphism) -> Atom {
    Atom::graph(f, twist(rng), shift(rng))
}

fn random_sum<R: Rng>(rng: &mut R, mut atom: impl FnMut(&mut R) -> Atom) -> KernelExpr {
    let first = atom(rng);
    let mut e = KernelExpr::from_atom(first);
    for _ in 0..rng.gen_range(0..3) {
        let a = atom(rng);
        e.add(a, rng.gen_range(1..=2)).expect("atoms share endpoints");
    }
    e
}

/// Draws a random supported pair.
pub fn random_kernel_pair<R: Rng>(rng: &mut R) -> Result<KernelPair> {
    let route = *ROUTES.choose(rng).expect("non-empty");
    let p1 = LogPair::p1();
    let pn = random_projective(rng, 2..=4);
    let f = LogMorphism::transversal(pn, rng.gen_range(1..=3))?;
    let f1 = LogMorphism::transversal(pn, 1)?;
    let cover = LogMorphism::transversal(p1, rng.gen_range(2..=3))?;
    let (first, second) = match route {
        "diag.diag" => {
            let pair = random_projective(rng, 1..=4);
            (
                random_sum(rng, |r| random_diag(r, pair)),
                random_sum(rng, |r| random_diag(r, pair)),
            )
        }
        "graph.diag" => (
            random_sum(rng, |r| random_graph(r, f)),
            random_sum(rng, |r| random_diag(r, pn)),
        ),
        "diag.graph" => (
            random_sum(rng, |r| random_diag(r, p1)),
            random_sum(rng, |r| random_graph(r, f)),
        ),
        "graph.tgraph" => (
            random_sum(rng, |r| random_graph(r, f1)),
            random_sum(rng, |r| random_graph(r, f1).transpose()),
        ),
        "tgraph.diag" => (
            random_sum(rng, |r| random_graph(r, f).transpose()),
            random_sum(rng, |r| random_diag(r, p1)),
        ),
        "diag.tgraph" => (
            random_sum(rng, |r| random_diag(r, pn)),
            random_sum(rng, |r| random_graph(r, f).transpose()),
        ),
        "graph.graph" => (
            random_sum(rng, |r| random_graph(r, cover)),
            random_sum(rng, |r| random_graph(r, f)),
        ),
        _ => (
            random_sum(rng, |r| random_graph(r, f).transpose()),
            random_sum(rng, |r| random_graph(r, cover).transpose()),
        ),
    };
    Ok(KernelPair {
        route,
        first,
        second,
    })
}

/// Outcome of the functoriality checks on one pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctorialityReport {
    pub right_adjoint: bool,
    pub left_adjoint: bool,
    pub hochschild: bool,
}

impl FunctorialityReport {
    pub fn all(&self) -> bool {
        self.right_adjoint && self.left_adjoint && self.hochschild
    }
}

/// Compares adjoints of the composite with composites of adjoints, and the
/// action on `HH^log` of the composite with the reversed composite of
/// actions.
pub fn functoriality_check(pair: &KernelPair) -> Result<FunctorialityReport> {
    let (e, f) = (&pair.first, &pair.second);
    let fe = compose(e, f)?;
    let right = right_adjoint(&fe)? == compose(&right_adjoint(f)?, &right_adjoint(e)?)?;
    let left = left_adjoint(&fe)? == compose(&left_adjoint(f)?, &left_adjoint(e)?)?;
    let beta = HochschildClass::unit(f.target());
    let direct = hh_action(&fe, &beta)?;
    let stepwise = hh_action(e, &hh_action(f, &beta)?)?;
    Ok(FunctorialityReport {
        right_adjoint: right,
        left_adjoint: left,
        hochschild: direct == stepwise,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bicategory_laws_hold() {
        for seed in 0..20 {
            assert!(bicategory_law_check(seed).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn every_route_is_supported_and_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..200 {
            let pair = random_kernel_pair(&mut rng).unwrap();
            let report = functoriality_check(&pair).unwrap();
            assert!(report.all(), "{} {} {}", pair.route, pair.first, pair.second);
            seen.insert(pair.route);
        }
        assert_eq!(seen.len(), ROUTES.len());
    }
}
