use super::expr::{Atom, KernelExpr};
use super::morphism::LogMorphism;
use crate::cohomology::{LineBundle, SplitBundle, Summand};
use crate::error::{Error, Result};
use crate::log_product::LogPair;

/// Tangent data of the self-intersection of `Gamma_f` and `tau Gamma_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcessData {
    pub intersection_base: LogPair,
    pub tangent_sub: SplitBundle,
    pub tangent_ambient: SplitBundle,
    pub excess: SplitBundle,
    pub splits: bool,
}

/// Splits a bundle into one degree per rank-one summand.
fn degrees(b: &SplitBundle) -> Vec<i64> {
    b.summands()
        .iter()
        .flat_map(|s| std::iter::repeat(s.line.degree(b.base())).take(s.mult as usize))
        .collect()
}

/// Removes `sub` from `ambient` as a multiset of degrees.
fn complement(ambient: &SplitBundle, sub: &SplitBundle) -> Option<SplitBundle> {
    let mut rest = degrees(ambient);
    for d in degrees(sub) {
        let pos = rest.iter().position(|&x| x == d)?;
        rest.remove(pos);
    }
    Some(SplitBundle::new(
        *ambient.base(),
        rest.into_iter().map(|d| Summand {
            line: LineBundle::Degree(d),
            mult: 1,
            shift: 0,
        }),
    ))
}

/// The tangent table for `f: (P^1, pt) -> (P^n, H)` of degree `d`:
/// ambient `T_{P^1} + T^log_{P^1} + f^* T^log_{P^n} = O(2) + O(1) + O(d)^n`,
/// sub `O(2) + O(1)^2`, excess the complement when it exists.
pub fn excess_data(f: &LogMorphism) -> ExcessData {
    let base = f.source();
    let line = |d, m| Summand {
        line: LineBundle::Degree(d),
        mult: m,
        shift: 0,
    };
    let tangent_ambient = SplitBundle::new(
        base,
        [line(2, 1), line(1, 1), line(f.degree(), f.target_dim() as u64)],
    );
    let tangent_sub = SplitBundle::new(base, [line(2, 1), line(1, 2)]);
    let (excess, splits) = match complement(&tangent_ambient, &tangent_sub) {
        Some(e) => (e, true),
        None => (SplitBundle::zero(base), false),
    };
    ExcessData {
        intersection_base: base,
        tangent_sub,
        tangent_ambient,
        excess,
        splits,
    }
}

/// Excess data for composing `a = Gamma_f` with `b = tau Gamma_f`.
pub fn excess_intersection(a: &Atom, b: &Atom) -> Result<ExcessData> {
    let (Atom::Graph { f, .. }, Atom::TGraph { f: g, .. }) = (a, b) else {
        return Err(Error::UnsupportedComposition(format!(
            "excess intersection needs a graph and a transposed graph, got {a} and {b}"
        )));
    };
    if f != g {
        return Err(Error::UnsupportedComposition(format!("graphs of different maps {f} and {g}")));
    }
    let data = excess_data(f);
    if !data.splits {
        return Err(Error::FormalityUnavailable(format!(
            "{} is not a summand of {} for {f}",
            data.tangent_sub, data.tangent_ambient
        )));
    }
    Ok(data)
}

/// `Sym(E^v[1]) = sum_q wedge^q(E^v)[q]` as diagonal atoms.
pub fn sym_decomposition(excess: &SplitBundle) -> Result<KernelExpr> {
    let base = *excess.base();
    let dual = excess.dual();
    let mut out = KernelExpr::zero(base, base);
    for q in 0..=dual.rank() as i64 {
        for s in dual.exterior_power(q)?.summands() {
            out.add(Atom::diag(base, s.line.degree(&base), q), s.mult)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::parse_bundle;

    fn f(n: u32, d: i64) -> LogMorphism {
        LogMorphism::transversal(LogPair::projective(n).unwrap(), d).unwrap()
    }

    #[test]
    fn plane_line_table() {
        let data = excess_data(&f(2, 1));
        assert_eq!(data.tangent_ambient.to_string(), "O(1)^3 + O(2)");
        assert_eq!(data.excess.to_string(), "O(1)");
        assert!(data.splits);
    }

    #[test]
    fn identity_and_p3() {
        let id = excess_data(&f(1, 1));
        assert_eq!(id.excess.rank(), 0);
        assert_eq!(sym_decomposition(&id.excess).unwrap().to_string(), "diag(O,0)");
        assert_eq!(excess_data(&f(3, 1)).excess.to_string(), "O(1)^2");
    }

    #[test]
    fn higher_degree_is_not_formal() {
        let g = f(2, 2);
        assert!(!excess_data(&g).splits);
        let a = Atom::graph(g, 0, 0);
        assert!(matches!(
            excess_intersection(&a, &a.transpose()),
            Err(Error::FormalityUnavailable(_))
        ));
    }

    #[test]
    fn sym_of_rank_two() {
        let p1 = LogPair::p1();
        let e = parse_bundle(p1, "O(1)^2").unwrap();
        assert_eq!(
            sym_decomposition(&e).unwrap().to_string(),
            "diag(O,0)+diag(O(-1),1)+diag(O(-1),1)+diag(O(-2),2)"
        );
        let e = parse_bundle(p1, "O(1)").unwrap();
        assert_eq!(sym_decomposition(&e).unwrap().pretty(), "i_*O ⊕ i_*O(-1)[1]");
    }
}
