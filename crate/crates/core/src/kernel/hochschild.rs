use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::adjoint::{adjoint_exchange_sides, right_adjoint};
use super::compose::compose;
use super::excess::{excess_intersection, sym_decomposition};
use super::expr::{Atom, KernelExpr};
use crate::error::{Error, Result};
use crate::log_hkr::is_scalar_regime;
use crate::log_product::LogPair;

/// A class in `HH^log_*(X)`, stored as scalars per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildClass {
    pub pair: LogPair,
    pub components: BTreeMap<i64, i64>,
}

impl HochschildClass {
    pub fn scalar(pair: LogPair, value: i64) -> Self {
        let components = if value == 0 {
            BTreeMap::new()
        } else {
            BTreeMap::from([(0, value)])
        };
        Self { pair, components }
    }

    pub fn unit(pair: LogPair) -> Self {
        Self::scalar(pair, 1)
    }

    /// The degree-0 component.
    pub fn value(&self) -> i64 {
        self.components.get(&0).copied().unwrap_or(0)
    }
}

impl fmt::Display for HochschildClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Sign convention for shifts in the counit. `Graded` is the correct one;
/// `Ungraded` ignores shifts and exists to exercise failure paths.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TraceSign {
    #[default]
    Graded,
    Ungraded,
}

fn sign(shift: i64, convention: TraceSign) -> i64 {
    match convention {
        TraceSign::Graded if shift.rem_euclid(2) == 1 => -1,
        _ => 1,
    }
}

/// Scalar by which an atom acts on `HH^log = k[0]`.
///
/// A transposed graph into `P^n`, `n >= 2`, factors through the curve
/// `f(P^1)`, whose class vanishes in `HH^log_0(P^n)`; it acts by zero.
pub fn atom_scalar(atom: &Atom, convention: TraceSign) -> i64 {
    match atom {
        Atom::Diag { shift, .. } | Atom::Graph { shift, .. } => sign(*shift, convention),
        Atom::TGraph { f, shift, .. } => {
            if f.target_dim() == 1 {
                sign(*shift, convention)
            } else {
                0
            }
        }
    }
}

fn require_scalar_regime(pair: &LogPair) -> Result<()> {
    if is_scalar_regime(pair)? {
        Ok(())
    } else {
        Err(Error::UnsupportedHHShape(pair.to_string()))
    }
}

fn expr_scalar(e: &KernelExpr, convention: TraceSign) -> i64 {
    e.atoms()
        .iter()
        .map(|(a, m)| *m as i64 * atom_scalar(a, convention))
        .sum()
}

/// `phi_E^HH(beta)` for `E: X -> Y` and `beta` on `Y`; contravariant.
pub fn hh_action(e: &KernelExpr, beta: &HochschildClass) -> Result<HochschildClass> {
    hh_action_with(e, beta, TraceSign::Graded)
}

pub fn hh_action_with(e: &KernelExpr, beta: &HochschildClass, convention: TraceSign) -> Result<HochschildClass> {
    if beta.pair != e.target() {
        return Err(Error::PairMismatch {
            expected: e.target().to_string(),
            found: beta.pair.to_string(),
        });
    }
    require_scalar_regime(&e.source())?;
    require_scalar_regime(&e.target())?;
    Ok(HochschildClass::scalar(
        e.source(),
        expr_scalar(e, convention) * beta.value(),
    ))
}

/// `ch^log(E)` for a kernel on the log diagonal.
pub fn chern_log(e: &KernelExpr) -> Result<HochschildClass> {
    chern_log_with(e, TraceSign::Graded)
}

pub fn chern_log_with(e: &KernelExpr, convention: TraceSign) -> Result<HochschildClass> {
    if !e.is_diagonal() {
        return Err(Error::NotDiagonalSupported(e.to_string()));
    }
    hh_action_with(e, &HochschildClass::unit(e.target()), convention)
}

/// The class `phi^HH_E(1)` distinguished by a kernel `E: (P^1, pt) -> X`,
/// returned on `X`.
pub fn chern_log_expansion(e: &KernelExpr) -> Result<HochschildClass> {
    if e.source() != LogPair::p1() {
        return Err(Error::PairMismatch {
            expected: LogPair::p1().to_string(),
            found: e.source().to_string(),
        });
    }
    let on_source = hh_action(e, &HochschildClass::unit(e.target()))?;
    Ok(HochschildClass::scalar(e.target(), on_source.value()))
}

/// `chi^log(F, E)`: the Chern character of `phi_F^! . phi_E`.
pub fn euler_pairing(e: &KernelExpr, f: &KernelExpr) -> Result<i64> {
    Ok(euler_pairing_traced(e, f)?.value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub label: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerTrace {
    pub steps: Vec<TraceStep>,
    pub value: i64,
}

impl fmt::Display for EulerTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "[{}] {}", s.label, s.text)?;
        }
        writeln!(f, "{}", self.value)
    }
}

/// [`euler_pairing`] with every intermediate kernel recorded.
pub fn euler_pairing_traced(e: &KernelExpr, f: &KernelExpr) -> Result<EulerTrace> {
    let mut steps = Vec::new();
    let mut step = |label: &str, text: String| {
        steps.push(TraceStep {
            label: label.into(),
            text,
        })
    };
    if e.source() != f.source() || e.target() != f.target() {
        return Err(Error::PairMismatch {
            expected: format!("{} -> {}", e.source(), e.target()),
            found: format!("{} -> {}", f.source(), f.target()),
        });
    }
    let x = e.source();
    step("unit", format!("i_*O on {x} acts as 1"));
    let adj = right_adjoint(f)?;
    step("adjoint", adj.pretty());
    for a in e.atoms().keys() {
        for b in adj.atoms().keys() {
            if matches!((a, b), (Atom::Graph { .. }, Atom::TGraph { .. })) {
                let data = excess_intersection(a, b)?;
                step("excess", data.excess.to_string());
                step("Sym", sym_decomposition(&data.excess)?.pretty());
            }
        }
    }
    let composite = compose(e, &adj)?;
    step("compose", composite.pretty());
    if !composite.is_diagonal() {
        return Err(Error::NotDiagonalSupported(composite.to_string()));
    }
    step("β", format!("1 in HH^log_0({x})"));
    let (lhs, rhs) = adjoint_exchange_sides(f)?;
    step(
        "exchange",
        format!("{} = {}", lhs.pretty(), rhs.pretty()),
    );
    let class = chern_log(&composite)?;
    let terms: Vec<String> = composite
        .atoms()
        .iter()
        .flat_map(|(a, m)| std::iter::repeat(atom_scalar(a, TraceSign::Graded)).take(*m as usize))
        .map(|v| v.to_string())
        .collect();
    step("additivity", format!("{} = {}", terms.join(" + "), class.value()));
    step("counit", class.value().to_string());
    Ok(EulerTrace {
        steps,
        value: class.value(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::expr::parse_kernel;

    fn p(n: u32) -> LogPair {
        LogPair::projective(n).unwrap()
    }

    fn ch(text: &str) -> i64 {
        let p1 = LogPair::p1();
        chern_log(&parse_kernel(text, p1, p1).unwrap()).unwrap().value()
    }

    #[test]
    fn chern_constants() {
        assert_eq!(ch("diag(O,0)"), 1);
        assert_eq!(ch("diag(O(7),1)"), -1);
        assert_eq!(ch("diag(O,0)+diag(O(5),1)"), 0);
        assert_eq!(ch("diag(O(-2),-4)"), 1);
    }

    #[test]
    fn negative_control_breaks_the_sign() {
        let p1 = LogPair::p1();
        let e = parse_kernel("diag(O(3),1)", p1, p1).unwrap();
        assert_eq!(chern_log_with(&e, TraceSign::Ungraded).unwrap().value(), 1);
    }

    #[test]
    fn expansions() {
        let p1 = LogPair::p1();
        let exp = |t: &str, target| chern_log_expansion(&parse_kernel(t, p1, target).unwrap()).unwrap().value();
        assert_eq!(exp("graph(deg=1)", p1), 1);
        assert_eq!(exp("graph(deg=1,O,1)", p(2)), -1);
        assert_eq!(exp("graph(deg=1)+graph(deg=1)", p(2)), 2);
    }

    #[test]
    fn euler_pairings() {
        let p1 = LogPair::p1();
        let o = parse_kernel("diag(O,0)", p1, p1).unwrap();
        assert_eq!(euler_pairing(&o, &o).unwrap(), 1);
        let o1 = parse_kernel("diag(O,1)", p1, p1).unwrap();
        assert_eq!(euler_pairing(&o, &o1).unwrap(), -1);
        let g = parse_kernel("graph(deg=1)", p1, p(2)).unwrap();
        let trace = euler_pairing_traced(&g, &g).unwrap();
        assert_eq!(trace.value, 0);
        let text = trace.to_string();
        assert!(text.contains("[adjoint] τΓ_{f,*}O(1)[-1]"));
        assert!(text.contains("[excess] O(1)"));
        assert!(text.contains("[Sym] i_*O ⊕ i_*O(-1)[1]"));
        assert!(text.contains("[additivity] -1 + 1 = 0"));
    }

    #[test]
    fn curves_of_positive_genus_are_rejected() {
        let c = LogPair::curve(1);
        let e = parse_kernel("diag(O,0)", c, c).unwrap();
        assert!(matches!(chern_log(&e), Err(Error::UnsupportedHHShape(_))));
    }

    #[test]
    fn off_diagonal_chern_is_rejected() {
        let g = parse_kernel("graph(deg=1)", LogPair::p1(), p(2)).unwrap();
        assert!(matches!(chern_log(&g), Err(Error::NotDiagonalSupported(_))));
    }
}
