use std::collections::BTreeMap;
use std::fmt;

use super::morphism::LogMorphism;
use crate::error::{Error, Result};
use crate::log_product::LogPair;

/// A strong kernel atom. Twists are line-bundle degrees on the space the
/// atom is pushed forward from (`X` for the diagonal, the source of `f` for
/// graphs).
///
/// Field order fixes the normal-form order: kind, pair, shift, twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `i_*(L[s])` on `X x^log X`.
    Diag { pair: LogPair, shift: i64, twist: i64 },
    /// `Gamma_{f,*}(L[s])` on `X x^log Y`.
    Graph { f: LogMorphism, shift: i64, twist: i64 },
    /// `tau Gamma_{f,*}(L[s])` on `Y x^log X`.
    TGraph { f: LogMorphism, shift: i64, twist: i64 },
}

impl Atom {
    pub fn diag(pair: LogPair, twist: i64, shift: i64) -> Atom {
        Atom::Diag { pair, shift, twist }
    }

    /// The graph of the identity is the diagonal.
    pub fn graph(f: LogMorphism, twist: i64, shift: i64) -> Atom {
        if f.is_identity() {
            Atom::diag(f.source(), twist, shift)
        } else {
            Atom::Graph { f, shift, twist }
        }
    }

    pub fn transpose(self) -> Atom {
        match self {
            Atom::Diag { .. } => self,
            Atom::Graph { f, shift, twist } => Atom::TGraph { f, shift, twist },
            Atom::TGraph { f, shift, twist } => Atom::Graph { f, shift, twist },
        }
    }

    pub fn source(&self) -> LogPair {
        match self {
            Atom::Diag { pair, .. } => *pair,
            Atom::Graph { f, .. } => f.source(),
            Atom::TGraph { f, .. } => f.target(),
        }
    }

    pub fn target(&self) -> LogPair {
        match self {
            Atom::Diag { pair, .. } => *pair,
            Atom::Graph { f, .. } => f.target(),
            Atom::TGraph { f, .. } => f.source(),
        }
    }

    pub fn shift(&self) -> i64 {
        match self {
            Atom::Diag { shift, .. } | Atom::Graph { shift, .. } | Atom::TGraph { shift, .. } => *shift,
        }
    }

    pub fn twist(&self) -> i64 {
        match self {
            Atom::Diag { twist, .. } | Atom::Graph { twist, .. } | Atom::TGraph { twist, .. } => *twist,
        }
    }

    /// Notation such as `tau Gamma_{f,*} O(1)[-1]`.
    pub fn pretty(&self) -> String {
        let sheaf = sheaf_text(self.twist(), self.shift());
        match self {
            Atom::Diag { .. } => format!("i_*{sheaf}"),
            Atom::Graph { .. } => format!("Γ_{{f,*}}{sheaf}"),
            Atom::TGraph { .. } => format!("τΓ_{{f,*}}{sheaf}"),
        }
    }
}

pub(crate) fn bundle_text(twist: i64) -> String {
    if twist == 0 {
        "O".into()
    } else {
        format!("O({twist})")
    }
}

pub(crate) fn sheaf_text(twist: i64, shift: i64) -> String {
    if shift == 0 {
        bundle_text(twist)
    } else {
        format!("{}[{shift}]", bundle_text(twist))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Diag { shift, twist, .. } => write!(f, "diag({},{shift})", bundle_text(*twist)),
            Atom::Graph { f: m, shift, twist } => {
                if *shift == 0 && *twist == 0 {
                    write!(f, "graph(deg={})", m.degree())
                } else {
                    write!(f, "graph(deg={},{},{shift})", m.degree(), bundle_text(*twist))
                }
            }
            Atom::TGraph { .. } => write!(f, "t({})", self.transpose()),
        }
    }
}

/// A formal sum of atoms with positive multiplicities, all `X -> Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KernelExpr {
    source: LogPair,
    target: LogPair,
    atoms: BTreeMap<Atom, u64>,
}

impl KernelExpr {
    pub fn zero(source: LogPair, target: LogPair) -> Self {
        Self {
            source,
            target,
            atoms: BTreeMap::new(),
        }
    }

    pub fn from_atom(atom: Atom) -> Self {
        let mut e = Self::zero(atom.source(), atom.target());
        e.atoms.insert(atom, 1);
        e
    }

    pub fn from_atoms(source: LogPair, target: LogPair, atoms: impl IntoIterator<Item = (Atom, u64)>) -> Result<Self> {
        let mut e = Self::zero(source, target);
        for (a, m) in atoms {
            e.add(a, m)?;
        }
        Ok(e)
    }

    pub fn source(&self) -> LogPair {
        self.source
    }

    pub fn target(&self) -> LogPair {
        self.target
    }

    pub fn atoms(&self) -> &BTreeMap<Atom, u64> {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn add(&mut self, atom: Atom, mult: u64) -> Result<()> {
        for (expected, found) in [(self.source, atom.source()), (self.target, atom.target())] {
            if expected != found {
                return Err(Error::PairMismatch {
                    expected: expected.to_string(),
                    found: found.to_string(),
                });
            }
        }
        if mult > 0 {
            *self.atoms.entry(atom).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn sum(&self, other: &KernelExpr) -> Result<KernelExpr> {
        let mut out = self.clone();
        for (a, m) in &other.atoms {
            out.add(*a, *m)?;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> KernelExpr {
        KernelExpr {
            source: self.target,
            target: self.source,
            atoms: self.atoms.iter().map(|(a, m)| (a.transpose(), *m)).collect(),
        }
    }

    /// Whether every atom lives on the log diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.atoms.keys().all(|a| matches!(a, Atom::Diag { .. }))
    }

    pub fn pretty(&self) -> String {
        if self.atoms.is_empty() {
            return "0".into();
        }
        self.atoms
            .iter()
            .map(|(a, m)| match m {
                1 => a.pretty(),
                m => format!("{m}·{}", a.pretty()),
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

impl fmt::Display for KernelExpr {
    /// Grammar form, re-parseable by [`parse_kernel`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, m) in &self.atoms {
            for _ in 0..*m {
                if !first {
                    write!(f, "+")?;
                }
                write!(f, "{a}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// The kernel grammar accepted by [`parse_kernel`].
pub const KERNEL_GRAMMAR: &str = r#"atom   := "diag(" bundle "," shift ")" | "graph(deg=" int ["," bundle "," shift] ")" | "t(" atom ")"
expr   := atom ("+" atom)*
bundle := "O" | "O(" int ")""#;

/// Parses a kernel `source -> target`.
pub fn parse_kernel(text: &str, source: LogPair, target: LogPair) -> Result<KernelExpr> {
    source.require_proper()?;
    target.require_proper()?;
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut expr = KernelExpr::zero(source, target);
    for term in split_top_level(&compact)? {
        expr.add(parse_atom(term, source, target)?, 1)?;
    }
    Ok(expr)
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    out.push(&s[start..]);
    Ok(out)
}

fn bad(term: &str) -> Error {
    Error::Parse(format!("bad kernel atom {term:?}"))
}

fn parse_bundle_degree(s: &str) -> Result<i64> {
    if s == "O" {
        return Ok(0);
    }
    s.strip_prefix("O(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad bundle {s:?}; expected O or O(k)")))
}

fn parse_int(s: &str, term: &str) -> Result<i64> {
    s.parse().map_err(|_| bad(term))
}

fn parse_atom(term: &str, source: LogPair, target: LogPair) -> Result<Atom> {
    if let Some(inner) = term.strip_prefix("t(").and_then(|r| r.strip_suffix(')')) {
        return Ok(parse_atom(inner, target, source)?.transpose());
    }
    if let Some(args) = term.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
        if source != target {
            return Err(Error::PairMismatch {
                expected: source.to_string(),
                found: target.to_string(),
            });
        }
        let (bundle, shift) = args.rsplit_once(',').ok_or_else(|| bad(term))?;
        return Ok(Atom::diag(source, parse_bundle_degree(bundle)?, parse_int(shift, term)?));
    }
    if let Some(args) = term.strip_prefix("graph(deg=").and_then(|r| r.strip_suffix(')')) {
        let (deg, twist, shift) = match args.split_once(',') {
            None => (parse_int(args, term)?, 0, 0),
            Some((deg, rest)) => {
                let (bundle, shift) = rest.rsplit_once(',').ok_or_else(|| bad(term))?;
                (
                    parse_int(deg, term)?,
                    parse_bundle_degree(bundle)?,
                    parse_int(shift, term)?,
                )
            }
        };
        let f = LogMorphism::transversal(target, deg).and_then(|f| {
            if source == LogPair::p1() {
                Ok(f)
            } else {
                Err(Error::UnsupportedMorphism(format!("source {source} is not P1:pt")))
            }
        })?;
        return Ok(Atom::graph(f, twist, shift));
    }
    Err(bad(term))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> LogPair {
        LogPair::projective(n).unwrap()
    }

    #[test]
    fn grammar_round_trip() {
        let p1 = LogPair::p1();
        for (text, s, t) in [
            ("diag(O,0)+diag(O(5),1)", p1, p1),
            ("graph(deg=1)", p1, p(2)),
            ("graph(deg=2,O(-3),4)", p1, p(3)),
            ("t(graph(deg=1,O(1),-1))", p(2), p1),
        ] {
            let e = parse_kernel(text, s, t).unwrap();
            assert_eq!(parse_kernel(&e.to_string(), s, t).unwrap(), e, "{text}");
        }
    }

    #[test]
    fn normalization() {
        let p1 = LogPair::p1();
        assert_eq!(
            parse_kernel("graph(deg=1,O(2),1)", p1, p1).unwrap(),
            parse_kernel("diag(O(2),1)", p1, p1).unwrap()
        );
        assert_eq!(
            parse_kernel("t(t(graph(deg=1)))", p1, p(2)).unwrap(),
            parse_kernel("graph(deg=1)", p1, p(2)).unwrap()
        );
        assert_eq!(
            parse_kernel("t(diag(O(3),2))", p(2), p(2)).unwrap(),
            parse_kernel("diag(O(3),2)", p(2), p(2)).unwrap()
        );
        let e = parse_kernel("diag(O,0)+diag(O,0)", p1, p1).unwrap();
        assert_eq!(e.atoms().values().copied().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn rejects_malformed() {
        let p1 = LogPair::p1();
        for bad in ["", "diag(O,)", "diag(O(1,0)", "graph(deg=x)", "graph(deg=1,O)", "foo", "diag(O,0)+"] {
            assert!(parse_kernel(bad, p1, p1).is_err(), "{bad}");
        }
        assert!(matches!(
            parse_kernel("diag(O,0)", p1, p(2)),
            Err(Error::PairMismatch { .. })
        ));
        assert!(matches!(
            parse_kernel("graph(deg=1)", p(2), p1),
            Err(Error::UnsupportedMorphism(_))
        ));
        assert!(matches!(
            parse_kernel("diag(O,0)", LogPair::affine_local(), LogPair::affine_local()),
            Err(Error::NonProper(_))
        ));
    }

    #[test]
    fn pretty_notation() {
        let e = parse_kernel("t(graph(deg=1,O(1),-1))", p(2), LogPair::p1()).unwrap();
        assert_eq!(e.pretty(), "τΓ_{f,*}O(1)[-1]");
    }
}
