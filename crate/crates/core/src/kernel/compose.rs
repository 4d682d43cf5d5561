use super::excess::{excess_intersection, sym_decomposition};
use super::expr::{Atom, KernelExpr};
use crate::error::{Error, Result};

/// The kernel of `phi_F . phi_E` for `E: X -> Y`, `F: Y -> Z`.
pub fn compose(e: &KernelExpr, f: &KernelExpr) -> Result<KernelExpr> {
    if e.target() != f.source() {
        return Err(Error::PairMismatch {
            expected: e.target().to_string(),
            found: f.source().to_string(),
        });
    }
    let mut out = KernelExpr::zero(e.source(), f.target());
    for (a, m) in e.atoms() {
        for (b, n) in f.atoms() {
            let c = compose_atoms(a, b)?;
            for (atom, k) in c.atoms() {
                out.add(*atom, k * m * n)?;
            }
        }
    }
    Ok(out)
}

fn unsupported(a: &Atom, b: &Atom) -> Error {
    Error::UnsupportedComposition(format!("{a} then {b}"))
}

/// Composition of single atoms, `b` after `a`.
pub fn compose_atoms(a: &Atom, b: &Atom) -> Result<KernelExpr> {
    if a.target() != b.source() {
        return Err(Error::PairMismatch {
            expected: a.target().to_string(),
            found: b.source().to_string(),
        });
    }
    let one = |atom| Ok(KernelExpr::from_atom(atom));
    match (*a, *b) {
        (Atom::Diag { pair, shift: s, twist: l }, Atom::Diag { shift: t, twist: m, .. }) => {
            one(Atom::diag(pair, l + m, s + t))
        }
        (Atom::Diag { shift: s, twist: l, .. }, Atom::Graph { f, shift: t, twist: m }) => {
            one(Atom::graph(f, l + m, s + t))
        }
        (Atom::Graph { f, shift: t, twist: m }, Atom::Diag { shift: s, twist: l, .. }) => {
            one(Atom::graph(f, m + f.pullback(l), s + t))
        }
        (Atom::Diag { shift: s, twist: l, .. }, Atom::TGraph { f, shift: t, twist: m }) => {
            one(Atom::graph(f, m + f.pullback(l), s + t).transpose())
        }
        (Atom::TGraph { f, shift: t, twist: m }, Atom::Diag { shift: s, twist: l, .. }) => {
            one(Atom::graph(f, l + m, s + t).transpose())
        }
        (Atom::Graph { f, shift: t, twist: m }, Atom::Graph { f: g, shift: u, twist: n }) => {
            if !f.target().eq(&g.source()) || f.target().dim() != 1 {
                return Err(unsupported(a, b));
            }
            one(Atom::graph(f.then(&g)?, m + f.pullback(n), t + u))
        }
        (Atom::TGraph { .. }, Atom::TGraph { .. }) => {
            Ok(compose_atoms(&b.transpose(), &a.transpose())?.transpose())
        }
        (Atom::Graph { f, shift: t, twist: m }, Atom::TGraph { f: g, shift: u, twist: n }) => {
            if f != g {
                return Err(unsupported(a, b));
            }
            let data = excess_intersection(a, b)?;
            let sym = sym_decomposition(&data.excess)?;
            let mut out = KernelExpr::zero(f.source(), f.source());
            for (atom, k) in sym.atoms() {
                out.add(Atom::diag(f.source(), atom.twist() + m + n, atom.shift() + t + u), *k)?;
            }
            Ok(out)
        }
        (Atom::TGraph { .. }, Atom::Graph { .. }) => Err(unsupported(a, b)),
    }
}
