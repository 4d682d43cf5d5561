use super::compose::compose;
use super::expr::{Atom, KernelExpr};
use crate::error::Result;
use crate::log_hkr::log_serre;
use crate::log_product::LogPair;

/// Kernel of `phi_E^!`, atom by atom:
///
/// - `i_*L[s]` goes to `i_*L^{-1}[-s]`;
/// - `Gamma_{f,*}M[t]` goes to `tau Gamma_{f,*}(M^{-1} K_f)[c - t]` with
///   `K_f = O(d(n+1) - 2)` and `c = 1 - n`;
/// - `tau Gamma_{f,*}M[t]` goes to `Gamma_{f,*}(M^{-1}(d - 1))[-t]`.
pub fn right_adjoint(e: &KernelExpr) -> Result<KernelExpr> {
    adjoint(e, right_atom)
}

/// Kernel of `phi_E^*`; mirror image of [`right_adjoint`] under `tau`.
pub fn left_adjoint(e: &KernelExpr) -> Result<KernelExpr> {
    adjoint(e, left_atom)
}

fn adjoint(e: &KernelExpr, per_atom: fn(&Atom) -> Atom) -> Result<KernelExpr> {
    let mut out = KernelExpr::zero(e.target(), e.source());
    for (a, m) in e.atoms() {
        out.add(per_atom(a), *m)?;
    }
    Ok(out)
}

pub fn right_atom(a: &Atom) -> Atom {
    match *a {
        Atom::Diag { pair, shift, twist } => Atom::diag(pair, -twist, -shift),
        Atom::Graph { f, shift, twist } => {
            Atom::graph(f, -twist + f.adjoint_twist(), f.adjoint_shift() - shift).transpose()
        }
        Atom::TGraph { f, shift, twist } => Atom::graph(f, -twist + f.degree() - 1, -shift),
    }
}

pub fn left_atom(a: &Atom) -> Atom {
    match *a {
        Atom::Diag { pair, shift, twist } => Atom::diag(pair, -twist, -shift),
        Atom::Graph { f, shift, twist } => Atom::graph(f, -twist + f.degree() - 1, -shift).transpose(),
        Atom::TGraph { f, shift, twist } => {
            Atom::graph(f, -twist + f.adjoint_twist(), f.adjoint_shift() - shift)
        }
    }
}

fn serre_kernel(pair: LogPair) -> Result<KernelExpr> {
    let s = log_serre(&pair)?;
    Ok(KernelExpr::from_atom(Atom::diag(pair, s.degree(), s.shift)))
}

/// Both sides of the exchange `phi_E^! . S_Y = S_X . phi_E^*`.
pub fn adjoint_exchange_sides(e: &KernelExpr) -> Result<(KernelExpr, KernelExpr)> {
    let lhs = compose(&serre_kernel(e.target())?, &right_adjoint(e)?)?;
    let rhs = compose(&left_adjoint(e)?, &serre_kernel(e.source())?)?;
    Ok((lhs, rhs))
}

pub fn adjoint_exchange_check(e: &KernelExpr) -> Result<bool> {
    let (lhs, rhs) = adjoint_exchange_sides(e)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::expr::parse_kernel;

    fn p(n: u32) -> LogPair {
        LogPair::projective(n).unwrap()
    }

    #[test]
    fn graph_adjoint_in_the_plane() {
        let g = parse_kernel("graph(deg=1)", LogPair::p1(), p(2)).unwrap();
        let r = right_adjoint(&g).unwrap();
        assert_eq!(r.to_string(), "t(graph(deg=1,O(1),-1))");
        assert_eq!(r.pretty(), "τΓ_{f,*}O(1)[-1]");
    }

    #[test]
    fn diagonal_adjoints() {
        let p1 = LogPair::p1();
        let o = parse_kernel("diag(O,0)", p1, p1).unwrap();
        assert_eq!(right_adjoint(&o).unwrap(), o);
        assert_eq!(left_adjoint(&o).unwrap(), o);
        let e = parse_kernel("diag(O(3),2)", p1, p1).unwrap();
        assert_eq!(right_adjoint(&e).unwrap().to_string(), "diag(O(-3),-2)");
        assert_eq!(left_adjoint(&right_adjoint(&e).unwrap()).unwrap(), e);
    }

    #[test]
    fn transpose_swaps_adjoints() {
        let g = parse_kernel("graph(deg=2,O(1),3)+graph(deg=1)", LogPair::p1(), p(3)).unwrap();
        assert_eq!(
            left_adjoint(&g.transpose()).unwrap(),
            right_adjoint(&g).unwrap().transpose()
        );
        assert_eq!(
            right_adjoint(&g.transpose()).unwrap(),
            left_adjoint(&g).unwrap().transpose()
        );
    }

    #[test]
    fn exchange() {
        for text in ["graph(deg=1)", "graph(deg=3,O(-2),5)"] {
            let g = parse_kernel(text, LogPair::p1(), p(2)).unwrap();
            assert!(adjoint_exchange_check(&g).unwrap());
            assert!(adjoint_exchange_check(&g.transpose()).unwrap());
        }
        let d = parse_kernel("diag(O(2),1)", p(3), p(3)).unwrap();
        assert!(adjoint_exchange_check(&d).unwrap());
    }
}
