//! Cohomology of shifted split bundles on `P^n` and on curves.
//!
//! A summand `L[s]` contributes `H^p(L)` in total degree `p - s`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::log_product::{LogPair, PairKind};

/// A line bundle, known through its degree plus the two bundles whose
/// cohomology on a curve is not determined by degree alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineBundle {
    /// `O(k)` on `P^n`, or a general line bundle of degree `k` on a curve.
    Degree(i64),
    Trivial,
    Canonical,
}

fn base_dim(base: &LogPair) -> Result<u32> {
    base.require_proper()?;
    Ok(base.dim())
}

/// Canonical degree of `K_X`: `-(n+1)` on `P^n`, `2g-2` on a curve.
fn canonical_degree(base: &LogPair) -> i64 {
    match base.kind() {
        PairKind::ProjSpace(n) => -(n as i64) - 1,
        PairKind::Curve(g) => 2 * g as i64 - 2,
        PairKind::AffineLocal => 0,
    }
}

impl LineBundle {
    pub fn degree(&self, base: &LogPair) -> i64 {
        match *self {
            LineBundle::Degree(k) => k,
            LineBundle::Trivial => 0,
            LineBundle::Canonical => canonical_degree(base),
        }
    }

    /// Normal form on `base`: on `P^n` everything is `O(k)`; on an elliptic
    /// curve the canonical bundle is trivial.
    pub fn normalize(self, base: &LogPair) -> LineBundle {
        match base.kind() {
            PairKind::ProjSpace(_) | PairKind::AffineLocal => LineBundle::Degree(self.degree(base)),
            PairKind::Curve(1) if self == LineBundle::Canonical => LineBundle::Trivial,
            PairKind::Curve(_) => self,
        }
    }

    pub fn tensor(self, other: LineBundle, base: &LogPair) -> LineBundle {
        match (self, other) {
            (LineBundle::Trivial, l) | (l, LineBundle::Trivial) => l.normalize(base),
            (a, b) => LineBundle::Degree(a.degree(base) + b.degree(base)).normalize(base),
        }
    }

    pub fn dual(self, base: &LogPair) -> LineBundle {
        match self {
            LineBundle::Trivial => LineBundle::Trivial,
            l => LineBundle::Degree(-l.degree(base)).normalize(base),
        }
    }

    fn sort_key(&self, base: &LogPair) -> (i64, u8) {
        let tag = match self {
            LineBundle::Degree(_) => 0,
            LineBundle::Trivial => 1,
            LineBundle::Canonical => 2,
        };
        (self.degree(base), tag)
    }
}

impl fmt::Display for LineBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineBundle::Degree(0) | LineBundle::Trivial => write!(f, "O"),
            LineBundle::Degree(k) => write!(f, "O({k})"),
            LineBundle::Canonical => write!(f, "K"),
        }
    }
}

/// `L^mult [shift]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub line: LineBundle,
    pub mult: u64,
    pub shift: i64,
}

/// A finite direct sum of shifted line bundles on a fixed base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitBundle {
    base: LogPair,
    summands: Vec<Summand>,
}

impl SplitBundle {
    /// Merges equal summands, drops zero multiplicities and sorts by degree
    /// then shift.
    pub fn new(base: LogPair, summands: impl IntoIterator<Item = Summand>) -> Self {
        let mut merged: Vec<Summand> = Vec::new();
        for s in summands {
            if s.mult == 0 {
                continue;
            }
            let line = s.line.normalize(&base);
            match merged.iter_mut().find(|m| m.line == line && m.shift == s.shift) {
                Some(m) => m.mult += s.mult,
                None => merged.push(Summand { line, ..s }),
            }
        }
        merged.sort_by_key(|s| (s.line.sort_key(&base), s.shift));
        Self {
            base,
            summands: merged,
        }
    }

    pub fn zero(base: LogPair) -> Self {
        Self::new(base, [])
    }

    pub fn line(base: LogPair, line: LineBundle, mult: u64, shift: i64) -> Self {
        Self::new(base, [Summand { line, mult, shift }])
    }

    pub fn structure_sheaf(base: LogPair) -> Self {
        Self::line(base, LineBundle::Trivial, 1, 0)
    }

    pub fn base(&self) -> &LogPair {
        &self.base
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn rank(&self) -> u64 {
        self.summands.iter().map(|s| s.mult).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn direct_sum(&self, other: &SplitBundle) -> Result<SplitBundle> {
        self.check_base(other)?;
        Ok(Self::new(
            self.base,
            self.summands.iter().chain(&other.summands).copied(),
        ))
    }

    fn check_base(&self, other: &SplitBundle) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch {
                expected: self.base.to_string(),
                found: other.base.to_string(),
            });
        }
        Ok(())
    }

    pub fn shift(&self, by: i64) -> SplitBundle {
        Self::new(
            self.base,
            self.summands.iter().map(|s| Summand {
                shift: s.shift + by,
                ..*s
            }),
        )
    }

    pub fn twist(&self, line: LineBundle) -> SplitBundle {
        Self::new(
            self.base,
            self.summands.iter().map(|s| Summand {
                line: s.line.tensor(line, &self.base),
                ..*s
            }),
        )
    }

    /// `(L[s])^v = L^{-1}[-s]`, summand by summand.
    pub fn dual(&self) -> SplitBundle {
        Self::new(
            self.base,
            self.summands.iter().map(|s| Summand {
                line: s.line.dual(&self.base),
                mult: s.mult,
                shift: -s.shift,
            }),
        )
    }

    /// `q`-th exterior power of an unshifted split bundle.
    pub fn exterior_power(&self, q: i64) -> Result<SplitBundle> {
        let rank = self.rank();
        if q < 0 || q as u64 > rank {
            return Err(Error::WedgeOutOfRange { q, rank });
        }
        if let Some(s) = self.summands.iter().find(|s| s.shift != 0) {
            return Err(Error::Parse(format!(
                "exterior power of a shifted summand {}",
                DisplaySummand(s)
            )));
        }
        // Distribute q among the summands; each split contributes the tensor
        // product with multiplicity prod C(m_j, q_j).
        let mut acc: Vec<(LineBundle, u64, u64)> = vec![(LineBundle::Trivial, 0, 1)];
        for s in &self.summands {
            let mut next = Vec::new();
            for &(line, used, mult) in &acc {
                for k in 0..=s.mult.min(q as u64 - used) {
                    let mut l = line;
                    for _ in 0..k {
                        l = l.tensor(s.line, &self.base);
                    }
                    let c = binomial(s.mult, k)?;
                    let m = mult.checked_mul(c).ok_or(Error::Overflow("exterior power"))?;
                    next.push((l, used + k, m));
                }
            }
            acc = next;
        }
        Ok(Self::new(
            self.base,
            acc.into_iter()
                .filter(|&(_, used, _)| used == q as u64)
                .map(|(line, _, mult)| Summand {
                    line,
                    mult,
                    shift: 0,
                }),
        ))
    }
}

struct DisplaySummand<'a>(&'a Summand);

impl fmt::Display for DisplaySummand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0;
        write!(f, "{}", s.line)?;
        if s.mult != 1 {
            write!(f, "^{}", s.mult)?;
        }
        if s.shift != 0 {
            write!(f, "[{}]", s.shift)?;
        }
        Ok(())
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", DisplaySummand(s))?;
        }
        Ok(())
    }
}

/// Parses `term ("+" term)*` with `term := line ["^" mult] ["[" shift "]"]`
/// and `line := "O" | "O(" int ")" | "K"`. Whitespace is ignored.
pub fn parse_bundle(base: LogPair, text: &str) -> Result<SplitBundle> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(SplitBundle::zero(base));
    }
    let bad = |t: &str| Error::Parse(format!("bad bundle term {t:?}; expected O, O(k) or K with optional ^m and [s]"));
    let mut summands = Vec::new();
    for term in compact.split('+') {
        let (line, rest) = if let Some(r) = term.strip_prefix("O(") {
            let (k, rest) = r.split_once(')').ok_or_else(|| bad(term))?;
            let k: i64 = k.parse().map_err(|_| bad(term))?;
            (LineBundle::Degree(k), rest)
        } else if let Some(rest) = term.strip_prefix('O') {
            (LineBundle::Trivial, rest)
        } else if let Some(rest) = term.strip_prefix('K') {
            (LineBundle::Canonical, rest)
        } else {
            return Err(bad(term));
        };
        let (mult, rest) = match rest.strip_prefix('^') {
            Some(r) => {
                let end = r.find('[').unwrap_or(r.len());
                let m: u64 = r[..end].parse().map_err(|_| bad(term))?;
                (m, &r[end..])
            }
            None => (1, rest),
        };
        let shift = match rest {
            "" => 0,
            r => r
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .and_then(|r| r.parse::<i64>().ok())
                .ok_or_else(|| bad(term))?,
        };
        summands.push(Summand { line, mult, shift });
    }
    Ok(SplitBundle::new(base, summands))
}

/// Dimensions indexed by degree, with zero entries omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDim {
    dims: BTreeMap<i64, u64>,
}

impl GradedDim {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut g = Self::new();
        for (d, n) in pairs {
            g.add(d, n);
        }
        g
    }

    pub fn add(&mut self, degree: i64, dim: u64) {
        if dim > 0 {
            *self.dims.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, u64> {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    /// `sum (-1)^d dim_d`.
    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn merge(&mut self, other: &GradedDim) {
        for (&d, &n) in &other.dims {
            self.add(d, n);
        }
    }

    /// Moves every entry from degree `d` to `d + by`.
    pub fn shifted(&self, by: i64) -> GradedDim {
        Self::from_pairs(self.dims.iter().map(|(&d, &n)| (d + by, n)))
    }

    pub fn negated(&self) -> GradedDim {
        Self::from_pairs(self.dims.iter().map(|(&d, &n)| (-d, n)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graded dims serialize")
    }
}

impl fmt::Display for GradedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return writeln!(f, "(all zero)");
        }
        writeln!(f, "degree  dim")?;
        for (d, n) in &self.dims {
            writeln!(f, "{d:>6}  {n}")?;
        }
        Ok(())
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

/// `H^*(P^n, O(k))`.
pub fn cohomology_line_pn(n: u32, k: i64) -> Result<GradedDim> {
    let n64 = n as i64;
    let mut g = GradedDim::new();
    if k >= 0 {
        g.add(0, binomial((n64 + k) as u64, n as u64)?);
    } else if k <= -n64 - 1 {
        g.add(n64, binomial((-k - 1) as u64, n as u64)?);
    }
    Ok(g)
}

/// `H^*` of a general degree-`d` line bundle on a genus-`g` curve, when the
/// degree determines it.
pub fn cohomology_line_curve(g: u32, d: i64) -> Result<GradedDim> {
    let gi = g as i64;
    let mut out = GradedDim::new();
    if d < 0 {
        out.add(1, (gi - 1 - d) as u64);
    } else if d > 2 * gi - 2 {
        out.add(0, (d - gi + 1) as u64);
    } else {
        return Err(Error::AmbiguousDegree { genus: g, degree: d });
    }
    Ok(out)
}

fn cohomology_line(base: &LogPair, line: LineBundle) -> Result<GradedDim> {
    let n = base_dim(base)?;
    match (base.kind(), line.normalize(base)) {
        (PairKind::Curve(g), LineBundle::Trivial) => Ok(GradedDim::from_pairs([(0, 1), (1, g as u64)])),
        (PairKind::Curve(g), LineBundle::Canonical) => Ok(GradedDim::from_pairs([(0, g as u64), (1, 1)])),
        (PairKind::Curve(g), l) => cohomology_line_curve(g, l.degree(base)),
        (_, l) => cohomology_line_pn(n, l.degree(base)),
    }
}

/// Total cohomology of a shifted split bundle.
pub fn graded_cohomology(bundle: &SplitBundle) -> Result<GradedDim> {
    base_dim(&bundle.base)?;
    let mut out = GradedDim::new();
    for s in &bundle.summands {
        let h = cohomology_line(&bundle.base, s.line)?;
        for (&p, &dim) in h.dims() {
            let d = dim.checked_mul(s.mult).ok_or(Error::Overflow("cohomology"))?;
            out.add(p - s.shift, d);
        }
    }
    Ok(out)
}

fn chi_line(base: &LogPair, line: LineBundle) -> i64 {
    let d = line.degree(base);
    match base.kind() {
        PairKind::Curve(g) => d - g as i64 + 1,
        _ => {
            // (k+1)(k+2)...(k+n)/n!
            let n = base.dim() as i64;
            let mut num: i128 = 1;
            let mut den: i128 = 1;
            for i in 1..=n {
                num *= (d + i) as i128;
                den *= i as i128;
            }
            (num / den) as i64
        }
    }
}

/// Euler characteristic; defined for curves even where `h^0` is not.
pub fn euler_characteristic(bundle: &SplitBundle) -> Result<i64> {
    base_dim(&bundle.base)?;
    Ok(bundle
        .summands
        .iter()
        .map(|s| {
            let sign = if s.shift.rem_euclid(2) == 0 { 1 } else { -1 };
            sign * s.mult as i64 * chi_line(&bundle.base, s.line)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> LogPair {
        LogPair::projective(n).unwrap()
    }

    #[test]
    fn projective_space_lines() {
        assert_eq!(cohomology_line_pn(2, 1).unwrap(), GradedDim::from_pairs([(0, 3)]));
        assert!(cohomology_line_pn(2, -2).unwrap().is_zero());
        assert_eq!(cohomology_line_pn(1, -2).unwrap(), GradedDim::from_pairs([(1, 1)]));
        assert_eq!(cohomology_line_pn(2, -5).unwrap(), GradedDim::from_pairs([(2, 6)]));
    }

    #[test]
    fn curve_lines() {
        assert!(cohomology_line_curve(0, -1).unwrap().is_zero());
        assert_eq!(cohomology_line_curve(0, 3).unwrap(), GradedDim::from_pairs([(0, 4)]));
        assert_eq!(
            cohomology_line_curve(2, 1),
            Err(Error::AmbiguousDegree { genus: 2, degree: 1 })
        );
        assert_eq!(cohomology_line_curve(2, -1).unwrap(), GradedDim::from_pairs([(1, 2)]));
        let c = LogPair::curve(3);
        let k = SplitBundle::line(c, LineBundle::Canonical, 1, 0);
        assert_eq!(graded_cohomology(&k).unwrap(), GradedDim::from_pairs([(0, 3), (1, 1)]));
    }

    #[test]
    fn shifted_sums() {
        let b = parse_bundle(LogPair::p1(), "O + O(-1)[1]").unwrap();
        assert_eq!(graded_cohomology(&b).unwrap(), GradedDim::from_pairs([(0, 1)]));
        assert!(graded_cohomology(&SplitBundle::zero(p(2))).unwrap().is_zero());
        let b = parse_bundle(p(2), "O(-1)^2").unwrap();
        assert!(graded_cohomology(&b).unwrap().is_zero());
        let b = parse_bundle(LogPair::p1(), "O(-2)[1]").unwrap();
        assert_eq!(graded_cohomology(&b).unwrap(), GradedDim::from_pairs([(0, 1)]));
    }

    #[test]
    fn euler_characteristics() {
        let chi = |base, s| euler_characteristic(&parse_bundle(base, s).unwrap()).unwrap();
        assert_eq!(chi(LogPair::p1(), "O(3)"), 4);
        assert_eq!(chi(LogPair::p1(), "O(1)[-1]"), -2);
        assert_eq!(chi(LogPair::curve(2), "O(1)"), 0);
        assert_eq!(chi(p(2), "O(-3)"), 1);
    }

    #[test]
    fn wedge_powers() {
        let b = parse_bundle(p(3), "O(-1)^3").unwrap();
        assert_eq!(b.exterior_power(2).unwrap(), parse_bundle(p(3), "O(-2)^3").unwrap());
        assert_eq!(b.exterior_power(0).unwrap(), SplitBundle::structure_sheaf(p(3)));
        let mixed = parse_bundle(LogPair::p1(), "O(2)+O(1)^3").unwrap();
        assert_eq!(
            mixed.exterior_power(2).unwrap(),
            parse_bundle(LogPair::p1(), "O(2)^3+O(3)^3").unwrap()
        );
        assert_eq!(
            b.exterior_power(4),
            Err(Error::WedgeOutOfRange { q: 4, rank: 3 })
        );
    }

    #[test]
    fn parser_round_trip_and_errors() {
        let b = parse_bundle(p(2), "O(-1)^2 + O[1] + O(3)^4[-2]").unwrap();
        assert_eq!(parse_bundle(p(2), &b.to_string()).unwrap(), b);
        for bad in ["", "O(", "X", "O^", "O[1", "O(1)^a"] {
            assert!(parse_bundle(p(2), bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn json_shape() {
        let g = GradedDim::from_pairs([(0, 3)]);
        assert_eq!(g.to_json(), r#"{"dims":{"0":3}}"#);
        let back: GradedDim = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn non_proper_base() {
        let b = SplitBundle::structure_sheaf(LogPair::affine_local());
        assert!(matches!(graded_cohomology(&b), Err(Error::NonProper(_))));
    }
}
