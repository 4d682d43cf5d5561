//! Log pairs, building sets and log products as sequential stellar
//! subdivisions of product fans.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice_fan::{
    product_fan, DivisorLabel, Fan, FanJson, LatticeMap, LatticeVector,
};

/// The supported log pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairKind {
    /// `P^n` with a coordinate hyperplane.
    ProjSpace(u32),
    /// A smooth proper curve of genus `g >= 1` with a point. Genus 0 is
    /// always stored as `ProjSpace(1)`.
    Curve(u32),
    /// The local model `(A^1, 0)`. Not proper.
    AffineLocal,
}

/// A smooth log pair `(X, D)` with smooth boundary divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LogPair {
    kind: PairKind,
}

impl LogPair {
    /// `(P^n, H)`; `n` must be positive.
    pub fn projective(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("P^0 has no boundary".into()));
        }
        Ok(Self {
            kind: PairKind::ProjSpace(n),
        })
    }

    pub fn p1() -> Self {
        Self {
            kind: PairKind::ProjSpace(1),
        }
    }

    pub fn curve(genus: u32) -> Self {
        let kind = if genus == 0 {
            PairKind::ProjSpace(1)
        } else {
            PairKind::Curve(genus)
        };
        Self { kind }
    }

    pub fn affine_local() -> Self {
        Self {
            kind: PairKind::AffineLocal,
        }
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn dim(&self) -> u32 {
        match self.kind {
            PairKind::ProjSpace(n) => n,
            PairKind::Curve(_) | PairKind::AffineLocal => 1,
        }
    }

    pub fn is_proper(&self) -> bool {
        self.kind != PairKind::AffineLocal
    }

    /// Genus when `X` is a curve (`P^1` counts as genus 0).
    pub fn genus(&self) -> Option<u32> {
        match self.kind {
            PairKind::ProjSpace(1) => Some(0),
            PairKind::Curve(g) => Some(g),
            _ => None,
        }
    }

    pub fn require_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::NonProper(self.to_string()))
        }
    }

    /// The toric fan of `X`, with the boundary ray labelled `Boundary(0)`.
    pub fn fan(&self) -> Result<Fan> {
        match self.kind {
            PairKind::ProjSpace(n) => Ok(Fan::projective_space(n as usize)),
            PairKind::AffineLocal => Ok(Fan::octant(1)),
            PairKind::Curve(_) => Err(Error::NoToricModel(self.to_string())),
        }
    }

    /// Ray of the boundary divisor; always `e_1` of the factor's lattice.
    pub fn boundary_ray(&self) -> Result<LatticeVector> {
        let fan = self.fan()?;
        Ok(LatticeVector::basis(fan.rank(), 0))
    }
}

impl fmt::Display for LogPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PairKind::ProjSpace(1) => write!(f, "P1:pt"),
            PairKind::ProjSpace(n) => write!(f, "P{n}:H"),
            PairKind::Curve(g) => write!(f, "C{g}:pt"),
            PairKind::AffineLocal => write!(f, "A1:0"),
        }
    }
}

impl FromStr for LogPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown pair {s:?}; expected P<n>:H, P1:pt, C<g>:pt or A1:0"));
        let (space, boundary) = s.trim().split_once(':').ok_or_else(bad)?;
        if space == "A1" && boundary == "0" {
            return Ok(Self::affine_local());
        }
        let (head, num) = space.split_at(1.min(space.len()));
        let num: u32 = num.parse().map_err(|_| bad())?;
        match (head, boundary) {
            ("P", "pt") if num == 1 => Ok(Self::p1()),
            ("P", "H") if num >= 1 => Self::projective(num),
            ("C", "pt") => Ok(Self::curve(num)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for LogPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LogPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated list of pairs, e.g. `"P1:pt,P2:H"`.
pub fn parse_pairs(s: &str) -> Result<Vec<LogPair>> {
    s.split(',').map(str::parse).collect()
}

/// A set of factor indices (0-based), naming the stratum
/// `prod_{i in S} D_i x prod_{i not in S} X_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stratum(Vec<usize>);

impl Stratum {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        Self(set.into_iter().collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    fn is_subset(&self, other: &Stratum) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    fn is_disjoint(&self, other: &Stratum) -> bool {
        self.0.iter().all(|&i| !other.contains(i))
    }

    fn union(&self, other: &Stratum) -> Stratum {
        Stratum::new(self.0.iter().chain(&other.0).copied())
    }

    /// 1-based comma form, e.g. `"1,2"`.
    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(s: &str) -> Result<Self> {
        let idx = s
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(Error::Parse(format!("bad stratum {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Stratum::new(idx))
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

/// Parses an order such as `"1,2;1,2,3;1,3;2,3"`.
pub fn parse_order(s: &str) -> Result<Vec<Stratum>> {
    s.split(';').map(Stratum::parse_key).collect()
}

/// All strata with at least two factors, by decreasing size then
/// lexicographically.
pub fn building_set(n: usize) -> Result<Vec<Stratum>> {
    if n < 2 {
        return Err(Error::TooFewFactors(n));
    }
    Ok(strata(n))
}

fn strata(n: usize) -> Vec<Stratum> {
    let mut out: Vec<Stratum> = (0u64..1 << n)
        .filter(|m| m.count_ones() >= 2)
        .map(|m| Stratum::new((0..n).filter(|i| m & (1 << i) != 0)))
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

/// Whether `g` is a building set of the boolean lattice: every union of
/// members is partitioned by the maximal members it contains.
fn is_building_set(g: &[Stratum]) -> bool {
    let mut closure: BTreeSet<Stratum> = g.iter().cloned().collect();
    loop {
        let items: Vec<Stratum> = closure.iter().cloned().collect();
        let before = closure.len();
        for a in &items {
            for b in &items {
                closure.insert(a.union(b));
            }
        }
        if closure.len() == before {
            break;
        }
    }
    closure.iter().all(|u| {
        let inside: Vec<&Stratum> = g.iter().filter(|s| s.is_subset(u)).collect();
        let maximal: Vec<&&Stratum> = inside
            .iter()
            .filter(|s| !inside.iter().any(|t| t != *s && s.is_subset(t)))
            .collect();
        let pairwise = maximal
            .iter()
            .enumerate()
            .all(|(i, a)| maximal[i + 1..].iter().all(|b| a.is_disjoint(b)));
        let covered = maximal
            .iter()
            .fold(Stratum::new([]), |acc, s| acc.union(s));
        pairwise && covered == *u
    })
}

/// Whether `order` lists the full building set of `n` factors with every
/// prefix a building set.
pub fn is_building_order(order: &[Stratum], n: usize) -> bool {
    let expected: BTreeSet<Stratum> = strata(n).into_iter().collect();
    let given: BTreeSet<Stratum> = order.iter().cloned().collect();
    given.len() == order.len()
        && given == expected
        && (1..=order.len()).all(|k| is_building_set(&order[..k]))
}

/// Total transform of a factor's boundary split into strict transform and
/// exceptional components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformDecomposition {
    pub strict: LatticeVector,
    pub exceptional: Vec<(Stratum, LatticeVector)>,
}

/// `X_1 x^log ... x^log X_n` as a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogProductSpace {
    factors: Vec<LogPair>,
    fan: Fan,
    stratum_ray: BTreeMap<Stratum, LatticeVector>,
    strict_transforms: BTreeMap<usize, LatticeVector>,
    offsets: Vec<usize>,
}

impl LogProductSpace {
    pub fn factors(&self) -> &[LogPair] {
        &self.factors
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn stratum_ray(&self) -> &BTreeMap<Stratum, LatticeVector> {
        &self.stratum_ray
    }

    /// Ray of the strict transform of `D_i x (rest)`.
    pub fn strict_transforms(&self) -> &BTreeMap<usize, LatticeVector> {
        &self.strict_transforms
    }

    /// First coordinate of each factor's block.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// The product fan the log product refines.
    pub fn product_fan(&self) -> Fan {
        product_of(&self.factors).expect("factors were validated")
    }
}

fn product_of(pairs: &[LogPair]) -> Result<Fan> {
    pairs
        .iter()
        .try_fold(Fan::point(), |acc, p| Ok(product_fan(&acc, &p.fan()?)))
}

/// The log product with the default order: see [`building_set`].
pub fn log_product(pairs: &[LogPair]) -> Result<LogProductSpace> {
    let order = if pairs.len() >= 2 {
        building_set(pairs.len())?
    } else {
        Vec::new()
    };
    log_product_with_order(pairs, &order)
}

/// The log product, subdividing strata in the given order.
///
/// The cone blown up for a stratum `S` is the cone of the current fan whose
/// relative interior contains `sum_{i in S} b_i`; this is the cone of the
/// strict (or, if contained in an earlier center, dominant) transform.
pub fn log_product_with_order(pairs: &[LogPair], order: &[Stratum]) -> Result<LogProductSpace> {
    if pairs.is_empty() {
        return Err(Error::TooFewFactors(0));
    }
    let n = pairs.len();
    if n >= 2 && !is_building_order(order, n) {
        let listed: Vec<String> = order.iter().map(ToString::to_string).collect();
        return Err(Error::NotABuildingSetOrder(listed.join(" ")));
    }
    let mut fan = product_of(pairs)?;
    let rank = fan.rank();
    let mut offsets = Vec::with_capacity(n);
    let mut acc = 0;
    for p in pairs {
        offsets.push(acc);
        acc += p.dim() as usize;
    }
    let boundary: Vec<LatticeVector> = offsets
        .iter()
        .map(|&o| LatticeVector::basis(rank, o))
        .collect();

    let mut stratum_ray = BTreeMap::new();
    for s in order {
        let target = s
            .indices()
            .iter()
            .try_fold(LatticeVector::zero(rank), |acc, &i| acc.checked_add(&boundary[i]))?;
        let center = fan
            .carrier_cone(&target.to_rational())
            .expect("boundary sums lie in the product support");
        let (next, ray) = fan.star_subdivide(&center)?;
        fan = next;
        stratum_ray.insert(s.clone(), ray);
    }
    let mut strict_transforms = BTreeMap::new();
    for (i, b) in boundary.iter().enumerate() {
        if n >= 2 {
            fan.relabel(b, DivisorLabel::StrictTransform(i));
        }
        strict_transforms.insert(i, b.clone());
    }
    Ok(LogProductSpace {
        factors: pairs.to_vec(),
        fan,
        stratum_ray,
        strict_transforms,
        offsets,
    })
}

/// Whether two building-set orders give the same canonical fan.
pub fn order_independence_check(
    pairs: &[LogPair],
    order_a: &[Stratum],
    order_b: &[Stratum],
) -> Result<bool> {
    let a = log_product_with_order(pairs, order_a)?;
    let b = log_product_with_order(pairs, order_b)?;
    Ok(a.fan.max_cones() == b.fan.max_cones() && a.fan.rays() == b.fan.rays())
}

/// The log product of the factors in `keep` (in that order) together with
/// the coordinate projection onto it.
pub fn projection(space: &LogProductSpace, keep: &[usize]) -> Result<(LogProductSpace, LatticeMap)> {
    if keep.is_empty() {
        return Err(Error::EmptyProjection);
    }
    let count = space.factors.len();
    if let Some(&index) = keep.iter().find(|&&i| i >= count) {
        return Err(Error::FactorOutOfRange { index, count });
    }
    let pairs: Vec<LogPair> = keep.iter().map(|&i| space.factors[i]).collect();
    let target = log_product(&pairs)?;
    let coords: Vec<usize> = keep
        .iter()
        .flat_map(|&i| {
            let o = space.offsets[i];
            o..o + space.factors[i].dim() as usize
        })
        .collect();
    let map = LatticeMap::coordinate_projection(space.fan.rank(), &coords);
    Ok((target, map))
}

/// Splits the total transform of `D_i x (rest)` into the strict transform
/// and the exceptional rays over it.
///
/// Membership is decided by the piecewise-linear support function of the
/// boundary divisor on the product fan: an exceptional ray lies over
/// `D_i x (rest)` iff it has positive `b_i`-coordinate in its carrier cone.
pub fn strict_transform_rays(space: &LogProductSpace, i: usize) -> Result<TransformDecomposition> {
    let count = space.factors.len();
    if i >= count {
        return Err(Error::FactorOutOfRange { index: i, count });
    }
    let product = space.product_fan();
    let b = &space.strict_transforms[&i];
    let mut exceptional = Vec::new();
    for (s, ray) in &space.stratum_ray {
        let p = ray.to_rational();
        let carrier = product
            .carrier_cone(&p)
            .expect("refinement of the product fan");
        let coords = carrier.coordinates(&p).expect("carrier spans the ray");
        let over = carrier
            .rays()
            .iter()
            .zip(&coords)
            .any(|(r, c)| r == b && *c > num_rational::BigRational::from_integer(0.into()));
        if over {
            exceptional.push((s.clone(), ray.clone()));
        }
    }
    exceptional.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(TransformDecomposition {
        strict: b.clone(),
        exceptional,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogProductJson {
    pub factors: Vec<LogPair>,
    #[serde(flatten)]
    pub fan: FanJson,
    pub stratum_ray: BTreeMap<String, Vec<i64>>,
    pub strict_transforms: BTreeMap<String, StrictTransformJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictTransformJson {
    pub strict: Vec<i64>,
    pub exceptional: BTreeMap<String, Vec<i64>>,
}

impl LogProductSpace {
    pub fn to_json_value(&self) -> Result<LogProductJson> {
        let strict_transforms = (0..self.factors.len())
            .map(|i| {
                let d = strict_transform_rays(self, i)?;
                Ok((
                    (i + 1).to_string(),
                    StrictTransformJson {
                        strict: d.strict.coords().to_vec(),
                        exceptional: d
                            .exceptional
                            .iter()
                            .map(|(s, r)| (s.key(), r.coords().to_vec()))
                            .collect(),
                    },
                ))
            })
            .collect::<Result<_>>()?;
        Ok(LogProductJson {
            factors: self.factors.clone(),
            fan: FanJson::from(&self.fan),
            stratum_ray: self
                .stratum_ray
                .iter()
                .map(|(s, r)| (s.key(), r.coords().to_vec()))
                .collect(),
            strict_transforms,
        })
    }

    /// Rebuilds the space described by `json`, checking that the stored fan
    /// matches a recomputation.
    pub fn from_json_value(json: &LogProductJson) -> Result<Self> {
        let fan = Fan::try_from(&json.fan)?;
        let n = json.factors.len();
        let order = if n >= 2 {
            let mut order: Vec<(Stratum, Vec<i64>)> = json
                .stratum_ray
                .iter()
                .map(|(k, r)| Ok((Stratum::parse_key(k)?, r.clone())))
                .collect::<Result<_>>()?;
            // Recover the blow-up order from the exceptional step labels.
            let step = |r: &Vec<i64>| match fan.label(&LatticeVector::new(r.clone())) {
                Some(DivisorLabel::Exceptional(s)) => s,
                _ => usize::MAX,
            };
            order.sort_by_key(|(_, r)| step(r));
            order.into_iter().map(|(s, _)| s).collect()
        } else {
            Vec::new()
        };
        let space = log_product_with_order(&json.factors, &order)?;
        if space.fan != fan {
            return Err(Error::MalformedFan("fan does not match its factors".into()));
        }
        Ok(space)
    }
}
