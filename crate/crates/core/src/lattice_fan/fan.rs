use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use rand::Rng;

use super::cone::{is_smooth, Cone};
use super::vector::LatticeVector;
use crate::error::{Error, Result};

/// What a ray of a fan stands for geometrically.
///
/// Factor indices are 0-based, blow-up steps 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisorLabel {
    Boundary(usize),
    Exceptional(usize),
    StrictTransform(usize),
}

impl DivisorLabel {
    pub fn factor(&self) -> Option<usize> {
        match *self {
            DivisorLabel::Boundary(i) | DivisorLabel::StrictTransform(i) => Some(i),
            DivisorLabel::Exceptional(_) => None,
        }
    }
}

/// A simplicial fan given by its maximal cones.
///
/// Faces are implicit. Rays may carry a [`DivisorLabel`]; unlabelled rays
/// are ordinary torus-invariant divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    max_cones: BTreeSet<Cone>,
    labels: BTreeMap<LatticeVector, DivisorLabel>,
}

impl Fan {
    /// Builds a fan from maximal cones and checks pairwise face closure.
    /// Cones that are faces of other listed cones are dropped.
    pub fn new(
        rank: usize,
        cones: impl IntoIterator<Item = Cone>,
        labels: BTreeMap<LatticeVector, DivisorLabel>,
    ) -> Result<Self> {
        let fan = Self::from_parts(rank, cones, labels)?;
        if let Some((a, b)) = fan.face_closure_violation() {
            return Err(Error::MalformedFan(format!("{a} and {b} overlap improperly")));
        }
        Ok(fan)
    }

    fn from_parts(
        rank: usize,
        cones: impl IntoIterator<Item = Cone>,
        labels: BTreeMap<LatticeVector, DivisorLabel>,
    ) -> Result<Self> {
        let all: BTreeSet<Cone> = cones.into_iter().collect();
        for c in &all {
            if c.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: c.rank(),
                });
            }
        }
        let max_cones: BTreeSet<Cone> = all
            .iter()
            .filter(|c| !all.iter().any(|d| d != *c && c.is_face_of(d)))
            .cloned()
            .collect();
        let max_cones = if max_cones.is_empty() {
            BTreeSet::from([Cone::zero(rank)])
        } else {
            max_cones
        };
        let fan = Self {
            rank,
            max_cones,
            labels,
        };
        let rays: BTreeSet<LatticeVector> = fan.rays().into_iter().collect();
        if let Some(r) = fan.labels.keys().find(|r| !rays.contains(*r)) {
            return Err(Error::MalformedFan(format!("label on {r}, which is not a ray")));
        }
        Ok(fan)
    }

    /// The fan of `Z^0`: a single zero cone.
    pub fn point() -> Self {
        Self {
            rank: 0,
            max_cones: BTreeSet::from([Cone::zero(0)]),
            labels: BTreeMap::new(),
        }
    }

    /// The positive orthant of `Z^n` as one cone; ray `e_i` is labelled as
    /// the boundary of factor `i`.
    pub fn octant(n: usize) -> Self {
        let rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::basis(n, i)).collect();
        let labels = rays
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), DivisorLabel::Boundary(i)))
            .collect();
        Self {
            rank: n,
            max_cones: BTreeSet::from([Cone::from_sorted_unchecked(n, rays)]),
            labels,
        }
    }

    /// The fan of `P^n` with rays `e_1..e_n` and `-(e_1+...+e_n)`; `e_1` is
    /// labelled as the boundary of factor 0.
    pub fn projective_space(n: usize) -> Self {
        let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::basis(n, i)).collect();
        rays.push(LatticeVector::new(vec![-1; n]));
        let max_cones = (0..=n)
            .map(|skip| {
                let rs = rays
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, r)| r.clone())
                    .collect();
                Cone::from_sorted_unchecked(n, rs)
            })
            .collect();
        let labels = if n > 0 {
            BTreeMap::from([(LatticeVector::basis(n, 0), DivisorLabel::Boundary(0))])
        } else {
            BTreeMap::new()
        };
        Self {
            rank: n,
            max_cones,
            labels,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_cones(&self) -> &BTreeSet<Cone> {
        &self.max_cones
    }

    pub fn labels(&self) -> &BTreeMap<LatticeVector, DivisorLabel> {
        &self.labels
    }

    pub fn label(&self, ray: &LatticeVector) -> Option<DivisorLabel> {
        self.labels.get(ray).copied()
    }

    /// All rays, lexicographically sorted.
    pub fn rays(&self) -> Vec<LatticeVector> {
        let set: BTreeSet<&LatticeVector> =
            self.max_cones.iter().flat_map(|c| c.rays()).collect();
        set.into_iter().cloned().collect()
    }

    /// Every cone of the fan, faces included.
    pub fn cones(&self) -> BTreeSet<Cone> {
        self.max_cones.iter().flat_map(Cone::faces).collect()
    }

    pub fn contains_cone(&self, cone: &Cone) -> bool {
        self.max_cones.iter().any(|m| cone.is_face_of(m))
    }

    pub fn exceptional_count(&self) -> usize {
        self.labels
            .values()
            .filter(|l| matches!(l, DivisorLabel::Exceptional(_)))
            .count()
    }

    /// One more than the largest factor index among labels, 0 if none.
    pub fn factor_span(&self) -> usize {
        self.labels
            .values()
            .filter_map(DivisorLabel::factor)
            .map(|i| i + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn contains_point(&self, point: &[BigRational]) -> bool {
        self.max_cones.iter().any(|c| c.contains(point))
    }

    /// The cone whose relative interior contains `point`.
    pub fn carrier_cone(&self, point: &[BigRational]) -> Option<Cone> {
        self.max_cones.iter().find_map(|c| c.carrier_face(point))
    }

    pub fn is_smooth(&self) -> bool {
        self.max_cones
            .iter()
            .all(|c| is_smooth(c, self.rank).unwrap_or(false))
    }

    /// First pair of maximal cones whose intersection is not a common face.
    pub fn face_closure_violation(&self) -> Option<(Cone, Cone)> {
        let cones: Vec<&Cone> = self.max_cones.iter().collect();
        for (i, a) in cones.iter().enumerate() {
            for b in &cones[i + 1..] {
                if !a.meets_in_common_face(b) || !b.meets_in_common_face(a) {
                    return Some(((*a).clone(), (*b).clone()));
                }
            }
        }
        None
    }

    /// Stellar subdivision at `center`, returning the new fan and the new
    /// ray. The ray is labelled `Exceptional(k)` where `k - 1` exceptional
    /// rays existed before.
    pub fn star_subdivide(&self, center: &Cone) -> Result<(Fan, LatticeVector)> {
        if center.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: center.rank(),
            });
        }
        if !self.contains_cone(center) {
            return Err(Error::CenterNotInFan(center.to_string()));
        }
        if center.dim() < 2 {
            return Err(Error::DegenerateCenter(center.dim()));
        }
        let ray = center.ray_sum()?.primitive();
        let mut max_cones = BTreeSet::new();
        for m in &self.max_cones {
            if center.is_face_of(m) {
                for r in center.rays() {
                    let mut rays = m.without(r).rays().to_vec();
                    rays.push(ray.clone());
                    max_cones.insert(Cone::from_sorted_unchecked(self.rank, rays));
                }
            } else {
                max_cones.insert(m.clone());
            }
        }
        let mut labels = self.labels.clone();
        labels.insert(
            ray.clone(),
            DivisorLabel::Exceptional(self.exceptional_count() + 1),
        );
        Ok((
            Fan {
                rank: self.rank,
                max_cones,
                labels,
            },
            ray,
        ))
    }

    pub(crate) fn relabel(&mut self, ray: &LatticeVector, label: DivisorLabel) {
        self.labels.insert(ray.clone(), label);
    }

    /// A random rational point in the support, as a non-negative combination
    /// of the rays of a random maximal cone.
    pub fn random_support_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<BigRational> {
        let cones: Vec<&Cone> = self.max_cones.iter().collect();
        let cone = cones[rng.gen_range(0..cones.len())];
        let mut point = vec![BigRational::from_integer(0.into()); self.rank];
        for r in cone.rays() {
            let c = BigRational::new(rng.gen_range(0..20i64).into(), rng.gen_range(1..8i64).into());
            for (p, &x) in point.iter_mut().zip(r.coords()) {
                *p += &c * BigRational::from_integer(x.into());
            }
        }
        point
    }
}

/// Stellar subdivision at `center`; see [`Fan::star_subdivide`].
pub fn star_subdivide(fan: &Fan, center: &Cone) -> Result<Fan> {
    fan.star_subdivide(center).map(|(f, _)| f)
}

/// The product fan in `Z^(a+b)`. Labels of `g` are shifted past the factors
/// and blow-up steps of `f`.
pub fn product_fan(f: &Fan, g: &Fan) -> Fan {
    let rank = f.rank + g.rank;
    let mut max_cones = BTreeSet::new();
    for a in &f.max_cones {
        for b in &g.max_cones {
            let rays: Vec<LatticeVector> = a
                .rays()
                .iter()
                .map(|r| r.embed(0, rank))
                .chain(b.rays().iter().map(|r| r.embed(f.rank, rank)))
                .collect();
            max_cones.insert(Cone::from_sorted_unchecked(rank, rays));
        }
    }
    let factor_shift = f.factor_span();
    let step_shift = f.exceptional_count();
    let mut labels: BTreeMap<LatticeVector, DivisorLabel> = f
        .labels
        .iter()
        .map(|(r, l)| (r.embed(0, rank), *l))
        .collect();
    for (r, l) in &g.labels {
        let l = match *l {
            DivisorLabel::Boundary(i) => DivisorLabel::Boundary(i + factor_shift),
            DivisorLabel::StrictTransform(i) => DivisorLabel::StrictTransform(i + factor_shift),
            DivisorLabel::Exceptional(s) => DivisorLabel::Exceptional(s + step_shift),
        };
        labels.insert(r.embed(f.rank, rank), l);
    }
    Fan {
        rank,
        max_cones,
        labels,
    }
}

/// An integer matrix `Z^source -> Z^target`, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    source_rank: usize,
    rows: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn new(source_rank: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != source_rank) {
            return Err(Error::RankMismatch {
                expected: source_rank,
                found: r.len(),
            });
        }
        Ok(Self { source_rank, rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| LatticeVector::basis(n, i).coords().to_vec())
            .collect();
        Self {
            source_rank: n,
            rows,
        }
    }

    /// The map keeping the listed source coordinates, in the given order.
    pub fn coordinate_projection(source_rank: usize, keep: &[usize]) -> Self {
        let rows = keep
            .iter()
            .map(|&i| LatticeVector::basis(source_rank, i).coords().to_vec())
            .collect();
        Self { source_rank, rows }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if v.rank() != self.source_rank {
            return Err(Error::RankMismatch {
                expected: self.source_rank,
                found: v.rank(),
            });
        }
        self.rows
            .iter()
            .map(|row| {
                row.iter().zip(v.coords()).try_fold(0i64, |acc, (a, b)| {
                    a.checked_mul(*b)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow("lattice map"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector::new)
    }

    /// `then . self`.
    pub fn then(&self, then: &LatticeMap) -> Result<LatticeMap> {
        if then.source_rank != self.target_rank() {
            return Err(Error::RankMismatch {
                expected: self.target_rank(),
                found: then.source_rank,
            });
        }
        let cols: Vec<LatticeVector> = (0..self.source_rank)
            .map(|j| LatticeVector::new(self.rows.iter().map(|r| r[j]).collect()))
            .collect();
        let images = cols
            .iter()
            .map(|c| then.apply(c))
            .collect::<Result<Vec<_>>>()?;
        let rows = (0..then.target_rank())
            .map(|i| images.iter().map(|c| c.coords()[i]).collect())
            .collect();
        Ok(LatticeMap {
            source_rank: self.source_rank,
            rows,
        })
    }
}

/// Whether `map` sends every cone of `source` into some cone of `target`.
pub fn induces_fan_map(source: &Fan, target: &Fan, map: &LatticeMap) -> Result<bool> {
    if map.source_rank() != source.rank() {
        return Err(Error::RankMismatch {
            expected: source.rank(),
            found: map.source_rank(),
        });
    }
    if map.target_rank() != target.rank() {
        return Err(Error::RankMismatch {
            expected: target.rank(),
            found: map.target_rank(),
        });
    }
    for cone in source.max_cones() {
        let images = cone
            .rays()
            .iter()
            .map(|r| map.apply(r).map(|v| v.to_rational()))
            .collect::<Result<Vec<_>>>()?;
        let fits = target
            .max_cones()
            .iter()
            .any(|t| images.iter().all(|p| t.contains(p)));
        if !fits {
            return Ok(false);
        }
    }
    Ok(true)
}
