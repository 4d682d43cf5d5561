use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg;
use super::vector::LatticeVector;
use crate::error::{Error, Result};

/// A simplicial rational cone, stored as its sorted set of primitive ray
/// generators.
///
/// Two cones are equal iff their ray sets are equal, which is the canonical
/// form the fan code relies on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
}

impl Cone {
    /// Builds a cone, checking that the generators are primitive, distinct,
    /// live in `Z^rank` and are linearly independent.
    pub fn new(rank: usize, rays: impl IntoIterator<Item = LatticeVector>) -> Result<Self> {
        let mut rays: Vec<LatticeVector> = rays.into_iter().collect();
        for r in &rays {
            if r.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: r.rank(),
                });
            }
            if !r.is_primitive() {
                return Err(Error::InvalidCone(format!("ray {r} is not primitive")));
            }
        }
        rays.sort();
        let before = rays.len();
        rays.dedup();
        if rays.len() != before {
            return Err(Error::InvalidCone("duplicate rays".into()));
        }
        let rows: Vec<Vec<BigRational>> = rays.iter().map(LatticeVector::to_rational).collect();
        if linalg::rank(&rows) != rays.len() {
            return Err(Error::InvalidCone(format!(
                "rays {} are linearly dependent",
                DisplayRays(&rays)
            )));
        }
        Ok(Self { rank, rays })
    }

    /// Skips validation; callers guarantee primitive independent rays.
    pub(crate) fn from_sorted_unchecked(rank: usize, mut rays: Vec<LatticeVector>) -> Self {
        rays.sort();
        Self { rank, rays }
    }

    pub fn zero(rank: usize) -> Self {
        Self { rank, rays: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn has_ray(&self, ray: &LatticeVector) -> bool {
        self.rays.binary_search(ray).is_ok()
    }

    /// Faces of a simplicial cone are exactly the cones on subsets of rays.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.rank == other.rank && self.rays.iter().all(|r| other.has_ray(r))
    }

    /// Every face, the zero cone and the cone itself included.
    pub fn faces(&self) -> Vec<Cone> {
        let k = self.rays.len();
        (0..1usize << k)
            .map(|mask| {
                let rays = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.rays[i].clone())
                    .collect();
                Cone { rank: self.rank, rays }
            })
            .collect()
    }

    pub fn without(&self, ray: &LatticeVector) -> Cone {
        Cone {
            rank: self.rank,
            rays: self.rays.iter().filter(|r| *r != ray).cloned().collect(),
        }
    }

    /// Coordinates of `point` in the ray basis, if it lies in the span.
    pub fn coordinates(&self, point: &[BigRational]) -> Option<Vec<BigRational>> {
        let gens: Vec<Vec<BigRational>> = self.rays.iter().map(LatticeVector::to_rational).collect();
        linalg::coordinates_in_span(&gens, point)
    }

    pub fn contains(&self, point: &[BigRational]) -> bool {
        self.coordinates(point)
            .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    }

    pub fn contains_vector(&self, v: &LatticeVector) -> bool {
        self.contains(&v.to_rational())
    }

    /// The face whose relative interior contains `point`, if `point` lies in
    /// the cone at all.
    pub fn carrier_face(&self, point: &[BigRational]) -> Option<Cone> {
        let c = self.coordinates(point)?;
        if c.iter().any(Signed::is_negative) {
            return None;
        }
        let rays = self
            .rays
            .iter()
            .zip(&c)
            .filter(|(_, x)| x.is_positive())
            .map(|(r, _)| r.clone())
            .collect();
        Some(Cone { rank: self.rank, rays })
    }

    /// Sum of the generators, the barycentric direction of the cone.
    pub fn ray_sum(&self) -> Result<LatticeVector> {
        self.rays
            .iter()
            .try_fold(LatticeVector::zero(self.rank), |acc, r| acc.checked_add(r))
    }

    /// Whether the geometric intersection with `other` is the cone on the
    /// common rays, i.e. a common face of both.
    ///
    /// Since rays are independent, a point of `self` outside the common face
    /// has a positive coordinate on some non-shared ray; we search for such a
    /// point in `other` with an exact feasibility LP.
    pub fn meets_in_common_face(&self, other: &Cone) -> bool {
        let own: Vec<bool> = self.rays.iter().map(|r| !other.has_ray(r)).collect();
        if !own.iter().any(|&b| b) {
            return true;
        }
        let a_len = self.rays.len();
        let b_len = other.rays.len();
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(self.rank + 1);
        for coord in 0..self.rank {
            let mut row = Vec::with_capacity(a_len + b_len);
            for r in &self.rays {
                row.push(BigRational::from_integer(r.coords()[coord].into()));
            }
            for r in &other.rays {
                row.push(BigRational::from_integer((-r.coords()[coord]).into()));
            }
            rows.push(row);
        }
        let mut norm = vec![BigRational::zero(); a_len + b_len];
        for (i, &is_own) in own.iter().enumerate() {
            if is_own {
                norm[i] = BigRational::one();
            }
        }
        rows.push(norm);
        let mut rhs = vec![BigRational::zero(); self.rank];
        rhs.push(BigRational::one());
        !linalg::feasible_nonnegative(&rows, &rhs)
    }
}

/// Whether the rays of `cone` extend to a basis of `Z^ambient_rank`.
///
/// For a full-dimensional cone this is `|det| = 1`; in general it is the
/// condition that the maximal minors of the ray matrix are coprime.
pub fn is_smooth(cone: &Cone, ambient_rank: usize) -> Result<bool> {
    if cone.rank() != ambient_rank {
        return Err(Error::RankMismatch {
            expected: ambient_rank,
            found: cone.rank(),
        });
    }
    if cone.dim() == 0 {
        return Ok(true);
    }
    let rows: Vec<Vec<i64>> = cone.rays().iter().map(|r| r.coords().to_vec()).collect();
    let gcd = linalg::maximal_minor_gcd(&linalg::to_big(&rows), ambient_rank);
    if gcd.is_zero() {
        return Err(Error::InvalidCone("dependent rays".into()));
    }
    Ok(gcd.is_one())
}

pub(crate) struct DisplayRays<'a>(pub &'a [LatticeVector]);

impl fmt::Display for DisplayRays<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{}", DisplayRays(&self.rays))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    #[test]
    fn smooth_standard_basis() {
        let c = Cone::new(2, [v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert!(is_smooth(&c, 2).unwrap());
    }

    #[test]
    fn determinant_two_is_singular() {
        let c = Cone::new(2, [v(&[1, 0]), v(&[1, 2])]).unwrap();
        assert!(!is_smooth(&c, 2).unwrap());
    }

    #[test]
    fn lower_dimensional_smoothness_uses_minors() {
        let c = Cone::new(3, [v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert!(is_smooth(&c, 3).unwrap());
        let c = Cone::new(3, [v(&[1, 0, 0]), v(&[1, 2, 0])]).unwrap();
        assert!(!is_smooth(&c, 3).unwrap());
    }

    #[test]
    fn dependent_rays_are_rejected() {
        let err = Cone::new(2, [v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap_err();
        assert!(matches!(err, Error::InvalidCone(_)));
        assert!(matches!(
            Cone::new(2, [v(&[2, 0])]),
            Err(Error::InvalidCone(_))
        ));
        assert!(matches!(
            is_smooth(&Cone::zero(2), 3),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn carrier_face_and_membership() {
        let c = Cone::new(3, [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let p = v(&[2, 0, 3]).to_rational();
        let face = c.carrier_face(&p).unwrap();
        assert_eq!(face.rays(), &[v(&[0, 0, 1]), v(&[1, 0, 0])]);
        assert!(!c.contains_vector(&v(&[-1, 0, 0])));
    }

    #[test]
    fn overlapping_cones_are_detected() {
        let a = Cone::new(2, [v(&[1, 0]), v(&[0, 1])]).unwrap();
        let b = Cone::new(2, [v(&[1, 1]), v(&[0, 1])]).unwrap();
        assert!(!a.meets_in_common_face(&b));
        let c = Cone::new(2, [v(&[0, 1]), v(&[-1, 0])]).unwrap();
        assert!(a.meets_in_common_face(&c));
    }
}
