//! Exact linear algebra over Z and Q used by the cone and fan code.
//!
//! Everything here works on small dense matrices (ambient rank rarely exceeds
//! ten), so the algorithms favour exactness over asymptotics: fraction-free
//! Bareiss elimination for determinants, rational Gauss-Jordan for solving,
//! and a dense phase-one simplex with Bland's rule for feasibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

#[cfg(test)]
pub(crate) fn to_rational(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..ncols {
                let v = &m[r][j] * &f;
                m[i][j] -= v;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// gcd of all maximal minors of a `k x n` integer matrix with `k <= n`.
///
/// The rows extend to a lattice basis iff this is 1.
pub fn maximal_minor_gcd(rows: &[Vec<BigInt>], ncols: usize) -> BigInt {
    let k = rows.len();
    let mut acc = BigInt::zero();
    for cols in combinations(ncols, k) {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        acc = acc.gcd(&determinant(&minor));
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Solves `sum_i c_i * generators[i] = target` for rational `c`, returning
/// `None` when `target` is outside the span. Generators must be independent,
/// which makes the solution unique.
pub fn coordinates_in_span(
    generators: &[Vec<BigRational>],
    target: &[BigRational],
) -> Option<Vec<BigRational>> {
    let k = generators.len();
    let n = target.len();
    // Augmented n x (k+1) system, columns are the generators.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            let mut r: Vec<BigRational> = generators.iter().map(|g| g[row].clone()).collect();
            r.push(target[row].clone());
            r
        })
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for c in 0..k {
        let p = (r..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=k {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

/// Decides whether `{x >= 0 : a x = b}` is non-empty, exactly.
///
/// Dense phase-one simplex with one artificial variable per row and Bland's
/// anti-cycling rule.
pub fn feasible_nonnegative(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![BigRational::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = BigRational::one();
        row[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    // Objective row: minimise the sum of artificials, expressed in reduced
    // costs relative to the artificial basis.
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(p) = leave else {
            // Unbounded below cannot happen for a sum of non-negative
            // artificials; treat defensively as infeasible.
            return false;
        };
        let pivot = t[p][enter].clone();
        for v in t[p].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..=m {
            if i != p && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    let v = &t[p][j] * &f;
                    t[i][j] -= v;
                }
            }
        }
        basis[p] = enter;
    }
    t[m][width - 1].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = to_big(&[vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]]);
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) + 0 = -52 - 2 = -54
        assert_eq!(determinant(&m), BigInt::from(-54));
        let singular = to_big(&[vec![1, 2], vec![2, 4]]);
        assert!(determinant(&singular).is_zero());
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn minor_gcd_detects_sublattice() {
        let m = to_big(&[vec![1, 0, 0], vec![1, 2, 0]]);
        assert_eq!(maximal_minor_gcd(&m, 3), BigInt::from(2));
        let m = to_big(&[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(maximal_minor_gcd(&m, 3), BigInt::from(1));
    }

    #[test]
    fn span_coordinates() {
        let gens = to_rational(&[vec![1, 0, 0], vec![1, 1, 0]]);
        let c = coordinates_in_span(&gens, &[q(3), q(2), q(0)]).unwrap();
        assert_eq!(c, vec![q(1), q(2)]);
        assert!(coordinates_in_span(&gens, &[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn simplex_feasibility() {
        // x + y = 1, x - y = 3  -> x = 2, y = -1: infeasible with y >= 0.
        let a = to_rational(&[vec![1, 1], vec![1, -1]]);
        assert!(!feasible_nonnegative(&a, &[q(1), q(3)]));
        // x + y + z = 2, x - z = 0 -> feasible.
        let a = to_rational(&[vec![1, 1, 1], vec![1, 0, -1]]);
        assert!(feasible_nonnegative(&a, &[q(2), q(0)]));
        // -x = 1 infeasible.
        let a = to_rational(&[vec![-1]]);
        assert!(!feasible_nonnegative(&a, &[q(1)]));
    }
}
