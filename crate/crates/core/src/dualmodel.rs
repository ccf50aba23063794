//! Dual description of the quotients: symmetric polynomials in `k` variables
//! with every per-variable degree below `n`, cut out by conditions on the
//! diagonals where several variables collide.
//!
//! The space is spanned by monomial symmetric polynomials `m_λ`, `λ` in the
//! `k x (n-1)` box; each condition is a linear functional on that span, so
//! dimensions are `#basis - rank(conditions)`.

use std::collections::BTreeMap;

use crate::poly::MultiPoly;
use crate::qchar::CharTable;
use crate::qkernel::RowEchelon;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualError {
    #[error("points must be pairwise distinct")]
    RepeatedPoint,
    #[error("expected {expected} points, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error("multiset entries must be positive")]
    ZeroPart,
}

/// Partitions `λ_1 >= ... >= λ_k >= 0` with `λ_1 <= n-1`, optionally of a
/// fixed size, in lexicographically decreasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymBasis {
    pub k: usize,
    pub n: usize,
    pub partitions: Vec<Vec<u32>>,
}

impl SymBasis {
    /// Every partition in the box.
    pub fn full(k: usize, n: usize) -> Self {
        let mut partitions = Vec::new();
        if n > 0 {
            box_partitions(k, n as u32 - 1, None, &mut Vec::new(), &mut partitions);
        }
        SymBasis { k, n, partitions }
    }

    /// Partitions of total size `s`: the homogeneous degree-`s` part.
    pub fn homogeneous(k: usize, n: usize, s: u32) -> Self {
        let mut partitions = Vec::new();
        if n > 0 {
            box_partitions(k, n as u32 - 1, Some(s), &mut Vec::new(), &mut partitions);
        }
        SymBasis { k, n, partitions }
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }
}

fn box_partitions(k: usize, max: u32, size: Option<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == k {
        let total: u32 = cur.iter().sum();
        if size.map_or(true, |s| s == total) {
            out.push(cur.clone());
        }
        return;
    }
    let used: u32 = cur.iter().sum();
    let left = k - cur.len();
    let top = cur.last().copied().unwrap_or(max).min(max);
    for x in (0..=top).rev() {
        if let Some(s) = size {
            // remaining parts are each at most x
            if used + x > s || used + x + x * (left as u32 - 1) < s {
                continue;
            }
        }
        cur.push(x);
        box_partitions(k, max, size, cur, out);
        cur.pop();
    }
}

/// Distinct permutations of a multiset, in lexicographic order.
fn distinct_permutations(sorted_desc: &[u32]) -> Vec<Vec<u32>> {
    let mut v: Vec<u32> = sorted_desc.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return out;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
}

/// `m_λ(z_1, ..., z_k)`.
pub fn monomial_symmetric<T: Scalar>(lambda: &[u32]) -> MultiPoly<T> {
    MultiPoly::from_terms(
        lambda.len(),
        distinct_permutations(lambda).into_iter().map(|e| (e, T::one())),
    )
}

/// `f(z, ..., z, z_{i+1}, ..., z_k)` with `z` as variable 0.
pub fn merge_expand<T: Scalar>(f: &MultiPoly<T>, i: usize) -> MultiPoly<T> {
    f.merge_leading(i)
}

/// Required order of vanishing on the `i`-fold diagonal:
/// `sum_p (i + 1 - a_p)_+`.
pub fn diagonal_order(a: &[u32], i: u32) -> u32 {
    a.iter().map(|&ap| (i + 1).saturating_sub(ap)).sum()
}

/// Dimension of the degree-`s` symmetric polynomials in `k` variables,
/// per-variable degree `< n = |A|`, such that merging any `i` variables
/// into `z` leaves a polynomial divisible by `z^{d_i}`.
pub fn dual_dimension_limit<T: Scalar>(a: &[u32], k: usize, s: u32) -> usize {
    let n = a.len();
    if k == 0 {
        return usize::from(s == 0);
    }
    let basis = SymBasis::homogeneous(k, n, s);
    if basis.is_empty() {
        return 0;
    }
    let mut rows: BTreeMap<(usize, Vec<u32>), Vec<T>> = BTreeMap::new();
    for (col, lambda) in basis.partitions.iter().enumerate() {
        for i in 1..=k {
            let d = diagonal_order(a, i as u32);
            if d == 0 {
                continue;
            }
            // merged exponent is the sum of the first i entries
            for perm in distinct_permutations(lambda) {
                let zexp: u32 = perm[..i].iter().sum();
                if zexp >= d {
                    continue;
                }
                let mut key = vec![zexp];
                key.extend_from_slice(&perm[i..]);
                let row = rows
                    .entry((i, key))
                    .or_insert_with(|| vec![T::zero(); basis.len()]);
                row[col] += &T::one();
            }
        }
    }
    basis.len() - rank_of(basis.len(), rows.into_values())
}

fn rank_of<T: Scalar, I: IntoIterator<Item = Vec<T>>>(cols: usize, rows: I) -> usize {
    let mut ech = RowEchelon::new(cols);
    for r in rows {
        if ech.is_full() {
            break;
        }
        ech.insert(r);
    }
    ech.rank()
}

/// Table of [`dual_dimension_limit`] over `k <= kmax` and every attainable
/// degree `s <= k(n-1)`.
pub fn dual_char_limit<T: Scalar>(a: &[u32], kmax: u32) -> CharTable {
    let top = (a.len() as u32).saturating_sub(1);
    let mut t = CharTable::new();
    for k in 0..=kmax {
        for s in 0..=k * top {
            t.add(k, s, dual_dimension_limit::<T>(a, k as usize, s) as u64);
        }
    }
    t
}

/// Dimension of the symmetric polynomials in `k` variables, per-variable
/// degree `< n`, with `f(t_j, ..., t_j, z_{a_j+1}, ..., z_k) = 0`
/// (`a_j` copies of `t_j`) for every `j` with `a_j <= k`.
pub fn dual_dimension_at_t<T: Scalar>(a: &[u32], t: &[T], k: usize) -> Result<usize, DualError> {
    if a.len() != t.len() {
        return Err(DualError::PointCount { expected: a.len(), got: t.len() });
    }
    if a.contains(&0) {
        return Err(DualError::ZeroPart);
    }
    for i in 0..t.len() {
        for j in 0..i {
            if t[i] == t[j] {
                return Err(DualError::RepeatedPoint);
            }
        }
    }
    let n = a.len();
    if k == 0 {
        return Ok(1);
    }
    let basis = SymBasis::full(k, n);
    let mut rows: BTreeMap<(usize, Vec<u32>), Vec<T>> = BTreeMap::new();
    for (col, lambda) in basis.partitions.iter().enumerate() {
        let perms = distinct_permutations(lambda);
        for (j, (&aj, tj)) in a.iter().zip(t).enumerate() {
            let aj = aj as usize;
            if aj > k {
                continue;
            }
            for perm in &perms {
                let e: u32 = perm[..aj].iter().sum();
                let key = (j, perm[aj..].to_vec());
                let row = rows
                    .entry(key)
                    .or_insert_with(|| vec![T::zero(); basis.len()]);
                row[col] += &tj.powu(e);
            }
        }
    }
    Ok(basis.len() - rank_of(basis.len(), rows.into_values()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qchar::{char_recurrence, multisets_up_to};
    use crate::Rat;

    fn r(x: i64) -> Rat {
        Rat::from_int(x)
    }

    #[test]
    fn partition_boxes() {
        let b = SymBasis::homogeneous(2, 3, 2);
        assert_eq!(b.partitions, vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(SymBasis::full(2, 2).len(), 3);
        // number of partitions in a k x (n-1) box is C(k + n - 1, k)
        assert_eq!(SymBasis::full(3, 4).len(), 20);
        assert_eq!(distinct_permutations(&[1, 1, 0]).len(), 3);
    }

    #[test]
    fn merge_examples() {
        let z1_plus_z2 = monomial_symmetric::<Rat>(&[1, 0]);
        let m = merge_expand(&z1_plus_z2, 2);
        assert_eq!(m, MultiPoly::from_terms(1, [(vec![1], r(2))]));
        let m = merge_expand(&monomial_symmetric::<Rat>(&[1, 1]), 2);
        assert_eq!(m, MultiPoly::from_terms(1, [(vec![2], r(1))]));
        let m = merge_expand(&z1_plus_z2, 1);
        assert_eq!(m, MultiPoly::from_terms(2, [(vec![1, 0], r(1)), (vec![0, 1], r(1))]));
    }

    #[test]
    fn limit_examples() {
        for s in 0..4 {
            assert_eq!(dual_dimension_limit::<Rat>(&[1, 1], 1, s), 0);
        }
        assert_eq!(dual_dimension_limit::<Rat>(&[2, 2], 1, 0), 1);
        assert_eq!(dual_dimension_limit::<Rat>(&[2, 2], 1, 1), 1);
        assert_eq!(dual_dimension_limit::<Rat>(&[5, 1], 0, 0), 1);
    }

    #[test]
    fn at_points_examples() {
        assert_eq!(dual_dimension_at_t(&[1, 1], &[r(0), r(1)], 1).unwrap(), 0);
        let total: usize = (0..=3).map(|k| dual_dimension_at_t(&[2, 2], &[r(0), r(1)], k).unwrap()).sum();
        assert_eq!(total, 4);
        assert!(dual_dimension_at_t(&[2, 2], &[r(1), r(1)], 1).is_err());
    }

    #[test]
    fn limit_table_matches_recurrence() {
        for a in multisets_up_to(6) {
            let kmax = a.iter().map(|x| x - 1).sum::<u32>() + 1;
            assert_eq!(dual_char_limit::<Rat>(&a, kmax), char_recurrence(&a), "{a:?}");
        }
    }

    #[test]
    fn point_form_matches_graded_limit() {
        for a in multisets_up_to(5) {
            let n = a.len() as i64;
            let t: Vec<Rat> = (1..=n).map(|i| Rat::new(i.into(), 3.into())).collect();
            let kmax = a.iter().map(|x| x - 1).sum::<u32>() + 1;
            let limit = dual_char_limit::<Rat>(&a, kmax).zdims();
            for k in 0..=kmax as usize {
                let at = dual_dimension_at_t(&a, &t, k).unwrap() as u64;
                assert_eq!(at, limit.get(k).copied().unwrap_or(0), "{a:?} k={k}");
            }
        }
    }
}
