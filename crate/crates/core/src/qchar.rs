//! q-series side: Gaussian binomials, the character recurrence, the nested
//! q-binomial closed form, and the windowed Gordon sum.
//!
//! All tables use the plain `(q, z)` normalization: entry `(k, s)` counts
//! basis elements with `k` factors `e_i` whose indices sum to `s`. The closed
//! forms below are naturally stated at `z -> zq`; they are shifted back by
//! `(k, s) -> (k, s - k)` before being returned.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer polynomial in `q`, dense by degree.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly(Vec<i64>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![1])
    }

    pub fn from_coeffs(mut c: Vec<i64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        QPoly(c)
    }

    /// `q^d`.
    pub fn monomial(d: u32) -> Self {
        let mut c = vec![0; d as usize + 1];
        c[d as usize] = 1;
        QPoly(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, d: u32) -> i64 {
        self.0.get(d as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() as u32 - 1)
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        QPoly::from_coeffs(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> QPoly {
        QPoly::from_coeffs(self.0.iter().map(|x| x * c).collect())
    }

    pub fn shift(&self, d: u32) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![0; d as usize];
        c.extend_from_slice(&self.0);
        QPoly(c)
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(c)
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &QPoly) -> Option<QPoly> {
        let d = other.degree()?;
        let lead = other.0[d as usize];
        let mut rem = self.0.clone();
        if rem.len() < other.0.len() {
            return if self.is_zero() { Some(QPoly::zero()) } else { None };
        }
        let qlen = rem.len() - other.0.len() + 1;
        let mut quo = vec![0i64; qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + d as usize];
            if top % lead != 0 {
                return None;
            }
            let f = top / lead;
            quo[i] = f;
            for (j, b) in other.0.iter().enumerate() {
                rem[i + j] -= f * b;
            }
        }
        if rem.iter().any(|&x| x != 0) {
            return None;
        }
        Some(QPoly::from_coeffs(quo))
    }

    /// Keeps coefficients of degree `<= d`.
    pub fn truncate(&self, d: u32) -> QPoly {
        QPoly::from_coeffs(self.0.iter().take(d as usize + 1).copied().collect())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly{:?}", self.0)
    }
}

/// `(q)_k = prod_{i=1}^k (1 - q^i)`.
pub fn qfactorial(k: u32) -> QPoly {
    (1..=k).fold(QPoly::one(), |acc, i| {
        acc.mul(&QPoly::one().sub(&QPoly::monomial(i)))
    })
}

/// Gaussian binomial `[m, k]_q`, computed by the q-Pascal rule
/// `[m, k] = [m-1, k-1] + q^k [m-1, k]`. Zero outside `0 <= k <= m`.
pub fn qbinomial(m: u32, k: u32) -> QPoly {
    if k > m {
        return QPoly::zero();
    }
    // row[j] = [r, j] for the current r
    let mut row: Vec<QPoly> = vec![QPoly::one()];
    for r in 1..=m {
        let mut next = Vec::with_capacity(r as usize + 1);
        for j in 0..=r {
            let left = if j >= 1 { row[j as usize - 1].clone() } else { QPoly::zero() };
            let right = if j < r { row[j as usize].shift(j) } else { QPoly::zero() };
            next.push(left.add(&right));
        }
        row = next;
    }
    row[k as usize].clone()
}

/// Finitely supported bigraded character: `(zdeg, qdeg) -> dimension`.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "CharTableJson", try_from = "CharTableJson")]
pub struct CharTable {
    entries: BTreeMap<(u32, u32), u64>,
}

#[derive(Serialize, Deserialize)]
struct CharTableJson {
    entries: Vec<[u64; 3]>,
}

impl From<CharTable> for CharTableJson {
    fn from(t: CharTable) -> Self {
        CharTableJson {
            entries: t.triples().map(|(k, s, d)| [k as u64, s as u64, d]).collect(),
        }
    }
}

impl TryFrom<CharTableJson> for CharTable {
    type Error = String;
    fn try_from(j: CharTableJson) -> Result<Self, String> {
        let mut t = CharTable::new();
        for [k, s, d] in j.entries {
            let k = u32::try_from(k).map_err(|e| e.to_string())?;
            let s = u32::try_from(s).map_err(|e| e.to_string())?;
            t.add(k, s, d);
        }
        Ok(t)
    }
}

impl CharTable {
    pub fn new() -> Self {
        CharTable::default()
    }

    /// The table `{(0,0): 1}`.
    pub fn unit() -> Self {
        let mut t = CharTable::new();
        t.add(0, 0, 1);
        t
    }

    pub fn from_triples<I: IntoIterator<Item = (u32, u32, u64)>>(it: I) -> Self {
        let mut t = CharTable::new();
        for (k, s, d) in it {
            t.add(k, s, d);
        }
        t
    }

    pub fn get(&self, k: u32, s: u32) -> u64 {
        self.entries.get(&(k, s)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, k: u32, s: u32, d: u64) {
        if d == 0 {
            return;
        }
        *self.entries.entry((k, s)).or_insert(0) += d;
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted lexicographically by `(k, s)`.
    pub fn triples(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.entries.iter().map(|(&(k, s), &d)| (k, s, d))
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn max_zdeg(&self) -> Option<u32> {
        self.entries.keys().map(|&(k, _)| k).max()
    }

    /// Dimensions summed over q, indexed by z-degree.
    pub fn zdims(&self) -> Vec<u64> {
        let Some(kmax) = self.max_zdeg() else {
            return Vec::new();
        };
        let mut out = vec![0; kmax as usize + 1];
        for (&(k, _), &d) in &self.entries {
            out[k as usize] += d;
        }
        out
    }

    /// Adds `z^dk * poly(q) * q^ds * other` into `self`; negative products
    /// are rejected since characters are nonnegative.
    fn add_product(&mut self, other: &CharTable, dk: u32, ds: u32, poly: &QPoly) {
        for (&(k, s), &d) in &other.entries {
            for (i, &c) in poly.coeffs().iter().enumerate() {
                if c == 0 {
                    continue;
                }
                assert!(c > 0, "negative coefficient in a character product");
                self.add(k + dk, s + ds + i as u32, d * c as u64);
            }
        }
    }

    /// Undo the `z -> zq` substitution: `(k, s) -> (k, s - k)`.
    pub fn unshift_zq(&self) -> CharTable {
        CharTable::from_triples(self.triples().map(|(k, s, d)| {
            assert!(s >= k, "entry ({k},{s}) cannot come from a z -> zq shifted table");
            (k, s - k, d)
        }))
    }

    /// Apply `z -> zq`: `(k, s) -> (k, s + k)`.
    pub fn shift_zq(&self) -> CharTable {
        CharTable::from_triples(self.triples().map(|(k, s, d)| (k, s + k, d)))
    }

    /// Reflect each z-degree row: `(k, s) -> (k, k*(n-1) - s)`.
    pub fn mirror(&self, n: u32) -> CharTable {
        CharTable::from_triples(self.triples().map(|(k, s, d)| {
            let top = k * n.saturating_sub(1);
            assert!(s <= top, "entry ({k},{s}) outside the width-{n} support");
            (k, top - s, d)
        }))
    }

    /// Entries with `k <= kmax` and `s <= smax`.
    pub fn window(&self, kmax: u32, smax: u32) -> CharTable {
        CharTable::from_triples(self.triples().filter(|&(k, s, _)| k <= kmax && s <= smax))
    }

    /// Tab separated dump with header `k\ts\tdim`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("k\ts\tdim\n");
        for (k, s, d) in self.triples() {
            out.push_str(&format!("{k}\t{s}\t{d}\n"));
        }
        out
    }
}

impl fmt::Debug for CharTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CharTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .triples()
            .map(|(k, s, d)| {
                let mut t = String::new();
                if d != 1 || (k == 0 && s == 0) {
                    t.push_str(&d.to_string());
                }
                if k > 0 {
                    t.push('z');
                    if k > 1 {
                        t.push_str(&format!("^{k}"));
                    }
                }
                if s > 0 {
                    t.push('q');
                    if s > 1 {
                        t.push_str(&format!("^{s}"));
                    }
                }
                t
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Multiplicity profile of a multiset: `b[i-1] = #{j : a_j = i}`, trimmed so
/// the last entry (the maximal part) is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BProfile {
    b: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("profile must end in a positive count")]
    TrailingZero,
    #[error("multiset entries must be positive")]
    ZeroPart,
}

impl BProfile {
    pub fn new(b: Vec<u32>) -> Result<Self, ProfileError> {
        if b.last() == Some(&0) {
            return Err(ProfileError::TrailingZero);
        }
        Ok(BProfile { b })
    }

    pub fn from_multiset(a: &[u32]) -> Result<Self, ProfileError> {
        if a.contains(&0) {
            return Err(ProfileError::ZeroPart);
        }
        let s = a.iter().copied().max().unwrap_or(0);
        let mut b = vec![0u32; s as usize];
        for &x in a {
            b[x as usize - 1] += 1;
        }
        Ok(BProfile { b })
    }

    /// The sorted multiset this profile encodes.
    pub fn to_multiset(&self) -> Vec<u32> {
        let mut a = Vec::new();
        for (i, &c) in self.b.iter().enumerate() {
            a.extend(std::iter::repeat(i as u32 + 1).take(c as usize));
        }
        a
    }

    pub fn counts(&self) -> &[u32] {
        &self.b
    }

    /// `s`, the largest part (0 for the empty multiset).
    pub fn max_part(&self) -> usize {
        self.b.len()
    }

    pub fn n(&self) -> u32 {
        self.b.iter().sum()
    }
}

/// Character of `W^A` from the one-step recurrence
/// `ch(a_1..a_n) = ch(a_1..a_{n-1}) + z q^{n-1} ch(a_1..a_{n-1}, a_n - 1)`,
/// with the tuple re-sorted after each decrement.
pub fn char_recurrence(a: &[u32]) -> CharTable {
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    let mut memo = HashMap::new();
    recurrence_memo(&sorted, &mut memo)
}

fn recurrence_memo(a: &[u32], memo: &mut HashMap<Vec<u32>, CharTable>) -> CharTable {
    if a.is_empty() {
        return CharTable::unit();
    }
    if a[0] == 0 {
        return CharTable::new();
    }
    if let Some(t) = memo.get(a) {
        return t.clone();
    }
    let n = a.len();
    let head = &a[..n - 1];
    let mut out = recurrence_memo(head, memo);
    let mut dec = head.to_vec();
    dec.push(a[n - 1] - 1);
    dec.sort_unstable();
    let tail = recurrence_memo(&dec, memo);
    out.add_product(&tail, 1, n as u32 - 1, &QPoly::one());
    memo.insert(a.to_vec(), out.clone());
    out
}

/// The nested q-binomial sum, in the `z -> zq` normalization.
pub fn char_closed_form_zq(b: &BProfile) -> CharTable {
    let s = b.max_part();
    if s <= 1 {
        return CharTable::unit();
    }
    let bc = b.counts();
    // prefix[l] = b_1 + ... + b_l
    let mut prefix = vec![0u32; s + 1];
    for l in 1..=s {
        prefix[l] = prefix[l - 1] + bc[l - 1];
    }
    let mut out = CharTable::new();
    // j[l] for l = s-1 down to 1; upper bound for j_l is b_{l+1} + j_{l+1}
    let mut js = vec![0u32; s + 1];
    nested_sum(s - 1, s, bc, &prefix, &mut js, &mut out);
    out
}

fn nested_sum(
    l: usize,
    s: usize,
    bc: &[u32],
    prefix: &[u32],
    js: &mut Vec<u32>,
    out: &mut CharTable,
) {
    if l == 0 {
        let mut zexp = 0u32;
        let mut qexp = 0u32;
        let mut poly = QPoly::one();
        for l in 1..s {
            let j = js[l];
            zexp += j;
            qexp += j * (prefix[l] + j);
            poly = poly.mul(&qbinomial(bc[l] + js[l + 1], j));
        }
        out.add_product(&CharTable::unit(), zexp, qexp, &poly);
        return;
    }
    let hi = bc[l] + js[l + 1];
    for j in 0..=hi {
        js[l] = j;
        nested_sum(l - 1, s, bc, prefix, js, out);
    }
    js[l] = 0;
}

/// Closed-form character in the plain normalization.
pub fn char_closed_form(b: &BProfile) -> CharTable {
    char_closed_form_zq(b).unshift_zq()
}

/// `B(N, N)` for the matrix `B_{ij} = min(i, j)`, indices from 1.
pub fn gordon_bilinear(n: &[u32]) -> u64 {
    let mut acc = 0u64;
    for (i, &ni) in n.iter().enumerate() {
        for (j, &nj) in n.iter().enumerate() {
            acc += (i.min(j) as u64 + 1) * ni as u64 * nj as u64;
        }
    }
    acc
}

/// `B(N, N)` as the sum of squares of tail sums
/// `sum_l (n_{k-1} + ... + n_{k-l})^2`.
pub fn gordon_bilinear_tails(n: &[u32]) -> u64 {
    let mut acc = 0u64;
    let mut tail = 0u64;
    for &x in n.iter().rev() {
        tail += x as u64;
        acc += tail * tail;
    }
    acc
}

/// Truncation of `1 / (q)_n` at degree `cap`: the number of partitions of
/// each degree into parts of size at most `n`.
fn inverse_qfactorial_truncated(n: u32, cap: u32) -> QPoly {
    let mut c = vec![0i64; cap as usize + 1];
    c[0] = 1;
    for part in 1..=n {
        for d in part as usize..=cap as usize {
            c[d] += c[d - part as usize];
        }
    }
    QPoly::from_coeffs(c)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GordonError {
    #[error("Gordon level must be at least 2, got {0}")]
    Level(u32),
}

/// Entries of `sum_N z^{sum i n_i} q^{B(N,N)} / prod (q)_{n_i}` with
/// z-degree `<= zmax` and (plain-normalized) q-degree `<= smax`.
pub fn gordon_truncated(k: u32, zmax: u32, smax: u32) -> Result<CharTable, GordonError> {
    if k < 2 {
        return Err(GordonError::Level(k));
    }
    let parts = (k - 1) as usize;
    let mut out = CharTable::new();
    let mut n = vec![0u32; parts];
    gordon_enumerate(0, zmax, &mut n, smax, &mut out);
    Ok(out)
}

fn gordon_enumerate(idx: usize, zbudget: u32, n: &mut Vec<u32>, smax: u32, out: &mut CharTable) {
    if idx == n.len() {
        let zdeg: u32 = n.iter().enumerate().map(|(i, &x)| (i as u32 + 1) * x).sum();
        let b = gordon_bilinear(n);
        debug_assert_eq!(b, gordon_bilinear_tails(n));
        // shifted q-degree window is smax + zdeg
        let cap = (smax + zdeg) as u64;
        if b > cap {
            return;
        }
        let room = (cap - b) as u32;
        let mut series = QPoly::one();
        for &x in n.iter() {
            series = series.mul(&inverse_qfactorial_truncated(x, room)).truncate(room);
        }
        for (i, &c) in series.coeffs().iter().enumerate() {
            if c > 0 {
                let s_shifted = b as u32 + i as u32;
                out.add(zdeg, s_shifted - zdeg, c as u64);
            }
        }
        return;
    }
    let weight = idx as u32 + 1;
    let mut x = 0;
    while x * weight <= zbudget {
        n[idx] = x;
        gordon_enumerate(idx + 1, zbudget - x * weight, n, smax, out);
        x += 1;
    }
    n[idx] = 0;
}

/// All multisets of positive integers with sum at most `max_sum`, each
/// sorted ascending, in depth-first order starting with the empty one.
pub fn multisets_up_to(max_sum: u32) -> Vec<Vec<u32>> {
    fn go(min: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for x in min..=left {
            cur.push(x);
            go(x, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, max_sum, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn qfactorials() {
        assert_eq!(qfactorial(0), QPoly::one());
        assert_eq!(qfactorial(1), q(&[1, -1]));
        // (1-q)(1-q^2)(1-q^3) expanded by hand
        assert_eq!(qfactorial(3), q(&[1, -1, -1, 0, 1, 1, -1]));
    }

    #[test]
    fn qbinomial_examples() {
        assert_eq!(qbinomial(2, 1), q(&[1, 1]));
        assert_eq!(qbinomial(4, 2), q(&[1, 1, 2, 1, 1]));
        assert_eq!(qbinomial(7, 0), QPoly::one());
        assert_eq!(qbinomial(3, 5), QPoly::zero());
        // agrees with the quotient of q-factorials
        for m in 0..=9 {
            for k in 0..=m {
                let den = qfactorial(k).mul(&qfactorial(m - k));
                assert_eq!(qfactorial(m).div_exact(&den), Some(qbinomial(m, k)));
                assert_eq!(qbinomial(m, k).degree(), Some(k * (m - k)));
            }
        }
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(char_recurrence(&[2]), CharTable::from_triples([(0, 0, 1), (1, 0, 1)]));
        assert_eq!(char_recurrence(&[1, 2]), CharTable::from_triples([(0, 0, 1), (1, 1, 1)]));
        let t22 = CharTable::from_triples([(0, 0, 1), (1, 0, 1), (1, 1, 1), (2, 2, 1)]);
        assert_eq!(char_recurrence(&[2, 2]), t22);
        assert_eq!(t22.to_string(), "1 + z + zq + z^2q^2");
        assert_eq!(char_recurrence(&[]), CharTable::unit());
        assert!(char_recurrence(&[0, 3]).is_empty());
        // order of the input does not matter
        assert_eq!(char_recurrence(&[3, 1, 2]), char_recurrence(&[1, 2, 3]));
    }

    #[test]
    fn closed_form_examples() {
        let all_ones = BProfile::new(vec![4]).unwrap();
        assert_eq!(char_closed_form(&all_ones), CharTable::unit());
        let p22 = BProfile::from_multiset(&[2, 2]).unwrap();
        assert_eq!(p22.counts(), &[0, 2]);
        assert_eq!(char_closed_form(&p22), char_recurrence(&[2, 2]));
        let p12 = BProfile::new(vec![1, 1]).unwrap();
        assert_eq!(char_closed_form(&p12), CharTable::from_triples([(0, 0, 1), (1, 1, 1)]));
        assert!(BProfile::new(vec![1, 0]).is_err());
        assert!(BProfile::from_multiset(&[0, 1]).is_err());
    }

    #[test]
    fn gordon_bilinear_forms() {
        assert_eq!(gordon_bilinear(&[1, 0]), 1);
        assert_eq!(gordon_bilinear_tails(&[1, 0]), 1);
        // min-matrix [[1,1],[1,2]] on (1,1): 1 + 1 + 1 + 2
        assert_eq!(gordon_bilinear(&[1, 1]), 5);
        assert_eq!(gordon_bilinear_tails(&[1, 1]), 5);
        assert_eq!(gordon_bilinear(&[0, 0, 0]), 0);
    }

    #[test]
    fn gordon_level_two() {
        // sum_n z^n q^{n^2} / (q)_n, then (k, s) -> (k, s - k)
        let t = gordon_truncated(2, 3, 9).unwrap();
        let mut expect = CharTable::unit();
        for s in 0..=9 {
            expect.add(1, s, 1); // z q / (1 - q)
        }
        // z^2 q^4 / ((1-q)(1-q^2)): partitions into parts <= 2
        for s in 0..=9u32 {
            expect.add(2, s + 2, (s / 2 + 1) as u64);
        }
        // z^3 q^9 / (q)_3: partitions into parts <= 3
        for s in 0..=3u32 {
            let p3 = [1u64, 1, 2, 3][s as usize];
            expect.add(3, s + 6, p3);
        }
        assert_eq!(t, expect.window(3, 9));
        assert!(gordon_truncated(1, 3, 3).is_err());
    }

    #[test]
    fn gordon_zero_tuple_is_unit() {
        for k in 2..6 {
            assert_eq!(gordon_truncated(k, 0, 5).unwrap(), CharTable::unit());
        }
    }

    #[test]
    fn json_shape() {
        let t = char_recurrence(&[2, 2]);
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(j, r#"{"entries":[[0,0,1],[1,0,1],[1,1,1],[2,2,1]]}"#);
        let back: CharTable = serde_json::from_str(&j).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.to_tsv(), "k\ts\tdim\n0\t0\t1\n1\t0\t1\n1\t1\t1\n2\t2\t1\n");
    }

    fn multiset_from_counts(b: &[u32]) -> Vec<u32> {
        let mut a = Vec::new();
        for (i, &c) in b.iter().enumerate() {
            a.extend(std::iter::repeat(i as u32 + 1).take(c as usize));
        }
        a
    }

    #[test]
    fn recurrence_mass_and_closed_form_agree() {
        for a in multisets_up_to(10) {
            let rec = char_recurrence(&a);
            assert_eq!(rec.total(), a.iter().map(|&x| x as u64).product::<u64>(), "{a:?}");
            let b = BProfile::from_multiset(&a).unwrap();
            assert_eq!(b.to_multiset(), a);
            assert_eq!(char_closed_form(&b), rec, "{a:?}");
        }
    }

    #[test]
    fn aggregation_over_top_count() {
        // profile relation in the z -> zq normalization, checked against the
        // recurrence (not the nested sum it is used to derive)
        let ch = |b: &[u32]| char_recurrence(&multiset_from_counts(b)).shift_zq();
        for a in multisets_up_to(12) {
            let n = a.len() as u32;
            if n > 6 || a.iter().all(|&x| x < 2) {
                continue;
            }
            let b = BProfile::from_multiset(&a).unwrap().counts().to_vec();
            let s = b.len();
            let bs = b[s - 1];
            let mut rhs = CharTable::new();
            for j in 0..=bs {
                let mut head = b[..s - 1].to_vec();
                head[s - 2] += j;
                let factor = qbinomial(bs, j);
                rhs.add_product(&ch(&head), j, j * (n - bs + j), &factor);
            }
            assert_eq!(ch(&b), rhs, "profile {b:?}");
        }
    }

    #[test]
    fn concurrent_recurrence_is_deterministic() {
        let a = vec![1, 2, 3, 3, 4];
        let expect = char_recurrence(&a);
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let a = a.clone();
                std::thread::spawn(move || char_recurrence(&a))
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), expect);
        }
    }

    proptest::proptest! {
        #[test]
        fn q_pascal_and_symmetry(m in 1u32..=12, k in 0u32..=12) {
            proptest::prop_assume!(k <= m);
            let left = qbinomial(m - 1, k).shift(k).add(&if k >= 1 { qbinomial(m - 1, k - 1) } else { QPoly::zero() });
            proptest::prop_assert_eq!(&qbinomial(m, k), &left);
            let right = qbinomial(m - 1, k).add(&if k >= 1 { qbinomial(m - 1, k - 1).shift(m - k) } else { QPoly::zero() });
            proptest::prop_assert_eq!(&qbinomial(m, k), &right);
            proptest::prop_assert_eq!(qbinomial(m, k), qbinomial(m, m - k));
            proptest::prop_assert!(qbinomial(m, k).coeffs().iter().all(|&c| c > 0));
        }

        #[test]
        fn mirror_is_involutive(a in proptest::collection::vec(1u32..4, 1..5)) {
            let t = char_recurrence(&a);
            let n = a.len() as u32;
            proptest::prop_assert_eq!(t.mirror(n).mirror(n), t);
        }
    }
}
