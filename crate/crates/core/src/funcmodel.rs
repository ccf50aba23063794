//! Tensor-valued polynomials with conditions on pairwise diagonals.
//!
//! `F` is `C[z_1..z_n] ⊗ C^{a_1} ⊗ ... ⊗ C^{a_n}`, each `C^a` the irreducible
//! sl2-module with basis `v_0..v_{a-1}`, `X v_c = v_{c+1}` (this is how `e`
//! acts) and `Y v_c = c(a-c) v_{c-1}`. For a pair `i < j` write
//! `s = z_i - z_j`, `t = z_i + z_j` and expand `f = sum_k s^k f_k`. The
//! subspace `F^c` asks `f_k ∈ V^{(i,j)}(k) ⊗ (rest)`, where `V(k)` collects
//! the `k+1` largest Clebsch–Gordan summands of `C^{a_i} ⊗ C^{a_j}`.
//!
//! `F^c` is graded by polynomial degree and by weight (total `c`), and is a
//! `C[z]`-module. For a point `T`, `M(T) = F^c / R(T) F^c` with `R(T)` the
//! ideal of `T`; its dimension is read off a degree truncation, with an
//! explicit check that one more degree changes nothing.

use std::collections::{BTreeMap, HashMap};

use crate::cyclic::truncated_basis;
use crate::poly::{MultiPoly, PolyError};
use crate::qchar::CharTable;
use crate::qkernel::{kernel_basis, Matrix, RowEchelon, Subspace};
use crate::scalar::{binomial, Scalar};

/// Largest number of points handled.
pub const MAX_POINTS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FuncError {
    #[error("at most {MAX_POINTS} points are supported, got {0}")]
    TooManyPoints(usize),
    #[error("multiset entries must be positive")]
    ZeroPart,
    #[error("expected {expected} coordinates, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error("pairing needs exactly two points")]
    NotPair,
    #[error("dimensions still change between degree caps {cap} and {next}")]
    NotStabilized { cap: u32, next: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `X` on `C^a`: `v_c -> v_{c+1}`.
pub fn raising<T: Scalar>(a: u32) -> Matrix<T> {
    let a = a as usize;
    let mut m = Matrix::zeros(a, a);
    for c in 0..a.saturating_sub(1) {
        m[(c + 1, c)] = T::one();
    }
    m
}

/// `Y` on `C^a`: `v_c -> c(a-c) v_{c-1}`.
pub fn lowering<T: Scalar>(a: u32) -> Matrix<T> {
    let n = a as usize;
    let mut m = Matrix::zeros(n, n);
    for c in 1..n {
        m[(c - 1, c)] = T::from_int(c as i64 * (a as i64 - c as i64));
    }
    m
}

/// `m ⊗ 1 + 1 ⊗ m'` on `C^p ⊗ C^q`, coordinates `c_i * q + c_j`.
fn kron_sum<T: Scalar>(x: &Matrix<T>, y: &Matrix<T>) -> Matrix<T> {
    let (p, q) = (x.nrows(), y.nrows());
    let mut out = Matrix::zeros(p * q, p * q);
    for i in 0..p {
        for j in 0..p {
            if !x[(i, j)].is_zero() {
                for r in 0..q {
                    out[(i * q + r, j * q + r)] += &x[(i, j)];
                }
            }
        }
        for r in 0..q {
            for c in 0..q {
                if !y[(r, c)].is_zero() {
                    out[(i * q + r, i * q + c)] += &y[(r, c)];
                }
            }
        }
    }
    out
}

/// Clebsch–Gordan summands of `C^{a_i} ⊗ C^{a_j}` in a fixed order.
///
/// Summand `l` is generated by the `Y`-invariant vector of weight `l`, so in
/// the standard order summand 0 (containing `v_0 ⊗ v_0`) is the largest.
#[derive(Clone, PartialEq)]
pub struct PairFiltration<T> {
    pub dims: (u32, u32),
    summands: Vec<Subspace<T>>,
}

impl<T: Scalar> std::fmt::Debug for PairFiltration<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PairFiltration")
            .field("dims", &self.dims)
            .field("summand_dims", &self.summand_dims())
            .finish()
    }
}

impl<T: Scalar> PairFiltration<T> {
    pub fn summands(&self) -> &[Subspace<T>] {
        &self.summands
    }

    pub fn summand_dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.dim()).collect()
    }

    /// `V(l)`: sum of the first `l+1` summands; the whole space from
    /// `l = min(a_i, a_j) - 1` on.
    pub fn level(&self, l: usize) -> Subspace<T> {
        let amb = (self.dims.0 * self.dims.1) as usize;
        let mut ech = RowEchelon::new(amb);
        for s in self.summands.iter().take(l + 1) {
            for v in s.basis() {
                ech.insert(v.clone());
            }
        }
        ech.into_subspace()
    }

    /// Levels that impose a condition: `0..min(a_i, a_j) - 1`.
    pub fn proper_levels(&self) -> usize {
        self.summands.len().saturating_sub(1)
    }

    /// Same summands, smallest first.
    pub fn opposite(&self) -> PairFiltration<T> {
        let mut summands = self.summands.clone();
        summands.reverse();
        PairFiltration { dims: self.dims, summands }
    }
}

/// Splits `C^{a_i} ⊗ C^{a_j}` into irreducibles over the rationals: the
/// kernel of `Y` in weight `l` is one line for `l < min(a_i, a_j)`, and
/// repeated `X` sweeps out its summand.
pub fn clebsch_gordan_filtration<T: Scalar>(ai: u32, aj: u32) -> PairFiltration<T> {
    assert!(ai >= 1 && aj >= 1, "dimensions must be positive");
    let amb = (ai * aj) as usize;
    let x = kron_sum(&raising::<T>(ai), &raising::<T>(aj));
    let y = kron_sum(&lowering::<T>(ai), &lowering::<T>(aj));
    let weight = |idx: usize| (idx / aj as usize + idx % aj as usize) as u32;
    let mut summands = Vec::new();
    for l in 0..ai.min(aj) {
        let cols: Vec<usize> = (0..amb).filter(|&i| weight(i) == l).collect();
        let kernel = kernel_basis(&y.select_columns(&cols));
        assert_eq!(kernel.nrows(), 1, "one lowest vector per weight");
        let mut v = vec![T::zero(); amb];
        for (&c, val) in cols.iter().zip(kernel.row(0)) {
            v[c] = val.clone();
        }
        let len = (ai + aj - 1 - 2 * l) as usize;
        let mut vecs = Vec::with_capacity(len);
        for _ in 0..len {
            let next = x.mul_vec(&v);
            vecs.push(v);
            v = next;
        }
        debug_assert!(v.iter().all(|c| c.is_zero()));
        summands.push(Subspace::span_of(amb, vecs));
    }
    PairFiltration { dims: (ai, aj), summands }
}

/// Homogeneous component of `F^c` at (polynomial degree, weight).
#[derive(Debug, Clone, PartialEq)]
pub struct FcComponent<T> {
    pub degree: u32,
    pub weight: u32,
    /// Coordinates: (exponent vector of `z`, index into the tensor basis).
    pub columns: Vec<(Vec<u32>, usize)>,
    pub space: Subspace<T>,
}

/// A tensor-valued polynomial: one coefficient polynomial per tensor basis
/// vector.
pub type FcElement<T> = Vec<MultiPoly<T>>;

/// `F^c` in polynomial degrees `0..=cap`.
#[derive(Debug, Clone)]
pub struct TruncatedFc<T> {
    pub a: Vec<u32>,
    pub cap: u32,
    pub tensor: Vec<Vec<u32>>,
    components: BTreeMap<(u32, u32), FcComponent<T>>,
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fill_monomials(0, d, &mut cur, &mut out);
    out
}

fn fill_monomials(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == cur.len() - 1 {
        cur[i] = left;
        out.push(cur.clone());
        return;
    }
    for x in (0..=left).rev() {
        cur[i] = x;
        fill_monomials(i + 1, left - x, cur, out);
    }
    cur[i] = 0;
}

/// Coefficient of `s^k t^{p+r-k}` in `z_i^p z_j^r` with
/// `z_i = (t+s)/2`, `z_j = (t-s)/2`.
fn st_coefficient<T: Scalar>(p: u32, r: u32, k: u32) -> T {
    let mut acc = T::zero();
    for u in 0..=k.min(p) {
        let v = k - u;
        if v > r {
            continue;
        }
        let mut term: T = binomial::<T>(p, u) * binomial::<T>(r, v);
        if v % 2 == 1 {
            term = -term;
        }
        acc += &term;
    }
    acc / T::from_int(2).powu(p + r)
}

fn check_multiset(a: &[u32]) -> Result<(), FuncError> {
    if a.len() > MAX_POINTS {
        return Err(FuncError::TooManyPoints(a.len()));
    }
    if a.contains(&0) {
        return Err(FuncError::ZeroPart);
    }
    Ok(())
}

/// Builds `F^c` up to degree `cap` with the standard filtrations.
pub fn fc_truncated<T: Scalar>(a: &[u32], cap: u32) -> Result<TruncatedFc<T>, FuncError> {
    fc_truncated_with(a, cap, false)
}

/// Same with the opposite filtrations (smallest summand first).
pub fn fc_truncated_opposite<T: Scalar>(a: &[u32], cap: u32) -> Result<TruncatedFc<T>, FuncError> {
    fc_truncated_with(a, cap, true)
}

fn fc_truncated_with<T: Scalar>(a: &[u32], cap: u32, opposite: bool) -> Result<TruncatedFc<T>, FuncError> {
    check_multiset(a)?;
    let n = a.len();
    let tensor = truncated_basis(a);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let f = clebsch_gordan_filtration::<T>(a[i], a[j]);
            let f = if opposite { f.opposite() } else { f };
            // annihilators of the proper levels, as sparse functionals
            let anns: Vec<Vec<Vec<T>>> = (0..f.proper_levels())
                .map(|k| f.level(k).annihilator().basis().to_vec())
                .collect();
            pairs.push((i, j, anns));
        }
    }
    let max_weight: u32 = a.iter().map(|x| x - 1).sum();
    let mut components = BTreeMap::new();
    for d in 0..=cap {
        let monos = monomials_of_degree(n, d);
        for w in 0..=max_weight {
            let columns: Vec<(Vec<u32>, usize)> = monos
                .iter()
                .flat_map(|mu| {
                    tensor
                        .iter()
                        .enumerate()
                        .filter(|(_, b)| b.iter().sum::<u32>() == w)
                        .map(move |(bi, _)| (mu.clone(), bi))
                })
                .collect();
            let space = conditions_kernel(a, &tensor, &pairs, &columns);
            components.insert((d, w), FcComponent { degree: d, weight: w, columns, space });
        }
    }
    Ok(TruncatedFc { a: a.to_vec(), cap, tensor, components })
}

type PairConditions<T> = (usize, usize, Vec<Vec<Vec<T>>>);

fn conditions_kernel<T: Scalar>(
    a: &[u32],
    tensor: &[Vec<u32>],
    pairs: &[PairConditions<T>],
    columns: &[(Vec<u32>, usize)],
) -> Subspace<T> {
    // row key: (pair, order k, functional, t-exponent, other exponents, other tensor indices)
    let mut rows: HashMap<(usize, usize, usize, u32, Vec<u32>, Vec<u32>), Vec<T>> = HashMap::new();
    for (col, (mu, bi)) in columns.iter().enumerate() {
        let b = &tensor[*bi];
        for (pi, (i, j, anns)) in pairs.iter().enumerate() {
            let (i, j) = (*i, *j);
            let (p, r) = (mu[i], mu[j]);
            let bij = (b[i] * a[j] + b[j]) as usize;
            let rest_mu: Vec<u32> = mu.iter().enumerate().filter(|&(x, _)| x != i && x != j).map(|(_, &e)| e).collect();
            let rest_b: Vec<u32> = b.iter().enumerate().filter(|&(x, _)| x != i && x != j).map(|(_, &e)| e).collect();
            for (k, funcs) in anns.iter().enumerate() {
                let k32 = k as u32;
                if k32 > p + r {
                    continue;
                }
                let kappa: T = st_coefficient(p, r, k32);
                if kappa.is_zero() {
                    continue;
                }
                for (fi, phi) in funcs.iter().enumerate() {
                    if phi[bij].is_zero() {
                        continue;
                    }
                    let key = (pi, k, fi, p + r - k32, rest_mu.clone(), rest_b.clone());
                    let row = rows.entry(key).or_insert_with(|| vec![T::zero(); columns.len()]);
                    row[col] += &(kappa.clone() * phi[bij].clone());
                }
            }
        }
    }
    let mut keys: Vec<_> = rows.keys().cloned().collect();
    keys.sort();
    let mut ech = RowEchelon::new(columns.len());
    for key in keys {
        if ech.is_full() {
            break;
        }
        ech.insert(rows.remove(&key).unwrap());
    }
    ech.into_subspace().annihilator()
}

impl<T: Scalar> TruncatedFc<T> {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn max_weight(&self) -> u32 {
        self.a.iter().map(|x| x - 1).sum()
    }

    pub fn component(&self, degree: u32, weight: u32) -> Option<&FcComponent<T>> {
        self.components.get(&(degree, weight))
    }

    /// `dim F^c_d` over all weights.
    pub fn dim(&self, degree: u32) -> usize {
        (0..=self.max_weight())
            .filter_map(|w| self.component(degree, w))
            .map(|c| c.space.dim())
            .sum()
    }

    /// `[dim F^c_0, ..., dim F^c_cap]`.
    pub fn hilbert(&self) -> Vec<usize> {
        (0..=self.cap).map(|d| self.dim(d)).collect()
    }

    /// Basis of `F^c_{d,w}` as tensor-valued polynomials.
    pub fn elements(&self, degree: u32, weight: u32) -> Vec<FcElement<T>> {
        let Some(comp) = self.component(degree, weight) else {
            return Vec::new();
        };
        comp.space
            .basis()
            .iter()
            .map(|row| {
                let mut f = vec![MultiPoly::zero(self.n()); self.tensor.len()];
                for ((mu, bi), c) in comp.columns.iter().zip(row) {
                    if !c.is_zero() {
                        f[*bi].add_term(mu.clone(), c.clone());
                    }
                }
                f
            })
            .collect()
    }

    /// Dimension of `M(T)` at weight `w`, using degrees up to `cap`.
    fn quotient_dim(&self, t: &[T], weight: u32, cap: u32) -> usize {
        let mut offset: HashMap<(Vec<u32>, usize), usize> = HashMap::new();
        for d in 0..=cap {
            for col in &self.components[&(d, weight)].columns {
                let next = offset.len();
                offset.insert(col.clone(), next);
            }
        }
        let total: usize = (0..=cap).map(|d| self.components[&(d, weight)].space.dim()).sum();
        let mut ech = RowEchelon::new(offset.len());
        for d in 0..cap {
            let comp = &self.components[&(d, weight)];
            for row in comp.space.basis() {
                for (i, ti) in t.iter().enumerate() {
                    let mut v = vec![T::zero(); offset.len()];
                    for ((mu, bi), c) in comp.columns.iter().zip(row) {
                        if c.is_zero() {
                            continue;
                        }
                        let mut up = mu.clone();
                        up[i] += 1;
                        v[offset[&(up, *bi)]] += c;
                        if !ti.is_zero() {
                            v[offset[&(mu.clone(), *bi)]] -= &(ti.clone() * c.clone());
                        }
                    }
                    ech.insert(v);
                }
            }
        }
        total - ech.rank()
    }

    /// `dim F^c_{d,w} - dim sum_i z_i F^c_{d-1,w}`.
    fn graded_quotient_dim(&self, degree: u32, weight: u32) -> usize {
        let comp = &self.components[&(degree, weight)];
        if degree == 0 {
            return comp.space.dim();
        }
        let index: HashMap<&(Vec<u32>, usize), usize> =
            comp.columns.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let lower = &self.components[&(degree - 1, weight)];
        let mut ech = RowEchelon::new(comp.columns.len());
        for row in lower.space.basis() {
            for i in 0..self.n() {
                let mut v = vec![T::zero(); comp.columns.len()];
                for ((mu, bi), c) in lower.columns.iter().zip(row) {
                    if !c.is_zero() {
                        let mut up = mu.clone();
                        up[i] += 1;
                        v[index[&(up, *bi)]] += c;
                    }
                }
                ech.insert(v);
            }
        }
        comp.space.dim() - ech.rank()
    }
}

/// Smallest degree cap at which `M(T)` is expected to be complete.
pub fn default_cap(a: &[u32]) -> u32 {
    let mut cap = 1;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            cap += a[i].min(a[j]) - 1;
        }
    }
    cap
}

/// Dimensions of `M(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MtCharacter {
    pub cap: u32,
    /// `weights[w] = dim M(T)_w`.
    pub weights: Vec<u64>,
    /// At `T = 0`: entry `(w, d)` is the dimension in weight `w` and
    /// polynomial degree `d`.
    pub graded: Option<CharTable>,
}

impl MtCharacter {
    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }
}

/// `M(T)` computed at degree cap `cap` and checked against `cap + 1`.
pub fn mt_character<T: Scalar>(a: &[u32], t: &[T], cap: u32) -> Result<MtCharacter, FuncError> {
    if a.len() != t.len() {
        return Err(FuncError::PointCount { expected: a.len(), got: t.len() });
    }
    let fc = fc_truncated::<T>(a, cap + 1)?;
    let at = |cap: u32| -> MtCharacter {
        let mw = fc.max_weight();
        if t.iter().all(|x| x.is_zero()) {
            let mut table = CharTable::new();
            for w in 0..=mw {
                for d in 0..=cap {
                    table.add(w, d, fc.graded_quotient_dim(d, w) as u64);
                }
            }
            let weights = (0..=mw).map(|w| (0..=cap).map(|d| table.get(w, d)).sum()).collect();
            MtCharacter { cap, weights, graded: Some(table) }
        } else {
            let weights = (0..=mw).map(|w| fc.quotient_dim(t, w, cap) as u64).collect();
            MtCharacter { cap, weights, graded: None }
        }
    };
    let here = at(cap);
    let next = at(cap + 1);
    if here.weights != next.weights || here.graded != next.graded {
        return Err(FuncError::NotStabilized { cap, next: cap + 1 });
    }
    Ok(here)
}

/// `dim F^c_d` predicted by freeness over the Clebsch–Gordan generators:
/// `sum_l dim(V_l) (d - l + 1)_+`, for two points.
pub fn free_hilbert_n2(a: [u32; 2], degree: u32) -> usize {
    (0..a[0].min(a[1]))
        .filter(|&l| l <= degree)
        .map(|l| ((a[0] + a[1] - 1 - 2 * l) * (degree - l + 1)) as usize)
        .sum()
}

/// `<v_c, v_{a-1-c}> = (-1)^c`, zero otherwise: the invariant form on `C^a`.
pub fn invariant_form<T: Scalar>(a: u32, c: u32, c2: u32) -> T {
    if c + c2 + 1 != a {
        T::zero()
    } else if c % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `chi(f ⊗ h) = sum_{b,b'} f_b h_{b'} prod_α <b_α, b'_α>`.
pub fn pairing_raw<T: Scalar>(a: &[u32], f: &FcElement<T>, h: &FcElement<T>) -> MultiPoly<T> {
    let tensor = truncated_basis(a);
    let index: HashMap<&Vec<u32>, usize> = tensor.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let nv = a.len();
    let mut acc = MultiPoly::zero(nv);
    for (bi, b) in tensor.iter().enumerate() {
        if f[bi].is_zero() {
            continue;
        }
        let dual: Vec<u32> = b.iter().zip(a).map(|(&c, &ai)| ai - 1 - c).collect();
        let sign: T = b.iter().zip(a).map(|(&c, &ai)| invariant_form::<T>(ai, c, ai - 1 - c)).fold(T::one(), |x, y| x * y);
        let hb = &h[index[&dual]];
        if hb.is_zero() {
            continue;
        }
        acc = &acc + &(&f[bi] * hb).scale(&sign);
    }
    acc
}

/// `chi(f ⊗ h) / (z_1 - z_2)^{min(a_1, a_2) - 1}`; errors if the division
/// is not exact.
pub fn pairing_n2<T: Scalar>(a: &[u32], f: &FcElement<T>, h: &FcElement<T>) -> Result<MultiPoly<T>, FuncError> {
    if a.len() != 2 {
        return Err(FuncError::NotPair);
    }
    let mut p = pairing_raw(a, f, h);
    for _ in 1..a[0].min(a[1]) {
        p = p.div_by_difference(0, 1)?;
    }
    Ok(p)
}

/// Outcome of the two-point pairing checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingReport {
    /// Pairs `(f, h)` of basis elements whose pairing divided exactly.
    pub pairs_checked: usize,
    pub gram_rank: usize,
    pub expected_rank: usize,
}

impl PairingReport {
    pub fn passed(&self) -> bool {
        self.gram_rank == self.expected_rank
    }
}

/// Pairs every basis element of `F^c` with every basis element of the
/// opposite-filtration space up to degree `cap`, divides exactly, and takes
/// the rank of the values at `t`.
pub fn pairing_check_n2<T: Scalar>(a: &[u32], t: &[T], cap: u32) -> Result<PairingReport, FuncError> {
    if a.len() != 2 {
        return Err(FuncError::NotPair);
    }
    if t.len() != 2 {
        return Err(FuncError::PointCount { expected: 2, got: t.len() });
    }
    let fc = fc_truncated::<T>(a, cap)?;
    let hat = fc_truncated_opposite::<T>(a, cap)?;
    let mw = fc.max_weight();
    let mut checked = 0;
    let mut rows: Vec<Vec<T>> = Vec::new();
    let all = |s: &TruncatedFc<T>| -> Vec<(u32, FcElement<T>)> {
        (0..=cap)
            .flat_map(|d| (0..=mw).flat_map(move |w| s.elements(d, w).into_iter().map(move |e| (w, e))))
            .collect()
    };
    let hs = all(&hat);
    for (w, f) in all(&fc) {
        let mut row = Vec::with_capacity(hs.len());
        for (w2, h) in &hs {
            // the form pairs weight w only with weight max - w
            if w + w2 != mw {
                row.push(T::zero());
                continue;
            }
            let q = pairing_n2(a, &f, h)?;
            checked += 1;
            row.push(q.eval(t));
        }
        rows.push(row);
    }
    let gram = Matrix::from_rows(hs.len(), rows);
    Ok(PairingReport {
        pairs_checked: checked,
        gram_rank: gram.rank(),
        expected_rank: a.iter().map(|&x| x as usize).product(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::fusion_character;
    use crate::qchar::multisets_up_to;
    use crate::Rat;
    use proptest::prelude::*;

    fn r(x: i64) -> Rat {
        Rat::from_int(x)
    }

    #[test]
    fn sl2_commutator() {
        for a in 1..6 {
            let (x, y) = (raising::<Rat>(a), lowering::<Rat>(a));
            let xy = x.mul(&y);
            let yx = y.mul(&x);
            for c in 0..a as usize {
                // [X, Y] v_c = (2c - a + 1) v_c
                assert_eq!(&xy[(c, c)] - &yx[(c, c)], r(2 * c as i64 - a as i64 + 1));
            }
        }
    }

    #[test]
    fn clebsch_gordan_examples() {
        let f = clebsch_gordan_filtration::<Rat>(2, 2);
        assert_eq!(f.summand_dims(), vec![3, 1]);
        // singlet: v_0 ⊗ v_1 - v_1 ⊗ v_0 up to scale
        let singlet = Subspace::span_of(4, vec![vec![r(0), r(1), r(-1), r(0)]]);
        assert_eq!(f.summands()[1], singlet);
        assert_eq!(clebsch_gordan_filtration::<Rat>(1, 4).summand_dims(), vec![4]);
        assert_eq!(clebsch_gordan_filtration::<Rat>(2, 3).summand_dims(), vec![4, 2]);
        let f = clebsch_gordan_filtration::<Rat>(3, 4);
        assert_eq!(f.level(f.proper_levels()).dim(), 12);
        for l in 1..3 {
            assert!(f.level(l).contains_subspace(&f.level(l - 1)));
        }
    }

    #[test]
    fn st_coefficients() {
        // z_i z_j = (t^2 - s^2) / 4
        assert_eq!(st_coefficient::<Rat>(1, 1, 0), Rat::new(1.into(), 4.into()));
        assert_eq!(st_coefficient::<Rat>(1, 1, 1), r(0));
        assert_eq!(st_coefficient::<Rat>(1, 1, 2), Rat::new((-1).into(), 4.into()));
        assert_eq!(st_coefficient::<Rat>(0, 1, 1), Rat::new((-1).into(), 2.into()));
    }

    #[test]
    fn fc_examples() {
        let fc = fc_truncated::<Rat>(&[2, 2], 2).unwrap();
        assert_eq!(fc.dim(0), 3);
        assert_eq!(fc.dim(1), 7);
        let fc = fc_truncated::<Rat>(&[3], 2).unwrap();
        assert_eq!(fc.hilbert(), vec![3, 3, 3]);
        assert!(fc_truncated::<Rat>(&[1, 1, 1, 1], 1).is_err());
    }

    #[test]
    fn module_property() {
        let fc = fc_truncated::<Rat>(&[2, 3, 2], 3).unwrap();
        for d in 0..3 {
            for w in 0..=fc.max_weight() {
                let upper = fc.component(d + 1, w).unwrap();
                let index: HashMap<_, _> = upper.columns.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
                let lower = fc.component(d, w).unwrap();
                for row in lower.space.basis() {
                    for i in 0..3 {
                        let mut v = vec![r(0); upper.columns.len()];
                        for ((mu, b), c) in lower.columns.iter().zip(row) {
                            let mut up = mu.clone();
                            up[i] += 1;
                            v[index[&(up, *b)]] += c;
                        }
                        assert!(upper.space.contains(&v));
                    }
                }
            }
        }
    }

    #[test]
    fn freeness_two_points() {
        for a in [[1, 1], [1, 3], [2, 2], [2, 3], [3, 3]] {
            let fc = fc_truncated::<Rat>(&a, 4).unwrap();
            for d in 0..=4 {
                assert_eq!(fc.dim(d), free_hilbert_n2(a, d), "{a:?} d={d}");
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let m = mt_character(&[2, 2], &[r(0), r(0)], 3).unwrap();
        let g = m.graded.unwrap();
        assert_eq!(g, CharTable::from_triples([(0, 0, 1), (1, 0, 1), (1, 1, 1), (2, 0, 1)]));
        assert_eq!((0..4).map(|d| (0..3).map(|w| g.get(w, d)).sum::<u64>()).collect::<Vec<_>>(), vec![3, 1, 0, 0]);
        assert_eq!(mt_character(&[2, 2], &[r(1), r(-1)], 3).unwrap().total(), 4);
        assert_eq!(mt_character(&[1, 1], &[r(5), r(2)], 2).unwrap().total(), 1);
        // too small a cap is detected
        assert!(mt_character(&[3, 3], &[r(1), r(2)], 1).is_err());
    }

    #[test]
    fn quotient_totals_and_grading() {
        let points: Vec<Vec<Rat>> = vec![vec![r(2)], vec![r(1), r(-2)], vec![r(1), r(3), r(-2)]];
        let coincident: Vec<Vec<Rat>> = vec![vec![r(0)], vec![r(3), r(3)], vec![r(1), r(1), r(-2)]];
        for a in multisets_up_to(6) {
            let n = a.len();
            if n == 0 || n > 3 {
                continue;
            }
            let mass: u64 = a.iter().map(|&x| x as u64).product();
            let cap = default_cap(&a);
            assert_eq!(mt_character(&a, &points[n - 1], cap).unwrap().total(), mass, "{a:?}");
            assert_eq!(mt_character(&a, &coincident[n - 1], cap).unwrap().total(), mass, "{a:?}");
            let zero = mt_character(&a, &vec![r(0); n], cap).unwrap();
            let fusion = fusion_character(&a, &points[n - 1]).unwrap();
            assert_eq!(zero.graded.unwrap(), fusion, "{a:?}");
        }
    }

    #[test]
    fn pairing_examples() {
        let one = vec![MultiPoly::constant(2, r(1))];
        let p = pairing_n2(&[1, 1], &one, &one).unwrap();
        assert_eq!(p, MultiPoly::constant(2, r(1)));
        let rep = pairing_check_n2(&[2, 2], &[r(1), r(-1)], 2).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(pairing_n2(&[2, 2, 2], &one, &one).is_err());
    }

    #[test]
    fn pairing_two_points() {
        for a in [[1, 2], [1, 3], [2, 2], [2, 3], [3, 3]] {
            let cap = default_cap(&a);
            let rep = pairing_check_n2(&a, &[r(1), r(-1)], cap).unwrap();
            assert!(rep.passed(), "{a:?}: {rep:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn summands_are_invariant(ai in 1u32..5, aj in 1u32..5) {
            let f = clebsch_gordan_filtration::<Rat>(ai, aj);
            let x = kron_sum(&raising::<Rat>(ai), &raising::<Rat>(aj));
            let y = kron_sum(&lowering::<Rat>(ai), &lowering::<Rat>(aj));
            let total: usize = f.summand_dims().iter().sum();
            prop_assert_eq!(total, (ai * aj) as usize);
            for s in f.summands() {
                for v in s.basis() {
                    prop_assert!(s.contains(&x.mul_vec(v)));
                    prop_assert!(s.contains(&y.mul_vec(v)));
                }
            }
        }
    }
}
