//! Finite-dimensional cyclic modules over `C[e_0, ..., e_{m-1}]`.
//!
//! A module is a list of commuting operator matrices (one per `e_i`) and a
//! cyclic vector `u`. The annihilator of `u` is read off degreewise: the
//! z-degree `k` part of `Ann(u)` is the space of linear relations among the
//! images `mu(E) u` of the monomials `mu` of z-degree `k`.
//!
//! This one mechanism realizes `I(Z)` from the truncated polynomial algebra,
//! the tensor-product description at coinciding points, and the fusion
//! product's filtration.

use std::collections::HashMap;

use crate::poly::{monomials_of_zdeg, Monomial};
use crate::qkernel::{left_kernel_basis, Matrix, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclicError {
    #[error("points must be pairwise distinct")]
    RepeatedPoint,
    #[error("expected {expected} points, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error("multiset entries must be positive")]
    ZeroPart,
}

#[derive(Clone)]
pub struct CyclicModule<T> {
    dim: usize,
    ops: Vec<Matrix<T>>,
    cyclic: Vec<T>,
}

impl<T: Scalar> std::fmt::Debug for CyclicModule<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CyclicModule")
            .field("dim", &self.dim)
            .field("ops", &self.ops)
            .field("cyclic", &self.cyclic)
            .finish()
    }
}

impl<T: Scalar> CyclicModule<T> {
    /// `ops[i]` acts on column vectors of length `dim`; they must commute.
    pub fn new(ops: Vec<Matrix<T>>, cyclic: Vec<T>) -> Self {
        let dim = cyclic.len();
        for op in &ops {
            assert_eq!((op.nrows(), op.ncols()), (dim, dim), "operator shape");
        }
        CyclicModule { dim, ops, cyclic }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators `e_i` acting.
    pub fn width(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[Matrix<T>] {
        &self.ops
    }

    pub fn cyclic_vector(&self) -> &[T] {
        &self.cyclic
    }

    /// `mu(E) u` for every monomial of z-degree `0..=kmax`, level by level,
    /// each level in [`monomials_of_zdeg`] order.
    pub fn images(&self, kmax: u32) -> Vec<Vec<(Monomial, Vec<T>)>> {
        let m = self.width();
        let mut levels: Vec<Vec<(Monomial, Vec<T>)>> = Vec::new();
        levels.push(vec![(Monomial::one(m), self.cyclic.clone())]);
        for k in 1..=kmax {
            let prev: HashMap<&Monomial, &Vec<T>> =
                levels[k as usize - 1].iter().map(|(mu, v)| (mu, v)).collect();
            let level: Vec<(Monomial, Vec<T>)> = monomials_of_zdeg(m, k)
                .into_iter()
                .map(|mu| {
                    let i = mu.smallest_var().expect("positive degree");
                    let rest = mu.without_var(i).unwrap();
                    let v = self.ops[i].mul_vec(prev[&rest]);
                    (mu, v)
                })
                .collect();
            levels.push(level);
        }
        levels
    }

    /// Z-degree `k` part of `Ann(u)`, in coordinates of
    /// `monomials_of_zdeg(width, k)`.
    pub fn annihilator_at(&self, level: &[(Monomial, Vec<T>)]) -> Subspace<T> {
        let rows: Vec<Vec<T>> = level.iter().map(|(_, v)| v.clone()).collect();
        let m = Matrix::from_rows(self.dim, rows);
        Subspace::from_matrix(&left_kernel_basis(&m))
    }

    /// Operators of `self ⊗ other` with `e_i` acting as `E_i ⊗ 1 + 1 ⊗ F_i`.
    pub fn tensor(&self, other: &CyclicModule<T>) -> CyclicModule<T> {
        assert_eq!(self.width(), other.width(), "tensor of modules over different rings");
        let ops = self
            .ops
            .iter()
            .zip(&other.ops)
            .map(|(a, b)| kron_sum(a, b))
            .collect();
        let mut u = Vec::with_capacity(self.dim * other.dim);
        for x in &self.cyclic {
            for y in &other.cyclic {
                let mut p = x.clone();
                p *= y;
                u.push(p);
            }
        }
        CyclicModule::new(ops, u)
    }
}

/// `a ⊗ 1 + 1 ⊗ b`.
fn kron_sum<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let (p, q) = (a.nrows(), b.nrows());
    let mut out = Matrix::zeros(p * q, p * q);
    for i in 0..p {
        for j in 0..p {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            for r in 0..q {
                out[(i * q + r, j * q + r)] += x;
            }
        }
    }
    for i in 0..p {
        for r in 0..q {
            for c in 0..q {
                let y = &b[(r, c)];
                if !y.is_zero() {
                    out[(i * q + r, i * q + c)] += y;
                }
            }
        }
    }
    out
}

/// Basis of `⊗ C[y_α]/(y_α^{a_α})`: exponent vectors `c` with `c_α < a_α`,
/// ordered lexicographically.
pub fn truncated_basis(a: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &ai in a {
        let mut next = Vec::with_capacity(out.len() * ai as usize);
        for c in &out {
            for x in 0..ai {
                let mut c2 = c.clone();
                c2.push(x);
                next.push(c2);
            }
        }
        out = next;
    }
    out
}

/// Multiplication by `sum_α z_α^i y_α` on `⊗ C[y_α]/(y_α^{a_α})`, for
/// `i = 0..width`, with cyclic vector `1`.
pub fn point_module<T: Scalar>(a: &[u32], z: &[T], width: usize) -> Result<CyclicModule<T>, CyclicError> {
    if a.len() != z.len() {
        return Err(CyclicError::PointCount { expected: a.len(), got: z.len() });
    }
    if a.contains(&0) {
        return Err(CyclicError::ZeroPart);
    }
    for i in 0..z.len() {
        for j in 0..i {
            if z[i] == z[j] {
                return Err(CyclicError::RepeatedPoint);
            }
        }
    }
    let basis = truncated_basis(a);
    let index: HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let dim = basis.len();
    let mut ops = Vec::with_capacity(width);
    for i in 0..width {
        let mut op = Matrix::zeros(dim, dim);
        for (col, c) in basis.iter().enumerate() {
            for (alpha, zalpha) in z.iter().enumerate() {
                if c[alpha] + 1 >= a[alpha] {
                    continue;
                }
                let mut c2 = c.clone();
                c2[alpha] += 1;
                op[(index[&c2], col)] += &zalpha.powu(i as u32);
            }
        }
        ops.push(op);
    }
    let mut u = vec![T::zero(); dim];
    u[0] = T::one();
    Ok(CyclicModule::new(ops, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn r(x: i64) -> Rat {
        Rat::from_int(x)
    }

    #[test]
    fn point_module_shapes() {
        let m = point_module(&[2, 3], &[r(1), r(-1)], 2).unwrap();
        assert_eq!(m.dim(), 6);
        // commuting operators
        let (a, b) = (&m.ops()[0], &m.ops()[1]);
        assert_eq!(a.mul(b), b.mul(a));
        assert!(point_module(&[1, 1], &[r(2), r(2)], 2).is_err());
        assert!(point_module(&[1], &[r(2), r(3)], 2).is_err());
    }

    #[test]
    fn annihilator_of_two_points() {
        // A=(2,2), Z=(1,-1): zdeg 2 relations are e0*e1 and e0^2 + e1^2
        let m = point_module(&[2, 2], &[r(1), r(-1)], 2).unwrap();
        let levels = m.images(2);
        assert_eq!(m.annihilator_at(&levels[1]).dim(), 0);
        let ann = m.annihilator_at(&levels[2]);
        // monomials_of_zdeg(2, 2) = [e0^2, e0e1, e1^2]
        let expect = Subspace::span_of(3, vec![vec![r(0), r(1), r(0)], vec![r(1), r(0), r(1)]]);
        assert_eq!(ann, expect);
    }

    #[test]
    fn tensor_dimension_and_commutation() {
        let a = point_module(&[2], &[r(1)], 3).unwrap();
        let b = point_module(&[3], &[r(2)], 3).unwrap();
        let t = a.tensor(&b);
        assert_eq!(t.dim(), 6);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t.ops()[i].mul(&t.ops()[j]), t.ops()[j].mul(&t.ops()[i]));
            }
        }
        // tensor of the one-point modules is the two-point module
        let direct = point_module(&[2, 3], &[r(1), r(2)], 3).unwrap();
        for k in 0..=4 {
            let lt = t.images(k);
            let ld = direct.images(k);
            assert_eq!(
                t.annihilator_at(&lt[k as usize]),
                direct.annihilator_at(&ld[k as usize])
            );
        }
    }
}
