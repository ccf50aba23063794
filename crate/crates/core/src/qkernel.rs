//! Exact dense linear algebra: row reduction, rank, kernels, subspace
//! membership and intersection.
//!
//! Pivoting is deterministic (first nonzero column, rows in insertion order),
//! so every reduced matrix is reproducible bit for bit. Elimination works on
//! dense rows but skips zero entries, which keeps the sparse constraint
//! systems built elsewhere in the crate cheap.

use std::fmt;

use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Convenience constructor from small integers, used heavily in tests.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn push_row(&mut self, row: Vec<T>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let mut p = a.clone();
                        p *= b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        let cols = self.cols;
        if cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        let mut out = Vec::with_capacity(self.rows);
        let mut it = self.data.into_iter();
        for _ in 0..self.rows {
            out.push(it.by_ref().take(cols).collect());
        }
        out
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<T> {
        Matrix::from_rows(
            cols.len(),
            self.row_iter()
                .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        let mut ech = RowEchelon::new(self.cols);
        for r in self.row_iter() {
            ech.insert(r.to_vec());
        }
        ech.rank()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in self.data.chunks(self.cols.max(1)).take(self.rows) {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            let mut p = x.clone();
            p *= y;
            acc += &p;
        }
    }
    acc
}

/// `row -= factor * other`, skipping zero entries of `other`.
fn axpy_sub<T: Scalar>(row: &mut [T], factor: &T, other: &[T], from: usize) {
    for j in from..row.len() {
        let o = &other[j];
        if !o.is_zero() {
            let mut p = factor.clone();
            p *= o;
            row[j] -= &p;
        }
    }
}

/// Incremental row echelon form.
///
/// Rows are inserted one at a time and reduced against the pivots already
/// present; each stored row has a leading 1 at its pivot column. Call
/// [`RowEchelon::into_subspace`] to back-substitute into reduced form.
#[derive(Clone, Debug)]
pub struct RowEchelon<T> {
    cols: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl<T: Scalar> RowEchelon<T> {
    pub fn new(cols: usize) -> Self {
        RowEchelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `v` against the stored pivots (forward elimination only).
    /// The result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: Vec<T>) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        for c in 0..self.cols {
            if v[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let f = v[c].clone();
                axpy_sub(&mut v, &f, &self.rows[r], c);
            }
        }
        v
    }

    /// Inserts a row; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: Vec<T>) -> bool {
        if self.is_full() {
            return false;
        }
        let mut v = v;
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut lead = None;
        for c in 0..self.cols {
            if v[c].is_zero() {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let f = v[c].clone();
                    axpy_sub(&mut v, &f, &self.rows[r], c);
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        let Some(c) = lead else {
            return false;
        };
        let inv = T::one() / v[c].clone();
        for x in v[c..].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // entries to the right of the new pivot may still hit existing pivot
        // columns; that is fine for echelon form and cleaned up on finish
        self.pivot_row[c] = Some(self.rows.len());
        self.pivots.push(c);
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Back-substitutes into reduced row echelon form, rows sorted by pivot.
    pub fn into_subspace(self) -> Subspace<T> {
        let cols = self.cols;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        let mut rows: Vec<Vec<T>> = Vec::with_capacity(order.len());
        let mut pivots = Vec::with_capacity(order.len());
        let mut slots: Vec<Option<Vec<T>>> = self.rows.into_iter().map(Some).collect();
        for &r in &order {
            rows.push(slots[r].take().unwrap());
            pivots.push(self.pivots[r]);
        }
        for i in (0..rows.len()).rev() {
            let pc = pivots[i];
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                if !row[pc].is_zero() {
                    let f = row[pc].clone();
                    axpy_sub(row, &f, pivot_row, pc);
                }
            }
        }
        Subspace { cols, rows, pivots }
    }
}

/// A subspace of `T^cols` stored as the rows of its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    cols: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(cols: usize) -> Self {
        Subspace {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(cols: usize) -> Self {
        let m = Matrix::<T>::identity(cols);
        Subspace {
            cols,
            rows: m.into_rows(),
            pivots: (0..cols).collect(),
        }
    }

    pub fn span_of<I: IntoIterator<Item = Vec<T>>>(cols: usize, vectors: I) -> Self {
        let mut ech = RowEchelon::new(cols);
        for v in vectors {
            ech.insert(v);
        }
        ech.into_subspace()
    }

    pub fn from_matrix(m: &Matrix<T>) -> Self {
        Self::span_of(m.ncols(), m.row_iter().map(|r| r.to_vec()))
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.cols
    }

    pub fn codim(&self) -> usize {
        self.cols - self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::from_rows(self.cols, self.rows.clone())
    }

    /// Residue of `v` modulo the subspace, supported on non-pivot columns.
    pub fn reduce(&self, mut v: Vec<T>) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                axpy_sub(&mut v, &f, row, 0);
            }
        }
        v
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace<T>) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace<T>) -> Subspace<T> {
        assert_eq!(self.cols, other.cols);
        Self::span_of(
            self.cols,
            self.rows.iter().chain(other.rows.iter()).cloned(),
        )
    }

    pub fn intersect(&self, other: &Subspace<T>) -> Subspace<T> {
        Subspace::from_matrix(&subspace_intersection(
            &self.to_matrix(),
            &other.to_matrix(),
        ))
    }

    /// Non-pivot columns: coordinates of the standard complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the orthogonal complement under the standard dot product.
    pub fn annihilator(&self) -> Subspace<T> {
        Subspace::from_matrix(&kernel_from_reduced(self))
    }
}

/// Result of [`rref`].
#[derive(Clone, PartialEq)]
pub struct Rref<T> {
    /// Same shape as the input; zero rows at the bottom.
    pub matrix: Matrix<T>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl<T: fmt::Display> fmt::Debug for Rref<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rref")
            .field("matrix", &self.matrix)
            .field("rank", &self.rank)
            .field("pivot_cols", &self.pivot_cols)
            .finish()
    }
}

/// Reduced row echelon form with deterministic pivoting.
pub fn rref<T: Scalar>(m: &Matrix<T>) -> Rref<T> {
    let sub = Subspace::from_matrix(m);
    let rank = sub.dim();
    let pivot_cols = sub.pivots.clone();
    let mut matrix = Matrix::zeros(m.nrows(), m.ncols());
    for (i, r) in sub.rows.into_iter().enumerate() {
        for (j, x) in r.into_iter().enumerate() {
            matrix[(i, j)] = x;
        }
    }
    Rref {
        matrix,
        rank,
        pivot_cols,
    }
}

fn kernel_from_reduced<T: Scalar>(sub: &Subspace<T>) -> Matrix<T> {
    let free = sub.free_columns();
    let mut out = Matrix::zeros(0, sub.cols);
    for &f in &free {
        let mut v = vec![T::zero(); sub.cols];
        v[f] = T::one();
        for (row, &pc) in sub.rows.iter().zip(&sub.pivots) {
            if !row[f].is_zero() {
                v[pc] = -row[f].clone();
            }
        }
        out.push_row(v);
    }
    out
}

/// Basis of the right null space `{v : m v^T = 0}`, one vector per row.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    kernel_from_reduced(&Subspace::from_matrix(m))
}

/// Basis of `{x : x^T m = 0}`, i.e. linear relations among the rows of `m`.
pub fn left_kernel_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    kernel_basis(&m.transpose())
}

/// Rows spanning `rowspan(a) ∩ rowspan(b)`, reduced.
///
/// Uses `rowspan(a) = ker(ker(a))` so the intersection is the kernel of the
/// stacked kernels.
pub fn subspace_intersection<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    assert_eq!(a.ncols(), b.ncols(), "column count mismatch");
    let ka = kernel_basis(a);
    let kb = kernel_basis(b);
    let both = ka.stack(&kb);
    let inter = kernel_basis(&both);
    Subspace::from_matrix(&inter).to_matrix()
}

/// Membership test by solving `x^T reduced = v`.
pub fn in_row_space<T: Scalar>(m: &Matrix<T>, v: &[T]) -> bool {
    Subspace::from_matrix(m).contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_ints(rows)
    }

    #[test]
    fn rref_proportional_rows() {
        let r = rref(&q(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(r.matrix, q(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_zero_and_identity() {
        assert_eq!(rref(&q(&[&[0]])).rank, 0);
        let id = q(&[&[1, 0], &[0, 1]]);
        let r = rref(&id);
        assert_eq!(r.rank, 2);
        assert_eq!(r.matrix, id);
    }

    #[test]
    fn rref_over_f64() {
        let m: Matrix<f64> = Matrix::from_ints(&[&[2, 4], &[1, 3]]);
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.matrix, Matrix::identity(2));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&q(&[&[1, 1]]));
        assert_eq!(k.nrows(), 1);
        assert_eq!(k.row(0)[0].clone() + k.row(0)[1].clone(), Rat::from_int(0));
        assert_eq!(kernel_basis(&Matrix::<Rat>::identity(3)).nrows(), 0);

        let m = q(&[&[1, 2, 3]]);
        let k = kernel_basis(&m);
        assert_eq!(k.nrows(), 2);
        assert_eq!(k.rank(), 2);
        for r in k.row_iter() {
            assert!(m.mul_vec(r).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn intersection_examples() {
        let id = q(&[&[1, 0], &[0, 1]]);
        assert_eq!(subspace_intersection(&id, &id).nrows(), 2);
        let x = q(&[&[1, 0]]);
        let y = q(&[&[0, 1]]);
        assert_eq!(subspace_intersection(&x, &y).nrows(), 0);
        let d = q(&[&[1, 1]]);
        let i = subspace_intersection(&id, &d);
        assert_eq!(i, q(&[&[1, 1]]));
    }

    #[test]
    fn incremental_echelon_matches_batch() {
        let m = q(&[&[0, 2, 4, 1], &[1, 1, 1, 1], &[1, 3, 5, 2], &[3, 0, 1, 0]]);
        let mut e = RowEchelon::new(4);
        assert!(e.insert(m.row(0).to_vec()));
        assert!(e.insert(m.row(1).to_vec()));
        assert!(!e.insert(m.row(2).to_vec()));
        assert!(e.insert(m.row(3).to_vec()));
        let s = e.into_subspace();
        assert_eq!(s.to_matrix(), Subspace::from_matrix(&m).to_matrix());
    }

    fn matrix_with_cols(c: usize) -> impl Strategy<Value = Matrix<Rat>> {
        (1usize..5).prop_flat_map(move |r| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                Matrix::from_rows(
                    c,
                    v.chunks(c)
                        .map(|ch| ch.iter().map(|&x| Rat::from_int(x)).collect())
                        .collect(),
                )
            })
        })
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<Rat>> {
        (1usize..6).prop_flat_map(matrix_with_cols)
    }

    fn matrix_pair() -> impl Strategy<Value = (Matrix<Rat>, Matrix<Rat>)> {
        (1usize..6).prop_flat_map(|c| (matrix_with_cols(c), matrix_with_cols(c)))
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let once = rref(&m);
            let twice = rref(&once.matrix);
            prop_assert_eq!(&once, &twice);
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            let rank = rref(&m).rank;
            let k = kernel_basis(&m);
            prop_assert_eq!(rank + k.nrows(), m.ncols());
            for r in k.row_iter() {
                prop_assert!(m.mul_vec(r).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn membership_agrees_with_rank(m in small_matrix(), seed in proptest::collection::vec(-2i64..3, 6)) {
            let v: Vec<Rat> = seed.iter().take(m.ncols()).map(|&x| Rat::from_int(x)).collect();
            prop_assume!(v.len() == m.ncols());
            let mut stacked = m.clone();
            stacked.push_row(v.clone());
            prop_assert_eq!(in_row_space(&m, &v), stacked.rank() == m.rank());
        }

        #[test]
        fn intersection_dimension_formula((a, b) in matrix_pair()) {
            let i = subspace_intersection(&a, &b);
            prop_assert_eq!(i.nrows(), a.rank() + b.rank() - a.stack(&b).rank());
            let sa = Subspace::from_matrix(&a);
            let sb = Subspace::from_matrix(&b);
            for r in i.row_iter() {
                prop_assert!(sa.contains(r) && sb.contains(r));
            }
        }
    }
}
