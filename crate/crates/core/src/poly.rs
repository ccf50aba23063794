//! Sparse polynomials.
//!
//! [`EPoly`] lives in `C[e_0, ..., e_{m-1}]` with the bigrading
//! `deg_z e_i = 1`, `deg_q e_i = i`. [`MultiPoly`] is a plain multivariate
//! polynomial used for auxiliary variables (evaluation points, the dual
//! model's `z_1..z_k`, the functional model's coordinates).
//!
//! Monomials in the `e` ring are ordered by z-degree, then q-degree, then
//! reverse lexicographically on exponent vectors, so inside one bidegree the
//! monomial with the largest power of `e_0` comes first. This order fixes the
//! column order of every graded component in the crate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("ambient width mismatch: {0} vs {1}")]
    WidthMismatch(usize, usize),
    #[error("cannot narrow a polynomial of width {from} to width {to}")]
    Narrowing { from: usize, to: usize },
    #[error("term {0} is not in the given monomial basis")]
    OutsideBasis(String),
    #[error("malformed polynomial text: {0}")]
    Parse(String),
    #[error("division by ({0}) left a nonzero remainder")]
    NotDivisible(String),
}

/// `(z-degree, q-degree)` of a bihomogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub zdeg: u32,
    pub qdeg: u32,
}

impl Bidegree {
    pub const fn new(zdeg: u32, qdeg: u32) -> Self {
        Bidegree { zdeg, qdeg }
    }

    /// `self - other`, if it stays in the nonnegative quadrant.
    pub fn checked_sub(self, other: Bidegree) -> Option<Bidegree> {
        Some(Bidegree {
            zdeg: self.zdeg.checked_sub(other.zdeg)?,
            qdeg: self.qdeg.checked_sub(other.qdeg)?,
        })
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.zdeg, self.qdeg)
    }
}

/// Exponent vector of a monomial in `e_0..e_{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial(vec![0; width])
    }

    pub fn var(width: usize, i: usize) -> Self {
        let mut v = vec![0; width];
        v[i] = 1;
        Monomial(v)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn zdeg(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn qdeg(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &c)| i as u32 * c).sum()
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.zdeg(), self.qdeg())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.width(), other.width());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Divides by `e_i`, if possible.
    pub fn without_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        Some(Monomial(v))
    }

    pub fn smallest_var(&self) -> Option<usize> {
        self.0.iter().position(|&c| c > 0)
    }

    pub fn widen(&self, width: usize) -> Monomial {
        let mut v = self.0.clone();
        v.resize(width, 0);
        Monomial(v)
    }

    /// The variables as a sorted list of indices with repetition.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat(i).take(c as usize));
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.zdeg()
            .cmp(&other.zdeg())
            .then_with(|| self.qdeg().cmp(&other.qdeg()))
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            write!(f, "e_{i}^{c}")?;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of `C[e_0..e_{m-1}]` of bidegree `d`, in canonical order.
///
/// These are the multisets `i_1 <= ... <= i_k` from `{0..m-1}` with
/// `sum i_j = s`; the enumeration is lexicographically decreasing on
/// exponent vectors, which is ascending in the [`Monomial`] order.
pub fn monomial_basis(m: usize, d: Bidegree) -> Vec<Monomial> {
    let mut out = Vec::new();
    if m == 0 {
        if d.zdeg == 0 && d.qdeg == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    let mut exps = vec![0u32; m];
    fill_basis(0, d.zdeg, d.qdeg, &mut exps, &mut out);
    out
}

fn fill_basis(i: usize, k: u32, s: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    let m = exps.len();
    if i == m - 1 {
        // all remaining factors must be e_{m-1}
        if s == k * i as u32 {
            exps[i] = k;
            out.push(Monomial(exps.clone()));
            exps[i] = 0;
        }
        return;
    }
    // remaining factors use indices >= i+1 ... m-1 after choosing c copies of e_i
    for c in (0..=k).rev() {
        let used = c * i as u32;
        if used > s {
            continue;
        }
        let rest_k = k - c;
        let rest_s = s - used;
        let lo = rest_k * (i as u32 + 1);
        let hi = rest_k * (m as u32 - 1);
        if rest_s < lo || rest_s > hi {
            continue;
        }
        exps[i] = c;
        fill_basis(i + 1, rest_k, rest_s, exps, out);
        exps[i] = 0;
    }
}

/// All monomials of z-degree `k`, sorted by q-degree (canonical order).
pub fn monomials_of_zdeg(m: usize, k: u32) -> Vec<Monomial> {
    let smax = k * (m.max(1) as u32 - 1);
    (0..=smax)
        .flat_map(|s| monomial_basis(m, Bidegree::new(k, s)))
        .collect()
}

/// Polynomial in `e_0..e_{width-1}` with exact coefficients.
#[derive(Clone, PartialEq)]
pub struct EPoly<T> {
    width: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> EPoly<T> {
    pub fn zero(width: usize) -> Self {
        EPoly {
            width,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(width: usize, c: T) -> Self {
        Self::monomial(Monomial::one(width), c)
    }

    pub fn one(width: usize) -> Self {
        Self::constant(width, T::one())
    }

    /// The generator `e_i`.
    pub fn var(width: usize, i: usize) -> Self {
        assert!(i < width, "e_{i} outside width {width}");
        Self::monomial(Monomial::var(width, i), T::one())
    }

    pub fn monomial(m: Monomial, c: T) -> Self {
        let width = m.width();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        EPoly { width, terms }
    }

    /// `sum_i coeffs[i] e_i`.
    pub fn linear(coeffs: &[T]) -> Self {
        let width = coeffs.len();
        let mut p = Self::zero(width);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(width, i), c.clone());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, T)>>(width: usize, terms: I) -> Self {
        let mut p = Self::zero(width);
        for (m, c) in terms {
            assert_eq!(m.width(), width, "monomial width mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.width);
        }
        EPoly {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let mut x = v.clone();
                    x *= c;
                    (m.clone(), x)
                })
                .collect(),
        }
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        EPoly {
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_width(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_width(other)?;
        let mut out = Self::zero(self.width);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut c = ca.clone();
                c *= cb;
                out.add_term(ma.mul(mb), c);
            }
        }
        Ok(out)
    }

    fn check_width(&self, other: &Self) -> Result<(), PolyError> {
        if self.width != other.width {
            return Err(PolyError::WidthMismatch(self.width, other.width));
        }
        Ok(())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.width);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Set of bidegrees carrying a nonzero term.
    pub fn bidegrees(&self) -> BTreeSet<Bidegree> {
        self.terms.keys().map(Monomial::bidegree).collect()
    }

    /// The bidegree, when the polynomial is nonzero and bihomogeneous.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let degs = self.bidegrees();
        if degs.len() == 1 {
            degs.into_iter().next()
        } else {
            None
        }
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.bidegree().is_some()
    }

    /// The z-degree, when the polynomial is nonzero and z-homogeneous.
    pub fn zdeg(&self) -> Option<u32> {
        let degs: BTreeSet<u32> = self.terms.keys().map(Monomial::zdeg).collect();
        if degs.len() == 1 {
            degs.into_iter().next()
        } else {
            None
        }
    }

    pub fn bihomogeneous_component(&self, d: Bidegree) -> Self {
        EPoly {
            width: self.width,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Embeds `C[e_0..e_{w-1}]` into `C[e_0..e_{width-1}]`.
    pub fn widen(&self, width: usize) -> Result<Self, PolyError> {
        if width < self.width {
            return Err(PolyError::Narrowing {
                from: self.width,
                to: width,
            });
        }
        Ok(EPoly {
            width,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.widen(width), c.clone()))
                .collect(),
        })
    }

    /// Applies the ring homomorphism `e_i -> images[i]`.
    pub fn substitute(&self, images: &[EPoly<T>]) -> Result<Self, PolyError> {
        if images.len() != self.width {
            return Err(PolyError::WidthMismatch(self.width, images.len()));
        }
        let target = images.first().map_or(self.width, |p| p.width);
        for p in images {
            if p.width != target {
                return Err(PolyError::WidthMismatch(target, p.width));
            }
        }
        let mut powers: Vec<Vec<EPoly<T>>> = images.iter().map(|p| vec![EPoly::one(p.width), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = EPoly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Coordinates in an ordered monomial basis.
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Result<Vec<T>, PolyError> {
        let mut out = vec![T::zero(); basis.len()];
        let index: std::collections::HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        for (m, c) in &self.terms {
            match index.get(m) {
                Some(&i) => out[i] = c.clone(),
                None => return Err(PolyError::OutsideBasis(m.to_string())),
            }
        }
        Ok(out)
    }

    /// Inverse of [`EPoly::coefficient_vector`].
    pub fn from_coefficients(width: usize, basis: &[Monomial], coeffs: &[T]) -> Self {
        Self::from_terms(
            width,
            basis
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

impl<T: Scalar> Add for &EPoly<T> {
    type Output = EPoly<T>;
    fn add(self, rhs: &EPoly<T>) -> EPoly<T> {
        self.try_add(rhs).expect("EPoly width mismatch")
    }
}

impl<T: Scalar> Sub for &EPoly<T> {
    type Output = EPoly<T>;
    fn sub(self, rhs: &EPoly<T>) -> EPoly<T> {
        self.try_add(&-rhs).expect("EPoly width mismatch")
    }
}

impl<T: Scalar> Neg for &EPoly<T> {
    type Output = EPoly<T>;
    fn neg(self) -> EPoly<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar> Mul for &EPoly<T> {
    type Output = EPoly<T>;
    fn mul(self, rhs: &EPoly<T>) -> EPoly<T> {
        self.try_mul(rhs).expect("EPoly width mismatch")
    }
}

impl<T: Scalar> fmt::Display for EPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.zdeg() == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} * {m}")?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for EPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EPoly[{}]({})", self.width, self)
    }
}

impl<T: Scalar + FromStr> EPoly<T> {
    /// Parses the canonical text form produced by `Display`.
    pub fn parse(width: usize, text: &str) -> Result<Self, PolyError> {
        let err = || PolyError::Parse(text.to_string());
        let text = text.trim();
        let mut p = Self::zero(width);
        if text == "0" {
            return Ok(p);
        }
        for term in text.split(" + ") {
            let mut parts = term.split(" * ");
            let coef: T = parts.next().ok_or_else(err)?.trim().parse().map_err(|_| err())?;
            let mut exps = vec![0u32; width];
            for factor in parts {
                let rest = factor.trim().strip_prefix("e_").ok_or_else(err)?;
                let (i, a) = rest.split_once('^').ok_or_else(err)?;
                let i: usize = i.parse().map_err(|_| err())?;
                let a: u32 = a.parse().map_err(|_| err())?;
                if i >= width {
                    return Err(err());
                }
                exps[i] += a;
            }
            p.add_term(Monomial(exps), coef);
        }
        Ok(p)
    }
}

/// Plain polynomial in `nvars` commuting variables (printed `z_1, z_2, ...`).
#[derive(Clone, PartialEq)]
pub struct MultiPoly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, T::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, T::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, T)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> T {
        self.terms.get(e).cloned().unwrap_or_else(T::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: T) {
        assert_eq!(e.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, v)| {
                let mut x = v.clone();
                x *= c;
                (e.clone(), x)
            }),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars);
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= &x.powu(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Ring homomorphism `z_i -> images[i]`.
    pub fn substitute(&self, images: &[MultiPoly<T>]) -> MultiPoly<T> {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = &t * &img.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Sets the first `i` variables equal to a single fresh variable, which
    /// becomes variable 0 of the result; the remaining variables keep their
    /// relative order.
    pub fn merge_leading(&self, i: usize) -> MultiPoly<T> {
        assert!(i >= 1 && i <= self.nvars);
        let nv = self.nvars - i + 1;
        MultiPoly::from_terms(
            nv,
            self.terms.iter().map(|(e, c)| {
                let mut ne = Vec::with_capacity(nv);
                ne.push(e[..i].iter().sum());
                ne.extend_from_slice(&e[i..]);
                (ne, c.clone())
            }),
        )
    }

    /// Exact quotient by `(z_i - z_j)`; errors on a nonzero remainder.
    pub fn div_by_difference(&self, i: usize, j: usize) -> Result<MultiPoly<T>, PolyError> {
        assert!(i != j && i < self.nvars && j < self.nvars);
        // view as a polynomial in z_i with coefficients in the other variables
        // and run synthetic division by (z_i - z_j)
        let mut by_power: BTreeMap<u32, MultiPoly<T>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[i];
            rest[i] = 0;
            by_power
                .entry(k)
                .or_insert_with(|| MultiPoly::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        let Some(&deg) = by_power.keys().next_back() else {
            return Ok(MultiPoly::zero(self.nvars));
        };
        let zj = MultiPoly::var(self.nvars, j);
        let mut quotient = MultiPoly::zero(self.nvars);
        let mut carry = MultiPoly::zero(self.nvars);
        for k in (0..=deg).rev() {
            let ck = by_power.remove(&k).unwrap_or_else(|| MultiPoly::zero(self.nvars));
            let cur = &ck + &carry;
            if k == 0 {
                if !cur.is_zero() {
                    return Err(PolyError::NotDivisible(format!("z_{} - z_{}", i + 1, j + 1)));
                }
                break;
            }
            // quotient coefficient of z_i^{k-1}
            for (e, c) in cur.terms() {
                let mut ne = e.clone();
                ne[i] += k - 1;
                quotient.add_term(ne, c.clone());
            }
            carry = &cur * &zj;
        }
        Ok(quotient)
    }
}

impl<T: Scalar> Add for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn add(self, rhs: &MultiPoly<T>) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn sub(self, rhs: &MultiPoly<T>) -> MultiPoly<T> {
        self + &rhs.scale(&-T::one())
    }
}

impl<T: Scalar> Mul for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn mul(self, rhs: &MultiPoly<T>) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let mut c = ca.clone();
                c *= cb;
                out.add_term(e, c);
            }
        }
        out
    }
}

impl<T: Scalar> fmt::Display for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    write!(f, " * z_{}^{}", v + 1, k)?;
                }
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qchar::{qbinomial, QPoly};
    use crate::Rat;
    use proptest::prelude::*;

    fn e(w: usize, i: usize) -> EPoly<Rat> {
        EPoly::var(w, i)
    }

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    #[test]
    fn products_and_bidegrees() {
        let p = &e(2, 0) * &e(2, 1);
        assert_eq!(p.bidegree(), Some(Bidegree::new(2, 1)));
        let s = &e(2, 0) + &e(2, 1);
        let sq = s.pow(2);
        assert_eq!(sq.to_string(), "1 * e_0^2 + 2 * e_0^1 * e_1^1 + 1 * e_1^2");
        assert_eq!(&EPoly::one(2) * &sq, sq);
        assert!(e(2, 0).try_mul(&e(3, 0)).is_err());
    }

    #[test]
    fn component_extraction() {
        let p = &e(2, 0) + &e(2, 1).pow(2);
        assert_eq!(p.bihomogeneous_component(Bidegree::new(2, 2)), e(2, 1).pow(2));
        assert!(e(2, 0).bihomogeneous_component(Bidegree::new(1, 1)).is_zero());
        // coefficient of z^2 in (e_0 + e_1 z)^2 is e_1^2
        let ez2 = (&e(2, 0) + &e(2, 1)).pow(2);
        assert_eq!(ez2.bihomogeneous_component(Bidegree::new(2, 2)), e(2, 1).pow(2));
    }

    #[test]
    fn basis_enumeration() {
        let b = monomial_basis(2, Bidegree::new(2, 1));
        assert_eq!(b, vec![Monomial(vec![1, 1])]);
        assert_eq!(monomial_basis(2, Bidegree::new(2, 2)), vec![Monomial(vec![0, 2])]);
        let b = monomial_basis(3, Bidegree::new(2, 2));
        assert_eq!(b, vec![Monomial(vec![1, 0, 1]), Monomial(vec![0, 2, 0])]);
        assert_eq!(monomial_basis(3, Bidegree::new(0, 0)).len(), 1);
        assert!(monomial_basis(3, Bidegree::new(0, 1)).is_empty());
    }

    #[test]
    fn coefficient_vectors() {
        let basis = monomial_basis(3, Bidegree::new(2, 2));
        let p = &(&e(3, 0) * &e(3, 2)).scale(&r(2)) - &e(3, 1).pow(2);
        assert_eq!(p.coefficient_vector(&basis).unwrap(), vec![r(2), r(-1)]);
        assert_eq!(EPoly::<Rat>::zero(3).coefficient_vector(&basis).unwrap(), vec![r(0), r(0)]);
        assert_eq!(e(3, 1).pow(2).coefficient_vector(&basis).unwrap(), vec![r(0), r(1)]);
        assert!(e(3, 0).coefficient_vector(&basis).is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = &(&e(3, 0) * &e(3, 2)).scale(&Rat::new(3.into(), 2.into())) - &e(3, 1).pow(2);
        let q = &p + &EPoly::constant(3, r(-4));
        let text = q.to_string();
        assert_eq!(text, "-4 + 3/2 * e_0^1 * e_2^1 + -1 * e_1^2");
        assert_eq!(EPoly::<Rat>::parse(3, &text).unwrap(), q);
        assert!(EPoly::<Rat>::parse(2, "1 * e_5^1").is_err());
    }

    #[test]
    fn multipoly_merge_and_division() {
        let z1 = MultiPoly::<Rat>::var(2, 0);
        let z2 = MultiPoly::<Rat>::var(2, 1);
        assert_eq!((&z1 + &z2).merge_leading(2).to_string(), "2 * z_1^1");
        assert_eq!((&z1 * &z2).merge_leading(2).to_string(), "1 * z_1^2");
        let z3 = MultiPoly::<Rat>::var(3, 2);
        let f = &MultiPoly::<Rat>::var(3, 0) + &z3;
        assert_eq!(f.merge_leading(1), f);
        let d = &z1 - &z2;
        let p = &d.pow(3) * &(&z1 + &MultiPoly::constant(2, r(5)));
        let q = p.div_by_difference(0, 1).unwrap();
        assert_eq!(q, &d.pow(2) * &(&z1 + &MultiPoly::constant(2, r(5))));
        assert!(z1.div_by_difference(0, 1).is_err());
    }

    fn arb_epoly() -> impl Strategy<Value = EPoly<Rat>> {
        proptest::collection::vec((0u32..3, 0u32..3, 0u32..2, -3i64..4), 0..4).prop_map(|ts| {
            EPoly::from_terms(
                3,
                ts.into_iter()
                    .map(|(a, b, c, k)| (Monomial(vec![a, b, c]), Rat::from_int(k))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_epoly(), b in arb_epoly(), c in arb_epoly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn components_reassemble_and_respect_products(a in arb_epoly(), b in arb_epoly()) {
            let mut total = EPoly::zero(3);
            for d in a.bidegrees() {
                total = &total + &a.bihomogeneous_component(d);
            }
            prop_assert_eq!(&total, &a);
            let prod = &a * &b;
            for da in a.bidegrees() {
                for db in b.bidegrees() {
                    let pa = a.bihomogeneous_component(da);
                    let pb = b.bihomogeneous_component(db);
                    let pp = &pa * &pb;
                    if !pp.is_zero() {
                        prop_assert_eq!(pp.bidegree(), Some(Bidegree::new(da.zdeg + db.zdeg, da.qdeg + db.qdeg)));
                    }
                }
            }
            // sum of componentwise products equals the product
            let mut acc = EPoly::zero(3);
            for da in a.bidegrees() {
                for db in b.bidegrees() {
                    acc = &acc + &(&a.bihomogeneous_component(da) * &b.bihomogeneous_component(db));
                }
            }
            prop_assert_eq!(acc, prod);
        }

        #[test]
        fn text_form_round_trips(a in arb_epoly()) {
            prop_assert_eq!(EPoly::<Rat>::parse(3, &a.to_string()).unwrap(), a);
        }
    }

    #[test]
    fn component_dimensions_match_gaussian_binomials() {
        // dim of the (k,s) component of C[e_0..e_{m-1}] is the coefficient of
        // q^s in [m+k-1 choose k]_q
        for m in 1..=5usize {
            for k in 0..=5u32 {
                let gb: QPoly = qbinomial(m as u32 + k - 1, k);
                for s in 0..=(k * (m as u32 - 1) + 1) {
                    let dim = monomial_basis(m, Bidegree::new(k, s)).len() as i64;
                    assert_eq!(dim, gb.coeff(s), "m={m} k={k} s={s}");
                }
            }
        }
    }
}
