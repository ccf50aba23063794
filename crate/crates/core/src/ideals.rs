//! Ideals of `C[e_0, ..., e_{m-1}]` and their graded quotients.
//!
//! Every computation is degreewise linear algebra. The component of an ideal
//! at a (bi)degree is built from the components one z-degree lower,
//! `I_d = sum_j e_j * I_{d - deg e_j} + span(generators of degree d)`, so a
//! generator list never has to be saturated or put into a normal form.

use std::collections::HashMap;
use std::fmt;

use crate::cyclic::{point_module, CyclicError, CyclicModule};
use crate::poly::{monomial_basis, monomials_of_zdeg, Bidegree, EPoly, Monomial, PolyError};
use crate::qchar::CharTable;
use crate::qkernel::{Matrix, RowEchelon, Subspace};
use crate::scalar::{binomial, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("multiset entries must be positive")]
    ZeroPart,
    #[error("points must be pairwise distinct")]
    RepeatedPoint,
    #[error("generator `{0}` is not bihomogeneous")]
    NotBihomogeneous(String),
    #[error("generator `{0}` is not z-homogeneous")]
    NotZHomogeneous(String),
    #[error("flow parameter must be nonzero")]
    ZeroFlow,
    #[error("ambient width {width} must exceed the q-degree cap {smax}")]
    WindowTooWide { width: usize, smax: u32 },
    #[error("quotient is not zero at z-degree {0}; raise the cap")]
    NotFinite(u32),
    #[error("generator width {got} differs from ambient width {expected}")]
    Width { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<CyclicError> for IdealError {
    fn from(e: CyclicError) -> Self {
        match e {
            CyclicError::RepeatedPoint => IdealError::RepeatedPoint,
            CyclicError::ZeroPart => IdealError::ZeroPart,
            CyclicError::PointCount { expected, got } => IdealError::LengthMismatch { expected, got },
        }
    }
}

/// Where a generator list came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Family<T> {
    /// Powers `e(t_k)^{a_k}` of the truncated current at the points `t`.
    PowersAtPoints { a: Vec<u32>, t: Vec<T> },
    /// Low-order coefficients of powers of `e(z)`: the limit at `T = 0`.
    PowersLimit { a: Vec<u32> },
    /// Relations of the truncated polynomial algebra at distinct points.
    PointAlgebra { a: Vec<u32>, z: Vec<T> },
    /// Coefficients of `e(z)^k` up to a q-degree cap.
    PowerSeries { k: u32, smax: u32 },
    /// The limit `Z -> 0` of the point-algebra relations.
    Origin { a: Vec<u32> },
    /// Transport by the shift `e_i -> sum_j (-c)^j C(i,j) e_{i-j}`.
    Shifted { base: Box<Family<T>>, c: T },
    /// Relations at an arbitrary (possibly coinciding) point.
    AtPoint { a: Vec<u32>, z: Vec<T> },
    /// Image under `e_i -> e_{m-1-i}`.
    Opp(Box<Family<T>>),
    /// Image under `e_i -> t^i e_i`.
    Flow { base: Box<Family<T>>, t: T },
    Custom,
}

fn join<D: fmt::Display>(v: &[D]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl<T: fmt::Display> fmt::Display for Family<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::PowersAtPoints { a, t } => write!(f, "JA_T(A={};T={})", join(a), join(t)),
            Family::PowersLimit { a } => write!(f, "JA(A={})", join(a)),
            Family::PointAlgebra { a, z } => write!(f, "IZ(A={};Z={})", join(a), join(z)),
            Family::PowerSeries { k, smax } => write!(f, "Jk(k={k};smax={smax})"),
            Family::Origin { a } => write!(f, "I0(A={})", join(a)),
            Family::Shifted { base, c } => write!(f, "shift({base};c={c})"),
            Family::AtPoint { a, z } => write!(f, "Ipt(A={};Z={})", join(a), join(z)),
            Family::Opp(base) => write!(f, "opp({base})"),
            Family::Flow { base, t } => write!(f, "flow({base};t={t})"),
            Family::Custom => write!(f, "custom"),
        }
    }
}

/// Generator list of an ideal in `C[e_0..e_{width-1}]`.
#[derive(Clone, PartialEq)]
pub struct IdealSpec<T> {
    width: usize,
    generators: Vec<EPoly<T>>,
    family: Family<T>,
}

impl<T: Scalar> fmt::Debug for IdealSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealSpec")
            .field("width", &self.width)
            .field("family", &self.family.to_string())
            .field("generators", &self.generators)
            .finish()
    }
}

impl<T: Scalar> IdealSpec<T> {
    /// Zero generators are dropped.
    pub fn new(width: usize, generators: Vec<EPoly<T>>, family: Family<T>) -> Result<Self, IdealError> {
        for g in &generators {
            if g.width() != width {
                return Err(IdealError::Width { expected: width, got: g.width() });
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealSpec { width, generators, family })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn generators(&self) -> &[EPoly<T>] {
        &self.generators
    }

    pub fn family(&self) -> &Family<T> {
        &self.family
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_bihomogeneous())
    }

    pub fn is_z_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.zdeg().is_some())
    }

    /// One generator per line, canonical term order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    fn map_generators(&self, family: Family<T>, f: impl Fn(&EPoly<T>) -> EPoly<T>) -> Self {
        IdealSpec {
            width: self.width,
            generators: self.generators.iter().map(f).filter(|g| !g.is_zero()).collect(),
            family,
        }
    }
}

/// The reversal `e_i -> e_{m-1-i}`; an involution.
pub fn opp<T: Scalar>(spec: &IdealSpec<T>) -> IdealSpec<T> {
    let family = match &spec.family {
        Family::Opp(inner) => (**inner).clone(),
        other => Family::Opp(Box::new(other.clone())),
    };
    spec.map_generators(family, reverse_poly)
}

fn reverse_poly<T: Scalar>(p: &EPoly<T>) -> EPoly<T> {
    EPoly::from_terms(
        p.width(),
        p.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.reverse();
            (Monomial::from_exponents(e), c.clone())
        }),
    )
}

/// `S_t : e_i -> t^i e_i`.
pub fn st_flow<T: Scalar>(spec: &IdealSpec<T>, t: &T) -> Result<IdealSpec<T>, IdealError> {
    if t.is_zero() {
        return Err(IdealError::ZeroFlow);
    }
    let family = Family::Flow { base: Box::new(spec.family.clone()), t: t.clone() };
    Ok(spec.map_generators(family, |g| {
        EPoly::from_terms(
            g.width(),
            g.terms().map(|(m, c)| {
                let mut c = c.clone();
                c *= &t.powu(m.qdeg());
                (m.clone(), c)
            }),
        )
    }))
}

/// Images of `e_i` under `e_i -> sum_j c^j C(i,j) e_{i-j}`.
fn shift_images<T: Scalar>(width: usize, c: &T) -> Vec<EPoly<T>> {
    (0..width)
        .map(|i| {
            let coeffs: Vec<T> = (0..width)
                .map(|p| {
                    if p > i {
                        return T::zero();
                    }
                    let j = (i - p) as u32;
                    let mut x = binomial::<T>(i as u32, j);
                    x *= &c.powu(j);
                    x
                })
                .collect();
            EPoly::linear(&coeffs)
        })
        .collect()
}

/// Transports generators of `I(0)` to `I(c, ..., c)`. The shift `psi_c`
/// identifies the quotient at `c` with the quotient at `0`, so the ideal at
/// `c` is `psi_c^{-1}(I(0)) = psi_{-c}(I(0))`.
pub fn shift_ideal<T: Scalar>(spec: &IdealSpec<T>, c: &T) -> IdealSpec<T> {
    if c.is_zero() {
        return spec.clone();
    }
    let images = shift_images(spec.width, &-c.clone());
    let family = Family::Shifted { base: Box::new(spec.family.clone()), c: c.clone() };
    spec.map_generators(family, |g| g.substitute(&images).expect("width checked"))
}

fn check_parts(a: &[u32]) -> Result<(), IdealError> {
    if a.contains(&0) {
        Err(IdealError::ZeroPart)
    } else {
        Ok(())
    }
}

fn check_distinct<T: Scalar>(z: &[T]) -> Result<(), IdealError> {
    for i in 0..z.len() {
        for j in 0..i {
            if z[i] == z[j] {
                return Err(IdealError::RepeatedPoint);
            }
        }
    }
    Ok(())
}

/// `(sum_{i<n} t_k^i e_i)^{a_k}` for each `k`.
pub fn gens_ja_t<T: Scalar>(a: &[u32], t: &[T]) -> Result<IdealSpec<T>, IdealError> {
    check_parts(a)?;
    if a.len() != t.len() {
        return Err(IdealError::LengthMismatch { expected: a.len(), got: t.len() });
    }
    let n = a.len();
    let gens = a
        .iter()
        .zip(t)
        .map(|(&ak, tk)| {
            let coeffs: Vec<T> = (0..n).map(|i| tk.powu(i as u32)).collect();
            EPoly::linear(&coeffs).pow(ak)
        })
        .collect();
    IdealSpec::new(n, gens, Family::PowersAtPoints { a: a.to_vec(), t: t.to_vec() })
}

/// Coefficients of `z^0..z^smax` in `(sum_{p<width} e_p z^p)^i`.
pub fn current_power_coefficients<T: Scalar>(width: usize, i: u32, smax: u32) -> Vec<EPoly<T>> {
    let len = smax as usize + 1;
    let mut cur: Vec<EPoly<T>> = (0..len)
        .map(|s| if s == 0 { EPoly::one(width) } else { EPoly::zero(width) })
        .collect();
    for _ in 0..i {
        let mut next: Vec<EPoly<T>> = (0..len).map(|_| EPoly::zero(width)).collect();
        for (s, slot) in next.iter_mut().enumerate() {
            for p in 0..width.min(s + 1) {
                let prev = &cur[s - p];
                if prev.is_zero() {
                    continue;
                }
                let term = prev.mul_monomial(&Monomial::var(width, p));
                *slot = &*slot + &term;
            }
        }
        cur = next;
    }
    cur
}

/// Divisibility order `d_i = sum_p (i + 1 - a_p)_+`.
pub fn limit_order(a: &[u32], i: u32) -> u32 {
    a.iter().map(|&ap| (i + 1).saturating_sub(ap)).sum()
}

/// Generators of the limit ideal: for `i = 1..=sum a`, the coefficients of
/// `z^s`, `s < d_i`, in `e(z)^i`. Past `i = sum a` the threshold exceeds the
/// top q-degree `i(n-1)` so nothing new appears.
pub fn gens_ja_limit<T: Scalar>(a: &[u32]) -> Result<IdealSpec<T>, IdealError> {
    let total: u32 = a.iter().sum();
    gens_ja_limit_window(a, total, u32::MAX)
}

/// The generators of [`gens_ja_limit`] with z-degree `<= kmax` and q-degree
/// `<= smax`: enough to compute every component inside that window.
pub fn gens_ja_limit_window<T: Scalar>(a: &[u32], kmax: u32, smax: u32) -> Result<IdealSpec<T>, IdealError> {
    check_parts(a)?;
    let n = a.len();
    let total: u32 = a.iter().sum();
    let mut gens = Vec::new();
    for i in 1..=total.min(kmax) {
        let top = i * (n as u32).saturating_sub(1);
        let d = limit_order(a, i);
        if d == 0 {
            continue;
        }
        let cap = (d - 1).min(top).min(smax);
        gens.extend(current_power_coefficients(n, i, cap));
    }
    debug_assert!(total == 0 || limit_order(a, total) > total * (n as u32).saturating_sub(1));
    IdealSpec::new(n, gens, Family::PowersLimit { a: a.to_vec() })
}

/// Coefficients of `z^s`, `s <= smax`, in `e(z)^k` over `e_0..e_{m-1}`.
pub fn gens_jk_window<T: Scalar>(k: u32, m: usize, smax: u32) -> Result<IdealSpec<T>, IdealError> {
    if m as u64 <= smax as u64 {
        return Err(IdealError::WindowTooWide { width: m, smax });
    }
    let gens = current_power_coefficients(m, k, smax);
    IdealSpec::new(m, gens, Family::PowerSeries { k, smax })
}

/// `I(0) = opp(J^A)`.
pub fn build_i0<T: Scalar>(a: &[u32]) -> Result<IdealSpec<T>, IdealError> {
    let mut spec = opp(&gens_ja_limit(a)?);
    spec.family = Family::Origin { a: a.to_vec() };
    Ok(spec)
}

/// Largest z-degree where `prod C[y]/(y^a)` is nonzero, plus one.
pub fn saturation_zdeg(a: &[u32]) -> u32 {
    a.iter().map(|&x| x.saturating_sub(1)).sum::<u32>() + 1
}

/// Minimal-by-degree generators of `Ann(u)` read off a cyclic module whose
/// z-degree `kmax` part acts as zero.
fn generators_of_annihilator<T: Scalar>(module: &CyclicModule<T>, kmax: u32) -> Vec<EPoly<T>> {
    let m = module.width();
    let levels = module.images(kmax);
    let mut gens = Vec::new();
    let mut prev: Option<(Vec<Monomial>, Subspace<T>)> = None;
    for (k, level) in levels.iter().enumerate() {
        let monos: Vec<Monomial> = level.iter().map(|(mu, _)| mu.clone()).collect();
        let ann = module.annihilator_at(level);
        let mut generated = RowEchelon::new(monos.len());
        if let Some((pm, ps)) = &prev {
            let index = index_of(&monos);
            for j in 0..m {
                for row in ps.basis() {
                    generated.insert(multiply_row(row, pm, j, &index, monos.len()));
                }
            }
        }
        for row in ann.basis() {
            if generated.insert(row.clone()) {
                gens.push(EPoly::from_coefficients(m, &monos, row));
            }
        }
        debug_assert!(k < levels.len());
        prev = Some((monos, ann));
    }
    gens
}

fn index_of(monos: &[Monomial]) -> HashMap<Monomial, usize> {
    monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()
}

/// Coordinates of `e_j * (row over from_monos)` in the target basis.
fn multiply_row<T: Scalar>(
    row: &[T],
    from_monos: &[Monomial],
    j: usize,
    index: &HashMap<Monomial, usize>,
    len: usize,
) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    let var = Monomial::var(from_monos.first().map_or(0, |m| m.width()), j);
    for (c, mu) in row.iter().zip(from_monos) {
        if !c.is_zero() {
            out[index[&mu.mul(&var)]] = c.clone();
        }
    }
    out
}

/// `I(Z)` for pairwise distinct `Z`: the kernel of `e_k -> sum_i z_i^k y_i`
/// into `prod C[y_i]/(y_i^{a_i})`.
pub fn gens_iz<T: Scalar>(a: &[u32], z: &[T]) -> Result<IdealSpec<T>, IdealError> {
    let module = point_module(a, z, a.len())?;
    let gens = generators_of_annihilator(&module, saturation_zdeg(a));
    IdealSpec::new(a.len(), gens, Family::PointAlgebra { a: a.to_vec(), z: z.to_vec() })
}

/// Regular representation of `C[e]/I` for a z-homogeneous ideal whose
/// quotient vanishes above z-degree `kmax`; the cyclic vector is `1`.
pub fn quotient_module<T: Scalar>(spec: &IdealSpec<T>, kmax: u32) -> Result<CyclicModule<T>, IdealError> {
    let m = spec.width;
    let mut comps = Components::new(spec)?;
    let levels: Vec<ZGradedBasis<T>> = (0..=kmax + 1).map(|k| comps.z_component(k)).collect::<Result<_, _>>()?;
    if levels[kmax as usize + 1].codim() != 0 {
        return Err(IdealError::NotFinite(kmax + 1));
    }
    // (zdeg, column) of every standard monomial
    let mut basis: Vec<(usize, usize)> = Vec::new();
    for (k, lvl) in levels.iter().enumerate().take(kmax as usize + 1) {
        basis.extend(lvl.space.free_columns().into_iter().map(|c| (k, c)));
    }
    let pos: HashMap<(usize, usize), usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let dim = basis.len();
    let indices: Vec<HashMap<Monomial, usize>> = levels.iter().map(|l| index_of(&l.monomials)).collect();
    let mut ops = Vec::with_capacity(m);
    for i in 0..m {
        let mut op = Matrix::zeros(dim, dim);
        for (col, &(k, c)) in basis.iter().enumerate() {
            if k + 1 > kmax as usize {
                continue;
            }
            let target = &levels[k + 1];
            let nu = levels[k].monomials[c].mul(&Monomial::var(m, i));
            let mut v = vec![T::zero(); target.monomials.len()];
            v[indices[k + 1][&nu]] = T::one();
            let v = target.space.reduce(v);
            for (idx, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    op[(pos[&(k + 1, idx)], col)] = x.clone();
                }
            }
        }
        ops.push(op);
    }
    let mut u = vec![T::zero(); dim];
    if dim > 0 {
        u[0] = T::one();
    }
    Ok(CyclicModule::new(ops, u))
}

/// `E_i = -sum_{r<alpha} C(alpha,r) (-t)^{alpha-r} E_{i-alpha+r}` for
/// `i >= alpha`: inside a block of `alpha` coinciding points `t`, every
/// `e_i` obeys the recurrence with characteristic polynomial `(x-t)^alpha`.
fn extend_by_recurrence<T: Scalar>(ops: &mut Vec<Matrix<T>>, t: &T, width: usize) {
    let alpha = ops.len();
    let dim = ops.first().map_or(0, |o| o.nrows());
    let neg_t = -t.clone();
    let coeffs: Vec<T> = (0..alpha as u32)
        .map(|r| {
            let mut c = binomial::<T>(alpha as u32, r);
            c *= &neg_t.powu(alpha as u32 - r);
            -c
        })
        .collect();
    for i in alpha..width {
        let mut e = Matrix::zeros(dim, dim);
        for (r, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let src = &ops[i - alpha + r];
            for x in 0..dim {
                for y in 0..dim {
                    let v = &src[(x, y)];
                    if !v.is_zero() {
                        let mut p = c.clone();
                        p *= v;
                        e[(x, y)] += &p;
                    }
                }
            }
        }
        ops.push(e);
    }
}

/// `I(Z)` at an arbitrary point: the coordinates with equal value `t_j`
/// form a block; `a_i` is attached to `z_i` (positional). The quotient is
/// the tensor product over blocks of `C[e_0..e_{alpha-1}]/I(t_j, ..., t_j)`.
pub fn ideal_at_point<T: Scalar>(a: &[u32], z: &[T]) -> Result<IdealSpec<T>, IdealError> {
    check_parts(a)?;
    if a.len() != z.len() {
        return Err(IdealError::LengthMismatch { expected: a.len(), got: z.len() });
    }
    let n = a.len();
    let mut blocks: Vec<(T, Vec<u32>)> = Vec::new();
    for (ai, zi) in a.iter().zip(z) {
        match blocks.iter_mut().find(|(t, _)| t == zi) {
            Some((_, part)) => part.push(*ai),
            None => blocks.push((zi.clone(), vec![*ai])),
        }
    }
    let mut total: Option<CyclicModule<T>> = None;
    for (t, part) in &blocks {
        let mut sorted = part.clone();
        sorted.sort_unstable();
        let local = shift_ideal(&build_i0(&sorted)?, t);
        let module = quotient_module(&local, saturation_zdeg(&sorted) - 1)?;
        let mut ops = module.ops().to_vec();
        extend_by_recurrence(&mut ops, t, n);
        let factor = CyclicModule::new(ops, module.cyclic_vector().to_vec());
        total = Some(match total {
            None => factor,
            Some(acc) => acc.tensor(&factor),
        });
    }
    let module = total.unwrap_or_else(|| CyclicModule::new(Vec::new(), vec![T::one()]));
    let gens = generators_of_annihilator(&module, saturation_zdeg(a));
    IdealSpec::new(n, gens, Family::AtPoint { a: a.to_vec(), z: z.to_vec() })
}

/// `rho(l) = sum_α z_α^l / prod_{β≠α} (z_α - z_β)`.
pub fn rho_check<T: Scalar>(z: &[T], l: u32) -> Result<T, IdealError> {
    check_distinct(z)?;
    let mut acc = T::zero();
    for (i, zi) in z.iter().enumerate() {
        let mut den = T::one();
        for (j, zj) in z.iter().enumerate() {
            if i != j {
                den *= &(zi.clone() - zj.clone());
            }
        }
        acc += &(zi.powu(l) / den);
    }
    Ok(acc)
}

/// Ideal component at one bidegree, over [`monomial_basis`].
#[derive(Debug, Clone, PartialEq)]
pub struct GradedBasis<T> {
    pub bidegree: Bidegree,
    pub monomials: Vec<Monomial>,
    pub space: Subspace<T>,
}

/// Ideal component at one z-degree, over [`monomials_of_zdeg`] (all
/// q-degrees up to `k(m-1)`).
#[derive(Debug, Clone, PartialEq)]
pub struct ZGradedBasis<T> {
    pub zdeg: u32,
    pub monomials: Vec<Monomial>,
    pub space: Subspace<T>,
}

impl<T: Scalar> GradedBasis<T> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn codim(&self) -> usize {
        self.space.codim()
    }

    pub fn polys(&self) -> Vec<EPoly<T>> {
        let w = self.monomials.first().map_or(0, |m| m.width());
        self.space.basis().iter().map(|r| EPoly::from_coefficients(w, &self.monomials, r)).collect()
    }
}

impl<T: Scalar> ZGradedBasis<T> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn codim(&self) -> usize {
        self.space.codim()
    }
}

/// Memoized degreewise components of one ideal.
pub struct Components<'a, T> {
    spec: &'a IdealSpec<T>,
    bi: HashMap<Bidegree, GradedBasis<T>>,
    z: HashMap<u32, ZGradedBasis<T>>,
}

impl<'a, T: Scalar> Components<'a, T> {
    pub fn new(spec: &'a IdealSpec<T>) -> Result<Self, IdealError> {
        for g in &spec.generators {
            if g.zdeg().is_none() {
                return Err(IdealError::NotZHomogeneous(g.to_string()));
            }
        }
        Ok(Components { spec, bi: HashMap::new(), z: HashMap::new() })
    }

    /// Component at a bidegree; requires bihomogeneous generators.
    pub fn component(&mut self, d: Bidegree) -> Result<GradedBasis<T>, IdealError> {
        if let Some(g) = self.spec.generators.iter().find(|g| !g.is_bihomogeneous()) {
            return Err(IdealError::NotBihomogeneous(g.to_string()));
        }
        self.ensure_bi(d);
        Ok(self.bi[&d].clone())
    }

    fn ensure_bi(&mut self, d: Bidegree) {
        if self.bi.contains_key(&d) {
            return;
        }
        let m = self.spec.width;
        if d.zdeg > 0 {
            for j in 0..m.min(d.qdeg as usize + 1) {
                self.ensure_bi(Bidegree::new(d.zdeg - 1, d.qdeg - j as u32));
            }
        }
        let monos = monomial_basis(m, d);
        let index = index_of(&monos);
        let mut ech = RowEchelon::new(monos.len());
        for g in &self.spec.generators {
            if ech.is_full() {
                break;
            }
            if g.bidegree() == Some(d) {
                ech.insert(g.coefficient_vector(&monos).expect("bidegree checked"));
            }
        }
        if d.zdeg > 0 {
            'outer: for j in 0..m.min(d.qdeg as usize + 1) {
                let lower = &self.bi[&Bidegree::new(d.zdeg - 1, d.qdeg - j as u32)];
                for row in lower.space.basis() {
                    if ech.is_full() {
                        break 'outer;
                    }
                    ech.insert(multiply_row(row, &lower.monomials, j, &index, monos.len()));
                }
            }
        }
        let space = ech.into_subspace();
        self.bi.insert(d, GradedBasis { bidegree: d, monomials: monos, space });
    }

    /// Component at a z-degree across all q-degrees.
    pub fn z_component(&mut self, k: u32) -> Result<ZGradedBasis<T>, IdealError> {
        self.ensure_z(k);
        Ok(self.z[&k].clone())
    }

    fn ensure_z(&mut self, k: u32) {
        if self.z.contains_key(&k) {
            return;
        }
        if k > 0 {
            self.ensure_z(k - 1);
        }
        let m = self.spec.width;
        let monos = monomials_of_zdeg(m, k);
        let index = index_of(&monos);
        let mut ech = RowEchelon::new(monos.len());
        for g in &self.spec.generators {
            if ech.is_full() {
                break;
            }
            if g.zdeg() == Some(k) {
                ech.insert(g.coefficient_vector(&monos).expect("z-degree checked"));
            }
        }
        if k > 0 {
            let lower = &self.z[&(k - 1)];
            'outer: for j in 0..m {
                for row in lower.space.basis() {
                    if ech.is_full() {
                        break 'outer;
                    }
                    ech.insert(multiply_row(row, &lower.monomials, j, &index, monos.len()));
                }
            }
        }
        let space = ech.into_subspace();
        self.z.insert(k, ZGradedBasis { zdeg: k, monomials: monos, space });
    }
}

/// Component of a bihomogeneous ideal at one bidegree.
pub fn ideal_component<T: Scalar>(spec: &IdealSpec<T>, d: Bidegree) -> Result<GradedBasis<T>, IdealError> {
    Components::new(spec)?.component(d)
}

/// Component of a z-homogeneous ideal at one z-degree.
pub fn z_component<T: Scalar>(spec: &IdealSpec<T>, k: u32) -> Result<ZGradedBasis<T>, IdealError> {
    Components::new(spec)?.z_component(k)
}

/// Quotient character: bigraded when the generators allow it, otherwise
/// only the dimensions per z-degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientChar {
    Bigraded(CharTable),
    ZGraded(Vec<u64>),
}

impl QuotientChar {
    pub fn total(&self) -> u64 {
        match self {
            QuotientChar::Bigraded(t) => t.total(),
            QuotientChar::ZGraded(v) => v.iter().sum(),
        }
    }

    /// Dimensions per z-degree, trailing zeros removed.
    pub fn zdims(&self) -> Vec<u64> {
        let mut v = match self {
            QuotientChar::Bigraded(t) => t.zdims(),
            QuotientChar::ZGraded(v) => v.clone(),
        };
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn bigraded(&self) -> Option<&CharTable> {
        match self {
            QuotientChar::Bigraded(t) => Some(t),
            QuotientChar::ZGraded(_) => None,
        }
    }
}

/// `dim C[e]_d - dim I_d` for all degrees with z-degree `<= kmax`.
pub fn quotient_char<T: Scalar>(spec: &IdealSpec<T>, kmax: u32) -> Result<QuotientChar, IdealError> {
    let mut comps = Components::new(spec)?;
    let top = (spec.width as u32).saturating_sub(1);
    if spec.is_bihomogeneous() {
        let mut t = CharTable::new();
        for k in 0..=kmax {
            for s in 0..=k * top {
                t.add(k, s, comps.component(Bidegree::new(k, s))?.codim() as u64);
            }
        }
        Ok(QuotientChar::Bigraded(t))
    } else {
        let dims = (0..=kmax)
            .map(|k| comps.z_component(k).map(|c| c.codim() as u64))
            .collect::<Result<_, _>>()?;
        Ok(QuotientChar::ZGraded(dims))
    }
}

/// Bigraded quotient character restricted to `k <= kmax`, `s <= smax`.
pub fn quotient_char_window<T: Scalar>(spec: &IdealSpec<T>, kmax: u32, smax: u32) -> Result<CharTable, IdealError> {
    let mut comps = Components::new(spec)?;
    let top = (spec.width as u32).saturating_sub(1);
    let mut t = CharTable::new();
    for k in 0..=kmax {
        for s in 0..=(k * top).min(smax) {
            t.add(k, s, comps.component(Bidegree::new(k, s))?.codim() as u64);
        }
    }
    Ok(t)
}

/// Associated graded ideal for the filtration by q-degree: at `(k, s)` the
/// top-degree parts of the elements of `I_k` whose q-degree is at most `s`.
/// For a bihomogeneous ideal this returns its own components.
pub fn up_ideal<T: Scalar>(spec: &IdealSpec<T>, kmax: u32) -> Result<Vec<GradedBasis<T>>, IdealError> {
    let mut comps = Components::new(spec)?;
    let m = spec.width;
    let top = (m as u32).saturating_sub(1);
    let mut out = Vec::new();
    for k in 0..=kmax {
        let zc = comps.z_component(k)?;
        // reorder columns by q-degree descending, keeping order within blocks
        let mut order: Vec<usize> = (0..zc.monomials.len()).collect();
        order.sort_by_key(|&c| std::cmp::Reverse(zc.monomials[c].qdeg()));
        let permuted = zc.space.to_matrix().select_columns(&order);
        let reduced = Subspace::from_matrix(&permuted);
        for s in (0..=k * top).rev() {
            let monos = monomial_basis(m, Bidegree::new(k, s));
            let block: Vec<usize> = (0..order.len())
                .filter(|&p| zc.monomials[order[p]].qdeg() == s)
                .collect();
            let lo = block.first().copied().unwrap_or(0);
            let hi = lo + block.len();
            let rows = reduced
                .basis()
                .iter()
                .zip(reduced.pivots())
                .filter(|(_, &p)| p >= lo && p < hi)
                .map(|(r, _)| r[lo..hi].to_vec());
            let space = Subspace::span_of(monos.len(), rows);
            out.push(GradedBasis { bidegree: Bidegree::new(k, s), monomials: monos, space });
        }
    }
    out.sort_by_key(|g| (g.bidegree.zdeg, g.bidegree.qdeg));
    Ok(out)
}
