//! Fusion products built directly from evaluation modules.
//!
//! On `⊗ C[y_α]/(y_α^{a_α})` the generator `e_i` acts by multiplication with
//! `sum_α z_α^i y_α`. The subspaces `F_s` spanned by `e_{i_1}...e_{i_k} 1`
//! with `sum i_j <= s` form an increasing filtration; the character of the
//! associated graded is the fusion character. Level `s` contributes
//! `F_s / F_{s-1}` with `F_{-1} = 0`.
//!
//! Nothing here goes through the ideal quotients; [`verify_fusion_quotient`]
//! compares the two independently built sides.

use std::fmt;

use crate::cyclic::{point_module, CyclicError, CyclicModule};
use crate::ideals::{build_i0, quotient_char, saturation_zdeg, Components, IdealError};
use crate::poly::{Bidegree, Monomial};
use crate::qchar::CharTable;
use crate::qkernel::{left_kernel_basis, Matrix, RowEchelon, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FusionError {
    #[error(transparent)]
    Points(#[from] CyclicError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Multiplication by `sum_α z_α^i y_α`, `i = 0..n-1`, on the monomial basis
/// of [`crate::cyclic::truncated_basis`].
pub fn evaluation_operators<T: Scalar>(a: &[u32], z: &[T]) -> Result<Vec<Matrix<T>>, FusionError> {
    Ok(point_module(a, z, a.len())?.ops().to_vec())
}

/// `F_s` intersected with each y-degree component, for every level.
#[derive(Clone)]
pub struct FiltrationTable<T> {
    /// `levels[k][s]` spans `F_s^{(k)}` inside the full module.
    levels: Vec<Vec<Subspace<T>>>,
    /// Per `(k, s)`: the monomials of bidegree `(k, s)` and the kernel of
    /// `mu -> mu(E) 1 mod F_{s-1}`, i.e. the annihilator of `1` in `gr F`.
    gr_annihilator: Vec<Vec<(Vec<Monomial>, Subspace<T>)>>,
}

impl<T: Scalar> fmt::Debug for FiltrationTable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<Vec<usize>> = self.levels.iter().map(|l| l.iter().map(|s| s.dim()).collect()).collect();
        f.debug_struct("FiltrationTable").field("dims", &dims).finish()
    }
}

impl<T: Scalar> FiltrationTable<T> {
    /// Builds the filtration for y-degrees `0..=kmax`.
    pub fn new(module: &CyclicModule<T>, kmax: u32) -> Self {
        let mut levels = Vec::new();
        let mut gr_annihilator = Vec::new();
        for level in module.images(kmax) {
            let mut ech = RowEchelon::new(module.dim());
            let mut spaces = Vec::new();
            let mut anns = Vec::new();
            let mut start = 0;
            while start < level.len() {
                let s = level[start].0.qdeg();
                let end = start + level[start..].iter().take_while(|(mu, _)| mu.qdeg() == s).count();
                // fill missing levels below s (no monomials there)
                while spaces.len() < s as usize {
                    spaces.push(ech.clone().into_subspace());
                    anns.push((Vec::new(), Subspace::zero(0)));
                }
                let block = &level[start..end];
                let reduced: Vec<Vec<T>> = block.iter().map(|(_, v)| ech.reduce(v.clone())).collect();
                let kernel = left_kernel_basis(&Matrix::from_rows(module.dim(), reduced));
                anns.push((
                    block.iter().map(|(mu, _)| mu.clone()).collect(),
                    Subspace::from_matrix(&kernel),
                ));
                for (_, v) in block {
                    if ech.is_full() {
                        break;
                    }
                    ech.insert(v.clone());
                }
                spaces.push(ech.clone().into_subspace());
                start = end;
            }
            levels.push(spaces);
            gr_annihilator.push(anns);
        }
        FiltrationTable { levels, gr_annihilator }
    }

    pub fn kmax(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    /// `F_s^{(k)}`; past the last level the filtration is exhausted.
    pub fn level(&self, k: u32, s: u32) -> &Subspace<T> {
        let l = &self.levels[k as usize];
        &l[(s as usize).min(l.len() - 1)]
    }

    /// Number of filtration levels stored for y-degree `k`.
    pub fn num_levels(&self, k: u32) -> usize {
        self.levels[k as usize].len()
    }

    /// Kernel of `gr` evaluation at bidegree `(k, s)`, over the monomials
    /// of that bidegree.
    pub fn gr_annihilator(&self, k: u32, s: u32) -> Option<(&[Monomial], &Subspace<T>)> {
        self.gr_annihilator
            .get(k as usize)?
            .get(s as usize)
            .map(|(m, sp)| (m.as_slice(), sp))
    }

    /// `dim F_s^{(k)} - dim F_{s-1}^{(k)}` for every nonzero entry.
    pub fn character(&self) -> CharTable {
        let mut t = CharTable::new();
        for (k, spaces) in self.levels.iter().enumerate() {
            let mut prev = 0;
            for (s, sp) in spaces.iter().enumerate() {
                t.add(k as u32, s as u32, (sp.dim() - prev) as u64);
                prev = sp.dim();
            }
        }
        t
    }
}

/// Filtration of the fusion product at points `z`, over every y-degree
/// that can be nonzero.
pub fn filtration_table<T: Scalar>(a: &[u32], z: &[T]) -> Result<FiltrationTable<T>, FusionError> {
    let module = point_module(a, z, a.len())?;
    Ok(FiltrationTable::new(&module, saturation_zdeg(a)))
}

/// Bigraded character of the associated graded fusion module.
pub fn fusion_character<T: Scalar>(a: &[u32], z: &[T]) -> Result<CharTable, FusionError> {
    Ok(filtration_table(a, z)?.character())
}

/// Outcome of comparing the fusion module with the quotient by `I(0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionReport {
    pub fusion: CharTable,
    pub quotient: CharTable,
    /// Bidegrees checked for annihilator equality.
    pub bidegrees_checked: usize,
    /// Largest monomial block seen.
    pub max_component: usize,
    pub mismatches: Vec<String>,
}

impl FusionReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the fusion character with the quotient character of `I(0)`,
/// and the annihilator of `1` in the associated graded with the components
/// of `I(0)`, bidegree by bidegree.
pub fn verify_fusion_quotient<T: Scalar>(a: &[u32], z: &[T]) -> Result<FusionReport, FusionError> {
    let table = filtration_table(a, z)?;
    let fusion = table.character();
    let origin = build_i0::<T>(a)?;
    let kmax = saturation_zdeg(a);
    let quotient = quotient_char(&origin, kmax)?
        .bigraded()
        .cloned()
        .expect("I(0) is bihomogeneous");
    let mut mismatches = Vec::new();
    if fusion != quotient {
        mismatches.push(format!("characters differ: fusion {fusion} vs quotient {quotient}"));
    }
    let mut comps = Components::new(&origin)?;
    let top = (a.len() as u32).saturating_sub(1);
    let mut checked = 0;
    let mut max_component = 0;
    for k in 0..=kmax {
        for s in 0..=k * top {
            let Some((monos, ann)) = table.gr_annihilator(k, s) else { continue };
            if monos.is_empty() {
                continue;
            }
            let comp = comps.component(Bidegree::new(k, s))?;
            checked += 1;
            max_component = max_component.max(monos.len());
            debug_assert_eq!(comp.monomials.as_slice(), monos);
            if &comp.space != ann {
                mismatches.push(format!(
                    "annihilator at ({k},{s}): gr has dim {}, I(0) has dim {}",
                    ann.dim(),
                    comp.space.dim()
                ));
            }
            let entry = fusion.get(k, s) as usize;
            if ann.codim() != entry {
                mismatches.push(format!("codim {} != entry {entry} at ({k},{s})", ann.codim()));
            }
        }
    }
    Ok(FusionReport { fusion, quotient, bidegrees_checked: checked, max_component, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qchar::multisets_up_to;
    use crate::Rat;

    fn r(x: i64) -> Rat {
        Rat::from_int(x)
    }

    fn presets(n: usize) -> Vec<Vec<Rat>> {
        let ints: Vec<Rat> = (1..=n as i64).map(r).collect();
        let sym: Vec<Rat> = (0..n as i64).map(|i| if i % 2 == 0 { r(i / 2 + 1) } else { r(-(i / 2 + 1)) }).collect();
        let odd: Vec<Rat> = (0..n as i64).map(|i| Rat::new((2 * i + 1).into(), 7.into()) - r(i * i)).collect();
        vec![ints, sym, odd]
    }

    #[test]
    fn operator_examples() {
        let ops = evaluation_operators(&[2], &[r(5)]).unwrap();
        assert_eq!(ops.len(), 1);
        assert_eq!(ops[0].mul_vec(&[r(1), r(0)]), vec![r(0), r(1)]);
        assert_eq!(ops[0].mul_vec(&[r(0), r(1)]), vec![r(0), r(0)]);
        let ops = evaluation_operators(&[1, 1], &[r(1), r(2)]).unwrap();
        assert!(ops.iter().all(|m| m.is_zero()));
        let ops = evaluation_operators(&[2, 3, 2], &[r(1), r(-2), r(3)]).unwrap();
        for x in &ops {
            for y in &ops {
                assert_eq!(x.mul(y), y.mul(x));
            }
        }
        assert!(evaluation_operators(&[1, 2], &[r(3), r(3)]).is_err());
    }

    #[test]
    fn character_examples() {
        assert_eq!(fusion_character(&[2], &[r(7)]).unwrap(), CharTable::from_triples([(0, 0, 1), (1, 0, 1)]));
        assert_eq!(
            fusion_character(&[2, 2], &[r(1), r(-1)]).unwrap(),
            CharTable::from_triples([(0, 0, 1), (1, 0, 1), (1, 1, 1), (2, 0, 1)])
        );
        assert_eq!(fusion_character(&[1, 1, 1], &[r(1), r(2), r(3)]).unwrap(), CharTable::unit());
    }

    #[test]
    fn filtration_is_increasing_and_exhausted() {
        let a = [3, 2, 2];
        let t = filtration_table(&a, &[r(1), r(2), r(3)]).unwrap();
        let module = point_module(&a, &[r(1), r(2), r(3)], 3).unwrap();
        let images = module.images(t.kmax());
        for k in 0..=t.kmax() {
            for s in 1..t.num_levels(k) as u32 {
                assert!(t.level(k, s).contains_subspace(t.level(k, s - 1)));
            }
            let full = Subspace::span_of(module.dim(), images[k as usize].iter().map(|(_, v)| v.clone()));
            assert_eq!(t.level(k, k * 2), &full);
        }
    }

    #[test]
    fn verification_examples() {
        assert!(verify_fusion_quotient(&[2, 2], &[r(1), r(-1)]).unwrap().passed());
        assert!(verify_fusion_quotient(&[1, 2], &[r(0), r(1)]).unwrap().passed());
        assert!(verify_fusion_quotient(&[3, 2, 2], &[r(1), r(2), r(3)]).unwrap().passed());
    }

    #[test]
    fn independent_of_points() {
        for a in multisets_up_to(6) {
            let chars: Vec<CharTable> = presets(a.len())
                .iter()
                .map(|z| fusion_character(&a, z).unwrap())
                .collect();
            let mass: u64 = a.iter().map(|&x| x as u64).product();
            assert_eq!(chars[0].total(), mass, "{a:?}");
            assert!(chars.windows(2).all(|w| w[0] == w[1]), "{a:?}");
        }
    }

    #[test]
    fn matches_quotient_small() {
        for a in multisets_up_to(6) {
            let rep = verify_fusion_quotient(&a, &presets(a.len())[2]).unwrap();
            assert!(rep.passed(), "{a:?}: {:?}", rep.mismatches);
        }
    }
}
