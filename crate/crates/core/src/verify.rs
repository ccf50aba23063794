//! Cross-validation sweeps over the exact constructions.
//!
//! A suite expands into independent [`Job`]s; each job yields one [`Check`].
//! Callers may run jobs in any order or in parallel and then fold the
//! checks, in job order, into a [`SuiteReport`].

use std::fmt;

use serde::Serialize;

use crate::dualmodel::dual_char_limit;
use crate::funcmodel::{default_cap, fc_truncated, free_hilbert_n2, mt_character, pairing_check_n2};
use crate::fusion::{fusion_character, verify_fusion_quotient};
use crate::ideals::{
    build_i0, gens_iz, gens_ja_limit, gens_ja_limit_window, gens_ja_t, gens_jk_window, quotient_char,
    quotient_char_window, rho_check, saturation_zdeg, st_flow, up_ideal, Components,
};
use crate::poly::{monomial_basis, monomials_of_zdeg, Bidegree};
use crate::qchar::{char_closed_form, char_recurrence, gordon_truncated, multisets_up_to, qbinomial, BProfile};
use crate::qkernel::Subspace;
use crate::scalar::Scalar;
use crate::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Total mass of the limit quotient is `prod a_i`.
    DimensionLaw,
    /// Quotients of the point ideals `J^A(T)` have mass `prod a_i`.
    GenericPoints,
    /// Recurrence, closed form, limit quotient and dual model agree.
    ThreeRoutes,
    /// Fusion module versus the quotient by `I(0)`, at several point sets.
    FusionQuotient,
    /// `I(0)` and `J^A` characters are mirror images.
    Mirror,
    /// `J^{(k,...,k)}` is the stable ideal of coefficients of `e(z)^k`.
    CurrentPowers,
    /// `S_t I(Z) = I(Z/t)` and the up-ideal of `I(Z)` is `I(0)`.
    Flow,
    /// Large-`n` characters agree with the Gordon sums on a window.
    Gordon,
    /// Dimensions of `M(T)`, freeness and the two-point pairing.
    FunctionalModel,
    /// Partial-fraction identities `rho(l)`.
    Rho,
    /// q-Pascal rules and symmetry of Gaussian binomials.
    QBinomial,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::DimensionLaw,
        Suite::GenericPoints,
        Suite::ThreeRoutes,
        Suite::FusionQuotient,
        Suite::Mirror,
        Suite::CurrentPowers,
        Suite::Flow,
        Suite::Gordon,
        Suite::FunctionalModel,
        Suite::Rho,
        Suite::QBinomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DimensionLaw => "dimension-law",
            Suite::GenericPoints => "generic-points",
            Suite::ThreeRoutes => "three-routes",
            Suite::FusionQuotient => "fusion-quotient",
            Suite::Mirror => "mirror",
            Suite::CurrentPowers => "current-powers",
            Suite::Flow => "flow",
            Suite::Gordon => "gordon",
            Suite::FunctionalModel => "functional-model",
            Suite::Rho => "rho",
            Suite::QBinomial => "qbinomial",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Optional overrides of a suite's default range.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Bounds {
    pub max_sum: Option<u32>,
    pub k: Option<u32>,
    pub n: Option<u32>,
    pub smax: Option<u32>,
}

/// Named rational point sets of length `n`.
///
/// `integers` is `(1, 2, ..., n)`, `symmetric` is `(1, -1, 2, -2, ...)` and
/// `skew` is `(i^2 + i/3)_{i=1..n}`.
pub fn point_preset(name: &str, n: usize) -> Option<Vec<Rat>> {
    let pts = match name {
        "integers" => (1..=n as i64).map(Rat::from_int).collect(),
        "symmetric" => (0..n as i64)
            .map(|i| {
                let v = i / 2 + 1;
                Rat::from_int(if i % 2 == 0 { v } else { -v })
            })
            .collect(),
        "skew" => (1..=n as i64)
            .map(|i| Rat::new((3 * i * i + i).into(), 3.into()))
            .collect(),
        _ => return None,
    };
    Some(pts)
}

/// Names accepted by [`point_preset`].
pub const PRESETS: [&str; 3] = ["integers", "symmetric", "skew"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Task {
    Multiset(Vec<u32>),
    CurrentPowers { k: u32, n: u32, smax: u32 },
    Gordon { k: u32, n: u32, smax: u32 },
    Flow { a: Vec<u32>, preset: &'static str },
    Rho { n: u32, preset: &'static str },
    QBinomial { m: u32 },
    Functional { a: Vec<u32>, pairing: bool },
}

/// One independent instance of a suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub suite: Suite,
    pub label: String,
    task: Task,
}

/// Outcome of one job.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    /// Largest linear-algebra ambient (columns) touched.
    pub component: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub instances: usize,
    pub max_component: usize,
    pub checked: Vec<String>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn from_checks(suite: Suite, checks: Vec<Check>) -> Self {
        let mut failures = Vec::new();
        let mut checked = Vec::new();
        let mut max_component = 0;
        for c in checks {
            max_component = max_component.max(c.component);
            failures.extend(c.failures.into_iter().map(|f| format!("{}: {f}", c.label)));
            checked.push(c.label);
        }
        SuiteReport { suite, instances: checked.len(), max_component, checked, failures }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn label_of(a: &[u32]) -> String {
    let parts: Vec<String> = a.iter().map(u32::to_string).collect();
    format!("A=({})", parts.join(","))
}

fn nonempty_multisets(max_sum: u32) -> Vec<Vec<u32>> {
    multisets_up_to(max_sum).into_iter().filter(|a| !a.is_empty()).collect()
}

/// Expands a suite into its jobs, in a fixed order.
pub fn jobs(suite: Suite, bounds: &Bounds) -> Vec<Job> {
    let multiset_jobs = |default: u32| -> Vec<Job> {
        nonempty_multisets(bounds.max_sum.unwrap_or(default))
            .into_iter()
            .map(|a| Job { suite, label: label_of(&a), task: Task::Multiset(a) })
            .collect()
    };
    match suite {
        Suite::DimensionLaw | Suite::FusionQuotient | Suite::Mirror => multiset_jobs(8),
        Suite::GenericPoints | Suite::ThreeRoutes => multiset_jobs(7),
        Suite::CurrentPowers => {
            let smax = bounds.smax.unwrap_or(6);
            let ks: Vec<u32> = bounds.k.map_or((1..=3).collect(), |k| vec![k]);
            let ns: Vec<u32> = bounds.n.map_or((1..=4).collect(), |n| vec![n]);
            let mut out = Vec::new();
            for &k in &ks {
                for &n in &ns {
                    out.push(Job {
                        suite,
                        label: format!("k={k} n={n} smax={smax}"),
                        task: Task::CurrentPowers { k, n, smax },
                    });
                }
            }
            out
        }
        Suite::Gordon => {
            let smax = bounds.smax.unwrap_or(4);
            let n = bounds.n.unwrap_or(10);
            let ks: Vec<u32> = bounds.k.map_or(vec![2, 3], |k| vec![k]);
            ks.into_iter()
                .map(|k| Job { suite, label: format!("k={k} n={n} smax={smax}"), task: Task::Gordon { k, n, smax } })
                .collect()
        }
        Suite::Flow => {
            let mut out = Vec::new();
            for a in nonempty_multisets(bounds.max_sum.unwrap_or(6)) {
                for preset in ["integers", "symmetric"] {
                    out.push(Job {
                        suite,
                        label: format!("{} Z={preset}", label_of(&a)),
                        task: Task::Flow { a: a.clone(), preset },
                    });
                }
            }
            out
        }
        Suite::Rho => {
            let nmax = bounds.n.unwrap_or(6);
            let mut out = Vec::new();
            for n in 1..=nmax {
                for preset in PRESETS {
                    out.push(Job { suite, label: format!("n={n} Z={preset}"), task: Task::Rho { n, preset } });
                }
            }
            out
        }
        Suite::QBinomial => (0..=bounds.n.unwrap_or(12))
            .map(|m| Job { suite, label: format!("m={m}"), task: Task::QBinomial { m } })
            .collect(),
        Suite::FunctionalModel => {
            let list: Vec<Vec<u32>> = match bounds.max_sum {
                Some(s) => nonempty_multisets(s).into_iter().filter(|a| a.len() <= 3).collect(),
                None => {
                    let mut v = Vec::new();
                    for x in 1..=3 {
                        for y in x..=3 {
                            v.push(vec![x, y]);
                        }
                    }
                    v.push(vec![2, 2, 2]);
                    v
                }
            };
            list.into_iter()
                .map(|a| Job {
                    suite,
                    label: label_of(&a),
                    task: Task::Functional { pairing: a.len() == 2, a },
                })
                .collect()
        }
    }
}

/// Runs one job. Errors from the constructions become failures.
pub fn run(job: &Job) -> Check {
    let mut failures = Vec::new();
    let component = match run_task(job.suite, &job.task, &mut failures) {
        Ok(c) => c,
        Err(e) => {
            failures.push(format!("error: {e}"));
            0
        }
    };
    Check { label: job.label.clone(), component, failures }
}

/// Runs every job of a suite in order.
pub fn run_suite(suite: Suite, bounds: &Bounds) -> SuiteReport {
    let checks = jobs(suite, bounds).iter().map(run).collect();
    SuiteReport::from_checks(suite, checks)
}

type Failures = Vec<String>;
type TaskResult = Result<usize, Box<dyn std::error::Error>>;

fn mass(a: &[u32]) -> u64 {
    a.iter().map(|&x| x as u64).product()
}

fn zdeg_ambient(n: usize, kmax: u32) -> usize {
    monomials_of_zdeg(n, kmax).len()
}

fn run_task(suite: Suite, task: &Task, fail: &mut Failures) -> TaskResult {
    match (suite, task) {
        (Suite::DimensionLaw, Task::Multiset(a)) => {
            let kmax = saturation_zdeg(a);
            let q = quotient_char(&gens_ja_limit::<Rat>(a)?, kmax)?;
            if q.total() != mass(a) {
                fail.push(format!("mass {} != {}", q.total(), mass(a)));
            }
            Ok(zdeg_ambient(a.len(), kmax))
        }
        (Suite::GenericPoints, Task::Multiset(a)) => {
            let kmax = saturation_zdeg(a);
            for preset in ["integers", "symmetric", "skew"] {
                let t = point_preset(preset, a.len()).unwrap();
                let q = quotient_char(&gens_ja_t(a, &t)?, kmax)?;
                if q.total() != mass(a) {
                    fail.push(format!("T={preset}: mass {} != {}", q.total(), mass(a)));
                }
            }
            Ok(zdeg_ambient(a.len(), kmax))
        }
        (Suite::ThreeRoutes, Task::Multiset(a)) => {
            let kmax = saturation_zdeg(a);
            let rec = char_recurrence(a);
            let closed = char_closed_form(&BProfile::from_multiset(a)?);
            let quot = quotient_char(&gens_ja_limit::<Rat>(a)?, kmax)?;
            let dual = dual_char_limit::<Rat>(a, kmax);
            if closed != rec {
                fail.push(format!("closed form {closed} != recurrence {rec}"));
            }
            if quot.bigraded() != Some(&rec) {
                fail.push(format!("quotient {quot:?} != recurrence {rec}"));
            }
            if dual != rec {
                fail.push(format!("dual {dual} != recurrence {rec}"));
            }
            Ok(zdeg_ambient(a.len(), kmax))
        }
        (Suite::FusionQuotient, Task::Multiset(a)) => {
            let mut chars = Vec::new();
            let mut comp = 0;
            for preset in PRESETS {
                let z = point_preset(preset, a.len()).unwrap();
                let rep = verify_fusion_quotient(a, &z)?;
                comp = comp.max(rep.max_component);
                fail.extend(rep.mismatches.iter().map(|m| format!("Z={preset}: {m}")));
                if rep.fusion.total() != mass(a) {
                    fail.push(format!("Z={preset}: mass {} != {}", rep.fusion.total(), mass(a)));
                }
                chars.push(rep.fusion);
            }
            if chars.windows(2).any(|w| w[0] != w[1]) {
                fail.push("fusion character depends on Z".into());
            }
            Ok(comp)
        }
        (Suite::Mirror, Task::Multiset(a)) => {
            let kmax = saturation_zdeg(a);
            let n = a.len() as u32;
            let origin = quotient_char(&build_i0::<Rat>(a)?, kmax)?;
            let limit = quotient_char(&gens_ja_limit::<Rat>(a)?, kmax)?;
            match (origin.bigraded(), limit.bigraded()) {
                (Some(o), Some(l)) if *o == l.mirror(n) => {}
                _ => fail.push(format!("{origin:?} is not the mirror of {limit:?}")),
            }
            Ok(zdeg_ambient(a.len(), kmax))
        }
        (Suite::CurrentPowers, &Task::CurrentPowers { k, n, smax }) => current_powers(k, n, smax, fail),
        (Suite::Gordon, &Task::Gordon { k, n, smax }) => {
            let a = vec![k; n as usize];
            let kmax = n;
            let rec = char_recurrence(&a).window(kmax, smax);
            let spec = gens_ja_limit_window::<Rat>(&a, kmax, smax)?;
            let quot = quotient_char_window(&spec, kmax, smax)?;
            let gordon = gordon_truncated(k, kmax, smax)?;
            if rec != gordon {
                fail.push(format!("recurrence {rec} != Gordon {gordon}"));
            }
            if quot != gordon {
                fail.push(format!("quotient {quot} != Gordon {gordon}"));
            }
            let top = (0..=smax).map(|s| monomial_basis(n as usize, Bidegree::new(kmax, s)).len()).sum();
            Ok(top)
        }
        (Suite::Flow, Task::Flow { a, preset }) => flow(a, preset, fail),
        (Suite::Rho, &Task::Rho { n, preset }) => {
            let z = point_preset(preset, n as usize).unwrap();
            for l in 0..n {
                let v = rho_check(&z, l)?;
                let want = if l + 1 == n { Rat::from_int(1) } else { Rat::from_int(0) };
                if v != want {
                    fail.push(format!("rho({l}) = {v}, expected {want}"));
                }
            }
            Ok(n as usize)
        }
        (Suite::QBinomial, &Task::QBinomial { m }) => {
            for k in 0..=m {
                let b = qbinomial(m, k);
                if b != qbinomial(m, m - k) {
                    fail.push(format!("[{m} choose {k}] not symmetric"));
                }
                if m > 0 && k > 0 && k < m {
                    // [m,k] = [m-1,k-1] + q^k [m-1,k] = q^{m-k} [m-1,k-1] + [m-1,k]
                    let left = qbinomial(m - 1, k - 1).add(&qbinomial(m - 1, k).shift(k));
                    let right = qbinomial(m - 1, k - 1).shift(m - k).add(&qbinomial(m - 1, k));
                    if b != left || b != right {
                        fail.push(format!("q-Pascal fails at [{m} choose {k}]"));
                    }
                }
                // specializing q = 1 gives the ordinary binomial
                let ones: i64 = b.coeffs().iter().sum();
                if ones as u128 != binom_u128(m, k) {
                    fail.push(format!("[{m} choose {k}] at q=1 is {ones}"));
                }
            }
            Ok(m as usize + 1)
        }
        (Suite::FunctionalModel, Task::Functional { a, pairing }) => functional(a, *pairing, fail),
        _ => unreachable!("job built for another suite"),
    }
}

fn binom_u128(m: u32, k: u32) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (m as u128 - i) / (i + 1);
    }
    acc
}

/// Components of `J^{(k,...,k)}` over `e_0..e_{n-1}` against the ideal of all
/// coefficients of `e(z)^k` over `e_0..e_smax`, cut down to the monomials in
/// `e_0..e_{n-1}`.
fn current_powers(k: u32, n: u32, smax: u32, fail: &mut Failures) -> TaskResult {
    let a = vec![k; n as usize];
    let m = smax as usize + 1;
    let stable = gens_jk_window::<Rat>(k, m, smax)?;
    let finite = gens_ja_limit::<Rat>(&a)?;
    let mut big = Components::new(&stable)?;
    let mut small = Components::new(&finite)?;
    let top = n * (k.saturating_sub(1)) + 1;
    let mut comp = 0;
    for zdeg in 0..=top.max(k) {
        for s in 0..=smax.min(zdeg * n.saturating_sub(1)) {
            let d = Bidegree::new(zdeg, s);
            let wide = big.component(d)?;
            let narrow = small.component(d)?;
            comp = comp.max(wide.monomials.len());
            // coordinates of the wide basis that only use e_0..e_{n-1}
            let keep: Vec<usize> = wide
                .monomials
                .iter()
                .enumerate()
                .filter(|(_, mu)| mu.exponents()[n as usize..].iter().all(|&x| x == 0))
                .map(|(i, _)| i)
                .collect();
            let coord = Subspace::span_of(
                wide.monomials.len(),
                keep.iter().map(|&i| {
                    let mut v = vec![Rat::from_int(0); wide.monomials.len()];
                    v[i] = Rat::from_int(1);
                    v
                }),
            );
            let cut = wide.space.intersect(&coord);
            let restricted = Subspace::span_of(
                keep.len(),
                cut.basis().iter().map(|row| keep.iter().map(|&i| row[i].clone()).collect()),
            );
            // the narrow basis widened to m variables, in the same order as `keep`
            let widened: Vec<_> = narrow.monomials.iter().map(|mu| mu.widen(m)).collect();
            let kept: Vec<_> = keep.iter().map(|&i| wide.monomials[i].clone()).collect();
            if widened != kept {
                fail.push(format!("monomial order mismatch at {d}"));
                continue;
            }
            if restricted != narrow.space {
                fail.push(format!(
                    "component {d}: stable ideal cut to n variables has dim {}, finite ideal {}",
                    restricted.dim(),
                    narrow.space.dim()
                ));
            }
        }
    }
    Ok(comp)
}

fn flow(a: &[u32], preset: &str, fail: &mut Failures) -> TaskResult {
    let z = point_preset(preset, a.len()).unwrap();
    let g = gens_iz(a, &z)?;
    let kmax = saturation_zdeg(a);
    let mut comp = 0;
    for t in [Rat::from_int(2), Rat::new(1.into(), 3.into())] {
        let moved: Vec<Rat> = z.iter().map(|x| x / &t).collect();
        let target = gens_iz(a, &moved)?;
        let flowed = st_flow(&g, &t)?;
        let mut lhs = Components::new(&flowed)?;
        let mut rhs = Components::new(&target)?;
        for k in 0..=kmax {
            let (l, r) = (lhs.z_component(k)?, rhs.z_component(k)?);
            comp = comp.max(l.monomials.len());
            if l.space != r.space {
                fail.push(format!("t={t}: flowed component at z-degree {k} differs"));
            }
        }
    }
    let origin = build_i0::<Rat>(a)?;
    let mut i0 = Components::new(&origin)?;
    for c in up_ideal(&g, kmax)? {
        if c.space != i0.component(c.bidegree)?.space {
            fail.push(format!("up-ideal differs from I(0) at {}", c.bidegree));
        }
    }
    Ok(comp)
}

fn functional(a: &[u32], pairing: bool, fail: &mut Failures) -> TaskResult {
    let n = a.len();
    let cap = default_cap(a);
    let want = mass(a);
    let generic = point_preset("skew", n).unwrap();
    let mut coincident = point_preset("integers", n).unwrap();
    if n >= 2 {
        coincident[1] = coincident[0].clone();
    }
    let zero = vec![Rat::from_int(0); n];
    for (name, t) in [("generic", &generic), ("coincident", &coincident), ("zero", &zero)] {
        let m = mt_character(a, t, cap)?;
        if m.total() != want {
            fail.push(format!("T {name}: dim M(T) = {} != {want}", m.total()));
        }
        if let Some(graded) = &m.graded {
            let fusion = fusion_character(a, &generic)?;
            if *graded != fusion {
                fail.push(format!("graded M(0) {graded} != fusion {fusion}"));
            }
        }
    }
    let fc = fc_truncated::<Rat>(a, cap)?;
    let comp = (0..=fc.max_weight())
        .filter_map(|w| fc.component(cap, w))
        .map(|c| c.columns.len())
        .max()
        .unwrap_or(0);
    if n == 2 {
        let pair = [a[0], a[1]];
        for d in 0..=cap {
            if fc.dim(d) != free_hilbert_n2(pair, d) {
                fail.push(format!("dim F^c_{d} = {} != {}", fc.dim(d), free_hilbert_n2(pair, d)));
            }
        }
    }
    if pairing {
        let t = [Rat::from_int(1), Rat::from_int(-1)];
        let rep = pairing_check_n2(a, &t, cap)?;
        if !rep.passed() {
            fail.push(format!("Gram rank {} != {}", rep.gram_rank, rep.expected_rank));
        }
    }
    Ok(comp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        assert_eq!(point_preset("integers", 3).unwrap(), vec![Rat::from_int(1), Rat::from_int(2), Rat::from_int(3)]);
        let s = point_preset("symmetric", 4).unwrap();
        assert_eq!(s, [1, -1, 2, -2].map(Rat::from_int).to_vec());
        assert!(point_preset("nope", 2).is_none());
    }

    #[test]
    fn small_suites_pass() {
        let b = Bounds { max_sum: Some(4), ..Bounds::default() };
        for suite in [Suite::DimensionLaw, Suite::ThreeRoutes, Suite::Mirror, Suite::Flow, Suite::FusionQuotient] {
            let rep = run_suite(suite, &b);
            assert!(rep.passed(), "{suite}: {:?}", rep.failures);
            assert!(rep.instances > 0);
        }
        let rep = run_suite(Suite::CurrentPowers, &Bounds { k: Some(2), n: Some(3), smax: Some(4), max_sum: None });
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn failures_are_reported() {
        let checks = vec![
            Check { label: "x".into(), component: 3, failures: vec![] },
            Check { label: "y".into(), component: 5, failures: vec!["bad".into()] },
        ];
        let rep = SuiteReport::from_checks(Suite::Rho, checks);
        assert!(!rep.passed());
        assert_eq!(rep.max_component, 5);
        assert_eq!(rep.failures, vec!["y: bad".to_string()]);
    }
}
