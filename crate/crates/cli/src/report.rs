use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use sl2_fusion::dualmodel::{dual_char_limit, dual_dimension_at_t};
use sl2_fusion::funcmodel::{default_cap, fc_truncated, free_hilbert_n2, mt_character, pairing_check_n2, FuncError};
use sl2_fusion::fusion::{fusion_character, verify_fusion_quotient, FusionError};
use sl2_fusion::ideals::{
    build_i0, gens_iz, gens_ja_limit, gens_ja_t, ideal_at_point, quotient_char, saturation_zdeg, IdealError, IdealSpec,
    QuotientChar,
};
use sl2_fusion::qchar::{char_closed_form, char_recurrence, gordon_truncated, BProfile};
use sl2_fusion::scalar::parse_rat_list;
use sl2_fusion::verify::{self, point_preset, Bounds, Check, Suite, SuiteReport};
use sl2_fusion::{CharTable, Rat};

use crate::args::{CharArgs, Command, Family, Format, FuncArgs, FusionArgs, IdealArgs, Route, SuiteName, VerifyArgs};
use crate::golden;

/// What a command prints and the exit status it asks for.
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad or missing parameters.
    Usage(String),
    /// A construction failed an internal consistency check.
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::NotFinite(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FusionError> for CliError {
    fn from(e: FusionError) -> Self {
        match e {
            FusionError::Ideal(i) => i.into(),
            FusionError::Points(p) => CliError::Usage(p.to_string()),
        }
    }
}

impl From<FuncError> for CliError {
    fn from(e: FuncError) -> Self {
        match e {
            FuncError::NotStabilized { .. } | FuncError::Poly(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_multiset(s: &str) -> Result<Vec<u32>> {
    let parts: std::result::Result<Vec<u32>, _> = s.split(',').map(|x| x.trim().parse::<u32>()).collect();
    let a = parts.map_err(|e| usage(format!("bad multiset `{s}`: {e}")))?;
    if a.contains(&0) {
        return Err(usage(format!("multiset `{s}` has a zero entry")));
    }
    Ok(a)
}

/// Comma list of rationals, or `preset:NAME` expanded to length `n`.
pub fn parse_points(s: &str, n: usize) -> Result<Vec<Rat>> {
    let pts = match s.strip_prefix("preset:") {
        Some(name) => point_preset(name, n).ok_or_else(|| usage(format!("unknown preset `{name}`")))?,
        None => parse_rat_list(s).map_err(|e| usage(e.to_string()))?,
    };
    if pts.len() != n {
        return Err(usage(format!("expected {n} points, got {}", pts.len())));
    }
    Ok(pts)
}

fn sorted(a: &[u32]) -> Vec<u32> {
    let mut v = a.to_vec();
    v.sort_unstable();
    v
}

fn mass(a: &[u32]) -> u64 {
    a.iter().map(|&x| x as u64).product()
}

fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

/// A character: bigraded where the grading exists, else per z-degree.
pub enum Table {
    Bigraded(CharTable),
    ZGraded(Vec<u64>),
}

impl Table {
    fn total(&self) -> u64 {
        match self {
            Table::Bigraded(t) => t.total(),
            Table::ZGraded(v) => v.iter().sum(),
        }
    }

    fn zdims(&self) -> Vec<u64> {
        let mut v = match self {
            Table::Bigraded(t) => t.zdims(),
            Table::ZGraded(v) => v.clone(),
        };
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn to_tsv(&self) -> String {
        match self {
            Table::Bigraded(t) => t.to_tsv(),
            Table::ZGraded(v) => {
                let mut out = String::from("k\tdim\n");
                for (k, d) in v.iter().enumerate() {
                    if *d != 0 {
                        out.push_str(&format!("{k}\t{d}\n"));
                    }
                }
                out
            }
        }
    }
}

impl From<QuotientChar> for Table {
    fn from(q: QuotientChar) -> Self {
        match q {
            QuotientChar::Bigraded(t) => Table::Bigraded(t),
            QuotientChar::ZGraded(v) => Table::ZGraded(v),
        }
    }
}

fn char_json(route: &str, params: Map<String, Value>, table: &Table) -> Map<String, Value> {
    let (grading, entries) = match table {
        Table::Bigraded(t) => ("zq", t.triples().map(|(k, s, d)| json!([k, s, d])).collect()),
        Table::ZGraded(_) => ("z", Vec::new()),
    };
    let mut m = Map::new();
    m.insert("route".into(), json!(route));
    m.insert("params".into(), Value::Object(params));
    m.insert("grading".into(), json!(grading));
    m.insert("entries".into(), Value::Array(entries));
    m.insert("zdims".into(), json!(table.zdims()));
    m.insert("total".into(), json!(table.total()));
    m
}

fn render(obj: Map<String, Value>, table: &Table, format: Format) -> String {
    match format {
        Format::Json => pretty(&Value::Object(obj)),
        Format::Tsv => table.to_tsv(),
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Char(a) => cmd_char(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Fusion(a) => cmd_fusion(a),
        Command::Funcmodel(a) => cmd_funcmodel(a),
        Command::Ideal(a) => cmd_ideal(a),
        Command::Golden(a) => golden::write_all(&a.out),
    }
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| usage(format!("--{flag} is required for this route")))
}

fn cmd_char(args: &CharArgs) -> Result<Output> {
    let mut params = Map::new();
    let multiset = |params: &mut Map<String, Value>| -> Result<Vec<u32>> {
        let a = parse_multiset(require(&args.a, "A")?)?;
        params.insert("A".into(), json!(a));
        Ok(a)
    };
    let (route, table) = match args.route {
        Route::Recurrence => {
            let a = multiset(&mut params)?;
            ("recurrence", Table::Bigraded(char_recurrence(&sorted(&a))))
        }
        Route::Closed => {
            let profile = match (&args.b, &args.a) {
                (Some(b), _) => {
                    let counts: std::result::Result<Vec<u32>, _> = b.split(',').map(|x| x.trim().parse()).collect();
                    let counts = counts.map_err(|e| usage(format!("bad profile `{b}`: {e}")))?;
                    params.insert("b".into(), json!(counts));
                    BProfile::new(counts).map_err(|e| usage(e.to_string()))?
                }
                _ => BProfile::from_multiset(&multiset(&mut params)?).map_err(|e| usage(e.to_string()))?,
            };
            ("closed", Table::Bigraded(char_closed_form(&profile)))
        }
        Route::Gordon => {
            let k = args.k.ok_or_else(|| usage("--k is required for the gordon route"))?;
            let zmax = args.zmax.unwrap_or(4);
            let smax = args.smax.unwrap_or(4);
            params.insert("k".into(), json!(k));
            params.insert("zmax".into(), json!(zmax));
            params.insert("smax".into(), json!(smax));
            let t = gordon_truncated(k, zmax, smax).map_err(|e| usage(e.to_string()))?;
            ("gordon", Table::Bigraded(t))
        }
        Route::Quotient => {
            let family = args.family.ok_or_else(|| usage("--family is required for the quotient route"))?;
            let a = multiset(&mut params)?;
            let spec = build_family(family, &a, args.t.as_deref(), args.z.as_deref(), &mut params)?;
            let kmax = args.kmax.unwrap_or_else(|| saturation_zdeg(&a));
            params.insert("kmax".into(), json!(kmax));
            ("quotient", quotient_char(&spec, kmax)?.into())
        }
        Route::Dual => {
            let a = sorted(&multiset(&mut params)?);
            let kmax = args.kmax.unwrap_or_else(|| saturation_zdeg(&a));
            params.insert("kmax".into(), json!(kmax));
            let table = match &args.t {
                Some(t) => {
                    let t = parse_points(t, a.len())?;
                    params.insert("T".into(), rats(&t));
                    let dims = (0..=kmax as usize)
                        .map(|k| dual_dimension_at_t(&a, &t, k).map(|d| d as u64))
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|e| usage(e.to_string()))?;
                    Table::ZGraded(dims)
                }
                None => Table::Bigraded(dual_char_limit::<Rat>(&a, kmax)),
            };
            ("dual", table)
        }
        Route::Fusion => {
            let a = multiset(&mut params)?;
            let z = parse_points(args.z.as_deref().unwrap_or("preset:integers"), a.len())?;
            params.insert("Z".into(), rats(&z));
            let t = fusion_character(&a, &z)?;
            if t.total() != mass(&a) {
                return Err(CliError::Internal(format!("fusion mass {} != {}", t.total(), mass(&a))));
            }
            ("fusion", Table::Bigraded(t))
        }
        Route::Funcmodel => {
            let a = multiset(&mut params)?;
            let (obj, table, _) = funcmodel_report(&a, args.t.as_deref(), args.cap, params)?;
            return Ok(Output::ok(render(obj, &table, args.format)));
        }
    };
    if route != "quotient" && route != "gordon" && table.total() == 0 {
        return Err(CliError::Internal(format!("{route}: empty character")));
    }
    let obj = char_json(route, params, &table);
    Ok(Output::ok(render(obj, &table, args.format)))
}

fn build_family(
    family: Family,
    a: &[u32],
    t: Option<&str>,
    z: Option<&str>,
    params: &mut Map<String, Value>,
) -> Result<IdealSpec<Rat>> {
    let label = match family {
        Family::Ja => "JA",
        Family::Jat => "JAT",
        Family::I0 => "I0",
        Family::Iz => "IZ",
        Family::Ipt => "Ipt",
    };
    params.insert("family".into(), json!(label));
    let spec = match family {
        Family::Ja => gens_ja_limit(&sorted(a))?,
        Family::I0 => build_i0(&sorted(a))?,
        Family::Jat => {
            let t = parse_points(t.ok_or_else(|| usage("--T is required for JAT"))?, a.len())?;
            params.insert("T".into(), rats(&t));
            gens_ja_t(a, &t)?
        }
        Family::Iz | Family::Ipt => {
            let z = parse_points(z.ok_or_else(|| usage("--Z is required for this family"))?, a.len())?;
            params.insert("Z".into(), rats(&z));
            if family == Family::Iz {
                gens_iz(a, &z)?
            } else {
                ideal_at_point(a, &z)?
            }
        }
    };
    Ok(spec)
}

/// Character of `M(T)` plus the checks that accompany it; the flag says
/// whether every check passed.
fn funcmodel_report(
    a: &[u32],
    t: Option<&str>,
    cap: Option<u32>,
    mut params: Map<String, Value>,
) -> Result<(Map<String, Value>, Table, bool)> {
    let n = a.len();
    let t = match t {
        Some(t) => parse_points(t, n)?,
        None => vec![Rat::from_integer(0.into()); n],
    };
    let cap = cap.unwrap_or_else(|| default_cap(a));
    params.insert("T".into(), rats(&t));
    params.insert("cap".into(), json!(cap));
    let m = mt_character(a, &t, cap)?;
    let table = match &m.graded {
        Some(g) => Table::Bigraded(g.clone()),
        None => Table::ZGraded(m.weights.clone()),
    };
    let mut checks = Map::new();
    let mut ok = m.total() == mass(a);
    checks.insert("product".into(), json!(mass(a)));
    checks.insert("total_matches_product".into(), json!(m.total() == mass(a)));
    checks.insert("stable_through_cap".into(), json!(cap + 1));
    if let Some(g) = &m.graded {
        let generic = point_preset("skew", n).expect("preset exists");
        let matches = *g == fusion_character(a, &generic)?;
        ok &= matches;
        checks.insert("graded_matches_fusion".into(), json!(matches));
    }
    if n == 2 {
        let fc = fc_truncated::<Rat>(a, cap)?;
        let free = (0..=cap).all(|d| fc.dim(d) == free_hilbert_n2([a[0], a[1]], d));
        ok &= free;
        checks.insert("freeness".into(), json!(free));
        let distinct = t[0] != t[1];
        let pt = if distinct { t.clone() } else { vec![Rat::from_integer(1.into()), Rat::from_integer((-1).into())] };
        let rep = pairing_check_n2(a, &pt, cap)?;
        ok &= rep.passed();
        checks.insert(
            "pairing".into(),
            json!({
                "at": rats(&pt),
                "pairs_divided": rep.pairs_checked,
                "gram_rank": rep.gram_rank,
                "expected_rank": rep.expected_rank,
            }),
        );
    }
    let mut obj = char_json("funcmodel", params, &table);
    obj.insert("checks".into(), Value::Object(checks));
    obj.insert("passed".into(), json!(ok));
    Ok((obj, table, ok))
}

fn cmd_funcmodel(args: &FuncArgs) -> Result<Output> {
    let a = parse_multiset(&args.a)?;
    let mut params = Map::new();
    params.insert("A".into(), json!(a));
    let (obj, table, ok) = funcmodel_report(&a, args.t.as_deref(), args.cap, params)?;
    Ok(Output { stdout: render(obj, &table, args.format), code: if ok { 0 } else { 1 } })
}

fn cmd_fusion(args: &FusionArgs) -> Result<Output> {
    let a = parse_multiset(&args.a)?;
    let z = parse_points(&args.z, a.len())?;
    let rep = verify_fusion_quotient(&a, &z)?;
    let mut params = Map::new();
    params.insert("A".into(), json!(a));
    params.insert("Z".into(), rats(&z));
    let table = Table::Bigraded(rep.fusion.clone());
    let mut obj = char_json("fusion", params, &table);
    obj.insert("quotient_entries".into(), json!(rep.quotient.triples().map(|(k, s, d)| [k as u64, s as u64, d]).collect::<Vec<_>>()));
    obj.insert("bidegrees_checked".into(), json!(rep.bidegrees_checked));
    obj.insert("mismatches".into(), json!(rep.mismatches));
    obj.insert("verified".into(), json!(rep.passed()));
    let code = if rep.passed() { 0 } else { 1 };
    Ok(Output { stdout: render(obj, &table, args.format), code })
}

fn cmd_ideal(args: &IdealArgs) -> Result<Output> {
    let a = parse_multiset(&args.a)?;
    let mut params = Map::new();
    let spec = build_family(args.family, &a, args.t.as_deref(), args.z.as_deref(), &mut params)?;
    Ok(Output::ok(format!("# {}\n{}", spec.family(), spec.to_text())))
}

fn suites_of(name: SuiteName) -> Vec<Suite> {
    match name {
        SuiteName::All => Suite::ALL.to_vec(),
        SuiteName::Thm21 => vec![Suite::DimensionLaw, Suite::GenericPoints, Suite::Flow],
        SuiteName::Thm31 => vec![Suite::FusionQuotient],
        SuiteName::Thm41 => vec![Suite::FunctionalModel],
        SuiteName::Prop23 => vec![Suite::CurrentPowers],
        SuiteName::Prop24 => vec![Suite::Mirror],
        SuiteName::Gordon => vec![Suite::Gordon],
        SuiteName::Dual => vec![Suite::ThreeRoutes],
        SuiteName::Flow => vec![Suite::Flow],
        SuiteName::Rho => vec![Suite::Rho],
        SuiteName::Qbinomial => vec![Suite::QBinomial],
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<Output> {
    let bounds = Bounds { max_sum: args.max_sum, k: args.k, n: args.n, smax: args.smax };
    if bounds.max_sum == Some(0) || bounds.smax == Some(0) && args.suite == SuiteName::Gordon {
        return Err(usage("bounds must be positive"));
    }
    let suites = suites_of(args.suite);
    let jobs: Vec<_> = suites.iter().flat_map(|&s| verify::jobs(s, &bounds)).collect();
    // parallel map keeps the job order
    let checks: Vec<Check> = jobs.par_iter().map(verify::run).collect();
    let mut reports = Vec::new();
    let mut rest = checks.into_iter();
    for &s in &suites {
        let count = jobs.iter().filter(|j| j.suite == s).count();
        reports.push(SuiteReport::from_checks(s, rest.by_ref().take(count).collect()));
    }
    let passed = reports.iter().all(SuiteReport::passed);
    let name = clap::ValueEnum::to_possible_value(&args.suite).map(|v| json!(v.get_name()));
    let mut params = Map::new();
    for (key, v) in [("max_sum", args.max_sum), ("k", args.k), ("n", args.n), ("smax", args.smax)] {
        if let Some(v) = v {
            params.insert(key.into(), json!(v));
        }
    }
    let obj = json!({
        "suite": name.unwrap_or(Value::Null),
        "params": params,
        "passed": passed,
        "instances": reports.iter().map(|r| r.instances).sum::<usize>(),
        "max_component": reports.iter().map(|r| r.max_component).max().unwrap_or(0),
        "reports": reports,
    });
    Ok(Output { stdout: pretty(&obj), code: if passed { 0 } else { 1 } })
}
