//! End-to-end acceptance sweeps. Prints one PASS/FAIL line per criterion;
//! runs without the libtest harness so the lines are never captured.

use std::time::Instant;

use sl2_fusion::verify::{run_suite, Bounds, Suite, SuiteReport};

struct Criterion {
    id: u32,
    title: &'static str,
    suite: Suite,
    bounds: Bounds,
}

fn criteria() -> Vec<Criterion> {
    let sum = |s| Bounds { max_sum: Some(s), ..Bounds::default() };
    vec![
        Criterion { id: 1, title: "dimension law, sum a <= 8", suite: Suite::DimensionLaw, bounds: sum(8) },
        Criterion { id: 2, title: "recurrence = closed form = quotient = dual, sum a <= 7", suite: Suite::ThreeRoutes, bounds: sum(7) },
        Criterion { id: 3, title: "fusion module = C[e]/I(0), three point sets, sum a <= 8", suite: Suite::FusionQuotient, bounds: sum(8) },
        Criterion { id: 4, title: "I(0) character mirrors J^A, sum a <= 8", suite: Suite::Mirror, bounds: sum(8) },
        Criterion {
            id: 5,
            title: "J^(k..k) from coefficients of e(z)^k, k <= 3, n <= 4, qdeg <= 6",
            suite: Suite::CurrentPowers,
            bounds: Bounds { smax: Some(6), ..Bounds::default() },
        },
        Criterion { id: 6, title: "S_t flow and up-ideal of I(Z), sum a <= 6", suite: Suite::Flow, bounds: sum(6) },
        Criterion {
            id: 7,
            title: "Gordon window, k = 2, 3, n = 10, qdeg <= 4",
            suite: Suite::Gordon,
            bounds: Bounds { n: Some(10), smax: Some(4), ..Bounds::default() },
        },
        Criterion { id: 8, title: "functional model: M(T), freeness, pairing", suite: Suite::FunctionalModel, bounds: Bounds::default() },
        Criterion { id: 9, title: "rho identities, n <= 6", suite: Suite::Rho, bounds: Bounds { n: Some(6), ..Bounds::default() } },
        Criterion { id: 10, title: "q-binomial laws, m <= 12", suite: Suite::QBinomial, bounds: Bounds { n: Some(12), ..Bounds::default() } },
    ]
}

fn main() {
    let list = criteria();
    let results: Vec<(SuiteReport, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = list
            .iter()
            .map(|c| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let rep = run_suite(c.suite, &c.bounds);
                    (rep, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut failed = Vec::new();
    for (c, (rep, secs)) in list.iter().zip(&results) {
        let verdict = if rep.passed() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {:>2}: {} ({} instances, max component {}, {secs:.2}s)",
            c.id, c.title, rep.instances, rep.max_component
        );
        for f in rep.failures.iter().take(5) {
            println!("    {f}");
        }
        if !rep.passed() {
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
