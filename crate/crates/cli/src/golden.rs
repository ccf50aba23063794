use std::fs;
use std::path::Path;

use clap::Parser;
use serde_json::json;

use crate::args::Cli;
use crate::report::{execute, pretty, CliError, Output};

/// Canonical invocations: (file name, arguments after the binary name).
pub const CANONICAL: &[(&str, &[&str])] = &[
    ("char_recurrence_2-2.json", &["char", "--route", "recurrence", "--A", "2,2"]),
    ("char_recurrence_1-2-3.json", &["char", "--route", "recurrence", "--A", "1,2,3"]),
    ("char_recurrence_2-2.tsv", &["char", "--route", "recurrence", "--A", "2,2", "--format", "tsv"]),
    ("char_closed_2-2.json", &["char", "--route", "closed", "--A", "2,2"]),
    ("char_gordon_k2.json", &["char", "--route", "gordon", "--k", "2", "--zmax", "3", "--smax", "9"]),
    ("char_quotient_I0_1-2.json", &["char", "--route", "quotient", "--family", "I0", "--A", "1,2"]),
    ("char_quotient_JA_2-2.json", &["char", "--route", "quotient", "--family", "JA", "--A", "2,2"]),
    (
        "char_quotient_IZ_2-2.json",
        &["char", "--route", "quotient", "--family", "IZ", "--A", "2,2", "--Z", "preset:integers"],
    ),
    (
        "char_quotient_JAT_1-2.json",
        &["char", "--route", "quotient", "--family", "JAT", "--A", "1,2", "--T", "preset:symmetric"],
    ),
    ("char_dual_2-3.json", &["char", "--route", "dual", "--A", "2,3"]),
    ("char_fusion_2-2.json", &["char", "--route", "fusion", "--A", "2,2", "--Z", "1,-1"]),
    ("char_funcmodel_2-2.json", &["char", "--route", "funcmodel", "--A", "2,2", "--T", "0,0"]),
    ("fusion_1-2-2.json", &["fusion", "--A", "1,2,2"]),
    ("funcmodel_2-3.json", &["funcmodel", "--A", "2,3", "--cap", "8"]),
    ("funcmodel_2-2_t.json", &["funcmodel", "--A", "2,2", "--T", "1,-1"]),
    ("ideal_I0_2-2.txt", &["ideal", "--family", "I0", "--A", "2,2"]),
    ("verify_dual.json", &["verify", "--suite", "dual", "--max-sum", "4"]),
    ("verify_gordon.json", &["verify", "--suite", "gordon", "--k", "2", "--smax", "4"]),
];

/// Run one canonical invocation in-process.
pub fn run_canonical(args: &[&str]) -> Result<Output, CliError> {
    let cli = Cli::try_parse_from(std::iter::once("sl2fusion").chain(args.iter().copied()))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    execute(&cli.command)
}

pub fn write_all(out: &Path) -> Result<Output, CliError> {
    let io = |e: std::io::Error| CliError::Internal(format!("{}: {e}", out.display()));
    fs::create_dir_all(out).map_err(io)?;
    let mut manifest = Vec::new();
    for (file, args) in CANONICAL {
        let res = run_canonical(args)?;
        fs::write(out.join(file), &res.stdout).map_err(io)?;
        manifest.push(json!({ "file": file, "args": args, "exit": res.code }));
    }
    fs::write(out.join("manifest.json"), pretty(&json!(manifest))).map_err(io)?;
    Ok(Output { stdout: format!("wrote {} files to {}\n", CANONICAL.len(), out.display()), code: 0 })
}
