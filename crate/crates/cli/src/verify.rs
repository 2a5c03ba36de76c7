use clap::{Args, ValueEnum};
use serde::Serialize;

use deodhar_core::root_weyl::{CartanType, Family};
use deodhar_core::suites::{
    verify_deodhar_vs_rpoly, verify_e_psi, verify_flags, verify_gl3_example, verify_vanishing, verify_xq_models,
    SuiteReport,
};

use crate::render;
use crate::{CliError, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    DeodharVsRpoly,
    Flags,
    Gl3Example,
    Vanishing,
    XqModels,
    EPsi,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Cartan type for deodhar-vs-rpoly.
    #[arg(long = "type", value_name = "TYPE")]
    type_label: Option<char>,
    #[arg(long)]
    rank: Option<usize>,
    /// Largest rank swept by the vanishing suite.
    #[arg(long, default_value_t = 3)]
    max_rank: usize,
    /// GL_n for the flags suite.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Field size; repeat for several brute-force passes in deodhar-vs-rpoly.
    #[arg(long)]
    q: Vec<u64>,
    /// Extension degree for gl3-example.
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Largest q^k swept by xq-models.
    #[arg(long, default_value_t = 64)]
    max_order: u64,
    /// Largest n + m swept by xq-models.
    #[arg(long, default_value_t = 3)]
    max_vars: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Serialize)]
struct FlatRow<'a> {
    suite: &'a str,
    test: &'a str,
    parameters: String,
    lhs: &'a str,
    rhs: &'a str,
    #[serde(rename = "match")]
    matches: bool,
    source: &'a str,
}

fn single_q(args: &VerifyArgs) -> Result<u64, CliError> {
    match args.q.as_slice() {
        [] => Ok(2),
        [q] => Ok(*q),
        _ => Err(CliError::Config("this suite takes a single --q".into())),
    }
}

fn run_suite(args: &VerifyArgs) -> Result<SuiteReport, CliError> {
    Ok(match args.suite {
        Suite::DeodharVsRpoly => {
            let (Some(t), Some(r)) = (args.type_label, args.rank) else {
                return Err(CliError::Config("deodhar-vs-rpoly needs --type and --rank".into()));
            };
            let family = Family::from_char(t.to_ascii_uppercase())
                .ok_or_else(|| CliError::Config(format!("unknown Cartan type {t:?}")))?;
            verify_deodhar_vs_rpoly(CartanType::new(family, r)?, &args.q)?
        }
        Suite::Flags => verify_flags(args.n, single_q(args)?)?,
        Suite::Gl3Example => verify_gl3_example(single_q(args)?, args.k)?,
        Suite::Vanishing => verify_vanishing(args.max_rank)?,
        Suite::XqModels => verify_xq_models(args.max_order, args.max_vars)?,
        Suite::EPsi => verify_e_psi()?,
    })
}

fn params(row: &deodhar_core::suites::CheckRow) -> String {
    row.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

pub fn run(args: &VerifyArgs) -> Result<u8, CliError> {
    let report = run_suite(args)?;
    let failures = report.failures().count();
    let status = if failures > 0 {
        "FAIL"
    } else if report.budget_exceeded.is_some() {
        "BUDGET"
    } else {
        "PASS"
    };
    match args.format {
        Format::Json => render::json(&report)?,
        Format::Csv => {
            let rows: Vec<FlatRow> = report
                .rows
                .iter()
                .map(|r| FlatRow {
                    suite: &report.suite,
                    test: &r.test,
                    parameters: params(r),
                    lhs: &r.lhs,
                    rhs: &r.rhs,
                    matches: r.matches,
                    source: &r.source,
                })
                .collect();
            render::csv(&rows)?;
        }
        Format::Table => {
            let body: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        if r.matches { "ok" } else { "MISMATCH" }.to_string(),
                        r.test.clone(),
                        params(r),
                        r.lhs.clone(),
                        r.rhs.clone(),
                    ]
                })
                .collect();
            print!("{}", render::table(&["", "test", "parameters", "lhs", "rhs"], &body));
            println!("{}: {status} ({} comparisons, {failures} mismatches)", report.suite, report.rows.len());
        }
    }
    if let Some(b) = &report.budget_exceeded {
        eprintln!("budget exceeded: {b}; report is partial");
    }
    Ok(match status {
        "FAIL" => 1,
        "BUDGET" => 3,
        _ => 0,
    })
}
