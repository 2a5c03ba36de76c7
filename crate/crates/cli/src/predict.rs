use clap::Args;
use serde::Serialize;

use deodhar_core::bruteforce::torus::torus_order;
use deodhar_core::deodhar::ReducedWord;
use deodhar_core::root_weyl::Family;
use deodhar_core::twist::{orbit_data, theorem_table, GammaRow, RegularCharacter, TheoremRow, TheoremTable, TwistData};

use crate::render::{self, join};
use crate::{CliError, Format, SystemArgs};

#[derive(Args, Debug)]
pub struct PredictArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Reduced word for w ("e" or "" for the identity).
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    /// Split Frobenius (the default).
    #[arg(long, conflicts_with = "twist")]
    split: bool,
    /// Diagram automorphism as the images of s, t, ... written as a word, e.g. "ts".
    #[arg(long)]
    twist: Option<String>,
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// "regular-default" or one multiplier per orbit, comma separated (0 = trivial).
    #[arg(long, default_value = "regular-default")]
    character: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    #[serde(rename = "type")]
    type_label: String,
    twist: String,
    q: u64,
    character: RegularCharacter,
    #[serde(flatten)]
    table: TheoremTable,
    shift: Option<usize>,
    /// `|T^{wF}|`, for split type A only.
    torus_order: Option<u128>,
}

#[derive(Debug, Serialize)]
struct FlatRow<'a> {
    w: &'a str,
    x: &'a str,
    prediction: &'a str,
    witness_root: &'a str,
    gamma: &'a str,
    n_alpha: String,
    m_alpha: String,
    vanishes: Option<bool>,
    shift: Option<usize>,
}

fn orbit_counts(m: &std::collections::BTreeMap<String, usize>) -> String {
    join(m.iter().map(|(a, c)| format!("{a}:{c}")))
}

fn flat_row<'a>(r: &'a TheoremRow, g: Option<&'a GammaRow>) -> FlatRow<'a> {
    FlatRow {
        w: &r.w,
        x: &r.x,
        prediction: &r.prediction,
        witness_root: r.witness_root.as_deref().unwrap_or(""),
        gamma: g.map_or("", |g| g.gamma.as_str()),
        n_alpha: g.map(|g| orbit_counts(&g.n_alpha)).unwrap_or_default(),
        m_alpha: g.map(|g| orbit_counts(&g.m_alpha)).unwrap_or_default(),
        vanishes: g.map(|g| g.vanishes),
        shift: g.and_then(|g| g.shift),
    }
}

pub fn run(args: &PredictArgs) -> Result<u8, CliError> {
    let rs = args.system.system()?;
    let word = ReducedWord::parse(rs, &args.word)?;
    let w = word.target();
    let twist = match &args.twist {
        Some(text) => TwistData::diagram(rs, rs.parse_word(text)?, args.q)?,
        None => TwistData::split(rs, args.q)?,
    };
    let od = orbit_data(&twist);
    let character = if args.character == "regular-default" {
        RegularCharacter::regular_default(&od)
    } else {
        let multipliers = args
            .character
            .split(',')
            .map(|c| c.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Config(format!("bad --character {:?}: {e}", args.character)))?;
        RegularCharacter::from_multipliers(&od, &multipliers)?
    };
    let table = theorem_table(&w, &word, &od, &character)?;
    let torus = if twist.is_split() && rs.cartan_type().family == Family::A {
        Some(torus_order(&w, args.q)?)
    } else {
        None
    };
    let report = Report {
        schema_version: crate::decompose::SCHEMA_VERSION,
        type_label: rs.cartan_type().to_string(),
        twist: if twist.is_split() { "split".into() } else { format!("diagram {}", join(twist.phi())) },
        q: args.q,
        character,
        shift: table.survivor.as_ref().map(|s| s.1),
        table,
        torus_order: torus,
    };
    match args.format {
        Format::Json => render::json(&report)?,
        Format::Csv => {
            let mut rows = Vec::new();
            for r in &report.table.rows {
                match &r.gamma_table {
                    None => rows.push(flat_row(r, None)),
                    Some(gammas) => rows.extend(gammas.iter().map(|g| flat_row(r, Some(g)))),
                }
            }
            render::csv(&rows)?;
        }
        Format::Table => print_table(&report),
    }
    Ok(0)
}

fn print_table(report: &Report) {
    let t = &report.table;
    println!("{} w = {} (word {}), {}, q = {}", report.type_label, t.w, t.word, report.twist, report.q);
    let outer: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|r| vec![r.x.clone(), r.prediction.clone(), r.witness_root.clone().unwrap_or_default()])
        .collect();
    print!("{}", render::table(&["x", "prediction", "witness root"], &outer));
    for r in &t.rows {
        let Some(gammas) = &r.gamma_table else { continue };
        println!("\nx = {}: pieces Y_gamma, gamma in Gamma_1", r.x);
        let inner: Vec<Vec<String>> = gammas
            .iter()
            .map(|g| {
                vec![
                    g.gamma.clone(),
                    orbit_counts(&g.n_alpha),
                    orbit_counts(&g.m_alpha),
                    if g.vanishes { "vanishes".into() } else { format!("survives, shift {}", g.shift.unwrap_or(0)) },
                ]
            })
            .collect();
        print!("{}", render::table(&["gamma", "n_alpha", "m_alpha", "e_psi part"], &inner));
    }
    println!();
    match &t.survivor {
        Some((bits, shift)) => println!("survivor: x = w0, gamma bits {bits} (1 = letter taken), shift {shift}"),
        None => println!("survivor: none"),
    }
    if let Some(order) = report.torus_order {
        println!("torus order |T^wF| = {order}");
    }
}
