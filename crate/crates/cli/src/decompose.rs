use clap::Args;
use serde::Serialize;

use deodhar_core::deodhar::{distinguished_by_endpoint, filtration, ReducedWord};
use deodhar_core::pointcount::cell_count_poly;
use deodhar_core::root_weyl::WeylElement;

use crate::render::{self, join};
use crate::{CliError, Format, SystemArgs};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Reduced word over s, t, u, v ("e" or "" for the empty word).
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    /// Endpoint v of the subexpressions.
    #[arg(long, conflicts_with = "all_v", required_unless_present = "all_v")]
    v: Option<String>,
    /// Every endpoint v <= w, by length and then word.
    #[arg(long)]
    all_v: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Serialize)]
struct Row {
    v: String,
    filtration_index: usize,
    gamma: String,
    bits: String,
    #[serde(rename = "I")]
    i_set: String,
    #[serde(rename = "J")]
    j_set: String,
    distinguished: bool,
    n: usize,
    m: usize,
    shape: String,
    cell_polynomial: String,
    /// Filtration indices of the other cells strictly below this one.
    below: String,
    source: &'static str,
}

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    #[serde(rename = "type")]
    type_label: String,
    word: String,
    w: String,
    rows: Vec<Row>,
}

fn sorted_endpoints(word: &ReducedWord) -> Vec<WeylElement> {
    let mut vs: Vec<WeylElement> = distinguished_by_endpoint(word).into_keys().collect();
    vs.sort_by_key(|v| (v.length(), v.canonical_word()));
    vs
}

fn rows_for(word: &ReducedWord, v: &WeylElement) -> Result<Vec<Row>, CliError> {
    let order = filtration(word, v)?;
    let cells = order.elements();
    cells
        .iter()
        .enumerate()
        .map(|(i, gamma)| {
            let shape = gamma.cell_shape()?;
            let mut below = Vec::new();
            for (j, delta) in cells.iter().enumerate() {
                if j != i && delta.preceq(gamma)? {
                    below.push(j);
                }
            }
            Ok(Row {
                v: v.to_string(),
                filtration_index: i,
                gamma: gamma.to_string(),
                bits: gamma.bit_string(),
                i_set: join(gamma.i_set()),
                j_set: join(gamma.j_set()),
                distinguished: gamma.is_distinguished(),
                n: shape.n_affine,
                m: shape.m_torus,
                shape: shape.to_string(),
                cell_polynomial: cell_count_poly(shape).to_string(),
                below: join(below),
                source: "filtration / cell_shape / preceq",
            })
        })
        .collect()
}

pub fn run(args: &DecomposeArgs) -> Result<u8, CliError> {
    let rs = args.system.system()?;
    let word = ReducedWord::parse(rs, &args.word)?;
    let w = word.target();
    let endpoints = match &args.v {
        Some(text) => {
            let v = rs.parse_element(text)?;
            if !v.bruhat_leq(&w) {
                eprintln!("warning: v = {v} is not below w = {w}; no cells");
                vec![]
            } else {
                vec![v]
            }
        }
        None => sorted_endpoints(&word),
    };
    let mut rows = Vec::new();
    for v in &endpoints {
        rows.extend(rows_for(&word, v)?);
    }
    let report = Report {
        schema_version: SCHEMA_VERSION,
        type_label: rs.cartan_type().to_string(),
        word: word.to_string(),
        w: w.to_string(),
        rows,
    };
    match args.format {
        Format::Json => render::json(&report)?,
        Format::Csv => render::csv(&report.rows)?,
        Format::Table => {
            println!("{} word {} (w = {}), {} cells", report.type_label, report.word, report.w, report.rows.len());
            let headers = ["v", "#", "gamma", "I", "J", "shape", "points", "below"];
            let body: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.v.clone(),
                        r.filtration_index.to_string(),
                        r.gamma.clone(),
                        format!("{{{}}}", r.i_set),
                        format!("{{{}}}", r.j_set),
                        r.shape.clone(),
                        r.cell_polynomial.clone(),
                        r.below.clone(),
                    ]
                })
                .collect();
            print!("{}", render::table(&headers, &body));
        }
    }
    Ok(0)
}
