//! Rendering of series and Betti tables as text, CSV or JSON.

use std::fmt::Write;

use clap::ValueEnum;
use serde_json::json;

use ruled_core::genfun::{BettiTable, GenSeries};
use ruled_core::{Scalar, TruncatedSeries};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

const EMPTY: &str = "empty (r does not divide f·c1)";

fn pretty(v: &serde_json::Value) -> Result<String, Failure> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Compute(e.to_string()))
}

fn header(g: &GenSeries) -> String {
    format!(
        "# g={} e={} curve={} rank={} c1={} polarization=f flag={} normalization={}\n",
        g.surface.genus(),
        g.surface.e(),
        g.curve.mode(),
        g.rank,
        g.c1,
        g.flag,
        g.normalization
    )
}

pub fn series(g: &GenSeries, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => pretty(&g.to_json_value()?),
        Format::Text => {
            let mut out = header(g);
            if g.divisibility_empty() {
                out.push_str(EMPTY);
            } else {
                write!(out, "{}", g.series).expect("string write");
            }
            out.push('\n');
            Ok(out)
        }
        Format::Csv => {
            let mut out = String::from("exponent,c2,coefficient\n");
            for (e, _, c) in g.series.iter() {
                writeln!(out, "{e},{},\"{c}\"", g.c2_of(e)).expect("string write");
            }
            Ok(out)
        }
    }
}

pub fn betti(g: &GenSeries, table: &BettiTable, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => {
            let rows: Vec<_> = table
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "c2": r.c2.to_string(),
                        "lowest": r.lowest,
                        "coefficients": r.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let bad: Vec<_> = table
                .non_polynomial
                .iter()
                .map(|(c2, c)| json!({"c2": c2.to_string(), "coefficient": c.to_string()}))
                .collect();
            pretty(&json!({
                "empty": g.divisibility_empty(),
                "rows": rows,
                "non_polynomial": bad,
            }))
        }
        Format::Text => {
            let mut out = header(g);
            if g.divisibility_empty() {
                out.push_str(EMPTY);
                out.push('\n');
                return Ok(out);
            }
            for r in &table.rows {
                let hi = r.lowest + r.coeffs.len() as i64 - 1;
                let coeffs: Vec<String> = r.coeffs.iter().map(|c| c.to_string()).collect();
                let poly = Scalar::from_laurent(ruled_core::genfun::row_polynomial(r));
                writeln!(out, "c2={}: s^{}..s^{}: {}  ({})", r.c2, r.lowest, hi, coeffs.join(" "), poly)
                    .expect("string write");
            }
            for (c2, c) in &table.non_polynomial {
                writeln!(out, "c2={c2}: not a Laurent polynomial: {c}").expect("string write");
            }
            Ok(out)
        }
        Format::Csv => {
            let mut out = String::new();
            let Some((lo, hi)) = table.s_range() else {
                out.push_str("c2\n");
                return Ok(out);
            };
            let cols: Vec<String> = (lo..=hi).map(|k| format!("s^{k}")).collect();
            writeln!(out, "c2,{}", cols.join(",")).expect("string write");
            for r in &table.rows {
                let cells: Vec<String> = (lo..=hi)
                    .map(|k| {
                        let i = k - r.lowest;
                        if i >= 0 && (i as usize) < r.coeffs.len() {
                            r.coeffs[i as usize].to_string()
                        } else {
                            "0".into()
                        }
                    })
                    .collect();
                writeln!(out, "{},{}", r.c2, cells.join(",")).expect("string write");
            }
            for (c2, _) in &table.non_polynomial {
                eprintln!("warning: c2={c2} has a coefficient that is not a Laurent polynomial");
            }
            Ok(out)
        }
    }
}

pub fn plain_series(s: &TruncatedSeries, format: Format) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(format!("{s}\n")),
        Format::Csv => {
            let mut out = String::from("exponent,coefficient\n");
            for (e, _, c) in s.iter() {
                writeln!(out, "{e},\"{c}\"").expect("string write");
            }
            Ok(out)
        }
        Format::Json => {
            let s = s.canonical();
            pretty(&json!({
            "offset": s.offset().to_string(),
            "denominator": s.denom(),
            "order": s.order().to_string(),
            "terms": s.grid_terms().map(|(&(k, _), c)| json!([k, c.to_string()])).collect::<Vec<_>>(),
            }))
        }
    }
}
