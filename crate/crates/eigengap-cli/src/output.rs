//! Report rendering in JSON, CSV, and aligned-table form.
//!
//! JSON is pretty-printed with a trailing newline.  CSV uses the shortest
//! round-trip decimal representation for floats and plain integers for
//! labels, multiplicities, and indices; fields containing commas, quotes,
//! or newlines are quoted.  Tables align columns with two-space gutters.

use std::collections::BTreeSet;

use clap::ValueEnum;
use eigengap::conjecture::{ConjectureId, ConjectureVerdict, ScanResult};
use eigengap::ineq::{CheckStatus, GapBoundReport, InequalityReport};
use eigengap::spectrum::{Problem, Spectrum};
use eigengap::Result;
use serde::{Deserialize, Serialize};

use crate::suite::Manifest;

/// Output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = headers.join(",");
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let render = |cells: Vec<&str>| -> String {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < cells.len() {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        line.push('\n');
        line
    };
    let mut out = render(headers.to_vec());
    for row in rows {
        out.push_str(&render(row.iter().map(String::as_str).collect()));
    }
    out
}

fn status_str(status: CheckStatus) -> &'static str {
    match status {
        CheckStatus::Ok => "ok",
        CheckStatus::Inapplicable => "inapplicable",
        CheckStatus::InfiniteRhs => "infinite_rhs",
    }
}

/// The CLI token of a conjecture identifier.
pub fn conjecture_token(id: ConjectureId) -> &'static str {
    match id {
        ConjectureId::ConZ1S1 => "ConZ1_S1",
        ConjectureId::ConZ1PrimeS2 => "ConZ1prime_S2",
        ConjectureId::ConZ1Cuboid => "ConZ1_cuboid",
        ConjectureId::ConZ5Triangle => "ConZ5_triangle",
        ConjectureId::Prop1 => "Prop1",
        ConjectureId::Prop2 => "Prop2",
        ConjectureId::PpwGapForm => "PpwGapForm",
    }
}

/// One row per certified eigenvalue index.
fn spectrum_rows(spec: &Spectrum) -> Vec<Vec<String>> {
    let mut rows = Vec::with_capacity(spec.guaranteed_count);
    let mut index = match spec.problem {
        Problem::Dirichlet => 1usize,
        Problem::Closed => 0usize,
    };
    'outer: for e in &spec.entries {
        for _ in 0..e.mult {
            if index > spec.max_index() {
                break 'outer;
            }
            rows.push(vec![
                index.to_string(),
                format!("{}", e.value),
                e.label.map(|l| l.to_string()).unwrap_or_default(),
                e.mult.to_string(),
            ]);
            index += 1;
        }
    }
    rows
}

pub fn render_spectrum(spec: &Spectrum, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => spec.to_json(),
        Format::Csv => Ok(csv(&["index", "value", "label", "mult"], &spectrum_rows(spec))),
        Format::Table => {
            let head = format!(
                "domain {}  problem {}  certified {}\n",
                spec.domain,
                match spec.problem {
                    Problem::Dirichlet => "dirichlet",
                    Problem::Closed => "closed",
                },
                spec.guaranteed_count
            );
            Ok(head + &table(&["index", "value", "label", "mult"], &spectrum_rows(spec)))
        }
    }
}

fn report_rows(reports: &[InequalityReport]) -> Vec<Vec<String>> {
    reports
        .iter()
        .map(|r| {
            vec![
                r.inequality.to_string(),
                r.k.to_string(),
                format!("{}", r.lhs),
                format!("{}", r.rhs),
                format!("{}", r.margin),
                r.holds.to_string(),
                status_str(r.status).to_string(),
            ]
        })
        .collect()
}

pub fn render_reports(reports: &[InequalityReport], fmt: Format) -> Result<String> {
    const HEADERS: [&str; 7] = ["inequality", "k", "lhs", "rhs", "margin", "holds", "status"];
    match fmt {
        Format::Json => json(&reports),
        Format::Csv => Ok(csv(&HEADERS, &report_rows(reports))),
        Format::Table => Ok(table(&HEADERS, &report_rows(reports))),
    }
}

fn bounds_grid(rows: &[GapBoundReport]) -> (Vec<String>, Vec<Vec<String>>) {
    let tokens: BTreeSet<&str> = rows
        .iter()
        .flat_map(|r| r.bounds.keys().map(String::as_str))
        .collect();
    let mut headers = vec!["k".to_string(), "actual_gap".to_string()];
    headers.extend(tokens.iter().map(|t| t.to_string()));
    let grid = rows
        .iter()
        .map(|r| {
            let mut row = vec![r.k.to_string(), format!("{}", r.actual_gap)];
            for t in &tokens {
                row.push(
                    r.bounds
                        .get(*t)
                        .map(|v| format!("{v}"))
                        .unwrap_or_default(),
                );
            }
            row
        })
        .collect();
    (headers, grid)
}

pub fn render_bounds(rows: &[GapBoundReport], fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => json(&rows),
        Format::Csv | Format::Table => {
            let (headers, grid) = bounds_grid(rows);
            let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
            Ok(match fmt {
                Format::Csv => csv(&headers, &grid),
                _ => table(&headers, &grid),
            })
        }
    }
}

fn verdict_row(v: &ConjectureVerdict) -> Vec<String> {
    vec![
        conjecture_token(v.conjecture_id).to_string(),
        v.k_range[0].to_string(),
        v.k_range[1].to_string(),
        v.holds.to_string(),
        v.worst_k.to_string(),
        format!("{}", v.worst_margin),
        v.arithmetic.to_string(),
    ]
}

pub fn render_verdict(v: &ConjectureVerdict, fmt: Format) -> Result<String> {
    const HEADERS: [&str; 7] = [
        "conjecture_id",
        "k_lo",
        "k_hi",
        "holds",
        "worst_k",
        "worst_margin",
        "arithmetic",
    ];
    match fmt {
        Format::Json => json(v),
        Format::Csv => Ok(csv(&HEADERS, &[verdict_row(v)])),
        Format::Table => Ok(table(&HEADERS, &[verdict_row(v)])),
    }
}

pub fn render_scan(result: &ScanResult, fmt: Format) -> Result<String> {
    const HEADERS: [&str; 4] = ["param", "holds", "min_margin", "worst_k"];
    match fmt {
        Format::Json => json(result),
        Format::Csv | Format::Table => {
            let rows: Vec<Vec<String>> = result
                .results
                .iter()
                .map(|r| {
                    vec![
                        format!("{}", r.param),
                        r.holds.to_string(),
                        format!("{}", r.min_margin),
                        r.worst_k.to_string(),
                    ]
                })
                .collect();
            Ok(match fmt {
                Format::Csv => csv(&HEADERS, &rows),
                _ => table(&HEADERS, &rows),
            })
        }
    }
}

pub fn render_manifest(m: &Manifest, fmt: Format) -> Result<String> {
    const HEADERS: [&str; 4] = ["id", "pass", "elapsed_ms", "detail"];
    match fmt {
        Format::Json => json(m),
        Format::Csv | Format::Table => {
            let rows: Vec<Vec<String>> = m
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.id.to_string(),
                        c.pass.to_string(),
                        c.elapsed_ms.to_string(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            Ok(match fmt {
                Format::Csv => csv(&HEADERS, &rows),
                _ => table(&HEADERS, &rows),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use eigengap::generate::spectrum;
    use eigengap::spectrum::{DomainSpec, Length};

    #[test]
    fn closed_spectrum_csv_has_one_row_per_certified_index() {
        let mut spec = spectrum(
            &DomainSpec::FlatTorus {
                sides: vec![Length::of(1, 1), Length::of(1, 1)],
            },
            10,
        )
        .unwrap();
        spec.guaranteed_count = spec.guaranteed_count.min(10);
        let out = render_spectrum(&spec, Format::Csv).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "index,value,label,mult");
        assert_eq!(lines.len(), 11);
        assert!(lines[1].starts_with("0,0,0,1"));
    }

    #[test]
    fn dirichlet_spectrum_rows_start_at_one() {
        let mut spec = spectrum(&DomainSpec::square(Length::of(1, 1)), 5).unwrap();
        spec.guaranteed_count = spec.guaranteed_count.min(5);
        let rows = spectrum_rows(&spec);
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0][0], "1");
        assert_eq!(rows[0][2], "2");
    }

    #[test]
    fn csv_quotes_fields_with_commas() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn table_aligns_columns() {
        let out = table(
            &["k", "value"],
            &[
                vec!["1".into(), "2".into()],
                vec!["10".into(), "200".into()],
            ],
        );
        assert_eq!(out, "k   value\n1   2\n10  200\n");
    }
}
