//! Table emitters: pretty, csv and json, all byte-deterministic.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Pretty,
    Csv,
    Json,
}

/// A row type that knows its column names and cell rendering.
pub trait Table: serde::Serialize {
    fn headers() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

/// Energies in MeV with 12 significant digits.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn opt_sig12(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

/// Binding energy with a unit chosen by magnitude (eV / keV / MeV).
pub fn binding_display(binding_mev: f64) -> String {
    let abs = binding_mev.abs();
    if abs < 1e-3 {
        format!("{:.6} eV", binding_mev * 1e6)
    } else if abs < 1.0 {
        format!("{:.6} keV", binding_mev * 1e3)
    } else {
        format!("{binding_mev:.6} MeV")
    }
}

fn csv_escape(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// Render rows in the requested format. `comments` go out as `#` lines
/// ahead of pretty/csv tables and to stderr for json.
pub fn emit<R: Table>(format: Format, comments: &[String], rows: &[R]) {
    match format {
        Format::Csv => {
            for line in comments {
                println!("# {line}");
            }
            println!("{}", R::headers().join(","));
            for row in rows {
                let cells: Vec<String> = row.cells().iter().map(|c| csv_escape(c)).collect();
                println!("{}", cells.join(","));
            }
        }
        Format::Json => {
            for line in comments {
                eprintln!("# {line}");
            }
            println!(
                "{}",
                serde_json::to_string_pretty(rows).expect("rows serialize")
            );
        }
        Format::Pretty => {
            for line in comments {
                println!("# {line}");
            }
            let headers = R::headers();
            let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
            let all_cells: Vec<Vec<String>> = rows.iter().map(|r| r.cells()).collect();
            for cells in &all_cells {
                for (w, c) in widths.iter_mut().zip(cells) {
                    *w = (*w).max(c.len());
                }
            }
            let mut line = String::new();
            for (h, w) in headers.iter().zip(&widths) {
                let _ = write!(line, "{h:>w$}  ");
            }
            println!("{}", line.trim_end());
            for cells in &all_cells {
                let mut line = String::new();
                for (c, w) in cells.iter().zip(&widths) {
                    let _ = write!(line, "{c:>w$}  ");
                }
                println!("{}", line.trim_end());
            }
        }
    }
}
