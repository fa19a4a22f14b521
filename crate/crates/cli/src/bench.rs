use std::fmt::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use wil_core::aco::{AcoParams, Variant};

use crate::instance::Instance;
use crate::run::{solve_instance, RunReport};

/// Expands directories into their `*.json` files, sorted by name.
pub fn collect_instances(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(p)
                .with_context(|| format!("reading {}", p.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|e| e == "json"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// One report per (instance, algorithm), instances outermost.
pub fn bench(paths: &[PathBuf], algorithms: &[Variant], params: &AcoParams, runs: usize) -> Result<Vec<RunReport>> {
    let files = collect_instances(paths)?;
    if files.is_empty() {
        bail!("empty instance set");
    }
    if algorithms.is_empty() {
        bail!("no algorithm selected");
    }
    let mut reports = Vec::new();
    for f in &files {
        let inst = Instance::load(f)?;
        let name = inst.display_name(f);
        for &variant in algorithms {
            let p = AcoParams { variant, ..*params };
            reports.push(
                solve_instance(&inst, &name, &p, runs)
                    .with_context(|| f.display().to_string())?
                    .report,
            );
        }
    }
    Ok(reports)
}

pub fn format_table(reports: &[RunReport]) -> String {
    let header = ["instance", "n", "algorithm", "runs", "r_best", "r_average", "t_average"];
    let rows: Vec<[String; 7]> = reports
        .iter()
        .map(|r| {
            [
                r.instance.clone(),
                r.n.to_string(),
                r.algorithm.clone(),
                r.runs.to_string(),
                format!("{:.6}", r.r_best),
                format!("{:.6}", r.r_average),
                format!("{:.3}", r.t_average),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut s = String::new();
    let line = |s: &mut String, cells: &[&str]| {
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            if i == 0 || i == 2 {
                let _ = write!(s, "{cell:<w$}");
            } else {
                let _ = write!(s, "{cell:>w$}");
            }
        }
        let len = s.trim_end().len();
        s.truncate(len);
        s.push('\n');
    };
    line(&mut s, &header);
    for row in &rows {
        line(&mut s, &row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    s
}

pub fn write_json(reports: &[RunReport], path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(reports)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate_instance, Range};
    use crate::instance::Kind;

    #[test]
    fn rows_per_algorithm() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let r = Range::new(1.0, 3.0).unwrap();
        std::fs::write(
            &path,
            generate_instance(Kind::Circles, 6, r, r, 1).unwrap().to_string_pretty(),
        )
        .unwrap();
        let params = AcoParams {
            ants: 4,
            iterations: 5,
            ..AcoParams::default()
        };
        let reports = bench(&[path], &[Variant::Mmas, Variant::As], &params, 2).unwrap();
        assert_eq!(reports.len(), 2);
        assert_eq!(reports[0].algorithm, "mmas");
        assert_eq!(reports[1].algorithm, "as");
        let table = format_table(&reports);
        assert_eq!(table.lines().count(), 3);
        let widths: Vec<usize> = table.lines().map(str::len).collect();
        assert!(widths.iter().all(|&w| w == widths[0]), "{table}");
    }

    #[test]
    fn empty_set() {
        let dir = tempfile::tempdir().unwrap();
        let err = bench(&[dir.path().to_path_buf()], &[Variant::Mmas], &AcoParams::default(), 1).unwrap_err();
        assert_eq!(err.to_string(), "empty instance set");
        assert!(bench(&[], &[Variant::Mmas], &AcoParams::default(), 1).is_err());
    }
}
