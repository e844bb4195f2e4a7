use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::suite::{group_of, GroupLabel};

use super::experiment::records_dir;
use super::record::{write_atomic, RunRecord};

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub group: GroupLabel,
    pub dim: usize,
    pub optimizer: String,
    pub runs: usize,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
}

impl SummaryRow {
    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

#[derive(Debug, Default)]
pub struct Summary {
    pub rows: Vec<SummaryRow>,
    /// Record files that could not be read, one error each.
    pub errors: Vec<Error>,
}

pub const SUMMARY_HEADER: &str = "group\tdim\toptimizer\truns\tmedian_hv\tq1_hv\tq3_hv\tiqr_hv";

impl Summary {
    pub fn to_tsv(&self) -> String {
        let mut s = format!("{SUMMARY_HEADER}\n");
        for r in &self.rows {
            let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}", r.group, r.dim, r.optimizer, r.runs, r.median, r.q1, r.q3, r.iqr());
        }
        s
    }
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Median and quartiles of the final hypervolume per (group, D, optimizer)
/// over all instances and seeds found in `<results_dir>/records/`. The
/// table is also written to `<results_dir>/summary.tsv`. Unreadable
/// records are collected in [`Summary::errors`] and skipped.
pub fn summarize(results_dir: &Path) -> Result<Summary> {
    let dir = records_dir(results_dir);
    let mut summary = Summary::default();
    let mut groups: BTreeMap<(GroupLabel, usize, String), Vec<f64>> = BTreeMap::new();

    let mut files: Vec<_> = match fs::read_dir(&dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect(),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
        Err(e) => return Err(Error::io(&dir, e)),
    };
    files.sort();

    for path in files {
        match RunRecord::load(&path) {
            Ok(rec) => {
                let group = match group_of(rec.problem.pair_index) {
                    Ok(g) => g,
                    Err(e) => {
                        summary.errors.push(Error::Parse { path, message: e.to_string() });
                        continue;
                    }
                };
                groups.entry((group, rec.problem.dim, rec.optimizer)).or_default().push(rec.final_hv);
            }
            Err(e) => summary.errors.push(e),
        }
    }

    for ((group, dim, optimizer), mut values) in groups {
        values.sort_by(|a, b| a.total_cmp(b));
        summary.rows.push(SummaryRow {
            group,
            dim,
            optimizer,
            runs: values.len(),
            median: quantile(&values, 0.5),
            q1: quantile(&values, 0.25),
            q3: quantile(&values, 0.75),
        });
    }

    if results_dir.is_dir() {
        write_atomic(&results_dir.join("summary.tsv"), summary.to_tsv().as_bytes())?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles() {
        assert_eq!(quantile(&[3.0], 0.5), 3.0);
        assert_eq!(quantile(&[1.0, 2.0, 3.0, 4.0], 0.5), 2.5);
        assert_eq!(quantile(&[1.0, 2.0, 3.0, 4.0, 5.0], 0.25), 2.0);
        assert_eq!(quantile(&[1.0, 2.0, 3.0, 4.0, 5.0], 0.75), 4.0);
    }
}
