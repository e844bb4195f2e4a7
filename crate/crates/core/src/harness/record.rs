//! Run record files.
//!
//! A record is line-oriented UTF-8 text in three parts:
//!
//! ```text
//! # biobj run record
//! format: 1
//! problem: f01_d02_i01
//! ...                       (key: value header lines, fixed order)
//! [trace]
//! # eval_index hv
//! 1 0
//! 17 0.3512...
//! [archive]
//! # norm_a norm_b raw_a raw_b x_1 ... x_D
//! ...
//! ```
//!
//! Floats use Rust's shortest round-trip formatting, so parsing a record
//! reproduces the values bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::indicator::{ArchiveEntry, Normalization, ObjectivePair};
use crate::suite::{GroupLabel, ProblemId};

const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub eval_index: u64,
    pub hv: f64,
}

/// Everything logged about one optimizer run on one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub problem: ProblemId,
    pub instance_ids: (u32, u32),
    pub function_names: (String, String),
    pub group: GroupLabel,
    pub ideal: ObjectivePair,
    pub nadir: ObjectivePair,
    pub optimizer: String,
    pub step_sigma: Option<f64>,
    pub seed: u64,
    pub budget: u64,
    pub evaluations: u64,
    pub final_hv: f64,
    /// One point per archive change: eval indices strictly increase and the
    /// hypervolume never decreases.
    pub trace: Vec<TracePoint>,
    pub archive: Vec<ArchiveEntry>,
}

impl RunRecord {
    pub fn file_name(&self) -> String {
        format!("{}_{}_s{:03}.txt", self.problem, self.optimizer, self.seed)
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        for w in self.trace.windows(2) {
            if w[1].eval_index <= w[0].eval_index {
                return Err(format!("trace eval_index not increasing at {}", w[1].eval_index));
            }
            if w[1].hv < w[0].hv {
                return Err(format!("trace hv decreases at eval {}", w[1].eval_index));
            }
        }
        if let Some(last) = self.trace.last() {
            if last.eval_index > self.budget {
                return Err(format!("trace eval_index {} exceeds budget {}", last.eval_index, self.budget));
            }
            if last.hv != self.final_hv {
                return Err("final_hv differs from last trace value".into());
            }
        }
        if self.evaluations > self.budget {
            return Err("evaluations exceed budget".into());
        }
        if self.archive.iter().any(|e| e.x.len() != self.problem.dim) {
            return Err("archive entry with wrong dimension".into());
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# biobj run record");
        let _ = writeln!(s, "format: {FORMAT_VERSION}");
        let _ = writeln!(s, "problem: {}", self.problem);
        let _ = writeln!(s, "pair_index: {}", self.problem.pair_index);
        let _ = writeln!(s, "dim: {}", self.problem.dim);
        let _ = writeln!(s, "instance: {}", self.problem.instance);
        let _ = writeln!(s, "instance_alpha: {}", self.instance_ids.0);
        let _ = writeln!(s, "instance_beta: {}", self.instance_ids.1);
        let _ = writeln!(s, "function_alpha: {}", self.function_names.0);
        let _ = writeln!(s, "function_beta: {}", self.function_names.1);
        let _ = writeln!(s, "group: {}", self.group);
        let _ = writeln!(s, "ideal: {} {}", self.ideal.a, self.ideal.b);
        let _ = writeln!(s, "nadir: {} {}", self.nadir.a, self.nadir.b);
        let _ = writeln!(s, "optimizer: {}", self.optimizer);
        if let Some(sigma) = self.step_sigma {
            let _ = writeln!(s, "step_sigma: {sigma}");
        }
        let _ = writeln!(s, "seed: {}", self.seed);
        let _ = writeln!(s, "budget: {}", self.budget);
        let _ = writeln!(s, "evaluations: {}", self.evaluations);
        let _ = writeln!(s, "final_hv: {}", self.final_hv);
        let _ = writeln!(s, "[trace]");
        let _ = writeln!(s, "# eval_index hv");
        for t in &self.trace {
            let _ = writeln!(s, "{} {}", t.eval_index, t.hv);
        }
        let _ = writeln!(s, "[archive]");
        let _ = writeln!(s, "# norm_a norm_b raw_a raw_b x_1 ... x_D");
        // Records only come from valid problems, whose ideal < nadir.
        let norm = Normalization::new(self.ideal, self.nadir).ok();
        for e in &self.archive {
            let n = norm.map_or(ObjectivePair::new(f64::NAN, f64::NAN), |n| n.apply(&e.y));
            let _ = write!(s, "{} {} {} {}", n.a, n.b, e.y.a, e.y.b);
            for v in &e.x {
                let _ = write!(s, " {v}");
            }
            s.push('\n');
        }
        s
    }

    /// Writes the record into `dir` via a temporary file and a rename.
    pub fn write_to_dir(&self, dir: &Path) -> Result<std::path::PathBuf> {
        let path = dir.join(self.file_name());
        write_atomic(&path, self.to_text().as_bytes())?;
        Ok(path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<RunRecord> {
        parse_record(text).map_err(|message| Error::Parse { path: origin.to_path_buf(), message })
    }

    /// Reads and validates a record file.
    pub fn load(path: &Path) -> Result<RunRecord> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let rec = Self::parse(&text, path)?;
        rec.validate().map_err(|message| Error::Parse { path: path.to_path_buf(), message })?;
        Ok(rec)
    }
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    f.write_all(bytes).map_err(|e| Error::io(&tmp, e))?;
    f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> std::result::Result<T, String> {
    s.trim().parse().map_err(|_| format!("bad {what}: {s:?}"))
}

fn parse_pair(s: &str, what: &str) -> std::result::Result<ObjectivePair, String> {
    let v: Vec<&str> = s.split_whitespace().collect();
    if v.len() != 2 {
        return Err(format!("bad {what}: {s:?}"));
    }
    Ok(ObjectivePair::new(parse_num(v[0], what)?, parse_num(v[1], what)?))
}

fn parse_record(text: &str) -> std::result::Result<RunRecord, String> {
    enum Section {
        Header,
        Trace,
        Archive,
    }
    let mut section = Section::Header;
    let mut header = std::collections::BTreeMap::new();
    let mut trace = Vec::new();
    let mut archive = Vec::new();

    for line in text.lines() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line {
            "[trace]" => {
                section = Section::Trace;
                continue;
            }
            "[archive]" => {
                section = Section::Archive;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Header => {
                let (k, v) = line.split_once(':').ok_or_else(|| format!("bad header line {line:?}"))?;
                header.insert(k.trim().to_string(), v.trim().to_string());
            }
            Section::Trace => {
                let (i, hv) = line.split_once(' ').ok_or_else(|| format!("bad trace line {line:?}"))?;
                trace.push(TracePoint { eval_index: parse_num(i, "eval_index")?, hv: parse_num(hv, "hv")? });
            }
            Section::Archive => {
                let cols: Vec<f64> = line
                    .split_whitespace()
                    .map(|t| parse_num(t, "archive value"))
                    .collect::<std::result::Result<_, _>>()?;
                if cols.len() < 5 {
                    return Err(format!("archive line too short: {line:?}"));
                }
                archive.push(ArchiveEntry { x: cols[4..].to_vec(), y: ObjectivePair::new(cols[2], cols[3]) });
            }
        }
    }

    let get = |k: &str| header.get(k).map(String::as_str).ok_or_else(|| format!("missing header {k:?}"));
    let version: u32 = parse_num(get("format")?, "format")?;
    if version != FORMAT_VERSION {
        return Err(format!("unsupported format version {version}"));
    }
    let group = GroupLabel::parse(get("group")?).ok_or_else(|| "bad group".to_string())?;
    Ok(RunRecord {
        problem: ProblemId::new(
            parse_num(get("pair_index")?, "pair_index")?,
            parse_num(get("dim")?, "dim")?,
            parse_num(get("instance")?, "instance")?,
        ),
        instance_ids: (parse_num(get("instance_alpha")?, "instance_alpha")?, parse_num(get("instance_beta")?, "instance_beta")?),
        function_names: (get("function_alpha")?.to_string(), get("function_beta")?.to_string()),
        group,
        ideal: parse_pair(get("ideal")?, "ideal")?,
        nadir: parse_pair(get("nadir")?, "nadir")?,
        optimizer: get("optimizer")?.to_string(),
        step_sigma: header.get("step_sigma").map(|s| parse_num(s, "step_sigma")).transpose()?,
        seed: parse_num(get("seed")?, "seed")?,
        budget: parse_num(get("budget")?, "budget")?,
        evaluations: parse_num(get("evaluations")?, "evaluations")?,
        final_hv: parse_num(get("final_hv")?, "final_hv")?,
        trace,
        archive,
    })
}
