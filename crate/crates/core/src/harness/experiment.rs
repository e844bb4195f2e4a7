use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::suite::{enumerate_suite, enumerate_with_dims, generate_manifest, is_suite_dim, BiObjProblem, ProblemId, SuiteFilter};

use super::optimizers::{run_optimizer, OptimizerKind};
use super::record::write_atomic;

pub const DEFAULT_BUDGET_MULTIPLIER: u64 = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub filter: SuiteFilter,
    /// Evaluations per run are `budget_multiplier * D`.
    pub budget_multiplier: u64,
    pub optimizers: Vec<OptimizerKind>,
    pub seeds: Vec<u64>,
    pub out_dir: PathBuf,
    /// Admit dimensions outside the suite set listed in `filter.dims`.
    pub allow_non_standard_dims: bool,
}

impl ExperimentConfig {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            filter: SuiteFilter::default(),
            budget_multiplier: DEFAULT_BUDGET_MULTIPLIER,
            optimizers: vec![OptimizerKind::RandomSearch],
            seeds: (1..=15).collect(),
            out_dir: out_dir.into(),
            allow_non_standard_dims: false,
        }
    }

    /// Problems selected by the filter, in suite order.
    pub fn problems(&self) -> Result<Vec<ProblemId>> {
        self.filter.validate()?;
        if let Some(dims) = &self.filter.dims {
            if let Some(&bad) = dims.iter().find(|&&d| !is_suite_dim(d)) {
                if !self.allow_non_standard_dims {
                    return Err(Error::NonStandardDimension(bad));
                }
                if bad < 2 {
                    return Err(Error::InvalidDimension(bad));
                }
                let dims: Vec<usize> = dims.iter().copied().collect();
                return Ok(enumerate_with_dims(&self.filter, &dims));
            }
        }
        Ok(enumerate_suite(&self.filter))
    }

    pub fn validate(&self) -> Result<Vec<ProblemId>> {
        if self.budget_multiplier == 0 {
            return Err(Error::Config("budget multiplier must be at least 1".into()));
        }
        if self.optimizers.is_empty() {
            return Err(Error::Config("no optimizer selected".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("no seed selected".into()));
        }
        for opt in &self.optimizers {
            if let Some(sigma) = opt.step_sigma() {
                if sigma.is_nan() || sigma <= 0.0 {
                    return Err(Error::Config(format!("step sigma must be positive, got {sigma}")));
                }
            }
        }
        let problems = self.problems()?;
        if problems.is_empty() {
            return Err(Error::Config("filters select no problem".into()));
        }
        Ok(problems)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub out_dir: PathBuf,
    pub manifest: PathBuf,
    pub records: Vec<PathBuf>,
}

pub fn records_dir(out_dir: &Path) -> PathBuf {
    out_dir.join("records")
}

/// Runs every (problem, optimizer, seed) cell and writes one record file
/// per cell under `<out>/records/`, plus `<out>/manifest.txt` for the
/// selected problems. Cells run in parallel; each owns its problem handle.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let problems = config.validate()?;
    let records = records_dir(&config.out_dir);
    fs::create_dir_all(&records).map_err(|e| Error::io(&records, e))?;

    let manifest_path = config.out_dir.join("manifest.txt");
    let manifest = generate_manifest(&problems, config.allow_non_standard_dims)?;
    write_atomic(&manifest_path, manifest.as_bytes())?;

    let mut cells = Vec::with_capacity(problems.len() * config.optimizers.len() * config.seeds.len());
    for &id in &problems {
        for &opt in &config.optimizers {
            for &seed in &config.seeds {
                cells.push((id, opt, seed));
            }
        }
    }

    let paths = cells
        .par_iter()
        .map(|&(id, opt, seed)| {
            let mut problem = BiObjProblem::new(id, config.allow_non_standard_dims)?;
            let budget = config.budget_multiplier * id.dim as u64;
            let record = run_optimizer(&mut problem, opt, budget, seed)?;
            debug_assert_eq!(problem.eval_count(), budget);
            record.write_to_dir(&records)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ExperimentOutcome { out_dir: config.out_dir.clone(), manifest: manifest_path, records: paths })
}
