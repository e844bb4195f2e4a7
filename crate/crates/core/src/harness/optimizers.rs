use crate::error::Result;
use crate::indicator::{Archive, Front, ObjectivePair};
use crate::rng::{derive_seed, SeededStream, StreamTag};
use crate::suite::{region_of_interest, suggested_inner_box, BiObjProblem};

use super::record::{RunRecord, TracePoint};

pub const DEFAULT_STEP_SIGMA: f64 = 0.5;
/// Offspring step widths are spread log-uniformly over this many decades
/// below `step_sigma`.
const STEP_DECADES: f64 = 2.0;
/// Share of archive-evolver samples drawn uniformly from the inner box.
const UNIFORM_FRACTION: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OptimizerKind {
    RandomSearch,
    ArchiveEvolver { step_sigma: f64 },
}

impl OptimizerKind {
    pub fn name(&self) -> &'static str {
        match self {
            OptimizerKind::RandomSearch => "random-search",
            OptimizerKind::ArchiveEvolver { .. } => "archive-evolver",
        }
    }

    pub fn step_sigma(&self) -> Option<f64> {
        match self {
            OptimizerKind::RandomSearch => None,
            OptimizerKind::ArchiveEvolver { step_sigma } => Some(*step_sigma),
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "random-search" | "random" => Some(OptimizerKind::RandomSearch),
            "archive-evolver" | "evolver" => Some(OptimizerKind::ArchiveEvolver { step_sigma: DEFAULT_STEP_SIGMA }),
            _ => None,
        }
    }
}

/// Wraps a problem for one run: counts evaluations, keeps the normalized
/// archive and records a trace point whenever the archive changes.
pub struct Observer<'p> {
    problem: &'p mut BiObjProblem,
    archive: Archive,
    trace: Vec<TracePoint>,
    evaluations: u64,
}

impl<'p> Observer<'p> {
    pub fn new(problem: &'p mut BiObjProblem) -> Result<Self> {
        let archive = Archive::new(problem.ideal(), problem.nadir())?;
        Ok(Observer { problem, archive, trace: Vec::new(), evaluations: 0 })
    }

    pub fn dim(&self) -> usize {
        self.problem.dim()
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn archive(&self) -> &Archive {
        &self.archive
    }

    pub fn evaluate(&mut self, x: &[f64]) -> Result<ObjectivePair> {
        let y = self.problem.evaluate(x)?;
        self.evaluations += 1;
        if self.archive.insert(x.to_vec(), y) {
            self.trace.push(TracePoint { eval_index: self.evaluations, hv: self.archive.hv() });
        }
        Ok(y)
    }

    fn finish(self, optimizer: OptimizerKind, seed: u64, budget: u64) -> RunRecord {
        let p = &*self.problem;
        RunRecord {
            problem: p.id(),
            instance_ids: p.instance_ids(),
            function_names: (p.alpha().function().name().to_string(), p.beta().function().name().to_string()),
            group: p.group(),
            ideal: p.ideal(),
            nadir: p.nadir(),
            optimizer: optimizer.name().to_string(),
            step_sigma: optimizer.step_sigma(),
            seed,
            budget,
            evaluations: self.evaluations,
            final_hv: self.archive.hv(),
            trace: self.trace,
            archive: self.archive.entries().to_vec(),
        }
    }
}

fn optimizer_stream(problem: &BiObjProblem, seed: u64) -> SeededStream {
    let id = problem.id();
    let tag = ((StreamTag::Optimizer as u64) << 32) ^ seed;
    SeededStream::new(derive_seed(id.pair_index as u64, id.instance as u64, id.dim as u64, tag))
}

fn uniform_point(stream: &mut SeededStream, lower: &[f64], upper: &[f64]) -> Vec<f64> {
    lower.iter().zip(upper).map(|(&lo, &hi)| stream.uniform_in(lo, hi)).collect()
}

/// Uniform sampling of the inner box `[-5, 5]^D`.
pub fn run_random_search(problem: &mut BiObjProblem, budget: u64, seed: u64) -> Result<RunRecord> {
    let mut stream = optimizer_stream(problem, seed);
    let (lower, upper) = suggested_inner_box(problem.dim());
    let mut obs = Observer::new(problem)?;
    for _ in 0..budget {
        let x = uniform_point(&mut stream, &lower, &upper);
        obs.evaluate(&x)?;
    }
    Ok(obs.finish(OptimizerKind::RandomSearch, seed, budget))
}

/// Mutates a uniformly chosen member of its own non-dominated set with an
/// isotropic Gaussian step whose width is drawn log-uniformly from
/// `[step_sigma / 100, step_sigma)`. Half of the samples (and always the
/// first) are instead uniform in `[-5, 5]^D`, which keeps the front spread
/// out. Offspring are clipped to `[-100, 100]^D`.
pub fn run_archive_evolver(problem: &mut BiObjProblem, budget: u64, seed: u64, step_sigma: f64) -> Result<RunRecord> {
    assert!(step_sigma > 0.0, "step_sigma must be positive");
    let dim = problem.dim();
    let mut stream = optimizer_stream(problem, seed);
    let (inner_lo, inner_hi) = suggested_inner_box(dim);
    let (roi_lo, roi_hi) = region_of_interest(dim);
    let mut population = Front::new();
    let mut obs = Observer::new(problem)?;
    for _ in 0..budget {
        let x = if population.is_empty() || stream.next_f64() < UNIFORM_FRACTION {
            uniform_point(&mut stream, &inner_lo, &inner_hi)
        } else {
            let parent = &population.entries()[stream.index_below(population.len())].x;
            let mut child = parent.clone();
            let scale = step_sigma * 10f64.powf(-STEP_DECADES * stream.next_f64());
            let mut k = 0;
            while k < dim {
                let (g1, g2) = stream.next_gaussian_pair();
                for g in [g1, g2].into_iter().take(dim - k) {
                    child[k] = (child[k] + scale * g).clamp(roi_lo[k], roi_hi[k]);
                    k += 1;
                }
            }
            child
        };
        let y = obs.evaluate(&x)?;
        population.insert(x, y);
    }
    Ok(obs.finish(OptimizerKind::ArchiveEvolver { step_sigma }, seed, budget))
}

pub fn run_optimizer(problem: &mut BiObjProblem, optimizer: OptimizerKind, budget: u64, seed: u64) -> Result<RunRecord> {
    match optimizer {
        OptimizerKind::RandomSearch => run_random_search(problem, budget, seed),
        OptimizerKind::ArchiveEvolver { step_sigma } => run_archive_evolver(problem, budget, seed, step_sigma),
    }
}
