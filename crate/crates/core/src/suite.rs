//! The 55 bi-objective problems: pairing, instance ids, ideal and nadir
//! points, function groups and suite enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::constants::{MIN_IDEAL_NADIR_DISTANCE, MIN_OPTIMA_DISTANCE};
use crate::error::{Error, Result};
use crate::functions::{BaseFunctionId, BaseInstance, FunctionClass};
use crate::indicator::ObjectivePair;
use crate::transforms::fnv1a;

pub const SUITE_DIMS: [usize; 6] = [2, 3, 5, 10, 20, 40];
pub const NUM_FUNCTIONS: u32 = 55;
pub const DEFAULT_INSTANCES: u32 = 10;

/// Shipped `K K_alpha K_beta` table, regenerated with `biobj suite instances`.
const INSTANCE_TABLE: &str = include_str!("../data/instance_map.txt");

pub fn is_suite_dim(dim: usize) -> bool {
    SUITE_DIMS.contains(&dim)
}

/// Index of the pair `(i, j)` of 1-based positions, `i <= j`, in 1..=55.
pub fn pair_index(i: u32, j: u32) -> Result<u32> {
    if !(1 <= i && i <= j && j <= 10) {
        return Err(Error::InvalidPair(i, j));
    }
    Ok((i - 1) * 10 - (i - 1) * (i.max(2) - 2) / 2 + (j - i + 1))
}

pub fn unpair(k: u32) -> Result<(u32, u32)> {
    if !(1..=NUM_FUNCTIONS).contains(&k) {
        return Err(Error::PairIndexOutOfRange(k));
    }
    let mut first = 1;
    let mut row_len = 10;
    while k > first + row_len - 1 {
        first += row_len;
        row_len -= 1;
    }
    let i = 11 - row_len;
    Ok((i, i + (k - first)))
}

pub fn base_pair(k: u32) -> Result<(BaseFunctionId, BaseFunctionId)> {
    let (i, j) = unpair(k)?;
    Ok((BaseFunctionId::from_position(i)?, BaseFunctionId::from_position(j)?))
}

/// Display name such as `Sphere/Rosenbrock original`.
pub fn function_name(k: u32) -> Result<String> {
    let (a, b) = base_pair(k)?;
    Ok(format!("{}/{}", a.name(), b.name()))
}

/// One of the 15 function groups, an unordered pair of base classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupLabel(pub FunctionClass, pub FunctionClass);

impl GroupLabel {
    pub fn all() -> Vec<GroupLabel> {
        let mut out = Vec::with_capacity(15);
        for (n, &c1) in FunctionClass::ALL.iter().enumerate() {
            for &c2 in &FunctionClass::ALL[n..] {
                out.push(GroupLabel(c1, c2));
            }
        }
        out
    }

    pub fn parse(s: &str) -> Option<GroupLabel> {
        GroupLabel::all().into_iter().find(|g| g.to_string() == s)
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.0.label(), self.1.label())
    }
}

pub fn group_of(k: u32) -> Result<GroupLabel> {
    let (a, b) = base_pair(k)?;
    Ok(GroupLabel(a.class(), b.class()))
}

/// `(pair index, dimension, bi-objective instance)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProblemId {
    pub pair_index: u32,
    pub dim: usize,
    pub instance: u32,
}

impl ProblemId {
    pub fn new(pair_index: u32, dim: usize, instance: u32) -> Self {
        ProblemId { pair_index, dim, instance }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{:02}_d{:02}_i{:02}", self.pair_index, self.dim, self.instance)
    }
}

/// Checks both instance conditions for one pairing and returns the ideal and
/// nadir point (nadir by cross-evaluating each objective at the other's
/// optimum).
pub fn check_pair(alpha: &BaseInstance, beta: &BaseInstance) -> std::result::Result<(ObjectivePair, ObjectivePair), String> {
    let distance = alpha
        .x_opt()
        .iter()
        .zip(beta.x_opt())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    if distance < MIN_OPTIMA_DISTANCE {
        return Err(format!("optima distance {distance} below {MIN_OPTIMA_DISTANCE}"));
    }
    let ideal = ObjectivePair::new(alpha.f_opt(), beta.f_opt());
    let nadir = ObjectivePair::new(beta_cross(alpha, beta), beta_cross(beta, alpha));
    let spread = ideal.distance(&nadir);
    if spread < MIN_IDEAL_NADIR_DISTANCE {
        return Err(format!("ideal-nadir distance {spread} below {MIN_IDEAL_NADIR_DISTANCE}"));
    }
    if !(ideal.a < nadir.a && ideal.b < nadir.b) {
        return Err(format!("ideal {ideal:?} not strictly below nadir {nadir:?}"));
    }
    Ok((ideal, nadir))
}

/// `f(x_opt of other)`.
fn beta_cross(f: &BaseInstance, other: &BaseInstance) -> f64 {
    f.evaluate_unchecked(other.x_opt())
}

/// Whether `(k_alpha, k_beta)` satisfies both conditions for all 55
/// functions in all suite dimensions.
pub fn instance_pair_is_valid(k_alpha: u32, k_beta: u32) -> bool {
    SUITE_DIMS.par_iter().all(|&dim| {
        let build = |k| -> Vec<BaseInstance> {
            BaseFunctionId::ALL
                .iter()
                .map(|&f| BaseInstance::new(f, k, dim).expect("suite dimensions are valid"))
                .collect()
        };
        let first = build(k_alpha);
        let second = build(k_beta);
        (0..10).all(|i| (i..10).all(|j| check_pair(&first[i], &second[j]).is_ok()))
    })
}

/// Runs the validity loop for instance `k`, ignoring the shipped table.
pub fn compute_instance_pair(k: u32) -> (u32, u32) {
    match k {
        1 => (2, 4),
        2 => (3, 5),
        _ => {
            let k_alpha = 2 * k + 1;
            let mut k_beta = k_alpha + 1;
            while !instance_pair_is_valid(k_alpha, k_beta) {
                k_beta += 1;
            }
            (k_alpha, k_beta)
        }
    }
}

fn shipped_table() -> BTreeMap<u32, (u32, u32)> {
    INSTANCE_TABLE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let v: Vec<u32> = l.split_whitespace().map(|t| t.parse().expect("malformed instance table")).collect();
            (v[0], (v[1], v[2]))
        })
        .collect()
}

/// Single-objective instance ids `(K_alpha, K_beta)` of bi-objective
/// instance `k` (>= 1). Looked up in the shipped table, computed otherwise.
pub fn instance_map(k: u32) -> Result<(u32, u32)> {
    if k == 0 {
        return Err(Error::InvalidInstance(k));
    }
    Ok(shipped_table().get(&k).copied().unwrap_or_else(|| compute_instance_pair(k)))
}

/// Text of the instance table for instances `1..=max_k`.
pub fn generate_instance_table(max_k: u32) -> String {
    let mut out = String::from("# K K_alpha K_beta\n");
    for k in 1..=max_k {
        let (a, b) = compute_instance_pair(k);
        out.push_str(&format!("{k} {a} {b}\n"));
    }
    out
}

/// A bi-objective problem: two base instances with cached ideal and nadir.
#[derive(Debug, Clone)]
pub struct BiObjProblem {
    id: ProblemId,
    k_alpha: u32,
    k_beta: u32,
    alpha: BaseInstance,
    beta: BaseInstance,
    ideal: ObjectivePair,
    nadir: ObjectivePair,
    group: GroupLabel,
    eval_count: u64,
}

pub fn instantiate_problem(id: ProblemId) -> Result<BiObjProblem> {
    BiObjProblem::new(id, false)
}

impl BiObjProblem {
    /// `allow_non_standard` admits dimensions outside the suite set (>= 2).
    pub fn new(id: ProblemId, allow_non_standard: bool) -> Result<Self> {
        if !is_suite_dim(id.dim) {
            if !allow_non_standard {
                return Err(Error::NonStandardDimension(id.dim));
            }
            if id.dim < 2 {
                return Err(Error::InvalidDimension(id.dim));
            }
        }
        let (fa, fb) = base_pair(id.pair_index)?;
        let (k_alpha, k_beta) = instance_map(id.instance)?;
        let alpha = BaseInstance::new(fa, k_alpha, id.dim)?;
        let beta = BaseInstance::new(fb, k_beta, id.dim)?;
        let (ideal, nadir) = check_pair(&alpha, &beta).map_err(|m| Error::InvariantViolation(id.to_string(), m))?;
        Ok(BiObjProblem { id, k_alpha, k_beta, alpha, beta, ideal, nadir, group: GroupLabel(fa.class(), fb.class()), eval_count: 0 })
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.id.dim
    }

    pub fn instance_ids(&self) -> (u32, u32) {
        (self.k_alpha, self.k_beta)
    }

    pub fn alpha(&self) -> &BaseInstance {
        &self.alpha
    }

    pub fn beta(&self) -> &BaseInstance {
        &self.beta
    }

    pub fn ideal(&self) -> ObjectivePair {
        self.ideal
    }

    pub fn nadir(&self) -> ObjectivePair {
        self.nadir
    }

    pub fn group(&self) -> GroupLabel {
        self.group
    }

    pub fn name(&self) -> String {
        format!("{}/{}", self.alpha.function().name(), self.beta.function().name())
    }

    pub fn eval_count(&self) -> u64 {
        self.eval_count
    }

    pub fn evaluate(&mut self, x: &[f64]) -> Result<ObjectivePair> {
        if x.len() != self.id.dim {
            return Err(Error::DimensionMismatch { expected: self.id.dim, actual: x.len() });
        }
        self.eval_count += 1;
        Ok(ObjectivePair::new(self.alpha.evaluate_unchecked(x), self.beta.evaluate_unchecked(x)))
    }

    pub fn region_of_interest(&self) -> (Vec<f64>, Vec<f64>) {
        region_of_interest(self.id.dim)
    }

    /// Manifest line:
    /// `pair_index D K K_alpha K_beta ideal_a ideal_b nadir_a nadir_b xopt_alpha_hash xopt_beta_hash`.
    pub fn manifest_line(&self) -> String {
        format!(
            "{} {} {} {} {} {} {} {} {} {:016x} {:016x}",
            self.id.pair_index,
            self.id.dim,
            self.id.instance,
            self.k_alpha,
            self.k_beta,
            self.ideal.a,
            self.ideal.b,
            self.nadir.a,
            self.nadir.b,
            fnv1a(self.alpha.x_opt()),
            fnv1a(self.beta.x_opt()),
        )
    }
}

/// Search domain of interest, `[-100, 100]^D`.
pub fn region_of_interest(dim: usize) -> (Vec<f64>, Vec<f64>) {
    (vec![-100.0; dim], vec![100.0; dim])
}

/// Box `[-5, 5]^D` expected to hold most non-dominated solutions.
pub fn suggested_inner_box(dim: usize) -> (Vec<f64>, Vec<f64>) {
    (vec![-5.0; dim], vec![5.0; dim])
}

/// Optional restrictions of the suite; `None` keeps the full range.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteFilter {
    pub functions: Option<BTreeSet<u32>>,
    pub dims: Option<BTreeSet<usize>>,
    pub instances: Option<BTreeSet<u32>>,
}

impl SuiteFilter {
    pub fn validate(&self) -> Result<()> {
        if let Some(f) = &self.functions {
            if let Some(&bad) = f.iter().find(|&&k| !(1..=NUM_FUNCTIONS).contains(&k)) {
                return Err(Error::PairIndexOutOfRange(bad));
            }
        }
        if let Some(i) = &self.instances {
            if i.contains(&0) {
                return Err(Error::InvalidInstance(0));
            }
        }
        Ok(())
    }
}

/// Dimension-major, then pair index, then instance. Dimensions outside the
/// suite set are skipped; instances default to `1..=10`.
pub fn enumerate_suite(filter: &SuiteFilter) -> Vec<ProblemId> {
    let dims: Vec<usize> = SUITE_DIMS
        .iter()
        .copied()
        .filter(|d| filter.dims.as_ref().is_none_or(|s| s.contains(d)))
        .collect();
    enumerate_with_dims(filter, &dims)
}

/// Like [`enumerate_suite`] but iterating the given dimensions verbatim.
pub fn enumerate_with_dims(filter: &SuiteFilter, dims: &[usize]) -> Vec<ProblemId> {
    let functions: Vec<u32> = (1..=NUM_FUNCTIONS)
        .filter(|k| filter.functions.as_ref().is_none_or(|s| s.contains(k)))
        .collect();
    let instances: Vec<u32> = match &filter.instances {
        Some(s) => s.iter().copied().collect(),
        None => (1..=DEFAULT_INSTANCES).collect(),
    };
    let mut out = Vec::with_capacity(dims.len() * functions.len() * instances.len());
    for &dim in dims {
        for &k in &functions {
            for &inst in &instances {
                out.push(ProblemId::new(k, dim, inst));
            }
        }
    }
    out
}

/// Suite manifest for `ids`, one line per problem (see
/// [`BiObjProblem::manifest_line`]). Lines whose single-objective instance
/// ids also occur in another bi-objective instance of the listing carry a
/// trailing `shared-instance` flag.
pub fn generate_manifest(ids: &[ProblemId], allow_non_standard: bool) -> Result<String> {
    let problems: Vec<BiObjProblem> =
        ids.par_iter().map(|&id| BiObjProblem::new(id, allow_non_standard)).collect::<Result<_>>()?;

    let mut users: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for p in &problems {
        let (a, b) = p.instance_ids();
        users.entry(a).or_default().insert(p.id.instance);
        users.entry(b).or_default().insert(p.id.instance);
    }

    let mut out = String::from(
        "# pair_index D K K_alpha K_beta ideal_a ideal_b nadir_a nadir_b xopt_alpha_hash xopt_beta_hash [flag]\n",
    );
    for p in &problems {
        out.push_str(&p.manifest_line());
        let (a, b) = p.instance_ids();
        if users[&a].len() > 1 || users[&b].len() > 1 {
            out.push_str(" shared-instance");
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_anchors() {
        assert_eq!(pair_index(1, 1).unwrap(), 1);
        assert_eq!(pair_index(1, 10).unwrap(), 10);
        assert_eq!(pair_index(2, 2).unwrap(), 11);
        assert_eq!(pair_index(3, 3).unwrap(), 20);
        assert_eq!(pair_index(10, 10).unwrap(), 55);
        assert_eq!(unpair(28).unwrap(), (4, 4));
        assert!(pair_index(3, 2).is_err());
        assert!(pair_index(0, 2).is_err());
        assert!(unpair(0).is_err());
        assert!(unpair(56).is_err());
    }

    #[test]
    fn pairing_is_bijective() {
        let mut seen = BTreeSet::new();
        for i in 1..=10 {
            for j in i..=10 {
                let k = pair_index(i, j).unwrap();
                assert_eq!(unpair(k).unwrap(), (i, j));
                seen.insert(k);
            }
        }
        assert_eq!(seen, (1..=55).collect());
    }

    #[test]
    fn historical_instances() {
        assert_eq!(instance_map(1).unwrap(), (2, 4));
        assert_eq!(instance_map(2).unwrap(), (3, 5));
        assert!(instance_map(0).is_err());
    }

    #[test]
    fn group_examples() {
        for k in [1, 2, 11] {
            assert_eq!(group_of(k).unwrap().to_string(), "separable - separable");
        }
        for k in [26, 27, 33, 34] {
            assert_eq!(group_of(k).unwrap().to_string(), "moderate - weakly-structured");
        }
        for k in [53, 54, 55] {
            assert_eq!(group_of(k).unwrap().to_string(), "weakly-structured - weakly-structured");
        }
        assert!(group_of(56).is_err());
        assert_eq!(GroupLabel::all().len(), 15);
        assert_eq!(GroupLabel::parse("moderate - moderate"), Some(GroupLabel(FunctionClass::Moderate, FunctionClass::Moderate)));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_suite(&SuiteFilter::default()).len(), 3300);
        let f = SuiteFilter { dims: Some([5].into()), functions: Some([1].into()), instances: None };
        assert_eq!(enumerate_suite(&f).len(), 10);
        let f = SuiteFilter { dims: Some([2, 3].into()), functions: None, instances: Some([1].into()) };
        assert_eq!(enumerate_suite(&f).len(), 110);
        let f = SuiteFilter { dims: Some([4].into()), ..Default::default() };
        assert!(enumerate_suite(&f).is_empty());
    }

    #[test]
    fn enumeration_order() {
        let ids = enumerate_suite(&SuiteFilter::default());
        assert_eq!(ids[0], ProblemId::new(1, 2, 1));
        assert_eq!(ids[1], ProblemId::new(1, 2, 2));
        assert_eq!(ids[10], ProblemId::new(2, 2, 1));
        assert_eq!(ids[550], ProblemId::new(1, 3, 1));
        assert_eq!(*ids.last().unwrap(), ProblemId::new(55, 40, 10));
    }

    #[test]
    fn region_constants() {
        assert_eq!(region_of_interest(2), (vec![-100.0, -100.0], vec![100.0, 100.0]));
        assert_eq!(suggested_inner_box(3), (vec![-5.0; 3], vec![5.0; 3]));
    }

    #[test]
    fn non_standard_dimension_gate() {
        let id = ProblemId::new(1, 4, 1);
        assert!(matches!(instantiate_problem(id), Err(Error::NonStandardDimension(4))));
        assert!(BiObjProblem::new(id, true).is_ok());
        assert!(BiObjProblem::new(ProblemId::new(1, 1, 1), true).is_err());
    }

    #[test]
    fn evaluation_counts_and_composes() {
        let mut p = instantiate_problem(ProblemId::new(7, 3, 2)).unwrap();
        let x_alpha = p.alpha().x_opt().to_vec();
        let y = p.evaluate(&x_alpha).unwrap();
        assert_eq!(y, ObjectivePair::new(p.ideal().a, p.nadir().b));
        let x_beta = p.beta().x_opt().to_vec();
        assert_eq!(p.evaluate(&x_beta).unwrap().a, p.nadir().a);
        assert_eq!(p.eval_count(), 2);
        assert!(p.evaluate(&[0.0; 2]).is_err());
        assert_eq!(p.eval_count(), 2);
    }
}
