//! Bi-objective black-box benchmark suite.
//!
//! Fifty-five bi-objective problems built from pairs of ten classic
//! single-objective test functions, each available in six dimensions and
//! any number of seeded instances, together with ideal/nadir normalization,
//! an exact two-objective hypervolume, a non-dominated archive, and a small
//! experiment harness with baseline optimizers.

pub mod constants;
pub mod error;
pub mod functions;
pub mod harness;
pub mod indicator;
pub mod rng;
pub mod suite;
pub mod transforms;

pub use error::{Error, Result};
pub use functions::{instantiate_base, properties_of, BaseFunctionId, BaseInstance, FunctionClass, FunctionProperties};
pub use indicator::{dominates, hypervolume, normalize, Archive, ObjectivePair};
pub use suite::{enumerate_suite, group_of, instance_map, instantiate_problem, BiObjProblem, GroupLabel, ProblemId, SuiteFilter};
