//! Bounded search, random generation and the property checks built on them.

pub mod checks;
pub mod gen;
pub mod report;
pub mod search;
pub mod suite;

pub use checks::*;
pub use gen::{Calc, Fragment, Gen, GenConfig, GenError, Generated, Sort};
pub use report::{Bound, CheckReport, Status, Summary, WitnessStep};
pub use search::{
    closure, explore, find_path, meet, replay, Calculus, Explored, LinearAudit, Limits, Lm, Lmm, Meet, PathSearch,
    Relation, SearchStats,
};
pub use suite::{merge, run_instance, CheckName, SuiteConfig};
