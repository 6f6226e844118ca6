//! Kernels for the λμ and λ̄μμ̃ calculi: syntax, substitution, reduction
//! strategies, simple types, the translations between the two calculi, and
//! a search harness that checks their metatheory on concrete subjects.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod harness;
pub mod lm;
pub mod lmm;
pub mod name;
pub mod redex;
pub mod translate;
pub mod typing;

pub use error::KernelError;
pub use name::{CoVarName, Fresh, NameSet, VarName};
pub use redex::{Measure, Position, RedexInfo, ReduceOrder, Reduction, Termination, Trace};
