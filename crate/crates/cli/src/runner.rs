//! Batches of seeded check instances, fanned out over a thread pool and
//! merged deterministically.

use rayon::prelude::*;

use mumu_core::harness::{merge, run_instance, CheckName, CheckReport, SuiteConfig};

/// Instance `i` uses seed `seed + i`.
pub fn run(name: CheckName, seed: u64, count: u64, cfg: &SuiteConfig) -> Vec<CheckReport> {
    // the non-confluence witness has no random input
    let count = if name == CheckName::Nonconfluence { count.min(1) } else { count };
    let batches: Vec<(u64, Vec<CheckReport>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            (s, run_instance(name, s, cfg))
        })
        .collect();
    merge(batches)
}
