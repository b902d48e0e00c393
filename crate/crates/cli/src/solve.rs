use clap::ValueEnum;
use mbc_core::exact::solve_exact;
use mbc_core::greedy::{greedy_modified, greedy_modified_over, greedy_ratio, greedy_unit};
use mbc_core::tree::tree_solve;
use mbc_core::{CostedInstance, PathCounts, Solution};

use crate::error::{invalid, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Unit,
    Ratio,
    Modified,
    Tree,
    Exact,
}

impl Algo {
    pub fn parse(name: &str) -> Result<Algo> {
        Algo::from_str(name, true).map_err(|_| CliError::Validation(format!("unknown algorithm `{name}`")))
    }
}

/// Runs one solver. `candidates` restricts the modified greedy and the exact solver.
pub fn run(inst: &CostedInstance, pc: &PathCounts, algo: Algo, candidates: Option<&[usize]>) -> Result<Solution> {
    if candidates.is_some() && !matches!(algo, Algo::Modified | Algo::Exact) {
        return Err(CliError::Usage("--candidates applies to the modified and exact algorithms only".into()));
    }
    match algo {
        Algo::Unit => {
            if !inst.has_unit_costs() {
                return Err(CliError::Validation("the unit algorithm needs unit costs".into()));
            }
            if inst.budget.fract() != 0.0 {
                return Err(CliError::Validation(format!(
                    "the unit algorithm needs an integer budget, got {}",
                    inst.budget
                )));
            }
            Ok(greedy_unit(inst, pc, inst.budget as usize))
        }
        Algo::Ratio => Ok(greedy_ratio(inst, pc)),
        Algo::Modified => Ok(match candidates {
            Some(c) => greedy_modified_over(inst, pc, c),
            None => greedy_modified(inst, pc),
        }),
        Algo::Tree => tree_solve(inst).map_err(invalid),
        Algo::Exact => solve_exact(inst, pc, candidates).map_err(invalid),
    }
}
