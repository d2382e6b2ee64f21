//! Exhaustive reference solver for arbitrary `k` and `ε`.
//!
//! Depth-first search over candidate cells in row-major bottom-up order with
//! saturation propagation on every row, column and block window. Exponential
//! in the worst case; meant for small instances and cross-checking.

use alloc::vec::Vec;

use crate::model::{BinaryImage, Instance};
use crate::search::Engine;
use crate::Point;

/// Caps on a single search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_solutions: u64,
    pub max_nodes: u64,
}

impl SearchBudget {
    /// Stop after `max_solutions` solutions, with an effectively unbounded node cap.
    pub fn solutions(max_solutions: u64) -> Self {
        SearchBudget {
            max_solutions,
            ..Self::default()
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_solutions: u64::MAX,
            max_nodes: u64::MAX,
        }
    }
}

/// Result of an oracle search. `exhausted` means the whole search space was
/// explored, so the solutions found are all solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome<T> {
    pub result: T,
    pub exhausted: bool,
    /// Branching nodes expanded.
    pub nodes: u64,
}

fn sums_balance(inst: &Instance) -> bool {
    let r: u64 = inst.row_sums.iter().map(|&x| u64::from(x)).sum();
    let c: u64 = inst.col_sums.iter().map(|&x| u64::from(x)).sum();
    r == c
}

/// Enumerates solutions of `inst` with the given cells pinned.
pub fn oracle_solve_fixed(
    inst: &Instance,
    fixed: &[(Point, bool)],
    budget: SearchBudget,
) -> OracleOutcome<Vec<BinaryImage>> {
    let mut solutions = Vec::new();
    if !sums_balance(inst) {
        return OracleOutcome {
            result: solutions,
            exhausted: true,
            nodes: 0,
        };
    }
    let mut engine = Engine::new(inst);
    for &(cell, v) in fixed {
        engine.fix(cell, v);
    }
    let o = engine.run(budget.max_solutions, budget.max_nodes, |e| {
        solutions.push(e.image())
    });
    OracleOutcome {
        result: solutions,
        exhausted: o.exhausted,
        nodes: o.nodes,
    }
}

/// All solutions of `inst`, up to `budget.max_solutions`.
pub fn oracle_solve(inst: &Instance, budget: SearchBudget) -> OracleOutcome<Vec<BinaryImage>> {
    oracle_solve_fixed(inst, &[], budget)
}

/// Number of solutions of `inst`, up to `budget.max_solutions`.
pub fn oracle_count(inst: &Instance, budget: SearchBudget) -> OracleOutcome<u64> {
    if !sums_balance(inst) {
        return OracleOutcome {
            result: 0,
            exhausted: true,
            nodes: 0,
        };
    }
    let o = Engine::new(inst).run(budget.max_solutions, budget.max_nodes, |_| {});
    OracleOutcome {
        result: o.solutions,
        exhausted: o.exhausted,
        nodes: o.nodes,
    }
}

/// Number of cells the search branches over (after zero-line and zero-block
/// elimination).
pub fn candidate_cell_count(inst: &Instance) -> usize {
    Engine::new(inst).variable_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_exact_instance, verify_solution};
    use alloc::vec;

    fn single_block(v: u32, r: [u32; 2], c: [u32; 2]) -> Instance {
        Instance {
            k: 2,
            epsilon: 0,
            width: 2,
            height: 2,
            row_sums: r.to_vec(),
            col_sums: c.to_vec(),
            block_values: vec![v],
            reliable: vec![true],
        }
    }

    #[test]
    fn all_zero_has_one_solution() {
        let inst = make_exact_instance(&BinaryImage::new(4, 4), 2).unwrap();
        let o = oracle_solve(&inst, SearchBudget::default());
        assert_eq!(o.result, vec![BinaryImage::new(4, 4)]);
        assert!(o.exhausted);
    }

    #[test]
    fn diagonal_pair_has_two_solutions() {
        let inst = single_block(2, [1, 1], [1, 1]);
        let o = oracle_solve(&inst, SearchBudget::default());
        assert_eq!(o.result.len(), 2);
        assert!(o.exhausted);
        for img in &o.result {
            assert!(verify_solution(&inst, img).unwrap().satisfied);
        }
        assert_eq!(oracle_count(&inst, SearchBudget::default()).result, 2);
    }

    #[test]
    fn forced_pattern_is_unique() {
        let inst = single_block(2, [2, 0], [1, 1]);
        assert_eq!(oracle_count(&inst, SearchBudget::default()).result, 1);
    }

    #[test]
    fn unbalanced_sums_have_none() {
        let inst = single_block(1, [1, 0], [1, 1]);
        let o = oracle_count(&inst, SearchBudget::default());
        assert_eq!((o.result, o.exhausted), (0, true));
    }

    #[test]
    fn solution_cap_clears_exhausted() {
        let inst = single_block(2, [1, 1], [1, 1]);
        let o = oracle_count(&inst, SearchBudget::solutions(1));
        assert_eq!((o.result, o.exhausted), (1, false));
    }

    #[test]
    fn node_cap_clears_exhausted() {
        let inst = Instance {
            k: 2,
            epsilon: 0,
            width: 4,
            height: 4,
            row_sums: vec![2; 4],
            col_sums: vec![2; 4],
            block_values: vec![2; 4],
            reliable: vec![true; 4],
        };
        let o = oracle_count(
            &inst,
            SearchBudget {
                max_solutions: u64::MAX,
                max_nodes: 1,
            },
        );
        assert!(!o.exhausted);
        let full = oracle_count(&inst, SearchBudget::default());
        assert!(full.exhausted && full.result > 1);
    }

    #[test]
    fn noisy_window_counts_all_levels() {
        // One unreliable block with value 1, ε = 1: every image with equal
        // line-sum patterns and 0..=2 ones in the block.
        let mut inst = single_block(1, [1, 0], [1, 0]);
        inst.epsilon = 1;
        inst.reliable = vec![false];
        assert_eq!(oracle_count(&inst, SearchBudget::default()).result, 1);
        inst.row_sums = vec![1, 1];
        inst.col_sums = vec![1, 1];
        assert_eq!(oracle_count(&inst, SearchBudget::default()).result, 2);
    }

    #[test]
    fn pinned_cells() {
        let inst = single_block(2, [1, 1], [1, 1]);
        let o = oracle_solve_fixed(&inst, &[((1, 1), true)], SearchBudget::default());
        assert_eq!(o.result, vec![BinaryImage::from_rows(&[".#", "#."])]);
        let o = oracle_solve_fixed(
            &inst,
            &[((1, 1), true), ((2, 1), true)],
            SearchBudget::default(),
        );
        assert!(o.result.is_empty() && o.exhausted);
    }
}
