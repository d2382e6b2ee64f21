//! Exact reconstruction for `k = 2`, `ε = 0` and the uniqueness decision.
//!
//! The instance is first made proper (in every strip the lower line carries
//! the larger sum). Full and empty blocks are fixed, then each strip's sums
//! determine how many blocks of every type it holds, which splits the problem
//! into three independent single-gray-level problems.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::block::{write_block, BlockType};
use crate::model::{validate_instance, verify_solution, BinaryImage, Instance, InstanceError};
use crate::subsolvers::{
    solve_dr1, solve_dr2, solve_dr3, strip, unique_dr1, unique_dr2, unique_dr3, PartialImage,
    SubInstance,
};
use crate::switches::{has_reversed_switch, reduce_by_strips};

/// Per-strip line swaps. `rows[s]` exchanges rows `2s+1` and `2s+2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripPermutation {
    pub rows: Vec<bool>,
    pub cols: Vec<bool>,
}

impl StripPermutation {
    pub fn is_identity(&self) -> bool {
        !self.rows.iter().chain(&self.cols).any(|&s| s)
    }

    /// Applies the swaps to the line sums of `inst`. Block values are unchanged.
    pub fn apply_to_instance(&self, inst: &Instance) -> Instance {
        let mut out = inst.clone();
        for (s, _) in self.rows.iter().enumerate().filter(|(_, &x)| x) {
            out.row_sums.swap(2 * s, 2 * s + 1);
        }
        for (s, _) in self.cols.iter().enumerate().filter(|(_, &x)| x) {
            out.col_sums.swap(2 * s, 2 * s + 1);
        }
        out
    }

    pub fn apply_to_image(&self, img: &BinaryImage) -> BinaryImage {
        let mut out = img.clone();
        for (s, _) in self.rows.iter().enumerate().filter(|(_, &x)| x) {
            out.swap_rows(2 * s + 1, 2 * s + 2);
        }
        for (s, _) in self.cols.iter().enumerate().filter(|(_, &x)| x) {
            out.swap_cols(2 * s + 1, 2 * s + 2);
        }
        out
    }
}

/// Swaps line sums within strips so that `r_j ≥ r_{j+1}` and `c_i ≥ c_{i+1}`.
pub fn properize(inst: &Instance) -> (Instance, StripPermutation) {
    let swaps = |sums: &[u32]| -> Vec<bool> { sums.chunks_exact(2).map(|p| p[0] < p[1]).collect() };
    let perm = StripPermutation {
        rows: swaps(&inst.row_sums),
        cols: swaps(&inst.col_sums),
    };
    (perm.apply_to_instance(inst), perm)
}

/// Block-type counts of one strip, seen along the strip: `alpha` counts
/// one-ones in the lower/upper line, `beta`/`beta_next` two-ones filling the
/// lower/upper line, `beta_prime` two-ones split one per line, and `gamma`
/// three-ones whose zero lies in the lower/upper line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StripCounts {
    pub alpha: (u32, u32),
    pub beta: u32,
    pub beta_prime: u32,
    pub beta_next: u32,
    pub gamma: (u32, u32),
}

impl StripCounts {
    pub fn dr1_sums(&self) -> (u32, u32) {
        self.alpha
    }

    pub fn dr2_sums(&self) -> (u32, u32) {
        (
            2 * self.beta + self.beta_prime,
            2 * self.beta_next + self.beta_prime,
        )
    }

    pub fn dr3_sums(&self) -> (u32, u32) {
        let (g0, g1) = self.gamma;
        (g0 + 2 * g1, 2 * g0 + g1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StripCase {
    Case1(StripCounts),
    Case2(StripCounts),
    Case3(StripCounts),
    Infeasible,
}

impl StripCase {
    pub fn counts(&self) -> Option<StripCounts> {
        match *self {
            StripCase::Case1(c) | StripCase::Case2(c) | StripCase::Case3(c) => Some(c),
            StripCase::Infeasible => None,
        }
    }
}

/// Splits a strip with sums `r0 ≥ r1` holding `v1`, `v2`, `v3` blocks of value
/// 1, 2, 3 into block-type counts.
pub fn classify_strip(r0: u32, r1: u32, v1: u32, v2: u32, v3: u32) -> StripCase {
    if r0 + r1 != v1 + 2 * v2 + 3 * v3 {
        return StripCase::Infeasible;
    }
    if v3 <= r1 && r1 < v2 + v3 {
        StripCase::Case1(StripCounts {
            alpha: (v1, 0),
            beta: v2 + v3 - r1,
            beta_prime: r1 - v3,
            beta_next: 0,
            gamma: (0, v3),
        })
    } else if v2 + v3 <= r1 && r1 < v1 + v2 + v3 {
        StripCase::Case2(StripCounts {
            alpha: (v1 + v2 + v3 - r1, r1 - v2 - v3),
            beta: 0,
            beta_prime: v2,
            beta_next: 0,
            gamma: (0, v3),
        })
    } else if v1 + v2 + v3 <= r1 && r1 <= v1 + v2 + 2 * v3 {
        StripCase::Case3(StripCounts {
            alpha: (0, v1),
            beta: 0,
            beta_prime: v2,
            beta_next: 0,
            gamma: (r1 - v1 - v2 - v3, v1 + v2 + 2 * v3 - r1),
        })
    } else {
        StripCase::Infeasible
    }
}

/// Why [`solve_dr`] or [`check_unique`] could not run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DrError {
    /// The exact solver needs `k = 2` and `ε = 0`.
    Unsupported { k: usize, epsilon: u32 },
    /// The instance is structurally invalid.
    Invalid(Vec<InstanceError>),
}

impl fmt::Display for DrError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DrError::Unsupported { k, epsilon } => write!(
                f,
                "the exact solver handles k = 2, eps = 0 only (got k = {k}, eps = {epsilon})"
            ),
            DrError::Invalid(errors) => {
                f.write_str("invalid instance")?;
                for e in errors {
                    write!(f, "; {e}")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for DrError {}

fn check_supported(inst: &Instance) -> Result<bool, DrError> {
    if inst.k != 2 || inst.epsilon != 0 {
        return Err(DrError::Unsupported {
            k: inst.k,
            epsilon: inst.epsilon,
        });
    }
    let errors = validate_instance(inst);
    if errors.iter().any(InstanceError::is_structural) {
        return Err(DrError::Invalid(
            errors
                .into_iter()
                .filter(InstanceError::is_structural)
                .collect(),
        ));
    }
    Ok(errors.is_empty())
}

/// Everything the solver derived on the way to a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrSolution {
    /// Reduced solution of the original instance.
    pub image: BinaryImage,
    /// Reduced solution of the properized instance.
    pub proper_image: BinaryImage,
    pub permutation: StripPermutation,
    /// Subproblems for gray levels 1, 2, 3.
    pub subproblems: [SubInstance; 3],
    pub partial: [PartialImage; 3],
}

struct Strips {
    /// Per strip: number of blocks of value 0..=4.
    counts: Vec<[u32; 5]>,
}

fn strip_levels(proper: &Instance, horizontal: bool) -> Strips {
    let n = if horizontal {
        proper.height / 2
    } else {
        proper.width / 2
    };
    let mut counts = vec![[0u32; 5]; n];
    for corner in proper.corners() {
        let s = strip(if horizontal { corner.1 } else { corner.0 });
        counts[s][proper.block_value(corner) as usize] += 1;
    }
    Strips { counts }
}

/// Classifies every strip of one orientation after removing full blocks.
fn classify_all(sums: &[u32], strips: &Strips) -> Option<Vec<StripCounts>> {
    sums.chunks_exact(2)
        .zip(&strips.counts)
        .map(|(pair, c)| {
            let full = 2 * c[4];
            let r0 = pair[0].checked_sub(full)?;
            let r1 = pair[1].checked_sub(full)?;
            classify_strip(r0, r1, c[1], c[2], c[3]).counts()
        })
        .collect()
}

fn derive(proper: &Instance, rows: &[StripCounts], cols: &[StripCounts], nu: u32) -> SubInstance {
    let blocks = proper
        .corners()
        .filter(|&c| proper.block_value(c) == nu)
        .collect();
    let mut sub = SubInstance::new(proper.width, proper.height, nu, blocks);
    let pick = |c: &StripCounts| match nu {
        1 => c.dr1_sums(),
        2 => c.dr2_sums(),
        _ => c.dr3_sums(),
    };
    sub.row_pairs = rows.iter().map(pick).collect();
    sub.col_pairs = cols.iter().map(pick).collect();
    sub
}

/// Subproblems for gray levels 1, 2 and 3 of a proper instance, given the
/// classification of every horizontal and vertical strip.
pub fn derive_sub_sums(
    proper: &Instance,
    rows: &[StripCounts],
    cols: &[StripCounts],
) -> [SubInstance; 3] {
    [1, 2, 3].map(|nu| derive(proper, rows, cols, nu))
}

/// The solver with its intermediate results; `Ok(None)` means infeasible.
pub fn solve_dr_detailed(inst: &Instance) -> Result<Option<DrSolution>, DrError> {
    if !check_supported(inst)? {
        return Ok(None);
    }
    let (proper, permutation) = properize(inst);
    let Some(rows) = classify_all(&proper.row_sums, &strip_levels(&proper, true)) else {
        return Ok(None);
    };
    let Some(cols) = classify_all(&proper.col_sums, &strip_levels(&proper, false)) else {
        return Ok(None);
    };
    let subproblems = derive_sub_sums(&proper, &rows, &cols);
    let solved = (
        solve_dr1(&subproblems[0]).expect("level 1"),
        solve_dr2(&subproblems[1]).expect("proper instance has ordered sums"),
        solve_dr3(&subproblems[2]).expect("level 3"),
    );
    let (Some(p1), Some(p2), Some(p3)) = solved else {
        return Ok(None);
    };

    let mut proper_image = BinaryImage::new(inst.width, inst.height);
    for corner in proper.corners() {
        if proper.block_value(corner) == 4 {
            write_block(&mut proper_image, corner, BlockType::Full);
        }
    }
    for p in [&p1, &p2, &p3] {
        p.write_into(&mut proper_image);
    }
    let image = if permutation.is_identity() {
        proper_image.clone()
    } else {
        // Undoing the line swaps can create forward switches.
        reduce_by_strips(&permutation.apply_to_image(&proper_image)).0
    };
    let ok = verify_solution(inst, &image).is_ok_and(|r| r.satisfied);
    Ok(ok.then_some(DrSolution {
        image,
        proper_image,
        permutation,
        subproblems,
        partial: [p1, p2, p3],
    }))
}

/// A solution of an exact `k = 2` instance, or `None` if there is none.
pub fn solve_dr(inst: &Instance) -> Result<Option<BinaryImage>, DrError> {
    Ok(solve_dr_detailed(inst)?.map(|s| s.image))
}

/// Whether the instance has exactly one solution; `None` if it has none.
pub fn check_unique(inst: &Instance) -> Result<Option<bool>, DrError> {
    let Some(sol) = solve_dr_detailed(inst)? else {
        return Ok(None);
    };
    Ok(Some(unique_given(&sol)))
}

/// Uniqueness test on an already computed solution.
pub fn unique_given(sol: &DrSolution) -> bool {
    let [s1, s2, s3] = &sol.subproblems;
    let subproblems_unique = unique_dr1(s1).expect("solved subproblem")
        && unique_dr3(s3).expect("solved subproblem")
        && unique_dr2(s2, &sol.partial[1]);
    subproblems_unique && !has_reversed_switch(&sol.proper_image)
}
