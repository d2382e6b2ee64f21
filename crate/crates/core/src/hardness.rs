//! Reduction from exactly-1-in-3 satisfiability to noisy double-resolution
//! reconstruction, and the lifting of `k = 2` instances to larger blocks.
//!
//! A formula with `T` variables and `S` clauses becomes a `k = 2` instance on
//! an `N × N` board, `N = S(6T+2) + 2T`. Every block is either reliable with
//! value 0, reliable with value 2, or unreliable with value 1. Truth values are
//! carried by "chips": a chip holding a full bottom row (`B1`) means true, a
//! full left column (`B3(1)`) means false.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::block::{block_mask, write_block, BlockType};
use crate::model::{BinaryImage, Instance};
use crate::oracle::{oracle_solve_fixed, SearchBudget};
use crate::Point;

/// A formula in which every clause must have exactly one true literal.
/// Literals are nonzero, `±t` for variable `t ∈ [1, vars]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneInThreeInstance {
    pub vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardnessError {
    NoClauses,
    /// A literal is zero or names a variable outside `1..=vars`.
    LiteralOutOfRange {
        clause: usize,
        literal: i32,
    },
    /// A clause mentions one variable twice.
    RepeatedVariable {
        clause: usize,
    },
    /// Boards need `ε ≥ 1`.
    ZeroEpsilon,
    /// The instance or image does not have the board's dimensions.
    BoardMismatch,
    /// An initializer chip is neither `B1` nor `B3(1)`.
    UnexpectedChip {
        var: usize,
        found: BlockType,
    },
}

impl fmt::Display for HardnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HardnessError::NoClauses => f.write_str("formula has no clauses"),
            HardnessError::LiteralOutOfRange { clause, literal } => {
                write!(f, "clause {}: literal {literal} out of range", clause + 1)
            }
            HardnessError::RepeatedVariable { clause } => {
                write!(f, "clause {} repeats a variable", clause + 1)
            }
            HardnessError::ZeroEpsilon => f.write_str("board generation needs eps >= 1"),
            HardnessError::BoardMismatch => f.write_str("instance does not match the board"),
            HardnessError::UnexpectedChip { var, found } => {
                write!(f, "initializer chip of variable {var} has type {found}")
            }
        }
    }
}

impl core::error::Error for HardnessError {}

impl OneInThreeInstance {
    pub fn validate(&self) -> Result<(), HardnessError> {
        if self.clauses.is_empty() {
            return Err(HardnessError::NoClauses);
        }
        for (s, clause) in self.clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > self.vars {
                    return Err(HardnessError::LiteralOutOfRange {
                        clause: s,
                        literal: lit,
                    });
                }
            }
            let [a, b, c] = clause.map(i32::unsigned_abs);
            if a == b || b == c || a == c {
                return Err(HardnessError::RepeatedVariable { clause: s });
            }
        }
        Ok(())
    }

    /// Whether every clause has exactly one true literal under `assignment`
    /// (`assignment[t - 1]` is the value of variable `t`).
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .filter(|&&lit| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0))
                .count()
                == 1
        })
    }

    /// All satisfying assignments, by enumeration in binary order with
    /// variable 1 as the most significant bit and `false < true`.
    pub fn satisfying_assignments(&self) -> Vec<Vec<bool>> {
        let t = self.vars;
        (0u64..1 << t)
            .map(|code| {
                (0..t)
                    .map(|v| code >> (t - 1 - v) & 1 == 1)
                    .collect::<Vec<_>>()
            })
            .filter(|a| self.is_satisfied_by(a))
            .collect()
    }
}

/// Block constraint of a board cell block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoardBlock {
    /// Reliable, no ones.
    Zero,
    /// Reliable, two ones.
    Two,
    /// Unreliable, one one up to the noise bound.
    Approx1,
}

/// A rectangle of cells with lower-left cell `origin`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rect {
    pub origin: Point,
    pub width: usize,
    pub height: usize,
}

impl Rect {
    fn new(origin: Point, width: usize, height: usize) -> Self {
        Rect {
            origin,
            width,
            height,
        }
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        let (x0, y0) = self.origin;
        let (x1, y1) = other.origin;
        x0 < x1 + other.width
            && x1 < x0 + self.width
            && y0 < y1 + other.height
            && y1 < y0 + self.height
    }

    pub fn contains(&self, other: &Rect) -> bool {
        let (x0, y0) = self.origin;
        let (x1, y1) = other.origin;
        x0 <= x1
            && y0 <= y1
            && x1 + other.width <= x0 + self.width
            && y1 + other.height <= y0 + self.height
    }
}

/// A named part of the board. `index` is the connector or clause number
/// (1-based) where that applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: &'static str,
    pub index: Option<usize>,
    pub rect: Rect,
}

/// Geometry and constraints of the board for one formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoardSpec {
    pub clauses: usize,
    pub vars: usize,
    /// Side length `N` in cells.
    pub size: usize,
    /// `a_1 … a_{S+1}`.
    pub anchors: Vec<usize>,
    /// Corner of the initializer chip of variable `t` at index `t − 1`.
    pub initializer_chips: Vec<Point>,
    /// `connector_chips[s][t]`: chip of variable `t + 1` in connector `s + 1`.
    pub connector_chips: Vec<Vec<Point>>,
    /// Lower-left cell of the 2 × 2 collector chip boxes, `[s][t]`.
    pub vertical_collector_chips: Vec<Vec<Point>>,
    pub horizontal_collector_chips: Vec<Vec<Point>>,
    /// Cells of every clause/variable configuration, `[s][t]`.
    pub configurations: Vec<Vec<Vec<Point>>>,
    /// Variables occurring unnegated (resp. negated) per clause, 1-based.
    pub unnegated: Vec<Vec<usize>>,
    pub negated: Vec<Vec<usize>>,
    /// Block constraints over the block grid, row-major, bottom row first.
    pub blocks: Vec<BoardBlock>,
    pub row_sums: Vec<u32>,
    pub col_sums: Vec<u32>,
    pub components: Vec<Component>,
}

impl BoardSpec {
    fn block_at(&self, (i, j): Point) -> BoardBlock {
        self.blocks[((j - 1) / 2) * (self.size / 2) + (i - 1) / 2]
    }

    pub fn unreliable_count(&self) -> usize {
        self.blocks
            .iter()
            .filter(|&&b| b == BoardBlock::Approx1)
            .count()
    }
}

/// Lays out the board for `sat`.
pub fn build_board(sat: &OneInThreeInstance) -> Result<BoardSpec, HardnessError> {
    sat.validate()?;
    let (s_count, t_count) = (sat.clauses.len(), sat.vars);
    let n = s_count * (6 * t_count + 2) + 2 * t_count;
    let anchors: Vec<usize> = (1..=s_count + 1)
        .map(|s| (6 * t_count + 2) * (s - 1) + 1)
        .collect();
    let tt = t_count;
    let bx = n / 2;
    let mut blocks = vec![BoardBlock::Zero; bx * bx];
    let mut set = |(i, j): Point, b: BoardBlock| blocks[((j - 1) / 2) * bx + (i - 1) / 2] = b;

    let a_last = anchors[s_count];
    let initializer_chips: Vec<Point> = (1..=tt)
        .map(|t| (a_last + 2 * (tt - t), 2 * t - 1))
        .collect();
    for &c in &initializer_chips {
        set(c, BoardBlock::Approx1);
    }
    let connector_chips: Vec<Vec<Point>> = anchors
        .iter()
        .map(|&a| {
            (1..=tt)
                .map(|t| (a + 2 * (tt - t), a + 2 * (t - 1)))
                .collect()
        })
        .collect();
    for &c in connector_chips.iter().flatten() {
        set(c, BoardBlock::Two);
    }

    let mut unnegated = Vec::with_capacity(s_count);
    let mut negated = Vec::with_capacity(s_count);
    for clause in &sat.clauses {
        let pick = |pos: bool| {
            let mut v: Vec<usize> = clause
                .iter()
                .filter(|&&l| (l > 0) == pos)
                .map(|&l| l.unsigned_abs() as usize)
                .collect();
            v.sort_unstable();
            v
        };
        unnegated.push(pick(true));
        negated.push(pick(false));
    }

    let mut vertical_collector_chips = Vec::with_capacity(s_count);
    let mut horizontal_collector_chips = Vec::with_capacity(s_count);
    let mut configurations = Vec::with_capacity(s_count);
    for s in 0..s_count {
        let a = anchors[s];
        let base = a + 2 * tt;
        let (u_s, n_s) = (&unnegated[s], &negated[s]);
        let mut vchips = Vec::with_capacity(tt);
        let mut hchips = Vec::with_capacity(tt);
        let mut configs = Vec::with_capacity(tt);
        for t in 1..=tt {
            let is_u = u_s.contains(&t);
            let is_n = n_s.contains(&t);
            // Collectors: the chip box straddles two unreliable blocks.
            let vx = a + 2 * (tt - t);
            set((vx, base + 4 * t - 4), BoardBlock::Approx1);
            set((vx, base + 4 * t - 2), BoardBlock::Approx1);
            vchips.push((vx, base + 4 * t - 3));
            let hy = a + 6 * tt + 2 * t;
            set((base + 4 * t - 2, hy), BoardBlock::Approx1);
            set((base + 4 * t, hy), BoardBlock::Approx1);
            hchips.push((base + 4 * t - 1, hy));
            // Verifiers.
            if is_u {
                set((base, base + 4 * t - 2), BoardBlock::Approx1);
                set((base + 4 * t - 2, a + 6 * tt), BoardBlock::Approx1);
            }
            if is_n {
                set((base, base + 4 * t - 4), BoardBlock::Approx1);
                set((base + 4 * t, a + 6 * tt), BoardBlock::Approx1);
            }
            // Transmitter.
            if !is_n {
                set((base + 4 * t, base + 4 * t - 4), BoardBlock::Approx1);
            }
            if !is_u {
                set((base + 4 * t - 2, base + 4 * t - 2), BoardBlock::Approx1);
            }
            let rel: Vec<Point> = if is_u {
                vec![(1, 4 * t - 2), (4 * t, 4 * t - 3), (4 * t - 1, 4 * tt)]
            } else if is_n {
                vec![(1, 4 * t - 3), (4 * t - 1, 4 * t - 2), (4 * t, 4 * tt)]
            } else {
                vec![(4 * t - 1, 4 * t - 2), (4 * t, 4 * t - 3)]
            };
            configs.push(rel.into_iter().map(|(x, y)| (base + x, base + y)).collect());
        }
        vertical_collector_chips.push(vchips);
        horizontal_collector_chips.push(hchips);
        configurations.push(configs);
    }

    let mut row_sums = vec![0u32; n];
    let mut col_sums = vec![0u32; n];
    for &a in &anchors {
        for l in 0..2 * tt {
            let v = if l % 2 == 0 { 3 } else { 1 };
            row_sums[a + l - 1] = v;
            col_sums[a + l - 1] = v;
        }
    }
    for &a in &anchors[..s_count] {
        let base = a + 2 * tt;
        row_sums[a + 6 * tt - 1] = 1;
        row_sums[a + 6 * tt] = 0;
        col_sums[base] = 1;
        col_sums[base - 1] = 0;
        for l in 0..tt {
            for (d, v) in [0u32, 2, 1, 0].into_iter().enumerate() {
                row_sums[base + 4 * l + d - 1] = v;
                col_sums[base + 4 * l + d + 2 - 1] = v;
            }
        }
    }

    let mut components = Vec::new();
    let side = 2 * tt;
    components.push(Component {
        kind: "initializer",
        index: None,
        rect: Rect::new((a_last, 1), side, side),
    });
    for (s, &a) in anchors.iter().enumerate() {
        components.push(Component {
            kind: "connector",
            index: Some(s + 1),
            rect: Rect::new((a, a), side, side),
        });
    }
    for (s, &a) in anchors[..s_count].iter().enumerate() {
        let base = a + 2 * tt;
        let idx = Some(s + 1);
        let parts = [
            ("clause_chip", Rect::new((a, base), 6 * tt + 2, 6 * tt + 2)),
            ("vertical_collector", Rect::new((a, base), side, 4 * tt)),
            ("vertical_verifier", Rect::new((base, base), 2, 4 * tt)),
            ("transmitter", Rect::new((base + 2, base), 4 * tt, 4 * tt)),
            (
                "horizontal_verifier",
                Rect::new((base + 2, a + 6 * tt), 4 * tt, 2),
            ),
            (
                "horizontal_collector",
                Rect::new((base + 2, a + 6 * tt + 2), 4 * tt, side),
            ),
        ];
        for (kind, rect) in parts {
            components.push(Component {
                kind,
                index: idx,
                rect,
            });
        }
    }

    Ok(BoardSpec {
        clauses: s_count,
        vars: t_count,
        size: n,
        anchors,
        initializer_chips,
        connector_chips,
        vertical_collector_chips,
        horizontal_collector_chips,
        configurations,
        unnegated,
        negated,
        blocks,
        row_sums,
        col_sums,
        components,
    })
}

/// The `k = 2` instance of a board with noise bound `epsilon` on the
/// unreliable blocks.
pub fn board_instance(board: &BoardSpec, epsilon: u32) -> Result<Instance, HardnessError> {
    if epsilon == 0 {
        return Err(HardnessError::ZeroEpsilon);
    }
    let (block_values, reliable) = board
        .blocks
        .iter()
        .map(|b| match b {
            BoardBlock::Zero => (0, true),
            BoardBlock::Two => (2, true),
            BoardBlock::Approx1 => (1, false),
        })
        .unzip();
    Ok(Instance {
        k: 2,
        epsilon,
        width: board.size,
        height: board.size,
        row_sums: board.row_sums.clone(),
        col_sums: board.col_sums.clone(),
        block_values,
        reliable,
    })
}

/// Builds the board for `sat` and returns its instance.
pub fn gen_sat_instance(sat: &OneInThreeInstance, epsilon: u32) -> Result<Instance, HardnessError> {
    board_instance(&build_board(sat)?, epsilon)
}

/// Message for noise bounds the construction is not known to tolerate.
pub fn epsilon_warning(epsilon: u32) -> Option<&'static str> {
    (epsilon >= 3).then_some(
        "eps >= 3 lets unreliable blocks hold four ones; the reduction is only argued for windows containing 0, 1 and 2",
    )
}

fn chip_type(value: bool) -> BlockType {
    if value {
        BlockType::B1
    } else {
        BlockType::B3(1)
    }
}

fn check_board(board: &BoardSpec, inst: &Instance) -> Result<(), HardnessError> {
    let ok = inst.k == 2
        && inst.width == board.size
        && inst.height == board.size
        && inst.row_sums == board.row_sums
        && inst.col_sums == board.col_sums
        && inst.corners().all(|c| {
            let expect = match board.block_at(c) {
                BoardBlock::Zero => (0, true),
                BoardBlock::Two => (2, true),
                BoardBlock::Approx1 => (1, false),
            };
            (inst.block_value(c), inst.is_reliable(c)) == expect
        });
    if ok {
        Ok(())
    } else {
        Err(HardnessError::BoardMismatch)
    }
}

/// Pins the initializer chips to `assignment` and completes the board by
/// propagation search. `Ok(None)` when no completion exists, which happens
/// exactly when the assignment does not satisfy the formula.
pub fn embed_assignment(
    board: &BoardSpec,
    inst: &Instance,
    assignment: &[bool],
) -> Result<Option<BinaryImage>, HardnessError> {
    Ok(embed_completions(board, inst, assignment, 1)?
        .into_iter()
        .next())
}

/// Up to `limit` completions of the board with the initializer chips pinned.
pub fn embed_completions(
    board: &BoardSpec,
    inst: &Instance,
    assignment: &[bool],
    limit: u64,
) -> Result<Vec<BinaryImage>, HardnessError> {
    check_board(board, inst)?;
    if assignment.len() != board.vars {
        return Err(HardnessError::BoardMismatch);
    }
    let mut chips = BinaryImage::new(2, 2);
    let mut fixed = Vec::with_capacity(4 * board.vars);
    for (&(i, j), &value) in board.initializer_chips.iter().zip(assignment) {
        write_block(&mut chips, (1, 1), chip_type(value));
        for (dx, dy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            fixed.push(((i + dx, j + dy), chips.get(1 + dx, 1 + dy)));
        }
    }
    Ok(oracle_solve_fixed(inst, &fixed, SearchBudget::solutions(limit)).result)
}

/// Reads the assignment off the initializer chips of a board image.
pub fn extract_assignment(
    board: &BoardSpec,
    img: &BinaryImage,
) -> Result<Vec<bool>, HardnessError> {
    if img.width() != board.size || img.height() != board.size {
        return Err(HardnessError::BoardMismatch);
    }
    board
        .initializer_chips
        .iter()
        .enumerate()
        .map(|(t, &c)| match BlockType::from_mask(block_mask(img, c)) {
            BlockType::B1 => Ok(true),
            BlockType::B3(1) => Ok(false),
            found => Err(HardnessError::UnexpectedChip { var: t + 1, found }),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftError {
    /// Only `k = 2` instances can be lifted.
    SourceBlockSize(usize),
    /// The target block size must be at least 2.
    TargetBlockSize(usize),
}

impl fmt::Display for LiftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftError::SourceBlockSize(k) => {
                write!(f, "can only lift k = 2 instances, got k = {k}")
            }
            LiftError::TargetBlockSize(k) => write!(f, "target block size must be >= 2, got {k}"),
        }
    }
}

impl core::error::Error for LiftError {}

/// Embeds a `k = 2` instance into block size `k_prime`: every strip of two
/// lines becomes a strip of `k_prime` lines whose first two carry the
/// original sums and the rest zero. Feasibility is preserved both ways.
pub fn lift_instance(inst: &Instance, k_prime: usize) -> Result<Instance, LiftError> {
    if inst.k != 2 {
        return Err(LiftError::SourceBlockSize(inst.k));
    }
    if k_prime < 2 {
        return Err(LiftError::TargetBlockSize(k_prime));
    }
    let lift_sums = |sums: &[u32]| -> Vec<u32> {
        sums.chunks_exact(2)
            .flat_map(|pair| {
                let mut strip = vec![0; k_prime];
                strip[0] = pair[0];
                strip[1] = pair[1];
                strip
            })
            .collect()
    };
    Ok(Instance {
        k: k_prime,
        epsilon: inst.epsilon,
        width: inst.width / 2 * k_prime,
        height: inst.height / 2 * k_prime,
        row_sums: lift_sums(&inst.row_sums),
        col_sums: lift_sums(&inst.col_sums),
        block_values: inst.block_values.clone(),
        reliable: inst.reliable.clone(),
    })
}

/// Places each `2 × 2` block of a solution in the lower-left corner of the
/// corresponding lifted block.
pub fn lift_image(img: &BinaryImage, k_prime: usize) -> BinaryImage {
    let map = |c: usize| (c - 1) / 2 * k_prime + (c - 1) % 2 + 1;
    let mut out = BinaryImage::new(img.width() / 2 * k_prime, img.height() / 2 * k_prime);
    for q in 1..=img.height() {
        for p in 1..=img.width() {
            if img.get(p, q) {
                out.set(map(p), map(q), true);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::verify_solution;
    use crate::oracle::oracle_count;

    fn one_clause() -> OneInThreeInstance {
        OneInThreeInstance {
            vars: 4,
            clauses: vec![[1, -2, 3]],
        }
    }

    #[test]
    fn validation() {
        let mut sat = one_clause();
        assert!(sat.validate().is_ok());
        sat.clauses.push([1, 1, 2]);
        assert_eq!(
            sat.validate(),
            Err(HardnessError::RepeatedVariable { clause: 1 })
        );
        sat.clauses[1] = [1, 2, 5];
        assert!(matches!(
            sat.validate(),
            Err(HardnessError::LiteralOutOfRange { .. })
        ));
        sat.clauses.clear();
        assert_eq!(sat.validate(), Err(HardnessError::NoClauses));
    }

    #[test]
    fn one_clause_dimensions_and_counts() {
        let board = build_board(&one_clause()).unwrap();
        assert_eq!(board.size, 34);
        assert_eq!(board.blocks.len(), 289);
        assert_eq!(board.unreliable_count(), 31);
        assert_eq!(board.anchors, vec![1, 27]);
        let inst = gen_sat_instance(&one_clause(), 1).unwrap();
        let a = 1;
        assert_eq!(inst.row_sums[a + 24 - 1], 1);
        assert_eq!(inst.row_sums[a + 25 - 1], 0);
        assert_eq!(&inst.row_sums[..8], &[3, 1, 3, 1, 3, 1, 3, 1]);
        assert_eq!(&inst.col_sums[26..34], &[3, 1, 3, 1, 3, 1, 3, 1]);
        let rs: u32 = inst.row_sums.iter().sum();
        let cs: u32 = inst.col_sums.iter().sum();
        assert_eq!(rs, cs);
    }

    #[test]
    fn anchors_for_three_clauses() {
        let sat = OneInThreeInstance {
            vars: 3,
            clauses: vec![[1, 2, 3]; 3],
        };
        let b = build_board(&sat).unwrap();
        assert_eq!(b.anchors[..3], [1, 6 * 3 + 3, 2 * (6 * 3 + 2) + 1]);
    }

    #[test]
    fn counts_and_disjoint_components() {
        for s in 1..=3usize {
            for t in 3..=6usize {
                let sat = OneInThreeInstance {
                    vars: t,
                    clauses: (0..s)
                        .map(|i| {
                            let v = |d: usize| ((i + d) % t + 1) as i32;
                            [v(0), -v(1), v(2)]
                        })
                        .collect(),
                };
                let b = build_board(&sat).unwrap();
                assert_eq!(b.size % 2, 0);
                assert_eq!(b.unreliable_count(), s * (6 * t + 3) + t);
                assert_eq!(b.blocks.len(), (s * (3 * t + 1) + t).pow(2));
                let board = Rect::new((1, 1), b.size, b.size);
                let top: Vec<&Component> = b
                    .components
                    .iter()
                    .filter(|c| matches!(c.kind, "initializer" | "connector" | "clause_chip"))
                    .collect();
                for (x, c) in top.iter().enumerate() {
                    assert!(board.contains(&c.rect));
                    for d in &top[x + 1..] {
                        assert!(!c.rect.intersects(&d.rect), "{c:?} {d:?}");
                    }
                }
                let parts: Vec<&Component> = b
                    .components
                    .iter()
                    .filter(|c| {
                        c.kind.ends_with("collector")
                            || c.kind.ends_with("verifier")
                            || c.kind == "transmitter"
                    })
                    .collect();
                for (x, c) in parts.iter().enumerate() {
                    let chip = top
                        .iter()
                        .find(|p| p.kind == "clause_chip" && p.index == c.index)
                        .unwrap();
                    assert!(chip.rect.contains(&c.rect));
                    for d in &parts[x + 1..] {
                        assert!(!c.rect.intersects(&d.rect), "{c:?} {d:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn configurations_lie_in_unreliable_blocks() {
        let b = build_board(&one_clause()).unwrap();
        for cfg in b.configurations.iter().flatten() {
            for &(p, q) in cfg {
                let corner = (p - (p - 1) % 2, q - (q - 1) % 2);
                assert_eq!(b.block_at(corner), BoardBlock::Approx1, "{p},{q}");
            }
        }
    }

    #[test]
    fn one_clause_embedding() {
        let sat = one_clause();
        let board = build_board(&sat).unwrap();
        let inst = board_instance(&board, 1).unwrap();
        let img = embed_assignment(&board, &inst, &[true, true, false, false])
            .unwrap()
            .unwrap();
        assert!(verify_solution(&inst, &img).unwrap().satisfied);
        assert_eq!(
            extract_assignment(&board, &img).unwrap(),
            vec![true, true, false, false]
        );
        assert_eq!(embed_assignment(&board, &inst, &[true; 4]).unwrap(), None);

        let mut tampered = img.clone();
        write_block(&mut tampered, board.initializer_chips[0], BlockType::B3(3));
        assert!(matches!(
            extract_assignment(&board, &tampered),
            Err(HardnessError::UnexpectedChip { var: 1, .. })
        ));
    }

    #[test]
    fn one_clause_parsimony() {
        let sat = one_clause();
        let board = build_board(&sat).unwrap();
        let inst = board_instance(&board, 1).unwrap();
        let mut images = Vec::new();
        for code in 0..16u32 {
            let a: Vec<bool> = (0..4).map(|v| code >> (3 - v) & 1 == 1).collect();
            let completions = embed_completions(&board, &inst, &a, 2).unwrap();
            assert_eq!(completions.len() == 1, sat.is_satisfied_by(&a), "{a:?}");
            assert!(completions.len() <= 1);
            if let Some(img) = completions.into_iter().next() {
                assert_eq!(extract_assignment(&board, &img).unwrap(), a);
                images.push(img);
            }
        }
        assert_eq!(images.len(), 6);
        assert_eq!(sat.satisfying_assignments().len(), 6);
        let total = oracle_count(&inst, SearchBudget::default());
        assert_eq!((total.result, total.exhausted), (6, true));
    }

    #[test]
    fn lifting_examples() {
        let inst = Instance {
            k: 2,
            epsilon: 0,
            width: 2,
            height: 2,
            row_sums: vec![1, 1],
            col_sums: vec![2, 0],
            block_values: vec![2],
            reliable: vec![true],
        };
        assert_eq!(lift_instance(&inst, 2).unwrap(), inst);
        let lifted = lift_instance(&inst, 4).unwrap();
        assert_eq!((lifted.width, lifted.height, lifted.k), (4, 4, 4));
        assert_eq!(lifted.row_sums, vec![1, 1, 0, 0]);
        assert_eq!(lifted.col_sums, vec![2, 0, 0, 0]);
        assert_eq!(lifted.block_values, vec![2]);
        let a = oracle_count(&inst, SearchBudget::default()).result;
        let b = oracle_count(&lifted, SearchBudget::default()).result;
        assert_eq!(a, b);
        assert!(lift_instance(&lifted, 4).is_err());
        assert!(lift_instance(&inst, 1).is_err());
    }

    #[test]
    fn lifted_images_solve_lifted_instances() {
        let img = BinaryImage::from_rows(&["#..#", ".##.", "#.#.", "##.."]);
        let inst = crate::model::make_exact_instance(&img, 2).unwrap();
        for kp in [3, 4, 6] {
            let lifted = lift_instance(&inst, kp).unwrap();
            assert!(
                verify_solution(&lifted, &lift_image(&img, kp))
                    .unwrap()
                    .satisfied
            );
        }
    }

    #[test]
    fn warning_threshold() {
        assert!(epsilon_warning(2).is_none());
        assert!(epsilon_warning(3).is_some());
    }
}
