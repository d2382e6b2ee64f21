//! Solvers and uniqueness tests for the single-gray-level restrictions, in
//! which every block of a corner set `I` holds the same number `ν` of ones
//! and only the line sums of strips meeting `I` are prescribed.
//!
//! Strip sums are stored densely: entry `s` of `row_pairs` holds
//! `(r_{2s+1}, r_{2s+2})` for the horizontal strip of rows `2s+1, 2s+2`, and
//! likewise for columns. Strips that contain no block of `I` must carry
//! `(0, 0)` to be feasible.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::block::{block_mask, write_block, BlockType};
use crate::flow::{ArcId, Network};
use crate::model::BinaryImage;
use crate::Point;

/// An instance of the single-gray-level problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubInstance {
    pub width: usize,
    pub height: usize,
    /// Ones per block, in `0..=4`.
    pub nu: u32,
    /// Corners of `I`.
    pub blocks: Vec<Point>,
    /// Row-pair sums per horizontal strip.
    pub row_pairs: Vec<(u32, u32)>,
    /// Column-pair sums per vertical strip.
    pub col_pairs: Vec<(u32, u32)>,
}

#[inline]
pub(crate) fn strip(coord: usize) -> usize {
    (coord - 1) / 2
}

impl SubInstance {
    /// An instance over `blocks` with all strip sums zero.
    pub fn new(width: usize, height: usize, nu: u32, mut blocks: Vec<Point>) -> Self {
        blocks.sort_unstable();
        SubInstance {
            width,
            height,
            nu,
            blocks,
            row_pairs: vec![(0, 0); height / 2],
            col_pairs: vec![(0, 0); width / 2],
        }
    }

    /// Number of blocks per horizontal strip (`ρ_j(m)`).
    pub fn row_strip_counts(&self) -> Vec<u32> {
        let mut rho = vec![0; self.height / 2];
        for &(_, j) in &self.blocks {
            rho[strip(j)] += 1;
        }
        rho
    }

    /// Number of blocks per vertical strip (`σ_i(n)`).
    pub fn col_strip_counts(&self) -> Vec<u32> {
        let mut sigma = vec![0; self.width / 2];
        for &(i, _) in &self.blocks {
            sigma[strip(i)] += 1;
        }
        sigma
    }

    /// Whether `img` meets every pair sum and puts `ν` ones in every block of `I`.
    /// Cells outside `G(I)` are ignored.
    pub fn is_satisfied_by(&self, img: &PartialImage) -> bool {
        let mut rows = vec![(0u32, 0u32); self.height / 2];
        let mut cols = vec![(0u32, 0u32); self.width / 2];
        for &corner in &self.blocks {
            let t = BlockType::from_mask(block_mask(&img.image, corner));
            if t.ones() != self.nu {
                return false;
            }
            let (r0, r1) = t.row_counts();
            let (c0, c1) = t.col_counts();
            let rs = &mut rows[strip(corner.1)];
            rs.0 += r0;
            rs.1 += r1;
            let cs = &mut cols[strip(corner.0)];
            cs.0 += c0;
            cs.1 += c1;
        }
        rows == self.row_pairs && cols == self.col_pairs
    }
}

/// An assignment on the cells `G(I)` covered by the blocks of a [`SubInstance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialImage {
    pub blocks: Vec<Point>,
    /// Full-size canvas; cells outside `G(I)` are zero and carry no meaning.
    pub image: BinaryImage,
}

impl PartialImage {
    fn empty(sub: &SubInstance) -> Self {
        PartialImage {
            blocks: sub.blocks.clone(),
            image: BinaryImage::new(sub.width, sub.height),
        }
    }

    fn covers(&self, (p, q): Point) -> bool {
        let corner = (p - (p - 1) % 2, q - (q - 1) % 2);
        self.blocks.binary_search(&corner).is_ok()
    }

    /// `Some(bit)` inside `G(I)`, `None` outside.
    pub fn get(&self, p: usize, q: usize) -> Option<bool> {
        self.covers((p, q)).then(|| self.image.get(p, q))
    }

    pub fn block_type(&self, corner: Point) -> BlockType {
        BlockType::from_mask(block_mask(&self.image, corner))
    }

    /// Copies the cells of `G(I)` into `target`.
    pub fn write_into(&self, target: &mut BinaryImage) {
        for &corner in &self.blocks {
            write_block(target, corner, self.block_type(corner));
        }
    }
}

/// Contract violations of the subproblem solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubError {
    /// The solver was called with the wrong `ν`.
    WrongLevel { expected: &'static str, found: u32 },
    /// A strip's pair sums are not ordered `first ≥ second`.
    Unordered { horizontal: bool, strip: usize },
    /// The operation requires a feasible instance.
    Infeasible,
}

impl fmt::Display for SubError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubError::WrongLevel { expected, found } => {
                write!(f, "expected gray level {expected}, found {found}")
            }
            SubError::Unordered { horizontal, strip } => write!(
                f,
                "{} strip {} has pair sums in increasing order",
                if *horizontal {
                    "horizontal"
                } else {
                    "vertical"
                },
                strip + 1
            ),
            SubError::Infeasible => f.write_str("subproblem is infeasible"),
        }
    }
}

impl core::error::Error for SubError {}

fn expect_level(sub: &SubInstance, ok: bool, expected: &'static str) -> Result<(), SubError> {
    if ok {
        Ok(())
    } else {
        Err(SubError::WrongLevel {
            expected,
            found: sub.nu,
        })
    }
}

fn pairs_sum_to(pairs: &[(u32, u32)], counts: &[u32], factor: u32) -> bool {
    pairs
        .iter()
        .zip(counts)
        .all(|(&(a, b), &n)| a + b == factor * n)
}

fn dr1_feasible(sub: &SubInstance) -> bool {
    pairs_sum_to(&sub.row_pairs, &sub.row_strip_counts(), 1)
        && pairs_sum_to(&sub.col_pairs, &sub.col_strip_counts(), 1)
}

/// Rank of every block within its horizontal strip (left to right) and within
/// its vertical strip (bottom to top), both 1-based. These are `ρ_j(i)` and
/// `σ_i(j)`.
fn strip_ranks(sub: &SubInstance) -> (Vec<u32>, Vec<u32>) {
    let mut order: Vec<usize> = (0..sub.blocks.len()).collect();
    let mut seen_row = vec![0u32; sub.height / 2];
    let mut rank_in_row = vec![0u32; sub.blocks.len()];
    order.sort_by_key(|&b| (sub.blocks[b].1, sub.blocks[b].0));
    for &b in &order {
        let s = strip(sub.blocks[b].1);
        seen_row[s] += 1;
        rank_in_row[b] = seen_row[s];
    }
    let mut seen_col = vec![0u32; sub.width / 2];
    let mut rank_in_col = vec![0u32; sub.blocks.len()];
    order.sort_by_key(|&b| sub.blocks[b]);
    for &b in &order {
        let s = strip(sub.blocks[b].0);
        seen_col[s] += 1;
        rank_in_col[b] = seen_col[s];
    }
    (rank_in_row, rank_in_col)
}

fn dr1_construct(sub: &SubInstance) -> PartialImage {
    let mut out = PartialImage::empty(sub);
    let (rho, sigma) = strip_ranks(sub);
    for (b, &(i, j)) in sub.blocks.iter().enumerate() {
        let a = if sigma[b] <= sub.col_pairs[strip(i)].0 {
            i
        } else {
            i + 1
        };
        let c = if rho[b] <= sub.row_pairs[strip(j)].0 {
            j
        } else {
            j + 1
        };
        out.image.set(a, c, true);
    }
    out
}

/// Solves a `ν = 1` instance by the explicit rank construction, or returns
/// `None` when some strip's pair sum differs from its block count.
pub fn solve_dr1(sub: &SubInstance) -> Result<Option<PartialImage>, SubError> {
    expect_level(sub, sub.nu == 1, "1")?;
    if !dr1_feasible(sub) {
        return Ok(None);
    }
    Ok(Some(dr1_construct(sub)))
}

/// Whether a feasible `ν = 1` instance has exactly one solution: every strip
/// meeting `I` must have one of its two line sums equal to zero.
pub fn unique_dr1(sub: &SubInstance) -> Result<bool, SubError> {
    expect_level(sub, sub.nu == 1, "1")?;
    if !dr1_feasible(sub) {
        return Err(SubError::Infeasible);
    }
    Ok(sub.blocks.iter().all(|&(i, j)| {
        let (r0, r1) = sub.row_pairs[strip(j)];
        let (c0, c1) = sub.col_pairs[strip(i)];
        r0 * r1 == 0 && c0 * c1 == 0
    }))
}

/// The complementary `ν = 1` instance of a `ν = 3` instance, or `None` if a
/// transformed sum would be negative.
fn invert_dr3(sub: &SubInstance) -> Option<SubInstance> {
    fn flip(pairs: &[(u32, u32)], counts: &[u32]) -> Option<Vec<(u32, u32)>> {
        pairs
            .iter()
            .zip(counts)
            .map(|(&(a, b), &n)| Some(((2 * n).checked_sub(a)?, (2 * n).checked_sub(b)?)))
            .collect()
    }
    Some(SubInstance {
        width: sub.width,
        height: sub.height,
        nu: 1,
        blocks: sub.blocks.clone(),
        row_pairs: flip(&sub.row_pairs, &sub.row_strip_counts())?,
        col_pairs: flip(&sub.col_pairs, &sub.col_strip_counts())?,
    })
}

/// Solves a `ν = 3` instance through its complement.
pub fn solve_dr3(sub: &SubInstance) -> Result<Option<PartialImage>, SubError> {
    expect_level(sub, sub.nu == 3, "3")?;
    let Some(inverse) = invert_dr3(sub) else {
        return Ok(None);
    };
    let Some(ones) = solve_dr1(&inverse)? else {
        return Ok(None);
    };
    let mut out = PartialImage::empty(sub);
    for &corner in &sub.blocks {
        let m = block_mask(&ones.image, corner);
        write_block(&mut out.image, corner, BlockType::from_mask(!m & 0xF));
    }
    Ok(Some(out))
}

/// Uniqueness for a feasible `ν = 3` instance, via its complement.
pub fn unique_dr3(sub: &SubInstance) -> Result<bool, SubError> {
    expect_level(sub, sub.nu == 3, "3")?;
    let inverse = invert_dr3(sub).ok_or(SubError::Infeasible)?;
    unique_dr1(&inverse)
}

/// Fills `ν ∈ {0, 4}` blocks; `None` if a pair sum disagrees with the forced fill.
pub fn fill_trivial(sub: &SubInstance) -> Result<Option<PartialImage>, SubError> {
    expect_level(sub, sub.nu == 0 || sub.nu == 4, "0 or 4")?;
    let per_line = sub.nu / 2;
    let ok = |pairs: &[(u32, u32)], counts: &[u32]| {
        pairs
            .iter()
            .zip(counts)
            .all(|(&(a, b), &n)| a == per_line * n && b == per_line * n)
    };
    if !ok(&sub.row_pairs, &sub.row_strip_counts()) || !ok(&sub.col_pairs, &sub.col_strip_counts())
    {
        return Ok(None);
    }
    let mut out = PartialImage::empty(sub);
    let fill = if sub.nu == 4 {
        BlockType::Full
    } else {
        BlockType::Empty
    };
    for &corner in &sub.blocks {
        write_block(&mut out.image, corner, fill);
    }
    Ok(Some(out))
}

/// The two-color system: choose per block at most one of `ζ` (counted in its
/// horizontal strip) and `η` (counted in its vertical strip) so that every
/// strip reaches its target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoColorSystem {
    pub width: usize,
    pub height: usize,
    pub blocks: Vec<Point>,
    /// `r'` per horizontal strip.
    pub row_targets: Vec<u32>,
    /// `c'` per vertical strip.
    pub col_targets: Vec<u32>,
}

/// Label of one block in a two-color solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    /// `ζ = 1`.
    Row,
    /// `η = 1`.
    Col,
    None,
}

/// Unit-capacity flow network for a [`TwoColorSystem`]:
/// source → strip (capacity = target) → block (capacity 1) → sink (capacity 1).
struct TwoColorNetwork {
    net: Network,
    source: usize,
    sink: usize,
    row_arcs: Vec<ArcId>,
    col_arcs: Vec<ArcId>,
    demand: i64,
}

impl TwoColorNetwork {
    fn build(sys: &TwoColorSystem, cost: impl Fn(usize, Color) -> i64) -> Self {
        let (hs, vs) = (sys.height / 2, sys.width / 2);
        let source = 0;
        let sink = 1;
        let row_node = |s: usize| 2 + s;
        let col_node = |s: usize| 2 + hs + s;
        let block_node = |b: usize| 2 + hs + vs + b;
        let mut net = Network::new(2 + hs + vs + sys.blocks.len());
        for (s, &t) in sys.row_targets.iter().enumerate() {
            net.add_arc(source, row_node(s), i64::from(t), 0);
        }
        for (s, &t) in sys.col_targets.iter().enumerate() {
            net.add_arc(source, col_node(s), i64::from(t), 0);
        }
        let mut row_arcs = Vec::with_capacity(sys.blocks.len());
        let mut col_arcs = Vec::with_capacity(sys.blocks.len());
        for (b, &(i, j)) in sys.blocks.iter().enumerate() {
            row_arcs.push(net.add_arc(row_node(strip(j)), block_node(b), 1, cost(b, Color::Row)));
            col_arcs.push(net.add_arc(col_node(strip(i)), block_node(b), 1, cost(b, Color::Col)));
            net.add_arc(block_node(b), sink, 1, 0);
        }
        let demand = sys
            .row_targets
            .iter()
            .chain(&sys.col_targets)
            .map(|&t| i64::from(t))
            .sum();
        TwoColorNetwork {
            net,
            source,
            sink,
            row_arcs,
            col_arcs,
            demand,
        }
    }

    fn labels(&self) -> Vec<Color> {
        (0..self.row_arcs.len())
            .map(|b| {
                if self.net.flow(self.row_arcs[b]) > 0 {
                    Color::Row
                } else if self.net.flow(self.col_arcs[b]) > 0 {
                    Color::Col
                } else {
                    Color::None
                }
            })
            .collect()
    }
}

/// Solves the two-color system by integral max-flow; `None` when the flow
/// cannot saturate every strip target.
pub fn solve_two_color(sys: &TwoColorSystem) -> Option<Vec<Color>> {
    let mut tc = TwoColorNetwork::build(sys, |_, _| 0);
    let flow = tc.net.max_flow(tc.source, tc.sink);
    (flow == tc.demand).then(|| tc.labels())
}

fn ordered(sub: &SubInstance) -> Result<(), SubError> {
    if let Some(s) = sub.row_pairs.iter().position(|&(a, b)| a < b) {
        return Err(SubError::Unordered {
            horizontal: true,
            strip: s,
        });
    }
    if let Some(s) = sub.col_pairs.iter().position(|&(a, b)| a < b) {
        return Err(SubError::Unordered {
            horizontal: false,
            strip: s,
        });
    }
    Ok(())
}

fn dr2_system(sub: &SubInstance) -> Option<TwoColorSystem> {
    let half_diff = |pairs: &[(u32, u32)], counts: &[u32]| -> Option<Vec<u32>> {
        pairs
            .iter()
            .zip(counts)
            .map(|(&(a, b), &n)| ((a - b) % 2 == 0 && a + b == 2 * n).then_some((a - b) / 2))
            .collect()
    };
    Some(TwoColorSystem {
        width: sub.width,
        height: sub.height,
        blocks: sub.blocks.clone(),
        row_targets: half_diff(&sub.row_pairs, &sub.row_strip_counts())?,
        col_targets: half_diff(&sub.col_pairs, &sub.col_strip_counts())?,
    })
}

/// Solves a `ν = 2` instance whose pair sums are ordered `first ≥ second`.
/// Every block of the result is `B1`, `B3(1)` or `B3(3)`.
pub fn solve_dr2(sub: &SubInstance) -> Result<Option<PartialImage>, SubError> {
    expect_level(sub, sub.nu == 2, "2")?;
    ordered(sub)?;
    let Some(sys) = dr2_system(sub) else {
        return Ok(None);
    };
    let Some(labels) = solve_two_color(&sys) else {
        return Ok(None);
    };
    let mut out = PartialImage::empty(sub);
    for (&corner, color) in sub.blocks.iter().zip(labels) {
        let t = match color {
            Color::Row => BlockType::B1,
            Color::Col => BlockType::B3(1),
            Color::None => BlockType::B3(3),
        };
        write_block(&mut out.image, corner, t);
    }
    debug_assert!(sub.is_satisfied_by(&out));
    Ok(Some(out))
}

/// Whether `sol` is the only solution of `sub` built from `B1`, `B3(1)` and
/// `B3(3)` blocks: a min-cost max-flow charging one unit on every arc `sol`
/// uses must still pay for all of them.
///
/// # Panics
///
/// If `sol` contains a block of any other type.
pub fn unique_dr2(sub: &SubInstance, sol: &PartialImage) -> bool {
    let Some(sys) = dr2_system(sub) else {
        return false;
    };
    let labels: Vec<Color> = sub
        .blocks
        .iter()
        .map(|&c| match sol.block_type(c) {
            BlockType::B1 => Color::Row,
            BlockType::B3(1) => Color::Col,
            BlockType::B3(3) => Color::None,
            other => panic!("unexpected block type {other} in a two-color solution"),
        })
        .collect();
    let used = labels.iter().filter(|&&c| c != Color::None).count() as i64;
    let mut tc = TwoColorNetwork::build(&sys, |b, color| i64::from(labels[b] == color));
    let (flow, cost) = tc.net.min_cost_max_flow(tc.source, tc.sink);
    flow == tc.demand && cost == used
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(w: usize, h: usize, nu: u32, blocks: &[Point]) -> SubInstance {
        SubInstance::new(w, h, nu, blocks.to_vec())
    }

    /// All assignments of `ν`-patterns to the blocks of `sub` that meet its sums.
    fn enumerate(sub: &SubInstance, allowed: &[BlockType]) -> Vec<PartialImage> {
        let pats: Vec<BlockType> = allowed
            .iter()
            .copied()
            .filter(|t| t.ones() == sub.nu)
            .collect();
        let mut out = Vec::new();
        let total = pats.len().pow(sub.blocks.len() as u32);
        for mut code in 0..total {
            let mut img = PartialImage::empty(sub);
            for &corner in &sub.blocks {
                write_block(&mut img.image, corner, pats[code % pats.len()]);
                code /= pats.len();
            }
            if sub.is_satisfied_by(&img) {
                out.push(img);
            }
        }
        out
    }

    #[test]
    fn two_color_four_corners() {
        let sys = TwoColorSystem {
            width: 4,
            height: 4,
            blocks: vec![(1, 1), (1, 3), (3, 1), (3, 3)],
            row_targets: vec![1, 1],
            col_targets: vec![1, 1],
        };
        let labels = solve_two_color(&sys).unwrap();
        let rows_ok = [0usize, 1].iter().all(|&s| {
            sys.blocks
                .iter()
                .zip(&labels)
                .filter(|(b, c)| strip(b.1) == s && **c == Color::Row)
                .count()
                == 1
        });
        let cols_ok = [0usize, 1].iter().all(|&s| {
            sys.blocks
                .iter()
                .zip(&labels)
                .filter(|(b, c)| strip(b.0) == s && **c == Color::Col)
                .count()
                == 1
        });
        assert!(rows_ok && cols_ok);
        // 3^4 labelings, brute force agrees that this is feasible.
        let feasible = (0..81).any(|mut code: u32| {
            let mut rows = [0; 2];
            let mut cols = [0; 2];
            for b in &sys.blocks {
                match code % 3 {
                    1 => rows[strip(b.1)] += 1,
                    2 => cols[strip(b.0)] += 1,
                    _ => {}
                }
                code /= 3;
            }
            rows == [1, 1] && cols == [1, 1]
        });
        assert!(feasible);
    }

    #[test]
    fn two_color_zero_targets() {
        let sys = TwoColorSystem {
            width: 4,
            height: 2,
            blocks: vec![(1, 1), (3, 1)],
            row_targets: vec![0],
            col_targets: vec![0, 0],
        };
        assert_eq!(solve_two_color(&sys).unwrap(), vec![Color::None; 2]);
    }

    #[test]
    fn two_color_single_block_cannot_take_both() {
        let sys = TwoColorSystem {
            width: 2,
            height: 2,
            blocks: vec![(1, 1)],
            row_targets: vec![1],
            col_targets: vec![1],
        };
        assert!(solve_two_color(&sys).is_none());
    }

    #[test]
    fn dr1_four_blocks() {
        let mut s = sub(4, 4, 1, &[(1, 1), (3, 1), (1, 3), (3, 3)]);
        s.row_pairs = vec![(1, 1), (1, 1)];
        s.col_pairs = vec![(1, 1), (1, 1)];
        let sol = solve_dr1(&s).unwrap().unwrap();
        let ones: Vec<Point> = (1..=4)
            .flat_map(|q| (1..=4).map(move |p| (p, q)))
            .filter(|&(p, q)| sol.image.get(p, q))
            .collect();
        assert_eq!(ones, vec![(1, 1), (3, 2), (2, 3), (4, 4)]);
        assert!(s.is_satisfied_by(&sol));
        assert!(!unique_dr1(&s).unwrap());
        assert!(enumerate(&s, &BlockType::ALL).len() > 1);
    }

    #[test]
    fn dr1_single_block() {
        let mut s = sub(2, 2, 1, &[(1, 1)]);
        s.row_pairs = vec![(1, 0)];
        s.col_pairs = vec![(1, 0)];
        let sol = solve_dr1(&s).unwrap().unwrap();
        assert_eq!(sol.block_type((1, 1)), BlockType::A { row: 1, col: 1 });
        s.row_pairs = vec![(2, 0)];
        assert!(solve_dr1(&s).unwrap().is_none());
    }

    #[test]
    fn dr1_uniqueness_cases() {
        let mut s = sub(2, 2, 1, &[(1, 1)]);
        s.row_pairs = vec![(1, 0)];
        s.col_pairs = vec![(0, 1)];
        assert!(unique_dr1(&s).unwrap());

        let mut s = sub(4, 4, 1, &[(1, 1), (3, 1), (1, 3), (3, 3)]);
        s.row_pairs = vec![(2, 0), (0, 2)];
        s.col_pairs = vec![(2, 0), (2, 0)];
        assert!(unique_dr1(&s).unwrap());
        assert_eq!(enumerate(&s, &BlockType::ALL).len(), 1);
        assert!(s.is_satisfied_by(&solve_dr1(&s).unwrap().unwrap()));
    }

    #[test]
    fn unique_dr1_rejects_infeasible() {
        let mut s = sub(2, 2, 1, &[(1, 1)]);
        s.row_pairs = vec![(2, 0)];
        s.col_pairs = vec![(1, 0)];
        assert_eq!(unique_dr1(&s), Err(SubError::Infeasible));
    }

    #[test]
    fn dr3_single_block() {
        let mut s = sub(2, 2, 3, &[(1, 1)]);
        s.row_pairs = vec![(2, 1)];
        s.col_pairs = vec![(2, 1)];
        let sol = solve_dr3(&s).unwrap().unwrap();
        assert_eq!(sol.block_type((1, 1)), BlockType::C { row: 2, col: 2 });
        assert_eq!(enumerate(&s, &BlockType::ALL).len(), 1);
        assert!(unique_dr3(&s).unwrap());

        s.row_pairs = vec![(3, 0)];
        assert!(solve_dr3(&s).unwrap().is_none());
    }

    #[test]
    fn dr3_complement_of_four_block_example() {
        let mut s = sub(4, 4, 3, &[(1, 1), (3, 1), (1, 3), (3, 3)]);
        s.row_pairs = vec![(3, 3), (3, 3)];
        s.col_pairs = vec![(3, 3), (3, 3)];
        let sol = solve_dr3(&s).unwrap().unwrap();
        assert!(s.is_satisfied_by(&sol));
        assert!(!unique_dr3(&s).unwrap());
    }

    #[test]
    fn dr2_single_block_types() {
        let mut s = sub(2, 2, 2, &[(1, 1)]);
        s.row_pairs = vec![(2, 0)];
        s.col_pairs = vec![(1, 1)];
        let sol = solve_dr2(&s).unwrap().unwrap();
        assert_eq!(sol.block_type((1, 1)), BlockType::B1);
        assert_eq!(enumerate(&s, &BlockType::ALL).len(), 1);
        assert!(unique_dr2(&s, &sol));

        s.row_pairs = vec![(1, 1)];
        s.col_pairs = vec![(2, 0)];
        let sol = solve_dr2(&s).unwrap().unwrap();
        assert_eq!(sol.block_type((1, 1)), BlockType::B3(1));

        s.col_pairs = vec![(1, 1)];
        let sol = solve_dr2(&s).unwrap().unwrap();
        assert_eq!(sol.block_type((1, 1)), BlockType::B3(3));
        // B3(4) also satisfies the sums but is never produced.
        assert_eq!(enumerate(&s, &BlockType::ALL).len(), 2);
        assert!(unique_dr2(&s, &sol));
    }

    #[test]
    fn dr2_choice_between_two_blocks_is_not_unique() {
        let mut s = sub(4, 2, 2, &[(1, 1), (3, 1)]);
        s.row_pairs = vec![(3, 1)];
        s.col_pairs = vec![(1, 1), (1, 1)];
        let sol = solve_dr2(&s).unwrap().unwrap();
        assert!(s.is_satisfied_by(&sol));
        assert!(!unique_dr2(&s, &sol));
    }

    #[test]
    fn dr2_empty_is_unique() {
        let s = sub(4, 4, 2, &[]);
        let sol = solve_dr2(&s).unwrap().unwrap();
        assert!(unique_dr2(&s, &sol));
    }

    #[test]
    fn dr2_rejects_unordered_and_bad_parity() {
        let mut s = sub(2, 2, 2, &[(1, 1)]);
        s.row_pairs = vec![(0, 2)];
        s.col_pairs = vec![(1, 1)];
        assert!(matches!(
            solve_dr2(&s),
            Err(SubError::Unordered {
                horizontal: true,
                ..
            })
        ));
        s.row_pairs = vec![(3, 1)];
        assert_eq!(solve_dr2(&s), Ok(None));
    }

    #[test]
    fn trivial_levels() {
        let mut s = sub(4, 2, 0, &[(1, 1), (3, 1)]);
        let sol = fill_trivial(&s).unwrap().unwrap();
        assert_eq!(sol.image.count_ones(), 0);

        s.nu = 4;
        s.row_pairs = vec![(4, 4)];
        s.col_pairs = vec![(2, 2), (2, 2)];
        let sol = fill_trivial(&s).unwrap().unwrap();
        assert_eq!(sol.image.count_ones(), 8);

        s.row_pairs = vec![(1, 4)];
        assert!(fill_trivial(&s).unwrap().is_none());
        assert!(fill_trivial(&sub(2, 2, 2, &[])).is_err());
    }

    #[test]
    fn partial_image_domain() {
        let mut s = sub(4, 4, 1, &[(3, 1)]);
        s.row_pairs = vec![(1, 0), (0, 0)];
        s.col_pairs = vec![(0, 0), (1, 0)];
        let sol = solve_dr1(&s).unwrap().unwrap();
        assert_eq!(sol.get(3, 1), Some(true));
        assert_eq!(sol.get(4, 2), Some(false));
        assert_eq!(sol.get(1, 1), None);
    }

    /// Small random families: feasibility and uniqueness match exhaustive
    /// enumeration of block labelings.
    #[test]
    fn solvers_agree_with_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let corners: Vec<Point> = (0..3)
            .flat_map(|v| (0..3).map(move |u| (2 * u + 1, 2 * v + 1)))
            .collect();
        let reduced = [BlockType::B1, BlockType::B3(1), BlockType::B3(3)];
        for _ in 0..3000 {
            let nu = rng.gen_range(1..=3u32);
            let count = rng.gen_range(0..=4usize);
            let mut blocks = corners.clone();
            for i in (1..blocks.len()).rev() {
                blocks.swap(i, rng.gen_range(0..=i));
            }
            blocks.truncate(count);
            let mut s = sub(6, 6, nu, &blocks);
            let rho = s.row_strip_counts();
            let sigma = s.col_strip_counts();
            let random_pair = |rng: &mut rand_chacha::ChaCha8Rng, n: u32| {
                let total = nu * n + u32::from(rng.gen_bool(0.15));
                let a = rng.gen_range(0..=total.min(2 * n));
                let pair = (a, total.saturating_sub(a).min(2 * n));
                if nu == 2 && pair.0 < pair.1 {
                    (pair.1, pair.0)
                } else {
                    pair
                }
            };
            s.row_pairs = rho.iter().map(|&n| random_pair(&mut rng, n)).collect();
            s.col_pairs = sigma.iter().map(|&n| random_pair(&mut rng, n)).collect();
            let all = enumerate(&s, &BlockType::ALL);
            match nu {
                1 => {
                    let sol = solve_dr1(&s).unwrap();
                    assert_eq!(sol.is_some(), !all.is_empty(), "{s:?}");
                    if let Some(sol) = sol {
                        assert!(s.is_satisfied_by(&sol));
                        assert_eq!(unique_dr1(&s).unwrap(), all.len() == 1, "{s:?}");
                    }
                }
                3 => {
                    let sol = solve_dr3(&s).unwrap();
                    assert_eq!(sol.is_some(), !all.is_empty(), "{s:?}");
                    if let Some(sol) = sol {
                        assert!(s.is_satisfied_by(&sol));
                        assert_eq!(unique_dr3(&s).unwrap(), all.len() == 1, "{s:?}");
                    }
                }
                _ => {
                    let sol = solve_dr2(&s).unwrap();
                    assert_eq!(sol.is_some(), !all.is_empty(), "{s:?}");
                    if let Some(sol) = sol {
                        assert!(s.is_satisfied_by(&sol));
                        let three_type = enumerate(&s, &reduced);
                        assert!(three_type.contains(&sol));
                        assert_eq!(unique_dr2(&s, &sol), three_type.len() == 1, "{s:?}");
                    }
                }
            }
        }
    }
}
