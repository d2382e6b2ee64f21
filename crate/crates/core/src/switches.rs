//! Local switches: rewrites of one or two `2 × 2` blocks in a common strip
//! that keep every row, column and block sum. Also the exact total-variation
//! functional and a greedy descent over switches.
//!
//! Scan order, used by [`find_switch`] and as the tie-break everywhere else:
//! class ascending, horizontal before vertical, then the pair
//! `(first, second)` of corners compared lexicographically as `(i, j)`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::block::{block_mask, write_block, BlockType};
use crate::model::{verify_solution, BinaryImage, Instance};
use crate::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// Both blocks lie in the same horizontal strip (same `j`).
    Horizontal,
    /// Both blocks lie in the same vertical strip (same `i`).
    Vertical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Reversed,
}

/// One applicable rewrite. Class 7 involves `first` only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SwitchMove {
    pub orientation: Orientation,
    pub class: u8,
    pub direction: Direction,
    pub first: Point,
    pub second: Option<Point>,
}

impl fmt::Display for SwitchMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orientation {
            Orientation::Horizontal => 'H',
            Orientation::Vertical => 'V',
        };
        let d = match self.direction {
            Direction::Forward => "",
            Direction::Reversed => "^-1",
        };
        write!(f, "{o}<{}>{d} {:?}", self.class, self.first)?;
        if let Some(s) = self.second {
            write!(f, " {s:?}")?;
        }
        Ok(())
    }
}

/// Rewrite of the block in role `role` (0 or 1) of a forward switch.
fn forward(o: Orientation, class: u8, role: usize, t: BlockType) -> Option<BlockType> {
    use BlockType::*;
    use Orientation::*;
    let b33 = B3(3);
    match (o, class, role, t) {
        (_, 7, 0, B3(4)) => Some(b33),

        (Horizontal, 1 | 6, 0, A { row: 1, col }) => Some(A { row: 2, col }),
        (Horizontal, 2, 0, A { row: 2, col }) => Some(A { row: 1, col }),
        (Horizontal, 3, 0, B1) => Some(b33),
        (Horizontal, 4, 0, C { row: 2, col }) => Some(C { row: 1, col }),
        (Horizontal, 5, 0, C { row: 1, col }) => Some(C { row: 2, col }),
        (Horizontal, 1 | 3 | 4, 1, B2) => Some(b33),
        (Horizontal, 2 | 5, 1, B1) => Some(b33),
        (Horizontal, 6, 1, C { row: 1, col }) => Some(C { row: 2, col }),

        (Vertical, 1 | 3 | 4, 0, B3(2)) => Some(b33),
        (Vertical, 2 | 5, 0, B3(1)) => Some(b33),
        (Vertical, 6, 0, C { row, col: 1 }) => Some(C { row, col: 2 }),
        (Vertical, 1 | 6, 1, A { row, col: 1 }) => Some(A { row, col: 2 }),
        (Vertical, 2, 1, A { row, col: 2 }) => Some(A { row, col: 1 }),
        (Vertical, 3, 1, B3(1)) => Some(b33),
        (Vertical, 4, 1, C { row, col: 2 }) => Some(C { row, col: 1 }),
        (Vertical, 5, 1, C { row, col: 1 }) => Some(C { row, col: 2 }),
        _ => None,
    }
}

/// Rewrite of a block in the given role, or `None` if the role does not match.
pub fn role_target(
    o: Orientation,
    class: u8,
    direction: Direction,
    role: usize,
    t: BlockType,
) -> Option<BlockType> {
    match direction {
        Direction::Forward => forward(o, class, role, t),
        Direction::Reversed => BlockType::ALL
            .into_iter()
            .find(|&s| forward(o, class, role, s) == Some(t)),
    }
}

const ORIENTATIONS: [Orientation; 2] = [Orientation::Horizontal, Orientation::Vertical];

fn strip_key(o: Orientation, (i, j): Point) -> usize {
    match o {
        Orientation::Horizontal => j,
        Orientation::Vertical => i,
    }
}

fn corners(img: &BinaryImage) -> impl Iterator<Item = Point> {
    let (w, h) = (img.width(), img.height());
    (0..w / 2).flat_map(move |u| (0..h / 2).map(move |v| (2 * u + 1, 2 * v + 1)))
}

fn types(img: &BinaryImage) -> Vec<(Point, BlockType)> {
    corners(img)
        .map(|c| (c, BlockType::from_mask(block_mask(img, c))))
        .collect()
}

/// Smallest applicable `(first, second)` pair for one class and orientation.
fn first_pair(
    blocks: &[(Point, BlockType)],
    o: Orientation,
    class: u8,
    d: Direction,
) -> Option<(Point, Option<Point>)> {
    let matches = |role| {
        blocks
            .iter()
            .filter(move |(_, t)| role_target(o, class, d, role, *t).is_some())
            .map(|(c, _)| *c)
    };
    if class == 7 {
        return matches(0).next().map(|c| (c, None));
    }
    // Corners are visited in `(i, j)` order, so the first role-0 match with a
    // partner is the smallest `first`.
    let seconds: Vec<Point> = matches(1).collect();
    matches(0).find_map(|f| {
        seconds
            .iter()
            .find(|&&s| s != f && strip_key(o, s) == strip_key(o, f))
            .map(|&s| (f, Some(s)))
    })
}

/// The first applicable move in scan order.
pub fn find_switch(img: &BinaryImage, direction: Direction) -> Option<SwitchMove> {
    let blocks = types(img);
    for class in 1..=7 {
        for o in ORIENTATIONS {
            if class == 7 && o == Orientation::Vertical {
                continue;
            }
            if let Some((first, second)) = first_pair(&blocks, o, class, direction) {
                return Some(SwitchMove {
                    orientation: o,
                    class,
                    direction,
                    first,
                    second,
                });
            }
        }
    }
    None
}

/// Every applicable move in the given direction, in scan order. Class 7 is
/// listed once, as horizontal.
pub fn applicable_moves(img: &BinaryImage, direction: Direction) -> Vec<SwitchMove> {
    let blocks = types(img);
    let mut out = Vec::new();
    for class in 1..=7u8 {
        for o in ORIENTATIONS {
            if class == 7 {
                if o == Orientation::Horizontal {
                    for &(c, t) in &blocks {
                        if role_target(o, 7, direction, 0, t).is_some() {
                            out.push(SwitchMove {
                                orientation: o,
                                class,
                                direction,
                                first: c,
                                second: None,
                            });
                        }
                    }
                }
                continue;
            }
            for &(f, tf) in &blocks {
                if role_target(o, class, direction, 0, tf).is_none() {
                    continue;
                }
                for &(s, ts) in &blocks {
                    if s != f
                        && strip_key(o, s) == strip_key(o, f)
                        && role_target(o, class, direction, 1, ts).is_some()
                    {
                        out.push(SwitchMove {
                            orientation: o,
                            class,
                            direction,
                            first: f,
                            second: Some(s),
                        });
                    }
                }
            }
        }
    }
    out
}

/// The move does not apply to the image it was given.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InapplicableMove(pub SwitchMove);

impl fmt::Display for InapplicableMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "switch {} does not apply", self.0)
    }
}

impl core::error::Error for InapplicableMove {}

fn valid_corner(img: &BinaryImage, (i, j): Point) -> bool {
    i % 2 == 1 && j % 2 == 1 && i < img.width() && j < img.height()
}

/// Target types of the blocks a move rewrites, checked against `img`.
fn targets(
    img: &BinaryImage,
    mv: &SwitchMove,
) -> Result<(BlockType, Option<BlockType>), InapplicableMove> {
    let err = InapplicableMove(*mv);
    let target = |role, c: Point| {
        if !valid_corner(img, c) {
            return None;
        }
        let t = BlockType::from_mask(block_mask(img, c));
        role_target(mv.orientation, mv.class, mv.direction, role, t)
    };
    let t0 = target(0, mv.first).ok_or(err)?;
    let t1 = match (mv.class, mv.second) {
        (7, None) => None,
        (1..=6, Some(s))
            if s != mv.first
                && strip_key(mv.orientation, s) == strip_key(mv.orientation, mv.first) =>
        {
            Some(target(1, s).ok_or(err)?)
        }
        _ => return Err(err),
    };
    Ok((t0, t1))
}

fn apply_in_place(img: &mut BinaryImage, mv: &SwitchMove) -> Result<(), InapplicableMove> {
    let (t0, t1) = targets(img, mv)?;
    write_block(img, mv.first, t0);
    if let (Some(s), Some(t)) = (mv.second, t1) {
        write_block(img, s, t);
    }
    Ok(())
}

/// Applies `mv`, returning the rewritten image.
pub fn apply_switch(img: &BinaryImage, mv: &SwitchMove) -> Result<BinaryImage, InapplicableMove> {
    let mut out = img.clone();
    apply_in_place(&mut out, mv)?;
    Ok(out)
}

/// Progress measure of forward switching: `(#B3(3), #A in row 2, #A in column 2)`.
/// Every forward switch increases it lexicographically.
pub fn reduction_measure(img: &BinaryImage) -> (usize, usize, usize) {
    let mut m = (0, 0, 0);
    for (_, t) in types(img) {
        match t {
            BlockType::B3(3) => m.0 += 1,
            BlockType::A { row, col } => {
                m.1 += usize::from(row == 2);
                m.2 += usize::from(col == 2);
            }
            _ => {}
        }
    }
    m
}

/// Applies forward switches in scan order until none applies. Returns the
/// reduced image and the number of switches applied.
pub fn reduce_counted(img: &BinaryImage) -> (BinaryImage, usize) {
    let mut out = img.clone();
    let mut steps = 0;
    while let Some(mv) = find_switch(&out, Direction::Forward) {
        apply_in_place(&mut out, &mv).expect("found switch applies");
        steps += 1;
    }
    (out, steps)
}

/// An image admitting no forward switch, with the same sums as `img`.
pub fn reduce(img: &BinaryImage) -> BinaryImage {
    reduce_counted(img).0
}

/// Forward-switch moves applicable inside one strip (block row `s` for
/// horizontal, block column `s` for vertical), first in scan order.
fn strip_switch(img: &BinaryImage, o: Orientation, s: usize) -> Option<SwitchMove> {
    let corner = |t: usize| match o {
        Orientation::Horizontal => (2 * t + 1, 2 * s + 1),
        Orientation::Vertical => (2 * s + 1, 2 * t + 1),
    };
    let len = match o {
        Orientation::Horizontal => img.width() / 2,
        Orientation::Vertical => img.height() / 2,
    };
    let blocks: Vec<(Point, BlockType)> = (0..len)
        .map(|t| (corner(t), BlockType::from_mask(block_mask(img, corner(t)))))
        .collect();
    (1..=7).find_map(|class| {
        if class == 7 && o == Orientation::Vertical {
            return None;
        }
        let (first, second) = first_pair(&blocks, o, class, Direction::Forward)?;
        Some(SwitchMove {
            orientation: o,
            class,
            direction: Direction::Forward,
            first,
            second,
        })
    })
}

/// Reduces `img` strip by strip: a strip is rescanned only after one of its
/// blocks changed. The result admits no forward switch but may differ from
/// [`reduce`], which always takes the globally first move. Returns the image
/// and the number of switches applied.
pub fn reduce_by_strips(img: &BinaryImage) -> (BinaryImage, usize) {
    let mut out = img.clone();
    let (bx, by) = (img.width() / 2, img.height() / 2);
    let mut queued = [vec![true; by], vec![true; bx]];
    let mut stack: Vec<(Orientation, usize)> = (0..bx)
        .rev()
        .map(|i| (Orientation::Vertical, i))
        .chain((0..by).rev().map(|j| (Orientation::Horizontal, j)))
        .collect();
    let mut steps = 0;
    while let Some((o, s)) = stack.pop() {
        queued[o as usize][s] = false;
        let Some(mv) = strip_switch(&out, o, s) else {
            continue;
        };
        apply_in_place(&mut out, &mv).expect("found switch applies");
        steps += 1;
        for (i, j) in [Some(mv.first), mv.second].into_iter().flatten() {
            for (o, s) in [
                (Orientation::Horizontal, (j - 1) / 2),
                (Orientation::Vertical, (i - 1) / 2),
            ] {
                if !queued[o as usize][s] {
                    queued[o as usize][s] = true;
                    stack.push((o, s));
                }
            }
        }
    }
    (out, steps)
}

/// Whether some reversed switch applies.
pub fn has_reversed_switch(img: &BinaryImage) -> bool {
    find_switch(img, Direction::Reversed).is_some()
}

/// Total variation `a + b·√2`: `a` sites with exactly one nonzero forward
/// difference, `b` sites with both nonzero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TVValue {
    pub a: u64,
    pub b: u64,
}

/// Sign of `da + db·√2`.
fn sign(da: i64, db: i64) -> Ordering {
    match (da.cmp(&0), db.cmp(&0)) {
        (Ordering::Equal, x) | (x, Ordering::Equal) => x,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        // Mixed signs: |da| vs |db|·√2, never equal since √2 is irrational.
        (Ordering::Greater, Ordering::Less) => (da * da).cmp(&(2 * db * db)),
        (Ordering::Less, Ordering::Greater) => (2 * db * db).cmp(&(da * da)),
    }
}

impl Ord for TVValue {
    fn cmp(&self, other: &Self) -> Ordering {
        sign(
            self.a as i64 - other.a as i64,
            self.b as i64 - other.b as i64,
        )
    }
}

impl PartialOrd for TVValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TVValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt(2)", self.a, self.b)
    }
}

/// Number of nonzero forward differences at `(p, q)`: 0, 1 or 2.
fn site(img: &BinaryImage, p: usize, q: usize) -> u8 {
    let x = img.get(p, q);
    let dx = p < img.width() && img.get(p + 1, q) != x;
    let dy = q < img.height() && img.get(p, q + 1) != x;
    u8::from(dx) + u8::from(dy)
}

pub fn tv(img: &BinaryImage) -> TVValue {
    let mut out = TVValue::default();
    for q in 1..=img.height() {
        for p in 1..=img.width() {
            match site(img, p, q) {
                1 => out.a += 1,
                2 => out.b += 1,
                _ => {}
            }
        }
    }
    out
}

/// Gradient sites whose value can change when the blocks at `corners` change.
fn affected_sites(img: &BinaryImage, corners: &[Point]) -> Vec<Point> {
    let mut sites = Vec::with_capacity(16 * corners.len());
    for &(i, j) in corners {
        for q in j.saturating_sub(1).max(1)..=j + 1 {
            for p in i.saturating_sub(1).max(1)..=i + 1 {
                sites.push((p, q));
            }
        }
    }
    sites.sort_unstable();
    sites.dedup();
    sites.retain(|&(p, q)| p <= img.width() && q <= img.height());
    sites
}

fn local_tv(img: &BinaryImage, sites: &[Point]) -> (i64, i64) {
    let mut out = (0, 0);
    for &(p, q) in sites {
        match site(img, p, q) {
            1 => out.0 += 1,
            2 => out.1 += 1,
            _ => {}
        }
    }
    out
}

/// Exact TV change `(Δa, Δb)` caused by applying `mv`.
fn tv_delta(img: &mut BinaryImage, mv: &SwitchMove) -> (i64, i64) {
    let mut corners = Vec::with_capacity(2);
    corners.push(mv.first);
    corners.extend(mv.second);
    let sites = affected_sites(img, &corners);
    let saved: Vec<BlockType> = corners
        .iter()
        .map(|&c| BlockType::from_mask(block_mask(img, c)))
        .collect();
    let before = local_tv(img, &sites);
    apply_in_place(img, mv).expect("listed move applies");
    let after = local_tv(img, &sites);
    for (&c, &t) in corners.iter().zip(&saved) {
        write_block(img, c, t);
    }
    (after.0 - before.0, after.1 - before.1)
}

/// Result of [`tv_descend`]: the final image and the TV after every step,
/// starting with the input's TV.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub image: BinaryImage,
    pub moves: Vec<SwitchMove>,
    pub trace: Vec<TVValue>,
}

/// `tv_descend` was given an image that does not solve the instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotASolution;

impl fmt::Display for NotASolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("image does not solve the instance")
    }
}

impl core::error::Error for NotASolution {}

/// Greedy steepest descent of TV over forward and reversed switches. Ties
/// go to the earliest move, listing all forward moves before reversed ones.
pub fn tv_descend(inst: &Instance, img: &BinaryImage) -> Result<Descent, NotASolution> {
    match verify_solution(inst, img) {
        Ok(r) if r.satisfied => {}
        _ => return Err(NotASolution),
    }
    let mut cur = img.clone();
    let mut value = tv(&cur);
    let mut trace = Vec::from([value]);
    let mut moves = Vec::new();
    loop {
        let mut candidates = applicable_moves(&cur, Direction::Forward);
        candidates.extend(applicable_moves(&cur, Direction::Reversed));
        let mut best: Option<(SwitchMove, (i64, i64))> = None;
        for mv in candidates {
            let d = tv_delta(&mut cur, &mv);
            if sign(d.0, d.1) != Ordering::Less {
                continue;
            }
            let better = match best {
                None => true,
                Some((_, b)) => sign(d.0 - b.0, d.1 - b.1) == Ordering::Less,
            };
            if better {
                best = Some((mv, d));
            }
        }
        let Some((mv, d)) = best else {
            break;
        };
        apply_in_place(&mut cur, &mv).expect("listed move applies");
        value = TVValue {
            a: (value.a as i64 + d.0) as u64,
            b: (value.b as i64 + d.1) as u64,
        };
        debug_assert_eq!(value, tv(&cur));
        trace.push(value);
        moves.push(mv);
    }
    Ok(Descent {
        image: cur,
        moves,
        trace,
    })
}
