//! Problem instances, binary and gray images, and constraint verification.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Point;

/// A binary `m × n` image addressed by `(p, q)` with `(1, 1)` at the lower left.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryImage {
    pub fn new(width: usize, height: usize) -> Self {
        BinaryImage {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    /// Builds an image from a closure over 1-based `(p, q)`.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut img = Self::new(width, height);
        for q in 1..=height {
            for p in 1..=width {
                img.set(p, q, f(p, q));
            }
        }
        img
    }

    /// Parses rows written top-to-bottom, `#`/`1` for ones and `.`/`0` for zeros.
    /// Whitespace inside a row is ignored. Panics on ragged input; meant for
    /// fixtures.
    pub fn from_rows(rows: &[&str]) -> Self {
        let rows: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| matches!(c, '#' | '1' | 'X'))
                    .collect()
            })
            .collect();
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == width), "ragged image rows");
        Self::from_fn(width, height, |p, q| rows[height - q][p - 1])
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    fn offset(&self, p: usize, q: usize) -> usize {
        debug_assert!(p >= 1 && p <= self.width && q >= 1 && q <= self.height);
        (q - 1) * self.width + (p - 1)
    }

    #[inline]
    pub fn get(&self, p: usize, q: usize) -> bool {
        self.bits[self.offset(p, q)]
    }

    #[inline]
    pub fn set(&mut self, p: usize, q: usize, value: bool) {
        let o = self.offset(p, q);
        self.bits[o] = value;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn row_sum(&self, q: usize) -> u32 {
        (1..=self.width).filter(|&p| self.get(p, q)).count() as u32
    }

    pub fn col_sum(&self, p: usize) -> u32 {
        (1..=self.height).filter(|&q| self.get(p, q)).count() as u32
    }

    pub fn row_sums(&self) -> Vec<u32> {
        (1..=self.height).map(|q| self.row_sum(q)).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (1..=self.width).map(|p| self.col_sum(p)).collect()
    }

    /// Number of ones in the `k × k` block with lower-left corner `(i, j)`.
    pub fn block_sum(&self, (i, j): Point, k: usize) -> u32 {
        let mut s = 0;
        for q in j..j + k {
            for p in i..i + k {
                s += u32::from(self.get(p, q));
            }
        }
        s
    }

    /// Cells where the two images differ.
    pub fn diff(&self, other: &BinaryImage) -> Vec<Point> {
        assert_eq!((self.width, self.height), (other.width, other.height));
        let mut out = Vec::new();
        for q in 1..=self.height {
            for p in 1..=self.width {
                if self.get(p, q) != other.get(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Exchanges rows `a` and `b`.
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for p in 1..=self.width {
            let (x, y) = (self.get(p, a), self.get(p, b));
            self.set(p, a, y);
            self.set(p, b, x);
        }
    }

    /// Exchanges columns `a` and `b`.
    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for q in 1..=self.height {
            let (x, y) = (self.get(a, q), self.get(b, q));
            self.set(a, q, y);
            self.set(b, q, x);
        }
    }
}

impl fmt::Debug for BinaryImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryImage {}x{}", self.width, self.height)?;
        for q in (1..=self.height).rev() {
            for p in 1..=self.width {
                f.write_str(if self.get(p, q) { "#" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A low-resolution gray image: one value in `[0, k²]` per `k × k` block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    pub k: usize,
    /// Width in blocks (`m / k`).
    pub width: usize,
    /// Height in blocks (`n / k`).
    pub height: usize,
    /// Row-major, bottom block row first.
    pub values: Vec<u32>,
}

impl GrayImage {
    /// Value of block `(u, v)`, both 1-based in block units.
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.values[(v - 1) * self.width + (u - 1)]
    }

    pub fn max_value(&self) -> u32 {
        (self.k * self.k) as u32
    }
}

/// A full problem datum: projections along both axes plus block gray values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    /// Block side length.
    pub k: usize,
    /// Noise bound on unreliable block values.
    pub epsilon: u32,
    /// Grid width `m` (number of columns).
    pub width: usize,
    /// Grid height `n` (number of rows).
    pub height: usize,
    /// `r_1 … r_n`, bottom row first.
    pub row_sums: Vec<u32>,
    /// `c_1 … c_m`, left column first.
    pub col_sums: Vec<u32>,
    /// One value per block, row-major over the block grid, bottom block row first.
    pub block_values: Vec<u32>,
    /// Reliability flag per block, same layout as `block_values`.
    pub reliable: Vec<bool>,
}

impl Instance {
    /// Width of the block grid.
    #[inline]
    pub fn blocks_x(&self) -> usize {
        self.width / self.k
    }

    #[inline]
    pub fn blocks_y(&self) -> usize {
        self.height / self.k
    }

    pub fn block_count(&self) -> usize {
        self.blocks_x() * self.blocks_y()
    }

    /// Layout index of the block with corner `(i, j)`.
    #[inline]
    pub fn block_index(&self, (i, j): Point) -> usize {
        ((j - 1) / self.k) * self.blocks_x() + (i - 1) / self.k
    }

    /// Corner of the block stored at layout index `idx`.
    #[inline]
    pub fn corner_of(&self, idx: usize) -> Point {
        let bx = self.blocks_x();
        ((idx % bx) * self.k + 1, (idx / bx) * self.k + 1)
    }

    /// The corner set `C(m, n, k)` in layout order.
    pub fn corners(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.block_count()).map(move |idx| self.corner_of(idx))
    }

    pub fn block_value(&self, corner: Point) -> u32 {
        self.block_values[self.block_index(corner)]
    }

    pub fn is_reliable(&self, corner: Point) -> bool {
        self.reliable[self.block_index(corner)]
    }

    /// Admissible block sums `[lo, hi]` for the block at `corner`, clipped to `[0, k²]`.
    pub fn window(&self, corner: Point) -> (u32, u32) {
        let idx = self.block_index(corner);
        let v = self.block_values[idx];
        if self.reliable[idx] {
            (v, v)
        } else {
            let cap = (self.k * self.k) as u32;
            (v.saturating_sub(self.epsilon), (v + self.epsilon).min(cap))
        }
    }

    /// The corner containing cell `(p, q)`.
    #[inline]
    pub fn corner_containing(&self, (p, q): Point) -> Point {
        (
            ((p - 1) / self.k) * self.k + 1,
            ((q - 1) / self.k) * self.k + 1,
        )
    }

    /// True for instances the exact polynomial solver handles.
    pub fn is_exact_double_resolution(&self) -> bool {
        self.k == 2 && self.epsilon == 0
    }
}

/// Reasons an [`Instance`] is malformed or trivially infeasible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceError {
    BlockSizeTooSmall {
        k: usize,
    },
    Dimensions {
        width: usize,
        height: usize,
        k: usize,
    },
    RowSumsLength {
        expected: usize,
        found: usize,
    },
    ColSumsLength {
        expected: usize,
        found: usize,
    },
    BlockValuesLength {
        expected: usize,
        found: usize,
    },
    ReliableLength {
        expected: usize,
        found: usize,
    },
    RowSumOutOfRange {
        row: usize,
        value: u32,
        max: u32,
    },
    ColSumOutOfRange {
        col: usize,
        value: u32,
        max: u32,
    },
    BlockValueOutOfRange {
        corner: Point,
        value: u32,
        max: u32,
    },
    /// `ε = 0` but a block is flagged unreliable.
    UnreliableWithoutNoise {
        corner: Point,
    },
    /// `Σ r ≠ Σ c`; the data is well-formed but no image can exist.
    SumMismatch {
        rows: u64,
        cols: u64,
    },
}

impl InstanceError {
    /// Everything except [`InstanceError::SumMismatch`] signals malformed data.
    pub fn is_structural(&self) -> bool {
        !matches!(self, InstanceError::SumMismatch { .. })
    }
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InstanceError::*;
        match self {
            BlockSizeTooSmall { k } => write!(f, "block size k = {k} must be at least 2"),
            Dimensions { width, height, k } => {
                write!(
                    f,
                    "grid {width}x{height} is not a positive multiple of k = {k}"
                )
            }
            RowSumsLength { expected, found } => {
                write!(f, "expected {expected} row sums, found {found}")
            }
            ColSumsLength { expected, found } => {
                write!(f, "expected {expected} column sums, found {found}")
            }
            BlockValuesLength { expected, found } => {
                write!(f, "expected {expected} block values, found {found}")
            }
            ReliableLength { expected, found } => {
                write!(f, "expected {expected} reliability flags, found {found}")
            }
            RowSumOutOfRange { row, value, max } => {
                write!(f, "row sum r_{row} = {value} exceeds {max}")
            }
            ColSumOutOfRange { col, value, max } => {
                write!(f, "column sum c_{col} = {value} exceeds {max}")
            }
            BlockValueOutOfRange { corner, value, max } => {
                write!(f, "block value v{corner:?} = {value} outside [0, {max}]")
            }
            UnreliableWithoutNoise { corner } => {
                write!(f, "block {corner:?} is unreliable but epsilon = 0")
            }
            SumMismatch { rows, cols } => {
                write!(f, "row sums total {rows} but column sums total {cols}")
            }
        }
    }
}

impl core::error::Error for InstanceError {}

/// Checks the structural invariants of `inst` and the necessary condition
/// `Σ r = Σ c`. An empty result means the instance is well-formed.
pub fn validate_instance(inst: &Instance) -> Vec<InstanceError> {
    let mut errs = Vec::new();
    if inst.k < 2 {
        errs.push(InstanceError::BlockSizeTooSmall { k: inst.k });
    }
    let dims_ok = inst.k >= 1
        && inst.width > 0
        && inst.height > 0
        && inst.width.is_multiple_of(inst.k)
        && inst.height.is_multiple_of(inst.k);
    if !dims_ok {
        errs.push(InstanceError::Dimensions {
            width: inst.width,
            height: inst.height,
            k: inst.k,
        });
    }
    if inst.row_sums.len() != inst.height {
        errs.push(InstanceError::RowSumsLength {
            expected: inst.height,
            found: inst.row_sums.len(),
        });
    }
    if inst.col_sums.len() != inst.width {
        errs.push(InstanceError::ColSumsLength {
            expected: inst.width,
            found: inst.col_sums.len(),
        });
    }
    for (idx, &r) in inst.row_sums.iter().enumerate() {
        if r as usize > inst.width {
            errs.push(InstanceError::RowSumOutOfRange {
                row: idx + 1,
                value: r,
                max: inst.width as u32,
            });
        }
    }
    for (idx, &c) in inst.col_sums.iter().enumerate() {
        if c as usize > inst.height {
            errs.push(InstanceError::ColSumOutOfRange {
                col: idx + 1,
                value: c,
                max: inst.height as u32,
            });
        }
    }
    if dims_ok {
        let expected = inst.block_count();
        let mut layout_ok = true;
        if inst.block_values.len() != expected {
            layout_ok = false;
            errs.push(InstanceError::BlockValuesLength {
                expected,
                found: inst.block_values.len(),
            });
        }
        if inst.reliable.len() != expected {
            layout_ok = false;
            errs.push(InstanceError::ReliableLength {
                expected,
                found: inst.reliable.len(),
            });
        }
        if layout_ok {
            let cap = (inst.k * inst.k) as u32;
            for idx in 0..expected {
                let corner = inst.corner_of(idx);
                if inst.block_values[idx] > cap {
                    errs.push(InstanceError::BlockValueOutOfRange {
                        corner,
                        value: inst.block_values[idx],
                        max: cap,
                    });
                }
                if inst.epsilon == 0 && !inst.reliable[idx] {
                    errs.push(InstanceError::UnreliableWithoutNoise { corner });
                }
            }
        }
    }
    let rows: u64 = inst.row_sums.iter().map(|&r| u64::from(r)).sum();
    let cols: u64 = inst.col_sums.iter().map(|&c| u64::from(c)).sum();
    if rows != cols {
        errs.push(InstanceError::SumMismatch { rows, cols });
    }
    errs
}

/// A violated line sum: `(index, expected, actual)`.
pub type LineViolation = (usize, u32, u32);

/// A violated block constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockViolation {
    pub corner: Point,
    pub expected: u32,
    /// Admissible window `[expected − ε, expected + ε]`, collapsed for reliable blocks.
    pub window: (u32, u32),
    pub actual: u32,
}

/// Outcome of checking an image against every constraint of an instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub row_violations: Vec<LineViolation>,
    pub col_violations: Vec<LineViolation>,
    pub block_violations: Vec<BlockViolation>,
    pub satisfied: bool,
}

impl VerificationReport {
    pub fn violation_count(&self) -> usize {
        self.row_violations.len() + self.col_violations.len() + self.block_violations.len()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.satisfied {
            return writeln!(f, "SATISFIED");
        }
        writeln!(f, "VIOLATED ({} constraints)", self.violation_count())?;
        for &(q, want, got) in &self.row_violations {
            writeln!(f, "row {q}: expected {want}, found {got}")?;
        }
        for &(p, want, got) in &self.col_violations {
            writeln!(f, "column {p}: expected {want}, found {got}")?;
        }
        for b in &self.block_violations {
            writeln!(
                f,
                "block ({}, {}): expected {} in [{}, {}], found {}",
                b.corner.0, b.corner.1, b.expected, b.window.0, b.window.1, b.actual
            )?;
        }
        Ok(())
    }
}

/// The image does not have the instance's dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub expected: (usize, usize),
    pub found: (usize, usize),
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "image is {}x{} but the instance is {}x{}",
            self.found.0, self.found.1, self.expected.0, self.expected.1
        )
    }
}

impl core::error::Error for DimensionMismatch {}

fn check_dims(inst: &Instance, img: &BinaryImage) -> Result<(), DimensionMismatch> {
    if (img.width(), img.height()) != (inst.width, inst.height) {
        return Err(DimensionMismatch {
            expected: (inst.width, inst.height),
            found: (img.width(), img.height()),
        });
    }
    Ok(())
}

/// Checks row sums, column sums, exact block sums on reliable blocks and the
/// `±ε` window on the rest. `inst` must be structurally valid.
pub fn verify_solution(
    inst: &Instance,
    img: &BinaryImage,
) -> Result<VerificationReport, DimensionMismatch> {
    check_dims(inst, img)?;
    let mut report = VerificationReport::default();
    for q in 1..=inst.height {
        let got = img.row_sum(q);
        if got != inst.row_sums[q - 1] {
            report.row_violations.push((q, inst.row_sums[q - 1], got));
        }
    }
    for p in 1..=inst.width {
        let got = img.col_sum(p);
        if got != inst.col_sums[p - 1] {
            report.col_violations.push((p, inst.col_sums[p - 1], got));
        }
    }
    for corner in inst.corners() {
        let actual = img.block_sum(corner, inst.k);
        let window = inst.window(corner);
        if actual < window.0 || actual > window.1 {
            report.block_violations.push(BlockViolation {
                corner,
                expected: inst.block_value(corner),
                window,
                actual,
            });
        }
    }
    report.satisfied = report.violation_count() == 0;
    Ok(report)
}

/// Block dimensions are not divisible by `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Indivisible {
    pub width: usize,
    pub height: usize,
    pub k: usize,
}

impl fmt::Display for Indivisible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}x{} image cannot be divided into {}x{} blocks",
            self.width, self.height, self.k, self.k
        )
    }
}

impl core::error::Error for Indivisible {}

fn check_divisible(img: &BinaryImage, k: usize) -> Result<(), Indivisible> {
    if k == 0 || !img.width().is_multiple_of(k) || !img.height().is_multiple_of(k) {
        return Err(Indivisible {
            width: img.width(),
            height: img.height(),
            k,
        });
    }
    Ok(())
}

/// Low-resolution view of `img`: the number of ones in every `k × k` block.
pub fn degrade(img: &BinaryImage, k: usize) -> Result<GrayImage, Indivisible> {
    check_divisible(img, k)?;
    let (w, h) = (img.width() / k, img.height() / k);
    let mut values = Vec::with_capacity(w * h);
    for v in 0..h {
        for u in 0..w {
            values.push(img.block_sum((u * k + 1, v * k + 1), k));
        }
    }
    Ok(GrayImage {
        k,
        width: w,
        height: h,
        values,
    })
}

/// The noise-free instance measured from a ground-truth image.
pub fn make_exact_instance(img: &BinaryImage, k: usize) -> Result<Instance, Indivisible> {
    let gray = degrade(img, k)?;
    let blocks = gray.values.len();
    Ok(Instance {
        k,
        epsilon: 0,
        width: img.width(),
        height: img.height(),
        row_sums: img.row_sums(),
        col_sums: img.col_sums(),
        block_values: gray.values,
        reliable: vec![true; blocks],
    })
}

/// Marks `⌈fraction · |C|⌉` reliable blocks unreliable (or all remaining
/// reliable blocks, if fewer) and shifts each by a uniform offset in
/// `[−ε, ε]`, clipped to `[0, k²]`. With `ε = 0` the instance is returned
/// unchanged. Deterministic in `seed`.
pub fn perturb_instance(inst: &Instance, fraction: f64, seed: u64) -> Instance {
    let mut out = inst.clone();
    if inst.epsilon == 0 {
        return out;
    }
    let fraction = fraction.clamp(0.0, 1.0);
    let total = inst.block_count();
    let exact = fraction * total as f64;
    let mut wanted = exact as usize;
    if (wanted as f64) < exact {
        wanted += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<usize> = (0..total).filter(|&i| inst.reliable[i]).collect();
    candidates.shuffle(&mut rng);
    let cap = (inst.k * inst.k) as i64;
    let eps = i64::from(inst.epsilon);
    for &idx in candidates.iter().take(wanted) {
        let shift = rng.gen_range(-eps..=eps);
        let v = (i64::from(inst.block_values[idx]) + shift).clamp(0, cap);
        out.block_values[idx] = v as u32;
        out.reliable[idx] = false;
    }
    out
}

/// A `width × height` image with independent cells, each one with
/// probability `density`. Deterministic in `seed`.
pub fn random_phantom(width: usize, height: usize, density: f64, seed: u64) -> BinaryImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = density.clamp(0.0, 1.0);
    BinaryImage::from_fn(width, height, |_, _| rng.gen_bool(density))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_instance() -> Instance {
        Instance {
            k: 2,
            epsilon: 0,
            width: 2,
            height: 2,
            row_sums: vec![0, 0],
            col_sums: vec![0, 0],
            block_values: vec![0],
            reliable: vec![true],
        }
    }

    #[test]
    fn zero_instance_is_valid() {
        assert!(validate_instance(&zero_instance()).is_empty());
    }

    #[test]
    fn sum_mismatch_is_its_own_kind() {
        let mut inst = zero_instance();
        inst.row_sums = vec![1, 0];
        let errs = validate_instance(&inst);
        assert_eq!(errs, vec![InstanceError::SumMismatch { rows: 1, cols: 0 }]);
        assert!(!errs[0].is_structural());
    }

    #[test]
    fn width_not_multiple_of_k() {
        let mut inst = zero_instance();
        inst.width = 3;
        inst.col_sums = vec![0, 0, 0];
        let errs = validate_instance(&inst);
        assert!(errs
            .iter()
            .any(|e| matches!(e, InstanceError::Dimensions { width: 3, .. })));
    }

    #[test]
    fn out_of_range_values_are_reported() {
        let mut inst = zero_instance();
        inst.block_values = vec![5];
        inst.row_sums = vec![3, 0];
        inst.col_sums = vec![3, 0];
        let errs = validate_instance(&inst);
        assert!(errs.contains(&InstanceError::BlockValueOutOfRange {
            corner: (1, 1),
            value: 5,
            max: 4
        }));
        assert!(errs.contains(&InstanceError::RowSumOutOfRange {
            row: 1,
            value: 3,
            max: 2
        }));
        assert!(errs.contains(&InstanceError::ColSumOutOfRange {
            col: 1,
            value: 3,
            max: 2
        }));
    }

    #[test]
    fn unreliable_block_needs_noise() {
        let mut inst = zero_instance();
        inst.reliable = vec![false];
        assert_eq!(
            validate_instance(&inst),
            vec![InstanceError::UnreliableWithoutNoise { corner: (1, 1) }]
        );
    }

    #[test]
    fn zero_image_satisfies_zero_instance() {
        let report = verify_solution(&zero_instance(), &BinaryImage::new(2, 2)).unwrap();
        assert!(report.satisfied);
    }

    #[test]
    fn one_extra_pixel_breaks_one_line_each_way_and_one_block() {
        let truth = BinaryImage::from_rows(&["#..#", "....", ".#..", "#..."]);
        let inst = make_exact_instance(&truth, 2).unwrap();
        let mut img = truth.clone();
        img.set(3, 3, true);
        let report = verify_solution(&inst, &img).unwrap();
        assert_eq!(report.row_violations, vec![(3, 0, 1)]);
        assert_eq!(report.col_violations, vec![(3, 0, 1)]);
        assert_eq!(report.block_violations.len(), 1);
        assert_eq!(report.block_violations[0].corner, (3, 3));
        assert_eq!(report.block_violations[0].expected, 1);
        assert_eq!(report.block_violations[0].actual, 2);
        assert!(!report.satisfied);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(verify_solution(&zero_instance(), &BinaryImage::new(4, 2)).is_err());
    }

    #[test]
    fn degrade_all_ones() {
        let img = BinaryImage::from_fn(4, 4, |_, _| true);
        let g = degrade(&img, 2).unwrap();
        assert_eq!((g.width, g.height), (2, 2));
        assert_eq!(g.values, vec![4; 4]);
    }

    #[test]
    fn degrade_single_one() {
        let mut img = BinaryImage::new(6, 4);
        img.set(4, 3, true);
        let g = degrade(&img, 2).unwrap();
        assert_eq!(g.get(2, 2), 1);
        assert_eq!(g.values.iter().sum::<u32>(), 1);
    }

    #[test]
    fn degrade_rejects_indivisible() {
        assert!(degrade(&BinaryImage::new(3, 4), 2).is_err());
        assert!(make_exact_instance(&BinaryImage::new(4, 5), 2).is_err());
    }

    #[test]
    fn exact_instance_of_zero_image() {
        let inst = make_exact_instance(&BinaryImage::new(2, 2), 2).unwrap();
        assert_eq!(inst, zero_instance());
    }

    #[test]
    fn perturb_is_identity_for_zero_fraction_or_zero_noise() {
        let img = BinaryImage::from_rows(&["#.#.", ".##.", "#..#", "##.."]);
        let inst = make_exact_instance(&img, 2).unwrap();
        assert_eq!(perturb_instance(&inst, 1.0, 7), inst);
        let mut noisy = inst.clone();
        noisy.epsilon = 1;
        assert_eq!(perturb_instance(&noisy, 0.0, 7), noisy);
    }

    #[test]
    fn perturb_counts_and_determinism() {
        let img = BinaryImage::from_fn(8, 8, |p, q| (p * 3 + q * 5) % 7 < 3);
        let mut inst = make_exact_instance(&img, 2).unwrap();
        inst.epsilon = 1;
        let a = perturb_instance(&inst, 0.5, 42);
        let b = perturb_instance(&inst, 0.5, 42);
        assert_eq!(a, b);
        assert_eq!(a.reliable.iter().filter(|r| !**r).count(), 8);
        assert!(verify_solution(&a, &img).unwrap().satisfied);
    }
}
