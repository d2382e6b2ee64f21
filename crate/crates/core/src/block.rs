//! The sixteen fill patterns of a `2 × 2` block and their named types.
//!
//! A pattern is a 4-bit mask. Bit `2·(r−1) + (c−1)` is the cell in block row
//! `r` (1 = bottom) and block column `c` (1 = left):
//!
//! ```text
//!   bit 2 | bit 3      row 2
//!   bit 0 | bit 1      row 1
//! ```

use core::fmt;

use crate::model::BinaryImage;
use crate::Point;

/// Named `2 × 2` patterns.
///
/// `A` and `C` carry the row/column of their single one (resp. single zero).
/// `B3(1)`/`B3(2)` fill the left/right column, `B3(3)` the main diagonal
/// (lower-left and upper-right), `B3(4)` the anti-diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockType {
    Empty,
    A {
        row: u8,
        col: u8,
    },
    /// Bottom row full.
    B1,
    /// Top row full.
    B2,
    B3(u8),
    C {
        row: u8,
        col: u8,
    },
    Full,
}

#[inline]
const fn bit(row: u8, col: u8) -> u8 {
    1 << (2 * (row - 1) + (col - 1))
}

impl BlockType {
    /// All sixteen types, ordered by mask.
    pub const ALL: [BlockType; 16] = {
        let mut out = [BlockType::Empty; 16];
        let mut m = 0;
        while m < 16 {
            out[m] = BlockType::from_mask(m as u8);
            m += 1;
        }
        out
    };

    pub const fn from_mask(mask: u8) -> BlockType {
        match mask & 0xF {
            0b0000 => BlockType::Empty,
            0b1111 => BlockType::Full,
            0b0001 => BlockType::A { row: 1, col: 1 },
            0b0010 => BlockType::A { row: 1, col: 2 },
            0b0100 => BlockType::A { row: 2, col: 1 },
            0b1000 => BlockType::A { row: 2, col: 2 },
            0b0011 => BlockType::B1,
            0b1100 => BlockType::B2,
            0b0101 => BlockType::B3(1),
            0b1010 => BlockType::B3(2),
            0b1001 => BlockType::B3(3),
            0b0110 => BlockType::B3(4),
            0b1110 => BlockType::C { row: 1, col: 1 },
            0b1101 => BlockType::C { row: 1, col: 2 },
            0b1011 => BlockType::C { row: 2, col: 1 },
            _ => BlockType::C { row: 2, col: 2 },
        }
    }

    pub const fn mask(self) -> u8 {
        match self {
            BlockType::Empty => 0,
            BlockType::Full => 0xF,
            BlockType::A { row, col } => bit(row, col),
            BlockType::C { row, col } => 0xF & !bit(row, col),
            BlockType::B1 => 0b0011,
            BlockType::B2 => 0b1100,
            BlockType::B3(1) => 0b0101,
            BlockType::B3(2) => 0b1010,
            BlockType::B3(3) => 0b1001,
            BlockType::B3(_) => 0b0110,
        }
    }

    /// Number of ones.
    pub const fn ones(self) -> u32 {
        self.mask().count_ones()
    }

    /// Whether the cell at block row `row`, block column `col` is set.
    pub const fn get(self, row: u8, col: u8) -> bool {
        self.mask() & bit(row, col) != 0
    }

    /// Ones in block rows `(1, 2)`.
    pub const fn row_counts(self) -> (u32, u32) {
        let m = self.mask();
        ((m & 0b0011).count_ones(), (m & 0b1100).count_ones())
    }

    /// Ones in block columns `(1, 2)`.
    pub const fn col_counts(self) -> (u32, u32) {
        let m = self.mask();
        ((m & 0b0101).count_ones(), (m & 0b1010).count_ones())
    }
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockType::Empty => f.write_str("EMPTY"),
            BlockType::Full => f.write_str("FULL"),
            BlockType::A { row, col } => write!(f, "A({row},{col})"),
            BlockType::C { row, col } => write!(f, "C({row},{col})"),
            BlockType::B1 => f.write_str("B1"),
            BlockType::B2 => f.write_str("B2"),
            BlockType::B3(s) => write!(f, "B3({s})"),
        }
    }
}

/// `(i, j)` is not the corner of a `2 × 2` block inside the image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CornerOutOfRange(pub Point);

impl fmt::Display for CornerOutOfRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} is not a 2x2 block corner of the image", self.0)
    }
}

impl core::error::Error for CornerOutOfRange {}

fn check_corner(img: &BinaryImage, (i, j): Point) -> Result<(), CornerOutOfRange> {
    let ok = i >= 1 && j >= 1 && i % 2 == 1 && j % 2 == 1 && i < img.width() && j < img.height();
    if ok {
        Ok(())
    } else {
        Err(CornerOutOfRange((i, j)))
    }
}

/// Mask of the `2 × 2` block at `(i, j)`. The corner is not validated.
#[inline]
pub(crate) fn block_mask(img: &BinaryImage, (i, j): Point) -> u8 {
    u8::from(img.get(i, j))
        | u8::from(img.get(i + 1, j)) << 1
        | u8::from(img.get(i, j + 1)) << 2
        | u8::from(img.get(i + 1, j + 1)) << 3
}

/// Overwrites the `2 × 2` block at `(i, j)`. The corner is not validated.
#[inline]
pub(crate) fn write_block(img: &mut BinaryImage, (i, j): Point, t: BlockType) {
    img.set(i, j, t.get(1, 1));
    img.set(i + 1, j, t.get(1, 2));
    img.set(i, j + 1, t.get(2, 1));
    img.set(i + 1, j + 1, t.get(2, 2));
}

/// Type of the `2 × 2` block with lower-left corner `(i, j)`.
pub fn classify_block(img: &BinaryImage, corner: Point) -> Result<BlockType, CornerOutOfRange> {
    check_corner(img, corner)?;
    Ok(BlockType::from_mask(block_mask(img, corner)))
}

/// Writes a block type into `img` at `corner`.
pub fn set_block(
    img: &mut BinaryImage,
    corner: Point,
    t: BlockType,
) -> Result<(), CornerOutOfRange> {
    check_corner(img, corner)?;
    write_block(img, corner, t);
    Ok(())
}
