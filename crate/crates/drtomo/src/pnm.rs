//! Plain netpbm: `P1` bitmaps and `P2` graymaps.
//!
//! The first raster line of a file is the top image row `q = n`, so reading
//! flips the raster into Cartesian order and writing flips it back.

use drtomo_core::{BinaryImage, GrayImage};
use thiserror::Error;

/// Largest accepted side length.
pub const MAX_SIDE: usize = 1 << 15;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PnmError {
    #[error("expected magic number {expected}")]
    Magic { expected: &'static str },
    #[error("malformed header: {0}")]
    Header(String),
    #[error("image dimensions {0} x {1} are out of range")]
    Dimensions(usize, usize),
    #[error("invalid sample `{token}` at pixel {index}")]
    Sample { index: usize, token: String },
    #[error("expected {expected} samples, found {found}")]
    SampleCount { expected: usize, found: usize },
    #[error("maxval {0} is not a perfect square")]
    MaxVal(u32),
    #[error("file is not valid UTF-8 text")]
    Encoding,
}

/// Splits a plain netpbm body into tokens, dropping `#` comments.
fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
}

fn header<'a>(
    tokens: &mut impl Iterator<Item = &'a str>,
    magic: &'static str,
) -> Result<(usize, usize), PnmError> {
    if tokens.next() != Some(magic) {
        return Err(PnmError::Magic { expected: magic });
    }
    let mut dim = || -> Result<usize, PnmError> {
        let t = tokens
            .next()
            .ok_or_else(|| PnmError::Header("missing dimensions".into()))?;
        t.parse()
            .map_err(|_| PnmError::Header(format!("`{t}` is not a dimension")))
    };
    let (w, h) = (dim()?, dim()?);
    if w == 0 || h == 0 || w > MAX_SIDE || h > MAX_SIDE {
        return Err(PnmError::Dimensions(w, h));
    }
    Ok((w, h))
}

fn text(bytes: &[u8]) -> Result<&str, PnmError> {
    std::str::from_utf8(bytes).map_err(|_| PnmError::Encoding)
}

/// Reads a `P1` bitmap. Samples may be separated by whitespace or written
/// adjacently.
pub fn read_image(bytes: &[u8]) -> Result<BinaryImage, PnmError> {
    let mut toks = tokens(text(bytes)?);
    let (w, h) = header(&mut toks, "P1")?;
    let mut bits = Vec::with_capacity(w * h);
    for tok in toks {
        for ch in tok.chars() {
            let bit = match ch {
                '0' => false,
                '1' => true,
                _ => {
                    return Err(PnmError::Sample {
                        index: bits.len(),
                        token: tok.to_string(),
                    })
                }
            };
            bits.push(bit);
        }
    }
    if bits.len() != w * h {
        return Err(PnmError::SampleCount {
            expected: w * h,
            found: bits.len(),
        });
    }
    Ok(BinaryImage::from_fn(w, h, |p, q| bits[(h - q) * w + p - 1]))
}

pub fn write_image(img: &BinaryImage) -> Vec<u8> {
    let (w, h) = (img.width(), img.height());
    let mut out = format!("P1\n{w} {h}\n").into_bytes();
    for q in (1..=h).rev() {
        for p in 1..=w {
            if p > 1 {
                out.push(b' ');
            }
            out.push(if img.get(p, q) { b'1' } else { b'0' });
        }
        out.push(b'\n');
    }
    out
}

/// Writes a `P2` graymap of block values with maxval `k²`.
pub fn write_gray(g: &GrayImage) -> Vec<u8> {
    let mut out = format!("P2\n{} {}\n{}\n", g.width, g.height, g.max_value());
    for v in (1..=g.height).rev() {
        let row: Vec<String> = (1..=g.width).map(|u| g.get(u, v).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.into_bytes()
}

/// Reads a `P2` graymap; the block size is recovered from maxval `k²`.
pub fn read_gray(bytes: &[u8]) -> Result<GrayImage, PnmError> {
    let mut toks = tokens(text(bytes)?);
    let (w, h) = header(&mut toks, "P2")?;
    let maxval: u32 = toks
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| PnmError::Header("missing maxval".into()))?;
    let k = (1..=maxval).find(|k| k * k >= maxval).unwrap_or(0);
    if k == 0 || k * k != maxval {
        return Err(PnmError::MaxVal(maxval));
    }
    let mut rows = Vec::with_capacity(w * h);
    for (index, tok) in toks.enumerate() {
        let v: u32 = tok
            .parse()
            .ok()
            .filter(|&v| v <= maxval)
            .ok_or_else(|| PnmError::Sample {
                index,
                token: tok.to_string(),
            })?;
        rows.push(v);
    }
    if rows.len() != w * h {
        return Err(PnmError::SampleCount {
            expected: w * h,
            found: rows.len(),
        });
    }
    let values = (0..h)
        .flat_map(|v| {
            let start = (h - 1 - v) * w;
            rows[start..start + w].to_vec()
        })
        .collect();
    Ok(GrayImage {
        k: k as usize,
        width: w,
        height: h,
        values,
    })
}
