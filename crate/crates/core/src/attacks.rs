//! Deterministic tampering: copy-paste, position-preserving splice (the
//! collage/VQ forgery), content removal and text stamping.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::imgio::{dimension_mismatch, BinaryImage, GrayImage};

/// Axis-aligned pixel rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x: usize,
    pub y: usize,
    pub w: usize,
    pub h: usize,
}

impl Rect {
    pub fn new(x: usize, y: usize, w: usize, h: usize) -> Self {
        Self { x, y, w, h }
    }

    pub fn area(&self) -> usize {
        self.w * self.h
    }

    pub fn fits(&self, width: usize, height: usize) -> bool {
        self.x.checked_add(self.w).is_some_and(|r| r <= width)
            && self.y.checked_add(self.h).is_some_and(|b| b <= height)
    }

    pub fn contains(&self, px: usize, py: usize) -> bool {
        px >= self.x && px < self.x + self.w && py >= self.y && py < self.y + self.h
    }

    fn check(&self, image: &GrayImage) -> Result<()> {
        if self.fits(image.width(), image.height()) {
            Ok(())
        } else {
            Err(Error::RegionOutOfBounds(format!(
                "{self} in {}x{}",
                image.width(),
                image.height()
            )))
        }
    }
}

/// `x y w h`, the sidecar record format.
impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.x, self.y, self.w, self.h)
    }
}

/// Accepts `x,y,w,h` or whitespace separated `x y w h`.
impl FromStr for Rect {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::RegionOutOfBounds(format!("unparsable region {s:?}")))?;
        match parts[..] {
            [x, y, w, h] => Ok(Rect::new(x, y, w, h)),
            _ => Err(Error::RegionOutOfBounds(format!(
                "region {s:?} needs four numbers"
            ))),
        }
    }
}

/// Copies the pixels under `src` so that its top-left lands on `dst`.
pub fn copy_paste(img: &GrayImage, src: Rect, dst: (usize, usize)) -> Result<GrayImage> {
    src.check(img)?;
    Rect::new(dst.0, dst.1, src.w, src.h).check(img)?;
    let mut out = img.clone();
    for dy in 0..src.h {
        for dx in 0..src.w {
            out.set(dst.0 + dx, dst.1 + dy, img.get(src.x + dx, src.y + dy));
        }
    }
    Ok(out)
}

/// Replaces `region` of `dst_img` with the same-position pixels of
/// `src_img`.
pub fn splice(dst_img: &GrayImage, src_img: &GrayImage, region: Rect) -> Result<GrayImage> {
    if dst_img.dimensions() != src_img.dimensions() {
        return Err(dimension_mismatch(dst_img.dimensions(), src_img.dimensions()));
    }
    region.check(dst_img)?;
    let mut out = dst_img.clone();
    for y in region.y..region.y + region.h {
        for x in region.x..region.x + region.w {
            out.set(x, y, src_img.get(x, y));
        }
    }
    Ok(out)
}

pub fn fill_region(img: &GrayImage, region: Rect, value: u8) -> Result<GrayImage> {
    region.check(img)?;
    let mut out = img.clone();
    for y in region.y..region.y + region.h {
        for x in region.x..region.x + region.w {
            out.set(x, y, value);
        }
    }
    Ok(out)
}

/// Sets every pixel under a 1 bit of `stamp` (placed at `at`) to `ink`.
pub fn stamp_bits(
    img: &GrayImage,
    stamp: &BinaryImage,
    at: (usize, usize),
    ink: u8,
) -> Result<GrayImage> {
    Rect::new(at.0, at.1, stamp.width(), stamp.height()).check(img)?;
    let mut out = img.clone();
    for y in 0..stamp.height() {
        for x in 0..stamp.width() {
            if stamp.get(x, y) == 1 {
                out.set(at.0 + x, at.1 + y, ink);
            }
        }
    }
    Ok(out)
}

const GLYPH_W: usize = 5;
const GLYPH_H: usize = 7;

/// 5x7 glyphs, one row per byte, MSB of the low five bits on the left.
fn glyph(c: char) -> [u8; GLYPH_H] {
    match c.to_ascii_uppercase() {
        'A' => [0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11],
        'B' => [0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E],
        'C' => [0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E],
        'D' => [0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E],
        'E' => [0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F],
        'F' => [0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10],
        'G' => [0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F],
        'H' => [0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11],
        'I' => [0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E],
        'J' => [0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C],
        'K' => [0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11],
        'L' => [0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F],
        'M' => [0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11],
        'N' => [0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11],
        'O' => [0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E],
        'P' => [0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10],
        'Q' => [0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D],
        'R' => [0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11],
        'S' => [0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E],
        'T' => [0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04],
        'U' => [0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E],
        'V' => [0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04],
        'W' => [0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A],
        'X' => [0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11],
        'Y' => [0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04],
        'Z' => [0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F],
        '0' => [0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E],
        '1' => [0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E],
        '2' => [0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F],
        '3' => [0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E],
        '4' => [0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02],
        '5' => [0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E],
        '6' => [0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E],
        '7' => [0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
        '8' => [0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E],
        '9' => [0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C],
        '-' => [0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00],
        '.' => [0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C],
        _ => [0; GLYPH_H],
    }
}

/// Renders `text` with the built-in 5x7 font, each font pixel drawn as a
/// `scale x scale` square and one blank column between characters.
pub fn render_text(text: &str, scale: usize) -> BinaryImage {
    let scale = scale.max(1);
    let chars: Vec<char> = text.chars().collect();
    let cell = GLYPH_W + 1;
    let width = (chars.len() * cell).saturating_sub(1).max(1) * scale;
    let height = GLYPH_H * scale;
    BinaryImage::from_fn(width, height, |x, y| {
        let (gx, gy) = (x / scale, y / scale);
        let (ci, col) = (gx / cell, gx % cell);
        col < GLYPH_W
            && chars
                .get(ci)
                .is_some_and(|&c| glyph(c)[gy] >> (GLYPH_W - 1 - col) & 1 == 1)
    })
}
