//! Grayscale and bilevel images with bit-exact Netpbm I/O.
//!
//! Only the raw variants are handled: PGM `P5` with maxval 255 for 8-bit
//! luminance and PBM `P4` (MSB-first, rows padded to a byte) for bit
//! planes. A `P5` file may also be read as a binary image, thresholded at
//! 128.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// 8-bit grayscale image, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        let expected = width * height;
        if pixels.len() != expected {
            return Err(Error::BufferSize {
                expected,
                found: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        Self {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: u8) {
        self.pixels[y * self.width + x] = value;
    }

    /// Least significant bit plane.
    pub fn lsb_plane(&self) -> BinaryImage {
        BinaryImage {
            width: self.width,
            height: self.height,
            bits: self.pixels.iter().map(|p| p & 1).collect(),
        }
    }
}

/// Bilevel image, row-major, one `u8` in {0, 1} per pixel.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    bits: Vec<u8>,
}

impl BinaryImage {
    pub fn new(width: usize, height: usize, bits: Vec<u8>) -> Result<Self> {
        let expected = width * height;
        if bits.len() != expected {
            return Err(Error::BufferSize {
                expected,
                found: bits.len(),
            });
        }
        if let Some(&bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBit(bad));
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            bits: vec![0; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                bits.push(u8::from(f(x, y)));
            }
        }
        Self {
            width,
            height,
            bits,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.bits[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, bit: bool) {
        self.bits[y * self.width + x] = u8::from(bit);
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn xor(&self, other: &BinaryImage) -> Result<BinaryImage> {
        if self.dimensions() != other.dimensions() {
            return Err(dimension_mismatch(self.dimensions(), other.dimensions()));
        }
        Ok(BinaryImage {
            width: self.width,
            height: self.height,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Renders bit 1 as white (255) and bit 0 as black.
    pub fn to_gray(&self) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            pixels: bits_to_gray(&self.bits),
        }
    }
}

fn bits_to_gray(bits: &[u8]) -> Vec<u8> {
    bits.iter().map(|&b| if b == 1 { 255 } else { 0 }).collect()
}

pub(crate) fn dimension_mismatch(a: (usize, usize), b: (usize, usize)) -> Error {
    Error::DimensionMismatch {
        a_width: a.0,
        a_height: a.1,
        b_width: b.0,
        b_height: b.1,
    }
}

pub fn load_gray(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    decode_gray(&read(path)?)
}

pub fn save_gray(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write(path, &encode_gray(image)?)
}

pub fn load_binary(path: impl AsRef<Path>) -> Result<BinaryImage> {
    let path = path.as_ref();
    decode_binary(&read(path)?)
}

pub fn save_binary(image: &BinaryImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write(path, &encode_binary(image)?)
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, data: &[u8]) -> Result<()> {
    fs::write(path, data).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

/// Decodes an in-memory `P5` file.
pub fn decode_gray(data: &[u8]) -> Result<GrayImage> {
    let mut header = Header::new(data);
    let magic = header.magic()?;
    if magic != *b"P5" {
        return Err(unsupported(magic));
    }
    let (width, height) = header.dimensions()?;
    let maxval = header.number()?;
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval(maxval));
    }
    let payload = header.payload()?;
    let expected = width * height;
    check_payload(payload.len(), expected)?;
    GrayImage::new(width, height, payload.to_vec())
}

pub fn encode_gray(image: &GrayImage) -> Result<Vec<u8>> {
    if image.width == 0 || image.height == 0 {
        return Err(Error::EmptyImage);
    }
    let mut out = format!("P5\n{} {}\n255\n", image.width, image.height).into_bytes();
    out.extend_from_slice(&image.pixels);
    Ok(out)
}

/// Decodes an in-memory `P4` file, or a `P5` file thresholded at 128.
pub fn decode_binary(data: &[u8]) -> Result<BinaryImage> {
    let mut header = Header::new(data);
    let magic = header.magic()?;
    match &magic {
        b"P4" => {
            let (width, height) = header.dimensions()?;
            let payload = header.payload()?;
            let stride = width.div_ceil(8);
            check_payload(payload.len(), stride * height)?;
            let mut bits = Vec::with_capacity(width * height);
            for row in payload.chunks_exact(stride).take(height) {
                bits.extend((0..width).map(|x| (row[x / 8] >> (7 - x % 8)) & 1));
            }
            BinaryImage::new(width, height, bits)
        }
        b"P5" => {
            let gray = decode_gray(data)?;
            let bits = gray.pixels.iter().map(|&p| u8::from(p >= 128)).collect();
            BinaryImage::new(gray.width, gray.height, bits)
        }
        _ => Err(unsupported(magic)),
    }
}

pub fn encode_binary(image: &BinaryImage) -> Result<Vec<u8>> {
    if image.width == 0 || image.height == 0 {
        return Err(Error::EmptyImage);
    }
    let mut out = format!("P4\n{} {}\n", image.width, image.height).into_bytes();
    let stride = image.width.div_ceil(8);
    for row in image.bits.chunks_exact(image.width) {
        let mut packed = vec![0u8; stride];
        for (x, &bit) in row.iter().enumerate() {
            packed[x / 8] |= bit << (7 - x % 8);
        }
        out.extend_from_slice(&packed);
    }
    Ok(out)
}

fn unsupported(magic: [u8; 2]) -> Error {
    Error::UnsupportedFormat(format!(
        "magic {:?}, expected P4 or P5",
        String::from_utf8_lossy(&magic)
    ))
}

fn check_payload(found: usize, expected: usize) -> Result<()> {
    if found < expected {
        return Err(Error::Truncated { expected, found });
    }
    if found > expected {
        return Err(Error::TrailingData { expected, found });
    }
    Ok(())
}

/// Netpbm header tokenizer: whitespace separated ASCII fields with `#`
/// comments running to end of line.
struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    fn magic(&mut self) -> Result<[u8; 2]> {
        if self.data.len() < 2 {
            return Err(Error::MalformedHeader("missing magic number".into()));
        }
        self.pos = 2;
        Ok([self.data[0], self.data[1]])
    }

    fn skip_separators(&mut self) {
        while let Some(&c) = self.data.get(self.pos) {
            if c == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Result<u32> {
        // a separator must follow the magic or the previous field
        if !self
            .data
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace() || *c == b'#')
        {
            return Err(Error::MalformedHeader("expected whitespace".into()));
        }
        self.skip_separators();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedHeader("expected a decimal number".into()));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedHeader("number out of range".into()))
    }

    fn dimensions(&mut self) -> Result<(usize, usize)> {
        let width = self.number()? as usize;
        let height = self.number()? as usize;
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        Ok((width, height))
    }

    /// Consumes the single whitespace byte ending the header.
    fn payload(&mut self) -> Result<&'a [u8]> {
        match self.data.get(self.pos) {
            Some(c) if c.is_ascii_whitespace() => Ok(&self.data[self.pos + 1..]),
            _ => Err(Error::MalformedHeader(
                "header must end with a single whitespace byte".into(),
            )),
        }
    }
}
