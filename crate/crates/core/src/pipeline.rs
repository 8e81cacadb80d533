//! Watermark embedding, verification and quality metrics.
//!
//! Embedding works on the Arnold-scrambled block grid: every block's
//! 16-bit payload (its own BAN plus the GAN of its five-block group) is
//! spread over the block's LSB plane in an order derived from the block
//! itself, XORed with the binary watermark, and the grid is scrambled the
//! rest of the way round its period so blocks return home.
//!
//! Verification repeats the derivation from the 7 MSB planes and compares
//! it with what the LSB plane carries. A block is flagged when its BAN
//! disagrees, when the GAN it carries differs from the group's most
//! frequent carried GAN, or when the GAN recomputed for its group differs
//! from that mode.

use crate::blockauth::{
    block_ban, block_permutation, group_gan, merge_bit_tiles, merge_tiles, pack_auth_bits,
    split_bit_tiles, split_tiles, unpack_auth_bits, zero_lsb, AuthBits, Block, BLOCK_LEN,
    BLOCK_SIDE, GROUP_SIZE,
};
use crate::chaos::{permute, ArnoldKey};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, map_items, Execution};
use crate::imgio::{dimension_mismatch, BinaryImage, GrayImage};

type Tile = [u8; BLOCK_LEN];

/// Secret material: Arnold parameters plus the binary watermark.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuthKey {
    arnold: ArnoldKey,
    watermark: BinaryImage,
    watermark_tiles: Vec<Tile>,
}

impl AuthKey {
    /// The watermark fixes the image size: it must be square with a side
    /// that is a multiple of 4.
    pub fn new(a: u64, b: u64, k: u64, watermark: BinaryImage) -> Result<Self> {
        let (width, height) = watermark.dimensions();
        if width != height {
            return Err(Error::NotSquare { width, height });
        }
        let watermark_tiles = split_bit_tiles(&watermark)?;
        let arnold = ArnoldKey::new(a, b, k, (width / BLOCK_SIDE) as u64)?;
        Ok(Self {
            arnold,
            watermark,
            watermark_tiles,
        })
    }

    pub fn arnold(&self) -> &ArnoldKey {
        &self.arnold
    }

    pub fn watermark(&self) -> &BinaryImage {
        &self.watermark
    }

    pub fn grid_side(&self) -> usize {
        self.arnold.side() as usize
    }

    /// Group number of every block, indexed by row-major position in the
    /// unscrambled image.
    pub fn block_groups(&self) -> Vec<usize> {
        self.arnold
            .forward()
            .into_iter()
            .map(|s| s / GROUP_SIZE)
            .collect()
    }

    fn check_image(&self, image: &GrayImage) -> Result<()> {
        let (width, height) = image.dimensions();
        if width != height {
            return Err(Error::NotSquare { width, height });
        }
        if image.dimensions() != self.watermark.dimensions() {
            return Err(dimension_mismatch(
                image.dimensions(),
                self.watermark.dimensions(),
            ));
        }
        Ok(())
    }
}

/// Per-block tamper flags in original block coordinates, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TamperMap {
    rows: usize,
    cols: usize,
    flags: Vec<bool>,
}

impl TamperMap {
    pub fn new(rows: usize, cols: usize, flags: Vec<bool>) -> Result<Self> {
        if flags.len() != rows * cols {
            return Err(Error::BufferSize {
                expected: rows * cols,
                found: flags.len(),
            });
        }
        Ok(Self { rows, cols, flags })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    /// Flag of block at 0-based `(row, col)`.
    pub fn is_flagged(&self, row: usize, col: usize) -> bool {
        self.flags[row * self.cols + col]
    }

    pub fn flagged_count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub map: TamperMap,
    /// Watermark with the tiles of flagged blocks inverted.
    pub extracted_watermark: BinaryImage,
    pub flagged_count: usize,
    pub total_blocks: usize,
    /// Blocks whose carried BAN disagrees with their content, on their
    /// own, without group evidence. Original block coordinates.
    pub ban_mismatch: TamperMap,
}

impl VerifyReport {
    pub fn is_authentic(&self) -> bool {
        self.flagged_count == 0
    }
}

pub fn embed(host: &GrayImage, key: &AuthKey) -> Result<GrayImage> {
    embed_with(host, key, Execution::default())
}

pub fn embed_with(host: &GrayImage, key: &AuthKey, exec: Execution) -> Result<GrayImage> {
    key.check_image(host)?;
    let n = key.grid_side();
    let (width, height) = host.dimensions();

    let scrambled: Vec<Block> = permute(
        &split_tiles(host.pixels(), width, height),
        &key.arnold.forward(),
    )
    .into_iter()
    .map(|t| zero_lsb(&Block(t)))
    .collect();

    let derived = map_items(exec, &scrambled, |b| (block_ban(b), block_permutation(b)));
    let bans: Vec<u16> = derived.iter().map(|d| d.0).collect();
    let gans: Vec<u8> = bans
        .chunks(GROUP_SIZE)
        .map(|g| group_gan(g).expect("chunks are non-empty"))
        .collect();

    let marked: Vec<Tile> = map_indexed(exec, scrambled.len(), |s| {
        let (ban, perm) = &derived[s];
        let auth = AuthBits::new(*ban, gans[s / GROUP_SIZE]).expect("payload in range");
        let abp = pack_auth_bits(auth, perm);
        let w = &key.watermark_tiles[s];
        std::array::from_fn(|i| scrambled[s].0[i] | (abp[i] ^ w[i]))
    });

    let restored = permute(&marked, &key.arnold.backward());
    GrayImage::new(width, height, merge_tiles(&restored, n, n))
}

/// What one scrambled block carries versus what its content implies.
struct Evidence {
    ban: u16,
    carried: AuthBits,
}

pub fn verify(image: &GrayImage, key: &AuthKey) -> Result<VerifyReport> {
    verify_with(image, key, Execution::default())
}

pub fn verify_with(image: &GrayImage, key: &AuthKey, exec: Execution) -> Result<VerifyReport> {
    key.check_image(image)?;
    let n = key.grid_side();
    let (width, height) = image.dimensions();

    let scrambled = permute(
        &split_tiles(image.pixels(), width, height),
        &key.arnold.forward(),
    );

    let evidence: Vec<Evidence> = map_indexed(exec, scrambled.len(), |s| {
        let tile = &scrambled[s];
        let w = &key.watermark_tiles[s];
        let abp: Tile = std::array::from_fn(|i| (tile[i] & 1) ^ w[i]);
        let block7 = zero_lsb(&Block(*tile));
        Evidence {
            ban: block_ban(&block7),
            carried: unpack_auth_bits(&abp, &block_permutation(&block7)),
        }
    });

    let mut flagged = vec![false; evidence.len()];
    for (group, members) in evidence.chunks(GROUP_SIZE).enumerate() {
        let bans: Vec<u16> = members.iter().map(|e| e.ban).collect();
        let recomputed = group_gan(&bans).expect("chunks are non-empty");
        let freq = most_frequent(members.iter().map(|e| e.carried.gan()));
        for (i, e) in members.iter().enumerate() {
            flagged[group * GROUP_SIZE + i] =
                e.ban != e.carried.ban() || e.carried.gan() != freq || recomputed != freq;
        }
    }

    // EW tiles, scrambled layout: a flagged block contributes the
    // complement of the watermark tile at its position
    let extracted: Vec<Tile> = key
        .watermark_tiles
        .iter()
        .zip(&flagged)
        .map(|(w, &f)| if f { invert(w) } else { *w })
        .collect();
    let tampered: Vec<bool> = extracted
        .iter()
        .zip(&key.watermark_tiles)
        .map(|(e, w)| e != w)
        .collect();
    let flags = permute(&tampered, &key.arnold.backward());
    let ban_flags: Vec<bool> = evidence
        .iter()
        .map(|e| e.ban != e.carried.ban())
        .collect();
    let ban_mismatch = TamperMap::new(n, n, permute(&ban_flags, &key.arnold.backward()))?;

    // W_ext is reported in image coordinates so damage shows where it
    // happened
    let ext_tiles: Vec<Tile> = key
        .watermark_tiles
        .iter()
        .zip(&flags)
        .map(|(w, &f)| if f { invert(w) } else { *w })
        .collect();
    let extracted_watermark = merge_bit_tiles(&ext_tiles, n, n);

    let map = TamperMap::new(n, n, flags)?;
    let flagged_count = map.flagged_count();
    Ok(VerifyReport {
        map,
        extracted_watermark,
        flagged_count,
        total_blocks: n * n,
        ban_mismatch,
    })
}

fn invert(tile: &Tile) -> Tile {
    tile.map(|b| b ^ 1)
}

/// Most frequent value; ties go to the smallest value.
fn most_frequent(values: impl Iterator<Item = u8>) -> u8 {
    let mut counts = [0u8; 256];
    for v in values {
        counts[usize::from(v)] += 1;
    }
    let best = counts.iter().copied().max().unwrap_or(0);
    counts.iter().position(|&c| c == best).unwrap_or(0) as u8
}

/// Peak signal-to-noise ratio in dB for 8-bit images; `f64::INFINITY`
/// when the images are identical.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if a.dimensions() != b.dimensions() {
        return Err(dimension_mismatch(a.dimensions(), b.dimensions()));
    }
    if a.pixels().is_empty() {
        return Err(Error::EmptyImage);
    }
    let sse: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = i64::from(x) - i64::from(y);
            (d * d) as u64
        })
        .sum();
    if sse == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse as f64 / a.pixels().len() as f64;
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}

/// Flagged blocks become white 4x4 squares on black.
pub fn render_tamper_map(map: &TamperMap) -> GrayImage {
    let side = BLOCK_SIDE;
    GrayImage::from_fn(map.cols * side, map.rows * side, |x, y| {
        if map.is_flagged(y / side, x / side) {
            255
        } else {
            0
        }
    })
}
