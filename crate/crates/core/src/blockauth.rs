//! Per-block authentication payloads.
//!
//! A 4x4 block with its LSB plane cleared yields two numbers: the block
//! authentication number (BAN, 10 bits) from the sum of its singular
//! values, and, jointly with its group of up to five neighbours in the
//! scrambled grid, the group authentication number (GAN, 6 bits). The
//! block's own mean and standard deviation seed a logistic map whose
//! ranking decides which pixel carries which of the 16 payload bits.

use crate::chaos::{logistic_sequence, rank_permutation, LogisticParams, MU_MIN};
use crate::error::{Error, Result};
use crate::imgio::{BinaryImage, GrayImage};
use crate::svd4::{sv_trace, Matrix4};

pub const BLOCK_SIDE: usize = 4;
pub const BLOCK_LEN: usize = BLOCK_SIDE * BLOCK_SIDE;
pub const GROUP_SIZE: usize = 5;
pub const BAN_BITS: u32 = 10;
pub const GAN_BITS: u32 = 6;
pub const BAN_MODULUS: u16 = 1 << BAN_BITS;
pub const GAN_MODULUS: u8 = 1 << GAN_BITS;

const MU_SPAN: f64 = 0.43;

/// 4x4 pixel block, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block(pub [u8; BLOCK_LEN]);

impl Block {
    pub fn pixels(&self) -> &[u8; BLOCK_LEN] {
        &self.0
    }
}

/// Blocks of an image in row-major block order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockGrid {
    rows: usize,
    cols: usize,
    blocks: Vec<Block>,
}

impl BlockGrid {
    pub fn new(rows: usize, cols: usize, blocks: Vec<Block>) -> Result<Self> {
        if blocks.len() != rows * cols {
            return Err(Error::BufferSize {
                expected: rows * cols,
                found: blocks.len(),
            });
        }
        Ok(Self { rows, cols, blocks })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }

    /// Block at 1-based grid position `(m, n)`.
    pub fn get(&self, m: usize, n: usize) -> &Block {
        &self.blocks[linear_index(m, n, self.cols) - 1]
    }
}

pub(crate) fn check_block_aligned(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 || !width.is_multiple_of(BLOCK_SIDE) || !height.is_multiple_of(BLOCK_SIDE) {
        return Err(Error::NotBlockAligned { width, height });
    }
    Ok(())
}

/// Cuts a `width x height` row-major plane into 4x4 tiles, row-major.
pub(crate) fn split_tiles(data: &[u8], width: usize, height: usize) -> Vec<[u8; BLOCK_LEN]> {
    let rows = height / BLOCK_SIDE;
    let cols = width / BLOCK_SIDE;
    let mut tiles = Vec::with_capacity(rows * cols);
    for m in 0..rows {
        for n in 0..cols {
            let mut tile = [0u8; BLOCK_LEN];
            for i in 0..BLOCK_SIDE {
                let start = (m * BLOCK_SIDE + i) * width + n * BLOCK_SIDE;
                tile[i * BLOCK_SIDE..(i + 1) * BLOCK_SIDE]
                    .copy_from_slice(&data[start..start + BLOCK_SIDE]);
            }
            tiles.push(tile);
        }
    }
    tiles
}

pub(crate) fn merge_tiles(tiles: &[[u8; BLOCK_LEN]], rows: usize, cols: usize) -> Vec<u8> {
    let width = cols * BLOCK_SIDE;
    let mut data = vec![0u8; rows * cols * BLOCK_LEN];
    for (idx, tile) in tiles.iter().enumerate() {
        let (m, n) = (idx / cols, idx % cols);
        for i in 0..BLOCK_SIDE {
            let start = (m * BLOCK_SIDE + i) * width + n * BLOCK_SIDE;
            data[start..start + BLOCK_SIDE]
                .copy_from_slice(&tile[i * BLOCK_SIDE..(i + 1) * BLOCK_SIDE]);
        }
    }
    data
}

pub fn split_blocks(image: &GrayImage) -> Result<BlockGrid> {
    let (width, height) = image.dimensions();
    check_block_aligned(width, height)?;
    let blocks = split_tiles(image.pixels(), width, height)
        .into_iter()
        .map(Block)
        .collect();
    BlockGrid::new(height / BLOCK_SIDE, width / BLOCK_SIDE, blocks)
}

pub fn merge_blocks(grid: &BlockGrid) -> GrayImage {
    let tiles: Vec<[u8; BLOCK_LEN]> = grid.blocks.iter().map(|b| b.0).collect();
    let pixels = merge_tiles(&tiles, grid.rows, grid.cols);
    GrayImage::new(grid.cols * BLOCK_SIDE, grid.rows * BLOCK_SIDE, pixels)
        .expect("grid dimensions are consistent")
}

pub(crate) fn split_bit_tiles(image: &BinaryImage) -> Result<Vec<[u8; BLOCK_LEN]>> {
    let (width, height) = image.dimensions();
    check_block_aligned(width, height)?;
    Ok(split_tiles(image.bits(), width, height))
}

pub(crate) fn merge_bit_tiles(tiles: &[[u8; BLOCK_LEN]], rows: usize, cols: usize) -> BinaryImage {
    BinaryImage::new(
        cols * BLOCK_SIDE,
        rows * BLOCK_SIDE,
        merge_tiles(tiles, rows, cols),
    )
    .expect("tiles hold bits")
}

/// 1-based row-major linear index of block `(m, n)` in a grid with `cols`
/// blocks per row.
pub fn linear_index(m: usize, n: usize, cols: usize) -> usize {
    (m - 1) * cols + n
}

/// Inverse of [`linear_index`].
pub fn grid_position(k: usize, cols: usize) -> (usize, usize) {
    (k.div_ceil(cols), (k - 1) % cols + 1)
}

pub fn zero_lsb(block: &Block) -> Block {
    Block(block.0.map(|p| p & !1))
}

/// Distance below which a trace is taken to be the nearest integer.
const TRACE_SNAP: f64 = 1e-9;

/// Maps a singular-value trace into `[0, 1023]`: `floor(trace mod 1024)`.
/// Traces within `1e-9` of an integer count as that integer, so that
/// exactly integral spectra (constant or diagonal blocks) are not pushed
/// one below by rotation round-off.
pub fn ban_from_trace(trace: f64) -> u16 {
    let nearest = trace.round();
    let trace = if (trace - nearest).abs() < TRACE_SNAP {
        nearest
    } else {
        trace
    };
    (trace % f64::from(BAN_MODULUS)).floor() as u16
}

/// BAN of a block whose LSB plane is already cleared.
pub fn block_ban(block7: &Block) -> u16 {
    ban_from_trace(sv_trace(&Matrix4::from_pixels(&block7.0)))
}

/// 1-based inclusive range of linear block indices forming one group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupRange {
    pub start: usize,
    pub end: usize,
}

impl GroupRange {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }

    /// Group containing 1-based linear index `k`.
    pub fn containing(k: usize, total: usize) -> Self {
        let start = (k - 1) / GROUP_SIZE * GROUP_SIZE + 1;
        let end = (k.div_ceil(GROUP_SIZE) * GROUP_SIZE).min(total);
        Self { start, end }
    }
}

/// Consecutive runs of five linear indices; the last run is shorter when
/// `total` is not a multiple of five.
pub fn group_ranges(total: usize) -> Vec<GroupRange> {
    (1..=total)
        .step_by(GROUP_SIZE)
        .map(|k| GroupRange::containing(k, total))
        .collect()
}

/// GAN of one group: `floor(mean(bans) mod 64)`, computed exactly as
/// `(sum mod 64g) div g` for a group of `g` members.
pub fn group_gan(bans: &[u16]) -> Result<u8> {
    if bans.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let g = bans.len() as u64;
    let sum: u64 = bans.iter().map(|&b| u64::from(b)).sum();
    Ok(((sum % (u64::from(GAN_MODULUS) * g)) / g) as u8)
}

/// Mean and population standard deviation of a block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockStats {
    pub mean: f64,
    pub stdev: f64,
}

pub fn block_stats(block: &Block) -> BlockStats {
    let sum: u64 = block.0.iter().map(|&p| u64::from(p)).sum();
    let sum_sq: u64 = block.0.iter().map(|&p| u64::from(p) * u64::from(p)).sum();
    let n = BLOCK_LEN as u64;
    // n^2 * variance, exact in integers
    let scaled_var = n * sum_sq - sum * sum;
    BlockStats {
        mean: sum as f64 / n as f64,
        stdev: (scaled_var as f64).sqrt() / n as f64,
    }
}

pub fn params_from_stats(stats: BlockStats) -> LogisticParams {
    let x0 = (stats.mean + 1.0) / 257.0;
    let mu = MU_MIN + (stats.stdev - stats.stdev.floor()) * MU_SPAN;
    LogisticParams::new(x0, mu).expect("8-bit block statistics give valid parameters")
}

pub fn chaotic_params(block7: &Block) -> LogisticParams {
    params_from_stats(block_stats(block7))
}

/// Pixel positions ordered by decreasing logistic value for this block.
pub fn block_permutation(block7: &Block) -> [usize; BLOCK_LEN] {
    let seq = logistic_sequence(chaotic_params(block7), BLOCK_LEN);
    rank_permutation(&seq)
        .try_into()
        .expect("sixteen ranks")
}

/// The 16-bit payload carried by one block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AuthBits {
    ban: u16,
    gan: u8,
}

impl AuthBits {
    pub fn new(ban: u16, gan: u8) -> Result<Self> {
        if ban >= BAN_MODULUS || gan >= GAN_MODULUS {
            return Err(Error::PayloadOutOfRange { ban, gan });
        }
        Ok(Self { ban, gan })
    }

    pub fn from_word(word: u16) -> Self {
        Self {
            ban: word >> GAN_BITS,
            gan: (word & (u16::from(GAN_MODULUS) - 1)) as u8,
        }
    }

    pub fn ban(&self) -> u16 {
        self.ban
    }

    pub fn gan(&self) -> u8 {
        self.gan
    }

    /// BAN in the high ten bits, GAN in the low six.
    pub fn word(&self) -> u16 {
        (self.ban << GAN_BITS) | u16::from(self.gan)
    }
}

/// Spreads the payload over a 4x4 bit tile: `perm[r]` receives bit
/// `15 - r` of the word, so the largest sequence value holds the BAN MSB
/// and the smallest holds the GAN LSB.
pub fn pack_auth_bits(auth: AuthBits, perm: &[usize; BLOCK_LEN]) -> [u8; BLOCK_LEN] {
    let word = auth.word();
    let mut tile = [0u8; BLOCK_LEN];
    for (r, &pos) in perm.iter().enumerate() {
        tile[pos] = ((word >> (BLOCK_LEN - 1 - r)) & 1) as u8;
    }
    tile
}

pub fn unpack_auth_bits(tile: &[u8; BLOCK_LEN], perm: &[usize; BLOCK_LEN]) -> AuthBits {
    let word = perm
        .iter()
        .fold(0u16, |acc, &pos| (acc << 1) | u16::from(tile[pos] & 1));
    AuthBits::from_word(word)
}
