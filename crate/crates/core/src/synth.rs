//! Reproducible synthetic imagery for tests, benches and demos.
//!
//! `natural_image` layers smooth illumination, a few soft-edged shapes,
//! fine texture and sensor-like noise so that blocks have the varied
//! statistics and busy LSB plane of a photograph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::attacks::render_text;
use crate::imgio::{BinaryImage, GrayImage};

pub fn natural_image(side: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = side as f64;

    let waves: Vec<(f64, f64, f64, f64)> = (0..4)
        .map(|_| {
            (
                rng.gen_range(0.5..3.0) / s,
                rng.gen_range(0.5..3.0) / s,
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(15.0..40.0),
            )
        })
        .collect();
    let shapes: Vec<(f64, f64, f64, f64, f64)> = (0..6)
        .map(|_| {
            (
                rng.gen_range(0.0..s),
                rng.gen_range(0.0..s),
                rng.gen_range(0.05..0.3) * s,
                rng.gen_range(0.05..0.3) * s,
                rng.gen_range(-60.0..60.0),
            )
        })
        .collect();
    let base = rng.gen_range(90.0..160.0);
    let texture = rng.gen_range(2.0..8.0);

    GrayImage::from_fn(side, side, |x, y| {
        let (fx, fy) = (x as f64, y as f64);
        let mut v = base;
        for &(kx, ky, phase, amp) in &waves {
            v += amp * (std::f64::consts::TAU * (kx * fx + ky * fy) + phase).sin();
        }
        for &(cx, cy, rx, ry, amp) in &shapes {
            let d = ((fx - cx) / rx).powi(2) + ((fy - cy) / ry).powi(2);
            // soft edge over roughly a tenth of the radius
            v += amp / (1.0 + (10.0 * (d - 1.0)).exp());
        }
        v += texture * ((fx * 0.9).sin() * (fy * 1.3).cos());
        v += (0..3).map(|_| rng.gen_range(-2.5..2.5)).sum::<f64>();
        v.round().clamp(0.0, 255.0) as u8
    })
}

/// Uniformly random pixels.
pub fn noise_image(side: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GrayImage::from_fn(side, side, |_, _| rng.gen())
}

/// A visually meaningful binary mark: a ring framing repeated text.
pub fn watermark_logo(side: usize, text: &str) -> BinaryImage {
    let scale = (side / 64).max(1);
    let glyphs = render_text(text, scale);
    let (gw, gh) = glyphs.dimensions();
    let c = side as f64 / 2.0;
    let (outer, inner) = (0.47 * side as f64, 0.40 * side as f64);
    BinaryImage::from_fn(side, side, |x, y| {
        let r = ((x as f64 + 0.5 - c).powi(2) + (y as f64 + 0.5 - c).powi(2)).sqrt();
        if r >= inner && r <= outer {
            return true;
        }
        let (tx, ty) = (x % (gw + 2 * scale), y % (gh + 3 * scale));
        r < inner && tx < gw && ty < gh && glyphs.get(tx, ty) == 1
    })
}

/// Random binary image.
pub fn random_watermark(side: usize, seed: u64) -> BinaryImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BinaryImage::from_fn(side, side, |_, _| rng.gen())
}
