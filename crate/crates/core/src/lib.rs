//! Fragile watermarking of grayscale images with SVD-derived block
//! authentication numbers, chaotic bit placement and Arnold-scrambled
//! block groups.
//!
//! ```no_run
//! use svdmark::{embed, verify, imgio, AuthKey};
//!
//! let host = imgio::load_gray("host.pgm")?;
//! let mark = imgio::load_binary("mark.pbm")?;
//! let key = AuthKey::new(1, 1, 30, mark)?;
//! let marked = embed(&host, &key)?;
//! assert!(verify(&marked, &key)?.is_authentic());
//! # Ok::<(), svdmark::Error>(())
//! ```

pub mod attacks;
pub mod blockauth;
pub mod chaos;
pub mod error;
pub mod exec;
pub mod imgio;
pub mod pipeline;
pub mod svd4;
pub mod synth;

pub use error::{Error, Result};
pub use exec::Execution;
pub use imgio::{BinaryImage, GrayImage};
pub use pipeline::{
    embed, embed_with, psnr, render_tamper_map, verify, verify_with, AuthKey, TamperMap,
    VerifyReport,
};
