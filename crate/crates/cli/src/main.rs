use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use svdmark::attacks::{copy_paste, fill_region, render_text, splice, stamp_bits, Rect};
use svdmark::chaos::arnold_period;
use svdmark::imgio::{load_binary, load_gray, save_binary, save_gray};
use svdmark::{embed, psnr, render_tamper_map, verify, AuthKey, BinaryImage};

/// Fragile SVD watermarking for grayscale images.
///
/// Exit status: 0 success or authentic, 1 tampering detected, 2 usage,
/// I/O or contract error.
#[derive(Parser)]
#[command(name = "svdmark", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed authentication bits into a PGM host.
    Embed {
        host: PathBuf,
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a watermarked PGM and localize tampered blocks.
    Verify {
        image: PathBuf,
        #[command(flatten)]
        key: KeyArgs,
        /// Tamper map (PGM, flagged blocks drawn white).
        #[arg(long)]
        map_out: Option<PathBuf>,
        /// Extracted watermark with tampered tiles inverted (PBM).
        #[arg(long)]
        wext_out: Option<PathBuf>,
    },
    /// Apply a tampering attack and record the touched region.
    Attack(AttackArgs),
    /// Print the Arnold transform period for an N x N grid.
    Period {
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
        #[arg(long)]
        n: u64,
    },
    /// PSNR between two PGM images.
    Psnr { a: PathBuf, b: PathBuf },
}

#[derive(Args)]
struct KeyArgs {
    /// Binary watermark (PBM, same size as the image).
    #[arg(long)]
    watermark: PathBuf,
    #[arg(long, default_value_t = 1)]
    a: u64,
    #[arg(long, default_value_t = 1)]
    b: u64,
    #[arg(long, default_value_t = 30)]
    k: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    CopyPaste,
    Splice,
    Fill,
    Stamp,
}

#[derive(Args)]
struct AttackArgs {
    image: PathBuf,
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    out: PathBuf,
    /// x,y,w,h. Source rectangle for copy-paste, target area otherwise.
    #[arg(long)]
    region: String,
    /// Destination x,y of a copy-paste.
    #[arg(long)]
    to: Option<String>,
    /// Donor PGM for splice, or PBM stamp bitmap.
    #[arg(long)]
    src: Option<PathBuf>,
    /// Gray level used by fill and stamp.
    #[arg(long, default_value_t = 255)]
    ink: u8,
    /// Text stamped when no --src bitmap is given.
    #[arg(long, default_value = "FAKE")]
    text: String,
    /// Font scale for --text.
    #[arg(long, default_value_t = 2)]
    scale: usize,
}

struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Embed { host, key, out } => cmd_embed(&host, &key, &out),
        Command::Verify {
            image,
            key,
            map_out,
            wext_out,
        } => cmd_verify(&image, &key, map_out.as_deref(), wext_out.as_deref()),
        Command::Attack(args) => cmd_attack(&args),
        Command::Period { a, b, n } => cmd_period(a, b, n),
        Command::Psnr { a, b } => cmd_psnr(&a, &b),
    };
    result.unwrap_or_else(|Failure(msg)| {
        eprintln!("svdmark: {msg}");
        ExitCode::from(2)
    })
}

fn load_key(args: &KeyArgs) -> Result<AuthKey, Failure> {
    let watermark = load_binary(&args.watermark)?;
    Ok(AuthKey::new(args.a, args.b, args.k, watermark)?)
}

fn cmd_embed(host: &Path, key: &KeyArgs, out: &Path) -> CmdResult {
    let image = load_gray(host)?;
    let key = load_key(key)?;
    let marked = embed(&image, &key)?;
    save_gray(&marked, out)?;
    println!("PSNR: {} dB", format_psnr(psnr(&image, &marked)?));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(image: &Path, key: &KeyArgs, map_out: Option<&Path>, wext_out: Option<&Path>) -> CmdResult {
    let image = load_gray(image)?;
    let key = load_key(key)?;
    let report = verify(&image, &key)?;
    if let Some(path) = map_out {
        save_gray(&render_tamper_map(&report.map), path)?;
    }
    if let Some(path) = wext_out {
        save_binary(&report.extracted_watermark, path)?;
    }
    println!("flagged: {}/{}", report.flagged_count, report.total_blocks);
    Ok(if report.is_authentic() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn parse_point(s: &str) -> Result<(usize, usize), Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts[..] {
        [x, y] => Ok((x.parse()?, y.parse()?)),
        _ => Err(Failure(format!("point {s:?} must be x,y"))),
    }
}

fn cmd_attack(args: &AttackArgs) -> CmdResult {
    let image = load_gray(&args.image)?;
    let region: Rect = args.region.parse()?;
    if !region.fits(image.width(), image.height()) {
        return Err(Failure(format!(
            "region {region} outside {}x{} image",
            image.width(),
            image.height()
        )));
    }
    let (result, touched) = match args.kind {
        Kind::CopyPaste => {
            let to = args
                .to
                .as_deref()
                .ok_or_else(|| Failure("copy-paste needs --to x,y".into()))?;
            let (x, y) = parse_point(to)?;
            let out = copy_paste(&image, region, (x, y))?;
            (out, Rect::new(x, y, region.w, region.h))
        }
        Kind::Splice => {
            let src = args
                .src
                .as_deref()
                .ok_or_else(|| Failure("splice needs --src image".into()))?;
            (splice(&image, &load_gray(src)?, region)?, region)
        }
        Kind::Fill => (fill_region(&image, region, args.ink)?, region),
        Kind::Stamp => {
            let stamp = match &args.src {
                Some(path) => load_binary(path)?,
                None => render_text(&args.text, args.scale),
            };
            let w = region.w.min(stamp.width());
            let h = region.h.min(stamp.height());
            let out = if w == 0 || h == 0 {
                image.clone()
            } else {
                let clipped = BinaryImage::from_fn(w, h, |x, y| stamp.get(x, y) == 1);
                stamp_bits(&image, &clipped, (region.x, region.y), args.ink)?
            };
            (out, Rect::new(region.x, region.y, w, h))
        }
    };
    save_gray(&result, &args.out)?;
    let sidecar = sidecar_path(&args.out);
    std::fs::write(&sidecar, format!("{touched}\n"))
        .map_err(|e| Failure(format!("{}: {e}", sidecar.display())))?;
    Ok(ExitCode::SUCCESS)
}

/// `<out>.regions`, next to the attacked image.
fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".regions");
    PathBuf::from(name)
}

fn cmd_period(a: u64, b: u64, n: u64) -> CmdResult {
    println!("T = {}", arnold_period(a, b, n)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_psnr(a: &Path, b: &Path) -> CmdResult {
    let value = psnr(&load_gray(a)?, &load_gray(b)?)?;
    println!("{}", format_psnr(value));
    Ok(ExitCode::SUCCESS)
}

fn format_psnr(value: f64) -> String {
    if value.is_infinite() {
        "inf".to_string()
    } else {
        format!("{value:.4}")
    }
}
