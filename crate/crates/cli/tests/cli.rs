use std::path::{Path, PathBuf};
use std::process::Output;

use assert_cmd::Command;
use svdmark::imgio::{load_gray, save_binary, save_gray};
use svdmark::synth::{natural_image, watermark_logo};
use svdmark::GrayImage;
use tempfile::TempDir;

fn svdmark(args: &[&str]) -> Output {
    Command::cargo_bin("svdmark").unwrap().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Fixture {
    dir: TempDir,
    host: PathBuf,
    mark: PathBuf,
    marked: PathBuf,
}

impl Fixture {
    fn new(side: usize, k: u64) -> Self {
        let dir = tempfile::tempdir().unwrap();
        let host = dir.path().join("host.pgm");
        let mark = dir.path().join("mark.pbm");
        let marked = dir.path().join("marked.pgm");
        save_gray(&natural_image(side, 11), &host).unwrap();
        save_binary(&watermark_logo(side, "CLI"), &mark).unwrap();
        let k = k.to_string();
        let out = svdmark(&["embed", p(&host), "--watermark", p(&mark), "--k", &k, "--out", p(&marked)]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        Fixture { dir, host, mark, marked }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn verify(&self, image: &Path, k: u64) -> Output {
        let k = k.to_string();
        svdmark(&["verify", p(image), "--watermark", p(&self.mark), "--k", &k])
    }
}

fn flagged(out: &Output) -> (usize, usize) {
    let text = stdout(out);
    let counts = text.strip_prefix("flagged: ").expect(&text);
    let (n, total) = counts.split_once('/').unwrap();
    (n.parse().unwrap(), total.parse().unwrap())
}

fn brute_period(a: u64, b: u64, n: u64) -> u64 {
    let start: Vec<(u64, u64)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let mut pts = start.clone();
    for t in 1.. {
        for q in pts.iter_mut() {
            *q = ((q.0 + a * q.1) % n, (b * q.0 + (a * b + 1) * q.1) % n);
        }
        if pts == start {
            return t;
        }
    }
    unreachable!()
}

#[test]
fn period_values() {
    assert_eq!(stdout(&svdmark(&["period", "--a", "1", "--b", "1", "--n", "2"])), "T = 3");
    let out = svdmark(&["period", "--n", "128"]);
    assert_eq!(stdout(&out), format!("T = {}", brute_period(1, 1, 128)));
    assert_eq!(stdout(&svdmark(&["period", "--a", "2", "--b", "3", "--n", "10"])), format!("T = {}", brute_period(2, 3, 10)));
    assert_eq!(svdmark(&["period", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn psnr_values() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.pgm");
    let b = dir.path().join("b.pgm");
    let c = dir.path().join("c.pgm");
    save_gray(&GrayImage::filled(8, 8, 100), &a).unwrap();
    // half the pixels off by one: MSE 0.5
    save_gray(&GrayImage::from_fn(8, 8, |x, _| 100 + (x % 2) as u8), &b).unwrap();
    save_gray(&GrayImage::filled(8, 4, 100), &c).unwrap();

    assert_eq!(stdout(&svdmark(&["psnr", p(&a), p(&a)])), "inf");
    assert_eq!(stdout(&svdmark(&["psnr", p(&a), p(&b)])), "51.1411");
    assert_eq!(svdmark(&["psnr", p(&a), p(&c)]).status.code(), Some(2));
}

#[test]
fn embed_then_verify_round_trip() {
    let fx = Fixture::new(512, 30);
    let host = load_gray(&fx.host).unwrap();
    let marked = load_gray(&fx.marked).unwrap();
    assert!(host.pixels().iter().zip(marked.pixels()).all(|(a, b)| a >> 1 == b >> 1));

    let map = fx.path("map.pgm");
    let wext = fx.path("wext.pbm");
    let k = "30";
    let out = svdmark(&[
        "verify", p(&fx.marked), "--watermark", p(&fx.mark), "--k", k,
        "--map-out", p(&map), "--wext-out", p(&wext),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "flagged: 0/16384");
    assert!(load_gray(&map).unwrap().pixels().iter().all(|&v| v == 0));
    assert_eq!(std::fs::read(&wext).unwrap(), std::fs::read(&fx.mark).unwrap());

    let psnr = svdmark(&["psnr", p(&fx.host), p(&fx.marked)]);
    let value: f64 = stdout(&psnr).parse().unwrap();
    assert!((value - 51.14).abs() < 0.2, "{value}");
}

#[test]
fn embed_reports_psnr_line() {
    let dir = tempfile::tempdir().unwrap();
    let host = dir.path().join("h.pgm");
    let mark = dir.path().join("m.pbm");
    let out_path = dir.path().join("o.pgm");
    save_gray(&natural_image(128, 3), &host).unwrap();
    save_binary(&watermark_logo(128, "A"), &mark).unwrap();
    let out = svdmark(&["embed", p(&host), "--watermark", p(&mark), "--k", "20", "--out", p(&out_path)]);
    let line = stdout(&out);
    let value = line.strip_prefix("PSNR: ").and_then(|s| s.strip_suffix(" dB")).expect(&line);
    assert!(value.parse::<f64>().unwrap() > 50.0);
}

#[test]
fn embed_errors() {
    let dir = tempfile::tempdir().unwrap();
    let host = dir.path().join("h.pgm");
    let wide = dir.path().join("wide.pgm");
    let mark = dir.path().join("m.pbm");
    let missing = dir.path().join("no-such-mark.pbm");
    let out_path = dir.path().join("o.pgm");
    save_gray(&natural_image(64, 1), &host).unwrap();
    save_gray(&GrayImage::filled(64, 32, 9), &wide).unwrap();
    save_binary(&watermark_logo(64, "X"), &mark).unwrap();

    let out = svdmark(&["embed", p(&host), "--watermark", p(&missing), "--k", "5", "--out", p(&out_path)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no-such-mark.pbm"), "{}", stderr(&out));
    assert!(!out_path.exists());

    let out = svdmark(&["embed", p(&wide), "--watermark", p(&mark), "--k", "5", "--out", p(&out_path)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("host must be square"), "{}", stderr(&out));

    // N = 16 has period 12
    let out = svdmark(&["embed", p(&host), "--watermark", p(&mark), "--k", "12", "--out", p(&out_path)]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(svdmark(&["embed", p(&host)]).status.code(), Some(2));
}

#[test]
fn wrong_key_flags_nearly_everything() {
    let fx = Fixture::new(128, 20);
    let out = fx.verify(&fx.marked, 21);
    assert_eq!(out.status.code(), Some(1));
    let (n, total) = flagged(&out);
    assert!(n * 100 >= total * 95, "{n}/{total}");
}

#[test]
fn fill_is_detected_and_zero_area_is_a_no_op() {
    let fx = Fixture::new(256, 30);
    let filled = fx.path("filled.pgm");
    let out = svdmark(&["attack", p(&fx.marked), "--kind", "fill", "--region", "40,40,30,30", "--ink", "7", "--out", p(&filled)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(std::fs::read_to_string(fx.path("filled.pgm.regions")).unwrap(), "40 40 30 30\n");
    let out = fx.verify(&filled, 30);
    assert_eq!(out.status.code(), Some(1));
    assert!(flagged(&out).0 > 0);

    let same = fx.path("same.pgm");
    let out = svdmark(&["attack", p(&fx.marked), "--kind", "fill", "--region", "40,40,0,0", "--out", p(&same)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&same).unwrap(), std::fs::read(&fx.marked).unwrap());
}

#[test]
fn splice_whole_image_is_the_source() {
    let fx = Fixture::new(64, 5);
    let donor = fx.path("donor.pgm");
    save_gray(&natural_image(64, 99), &donor).unwrap();
    let out_path = fx.path("spliced.pgm");
    let out = svdmark(&[
        "attack", p(&fx.marked), "--kind", "splice", "--src", p(&donor),
        "--region", "0,0,64,64", "--out", p(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(load_gray(&out_path).unwrap(), load_gray(&donor).unwrap());
}

#[test]
fn copy_paste_flags_overlap_recorded_region() {
    let fx = Fixture::new(256, 30);
    let attacked = fx.path("cp.pgm");
    let map = fx.path("map.pgm");
    let out = svdmark(&[
        "attack", p(&fx.marked), "--kind", "copy-paste", "--region", "10,20,36,28",
        "--to", "150,170", "--out", p(&attacked),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let record = std::fs::read_to_string(fx.path("cp.pgm.regions")).unwrap();
    let r: Vec<usize> = record.split_whitespace().map(|v| v.parse().unwrap()).collect();
    assert_eq!(r, [150, 170, 36, 28]);

    let out = svdmark(&["verify", p(&attacked), "--watermark", p(&fx.mark), "--map-out", p(&map)]);
    assert_eq!(out.status.code(), Some(1));
    let map = load_gray(&map).unwrap();
    let (mut hit, mut total) = (0, 0);
    for row in r[1] / 4..(r[1] + r[3]).div_ceil(4) {
        for col in r[0] / 4..(r[0] + r[2]).div_ceil(4) {
            total += 1;
            hit += usize::from(map.get(col * 4, row * 4) == 255);
        }
    }
    assert!(hit * 10 >= total * 9, "{hit}/{total}");
}

#[test]
fn stamp_text_and_bad_regions() {
    let fx = Fixture::new(128, 20);
    let stamped = fx.path("st.pgm");
    let out = svdmark(&[
        "attack", p(&fx.marked), "--kind", "stamp", "--text", "NO", "--region", "10,10,100,40",
        "--ink", "0", "--out", p(&stamped),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    // two glyphs at scale 2: 11 columns x 7 rows
    assert_eq!(std::fs::read_to_string(fx.path("st.pgm.regions")).unwrap(), "10 10 22 14\n");
    assert_eq!(fx.verify(&stamped, 20).status.code(), Some(1));

    let bad = fx.path("bad.pgm");
    for region in ["120,0,20,20", "1,2,3", "a,b,c,d"] {
        let out = svdmark(&["attack", p(&fx.marked), "--kind", "fill", "--region", region, "--out", p(&bad)]);
        assert_eq!(out.status.code(), Some(2), "{region}");
    }
    let out = svdmark(&["attack", p(&fx.marked), "--kind", "copy-paste", "--region", "0,0,8,8", "--out", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
}
