use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use skinseg::{load_model, Channels, RgbImage, RgbPixel};
use skinseg_cli::io::{read_mask, write_mask_png, write_rgb_png, write_rgb_ppm};
use skinseg_cli::manifest::format_manifest;

fn skinseg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skinseg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn ok(out: &Output) {
    assert!(
        out.status.success(),
        "status {:?}\nstderr: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
}

fn tree(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut files = BTreeMap::new();
    let mut stack = vec![dir.to_owned()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().to_owned();
                files.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    files
}

#[test]
fn train_constant_swatch_has_zero_variance() {
    let dir = tempfile::tempdir().unwrap();
    let swatch = dir.path().join("s.png");
    let model = dir.path().join("m.json");
    write_rgb_png(
        &swatch,
        &RgbImage::filled(2, 2, RgbPixel::new(190, 120, 95)).unwrap(),
    )
    .unwrap();
    let out = skinseg(&["train", p(&swatch), "--out", p(&model)]);
    ok(&out);
    let sf = load_model(&model).unwrap();
    assert_eq!(sf.var(), Channels::default());
    assert_eq!(sf.pixel_count(), 4);
    let stdout = String::from_utf8(out.stdout).unwrap();
    for key in ["mean_h", "mean_cb", "mean_cr", "var_h", "var_cb", "var_cr"] {
        assert!(stdout.contains(&format!("{key}\t")), "{stdout}");
    }
}

#[test]
fn train_split_files_equal_combined_file() {
    let dir = tempfile::tempdir().unwrap();
    let a =
        RgbImage::from_fn(3, 2, |r, c| RgbPixel::new(200 - r as u8, 120 + c as u8, 99)).unwrap();
    let b =
        RgbImage::from_fn(3, 4, |r, c| RgbPixel::new(185, 117 + r as u8, 90 + c as u8)).unwrap();
    let both = RgbImage::new(3, 6, [a.pixels(), b.pixels()].concat()).unwrap();
    let (pa, pb, pboth) = (
        dir.path().join("a.png"),
        dir.path().join("b.ppm"),
        dir.path().join("both.png"),
    );
    write_rgb_png(&pa, &a).unwrap();
    write_rgb_ppm(&pb, &b).unwrap();
    write_rgb_png(&pboth, &both).unwrap();
    let (m1, m2) = (dir.path().join("m1.json"), dir.path().join("m2.json"));
    ok(&skinseg(&["train", p(&pa), p(&pb), "--out", p(&m1)]));
    ok(&skinseg(&["train", p(&pboth), "--out", p(&m2)]));
    assert_eq!(std::fs::read(&m1).unwrap(), std::fs::read(&m2).unwrap());
}

#[test]
fn train_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("does_not_exist.png");
    let model = dir.path().join("m.json");
    let out = skinseg(&["train", p(&missing), "--out", p(&model)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does_not_exist.png"));
    assert!(out.stdout.is_empty());
    assert!(!model.exists());

    let out = skinseg(&["train", "--out", p(&model)]);
    assert_eq!(out.status.code(), Some(1));

    let out = skinseg(&["train", "x.png", "--hue-mode", "hsl", "--out", p(&model)]);
    assert_eq!(out.status.code(), Some(1));
}

struct Fixture {
    _dir: tempfile::TempDir,
    root: PathBuf,
    model: PathBuf,
}

fn trained(color: RgbPixel, mode: &str) -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_owned();
    let swatch = root.join("swatch.png");
    let model = root.join("model.json");
    write_rgb_png(&swatch, &RgbImage::filled(4, 4, color).unwrap()).unwrap();
    ok(&skinseg(&[
        "train",
        p(&swatch),
        "--hue-mode",
        mode,
        "--out",
        p(&model),
    ]));
    Fixture {
        _dir: dir,
        root,
        model,
    }
}

#[test]
fn detect_uniform_image_is_all_skin() {
    let color = RgbPixel::new(205, 130, 105);
    let fx = trained(color, "compact");
    let image = fx.root.join("img.png");
    let mask = fx.root.join("mask.png");
    write_rgb_png(&image, &RgbImage::filled(9, 7, color).unwrap()).unwrap();
    ok(&skinseg(&[
        "detect",
        p(&image),
        "--model",
        p(&fx.model),
        "--out",
        p(&mask),
    ]));
    let decoded = image::open(&mask).unwrap();
    assert_eq!(decoded.color(), image::ColorType::L8);
    assert_eq!((decoded.width(), decoded.height()), (9, 7));
    assert!(decoded.as_bytes().iter().all(|&v| v == 255));
}

#[test]
fn detect_zero_width_on_foreign_noise_is_all_background() {
    let dir = tempfile::tempdir().unwrap();
    let swatch = dir.path().join("swatch.png");
    let model = dir.path().join("model.json");
    let image = dir.path().join("noise.png");
    let mask = dir.path().join("mask.png");
    // fixed-seed xorshift noise, unrelated to the swatch distribution
    let mut state = 0x2545_f491_4f6c_dd1d_u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut noise = |w, h| {
        RgbImage::from_fn(w, h, |_, _| {
            let x = next();
            RgbPixel::new(x as u8, (x >> 8) as u8, (x >> 16) as u8)
        })
        .unwrap()
    };
    write_rgb_png(&swatch, &noise(16, 16)).unwrap();
    write_rgb_png(&image, &noise(48, 48)).unwrap();
    ok(&skinseg(&["train", p(&swatch), "--out", p(&model)]));
    ok(&skinseg(&[
        "detect",
        p(&image),
        "--model",
        p(&model),
        "--k",
        "0",
        "--min-halfwidth",
        "0",
        "--out",
        p(&mask),
    ]));
    assert_eq!(read_mask(&mask).unwrap().count_skin(), 0);
}

#[test]
fn detect_is_byte_deterministic() {
    let fx = trained(RgbPixel::new(200, 120, 100), "standard");
    let image = fx.root.join("img.ppm");
    let img = RgbImage::from_fn(40, 30, |r, c| {
        RgbPixel::new((180 + r) as u8, (100 + c) as u8, (90 + (r ^ c)) as u8)
    })
    .unwrap();
    write_rgb_ppm(&image, &img).unwrap();
    let (m1, m2) = (fx.root.join("m1.png"), fx.root.join("m2.png"));
    for m in [&m1, &m2] {
        ok(&skinseg(&[
            "detect",
            p(&image),
            "--model",
            p(&fx.model),
            "--min-halfwidth",
            "3",
            "--out",
            p(m),
        ]));
    }
    assert_eq!(std::fs::read(&m1).unwrap(), std::fs::read(&m2).unwrap());
}

#[test]
fn detect_hue_mode_conflict() {
    let fx = trained(RgbPixel::new(200, 120, 100), "compact");
    let image = fx.root.join("img.png");
    let mask = fx.root.join("mask.png");
    write_rgb_png(
        &image,
        &RgbImage::filled(3, 3, RgbPixel::new(1, 2, 3)).unwrap(),
    )
    .unwrap();
    let base = [
        "detect",
        p(&image),
        "--model",
        p(&fx.model),
        "--out",
        p(&mask),
    ];

    let out = skinseg(&[&base[..], &["--hue-mode", "standard"]].concat());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hue mode"));
    assert!(!mask.exists());

    ok(&skinseg(&[&base[..], &["--hue-mode", "compact"]].concat()));
    ok(&skinseg(
        &[
            &base[..],
            &["--hue-mode", "standard", "--allow-hue-mismatch"],
        ]
        .concat(),
    ));
}

#[test]
fn detect_errors() {
    let fx = trained(RgbPixel::new(200, 120, 100), "compact");
    let image = fx.root.join("img.png");
    let mask = fx.root.join("mask.png");
    write_rgb_png(
        &image,
        &RgbImage::filled(3, 3, RgbPixel::new(1, 2, 3)).unwrap(),
    )
    .unwrap();

    let bad_model = fx.root.join("bad.json");
    std::fs::write(&bad_model, r#"{"format_version": 1, "label": "x"}"#).unwrap();
    let out = skinseg(&[
        "detect",
        p(&image),
        "--model",
        p(&bad_model),
        "--out",
        p(&mask),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hue_mode"));

    let out = skinseg(&[
        "detect",
        "nope.png",
        "--model",
        p(&fx.model),
        "--out",
        p(&mask),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = skinseg(&[
        "detect",
        p(&image),
        "--model",
        p(&fx.model),
        "--k",
        "-1",
        "--out",
        p(&mask),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn eval_reports_and_errors() {
    let color = RgbPixel::new(200, 120, 100);
    let fx = trained(color, "compact");
    let img = RgbImage::from_fn(4, 1, |_, c| {
        if c < 3 {
            color
        } else {
            RgbPixel::new(0, 90, 0)
        }
    })
    .unwrap();
    write_rgb_png(fx.root.join("i.png"), &img).unwrap();
    // truth disagrees on the last pixel only
    let truth = skinseg::BinaryMask::filled(4, 1, true).unwrap();
    write_mask_png(fx.root.join("t.png"), &truth).unwrap();
    let manifest = fx.root.join("set.tsv");
    std::fs::write(&manifest, format_manifest([("i.png", "t.png")])).unwrap();

    let out = skinseg(&["eval", p(&manifest), "--model", p(&fx.model)]);
    ok(&out);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "i.png\t75.0000\n75.00 ± 0.00 (1 image)\n"
    );

    write_mask_png(
        fx.root.join("small.png"),
        &skinseg::BinaryMask::filled(2, 2, true).unwrap(),
    )
    .unwrap();
    std::fs::write(
        &manifest,
        format_manifest([("i.png", "t.png"), ("i.png", "small.png")]),
    )
    .unwrap();
    let out = skinseg(&["eval", p(&manifest), "--model", p(&fx.model)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("small.png") && err.contains("dimension"),
        "{err}"
    );
    assert!(out.stdout.is_empty());

    std::fs::write(&manifest, format_manifest([("gone.png", "t.png")])).unwrap();
    let out = skinseg(&["eval", p(&manifest), "--model", p(&fx.model)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gone.png"));
}

#[test]
fn synth_tree_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (
        dir.path().join("a"),
        dir.path().join("b"),
        dir.path().join("c"),
    );
    let args = |out: &Path, seed: &str| {
        skinseg(&[
            "synth",
            "--seed",
            seed,
            "--count",
            "4",
            "--width",
            "20",
            "--height",
            "10",
            "--out",
            p(out),
        ])
    };
    ok(&args(&a, "9"));
    ok(&args(&b, "9"));
    ok(&args(&c, "10"));
    let (ta, tb) = (tree(&a), tree(&b));
    assert_eq!(ta, tb);
    assert_ne!(ta, tree(&c));
    assert_eq!(ta.len(), 4 + 4 + 2);

    let manifest = String::from_utf8(ta[Path::new("manifest.tsv")].clone()).unwrap();
    let entries =
        skinseg_cli::manifest::parse_manifest(&manifest, &a.join("manifest.tsv")).unwrap();
    assert_eq!(entries.len(), 4);
    for e in entries {
        let img = skinseg_cli::io::read_rgb_image(&e.image).unwrap();
        let mask = read_mask(&e.mask).unwrap();
        assert_eq!((img.width(), img.height()), (mask.width(), mask.height()));
        assert_eq!((img.width(), img.height()), (20, 10));
    }
}

#[test]
fn synth_zero_spread_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z");
    ok(&skinseg(&[
        "synth",
        "--count",
        "1",
        "--skin-spread",
        "0",
        "--skin-center",
        "180,110,90",
        "--out",
        p(&out),
    ]));
    let swatch = skinseg_cli::io::read_rgb_image(out.join("swatch.png")).unwrap();
    assert!(swatch
        .pixels()
        .iter()
        .all(|&px| px == RgbPixel::new(180, 110, 90)));

    let blocker = dir.path().join("file");
    std::fs::write(&blocker, b"x").unwrap();
    let res = skinseg(&["synth", "--count", "1", "--out", p(&blocker.join("sub"))]);
    assert_eq!(res.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&res.stderr).is_empty());

    let res = skinseg(&["synth", "--coverage", "2", "--out", p(&out)]);
    assert_eq!(res.status.code(), Some(1));
    let res = skinseg(&["synth", "--skin-spread", "1,2", "--out", p(&out)]);
    assert_eq!(res.status.code(), Some(1));
}
