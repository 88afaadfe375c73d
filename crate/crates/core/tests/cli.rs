use std::path::PathBuf;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

use quatfourier::cli::ppm::Ppm;
use quatfourier::cli::qsig::{read_signal, write_signal, write_spectrum};
use quatfourier::{FiniteAbelianGroup, QSignal, QSpectrum, Quaternion};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatfourier"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_owned()
    }
}

fn cyclic(n: usize) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(n).unwrap()
}

fn random_signal(dir: &Dir, name: &str, n: usize, seed: u64) -> QSignal {
    let f = QSignal::random(cyclic(n), &mut ChaCha8Rng::seed_from_u64(seed));
    write_signal(&dir.path(name), &f).unwrap();
    f
}

#[test]
fn transform_then_inverse_recovers_signal() {
    let d = Dir::new();
    let f = random_signal(&d, "f.qsig", 6, 1);
    for kind in ["rqft", "sqft", "lqft"] {
        for mode in ["fast", "direct"] {
            let t = bin(&["transform", &d.arg("f.qsig"), &d.arg("F.qsig"), "--kind", kind, "--mode", mode]);
            assert_eq!(t.status.code(), Some(0), "{}", stderr(&t));
            let i = bin(&["inverse", &d.arg("F.qsig"), &d.arg("g.qsig"), "--kind", kind, "--mode", mode]);
            assert_eq!(i.status.code(), Some(0), "{}", stderr(&i));
            let g = read_signal(&d.path("g.qsig")).unwrap();
            assert!(g.distance(&f).unwrap() < 1e-10 * f.norm2(), "{kind} {mode}");
        }
    }
}

#[test]
fn custom_axes_round_trip() {
    let d = Dir::new();
    let f = random_signal(&d, "f.qsig", 5, 2);
    let axes = "0,0.6,0.8,0,0,0,0,-1";
    let t = bin(&["transform", &d.arg("f.qsig"), &d.arg("F.qsig"), "--kind", "sqft", "--axes", axes]);
    assert_eq!(t.status.code(), Some(0), "{}", stderr(&t));
    let i = bin(&["inverse", &d.arg("F.qsig"), &d.arg("g.qsig"), "--kind", "sqft", "--axes", axes]);
    assert_eq!(i.status.code(), Some(0), "{}", stderr(&i));
    assert!(read_signal(&d.path("g.qsig")).unwrap().distance(&f).unwrap() < 1e-10 * f.norm2());
}

#[test]
fn non_orthogonal_axes_are_rejected() {
    let d = Dir::new();
    random_signal(&d, "f.qsig", 4, 3);
    let o = bin(&["transform", &d.arg("f.qsig"), &d.arg("F.qsig"), "--axes", "0,1,0,0,0,1,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!d.path("F.qsig").exists());
}

#[test]
fn wrong_axis_count_exits_2() {
    let d = Dir::new();
    random_signal(&d, "f.qsig", 4, 11);
    let o = bin(&["transform", &d.arg("f.qsig"), &d.arg("F.qsig"), "--axes", "0,1,0,0,0,0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("8 values"), "{}", stderr(&o));
}

#[test]
fn dual_input_to_transform_exits_2() {
    let d = Dir::new();
    let s = QSpectrum::random(cyclic(4), &mut ChaCha8Rng::seed_from_u64(4));
    write_spectrum(&d.path("s.qsig"), &s).unwrap();
    let o = bin(&["transform", &d.arg("s.qsig"), &d.arg("out.qsig")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("format error"), "{}", stderr(&o));
    assert!(!d.path("out.qsig").exists());
}

#[test]
fn primal_input_to_inverse_exits_2() {
    let d = Dir::new();
    random_signal(&d, "f.qsig", 4, 5);
    let o = bin(&["inverse", &d.arg("f.qsig"), &d.arg("out.qsig")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_magic_exits_2() {
    let d = Dir::new();
    std::fs::write(d.path("bad.qsig"), b"NOPE\x01\x00\x00\x00").unwrap();
    let o = bin(&["dump", &d.arg("bad.qsig")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("format error"), "{}", stderr(&o));
}

#[test]
fn missing_input_exits_2() {
    let d = Dir::new();
    let o = bin(&["transform", &d.arg("absent.qsig"), &d.arg("out.qsig")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_kind_exits_2() {
    let d = Dir::new();
    random_signal(&d, "f.qsig", 4, 6);
    let o = bin(&["transform", &d.arg("f.qsig"), &d.arg("F.qsig"), "--kind", "xqft"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_square_image_is_a_domain_error() {
    let d = Dir::new();
    let img = Ppm {
        width: 4,
        height: 3,
        pixels: vec![7; 36],
    };
    std::fs::write(d.path("img.ppm"), img.encode()).unwrap();
    let o = bin(&["img2q", &d.arg("img.ppm"), &d.arg("f.qsig")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("domain must be G×G"), "{}", stderr(&o));
    assert!(!d.path("f.qsig").exists());
}

#[test]
fn image_round_trip_is_exact() {
    let d = Dir::new();
    let img = Ppm {
        width: 5,
        height: 5,
        pixels: (0..75).map(|i| (i * 37 % 256) as u8).collect(),
    };
    std::fs::write(d.path("in.ppm"), img.encode()).unwrap();
    assert!(bin(&["img2q", &d.arg("in.ppm"), &d.arg("f.qsig")]).status.success());
    assert!(bin(&["q2img", &d.arg("f.qsig"), &d.arg("out.ppm")]).status.success());
    assert_eq!(std::fs::read(d.path("out.ppm")).unwrap(), img.encode());
}

#[test]
fn verify_default_run_passes_and_is_deterministic() {
    let a = bin(&["verify", "--group", "8"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = bin(&["verify", "--group", "8"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(!stdout(&a).contains("FAIL"));
}

#[test]
fn verify_json_report_matches_stdout() {
    let d = Dir::new();
    let o = bin(&["verify", "--group", "3x2", "--trials", "3", "--json", "--report", &d.arg("r.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let file: serde_json::Value = serde_json::from_slice(&std::fs::read(d.path("r.json")).unwrap()).unwrap();
    let printed: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(file, printed);
    assert_eq!(file["passed"], serde_json::Value::Bool(true));
    assert_eq!(file["seed"], 42);
}

#[test]
fn verify_zero_trials_skips_everything() {
    let o = bin(&["verify", "--group", "4", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("SKIP"));
    assert!(!out.contains("PASS"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_detects_injected_fault() {
    let o = bin(&["verify", "--group", "4", "--trials", "3", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_rejects_bad_group() {
    assert_eq!(bin(&["verify", "--group", "0"]).status.code(), Some(2));
    assert_eq!(bin(&["verify", "--group", "x"]).status.code(), Some(2));
}

#[test]
fn smooth_logs_the_sweep() {
    let d = Dir::new();
    random_signal(&d, "f.qsig", 8, 7);
    let o = bin(&["smooth", &d.arg("f.qsig"), &d.arg("g.qsig"), "--family", "fejer", "--level", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let log = stderr(&o);
    assert_eq!(log.lines().filter(|l| l.starts_with("level ")).count(), 4);
    assert!(log.contains("fejer sweep non-increasing"), "{log}");
    assert!(d.path("g.qsig").exists());
}

#[test]
fn smooth_dirichlet_full_level_is_identity() {
    let d = Dir::new();
    let f = random_signal(&d, "f.qsig", 8, 8);
    let o = bin(&["smooth", &d.arg("f.qsig"), &d.arg("g.qsig"), "--family", "dirichlet", "--level", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(read_signal(&d.path("g.qsig")).unwrap().distance(&f).unwrap() < 1e-10 * f.norm2());
}

#[test]
fn smooth_unknown_family_exits_2() {
    let d = Dir::new();
    random_signal(&d, "f.qsig", 4, 9);
    let o = bin(&["smooth", &d.arg("f.qsig"), &d.arg("g.qsig"), "--family", "gauss", "--level", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dump_prints_csv() {
    let d = Dir::new();
    let f = QSignal::delta(cyclic(2), 1, 0, Quaternion::new(1.5, 0.0, -2.0, 0.25));
    write_signal(&d.path("f.qsig"), &f).unwrap();
    let o = bin(&["dump", &d.arg("f.qsig")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "x1,x2,w,x,y,z");
    let row: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(&row[..2], ["1", "0"]);
    let vals: Vec<f64> = row[2..].iter().map(|v| v.parse().unwrap()).collect();
    assert_eq!(vals, [1.5, 0.0, -2.0, 0.25]);
}

#[test]
fn dump_labels_dual_files_and_product_groups() {
    let d = Dir::new();
    let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
    write_spectrum(&d.path("s.qsig"), &QSpectrum::zeros(g)).unwrap();
    let out = stdout(&bin(&["dump", &d.arg("s.qsig")]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "u,v,w,x,y,z");
    assert_eq!(lines.len(), 37);
    assert!(lines[36].starts_with("1:2,1:2,"));
}

fn spectrum_of(d: &Dir, spec: &QSpectrum) -> Ppm {
    write_spectrum(&d.path("s.qsig"), spec).unwrap();
    let o = bin(&["spectrum", &d.arg("s.qsig"), &d.arg("s.ppm")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    Ppm::decode(&std::fs::read(d.path("s.ppm")).unwrap()).unwrap()
}

#[test]
fn spectrum_centers_zero_frequency() {
    let d = Dir::new();
    let n = 6;
    let img = spectrum_of(&d, &QSpectrum::delta(cyclic(n), 0, 0, Quaternion::ONE));
    assert_eq!((img.width, img.height), (n, n));
    let c = n / 2;
    for r in 0..n {
        for col in 0..n {
            let px = &img.pixels[3 * (r * n + col)..3 * (r * n + col) + 3];
            let expect = if (r, col) == (c, c) { 255 } else { 0 };
            assert_eq!(px, [expect; 3], "pixel ({r}, {col})");
        }
    }
}

#[test]
fn spectrum_of_zero_is_black() {
    let d = Dir::new();
    let img = spectrum_of(&d, &QSpectrum::zeros(cyclic(5)));
    assert!(img.pixels.iter().all(|&p| p == 0));
}

#[test]
fn spectrum_rejects_primal_file() {
    let d = Dir::new();
    random_signal(&d, "f.qsig", 4, 10);
    assert_eq!(bin(&["spectrum", &d.arg("f.qsig"), &d.arg("s.ppm")]).status.code(), Some(2));
}

#[test]
fn bench_prints_table() {
    let o = bin(&["bench", "--sizes", "8,16", "--repeats", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("16"), "{out}");
}

#[test]
fn bench_zero_repeats_exits_2() {
    assert_eq!(bin(&["bench", "--sizes", "8", "--repeats", "0"]).status.code(), Some(2));
}
