use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ppm::{image_to_signal, magnitude_image, signal_to_image, Ppm};
use super::qsig::{read_signal, read_spectrum, write_atomic, write_signal, write_spectrum, FileSide, QsigFile};
use super::verify::{run_verify, VerifyOptions, VerifyReport};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::kernels::{builtin_family, smooth};
use crate::qft::{Mode, Sidedness, TransformKind};
use crate::quat::AxisPair;
use crate::signal::QSignal;

/// Forward transform of a primal file into a dual file.
pub fn cmd_transform(input: &Path, output: &Path, kind: Sidedness, mode: Mode, axes: AxisPair) -> Result<()> {
    let f = read_signal(input)?;
    write_spectrum(output, &TransformKind::new(kind, axes).forward(&f, mode))
}

/// Inverse transform of a dual file into a primal file.
pub fn cmd_inverse(input: &Path, output: &Path, kind: Sidedness, mode: Mode, axes: AxisPair) -> Result<()> {
    let spec = read_spectrum(input)?;
    write_signal(output, &TransformKind::new(kind, axes).inverse(&spec, mode))
}

/// Smooths at `level` and writes `|f * P_l − f|_2` for every level up to it
/// to `log`, followed by whether the sequence is non-increasing.
pub fn cmd_smooth(input: &Path, output: &Path, family: &str, level: u32, log: &mut dyn Write) -> Result<()> {
    let f = read_signal(input)?;
    let fam = builtin_family(family, f.group())?;
    let mut prev = f64::INFINITY;
    let mut monotone = true;
    let mut result = None;
    for l in 0..=level {
        let s = smooth(&f, &fam, l)?;
        let d = s.distance(&f)?;
        monotone &= d <= prev * (1.0 + 1e-12) + 1e-300;
        prev = d;
        writeln!(log, "level {l}: |f * P - f|_2 = {d:.6e}")?;
        if l == level {
            result = Some(s);
        }
    }
    writeln!(log, "{} sweep {}", fam.name(), if monotone { "non-increasing" } else { "NOT monotone" })?;
    write_signal(output, &result.expect("level range is nonempty"))
}

pub fn cmd_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    run_verify(opts)
}

pub fn cmd_img2q(ppm: &Path, qsig: &Path) -> Result<()> {
    let img = Ppm::decode(&fs::read(ppm)?)?;
    write_signal(qsig, &image_to_signal(&img)?)
}

pub fn cmd_q2img(qsig: &Path, ppm: &Path) -> Result<()> {
    let f = read_signal(qsig)?;
    write_atomic(ppm, &signal_to_image(&f).encode())
}

/// Log-magnitude rendering of a dual file.
pub fn cmd_spectrum(qsig: &Path, ppm: &Path) -> Result<()> {
    let spec = read_spectrum(qsig)?;
    let mags: Vec<f64> = spec.values().iter().map(|q| q.norm()).collect();
    write_atomic(ppm, &magnitude_image(&mags, spec.side_len()).encode())
}

/// Prints every bin as CSV: coordinates of both variables, then `w, x, y, z`.
/// Coordinates of a multi-factor group are joined with `:`.
pub fn cmd_dump(qsig: &Path, out: &mut dyn Write) -> Result<()> {
    let file = QsigFile::read(qsig)?;
    let (a, b) = match file.side {
        FileSide::Primal => ("x1", "x2"),
        FileSide::Dual => ("u", "v"),
    };
    writeln!(out, "{a},{b},w,x,y,z")?;
    let g = &file.group;
    let n = g.order();
    let label = |i: usize| {
        g.element(i)
            .coords()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(":")
    };
    for (i, q) in file.values.iter().enumerate() {
        writeln!(out, "{},{},{:e},{:e},{:e},{:e}", label(i / n), label(i % n), q.w, q.x, q.y, q.z)?;
    }
    Ok(())
}

/// Largest order for which the `O(|G|⁴)` direct evaluator is timed.
pub const BENCH_DIRECT_LIMIT: usize = 48;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub size: usize,
    pub fast: Duration,
    pub direct: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub kind: Sidedness,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Whether the fast evaluator won at every size where both ran.
    pub fn fast_wins(&self) -> bool {
        self.rows.iter().all(|r| r.direct.is_none_or(|d| r.fast < d))
    }
}

impl std::fmt::Display for BenchReport {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(out, "{:>6}  {:>12}  {:>12}  {:>9}", "N", "fast (s)", "direct (s)", "speedup")?;
        for r in &self.rows {
            let fast = r.fast.as_secs_f64();
            match r.direct {
                Some(d) => {
                    let d = d.as_secs_f64();
                    writeln!(out, "{:>6}  {fast:>12.6}  {d:>12.6}  {:>8.1}x", r.size, d / fast.max(1e-12))?
                }
                None => writeln!(out, "{:>6}  {fast:>12.6}  {:>12}  {:>9}", r.size, "-", "-")?,
            }
        }
        write!(
            out,
            "{}: fast {} direct at every size where both ran",
            self.kind,
            if self.fast_wins() { "beats" } else { "does NOT beat" }
        )
    }
}

/// Best-of-`repeats` wall time of the forward transform on `Z_N × Z_N`.
pub fn cmd_bench(sizes: &[usize], kind: Sidedness, repeats: usize) -> Result<BenchReport> {
    if repeats == 0 {
        return Err(Error::Usage("repeats must be at least 1".into()));
    }
    let t = TransformKind::new(kind, AxisPair::default());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut rows = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let group = FiniteAbelianGroup::cyclic(size)?;
        let f = QSignal::random(group, &mut rng);
        let time = |mode: Mode| {
            (0..repeats)
                .map(|_| {
                    let start = Instant::now();
                    std::hint::black_box(t.forward(std::hint::black_box(&f), mode));
                    start.elapsed()
                })
                .min()
                .expect("repeats >= 1")
        };
        let fast = time(Mode::Fast);
        let direct = (size <= BENCH_DIRECT_LIMIT).then(|| time(Mode::Direct));
        rows.push(BenchRow { size, fast, direct });
    }
    Ok(BenchReport { kind, rows })
}
