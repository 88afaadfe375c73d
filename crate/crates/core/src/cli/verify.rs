//! Randomized verification of the algebraic identities.
//!
//! Every check runs once per trial on fresh random data; even trials use
//! the standard axes `(i, j)`, odd trials a random frame. Errors are
//! relative to the natural scale of each identity and the largest one over
//! all trials is compared with the tolerance.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::group::FiniteAbelianGroup;
use crate::kernels::{convergence_report, energy_identity, smooth, spatial_kernel, FamilyKind, KernelFamily};
use crate::qft::{
    classical_dft_via_rqft, dft_naive_multi, irqft_direct, irqft_fast, isqft_direct, lqft_direct, multiplication_pairing,
    rqft_direct, sqft_direct, Mode, Sidedness, TransformKind,
};
use crate::quat::{AxisPair, Quaternion};
use crate::signal::{Lp, QField, QSignal, QSpectrum, Side};
use crate::testing::{random_axes, random_first_even, random_plane_valued, random_quaternion};

/// Level at which the non-exact families are compared with the `1e-3` target.
pub const APPROXIMATION_LEVEL: u32 = 8;
pub const APPROXIMATION_TARGET: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub group: FiniteAbelianGroup,
    pub trials: usize,
    pub seed: u64,
    /// Replaces every per-check tolerance when set.
    pub tol: Option<f64>,
    /// Perturbs one bin of the right-sided transform (harness self-test).
    pub inject_fault: bool,
}

impl VerifyOptions {
    pub fn new(group: FiniteAbelianGroup) -> Self {
        VerifyOptions {
            group,
            trials: 25,
            seed: 42,
            tol: None,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: &'static str,
    pub statement: &'static str,
    pub group: String,
    pub axes: String,
    pub trials: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub skipped: Option<String>,
}

/// A measured quantity that is reported but not asserted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub name: &'static str,
    pub values: Vec<(String, f64)>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub group: String,
    pub trials: usize,
    pub tolerance_override: Option<f64>,
    pub checks: Vec<CheckRecord>,
    pub findings: Vec<Finding>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "verify: group {}, trials {}, seed {}", self.group, self.trials, self.seed)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = match (&c.skipped, c.passed) {
                (Some(_), _) => "SKIP",
                (None, true) => "PASS",
                (None, false) => "FAIL",
            };
            match &c.skipped {
                Some(reason) => writeln!(out, "{status}  {:width$}  {reason}", c.name)?,
                None => writeln!(
                    out,
                    "{status}  {:width$}  max error {:.3e}  tol {:.0e}  {}",
                    c.name, c.max_error, c.tolerance, c.statement
                )?,
            }
        }
        if !self.findings.is_empty() {
            writeln!(out, "findings:")?;
            for f in &self.findings {
                let vals: Vec<String> = f.values.iter().map(|(k, v)| format!("{k} = {v:.3e}")).collect();
                writeln!(out, "  {}: {}", f.name, vals.join(", "))?;
                writeln!(out, "    {}", f.detail)?;
            }
        }
        let failed = self.failed_checks().count();
        let ran = self.checks.iter().filter(|c| c.skipped.is_none()).count();
        if failed == 0 {
            write!(out, "result: {ran} checks run, all passed")
        } else {
            let names: Vec<&str> = self.failed_checks().map(|c| c.name).collect();
            write!(out, "result: {failed} of {ran} checks FAILED: {}", names.join(", "))
        }
    }
}

/// `(name, statement, tolerance)` for every check, in report order.
const CHECKS: &[(&str, &str, f64)] = &[
    ("character_orthogonality", "nonzero-frequency characters sum to zero (per |G|)", 1e-9),
    ("character_conjugation", "chi(u, -x) = conj chi(u, x)", 1e-12),
    ("haar_normalization", "primal mass |G|^2, dual mass 1", 1e-12),
    ("component_norm_identity", "|f|_2^2 = sum of component energies", 1e-12),
    ("component_sup_bound", "|f|_inf <= 2 sum of component sup norms", 1e-12),
    ("inner_product_sesquilinear", "(pf, qg) = p (f, g) conj q", 1e-12),
    ("inner_real_symmetric", "<f, g> = <g, f>", 1e-12),
    ("translation_invariance", "translation is an isometry and invertible", 1e-12),
    ("reflection_involution", "reflect_conj twice is the identity", 0.0),
    ("autocorrelation_identity", "(f~ * f)(x) = sum conj f(y) f(y + x)", 1e-10),
    ("convolution_left_linear", "(q f) * g = q (f * g)", 1e-12),
    ("w_involution", "W W f = f", 1e-12),
    ("w_isometry", "<Wf, Wg> = <f, g> and |Wf|_2 = |f|_2", 1e-10),
    ("w_mu1_pairing", "Sc(mu1 (f, g)) = Sc(mu1 (Wf, Wg))", 1e-10),
    ("w_plane_linear", "W(z f) = z W(f) for z in the mu1 plane", 1e-12),
    ("beta_isometry", "|beta g|_2 = |g|_2", 1e-12),
    ("rqft_inversion", "irqft(rqft f) = f", 1e-9),
    ("rqft_plancherel", "|rqft f|_2 = |f|_2", 1e-10),
    ("lqft_plancherel", "|lqft f|_2 = |f|_2", 1e-10),
    ("sqft_plancherel", "|sqft f|_2 = |f|_2", 1e-10),
    ("rqft_parseval", "(f, g) = (rqft f, rqft g) componentwise", 1e-10),
    ("rqft_unitarity", "rqft(irqft F) = F", 1e-10),
    ("rqft_uniqueness", "equal spectra force equal signals (sup norm)", 1e-9),
    ("rqft_boundedness", "|rqft f|_inf <= |f|_1", 1e-12),
    ("rqft_left_linear", "rqft(q f) = q rqft(f)", 1e-12),
    ("sqft_via_w", "sqft f = rqft(W f)", 1e-10),
    ("sqft_equals_rqft_restricted", "sqft = rqft for mu1-plane-valued or first-even f", 1e-12),
    ("sqft_plane_linear", "sqft(z f w) = z sqft(f) w, z in mu1 plane, w in mu2 plane", 1e-12),
    ("sqft_inversion", "isqft(sqft f) = f", 1e-9),
    ("sqft_inverse_w", "W(isqft F) = irqft F", 1e-10),
    ("sqft_adjoint", "<sqft f, g> = <W f, irqft g>", 1e-10),
    ("sqft_component_parseval", "scalar and mu1 parts of (f, g) preserved; all four on restricted classes", 1e-10),
    ("lqft_real_agreement", "lqft = rqft on real signals", 1e-12),
    ("lqft_inversion", "ilqft(lqft f) = f", 1e-9),
    ("multiplication_formula", "sum rqft(f) g = sum f H with h = beta g", 1e-9),
    ("classical_embedding", "rqft restricted to second frequency 0 is |G| times the DFT", 1e-10),
    ("fast_direct_agreement", "fast evaluators match direct ones", 1e-9),
    ("kernel_total_mass", "sum P_l = 1", 1e-10),
    ("kernel_envelope_monotone", "phi(l + 1, u) >= phi(l, u), phi(l, 0) = 1", 0.0),
    ("energy_identity", "Sc(((f~ * f) * P_l)(0)) = sum phi phi |rqft f|^2", 1e-9),
    ("dirichlet_full_level", "full passband reproduces f", 1e-10),
    ("smoothing_monotone", "|f * P_l - f|_2 non-increasing in l", 1e-12),
];

struct Tally {
    max: Vec<f64>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            max: vec![0.0; CHECKS.len()],
        }
    }

    fn record(&mut self, name: &str, err: f64) {
        let i = CHECKS
            .iter()
            .position(|c| c.0 == name)
            .unwrap_or_else(|| panic!("unregistered check {name}"));
        // NaN must fail, so once seen it sticks
        if err.is_nan() || err > self.max[i] {
            self.max[i] = err;
        }
    }
}

fn scale_of(x: f64) -> f64 {
    x.max(f64::MIN_POSITIVE)
}

fn rel<S: Side>(a: &QField<S>, b: &QField<S>, scale: f64) -> f64 {
    a.distance(b).expect("same group") / scale_of(scale)
}

fn sup_diff<S: Side>(a: &QField<S>, b: &QField<S>) -> f64 {
    a.values().iter().zip(b.values()).map(|(p, q)| p.max_abs_diff(*q)).fold(0.0, f64::max)
}

fn plane_point<R: Rng>(axes: &AxisPair, rng: &mut R) -> Quaternion {
    axes.plane(Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

struct Harness<'a> {
    group: &'a FiniteAbelianGroup,
    fault: bool,
}

impl Harness<'_> {
    fn rqft(&self, f: &QSignal, axes: &AxisPair) -> QSpectrum {
        let spec = rqft_direct(f, axes);
        if !self.fault {
            return spec;
        }
        let bump = Quaternion::new(1e-2, 1e-2, 0.0, 0.0);
        QSpectrum::from_fn(self.group.clone(), |u, v| {
            if (u, v) == (0, 0) {
                spec.at(u, v) + bump
            } else {
                spec.at(u, v)
            }
        })
    }
}

struct Extremes {
    proof_order: f64,
    inverse_order: f64,
    unrestricted_p23: f64,
    final_ratio: [f64; 2],
}

/// Runs the suite. Deterministic for fixed options.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let group = &opts.group;
    let mut tally = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let harness = Harness {
        group,
        fault: opts.inject_fault,
    };
    let mut ext = Extremes {
        proof_order: 0.0,
        inverse_order: 0.0,
        unrestricted_p23: 0.0,
        final_ratio: [0.0; 2],
    };
    for trial in 0..opts.trials {
        let axes = if trial % 2 == 0 {
            AxisPair::default()
        } else {
            random_axes(&mut rng)
        };
        run_trial(&harness, &axes, &mut rng, &mut tally, &mut ext)?;
    }

    let axes_desc = match opts.trials {
        0 => "none".to_string(),
        1 => "standard (i, j)".to_string(),
        _ => "standard (i, j) on even trials, random frames on odd trials".to_string(),
    };
    let checks: Vec<CheckRecord> = CHECKS
        .iter()
        .zip(&tally.max)
        .map(|(&(name, statement, tol), &err)| {
            let tolerance = opts.tol.unwrap_or(tol);
            let skipped = (opts.trials == 0).then(|| "trials = 0".to_string());
            CheckRecord {
                name,
                statement,
                group: group.to_string(),
                axes: axes_desc.clone(),
                trials: opts.trials,
                max_error: err,
                tolerance,
                passed: skipped.is_some() || err <= tolerance,
                skipped,
            }
        })
        .collect();

    let mut findings = Vec::new();
    if opts.trials > 0 {
        let order = match (ext.proof_order <= 1e-9, ext.inverse_order <= 1e-9) {
            (true, true) => "both kernel orders satisfy the formula on this data",
            (true, false) => "only the mu1-then-mu2 kernel order satisfies the formula",
            (false, true) => "only the mu2-then-mu1 kernel order satisfies the formula",
            (false, false) => "neither kernel order satisfies the formula",
        };
        findings.push(Finding {
            name: "multiplication_formula_kernel_order",
            values: vec![
                ("mu1_then_mu2".into(), ext.proof_order),
                ("mu2_then_mu1".into(), ext.inverse_order),
            ],
            detail: format!("{order} (errors relative to |f|_1 |g|_1)"),
        });
        findings.push(Finding {
            name: "sqft_component_parseval_unrestricted",
            values: vec![("max_mu2_mu3_mismatch".into(), ext.unrestricted_p23)],
            detail: "mu2 and mu3 parts of (f, g) versus (sqft f, sqft g) for unrestricted signals; no equality expected".into(),
        });
        findings.push(Finding {
            name: "approximate_identity_level_8",
            values: vec![
                ("fejer".into(), ext.final_ratio[0]),
                ("poisson_geometric".into(), ext.final_ratio[1]),
            ],
            detail: format!(
                "max over trials of |f * P_{APPROXIMATION_LEVEL} - f|_2 / |f|_2, compared with {APPROXIMATION_TARGET:e}: fejer {}, poisson_geometric {}",
                verdict(ext.final_ratio[0]),
                verdict(ext.final_ratio[1])
            ),
        });
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        seed: opts.seed,
        group: group.to_string(),
        trials: opts.trials,
        tolerance_override: opts.tol,
        checks,
        findings,
        passed,
    })
}

fn verdict(r: f64) -> &'static str {
    if r < APPROXIMATION_TARGET {
        "below"
    } else {
        "above"
    }
}

fn run_trial(
    h: &Harness<'_>,
    axes: &AxisPair,
    rng: &mut ChaCha8Rng,
    t: &mut Tally,
    ext: &mut Extremes,
) -> Result<()> {
    let g = h.group;
    let n = g.order();
    let neg = g.neg_table();
    let f = QSignal::random(g.clone(), rng);
    let k = QSignal::random(g.clone(), rng);
    let s = QSpectrum::random(g.clone(), rng);
    let p = random_quaternion(rng);
    let q = random_quaternion(rng);
    let (fn2, kn2) = (f.norm2(), k.norm2());

    // characters and measures
    for mu in [axes.mu1(), axes.mu2()] {
        let table = g.character_table(mu)?;
        let mut orth = 0.0_f64;
        let mut conj = 0.0_f64;
        for u in 0..n {
            if u != 0 {
                let sum: Quaternion = table[u * n..(u + 1) * n].iter().copied().sum();
                orth = orth.max(sum.norm() / n as f64);
            }
            for x in 0..n {
                conj = conj.max(table[u * n + neg[x]].max_abs_diff(table[u * n + x].conj()));
            }
        }
        t.record("character_orthogonality", orth);
        t.record("character_conjugation", conj);
    }
    let nn = (n * n) as f64;
    let primal = nn * g.haar_weight_primal();
    let dual = nn * g.haar_weight_dual();
    t.record("haar_normalization", ((primal - nn).abs() / nn).max((dual - 1.0).abs()));

    // signal identities
    let comps = f.components();
    let energy: f64 = comps.iter().flatten().map(|c| c * c).sum();
    t.record("component_norm_identity", (fn2 * fn2 - energy).abs() / scale_of(fn2 * fn2));
    let sup_sum: f64 = comps.iter().map(|c| c.iter().fold(0.0_f64, |m, v| m.max(v.abs()))).sum();
    t.record("component_sup_bound", (f.norm_inf() - 2.0 * sup_sum).max(0.0) / scale_of(f.norm_inf()));

    let lhs = f.left_mul(p).inner_q(&k.left_mul(q))?;
    let rhs = p * f.inner_q(&k)? * q.conj();
    t.record("inner_product_sesquilinear", lhs.max_abs_diff(rhs) / scale_of(p.norm() * q.norm() * fn2 * kn2));
    t.record("inner_real_symmetric", (f.inner_real(&k)? - k.inner_real(&f)?).abs() / scale_of(fn2 * kn2));

    let y1 = g.element(rng.random_range(0..n));
    let y2 = g.element(rng.random_range(0..n));
    let moved = f.translate((&y1, &y2))?;
    let back = moved.translate((&g.neg(&y1)?, &g.neg(&y2)?))?;
    t.record(
        "translation_invariance",
        ((moved.norm2() - fn2).abs() / scale_of(fn2)).max(sup_diff(&back, &f)),
    );
    t.record("reflection_involution", sup_diff(&f.reflect_conj().reflect_conj(), &f));

    let auto = f.reflect_conj().convolve(&f)?;
    let by_def = QSignal::from_fn(g.clone(), |a, b| {
        let mut acc = Quaternion::ZERO;
        for c in 0..n {
            for d in 0..n {
                acc += f.at(c, d).conj() * f.at(g.add_index(c, a), g.add_index(d, b));
            }
        }
        acc
    });
    t.record("autocorrelation_identity", sup_diff(&auto, &by_def) / scale_of(fn2 * fn2));

    let conv_scale = scale_of(p.norm() * f.norm1() * k.norm1());
    let left = f.left_mul(p).convolve(&k)?;
    let right = f.convolve(&k)?.left_mul(p);
    t.record("convolution_left_linear", sup_diff(&left, &right) / conv_scale);

    let wf = f.transform_w(axes);
    let wk = k.transform_w(axes);
    t.record("w_involution", sup_diff(&wf.transform_w(axes), &f) / scale_of(f.norm_inf()));
    t.record(
        "w_isometry",
        ((wf.inner_real(&wk)? - f.inner_real(&k)?).abs() / scale_of(fn2 * kn2)).max((wf.norm2() - fn2).abs() / scale_of(fn2)),
    );
    let mu1 = axes.mu1();
    let a = (mu1 * f.inner_q(&k)?).scalar_part();
    let b = (mu1 * wf.inner_q(&wk)?).scalar_part();
    t.record("w_plane_linear", {
        let z = plane_point(axes, rng);
        sup_diff(&f.left_mul(z).transform_w(axes), &wf.left_mul(z)) / scale_of(z.norm() * f.norm_inf())
    });
    t.record("w_mu1_pairing", (a - b).abs() / scale_of(fn2 * kn2));
    let sn2 = s.norm2();
    t.record("beta_isometry", (s.transform_beta(axes).norm2() - sn2).abs() / scale_of(sn2));

    // right-sided transform
    let rf = h.rqft(&f, axes);
    let rk = h.rqft(&k, axes);
    t.record("rqft_inversion", rel(&irqft_direct(&rf, axes), &f, fn2));
    t.record("rqft_plancherel", (rf.norm2() - fn2).abs() / scale_of(fn2));
    t.record("lqft_plancherel", (lqft_direct(&f, axes).norm2() - fn2).abs() / scale_of(fn2));
    let sf = sqft_direct(&f, axes);
    t.record("sqft_plancherel", (sf.norm2() - fn2).abs() / scale_of(fn2));
    t.record(
        "rqft_parseval",
        f.inner_q(&k)?.max_abs_diff(rf.inner_q(&rk)?) / scale_of(fn2 * kn2),
    );
    t.record("rqft_unitarity", rel(&h.rqft(&irqft_direct(&s, axes), axes), &s, sn2));
    let twin = irqft_fast(&rf, axes);
    let spectra_gap = rel(&h.rqft(&twin, axes), &rf, rf.norm2());
    t.record("rqft_uniqueness", sup_diff(&twin, &f).max(spectra_gap));
    t.record("rqft_boundedness", (rf.norm_inf() - f.norm1()).max(0.0) / scale_of(f.norm1()));
    t.record(
        "rqft_left_linear",
        sup_diff(&h.rqft(&f.left_mul(p), axes), &rf.left_mul(p)) / scale_of(p.norm() * f.norm1()),
    );

    // two-sided transform
    t.record("sqft_via_w", rel(&sf, &h.rqft(&wf, axes), fn2));
    let plane: QSignal = random_plane_valued(g.clone(), axes, rng);
    let even = random_first_even(g.clone(), rng);
    let restricted = [&plane, &even]
        .iter()
        .map(|x| sup_diff(&sqft_direct(x, axes), &h.rqft(x, axes)) / scale_of(x.norm1()))
        .fold(0.0, f64::max);
    t.record("sqft_equals_rqft_restricted", restricted);
    let z = plane_point(axes, rng);
    let w = Quaternion::real(rng.random_range(-1.0..1.0)) + axes.mu2() * rng.random_range(-1.0..1.0);
    let lin = sup_diff(&sqft_direct(&f.left_mul(z).right_mul(w), axes), &sf.left_mul(z).right_mul(w));
    t.record("sqft_plane_linear", lin / scale_of(z.norm() * w.norm() * f.norm1()));
    t.record("sqft_inversion", rel(&isqft_direct(&sf, axes), &f, fn2));
    t.record(
        "sqft_inverse_w",
        rel(&isqft_direct(&sf, axes).transform_w(axes), &irqft_direct(&sf, axes), fn2),
    );
    t.record(
        "sqft_adjoint",
        (sf.inner_real(&s)? - wf.inner_real(&irqft_direct(&s, axes))?).abs() / scale_of(fn2 * sn2),
    );

    let parts = |x: &QSignal, y: &QSignal| -> Result<[f64; 4]> {
        let p = axes.component_in_frame(x.inner_q(y)?);
        let q = axes.component_in_frame(sqft_direct(x, axes).inner_q(&sqft_direct(y, axes))?);
        let scale = scale_of(x.norm2() * y.norm2());
        Ok([0, 1, 2, 3].map(|m| (p[m] - q[m]).abs() / scale))
    };
    let d = parts(&f, &k)?;
    let mut cp = d[0].max(d[1]);
    ext.unrestricted_p23 = ext.unrestricted_p23.max(d[2].max(d[3]));
    let plane2: QSignal = random_plane_valued(g.clone(), axes, rng);
    let even2 = random_first_even(g.clone(), rng);
    for (x, y) in [(&plane, &plane2), (&even, &even2)] {
        cp = parts(x, y)?.into_iter().fold(cp, f64::max);
    }
    t.record("sqft_component_parseval", cp);

    // left-sided transform
    let real = QSignal::from_fn(g.clone(), |a, b| Quaternion::real(f.at(a, b).w));
    t.record(
        "lqft_real_agreement",
        sup_diff(&lqft_direct(&real, axes), &h.rqft(&real, axes)) / scale_of(real.norm1()),
    );
    let left = TransformKind::new(Sidedness::Left, *axes);
    t.record(
        "lqft_inversion",
        rel(&left.inverse(&left.forward(&f, Mode::Direct), Mode::Direct), &f, fn2),
    );

    // multiplication formula, with the transform under test on the left side
    let m = multiplication_pairing(&f, &s, axes)?;
    let lhs = rf.values().iter().zip(s.values()).map(|(&a, &b)| a * b).sum::<Quaternion>() * s.weight();
    let mscale = scale_of(f.norm1() * s.norm1());
    t.record("multiplication_formula", lhs.max_abs_diff(m.rhs) / mscale);
    ext.proof_order = ext.proof_order.max(m.error() / mscale);
    ext.inverse_order = ext.inverse_order.max(m.inverse_order_error() / mscale);

    // classical DFT through the transform
    let line: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let lifted: Vec<Quaternion> = line.iter().map(|&c| axes.plane(c)).collect();
    let via = classical_dft_via_rqft(&lifted, g, axes)?;
    let oracle = dft_naive_multi(&line, g.moduli(), -1);
    let l1: f64 = line.iter().map(|c| c.norm()).sum();
    let emb = via
        .iter()
        .zip(&oracle)
        .map(|(a, &b)| a.max_abs_diff(axes.plane(b)))
        .fold(0.0, f64::max);
    t.record("classical_embedding", emb / scale_of(l1));

    // fast evaluators against direct ones
    let mut fd = 0.0_f64;
    for kind in [Sidedness::Right, Sidedness::Left, Sidedness::TwoSided] {
        let tk = TransformKind::new(kind, *axes);
        let direct = if kind == Sidedness::Right {
            rf.clone()
        } else {
            tk.forward(&f, Mode::Direct)
        };
        fd = fd.max(rel(&tk.forward(&f, Mode::Fast), &direct, direct.norm2()));
        let direct = tk.inverse(&s, Mode::Direct);
        fd = fd.max(rel(&tk.inverse(&s, Mode::Fast), &direct, direct.norm2()));
    }
    t.record("fast_direct_agreement", fd);

    // kernels
    let e2 = scale_of(fn2 * fn2);
    for (i, kind) in FamilyKind::ALL.into_iter().enumerate() {
        let fam = KernelFamily::new(kind, g.clone());
        let mut mono = 0.0_f64;
        for l in 0..=APPROXIMATION_LEVEL {
            for u in 0..n {
                mono = mono.max(fam.phi(l, u) - fam.phi(l + 1, u));
            }
            mono = mono.max((fam.phi(l, 0) - 1.0).abs());
            t.record("kernel_total_mass", (spatial_kernel(&fam, l).mass() - 1.0).abs());
        }
        t.record("kernel_envelope_monotone", mono);
        for l in 0..=4 {
            let (lhs, rhs) = energy_identity(&f, &fam, l, axes)?;
            t.record("energy_identity", (lhs - rhs).abs() / e2);
        }
        match kind {
            FamilyKind::Dirichlet => {
                let full = fam.full_level().expect("dirichlet has a full level");
                let report = convergence_report(&f, &fam, full, Lp::Two)?;
                let smoothed = smooth(&f, &fam, full)?;
                let last = report.last().copied().unwrap_or(0.0);
                t.record(
                    "dirichlet_full_level",
                    (last / scale_of(fn2)).max(sup_diff(&smoothed, &f) / scale_of(f.norm_inf())),
                );
            }
            _ => {
                let report = convergence_report(&f, &fam, APPROXIMATION_LEVEL, Lp::Two)?;
                let rise = report.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
                t.record("smoothing_monotone", rise / scale_of(fn2));
                let r = report.last().copied().unwrap_or(0.0) / scale_of(fn2);
                ext.final_ratio[i - 1] = ext.final_ratio[i - 1].max(r);
            }
        }
    }
    Ok(())
}
