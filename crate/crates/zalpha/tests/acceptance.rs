//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero on any hard failure.
//!
//! Run with `cargo test -p zalpha --test acceptance`.

#[path = "../../core/tests/support/structural.rs"]
mod structural;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zalpha::config::{Command, ExperimentConfig, OutputFormat};
use zalpha::formats::witness_to_json;
use zalpha::run_at;
use zalpha_core::cartesian::{
    multiplier_apply, multiplier_constant_estimate, u_merge, u_norm_estimate, u_split,
    DiagonalMultiplier,
};
use zalpha_core::centralizer::{f_alpha, omega, omega_modulus, quasilinearity_estimate};
use zalpha_core::ideal::{
    compose_certificate, conjugate_certificate, random_certificate, random_operator,
    sum_certificate, FactorizationCertificate,
};
use zalpha_core::linalg::{sample, RandomSpec};
use zalpha_core::pelczynski::{check_witness, decomposition_axioms, derive, AxiomSet, SpaceExpr};
use zalpha_core::zspace::{conjugate_point, direct_sum_norm, pad, quasi_triangle_estimate, znorm};
use zalpha_core::{
    Alpha, Complex, ComplexVector, ConstantReport, DenseOperator, EstimatorConfig, Family, ZPoint,
};

const ALPHAS: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
const DIMS: [usize; 4] = [2, 16, 256, 1024];
const POINTS: usize = 10_000;

const ORACLE: &str = include_str!("../../core/tests/oracle/pinned_values.txt");
const PINNED_WITNESS: &[u8] = include_bytes!("data/decomposition_witness.json");

enum Verdict {
    Pass(String),
    SoftFail(String),
    Fail(String),
}

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn alpha(a: f64) -> Alpha {
    Alpha::new(a).unwrap()
}

fn complex(rng: &mut ChaCha8Rng) -> Complex {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn phases(rng: &mut ChaCha8Rng, n: usize) -> ComplexVector {
    let v = (0..n)
        .map(|_| Complex::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    ComplexVector::new(v).unwrap()
}

/// A vector from one of the four families with random phases, scale and support.
fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> ComplexVector {
    let family = Family::ALL[rng.random_range(0..4)];
    let base = sample(RandomSpec {
        seed: rng.next_u64(),
        family,
        dim: n,
    })
    .unwrap();
    let shift = rng.random_range(0..n);
    let scale = Complex::new(2f64.powf(rng.random_range(-20.0..20.0)), 0.0);
    let v = base
        .rotated(shift)
        .hadamard(&phases(rng, n))
        .unwrap()
        .scale(scale);
    if family == Family::Gaussian && rng.random_bool(0.3) {
        let keep = rng.random_range(1..=n);
        let mask: Vec<Complex> = (0..n)
            .map(|k| Complex::new(if k < keep { 1.0 } else { 0.0 }, 0.0))
            .collect();
        return v.hadamard(&ComplexVector::new(mask).unwrap()).unwrap();
    }
    v
}

/// `y` is independent, `Ω(x)`, `Ω(x)` plus noise, or zero.
fn random_point(rng: &mut ChaCha8Rng, n: usize, a: Alpha) -> ZPoint {
    let x = random_vector(rng, n);
    let y = match rng.random_range(0..4) {
        0 => random_vector(rng, n),
        1 => omega(&x, a),
        2 => {
            let noise = random_vector(rng, n).scale(Complex::new(1e-3, 0.0));
            omega(&x, a).add(&noise).unwrap()
        }
        _ => ComplexVector::zeros(n),
    };
    ZPoint::new(x, y, a).unwrap()
}

fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn vec_rel_err(a: &ComplexVector, b: &ComplexVector) -> f64 {
    let scale = a.l2_norm().max(b.l2_norm());
    if scale == 0.0 {
        0.0
    } else {
        a.sub(b).unwrap().l2_norm() / scale
    }
}

fn grid_rng(tag: u64, a: f64, n: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(tag);
    rng.set_stream(a.to_bits() ^ (n as u64).rotate_left(32));
    rng
}

fn conjugation_isometry() -> Verdict {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for &a in &ALPHAS {
        for &n in &DIMS {
            let mut rng = grid_rng(1, a, n);
            for _ in 0..POINTS {
                let p = random_point(&mut rng, n, alpha(a));
                let q = conjugate_point(&p);
                assert_eq!(q.alpha(), alpha(-a));
                worst = worst.max(rel_err(znorm(&p), znorm(&q)));
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        worst <= 1e-12 && elapsed < Duration::from_secs(30),
        format!("max rel err {worst:.2e} over 240000 points in {elapsed:.1?}"),
    )
}

/// `ln(‖x‖/|ξ_k|)` from the exact tail sums `Σ_{j≠k} |ξ_j|²`, scaled by the
/// largest modulus.
fn reference_modulus(x: &ComplexVector) -> Vec<f64> {
    let moduli: Vec<f64> = x.iter().map(|z| z.norm()).collect();
    let m = moduli.iter().copied().fold(0.0, f64::max);
    if m == 0.0 {
        return vec![0.0; moduli.len()];
    }
    let sq: Vec<f64> = moduli.iter().map(|v| (v / m) * (v / m)).collect();
    let n = sq.len();
    let mut prefix = vec![0.0; n + 1];
    for k in 0..n {
        prefix[k + 1] = prefix[k] + sq[k];
    }
    let mut suffix = vec![0.0; n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] + sq[k];
    }
    moduli
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            if v == 0.0 {
                return 0.0;
            }
            let others = prefix[k] + suffix[k + 1];
            let r = v / m;
            let t = if others <= sq[k] {
                0.5 * (others / sq[k]).ln_1p()
            } else {
                0.5 * (others + sq[k]).ln() - r.ln()
            };
            v * t
        })
        .collect()
}

fn centralizer_algebra() -> Verdict {
    let (mut homog, mut modulus, mut basis_nonzero) = (0.0f64, 0.0f64, 0usize);
    for &a in &ALPHAS {
        let a = alpha(a);
        for &n in &DIMS {
            let mut rng = grid_rng(2, a.value(), n);
            for _ in 0..POINTS {
                let x = random_vector(&mut rng, n);
                let lambda = complex(&mut rng) * 2f64.powf(rng.random_range(-10.0..10.0));
                let w = omega(&x, a);
                homog = homog.max(vec_rel_err(&omega(&x.scale(lambda), a), &w.scale(lambda)));
                let reference = reference_modulus(&x);
                for ((wk, mk), rk) in w.iter().zip(omega_modulus(&x)).zip(reference) {
                    modulus = modulus.max(rel_err(wk.norm(), rk)).max(rel_err(mk, rk));
                }
            }
            for k in 0..n {
                let lambda = complex(&mut rng);
                for e in [
                    ComplexVector::basis(n, k),
                    ComplexVector::basis(n, k).scale(lambda),
                ] {
                    if !omega(&e, a).is_zero() {
                        basis_nonzero += 1;
                    }
                }
            }
        }
    }
    check(
        homog <= 1e-9 && modulus <= 1e-10 && basis_nonzero == 0,
        format!(
            "homogeneity {homog:.2e}, modulus identity {modulus:.2e}, nonzero Ω(λe_k): {basis_nonzero}"
        ),
    )
}

fn oracle_value(label: &str) -> &'static str {
    ORACLE
        .lines()
        .find(|l| l.starts_with(label))
        .and_then(|l| l.split_once('='))
        .map(|(_, v)| v.trim())
        .unwrap_or_else(|| panic!("oracle output lacks {label}"))
}

/// Parses mpmath's `(re ± imj)`.
fn parse_oracle_complex(s: &str) -> Complex {
    let inner = s
        .trim_start_matches('(')
        .trim_end_matches(')')
        .trim_end_matches('j');
    let (re, im, sign) = match inner.split_once(" - ") {
        Some((re, im)) => (re, im, -1.0),
        None => {
            let (re, im) = inner.split_once(" + ").expect("complex literal");
            (re, im, 1.0)
        }
    };
    Complex::new(re.parse().unwrap(), sign * im.parse::<f64>().unwrap())
}

fn pinned_values() -> Verdict {
    let f_oracle = parse_oracle_complex(oracle_value("f_1(t)"));
    let z_oracle: f64 = oracle_value("znorm(((1,1),(0,0)), 1)").parse().unwrap();
    let f = f_alpha(std::f64::consts::SQRT_2.ln(), alpha(1.0)).unwrap();
    let ones = ComplexVector::ones(2);
    let z = znorm(&ZPoint::new(ones, ComplexVector::zeros(2), alpha(1.0)).unwrap());
    let f_err = (f - f_oracle).norm();
    let z_err = (z - z_oracle).abs();
    let stated_f = (Complex::new(0.169538, -0.302287) - f_oracle).norm();
    let stated_z = (1.904336 - z_oracle).abs();
    check(
        f_err <= 1e-4 && z_err <= 1e-4 && stated_f <= 1e-4 && stated_z <= 1e-4,
        format!(
            "f_1(ln√2) = {f:.6} (oracle err {f_err:.1e}), znorm = {z:.6} (oracle err {z_err:.1e})"
        ),
    )
}

fn cartesian_isomorphism() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut mismatches, mut chain) = (0usize, 0.0f64);
    let mut largest = 0;
    for i in 0..POINTS {
        let n = match i % 4 {
            0 => 4096,
            1 => rng.random_range(1..=4095) | 1,
            _ => rng.random_range(1..=4096),
        };
        largest = largest.max(n);
        let a = alpha(rng.random_range(-3.0..3.0));
        let p = random_point(&mut rng, n, a);
        let (odd, even) = u_split(&p);
        let merged = u_merge(&odd, &even).unwrap();
        let expected = if n % 2 == 0 {
            p.clone()
        } else {
            pad(&p, n + 1).unwrap()
        };
        let bits = |q: &ZPoint| -> Vec<u64> {
            q.x()
                .iter()
                .chain(q.y().iter())
                .flat_map(|z| [z.re.to_bits(), z.im.to_bits()])
                .collect()
        };
        if merged.alpha() != expected.alpha() || bits(&merged) != bits(&expected) {
            mismatches += 1;
        }
        let z = znorm(&expected);
        if z == 0.0 {
            continue;
        }
        let m = expected.len();
        let r_odd =
            znorm(&multiplier_apply(&DiagonalMultiplier::odd_indicator(m), &expected).unwrap()) / z;
        let r_even =
            znorm(&multiplier_apply(&DiagonalMultiplier::even_indicator(m), &expected).unwrap())
                / z;
        let lhs = direct_sum_norm(&odd, &even).unwrap();
        chain = chain.max((lhs - (r_odd + r_even) * z) / ((r_odd + r_even) * z));
    }
    check(
        mismatches == 0 && chain <= 1e-10,
        format!(
            "{mismatches} round-trip mismatches up to n = {largest}, max chain excess {chain:.2e}"
        ),
    )
}

fn estimator_reports(config: &EstimatorConfig) -> Vec<ConstantReport> {
    let u = u_norm_estimate(config).unwrap();
    vec![
        quasi_triangle_estimate(config).unwrap(),
        quasilinearity_estimate(config).unwrap(),
        multiplier_constant_estimate(config).unwrap(),
        u.forward,
        u.inverse,
    ]
}

fn cli_bytes(dir: &std::path::Path, command: Command) -> Vec<u8> {
    let out = dir.join(format!("{}.csv", command.as_str()));
    let config = ExperimentConfig {
        command,
        alpha: alpha(1.0),
        dims: vec![16, 64],
        trials: 200,
        seed: 11,
        families: Family::ALL.to_vec(),
        format: OutputFormat::Csv,
        out: out.clone(),
        budget: 10_000,
        axioms: None,
        input: None,
    };
    let summary = run_at(&config, "2026-01-01T00:00:00Z").unwrap();
    let mut bytes = std::fs::read(&out).unwrap();
    bytes.extend(std::fs::read(summary.sidecar.unwrap()).unwrap());
    bytes
}

fn constant_estimators() -> Verdict {
    let start = Instant::now();
    let mut below_one = Vec::new();
    for &a in &ALPHAS {
        for n in [16, 64, 256, 1024] {
            let config = EstimatorConfig::new(n, alpha(a), 64, 3).unwrap();
            let r = quasi_triangle_estimate(&config).unwrap();
            if r.estimate < 1.0 {
                below_one.push((a, n, r.estimate));
            }
        }
    }

    let mut nondeterministic = Vec::new();
    for n in [16, 256] {
        let config = EstimatorConfig::new(n, alpha(-0.5), 300, 5).unwrap();
        let (first, second) = (estimator_reports(&config), estimator_reports(&config));
        for (x, y) in first.iter().zip(&second) {
            if serde_json::to_vec(x).unwrap() != serde_json::to_vec(y).unwrap() {
                nondeterministic.push(format!("{}@{n}", x.constant_name));
            }
        }
    }
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for command in [
        Command::Qtriangle,
        Command::Qlinear,
        Command::Multiplier,
        Command::Unorm,
    ] {
        if cli_bytes(d1.path(), command) != cli_bytes(d2.path(), command) {
            nondeterministic.push(format!("{} report", command.as_str()));
        }
    }

    let mut spread = Vec::new();
    let per_dim: Vec<Vec<ConstantReport>> = [16, 64, 256, 1024]
        .iter()
        .map(|&n| estimator_reports(&EstimatorConfig::new(n, alpha(1.0), 1000, 1).unwrap()))
        .collect();
    let mut unstable = Vec::new();
    for (i, r) in per_dim[0].iter().enumerate() {
        let values: Vec<f64> = per_dim.iter().map(|reports| reports[i].estimate).collect();
        let hi = values.iter().copied().fold(f64::MIN, f64::max);
        let lo = values.iter().copied().fold(f64::MAX, f64::min);
        let factor = hi / lo;
        spread.push(format!("{} {factor:.2}", r.constant_name));
        if factor.is_nan() || factor > 4.0 {
            unstable.push(r.constant_name.clone());
        }
    }
    let elapsed = start.elapsed();

    let detail = format!(
        "qtriangle < 1: {}, nondeterministic: {}, n-spread [{}], {elapsed:.1?}",
        below_one.len(),
        nondeterministic.len(),
        spread.join(", ")
    );
    if !below_one.is_empty() || !nondeterministic.is_empty() || elapsed >= Duration::from_secs(300)
    {
        Verdict::Fail(format!("{detail}; {below_one:?} {nondeterministic:?}"))
    } else if !unstable.is_empty() {
        Verdict::SoftFail(format!("{detail}; spread > 4 for {unstable:?}"))
    } else {
        Verdict::Pass(detail)
    }
}

fn max_entry_diff(a: &DenseOperator, b: &DenseOperator) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn ideal_axioms() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut residual, mut functor, mut shape_errors) = (0.0f64, 0.0f64, 0usize);
    let mut record = |c: &FactorizationCertificate| residual = residual.max(c.residual().unwrap());
    for _ in 0..1000 {
        let a = alpha(ALPHAS[rng.random_range(0..ALPHAS.len())]);
        let (rows, cols) = (rng.random_range(1..6), rng.random_range(1..6));
        let (z1, z2) = (rng.random_range(1..5), rng.random_range(1..5));
        let c1 = random_certificate(rows, cols, z1, a, rng.next_u64());
        let c2 = random_certificate(rows, cols, z2, a, rng.next_u64());
        let (r_rows, s_cols) = (rng.random_range(1..6), rng.random_range(1..6));
        let r = random_operator(&mut rng, r_rows, rows);
        let s = random_operator(&mut rng, cols, s_cols);
        record(&c1);
        record(&c2);
        let summed = sum_certificate(&c1, &c2).unwrap();
        if summed.zdim != z1 + z2 {
            shape_errors += 1;
        }
        record(&summed);
        let composed = compose_certificate(&r, &summed, &s).unwrap();
        record(&composed);
        let conj = conjugate_certificate(&composed);
        record(&conj);
        if conj.alpha != -a || conjugate_certificate(&conj) != composed {
            shape_errors += 1;
        }
        let other =
            compose_certificate(&r.conj(), &conjugate_certificate(&summed), &s.conj()).unwrap();
        for (x, y) in [
            (&conj.t, &other.t),
            (&conj.a, &other.a),
            (&conj.b, &other.b),
        ] {
            functor = functor.max(max_entry_diff(x, y));
        }
    }
    check(
        residual <= 1e-8 && functor <= 1e-12 && shape_errors == 0,
        format!("max residual {residual:.2e} over 5000 certificates, functoriality {functor:.2e}"),
    )
}

fn pelczynski_engine() -> Verdict {
    let axioms = decomposition_axioms();
    let (x, y) = (SpaceExpr::atom("X"), SpaceExpr::atom("Y"));
    let start = Instant::now();
    let derived = derive(&axioms, (&x, &y), 10_000);
    let elapsed = start.elapsed();
    let Ok(w) = derived else {
        return Verdict::Fail(format!("derivation failed: {}", derived.unwrap_err()));
    };
    let checked = check_witness(&w, &axioms) == Ok((x.clone(), y.clone()));
    let mut json = witness_to_json(&w);
    json.push('\n');
    let matches = json.as_bytes() == PINNED_WITNESS;
    let controls: Vec<bool> = ["u", "v"]
        .iter()
        .map(|name| derive(&axioms.without(name), (&x, &y), 10_000).is_err())
        .collect();
    check(
        checked && matches && controls.iter().all(|c| *c) && elapsed < Duration::from_secs(10),
        format!(
            "{} steps in {elapsed:.1?}, checked {checked}, artifact match {matches}, negative controls {controls:?}",
            w.steps().len()
        ),
    )
}

fn exhaustive_soundness() -> Verdict {
    let atoms = ["X", "Y", "E"];
    let none = AxiomSet::default();
    let universe = structural::expressions(&atoms, 3);
    let witnesses = structural::structural_witnesses(&atoms, 3);
    let (mut accepted, mut unsound) = (0usize, 0usize);
    for w in &witnesses {
        let checked = check_witness(w, &none);
        if let Ok((s, t)) = &checked {
            accepted += 1;
            let replay = structural::apply(w, s, &none);
            if replay.as_ref() != Some(t)
                || structural::atom_multiset(s) != structural::atom_multiset(t)
            {
                unsound += 1;
            }
        }
        for e in &universe {
            if let Some(t) = structural::apply(w, e, &none) {
                if checked != Ok((e.clone(), t)) {
                    unsound += 1;
                }
            }
        }
    }
    check(
        unsound == 0,
        format!(
            "{} witnesses over {} trees, {accepted} accepted, {unsound} disagreements",
            witnesses.len(),
            universe.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 8] = [
        ("conjugation isometry", conjugation_isometry),
        ("centralizer algebra", centralizer_algebra),
        ("pinned derived values", pinned_values),
        ("cartesian isomorphism", cartesian_isomorphism),
        ("constant estimators", constant_estimators),
        ("ideal axioms", ideal_axioms),
        ("pelczynski engine", pelczynski_engine),
        ("exhaustive soundness", exhaustive_soundness),
    ];
    let mut hard_failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let verdict = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Verdict::Fail("panicked".into()));
        let (status, detail) = match verdict {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::SoftFail(d) => ("SOFT-FAIL", d),
            Verdict::Fail(d) => {
                hard_failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {}: {status} {name}: {detail}", i + 1);
    }
    if hard_failures > 0 {
        std::process::exit(1);
    }
}
