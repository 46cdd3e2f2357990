//! Acceptance criteria 1 to 10. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; the process fails if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use nlcs::analysis::suite::{gk_grid, label_grid, run_suite, standard_families, Suite, SuiteConfig};
use nlcs::analysis::{
    action_identity, action_identity_with, eigen_residual, h4_check, mandel_q, moment_check_builtin, su11_check,
    temporal_stability, HamiltonianChoice,
};
use nlcs::deformation::{build_a, build_a_dag, hamiltonian, radius_of_convergence, Radius};
use nlcs::fock::{commutator, fidelity};
use nlcs::states::{cs_displacement, cs_dual_displacement, cs_series, t_apply, Direction, StateOptions};
use nlcs::RhoFamily;
use num_complex::Complex64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fam(id: &str, params: &[(&str, f64)]) -> RhoFamily {
    RhoFamily::with(id, params).expect("valid family")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

type ClosedForm = (RhoFamily, fn(f64) -> f64, fn(f64) -> f64);

/// Closed forms of f(n) and e(n) = n f(n)², independent of the moment route.
fn closed_forms() -> Vec<ClosedForm> {
    vec![
        (fam("canonical", &[]), |_| 1.0, |n| n),
        (fam("kps-a", &[("p", 2.0)]), |n| ((n + 2.0) / n).sqrt(), |n| n + 2.0),
        (fam("ml", &[("alpha", 1.0), ("beta", 2.0)]), |n| ((n + 1.0) / n).sqrt(), |n| n + 1.0),
        (fam("kps-c", &[]), |n| (n / (n + 1.0)).sqrt(), |n| n * n / (n + 1.0)),
        (fam("kps-d", &[("alpha", 2.0)]), |n| ((n + 2.0) / (n + 1.0)).sqrt(), |n| n * (n + 2.0) / (n + 1.0)),
        (fam("kps-e", &[]), |n| n.sqrt(), |n| n * n),
        (fam("kps-f", &[]), |n| n, |n| n * n * n),
        (fam("kps-g", &[]), |n| (n + 1.0 / 3.0).sqrt(), |n| n * (n + 1.0 / 3.0)),
        (fam("kps-h", &[]), |n| n / (n + 0.5).sqrt(), |n| n * n * n / (n + 0.5)),
        (fam("ps", &[("q", 0.8)]), |n| 0.8f64.powf(1.0 - n), |n| n * 0.8f64.powf(2.0 * (1.0 - n))),
        (fam("bg", &[("kappa", 1.5)]), |n| (n + 2.0).sqrt(), |n| n * (n + 2.0)),
        (fam("gp", &[("kappa", 1.5)]), |n| 1.0 / (n + 2.0).sqrt(), |n| n / (n + 2.0)),
        (fam("kps-da", &[]), |n| ((n + 1.0) / (n * (n + 2.0))).sqrt(), |n| (n + 1.0) / (n + 2.0)),
        (fam("kps-db", &[]), |n| ((n + 1.0) / (n * (n + 3.0))).sqrt(), |n| (n + 1.0) / (n + 3.0)),
        (fam("kps-dc", &[]), |n| 2.0 * n.sqrt() / (2.0 * n + 1.0), |n| 4.0 * n * n / ((2.0 * n + 1.0) * (2.0 * n + 1.0))),
        (
            fam("kps-dd", &[]),
            |n| 2.0 * ((n + 1.0) / ((2.0 * n + 1.0) * (2.0 * n + 3.0))).sqrt(),
            |n| 4.0 * n * (n + 1.0) / ((2.0 * n + 1.0) * (2.0 * n + 3.0)),
        ),
        (fam("kps-de", &[]), |n| (n + 0.5).sqrt() / (n + 1.0), |n| n * (n + 0.5) / ((n + 1.0) * (n + 1.0))),
        (
            fam("kps-df", &[]),
            |n| ((n * n + 3.0 * n + 2.0) / (n * (n + 3.0) * (n + 1.5))).sqrt(),
            |n| (n * n + 3.0 * n + 2.0) / ((n + 3.0) * (n + 1.5)),
        ),
        (fam("ll-action", &[("alpha", 0.5), ("m", 1.0)]), |k| (k + 1.5).sqrt(), |k| k * (k + 1.5)),
        (fam("ll-paper", &[("alpha", 0.5), ("m", 1.0)]), |k| k.sqrt() * (k + 1.5), |k| k * k * (k + 1.5) * (k + 1.5)),
    ]
}

fn criterion_1() -> Outcome {
    let forms = closed_forms();
    let mut worst = 0.0f64;
    for (family, f, e) in &forms {
        for n in 1..=50 {
            let x = n as f64;
            let df = (family.f(n).map_err(err)? - f(x)).abs() / f(x);
            let de = (family.e(n).map_err(err)? - e(x)).abs() / e(x);
            ensure(df <= 1e-12 && de <= 1e-12, || format!("{family} n={n}: rel f {df:e}, rel e {de:e}"))?;
            worst = worst.max(df).max(de);
        }
    }
    Ok(format!("{} families, n=1..50, worst rel err {worst:.2e} (tol 1e-12)", forms.len()))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for family in standard_families() {
        for z in label_grid(&family).map_err(err)? {
            let s = cs_series(&family, z, &StateOptions::default()).map_err(|e| format!("{family} z={z}: {e}"))?;
            let r = eigen_residual(&s).map_err(err)?;
            ensure(r.residual <= 1e-8, || format!("{}: {:e}", r.check_id, r.residual))?;
            worst = worst.max(r.residual);
            count += 1;
        }
    }
    Ok(format!("{count} states, worst ‖Az−z|z⟩‖ = {worst:.2e} (tol 1e-8)"))
}

fn criterion_3() -> Outcome {
    let canonical = fam("canonical", &[]);
    let (mut worst_d, mut worst_t) = (0.0f64, 0.0f64);
    for family in standard_families() {
        for z in label_grid(&family).map_err(err)? {
            let series = cs_series(&family, z, &StateOptions::default()).map_err(err)?;
            let fixed = StateOptions::fixed(series.dim());
            let disp = cs_displacement(&family, z, &fixed).map_err(|e| format!("{family} z={z}: {e}"))?;
            let seed = cs_series(&canonical, z, &StateOptions::forced(series.dim())).map_err(err)?;
            let via_t = t_apply(&family, Direction::Forward, &seed).map_err(err)?;
            let gap_d = 1.0 - fidelity(series.vector(), disp.vector()).map_err(err)?;
            let gap_t = 1.0 - fidelity(series.vector(), via_t.vector()).map_err(err)?;
            ensure(gap_d <= 1e-8, || format!("{family} z={z}: displacement 1-F = {gap_d:e}"))?;
            ensure(gap_t <= 1e-10, || format!("{family} z={z}: T route 1-F = {gap_t:e}"))?;
            worst_d = worst_d.max(gap_d);
            worst_t = worst_t.max(gap_t);
        }
    }
    Ok(format!("worst 1-F: displacement {worst_d:.2e} (tol 1e-8), T route {worst_t:.2e} (tol 1e-10)"))
}

fn criterion_4() -> Outcome {
    let (mut worst_f, mut worst_h, mut worst_d) = (0.0f64, 0.0f64, 0.0f64);
    let mut dual_states = 0;
    for family in standard_families() {
        let dual = family.dual();
        for n in 1..=50 {
            let gap = (family.f(n).map_err(err)? * dual.f(n).map_err(err)? - 1.0).abs();
            ensure(gap <= 2.0 * f64::EPSILON, || format!("{family} n={n}: |f·f_dual − 1| = {gap:e}"))?;
            worst_f = worst_f.max(gap);
        }
        let h = hamiltonian(&dual, 51).map_err(err)?;
        for n in 1..=50 {
            let expect = (n * n) as f64 / family.e(n).map_err(err)?;
            let gap = (h.entry(n, n).re - expect).abs() / expect;
            ensure(gap <= 1e-12, || format!("{family} n={n}: H_dual rel err {gap:e}"))?;
            worst_h = worst_h.max(gap);
        }
        for z in label_grid(&dual).map_err(err)? {
            let series = cs_series(&dual, z, &StateOptions::default()).map_err(err)?;
            let disp = cs_dual_displacement(&family, z, &StateOptions::fixed(series.dim())).map_err(err)?;
            let gap = 1.0 - fidelity(series.vector(), disp.vector()).map_err(err)?;
            ensure(gap <= 1e-8, || format!("{family} z={z}: dual displacement 1-F = {gap:e}"))?;
            worst_d = worst_d.max(gap);
            dual_states += 1;
        }
    }
    Ok(format!(
        "|f·f_dual−1| ≤ {:.1} ulp, H_dual rel {worst_h:.2e}, {dual_states} dual states with worst 1-F {worst_d:.2e}",
        worst_f / f64::EPSILON
    ))
}

fn criterion_5() -> Outcome {
    let mut worst = 0.0f64;
    for family in standard_families() {
        let r = h4_check(&family, 50).map_err(err)?;
        ensure(r.passed, || r.to_string())?;
        worst = worst.max(r.residual);
    }
    let mut su = 0.0f64;
    for kappa in [0.5, 1.0, 1.5, 2.0, 2.5] {
        let r = su11_check(kappa, 50).map_err(err)?;
        ensure(r.passed, || r.to_string())?;
        ensure(r.notes.contains("factor-2"), || "su(1,1) report lacks the factor-2 note".into())?;
        su = su.max(r.residual);
        let bg = fam("bg", &[("kappa", kappa)]);
        let c = commutator(&build_a(&bg, 50).map_err(err)?, &build_a_dag(&bg, 50).map_err(err)?).map_err(err)?;
        for n in 0..48 {
            let expect = 2.0 * (n as f64 + kappa);
            let gap = (c.entry(n, n).re - expect).abs() / expect;
            ensure(gap <= 1e-12, || format!("κ={kappa} n={n}: [A,A†] = {} vs 2(n+κ)", c.entry(n, n).re))?;
        }
    }
    Ok(format!("h4 worst {worst:.2e}, su(1,1) worst {su:.2e} (tol 1e-12); [A,A†]=2(n+κ) with factor-2 note"))
}

fn criterion_6() -> Outcome {
    let cfg = SuiteConfig::default();
    let opts = StateOptions::default();
    let (mut worst_t, mut worst_a) = (0.0f64, 0.0f64);
    for family in standard_families() {
        let j_max = match radius_of_convergence(&family).map_err(err)? {
            Radius::Finite(r) => 0.8 * r,
            _ => 2.0,
        };
        for (j, gamma, t) in gk_grid(cfg.seed, 50, j_max) {
            let r = temporal_stability(&family, j, gamma, t, &opts).map_err(|e| format!("{family}: {e}"))?;
            ensure(r.passed, || r.to_string())?;
            worst_t = worst_t.max(r.residual);
        }
        for j in [0.0, 0.25, 0.5, 0.75, 1.0].map(|x| x * j_max.min(1.0)) {
            let r = action_identity(&family, j, 0.4, &opts).map_err(err)?;
            ensure(r.residual <= 1e-8, || r.to_string())?;
            worst_a = worst_a.max(r.residual);
        }
    }
    let manko = action_identity_with(&fam("kps-f", &[]), 0.5, 0.0, &opts, HamiltonianChoice::Manko).map_err(err)?;
    ensure(manko.residual >= 0.1, || format!("Manko residual only {:e}", manko.residual))?;
    Ok(format!(
        "temporal worst {worst_t:.2e} (tol 1e-12), action worst {worst_a:.2e} (tol 1e-8), Manko kps-f J=0.5 residual {:.3}",
        manko.residual
    ))
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    for id in ["canonical", "kps-da", "kps-db"] {
        let r = moment_check_builtin(&fam(id, &[]), 15, 1e-8).map_err(err)?;
        ensure(r.passed, || r.to_string())?;
        parts.push(format!("{id} {:.1e}", r.residual));
    }
    // analytic moments of the same weights, independent of the catalog
    let fact: f64 = (1..=15).map(f64::from).product();
    let oracle = [(fact, fam("canonical", &[]).ln_rho(15)), (2.0 / 17.0, fam("kps-da", &[]).ln_rho(15)), (6.0 / (17.0 * 18.0), fam("kps-db", &[]).ln_rho(15))];
    for (want, got) in oracle {
        let got = got.map_err(err)?.exp();
        ensure((got - want).abs() / want <= 1e-12, || format!("ρ(15) = {got} vs {want}"))?;
    }
    Ok(format!("n ≤ 15 max rel err: {} (tol 1e-8)", parts.join(", ")))
}

fn criterion_8() -> Outcome {
    let can = fam("canonical", &[]);
    let mut worst = 0.0f64;
    for x in [0.5, 1.0, 2.0] {
        let s = cs_series(&can, Complex64::new(x, 0.0), &StateOptions::default()).map_err(err)?;
        let q = mandel_q(s.vector()).map_err(err)?;
        ensure(q.abs() <= 1e-10, || format!("canonical z={x}: Q = {q:e}"))?;
        worst = worst.max(q.abs());
    }
    let s = cs_series(&fam("kps-e", &[]), Complex64::new(1.0, 0.0), &StateOptions::default()).map_err(err)?;
    let q = mandel_q(s.vector()).map_err(err)?;
    // direct summation of the weights 1/(n!)²
    let (mut w, mut s0, mut s1, mut s2) = (1.0f64, 0.0, 0.0, 0.0);
    for n in 0..60 {
        if n > 0 {
            w /= (n * n) as f64;
        }
        let x = n as f64;
        s0 += w;
        s1 += x * w;
        s2 += x * x * w;
    }
    let mean = s1 / s0;
    let oracle = (s2 / s0 - mean * mean) / mean - 1.0;
    ensure(q < 0.0, || format!("kps-e z=1: Q = {q}"))?;
    ensure((q - oracle).abs() <= 1e-12, || format!("kps-e z=1: Q = {q} vs oracle {oracle}"))?;
    Ok(format!("canonical |Q| ≤ {worst:.1e} (tol 1e-10); kps-e z=1 Q = {q:.6} (oracle {oracle:.6})"))
}

fn criterion_9() -> Outcome {
    for family in [fam("kps-a", &[("p", 2.0)]), fam("ml", &[("alpha", 1.0), ("beta", 2.0)]), fam("kps-c", &[]), fam("kps-d", &[("alpha", 2.0)])] {
        for n in (100..=10_000).step_by(100) {
            let gap = (family.f(n).map_err(err)? - 1.0).abs();
            ensure(gap <= 10.0 / n as f64, || format!("{family} n={n}: |f−1| = {gap}"))?;
        }
    }
    let disks = ["kps-da", "kps-db", "kps-dc", "kps-dd", "kps-de", "kps-df", "gp"];
    let mut worst_r = 0.0f64;
    for id in disks {
        let family = fam(id, &[]);
        let f = family.f(10_000).map_err(err)?;
        let e = family.e(10_000).map_err(err)?;
        ensure(f <= 0.05 && (e - 1.0).abs() <= 0.01, || format!("{id}: f(1e4) = {f}, e(1e4) = {e}"))?;
        match radius_of_convergence(&family).map_err(err)? {
            Radius::Finite(r) if (r - 1.0).abs() <= 1e-3 => worst_r = worst_r.max((r - 1.0).abs()),
            other => return Err(format!("{id}: radius {other:?}")),
        }
    }
    let mut plane = 0;
    for family in standard_families() {
        if family.catalog_entry().is_some_and(|e| e.region == nlcs::deformation::Region::Plane) {
            let r = radius_of_convergence(&family).map_err(err)?;
            ensure(r == Radius::Infinite, || format!("{family}: radius {r:?}"))?;
            plane += 1;
        }
    }
    Ok(format!(
        "a-d |f−1| ≤ 10/n for n=100..1e4; {} disk families |R−1| ≤ {worst_r:.1e}; {plane} plane families diverge",
        disks.len()
    ))
}

fn criterion_10() -> Outcome {
    let cfg = SuiteConfig::default();
    let mut checks = 0;
    for family in standard_families() {
        let a = serde_json::to_string(&run_suite(&family, Suite::All, &cfg).map_err(err)?).map_err(err)?;
        let b = serde_json::to_string(&run_suite(&family, Suite::All, &cfg).map_err(err)?).map_err(err)?;
        ensure(a == b, || format!("{family}: reports differ between runs"))?;
        checks += a.matches("check_id").count();
    }
    Ok(format!("{checks} reports bitwise identical across two runs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("catalog conformance", criterion_1),
        ("eigenvalue property", criterion_2),
        ("route agreement", criterion_3),
        ("duality", criterion_4),
        ("algebra", criterion_5),
        ("GK properties", criterion_6),
        ("resolution-of-identity moments", criterion_7),
        ("photon statistics", criterion_8),
        ("limits and radii", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
