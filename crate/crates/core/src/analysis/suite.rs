//! Named bundles of checks run over a standard label grid.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{
    action_identity, eigen_residual, family_inputs, h4_check, label_tag, mandel_q, moment_check_builtin, su11_check,
    temporal_stability, VerificationReport, ACTION_TOLERANCE, EIGEN_TOLERANCE, MOMENT_TOLERANCE,
};
use crate::deformation::{catalog, hamiltonian, radius_of_convergence, Radius, RhoFamily};
use crate::error::{Error, Result};
use crate::fock::fidelity;
use crate::states::{cs_displacement, cs_dual_displacement, cs_series, t_apply, Dim, Direction, Label, StateOptions};

pub const DEFAULT_SEED: u64 = 0x6b70_7330;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Eigen,
    Routes,
    Dual,
    Algebra,
    Gk,
    Moments,
    Stats,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = ["eigen", "routes", "dual", "algebra", "gk", "moments", "stats", "all"];

    fn parts(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![Eigen, Routes, Dual, Algebra, Gk, Moments, Stats],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "eigen" => Suite::Eigen,
            "routes" => Suite::Routes,
            "dual" => Suite::Dual,
            "algebra" => Suite::Algebra,
            "gk" => Suite::Gk,
            "moments" => Suite::Moments,
            "stats" => Suite::Stats,
            "all" => Suite::All,
            other => return Err(Error::Domain(format!("unknown suite `{other}`; expected one of {:?}", Suite::NAMES))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub dim: Dim,
    pub seed: u64,
    pub gk_samples: usize,
    pub algebra_dim: usize,
    pub moment_order: usize,
    pub eigen_tol: f64,
    pub route_tol: f64,
    pub t_route_tol: f64,
    pub dual_tol: f64,
    pub dual_f_tol: f64,
    pub dual_h_tol: f64,
    pub action_tol: f64,
    pub moment_tol: f64,
    pub mandel_tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            dim: Dim::Auto,
            seed: DEFAULT_SEED,
            gk_samples: 50,
            algebra_dim: 50,
            moment_order: 15,
            eigen_tol: EIGEN_TOLERANCE,
            route_tol: 1e-8,
            t_route_tol: 1e-10,
            dual_tol: 1e-8,
            dual_f_tol: 2.0 * f64::EPSILON,
            dual_h_tol: 1e-12,
            action_tol: ACTION_TOLERANCE,
            moment_tol: MOMENT_TOLERANCE,
            mandel_tol: 1e-10,
        }
    }
}

impl SuiteConfig {
    fn state_options(&self) -> StateOptions {
        StateOptions { dim: self.dim, ..StateOptions::default() }
    }
}

/// One instance of every catalogued family, with parameters away from the
/// degenerate defaults.
pub fn standard_families() -> Vec<RhoFamily> {
    catalog()
        .iter()
        .map(|entry| {
            let params: &[(&str, f64)] = match entry.id {
                "kps-a" => &[("p", 2.0)],
                "ml" => &[("alpha", 1.5), ("beta", 2.0)],
                "kps-d" => &[("alpha", 2.0)],
                "ps" => &[("q", 0.8)],
                "bg" | "gp" => &[("kappa", 1.5)],
                "ll-paper" | "ll-action" => &[("alpha", 0.5), ("m", 1.0)],
                _ => &[],
            };
            RhoFamily::with(entry.id, params).expect("standard parameters are valid")
        })
        .collect()
}

/// Four labels: `{0.25, 0.5+0.5i, 1, 2}` for whole-plane families,
/// `√R·{0.1, 0.3i, 0.5, 0.8}` inside a finite radius R, none when R = 0.
pub fn label_grid(family: &RhoFamily) -> Result<Vec<Complex64>> {
    let c = Complex64::new;
    Ok(match radius_of_convergence(family)? {
        Radius::Finite(r) if r <= 0.0 => Vec::new(),
        Radius::Finite(r) => {
            let s = r.sqrt();
            vec![c(0.1 * s, 0.0), c(0.0, 0.3 * s), c(0.5 * s, 0.0), c(0.8 * s, 0.0)]
        }
        Radius::Infinite | Radius::Indeterminate => vec![c(0.25, 0.0), c(0.5, 0.5), c(1.0, 0.0), c(2.0, 0.0)],
    })
}

/// Largest J used by the GK checks: 2 on the plane, 0.8R inside a radius.
fn j_max(family: &RhoFamily) -> Result<Option<f64>> {
    Ok(match radius_of_convergence(family)? {
        Radius::Finite(r) if r <= 0.0 => None,
        Radius::Finite(r) => Some(0.8 * r),
        _ => Some(2.0),
    })
}

/// Seeded `(J, γ, t)` triples with `J ∈ [0, j_max)`, `γ ∈ [0, 2π)`,
/// `t ∈ [0, 10)`.
pub fn gk_grid(seed: u64, count: usize, j_max: f64) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (rng.gen_range(0.0..j_max), rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..10.0)))
        .collect()
}

fn label_inputs(family: &RhoFamily, z: Complex64) -> std::collections::BTreeMap<String, serde_json::Value> {
    let mut m = family_inputs(family);
    m.insert("label".into(), super::label_value(Label::Z(z)));
    m
}

fn guarded<F>(id: String, family: &RhoFamily, tol: f64, check: F) -> VerificationReport
where
    F: FnOnce() -> Result<VerificationReport>,
{
    check().unwrap_or_else(|e| VerificationReport::errored(id, family, family_inputs(family), tol, &e))
}

fn fidelity_report(
    id: String,
    family: &RhoFamily,
    z: Complex64,
    dim: usize,
    fid: f64,
    tol: f64,
) -> VerificationReport {
    let mut inputs = label_inputs(family, z);
    inputs.insert("dim".into(), json!(dim));
    inputs.insert("fidelity".into(), json!(fid));
    VerificationReport::measured(id, family, inputs, 1.0 - fid, tol, "")
}

fn eigen_suite(family: &RhoFamily, cfg: &SuiteConfig, out: &mut Vec<VerificationReport>) -> Result<()> {
    for z in label_grid(family)? {
        let id = format!("eigen/{family}/{}", label_tag(Label::Z(z)));
        out.push(guarded(id, family, cfg.eigen_tol, || {
            Ok(eigen_residual(&cs_series(family, z, &cfg.state_options())?)?.with_tolerance(cfg.eigen_tol))
        }));
    }
    Ok(())
}

fn routes_suite(family: &RhoFamily, cfg: &SuiteConfig, out: &mut Vec<VerificationReport>) -> Result<()> {
    let canonical = RhoFamily::named("canonical")?;
    for z in label_grid(family)? {
        let tag = label_tag(Label::Z(z));
        let id = format!("route-displacement/{family}/{tag}");
        out.push(guarded(id.clone(), family, cfg.route_tol, || {
            let series = cs_series(family, z, &cfg.state_options())?;
            let disp = cs_displacement(family, z, &StateOptions::fixed(series.dim()))?;
            let fid = fidelity(series.vector(), disp.vector())?;
            Ok(fidelity_report(id, family, z, series.dim(), fid, cfg.route_tol))
        }));
        let id = format!("route-t/{family}/{tag}");
        out.push(guarded(id.clone(), family, cfg.t_route_tol, || {
            let series = cs_series(family, z, &cfg.state_options())?;
            let seed = cs_series(&canonical, z, &StateOptions::forced(series.dim()))?;
            let via_t = t_apply(family, Direction::Forward, &seed)?;
            let fid = fidelity(series.vector(), via_t.vector())?;
            Ok(fidelity_report(id, family, z, series.dim(), fid, cfg.t_route_tol))
        }));
    }
    Ok(())
}

fn dual_suite(family: &RhoFamily, cfg: &SuiteConfig, out: &mut Vec<VerificationReport>) -> Result<()> {
    let dual = family.dual();
    let levels = cfg.algebra_dim;

    let id = format!("dual-f/{family}/n<={levels}");
    out.push(guarded(id.clone(), family, cfg.dual_f_tol, || {
        let mut worst = 0.0f64;
        for n in 1..=levels {
            worst = worst.max((family.f(n)? * dual.f(n)? - 1.0).abs());
        }
        let mut inputs = family_inputs(family);
        inputs.insert("levels".into(), json!(levels));
        Ok(VerificationReport::measured(id, family, inputs, worst, cfg.dual_f_tol, ""))
    }));

    let id = format!("dual-h/{family}/dim={levels}");
    out.push(guarded(id.clone(), family, cfg.dual_h_tol, || {
        let h = hamiltonian(&dual, levels)?;
        let mut worst = 0.0f64;
        for n in 1..levels {
            let expect = (n * n) as f64 / family.e(n)?;
            worst = worst.max((h.entry(n, n).re - expect).abs() / expect);
        }
        let mut inputs = family_inputs(family);
        inputs.insert("dim".into(), json!(levels));
        Ok(VerificationReport::measured(id, family, inputs, worst, cfg.dual_h_tol, ""))
    }));

    let grid = label_grid(&dual)?;
    if grid.is_empty() {
        out.push(VerificationReport::inconclusive(
            format!("dual-displacement/{family}"),
            family,
            family_inputs(family),
            cfg.dual_tol,
            "dual series has zero radius of convergence; no label to test",
        ));
    }
    for z in grid {
        let id = format!("dual-displacement/{family}/{}", label_tag(Label::Z(z)));
        out.push(guarded(id.clone(), family, cfg.dual_tol, || {
            let series = cs_series(&dual, z, &cfg.state_options())?;
            let disp = cs_dual_displacement(family, z, &StateOptions::fixed(series.dim()))?;
            let fid = fidelity(series.vector(), disp.vector())?;
            Ok(fidelity_report(id, family, z, series.dim(), fid, cfg.dual_tol))
        }));
    }
    Ok(())
}

fn algebra_suite(family: &RhoFamily, cfg: &SuiteConfig, out: &mut Vec<VerificationReport>) {
    let id = format!("h4/{family}/dim={}", cfg.algebra_dim);
    out.push(guarded(id, family, super::ALGEBRA_TOLERANCE, || h4_check(family, cfg.algebra_dim)));
    if let Some(&kappa) = family.params().get("kappa") {
        let id = format!("su11/kappa={kappa}/dim={}", cfg.algebra_dim);
        out.push(guarded(id, family, super::ALGEBRA_TOLERANCE, || su11_check(kappa, cfg.algebra_dim)));
    }
}

fn gk_suite(family: &RhoFamily, cfg: &SuiteConfig, out: &mut Vec<VerificationReport>) -> Result<()> {
    let Some(jm) = j_max(family)? else {
        out.push(VerificationReport::inconclusive(
            format!("gk/{family}"),
            family,
            family_inputs(family),
            cfg.action_tol,
            "zero radius of convergence; GK states do not exist",
        ));
        return Ok(());
    };
    let opts = cfg.state_options();
    for (j, gamma, t) in gk_grid(cfg.seed, cfg.gk_samples, jm) {
        let id = format!("temporal/{family}/{},t={t:.4}", label_tag(Label::Gk { j, gamma }));
        out.push(guarded(id, family, super::TEMPORAL_TOLERANCE, || temporal_stability(family, j, gamma, t, &opts)));
    }
    for j in [0.0, 0.25, 0.5, 1.0].map(|x| x * jm.min(1.0)) {
        let id = format!("action/{family}/{}", label_tag(Label::Gk { j, gamma: 0.7 }));
        out.push(guarded(id, family, cfg.action_tol, || {
            Ok(action_identity(family, j, 0.7, &opts)?.with_tolerance(cfg.action_tol))
        }));
    }
    Ok(())
}

fn stats_suite(family: &RhoFamily, cfg: &SuiteConfig, out: &mut Vec<VerificationReport>) -> Result<()> {
    let canonical = family.id() == "canonical";
    for z in label_grid(family)? {
        let tag = label_tag(Label::Z(z));
        let id = format!("stats-energy/{family}/{tag}");
        out.push(guarded(id.clone(), family, cfg.action_tol, || {
            let s = cs_series(family, z, &cfg.state_options())?;
            let h = hamiltonian(family, s.dim())?;
            let energy = super::expectation(s.vector(), &h)?.re;
            let q = mandel_q(s.vector())?;
            let mut inputs = label_inputs(family, z);
            inputs.insert("dim".into(), json!(s.dim()));
            inputs.insert("mandel_q".into(), json!(q));
            Ok(VerificationReport::measured(id, family, inputs, energy - z.norm_sqr(), cfg.action_tol, format!("Q = {q:.6}")))
        }));
        if canonical {
            let id = format!("mandel/{family}/{tag}");
            out.push(guarded(id.clone(), family, cfg.mandel_tol, || {
                let s = cs_series(family, z, &cfg.state_options())?;
                let q = mandel_q(s.vector())?;
                Ok(VerificationReport::measured(id, family, label_inputs(family, z), q, cfg.mandel_tol, "Poissonian reference Q = 0"))
            }));
        }
    }
    Ok(())
}

/// Runs `suite` for one family; reports come back sorted by `check_id`.
pub fn run_suite(family: &RhoFamily, suite: Suite, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for part in suite.parts() {
        match part {
            Suite::Eigen => eigen_suite(family, cfg, &mut out)?,
            Suite::Routes => routes_suite(family, cfg, &mut out)?,
            Suite::Dual => dual_suite(family, cfg, &mut out)?,
            Suite::Algebra => algebra_suite(family, cfg, &mut out),
            Suite::Gk => gk_suite(family, cfg, &mut out)?,
            Suite::Moments => {
                let id = format!("moments/{family}/n_max={}", cfg.moment_order);
                out.push(guarded(id, family, cfg.moment_tol, || moment_check_builtin(family, cfg.moment_order, cfg.moment_tol)));
            }
            Suite::Stats => stats_suite(family, cfg, &mut out)?,
            Suite::All => unreachable!("expanded by parts()"),
        }
    }
    out.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(out)
}
