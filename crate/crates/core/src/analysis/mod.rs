//! Verification checks. Each check returns a [`VerificationReport`] holding a
//! residual, the tolerance it was judged against, and the inputs that
//! produced it.

pub mod quadrature;
pub mod suite;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::deformation::{build_a, build_a_dag, build_b, build_b_dag, hamiltonian, manko_hamiltonian, RhoFamily};
use crate::error::{Error, Result};
use crate::fock::{commutator, inner_product, trust_band, FockOperator, FockVector};
use crate::states::{evolve, gk_state, CoherentState, Label, StateOptions};

pub const EIGEN_TOLERANCE: f64 = 1e-8;
pub const ALGEBRA_TOLERANCE: f64 = 1e-12;
pub const TEMPORAL_TOLERANCE: f64 = 1e-12;
pub const ACTION_TOLERANCE: f64 = 1e-8;
pub const MOMENT_TOLERANCE: f64 = 1e-8;
pub const MAX_MOMENT_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub family: String,
    pub inputs: BTreeMap<String, Value>,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub notes: String,
    /// Set when the check could not be decided; such a report is not a
    /// failure.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub inconclusive: bool,
}

impl VerificationReport {
    /// A decided report; `passed` follows from `residual <= tolerance`.
    /// Non-finite residuals are clamped to `f64::MAX` and noted.
    pub fn measured(
        check_id: impl Into<String>,
        family: &RhoFamily,
        inputs: BTreeMap<String, Value>,
        residual: f64,
        tolerance: f64,
        notes: impl Into<String>,
    ) -> Self {
        let mut notes = notes.into();
        let residual = if residual.is_finite() {
            residual.abs()
        } else {
            append(&mut notes, "residual was not finite");
            f64::MAX
        };
        Self {
            check_id: check_id.into(),
            family: family.id(),
            inputs,
            residual,
            tolerance,
            passed: residual <= tolerance,
            notes,
            inconclusive: false,
        }
    }

    pub fn inconclusive(
        check_id: impl Into<String>,
        family: &RhoFamily,
        inputs: BTreeMap<String, Value>,
        tolerance: f64,
        notes: impl Into<String>,
    ) -> Self {
        Self {
            check_id: check_id.into(),
            family: family.id(),
            inputs,
            residual: 1.0_f64.max(2.0 * tolerance),
            tolerance,
            passed: false,
            notes: notes.into(),
            inconclusive: true,
        }
    }

    /// A check that could not run because of `err`; recorded as a failure.
    pub fn errored(check_id: impl Into<String>, family: &RhoFamily, inputs: BTreeMap<String, Value>, tolerance: f64, err: &Error) -> Self {
        Self::measured(check_id, family, inputs, f64::MAX, tolerance, format!("{}: {err}", err.kind()))
    }

    /// Re-judges the residual against a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        if !self.inconclusive {
            self.passed = self.residual <= tolerance;
        }
        self
    }

    /// Passed, or undecided.
    pub fn acceptable(&self) -> bool {
        self.passed || self.inconclusive
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed, self.inconclusive) {
            (true, _) => "pass",
            (false, true) => "inconclusive",
            (false, false) => "FAIL",
        };
        write!(f, "{status:12} {} residual={:.3e} tol={:.1e}", self.check_id, self.residual, self.tolerance)?;
        if !self.notes.is_empty() {
            write!(f, " ({})", self.notes)?;
        }
        Ok(())
    }
}

fn append(notes: &mut String, extra: &str) {
    if !notes.is_empty() {
        notes.push_str("; ");
    }
    notes.push_str(extra);
}

/// Inputs shared by every report: family parameters and the dual flag.
pub fn family_inputs(family: &RhoFamily) -> BTreeMap<String, Value> {
    let mut m = BTreeMap::new();
    m.insert("params".into(), json!(family.params()));
    m.insert("dual".into(), json!(family.is_dual()));
    m
}

pub fn label_value(label: Label) -> Value {
    match label {
        Label::Z(z) => json!({ "z": [z.re, z.im] }),
        Label::Gk { j, gamma } => json!({ "J": j, "gamma": gamma }),
        Label::Evolved { z, t } => json!({ "z": [z.re, z.im], "t": t }),
    }
}

fn state_inputs(state: &CoherentState) -> BTreeMap<String, Value> {
    let mut m = family_inputs(state.family());
    m.insert("label".into(), label_value(state.label()));
    m.insert("dim".into(), json!(state.dim()));
    m.insert("method".into(), json!(state.method().as_str()));
    m
}

pub(crate) fn label_tag(label: Label) -> String {
    match label {
        Label::Z(z) => format!("z={:+.4}{:+.4}i", z.re, z.im),
        Label::Gk { j, gamma } => format!("J={j:.4},gamma={gamma:.4}"),
        Label::Evolved { z, t } => format!("z={:+.4}{:+.4}i,t={t:.4}", z.re, z.im),
    }
}

/// `⟨ψ|X|ψ⟩`.
pub fn expectation(state: &FockVector, op: &FockOperator) -> Result<Complex64> {
    inner_product(state, &op.apply(state)?)
}

/// `‖A|z⟩ − z|z⟩‖` for the family annihilator.
pub fn eigen_residual(state: &CoherentState) -> Result<VerificationReport> {
    let z = match state.label() {
        Label::Z(z) => z,
        other => return Err(Error::UnsupportedLabel(format!("eigen residual needs a z label, got {}", label_tag(other)))),
    };
    let a = build_a(state.family(), state.dim())?;
    let residual = a.apply(state.vector())?.sub(&state.vector().scale(z))?.norm();
    Ok(VerificationReport::measured(
        format!("eigen/{}/{}", state.family(), label_tag(state.label())),
        state.family(),
        state_inputs(state),
        residual,
        EIGEN_TOLERANCE,
        "",
    ))
}

/// Largest entrywise relative deviation `|C − E|/max(1, |E|)` over the trust
/// band.
fn band_deviation(computed: &FockOperator, expected: &FockOperator) -> Result<f64> {
    if computed.dim() != expected.dim() {
        return Err(Error::DimensionMismatch { left: computed.dim(), right: expected.dim() });
    }
    let mut worst = 0.0f64;
    for r in trust_band(computed.dim()) {
        for c in trust_band(computed.dim()) {
            let e = expected.entry(r, c);
            let d = (computed.entry(r, c) - e).norm() / e.norm().max(1.0);
            worst = worst.max(d);
        }
    }
    Ok(worst)
}

fn require_dim(dim: usize, min: usize) -> Result<()> {
    if dim < min {
        Err(Error::InvalidDimension(dim, min))
    } else {
        Ok(())
    }
}

/// The h₄ relations `[A,B†] = I`, `[A,B†A] = A`, `[B†,B†A] = −B†` and
/// `B†A = n̂ = A†B`, checked on the trust band.
pub fn h4_check(family: &RhoFamily, dim: usize) -> Result<VerificationReport> {
    require_dim(dim, 4)?;
    let a = build_a(family, dim)?;
    let a_dag = build_a_dag(family, dim)?;
    let b = build_b(family, dim)?;
    let b_dag = build_b_dag(family, dim)?;
    let id = FockOperator::identity(dim)?;
    let num = crate::fock::number(dim)?;
    let bda = b_dag.compose(&a)?;
    let deviations = [
        ("[A,B†]=I", band_deviation(&commutator(&a, &b_dag)?, &id)?),
        ("[A,B†A]=A", band_deviation(&commutator(&a, &bda)?, &a)?),
        ("[B†,B†A]=-B†", band_deviation(&commutator(&b_dag, &bda)?, &b_dag.scale(Complex64::new(-1.0, 0.0)))?),
        ("B†A=n", band_deviation(&bda, &num)?),
        ("A†B=n", band_deviation(&a_dag.compose(&b)?, &num)?),
    ];
    let (worst_name, residual) = deviations.iter().fold(("", 0.0f64), |acc, &(n, d)| if d > acc.1 { (n, d) } else { acc });
    let mut inputs = family_inputs(family);
    inputs.insert("dim".into(), json!(dim));
    let notes = if residual > 0.0 { format!("largest deviation in {worst_name}") } else { String::new() };
    Ok(VerificationReport::measured(format!("h4/{family}/dim={dim}"), family, inputs, residual, ALGEBRA_TOLERANCE, notes))
}

/// su(1,1) relations for the Barut–Girardello ladder and its
/// Gilmore–Perelomov dual at Bargmann index κ.
pub fn su11_check(kappa: f64, dim: usize) -> Result<VerificationReport> {
    require_dim(dim, 4)?;
    let bg = RhoFamily::with("bg", &[("kappa", kappa)])?;
    let a = build_a(&bg, dim)?;
    let a_dag = build_a_dag(&bg, dim)?;
    let b = build_b(&bg, dim)?;
    let b_dag = build_b_dag(&bg, dim)?;
    let k2 = 2.0 * kappa;
    let rel = |got: Complex64, want: f64| (got - want).norm() / want.abs().max(1.0);

    let mut worst = 0.0f64;
    let [aa, ad, bb] = [commutator(&a, &a_dag)?, commutator(&a, &b_dag)?, commutator(&b, &b_dag)?];
    let ba = commutator(&b, &a_dag)?;
    for n in trust_band(dim) {
        let x = n as f64;
        if n > 0 {
            worst = worst.max(rel(a.entry(n - 1, n), (x * (x + k2 - 1.0)).sqrt()));
            worst = worst.max(rel(b.entry(n - 1, n), (x / (x + k2 - 1.0)).sqrt()));
        }
        worst = worst.max(rel(a_dag.entry(n + 1, n), ((x + k2) * (x + 1.0)).sqrt()));
        worst = worst.max(rel(b_dag.entry(n + 1, n), ((x + 1.0) / (x + k2)).sqrt()));
        worst = worst.max(rel(aa.entry(n, n), 2.0 * (x + kappa)));
        worst = worst.max(rel(bb.entry(n, n), (k2 - 1.0) / ((x + k2) * (x + k2 - 1.0))));
        worst = worst.max(rel(ad.entry(n, n), 1.0));
        worst = worst.max(rel(ba.entry(n, n), 1.0));
    }
    let zero = FockOperator::zeros(dim)?;
    let off = |m: &FockOperator| -> Result<f64> {
        let diag = crate::fock::diagonal_function(dim, |n| m.entry(n, n))?;
        band_deviation(&m.sub(&diag)?, &zero)
    };
    for m in [&aa, &ad, &bb, &ba] {
        worst = worst.max(off(m)?);
    }
    let mut inputs = family_inputs(&bg);
    inputs.insert("kappa".into(), json!(kappa));
    inputs.insert("dim".into(), json!(dim));
    Ok(VerificationReport::measured(
        format!("su11/kappa={kappa}/dim={dim}"),
        &bg,
        inputs,
        worst,
        ALGEBRA_TOLERANCE,
        "[A,A†] asserted as 2(n+κ); the half-commutator L12 = ½[A,A†] carries n+κ (factor-2 discrepancy flagged)",
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianChoice {
    /// `A†A`, diagonal with entries `e_n`.
    NormalOrdered,
    /// `½(AA† + A†A)`.
    Manko,
}

/// `|⟨J,γ|Ĥ|J,γ⟩ − J|` with the normal-ordered Hamiltonian.
pub fn action_identity(family: &RhoFamily, j: f64, gamma: f64, opts: &StateOptions) -> Result<VerificationReport> {
    action_identity_with(family, j, gamma, opts, HamiltonianChoice::NormalOrdered)
}

pub fn action_identity_with(
    family: &RhoFamily,
    j: f64,
    gamma: f64,
    opts: &StateOptions,
    choice: HamiltonianChoice,
) -> Result<VerificationReport> {
    let state = gk_state(family, j, gamma, opts)?;
    let h = match choice {
        HamiltonianChoice::NormalOrdered => hamiltonian(family, state.dim())?,
        HamiltonianChoice::Manko => manko_hamiltonian(family, state.dim())?,
    };
    let energy = expectation(state.vector(), &h)?.re;
    let (tag, notes) = match choice {
        HamiltonianChoice::NormalOrdered => ("action", String::new()),
        HamiltonianChoice::Manko => ("action-manko", format!("⟨H⟩ = {energy}")),
    };
    let mut inputs = state_inputs(&state);
    inputs.insert("hamiltonian".into(), json!(tag));
    Ok(VerificationReport::measured(
        format!("{tag}/{family}/{}", label_tag(state.label())),
        family,
        inputs,
        (energy - j).abs(),
        ACTION_TOLERANCE,
        notes,
    ))
}

/// `‖exp(−iĤt)|J,γ⟩ − |J,γ+t⟩‖`.
pub fn temporal_stability(family: &RhoFamily, j: f64, gamma: f64, t: f64, opts: &StateOptions) -> Result<VerificationReport> {
    let start = gk_state(family, j, gamma, opts)?;
    let fixed = StateOptions { dim: crate::states::Dim::Fixed(start.dim()), ..*opts };
    let target = gk_state(family, j, gamma + t, &fixed)?;
    let moved = evolve(&start, t)?;
    let residual = moved.vector().sub(target.vector())?.norm();
    let mut inputs = state_inputs(&start);
    inputs.insert("t".into(), json!(t));
    Ok(VerificationReport::measured(
        format!("temporal/{family}/{},t={t:.4}", label_tag(start.label())),
        family,
        inputs,
        residual,
        TEMPORAL_TOLERANCE,
        "",
    ))
}

/// Mandel parameter `Q = (⟨n(n−1)⟩ − ⟨n⟩²)/⟨n⟩` by direct summation. The
/// vacuum gives 0 by convention.
pub fn mandel_q(state: &FockVector) -> Result<f64> {
    let p = state.probabilities();
    let total: f64 = p.iter().sum();
    let mean: f64 = p.iter().enumerate().map(|(n, w)| n as f64 * w).sum::<f64>() / total;
    if mean == 0.0 {
        return Ok(0.0);
    }
    if mean < 1e-280 {
        return Err(Error::DegenerateStatistics(format!("mean occupation {mean:e} underflows")));
    }
    let factorial2: f64 = p.iter().enumerate().map(|(n, w)| (n * n.saturating_sub(1)) as f64 * w).sum::<f64>() / total;
    Ok((factorial2 - mean * mean) / mean)
}

/// Mean occupation `⟨n̂⟩`.
pub fn mean_occupation(state: &FockVector) -> f64 {
    let p = state.probabilities();
    let total: f64 = p.iter().sum();
    p.iter().enumerate().map(|(n, w)| n as f64 * w).sum::<f64>() / total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayClass {
    Exponential,
    PolynomialOnCompact,
}

/// Weight `W̃(x) ≥ 0` on `[0, support]` whose moments should reproduce ρ(n).
#[derive(Clone)]
pub struct WeightSpec {
    pub description: String,
    /// Upper end of the support, possibly `f64::INFINITY`.
    pub support: f64,
    pub weight: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub decay: DecayClass,
}

impl fmt::Debug for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightSpec")
            .field("description", &self.description)
            .field("support", &self.support)
            .field("decay", &self.decay)
            .finish()
    }
}

impl WeightSpec {
    pub fn new<W>(description: impl Into<String>, support: f64, decay: DecayClass, weight: W) -> Result<Self>
    where
        W: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if support.is_nan() || support <= 0.0 {
            return Err(Error::Domain(format!("weight support must be positive, got {support}")));
        }
        Ok(Self { description: description.into(), support, weight: Arc::new(weight), decay })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.weight)(x)
    }
}

/// Known weights: `e^{−x}` for the canonical family, `2x` on `[0,1]` for
/// kps-da and `6x(1−x)` on `[0,1]` for kps-db.
pub fn builtin_weight(family: &RhoFamily) -> Option<WeightSpec> {
    if family.is_dual() || family.is_table() {
        return None;
    }
    let spec = match family.id().as_str() {
        "canonical" => WeightSpec::new("exp(-x) on [0,inf)", f64::INFINITY, DecayClass::Exponential, |x| (-x).exp()),
        "kps-da" => WeightSpec::new("2x on [0,1]", 1.0, DecayClass::PolynomialOnCompact, |x| 2.0 * x),
        "kps-db" => WeightSpec::new("6x(1-x) on [0,1]", 1.0, DecayClass::PolynomialOnCompact, |x| 6.0 * x * (1.0 - x)),
        _ => return None,
    };
    spec.ok()
}

const MAX_PANELS: usize = 4000;

/// Moment condition `∫ xⁿ W̃(x) dx = ρ(n)` for `n = 0..=n_max`; residual is
/// the largest relative error. Quadrature that fails to converge yields an
/// inconclusive report.
pub fn moment_check(family: &RhoFamily, weight: &WeightSpec, n_max: usize, quad_tol: f64) -> Result<VerificationReport> {
    if n_max > MAX_MOMENT_ORDER {
        return Err(Error::Domain(format!("moment order {n_max} exceeds {MAX_MOMENT_ORDER}")));
    }
    let mut inputs = family_inputs(family);
    inputs.insert("n_max".into(), json!(n_max));
    inputs.insert("weight".into(), json!(weight.description));
    inputs.insert("decay".into(), json!(weight.decay));
    let id = format!("moments/{family}/n_max={n_max}");
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let integrand = |x: f64| {
            let w = weight.eval(x);
            if w == 0.0 {
                0.0
            } else {
                x.powi(n as i32) * w
            }
        };
        let q = if weight.support.is_infinite() {
            quadrature::integrate_half_line(integrand, quad_tol / 10.0, MAX_PANELS)
        } else {
            quadrature::integrate(integrand, 0.0, weight.support, quad_tol / 10.0, MAX_PANELS)
        };
        if !q.converged {
            return Ok(VerificationReport::inconclusive(
                id,
                family,
                inputs,
                quad_tol,
                format!("quadrature did not converge at n={n} (error estimate {:e})", q.error),
            ));
        }
        let rho = family.ln_rho(n)?.exp();
        worst = worst.max((q.value - rho).abs() / rho);
    }
    Ok(VerificationReport::measured(id, family, inputs, worst, quad_tol, ""))
}

/// Moment check with the built-in weight, or an inconclusive report when the
/// family has none.
pub fn moment_check_builtin(family: &RhoFamily, n_max: usize, quad_tol: f64) -> Result<VerificationReport> {
    match builtin_weight(family) {
        Some(w) => moment_check(family, &w, n_max, quad_tol),
        None => {
            let mut inputs = family_inputs(family);
            inputs.insert("n_max".into(), json!(n_max));
            Ok(VerificationReport::inconclusive(
                format!("moments/{family}/n_max={n_max}"),
                family,
                inputs,
                quad_tol,
                "no weight function available; supply one to decide",
            ))
        }
    }
}
