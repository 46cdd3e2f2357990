//! Coherent-state construction.
//!
//! The same family state can be reached three ways: the series
//! `Σ zⁿ/√ρ(n) |n⟩`, the generalized displacement `exp(zB† − z*A)|0⟩`, and the
//! diagonal `T` operator applied to a canonical coherent state. The last two
//! realize a nonunitary representation, so their raw outputs carry a norm
//! other than one; every route renormalizes and agreement is judged by
//! fidelity.

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::deformation::{build_a, build_b, radius_of_convergence, Radius, RhoFamily};
use crate::error::{Error, Result};
use crate::fock::{exponential_action, FockOperator, FockVector};

/// First dimension tried by automatic selection.
pub const AUTO_START_DIM: usize = 16;
/// Hard cap for automatic selection.
pub const MAX_DIM: usize = 512;
/// Largest |z|/√R allowed when the convergence radius R is finite.
pub const DISK_FRACTION: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateOptions {
    pub dim: Dim,
    /// Largest accepted tail-mass estimate.
    pub tail_tolerance: f64,
    /// Skip the domain and tail checks.
    pub force: bool,
    pub max_dim: usize,
}

impl Default for StateOptions {
    fn default() -> Self {
        Self { dim: Dim::Auto, tail_tolerance: 1e-10, force: false, max_dim: MAX_DIM }
    }
}

impl StateOptions {
    pub fn fixed(dim: usize) -> Self {
        Self { dim: Dim::Fixed(dim), ..Self::default() }
    }

    pub fn forced(dim: usize) -> Self {
        Self { dim: Dim::Fixed(dim), force: true, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Displacement,
    TOperator,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Displacement => "displacement",
            Method::TOperator => "t-operator",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(Method::Series),
            "displacement" => Ok(Method::Displacement),
            "t-operator" => Ok(Method::TOperator),
            other => Err(Error::Domain(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Label {
    Z(Complex64),
    Gk { j: f64, gamma: f64 },
    /// A z-labelled state after free evolution for time `t`.
    Evolved { z: Complex64, t: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone)]
pub struct CoherentState {
    family: RhoFamily,
    label: Label,
    vector: FockVector,
    tail_mass: f64,
    method: Method,
}

impl CoherentState {
    pub fn family(&self) -> &RhoFamily {
        &self.family
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn vector(&self) -> &FockVector {
        &self.vector
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }
}

impl Serialize for CoherentState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CoherentState", 7)?;
        s.serialize_field("family", &self.family.id())?;
        s.serialize_field("params", &self.family.params())?;
        s.serialize_field("label", &LabelRecord(self.label))?;
        s.serialize_field("dim", &self.dim())?;
        let amps: Vec<[f64; 2]> = self.vector.amps().iter().map(|a| [a.re, a.im]).collect();
        s.serialize_field("amplitudes", &amps)?;
        s.serialize_field("tail_mass", &self.tail_mass)?;
        s.serialize_field("method", self.method.as_str())?;
        s.end()
    }
}

struct LabelRecord(Label);

impl Serialize for LabelRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Label::Z(z) => {
                let mut s = serializer.serialize_struct("Label", 1)?;
                s.serialize_field("z", &[z.re, z.im])?;
                s.end()
            }
            Label::Gk { j, gamma } => {
                let mut s = serializer.serialize_struct("Label", 2)?;
                s.serialize_field("J", &j)?;
                s.serialize_field("gamma", &gamma)?;
                s.end()
            }
            Label::Evolved { z, t } => {
                let mut s = serializer.serialize_struct("Label", 2)?;
                s.serialize_field("z", &[z.re, z.im])?;
                s.serialize_field("t", &t)?;
                s.end()
            }
        }
    }
}

/// Rejects labels with `|z|²` (or J) outside the convergent region.
fn check_domain(family: &RhoFamily, abs2: f64, opts: &StateOptions) -> Result<()> {
    if opts.force {
        return Ok(());
    }
    if let Radius::Finite(r) = radius_of_convergence(family)? {
        if abs2 >= r {
            return Err(Error::Domain(format!(
                "|z|² = {abs2} lies outside the convergence region |z|² < {r} of {family}"
            )));
        }
        if abs2.sqrt() > DISK_FRACTION * r.sqrt() {
            return Err(Error::Domain(format!(
                "|z| = {} exceeds {DISK_FRACTION} of the radius {}; normalization converges too slowly",
                abs2.sqrt(),
                r.sqrt()
            )));
        }
    }
    Ok(())
}

/// Normalized vector from per-level log-magnitudes and phases.
fn from_log_amplitudes<M, P>(dim: usize, ln_mag: M, phase: P) -> Result<FockVector>
where
    M: Fn(usize) -> Result<f64>,
    P: Fn(usize) -> Result<f64>,
{
    let mags = (0..dim).map(&ln_mag).collect::<Result<Vec<f64>>>()?;
    let peak = mags.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !peak.is_finite() {
        return Err(Error::Evaluation { level: 0, reason: "no finite amplitude".into() });
    }
    let amps = (0..dim)
        .map(|n| Ok(Complex64::from_polar((mags[n] - peak).exp(), phase(n)?)))
        .collect::<Result<Vec<_>>>()?;
    FockVector::new(amps)?.normalized()
}

fn converged(v: &FockVector) -> bool {
    let p = v.probabilities();
    let peak = p.iter().copied().fold(0.0, f64::max);
    let last = p[p.len() - 1];
    let top3: f64 = p.iter().rev().take(3).sum();
    last / peak < 1e-18 && top3 < 1e-16
}

/// Builds at a fixed dimension, or doubles from [`AUTO_START_DIM`] until the
/// top levels are empty enough.
fn with_dim<B>(family: &RhoFamily, opts: &StateOptions, build: B) -> Result<FockVector>
where
    B: Fn(usize) -> Result<FockVector>,
{
    let cap = match family.max_level() {
        Some(last) => opts.max_dim.min(last + 1),
        None => opts.max_dim,
    };
    match opts.dim {
        Dim::Fixed(d) => {
            if d < 2 {
                return Err(Error::InvalidDimension(d, 2));
            }
            build(d)
        }
        Dim::Auto => {
            let mut d = AUTO_START_DIM.min(cap);
            loop {
                let v = build(d)?;
                if converged(&v) {
                    return Ok(v);
                }
                if d >= cap {
                    if opts.force {
                        return Ok(v);
                    }
                    return Err(Error::Truncation { tail: v.tail_mass_estimate(), tolerance: opts.tail_tolerance, dim: d });
                }
                d = (2 * d).min(cap);
            }
        }
    }
}

fn finish(
    family: RhoFamily,
    label: Label,
    vector: FockVector,
    method: Method,
    opts: &StateOptions,
) -> Result<CoherentState> {
    let tail_mass = vector.tail_mass_estimate();
    if tail_mass > opts.tail_tolerance && !opts.force {
        return Err(Error::Truncation { tail: tail_mass, tolerance: opts.tail_tolerance, dim: vector.dim() });
    }
    Ok(CoherentState { family, label, vector, tail_mass, method })
}

fn vacuum_dim(opts: &StateOptions) -> Result<usize> {
    match opts.dim {
        Dim::Fixed(d) if d < 2 => Err(Error::InvalidDimension(d, 2)),
        Dim::Fixed(d) => Ok(d),
        Dim::Auto => Ok(AUTO_START_DIM),
    }
}

fn vacuum(family: RhoFamily, label: Label, method: Method, opts: &StateOptions) -> Result<CoherentState> {
    let vector = FockVector::basis(vacuum_dim(opts)?, 0)?;
    Ok(CoherentState { family, label, vector, tail_mass: 0.0, method })
}

fn check_z(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("label z = {z} is not finite")))
    }
}

fn series_vector(family: &RhoFamily, z: Complex64, opts: &StateOptions) -> Result<FockVector> {
    let ln_abs = z.norm().ln();
    let arg = z.arg();
    with_dim(family, opts, |dim| {
        from_log_amplitudes(
            dim,
            |n| Ok(n as f64 * ln_abs - 0.5 * family.ln_rho(n)?),
            |n| Ok(n as f64 * arg),
        )
    })
}

/// `|z⟩ ∝ Σ zⁿ/√ρ(n) |n⟩`, normalized by direct summation.
pub fn cs_series(family: &RhoFamily, z: Complex64, opts: &StateOptions) -> Result<CoherentState> {
    check_z(z)?;
    check_domain(family, z.norm_sqr(), opts)?;
    if z.norm() == 0.0 {
        return vacuum(family.clone(), Label::Z(z), Method::Series, opts);
    }
    let v = series_vector(family, z, opts)?;
    finish(family.clone(), Label::Z(z), v, Method::Series, opts)
}

fn displacement_dim(family: &RhoFamily, z: Complex64, opts: &StateOptions) -> Result<usize> {
    match opts.dim {
        Dim::Fixed(d) => Ok(d),
        Dim::Auto => Ok(series_vector(family, z, opts)?.dim()),
    }
}

fn displaced_vacuum(generator: &FockOperator) -> Result<FockVector> {
    let vac = FockVector::basis(generator.dim(), 0)?;
    exponential_action(generator, &vac)?.normalized()
}

/// `exp(zB† − z*A)|0⟩`, renormalized.
pub fn cs_displacement(family: &RhoFamily, z: Complex64, opts: &StateOptions) -> Result<CoherentState> {
    check_z(z)?;
    check_domain(family, z.norm_sqr(), opts)?;
    if z.norm() == 0.0 {
        return vacuum(family.clone(), Label::Z(z), Method::Displacement, opts);
    }
    let dim = displacement_dim(family, z, opts)?;
    let a = build_a(family, dim)?;
    let b_dag = build_b(family, dim)?.adjoint();
    let generator = b_dag.scale(z).sub(&a.scale(z.conj()))?;
    let v = displaced_vacuum(&generator)?;
    finish(family.clone(), Label::Z(z), v, Method::Displacement, opts)
}

/// `exp(zA† − z*B)|0⟩`, renormalized: the dual state, labelled with the dual
/// family.
pub fn cs_dual_displacement(family: &RhoFamily, z: Complex64, opts: &StateOptions) -> Result<CoherentState> {
    check_z(z)?;
    let dual = family.dual();
    check_domain(&dual, z.norm_sqr(), opts)?;
    if z.norm() == 0.0 {
        return vacuum(dual, Label::Z(z), Method::Displacement, opts);
    }
    let dim = displacement_dim(&dual, z, opts)?;
    let a_dag = build_a(family, dim)?.adjoint();
    let b = build_b(family, dim)?;
    let generator = a_dag.scale(z).sub(&b.scale(z.conj()))?;
    let v = displaced_vacuum(&generator)?;
    finish(dual, Label::Z(z), v, Method::Displacement, opts)
}

/// Diagonal operator `T = Σ √(n!/ρ(n)) |n⟩⟨n|`, kept in log form.
#[derive(Debug, Clone)]
pub struct TOperator {
    family: RhoFamily,
    ln_diag: Vec<f64>,
}

impl TOperator {
    pub fn new(family: &RhoFamily, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0, 1));
        }
        let ln_diag = (0..dim).map(|n| family.ln_t(n)).collect::<Result<Vec<_>>>()?;
        Ok(Self { family: family.clone(), ln_diag })
    }

    pub fn family(&self) -> &RhoFamily {
        &self.family
    }

    pub fn dim(&self) -> usize {
        self.ln_diag.len()
    }

    pub fn ln_entries(&self) -> &[f64] {
        &self.ln_diag
    }

    /// Diagonal entries; may overflow to infinity at large n.
    pub fn entries(&self) -> Vec<f64> {
        self.ln_diag.iter().map(|x| x.exp()).collect()
    }

    /// `T⁻¹ = Σ √(ρ(n)/n!) |n⟩⟨n|`, which is the T operator of the dual family.
    pub fn inverse(&self) -> Result<Self> {
        if let Some(n) = self.ln_diag.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonInvertible(n));
        }
        Ok(Self { family: self.family.dual(), ln_diag: self.ln_diag.iter().map(|x| -x).collect() })
    }

    pub fn to_operator(&self) -> Result<FockOperator> {
        crate::fock::diagonal_function(self.dim(), |n| Complex64::new(self.ln_diag[n].exp(), 0.0))
    }

    /// `T v` rescaled to unit norm. Magnitudes are combined in log form so
    /// that entries and amplitudes outside the double range still meet.
    pub fn apply_normalized(&self, v: &FockVector) -> Result<FockVector> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: v.dim() });
        }
        let logs: Vec<f64> = v
            .amps()
            .iter()
            .zip(&self.ln_diag)
            .map(|(a, t)| if a.norm() == 0.0 { f64::NEG_INFINITY } else { a.norm().ln() + t })
            .collect();
        let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !peak.is_finite() {
            return Err(Error::Domain("T applied to a zero vector".into()));
        }
        let amps = v
            .amps()
            .iter()
            .zip(&logs)
            .map(|(a, l)| if a.norm() == 0.0 { *a } else { Complex64::from_polar((l - peak).exp(), a.arg()) })
            .collect();
        FockVector::new(amps)?.normalized()
    }
}

/// Applies `T` (forward) or `T⁻¹` (inverse) of `family` to `input` and
/// renormalizes. On a canonical coherent state, forward gives the family state
/// and inverse its dual.
pub fn t_apply(family: &RhoFamily, direction: Direction, input: &CoherentState) -> Result<CoherentState> {
    let t = TOperator::new(family, input.dim())?;
    let t = match direction {
        Direction::Forward => t,
        Direction::Inverse => t.inverse()?,
    };
    let v = t.apply_normalized(input.vector())?;
    let tail_mass = v.tail_mass_estimate();
    Ok(CoherentState { family: t.family().clone(), label: input.label(), vector: v, tail_mass, method: Method::TOperator })
}

/// Two-parameter state `|J, γ⟩ ∝ Σ J^{n/2} e^{−i e_n γ}/√ρ(n) |n⟩`.
pub fn gk_state(family: &RhoFamily, j: f64, gamma: f64, opts: &StateOptions) -> Result<CoherentState> {
    if !(j.is_finite() && j >= 0.0) {
        return Err(Error::Domain(format!("J must be a nonnegative real, got {j}")));
    }
    if !gamma.is_finite() {
        return Err(Error::Domain(format!("gamma must be finite, got {gamma}")));
    }
    check_domain(family, j, opts)?;
    let label = Label::Gk { j, gamma };
    if j == 0.0 {
        return vacuum(family.clone(), label, Method::Series, opts);
    }
    let half_ln_j = 0.5 * j.ln();
    let v = with_dim(family, opts, |dim| {
        from_log_amplitudes(
            dim,
            |n| Ok(n as f64 * half_ln_j - 0.5 * family.ln_rho(n)?),
            |n| Ok(-family.e(n)? * gamma),
        )
    })?;
    finish(family.clone(), label, v, Method::Series, opts)
}

/// Free evolution `exp(−iĤt)` with the normal-ordered Hamiltonian (ħ = ω = 1).
pub fn evolve(state: &CoherentState, t: f64) -> Result<CoherentState> {
    let family = state.family();
    let amps = state
        .vector()
        .amps()
        .iter()
        .enumerate()
        .map(|(n, a)| Ok(a * Complex64::from_polar(1.0, -family.e(n)? * t)))
        .collect::<Result<Vec<_>>>()?;
    let label = match state.label() {
        Label::Gk { j, gamma } => Label::Gk { j, gamma: gamma + t },
        Label::Z(z) if family.id() == "canonical" => Label::Z(z * Complex64::from_polar(1.0, -t)),
        Label::Z(z) => Label::Evolved { z, t },
        Label::Evolved { z, t: t0 } => Label::Evolved { z, t: t0 + t },
    };
    Ok(CoherentState {
        family: family.clone(),
        label,
        vector: FockVector::new(amps)?,
        tail_mass: state.tail_mass(),
        method: state.method(),
    })
}

/// `ln N(x) = ln Σ_{n<dim} xⁿ/ρ(n)` by log-sum-exp.
pub fn ln_normalization(family: &RhoFamily, x: f64, dim: usize) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let terms = (0..dim).map(|n| Ok(n as f64 * x.ln() - family.ln_rho(n)?)).collect::<Result<Vec<f64>>>()?;
    let peak = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(peak + terms.iter().map(|t| (t - peak).exp()).sum::<f64>().ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::fidelity;

    fn fam(id: &str, params: &[(&str, f64)]) -> RhoFamily {
        RhoFamily::with(id, params).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn series_vacuum_and_canonical() {
        let s = cs_series(&fam("kps-f", &[]), c(0.0, 0.0), &StateOptions::default()).unwrap();
        assert_eq!(s.vector().amp(0), c(1.0, 0.0));
        assert_eq!(s.tail_mass(), 0.0);

        let s = cs_series(&fam("canonical", &[]), c(1.0, 0.0), &StateOptions::fixed(40)).unwrap();
        let mut fact = 1.0;
        for n in 0..40 {
            if n > 0 {
                fact *= n as f64;
            }
            let expect = (-0.5f64).exp() / fact.sqrt();
            assert!((s.vector().amp(n) - c(expect, 0.0)).norm() < 1e-15, "n={n}");
        }
    }

    #[test]
    fn series_kps_e_against_direct_sum() {
        // amplitudes 2ⁿ/n! normalized by N(4) = Σ 4ⁿ/(n!)²
        let s = cs_series(&fam("kps-e", &[]), c(2.0, 0.0), &StateOptions::fixed(30)).unwrap();
        let mut terms = vec![1.0f64];
        for n in 1..30 {
            let prev = terms[n - 1];
            terms.push(prev * 2.0 / n as f64);
        }
        let norm: f64 = terms.iter().map(|t| t * t).sum::<f64>().sqrt();
        for n in 0..30 {
            assert!((s.vector().amp(n).re - terms[n] / norm).abs() < 1e-15);
        }
    }

    #[test]
    fn domain_and_truncation_errors() {
        let disk = fam("kps-da", &[]);
        assert!(matches!(cs_series(&disk, c(1.0, 0.0), &StateOptions::default()), Err(Error::Domain(_))));
        assert!(matches!(cs_series(&disk, c(0.97, 0.0), &StateOptions::default()), Err(Error::Domain(_))));
        assert!(cs_series(&disk, c(0.9, 0.0), &StateOptions::default()).is_ok());
        let err = cs_series(&fam("canonical", &[]), c(2.0, 0.0), &StateOptions::fixed(5)).unwrap_err();
        assert!(matches!(err, Error::Truncation { dim: 5, .. }));
        let forced = cs_series(&fam("canonical", &[]), c(2.0, 0.0), &StateOptions::forced(5)).unwrap();
        assert!(forced.tail_mass() > 1e-2);
        assert!(gk_state(&fam("bg", &[]), -1.0, 0.0, &StateOptions::default()).is_err());
    }

    #[test]
    fn routes_agree_on_examples() {
        let opts = StateOptions::default();
        for (family, z, dim, tol) in [
            (fam("canonical", &[]), c(0.5, 0.0), Dim::Auto, 1e-10),
            (fam("kps-e", &[]), c(0.5, 0.0), Dim::Fixed(30), 1e-8),
            (fam("bg", &[("kappa", 1.5)]), c(1.0, 0.0), Dim::Fixed(60), 1e-8),
        ] {
            let o = StateOptions { dim, ..opts };
            let series = cs_series(&family, z, &o).unwrap();
            let disp = cs_displacement(&family, z, &o).unwrap();
            let f = fidelity(series.vector(), disp.vector()).unwrap();
            assert!(f >= 1.0 - tol, "{family}: {f}");
        }
    }

    #[test]
    fn dual_displacement_examples() {
        let opts = StateOptions::default();
        let can = fam("canonical", &[]);
        let d = cs_dual_displacement(&can, c(0.7, 0.2), &opts).unwrap();
        let s = cs_series(&can, c(0.7, 0.2), &StateOptions::fixed(d.dim())).unwrap();
        assert!(fidelity(d.vector(), s.vector()).unwrap() >= 1.0 - 1e-10);

        // harmonious states: ρ_dual = 1, all coefficients zⁿ
        let e = fam("kps-e", &[]);
        let d = cs_dual_displacement(&e, c(0.9, 0.0), &opts).unwrap();
        assert_eq!(d.family().id(), "kps-e-dual");
        let s = cs_series(&e.dual(), c(0.9, 0.0), &StateOptions::fixed(d.dim())).unwrap();
        assert!(fidelity(d.vector(), s.vector()).unwrap() >= 1.0 - 1e-8);
        for n in 1..20 {
            let ratio = s.vector().amp(n) / s.vector().amp(n - 1);
            assert!((ratio - c(0.9, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn dual_ps_amplitudes() {
        // diverging dual series: only a forced, fixed truncation exists
        let ps = fam("ps", &[("q", 0.8)]);
        let z = c(0.3, 0.0);
        assert!(matches!(cs_series(&ps.dual(), z, &StateOptions::default()), Err(Error::Domain(_))));
        let s = cs_series(&ps.dual(), z, &StateOptions::forced(10)).unwrap();
        let mut raw = Vec::new();
        let mut fact = 1.0f64;
        for n in 0..10 {
            if n > 0 {
                fact *= n as f64;
            }
            let x = n as f64;
            raw.push(0.8f64.powf(-x * (x - 1.0) / 2.0) * 0.3f64.powi(n as i32) / fact.sqrt());
        }
        let norm = raw.iter().map(|r| r * r).sum::<f64>().sqrt();
        for n in 0..10 {
            assert!((s.vector().amp(n).re - raw[n] / norm).abs() < 1e-14, "n={n}");
        }
        let d = cs_dual_displacement(&ps, z, &StateOptions::forced(10)).unwrap();
        assert!(fidelity(d.vector(), s.vector()).unwrap() > 1.0 - 1e-6);
    }

    #[test]
    fn t_operator_examples() {
        let can = fam("canonical", &[]);
        let t = TOperator::new(&can, 10).unwrap();
        assert!(t.entries().iter().all(|&x| x == 1.0));

        let q = 0.6;
        let t = TOperator::new(&fam("ps", &[("q", q)]), 12).unwrap();
        for (n, x) in t.entries().into_iter().enumerate() {
            let expect = q.powf((n * n.saturating_sub(1)) as f64 / 2.0);
            assert!((x - expect).abs() <= 1e-14 * expect);
        }

        let bg = fam("bg", &[("kappa", 2.0)]);
        let t = TOperator::new(&bg, 40).unwrap();
        let ti = TOperator::new(&bg.dual(), 40).unwrap();
        for (x, y) in t.entries().iter().zip(ti.entries()) {
            assert!((x * y - 1.0).abs() <= 2.0 * f64::EPSILON);
        }

        let kps_a = fam("kps-a", &[("p", 1.0)]);
        let z = c(0.7, 0.0);
        let ccs = cs_series(&can, z, &StateOptions::fixed(40)).unwrap();
        let via_t = t_apply(&kps_a, Direction::Forward, &ccs).unwrap();
        let series = cs_series(&kps_a, z, &StateOptions::fixed(40)).unwrap();
        assert!(fidelity(via_t.vector(), series.vector()).unwrap() >= 1.0 - 1e-10);
        let inv = t_apply(&kps_a, Direction::Inverse, &ccs).unwrap();
        assert_eq!(inv.family().id(), "kps-a-dual");
    }

    #[test]
    fn gk_examples() {
        let opts = StateOptions::default();
        let bg = fam("bg", &[("kappa", 2.0)]);
        let g = gk_state(&bg, 0.0, 1.0, &opts).unwrap();
        assert_eq!(g.vector().amp(0), c(1.0, 0.0));

        let g = gk_state(&bg, 0.64, 0.0, &opts).unwrap();
        let s = cs_series(&bg, c(0.8, 0.0), &opts).unwrap();
        for n in 0..g.dim() {
            assert!((g.vector().amp(n) - s.vector().amp(n)).norm() <= 4.0 * f64::EPSILON);
        }

        let can = fam("canonical", &[]);
        let g = gk_state(&can, 1.0, 2.0, &StateOptions::fixed(40)).unwrap();
        let mut fact = 1.0f64;
        for n in 0..40 {
            if n > 0 {
                fact *= n as f64;
            }
            let expect = Complex64::from_polar((-0.5f64).exp() / fact.sqrt(), -2.0 * n as f64);
            assert!((g.vector().amp(n) - expect).norm() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn evolution() {
        let bg = fam("bg", &[("kappa", 2.0)]);
        let g = gk_state(&bg, 0.8, 1.3, &StateOptions::default()).unwrap();
        assert_eq!(evolve(&g, 0.0).unwrap().vector(), g.vector());
        let moved = evolve(&g, 2.7).unwrap();
        assert_eq!(moved.label(), Label::Gk { j: 0.8, gamma: 1.3 + 2.7 });
        let direct = gk_state(&bg, 0.8, 4.0, &StateOptions::fixed(g.dim())).unwrap();
        assert!(moved.vector().sub(direct.vector()).unwrap().norm() <= 1e-12);

        let can = fam("canonical", &[]);
        let z = c(0.6, 0.3);
        let t = 0.9;
        let s = cs_series(&can, z, &StateOptions::fixed(40)).unwrap();
        let moved = evolve(&s, t).unwrap();
        let rotated = z * Complex64::from_polar(1.0, -t);
        assert_eq!(moved.label(), Label::Z(rotated));
        let direct = cs_series(&can, rotated, &StateOptions::fixed(40)).unwrap();
        assert!(fidelity(moved.vector(), direct.vector()).unwrap() > 1.0 - 1e-14);
    }

    #[test]
    fn normalization_sum() {
        let ln_n = ln_normalization(&fam("canonical", &[]), 1.5, 60).unwrap();
        assert!((ln_n - 1.5).abs() < 1e-14);
    }

    #[test]
    fn json_shape() {
        let s = cs_series(&fam("bg", &[("kappa", 1.5)]), c(0.5, 0.0), &StateOptions::fixed(4)).unwrap_or_else(|_| {
            cs_series(&fam("bg", &[("kappa", 1.5)]), c(0.5, 0.0), &StateOptions::forced(4)).unwrap()
        });
        let v = serde_json::to_value(&s).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys.len(), 7);
        for k in ["family", "params", "label", "dim", "amplitudes", "tail_mass", "method"] {
            assert!(keys.contains(&k), "{k}");
        }
        assert_eq!(v["label"]["z"][0], 0.5);
        assert_eq!(v["amplitudes"].as_array().unwrap().len(), 4);
    }
}
