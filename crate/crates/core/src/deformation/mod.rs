//! Moment sequences ρ(n) and everything derived from them.
//!
//! A [`RhoFamily`] fixes ρ(n) with ρ(0) = 1. From it follow the nonlinearity
//! function `f(n)² = ρ(n) / (n ρ(n−1))`, the spectrum `e_n = ρ(n)/ρ(n−1) = n f(n)²`,
//! the deformed ladder operators `A = a f(n̂)`, the auxiliary pair
//! `B = a / f(n̂)`, and the normal-ordered Hamiltonian `A†A`.
//!
//! Every ρ is evaluated in the log domain; products such as `(n!)³` leave the
//! double range near n = 57 otherwise.

mod catalog;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{annihilator, try_diagonal_function, FockOperator};
use crate::special::{ln_factorial, ln_gamma, ln_gamma_ratio};

pub use catalog::{catalog, lookup, CatalogEntry, ParamSpec, Region};

const DUAL_SUFFIX: &str = "-dual";

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Canonical,
    KpsA { p: u32 },
    Ml { alpha: f64, beta: f64 },
    KpsC,
    KpsD { alpha: f64 },
    KpsE,
    KpsF,
    KpsG,
    KpsH,
    Ps { q: f64 },
    Bg { kappa: f64 },
    Gp { kappa: f64 },
    LlPaper { alpha: f64, m: u32 },
    LlAction { alpha: f64, m: u32 },
    KpsDa,
    KpsDb,
    KpsDc,
    KpsDd,
    KpsDe,
    KpsDf,
    Table(Arc<[f64]>),
}

// hypergeometric disk family, catalogued only at these values
const DE_A: f64 = 0.5;
const DE_B: f64 = 0.5;
const DE_C: f64 = 1.5;

/// A moment sequence ρ(n) with its parameters and a dual flag.
///
/// The dual of ρ is `(n!)² / ρ(n)`; its nonlinearity function is `1/f`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoFamily {
    kind: Kind,
    dual: bool,
}

fn param_err(family: &str, reason: impl Into<String>) -> Error {
    Error::Parameter { family: family.to_string(), reason: reason.into() }
}

fn nonneg_integer(family: &str, name: &str, v: f64) -> Result<u32> {
    if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
        Ok(v as u32)
    } else {
        Err(param_err(family, format!("{name} must be a nonnegative integer, got {v}")))
    }
}

impl RhoFamily {
    /// Builds a catalogued family from its id (or alias) and named parameters.
    ///
    /// Missing parameters take the catalogue defaults; unknown names are
    /// rejected. An id ending in `-dual` yields the dual family.
    pub fn new(id: &str, params: &BTreeMap<String, f64>) -> Result<Self> {
        if let Some(base) = id.strip_suffix(DUAL_SUFFIX) {
            return Ok(Self::new(base, params)?.dual());
        }
        let entry = lookup(id).ok_or_else(|| Error::UnknownFamily(id.to_string()))?;
        let id = entry.id;
        for name in params.keys() {
            if !entry.params.iter().any(|p| p.name == name) {
                return Err(param_err(id, format!("unknown parameter `{name}`")));
            }
        }
        let get = |name: &str| -> Result<f64> {
            let spec = entry.params.iter().find(|p| p.name == name).expect("catalogued parameter");
            let v = params.get(name).copied().unwrap_or(spec.default);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(param_err(id, format!("{name} must be finite")))
            }
        };
        let kappa = || -> Result<f64> {
            let k = get("kappa")?;
            if k < 0.5 {
                return Err(param_err(id, format!("kappa must be >= 1/2, got {k}")));
            }
            if (2.0 * k).fract() != 0.0 {
                log::warn!("{id}: kappa = {k} is off the discrete-series ladder 1/2, 1, 3/2, ...");
            }
            Ok(k)
        };
        let kind = match id {
            "canonical" => Kind::Canonical,
            "kps-a" => Kind::KpsA { p: nonneg_integer(id, "p", get("p")?)? },
            "ml" => {
                let (alpha, beta) = (get("alpha")?, get("beta")?);
                if alpha <= 0.0 || beta <= 0.0 {
                    return Err(param_err(id, "alpha and beta must be positive"));
                }
                Kind::Ml { alpha, beta }
            }
            "kps-c" => Kind::KpsC,
            "kps-d" => {
                let alpha = get("alpha")?;
                if alpha <= -1.0 {
                    return Err(param_err(id, format!("alpha must be > -1, got {alpha}")));
                }
                Kind::KpsD { alpha }
            }
            "kps-e" => Kind::KpsE,
            "kps-f" => Kind::KpsF,
            "kps-g" => Kind::KpsG,
            "kps-h" => Kind::KpsH,
            "ps" => {
                let q = get("q")?;
                if !(q > 0.0 && q <= 1.0) {
                    return Err(param_err(id, format!("q must lie in (0, 1], got {q}")));
                }
                Kind::Ps { q }
            }
            "bg" => Kind::Bg { kappa: kappa()? },
            "gp" => Kind::Gp { kappa: kappa()? },
            "ll-paper" | "ll-action" => {
                let alpha = get("alpha")?;
                if alpha <= -1.0 {
                    return Err(param_err(id, format!("alpha must be > -1, got {alpha}")));
                }
                let m = nonneg_integer(id, "m", get("m")?)?;
                if id == "ll-paper" {
                    Kind::LlPaper { alpha, m }
                } else {
                    Kind::LlAction { alpha, m }
                }
            }
            "kps-da" => Kind::KpsDa,
            "kps-db" => Kind::KpsDb,
            "kps-dc" => Kind::KpsDc,
            "kps-dd" => Kind::KpsDd,
            "kps-de" => Kind::KpsDe,
            "kps-df" => Kind::KpsDf,
            other => unreachable!("catalogue entry {other} without a kind"),
        };
        Ok(Self { kind, dual: false })
    }

    /// A catalogued family with default parameters.
    pub fn named(id: &str) -> Result<Self> {
        Self::new(id, &BTreeMap::new())
    }

    /// Shorthand for `new` with a list of `(name, value)` pairs.
    pub fn with(id: &str, params: &[(&str, f64)]) -> Result<Self> {
        let map = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        Self::new(id, &map)
    }

    /// A user family given by an explicit table ρ(0), ..., ρ(N).
    pub fn table(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(param_err("table", "empty table"));
        }
        if values[0] != 1.0 {
            return Err(param_err("table", format!("rho(0) must be 1, got {}", values[0])));
        }
        if let Some(n) = values.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(param_err("table", format!("rho({n}) must be positive and finite")));
        }
        Ok(Self { kind: Kind::Table(values.into()), dual: false })
    }

    pub fn id(&self) -> String {
        let base = self.base_id();
        if self.dual {
            format!("{base}{DUAL_SUFFIX}")
        } else {
            base.to_string()
        }
    }

    fn base_id(&self) -> &'static str {
        match self.kind {
            Kind::Canonical => "canonical",
            Kind::KpsA { .. } => "kps-a",
            Kind::Ml { .. } => "ml",
            Kind::KpsC => "kps-c",
            Kind::KpsD { .. } => "kps-d",
            Kind::KpsE => "kps-e",
            Kind::KpsF => "kps-f",
            Kind::KpsG => "kps-g",
            Kind::KpsH => "kps-h",
            Kind::Ps { .. } => "ps",
            Kind::Bg { .. } => "bg",
            Kind::Gp { .. } => "gp",
            Kind::LlPaper { .. } => "ll-paper",
            Kind::LlAction { .. } => "ll-action",
            Kind::KpsDa => "kps-da",
            Kind::KpsDb => "kps-db",
            Kind::KpsDc => "kps-dc",
            Kind::KpsDd => "kps-dd",
            Kind::KpsDe => "kps-de",
            Kind::KpsDf => "kps-df",
            Kind::Table(_) => "table",
        }
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        let pairs: Vec<(&str, f64)> = match self.kind {
            Kind::KpsA { p } => vec![("p", p as f64)],
            Kind::Ml { alpha, beta } => vec![("alpha", alpha), ("beta", beta)],
            Kind::KpsD { alpha } => vec![("alpha", alpha)],
            Kind::Ps { q } => vec![("q", q)],
            Kind::Bg { kappa } | Kind::Gp { kappa } => vec![("kappa", kappa)],
            Kind::LlPaper { alpha, m } | Kind::LlAction { alpha, m } => {
                vec![("alpha", alpha), ("m", m as f64)]
            }
            _ => vec![],
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// Fock level at which the ladder starts (m for the Landau-level
    /// families, 0 otherwise). Operators and states are indexed by the shifted
    /// ladder index k = n − offset.
    pub fn base_offset(&self) -> usize {
        match self.kind {
            Kind::LlPaper { m, .. } | Kind::LlAction { m, .. } => m as usize,
            _ => 0,
        }
    }

    /// Catalogue entry of the underlying (non-dual) family; `None` for tables.
    pub fn catalog_entry(&self) -> Option<&'static CatalogEntry> {
        lookup(self.base_id())
    }

    /// Largest level with a defined ρ (tables only).
    pub fn max_level(&self) -> Option<usize> {
        match &self.kind {
            Kind::Table(v) => Some(v.len() - 1),
            _ => None,
        }
    }

    pub fn is_table(&self) -> bool {
        matches!(self.kind, Kind::Table(_))
    }

    /// The same family with the dual flag toggled.
    pub fn dual(&self) -> Self {
        Self { kind: self.kind.clone(), dual: !self.dual }
    }

    fn check_level(&self, n: usize) -> Result<()> {
        match &self.kind {
            Kind::Table(v) if n >= v.len() => Err(Error::Domain(format!(
                "level {n} beyond the supplied table (last level {})",
                v.len() - 1
            ))),
            _ => Ok(()),
        }
    }

    fn base_ln_rho(&self, n: usize) -> Result<f64> {
        self.check_level(n)?;
        let x = n as f64;
        let lf = ln_factorial(n as u64);
        Ok(match &self.kind {
            Kind::Canonical => lf,
            Kind::KpsA { p } => {
                let p = *p as f64;
                ln_gamma(x + p + 1.0) - ln_gamma(p + 1.0)
            }
            Kind::Ml { alpha, beta } => ln_gamma(alpha * x + beta) - ln_gamma(*beta),
            Kind::KpsC => lf - (x + 1.0).ln(),
            Kind::KpsD { alpha } => ln_gamma(x + 1.0 + alpha) - ln_gamma(1.0 + alpha) - (x + 1.0).ln(),
            Kind::KpsE => 2.0 * lf,
            Kind::KpsF => 3.0 * lf,
            Kind::KpsG => lf + ln_gamma(x + 4.0 / 3.0) - ln_gamma(4.0 / 3.0),
            Kind::KpsH => 3.0 * lf + ln_gamma(1.5) - ln_gamma(x + 1.5),
            Kind::Ps { q } => lf - x * (x - 1.0) * q.ln(),
            Kind::Bg { kappa } => lf + ln_gamma(x + 2.0 * kappa) - ln_gamma(2.0 * kappa),
            Kind::Gp { kappa } => lf + ln_gamma(2.0 * kappa) - ln_gamma(x + 2.0 * kappa),
            Kind::LlAction { alpha, m } => {
                let s = alpha + *m as f64 + 1.0;
                lf + ln_gamma(x + s) - ln_gamma(s)
            }
            Kind::LlPaper { alpha, m } => {
                let s = alpha + *m as f64 + 1.0;
                2.0 * (lf + ln_gamma(x + s) - ln_gamma(s))
            }
            Kind::KpsDa => 2f64.ln() - (x + 2.0).ln(),
            Kind::KpsDb => 6f64.ln() - (x + 2.0).ln() - (x + 3.0).ln(),
            Kind::KpsDc => (std::f64::consts::PI / 4.0).ln() + 2.0 * lf - 2.0 * ln_gamma(x + 1.5),
            Kind::KpsDd => {
                (3.0 * std::f64::consts::PI / 8.0).ln() + lf + ln_gamma(x + 2.0)
                    - ln_gamma(x + 1.5)
                    - ln_gamma(x + 2.5)
            }
            Kind::KpsDe => {
                let (a, b, c) = (DE_A, DE_B, DE_C);
                ln_gamma(1.0 + c - a) + ln_gamma(1.0 + c - b) - ln_gamma(1.0 + c - a - b)
                    + lf
                    + ln_gamma(x + 1.0 + c - a - b)
                    - ln_gamma(x + 1.0 + c - a)
                    - ln_gamma(x + 1.0 + c - b)
            }
            Kind::KpsDf => 3f64.ln() + ln_gamma(2.5) + ln_gamma(x + 2.0) - (x + 3.0).ln() - ln_gamma(x + 2.5),
            Kind::Table(v) => v[n].ln(),
        })
    }

    /// `ln e_n = ln[ρ(n)/ρ(n−1)]` for n ≥ 1, from the factor structure of ρ
    /// rather than a difference of two large logarithms.
    fn base_ln_e(&self, n: usize) -> Result<f64> {
        debug_assert!(n >= 1);
        self.check_level(n)?;
        let x = n as f64;
        Ok(match &self.kind {
            Kind::Canonical => x.ln(),
            Kind::KpsA { p } => (x + *p as f64).ln(),
            Kind::Ml { alpha, beta } => ln_gamma_ratio(alpha * (x - 1.0) + beta, *alpha),
            Kind::KpsC => 2.0 * x.ln() - (x + 1.0).ln(),
            Kind::KpsD { alpha } => (x + alpha).ln() + x.ln() - (x + 1.0).ln(),
            Kind::KpsE => 2.0 * x.ln(),
            Kind::KpsF => 3.0 * x.ln(),
            Kind::KpsG => x.ln() + (x + 1.0 / 3.0).ln(),
            Kind::KpsH => 3.0 * x.ln() - (x + 0.5).ln(),
            Kind::Ps { q } => x.ln() - 2.0 * (x - 1.0) * q.ln(),
            Kind::Bg { kappa } => x.ln() + (x + 2.0 * kappa - 1.0).ln(),
            Kind::Gp { kappa } => x.ln() - (x + 2.0 * kappa - 1.0).ln(),
            Kind::LlAction { alpha, m } => x.ln() + (x + alpha + *m as f64).ln(),
            Kind::LlPaper { alpha, m } => 2.0 * (x.ln() + (x + alpha + *m as f64).ln()),
            Kind::KpsDa => (x + 1.0).ln() - (x + 2.0).ln(),
            Kind::KpsDb => (x + 1.0).ln() - (x + 3.0).ln(),
            Kind::KpsDc => 2.0 * (x.ln() - (x + 0.5).ln()),
            Kind::KpsDd => x.ln() + (x + 1.0).ln() - (x + 0.5).ln() - (x + 1.5).ln(),
            Kind::KpsDe => {
                x.ln() + (x + DE_C - DE_A - DE_B).ln() - (x + DE_C - DE_A).ln() - (x + DE_C - DE_B).ln()
            }
            Kind::KpsDf => (x + 1.0).ln() + (x + 2.0).ln() - (x + 3.0).ln() - (x + 1.5).ln(),
            Kind::Table(v) => (v[n] / v[n - 1]).ln(),
        })
    }

    /// e_n of the base family by direct arithmetic on the factors of
    /// ρ(n)/ρ(n−1), so that integer spectra come out exact.
    fn base_e(&self, n: usize) -> Result<f64> {
        self.check_level(n)?;
        let x = n as f64;
        Ok(match &self.kind {
            Kind::Canonical => x,
            Kind::KpsA { p } => x + *p as f64,
            Kind::Ml { alpha, beta } => {
                let start = alpha * (x - 1.0) + beta;
                if alpha.fract() == 0.0 && *alpha <= 64.0 {
                    (0..*alpha as u32).map(|k| start + k as f64).product()
                } else {
                    ln_gamma_ratio(start, *alpha).exp()
                }
            }
            Kind::KpsC => x * x / (x + 1.0),
            Kind::KpsD { alpha } => x * (x + alpha) / (x + 1.0),
            Kind::KpsE => x * x,
            Kind::KpsF => x * x * x,
            Kind::KpsG => x * (x + 1.0 / 3.0),
            Kind::KpsH => x * x * x / (x + 0.5),
            Kind::Ps { q } => x * q.powf(-2.0 * (x - 1.0)),
            Kind::Bg { kappa } => x * (x + 2.0 * kappa - 1.0),
            Kind::Gp { kappa } => x / (x + 2.0 * kappa - 1.0),
            Kind::LlAction { alpha, m } => x * (x + alpha + *m as f64),
            Kind::LlPaper { alpha, m } => {
                let r = x * (x + alpha + *m as f64);
                r * r
            }
            Kind::KpsDa => (x + 1.0) / (x + 2.0),
            Kind::KpsDb => (x + 1.0) / (x + 3.0),
            Kind::KpsDc => {
                let r = x / (x + 0.5);
                r * r
            }
            Kind::KpsDd => x * (x + 1.0) / ((x + 0.5) * (x + 1.5)),
            Kind::KpsDe => x * (x + DE_C - DE_A - DE_B) / ((x + DE_C - DE_A) * (x + DE_C - DE_B)),
            Kind::KpsDf => (x + 1.0) * (x + 2.0) / ((x + 3.0) * (x + 1.5)),
            Kind::Table(v) => v[n] / v[n - 1],
        })
    }

    /// `ln ρ(n)`.
    pub fn ln_rho(&self, n: usize) -> Result<f64> {
        let base = self.base_ln_rho(n)?;
        if n == 0 {
            return Ok(0.0);
        }
        Ok(if self.dual { 2.0 * ln_factorial(n as u64) - base } else { base })
    }

    /// `ln e_n` for n ≥ 1.
    pub fn ln_e(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::Domain("ln e_0 is -infinity".into()));
        }
        let base = self.base_ln_e(n)?;
        Ok(if self.dual { 2.0 * (n as f64).ln() - base } else { base })
    }

    /// `f(n)` for n ≥ 1.
    pub fn f(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::Domain("f(n) is defined for n >= 1 only".into()));
        }
        let base = (self.base_e(n)? / n as f64).sqrt();
        let v = if self.dual { 1.0 / base } else { base };
        finite(n, v)
    }

    /// `e_n = ρ(n)/ρ(n−1)`, with `e_0 = 0`.
    pub fn e(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Ok(0.0);
        }
        let base = self.base_e(n)?;
        let x = n as f64;
        let v = if self.dual { x * (x / base) } else { base };
        finite(n, v)
    }

    /// `ln T_n = ½ ln(n!/ρ(n))`; the dual is the exact negation.
    pub fn ln_t(&self, n: usize) -> Result<f64> {
        let base = 0.5 * (ln_factorial(n as u64) - self.base_ln_rho(n)?);
        Ok(if self.dual { -base } else { base })
    }

    /// f with the builder convention `f(0) = 1`. The value multiplies `a|0⟩ = 0`
    /// and never reaches an observable.
    fn f_or_one(&self, n: usize) -> Result<f64> {
        if n == 0 {
            Ok(1.0)
        } else {
            self.f(n)
        }
    }

    pub fn nonlinearity(&self) -> NonlinearityFn {
        NonlinearityFn { family: self.clone() }
    }

    pub fn spectrum(&self) -> SpectrumView {
        SpectrumView { family: self.clone() }
    }
}

fn finite(level: usize, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation { level, reason: format!("value {v} out of double range") })
    }
}

impl std::fmt::Display for RhoFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.id())?;
        let params = self.params();
        if !params.is_empty() {
            let parts: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Evaluator of f(n) for a fixed family.
#[derive(Debug, Clone)]
pub struct NonlinearityFn {
    family: RhoFamily,
}

impl NonlinearityFn {
    pub fn family(&self) -> &RhoFamily {
        &self.family
    }

    pub fn eval(&self, n: usize) -> Result<f64> {
        self.family.f(n)
    }
}

/// Evaluator of the spectrum e_n for a fixed family.
#[derive(Debug, Clone)]
pub struct SpectrumView {
    family: RhoFamily,
}

impl SpectrumView {
    pub fn family(&self) -> &RhoFamily {
        &self.family
    }

    pub fn eval(&self, n: usize) -> Result<f64> {
        self.family.e(n)
    }
}

pub fn rho_log(family: &RhoFamily, n: usize) -> Result<f64> {
    family.ln_rho(n)
}

pub fn f_eval(family: &RhoFamily, n: usize) -> Result<f64> {
    family.f(n)
}

pub fn e_eval(family: &RhoFamily, n: usize) -> Result<f64> {
    family.e(n)
}

pub fn dual_of(family: &RhoFamily) -> RhoFamily {
    family.dual()
}

fn check_builder_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        Err(Error::InvalidDimension(dim, 2))
    } else {
        Ok(())
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `A = a f(n̂)`, so that `A|n⟩ = √e_n |n−1⟩`.
pub fn build_a(family: &RhoFamily, dim: usize) -> Result<FockOperator> {
    check_builder_dim(dim)?;
    let f = try_diagonal_function(dim, |n| family.f_or_one(n).map(real))?;
    annihilator(dim)?.compose(&f)
}

pub fn build_a_dag(family: &RhoFamily, dim: usize) -> Result<FockOperator> {
    Ok(build_a(family, dim)?.adjoint())
}

/// `B = a / f(n̂)`.
pub fn build_b(family: &RhoFamily, dim: usize) -> Result<FockOperator> {
    check_builder_dim(dim)?;
    let inv = try_diagonal_function(dim, |n| {
        let f = family.f_or_one(n)?;
        if f == 0.0 {
            Err(Error::Evaluation { level: n, reason: "f(n) = 0, 1/f undefined".into() })
        } else {
            Ok(real(1.0 / f))
        }
    })?;
    annihilator(dim)?.compose(&inv)
}

pub fn build_b_dag(family: &RhoFamily, dim: usize) -> Result<FockOperator> {
    Ok(build_b(family, dim)?.adjoint())
}

/// Normal-ordered Hamiltonian `Ĥ = n̂ f²(n̂) = A†A = diag(e_n)`.
pub fn hamiltonian(family: &RhoFamily, dim: usize) -> Result<FockOperator> {
    try_diagonal_function(dim, |n| family.e(n).map(real))
}

/// Symmetrized Hamiltonian `½(AA† + A†A)`. The top level only sees `A†A`
/// because the truncated `A†` annihilates |N⟩.
pub fn manko_hamiltonian(family: &RhoFamily, dim: usize) -> Result<FockOperator> {
    let a = build_a(family, dim)?;
    let ad = a.adjoint();
    Ok(a.compose(&ad)?.add(&ad.compose(&a)?)?.scale(real(0.5)))
}

/// Outcome of the convergence-radius estimate `lim n f(n)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Radius {
    Finite(f64),
    Infinite,
    /// No trend could be established (oscillation, or a user table without
    /// asymptotics).
    Indeterminate,
}

impl Radius {
    /// Bound on |z|² (or on J) for a convergent state, if finite.
    pub fn finite(self) -> Option<f64> {
        match self {
            Radius::Finite(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RadiusOptions {
    /// e_n above this value is taken as divergence.
    pub divergence_threshold: f64,
    pub max_doublings: u32,
    pub tolerance: f64,
}

impl Default for RadiusOptions {
    fn default() -> Self {
        Self { divergence_threshold: 1e12, max_doublings: 40, tolerance: 1e-9 }
    }
}

pub fn radius_of_convergence(family: &RhoFamily) -> Result<Radius> {
    radius_with(family, &RadiusOptions::default())
}

/// Estimates `lim_{n→∞} n f(n)² = lim e_n` from e at n = 16·2^k.
///
/// Two Richardson passes remove 1/n and 1/n² corrections. A stable positive
/// growth exponent `log2(e(2n)/e(n))` reads as divergence, a stable negative
/// one as a zero limit.
pub fn radius_with(family: &RhoFamily, opts: &RadiusOptions) -> Result<Radius> {
    if family.is_table() {
        return Ok(Radius::Indeterminate);
    }
    let mut values: Vec<f64> = Vec::new();
    let mut first: Vec<f64> = Vec::new();
    let mut second: Vec<f64> = Vec::new();
    let mut exponents: Vec<f64> = Vec::new();
    for k in 0..opts.max_doublings {
        let n = 16usize << k;
        let e = match family.e(n) {
            Ok(v) => v,
            Err(Error::Evaluation { .. }) => f64::INFINITY,
            Err(other) => return Err(other),
        };
        if e > opts.divergence_threshold {
            return Ok(Radius::Infinite);
        }
        if e < f64::MIN_POSITIVE {
            return Ok(Radius::Finite(0.0));
        }
        if let Some(&prev) = values.last() {
            first.push(2.0 * e - prev);
            exponents.push((e / prev).log2());
        }
        values.push(e);
        if first.len() >= 2 {
            let r1 = first[first.len() - 1];
            let r0 = first[first.len() - 2];
            second.push((4.0 * r1 - r0) / 3.0);
        }
        if second.len() >= 2 {
            let s1 = second[second.len() - 1];
            let s0 = second[second.len() - 2];
            if (s1 - s0).abs() <= opts.tolerance * s1.abs().max(1.0) {
                let limit = if s1.abs() <= opts.tolerance { 0.0 } else { s1 };
                return Ok(Radius::Finite(limit));
            }
        }
        if exponents.len() >= 3 {
            let t = &exponents[exponents.len() - 3..];
            let stable = (t[2] - t[1]).abs() < 1e-3 && (t[1] - t[0]).abs() < 1e-3;
            if stable && t[2] > 1e-3 {
                return Ok(Radius::Infinite);
            }
            if stable && t[2] < -1e-3 {
                return Ok(Radius::Finite(0.0));
            }
        }
    }
    Ok(Radius::Indeterminate)
}
