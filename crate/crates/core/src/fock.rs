//! Dense linear algebra on the truncated Fock space spanned by |0⟩..|N⟩.
//!
//! Operators are hard-truncated at level `N = dim - 1`. Shift-matrix identities
//! such as `[a, a†] = I` therefore fail in the last row/column; the algebraic
//! checks elsewhere in the crate restrict themselves to the trust band
//! `n <= N - 2` (see [`trust_band`]).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Levels `0..=N-2` of a `dim`-level space, on which truncated ladder
/// identities hold exactly.
pub fn trust_band(dim: usize) -> std::ops::Range<usize> {
    0..dim.saturating_sub(2)
}

/// Complex amplitudes over Fock levels `0..dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: DVector<Complex64>,
}

impl FockVector {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidDimension(0, 1));
        }
        if let Some(level) = amps.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::Evaluation { level, reason: "non-finite amplitude".into() });
        }
        Ok(Self { amps: DVector::from_vec(amps) })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim, 1)?;
        Ok(Self { amps: DVector::from_element(dim, ZERO) })
    }

    /// The number state |n⟩.
    pub fn basis(dim: usize, n: usize) -> Result<Self> {
        check_dim(dim, 1)?;
        if n >= dim {
            return Err(Error::Domain(format!("level {n} outside a {dim}-level space")));
        }
        let mut v = DVector::from_element(dim, ZERO);
        v[n] = ONE;
        Ok(Self { amps: v })
    }

    pub(crate) fn from_dvector(amps: DVector<Complex64>) -> Self {
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        self.amps.as_slice()
    }

    pub fn amp(&self, n: usize) -> Complex64 {
        self.amps[n]
    }

    pub fn as_dvector(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-12
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Domain(format!("cannot normalize a vector of norm {n}")));
        }
        Ok(Self { amps: &self.amps / Complex64::new(n, 0.0) })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { amps: &self.amps * c }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self { amps: &self.amps - &other.amps })
    }

    /// Occupation probabilities |amp(n)|², not renormalized.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Estimated probability weight beyond the last level, relative to the
    /// total weight held by the vector.
    ///
    /// Geometric extrapolation from the last two nonzero occupations. When the
    /// last ratio is not below one the tail is reported as infinite.
    pub fn tail_mass_estimate(&self) -> f64 {
        let p = self.probabilities();
        let total: f64 = p.iter().sum();
        if total == 0.0 {
            return 0.0;
        }
        let nz: Vec<usize> = (0..p.len()).filter(|&n| p[n] > 0.0).collect();
        match nz.as_slice() {
            [] => 0.0,
            [only] if *only + 1 == p.len() => f64::INFINITY,
            [_] => 0.0,
            [.., prev, last] => {
                // a state that vanishes above some level has no tail
                if *last + 1 < p.len() {
                    return 0.0;
                }
                let ratio = (p[*last] / p[*prev]).powf(1.0 / (*last - *prev) as f64);
                if ratio >= 1.0 {
                    f64::INFINITY
                } else {
                    p[*last] * ratio / (1.0 - ratio) / total
                }
            }
        }
    }
}

/// Dense square operator on the truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    m: DMatrix<Complex64>,
}

impl FockOperator {
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch { left: m.nrows(), right: m.ncols() });
        }
        check_dim(m.nrows(), 1)?;
        Ok(Self { m })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim, 1)?;
        Ok(Self { m: DMatrix::identity(dim, dim) })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim, 1)?;
        Ok(Self { m: DMatrix::from_element(dim, dim, ZERO) })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[(row, col)]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        self.m.diagonal().iter().copied().collect()
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.m[(i, j)] == ZERO))
    }

    pub fn adjoint(&self) -> Self {
        Self { m: self.m.adjoint() }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { m: &self.m * c }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self { m: &self.m + &other.m })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self { m: &self.m - &other.m })
    }

    /// Operator product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self { m: &self.m * &other.m })
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        same_dim(self.dim(), v.dim())?;
        Ok(FockVector::from_dvector(&self.m * &v.amps))
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        self.m
            .column_iter()
            .map(|c| c.iter().map(|x| x.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        same_dim(self.dim(), other.dim())?;
        Ok((&self.m - &other.m).iter().map(|x| x.norm()).fold(0.0, f64::max))
    }
}

fn check_dim(dim: usize, min: usize) -> Result<()> {
    if dim < min {
        Err(Error::InvalidDimension(dim, min))
    } else {
        Ok(())
    }
}

fn same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// Bosonic annihilator: `a|n⟩ = √n |n−1⟩`.
pub fn annihilator(dim: usize) -> Result<FockOperator> {
    check_dim(dim, 1)?;
    let mut m = DMatrix::from_element(dim, dim, ZERO);
    for n in 1..dim {
        m[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    Ok(FockOperator { m })
}

/// Bosonic creator, the conjugate transpose of [`annihilator`]. The top level
/// is mapped to zero.
pub fn creator(dim: usize) -> Result<FockOperator> {
    Ok(annihilator(dim)?.adjoint())
}

/// Number operator `diag(0, 1, ..., N)`.
pub fn number(dim: usize) -> Result<FockOperator> {
    diagonal_function(dim, |n| Complex64::new(n as f64, 0.0))
}

/// Diagonal operator with entries `g(0), ..., g(N)`.
pub fn diagonal_function<G>(dim: usize, g: G) -> Result<FockOperator>
where
    G: Fn(usize) -> Complex64,
{
    try_diagonal_function(dim, |n| Ok(g(n)))
}

/// Like [`diagonal_function`] for a fallible `g`; the first failing level is
/// reported.
pub fn try_diagonal_function<G>(dim: usize, g: G) -> Result<FockOperator>
where
    G: Fn(usize) -> Result<Complex64>,
{
    check_dim(dim, 1)?;
    let mut m = DMatrix::from_element(dim, dim, ZERO);
    for n in 0..dim {
        let v = g(n)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Evaluation { level: n, reason: format!("non-finite value {v}") });
        }
        m[(n, n)] = v;
    }
    Ok(FockOperator { m })
}

/// `exp(X)` by scaling and squaring with a Padé approximant.
///
/// Diagonal inputs take the exact elementwise route.
pub fn matrix_exponential(x: &FockOperator) -> Result<FockOperator> {
    let norm = x.one_norm();
    if !norm.is_finite() {
        return Err(Error::ExponentialOverflow { norm });
    }
    let out = if x.is_diagonal() {
        let dim = x.dim();
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        for n in 0..dim {
            m[(n, n)] = x.m[(n, n)].exp();
        }
        m
    } else {
        x.m.exp()
    };
    if out.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::ExponentialOverflow { norm });
    }
    Ok(FockOperator { m: out })
}

/// Largest 1-norm of a single Taylor step in [`exponential_action`].
const ACTION_STEP_NORM: f64 = 2.0;
const ACTION_MAX_TERMS: usize = 60;

/// `exp(X) v` without forming `exp(X)`.
///
/// The interval is cut into steps of bounded norm and each step is a
/// truncated Taylor series applied to the running vector. Working on the
/// vector keeps each component at its own scale, which matters for badly
/// scaled generators (large entries near the truncation edge, tiny
/// amplitudes there) where a dense exponential loses all componentwise
/// accuracy.
pub fn exponential_action(x: &FockOperator, v: &FockVector) -> Result<FockVector> {
    same_dim(x.dim(), v.dim())?;
    let norm = x.one_norm();
    if !norm.is_finite() {
        return Err(Error::ExponentialOverflow { norm });
    }
    let steps = (norm / ACTION_STEP_NORM).ceil().max(1.0) as usize;
    let h = 1.0 / steps as f64;

    // sparse copy of X/steps; generators here are banded
    let entries: Vec<(usize, usize, Complex64)> = x
        .m
        .iter()
        .enumerate()
        .filter(|(_, val)| **val != ZERO)
        .map(|(k, val)| (k % x.dim(), k / x.dim(), *val * h))
        .collect();
    let matvec = |w: &[Complex64]| {
        let mut out = vec![ZERO; w.len()];
        for &(i, j, val) in &entries {
            out[i] += val * w[j];
        }
        out
    };
    let norm2 = |w: &[Complex64]| w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();

    let mut w: Vec<Complex64> = v.amps().to_vec();
    for _ in 0..steps {
        let mut acc = w.clone();
        let mut term = w;
        let mut converged = false;
        for k in 1..=ACTION_MAX_TERMS {
            term = matvec(&term);
            let inv_k = 1.0 / k as f64;
            term.iter_mut().for_each(|t| *t *= inv_k);
            acc.iter_mut().zip(&term).for_each(|(a, t)| *a += t);
            if norm2(&term) <= f64::EPSILON * 1e-2 * norm2(&acc) {
                converged = true;
                break;
            }
        }
        if !converged || acc.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::ExponentialOverflow { norm });
        }
        w = acc;
    }
    Ok(FockVector::from_dvector(DVector::from_vec(w)))
}

/// `[X, Y] = XY − YX`.
pub fn commutator(x: &FockOperator, y: &FockOperator) -> Result<FockOperator> {
    same_dim(x.dim(), y.dim())?;
    Ok(FockOperator { m: &x.m * &y.m - &y.m * &x.m })
}

/// `⟨u|v⟩`, antilinear in the first argument.
pub fn inner_product(u: &FockVector, v: &FockVector) -> Result<Complex64> {
    same_dim(u.dim(), v.dim())?;
    Ok(u.amps.dotc(&v.amps))
}

pub fn norm(v: &FockVector) -> f64 {
    v.norm()
}

/// `|⟨u|v⟩|² / (‖u‖² ‖v‖²)`, clamped to `[0, 1]`.
pub fn fidelity(u: &FockVector, v: &FockVector) -> Result<f64> {
    let ip = inner_product(u, v)?;
    let nu = u.amps.norm_squared();
    let nv = v.amps.norm_squared();
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::Domain("fidelity with a zero vector".into()));
    }
    Ok((ip.norm_sqr() / nu / nv).clamp(0.0, 1.0))
}
