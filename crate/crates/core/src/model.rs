//! Signal model for UE-aided front-end calibration.
//!
//! One snapshot received at the `M` antennas is
//!
//! ```text
//! y_t = γ·D·a(φ)·p + D·h·p + n_t
//! ```
//!
//! where `D = diag(d_m·e^{jα_m})` is the unknown front-end response, `a(φ)` is
//! the ULA steering vector, `h ~ CN(0, σ²I)` is the diffuse multipath and
//! `n_t ~ CN(0, N₀I)` is receiver noise. Stacking `T` snapshots (snapshot-major,
//! element `t·M + m`) gives a complex Gaussian with mean `1_T ⊗ γpDa` and
//! covariance `I_T ⊗ N₀I_M + 1·1ᵀ ⊗ σ²DDᴴ`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// Reduces a phase to `(−π, π]`.
pub fn wrap_phase(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::invalid(format!("cannot wrap non-finite phase {x}")));
    }
    Ok(wrap(x))
}

/// Infallible variant of [`wrap_phase`] for values known to be finite.
pub(crate) fn wrap(x: f64) -> f64 {
    let r = x.rem_euclid(TWO_PI);
    if r > PI {
        r - TWO_PI
    } else {
        r
    }
}

/// Per-chain amplitude scaling and phase drift, i.e. the diagonal of `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontEnd {
    d: Vec<f64>,
    alpha: Vec<f64>,
}

impl FrontEnd {
    /// Phases are wrapped into `(−π, π]` on construction.
    pub fn new(d: Vec<f64>, alpha: Vec<f64>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::invalid("front end needs at least one chain"));
        }
        if d.len() != alpha.len() {
            return Err(Error::invalid(format!(
                "amplitude/phase length mismatch: {} vs {}",
                d.len(),
                alpha.len()
            )));
        }
        if let Some(bad) = d.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::invalid(format!("amplitude must be positive, got {bad}")));
        }
        let alpha = alpha.into_iter().map(wrap_phase).collect::<Result<Vec<_>>>()?;
        Ok(Self { d, alpha })
    }

    /// Unit amplitudes and zero phase drift.
    pub fn identity(m: usize) -> Result<Self> {
        Self::new(vec![1.0; m], vec![0.0; m])
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.d
    }

    pub fn phases(&self) -> &[f64] {
        &self.alpha
    }

    /// Complex gain `d_m·e^{jα_m}` of chain `m`.
    pub fn gain(&self, m: usize) -> Complex64 {
        Complex64::from_polar(self.d[m], self.alpha[m])
    }

    pub fn gains(&self) -> DVector<Complex64> {
        DVector::from_fn(self.len(), |m, _| self.gain(m))
    }
}

/// Channel and experiment parameters. All powers are linear.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Antennas / RF chains.
    pub m: usize,
    /// Snapshots per observation window.
    pub t: usize,
    /// LOS amplitude γ.
    pub gamma: f64,
    /// Diffuse multipath power σ².
    pub sigma2: f64,
    /// Per-element complex noise power N₀.
    pub n0: f64,
    /// Dominant angle of arrival, radians.
    pub phi: f64,
    /// Unit-modulus pilot symbol.
    pub pilot: Complex64,
    /// Element spacing in carrier wavelengths.
    pub spacing: f64,
}

impl Scenario {
    pub const DEFAULT_SPACING: f64 = 0.5;

    pub fn new(m: usize, t: usize) -> Self {
        Self {
            m,
            t,
            gamma: 1.0,
            sigma2: 1.0,
            n0: 1.0,
            phi: 0.0,
            pilot: Complex64::new(1.0, 0.0),
            spacing: Self::DEFAULT_SPACING,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.t == 0 {
            return Err(Error::invalid(format!(
                "need M ≥ 1 and T ≥ 1, got M={} T={}",
                self.m, self.t
            )));
        }
        for (name, v) in [("gamma", self.gamma), ("sigma2", self.sigma2), ("n0", self.n0)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be finite and ≥ 0, got {v}")));
            }
        }
        if (self.pilot.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "pilot must have unit modulus, |p| = {}",
                self.pilot.norm()
            )));
        }
        if !(self.spacing > 0.0 && self.spacing.is_finite()) {
            return Err(Error::invalid(format!("spacing must be positive, got {}", self.spacing)));
        }
        if !(self.phi.abs() <= PI / 2.0) {
            return Err(Error::invalid(format!("phi must lie in [−π/2, π/2], got {}", self.phi)));
        }
        Ok(())
    }

    pub(crate) fn check_front_end(&self, fe: &FrontEnd) -> Result<()> {
        self.validate()?;
        if fe.len() != self.m {
            return Err(Error::invalid(format!(
                "front end has {} chains, scenario has M={}",
                fe.len(),
                self.m
            )));
        }
        Ok(())
    }

    pub fn steering(&self) -> Result<DVector<Complex64>> {
        steering_vector(self.phi, self.m, self.spacing)
    }

    /// Copy of this scenario with γ and σ² taken from `xi`, plus the front end
    /// encoded in `xi`.
    pub fn with_params(&self, xi: &ParamVector) -> Result<(Scenario, FrontEnd)> {
        if xi.m() != self.m {
            return Err(Error::invalid(format!(
                "parameter vector is for M={}, scenario has M={}",
                xi.m(),
                self.m
            )));
        }
        let (fe, sigma2, gamma) = xi.to_parts()?;
        let sc = Scenario { gamma, sigma2, ..self.clone() };
        Ok((sc, fe))
    }
}

/// Role of a block of entries in [`ParamVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamRange {
    Amplitude,
    DiffusePower,
    Phase,
    LosAmplitude,
}

/// Index of one unknown inside [`ParamVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamIndex {
    Amplitude(usize),
    DiffusePower,
    Phase(usize),
    LosAmplitude,
}

impl ParamIndex {
    /// Zero-based position for an `m`-chain layout `[d…, σ², α…, γ]`.
    pub fn position(self, m: usize) -> usize {
        match self {
            ParamIndex::Amplitude(k) => k,
            ParamIndex::DiffusePower => m,
            ParamIndex::Phase(k) => m + 1 + k,
            ParamIndex::LosAmplitude => 2 * m + 1,
        }
    }

    pub fn from_position(pos: usize, m: usize) -> Option<Self> {
        match pos {
            p if p < m => Some(ParamIndex::Amplitude(p)),
            p if p == m => Some(ParamIndex::DiffusePower),
            p if p <= 2 * m => Some(ParamIndex::Phase(p - m - 1)),
            p if p == 2 * m + 1 => Some(ParamIndex::LosAmplitude),
            _ => None,
        }
    }

    pub fn range(self) -> ParamRange {
        match self {
            ParamIndex::Amplitude(_) => ParamRange::Amplitude,
            ParamIndex::DiffusePower => ParamRange::DiffusePower,
            ParamIndex::Phase(_) => ParamRange::Phase,
            ParamIndex::LosAmplitude => ParamRange::LosAmplitude,
        }
    }
}

/// The unknowns ξ in block order `[d₁…d_M, σ², α₁…α_M, γ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector {
    m: usize,
    values: Vec<f64>,
}

impl ParamVector {
    pub fn from_parts(fe: &FrontEnd, sigma2: f64, gamma: f64) -> Self {
        let m = fe.len();
        let mut values = Vec::with_capacity(2 * m + 2);
        values.extend_from_slice(fe.amplitudes());
        values.push(sigma2);
        values.extend_from_slice(fe.phases());
        values.push(gamma);
        Self { m, values }
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        let n = values.len();
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!("parameter vector length {n} is not 2M+2")));
        }
        Ok(Self { m: (n - 2) / 2, values: values.to_vec() })
    }

    pub fn to_parts(&self) -> Result<(FrontEnd, f64, f64)> {
        let m = self.m;
        let fe = FrontEnd::new(self.values[..m].to_vec(), self.values[m + 1..2 * m + 1].to_vec())?;
        Ok((fe, self.values[m], self.values[2 * m + 1]))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, idx: ParamIndex) -> f64 {
        self.values[idx.position(self.m)]
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.values[..self.m]
    }

    pub fn phases(&self) -> &[f64] {
        &self.values[self.m + 1..2 * self.m + 1]
    }

    pub fn sigma2(&self) -> f64 {
        self.values[self.m]
    }

    pub fn gamma(&self) -> f64 {
        self.values[2 * self.m + 1]
    }

    /// Copy with `delta` added at zero-based position `pos`.
    pub fn perturbed(&self, pos: usize, delta: f64) -> Self {
        let mut out = self.clone();
        out.values[pos] += delta;
        out
    }
}

/// ULA response `exp(−j·2π·spacing·k·cos φ)`, `k = 0…M−1`.
pub fn steering_vector(phi: f64, m: usize, spacing: f64) -> Result<DVector<Complex64>> {
    if m == 0 {
        return Err(Error::invalid("steering vector needs M ≥ 1"));
    }
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(Error::invalid(format!("spacing must be positive, got {spacing}")));
    }
    let step = -TWO_PI * spacing * phi.cos();
    Ok(DVector::from_fn(m, |k, _| Complex64::from_polar(1.0, step * k as f64)))
}

/// Mean and covariance of the stacked observation vector.
#[derive(Debug, Clone)]
pub struct StackedModel {
    pub mean: DVector<Complex64>,
    pub covariance: DMatrix<Complex64>,
}

impl StackedModel {
    pub fn new(scenario: &Scenario, fe: &FrontEnd) -> Result<Self> {
        Ok(Self {
            mean: build_mean(scenario, fe)?,
            covariance: build_covariance(scenario, fe)?,
        })
    }
}

/// LOS component of one snapshot, `γ·p·D·a(φ)`.
pub(crate) fn los_snapshot(scenario: &Scenario, fe: &FrontEnd) -> Result<DVector<Complex64>> {
    let a = scenario.steering()?;
    let scale = scenario.pilot * scenario.gamma;
    Ok(DVector::from_fn(scenario.m, |m, _| scale * fe.gain(m) * a[m]))
}

/// `1_T ⊗ γ·p·D·a(φ)`.
pub fn build_mean(scenario: &Scenario, fe: &FrontEnd) -> Result<DVector<Complex64>> {
    scenario.check_front_end(fe)?;
    let a = scenario.steering()?;
    Ok(stacked_mean(&fe.gains(), &a, scenario.gamma, scenario.pilot, scenario.t))
}

/// Unchecked core of [`build_mean`].
pub(crate) fn stacked_mean(
    gains: &DVector<Complex64>,
    steering: &DVector<Complex64>,
    gamma: f64,
    pilot: Complex64,
    t: usize,
) -> DVector<Complex64> {
    let m = gains.len();
    DVector::from_fn(m * t, |i, _| gamma * pilot * gains[i % m] * steering[i % m])
}

/// `I_T ⊗ N₀·I_M + 1·1ᵀ ⊗ σ²·D·Dᴴ`.
pub fn build_covariance(scenario: &Scenario, fe: &FrontEnd) -> Result<DMatrix<Complex64>> {
    scenario.check_front_end(fe)?;
    Ok(stacked_covariance(&fe.gains(), scenario.sigma2, scenario.n0, scenario.t))
}

/// Unchecked core of [`build_covariance`].
pub(crate) fn stacked_covariance(
    gains: &DVector<Complex64>,
    sigma2: f64,
    n0: f64,
    t: usize,
) -> DMatrix<Complex64> {
    let m = gains.len();
    let mut c = DMatrix::<Complex64>::zeros(m * t, m * t);
    for tr in 0..t {
        for tc in 0..t {
            for k in 0..m {
                let mut v = sigma2 * gains[k].norm_sqr();
                if tr == tc {
                    v += n0;
                }
                c[(tr * m + k, tc * m + k)] = Complex64::new(v, 0.0);
            }
        }
    }
    c
}

/// Normalized forward DFT matrix, `Q[k, t] = exp(−j2πkt/T)/√T`.
pub fn dft_matrix(t: usize) -> DMatrix<Complex64> {
    let norm = (t as f64).sqrt().recip();
    DMatrix::from_fn(t, t, |k, n| {
        Complex64::from_polar(norm, -TWO_PI * ((k * n) % t) as f64 / t as f64)
    })
}

/// Factorization `C = Q̃ᴴ·Λ·Q̃` with `Q̃ = Q ⊗ I_M`.
///
/// Because `D·Dᴴ` is diagonal, `Λ` is diagonal: its first `M` entries are
/// `σ²T·d_m² + N₀` and every other entry is `N₀`.
#[derive(Debug, Clone)]
pub struct Whitening {
    m: usize,
    q: DMatrix<Complex64>,
    lambda: DVector<f64>,
}

impl Whitening {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> usize {
        self.q.nrows()
    }

    /// The `T×T` DFT factor.
    pub fn q(&self) -> &DMatrix<Complex64> {
        &self.q
    }

    /// Diagonal of `Λ`, length `MT`.
    pub fn lambda(&self) -> &DVector<f64> {
        &self.lambda
    }

    /// Dense `Q ⊗ I_M`.
    pub fn q_tilde(&self) -> DMatrix<Complex64> {
        let (m, t) = (self.m, self.t());
        DMatrix::from_fn(m * t, m * t, |r, c| {
            if r % m == c % m {
                self.q[(r / m, c / m)]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn lambda_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_diagonal(&self.lambda.map(|x| Complex64::new(x, 0.0)))
    }

    /// Dense `Q̃ᴴ·Λ·Q̃`.
    pub fn covariance(&self) -> DMatrix<Complex64> {
        let qt = self.q_tilde();
        qt.adjoint() * self.lambda_matrix() * qt
    }

    /// `Q̃·x` for a stacked vector, without forming `Q̃`.
    pub fn apply(&self, x: &DVector<Complex64>) -> DVector<Complex64> {
        let (m, t) = (self.m, self.t());
        assert_eq!(x.len(), m * t, "stacked vector length");
        DVector::from_fn(m * t, |i, _| {
            let (k, e) = (i / m, i % m);
            (0..t).map(|n| self.q[(k, n)] * x[n * m + e]).sum()
        })
    }

    /// `ln det C = Σ ln λ`.
    pub fn log_det(&self) -> f64 {
        self.lambda.iter().map(|l| l.ln()).sum()
    }
}

pub fn dft_whitening(scenario: &Scenario, fe: &FrontEnd) -> Result<Whitening> {
    scenario.check_front_end(fe)?;
    let (m, t) = (scenario.m, scenario.t);
    let lambda = DVector::from_fn(m * t, |i, _| {
        if i < m {
            scenario.sigma2 * t as f64 * fe.amplitudes()[i].powi(2) + scenario.n0
        } else {
            scenario.n0
        }
    });
    Ok(Whitening { m, q: dft_matrix(t), lambda })
}

/// N₀ that yields the requested linear SNR `Σ d_m²(σ² + γ²) / (M·N₀)`.
pub fn noise_power_for_snr(snr: f64, fe: &FrontEnd, sigma2: f64, gamma: f64) -> Result<f64> {
    if !(snr > 0.0 && snr.is_finite()) {
        return Err(Error::invalid(format!("snr must be positive and finite, got {snr}")));
    }
    let energy: f64 = fe.amplitudes().iter().map(|d| d * d).sum();
    Ok(energy * (sigma2 + gamma * gamma) / (fe.len() as f64 * snr))
}

/// Linear power ratio from decibels.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
