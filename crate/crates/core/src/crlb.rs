//! Fisher information and Cramér–Rao bounds for the calibration unknowns.
//!
//! The information matrix is laid out in [`ParamVector`] order
//! `[d₁…d_M, σ², α₁…α_M, γ]`. With `s_m = σ²T·d_m² + N₀` its nonzero entries are
//!
//! ```text
//! [σ²,σ²]  Σ T²d⁴/s²           [d_m,d_m]  4σ⁴T²d_m²/s_m² + 2Tγ²/s_m
//! [σ²,d_m] 2σ²T²d_m³/s_m²      [d_m,γ]    2T·d_m·γ/s_m
//! [γ,γ]    Σ 2T·d²/s           [α_m,α_m]  2T·d_m²γ²/s_m
//! ```
//!
//! The phase block is exactly decoupled from everything else, so
//! `CRLB(α_m) = s_m / (2T·d_m²γ²)`. The `(d, σ², γ)` block is always
//! singular. Scaling `d → c·d`, `γ → γ/c`, `σ² → σ²/c²` leaves the
//! distribution of the observations unchanged, so
//! `v = (d, −2σ², 0, −γ)` spans its null space. No unbiased estimator of an
//! individual `d_m` has finite variance. Only the direction of `d` is
//! identifiable, and both inversion routes report `+∞` for the amplitude
//! bounds.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{stacked_covariance, stacked_mean, steering_vector, ParamIndex, ParamRange, ParamVector, Scenario};

/// Condition number above which a block of the information matrix is treated
/// as singular.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// Off-diagonal entries at or below this fraction of the largest entry are
/// treated as exact zeros when splitting the matrix into decoupled blocks.
pub const COUPLING_TOLERANCE: f64 = 1e-9;

/// Default relative central-difference step for [`fim_numeric`].
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Real symmetric `(2M+2)×(2M+2)` Fisher information matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FisherInfo {
    m: usize,
    matrix: DMatrix<f64>,
}

impl FisherInfo {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows();
        if n != matrix.ncols() || n < 4 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "information matrix must be (2M+2)×(2M+2), got {}×{}",
                n,
                matrix.ncols()
            )));
        }
        Ok(Self { m: (n - 2) / 2, matrix })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn get(&self, row: ParamIndex, col: ParamIndex) -> f64 {
        self.matrix[(row.position(self.m), col.position(self.m))]
    }
}

/// Per-chain diagonal bounds.
///
/// `chi`/`chi_prime` are the two factors `I⁻¹_ii = χ_i·χ′_i` of the Schur
/// route and are empty for the direct inversion. Entries are `+∞` where the
/// bound is unbounded (parameter not identifiable).
#[derive(Debug, Clone, PartialEq)]
pub struct CrlbReport {
    pub crlb_d: Vec<f64>,
    pub crlb_alpha: Vec<f64>,
    pub chi_d: Vec<f64>,
    pub chi_alpha: Vec<f64>,
    pub chi_prime_d: Vec<f64>,
    pub chi_prime_alpha: Vec<f64>,
    /// Parameter ranges that fell in a singular block, with the block's
    /// condition number.
    pub singular: Vec<(ParamRange, f64)>,
}

impl CrlbReport {
    fn range_bounds<'a>(&self, range: ParamRange, values: &'a [f64]) -> Result<&'a [f64]> {
        if let Some(&(_, condition)) = self.singular.iter().find(|(r, _)| *r == range) {
            return Err(Error::SingularFim { range, condition });
        }
        if values.iter().any(|v| v.is_infinite()) {
            return Err(Error::SingularFim { range, condition: f64::INFINITY });
        }
        Ok(values)
    }

    /// Phase bounds, or `SingularFim` if any of them is unbounded.
    pub fn alpha_bounds(&self) -> Result<&[f64]> {
        self.range_bounds(ParamRange::Phase, &self.crlb_alpha)
    }

    /// Amplitude bounds, or `SingularFim` if any of them is unbounded.
    pub fn amplitude_bounds(&self) -> Result<&[f64]> {
        self.range_bounds(ParamRange::Amplitude, &self.crlb_d)
    }
}

/// High-SNR, large-array asymptotics of the diagonal bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct HighSnrBounds {
    /// `ε = 2Tγ² + (4T² − 1)σ²`.
    pub epsilon: f64,
    /// High-SNR approximation of `χ′_i` for the amplitude indices; `None` when
    /// σ² = 0.
    pub chi_prime_approx: Option<f64>,
    /// `σ²d_i² / (2(γ² + 2σ²))`.
    pub high_snr_d: Vec<f64>,
    /// `σ² / (2γ²)`, `+∞` when γ = 0.
    pub high_snr_alpha: Vec<f64>,
}

/// Scalar building blocks shared by the closed form and the Schur route.
struct Blocks {
    /// `[I]_{d_m,d_m}`
    amp: Vec<f64>,
    /// `[I]_{σ²,d_m}`
    amp_diffuse: Vec<f64>,
    /// `[I]_{d_m,γ}`
    amp_los: Vec<f64>,
    /// `[I]_{α_m,α_m}`
    phase: Vec<f64>,
    /// `[I]_{σ²,σ²}`
    diffuse: f64,
    /// `[I]_{γ,γ}`
    los: f64,
}

fn blocks(xi: &ParamVector, scenario: &Scenario) -> Result<Blocks> {
    if xi.m() != scenario.m {
        return Err(Error::invalid(format!(
            "parameter vector is for M={}, scenario has M={}",
            xi.m(),
            scenario.m
        )));
    }
    if !(scenario.n0 > 0.0 && scenario.n0.is_finite()) {
        return Err(Error::invalid(format!("Fisher information needs N₀ > 0, got {}", scenario.n0)));
    }
    if scenario.t == 0 {
        return Err(Error::invalid("need T ≥ 1"));
    }
    let t = scenario.t as f64;
    let (s2, g, n0) = (xi.sigma2(), xi.gamma(), scenario.n0);
    let d = xi.amplitudes();
    let s: Vec<f64> = d.iter().map(|dm| s2 * t * dm * dm + n0).collect();
    let zip = || d.iter().zip(&s);
    Ok(Blocks {
        amp: zip()
            .map(|(dm, sm)| 4.0 * s2 * s2 * t * t * dm * dm / (sm * sm) + 2.0 * t * g * g / sm)
            .collect(),
        amp_diffuse: zip().map(|(dm, sm)| 2.0 * s2 * t * t * dm.powi(3) / (sm * sm)).collect(),
        amp_los: zip().map(|(dm, sm)| 2.0 * t * dm * g / sm).collect(),
        phase: zip().map(|(dm, sm)| 2.0 * t * dm * dm * g * g / sm).collect(),
        diffuse: zip().map(|(dm, sm)| t * t * dm.powi(4) / (sm * sm)).sum(),
        los: zip().map(|(dm, sm)| 2.0 * dm * dm * t / sm).sum(),
    })
}

/// Closed-form information matrix.
///
/// `scenario` supplies the known N₀ and T. Steering and pilot drop out
/// because both have unit modulus.
pub fn fim_closed_form(xi: &ParamVector, scenario: &Scenario) -> Result<FisherInfo> {
    let b = blocks(xi, scenario)?;
    let m = xi.m();
    let n = 2 * m + 2;
    let sig = ParamIndex::DiffusePower.position(m);
    let los = ParamIndex::LosAmplitude.position(m);
    let mut mat = DMatrix::<f64>::zeros(n, n);
    for k in 0..m {
        let dk = ParamIndex::Amplitude(k).position(m);
        let ak = ParamIndex::Phase(k).position(m);
        mat[(dk, dk)] = b.amp[k];
        mat[(dk, sig)] = b.amp_diffuse[k];
        mat[(sig, dk)] = b.amp_diffuse[k];
        mat[(dk, los)] = b.amp_los[k];
        mat[(los, dk)] = b.amp_los[k];
        mat[(ak, ak)] = b.phase[k];
    }
    mat[(sig, sig)] = b.diffuse;
    mat[(los, los)] = b.los;
    FisherInfo::new(mat)
}

/// Central-difference derivatives `(∂μ/∂ξ_i, ∂C/∂ξ_i)` for every parameter.
pub(crate) fn numeric_derivatives(
    xi: &ParamVector,
    scenario: &Scenario,
    rel_step: f64,
) -> Result<Vec<(DVector<Complex64>, DMatrix<Complex64>)>> {
    if !(rel_step > 0.0 && rel_step.is_finite()) {
        return Err(Error::invalid(format!("finite-difference step must be positive, got {rel_step}")));
    }
    if xi.m() != scenario.m {
        return Err(Error::invalid("parameter vector and scenario disagree on M"));
    }
    let a = steering_vector(scenario.phi, scenario.m, scenario.spacing)?;
    let eval = |p: &ParamVector| {
        let gains = DVector::from_fn(p.m(), |k, _| {
            Complex64::from_polar(p.amplitudes()[k], p.phases()[k])
        });
        (
            stacked_mean(&gains, &a, p.gamma(), scenario.pilot, scenario.t),
            stacked_covariance(&gains, p.sigma2(), scenario.n0, scenario.t),
        )
    };
    Ok((0..xi.len())
        .map(|i| {
            let h = rel_step * xi.as_slice()[i].abs().max(1.0);
            let (mu_p, c_p) = eval(&xi.perturbed(i, h));
            let (mu_m, c_m) = eval(&xi.perturbed(i, -h));
            let scale = Complex64::new(1.0 / (2.0 * h), 0.0);
            ((mu_p - mu_m) * scale, (c_p - c_m) * scale)
        })
        .collect())
}

/// Information matrix from the general complex-Gaussian formula
/// `Tr[∂C_i C⁻¹ ∂C_j C⁻¹] + 2Re[∂μ_iᴴ C⁻¹ ∂μ_j]`, with all derivatives taken by
/// central differences of the stacked mean and covariance.
pub fn fim_numeric(xi: &ParamVector, scenario: &Scenario, rel_step: f64) -> Result<FisherInfo> {
    let derivs = numeric_derivatives(xi, scenario, rel_step)?;
    let gains = DVector::from_fn(xi.m(), |k, _| Complex64::from_polar(xi.amplitudes()[k], xi.phases()[k]));
    let cov = stacked_covariance(&gains, xi.sigma2(), scenario.n0, scenario.t);
    let c_inv = cov
        .cholesky()
        .ok_or_else(|| Error::NumericalDomain("covariance is not positive definite".into()))?
        .inverse();

    let n = xi.len();
    let whitened: Vec<DMatrix<Complex64>> = derivs.iter().map(|(_, dc)| &c_inv * dc).collect();
    let c_inv_dmu: Vec<DVector<Complex64>> = derivs.iter().map(|(dmu, _)| &c_inv * dmu).collect();
    let mut mat = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let (a, b) = (&whitened[i], &whitened[j]);
            let mut trace = Complex64::new(0.0, 0.0);
            for r in 0..a.nrows() {
                for c in 0..a.ncols() {
                    trace += a[(r, c)] * b[(c, r)];
                }
            }
            let mean_term = 2.0 * derivs[i].0.dotc(&c_inv_dmu[j]).re;
            let v = trace.re + mean_term;
            mat[(i, j)] = v;
            mat[(j, i)] = v;
        }
    }
    FisherInfo::new(mat)
}

/// Groups of parameter positions that couple only among themselves.
fn decoupled_blocks(mat: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let n = mat.nrows();
    let scale = mat.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let tol = COUPLING_TOLERANCE * scale;
    let mut label = vec![usize::MAX; n];
    let mut groups = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut members = vec![start];
        label[start] = id;
        let mut cursor = 0;
        while cursor < members.len() {
            let i = members[cursor];
            cursor += 1;
            for j in 0..n {
                if label[j] == usize::MAX && (mat[(i, j)].abs() > tol || mat[(j, i)].abs() > tol) {
                    label[j] = id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }
    groups
}

fn condition_number(block: &DMatrix<f64>) -> f64 {
    let eig = block.clone().symmetric_eigenvalues();
    let max = eig.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let min = eig.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Diagonal of the numerical inverse of `fi` at the amplitude and phase
/// positions.
///
/// The matrix is split into exactly-decoupled blocks and each block is
/// inverted on its own. A block whose condition number exceeds
/// [`SINGULAR_CONDITION`] is singular. Its parameters get `+∞` and it is listed
/// in [`CrlbReport::singular`].
pub fn crlb_diagonal_exact(fi: &FisherInfo) -> Result<CrlbReport> {
    let mat = fi.matrix();
    if (mat - mat.transpose()).amax() > 1e-9 * mat.amax().max(f64::MIN_POSITIVE) {
        return Err(Error::invalid("information matrix is not symmetric"));
    }
    let m = fi.m();
    let mut diag = vec![f64::INFINITY; mat.nrows()];
    let mut singular: Vec<(ParamRange, f64)> = Vec::new();
    for group in decoupled_blocks(mat) {
        let k = group.len();
        let block = DMatrix::from_fn(k, k, |r, c| mat[(group[r], group[c])]);
        let condition = condition_number(&block);
        if condition > SINGULAR_CONDITION || !condition.is_finite() {
            for &pos in &group {
                let range = ParamIndex::from_position(pos, m).expect("position in range").range();
                match singular.iter_mut().find(|(r, _)| *r == range) {
                    Some(entry) => entry.1 = entry.1.max(condition),
                    None => singular.push((range, condition)),
                }
            }
            continue;
        }
        let inv = block
            .clone()
            .cholesky()
            .map(|c| c.inverse())
            .or_else(|| block.try_inverse())
            .ok_or_else(|| Error::NumericalDomain("block inversion failed".into()))?;
        for (r, &pos) in group.iter().enumerate() {
            diag[pos] = inv[(r, r)];
        }
    }
    Ok(CrlbReport {
        crlb_d: (0..m).map(|k| diag[ParamIndex::Amplitude(k).position(m)]).collect(),
        crlb_alpha: (0..m).map(|k| diag[ParamIndex::Phase(k).position(m)]).collect(),
        chi_d: Vec::new(),
        chi_alpha: Vec::new(),
        chi_prime_d: Vec::new(),
        chi_prime_alpha: Vec::new(),
        singular,
    })
}

/// Diagonal bounds via the adjugate / Schur-complement factorization
/// `I⁻¹_ii = χ_i·χ′_i`, evaluated from the closed-form entries.
///
/// For amplitude indices `χ_i = [X⁻¹]_ii` with `X` the information matrix
/// without the γ row and column, i.e. the bound with γ known. `χ′_i` is the
/// correction for estimating γ. Its denominator is the Schur complement
/// of `X`, which vanishes because of the scale ambiguity; `χ′_i` and the
/// amplitude bounds are then `+∞`. For phase indices `χ_i = 1/ζ_i` and
/// `χ′_i = 1`.
pub fn crlb_diagonal_schur(xi: &ParamVector, scenario: &Scenario) -> Result<CrlbReport> {
    let b = blocks(xi, scenario)?;
    let m = xi.m();
    let rho = b.diffuse;
    let w = b.los;
    if b.amp.iter().any(|&p| !(p > 0.0)) {
        return Err(Error::DegenerateSchur("amplitude information vanishes (σ² = γ = 0)".into()));
    }
    let coupling: Vec<f64> = (0..m).map(|j| b.amp_diffuse[j].powi(2) / b.amp[j]).collect();
    let f1 = rho - coupling.iter().sum::<f64>();
    if !(rho > 0.0) || f1.abs() <= 1e-10 * rho {
        return Err(Error::DegenerateSchur(format!(
            "ρ − Σφ′²/φ = {f1:e} relative to ρ = {rho:e}"
        )));
    }
    let los_self: Vec<f64> = (0..m).map(|j| b.amp_los[j].powi(2) / b.amp[j]).collect();
    let los_cross: Vec<f64> = (0..m).map(|j| b.amp_los[j] * b.amp_diffuse[j] / b.amp[j]).collect();
    let sum_self: f64 = los_self.iter().sum();
    let sum_cross: f64 = los_cross.iter().sum();
    let denominator = w - sum_self - sum_cross * sum_cross / f1;
    let schur_vanishes = denominator.abs() <= 1e-9 * w;

    let mut chi_d = Vec::with_capacity(m);
    let mut chi_prime_d = Vec::with_capacity(m);
    let mut crlb_d = Vec::with_capacity(m);
    for i in 0..m {
        let f2 = f1 + coupling[i];
        let chi = f2 / (b.amp[i] * f1);
        let numerator = w - (sum_self - los_self[i]) - (sum_cross - los_cross[i]).powi(2) / f2;
        let chi_prime = if schur_vanishes { f64::INFINITY } else { numerator / denominator };
        chi_d.push(chi);
        chi_prime_d.push(chi_prime);
        crlb_d.push(chi * chi_prime);
    }
    let chi_alpha: Vec<f64> =
        b.phase.iter().map(|&z| if z > 0.0 { 1.0 / z } else { f64::INFINITY }).collect();
    let mut singular = Vec::new();
    if schur_vanishes {
        singular.push((ParamRange::Amplitude, f64::INFINITY));
    }
    if chi_alpha.iter().any(|c| c.is_infinite()) {
        singular.push((ParamRange::Phase, f64::INFINITY));
    }
    Ok(CrlbReport {
        crlb_d,
        crlb_alpha: chi_alpha.clone(),
        chi_d,
        chi_prime_d,
        chi_prime_alpha: vec![1.0; m],
        chi_alpha,
        singular,
    })
}

/// High-SNR closed forms. These are reportable intermediates and are not used
/// by any estimator.
pub fn crlb_high_snr(xi: &ParamVector, t: usize) -> HighSnrBounds {
    let (s2, g) = (xi.sigma2(), xi.gamma());
    let (m, t) = (xi.m() as f64, t as f64);
    let g2 = g * g;
    let epsilon = 2.0 * t * g2 + (4.0 * t * t - 1.0) * s2;
    let chi_prime_approx = (s2 > 0.0).then(|| {
        epsilon * (s2 * m * (2.0 * epsilon - g2) + 2.0 * s2 * s2 + g2 * epsilon + 2.0 * g2 * s2)
            / (s2 * (2.0 * epsilon - g2) * (m * epsilon + s2))
    });
    let alpha = if g > 0.0 { s2 / (2.0 * g2) } else { f64::INFINITY };
    HighSnrBounds {
        epsilon,
        chi_prime_approx,
        high_snr_d: xi.amplitudes().iter().map(|d| s2 * d * d / (2.0 * (g2 + 2.0 * s2))).collect(),
        high_snr_alpha: vec![alpha; xi.m()],
    }
}
