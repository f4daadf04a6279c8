//! Ricean channel realizations and their sample moments.
//!
//! Seed → stream mapping: a realization seeded with `s` uses
//! `ChaCha8Rng::seed_from_u64(s)`. It first draws the `M` diffuse coefficients
//! `h_m`, then the noise `n_{t,m}` in snapshot-major order. Every complex sample
//! takes the real part then the imaginary part, each `N(0, var/2)`. The mapping
//! does not depend on how many threads the caller uses.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::model::{los_snapshot, FrontEnd, Scenario};

/// `M×T` received pilots; column `t` is snapshot `y_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationSet {
    y: DMatrix<Complex64>,
    scenario: Scenario,
}

impl ObservationSet {
    pub fn new(y: DMatrix<Complex64>, scenario: Scenario) -> Result<Self> {
        scenario.validate()?;
        if y.nrows() != scenario.m || y.ncols() != scenario.t {
            return Err(Error::invalid(format!(
                "observation is {}×{}, scenario expects {}×{}",
                y.nrows(),
                y.ncols(),
                scenario.m,
                scenario.t
            )));
        }
        Ok(Self { y, scenario })
    }

    pub fn y(&self) -> &DMatrix<Complex64> {
        &self.y
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    /// Snapshot-major stacking `[y_1; …; y_T]`.
    pub fn stacked(&self) -> DVector<Complex64> {
        // column-major storage is already snapshot-major
        DVector::from_column_slice(self.y.as_slice())
    }

    /// Every entry multiplied by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self { y: &self.y * c, scenario: self.scenario.clone() }
    }
}

pub(crate) fn complex_normal<R: rand::Rng + ?Sized>(rng: &mut R, var: f64) -> Complex64 {
    let s = (var / 2.0).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(s * re, s * im)
}

/// One realization of `y_t = γ·D·a(φ)·p + D·h·p + n_t`, `t = 1…T`.
///
/// The diffuse vector `h` is drawn once and shared by all `T` snapshots.
pub fn synthesize(scenario: &Scenario, fe: &FrontEnd, seed: u64) -> Result<ObservationSet> {
    scenario.check_front_end(fe)?;
    let (m, t) = (scenario.m, scenario.t);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let los = los_snapshot(scenario, fe)?;
    let diffuse: Vec<Complex64> = (0..m)
        .map(|k| fe.gain(k) * complex_normal(&mut rng, scenario.sigma2) * scenario.pilot)
        .collect();
    let mut y = DMatrix::<Complex64>::zeros(m, t);
    for col in 0..t {
        for k in 0..m {
            y[(k, col)] = los[k] + diffuse[k] + complex_normal(&mut rng, scenario.n0);
        }
    }
    ObservationSet::new(y, scenario.clone())
}

/// Raw first and second sample moments of one observation window.
///
/// `cross_block(t, t')` is `y_t·y_{t'}ᴴ`; blocks are formed on demand from the
/// stored snapshots.
#[derive(Debug, Clone)]
pub struct SampleMoments {
    mean_sum: DVector<Complex64>,
    snapshots: DMatrix<Complex64>,
}

impl SampleMoments {
    /// `Σ_t y_t`.
    pub fn mean_sum(&self) -> &DVector<Complex64> {
        &self.mean_sum
    }

    pub fn m(&self) -> usize {
        self.snapshots.nrows()
    }

    pub fn t(&self) -> usize {
        self.snapshots.ncols()
    }

    pub fn cross_block(&self, t: usize, t2: usize) -> DMatrix<Complex64> {
        self.snapshots.column(t) * self.snapshots.column(t2).adjoint()
    }

    /// Diagonal of `cross_block(t, t2)`, i.e. `y_t ⊙ y_{t2}*`.
    pub fn cross_block_diagonal(&self, t: usize, t2: usize) -> DVector<Complex64> {
        self.snapshots.column(t).zip_map(&self.snapshots.column(t2), |a, b| a * b.conj())
    }
}

pub fn sample_moments(obs: &ObservationSet) -> SampleMoments {
    let y = obs.y();
    let mean_sum = y.column_sum();
    SampleMoments { mean_sum, snapshots: y.clone() }
}
