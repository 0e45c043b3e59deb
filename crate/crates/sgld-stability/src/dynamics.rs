//! SGLD kernels.
//!
//! The discrete update is
//!
//! ```text
//! x' = x - eta * grad F(x, B) + sqrt(2 eta / beta) * xi,   xi ~ N(0, I)
//! ```
//!
//! with `F` the (optionally weight-decay regularized) mini-batch average and
//! `B` a uniform size-`k` subset of the dataset. Three variants modify the
//! step: Euclidean projection onto a ball after the move, anisotropic noise
//! `Sigma^(1/2) xi` with `||Sigma||_op <= 1`, and a multistep kernel that
//! splits each update window into finer Euler substeps.
//!
//! [`continuous_window`] advances the fixed-batch diffusion over one window
//! of length `eta` by `substeps_cts` Euler-Maruyama substeps: the batch is
//! frozen for the whole window and only the noise resolution changes. With a
//! single substep and shared draws it coincides with [`sgld_step`] exactly.

use crate::loss::{minibatch_grad, DataSet, LossModel};
use crate::vecmath::{self, all_finite, axpy, check_finite, mat_vec, project_ball};
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Chain iterate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainState {
    pub x: Vec<f64>,
    pub step_index: usize,
}

impl ChainState {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        check_finite(&x, "chain state")?;
        Ok(ChainState { x, step_index: 0 })
    }
}

/// Step variants.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub enum Variant {
    #[default]
    Plain,
    /// Project onto the centered ball of this radius after every move.
    Projected { radius: f64 },
    /// Drive the noise with `Sigma^(1/2) xi` for a symmetric PSD `Sigma`
    /// of operator norm at most 1 (rows of the matrix).
    Anisotropic { sigma: Vec<Vec<f64>> },
    /// Replace each update by `t_sub` Euler substeps with the same batch.
    Multistep { t_sub: usize },
}

/// Kernel hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SgldConfig {
    pub eta: f64,
    pub beta: f64,
    pub k: usize,
    pub lambda: f64,
    pub variant: Variant,
    /// Substeps per window used by [`continuous_window`].
    pub substeps_cts: usize,
    /// Cached square root of the anisotropic covariance.
    #[serde(skip)]
    noise_sqrt: Option<Vec<Vec<f64>>>,
}

impl SgldConfig {
    pub fn new(eta: f64, beta: f64, k: usize, lambda: f64) -> Result<Self> {
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(Error::invalid("eta must be positive and finite"));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::invalid("beta must be positive and finite"));
        }
        if k == 0 {
            return Err(Error::invalid("batch size k must be >= 1"));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::invalid("lambda must be finite and >= 0"));
        }
        Ok(SgldConfig {
            eta,
            beta,
            k,
            lambda,
            variant: Variant::Plain,
            substeps_cts: 64,
            noise_sqrt: None,
        })
    }

    pub fn with_substeps(mut self, substeps: usize) -> Result<Self> {
        if substeps == 0 {
            return Err(Error::invalid("substeps_cts must be >= 1"));
        }
        self.substeps_cts = substeps;
        Ok(self)
    }

    pub fn with_variant(mut self, variant: Variant) -> Result<Self> {
        match &variant {
            Variant::Plain => {}
            Variant::Projected { radius } => {
                if !(*radius > 0.0) {
                    return Err(Error::invalid("projection radius must be positive"));
                }
            }
            Variant::Anisotropic { sigma } => {
                self.noise_sqrt = Some(symmetric_psd_sqrt(sigma)?);
            }
            Variant::Multistep { t_sub } => {
                if *t_sub == 0 {
                    return Err(Error::invalid("multistep variant needs t_sub >= 1"));
                }
            }
        }
        self.variant = variant;
        Ok(self)
    }

    /// Noise scale per window of length `eta`.
    pub fn noise_scale(&self) -> f64 {
        (2.0 * self.eta / self.beta).sqrt()
    }

    fn apply_noise_shape(&self, xi: &[f64]) -> Vec<f64> {
        match &self.noise_sqrt {
            Some(root) => mat_vec(root, xi),
            None => xi.to_vec(),
        }
    }

    fn post_move(&self, x: Vec<f64>) -> Vec<f64> {
        match &self.variant {
            Variant::Projected { radius } => project_ball(&x, *radius),
            _ => x,
        }
    }
}

/// Symmetric PSD square root via eigendecomposition. Eigenvalues below
/// `-1e-8` are rejected; small negatives are clamped to zero. The operator
/// norm must not exceed 1.
pub fn symmetric_psd_sqrt(sigma: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let d = sigma.len();
    if d == 0 || sigma.iter().any(|row| row.len() != d) {
        return Err(Error::invalid("covariance must be square and non-empty"));
    }
    for (i, row) in sigma.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite("covariance entry"));
            }
            if (v - sigma[j][i]).abs() > 1e-10 {
                return Err(Error::invalid("covariance must be symmetric"));
            }
        }
    }
    let mat = nalgebra::DMatrix::from_fn(d, d, |i, j| sigma[i][j]);
    let eig = nalgebra::SymmetricEigen::new(mat);
    let mut vals = eig.eigenvalues.clone();
    for v in vals.iter_mut() {
        if *v < -1e-8 {
            return Err(Error::invalid(format!(
                "covariance has negative eigenvalue {v}"
            )));
        }
        if *v > 1.0 + 1e-9 {
            return Err(Error::invalid(format!(
                "covariance operator norm {v} exceeds 1"
            )));
        }
        *v = v.max(0.0).sqrt();
    }
    let q = &eig.eigenvectors;
    let root = q * nalgebra::DMatrix::from_diagonal(&vals) * q.transpose();
    Ok((0..d)
        .map(|i| (0..d).map(|j| root[(i, j)]).collect())
        .collect())
}

/// One Gaussian draw together with one batch draw.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseDraw {
    pub xi: Vec<f64>,
    pub batch: Vec<usize>,
}

/// Uniform size-`k` subset of `{0, ..., n-1}`, returned sorted.
pub fn sample_minibatch<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Vec<usize>> {
    if k == 0 || k > n {
        return Err(Error::BatchSize { k, n });
    }
    let mut idx = rand::seq::index::sample(rng, n, k).into_vec();
    idx.sort_unstable();
    Ok(idx)
}

/// Batch draw followed by a Gaussian draw; the per-step consumption order.
pub fn draw_noise<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    d: usize,
    rng: &mut R,
) -> Result<NoiseDraw> {
    let batch = sample_minibatch(n, k, rng)?;
    let xi = crate::rng::normal_vector(rng, d);
    Ok(NoiseDraw { xi, batch })
}

/// One discrete SGLD update. Applies to the plain, projected and
/// anisotropic variants; the multistep variant advances through
/// [`continuous_window`] instead (see [`run_chain`]).
pub fn sgld_step(
    state: &ChainState,
    model: &LossModel,
    dataset: &DataSet,
    cfg: &SgldConfig,
    noise: &NoiseDraw,
) -> Result<ChainState> {
    if let Variant::Multistep { .. } = cfg.variant {
        return Err(Error::invalid(
            "multistep variant takes a noise path; step it through run_chain or continuous_window",
        ));
    }
    let grad = minibatch_grad(model, dataset, &state.x, &noise.batch, cfg.lambda)?;
    if !all_finite(&grad) {
        return Err(Error::NonFinite("sgld gradient"));
    }
    let mut x = state.x.clone();
    axpy(&mut x, -cfg.eta, &grad);
    let shaped = cfg.apply_noise_shape(&noise.xi);
    axpy(&mut x, cfg.noise_scale(), &shaped);
    let x = cfg.post_move(x);
    check_finite(&x, "sgld iterate")?;
    Ok(ChainState {
        x,
        step_index: state.step_index + 1,
    })
}

/// Advance one window of length `eta` with a frozen batch, taking the
/// provided standard-normal increments (one per substep).
pub fn window_with_increments(
    state: &ChainState,
    model: &LossModel,
    dataset: &DataSet,
    cfg: &SgldConfig,
    batch: &[usize],
    increments: &[Vec<f64>],
) -> Result<ChainState> {
    if increments.is_empty() {
        return Err(Error::invalid("window needs at least one increment"));
    }
    let t_sub = increments.len();
    let gamma = cfg.eta / t_sub as f64;
    let sub_scale = (2.0 * gamma / cfg.beta).sqrt();
    let mut x = state.x.clone();
    for xi in increments {
        let grad = minibatch_grad(model, dataset, &x, batch, cfg.lambda)?;
        if !all_finite(&grad) {
            return Err(Error::NonFinite("window drift"));
        }
        axpy(&mut x, -gamma, &grad);
        let shaped = cfg.apply_noise_shape(xi);
        axpy(&mut x, sub_scale, &shaped);
        x = cfg.post_move(x);
    }
    check_finite(&x, "window iterate")?;
    Ok(ChainState {
        x,
        step_index: state.step_index + 1,
    })
}

/// Advance the fixed-batch diffusion over one window of length `eta` with
/// `cfg.substeps_cts` Euler-Maruyama substeps.
pub fn continuous_window<R: Rng + ?Sized>(
    state: &ChainState,
    model: &LossModel,
    dataset: &DataSet,
    cfg: &SgldConfig,
    batch: &[usize],
    rng: &mut R,
) -> Result<ChainState> {
    let increments: Vec<Vec<f64>> = (0..cfg.substeps_cts)
        .map(|_| crate::rng::normal_vector(rng, model.dim()))
        .collect();
    window_with_increments(state, model, dataset, cfg, batch, &increments)
}

/// Substep count and substep size of the refined one-window discretization:
/// `T = floor(1/eta)` steps of size `eta / T`.
pub fn multistep_substeps(eta: f64) -> Result<(usize, f64)> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid("multistep kernel requires eta in (0, 1)"));
    }
    let t = (1.0 / eta).floor() as usize;
    Ok((t, eta / t as f64))
}

/// One update of the refined kernel: a fresh batch, then `floor(1/eta)`
/// Euler substeps of the window.
pub fn multistep_kernel<R: Rng + ?Sized>(
    state: &ChainState,
    model: &LossModel,
    dataset: &DataSet,
    cfg: &SgldConfig,
    rng: &mut R,
) -> Result<ChainState> {
    let (t_sub, _) = multistep_substeps(cfg.eta)?;
    let batch = sample_minibatch(dataset.len(), cfg.k, rng)?;
    let increments: Vec<Vec<f64>> = (0..t_sub)
        .map(|_| crate::rng::normal_vector(rng, model.dim()))
        .collect();
    window_with_increments(state, model, dataset, cfg, &batch, &increments)
}

/// Initial distribution of a chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InitialDist {
    PointMass(Vec<f64>),
    Gaussian { dim: usize, sigma: f64 },
}

impl InitialDist {
    pub fn origin(dim: usize) -> Self {
        InitialDist::PointMass(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        match self {
            InitialDist::PointMass(x) => x.len(),
            InitialDist::Gaussian { dim, .. } => *dim,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match self {
            InitialDist::PointMass(x) => x.clone(),
            InitialDist::Gaussian { dim, sigma } => {
                vecmath::scale(&crate::rng::normal_vector(rng, *dim), *sigma)
            }
        }
    }

    /// Exact moment `E ||X||^p` for `p` in {1, 2, 4}.
    pub fn norm_moment(&self, p: u32) -> f64 {
        match self {
            InitialDist::PointMass(x) => vecmath::norm(x).powi(p as i32),
            InitialDist::Gaussian { dim, sigma } => {
                let d = *dim as f64;
                match p {
                    1 => sigma * std::f64::consts::SQRT_2 * gamma_ratio_half(*dim),
                    2 => sigma * sigma * d,
                    4 => sigma.powi(4) * d * (d + 2.0),
                    _ => f64::NAN,
                }
            }
        }
    }
}

/// `Gamma((d+1)/2) / Gamma(d/2)` for integer `d >= 1`.
fn gamma_ratio_half(d: usize) -> f64 {
    // Gamma at integers and half-integers via Gamma(x+1) = x Gamma(x),
    // terminating at Gamma(1) = 1 or Gamma(1/2) = sqrt(pi).
    fn gamma_int_or_half(mut x: f64) -> f64 {
        let mut acc = 1.0;
        while x > 1.25 {
            x -= 1.0;
            acc *= x;
        }
        if (x - 1.0).abs() < 1e-12 {
            acc
        } else {
            acc * std::f64::consts::PI.sqrt()
        }
    }
    gamma_int_or_half((d as f64 + 1.0) / 2.0) / gamma_int_or_half(d as f64 / 2.0)
}

/// Which kernel advances the chain at each recorded step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelKind {
    /// The discrete SGLD update (or its projected/anisotropic/multistep
    /// variant, per the config).
    Discrete,
    /// A fresh batch per window, advanced by `substeps_cts` Euler substeps.
    ContinuousWindow,
    /// A fresh batch per window, advanced by `floor(1/eta)` substeps.
    MultistepFloor,
    /// One batch frozen at the start and reused for every window: the
    /// fixed-batch diffusion observed on the window grid.
    FrozenBatchWindow,
}

/// Run a chain for `horizon` steps; returns `horizon + 1` states including
/// the initial draw. Deterministic given the generator state.
pub fn run_chain<R: Rng + ?Sized>(
    init: &InitialDist,
    model: &LossModel,
    dataset: &DataSet,
    cfg: &SgldConfig,
    kernel: KernelKind,
    horizon: usize,
    rng: &mut R,
) -> Result<Vec<ChainState>> {
    let mut states = Vec::with_capacity(horizon + 1);
    states.push(ChainState::new(init.sample(rng))?);
    let n = dataset.len();
    let frozen_batch = if kernel == KernelKind::FrozenBatchWindow {
        Some(sample_minibatch(n, cfg.k, rng)?)
    } else {
        None
    };
    for _ in 0..horizon {
        let prev = states.last().unwrap();
        let next = match kernel {
            KernelKind::Discrete => match cfg.variant {
                Variant::Multistep { t_sub } => {
                    let batch = sample_minibatch(n, cfg.k, rng)?;
                    let increments: Vec<Vec<f64>> = (0..t_sub)
                        .map(|_| crate::rng::normal_vector(rng, model.dim()))
                        .collect();
                    window_with_increments(prev, model, dataset, cfg, &batch, &increments)?
                }
                _ => {
                    let noise = draw_noise(n, cfg.k, model.dim(), rng)?;
                    sgld_step(prev, model, dataset, cfg, &noise)?
                }
            },
            KernelKind::ContinuousWindow => {
                let batch = sample_minibatch(n, cfg.k, rng)?;
                continuous_window(prev, model, dataset, cfg, &batch, rng)?
            }
            KernelKind::MultistepFloor => multistep_kernel(prev, model, dataset, cfg, rng)?,
            KernelKind::FrozenBatchWindow => {
                let batch = frozen_batch.as_ref().unwrap();
                continuous_window(prev, model, dataset, cfg, batch, rng)?
            }
        };
        states.push(next);
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loss::DataPoint;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn dataset_1d(zs: &[f64]) -> DataSet {
        DataSet::new(zs.iter().map(|&v| DataPoint { z: vec![v] }).collect()).unwrap()
    }

    #[test]
    fn minibatch_full_subset_is_everything() {
        let mut rng = crate::rng::stream(1, "mb", 0);
        for _ in 0..10 {
            assert_eq!(sample_minibatch(4, 4, &mut rng).unwrap(), vec![0, 1, 2, 3]);
        }
        assert!(sample_minibatch(2, 3, &mut rng).is_err());
    }

    #[test]
    fn minibatch_singletons_are_balanced() {
        let mut rng = crate::rng::stream(2, "mb-freq", 0);
        let draws = 10_000;
        let mut count0 = 0usize;
        for _ in 0..draws {
            if sample_minibatch(2, 1, &mut rng).unwrap()[0] == 0 {
                count0 += 1;
            }
        }
        let freq = count0 as f64 / draws as f64;
        assert!((freq - 0.5).abs() < 0.02, "freq {freq}");
    }

    #[test]
    fn minibatch_containment_probability() {
        let mut rng = crate::rng::stream(3, "mb-contain", 0);
        let draws = 10_000;
        let mut hits = 0usize;
        for _ in 0..draws {
            if sample_minibatch(10, 3, &mut rng).unwrap().contains(&7) {
                hits += 1;
            }
        }
        let freq = hits as f64 / draws as f64;
        assert!((freq - 0.3).abs() < 0.02, "containment {freq}");
    }

    #[test]
    fn step_fixed_point_with_zero_gradient_and_noise() {
        let model = crate::loss::LossModel::pseudo_huber(2, 1.0).unwrap();
        let ds = DataSet::new(vec![DataPoint { z: vec![0.5, 0.5] }]).unwrap();
        let cfg = SgldConfig::new(0.1, 2.0, 1, 0.0).unwrap();
        let state = ChainState::new(vec![0.5, 0.5]).unwrap();
        let noise = NoiseDraw {
            xi: vec![0.0, 0.0],
            batch: vec![0],
        };
        let next = sgld_step(&state, &model, &ds, &cfg, &noise).unwrap();
        assert_eq!(next.x, state.x);
        assert_eq!(next.step_index, 1);
    }

    #[test]
    fn step_analytic_quadratic_move() {
        let model = crate::loss::LossModel::quadratic(1, 1.0).unwrap();
        let ds = dataset_1d(&[0.0]);
        let cfg = SgldConfig::new(0.1, 2.0, 1, 0.0).unwrap();
        let state = ChainState::new(vec![1.0]).unwrap();
        let noise = NoiseDraw {
            xi: vec![0.0],
            batch: vec![0],
        };
        let next = sgld_step(&state, &model, &ds, &cfg, &noise).unwrap();
        assert_abs_diff_eq!(next.x[0], 0.9, epsilon = 1e-15);
    }

    #[test]
    fn projection_clips_exterior_result() {
        let model = crate::loss::LossModel::pseudo_huber(2, 2.0).unwrap();
        let ds = DataSet::new(vec![DataPoint { z: vec![2.0, 0.0] }]).unwrap();
        let cfg = SgldConfig::new(0.1, 2.0, 1, 0.0)
            .unwrap()
            .with_variant(Variant::Projected { radius: 1.0 })
            .unwrap();
        // Zero gradient at x = z, zero noise: pre-projection result is (2, 0).
        let state = ChainState::new(vec![2.0, 0.0]).unwrap();
        let noise = NoiseDraw {
            xi: vec![0.0, 0.0],
            batch: vec![0],
        };
        let next = sgld_step(&state, &model, &ds, &cfg, &noise).unwrap();
        assert_abs_diff_eq!(next.x[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(next.x[1], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn projection_is_non_expansive() {
        let mut rng = crate::rng::stream(4, "proj", 0);
        for _ in 0..1000 {
            let x = crate::rng::normal_vector(&mut rng, 3);
            let y = crate::rng::normal_vector(&mut rng, 3);
            let r = 0.5 + rng.random::<f64>();
            let px = project_ball(&x, r);
            let py = project_ball(&y, r);
            assert!(vecmath::dist(&px, &py) <= vecmath::dist(&x, &y) + 1e-12);
        }
    }

    #[test]
    fn single_substep_window_equals_discrete_step() {
        let model = crate::loss::LossModel::quadratic(2, 1.0).unwrap();
        let ds = DataSet::new(vec![
            DataPoint { z: vec![0.3, -0.1] },
            DataPoint { z: vec![-0.4, 0.2] },
        ])
        .unwrap();
        let cfg = SgldConfig::new(0.05, 2.0, 2, 0.5).unwrap();
        let state = ChainState::new(vec![0.7, -0.2]).unwrap();
        let xi = vec![0.3, -1.2];
        let batch = vec![0, 1];
        let stepped = sgld_step(
            &state,
            &model,
            &ds,
            &cfg,
            &NoiseDraw {
                xi: xi.clone(),
                batch: batch.clone(),
            },
        )
        .unwrap();
        let windowed =
            window_with_increments(&state, &model, &ds, &cfg, &batch, &[xi]).unwrap();
        assert_eq!(stepped.x, windowed.x);
    }

    #[test]
    fn window_noise_has_brownian_additivity() {
        // Aggregating T substep increments into one normalized draw gives
        // the same per-window noise statistics: variance 2 eta / beta.
        let mut rng = crate::rng::stream(5, "brownian", 0);
        let eta = 0.25;
        let beta = 2.0;
        let draws = 20_000;
        for t_sub in [1usize, 4, 16] {
            let gamma = eta / t_sub as f64;
            let sub_scale = (2.0 * gamma / beta).sqrt();
            let mut samples = Vec::with_capacity(draws);
            for _ in 0..draws {
                let mut acc = 0.0;
                for _ in 0..t_sub {
                    acc += sub_scale * crate::rng::standard_normal(&mut rng);
                }
                samples.push(acc);
            }
            let var = samples.iter().map(|v| v * v).sum::<f64>() / draws as f64;
            let expect = 2.0 * eta / beta;
            // var estimator sd ~ expect * sqrt(2/draws)
            let tol = 4.0 * expect * (2.0 / draws as f64).sqrt();
            assert!((var - expect).abs() < tol, "T={t_sub}: var {var} vs {expect}");
        }
    }

    #[test]
    fn fixed_batch_window_matches_ou_moments() {
        // Quadratic with z = 0 and full batch is an OU process. Compare the
        // Monte-Carlo second moment to the exact substep recursion and the
        // recursion to the continuous OU value.
        let model = crate::loss::LossModel::quadratic(1, 1.0).unwrap();
        let ds = dataset_1d(&[0.0]);
        let t_sub = 64;
        let cfg = SgldConfig::new(0.25, 2.0, 1, 0.0)
            .unwrap()
            .with_substeps(t_sub)
            .unwrap();
        let windows = 8;
        let replicas = 4000;
        let x0 = 1.0;

        let mut finals = Vec::with_capacity(replicas);
        for r in 0..replicas {
            let mut rng = crate::rng::stream(17, "ou", r as u64);
            let mut state = ChainState::new(vec![x0]).unwrap();
            for _ in 0..windows {
                state = continuous_window(&state, &model, &ds, &cfg, &[0], &mut rng).unwrap();
            }
            finals.push(state.x[0] * state.x[0]);
        }
        let s = crate::stats::mean_sem(&finals);

        let gamma = cfg.eta / t_sub as f64;
        let mut disc = x0 * x0;
        for _ in 0..windows * t_sub {
            disc = (1.0 - gamma) * (1.0 - gamma) * disc + 2.0 * gamma / cfg.beta;
        }
        assert!(
            (s.mean - disc).abs() <= 3.0 * s.sem,
            "MC {} vs discrete {} (sem {})",
            s.mean,
            disc,
            s.sem
        );

        let t_total = cfg.eta * windows as f64;
        let cts = (-2.0 * t_total).exp() * x0 * x0 + (1.0 / cfg.beta) * (1.0 - (-2.0 * t_total).exp());
        assert!(
            (disc - cts).abs() < 0.01,
            "discretization drift too large: {disc} vs {cts}"
        );
    }

    #[test]
    fn multistep_substep_arithmetic() {
        assert_eq!(multistep_substeps(0.5).unwrap(), (2, 0.25));
        let (t, gamma) = multistep_substeps(1.0 / 3.0).unwrap();
        assert_eq!(t, 3);
        assert_relative_eq!(gamma, 1.0 / 9.0, max_relative = 1e-12);
        assert!(multistep_substeps(1.5).is_err());
    }

    #[test]
    fn run_chain_horizon_zero_and_determinism() {
        let model = crate::loss::LossModel::quadratic(2, 1.0).unwrap();
        let mut data_rng = crate::rng::stream(6, "chain-data", 0);
        let ds = model.data_distribution().sample_dataset(8, &mut data_rng).unwrap();
        let cfg = SgldConfig::new(0.1, 2.0, 2, 0.0).unwrap();
        let init = InitialDist::origin(2);

        let only = run_chain(
            &init,
            &model,
            &ds,
            &cfg,
            KernelKind::Discrete,
            0,
            &mut crate::rng::stream(7, "chain", 0),
        )
        .unwrap();
        assert_eq!(only.len(), 1);

        let a = run_chain(
            &init,
            &model,
            &ds,
            &cfg,
            KernelKind::Discrete,
            50,
            &mut crate::rng::stream(7, "chain", 1),
        )
        .unwrap();
        let b = run_chain(
            &init,
            &model,
            &ds,
            &cfg,
            KernelKind::Discrete,
            50,
            &mut crate::rng::stream(7, "chain", 1),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn stationary_mean_matches_data_mean() {
        let model = crate::loss::LossModel::quadratic(1, 1.0).unwrap();
        let ds = dataset_1d(&[0.4, -0.2, 0.8, 0.2]);
        let z_bar = 0.3;
        let cfg = SgldConfig::new(0.1, 2.0, 2, 0.0).unwrap();
        let init = InitialDist::origin(1);
        let replicas = 600;
        let mut finals = Vec::with_capacity(replicas);
        for r in 0..replicas {
            let mut rng = crate::rng::stream(8, "stationary", r as u64);
            let states = run_chain(&init, &model, &ds, &cfg, KernelKind::Discrete, 200, &mut rng)
                .unwrap();
            finals.push(states.last().unwrap().x[0]);
        }
        let s = crate::stats::mean_sem(&finals);
        assert!(
            (s.mean - z_bar).abs() <= 3.0 * s.sem,
            "mean {} vs {} (sem {})",
            s.mean,
            z_bar,
            s.sem
        );
    }

    #[test]
    fn anisotropic_noise_uses_matrix_root() {
        let sigma = vec![vec![0.25, 0.0], vec![0.0, 1.0]];
        let cfg = SgldConfig::new(0.1, 2.0, 1, 0.0)
            .unwrap()
            .with_variant(Variant::Anisotropic { sigma })
            .unwrap();
        let model = crate::loss::LossModel::pseudo_huber(2, 1.0).unwrap();
        let ds = DataSet::new(vec![DataPoint { z: vec![1.0, 1.0] }]).unwrap();
        let state = ChainState::new(vec![1.0, 1.0]).unwrap();
        let noise = NoiseDraw {
            xi: vec![1.0, 1.0],
            batch: vec![0],
        };
        let next = sgld_step(&state, &model, &ds, &cfg, &noise).unwrap();
        let scale = cfg.noise_scale();
        assert_abs_diff_eq!(next.x[0], 1.0 + 0.5 * scale, epsilon = 1e-12);
        assert_abs_diff_eq!(next.x[1], 1.0 + scale, epsilon = 1e-12);
    }

    #[test]
    fn anisotropic_validation_rejects_bad_matrices() {
        let too_large = vec![vec![2.0, 0.0], vec![0.0, 1.0]];
        assert!(SgldConfig::new(0.1, 2.0, 1, 0.0)
            .unwrap()
            .with_variant(Variant::Anisotropic { sigma: too_large })
            .is_err());
        let negative = vec![vec![-0.5, 0.0], vec![0.0, 1.0]];
        assert!(SgldConfig::new(0.1, 2.0, 1, 0.0)
            .unwrap()
            .with_variant(Variant::Anisotropic { sigma: negative })
            .is_err());
        let asym = vec![vec![1.0, 0.5], vec![0.0, 1.0]];
        assert!(SgldConfig::new(0.1, 2.0, 1, 0.0)
            .unwrap()
            .with_variant(Variant::Anisotropic { sigma: asym })
            .is_err());
    }

    #[test]
    fn gaussian_init_moments() {
        let g = InitialDist::Gaussian { dim: 2, sigma: 1.0 };
        // d=2: E||X|| = sigma sqrt(2) Gamma(1.5)/Gamma(1) = sqrt(2) * sqrt(pi)/2
        assert_relative_eq!(
            g.norm_moment(1),
            std::f64::consts::SQRT_2 * std::f64::consts::PI.sqrt() / 2.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(g.norm_moment(2), 2.0, max_relative = 1e-12);
        assert_relative_eq!(g.norm_moment(4), 8.0, max_relative = 1e-12);
        let p = InitialDist::PointMass(vec![3.0, 4.0]);
        assert_relative_eq!(p.norm_moment(2), 25.0, max_relative = 1e-12);
    }
}
