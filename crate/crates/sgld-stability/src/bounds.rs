//! Closed-form evaluation of every analytic constant and bound used by the
//! harness: reflection-coupling contraction rates, moment bounds, synchronous
//! divergence bounds, discretization errors and the two generalization
//! theorems (Lipschitz-with-weight-decay and fully dissipative regimes).
//!
//! Conventions:
//!
//! * `L` Lipschitz constant, `M` smoothness, `lambda` weight decay,
//!   `beta` inverse temperature, `(m, b)` dissipativity, `d` dimension.
//! * `sigma_p` denotes the `p`-th moment of the initial distribution.
//! * Time `t` in the theorem bounds counts iterations; physical time is
//!   `eta * t`.
//!
//! Lipschitz-regime constants:
//!
//! ```text
//! c1 = exp(2 beta L^2 (M - lambda) / lambda^2)
//! c2 = 8 (L^2 beta / lambda + 1) / lambda
//! c3 = max(16 L^2 beta / lambda^2, 2 / lambda)
//! C1 = c1 c2 if lambda < M, else c3
//! C2 = 4 L^2 max(c1, 1)          (see note below)
//! C3 = 4 L max(c1, 1) (L + (lambda + M)(lambda sigma1 + 2L + 2 sqrt(2/beta)))
//! ```
//!
//! `C2` is implemented with the `max(c1, 1)` multiplier: the derivation
//! multiplies the contraction envelope by `2L (c1 v 1)` twice, and with
//! `min(c1, 1)` the exponential factor would vanish exactly when it is
//! needed (`lambda < M`). The `min` variant remains available through
//! [`LipschitzConstants::big_c2_variant`].
//!
//! Dissipative-regime constants:
//!
//! ```text
//! R   = 2 sqrt((beta d + beta m + b)(1/(beta m) + 1) - 1)
//! phi = exp(-(beta M / 2) R^2 - 2R) / 2
//! eps = min(1, phi / (R^2 (beta b + beta m + d)))
//! C4  = (beta / 2) / min(beta m / 2, 2 (beta b + beta m + d) eps, 2 phi / R^2)
//! ```
//! together with the moment constant `ctilde(p)`, the per-step divergence
//! constant `c_tilde2`, the weak-triangle constant `c_tilde4`, the
//! discretization constant `c_tilde5`, and `C5`, `C6` assembling them.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn require_positive(value: f64, name: &str) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive and finite, got {value}")))
    }
}

/// Constants of the Lipschitz-plus-weight-decay regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LipschitzConstants {
    pub l: f64,
    pub m_smooth: f64,
    pub lambda: f64,
    pub beta: f64,
    pub sigma1: f64,
    /// Negative-curvature level `a = beta (M - lambda)` of the drift
    /// discrepancy (only relevant when `lambda < M`).
    pub a: f64,
    /// Positive-curvature floor `b = beta lambda / 2`.
    pub b_rate: f64,
    /// Radius `R = 4L / lambda` beyond which the drift discrepancy is
    /// uniformly contractive.
    pub r_kappa: f64,
    /// Radius beyond which the curvature estimate is non-negative.
    pub r0: f64,
    /// Explicit root `R/2 + sqrt(R^2/4 + 8/b)` bounding the contraction
    /// radius from above.
    pub r1_tilde: f64,
    /// Lower bound on the distortion slope: `exp(-a R^2 / 8)`, or 1 in the
    /// convex regime.
    pub phi_min: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    /// Contraction time constant: `c1 c2` if `lambda < M`, else `c3`.
    pub big_c1: f64,
    /// Continuous-time theorem constant, `4 L^2 max(c1, 1)`.
    pub big_c2: f64,
    /// Discrete-time theorem constant.
    pub big_c3: f64,
}

impl LipschitzConstants {
    /// The alternative `C2` with the `min(c1, 1)` multiplier as printed in
    /// the theorem statement. `strict: false` returns the implemented value.
    pub fn big_c2_variant(&self, strict_printed: bool) -> f64 {
        if strict_printed {
            4.0 * self.l * self.l * self.c1.min(1.0)
        } else {
            self.big_c2
        }
    }

    /// Per-step contraction mixture `k/n + (1 - k/n) exp(-eta / C1)`.
    pub fn c_tilde1(&self, eta: f64, n: usize, k: usize) -> f64 {
        let frac = k as f64 / n as f64;
        frac + (1.0 - frac) * (-eta / self.big_c1).exp()
    }

    /// Per-step divergence injection `2 L eta k / n`.
    pub fn c_tilde2(&self, eta: f64, n: usize, k: usize) -> f64 {
        2.0 * self.l * eta * k as f64 / n as f64
    }

    /// Geometric envelope `(1 - c1~^t) / (1 - c1~) c2~` of the per-step
    /// recursion, degenerating to `t c2~` at `k = n`.
    pub fn recursion_envelope(&self, eta: f64, n: usize, k: usize, t: usize) -> f64 {
        let ct1 = self.c_tilde1(eta, n, k);
        let ct2 = self.c_tilde2(eta, n, k);
        if (1.0 - ct1).abs() < 1e-15 {
            t as f64 * ct2
        } else {
            (1.0 - ct1.powi(t as i32)) / (1.0 - ct1) * ct2
        }
    }

    /// Factor converting the distorted distance back to `W1`;
    /// `W1 <= 2 max(c1, 1) W_g`.
    pub fn w1_equivalence_factor(&self) -> f64 {
        2.0 * self.c1.max(1.0)
    }
}

pub fn lipschitz_constants(
    l: f64,
    m_smooth: f64,
    lambda: f64,
    beta: f64,
    sigma1: f64,
) -> Result<LipschitzConstants> {
    require_positive(l, "L")?;
    require_positive(m_smooth, "M")?;
    require_positive(lambda, "lambda")?;
    require_positive(beta, "beta")?;
    if !(sigma1 >= 0.0) || !sigma1.is_finite() {
        return Err(Error::invalid("sigma1 must be finite and >= 0"));
    }
    let a = beta * (m_smooth - lambda);
    let b_rate = beta * lambda / 2.0;
    let r_kappa = 4.0 * l / lambda;
    let convex = lambda >= m_smooth;
    let r0 = if convex { 0.0 } else { r_kappa };
    let r1_tilde = r_kappa / 2.0 + (r_kappa * r_kappa / 4.0 + 8.0 / b_rate).sqrt();
    let phi_min = if convex {
        1.0
    } else {
        (-a * r_kappa * r_kappa / 8.0).exp()
    };
    let c1 = (2.0 * beta * l * l * (m_smooth - lambda) / (lambda * lambda)).exp();
    let c2 = 8.0 * (l * l * beta / lambda + 1.0) / lambda;
    let c3 = (16.0 * l * l * beta / (lambda * lambda)).max(2.0 / lambda);
    let big_c1 = if convex { c3 } else { c1 * c2 };
    let big_c2 = 4.0 * l * l * c1.max(1.0);
    let big_c3 = 4.0
        * l
        * c1.max(1.0)
        * (l + (lambda + m_smooth) * (lambda * sigma1 + 2.0 * l + 2.0 * (2.0 / beta).sqrt()));
    Ok(LipschitzConstants {
        l,
        m_smooth,
        lambda,
        beta,
        sigma1,
        a,
        b_rate,
        r_kappa,
        r0,
        r1_tilde,
        phi_min,
        c1,
        c2,
        c3,
        big_c1,
        big_c2,
        big_c3,
    })
}

/// Generalization bound of the Lipschitz-regime theorem after `t` iterations.
///
/// Continuous kernel: `C2 min(eta t, (C1+1) n/(n-k)) k/n`; discrete kernel:
/// `C3 min(...) (k/n + sqrt(eta d))`. With `k = n` the time-independent
/// envelope is unavailable and only the `eta t` branch applies.
pub fn lipschitz_gen_bound(
    consts: &LipschitzConstants,
    n: usize,
    k: usize,
    eta: f64,
    t: usize,
    d: usize,
    continuous: bool,
) -> Result<f64> {
    if k == 0 || k > n {
        return Err(Error::BatchSize { k, n });
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid("theorem requires eta in (0, 1)"));
    }
    if !continuous && eta >= 1.0 / consts.lambda {
        return Err(Error::invalid("discrete theorem requires eta < 1/lambda"));
    }
    let time_branch = eta * t as f64;
    let envelope = if k < n {
        (consts.big_c1 + 1.0) * n as f64 / (n - k) as f64
    } else {
        f64::INFINITY
    };
    let min_part = time_branch.min(envelope);
    let frac = k as f64 / n as f64;
    Ok(if continuous {
        consts.big_c2 * min_part * frac
    } else {
        consts.big_c3 * min_part * (frac + (eta * d as f64).sqrt())
    })
}

/// Moment growth constant of the discrete kernel under dissipativity
/// (valid for `eta <= 1/(2m)`):
///
/// ```text
/// ctilde(p) = (1/m)(6/m)^(p-1) (1 + 2^(2p) p (2p-1) d / (m beta))
///             [ (2b + 8 (M/m)^2 b)^p + 1 + 2 (d/beta)^(p-1) (2p-1)^p ]
/// ```
pub fn ctilde(p: u32, m_smooth: f64, m: f64, b: f64, d: usize, beta: f64) -> Result<f64> {
    if p < 1 {
        return Err(Error::invalid("ctilde requires p >= 1"));
    }
    require_positive(m_smooth, "M")?;
    require_positive(m, "m")?;
    require_positive(beta, "beta")?;
    if !(b >= 0.0) {
        return Err(Error::invalid("b must be >= 0"));
    }
    let pf = f64::from(p);
    let df = d as f64;
    let lead = (1.0 / m) * (6.0 / m).powi(p as i32 - 1);
    let dim_factor = 1.0 + 4.0f64.powi(p as i32) * pf * (2.0 * pf - 1.0) * df / (m * beta);
    let bracket = (2.0 * b + 8.0 * m_smooth * m_smooth / (m * m) * b).powi(p as i32)
        + 1.0
        + 2.0 * (df / beta).powi(p as i32 - 1) * (2.0 * pf - 1.0).powi(p as i32);
    Ok(lead * dim_factor * bracket)
}

/// Constants of the dissipative regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DissipativeConstants {
    pub m_smooth: f64,
    pub m_diss: f64,
    pub b_diss: f64,
    pub dim: usize,
    pub beta: f64,
    /// Initial second moment.
    pub sigma2: f64,
    /// Initial fourth moment.
    pub sigma4: f64,
    pub r: f64,
    pub phi: f64,
    pub eps: f64,
    /// Contraction time constant.
    pub big_c4: f64,
    /// Moment constants `ctilde(1)`, `ctilde(2)`.
    pub ctilde_p1: f64,
    pub ctilde_p2: f64,
    /// Per-step divergence constant.
    pub c_tilde2: f64,
    /// Weak-triangle constant `1 + (2 g(R)/phi)(eps R v 1)`.
    pub c_tilde4: f64,
    /// Discretization constant.
    pub c_tilde5: f64,
    /// Continuous-time theorem constant.
    pub big_c5: f64,
    /// Discrete-time theorem constant.
    pub big_c6: f64,
}

impl DissipativeConstants {
    /// Per-step contraction mixture `k/n + (1 - k/n) exp(-eta / C4)`.
    pub fn c_tilde3(&self, eta: f64, n: usize, k: usize) -> f64 {
        let frac = k as f64 / n as f64;
        frac + (1.0 - frac) * (-eta / self.big_c4).exp()
    }

    /// Semimetric parameters consistent with these constants.
    pub fn semimetric_params(&self) -> Result<crate::transport::SemimetricParams> {
        let g = crate::transport::GFunction::cap(self.r)?;
        crate::transport::SemimetricParams::new(g, self.eps.min(1.0 - 1e-12))
    }
}

pub fn dissipative_constants(
    m_smooth: f64,
    m: f64,
    b: f64,
    d: usize,
    beta: f64,
    sigma2: f64,
    sigma4: f64,
) -> Result<DissipativeConstants> {
    require_positive(m_smooth, "M")?;
    require_positive(m, "m")?;
    require_positive(b, "b")?;
    require_positive(beta, "beta")?;
    if d == 0 {
        return Err(Error::invalid("dimension must be >= 1"));
    }
    if !(sigma2 >= 0.0 && sigma4 >= 0.0) {
        return Err(Error::invalid("initial moments must be >= 0"));
    }
    let df = d as f64;
    let r = 2.0 * ((beta * df + beta * m + b) * (1.0 / (beta * m) + 1.0) - 1.0).sqrt();
    let phi = 0.5 * (-(beta * m_smooth / 2.0) * r * r - 2.0 * r).exp();
    let eps = (phi / (r * r * (beta * b + beta * m + df))).min(1.0);
    let big_c4 = (beta / 2.0)
        / (beta * m / 2.0)
            .min(2.0 * (beta * b + beta * m + df) * eps)
            .min(2.0 * phi / (r * r));
    let ctilde_p1 = ctilde(1, m_smooth, m, b, d, beta)?;
    let ctilde_p2 = ctilde(2, m_smooth, m, b, d, beta)?;
    let msq = m_smooth * m_smooth;
    let c_tilde2 = 2.0
        * (msq * sigma4.sqrt()
            + msq * ctilde_p2.sqrt()
            + msq * (3.0 * b + 2.0 * df / beta) / m
            + df / beta)
        * (1.0
            + 2.0 * eps
            + 6.0 * eps * sigma4.sqrt()
            + 6.0 * eps * ctilde_p2.sqrt()
            + 12.0 * eps * (b / m + (df + 2.0) / (beta * m)));
    // g(R) = R for the capped distortion.
    let g_r = r;
    let c_tilde4 = 1.0 + 2.0 * g_r / phi * (eps * r).max(1.0);
    let c_tilde5 = 2.0
        * 2.0f64.sqrt()
        * msq.exp()
        * m_smooth
        * (msq * sigma4.sqrt() + msq * ctilde_p2.sqrt() + msq * b / m + df / beta).sqrt()
        * (1.0 + 2.0 * eps * (1.0 + sigma4.sqrt() + ctilde_p2.sqrt()));
    let continuity = m_smooth * (sigma2 + (b / m).sqrt()) / (phi * eps * r.max(2.0));
    let big_c5 = continuity * c_tilde2;
    let big_c6 = continuity * c_tilde2.max(2.0 * c_tilde4 * c_tilde5);
    Ok(DissipativeConstants {
        m_smooth,
        m_diss: m,
        b_diss: b,
        dim: d,
        beta,
        sigma2,
        sigma4,
        r,
        phi,
        eps,
        big_c4,
        ctilde_p1,
        ctilde_p2,
        c_tilde2,
        c_tilde4,
        c_tilde5,
        big_c5,
        big_c6,
    })
}

/// Generalization bound of the dissipative-regime theorem after `t`
/// iterations. Continuous kernel: `C5 min(eta t, (C4+1) n/(n-k)) k/(n sqrt(eta))`;
/// discrete kernel adds the `sqrt(eta)` discretization term and requires
/// `eta <= 1/(2m)`.
pub fn dissipative_gen_bound(
    consts: &DissipativeConstants,
    n: usize,
    k: usize,
    eta: f64,
    t: usize,
    continuous: bool,
) -> Result<f64> {
    if k == 0 || k > n {
        return Err(Error::BatchSize { k, n });
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid("theorem requires eta in (0, 1)"));
    }
    if !continuous && eta > 1.0 / (2.0 * consts.m_diss) {
        return Err(Error::invalid("discrete theorem requires eta <= 1/(2m)"));
    }
    let time_branch = eta * t as f64;
    let envelope = if k < n {
        (consts.big_c4 + 1.0) * n as f64 / (n - k) as f64
    } else {
        f64::INFINITY
    };
    let min_part = time_branch.min(envelope);
    let rate = k as f64 / (n as f64 * eta.sqrt());
    Ok(if continuous {
        consts.big_c5 * min_part * rate
    } else {
        consts.big_c6 * min_part * (rate + eta.sqrt())
    })
}

/// Moment bound for the fixed-batch diffusion started from a measure with
/// `p`-th moment `mu_p`:
/// `mu_p e^(-p m t / 2) + [2b/m + 2(p + d - 2)/(beta m)]^(p/2) (1 - e^(-p m t / 2))`.
///
/// The envelope argument controls `||x||^(p-2)` near the origin and is
/// valid for `p >= 2`.
pub fn moment_bound_cts(p: u32, m: f64, b: f64, beta: f64, d: usize, mu_p: f64, t: f64) -> f64 {
    let pf = f64::from(p);
    let df = d as f64;
    let decay = (-pf * m * t / 2.0).exp();
    let level = (2.0 * b / m + 2.0 * (pf + df - 2.0) / (beta * m)).powf(pf / 2.0);
    mu_p * decay + level * (1.0 - decay)
}

/// Uniform first-moment bound for the discrete weight-decay kernel
/// (`eta < 1/lambda`): `mu_1 + (L + sqrt(2 d / (beta eta))) / lambda`.
pub fn first_moment_bound_disc(
    mu_1: f64,
    l: f64,
    lambda: f64,
    beta: f64,
    d: usize,
    eta: f64,
) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0 / lambda) {
        return Err(Error::invalid("first-moment bound requires eta < 1/lambda"));
    }
    Ok(mu_1 + (l + (2.0 * d as f64 / (beta * eta)).sqrt()) / lambda)
}

/// Synchronous divergence bound between neighbor-dataset diffusions in the
/// Lipschitz regime: `W1(mu, nu) + 2 L t`.
pub fn synchronous_divergence_lip(w1_init: f64, l: f64, t: f64) -> f64 {
    w1_init + 2.0 * l * t
}

/// Mean-square drift from the start for the dissipative diffusion:
/// `4 M^2 (E||theta_0||^2 + (3b + 2d/beta)/m) t^2 + 4 d t / beta`.
pub fn drift_from_start_diss(
    m_smooth: f64,
    m: f64,
    b: f64,
    d: usize,
    beta: f64,
    mu_2: f64,
    t: f64,
) -> f64 {
    let df = d as f64;
    4.0 * m_smooth * m_smooth * (mu_2 + (3.0 * b + 2.0 * df / beta) / m) * t * t
        + 4.0 * df / beta * t
}

/// One-step `W1` discretization error in the Lipschitz regime:
/// `eta (lambda + M) [eta (lambda sigma1 + 2L) + 2 sqrt(2 d eta / beta)] e^(M+1)`.
pub fn discretization_err_lip(
    lambda: f64,
    m_smooth: f64,
    l: f64,
    sigma1: f64,
    d: usize,
    beta: f64,
    eta: f64,
) -> f64 {
    eta * (lambda + m_smooth)
        * (eta * (lambda * sigma1 + 2.0 * l) + 2.0 * (2.0 * d as f64 * eta / beta).sqrt())
        * (m_smooth + 1.0).exp()
}

/// One-step squared `W2` discretization error in the dissipative regime:
/// `8 eta^3 exp(2 eta^2 M^2) M^2 (M^2 mu_2 + M^2 b/m + d/beta)`.
pub fn discretization_err_diss_sq(
    m_smooth: f64,
    m: f64,
    b: f64,
    d: usize,
    beta: f64,
    mu_2: f64,
    eta: f64,
) -> f64 {
    let msq = m_smooth * m_smooth;
    8.0 * eta.powi(3)
        * (2.0 * eta * eta * msq).exp()
        * msq
        * (msq * mu_2 + msq * b / m + d as f64 / beta)
}

/// Uniform gradient bound at the origin: `M sqrt(b/m)`.
pub fn gradient_origin_bound(m_smooth: f64, m: f64, b: f64) -> f64 {
    m_smooth * (b / m).sqrt()
}

/// Radius of the ball containing all local minima: `sqrt(b/m)`.
pub fn minima_radius(m: f64, b: f64) -> f64 {
    (b / m).sqrt()
}

/// Stability from a `W1` bound in the Lipschitz regime: `L * sup W1`.
pub fn stability_continuity_lip(l: f64, w1_sup: f64) -> f64 {
    l * w1_sup
}

/// Stability from a `W_rho` bound in the dissipative regime:
/// `M (b/m + 1) / (phi eps (R v 1)) * sup W_rho`.
pub fn stability_continuity_diss(consts: &DissipativeConstants, w_rho_sup: f64) -> f64 {
    consts.m_smooth * (consts.b_diss / consts.m_diss + 1.0)
        / (consts.phi * consts.eps * consts.r.max(1.0))
        * w_rho_sup
}

/// Pass a stability level through as a generalization bound.
pub fn stability_to_gen(eps_stab: f64) -> Result<f64> {
    if eps_stab < 0.0 || !eps_stab.is_finite() {
        return Err(Error::invalid("stability level must be finite and >= 0"));
    }
    Ok(eps_stab)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    GenContinuousLipschitz,
    GenDiscreteLipschitz,
    GenContinuousDissipative,
    GenDiscreteDissipative,
    Moment,
    Divergence,
    Discretization,
}

/// A bound evaluated on a grid of iteration counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCurve {
    pub kind: BoundKind,
    pub t_values: Vec<f64>,
    pub bound_values: Vec<f64>,
}

impl BoundCurve {
    pub fn gen_lipschitz(
        consts: &LipschitzConstants,
        n: usize,
        k: usize,
        eta: f64,
        d: usize,
        t_grid: &[usize],
        continuous: bool,
    ) -> Result<Self> {
        let bound_values = t_grid
            .iter()
            .map(|&t| lipschitz_gen_bound(consts, n, k, eta, t, d, continuous))
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundCurve {
            kind: if continuous {
                BoundKind::GenContinuousLipschitz
            } else {
                BoundKind::GenDiscreteLipschitz
            },
            t_values: t_grid.iter().map(|&t| t as f64).collect(),
            bound_values,
        })
    }

    pub fn gen_dissipative(
        consts: &DissipativeConstants,
        n: usize,
        k: usize,
        eta: f64,
        t_grid: &[usize],
        continuous: bool,
    ) -> Result<Self> {
        let bound_values = t_grid
            .iter()
            .map(|&t| dissipative_gen_bound(consts, n, k, eta, t, continuous))
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundCurve {
            kind: if continuous {
                BoundKind::GenContinuousDissipative
            } else {
                BoundKind::GenDiscreteDissipative
            },
            t_values: t_grid.iter().map(|&t| t as f64).collect(),
            bound_values,
        })
    }
}

/// Flat map of all constants, for report embedding.
pub fn lipschitz_constants_map(c: &LipschitzConstants) -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    m.insert("a".into(), c.a);
    m.insert("b_rate".into(), c.b_rate);
    m.insert("r_kappa".into(), c.r_kappa);
    m.insert("r0".into(), c.r0);
    m.insert("r1_tilde".into(), c.r1_tilde);
    m.insert("phi_min".into(), c.phi_min);
    m.insert("c1".into(), c.c1);
    m.insert("c2".into(), c.c2);
    m.insert("c3".into(), c.c3);
    m.insert("C1".into(), c.big_c1);
    m.insert("C2".into(), c.big_c2);
    m.insert("C2_printed".into(), c.big_c2_variant(true));
    m.insert("C3".into(), c.big_c3);
    m
}

pub fn dissipative_constants_map(c: &DissipativeConstants) -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    m.insert("R".into(), c.r);
    m.insert("phi".into(), c.phi);
    m.insert("eps".into(), c.eps);
    m.insert("C4".into(), c.big_c4);
    m.insert("ctilde_p1".into(), c.ctilde_p1);
    m.insert("ctilde_p2".into(), c.ctilde_p2);
    m.insert("c_tilde2".into(), c.c_tilde2);
    m.insert("c_tilde4".into(), c.c_tilde4);
    m.insert("c_tilde5".into(), c.c_tilde5);
    m.insert("C5".into(), c.big_c5);
    m.insert("C6".into(), c.big_c6);
    m
}
