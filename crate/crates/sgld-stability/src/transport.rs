//! Distortion functions, the weighted semimetric, coupling-based
//! Wasserstein estimators and exact small-sample transport oracles.
//!
//! The distortion `g` is the capped identity `g(r) = min(r, R)`: concave,
//! non-decreasing, constant on `[R, inf)` and sandwiched as
//! `phi r <= g(r) <= r` on `[0, R]`. These are exactly the properties the
//! downstream inequalities use, so the cap serves as a certified stand-in
//! for the rate-optimal distortion without reproducing its construction.
//!
//! Two distances are built from it:
//!
//! * `rho_g(x, y) = g(||x - y||)` — a bounded metric;
//! * `rho(x, y) = g(||x - y||) (1 + 2 eps + eps ||x||^2 + eps ||y||^2)` —
//!   a semimetric mixing the cap with quadratic Lyapunov weights. It obeys
//!   a weak triangle inequality with coefficient
//!   `2 (1 + (R / phi)(eps R v 1))`.
//!
//! Coupling estimators only ever produce upper bounds: for any pairing of
//! samples the mean cost dominates the corresponding transport distance.
//! The exact oracles (`exact_w1_sorted_1d`, `exact_wp_assignment`) provide
//! the matching lower route at desk scale.

use crate::vecmath::{self, norm_sq};
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Maximum sample count accepted by the exact assignment oracle.
pub const ASSIGNMENT_CAP: usize = 256;

/// Concave distortion with a plateau: `g(r) = min(r, R)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GFunction {
    /// Plateau radius `R`.
    pub r_cap: f64,
    /// Certified lower sandwich slope `phi` in `(0, 1]`. The cap satisfies
    /// the sandwich with `phi = 1`; smaller values are carried through the
    /// derived constants unchanged.
    pub phi: f64,
}

impl GFunction {
    pub fn cap(r_cap: f64) -> Result<Self> {
        Self::with_phi(r_cap, 1.0)
    }

    pub fn with_phi(r_cap: f64, phi: f64) -> Result<Self> {
        if !(r_cap > 0.0) || !r_cap.is_finite() {
            return Err(Error::invalid("g cap radius must be positive and finite"));
        }
        if !(phi > 0.0 && phi <= 1.0) {
            return Err(Error::invalid("phi must lie in (0, 1]"));
        }
        Ok(GFunction { r_cap, phi })
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if r < 0.0 || !r.is_finite() {
            return Err(Error::invalid(format!("g is defined for r >= 0, got {r}")));
        }
        Ok(r.min(self.r_cap))
    }
}

/// Parameters of the weighted semimetric `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemimetricParams {
    pub g: GFunction,
    pub eps: f64,
}

impl SemimetricParams {
    pub fn new(g: GFunction, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::invalid("eps must lie in (0, 1)"));
        }
        Ok(SemimetricParams { g, eps })
    }

    /// Weak triangle inequality coefficient `2 (1 + (R/phi)(eps R v 1))`.
    pub fn weak_triangle_coefficient(&self) -> f64 {
        let r = self.g.r_cap;
        2.0 * (1.0 + r / self.g.phi * (self.eps * r).max(1.0))
    }
}

/// Lyapunov weight `V(x) = 1 + ||x||^2`.
pub fn v_lyapunov(x: &[f64]) -> f64 {
    1.0 + norm_sq(x)
}

/// `rho_g(x, y) = g(||x - y||)`; a bounded metric for the cap distortion.
pub fn rho_g(x: &[f64], y: &[f64], g: &GFunction) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    g.eval(vecmath::dist(x, y))
}

/// `rho(x, y) = g(||x - y||) (1 + 2 eps + eps ||x||^2 + eps ||y||^2)`.
pub fn rho(x: &[f64], y: &[f64], params: &SemimetricParams) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let base = params.g.eval(vecmath::dist(x, y))?;
    let eps = params.eps;
    Ok(base * (1.0 + 2.0 * eps + eps * norm_sq(x) + eps * norm_sq(y)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CostKind {
    /// Euclidean distance (first-order cost).
    W1,
    /// Squared Euclidean distance; the mean bounds the squared 2-Wasserstein
    /// distance from above.
    W2Sq,
    /// The weighted semimetric `rho`.
    Rho,
    /// The capped metric `rho_g`.
    RhoG,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EstimatorKind {
    CouplingMean,
    Sorted1d,
    ExactAssignment,
}

/// A transport-distance estimate with its Monte-Carlo uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistance {
    pub value: f64,
    pub sem: f64,
    pub estimator: EstimatorKind,
}

/// Mean pairwise cost over a coupled sample; an upper-bound estimator of
/// the corresponding transport distance.
pub fn estimate_w_upper(
    pairs: &[(Vec<f64>, Vec<f64>)],
    cost: CostKind,
    params: Option<&SemimetricParams>,
) -> Result<EmpiricalDistance> {
    if pairs.len() < 2 {
        return Err(Error::invalid("need at least 2 pairs"));
    }
    let mut costs = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        let c = match cost {
            CostKind::W1 => vecmath::dist(x, y),
            CostKind::W2Sq => vecmath::dist_sq(x, y),
            CostKind::Rho => {
                let p = params.ok_or_else(|| Error::invalid("rho cost needs params"))?;
                rho(x, y, p)?
            }
            CostKind::RhoG => {
                let p = params.ok_or_else(|| Error::invalid("rho_g cost needs params"))?;
                rho_g(x, y, &p.g)?
            }
        };
        costs.push(c);
    }
    let s = crate::stats::mean_sem(&costs);
    Ok(EmpiricalDistance {
        value: s.mean,
        sem: s.sem,
        estimator: EstimatorKind::CouplingMean,
    })
}

/// Exact empirical 1-Wasserstein distance in one dimension via sorting.
pub fn exact_w1_sorted_1d(a: &[f64], b: &[f64]) -> Result<EmpiricalDistance> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(Error::invalid("empty sample"));
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.total_cmp(y));
    sb.sort_by(|x, y| x.total_cmp(y));
    let total: f64 = sa.iter().zip(&sb).map(|(x, y)| (x - y).abs()).sum();
    Ok(EmpiricalDistance {
        value: total / a.len() as f64,
        sem: 0.0,
        estimator: EstimatorKind::Sorted1d,
    })
}

/// Exact empirical `W_p` (`p` in {1, 2}) between two equal-size point clouds
/// via an optimal assignment on the full cost matrix. Capped at
/// [`ASSIGNMENT_CAP`] points.
pub fn exact_wp_assignment(
    a: &[Vec<f64>],
    b: &[Vec<f64>],
    p: u32,
) -> Result<EmpiricalDistance> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(Error::invalid("empty sample"));
    }
    if a.len() > ASSIGNMENT_CAP {
        return Err(Error::OracleTooLarge {
            cap: ASSIGNMENT_CAP,
            got: a.len(),
        });
    }
    if !(p == 1 || p == 2) {
        return Err(Error::invalid("p must be 1 or 2"));
    }
    let n = a.len();
    let mut cost = vec![0.0; n * n];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let d = vecmath::dist(ai, bj);
            cost[i * n + j] = if p == 1 { d } else { d * d };
        }
    }
    let (_, total) = solve_assignment(&cost, n);
    let mean = total / n as f64;
    Ok(EmpiricalDistance {
        value: if p == 1 { mean } else { mean.sqrt() },
        sem: 0.0,
        estimator: EstimatorKind::ExactAssignment,
    })
}

/// Minimum-cost perfect matching on an `n x n` cost matrix (row-major),
/// by shortest augmenting paths with dual potentials; `O(n^3)`.
/// Returns the column assigned to each row and the total cost.
pub fn solve_assignment(cost: &[f64], n: usize) -> (Vec<usize>, f64) {
    const INF: f64 = f64::INFINITY;
    // 1-based internals; p[j] = row matched to column j.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    let mut total = 0.0;
    for j in 1..=n {
        assignment[p[j] - 1] = j - 1;
        total += cost[(p[j] - 1) * n + (j - 1)];
    }
    (assignment, total)
}

/// Exhaustive minimum over all permutations; validation oracle, `n <= 8`.
pub fn brute_force_assignment(cost: &[f64], n: usize) -> Result<f64> {
    if n > 8 {
        return Err(Error::OracleTooLarge { cap: 8, got: n });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = f64::INFINITY;
    permute(&mut perm, 0, &mut |p| {
        let total: f64 = p.iter().enumerate().map(|(i, &j)| cost[i * n + j]).sum();
        if total < best {
            best = total;
        }
    });
    Ok(best)
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Named semimetric checks performed by [`check_semimetric_lemmas`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SemimetricCheck {
    WeakTriangle,
    W2Comparison,
    Perturbation,
}

impl SemimetricCheck {
    pub fn name(&self) -> &'static str {
        match self {
            SemimetricCheck::WeakTriangle => "weak_triangle",
            SemimetricCheck::W2Comparison => "w2_comparison",
            SemimetricCheck::Perturbation => "perturbation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemimetricCheckReport {
    pub check: SemimetricCheck,
    pub probes: usize,
    pub worst_violation: f64,
    pub passed: bool,
}

/// Random-probe verification of the semimetric inequalities in dimension `d`:
///
/// 1. weak triangle: `rho(x,y) <= rho(x,z) + 2(1 + (R/phi)(eps R v 1)) rho(z,y)`;
/// 2. pointwise 2-Wasserstein comparison:
///    `rho(x,y) <= ||x-y|| (1 + 2 eps + ||x||^2 + ||y||^2)`;
/// 3. sample-level perturbation inequality
///    `E rho(X+Dx, Y+Dy) <= E rho(X,Y) + 2 sd^(1/2) (1 + 2 eps + 6 eps s^(1/2))`
///    with `sd = E||Dx||^2 v E||Dy||^2` and `s` the worst fourth moment,
///    evaluated with plug-in empirical moments.
pub fn check_semimetric_lemmas<R: Rng + ?Sized>(
    params: &SemimetricParams,
    d: usize,
    probes: usize,
    rng: &mut R,
) -> Result<Vec<SemimetricCheckReport>> {
    let tol = 1e-9;
    let coeff = params.weak_triangle_coefficient();
    let scale = 2.0f64.max(params.g.r_cap);

    let mut worst_tri = f64::NEG_INFINITY;
    let mut worst_cmp = f64::NEG_INFINITY;
    for _ in 0..probes {
        let x = vecmath::scale(&crate::rng::normal_vector(rng, d), scale * rng.random::<f64>());
        let y = vecmath::scale(&crate::rng::normal_vector(rng, d), scale * rng.random::<f64>());
        let z = vecmath::scale(&crate::rng::normal_vector(rng, d), scale * rng.random::<f64>());
        let rxy = rho(&x, &y, params)?;
        let rxz = rho(&x, &z, params)?;
        let rzy = rho(&z, &y, params)?;
        worst_tri = worst_tri.max(rxy - (rxz + coeff * rzy));
        let cmp = vecmath::dist(&x, &y)
            * (1.0 + 2.0 * params.eps + norm_sq(&x) + norm_sq(&y));
        worst_cmp = worst_cmp.max(rxy - cmp);
    }

    // Perturbation check on batches of synthetic quadruples; the
    // inequality holds for every joint law, hence for the empirical one.
    let batches = 32;
    let per_batch = (probes / batches).max(4);
    let mut worst_pert = f64::NEG_INFINITY;
    for batch in 0..batches {
        let delta_scale = if batch % 4 == 0 {
            0.0
        } else {
            0.3 * batch as f64 / batches as f64
        };
        let nf = per_batch as f64;
        let mut lhs = 0.0;
        let mut base = 0.0;
        let mut m2dx = 0.0;
        let mut m2dy = 0.0;
        // Fourth moments of X, Y, X + Dx, Y + Dy.
        let mut m4 = [0.0f64; 4];
        for _ in 0..per_batch {
            let x = vecmath::scale(&crate::rng::normal_vector(rng, d), scale);
            let y = vecmath::scale(&crate::rng::normal_vector(rng, d), scale);
            let dx = vecmath::scale(&crate::rng::normal_vector(rng, d), delta_scale);
            let dy = vecmath::scale(&crate::rng::normal_vector(rng, d), delta_scale);
            let mut xp = x.clone();
            vecmath::axpy(&mut xp, 1.0, &dx);
            let mut yp = y.clone();
            vecmath::axpy(&mut yp, 1.0, &dy);
            lhs += rho(&xp, &yp, params)?;
            base += rho(&x, &y, params)?;
            m2dx += norm_sq(&dx);
            m2dy += norm_sq(&dy);
            m4[0] += norm_sq(&x).powi(2);
            m4[1] += norm_sq(&y).powi(2);
            m4[2] += norm_sq(&xp).powi(2);
            m4[3] += norm_sq(&yp).powi(2);
        }
        let sigma_delta = (m2dx / nf).max(m2dy / nf);
        let sigma4 = m4.iter().fold(0.0f64, |a, v| a.max(v / nf));
        let rhs = base / nf
            + 2.0
                * sigma_delta.sqrt()
                * (1.0 + 2.0 * params.eps + 6.0 * params.eps * sigma4.sqrt());
        worst_pert = worst_pert.max(lhs / nf - rhs);
    }

    let report = |check: SemimetricCheck, worst: f64| SemimetricCheckReport {
        check,
        probes,
        worst_violation: worst,
        passed: worst <= tol,
    };
    Ok(vec![
        report(SemimetricCheck::WeakTriangle, worst_tri),
        report(SemimetricCheck::W2Comparison, worst_cmp),
        report(SemimetricCheck::Perturbation, worst_pert),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn params(r: f64, eps: f64) -> SemimetricParams {
        SemimetricParams::new(GFunction::cap(r).unwrap(), eps).unwrap()
    }

    #[test]
    fn g_cap_values() {
        let g = GFunction::cap(2.0).unwrap();
        assert_eq!(g.eval(0.0).unwrap(), 0.0);
        assert_eq!(g.eval(1.0).unwrap(), 1.0);
        assert_eq!(g.eval(4.0).unwrap(), 2.0);
        assert!(g.eval(-1.0).is_err());
    }

    #[test]
    fn rho_hand_value() {
        // d=1, x=0, y=1, eps=0.5, R >= 1: 1 * (1 + 1 + 0 + 0.5) = 2.5
        let p = params(2.0, 0.5);
        assert_abs_diff_eq!(rho(&[0.0], &[1.0], &p).unwrap(), 2.5, epsilon = 1e-15);
        assert_eq!(rho(&[1.0], &[1.0], &p).unwrap(), 0.0);
    }

    #[test]
    fn rho_plateau_beyond_cap() {
        let p = params(1.0, 0.25);
        let x = [10.0, 0.0];
        let y = [-10.0, 0.0];
        let expect = 1.0 * (1.0 + 0.5 + 0.25 * 100.0 + 0.25 * 100.0);
        assert_abs_diff_eq!(rho(&x, &y, &p).unwrap(), expect, epsilon = 1e-12);
    }

    #[test]
    fn rho_symmetry_and_identity() {
        let p = params(3.0, 0.1);
        let mut rng = crate::rng::stream(3, "rho-sym", 0);
        for _ in 0..1000 {
            let x = crate::rng::normal_vector(&mut rng, 4);
            let y = crate::rng::normal_vector(&mut rng, 4);
            let a = rho(&x, &y, &p).unwrap();
            let b = rho(&y, &x, &p).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            assert!(a > 0.0);
        }
        let x = vec![0.5; 4];
        assert_eq!(rho(&x, &x, &p).unwrap(), 0.0);
    }

    #[test]
    fn v_lyapunov_exact() {
        assert_eq!(v_lyapunov(&[0.0, 0.0]), 1.0);
        assert_eq!(v_lyapunov(&[3.0, 4.0]), 26.0);
    }

    #[test]
    fn rho_g_sandwich_against_contraction_constants() {
        // With the cap distortion, phi = 1 dominates 1/(2 max(c1, 1)), so
        // the metric stays equivalent to the Euclidean distance below the
        // cap radius.
        let consts = crate::bounds::lipschitz_constants(1.0, 2.0, 1.0, 2.0, 0.0).unwrap();
        let lower_slope = 1.0 / (2.0 * consts.c1.max(1.0));
        let g = GFunction::cap(consts.r_kappa).unwrap();
        assert!(g.phi >= lower_slope);
        let mut rng = crate::rng::stream(15, "sandwich", 0);
        for _ in 0..2000 {
            let x = crate::rng::normal_vector(&mut rng, 3);
            let y = crate::rng::normal_vector(&mut rng, 3);
            let r = vecmath::dist(&x, &y);
            if r > consts.r_kappa {
                continue;
            }
            let v = rho_g(&x, &y, &g).unwrap();
            assert!(lower_slope * r <= v + 1e-12 && v <= r + 1e-12);
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let p = params(1.0, 0.5);
        assert!(rho(&[0.0, 1.0], &[0.0], &p).is_err());
        assert!(rho_g(&[0.0, 1.0], &[0.0], &p.g).is_err());
    }

    proptest! {
        // Subadditivity of the capped metric: concave with g(0)=0.
        #[test]
        fn rho_g_triangle_inequality(
            x in proptest::collection::vec(-50.0f64..50.0, 3),
            y in proptest::collection::vec(-50.0f64..50.0, 3),
            z in proptest::collection::vec(-50.0f64..50.0, 3),
            r in 0.1f64..10.0,
        ) {
            let g = GFunction::cap(r).unwrap();
            let xy = rho_g(&x, &y, &g).unwrap();
            let xz = rho_g(&x, &z, &g).unwrap();
            let zy = rho_g(&z, &y, &g).unwrap();
            prop_assert!(xy <= xz + zy + 1e-12);
        }

        #[test]
        fn sorted_1d_matches_brute_force(
            a in proptest::collection::vec(-10.0f64..10.0, 2..7),
        ) {
            let n = a.len();
            let mut rng = crate::rng::stream(9, "w1-prop", 0);
            let b: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 10.0 - 5.0).collect();
            let sorted = exact_w1_sorted_1d(&a, &b).unwrap().value;
            let mut cost = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    cost[i * n + j] = (a[i] - b[j]).abs();
                }
            }
            let brute = brute_force_assignment(&cost, n).unwrap() / n as f64;
            prop_assert!((sorted - brute).abs() < 1e-10);
        }
    }

    #[test]
    fn sorted_1d_hand_cases() {
        assert_eq!(exact_w1_sorted_1d(&[0.0, 1.0], &[0.0, 1.0]).unwrap().value, 0.0);
        assert_eq!(exact_w1_sorted_1d(&[0.0], &[2.0]).unwrap().value, 2.0);
        assert_eq!(exact_w1_sorted_1d(&[0.0, 2.0], &[1.0, 3.0]).unwrap().value, 1.0);
        assert!(exact_w1_sorted_1d(&[0.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn assignment_identical_clouds() {
        let a = vec![vec![0.0, 1.0], vec![2.0, -1.0], vec![0.5, 0.5]];
        for p in [1, 2] {
            let d = exact_wp_assignment(&a, &a, p).unwrap();
            assert_abs_diff_eq!(d.value, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn assignment_matches_brute_force_small() {
        let mut rng = crate::rng::stream(10, "assign", 0);
        for trial in 0..60 {
            let n = 2 + (trial % 6);
            let d = 1 + (trial % 3);
            let a: Vec<Vec<f64>> = (0..n).map(|_| crate::rng::normal_vector(&mut rng, d)).collect();
            let b: Vec<Vec<f64>> = (0..n).map(|_| crate::rng::normal_vector(&mut rng, d)).collect();
            for p in [1u32, 2u32] {
                let mut cost = vec![0.0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let dd = vecmath::dist(&a[i], &b[j]);
                        cost[i * n + j] = if p == 1 { dd } else { dd * dd };
                    }
                }
                let (_, total) = solve_assignment(&cost, n);
                let brute = brute_force_assignment(&cost, n).unwrap();
                assert!(
                    (total - brute).abs() < 1e-10,
                    "n={n} p={p}: {total} vs {brute}"
                );
            }
        }
    }

    #[test]
    fn coupling_mean_dominates_assignment() {
        let mut rng = crate::rng::stream(12, "dominance", 0);
        for _ in 0..50 {
            let n = 64;
            let pairs: Vec<(Vec<f64>, Vec<f64>)> = (0..n)
                .map(|_| {
                    let x = crate::rng::normal_vector(&mut rng, 2);
                    let mut y = crate::rng::normal_vector(&mut rng, 2);
                    vecmath::axpy(&mut y, 0.5, &x);
                    (x, y)
                })
                .collect();
            let a: Vec<Vec<f64>> = pairs.iter().map(|p| p.0.clone()).collect();
            let b: Vec<Vec<f64>> = pairs.iter().map(|p| p.1.clone()).collect();
            let coupled = estimate_w_upper(&pairs, CostKind::W1, None).unwrap();
            let exact = exact_wp_assignment(&a, &b, 1).unwrap();
            assert!(coupled.value >= exact.value - 1e-12);
        }
    }

    #[test]
    fn coupling_mean_trivial_cases() {
        let pairs: Vec<(Vec<f64>, Vec<f64>)> =
            (0..10).map(|_| (vec![1.0], vec![1.0])).collect();
        let d = estimate_w_upper(&pairs, CostKind::W1, None).unwrap();
        assert_eq!((d.value, d.sem), (0.0, 0.0));
        let pairs: Vec<(Vec<f64>, Vec<f64>)> =
            (0..10).map(|_| (vec![0.0], vec![1.0])).collect();
        let d = estimate_w_upper(&pairs, CostKind::W1, None).unwrap();
        assert_eq!((d.value, d.sem), (1.0, 0.0));
        assert!(estimate_w_upper(&pairs[..1], CostKind::W1, None).is_err());
    }

    #[test]
    fn assignment_cap_is_enforced() {
        let a: Vec<Vec<f64>> = (0..257).map(|i| vec![i as f64]).collect();
        assert!(matches!(
            exact_wp_assignment(&a, &a, 1),
            Err(Error::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn semimetric_lemmas_pass_on_random_probes() {
        let p = params(2.0, 0.3);
        let mut rng = crate::rng::stream(13, "semimetric", 0);
        for reports in [
            check_semimetric_lemmas(&p, 1, 4000, &mut rng).unwrap(),
            check_semimetric_lemmas(&p, 4, 4000, &mut rng).unwrap(),
        ] {
            for r in reports {
                assert!(r.passed, "{:?} violated by {}", r.check, r.worst_violation);
            }
        }
    }

    #[test]
    fn wasserstein_convexity_on_mixtures() {
        // Mixture realized as a union of point clouds: the block-diagonal
        // matching is feasible, so the mixture cost is dominated by the
        // convex combination of component costs.
        let mut rng = crate::rng::stream(14, "convexity", 0);
        for _ in 0..20 {
            let n1 = 32;
            let n2 = 32;
            let gen = |rng: &mut crate::rng::Stream, shift: f64| -> Vec<Vec<f64>> {
                (0..32)
                    .map(|_| {
                        let mut v = crate::rng::normal_vector(rng, 2);
                        v[0] += shift;
                        v
                    })
                    .collect()
            };
            let (mu1, nu1) = (gen(&mut rng, 0.0), gen(&mut rng, 1.0));
            let (mu2, nu2) = (gen(&mut rng, -2.0), gen(&mut rng, 0.5));
            let r = n1 as f64 / (n1 + n2) as f64;
            for p in [1u32, 2u32] {
                let cost = |a: &[Vec<f64>], b: &[Vec<f64>]| {
                    let e = exact_wp_assignment(a, b, p).unwrap().value;
                    if p == 1 { e } else { e * e }
                };
                let mix_a: Vec<Vec<f64>> = mu1.iter().chain(&mu2).cloned().collect();
                let mix_b: Vec<Vec<f64>> = nu1.iter().chain(&nu2).cloned().collect();
                let mixed = cost(&mix_a, &mix_b);
                let separate = r * cost(&mu1, &nu1) + (1.0 - r) * cost(&mu2, &nu2);
                assert!(mixed <= separate + 1e-9, "p={p}: {mixed} > {separate}");
            }
        }
    }
}
