//! Loss families, datasets and numerical certification of the structural
//! assumptions (Lipschitz continuity, smoothness, dissipativity) together
//! with their declared constants.
//!
//! Three built-in families cover the regimes of interest:
//!
//! * `Quadratic`: `f(x, z) = ||x - z||^2 / 2`, smooth with `M = 1` and
//!   `(m, b) = (1/2, z_max^2 / 2)`-dissipative. Convex baseline.
//! * `PseudoHuber`: `f(x, z) = sqrt(1 + ||x - z||^2)`, globally 1-Lipschitz
//!   and 1-smooth. Pairs with weight decay for the regularized regime.
//! * `CosineDissipative`: `f(x, z) = ||x||^2/2 + a cos(<w, x>) + <z, x>`,
//!   smooth with `M = 1 + a||w||^2` and `(1/2, (a||w|| + z_max)^2 / 2)`-
//!   dissipative; non-convex whenever `a ||w||^2 > 1`.
//!
//! All constants are exact for the closed forms above, so the certificates
//! pass with zero violation up to rounding (tolerance [`CERT_TOL`]).

use crate::vecmath::{self, axpy, check_dims, check_finite, dot, norm, norm_sq, scale, sub};
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Absolute tolerance below which a probe violation still certifies.
pub const CERT_TOL: f64 = 1e-9;

/// One data instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataPoint {
    pub z: Vec<f64>,
}

impl DataPoint {
    pub fn new(z: Vec<f64>) -> Result<Self> {
        check_finite(&z, "data point")?;
        Ok(DataPoint { z })
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }
}

/// An ordered collection of data points; never empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataSet {
    points: Vec<DataPoint>,
}

impl DataSet {
    pub fn new(points: Vec<DataPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("dataset must contain at least one point"));
        }
        let d = points[0].dim();
        for p in &points {
            if p.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: p.dim(),
                });
            }
        }
        Ok(DataSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn point(&self, index: usize) -> Result<&DataPoint> {
        self.points.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.points.len(),
        })
    }

    pub fn points(&self) -> &[DataPoint] {
        &self.points
    }

    /// A copy of the set with the point at `index` replaced; the receiver is
    /// left untouched.
    pub fn make_neighbor(&self, index: usize, z_new: DataPoint) -> Result<DataSet> {
        if index >= self.points.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.points.len(),
            });
        }
        if z_new.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: z_new.dim(),
            });
        }
        let mut points = self.points.clone();
        points[index] = z_new;
        Ok(DataSet { points })
    }

    /// Number of indices at which the two sets differ.
    pub fn hamming_distance(&self, other: &DataSet) -> usize {
        self.points
            .iter()
            .zip(&other.points)
            .filter(|(a, b)| a != b)
            .count()
            + self.points.len().abs_diff(other.points.len())
    }
}

/// Uniform distribution on the centered ball of a given radius; the data
/// distribution used for population-risk experiments and certificates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DataDistribution {
    pub dim: usize,
    pub radius: f64,
}

impl DataDistribution {
    pub fn new(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 || !radius.is_finite() || radius < 0.0 {
            return Err(Error::invalid("data distribution needs dim >= 1, radius >= 0"));
        }
        Ok(DataDistribution { dim, radius })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DataPoint {
        if self.radius == 0.0 {
            return DataPoint {
                z: vec![0.0; self.dim],
            };
        }
        let dir = crate::rng::unit_vector(rng, self.dim);
        let u: f64 = rng.random();
        let r = self.radius * u.powf(1.0 / self.dim as f64);
        DataPoint { z: scale(&dir, r) }
    }

    pub fn sample_dataset<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<DataSet> {
        DataSet::new((0..n).map(|_| self.sample(rng)).collect())
    }

    /// The support point farthest from `z`: the antipodal boundary point,
    /// used as the worst-case single-element perturbation.
    pub fn farthest_boundary_point(&self, z: &DataPoint) -> DataPoint {
        let n = norm(&z.z);
        if n < 1e-12 {
            let mut v = vec![0.0; self.dim];
            v[0] = self.radius;
            DataPoint { z: v }
        } else {
            DataPoint {
                z: scale(&z.z, -self.radius / n),
            }
        }
    }
}

/// Constants a family declares for the assumptions it satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssumptionConstants {
    /// Lipschitz constant of `f(., z)`, when it is globally Lipschitz.
    pub lipschitz: Option<f64>,
    /// Gradient Lipschitz (smoothness) constant `M`.
    pub smoothness: f64,
    /// Dissipativity pair `(m, b)`: `<grad f(x,z), x> >= m||x||^2 - b`.
    pub dissipativity: Option<(f64, f64)>,
    /// Weight decay coefficient the model is intended to be run with.
    pub weight_decay: f64,
}

impl AssumptionConstants {
    fn validate(&self) -> Result<()> {
        if let Some(l) = self.lipschitz {
            if !(l >= 0.0) {
                return Err(Error::invalid("lipschitz constant must be >= 0"));
            }
        }
        if !(self.smoothness > 0.0) {
            return Err(Error::invalid("smoothness constant must be > 0"));
        }
        if let Some((m, b)) = self.dissipativity {
            if !(m > 0.0) || !(b >= 0.0) {
                return Err(Error::invalid("dissipativity needs m > 0, b >= 0"));
            }
            if self.smoothness < m {
                return Err(Error::invalid("smoothness M must dominate dissipativity m"));
            }
        }
        if !(self.weight_decay >= 0.0) {
            return Err(Error::invalid("weight decay must be >= 0"));
        }
        Ok(())
    }

    /// Radius `sqrt(b/m)` of the ball confining all local minima.
    pub fn minima_radius(&self) -> Option<f64> {
        self.dissipativity.map(|(m, b)| (b / m).sqrt())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum LossFamily {
    Quadratic,
    PseudoHuber,
    CosineDissipative { amplitude: f64, direction: Vec<f64> },
}

/// A loss family instantiated at a fixed dimension with known data support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LossModel {
    family: LossFamily,
    dim: usize,
    data: DataDistribution,
    constants: AssumptionConstants,
}

impl LossModel {
    pub fn quadratic(dim: usize, z_max: f64) -> Result<Self> {
        let data = DataDistribution::new(dim, z_max)?;
        let constants = AssumptionConstants {
            lipschitz: None,
            smoothness: 1.0,
            dissipativity: Some((0.5, 0.5 * z_max * z_max)),
            weight_decay: 0.0,
        };
        constants.validate()?;
        Ok(LossModel {
            family: LossFamily::Quadratic,
            dim,
            data,
            constants,
        })
    }

    pub fn pseudo_huber(dim: usize, z_max: f64) -> Result<Self> {
        let data = DataDistribution::new(dim, z_max)?;
        let constants = AssumptionConstants {
            lipschitz: Some(1.0),
            smoothness: 1.0,
            dissipativity: None,
            weight_decay: 0.0,
        };
        constants.validate()?;
        Ok(LossModel {
            family: LossFamily::PseudoHuber,
            dim,
            data,
            constants,
        })
    }

    pub fn cosine_dissipative(
        dim: usize,
        z_max: f64,
        amplitude: f64,
        direction: Vec<f64>,
    ) -> Result<Self> {
        if !(amplitude > 0.0) {
            return Err(Error::invalid("cosine amplitude must be > 0"));
        }
        check_dims(&direction, dim)?;
        check_finite(&direction, "cosine direction")?;
        let data = DataDistribution::new(dim, z_max)?;
        let w_norm = norm(&direction);
        let constants = AssumptionConstants {
            lipschitz: None,
            smoothness: 1.0 + amplitude * w_norm * w_norm,
            dissipativity: Some((0.5, 0.5 * (amplitude * w_norm + z_max).powi(2))),
            weight_decay: 0.0,
        };
        constants.validate()?;
        Ok(LossModel {
            family: LossFamily::CosineDissipative {
                amplitude,
                direction,
            },
            dim,
            data,
            constants,
        })
    }

    /// Declare the weight decay this model is run with. The decay enters the
    /// update through the gradient, not the loss itself.
    pub fn with_weight_decay(mut self, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::invalid("weight decay must be finite and >= 0"));
        }
        self.constants.weight_decay = lambda;
        Ok(self)
    }

    /// Override the declared constants. Used for negative controls: the
    /// certificates must fail when the constants are wrong.
    pub fn with_constants(mut self, constants: AssumptionConstants) -> Self {
        self.constants = constants;
        self
    }

    pub fn family(&self) -> &LossFamily {
        &self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &AssumptionConstants {
        &self.constants
    }

    pub fn data_distribution(&self) -> DataDistribution {
        self.data
    }

    pub fn eval_loss(&self, x: &[f64], z: &DataPoint) -> Result<f64> {
        check_dims(x, self.dim)?;
        check_dims(&z.z, self.dim)?;
        check_finite(x, "loss argument")?;
        let v = match &self.family {
            LossFamily::Quadratic => 0.5 * vecmath::dist_sq(x, &z.z),
            LossFamily::PseudoHuber => (1.0 + vecmath::dist_sq(x, &z.z)).sqrt(),
            LossFamily::CosineDissipative {
                amplitude,
                direction,
            } => 0.5 * norm_sq(x) + amplitude * dot(direction, x).cos() + dot(&z.z, x),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("loss value"))
        }
    }

    pub fn eval_grad(&self, x: &[f64], z: &DataPoint) -> Result<Vec<f64>> {
        check_dims(x, self.dim)?;
        check_dims(&z.z, self.dim)?;
        check_finite(x, "gradient argument")?;
        let g = match &self.family {
            LossFamily::Quadratic => sub(x, &z.z),
            LossFamily::PseudoHuber => {
                let u = sub(x, &z.z);
                let h = (1.0 + norm_sq(&u)).sqrt();
                scale(&u, 1.0 / h)
            }
            LossFamily::CosineDissipative {
                amplitude,
                direction,
            } => {
                let s = dot(direction, x);
                let mut g = x.to_vec();
                axpy(&mut g, -amplitude * s.sin(), direction);
                axpy(&mut g, 1.0, &z.z);
                g
            }
        };
        check_finite(&g, "gradient value")?;
        Ok(g)
    }
}

/// Mini-batch gradient of the (optionally weight-decay regularized)
/// empirical risk: `(1/|B|) Σ_{i in B} grad f(x, z_i) + lambda x`.
pub fn minibatch_grad(
    model: &LossModel,
    dataset: &DataSet,
    x: &[f64],
    batch: &[usize],
    lambda: f64,
) -> Result<Vec<f64>> {
    if batch.is_empty() {
        return Err(Error::EmptyBatch);
    }
    if !(lambda >= 0.0) {
        return Err(Error::invalid("lambda must be >= 0"));
    }
    let mut acc = vec![0.0; model.dim()];
    for &i in batch {
        let z = dataset.point(i)?;
        let g = model.eval_grad(x, z)?;
        axpy(&mut acc, 1.0, &g);
    }
    let inv = 1.0 / batch.len() as f64;
    let mut out = scale(&acc, inv);
    axpy(&mut out, lambda, x);
    Ok(out)
}

/// Central finite difference of the loss; the independent oracle against
/// which `eval_grad` is checked.
pub fn finite_difference_grad(
    model: &LossModel,
    x: &[f64],
    z: &DataPoint,
    h: f64,
) -> Result<Vec<f64>> {
    let mut g = vec![0.0; x.len()];
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    for i in 0..x.len() {
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        g[i] = (model.eval_loss(&xp, z)? - model.eval_loss(&xm, z)?) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    Ok(g)
}

/// Which structural property a certificate probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AssumptionId {
    Lipschitz,
    Smoothness,
    Dissipativity,
    MinimaBall,
    OriginGradient,
}

impl AssumptionId {
    pub fn name(&self) -> &'static str {
        match self {
            AssumptionId::Lipschitz => "lipschitz",
            AssumptionId::Smoothness => "smoothness",
            AssumptionId::Dissipativity => "dissipativity",
            AssumptionId::MinimaBall => "minima_ball",
            AssumptionId::OriginGradient => "origin_gradient",
        }
    }
}

/// Outcome of a random-probe certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub assumption: AssumptionId,
    pub probes: usize,
    /// Largest observed violation (positive means the inequality failed by
    /// that margin); may be negative when every probe had slack.
    pub worst_violation: f64,
    pub passed: bool,
}

impl CertificateReport {
    pub fn from_violation(assumption: AssumptionId, probes: usize, worst: f64) -> Self {
        CertificateReport {
            assumption,
            probes,
            worst_violation: worst,
            passed: worst <= CERT_TOL,
        }
    }
}

fn probe_sigma(model: &LossModel) -> f64 {
    match model.constants().minima_radius() {
        Some(r) if r > 0.0 => 3.0 * r,
        _ => 3.0,
    }
}

/// Verify one assumption by random probing. Probe points are drawn from
/// `N(0, sigma^2 I)` with `sigma = 3 sqrt(b/m)` when dissipativity constants
/// exist (else 3), which covers both the interior and the exterior of the
/// minima ball; instances are drawn from the model's data distribution.
pub fn certify<R: Rng + ?Sized>(
    model: &LossModel,
    assumption: AssumptionId,
    probe_count: usize,
    rng: &mut R,
) -> Result<CertificateReport> {
    let d = model.dim();
    let sigma = probe_sigma(model);
    let data = model.data_distribution();
    let consts = model.constants();
    let mut worst = f64::NEG_INFINITY;

    match assumption {
        AssumptionId::Lipschitz => {
            let l = consts.lipschitz.ok_or(Error::MissingConstant("L"))?;
            for _ in 0..probe_count {
                let x1 = scale(&crate::rng::normal_vector(rng, d), sigma);
                let x2 = scale(&crate::rng::normal_vector(rng, d), sigma);
                let z = data.sample(rng);
                let lhs = (model.eval_loss(&x1, &z)? - model.eval_loss(&x2, &z)?).abs();
                worst = worst.max(lhs - l * vecmath::dist(&x1, &x2));
            }
        }
        AssumptionId::Smoothness => {
            let m = consts.smoothness;
            for _ in 0..probe_count {
                let x1 = scale(&crate::rng::normal_vector(rng, d), sigma);
                let x2 = scale(&crate::rng::normal_vector(rng, d), sigma);
                let z = data.sample(rng);
                let g1 = model.eval_grad(&x1, &z)?;
                let g2 = model.eval_grad(&x2, &z)?;
                worst = worst.max(vecmath::dist(&g1, &g2) - m * vecmath::dist(&x1, &x2));
            }
        }
        AssumptionId::Dissipativity => {
            let (m, b) = consts.dissipativity.ok_or(Error::MissingConstant("(m, b)"))?;
            for _ in 0..probe_count {
                let x = scale(&crate::rng::normal_vector(rng, d), sigma);
                let z = data.sample(rng);
                let g = model.eval_grad(&x, &z)?;
                worst = worst.max(m * norm_sq(&x) - b - dot(&g, &x));
            }
        }
        AssumptionId::MinimaBall => {
            let (m, b) = consts.dissipativity.ok_or(Error::MissingConstant("(m, b)"))?;
            let r = (b / m).sqrt();
            for _ in 0..probe_count {
                let u = crate::rng::unit_vector(rng, d);
                let t = (r + 0.01) + rng.random::<f64>() * (10.0 * r.max(0.1) - r - 0.01).max(0.01);
                let z = data.sample(rng);
                let g = model.eval_grad(&scale(&u, t), &z)?;
                let radial = dot(&u, &g);
                // Radial derivative must clear both the dissipative floor and zero.
                worst = worst.max((m * t - b / t) - radial).max(-radial);
            }
        }
        AssumptionId::OriginGradient => {
            let (m, b) = consts.dissipativity.ok_or(Error::MissingConstant("(m, b)"))?;
            let cap = consts.smoothness * (b / m).sqrt();
            let origin = vec![0.0; d];
            for _ in 0..probe_count {
                let z = data.sample(rng);
                let g = model.eval_grad(&origin, &z)?;
                worst = worst.max(norm(&g) - cap);
            }
        }
    }

    Ok(CertificateReport::from_violation(
        assumption,
        probe_count,
        worst,
    ))
}

/// All certificates applicable to the model's declared constants.
pub fn certify_all<R: Rng + ?Sized>(
    model: &LossModel,
    probe_count: usize,
    rng: &mut R,
) -> Result<Vec<CertificateReport>> {
    let mut out = Vec::new();
    if model.constants().lipschitz.is_some() {
        out.push(certify(model, AssumptionId::Lipschitz, probe_count, rng)?);
    }
    out.push(certify(model, AssumptionId::Smoothness, probe_count, rng)?);
    if model.constants().dissipativity.is_some() {
        out.push(certify(model, AssumptionId::Dissipativity, probe_count, rng)?);
        out.push(certify(model, AssumptionId::MinimaBall, probe_count, rng)?);
        out.push(certify(model, AssumptionId::OriginGradient, probe_count, rng)?);
    }
    Ok(out)
}
