//! Summary statistics and least-squares fits used by the experiment harness.
//!
//! Aggregation is always fixed-order (replica-index order) so that reports
//! are byte-identical across runs with the same seed.

/// Sample mean and standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSem {
    pub mean: f64,
    pub sem: f64,
    pub n: usize,
}

pub fn mean_sem(xs: &[f64]) -> MeanSem {
    let n = xs.len();
    if n == 0 {
        return MeanSem {
            mean: 0.0,
            sem: 0.0,
            n,
        };
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return MeanSem {
            mean,
            sem: 0.0,
            n,
        };
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n as f64 - 1.0);
    MeanSem {
        mean,
        sem: (var / n as f64).sqrt(),
        n,
    }
}

/// Ordinary least squares `y ~ intercept + slope * x`.
#[derive(Debug, Clone, Copy)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Residual-based standard error of the slope.
    pub slope_se: f64,
    pub n: usize,
}

impl LinearFit {
    /// 95% confidence interval for the slope (normal approximation).
    pub fn slope_ci(&self) -> (f64, f64) {
        (
            self.slope - 1.96 * self.slope_se,
            self.slope + 1.96 * self.slope_se,
        )
    }
}

pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<LinearFit> {
    let n = x.len();
    if n < 2 || n != y.len() {
        return None;
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|xi| (xi - mx) * (xi - mx)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(xi, yi)| (xi - mx) * (yi - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| {
            let r = yi - intercept - slope * xi;
            r * r
        })
        .sum();
    let slope_se = if n > 2 {
        (sse / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Some(LinearFit {
        slope,
        intercept,
        slope_se,
        n,
    })
}

/// Slope of `ln y` against `ln x`, skipping non-positive entries.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Option<LinearFit> {
    let pairs: (Vec<f64>, Vec<f64>) = x
        .iter()
        .zip(y)
        .filter(|(xi, yi)| **xi > 0.0 && **yi > 0.0)
        .map(|(xi, yi)| (xi.ln(), yi.ln()))
        .unzip();
    linear_fit(&pairs.0, &pairs.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn mean_sem_basics() {
        let s = mean_sem(&[1.0, 2.0, 3.0, 4.0]);
        assert_abs_diff_eq!(s.mean, 2.5, epsilon = 1e-15);
        // sample var = 5/3, sem = sqrt(5/12)
        assert_abs_diff_eq!(s.sem, (5.0f64 / 12.0).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn exact_line_is_recovered() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v - 1.0).collect();
        let f = linear_fit(&x, &y).unwrap();
        assert_abs_diff_eq!(f.slope, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.intercept, -1.0, epsilon = 1e-12);
        assert!(f.slope_se < 1e-10);
    }

    #[test]
    fn power_law_slope() {
        let x = [0.2, 0.1, 0.05, 0.025];
        let y: Vec<f64> = x.iter().map(|v: &f64| 4.0 * v.powf(1.5)).collect();
        let f = log_log_slope(&x, &y).unwrap();
        assert_abs_diff_eq!(f.slope, 1.5, epsilon = 1e-10);
    }
}
