//! Small dense-vector helpers for the low-dimensional state spaces used
//! throughout the crate (`d <= 8` in practice, but nothing here assumes it).

use crate::{Error, Result};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

pub fn norm(a: &[f64]) -> f64 {
    norm_sq(a).sqrt()
}

pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist_sq(a, b).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `x += s * y`, in place.
pub fn axpy(x: &mut [f64], s: f64, y: &[f64]) {
    for (xi, yi) in x.iter_mut().zip(y) {
        *xi += s * yi;
    }
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn all_finite(a: &[f64]) -> bool {
    a.iter().all(|x| x.is_finite())
}

pub fn check_finite(a: &[f64], context: &'static str) -> Result<()> {
    if all_finite(a) {
        Ok(())
    } else {
        Err(Error::NonFinite(context))
    }
}

pub fn check_dims(a: &[f64], expected: usize) -> Result<()> {
    if a.len() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            got: a.len(),
        })
    }
}

/// Euclidean projection onto the closed ball of radius `r` around the origin.
pub fn project_ball(x: &[f64], r: f64) -> Vec<f64> {
    let n = norm(x);
    if n <= r {
        x.to_vec()
    } else {
        scale(x, r / n)
    }
}

/// Householder reflection `(I - 2 e e^T) v` for a unit vector `e`.
pub fn reflect(v: &[f64], e: &[f64]) -> Vec<f64> {
    let c = 2.0 * dot(v, e);
    v.iter().zip(e).map(|(vi, ei)| vi - c * ei).collect()
}

/// Dense symmetric matrix-vector product for a matrix stored by rows.
pub fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| dot(row, v)).collect()
}
