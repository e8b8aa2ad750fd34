//! Matrix exponential and principal logarithm for small dense matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Maximum absolute column sum.
pub fn norm1(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &DMatrix<f64>) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

const SERIES_TOL: f64 = 1e-18;
const MAX_SERIES_TERMS: usize = 200;
const EXPM_SCALED_NORM: f64 = 0.5;
const LOGM_RADIUS: f64 = 0.25;
const MAX_SQRT_DEPTH: usize = 40;

/// `e^{Qt}` by scaling and squaring around a truncated Taylor series.
pub fn expm(q: &DMatrix<f64>, t: f64) -> DMatrix<f64> {
    assert!(q.is_square(), "expm needs a square matrix");
    let n = q.nrows();
    let a = q * t;
    let norm = norm1(&a);
    let squarings = if norm > EXPM_SCALED_NORM {
        (norm / EXPM_SCALED_NORM).log2().ceil() as u32
    } else {
        0
    };
    let b = a / 2f64.powi(squarings as i32);
    let mut result = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..=MAX_SERIES_TERMS {
        term = &term * &b / k as f64;
        result += &term;
        if norm1(&term) < SERIES_TOL {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Principal square root by the Denman–Beavers iteration.
pub fn sqrtm(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = DMatrix::<f64>::identity(n, n);
    for _ in 0..100 {
        let y_inv = y
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::LogNonConvergence("singular iterate in square root".into()))?;
        let z_inv = z
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::LogNonConvergence("singular iterate in square root".into()))?;
        let y_next = (&y + z_inv) * 0.5;
        let z_next = (&z + y_inv) * 0.5;
        let delta = norm1(&(&y_next - &y));
        y = y_next;
        z = z_next;
        if delta <= 1e-15 * norm1(&y).max(1.0) {
            return Ok(y);
        }
    }
    Err(Error::LogNonConvergence("square root iteration did not settle".into()))
}

/// Principal matrix logarithm by inverse scaling and squaring: take square
/// roots until `‖P - I‖₁ < 1/4`, sum the Mercator series, scale back.
pub fn logm(p: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    assert!(p.is_square(), "logm needs a square matrix");
    let n = p.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let mut x = p.clone();
    let mut depth = 0;
    while norm1(&(&x - &id)) >= LOGM_RADIUS {
        if depth == MAX_SQRT_DEPTH {
            return Err(Error::LogNonConvergence(format!(
                "still {:.3e} from the identity after {MAX_SQRT_DEPTH} square roots",
                norm1(&(&x - &id))
            )));
        }
        x = sqrtm(&x)?;
        if !x.iter().all(|v| v.is_finite()) {
            return Err(Error::LogNonConvergence("non-finite square root".into()));
        }
        depth += 1;
    }
    let e = &x - &id;
    let mut sum = DMatrix::<f64>::zeros(n, n);
    let mut power = e.clone();
    for k in 1..=MAX_SERIES_TERMS {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let term = &power * (sign / k as f64);
        sum += &term;
        if norm1(&term) < SERIES_TOL {
            break;
        }
        power = &power * &e;
    }
    Ok(sum * 2f64.powi(depth as i32))
}
