//! Numerical check of `λ⁻² q_λ(t, x) → 2π δ(t) δ(x)`.
//!
//! With `u = t/λ²`,
//! `I(λ) = ∬ f(t,x) λ⁻² e^{-itx/λ²} dt dx = ∬ f(λ²u, x) e^{-iux} du dx`,
//! computed by nested double-exponential quadrature on truncated ranges.

use std::f64::consts::PI;
use std::fmt::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum TestFunction {
    /// `e^{-(t²+x²)/2}`
    Gaussian,
    Zero,
    /// `amplitude · e^{-(t²+x²)/(2σ²)}`
    ScaledGaussian {
        amplitude: f64,
        sigma: f64,
    },
}

impl TestFunction {
    pub fn eval(&self, t: f64, x: f64) -> f64 {
        match *self {
            TestFunction::Gaussian => (-(t * t + x * x) / 2.0).exp(),
            TestFunction::Zero => 0.0,
            TestFunction::ScaledGaussian { amplitude, sigma } => {
                amplitude * (-(t * t + x * x) / (2.0 * sigma * sigma)).exp()
            }
        }
    }

    /// Width used to truncate both integration ranges.
    fn sigma(&self) -> f64 {
        match *self {
            TestFunction::ScaledGaussian { sigma, .. } => sigma,
            _ => 1.0,
        }
    }

    /// Limit value `2π f(0,0)`.
    pub fn target(&self) -> f64 {
        2.0 * PI * self.eval(0.0, 0.0)
    }
}

/// Absolute tolerance handed to each one-dimensional rule.
const TOLERANCE: f64 = 1e-12;
/// Accepted accumulated error estimate of one 2-D integral.
const ACCEPT: f64 = 1e-7;

/// Double-exponential rule over `[a, b]` split into `pieces` panels so that
/// each panel sees only a few oscillations. Returns (integral, error estimate).
fn panels(f: impl Fn(f64) -> f64, a: f64, b: f64, pieces: usize) -> (f64, f64) {
    let h = (b - a) / pieces as f64;
    (0..pieces).fold((0.0, 0.0), |(sum, err), i| {
        let lo = a + i as f64 * h;
        let out = quadrature::double_exponential::integrate(&f, lo, lo + h, TOLERANCE);
        (sum + out.integral, err + out.error_estimate)
    })
}

fn pieces_for(width: f64, frequency: f64) -> usize {
    // about one oscillation per panel, never fewer than 8 panels
    ((width * frequency.abs() / (2.0 * PI)).ceil() as usize).max(8)
}

/// `I(λ)` for the test function `f`.
pub fn oscillation_quadrature(f: &TestFunction, lambda: f64) -> Result<Complex64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    if matches!(f, TestFunction::Zero) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let sigma = f.sigma();
    let l2 = lambda * lambda;
    let x_max = 12.0 * sigma;
    // f(λ²u, ·) confines u to 12σ/λ²; the x-transform confines it to 12/σ.
    let u_max = (12.0 * sigma / l2).min(12.0 / sigma);

    let inner = |u: f64, part: fn(f64) -> f64| -> (f64, f64) {
        panels(
            |x| f.eval(l2 * u, x) * part(-u * x),
            -x_max,
            x_max,
            pieces_for(2.0 * x_max, u),
        )
    };
    // inner errors propagate as (max inner error) × (length of the u range)
    let outer = |part: fn(f64) -> f64| -> (f64, f64) {
        let worst_inner = std::cell::Cell::new(0.0f64);
        let (value, outer_err) = panels(
            |u| {
                let (v, e) = inner(u, part);
                worst_inner.set(worst_inner.get().max(e));
                v
            },
            -u_max,
            u_max,
            pieces_for(2.0 * u_max, x_max),
        );
        (value, outer_err + worst_inner.get() * 2.0 * u_max)
    };

    let (re, re_err) = outer(f64::cos);
    let (im, im_err) = outer(f64::sin);
    let estimate = re_err + im_err;
    if !(estimate <= ACCEPT) || !re.is_finite() || !im.is_finite() {
        return Err(Error::QuadratureNotConverged { lambda, estimate });
    }
    Ok(Complex64::new(re, im))
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuadraturePoint {
    pub lambda: f64,
    pub real_part: f64,
    pub imag_part: f64,
    /// `|I(λ) - 2π f(0,0)|`
    pub abs_error: f64,
}

pub fn sweep(f: &TestFunction, lambdas: &[f64]) -> Result<Vec<QuadraturePoint>> {
    lambdas
        .iter()
        .map(|&lambda| {
            let v = oscillation_quadrature(f, lambda)?;
            Ok(QuadraturePoint {
                lambda,
                real_part: v.re,
                imag_part: v.im,
                abs_error: (v - Complex64::new(f.target(), 0.0)).norm(),
            })
        })
        .collect()
}

pub const DEFAULT_SWEEP: [f64; 4] = [0.4, 0.2, 0.1, 0.05];

pub fn to_csv(points: &[QuadraturePoint]) -> String {
    let mut out = String::from("lambda,realPart,imagPart,absError\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{:.15e},{:.15e},{:.6e}",
            p.lambda, p.real_part, p.imag_part, p.abs_error
        );
    }
    out
}
