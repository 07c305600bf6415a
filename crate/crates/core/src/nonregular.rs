//! A path of diffeomorphisms of `(0, 1)` with constant derivative `1` at
//! `t = 0`, and the failure of the equation `∂_t g ∘ g⁻¹ = 1` to have a
//! solution among such diffeomorphisms.
//!
//! `P(x) = (x − x²)/2`, `φ(t, x) = P t / ((1 − P) t + P)`,
//! `c_t = id + φ(t, ·)` for `t ≥ 0` and `c_t = id − φ(−t, ·)` for `t < 0`.

use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result};

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("x = {x} is not in (0, 1)")))
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > -1.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("t = {t} is not in (-1, 1)")))
    }
}

pub fn p(x: f64) -> f64 {
    (x - x * x) / 2.0
}

pub fn dp(x: f64) -> f64 {
    (1.0 - 2.0 * x) / 2.0
}

/// `sup_{(0,1)} |P'| = |P'(0)|`, approached at both ends.
pub fn sup_abs_dp() -> f64 {
    dp(0.0).abs().max(dp(1.0).abs())
}

/// `φ(t, x)` for `t ≥ 0`.
pub fn phi(t: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    if t.is_nan() || t < 0.0 {
        return Err(Error::OutOfDomain(format!("phi needs t >= 0, got {t}")));
    }
    let px = p(x);
    Ok(px * t / ((1.0 - px) * t + px))
}

/// `∂_x φ = t² P' / (t + P (1 − t))²`.
pub fn dphi_dx(t: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    let d = t + p(x) * (1.0 - t);
    Ok(t * t * dp(x) / (d * d))
}

/// `∂_t φ = (P / ((1 − P) t + P))²`.
pub fn dphi_dt(t: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    let px = p(x);
    let r = px / ((1.0 - px) * t + px);
    Ok(r * r)
}

pub fn c(t: f64, x: f64) -> Result<f64> {
    check_t(t)?;
    if t >= 0.0 {
        Ok(x + phi(t, x)?)
    } else {
        Ok(x - phi(-t, x)?)
    }
}

/// `∂_x c_t(x)` in closed form.
pub fn dc_dx(t: f64, x: f64) -> Result<f64> {
    check_t(t)?;
    if t >= 0.0 {
        Ok(1.0 + dphi_dx(t, x)?)
    } else {
        Ok(1.0 - dphi_dx(-t, x)?)
    }
}

/// `∂_t c_t(x)` in closed form.
pub fn dc_dt(t: f64, x: f64) -> Result<f64> {
    check_t(t)?;
    dphi_dt(t.abs(), x)
}

/// Values and derivatives of `c_t` on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffeoSample {
    pub t: f64,
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub derivatives: Vec<f64>,
}

impl DiffeoSample {
    pub fn new(t: f64, xs: Vec<f64>) -> Result<Self> {
        let values = xs.iter().map(|&x| c(t, x)).collect::<Result<_>>()?;
        let derivatives = xs.iter().map(|&x| dc_dx(t, x)).collect::<Result<_>>()?;
        Ok(DiffeoSample { t, xs, values, derivatives })
    }
}

/// `x_i = i / (n + 1)`, `i = 1..=n`.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|i| i as f64 / (n + 1) as f64).collect()
}

/// Central difference of `x ↦ c_t(x)` with step `min(1e-5, x/2, (1−x)/2)`.
pub fn dc_dx_numeric(t: f64, x: f64) -> Result<f64> {
    let h = 1e-5f64.min(x / 2.0).min((1.0 - x) / 2.0);
    Ok((c(t, x + h)? - c(t, x - h)?) / (2.0 * h))
}

/// Smallest slacks of the membership bounds on a grid; a bound holds when
/// its slack is positive.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub t: f64,
    pub points: usize,
    /// `min (c_t − (x − P))`.
    pub lower_slack: f64,
    /// `min ((x + P) − c_t)`.
    pub upper_slack: f64,
    /// `min (min(c_t, 1 − c_t))`.
    pub range_slack: f64,
    /// `min (|P'| − |∂_x c_t − 1|)`, zero allowed.
    pub derivative_slack: f64,
    pub min_derivative: f64,
    /// `max |closed form − central difference|` of `∂_x c_t`.
    pub fd_residual: f64,
    pub increasing: bool,
    /// `max(|c_t(1e-9)|, |1 − c_t(1 − 1e-9)|)`.
    pub boundary_residual: f64,
    pub sup_abs_dp: f64,
}

impl MembershipReport {
    pub fn pass(&self) -> bool {
        self.lower_slack > 0.0
            && self.upper_slack > 0.0
            && self.range_slack > 0.0
            && self.derivative_slack >= 0.0
            && self.min_derivative > 0.0
            && self.fd_residual <= 1e-8
            && self.increasing
            && self.boundary_residual <= 1e-6
            && self.sup_abs_dp < 1.0
    }
}

pub fn check_membership(t: f64, grid: &[f64]) -> Result<MembershipReport> {
    check_t(t)?;
    let mut r = MembershipReport {
        t,
        points: grid.len(),
        lower_slack: f64::INFINITY,
        upper_slack: f64::INFINITY,
        range_slack: f64::INFINITY,
        derivative_slack: f64::INFINITY,
        min_derivative: f64::INFINITY,
        fd_residual: 0.0,
        increasing: true,
        boundary_residual: c(t, 1e-9)?.abs().max((1.0 - c(t, 1.0 - 1e-9)?).abs()),
        sup_abs_dp: sup_abs_dp(),
    };
    let mut prev = f64::NEG_INFINITY;
    for &x in grid {
        let (v, d, px) = (c(t, x)?, dc_dx(t, x)?, p(x));
        r.lower_slack = r.lower_slack.min(v - (x - px));
        r.upper_slack = r.upper_slack.min((x + px) - v);
        r.range_slack = r.range_slack.min(v.min(1.0 - v));
        r.derivative_slack = r.derivative_slack.min(dp(x).abs() - (d - 1.0).abs());
        r.min_derivative = r.min_derivative.min(d);
        r.fd_residual = r.fd_residual.max((d - dc_dx_numeric(t, x)?).abs());
        r.increasing &= v > prev;
        prev = v;
    }
    Ok(r)
}

/// `∂_t c_t |_{t=0}` in closed form at each `x`.
pub fn derivative_at_zero(grid: &[f64]) -> Result<Vec<f64>> {
    grid.iter().map(|&x| dc_dt(0.0, x)).collect()
}

/// Forward difference `(c_h(x) − c_0(x)) / h`.
pub fn derivative_at_zero_numeric(h: f64, x: f64) -> Result<f64> {
    Ok((c(h, x)? - c(0.0, x)?) / h)
}

/// `‖c_t − id‖_{n,0} = sup_{1/(n+1) ≤ x ≤ n/(n+1)} |c_t(x) − x|`, sampled on
/// a grid of `samples + 1` points of that interval.
pub fn seminorm_distance(t: f64, n: usize, samples: usize) -> Result<f64> {
    if n == 0 || samples == 0 {
        return Err(Error::OutOfDomain("n and samples must be positive".into()));
    }
    let (a, b) = (1.0 / (n + 1) as f64, n as f64 / (n + 1) as f64);
    let mut worst: f64 = 0.0;
    for i in 0..=samples {
        let x = a + (b - a) * i as f64 / samples as f64;
        let x = x.clamp(a, b);
        if x > 0.0 && x < 1.0 {
            worst = worst.max((c(t, x)? - x).abs());
        }
    }
    Ok(worst)
}

/// The only candidate solution of `∂_t g ∘ g⁻¹ = 1`.
pub fn translation(t: f64, x: f64) -> f64 {
    x + t
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeVerdict {
    pub t: f64,
    /// `lim_{x→1} g_t(x)`.
    pub limit_at_one: f64,
    /// `g_t` violates `lim_{x→1} g_t(x) = 1`, so `g_t ∉ 𝒟`.
    pub escapes: bool,
}

/// The translation `g_t` leaves the group for every `t > 0`; `t = 0` gives
/// the identity.
pub fn ode_escape_check(t: f64) -> Result<EscapeVerdict> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::OutOfDomain(format!("t = {t}")));
    }
    // g_t is continuous on [0, 1], so the limit is the value at 1
    let limit_at_one = translation(t, 1.0);
    Ok(EscapeVerdict { t, limit_at_one, escapes: limit_at_one != 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(p(0.5), 0.125);
        assert_eq!(phi(0.0, 0.3).unwrap(), 0.0);
        assert_eq!(phi(1.0, 0.5).unwrap(), 0.125);
        assert_eq!(c(1.0 - 1e-16, 0.5).unwrap(), 0.625);
        assert_eq!(c(0.0, 0.37).unwrap(), 0.37);
        assert!(c(1.0, 0.5).is_err());
        assert!(c(0.5, 0.0).is_err());
        assert!(phi(-0.5, 0.5).is_err());
    }

    #[test]
    fn derivatives_match_differences() {
        for t in [-0.7, -0.2, 0.0, 0.3, 0.8] {
            for x in [0.01, 0.2, 0.5, 0.9] {
                assert!((dc_dx(t, x).unwrap() - dc_dx_numeric(t, x).unwrap()).abs() < 1e-8);
                let h = 1e-6;
                let num = if t + h < 1.0 { (c(t + h, x).unwrap() - c(t - h, x).unwrap()) / (2.0 * h) } else { 0.0 };
                if t != 0.0 {
                    assert!((dc_dt(t, x).unwrap() - num).abs() < 1e-6, "{t} {x}");
                }
            }
        }
    }

    #[test]
    fn membership_on_a_grid() {
        let grid = uniform_grid(10_000);
        for t in [-0.9, -0.5, -0.1, 0.0, 0.1, 0.5, 0.9] {
            let r = check_membership(t, &grid).unwrap();
            assert!(r.pass(), "{r:?}");
        }
        assert_eq!(sup_abs_dp(), 0.5);
    }

    #[test]
    fn derivative_at_origin() {
        assert!(derivative_at_zero(&[1e-9, 0.25, 0.5]).unwrap().iter().all(|&d| d == 1.0));
        let e1 = (derivative_at_zero_numeric(1e-4, 0.5).unwrap() - 1.0).abs();
        let e2 = (derivative_at_zero_numeric(5e-5, 0.5).unwrap() - 1.0).abs();
        assert!(e1 < 1e-3);
        assert!((e1 / e2 - 2.0).abs() < 0.01);
    }

    #[test]
    fn seminorms_and_escape() {
        for t in [-0.9, -0.5, 0.5, 0.9] {
            for n in 1..=10 {
                assert!(seminorm_distance(t, n, 1000).unwrap() < 0.125);
            }
        }
        assert!(!ode_escape_check(0.0).unwrap().escapes);
        let v = ode_escape_check(0.1).unwrap();
        assert!(v.escapes && (v.limit_at_one - 1.1).abs() < 1e-15);
        assert_eq!(ode_escape_check(1.0).unwrap().limit_at_one, 2.0);
        assert!(ode_escape_check(-0.1).is_err());
    }
}
