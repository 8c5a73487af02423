//! Bernstein functions of drift-plus-stable-mixture form, their
//! inverses, and weak-lower-scaling certificates.
//!
//! A spec `φ(λ) = b·λ + Σ_j c_j λ^{β_j}` with `b ≥ 0`, `c_j > 0` and
//! `β_j ∈ (0,1]` is the Laplace exponent of a subordinator with drift
//! `b`. The family covers Brownian motions, stable subordinators and
//! their positive mixtures, and keeps inverse functions and scaling
//! certificates exactly computable.

use crate::error::{Error, Result};

/// One concrete Bernstein function: drift plus stable powers.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinSpec {
    drift: f64,
    terms: Vec<(f64, f64)>, // (coefficient, exponent)
}

/// Weak-lower-scaling certificate: `c0 (R/r)^{delta0} ≤ φ(R)/φ(r)` for
/// all `0 < r < R`, with the concavity upper bound `φ(R)/φ(r) ≤ R/r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingCertificate {
    pub c0: f64,
    pub delta0: f64,
}

impl BernsteinSpec {
    /// Build a spec from a drift and `(coefficient, exponent)` terms.
    pub fn new(drift: f64, terms: &[(f64, f64)]) -> Result<Self> {
        if !(drift >= 0.0) || !drift.is_finite() {
            return Err(Error::param(format!("drift must be finite and >= 0, got {drift}")));
        }
        for &(c, beta) in terms {
            if !(c > 0.0) || !c.is_finite() {
                return Err(Error::param(format!("coefficient must be > 0, got {c}")));
            }
            if !(beta > 0.0 && beta <= 1.0) {
                return Err(Error::param(format!("exponent must lie in (0,1], got {beta}")));
            }
        }
        if terms.is_empty() && drift == 0.0 {
            return Err(Error::param("need a positive drift or at least one term"));
        }
        Ok(Self {
            drift,
            terms: terms.to_vec(),
        })
    }

    /// Pure stable power `λ^beta`.
    pub fn stable(beta: f64) -> Result<Self> {
        Self::new(0.0, &[(1.0, beta)])
    }

    /// Pure drift `b·λ` (Brownian block for `b = 1`).
    pub fn brownian() -> Self {
        Self::new(1.0, &[]).expect("unit drift is valid")
    }

    pub fn drift(&self) -> f64 {
        self.drift
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    /// Evaluate `φ(λ)` for `λ > 0`.
    pub fn eval(&self, lambda: f64) -> Result<f64> {
        if !(lambda > 0.0) {
            return Err(Error::domain(format!("phi requires lambda > 0, got {lambda}")));
        }
        let mut v = self.drift * lambda;
        for &(c, beta) in &self.terms {
            v += c * lambda.powf(beta);
        }
        Ok(v)
    }

    /// `φ⁻¹(y)` for `y > 0`, bracketed doubling followed by bisection
    /// to `|φ(λ) - y| ≤ 1e-12 · max(1, y)`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !(y > 0.0) {
            return Err(Error::domain(format!("inverse requires y > 0, got {y}")));
        }
        let tol = 1e-12 * y.max(1.0);
        // seed from the dominant single-term inversions
        let mut guess = f64::INFINITY;
        if self.drift > 0.0 {
            guess = guess.min(y / self.drift);
        }
        for &(c, beta) in &self.terms {
            guess = guess.min((y / c).powf(1.0 / beta));
        }
        let mut lo = guess;
        while self.eval(lo)? > y {
            lo *= 0.5;
            if lo < 1e-300 {
                return Ok(0.0);
            }
        }
        let mut hi = lo.max(guess);
        while self.eval(hi)? < y {
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::Numerics(format!("inverse bracket blew up for y = {y}")));
            }
        }
        // bisect to a safe bracket, then Newton-polish inside it
        for _ in 0..60 {
            if (hi - lo) <= 1e-6 * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.eval(mid)? < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..40 {
            let fx = self.eval(x)? - y;
            if fx.abs() <= tol && (hi - lo) <= 1e-13 * hi {
                break;
            }
            if fx < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let dfx = self.derivative(x)?;
            let step = fx / dfx;
            let cand = x - step;
            x = if cand > lo && cand < hi {
                cand
            } else {
                0.5 * (lo + hi)
            };
            if (hi - lo) <= 1e-15 * hi {
                break;
            }
        }
        Ok(x)
    }

    /// `φ'(λ)` for `λ > 0`.
    pub fn derivative(&self, lambda: f64) -> Result<f64> {
        if !(lambda > 0.0) {
            return Err(Error::domain(format!("phi' requires lambda > 0, got {lambda}")));
        }
        let mut v = self.drift;
        for &(c, beta) in &self.terms {
            v += c * beta * lambda.powf(beta - 1.0);
        }
        Ok(v)
    }

    /// Scaling certificate: `c0 = 1`, `delta0 = min` of the exponents
    /// present, counting a positive drift as exponent 1.
    pub fn wls_certificate(&self) -> ScalingCertificate {
        let mut delta0 = if self.drift > 0.0 { 1.0 } else { f64::INFINITY };
        for &(_, beta) in &self.terms {
            delta0 = delta0.min(beta);
        }
        ScalingCertificate { c0: 1.0, delta0 }
    }
}

impl ScalingCertificate {
    /// Check the two-sided sandwich on one ratio pair.
    pub fn sandwich_holds(&self, spec: &BernsteinSpec, r: f64, big_r: f64) -> Result<bool> {
        let ratio = spec.eval(big_r)? / spec.eval(r)?;
        let q = big_r / r;
        let slack = 1.0 + 1e-12;
        Ok(self.c0 * q.powf(self.delta0) <= ratio * slack && ratio <= q * slack)
    }
}
