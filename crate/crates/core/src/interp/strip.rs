//! Strip geometry and polynomial strip candidates.
//!
//! The closed strip `0 ≤ Re z ≤ 1` is sent to the closed unit disk by
//! `ζ = e^{iπz}` followed by `w = (ζ − e^{iπθ}) / (ζ − e^{−iπθ})`, so `w(θ) = 0`.
//! On the boundary `w = e^{iα}`: the line `Re z = 0` covers `α ∈ [2πθ, 2π]`
//! and the line `Re z = 1` covers `α ∈ [0, 2πθ]`; `α = 0` and `α = 2πθ` are the
//! two ends `t → ±∞`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::densemat::{C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::jordan::{JordanAlgebra, JordanElement};

/// `w(z)` for the strip centred at `θ`.
pub fn conformal_map(theta: f64, z: C64) -> C64 {
    let zeta = (C64::new(0.0, PI) * z).exp();
    let a = C64::from_polar(1.0, PI * theta);
    (zeta - a) / (zeta - a.conj())
}

/// Which side of the strip a boundary point lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `Re z = 0`, measured in the algebra norm.
    Zero,
    /// `Re z = 1`, measured in the predual norm.
    One,
}

/// Angular range `[start, end]` of a side on the unit circle.
pub fn arc(theta: f64, side: Side) -> (f64, f64) {
    match side {
        Side::Zero => (2.0 * PI * theta, 2.0 * PI),
        Side::One => (0.0, 2.0 * PI * theta),
    }
}

/// `points` equally spaced angles covering the closed arc.
pub fn arc_grid(theta: f64, side: Side, points: usize) -> Vec<f64> {
    let (a, b) = arc(theta, side);
    let points = points.max(2);
    (0..points).map(|i| a + (b - a) * i as f64 / (points - 1) as f64).collect()
}

/// Height `t` of the boundary point `e^{iα}` on its side (`z = it` or `z = 1 + it`).
pub fn boundary_height(theta: f64, alpha: f64) -> f64 {
    let a = C64::from_polar(1.0, PI * theta);
    let w = C64::from_polar(1.0, alpha);
    let zeta = (w * a.conj() - a) / (w - ONE);
    // ζ is real on the boundary: positive on Re z = 0, negative on Re z = 1
    -zeta.re.abs().ln() / PI
}

/// `F(z) = e^{ε(z²−θ²)} Σ c_k w(z)^k` with `c_0` the interpolated element.
#[derive(Clone, Debug)]
pub struct StripCandidate {
    pub theta: f64,
    pub epsilon: f64,
    pub coefficients: Vec<JordanElement>,
}

impl StripCandidate {
    pub fn new(theta: f64, epsilon: f64, coefficients: Vec<JordanElement>) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::InvalidArgument(format!("θ must lie in (0, 1), got {theta}")));
        }
        if epsilon < 0.0 || !epsilon.is_finite() {
            return Err(Error::InvalidArgument(format!("ε must be finite and ≥ 0, got {epsilon}")));
        }
        let first = coefficients.first().ok_or_else(|| Error::InvalidArgument("no coefficients".into()))?;
        for c in &coefficients[1..] {
            first.ensure_same(c)?;
        }
        Ok(StripCandidate { theta, epsilon, coefficients })
    }

    /// Constant candidate `F ≡ x`.
    pub fn constant(x: &JordanElement, theta: f64) -> Result<Self> {
        Self::new(theta, 0.0, vec![x.clone()])
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn algebra(&self) -> &JordanAlgebra {
        self.coefficients[0].algebra()
    }

    /// Value at a point of the closed strip.
    pub fn evaluate(&self, z: C64) -> Result<JordanElement> {
        if !(-1e-12..=1.0 + 1e-12).contains(&z.re) {
            return Err(Error::InvalidArgument(format!("{z} lies outside the strip")));
        }
        let w = conformal_map(self.theta, z);
        let damping = (self.epsilon * (z * z - self.theta * self.theta)).exp();
        Ok(self.combine(w, damping))
    }

    /// Value at the boundary point `w = e^{iα}` without the regularizing factor.
    pub fn boundary_value(&self, alpha: f64) -> JordanElement {
        self.combine(C64::from_polar(1.0, alpha), ONE)
    }

    fn combine(&self, w: C64, factor: C64) -> JordanElement {
        let dim = self.algebra().dim();
        let mut acc = vec![ZERO; dim];
        let mut power = factor;
        for c in &self.coefficients {
            for (a, v) in acc.iter_mut().zip(c.coords()) {
                *a += power * v;
            }
            power *= w;
        }
        self.algebra().element(acc).expect("dimension matches")
    }

    /// Largest value of `|e^{ε(z²−θ²)}|` on a side of the strip.
    pub fn damping_bound(&self, side: Side) -> f64 {
        match side {
            Side::Zero => (-self.epsilon * self.theta * self.theta).exp(),
            Side::One => (self.epsilon * (1.0 - self.theta * self.theta)).exp(),
        }
    }
}
