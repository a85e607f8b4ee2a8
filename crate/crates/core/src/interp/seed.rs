//! Explicit candidate from the singular value decomposition of `π(x)`.
//!
//! With `x = Σ μ_g E_g` (clustered singular values, partial isometries `E_g`),
//! `F(z) = Σ μ_g (μ_g/c)^{p(z−θ)} E_g` with `p = 1/θ` has constant side norms
//! `c` and `c^{1−p} Σ μ_g^p ‖E_g‖₁` for the trace, which is optimal there.
//! The candidate is only used when every `E_g` lies in the algebra.

use super::endpoint::{sup_matrix, trace_norm_plain, CoupleSpec};
use super::minimax::{digest_coords, CandidateFamily, UpperBound};
use crate::densemat::{svd, CMatrix, ZERO};
use crate::error::Result;
use crate::jordan::JordanElement;

/// Largest allowed distance of a partial isometry from the algebra.
pub const MEMBERSHIP_TOL: f64 = 1e-8;
const CLUSTER_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct SpectralSeed {
    /// `(μ_g, E_g)` with `E_g` projected into the algebra.
    pub clusters: Vec<(f64, JordanElement)>,
    /// `Σ ‖π(E_g) − exact partial isometry‖_∞`, weighted per use.
    pub membership: Vec<f64>,
    /// `x − Σ μ_g E_g`.
    pub residual: JordanElement,
}

impl SpectralSeed {
    /// `None` when some cluster partial isometry is not in the algebra.
    pub fn new(x: &JordanElement) -> Result<Option<Self>> {
        let alg = x.algebra();
        let m = x.represent()?;
        let dec = svd(&m)?;
        let top = dec.s.first().copied().unwrap_or(0.0);
        let n = m.rows();
        let mut clusters = Vec::new();
        let mut membership = Vec::new();
        let mut reconstructed = vec![ZERO; alg.dim()];
        let mut i = 0;
        while i < n && dec.s[i] > 1e-14 * top {
            let mut j = i + 1;
            while j < n && dec.s[j] > 1e-14 * top && dec.s[i] - dec.s[j] <= CLUSTER_TOL * top {
                j += 1;
            }
            let mu = dec.s[i..j].iter().sum::<f64>() / (j - i) as f64;
            let exact = CMatrix::from_fn(n, n, |r, c| (i..j).map(|k| dec.u[(r, k)] * dec.v[(c, k)].conj()).sum());
            let (e, _) = alg.from_matrix(&exact)?;
            let gap = sup_matrix(&(&e.represent()? - &exact))?;
            if gap > MEMBERSHIP_TOL {
                return Ok(None);
            }
            for (acc, v) in reconstructed.iter_mut().zip(e.coords()) {
                *acc += v * mu;
            }
            clusters.push((mu, e));
            membership.push(gap);
            i = j;
        }
        let residual = x - &alg.element(reconstructed)?;
        Ok(Some(SpectralSeed { clusters, membership, residual }))
    }

    /// Certified bound for the candidate at `spec.theta()`, scaled by `c`.
    pub fn upper_bound(&self, x: &JordanElement, spec: &CoupleSpec, scale: f64) -> Result<UpperBound> {
        spec.check(x)?;
        let p = 1.0 / spec.theta();
        let res0 = sup_matrix(&spec.zero_matrix(self.residual.coords())?)?;
        let res1 = trace_norm_plain(&spec.one_matrix(self.residual.coords())?)?;
        // on Re z = 0 every cluster has modulus μ^{1−pθ} c^{pθ} = c
        let mut side0 = if self.clusters.is_empty() { 0.0 } else { scale };
        let mut side1 = 0.0;
        for ((mu, e), gap) in self.clusters.iter().zip(&self.membership) {
            side0 += scale * gap;
            let weight = mu.powf(p) * scale.powf(1.0 - p);
            side1 += weight * trace_norm_plain(&spec.one_matrix(e.coords())?)?;
        }
        let side_bounds = [side0 + res0, side1 + res1];
        let parts: Vec<&[_]> = self.clusters.iter().map(|(_, e)| e.coords()).collect();
        Ok(UpperBound {
            value: side_bounds[0].max(side_bounds[1]),
            family: CandidateFamily::SpectralSeed,
            degree: 0,
            grid: 0,
            side_bounds,
            padding: [0.0; 2],
            stagnated: false,
            digest: digest_coords(parts),
            coefficients: Vec::new(),
        })
    }

    /// `Σ μ_g^{p−1} E_g*`, the pairing partner that attains the trace-case norm.
    pub fn dual_witness(&self, p: f64) -> Option<JordanElement> {
        let (_, first) = self.clusters.first()?;
        let mut acc = first.algebra().zero();
        for (mu, e) in &self.clusters {
            acc = &acc + &e.star().scale_real(mu.powf(p - 1.0));
        }
        Some(acc)
    }
}
