//! Certified upper bounds from polynomial strip candidates.
//!
//! The coefficients `c_1..c_N` minimize the largest endpoint norm of
//! `Σ c_k e^{ikα}` over a boundary grid. The max is smoothed by log-sum-exp
//! with a decreasing temperature and minimized by accelerated gradient steps
//! with backtracking. The result is certified on a fine grid plus a Lipschitz
//! padding `L·h/2` with `L = Σ k‖c_k‖` per side.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::endpoint::{combine, CoupleSpec};
use super::strip::{arc, arc_grid, Side, StripCandidate};
use crate::densemat::{svd, CMatrix, C64, ZERO};
use crate::error::Result;
use crate::jordan::JordanElement;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimaxOptions {
    /// Number of temperature levels.
    pub smoothing_stages: usize,
    /// Gradient steps per temperature level.
    pub iterations: usize,
    /// Certification uses `max(refine · grid, min_certify)` points per side.
    pub refine: usize,
    pub min_certify: usize,
}

impl Default for MinimaxOptions {
    fn default() -> Self {
        MinimaxOptions { smoothing_stages: 6, iterations: 150, refine: 64, min_certify: 8192 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateFamily {
    Constant,
    Polynomial,
    /// Explicit candidate built from the singular value decomposition.
    SpectralSeed,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: f64,
    pub family: CandidateFamily,
    pub degree: usize,
    pub grid: usize,
    /// Certified sups per side, `[Re z = 0, Re z = 1]`, including padding and damping.
    pub side_bounds: [f64; 2],
    pub padding: [f64; 2],
    /// Line search gave up before the iteration budget was spent.
    pub stagnated: bool,
    pub digest: String,
    /// Optimized `c_1..c_N` coordinates, reusable as a warm start.
    #[serde(skip)]
    pub coefficients: Vec<Vec<C64>>,
}

pub(crate) fn digest_coords<'a>(parts: impl IntoIterator<Item = &'a [C64]>) -> String {
    let mut h = Sha256::new();
    for part in parts {
        for z in part {
            h.update(z.re.to_le_bytes());
            h.update(z.im.to_le_bytes());
        }
        h.update([0xff]);
    }
    hex::encode(&h.finalize()[..16])
}

/// Endpoint norm of an ambient matrix on one side, with the matching subgradient.
fn side_norm(m: &CMatrix, side: Side, want_grad: bool) -> Result<(f64, Option<CMatrix>)> {
    let dec = svd(m)?;
    match side {
        Side::Zero => {
            let value = dec.s[0];
            let grad = want_grad.then(|| {
                let n = m.rows();
                CMatrix::from_fn(n, n, |r, c| dec.u[(r, 0)] * dec.v[(c, 0)].conj())
            });
            Ok((value, grad))
        }
        Side::One => {
            let value = dec.s.iter().sum();
            Ok((value, want_grad.then(|| dec.polar_unitary())))
        }
    }
}

fn side_index(side: Side) -> usize {
    match side {
        Side::Zero => 0,
        Side::One => 1,
    }
}

struct Problem<'a> {
    spec: &'a CoupleSpec,
    degree: usize,
    dim: usize,
    /// `(side, w)` per grid point.
    points: Vec<(Side, C64)>,
    /// `π(x)` and `P(R_x)`.
    fixed: [CMatrix; 2],
}

struct Evaluation {
    values: Vec<f64>,
    /// `⟨basis_j, G_i⟩` per point.
    adjoints: Vec<Vec<C64>>,
}

impl<'a> Problem<'a> {
    fn new(x: &JordanElement, spec: &'a CoupleSpec, degree: usize, grid: usize) -> Result<Self> {
        let theta = spec.theta();
        let mut points = Vec::with_capacity(2 * grid);
        for side in [Side::Zero, Side::One] {
            for a in arc_grid(theta, side, grid) {
                points.push((side, C64::from_polar(1.0, a)));
            }
        }
        Ok(Problem {
            spec,
            degree,
            dim: spec.algebra().dim(),
            points,
            fixed: [spec.zero_matrix(x.coords())?, spec.one_matrix(x.coords())?],
        })
    }

    fn basis(&self, side: Side) -> &[CMatrix] {
        match side {
            Side::Zero => &self.spec.data.basis_zero,
            Side::One => &self.spec.data.basis_one,
        }
    }

    /// Ambient matrices of `c_1..c_N` on both sides.
    fn coefficient_matrices(&self, c: &[C64]) -> [Vec<CMatrix>; 2] {
        let make = |side| c.chunks(self.dim).map(|ck| combine(self.basis(side), ck)).collect();
        [make(Side::Zero), make(Side::One)]
    }

    fn evaluate(&self, c: &[C64], want_grad: bool) -> Result<Evaluation> {
        let mats = self.coefficient_matrices(c);
        let mut values = Vec::with_capacity(self.points.len());
        let mut adjoints = Vec::with_capacity(if want_grad { self.points.len() } else { 0 });
        for &(side, w) in &self.points {
            let s = side_index(side);
            let mut m = self.fixed[s].clone();
            let mut power = w;
            for ck in &mats[s] {
                m = &m + &ck.scale(power);
                power *= w;
            }
            let (value, grad) = side_norm(&m, side, want_grad)?;
            values.push(value);
            if let Some(g) = grad {
                adjoints.push(self.basis(side).iter().map(|b| b.hs_inner(&g)).collect());
            }
        }
        Ok(Evaluation { values, adjoints })
    }

    /// Smoothed max `μ log Σ exp(g_i/μ)` and its gradient.
    fn smoothed(&self, c: &[C64], mu: f64, want_grad: bool) -> Result<(f64, f64, Vec<C64>)> {
        let ev = self.evaluate(c, want_grad)?;
        let top = ev.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = ev.values.iter().map(|g| ((g - top) / mu).exp()).collect();
        let total: f64 = weights.iter().sum();
        let value = top + mu * total.ln();
        let mut grad = Vec::new();
        if want_grad {
            grad = vec![ZERO; self.degree * self.dim];
            for ((&(_, w), adj), wt) in self.points.iter().zip(&ev.adjoints).zip(&weights) {
                let pi = wt / total;
                if pi < 1e-16 {
                    continue;
                }
                let mut power = w.conj();
                for k in 0..self.degree {
                    let scale = power * pi;
                    for (g, a) in grad[k * self.dim..(k + 1) * self.dim].iter_mut().zip(adj) {
                        *g += scale * a;
                    }
                    power *= w.conj();
                }
            }
        }
        Ok((value, top, grad))
    }
}

fn axpy(y: &[C64], g: &[C64], step: f64) -> Vec<C64> {
    y.iter().zip(g).map(|(a, b)| a - b * step).collect()
}

fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Minimizes the grid max; returns `(coefficients, grid max, stagnated)`.
fn optimize(problem: &Problem, start: Vec<C64>, scale: f64, options: &MinimaxOptions) -> Result<(Vec<C64>, f64, bool)> {
    let mut best = start.clone();
    let mut best_max = problem.smoothed(&start, scale.max(1e-300), false)?.1;
    let mut stagnated = false;
    let mut c = start;
    let stages = options.smoothing_stages.max(1);
    let (mu_hi, mu_lo) = (0.05 * scale, 1e-4 * scale);
    let mut lipschitz = 1.0 / mu_hi;
    for stage in 0..stages {
        let mu = if stages == 1 { mu_lo } else { mu_hi * (mu_lo / mu_hi).powf(stage as f64 / (stages - 1) as f64) };
        if stage > 0 {
            lipschitz *= (mu_hi / mu_lo).powf(1.0 / (stages - 1) as f64);
        }
        let mut y = c.clone();
        let mut t: f64 = 1.0;
        let mut f_c = problem.smoothed(&c, mu, false)?.0;
        for _ in 0..options.iterations {
            let (f_y, _, g_y) = problem.smoothed(&y, mu, true)?;
            let gg = norm_sqr(&g_y);
            if gg == 0.0 {
                break;
            }
            let (next, f_next, max_next) = loop {
                let cand = axpy(&y, &g_y, 1.0 / lipschitz);
                let (f_cand, max_cand, _) = problem.smoothed(&cand, mu, false)?;
                if f_cand <= f_y - 0.5 * gg / lipschitz + 1e-14 * f_y.abs() {
                    break (cand, f_cand, max_cand);
                }
                lipschitz *= 2.0;
                if lipschitz > 1e14 / mu {
                    stagnated = true;
                    break (y.clone(), f_y, problem.smoothed(&y, mu, false)?.1);
                }
            };
            if max_next < best_max {
                best_max = max_next;
                best.clone_from(&next);
            }
            if stagnated {
                break;
            }
            let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
            if f_next > f_c {
                // restart the momentum
                t = 1.0;
                y = next.clone();
            } else {
                let beta = (t - 1.0) / t_next;
                y = next.iter().zip(&c).map(|(a, b)| a + (a - b) * beta).collect();
                t = t_next;
            }
            c = next;
            f_c = f_next;
            lipschitz *= 0.9;
        }
        if stagnated {
            break;
        }
    }
    Ok((best, best_max, stagnated))
}

/// Certified sup of the candidate's endpoint norms over each closed side.
pub(crate) fn certify(
    x: &JordanElement,
    spec: &CoupleSpec,
    coefficients: &[Vec<C64>],
    points: usize,
) -> Result<([f64; 2], [f64; 2])> {
    let theta = spec.theta();
    let fixed = [spec.zero_matrix(x.coords())?, spec.one_matrix(x.coords())?];
    let mats: [Vec<CMatrix>; 2] = [
        coefficients.iter().map(|c| combine(&spec.data.basis_zero, c)).collect(),
        coefficients.iter().map(|c| combine(&spec.data.basis_one, c)).collect(),
    ];
    let mut sups = [0.0; 2];
    let mut padding = [0.0; 2];
    for side in [Side::Zero, Side::One] {
        let s = side_index(side);
        let mut lipschitz = 0.0;
        for (k, m) in mats[s].iter().enumerate() {
            lipschitz += (k + 1) as f64 * side_norm(m, side, false)?.0;
        }
        if mats[s].is_empty() {
            sups[s] = side_norm(&fixed[s], side, false)?.0;
            continue;
        }
        let grid = arc_grid(theta, side, points);
        let (a, b) = arc(theta, side);
        let h = (b - a) / (grid.len() - 1) as f64;
        let values = grid
            .par_iter()
            .map(|&alpha| {
                let w = C64::from_polar(1.0, alpha);
                let mut m = fixed[s].clone();
                let mut power = w;
                for ck in &mats[s] {
                    m = &m + &ck.scale(power);
                    power *= w;
                }
                side_norm(&m, side, false).map(|v| v.0)
            })
            .collect::<Result<Vec<f64>>>()?;
        sups[s] = values.into_iter().fold(0.0, f64::max);
        padding[s] = 0.5 * lipschitz * h;
    }
    Ok((sups, padding))
}

/// Certified bound for the constant candidate `F ≡ x`.
pub fn constant_upper_bound(x: &JordanElement, spec: &CoupleSpec) -> Result<UpperBound> {
    spec.check(x)?;
    let (sups, _) = certify(x, spec, &[], 2)?;
    Ok(UpperBound {
        value: sups[0].max(sups[1]),
        family: CandidateFamily::Constant,
        degree: 0,
        grid: 0,
        side_bounds: sups,
        padding: [0.0; 2],
        stagnated: false,
        digest: digest_coords([x.coords()]),
        coefficients: Vec::new(),
    })
}

/// Certified upper bound from a degree-`N` polynomial candidate optimized on `grid` points per side.
///
/// With `ε > 0` the bound covers the regularized candidate `e^{ε(z²−θ²)} Σ c_k w^k`.
pub fn polynomial_upper_bound(
    x: &JordanElement,
    spec: &CoupleSpec,
    degree: usize,
    grid: usize,
    epsilon: f64,
    options: &MinimaxOptions,
    warm_start: Option<&[Vec<C64>]>,
) -> Result<UpperBound> {
    spec.check(x)?;
    let dim = spec.algebra().dim();
    let mut coefficients: Vec<Vec<C64>> = Vec::new();
    let mut stagnated = false;
    if degree > 0 {
        let problem = Problem::new(x, spec, degree, grid.max(2))?;
        let mut start = vec![ZERO; degree * dim];
        if let Some(warm) = warm_start {
            for (k, ck) in warm.iter().take(degree).enumerate() {
                start[k * dim..(k + 1) * dim].copy_from_slice(ck);
            }
        }
        let scale = problem.evaluate(&start, false)?.values.iter().copied().fold(0.0, f64::max);
        if scale > 0.0 {
            let (best, _, stag) = optimize(&problem, start, scale, options)?;
            stagnated = stag;
            coefficients = best.chunks(dim).map(|c| c.to_vec()).collect();
        } else {
            coefficients = vec![vec![ZERO; dim]; degree];
        }
    }
    let points = (options.refine * grid).max(options.min_certify);
    let (sups, padding) = certify(x, spec, &coefficients, points)?;
    let mut all = vec![x.coords().to_vec()];
    all.extend(coefficients.iter().cloned());
    let candidate = StripCandidate::new(
        spec.theta(),
        epsilon,
        all.iter().map(|c| spec.algebra().element(c.clone())).collect::<Result<Vec<_>>>()?,
    )?;
    let side_bounds = [
        (sups[0] + padding[0]) * candidate.damping_bound(Side::Zero),
        (sups[1] + padding[1]) * candidate.damping_bound(Side::One),
    ];
    Ok(UpperBound {
        value: side_bounds[0].max(side_bounds[1]),
        family: if degree == 0 { CandidateFamily::Constant } else { CandidateFamily::Polynomial },
        degree,
        grid,
        side_bounds,
        padding,
        stagnated,
        digest: digest_coords(all.iter().map(|c| c.as_slice())),
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::matrix_jordan;
    use crate::densemat::ONE;
    use crate::harness::{generate_element, Distribution};
    use crate::jordan::StateFunctional;

    fn m2_spec(theta: f64) -> CoupleSpec {
        let alg = matrix_jordan(2).unwrap();
        CoupleSpec::new(&StateFunctional::canonical_trace(&alg).unwrap(), theta).unwrap()
    }

    #[test]
    fn constant_candidate_gives_endpoint_max() {
        let spec = m2_spec(0.4);
        let x = generate_element(spec.algebra(), Distribution::Ball, 1, 0).unwrap();
        let c = constant_upper_bound(&x, &spec).unwrap();
        let e0 = x.sup_norm().unwrap();
        let e1 = super::super::endpoint::endpoint1_norm(&x, &spec).unwrap().upper;
        assert!((c.value - e0.max(e1)).abs() < 1e-14);
        let p = polynomial_upper_bound(&x, &spec, 0, 8, 0.0, &MinimaxOptions::default(), None).unwrap();
        assert!((p.value - c.value).abs() < 1e-14);
    }

    #[test]
    fn scalar_algebra_gives_modulus() {
        let alg = matrix_jordan(1).unwrap();
        let spec = CoupleSpec::new(&StateFunctional::canonical_trace(&alg).unwrap(), 0.3).unwrap();
        let x = alg.element(vec![C64::new(0.6, -0.8) * 2.0]).unwrap();
        let ub = polynomial_upper_bound(&x, &spec, 4, 16, 0.0, &MinimaxOptions::default(), None).unwrap();
        assert!(ub.value >= 2.0 - 1e-12 && ub.value <= 2.0 * (1.0 + 1e-6), "{}", ub.value);
    }

    #[test]
    fn diagonal_idempotent_at_half() {
        let spec = m2_spec(0.5);
        let x = spec.algebra().element(vec![ONE, ZERO, ZERO, ZERO]).unwrap();
        let oracle = 0.5f64.sqrt();
        let ub = polynomial_upper_bound(&x, &spec, 16, 64, 0.0, &MinimaxOptions::default(), None).unwrap();
        assert!(ub.value >= oracle - 1e-12, "{}", ub.value);
        assert!(ub.value <= 1.05 * oracle, "{} vs {oracle}", ub.value);
        let low = polynomial_upper_bound(&x, &spec, 2, 32, 0.0, &MinimaxOptions::default(), None).unwrap();
        assert!(ub.value <= low.value + 1e-9);
        let reg = polynomial_upper_bound(&x, &spec, 2, 32, 1e-3, &MinimaxOptions::default(), None).unwrap();
        assert!(reg.side_bounds[1] >= low.side_bounds[1] && reg.side_bounds[0] <= low.side_bounds[0]);
    }
}
