//! Two-sided numerical bounds for the complex interpolation norm of the couple
//! `(𝓜, 𝓜_*)` of a represented algebra with a faithful state.
//!
//! Upper bounds come from explicit analytic candidates `F` on the strip with
//! `F(θ) = x`. Lower bounds come from the pairing `|φ(x∘y)| ≤ ‖x‖_θ ‖y‖_{1−θ}`
//! with upper bounds for the witnesses `y` at `1 − θ`.

pub mod endpoint;
pub mod minimax;
pub mod seed;
pub mod strip;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use endpoint::{endpoint1_duality_check, endpoint1_norm, ricard_xu_reference, CoupleSpec, Endpoint1Norm};
pub use minimax::{constant_upper_bound, polynomial_upper_bound, CandidateFamily, MinimaxOptions, UpperBound};
pub use seed::SpectralSeed;
pub use strip::{conformal_map, Side, StripCandidate};

use crate::densemat::C64;
use crate::error::{Error, Result};
use crate::jordan::JordanElement;
use crate::lp::ambient_schatten_norm;
use crate::sampling::{gaussian_coords, stream_rng};

/// Witnesses whose upper bounds are refined at each stage.
const WITNESSES_REFINED: usize = 2;

/// Escalation schedule and stopping rule for [`bracket`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterpBudget {
    /// `(degree, grid)` stages, tried in order.
    pub stages: Vec<(usize, usize)>,
    /// Stop once `upper / lower` is at most this.
    pub target_ratio: f64,
    /// Random witnesses tried when the deterministic ones fall short.
    pub random_witnesses: usize,
    pub epsilon: f64,
    pub seed: u64,
    #[serde(default)]
    pub minimax: MinimaxOptions,
}

impl Default for InterpBudget {
    fn default() -> Self {
        InterpBudget {
            stages: vec![(0, 32), (2, 32), (4, 32), (8, 64), (16, 64), (16, 128), (32, 128), (48, 192)],
            target_ratio: 1.05,
            random_witnesses: 2,
            epsilon: 0.0,
            seed: 0,
            minimax: MinimaxOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketCertificate {
    /// Digest of the upper-bound candidate's coefficients.
    pub candidate: String,
    pub candidate_family: CandidateFamily,
    /// Digest and name of the witness behind the lower bound.
    pub witness: String,
    pub witness_name: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormBracket {
    pub theta: f64,
    pub lower: f64,
    pub upper: f64,
    pub certificate: BracketCertificate,
    /// Stage at which the bracket stopped.
    pub degree: usize,
    pub grid: usize,
    pub target_met: bool,
    /// Some optimizer run stopped early on a failed line search.
    pub stagnated: bool,
}

impl NormBracket {
    pub fn ratio(&self) -> f64 {
        if self.lower > 0.0 {
            self.upper / self.lower
        } else {
            f64::INFINITY
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.upper + self.lower)
    }

    /// `lower − tol ≤ value ≤ upper + tol` with a relative `tol`.
    pub fn contains(&self, value: f64, rel_tol: f64) -> bool {
        let slack = rel_tol * value.abs().max(self.upper.abs());
        value >= self.lower - slack && value <= self.upper + slack
    }
}

/// Keeps the best upper bound found for one element across stages.
struct UpperTracker {
    x: JordanElement,
    best: Option<UpperBound>,
    warm: Option<Vec<Vec<C64>>>,
}

impl UpperTracker {
    fn new(x: JordanElement, spec: &CoupleSpec) -> Result<Self> {
        let mut best = constant_upper_bound(&x, spec)?;
        if let Some(s) = SpectralSeed::new(&x)? {
            let scale = ambient_schatten_norm(&x, 1.0 / spec.theta())?;
            if scale > 0.0 {
                let ub = s.upper_bound(&x, spec, scale)?;
                if ub.value < best.value {
                    best = ub;
                }
            }
        }
        Ok(UpperTracker { x, best: Some(best), warm: None })
    }

    fn value(&self) -> f64 {
        self.best.as_ref().map_or(f64::INFINITY, |b| b.value)
    }

    fn improve(&mut self, spec: &CoupleSpec, degree: usize, grid: usize, budget: &InterpBudget) -> Result<()> {
        if degree == 0 {
            return Ok(());
        }
        let ub = polynomial_upper_bound(&self.x, spec, degree, grid, budget.epsilon, &budget.minimax, self.warm.as_deref())?;
        self.warm = Some(ub.coefficients.clone());
        if ub.value < self.value() {
            self.best = Some(ub);
        } else if ub.stagnated {
            if let Some(b) = self.best.as_mut() {
                b.stagnated = true;
            }
        }
        Ok(())
    }
}

/// Best certified upper bound from the constant, spectral-seed and degree-`N` polynomial candidates.
pub fn upper_bound(x: &JordanElement, spec: &CoupleSpec, degree: usize, grid: usize, epsilon: f64) -> Result<UpperBound> {
    let budget = InterpBudget { epsilon, ..InterpBudget::default() };
    let mut tracker = UpperTracker::new(x.clone(), spec)?;
    tracker.improve(spec, degree, grid, &budget)?;
    Ok(tracker.best.expect("constant candidate"))
}

/// Named pairing partner for the lower bound.
#[derive(Clone, Debug)]
pub struct LowerWitness {
    pub name: String,
    pub element: JordanElement,
}

/// Deterministic witnesses: the spectral dual seed, `x*` and `1`.
pub fn default_witnesses(x: &JordanElement, spec: &CoupleSpec) -> Result<Vec<LowerWitness>> {
    let mut out = Vec::new();
    if let Some(s) = SpectralSeed::new(x)? {
        if let Some(y) = s.dual_witness(1.0 / spec.theta()) {
            out.push(LowerWitness { name: "spectral_dual".into(), element: y });
        }
    }
    out.push(LowerWitness { name: "adjoint".into(), element: x.star() });
    out.push(LowerWitness { name: "unit".into(), element: x.algebra().unit() });
    Ok(out)
}

pub fn random_witnesses(x: &JordanElement, count: usize, seed: u64) -> Result<Vec<LowerWitness>> {
    let alg = x.algebra();
    (0..count as u64)
        .map(|i| {
            let mut rng = stream_rng(seed, 0x7769, i);
            Ok(LowerWitness { name: format!("random_{i}"), element: alg.element(gaussian_coords(&mut rng, alg.dim()))? })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: f64,
    pub witness: String,
    pub digest: String,
}

/// `max_y |φ(x∘y)| / U(y, 1−θ)` over the witnesses, with `U` from [`upper_bound`].
pub fn lower_bound(
    x: &JordanElement,
    spec: &CoupleSpec,
    witnesses: &[LowerWitness],
    degree: usize,
    grid: usize,
) -> Result<LowerBound> {
    spec.check(x)?;
    if witnesses.is_empty() {
        return Err(Error::InvalidArgument("lower bound needs at least one witness".into()));
    }
    let dual = spec.dual();
    let values = witnesses
        .par_iter()
        .map(|w| {
            let pairing = spec.state().evaluate(&x.jordan(&w.element)?)?.norm();
            let ub = upper_bound(&w.element, &dual, degree, grid, 0.0)?.value;
            Ok(if ub > 0.0 { pairing / ub } else { 0.0 })
        })
        .collect::<Result<Vec<f64>>>()?;
    let (k, v) = values.iter().enumerate().fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    Ok(LowerBound {
        value: v.max(0.0),
        witness: witnesses[k].name.clone(),
        digest: minimax::digest_coords([witnesses[k].element.coords()]),
    })
}

/// Runs the escalation schedule until `upper/lower ≤ target_ratio` or the budget is spent.
pub fn bracket(x: &JordanElement, spec: &CoupleSpec, budget: &InterpBudget) -> Result<NormBracket> {
    spec.check(x)?;
    if budget.stages.is_empty() {
        return Err(Error::InvalidArgument("empty escalation schedule".into()));
    }
    let dual = spec.dual();
    let mut upper = UpperTracker::new(x.clone(), spec)?;
    let mut witnesses = default_witnesses(x, spec)?;
    let mut trackers = witnesses.iter().map(|w| UpperTracker::new(w.element.clone(), &dual)).collect::<Result<Vec<_>>>()?;
    let mut randoms_added = false;
    let mut stage_reached = budget.stages[0];
    let mut lower = (0.0, 0usize);
    for (si, &(degree, grid)) in budget.stages.iter().enumerate() {
        stage_reached = (degree, grid);
        if si + 1 == budget.stages.len() && !randoms_added && budget.random_witnesses > 0 {
            let ratio = if lower.0 > 0.0 { upper.value() / lower.0 } else { f64::INFINITY };
            if ratio > budget.target_ratio {
                for w in random_witnesses(x, budget.random_witnesses, budget.seed)? {
                    trackers.push(UpperTracker::new(w.element.clone(), &dual)?);
                    witnesses.push(w);
                }
                randoms_added = true;
            }
        }
        upper.improve(spec, degree, grid, budget)?;
        let pairings =
            witnesses.iter().map(|w| Ok(spec.state().evaluate(&x.jordan(&w.element)?)?.norm())).collect::<Result<Vec<f64>>>()?;
        let ratio_of = |i: usize, t: &UpperTracker| if t.value() > 0.0 { pairings[i] / t.value() } else { 0.0 };
        // refine only the most promising witnesses
        let mut order: Vec<usize> = (0..trackers.len()).collect();
        order.sort_by(|&a, &b| ratio_of(b, &trackers[b]).total_cmp(&ratio_of(a, &trackers[a])));
        order.truncate(WITNESSES_REFINED);
        trackers
            .par_iter_mut()
            .enumerate()
            .filter(|(i, _)| order.contains(i))
            .try_for_each(|(_, t)| t.improve(&dual, degree, grid, budget))?;
        for (i, t) in trackers.iter().enumerate() {
            let v = ratio_of(i, t);
            if v > lower.0 {
                lower = (v, i);
            }
        }
        if lower.0 > 0.0 && upper.value() / lower.0 <= budget.target_ratio {
            break;
        }
    }
    let best = upper.best.as_ref().expect("constant candidate");
    let lower_value = lower.0.min(best.value);
    let stagnated = best.stagnated || trackers.iter().any(|t| t.best.as_ref().is_some_and(|b| b.stagnated));
    Ok(NormBracket {
        theta: spec.theta(),
        lower: lower_value,
        upper: best.value,
        certificate: BracketCertificate {
            candidate: best.digest.clone(),
            candidate_family: best.family,
            witness: minimax::digest_coords([witnesses[lower.1].element.coords()]),
            witness_name: witnesses[lower.1].name.clone(),
        },
        degree: stage_reached.0,
        grid: stage_reached.1,
        target_met: lower_value > 0.0 && best.value / lower_value <= budget.target_ratio,
        stagnated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::matrix_jordan;
    use crate::densemat::{CMatrix, ONE, ZERO};
    use crate::harness::{generate_element, Distribution};
    use crate::jordan::StateFunctional;

    #[test]
    fn unit_has_norm_one() {
        let alg = matrix_jordan(2).unwrap();
        let tau = StateFunctional::canonical_trace(&alg).unwrap();
        let spec = CoupleSpec::new(&tau, 0.4).unwrap();
        let b = bracket(&alg.unit(), &spec, &InterpBudget::default()).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-12 && (b.upper - 1.0).abs() < 1e-12);
        let lb = lower_bound(&alg.unit(), &spec, &[LowerWitness { name: "unit".into(), element: alg.unit() }], 0, 8).unwrap();
        assert!((lb.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tracial_brackets_contain_schatten_norm() {
        let alg = matrix_jordan(2).unwrap();
        let tau = StateFunctional::canonical_trace(&alg).unwrap();
        for p in [4.0 / 3.0, 2.0, 3.0] {
            let spec = CoupleSpec::new(&tau, 1.0 / p).unwrap();
            for i in 0..5 {
                let x = generate_element(&alg, Distribution::Ball, 21, i).unwrap();
                let b = bracket(&x, &spec, &InterpBudget::default()).unwrap();
                let oracle = ambient_schatten_norm(&x, p).unwrap();
                assert!(b.contains(oracle, 1e-10) && b.target_met, "{b:?} {oracle}");
            }
        }
    }

    #[test]
    fn selfadjoint_witness_lower_bound() {
        let alg = matrix_jordan(3).unwrap();
        let tau = StateFunctional::canonical_trace(&alg).unwrap();
        let spec = CoupleSpec::new(&tau, 1.0 / 3.0).unwrap();
        let x = generate_element(&alg, Distribution::Selfadjoint, 4, 0).unwrap();
        let lb = lower_bound(&x, &spec, &default_witnesses(&x, &spec).unwrap(), 0, 8).unwrap();
        let norm = crate::lp::lp_norm(&x, &tau, 3.0).unwrap().value;
        assert!(lb.value >= 0.9 * norm && lb.value <= norm * (1.0 + 1e-10));
    }

    #[test]
    fn near_endpoint_is_close_to_sup_norm() {
        let alg = matrix_jordan(2).unwrap();
        let tau = StateFunctional::canonical_trace(&alg).unwrap();
        let spec = CoupleSpec::new(&tau, 0.02).unwrap();
        let x = alg.element(vec![C64::new(2.0, 0.0), ZERO, ZERO, ONE]).unwrap();
        let b = bracket(&x, &spec, &InterpBudget::default()).unwrap();
        let sup = x.sup_norm().unwrap();
        assert!((b.upper - sup).abs() <= 0.1 * sup && (b.lower - sup).abs() <= 0.1 * sup);
    }

    #[test]
    fn non_tracial_half_contains_l2_norm() {
        let alg = matrix_jordan(2).unwrap();
        let phi = StateFunctional::from_ambient_density(&alg, &CMatrix::diag_real(&[0.7, 0.3])).unwrap();
        let spec = CoupleSpec::new(&phi, 0.5).unwrap();
        let x = generate_element(&alg, Distribution::Ball, 5, 0).unwrap();
        let b = bracket(&x, &spec, &InterpBudget::default()).unwrap();
        let oracle = crate::lp::l2_inner(&x, &x, &phi).unwrap().re.sqrt();
        assert!(b.contains(oracle, 1e-10), "{b:?} {oracle}");
        assert!(b.lower <= b.upper && b.target_met);
        eprintln!("ratio {}", b.ratio());
    }

    #[test]
    fn functional_norm_bounded_by_sup() {
        let alg = matrix_jordan(3).unwrap();
        let phi = StateFunctional::from_ambient_density(&alg, &CMatrix::diag_real(&[0.5, 0.3, 0.2])).unwrap();
        let spec = CoupleSpec::new(&phi, 0.5).unwrap();
        for i in 0..20 {
            let x = generate_element(&alg, Distribution::Ball, 6, i).unwrap();
            assert!(endpoint1_norm(&x, &spec).unwrap().upper <= x.sup_norm().unwrap() * (1.0 + 1e-12));
        }
    }
}
