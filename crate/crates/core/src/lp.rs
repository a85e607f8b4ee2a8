//! Functional-calculus Lᵖ norms, Iochum norms, the L² form, duality pairings
//! and the inequality checks built on them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::{polar_real, positive_power, spectral_decompose};
use crate::check::{collect_report, coords_pairs, CheckReport, Witness};
use crate::densemat::{hermitian_eig, matmul, C64};
use crate::error::{Error, Result};
use crate::harness::{generate_element, Distribution};
use crate::jordan::{JordanAlgebra, JordanElement, StateFunctional};
use crate::sampling::{gaussian_coords, stream_rng};

/// Slack allowed in the inequality checks.
pub const INEQUALITY_SLACK: f64 = 1e-9;

/// Eigenvalues of `x*∘x` below this fraction of the largest are treated as zero.
const NOISE_FLOOR: f64 = 1e-14;

/// Serde adapter writing `∞` as the string `"inf"`.
pub mod exponent {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> Result<S::Ok, S::Error> {
        if p.is_infinite() {
            Repr::Text("inf".into()).serialize(s)
        } else {
            Repr::Num(*p).serialize(s)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) if t == "inf" || t == "∞" => Ok(f64::INFINITY),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("bad exponent {t:?}"))),
        }
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(ps: &[f64], s: S) -> Result<S::Ok, S::Error> {
            let reprs: Vec<Repr> =
                ps.iter().map(|p| if p.is_infinite() { Repr::Text("inf".into()) } else { Repr::Num(*p) }).collect();
            reprs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
            Vec::<Repr>::deserialize(d)?
                .into_iter()
                .map(|r| match r {
                    Repr::Num(v) => Ok(v),
                    Repr::Text(t) if t == "inf" || t == "∞" => Ok(f64::INFINITY),
                    Repr::Text(t) => Err(serde::de::Error::custom(format!("bad exponent {t:?}"))),
                })
                .collect()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpMethod {
    FunctionalCalculus,
    Endpoint,
    DualEstimate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpValue {
    #[serde(with = "exponent")]
    pub p: f64,
    pub value: f64,
    pub method: LpMethod,
    /// Computed against a non-tracial state, where the formula is only a probe.
    pub exploratory: bool,
}

/// `p* = p/(p−1)`.
pub fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(format!("p must lie in [1, ∞], got {p}")));
    }
    Ok(())
}

fn same_algebra(x: &JordanElement, state: &StateFunctional) -> Result<()> {
    if x.algebra() != state.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// `(φ[(x*∘x)^{p/2}])^{1/p}`; `p = ∞` gives `‖x‖_∞`.
pub fn lp_norm(x: &JordanElement, state: &StateFunctional, p: f64) -> Result<LpValue> {
    check_exponent(p)?;
    same_algebra(x, state)?;
    let exploratory = !state.is_tracial();
    if p.is_infinite() {
        return Ok(LpValue { p, value: x.sup_norm()?, method: LpMethod::Endpoint, exploratory: false });
    }
    let modulus_sq = x.star().jordan(x)?;
    let d = spectral_decompose(&modulus_sq)?;
    let floor = NOISE_FLOOR * d.spectral_radius();
    if d.min_eigenvalue() < -1e-10 * d.spectral_radius().max(1.0) {
        return Err(Error::NegativeRadicand(d.min_eigenvalue()));
    }
    // rounding noise at the zero eigenvalue would otherwise be amplified by the power p/2 < 1
    let powered = d.apply(|l| if l <= floor { 0.0 } else { l.powf(p / 2.0) })?;
    let inner = state.evaluate(&powered)?.re;
    if inner < -1e-10 {
        return Err(Error::NegativeRadicand(inner));
    }
    Ok(LpValue { p, value: inner.max(0.0).powf(1.0 / p), method: LpMethod::FunctionalCalculus, exploratory })
}

/// `(τ|x|^p)^{1/p}` for selfadjoint `x`.
pub fn iochum_norm(x: &JordanElement, state: &StateFunctional, p: f64) -> Result<LpValue> {
    check_exponent(p)?;
    same_algebra(x, state)?;
    if !x.is_selfadjoint() {
        return Err(Error::NotSelfadjoint(x.selfadjoint_residual()));
    }
    let d = spectral_decompose(x)?;
    if p.is_infinite() {
        return Ok(LpValue { p, value: d.spectral_radius(), method: LpMethod::Endpoint, exploratory: false });
    }
    let powered = d.apply(|l| l.abs().powf(p))?;
    let inner = state.evaluate(&powered)?.re.max(0.0);
    Ok(LpValue { p, value: inner.powf(1.0 / p), method: LpMethod::FunctionalCalculus, exploratory: !state.is_tracial() })
}

/// `⟨x, y⟩ = φ(x*∘y)`.
pub fn l2_inner(x: &JordanElement, y: &JordanElement, state: &StateFunctional) -> Result<C64> {
    same_algebra(x, state)?;
    state.evaluate(&x.star().jordan(y)?)
}

/// `τ(x∘y)`.
pub fn dual_pair(x: &JordanElement, y: &JordanElement, state: &StateFunctional) -> Result<C64> {
    same_algebra(x, state)?;
    state.evaluate(&x.jordan(y)?)
}

/// Normalized Schatten norm of the representative: `(tr(W |π(x)|^p))^{1/p}` with the trace weights `W`.
pub fn ambient_schatten_norm(x: &JordanElement, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let a = x.represent()?;
    if p.is_infinite() {
        return crate::densemat::spectral_norm(&a);
    }
    let w = x.algebra().trace_weights()?;
    let gram = matmul(&a.adjoint(), &a)?;
    let eig = hermitian_eig(&gram.hermitian_part())?;
    let n = a.rows();
    let mut acc = 0.0;
    for (k, &l) in eig.values.iter().enumerate() {
        let weight: f64 = (0..n).map(|r| w[(r, r)].re * eig.vectors[(r, k)].norm_sqr()).sum();
        acc += l.max(0.0).powf(p / 2.0) * weight;
    }
    Ok(acc.powf(1.0 / p))
}

/// Which norm an inequality check evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormRoute {
    /// `lp_norm` of the algebra.
    FunctionalCalculus,
    /// Normalized Schatten norm of the representative (represented kinds).
    Schatten,
}

pub fn route_norm(x: &JordanElement, state: &StateFunctional, p: f64, route: NormRoute) -> Result<f64> {
    match route {
        NormRoute::FunctionalCalculus => Ok(lp_norm(x, state, p)?.value),
        NormRoute::Schatten => ambient_schatten_norm(x, p),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualEstimate {
    pub value: LpValue,
    /// Name of the maximizing candidate.
    pub attained_by: String,
}

/// Lower estimate of `sup |τ(x∘y)| / ‖y‖_{p*}` over analytic and seeded random candidates.
pub fn dual_norm_estimate(
    x: &JordanElement,
    state: &StateFunctional,
    p: f64,
    random_candidates: usize,
    seed: u64,
) -> Result<DualEstimate> {
    check_exponent(p)?;
    same_algebra(x, state)?;
    let q = conjugate_exponent(p);
    let ratio = |y: &JordanElement| -> Option<f64> {
        let pair = dual_pair(x, y, state).ok()?.norm();
        let ny = lp_norm(y, state, q).ok()?.value;
        (ny > 1e-300).then(|| pair / ny)
    };
    let mut candidates: Vec<(String, JordanElement)> = Vec::new();
    if x.is_selfadjoint() {
        let y = if p.is_infinite() {
            let d = spectral_decompose(x)?;
            let (k, l) =
                d.eigenvalues.iter().enumerate().max_by(|a, b| a.1.abs().total_cmp(&b.1.abs())).expect("nonempty spectrum");
            d.idempotents[k].scale_real(if *l < 0.0 { -1.0 } else { 1.0 })
        } else {
            let polar = polar_real(x)?;
            polar.symmetry.jordan(&positive_power(&polar.modulus, p - 1.0)?)?
        };
        candidates.push(("polar".into(), y));
    }
    candidates.push(("adjoint".into(), x.star()));
    if p > 1.0 && p.is_finite() {
        if let Ok(w) = positive_power(&x.star().jordan(x)?, (p - 2.0) / 2.0) {
            if let Ok(y) = w.jordan(&x.star()) {
                candidates.push(("modulus_power".into(), y));
            }
        }
    }
    let alg = x.algebra();
    for i in 0..random_candidates as u64 {
        let mut rng = stream_rng(seed, 0x6475, i);
        let mut y = alg.element(gaussian_coords(&mut rng, alg.dim()))?;
        let mut best = ratio(&y).unwrap_or(0.0);
        let mut step = 0.5 * y.coord_norm();
        for _ in 0..24 {
            let dir = alg.element(gaussian_coords(&mut rng, alg.dim()))?;
            let trial = &y + &dir.scale_real(step);
            match ratio(&trial) {
                Some(r) if r > best => {
                    best = r;
                    y = trial;
                }
                _ => step *= 0.7,
            }
        }
        candidates.push((format!("random_{i}"), y));
    }
    let mut best = (String::from("none"), 0.0);
    for (name, y) in &candidates {
        if let Some(r) = ratio(y) {
            if r > best.1 {
                best = (name.clone(), r);
            }
        }
    }
    Ok(DualEstimate {
        value: LpValue { p, value: best.1, method: LpMethod::DualEstimate, exploratory: !state.is_tracial() },
        attained_by: best.0,
    })
}

/// Shared sampling for the pair checks: returns `(index, violation, witness)` per sample.
fn sample_pairs(
    alg: &JordanAlgebra,
    dist: Distribution,
    samples: usize,
    seed: u64,
    f: impl Fn(&JordanElement, &JordanElement) -> Result<(f64, f64)> + Sync,
) -> Result<Vec<(u64, f64, Option<Witness>)>> {
    (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let h = generate_element(alg, dist, seed, 2 * i)?;
            let k = generate_element(alg, dist, seed, 2 * i + 1)?;
            let (lhs, rhs) = f(&h, &k)?;
            let violation = lhs - rhs;
            let witness = (violation > INEQUALITY_SLACK).then(|| Witness {
                index: i,
                elements: vec![coords_pairs(&h), coords_pairs(&k)],
                lhs,
                rhs,
            });
            Ok((i, violation, witness))
        })
        .collect()
}

fn validate_holder(p: f64, q: f64, r: f64) -> Result<()> {
    for v in [p, q, r] {
        check_exponent(v)?;
    }
    let inv = |v: f64| if v.is_infinite() { 0.0 } else { 1.0 / v };
    if (inv(r) - inv(p) - inv(q)).abs() > 1e-12 {
        return Err(Error::InvalidExponent(format!("1/{r} ≠ 1/{p} + 1/{q}")));
    }
    Ok(())
}

/// Max of `‖h∘k‖_r − ‖h‖_p‖k‖_q` over seeded pairs.
pub fn holder_check(
    state: &StateFunctional,
    (p, q, r): (f64, f64, f64),
    route: NormRoute,
    dist: Distribution,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    validate_holder(p, q, r)?;
    let outcomes = sample_pairs(state.algebra(), dist, samples, seed, |h, k| {
        let lhs = route_norm(&h.jordan(k)?, state, r, route)?;
        let rhs = route_norm(h, state, p, route)? * route_norm(k, state, q, route)?;
        Ok((lhs, rhs))
    })?;
    Ok(collect_report(&format!("holder({p},{q},{r})"), INEQUALITY_SLACK, outcomes))
}

/// Max of `‖h∘k‖_p − ‖h‖_∞‖k‖_p` over seeded pairs.
pub fn module_action_check(
    state: &StateFunctional,
    p: f64,
    route: NormRoute,
    dist: Distribution,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    check_exponent(p)?;
    let outcomes = sample_pairs(state.algebra(), dist, samples, seed, |h, k| {
        let lhs = route_norm(&h.jordan(k)?, state, p, route)?;
        let rhs = h.sup_norm()? * route_norm(k, state, p, route)?;
        Ok((lhs, rhs))
    })?;
    Ok(collect_report(&format!("module_action({p})"), INEQUALITY_SLACK, outcomes))
}

/// Max of `‖h + k‖_p − ‖h‖_p − ‖k‖_p` over seeded pairs.
pub fn triangle_check(state: &StateFunctional, p: f64, dist: Distribution, samples: usize, seed: u64) -> Result<CheckReport> {
    check_exponent(p)?;
    let outcomes = sample_pairs(state.algebra(), dist, samples, seed, |h, k| {
        let lhs = lp_norm(&(h + k), state, p)?.value;
        let rhs = lp_norm(h, state, p)?.value + lp_norm(k, state, p)?.value;
        Ok((lhs, rhs))
    })?;
    Ok(collect_report(&format!("triangle({p})"), INEQUALITY_SLACK, outcomes))
}

fn sample_singles(
    alg: &JordanAlgebra,
    dist: Distribution,
    samples: usize,
    seed: u64,
    tolerance: f64,
    f: impl Fn(&JordanElement) -> Result<(f64, f64)> + Sync,
) -> Result<Vec<(u64, f64, Option<Witness>)>> {
    (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let x = generate_element(alg, dist, seed, i)?;
            let (lhs, rhs) = f(&x)?;
            let violation = lhs - rhs;
            let witness = (violation > tolerance).then(|| Witness { index: i, elements: vec![coords_pairs(&x)], lhs, rhs });
            Ok((i, violation, witness))
        })
        .collect()
}

/// Max of `|‖x*‖_p − ‖x‖_p|`.
pub fn involution_isometry_check(state: &StateFunctional, p: f64, samples: usize, seed: u64) -> Result<CheckReport> {
    check_exponent(p)?;
    let tol = 1e-10;
    let outcomes = sample_singles(state.algebra(), Distribution::Ball, samples, seed, tol, |x| {
        let a = lp_norm(&x.star(), state, p)?.value;
        let b = lp_norm(x, state, p)?.value;
        Ok(((a - b).abs(), 0.0))
    })?;
    Ok(collect_report(&format!("involution_isometry({p})"), tol, outcomes))
}

/// Max of `|‖α(x)‖_p − ‖x‖_p|` for a linear map `α` preserving `φ`.
pub fn automorphism_isometry_check(
    map: &(dyn Fn(&JordanElement) -> Result<JordanElement> + Sync),
    state: &StateFunctional,
    p: f64,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    check_exponent(p)?;
    for b in state.algebra().basis() {
        let drift = (state.evaluate(&map(&b)?)? - state.evaluate(&b)?).norm();
        if drift > 1e-10 {
            return Err(Error::MapCheck(format!("map does not preserve the state (drift {drift:e})")));
        }
    }
    let tol = 1e-10;
    let outcomes = sample_singles(state.algebra(), Distribution::Ball, samples, seed, tol, |x| {
        let a = lp_norm(&map(x)?, state, p)?.value;
        let b = lp_norm(x, state, p)?.value;
        Ok(((a - b).abs(), 0.0))
    })?;
    Ok(collect_report(&format!("automorphism_isometry({p})"), tol, outcomes))
}

/// Max of `‖x‖_p − ‖x‖_q` over `p ≤ q` from `ps`.
pub fn p_monotonicity_check(state: &StateFunctional, ps: &[f64], samples: usize, seed: u64) -> Result<CheckReport> {
    let mut sorted = ps.to_vec();
    for &p in &sorted {
        check_exponent(p)?;
    }
    sorted.sort_by(f64::total_cmp);
    let tol = 1e-10;
    let outcomes = sample_singles(state.algebra(), Distribution::Ball, samples, seed, tol, |x| {
        let norms = sorted.iter().map(|&p| lp_norm(x, state, p).map(|v| v.value)).collect::<Result<Vec<_>>>()?;
        let worst = norms.windows(2).map(|w| w[0] - w[1]).fold(f64::NEG_INFINITY, f64::max);
        let scale = norms.last().copied().unwrap_or(1.0).max(1.0);
        Ok((worst / scale, 0.0))
    })?;
    Ok(collect_report("p_monotonicity", tol, outcomes))
}

/// Max of `|‖x‖₂² − ⟨x, x⟩|`.
pub fn l2_consistency_check(state: &StateFunctional, samples: usize, seed: u64) -> Result<CheckReport> {
    let tol = 1e-12;
    let outcomes = sample_singles(state.algebra(), Distribution::Ball, samples, seed, tol, |x| {
        let n = lp_norm(x, state, 2.0)?.value;
        let ip = l2_inner(x, x, state)?;
        Ok(((n * n - ip.re).abs().max(ip.im.abs()) / ip.re.abs().max(1.0), 0.0))
    })?;
    Ok(collect_report("l2_consistency", tol, outcomes))
}

/// Max of `|iochum_norm − lp_norm|` on selfadjoint samples.
pub fn iochum_agreement_check(state: &StateFunctional, p: f64, samples: usize, seed: u64) -> Result<CheckReport> {
    let tol = 1e-10;
    let outcomes = sample_singles(state.algebra(), Distribution::Selfadjoint, samples, seed, tol, |x| {
        let a = iochum_norm(x, state, p)?.value;
        let b = lp_norm(x, state, p)?.value;
        Ok(((a - b).abs() / b.max(1.0), 0.0))
    })?;
    Ok(collect_report(&format!("iochum_agreement({p})"), tol, outcomes))
}

/// Max of `|estimate − ‖x‖_p| / ‖x‖_p` on selfadjoint samples.
pub fn duality_attainment_check(state: &StateFunctional, p: f64, samples: usize, seed: u64) -> Result<CheckReport> {
    let tol = 1e-7;
    let outcomes = sample_singles(state.algebra(), Distribution::Selfadjoint, samples, seed, tol, |x| {
        let est = dual_norm_estimate(x, state, p, 0, seed)?.value.value;
        let norm = lp_norm(x, state, p)?.value;
        Ok(((est - norm).abs() / norm.max(1e-300), 0.0))
    })?;
    Ok(collect_report(&format!("duality_attainment({p})"), tol, outcomes))
}
