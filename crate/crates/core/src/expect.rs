//! Trace-preserving Jordan conditional expectations and canonical projections.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebras::{
    antiautomorphism_residuals, direct_sum, fixed_point_subalgebra, matrix_jordan, AmbientMap, PauliRepresentation,
};
use crate::calculus::spectral_decompose;
use crate::check::{collect_report, coords_pairs, CheckReport, Witness};
use crate::densemat::{hermitian_eig, CMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::harness::{generate_element, Distribution};
use crate::jordan::{AlgebraKind, JordanAlgebra, JordanElement, StateFunctional};
use crate::lp::lp_norm;
use crate::sampling::{gaussian_coords, stream_rng};

/// Residual allowed when testing membership in the span of a basis.
pub const CLOSURE_TOL: f64 = 1e-9;

pub type RangeMap = Arc<dyn Fn(&JordanElement) -> Result<JordanElement> + Send + Sync>;

/// Intrinsic copy of the range with a map from the range into it.
#[derive(Clone)]
pub struct RangeModel {
    pub algebra: JordanAlgebra,
    pub map: RangeMap,
}

impl std::fmt::Debug for RangeModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RangeModel({})", self.algebra)
    }
}

/// Linear projection `Q` of an algebra onto a unital Jordan *-subalgebra.
#[derive(Clone, Debug)]
pub struct ExpectationOperator {
    name: String,
    domain: JordanAlgebra,
    sub_basis: Vec<JordanElement>,
    /// Column `j` holds the coordinates of `Q(b_j)` for the domain basis.
    matrix: CMatrix,
    gram: CMatrix,
    range: Option<RangeModel>,
}

impl ExpectationOperator {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &JordanAlgebra {
        &self.domain
    }

    pub fn sub_basis(&self) -> &[JordanElement] {
        &self.sub_basis
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `G_{kj} = τ(b_k*∘b_j)` over the subalgebra basis.
    pub fn gram(&self) -> &CMatrix {
        &self.gram
    }

    pub fn range_model(&self) -> Option<&RangeModel> {
        self.range.as_ref()
    }

    pub fn with_range_model(mut self, range: RangeModel) -> Self {
        self.range = Some(range);
        self
    }

    pub fn apply(&self, x: &JordanElement) -> Result<JordanElement> {
        if x.algebra() != &self.domain {
            return Err(Error::AlgebraMismatch);
        }
        let n = self.domain.dim();
        let coords = (0..n).map(|r| (0..n).map(|c| self.matrix[(r, c)] * x.coords()[c]).sum()).collect();
        self.domain.element(coords)
    }

    /// Hex digest of the operator matrix.
    pub fn digest(&self) -> String {
        crate::interp::minimax::digest_coords([self.matrix.as_slice()])
    }
}

/// Coordinate-space orthonormal basis of a span (modified Gram–Schmidt).
fn orthonormal_span(basis: &[JordanElement]) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    let scale = basis.iter().map(|b| b.coord_norm()).fold(0.0, f64::max).max(1.0);
    for b in basis {
        let mut v = b.coords().to_vec();
        for _ in 0..2 {
            for q in &out {
                let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 * scale {
            out.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    out
}

/// Relative least-squares distance of `x` from the span.
fn span_residual(span: &[Vec<C64>], x: &JordanElement) -> f64 {
    let mut v = x.coords().to_vec();
    for q in span {
        let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
        for (vi, qi) in v.iter_mut().zip(q) {
            *vi -= proj * qi;
        }
    }
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / x.coord_norm().max(1.0)
}

/// Max residual of `1`, `b*` and `b∘c` against the span of `basis`.
pub fn subalgebra_residual(basis: &[JordanElement]) -> Result<f64> {
    let first = basis.first().ok_or_else(|| Error::NotSubalgebra("empty basis".into()))?;
    let span = orthonormal_span(basis);
    let mut worst = span_residual(&span, &first.algebra().unit());
    for (i, b) in basis.iter().enumerate() {
        first.ensure_same(b)?;
        worst = worst.max(span_residual(&span, &b.star()));
        for c in &basis[..=i] {
            worst = worst.max(span_residual(&span, &b.jordan(c)?));
        }
    }
    Ok(worst)
}

/// `Q(x) = Σ (G⁻¹)_{jk} τ(b_k*∘x) b_j`, the τ-orthogonal projection onto `span(sub_basis)`.
pub fn conditional_expectation(
    alg: &JordanAlgebra,
    sub_basis: &[JordanElement],
    tau: &StateFunctional,
) -> Result<ExpectationOperator> {
    if tau.algebra() != alg || sub_basis.iter().any(|b| b.algebra() != alg) {
        return Err(Error::AlgebraMismatch);
    }
    if !tau.is_tracial() {
        return Err(Error::Unsupported("conditional expectations are built for tracial states".into()));
    }
    if !tau.is_faithful() {
        return Err(Error::NotFaithful(tau.gram_min_eigenvalue()));
    }
    let closure = subalgebra_residual(sub_basis)?;
    if closure > CLOSURE_TOL {
        return Err(Error::NotSubalgebra(format!("span is not a unital *-subalgebra (residual {closure:e})")));
    }
    let m = sub_basis.len();
    let stars: Vec<JordanElement> = sub_basis.iter().map(|b| b.star()).collect();
    let mut gram = CMatrix::zeros(m, m);
    for k in 0..m {
        for j in 0..m {
            gram[(k, j)] = tau.evaluate(&stars[k].jordan(&sub_basis[j])?)?;
        }
    }
    let eig = hermitian_eig(&gram.hermitian_part())?;
    let top = eig.values.last().copied().unwrap_or(0.0);
    if eig.values[0] <= 1e-12 * top.max(1.0) {
        return Err(Error::SingularGram(eig.values[0]));
    }
    let inverse = eig.apply(|l| C64::new(1.0 / l, 0.0));
    let n = alg.dim();
    let mut matrix = CMatrix::zeros(n, n);
    for (col, e) in alg.basis().iter().enumerate() {
        let rhs = stars.iter().map(|s| tau.evaluate(&s.jordan(e)?)).collect::<Result<Vec<C64>>>()?;
        for (j, b) in sub_basis.iter().enumerate() {
            let w: C64 = (0..m).map(|k| inverse[(j, k)] * rhs[k]).sum();
            for (r, v) in b.coords().iter().enumerate() {
                matrix[(r, col)] += w * v;
            }
        }
    }
    Ok(ExpectationOperator {
        name: "conditional_expectation".into(),
        domain: alg.clone(),
        sub_basis: sub_basis.to_vec(),
        matrix,
        gram,
        range: None,
    })
}

/// `Q(x) = τ(x)·1`.
pub fn scalar_expectation(alg: &JordanAlgebra) -> Result<ExpectationOperator> {
    let tau = StateFunctional::canonical_trace(alg)?;
    let one = matrix_jordan(1)?;
    let model = RangeModel { algebra: one.clone(), map: Arc::new(move |y: &JordanElement| one.element(vec![y.trace()])) };
    let mut q = conditional_expectation(alg, &[alg.unit()], &tau)?.with_range_model(model);
    q.name = "scalar".into();
    Ok(q)
}

/// Expectation of `M_n` onto its diagonal, with the range modelled as `ℂⁿ` with uniform weights.
pub fn diagonal_expectation(n: usize) -> Result<ExpectationOperator> {
    let alg = matrix_jordan(n)?;
    let tau = StateFunctional::canonical_trace(&alg)?;
    let basis: Vec<JordanElement> = (0..n).map(|i| alg.basis_element(i * n + i)).collect();
    let parts = (0..n).map(|_| Ok((matrix_jordan(1)?, 1.0 / n as f64))).collect::<Result<Vec<_>>>()?;
    let diag = direct_sum(parts)?;
    let target = diag.clone();
    let model = RangeModel {
        algebra: diag,
        map: Arc::new(move |y: &JordanElement| target.element((0..n).map(|i| y.coords()[i * n + i]).collect())),
    };
    let mut q = conditional_expectation(&alg, &basis, &tau)?.with_range_model(model);
    q.name = format!("diagonal{{{n}}}");
    Ok(q)
}

/// Expectation of `M_{2ⁿ}` onto the image of the spin factor, with the spin factor as range model.
pub fn spin_span_expectation(rep: &PauliRepresentation) -> Result<ExpectationOperator> {
    let tau = StateFunctional::canonical_trace(&rep.ambient)?;
    let owned = rep.clone();
    let model = RangeModel { algebra: rep.spin.clone(), map: Arc::new(move |y: &JordanElement| owned.pull_back(y)) };
    let mut q = conditional_expectation(&rep.ambient, &rep.image_basis()?, &tau)?.with_range_model(model);
    q.name = format!("spin_span{{{}}}", rep.spin.dim() - 1);
    Ok(q)
}

/// Expectation of the Albert algebra onto its diagonal `ℂ³`.
pub fn albert_diagonal_expectation() -> Result<ExpectationOperator> {
    let alg = crate::algebras::albert();
    let tau = StateFunctional::canonical_trace(&alg)?;
    let basis: Vec<JordanElement> = (0..3).map(|i| alg.basis_element(i)).collect();
    let parts = (0..3).map(|_| Ok((matrix_jordan(1)?, 1.0 / 3.0))).collect::<Result<Vec<_>>>()?;
    let diag = direct_sum(parts)?;
    let target = diag.clone();
    let model = RangeModel { algebra: diag, map: Arc::new(move |y: &JordanElement| target.element(y.coords()[..3].to_vec())) };
    let mut q = conditional_expectation(&alg, &basis, &tau)?.with_range_model(model);
    q.name = "albert_diagonal".into();
    Ok(q)
}

/// `P = (Id + α)/2` for an involutive *-antiautomorphism `α` of `M_n` preserving the trace.
pub fn canonical_projection(alg: &JordanAlgebra, alpha: &AmbientMap) -> Result<ExpectationOperator> {
    let AlgebraKind::Matrix { n } = alg.kind() else {
        return Err(Error::Unsupported(format!("canonical projections are built on full matrix algebras, not {alg}")));
    };
    let (invol, anti, star) = antiautomorphism_residuals(*n, alpha);
    if invol > 1e-10 || anti > 1e-10 || star > 1e-10 {
        return Err(Error::MapCheck(format!(
            "{} is not an involutive *-antiautomorphism (α²: {invol:e}, anti: {anti:e}, star: {star:e})",
            alpha.name()
        )));
    }
    let tau = StateFunctional::canonical_trace(alg)?;
    let images = alg.basis().iter().map(|b| alpha.apply(b)).collect::<Result<Vec<_>>>()?;
    for (b, a) in alg.basis().iter().zip(&images) {
        let drift = (tau.evaluate(a)? - tau.evaluate(b)?).norm();
        if drift > 1e-10 {
            return Err(Error::MapCheck(format!("{} does not preserve the trace (drift {drift:e})", alpha.name())));
        }
    }
    let dim = alg.dim();
    let matrix = CMatrix::from_fn(dim, dim, |r, c| 0.5 * (images[c].coords()[r] + if r == c { ONE } else { ZERO }));
    let sub_basis = fixed_point_subalgebra(alg, alpha)?;
    let m = sub_basis.len();
    let gram = CMatrix::from_fn(m, m, |k, j| {
        tau.evaluate(&sub_basis[k].star().jordan(&sub_basis[j]).expect("same algebra")).expect("same algebra")
    });
    Ok(ExpectationOperator {
        name: format!("canonical[{}]", alpha.name()),
        domain: alg.clone(),
        sub_basis,
        matrix,
        gram,
        range: None,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectationReport {
    pub operator: String,
    pub digest: String,
    pub checks: Vec<CheckReport>,
}

impl ExpectationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type Outcome = (u64, f64, Option<Witness>);

fn single(i: u64, v: f64, xs: &[&JordanElement], tol: f64) -> Outcome {
    let w = (!(v <= tol)).then(|| Witness { index: i, elements: xs.iter().map(|x| coords_pairs(x)).collect(), lhs: v, rhs: 0.0 });
    (i, v, w)
}

/// Unitality, idempotence, positivity, modularity, trace preservation, faithfulness,
/// selfadjointness, τ-orthogonality and range membership on seeded samples.
pub fn verify_expectation(q: &ExpectationOperator, samples: usize, seed: u64) -> Result<ExpectationReport> {
    let alg = q.domain().clone();
    let tau = StateFunctional::canonical_trace(&alg)?;
    let tol = 1e-9;
    let span = orthonormal_span(q.sub_basis());
    let mut checks = Vec::new();

    let unit_res = q.apply(&alg.unit())?.distance(&alg.unit());
    checks.push(collect_report("unitality", tol, vec![single(0, unit_res, &[], tol)]));

    let per_sample = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<[Outcome; 8]> {
            let x = generate_element(&alg, Distribution::Ball, seed, 2 * i)?;
            let y = generate_element(&alg, Distribution::Ball, seed, 2 * i + 1)?;
            let pos = generate_element(&alg, Distribution::Positive, seed, i)?;
            let qx = q.apply(&x)?;
            let qy = q.apply(&y)?;
            let scale = x.coord_norm().max(1.0) * y.coord_norm().max(1.0);
            let idem = q.apply(&qx)?.distance(&qx) / x.coord_norm().max(1.0);
            let qpos = q.apply(&pos)?;
            let lowest = spectral_decompose(&qpos.selfadjoint_part())?.min_eigenvalue();
            let positivity = (-lowest).max(qpos.selfadjoint_residual());
            let modular = q.apply(&x.jordan(&qy)?)?.distance(&qx.jordan(&qy)?) / scale;
            let trace = (tau.evaluate(&qx)? - tau.evaluate(&x)?).norm() / x.coord_norm().max(1.0);
            // τ faithful and trace preserving: Q(x) = 0 with x ≥ 0 forces τ(x) = 0, hence x = 0
            let faithful = (tau.evaluate(&qpos)? - tau.evaluate(&pos)?).norm() + (-tau.gram_min_eigenvalue()).max(0.0);
            let selfadj = (tau.evaluate(&qx.jordan(&y)?)? - tau.evaluate(&x.jordan(&qy)?)?).norm() / scale;
            let diff = &x - &qx;
            let mut orth: f64 = 0.0;
            for b in q.sub_basis() {
                orth = orth.max(tau.evaluate(&diff.star().jordan(b)?)?.norm() / (x.coord_norm().max(1.0) * b.coord_norm()));
            }
            let range = span_residual(&span, &qx);
            Ok([
                single(i, idem, &[&x], tol),
                single(i, positivity, &[&pos], tol),
                single(i, modular, &[&x, &y], tol),
                single(i, trace, &[&x], tol),
                single(i, faithful, &[&pos], tol),
                single(i, selfadj, &[&x, &y], tol),
                single(i, orth.max(range), &[&x], tol),
                single(i, (tau.evaluate(&qx.jordan(&qy)?)? - tau.evaluate(&x.jordan(&qy)?)?).norm() / scale, &[&x, &y], tol),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let names = [
        "idempotence",
        "positivity",
        "modularity",
        "trace_preservation",
        "faithfulness",
        "selfadjointness",
        "orthogonal_projection",
        "defining_identity",
    ];
    for (k, name) in names.iter().enumerate() {
        checks.push(collect_report(name, tol, per_sample.iter().map(|o| o[k].clone()).collect()));
    }
    Ok(ExpectationReport { operator: q.name().to_string(), digest: q.digest(), checks })
}

/// Max entry gap between `Q` and the expectation rebuilt from a randomly recombined basis.
pub fn uniqueness_residual(q: &ExpectationOperator, seed: u64) -> Result<f64> {
    let alg = q.domain();
    let tau = StateFunctional::canonical_trace(alg)?;
    let basis = q.sub_basis();
    let m = basis.len();
    let mut mixed = Vec::with_capacity(m);
    for i in 0..m as u64 {
        let mut rng = stream_rng(seed, 0x756e, i);
        let weights = gaussian_coords(&mut rng, m);
        let mut acc = alg.zero();
        for (w, b) in weights.iter().zip(basis) {
            acc = &acc + &b.scale(*w);
        }
        // keep the recombination invertible
        acc = &acc + &basis[i as usize];
        mixed.push(acc);
    }
    let other = conditional_expectation(alg, &mixed, &tau)?;
    Ok((q.matrix() - other.matrix()).max_abs())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContractivityReport {
    /// `‖Q(x)‖_p − ‖x‖_p`.
    pub contraction: CheckReport,
    /// Negative part of the spectrum of `Q(x)` for positive `x`.
    pub positivity: CheckReport,
    /// `|‖Q(x)‖_p − ‖Q(x)‖_p computed in the range model|`, when a model exists.
    pub range_norms: Option<CheckReport>,
}

impl ContractivityReport {
    pub fn passed(&self) -> bool {
        self.contraction.passed() && self.positivity.passed() && self.range_norms.as_ref().is_none_or(|r| r.passed())
    }
}

/// Lᵖ contractivity of `Q` for functional-calculus norms of `φ`.
pub fn lp_contractivity_check(
    q: &ExpectationOperator,
    state: &StateFunctional,
    p: f64,
    samples: usize,
    seed: u64,
) -> Result<ContractivityReport> {
    let alg = q.domain().clone();
    if state.algebra() != &alg {
        return Err(Error::AlgebraMismatch);
    }
    for b in alg.basis() {
        let drift = (state.evaluate(&q.apply(&b)?)? - state.evaluate(&b)?).norm();
        if drift > 1e-10 {
            return Err(Error::MapCheck(format!("{} does not preserve the state (drift {drift:e})", q.name())));
        }
    }
    let slack = crate::lp::INEQUALITY_SLACK;
    let range_state = match q.range_model() {
        Some(model) => Some(StateFunctional::canonical_trace(&model.algebra)?),
        None => None,
    };
    let outcomes = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<(Outcome, Outcome, Option<Outcome>)> {
            let x = generate_element(&alg, Distribution::Ball, seed, i)?;
            let qx = q.apply(&x)?;
            let nq = lp_norm(&qx, state, p)?.value;
            let nx = lp_norm(&x, state, p)?.value;
            let contraction = {
                let v = nq - nx;
                let w = (v > slack).then(|| Witness { index: i, elements: vec![coords_pairs(&x)], lhs: nq, rhs: nx });
                (i, v, w)
            };
            let pos = generate_element(&alg, Distribution::Positive, seed, i)?;
            let lowest = spectral_decompose(&q.apply(&pos)?.selfadjoint_part())?.min_eigenvalue();
            let positivity = single(i, -lowest, &[&pos], slack);
            let range = match (q.range_model(), &range_state) {
                (Some(model), Some(rs)) => {
                    let intrinsic = lp_norm(&(model.map)(&qx)?, rs, p)?.value;
                    Some(single(i, (intrinsic - nq).abs() / nq.max(1.0), &[&x], 1e-10))
                }
                _ => None,
            };
            Ok((contraction, positivity, range))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut contraction = Vec::with_capacity(samples);
    let mut positivity = Vec::with_capacity(samples);
    let mut range = Vec::new();
    for (c, p_, r) in outcomes {
        contraction.push(c);
        positivity.push(p_);
        if let Some(r) = r {
            range.push(r);
        }
    }
    Ok(ContractivityReport {
        contraction: collect_report(&format!("lp_contractivity({p})"), slack, contraction),
        positivity: collect_report("extension_positivity", slack, positivity),
        range_norms: q.range_model().map(|_| collect_report(&format!("range_norms({p})"), 1e-10, range)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{albert, pauli_spin_representation, spin_abstract};

    fn r(v: f64) -> C64 {
        C64::new(v, 0.0)
    }

    #[test]
    fn scalar_expectation_is_trace() {
        for alg in [matrix_jordan(3).unwrap(), spin_abstract(3).unwrap(), albert()] {
            let q = scalar_expectation(&alg).unwrap();
            let x = generate_element(&alg, Distribution::Ball, 1, 0).unwrap();
            assert!(q.apply(&x).unwrap().distance(&alg.scalar(x.trace())) < 1e-14);
            let rep = verify_expectation(&q, 50, 2).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert!(rep.check("modularity").unwrap().worst() <= 1e-12);
        }
    }

    #[test]
    fn diagonal_expectation_restricts_entries() {
        let q = diagonal_expectation(2).unwrap();
        let alg = q.domain().clone();
        let x = alg.element(vec![r(1.0), r(2.0), r(3.0), r(4.0)]).unwrap();
        assert_eq!(q.apply(&x).unwrap().coords(), &[r(1.0), ZERO, ZERO, r(4.0)]);
        let rep = verify_expectation(&q, 100, 3).unwrap();
        assert!(rep.checks.iter().all(|c| c.worst() <= 1e-10), "{rep:?}");
    }

    #[test]
    fn spin_span_expectation_is_trace_preserving() {
        let rep = pauli_spin_representation(3).unwrap();
        let q = spin_span_expectation(&rep).unwrap();
        let rpt = verify_expectation(&q, 100, 4).unwrap();
        assert!(rpt.passed(), "{rpt:?}");
        for b in rep.image_basis().unwrap() {
            assert!(q.apply(&b).unwrap().distance(&b) < 1e-12);
        }
    }

    #[test]
    fn albert_diagonal_expectation_verifies() {
        let q = albert_diagonal_expectation().unwrap();
        assert!(verify_expectation(&q, 30, 5).unwrap().passed());
    }

    #[test]
    fn rejects_bad_inputs() {
        let alg = matrix_jordan(2).unwrap();
        let tau = StateFunctional::canonical_trace(&alg).unwrap();
        // off-diagonal unit alone is not a unital *-subalgebra
        assert!(matches!(conditional_expectation(&alg, &[alg.basis_element(1)], &tau), Err(Error::NotSubalgebra(_))));
        assert!(matches!(conditional_expectation(&alg, &[alg.unit(), alg.unit()], &tau), Err(Error::SingularGram(_))));
        let phi = StateFunctional::from_ambient_density(&alg, &CMatrix::diag_real(&[0.7, 0.3])).unwrap();
        assert!(conditional_expectation(&alg, &[alg.unit()], &phi).is_err());
    }

    #[test]
    fn canonical_transpose_projection() {
        let alg = matrix_jordan(2).unwrap();
        let p = canonical_projection(&alg, &AmbientMap::transpose()).unwrap();
        let sigma3 = alg.element(vec![ZERO, C64::new(0.0, 1.0), C64::new(0.0, -1.0), ZERO]).unwrap();
        assert!(p.apply(&sigma3).unwrap().coord_norm() < 1e-15);
        assert_eq!(p.apply(&alg.unit()).unwrap(), alg.unit());
        let sym = alg.element(vec![r(1.0), r(2.0), r(2.0), r(-3.0)]).unwrap();
        assert_eq!(p.apply(&sym).unwrap(), sym);
        assert!(verify_expectation(&p, 200, 6).unwrap().passed());
        // the conditional expectation onto the fixed points is the same map
        let tau = StateFunctional::canonical_trace(&alg).unwrap();
        let q = conditional_expectation(&alg, p.sub_basis(), &tau).unwrap();
        assert!((p.matrix() - q.matrix()).max_abs() < 1e-12);
        assert!(matches!(canonical_projection(&alg, &AmbientMap::identity()), Err(Error::MapCheck(_))));
    }

    #[test]
    fn uniqueness_and_contractivity() {
        let q = diagonal_expectation(3).unwrap();
        assert!(uniqueness_residual(&q, 1).unwrap() < 1e-10);
        let tau = StateFunctional::canonical_trace(q.domain()).unwrap();
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let rep = lp_contractivity_check(&q, &tau, p, 300, 7).unwrap();
            assert!(rep.passed(), "{p}: {rep:?}");
        }
        let spin = spin_span_expectation(&pauli_spin_representation(3).unwrap()).unwrap();
        let tau = StateFunctional::canonical_trace(spin.domain()).unwrap();
        let rep = lp_contractivity_check(&spin, &tau, 3.0, 300, 8).unwrap();
        assert!(rep.range_norms.as_ref().unwrap().passed(), "{rep:?}");
        let identity_like = canonical_projection(&matrix_jordan(1).unwrap(), &AmbientMap::identity()).unwrap();
        let tau1 = StateFunctional::canonical_trace(identity_like.domain()).unwrap();
        assert_eq!(lp_contractivity_check(&identity_like, &tau1, 2.0, 20, 1).unwrap().contraction.worst(), 0.0);
    }
}
