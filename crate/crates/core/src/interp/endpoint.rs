//! The compatible couple `(𝓜, 𝓜_*)` of a represented algebra and its endpoint norms.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::{collect_report, coords_pairs, CheckReport, Witness};
use crate::densemat::{hermitian_eig, spectral_norm, svd, CMatrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::harness::{generate_element, Distribution};
use crate::jordan::{JordanAlgebra, JordanElement, StateFunctional};

/// Precomputed data shared by a couple at every `θ`.
#[derive(Debug)]
pub(crate) struct CoupleData {
    pub state: StateFunctional,
    /// `D` with `φ(y) = tr(D π(y))`.
    pub density: CMatrix,
    /// `π(b_j)` over the algebra basis.
    pub basis_zero: Vec<CMatrix>,
    /// `P((D π(b_j) + π(b_j) D)/2)`: representers of `φ_{b_j}` projected onto the algebra.
    pub basis_one: Vec<CMatrix>,
}

/// The couple `(𝓜, 𝓜_*)` for a faithful state, at parameter `θ`.
#[derive(Clone, Debug)]
pub struct CoupleSpec {
    pub(crate) data: Arc<CoupleData>,
    theta: f64,
}

impl CoupleSpec {
    pub fn new(state: &StateFunctional, theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::InvalidArgument(format!("θ must lie in (0, 1), got {theta}")));
        }
        let alg = state.algebra();
        if !alg.is_represented() {
            return Err(Error::Unsupported(format!("interpolation needs a represented algebra, got {alg}")));
        }
        if !state.is_faithful() {
            return Err(Error::NotFaithful(state.gram_min_eigenvalue()));
        }
        let density = state.ambient_density()?;
        let basis_zero = alg.basis().iter().map(|b| b.represent()).collect::<Result<Vec<_>>>()?;
        let basis_one = basis_zero.iter().map(|m| project(alg, &density.anticommutator_half(m)?)).collect::<Result<Vec<_>>>()?;
        Ok(CoupleSpec { data: Arc::new(CoupleData { state: state.clone(), density, basis_zero, basis_one }), theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn state(&self) -> &StateFunctional {
        &self.data.state
    }

    pub fn algebra(&self) -> &JordanAlgebra {
        self.data.state.algebra()
    }

    /// Same couple at `1 − θ`.
    pub fn dual(&self) -> CoupleSpec {
        CoupleSpec { data: self.data.clone(), theta: 1.0 - self.theta }
    }

    /// Same couple at another `θ`.
    pub fn with_theta(&self, theta: f64) -> Result<CoupleSpec> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::InvalidArgument(format!("θ must lie in (0, 1), got {theta}")));
        }
        Ok(CoupleSpec { data: self.data.clone(), theta })
    }

    pub(crate) fn check(&self, x: &JordanElement) -> Result<()> {
        if x.algebra() != self.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// `π(x)`.
    pub(crate) fn zero_matrix(&self, coords: &[C64]) -> Result<CMatrix> {
        self.algebra().represent_coords(coords)
    }

    /// Projected representer `P(R_x)` whose trace norm bounds `‖φ_x‖`.
    pub(crate) fn one_matrix(&self, coords: &[C64]) -> Result<CMatrix> {
        let m = self.zero_matrix(coords)?;
        project(self.algebra(), &self.data.density.anticommutator_half(&m)?)
    }

    /// `‖x‖_∞`.
    pub fn endpoint0_norm(&self, x: &JordanElement) -> Result<f64> {
        self.check(x)?;
        x.sup_norm()
    }
}

/// Hilbert–Schmidt projection onto the represented algebra.
fn project(alg: &JordanAlgebra, m: &CMatrix) -> Result<CMatrix> {
    match alg.kind() {
        crate::jordan::AlgebraKind::Matrix { .. } => Ok(m.clone()),
        _ => alg.represent_coords(&alg.coords_from_matrix(m)?),
    }
}

pub(crate) fn trace_norm_plain(m: &CMatrix) -> Result<f64> {
    Ok(svd(m)?.s.iter().sum())
}

/// Two-sided value of `‖φ_x‖ = sup{|φ(x∘y)| : ‖y‖_∞ ≤ 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Endpoint1Norm {
    /// Value attained by the projected polar witness.
    pub lower: f64,
    /// Trace norm of the projected representer.
    pub upper: f64,
}

impl Endpoint1Norm {
    pub fn value(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn tolerance(&self) -> f64 {
        self.upper - self.lower
    }
}

/// `‖φ_x‖_{𝓜_*}`. Exact on full matrix kinds; on sub-algebras both sides are reported.
pub fn endpoint1_norm(x: &JordanElement, spec: &CoupleSpec) -> Result<Endpoint1Norm> {
    spec.check(x)?;
    let rep = spec.one_matrix(x.coords())?;
    let dec = svd(&rep)?;
    let upper: f64 = dec.s.iter().sum();
    if upper == 0.0 {
        return Ok(Endpoint1Norm { lower: 0.0, upper: 0.0 });
    }
    // tr(rep · Z) = ‖rep‖₁ for Z = (U V†)†
    let target = dec.polar_unitary().adjoint();
    let (y, _) = spec.algebra().from_matrix(&target)?;
    let ny = y.sup_norm()?;
    let pairing = spec.state().evaluate(&x.jordan(&y)?)?.norm();
    let lower = if ny > 0.0 { (pairing / ny).min(upper) } else { 0.0 };
    Ok(Endpoint1Norm { lower, upper })
}

/// Schatten-p norm of `(D^{1/p} x + x D^{1/p})/2` for the ambient density `D`; for the trace this is the normalized Schatten norm of `x`.
pub fn ricard_xu_reference(x: &JordanElement, state: &StateFunctional, p: f64) -> Result<f64> {
    if !(p >= 1.0) || p.is_infinite() {
        return Err(Error::InvalidExponent(format!("p must lie in [1, ∞), got {p}")));
    }
    let d = state.ambient_density()?;
    let root = hermitian_eig(&d.hermitian_part())?.apply(|l| C64::new(l.max(0.0).powf(1.0 / p), 0.0));
    let m = x.represent()?;
    let sym = root.anticommutator_half(&m)?;
    let s = svd(&sym)?.s;
    Ok(s.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p))
}

/// Max relative gap between the polar-witness estimate of `‖φ_x‖` and the trace norm of the representer.
pub fn endpoint1_duality_check(state: &StateFunctional, samples: usize, seed: u64) -> Result<CheckReport> {
    let spec = CoupleSpec::new(state, 0.5)?;
    let tol = 1e-6;
    let outcomes = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let x = generate_element(spec.algebra(), Distribution::Ball, seed, i)?;
            let rep = crate::jordan::phi_x(state, &x)?.representer.expect("represented algebra");
            let full = trace_norm_plain(&rep)?;
            let est = endpoint1_norm(&x, &spec)?.lower;
            let gap = (full - est).abs() / full.max(1e-300);
            let witness = (gap > tol).then(|| Witness { index: i, elements: vec![coords_pairs(&x)], lhs: est, rhs: full });
            Ok((i, gap, witness))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect_report("endpoint1_duality", tol, outcomes))
}

/// `‖a‖_∞` for an ambient matrix.
pub(crate) fn sup_matrix(m: &CMatrix) -> Result<f64> {
    spectral_norm(m)
}

/// Sum of `c_j M_j`.
pub(crate) fn combine(basis: &[CMatrix], coords: &[C64]) -> CMatrix {
    let n = basis[0].rows();
    let mut out = CMatrix::zeros(n, n);
    for (m, c) in basis.iter().zip(coords) {
        if *c == ZERO {
            continue;
        }
        out = &out + &m.scale(*c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{matrix_jordan, spin_represented};
    use crate::densemat::trace_norm;

    fn r(v: f64) -> C64 {
        C64::new(v, 0.0)
    }

    #[test]
    fn matrix_examples() {
        let alg = matrix_jordan(2).unwrap();
        let tau = StateFunctional::canonical_trace(&alg).unwrap();
        let spec = CoupleSpec::new(&tau, 0.5).unwrap();
        let e = alg.element(vec![r(1.0), ZERO, ZERO, ZERO]).unwrap();
        let v = endpoint1_norm(&e, &spec).unwrap();
        assert!((v.lower - 0.5).abs() < 1e-15 && (v.upper - 0.5).abs() < 1e-15);
        let one = endpoint1_norm(&alg.unit(), &spec).unwrap();
        assert!((one.value() - 1.0).abs() < 1e-15);
        for i in 0..20 {
            let x = generate_element(&alg, Distribution::Ball, 3, i).unwrap();
            let v = endpoint1_norm(&x, &spec).unwrap();
            let oracle = trace_norm(&x.represent().unwrap(), 0.5).unwrap();
            assert!((v.lower - oracle).abs() < 1e-12 && (v.upper - oracle).abs() < 1e-12);
        }
    }

    #[test]
    fn non_tracial_uses_symmetrized_representer() {
        let alg = matrix_jordan(2).unwrap();
        let d = CMatrix::diag_real(&[0.7, 0.3]);
        let phi = StateFunctional::from_ambient_density(&alg, &d).unwrap();
        let spec = CoupleSpec::new(&phi, 0.5).unwrap();
        for i in 0..10 {
            let x = generate_element(&alg, Distribution::Ball, 4, i).unwrap();
            let sym = d.anticommutator_half(&x.represent().unwrap()).unwrap();
            let v = endpoint1_norm(&x, &spec).unwrap();
            assert!((v.upper - trace_norm_plain(&sym).unwrap()).abs() < 1e-12);
            assert!(v.tolerance() < 1e-12);
        }
        assert!(endpoint1_duality_check(&phi, 100, 1).unwrap().passed());
    }

    #[test]
    fn spin_endpoint_is_tight() {
        let alg = spin_represented(3).unwrap();
        let tau = StateFunctional::canonical_trace(&alg).unwrap();
        let spec = CoupleSpec::new(&tau, 0.3).unwrap();
        for i in 0..50 {
            let x = generate_element(&alg, Distribution::Ball, 7, i).unwrap();
            let v = endpoint1_norm(&x, &spec).unwrap();
            assert!(v.tolerance() <= 1e-10 * v.upper, "{v:?}");
            assert!(v.upper <= x.sup_norm().unwrap() + 1e-12);
        }
    }

    #[test]
    fn ricard_xu_reference_is_schatten_when_tracial() {
        let alg = matrix_jordan(2).unwrap();
        let tau = StateFunctional::canonical_trace(&alg).unwrap();
        let x = generate_element(&alg, Distribution::Ball, 2, 0).unwrap();
        for p in [1.0, 2.0, 3.0] {
            let a = ricard_xu_reference(&x, &tau, p).unwrap();
            let b = crate::lp::ambient_schatten_norm(&x, p).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_unsupported_couples() {
        let tau = StateFunctional::canonical_trace(&crate::algebras::albert()).unwrap();
        assert!(matches!(CoupleSpec::new(&tau, 0.5), Err(Error::Unsupported(_))));
        let m = matrix_jordan(2).unwrap();
        let degenerate = StateFunctional::from_ambient_density(&m, &CMatrix::diag_real(&[1.0, 0.0])).unwrap();
        assert!(matches!(CoupleSpec::new(&degenerate, 0.5), Err(Error::NotFaithful(_))));
        let tau = StateFunctional::canonical_trace(&m).unwrap();
        assert!(CoupleSpec::new(&tau, 1.0).is_err());
    }
}
