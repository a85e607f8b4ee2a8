//! Constructors for the concrete algebras.

pub mod albert;
pub mod octonion;
pub mod spin;

use std::fmt;
use std::sync::Arc;

use crate::densemat::{kron, matmul, CMatrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::jordan::{AlgebraKind, JordanAlgebra, JordanElement};

pub use octonion::Octonion;
pub use spin::{pauli_generators, sigma1, sigma2, sigma3, SpinDescriptor};

/// `M_n(ℂ)` with the Jordan product.
pub fn matrix_jordan(n: usize) -> Result<JordanAlgebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix algebra needs n ≥ 1".into()));
    }
    Ok(JordanAlgebra::from_kind(AlgebraKind::Matrix { n }))
}

fn spin(k: usize, represented: bool) -> Result<JordanAlgebra> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("spin factor needs k ≥ 2, got {k}")));
    }
    Ok(JordanAlgebra::from_kind(AlgebraKind::Spin(SpinDescriptor::new(k, represented))))
}

/// Spin factor with the product rule on coordinates.
pub fn spin_abstract(k: usize) -> Result<JordanAlgebra> {
    spin(k, false)
}

/// Spin factor whose products run through the Pauli matrices.
pub fn spin_represented(k: usize) -> Result<JordanAlgebra> {
    spin(k, true)
}

/// The Jordan *-isomorphism `1 ↦ I`, `eⱼ ↦ sⱼ` from a spin factor into `M_{2ⁿ}`.
#[derive(Clone, Debug)]
pub struct PauliRepresentation {
    pub spin: JordanAlgebra,
    pub ambient: JordanAlgebra,
    pub generators: Vec<CMatrix>,
}

impl PauliRepresentation {
    pub fn map(&self, x: &JordanElement) -> Result<JordanElement> {
        if x.algebra() != &self.spin {
            return Err(Error::AlgebraMismatch);
        }
        self.ambient.element(x.represent()?.into_vec())
    }

    /// Inverse on the image; errors when `y` is not in the spin span.
    pub fn pull_back(&self, y: &JordanElement) -> Result<JordanElement> {
        if y.algebra() != &self.ambient {
            return Err(Error::AlgebraMismatch);
        }
        let (x, residual) = self.spin.from_matrix(&y.represent()?)?;
        if residual > 1e-10 * y.coord_norm().max(1.0) {
            return Err(Error::InvalidArgument(format!("element is not in the spin span (residual {residual:e})")));
        }
        Ok(x)
    }

    /// Ambient basis of the image `span{I, s₁, …, s_k}`.
    pub fn image_basis(&self) -> Result<Vec<JordanElement>> {
        self.spin.basis().iter().map(|b| self.map(b)).collect()
    }
}

pub fn pauli_spin_representation(k: usize) -> Result<PauliRepresentation> {
    let spin = spin_abstract(k)?;
    let generators = pauli_generators(k);
    let ambient = matrix_jordan(generators[0].rows())?;
    Ok(PauliRepresentation { spin, ambient, generators })
}

/// `x ↦ x ⊗ I₂`.
pub fn tower_embed(x: &CMatrix) -> Result<CMatrix> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch(format!("tower embedding needs a square matrix, got {}x{}", x.rows(), x.cols())));
    }
    Ok(kron(x, &CMatrix::identity(2)))
}

/// Complexified Albert algebra with normalized trace.
pub fn albert() -> JordanAlgebra {
    JordanAlgebra::from_kind(AlgebraKind::Albert)
}

/// Weighted direct sum; weights must be positive and sum to one.
pub fn direct_sum(parts: Vec<(JordanAlgebra, f64)>) -> Result<JordanAlgebra> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("direct sum needs at least one part".into()));
    }
    if let Some((_, w)) = parts.iter().find(|(_, w)| !(*w > 0.0)) {
        return Err(Error::InvalidArgument(format!("direct-sum weight must be positive, got {w}")));
    }
    let total: f64 = parts.iter().map(|(_, w)| w).sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("direct-sum weights sum to {total}, expected 1")));
    }
    Ok(JordanAlgebra::from_kind(AlgebraKind::DirectSum(parts)))
}

/// Linear map on representing matrices (e.g. a *-antiautomorphism).
#[derive(Clone)]
pub struct AmbientMap {
    name: String,
    map: Arc<dyn Fn(&CMatrix) -> CMatrix + Send + Sync>,
}

impl fmt::Debug for AmbientMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AmbientMap({})", self.name)
    }
}

impl AmbientMap {
    pub fn new(name: impl Into<String>, map: impl Fn(&CMatrix) -> CMatrix + Send + Sync + 'static) -> Self {
        AmbientMap { name: name.into(), map: Arc::new(map) }
    }

    pub fn transpose() -> Self {
        Self::new("transpose", |m| m.transpose())
    }

    pub fn identity() -> Self {
        Self::new("identity", |m| m.clone())
    }

    /// `x ↦ u xᵀ u*`, an antiautomorphism for unitary `u`.
    pub fn twisted_transpose(u: CMatrix) -> Self {
        Self::new("twisted_transpose", move |m| &(&u * &m.transpose()) * &u.adjoint())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply_matrix(&self, m: &CMatrix) -> CMatrix {
        (self.map)(m)
    }

    pub fn apply(&self, x: &JordanElement) -> Result<JordanElement> {
        let (y, residual) = x.algebra().from_matrix(&self.apply_matrix(&x.represent()?))?;
        if residual > 1e-10 * x.coord_norm().max(1.0) {
            return Err(Error::MapCheck(format!("{} leaves the algebra (residual {residual:e})", self.name)));
        }
        Ok(y)
    }
}

/// Max residuals of `α² = id`, `α(xy) = α(y)α(x)`, `α(x*) = α(x)*` on matrix units.
pub fn antiautomorphism_residuals(n: usize, alpha: &AmbientMap) -> (f64, f64, f64) {
    let units: Vec<CMatrix> = (0..n * n)
        .map(|i| {
            let mut m = CMatrix::zeros(n, n);
            m[(i / n, i % n)] = C64::new(1.0, 0.0);
            m
        })
        .collect();
    let images: Vec<CMatrix> = units.iter().map(|u| alpha.apply_matrix(u)).collect();
    let mut invol: f64 = 0.0;
    let mut anti: f64 = 0.0;
    let mut star: f64 = 0.0;
    for (u, a) in units.iter().zip(&images) {
        invol = invol.max((&alpha.apply_matrix(a) - u).frobenius_norm());
        star = star.max((&alpha.apply_matrix(&u.adjoint()) - &a.adjoint()).frobenius_norm());
    }
    for (u, a) in units.iter().zip(&images) {
        for (v, b) in units.iter().zip(&images) {
            let lhs = alpha.apply_matrix(&matmul(u, v).expect("square"));
            let rhs = matmul(b, a).expect("square");
            anti = anti.max((&lhs - &rhs).frobenius_norm());
        }
    }
    (invol, anti, star)
}

/// Basis of `{x : α(x) = x}` for an involutive *-antiautomorphism of `M_n`.
pub fn fixed_point_subalgebra(alg: &JordanAlgebra, alpha: &AmbientMap) -> Result<Vec<JordanElement>> {
    let AlgebraKind::Matrix { n } = alg.kind() else {
        return Err(Error::Unsupported(format!("fixed-point subalgebras are built on full matrix algebras, not {alg}")));
    };
    let n = *n;
    let (invol, anti, star) = antiautomorphism_residuals(n, alpha);
    if invol > 1e-10 || anti > 1e-10 || star > 1e-10 {
        return Err(Error::MapCheck(format!(
            "{} is not an involutive *-antiautomorphism (α²: {invol:e}, α(xy)=α(y)α(x): {anti:e}, α(x*)=α(x)*: {star:e})",
            alpha.name()
        )));
    }
    // columns: coordinates of α(E_i) − E_i
    let dim = n * n;
    let diff = CMatrix::from_fn(dim, dim, |r, c| {
        let mut e = CMatrix::zeros(n, n);
        e[(c / n, c % n)] = C64::new(1.0, 0.0);
        let img = alpha.apply_matrix(&e);
        img.as_slice()[r] - if r == c { C64::new(1.0, 0.0) } else { ZERO }
    });
    let normal = matmul(&diff.adjoint(), &diff)?;
    let eig = crate::densemat::hermitian_eig(&normal.hermitian_part())?;
    let mut basis = Vec::new();
    for (idx, &lambda) in eig.values.iter().enumerate() {
        if lambda <= 1e-10 {
            basis.push(alg.element(eig.vectors.column(idx))?);
        }
    }
    Ok(basis)
}
