//! Algebra descriptors, elements, the Jordan and triple products, involution,
//! states and the embedding functional `y ↦ φ(x∘y)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebras::albert::{self, AlbertTable, ALBERT_DIM};
use crate::algebras::spin::SpinDescriptor;
use crate::densemat::{hermitian_eig, spectral_norm, CMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::sampling::{gaussian_coords, real_gaussian_coords, stream_rng};

/// Tolerance for treating an element as selfadjoint.
pub const SELFADJOINT_TOL: f64 = 1e-10;

/// Gram eigenvalue threshold for faithfulness.
pub const FAITHFUL_TOL: f64 = 1e-12;

/// Tolerance of the sampled trace identity behind the tracial flag.
pub const TRACIAL_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub enum AlgebraKind {
    /// `M_n(ℂ)` over matrix units, row-major.
    Matrix { n: usize },
    /// `ℂ1 ⊕ ℂᵏ` with coordinates `[λ, a₁, …, a_k]`.
    Spin(SpinDescriptor),
    /// Complexified `H₃(𝕆)`, 27 coordinates.
    Albert,
    /// Weighted finite direct sum; coordinates are concatenated.
    DirectSum(Vec<(JordanAlgebra, f64)>),
}

#[derive(Debug)]
struct AlgebraInner {
    kind: AlgebraKind,
    dim: usize,
    signature: String,
}

/// A concrete finite-dimensional JBW*-algebra. Cheap to clone.
#[derive(Clone)]
pub struct JordanAlgebra(Arc<AlgebraInner>);

impl fmt::Debug for JordanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JordanAlgebra({})", self.0.signature)
    }
}

impl fmt::Display for JordanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.signature)
    }
}

impl PartialEq for JordanAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.signature == other.0.signature
    }
}

impl JordanAlgebra {
    pub(crate) fn from_kind(kind: AlgebraKind) -> Self {
        let (dim, signature) = match &kind {
            AlgebraKind::Matrix { n } => (n * n, format!("matrix{{{n}}}")),
            AlgebraKind::Spin(d) => {
                let tag = if d.represented { ",represented" } else { "" };
                (d.k + 1, format!("spin{{{}{tag}}}", d.k))
            }
            AlgebraKind::Albert => (ALBERT_DIM, "albert".to_string()),
            AlgebraKind::DirectSum(parts) => {
                let dim = parts.iter().map(|(a, _)| a.dim()).sum();
                let inner: Vec<String> = parts.iter().map(|(a, w)| format!("{a}:{w}")).collect();
                (dim, format!("direct_sum[{}]", inner.join(",")))
            }
        };
        JordanAlgebra(Arc::new(AlgebraInner { kind, dim, signature }))
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.0.kind
    }

    /// Complex dimension.
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn signature(&self) -> &str {
        &self.0.signature
    }

    /// True when elements have a faithful matrix representative.
    pub fn is_represented(&self) -> bool {
        match self.kind() {
            AlgebraKind::Matrix { .. } | AlgebraKind::Spin(_) => true,
            AlgebraKind::Albert => false,
            AlgebraKind::DirectSum(parts) => parts.iter().all(|(a, _)| a.is_represented()),
        }
    }

    /// Side length of the representing matrices.
    pub fn ambient_dim(&self) -> Option<usize> {
        match self.kind() {
            AlgebraKind::Matrix { n } => Some(*n),
            AlgebraKind::Spin(d) => Some(d.ambient_dim()),
            AlgebraKind::Albert => None,
            AlgebraKind::DirectSum(parts) => parts.iter().map(|(a, _)| a.ambient_dim()).sum(),
        }
    }

    fn split<'a>(&self, parts: &'a [(JordanAlgebra, f64)], x: &'a [C64]) -> Vec<&'a [C64]> {
        let mut out = Vec::with_capacity(parts.len());
        let mut off = 0;
        for (a, _) in parts {
            out.push(&x[off..off + a.dim()]);
            off += a.dim();
        }
        out
    }

    pub fn product_coords(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        match self.kind() {
            AlgebraKind::Matrix { n } => {
                let a = CMatrix::from_vec(*n, *n, x.to_vec()).expect("coordinate length");
                let b = CMatrix::from_vec(*n, *n, y.to_vec()).expect("coordinate length");
                a.anticommutator_half(&b).expect("square").into_vec()
            }
            AlgebraKind::Spin(d) => {
                if d.represented {
                    let m = d.represent(x).anticommutator_half(&d.represent(y)).expect("square");
                    d.coordinates_of(&m)
                } else {
                    SpinDescriptor::rule_product(x, y)
                }
            }
            AlgebraKind::Albert => AlbertTable::shared().product(x, y),
            AlgebraKind::DirectSum(parts) => {
                let xs = self.split(parts, x);
                let ys = self.split(parts, y);
                parts.iter().zip(xs.into_iter().zip(ys)).flat_map(|((a, _), (xi, yi))| a.product_coords(xi, yi)).collect()
            }
        }
    }

    pub fn involution_coords(&self, x: &[C64]) -> Vec<C64> {
        match self.kind() {
            AlgebraKind::Matrix { n } => {
                let n = *n;
                (0..n * n).map(|idx| x[(idx % n) * n + idx / n].conj()).collect()
            }
            AlgebraKind::Spin(_) | AlgebraKind::Albert => x.iter().map(|z| z.conj()).collect(),
            AlgebraKind::DirectSum(parts) => {
                self.split(parts, x).into_iter().zip(parts).flat_map(|(xi, (a, _))| a.involution_coords(xi)).collect()
            }
        }
    }

    pub fn unit_coords(&self) -> Vec<C64> {
        match self.kind() {
            AlgebraKind::Matrix { n } => CMatrix::identity(*n).into_vec(),
            AlgebraKind::Spin(d) => {
                let mut v = vec![ZERO; d.k + 1];
                v[0] = ONE;
                v
            }
            AlgebraKind::Albert => {
                let mut v = vec![ZERO; ALBERT_DIM];
                v[..3].fill(ONE);
                v
            }
            AlgebraKind::DirectSum(parts) => parts.iter().flat_map(|(a, _)| a.unit_coords()).collect(),
        }
    }

    /// Canonical normalized trace `τ` (a tracial state).
    pub fn trace_coords(&self, x: &[C64]) -> C64 {
        match self.kind() {
            AlgebraKind::Matrix { n } => {
                let n = *n;
                (0..n).map(|i| x[i * n + i]).sum::<C64>() / n as f64
            }
            AlgebraKind::Spin(_) => x[0],
            AlgebraKind::Albert => (x[0] + x[1] + x[2]) / 3.0,
            AlgebraKind::DirectSum(parts) => {
                self.split(parts, x).into_iter().zip(parts).map(|(xi, (a, w))| a.trace_coords(xi) * *w).sum()
            }
        }
    }

    pub fn represent_coords(&self, x: &[C64]) -> Result<CMatrix> {
        match self.kind() {
            AlgebraKind::Matrix { n } => CMatrix::from_vec(*n, *n, x.to_vec()),
            AlgebraKind::Spin(d) => Ok(d.represent(x)),
            AlgebraKind::Albert => Err(Error::Unsupported("the Albert algebra has no matrix representation".into())),
            AlgebraKind::DirectSum(parts) => {
                let blocks = self
                    .split(parts, x)
                    .into_iter()
                    .zip(parts)
                    .map(|(xi, (a, _))| a.represent_coords(xi))
                    .collect::<Result<Vec<_>>>()?;
                Ok(CMatrix::block_diag(&blocks))
            }
        }
    }

    /// Coordinates of the Hilbert–Schmidt projection of `m` onto the represented algebra.
    pub fn coords_from_matrix(&self, m: &CMatrix) -> Result<Vec<C64>> {
        let amb = self.ambient_dim().ok_or_else(|| Error::Unsupported(format!("{self} has no matrix representation")))?;
        if m.rows() != amb || m.cols() != amb {
            return Err(Error::DimensionMismatch(format!("{self} expects {amb}x{amb}, got {}x{}", m.rows(), m.cols())));
        }
        match self.kind() {
            AlgebraKind::Matrix { .. } => Ok(m.as_slice().to_vec()),
            AlgebraKind::Spin(d) => Ok(d.coordinates_of(m)),
            AlgebraKind::Albert => unreachable!(),
            AlgebraKind::DirectSum(parts) => {
                let mut out = Vec::with_capacity(self.dim());
                let mut off = 0;
                for (a, _) in parts {
                    let k = a.ambient_dim().expect("represented part");
                    out.extend(a.coords_from_matrix(&m.sub_block(off, off, k, k))?);
                    off += k;
                }
                Ok(out)
            }
        }
    }

    /// Diagonal weight matrix `W` with `τ(x) = tr(W π(x))`.
    pub fn trace_weights(&self) -> Result<CMatrix> {
        match self.kind() {
            AlgebraKind::Matrix { n } => Ok(CMatrix::identity(*n).scale_real(1.0 / *n as f64)),
            AlgebraKind::Spin(d) => {
                let m = d.ambient_dim();
                Ok(CMatrix::identity(m).scale_real(1.0 / m as f64))
            }
            AlgebraKind::Albert => Err(Error::Unsupported("the Albert algebra has no matrix representation".into())),
            AlgebraKind::DirectSum(parts) => {
                let blocks = parts.iter().map(|(a, w)| Ok(a.trace_weights()?.scale_real(*w))).collect::<Result<Vec<_>>>()?;
                Ok(CMatrix::block_diag(&blocks))
            }
        }
    }

    pub fn element(&self, coords: Vec<C64>) -> Result<JordanElement> {
        JordanElement::new(self, coords)
    }

    pub fn real_element(&self, coords: &[f64]) -> Result<JordanElement> {
        JordanElement::new(self, coords.iter().map(|&v| C64::new(v, 0.0)).collect())
    }

    pub fn zero(&self) -> JordanElement {
        JordanElement { alg: self.clone(), coords: vec![ZERO; self.dim()] }
    }

    pub fn unit(&self) -> JordanElement {
        JordanElement { alg: self.clone(), coords: self.unit_coords() }
    }

    pub fn scalar(&self, c: C64) -> JordanElement {
        self.unit().scale(c)
    }

    pub fn basis_element(&self, i: usize) -> JordanElement {
        let mut coords = vec![ZERO; self.dim()];
        coords[i] = ONE;
        JordanElement { alg: self.clone(), coords }
    }

    pub fn basis(&self) -> Vec<JordanElement> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    /// Element whose representative is `m`, with the projection residual `‖π(x) − m‖_F`.
    pub fn from_matrix(&self, m: &CMatrix) -> Result<(JordanElement, f64)> {
        let x = JordanElement { alg: self.clone(), coords: self.coords_from_matrix(m)? };
        let residual = (&x.represent()? - m).frobenius_norm();
        Ok((x, residual))
    }

    /// Max residual of `1∘b = b` and `a∘b = b∘a` over basis elements.
    pub fn structure_residuals(&self) -> (f64, f64) {
        let basis = self.basis();
        let unit = self.unit();
        let mut unit_res: f64 = 0.0;
        let mut comm_res: f64 = 0.0;
        for (i, a) in basis.iter().enumerate() {
            unit_res = unit_res.max(unit.jordan_unchecked(a).distance(a));
            for b in &basis[..i] {
                comm_res = comm_res.max(a.jordan_unchecked(b).distance(&b.jordan_unchecked(a)));
            }
        }
        (unit_res, comm_res)
    }
}

/// Coordinates of an element in its algebra's basis.
#[derive(Clone, Debug)]
pub struct JordanElement {
    alg: JordanAlgebra,
    coords: Vec<C64>,
}

impl PartialEq for JordanElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.coords == other.coords
    }
}

impl JordanElement {
    pub fn new(alg: &JordanAlgebra, coords: Vec<C64>) -> Result<Self> {
        if coords.len() != alg.dim() {
            return Err(Error::DimensionMismatch(format!("{alg} has dimension {}, got {} coordinates", alg.dim(), coords.len())));
        }
        Ok(JordanElement { alg: alg.clone(), coords })
    }

    pub fn algebra(&self) -> &JordanAlgebra {
        &self.alg
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<C64> {
        self.coords
    }

    pub fn ensure_same(&self, other: &JordanElement) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn jordan_unchecked(&self, other: &JordanElement) -> JordanElement {
        JordanElement { alg: self.alg.clone(), coords: self.alg.product_coords(&self.coords, &other.coords) }
    }

    /// `x∘y`.
    pub fn jordan(&self, other: &JordanElement) -> Result<JordanElement> {
        self.ensure_same(other)?;
        Ok(self.jordan_unchecked(other))
    }

    pub fn square(&self) -> JordanElement {
        self.jordan_unchecked(self)
    }

    /// `{x, y, z} = (x∘y)∘z + (y∘z)∘x − (x∘z)∘y`.
    pub fn triple(&self, y: &JordanElement, z: &JordanElement) -> Result<JordanElement> {
        self.ensure_same(y)?;
        self.ensure_same(z)?;
        let a = self.jordan_unchecked(y).jordan_unchecked(z);
        let b = y.jordan_unchecked(z).jordan_unchecked(self);
        let c = self.jordan_unchecked(z).jordan_unchecked(y);
        Ok(&(&a + &b) - &c)
    }

    pub fn star(&self) -> JordanElement {
        JordanElement { alg: self.alg.clone(), coords: self.alg.involution_coords(&self.coords) }
    }

    /// Canonical normalized trace.
    pub fn trace(&self) -> C64 {
        self.alg.trace_coords(&self.coords)
    }

    pub fn scale(&self, s: C64) -> JordanElement {
        JordanElement { alg: self.alg.clone(), coords: self.coords.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> JordanElement {
        self.scale(C64::new(s, 0.0))
    }

    /// Euclidean length of the coordinate vector.
    pub fn coord_norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &JordanElement) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn selfadjoint_residual(&self) -> f64 {
        self.distance(&self.star())
    }

    pub fn is_selfadjoint(&self) -> bool {
        self.selfadjoint_residual() <= SELFADJOINT_TOL * self.coord_norm().max(1.0)
    }

    /// `(x + x*)/2`.
    pub fn selfadjoint_part(&self) -> JordanElement {
        (self + &self.star()).scale_real(0.5)
    }

    pub fn represent(&self) -> Result<CMatrix> {
        self.alg.represent_coords(&self.coords)
    }

    /// Real coordinates of a selfadjoint Albert element.
    pub(crate) fn albert_real_coords(&self) -> Result<[f64; ALBERT_DIM]> {
        if !matches!(self.alg.kind(), AlgebraKind::Albert) {
            return Err(Error::Unsupported("not an Albert element".into()));
        }
        if !self.is_selfadjoint() {
            return Err(Error::NotSelfadjoint(self.selfadjoint_residual()));
        }
        let mut out = [0.0; ALBERT_DIM];
        for (o, z) in out.iter_mut().zip(&self.coords) {
            *o = z.re;
        }
        Ok(out)
    }

    /// Algebra norm `‖x‖_∞`: spectral norm of the representative, or the
    /// largest `|eigenvalue|` for selfadjoint Albert elements.
    pub fn sup_norm(&self) -> Result<f64> {
        match self.alg.kind() {
            AlgebraKind::Albert => {
                let c = self.albert_real_coords().map_err(|e| match e {
                    Error::NotSelfadjoint(_) => {
                        Error::Unsupported("no certified sup norm for non-selfadjoint Albert elements".into())
                    }
                    other => other,
                })?;
                let (t, s, n) = albert::cubic_invariants(&c);
                Ok(albert::cubic_roots(t, s, n).iter().fold(0.0, |m, r| m.max(r.abs())))
            }
            AlgebraKind::DirectSum(parts) => {
                let mut off = 0;
                let mut best: f64 = 0.0;
                for (a, _) in parts {
                    let piece = JordanElement { alg: a.clone(), coords: self.coords[off..off + a.dim()].to_vec() };
                    best = best.max(piece.sup_norm()?);
                    off += a.dim();
                }
                Ok(best)
            }
            _ => spectral_norm(&self.represent()?),
        }
    }

    /// Restriction to the `index`-th summand of a direct sum.
    pub fn component(&self, index: usize) -> Result<JordanElement> {
        let AlgebraKind::DirectSum(parts) = self.alg.kind() else {
            return Err(Error::Unsupported(format!("{} is not a direct sum", self.alg)));
        };
        let off: usize = parts[..index].iter().map(|(a, _)| a.dim()).sum();
        let a = &parts[index].0;
        Ok(JordanElement { alg: a.clone(), coords: self.coords[off..off + a.dim()].to_vec() })
    }
}

impl<'a> Add<&'a JordanElement> for &'a JordanElement {
    type Output = JordanElement;
    fn add(self, rhs: &JordanElement) -> JordanElement {
        assert!(self.alg == rhs.alg, "algebra mismatch in add");
        JordanElement { alg: self.alg.clone(), coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a JordanElement> for &'a JordanElement {
    type Output = JordanElement;
    fn sub(self, rhs: &JordanElement) -> JordanElement {
        assert!(self.alg == rhs.alg, "algebra mismatch in sub");
        JordanElement { alg: self.alg.clone(), coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &JordanElement {
    type Output = JordanElement;
    fn neg(self) -> JordanElement {
        self.scale_real(-1.0)
    }
}

impl Mul<C64> for &JordanElement {
    type Output = JordanElement;
    fn mul(self, s: C64) -> JordanElement {
        self.scale(s)
    }
}

impl Mul<f64> for &JordanElement {
    type Output = JordanElement;
    fn mul(self, s: f64) -> JordanElement {
        self.scale_real(s)
    }
}

pub fn jordan_product(x: &JordanElement, y: &JordanElement) -> Result<JordanElement> {
    x.jordan(y)
}

pub fn triple_product(x: &JordanElement, y: &JordanElement, z: &JordanElement) -> Result<JordanElement> {
    x.triple(y, z)
}

pub fn involution(x: &JordanElement) -> JordanElement {
    x.star()
}

/// `‖x∘(x²∘y) − x²∘(x∘y)‖` in coordinates.
pub fn jordan_identity_residual(x: &JordanElement, y: &JordanElement) -> Result<f64> {
    let x2 = x.square();
    let lhs = x.jordan(&x2.jordan(y)?)?;
    let rhs = x2.jordan(&x.jordan(y)?)?;
    Ok(lhs.distance(&rhs))
}

/// Operator commutation: `(x∘z)∘y = x∘(z∘y)` for every basis `z`.
pub fn operator_commute(x: &JordanElement, y: &JordanElement) -> Result<bool> {
    Ok(operator_commutator_residual(x, y)? <= 1e-10)
}

pub fn operator_commutator_residual(x: &JordanElement, y: &JordanElement) -> Result<f64> {
    x.ensure_same(y)?;
    let mut worst: f64 = 0.0;
    for z in x.algebra().basis() {
        let lhs = x.jordan(&z)?.jordan(y)?;
        let rhs = x.jordan(&z.jordan(y)?)?;
        worst = worst.max(lhs.distance(&rhs));
    }
    Ok(worst)
}

/// Normalized positive functional `φ(x) = τ(d∘x)` given by a density `d`.
#[derive(Clone, Debug)]
pub struct StateFunctional {
    density: JordanElement,
    normalization: f64,
    tracial: bool,
    faithful: bool,
    gram_min_eigenvalue: f64,
}

impl StateFunctional {
    /// The canonical trace `τ` (density `1`).
    pub fn canonical_trace(alg: &JordanAlgebra) -> Result<Self> {
        Self::from_density(alg.unit())
    }

    pub fn from_density(density: JordanElement) -> Result<Self> {
        if !density.is_selfadjoint() {
            return Err(Error::NotSelfadjoint(density.selfadjoint_residual()));
        }
        let density = density.selfadjoint_part();
        let lowest = crate::calculus::spectral_decompose(&density)?.min_eigenvalue();
        if lowest < -1e-12 {
            return Err(Error::InvalidArgument(format!("density is not positive (eigenvalue {lowest:e})")));
        }
        let normalization = density.trace().re;
        let mut state = StateFunctional { density, normalization, tracial: false, faithful: false, gram_min_eigenvalue: 0.0 };
        state.tracial = state.trace_identity_residual(24, 0x5eed) <= TRACIAL_TOL;
        let gram = state.gram();
        state.gram_min_eigenvalue = hermitian_eig(&gram.hermitian_part())?.values[0];
        state.faithful = state.gram_min_eigenvalue > FAITHFUL_TOL;
        Ok(state)
    }

    /// State with ambient density matrix `D` (trace one), i.e. `φ(x) = tr(D π(x))`.
    pub fn from_ambient_density(alg: &JordanAlgebra, d: &CMatrix) -> Result<Self> {
        let w = alg.trace_weights()?;
        let scaled = CMatrix::from_fn(d.rows(), d.cols(), |r, c| d[(r, c)] / w[(r, r)].re);
        let (density, residual) = alg.from_matrix(&scaled)?;
        if residual > 1e-10 * scaled.frobenius_norm().max(1.0) {
            return Err(Error::InvalidArgument(format!("density matrix is not in {alg} (residual {residual:e})")));
        }
        Self::from_density(density)
    }

    pub fn algebra(&self) -> &JordanAlgebra {
        self.density.algebra()
    }

    pub fn density(&self) -> &JordanElement {
        &self.density
    }

    /// `φ(1)`.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn is_state(&self) -> bool {
        (self.normalization - 1.0).abs() <= 1e-12
    }

    pub fn is_tracial(&self) -> bool {
        self.tracial
    }

    pub fn is_faithful(&self) -> bool {
        self.faithful
    }

    pub fn gram_min_eigenvalue(&self) -> f64 {
        self.gram_min_eigenvalue
    }

    pub fn evaluate(&self, x: &JordanElement) -> Result<C64> {
        Ok(self.density.jordan(x)?.trace())
    }

    /// `G_{jk} = φ(b_j*∘b_k)` over the algebra basis.
    pub fn gram(&self) -> CMatrix {
        let basis = self.algebra().basis();
        let n = basis.len();
        let stars: Vec<JordanElement> = basis.iter().map(|b| b.star()).collect();
        CMatrix::from_fn(n, n, |j, k| self.evaluate(&stars[j].jordan_unchecked(&basis[k])).expect("same algebra"))
    }

    /// Ambient density `W π(d)`: `φ(y) = tr(D π(y))`.
    pub fn ambient_density(&self) -> Result<CMatrix> {
        let w = self.algebra().trace_weights()?;
        crate::densemat::matmul(&w, &self.density.represent()?)
    }

    /// Largest `|φ(x∘(y∘z)) − φ((x∘y)∘z)|` over seeded triples.
    pub fn trace_identity_residual(&self, samples: usize, seed: u64) -> f64 {
        let alg = self.algebra();
        let mut worst: f64 = 0.0;
        for i in 0..samples as u64 {
            let mut rng = stream_rng(seed, 0x7472, i);
            let x = JordanElement { alg: alg.clone(), coords: gaussian_coords(&mut rng, alg.dim()) };
            let y = JordanElement { alg: alg.clone(), coords: gaussian_coords(&mut rng, alg.dim()) };
            let z = JordanElement { alg: alg.clone(), coords: gaussian_coords(&mut rng, alg.dim()) };
            let lhs = self.evaluate(&x.jordan_unchecked(&y.jordan_unchecked(&z))).expect("same algebra");
            let rhs = self.evaluate(&x.jordan_unchecked(&y).jordan_unchecked(&z)).expect("same algebra");
            worst = worst.max((lhs - rhs).norm());
        }
        worst
    }
}

pub fn evaluate_state(state: &StateFunctional, x: &JordanElement) -> Result<C64> {
    state.evaluate(x)
}

/// The functional `y ↦ φ(x∘y)`.
#[derive(Clone, Debug)]
pub struct PhiFunctional {
    /// `φ(x∘b_j)` over the basis.
    pub coefficients: Vec<C64>,
    /// `R` with `φ(x∘y) = tr(R π(y))`, for represented algebras.
    pub representer: Option<CMatrix>,
}

impl PhiFunctional {
    pub fn apply(&self, y: &JordanElement) -> C64 {
        self.coefficients.iter().zip(y.coords()).map(|(c, v)| c * v).sum()
    }
}

pub fn phi_x(state: &StateFunctional, x: &JordanElement) -> Result<PhiFunctional> {
    if !state.is_faithful() {
        return Err(Error::NotFaithful(state.gram_min_eigenvalue()));
    }
    if x.algebra() != state.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let coefficients = x.algebra().basis().iter().map(|b| state.evaluate(&x.jordan_unchecked(b))).collect::<Result<Vec<_>>>()?;
    let representer = if x.algebra().is_represented() {
        let d = state.ambient_density()?;
        Some(d.anticommutator_half(&x.represent()?)?)
    } else {
        None
    };
    Ok(PhiFunctional { coefficients, representer })
}

/// Norm used to test the JB/JB* axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormOracle {
    /// `‖x‖_∞` of the algebra.
    Spectral,
    /// `‖a‖ + |λ|` on real spin elements `λ1 + a`.
    RealSpin,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JbAxiomReport {
    pub samples: usize,
    /// max `‖x∘y‖ − ‖x‖‖y‖`
    pub product_bound: f64,
    /// max `|‖x²‖ − ‖x‖²|` on selfadjoint samples
    pub square_identity: f64,
    /// max `|‖{x,x*,x}‖ − ‖x‖³|` on complex samples, when the norm is available
    pub star_identity: Option<f64>,
}

impl JbAxiomReport {
    pub fn max_violation(&self) -> f64 {
        self.product_bound.max(self.square_identity).max(self.star_identity.unwrap_or(0.0)).max(0.0)
    }
}

fn real_spin_norm(x: &JordanElement) -> f64 {
    let c = x.coords();
    c[1..].iter().map(|z| z.re * z.re).sum::<f64>().sqrt() + c[0].re.abs()
}

pub fn check_jb_axioms(alg: &JordanAlgebra, oracle: NormOracle, samples: usize, seed: u64) -> Result<JbAxiomReport> {
    let is_spin = matches!(alg.kind(), AlgebraKind::Spin(_));
    if oracle == NormOracle::RealSpin && !is_spin {
        return Err(Error::Unsupported(format!("the real spin norm does not apply to {alg}")));
    }
    let complex_ok = oracle == NormOracle::Spectral && alg.is_represented();
    let norm = |x: &JordanElement| -> Result<f64> {
        match oracle {
            NormOracle::Spectral => x.sup_norm(),
            NormOracle::RealSpin => Ok(real_spin_norm(x)),
        }
    };
    let mut report = JbAxiomReport { samples, product_bound: f64::NEG_INFINITY, square_identity: 0.0, star_identity: None };
    let mut star: f64 = 0.0;
    for i in 0..samples as u64 {
        let mut rng = stream_rng(seed, 0x6a62, i);
        let draw = |rng: &mut _| -> JordanElement {
            let coords = if complex_ok { gaussian_coords(rng, alg.dim()) } else { real_gaussian_coords(rng, alg.dim()) };
            JordanElement { alg: alg.clone(), coords }
        };
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let (nx, ny) = (norm(&x)?, norm(&y)?);
        let nxy = if complex_ok || oracle == NormOracle::RealSpin {
            norm(&x.jordan(&y)?)?
        } else {
            // x∘y of real Albert elements is real, hence selfadjoint
            norm(&x.jordan(&y)?.selfadjoint_part())?
        };
        report.product_bound = report.product_bound.max(nxy - nx * ny);
        let h = x.selfadjoint_part();
        let nh = norm(&h)?;
        report.square_identity = report.square_identity.max((norm(&h.square())? - nh * nh).abs());
        if complex_ok {
            let t = x.triple(&x.star(), &x)?;
            star = star.max((norm(&t)? - nx * nx * nx).abs() / nx.max(1.0).powi(3));
        }
    }
    if samples == 0 {
        report.product_bound = 0.0;
    }
    if complex_ok {
        report.star_identity = Some(star);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{albert, matrix_jordan, spin_abstract, spin_represented};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn m2(rows: [[C64; 2]; 2]) -> JordanElement {
        matrix_jordan(2).unwrap().element(vec![rows[0][0], rows[0][1], rows[1][0], rows[1][1]]).unwrap()
    }

    fn s1() -> JordanElement {
        m2([[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]])
    }

    fn s2() -> JordanElement {
        m2([[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]])
    }

    #[test]
    fn unit_is_neutral() {
        let x = m2([[c(1., 2.), c(3., 0.)], [c(0., -1.), c(4., 4.)]]);
        let one = x.algebra().unit();
        assert_eq!(x.jordan(&one).unwrap(), x);
    }

    #[test]
    fn anticommuting_pauli_product_vanishes() {
        assert_eq!(s1().jordan(&s2()).unwrap(), s1().algebra().zero());
    }

    #[test]
    fn spin_generator_squares_to_unit() {
        let spin = spin_abstract(3).unwrap();
        let e1 = spin.basis_element(1);
        assert_eq!(e1.square(), spin.unit());
    }

    #[test]
    fn triple_product_examples() {
        let alg = matrix_jordan(2).unwrap();
        let one = alg.unit();
        assert_eq!(one.triple(&one, &one).unwrap(), one);
        let x = m2([[c(1., 2.), c(3., 0.)], [c(0., -1.), c(4., 4.)]]);
        assert!(x.triple(&one, &x).unwrap().distance(&x.square()) < 1e-12);
        assert_eq!(s1().triple(&s1(), &s1()).unwrap(), s1());
    }

    #[test]
    fn involution_examples() {
        let alg = matrix_jordan(2).unwrap();
        assert_eq!(alg.unit().star(), alg.unit());
        assert_eq!(alg.scalar(c(0., 1.)).star(), alg.scalar(c(0., -1.)));
        let x = &s1() + &s2().scale(c(0., 1.));
        let expected = &s1() - &s2().scale(c(0., 1.));
        assert_eq!(x.star(), expected);
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = matrix_jordan(2).unwrap().unit();
        let b = matrix_jordan(3).unwrap().unit();
        assert!(matches!(a.jordan(&b), Err(Error::AlgebraMismatch)));
        assert!(matches!(matrix_jordan(2).unwrap().element(vec![ZERO; 3]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn state_examples() {
        let alg = matrix_jordan(2).unwrap();
        let tau = StateFunctional::canonical_trace(&alg).unwrap();
        assert!(tau.is_state() && tau.is_tracial() && tau.is_faithful());
        assert!((tau.evaluate(&alg.unit()).unwrap() - ONE).norm() < 1e-15);
        let p = m2([[ONE, ZERO], [ZERO, ZERO]]);
        assert!((tau.evaluate(&p).unwrap() - c(0.5, 0.)).norm() < 1e-15);
        let spin = spin_abstract(3).unwrap();
        let st = StateFunctional::canonical_trace(&spin).unwrap();
        let x = spin.element(vec![c(2., 0.), c(5., 0.), c(-1., 3.), ZERO]).unwrap();
        assert_eq!(st.evaluate(&x).unwrap(), c(2., 0.));
        assert!(st.is_tracial());
    }

    #[test]
    fn non_tracial_density_is_detected() {
        let alg = matrix_jordan(2).unwrap();
        let phi = StateFunctional::from_ambient_density(&alg, &CMatrix::diag_real(&[0.7, 0.3])).unwrap();
        assert!(phi.is_state() && !phi.is_tracial() && phi.is_faithful());
        let pure = StateFunctional::from_ambient_density(&alg, &CMatrix::diag_real(&[1.0, 0.0])).unwrap();
        assert!(!pure.is_faithful());
        let x = alg.unit();
        assert!(matches!(phi_x(&pure, &x), Err(Error::NotFaithful(_))));
    }

    #[test]
    fn phi_x_examples() {
        let alg = matrix_jordan(2).unwrap();
        let tau = StateFunctional::canonical_trace(&alg).unwrap();
        let one = phi_x(&tau, &alg.unit()).unwrap();
        for (b, coeff) in alg.basis().iter().zip(&one.coefficients) {
            assert!((tau.evaluate(b).unwrap() - coeff).norm() < 1e-15);
        }
        let x = m2([[c(1., 2.), c(3., 0.)], [c(0., -1.), c(4., 4.)]]);
        let rep = phi_x(&tau, &x).unwrap().representer.unwrap();
        assert!((&rep - &x.represent().unwrap().scale_real(0.5)).frobenius_norm() < 1e-15);
        let d = CMatrix::diag_real(&[0.7, 0.3]);
        let phi = StateFunctional::from_ambient_density(&alg, &d).unwrap();
        let f = phi_x(&phi, &x).unwrap();
        let xm = x.represent().unwrap();
        let expected = (&(&xm * &d) + &(&d * &xm)).scale_real(0.5);
        assert!((f.representer.as_ref().unwrap() - &expected).frobenius_norm() < 1e-14);
        let y = m2([[c(0.5, 0.), c(-1., 1.)], [c(2., 0.), c(0., 3.)]]);
        let direct = phi.evaluate(&x.jordan(&y).unwrap()).unwrap();
        assert!((f.apply(&y) - direct).norm() < 1e-14);
        assert!((expected.hs_inner(&y.represent().unwrap().adjoint()).conj() - direct).norm() < 1e-14);
    }

    #[test]
    fn jb_axioms_hold_on_matrices_and_real_spin() {
        let r = check_jb_axioms(&matrix_jordan(2).unwrap(), NormOracle::Spectral, 200, 1).unwrap();
        assert!(r.max_violation() <= 1e-10, "{r:?}");
        let spin = spin_abstract(4).unwrap();
        let r = check_jb_axioms(&spin, NormOracle::RealSpin, 200, 2).unwrap();
        assert!(r.max_violation() <= 1e-10, "{r:?}");
        let r = check_jb_axioms(&spin, NormOracle::Spectral, 200, 3).unwrap();
        assert!(r.max_violation() <= 1e-10, "{r:?}");
        let r = check_jb_axioms(&albert(), NormOracle::Spectral, 50, 4).unwrap();
        assert!(r.max_violation() <= 1e-9 && r.star_identity.is_none(), "{r:?}");
        let one = matrix_jordan(3).unwrap().unit();
        assert_eq!(one.square().sup_norm().unwrap(), 1.0);
    }

    #[test]
    fn operator_commutation_examples() {
        let x = m2([[c(1., 2.), c(3., 0.)], [c(0., -1.), c(4., 4.)]]);
        assert!(operator_commute(&x.algebra().unit(), &x).unwrap());
        assert!(!operator_commute(&s1(), &s2()).unwrap());
        assert!(operator_commute(&s1(), &s1()).unwrap());
    }

    #[test]
    fn structure_is_unital_and_commutative() {
        for alg in [matrix_jordan(3).unwrap(), spin_abstract(5).unwrap(), spin_represented(5).unwrap(), albert()] {
            let (u, cm) = alg.structure_residuals();
            assert!(u <= 1e-12 && cm <= 1e-12, "{alg}: {u} {cm}");
        }
    }

    #[test]
    fn represented_and_rule_products_agree() {
        let abs = spin_abstract(5).unwrap();
        let rep = spin_represented(5).unwrap();
        let mut rng = stream_rng(3, 0, 0);
        for _ in 0..50 {
            let x = gaussian_coords(&mut rng, 6);
            let y = gaussian_coords(&mut rng, 6);
            let a = abs.product_coords(&x, &y);
            let b = rep.product_coords(&x, &y);
            for (p, q) in a.iter().zip(&b) {
                assert!((p - q).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn gram_positivity_for_traces() {
        for alg in [matrix_jordan(3).unwrap(), spin_abstract(3).unwrap(), albert()] {
            let tau = StateFunctional::canonical_trace(&alg).unwrap();
            assert!(tau.is_faithful() && tau.is_tracial(), "{alg}");
        }
    }
}
