//! Dense complex matrices and the spectral primitives every matrix-represented
//! algebra is built on: products, Kronecker products, a cyclic Jacobi
//! eigensolver for Hermitian matrices and a one-sided Jacobi SVD.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Relative tolerance used to accept a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Off-diagonal Frobenius mass below which Jacobi sweeps stop.
pub const JACOBI_TOL: f64 = 1e-13;

/// Sweep cap for both Jacobi solvers.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense complex matrix in row-major order.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows; panics on ragged input (test and constant helper).
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CMatrix { rows: r, cols: c, data: rows.iter().flatten().copied().collect() }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let owned: Vec<Vec<C64>> = rows.iter().map(|row| row.iter().map(|&v| C64::new(v, 0.0)).collect()).collect();
        Self::from_rows(&owned)
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius distance between `self` and its adjoint.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                acc += (self[(r, c)] - self[(c, r)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Hermitian within `HERMITIAN_TOL · max(1, ‖A‖_F)`, measured as max entry deviation.
    pub fn is_hermitian(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.frobenius_norm().max(1.0);
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst <= HERMITIAN_TOL * scale
    }

    /// (A + A†)/2.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    /// Hilbert–Schmidt pairing tr(A† B).
    pub fn hs_inner(&self, other: &CMatrix) -> C64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn anticommutator_half(&self, other: &CMatrix) -> Result<CMatrix> {
        let ab = matmul(self, other)?;
        let ba = matmul(other, self)?;
        Ok((&ab + &ba).scale_real(0.5))
    }

    pub fn block_diag(blocks: &[CMatrix]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m[(r0 + r, c0 + c)] = b[(r, c)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn sub_block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        matmul(self, rhs).expect("shape mismatch in mul")
    }
}

/// Standard matrix product.
pub fn matmul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!("cannot multiply {}x{} by {}x{}", a.rows, a.cols, b.rows, b.cols)));
    }
    let mut out = CMatrix::zeros(a.rows, b.cols);
    for r in 0..a.rows {
        for k in 0..a.cols {
            let av = a[(r, k)];
            if av == ZERO {
                continue;
            }
            let brow = &b.data[k * b.cols..(k + 1) * b.cols];
            let orow = &mut out.data[r * b.cols..(r + 1) * b.cols];
            for (o, bv) in orow.iter_mut().zip(brow) {
                *o += av * bv;
            }
        }
    }
    Ok(out)
}

/// Kronecker product; dimensions multiply.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |r, c| a[(r / b.rows, c / b.cols)] * b[(r % b.rows, c % b.cols)])
}

/// Eigen-decomposition of a Hermitian matrix: `a = U diag(values) U†`.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Unitary whose columns are the eigenvectors.
    pub vectors: CMatrix,
}

impl HermitianEig {
    /// Rebuilds `Σ f(λ_i) u_i u_i†`.
    pub fn apply(&self, f: impl Fn(f64) -> C64) -> CMatrix {
        let n = self.values.len();
        let weights: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        CMatrix::from_fn(n, n, |r, c| (0..n).map(|k| weights[k] * self.vectors[(r, k)] * self.vectors[(c, k)].conj()).sum())
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.apply(|l| C64::new(l, 0.0))
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
pub fn hermitian_eig(a: &CMatrix) -> Result<HermitianEig> {
    hermitian_eig_with(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
}

pub fn hermitian_eig_with(a: &CMatrix, tol: f64, max_sweeps: usize) -> Result<HermitianEig> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("eigenproblem needs a square matrix, got {}x{}", a.rows, a.cols)));
    }
    if !a.is_hermitian() {
        return Err(Error::NotHermitian(a.hermitian_residual()));
    }
    let n = a.rows;
    let mut m = a.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm().max(1.0);
    let off = |m: &CMatrix| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += m[(r, c)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&m) > tol * scale {
        if sweeps >= max_sweeps {
            return Err(Error::NoConvergence { sweeps, off: off(&m) });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / mag;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t =
                    if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = diag(1, conj(phase)) · [[c, s], [-s, c]] on (p, q).
                let jpp = C64::new(c, 0.0);
                let jpq = C64::new(s, 0.0);
                let jqp = phase.conj() * (-s);
                let jqq = phase.conj() * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * jpp + mkq * jqp;
                    m[(k, q)] = mkp * jpq + mkq * jqq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = jpp.conj() * mpk + jqp.conj() * mqk;
                    m[(q, k)] = jpq.conj() * mpk + jqq.conj() * mqk;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEig { values, vectors })
}

/// Singular value decomposition `a = U diag(s) V†` with descending `s`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: CMatrix,
    pub s: Vec<f64>,
    pub v: CMatrix,
}

impl Svd {
    /// The unitary polar factor `U V†`.
    pub fn polar_unitary(&self) -> CMatrix {
        matmul(&self.u, &self.v.adjoint()).expect("square factors")
    }
}

/// One-sided (Hestenes) Jacobi SVD of a square matrix.
pub fn svd(a: &CMatrix) -> Result<Svd> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("svd implemented for square matrices, got {}x{}", a.rows, a.cols)));
    }
    let n = a.rows;
    // unit scale keeps the rotation tests clear of underflow
    let scale = a.max_abs();
    if scale == 0.0 || !scale.is_finite() {
        if !scale.is_finite() {
            return Err(Error::InvalidArgument("svd of a matrix with non-finite entries".into()));
        }
        return Ok(Svd { u: CMatrix::identity(n), s: vec![0.0; n], v: CMatrix::identity(n) });
    }
    let mut w = a.scale_real(1.0 / scale);
    // columns below this squared norm are numerically zero; rotating them only underflows
    let negligible = w.frobenius_norm().powi(2) * f64::EPSILON * f64::EPSILON * 1e-4;
    let mut v = CMatrix::identity(n);
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        let mut worst: f64 = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for k in 0..n {
                    alpha += w[(k, p)].norm_sqr();
                    beta += w[(k, q)].norm_sqr();
                    gamma += w[(k, p)].conj() * w[(k, q)];
                }
                let g = gamma.norm();
                if g <= 1e-15 * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                worst = worst.max(g / (alpha * beta).sqrt());
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let jqp = phase.conj() * (-s);
                let jqq = phase.conj() * c;
                for k in 0..n {
                    let wp = w[(k, p)];
                    let wq = w[(k, q)];
                    w[(k, p)] = wp * c + wq * jqp;
                    w[(k, q)] = wp * s + wq * jqq;
                    let vp = v[(k, p)];
                    let vq = v[(k, q)];
                    v[(k, p)] = vp * c + vq * jqp;
                    v[(k, q)] = vp * s + vq * jqq;
                }
            }
        }
        sweeps += 1;
        if !rotated {
            break;
        }
        if sweeps >= JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off: worst });
        }
    }
    let norms: Vec<f64> = (0..n).map(|c| w.column(c).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let s: Vec<f64> = order.iter().map(|&i| norms[i] * scale).collect();
    let vs = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    let cutoff = norms[order[0]] * 1e-14;
    let mut u = CMatrix::zeros(n, n);
    let mut filled = 0;
    for (c, &i) in order.iter().enumerate() {
        if norms[i] > cutoff && norms[i] > f64::MIN_POSITIVE {
            for r in 0..n {
                u[(r, c)] = w[(r, i)] / norms[i];
            }
            filled += 1;
        }
    }
    complete_orthonormal(&mut u, filled);
    Ok(Svd { u, s, v: vs })
}

/// Fills columns `filled..n` with an orthonormal completion of the first `filled` columns.
fn complete_orthonormal(u: &mut CMatrix, filled: usize) {
    let n = u.rows;
    let mut col = filled;
    let mut e = 0;
    while col < n && e < n {
        let mut cand: Vec<C64> = (0..n).map(|r| if r == e { ONE } else { ZERO }).collect();
        for _ in 0..2 {
            for j in 0..col {
                let proj: C64 = (0..n).map(|r| u[(r, j)].conj() * cand[r]).sum();
                for r in 0..n {
                    cand[r] -= proj * u[(r, j)];
                }
            }
        }
        let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            for r in 0..n {
                u[(r, col)] = cand[r] / norm;
            }
            col += 1;
        }
        e += 1;
    }
}

pub fn singular_values(a: &CMatrix) -> Result<Vec<f64>> {
    Ok(svd(a)?.s)
}

/// Largest singular value.
pub fn spectral_norm(a: &CMatrix) -> Result<f64> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

/// `weight · Σ σ_i`; the weight carries trace normalization (1/n for the normalized trace).
pub fn trace_norm(a: &CMatrix, weight: f64) -> Result<f64> {
    if weight <= 0.0 {
        return Err(Error::InvalidArgument(format!("trace-norm weight must be positive, got {weight}")));
    }
    Ok(weight * singular_values(a)?.iter().sum::<f64>())
}

/// `(weight · Σ σ_i^p)^{1/p}`; `p = ∞` gives the spectral norm.
pub fn schatten_norm(a: &CMatrix, p: f64, weight: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(format!("Schatten exponent must be ≥ 1, got {p}")));
    }
    let s = singular_values(a)?;
    if p.is_infinite() {
        return Ok(s.first().copied().unwrap_or(0.0));
    }
    Ok((weight * s.iter().map(|v| v.powf(p)).sum::<f64>()).powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let g = CMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        g.hermitian_part()
    }

    #[test]
    fn identity_squared_is_identity() {
        let i2 = CMatrix::identity(2);
        assert_eq!(matmul(&i2, &i2).unwrap(), i2);
    }

    #[test]
    fn pauli_product_by_hand() {
        // σ₁ = diag(1,-1), σ₂ = [[0,1],[1,0]] in this crate.
        let s1 = CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let s2 = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let expected = CMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        assert_eq!(matmul(&s1, &s2).unwrap(), expected);
    }

    #[test]
    fn product_with_zero_vanishes() {
        let a = CMatrix::from_fn(3, 3, |r, k| c(r as f64, k as f64));
        let z = CMatrix::zeros(3, 3);
        assert_eq!(matmul(&a, &z).unwrap(), z);
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let a = CMatrix::zeros(2, 3);
        assert!(matches!(matmul(&a, &a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn eig_of_diagonal_is_sorted() {
        let e = hermitian_eig(&CMatrix::diag_real(&[3.0, 1.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 3.0]);
    }

    #[test]
    fn eig_of_flip_matrix() {
        // characteristic polynomial λ² − 1
        let x = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = hermitian_eig(&x).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
        let d = CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let e = hermitian_eig(&d).unwrap();
        assert_eq!(e.values, vec![-1.0, 1.0]);
    }

    #[test]
    fn eig_of_identity() {
        let e = hermitian_eig(&CMatrix::identity(5)).unwrap();
        assert!(e.values.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let x = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&x), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn eig_reconstruction_on_seeded_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=16 {
            let samples = 1000;
            for _ in 0..samples {
                let a = random_hermitian(n, &mut rng);
                let e = hermitian_eig(&a).unwrap();
                let rec = e.reconstruct();
                let err = (&rec - &a).frobenius_norm();
                assert!(err <= 1e-10 * a.frobenius_norm().max(1.0), "n={n} err={err}");
                let uu = matmul(&e.vectors, &e.vectors.adjoint()).unwrap();
                assert!((&uu - &CMatrix::identity(n)).frobenius_norm() <= 1e-10);
                assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn kron_examples() {
        // The physics σ_x is σ₂ here.
        let sx = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let i2 = CMatrix::identity(2);
        let k = kron(&sx, &i2);
        let expected = CMatrix::from_fn(4, 4, |r, c| if (r + 2 == c) || (c + 2 == r) { ONE } else { ZERO });
        assert_eq!(k, expected);
        let one = CMatrix::identity(1);
        let a = CMatrix::from_fn(2, 3, |r, q| c(r as f64 + 1.0, q as f64));
        assert_eq!(kron(&a, &one), a);
        assert_eq!(kron(&i2, &i2), CMatrix::identity(4));
        let s1 = CMatrix::diag_real(&[1.0, -1.0]);
        assert_eq!(kron(&s1, &i2), CMatrix::diag_real(&[1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn kron_is_multiplicative_for_spectral_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..4);
            let m = rng.gen_range(1..4);
            let a = CMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let b = CMatrix::from_fn(m, m, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let lhs = spectral_norm(&kron(&a, &b)).unwrap();
            let rhs = spectral_norm(&a).unwrap() * spectral_norm(&b).unwrap();
            assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1e-300), "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn norm_examples() {
        let d = CMatrix::diag_real(&[1.0, 0.0]);
        assert_eq!(spectral_norm(&d).unwrap(), 1.0);
        assert!((trace_norm(&d, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(spectral_norm(&CMatrix::zeros(3, 3)).unwrap(), 0.0);
        assert!(trace_norm(&d, 0.0).is_err());
    }

    #[test]
    fn svd_reconstructs_and_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=8 {
            for _ in 0..100 {
                let a = CMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                let d = svd(&a).unwrap();
                let sm = CMatrix::from_fn(n, n, |r, q| if r == q { c(d.s[r], 0.0) } else { ZERO });
                let rec = matmul(&matmul(&d.u, &sm).unwrap(), &d.v.adjoint()).unwrap();
                assert!((&rec - &a).frobenius_norm() < 1e-11 * a.frobenius_norm().max(1.0));
                let uu = matmul(&d.u.adjoint(), &d.u).unwrap();
                assert!((&uu - &CMatrix::identity(n)).frobenius_norm() < 1e-10);
            }
        }
    }

    #[test]
    fn svd_handles_rank_deficiency() {
        let a = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let d = svd(&a).unwrap();
        assert!((d.s[0] - 1.0).abs() < 1e-15 && d.s[1].abs() < 1e-15);
        let uu = matmul(&d.u.adjoint(), &d.u).unwrap();
        assert!((&uu - &CMatrix::identity(2)).frobenius_norm() < 1e-12);
        let z = svd(&CMatrix::zeros(3, 3)).unwrap();
        assert!(z.s.iter().all(|&s| s == 0.0));
    }
}
