//! Spectral decomposition and continuous functional calculus for selfadjoint
//! elements, the modulus `|x|` and the real polar decomposition `x = s∘|x|`.

use serde::Serialize;

use crate::algebras::albert;
use crate::densemat::{hermitian_eig, C64, ZERO};
use crate::error::{Error, Result};
use crate::jordan::{AlgebraKind, JordanElement};

/// Relative gap below which eigenvalues are treated as one.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Lower edge accepted as "nonnegative".
pub const POSITIVITY_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    /// Distinct eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Minimal idempotents, one per eigenvalue.
    pub idempotents: Vec<JordanElement>,
    /// Set when nearly coincident roots had to be merged.
    pub merged: bool,
}

impl SpectralDecomposition {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `Σ f(λᵢ) eᵢ`; errors on non-finite values.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Result<JordanElement> {
        let alg = self.idempotents[0].algebra();
        let mut out = alg.zero();
        for (&lambda, e) in self.eigenvalues.iter().zip(&self.idempotents) {
            let v = f(lambda);
            if !v.is_finite() {
                return Err(Error::FunctionDomain(lambda));
            }
            if v != 0.0 {
                out = &out + &e.scale_real(v);
            }
        }
        Ok(out)
    }

    pub fn reconstruct(&self) -> JordanElement {
        self.apply(|l| l).expect("identity is finite")
    }

    /// `(‖Σeᵢ − 1‖, max‖eᵢ∘eⱼ − δᵢⱼeᵢ‖, ‖Σλᵢeᵢ − x‖)`.
    pub fn residuals(&self, x: &JordanElement) -> (f64, f64, f64) {
        let alg = x.algebra();
        let mut sum = alg.zero();
        let mut orth: f64 = 0.0;
        for (i, e) in self.idempotents.iter().enumerate() {
            sum = &sum + e;
            for (j, f) in self.idempotents.iter().enumerate() {
                let p = e.jordan(f).expect("same algebra");
                let r = if i == j { p.distance(e) } else { p.coord_norm() };
                orth = orth.max(r);
            }
        }
        (sum.distance(&alg.unit()), orth, self.reconstruct().distance(x))
    }
}

fn cluster(values: &[f64]) -> Vec<Vec<usize>> {
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (v - values[*g.last().unwrap()]).abs() <= CLUSTER_TOL * scale => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

/// Gap below which two cubic roots may be a rounded double root.
const ALBERT_DOUBLE_ROOT_GAP: f64 = 1e-6;

/// A double root of the characteristic cubic is only resolved to about `√ε`.
/// When roots are that close, test the merged spectrum directly and take
/// Rayleigh quotients as eigenvalues.
fn albert_degenerate(h: &JordanElement, roots: &[f64; 3]) -> Result<Option<SpectralDecomposition>> {
    let alg = h.algebra();
    let unit = alg.unit();
    let scale = roots.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let close = |a: f64, b: f64| (a - b).abs() <= ALBERT_DOUBLE_ROOT_GAP * scale;
    let tau = |y: &JordanElement| y.trace().re;
    let tol = 1e-12 * scale;
    if close(roots[0], roots[2]) {
        let lambda = tau(h);
        if h.distance(&unit.scale_real(lambda)) <= tol {
            return Ok(Some(SpectralDecomposition { eigenvalues: vec![lambda], idempotents: vec![unit], merged: true }));
        }
        return Ok(None);
    }
    let (single, pair) = if close(roots[0], roots[1]) {
        (roots[2], 0.5 * (roots[0] + roots[1]))
    } else if close(roots[1], roots[2]) {
        (roots[0], 0.5 * (roots[1] + roots[2]))
    } else {
        return Ok(None);
    };
    let e_single = (h - &unit.scale_real(pair)).scale_real(1.0 / (single - pair));
    let e_pair = &unit - &e_single;
    let l_single = tau(&h.jordan(&e_single)?) / tau(&e_single);
    let l_pair = tau(&h.jordan(&e_pair)?) / tau(&e_pair);
    let rebuilt = &e_single.scale_real(l_single) + &e_pair.scale_real(l_pair);
    if rebuilt.distance(h) > tol || e_single.square().distance(&e_single) > 1e-12 {
        return Ok(None);
    }
    let (eigenvalues, idempotents) = if l_single < l_pair {
        (vec![l_single, l_pair], vec![e_single, e_pair])
    } else {
        (vec![l_pair, l_single], vec![e_pair, e_single])
    };
    Ok(Some(SpectralDecomposition { eigenvalues, idempotents, merged: true }))
}

fn mean(values: &[f64], idx: &[usize]) -> f64 {
    idx.iter().map(|&i| values[i]).sum::<f64>() / idx.len() as f64
}

/// Spectral decomposition of a selfadjoint element.
pub fn spectral_decompose(x: &JordanElement) -> Result<SpectralDecomposition> {
    if !x.is_selfadjoint() {
        return Err(Error::NotSelfadjoint(x.selfadjoint_residual()));
    }
    let h = x.selfadjoint_part();
    let alg = h.algebra().clone();
    match alg.kind() {
        AlgebraKind::Matrix { n } => {
            let n = *n;
            let eig = hermitian_eig(&h.represent()?)?;
            let groups = cluster(&eig.values);
            let merged = groups.iter().any(|g| g.len() > 1 && eig.values[*g.last().unwrap()] != eig.values[g[0]]);
            let mut eigenvalues = Vec::new();
            let mut idempotents = Vec::new();
            for g in &groups {
                eigenvalues.push(mean(&eig.values, g));
                let mut coords = vec![ZERO; n * n];
                for &k in g {
                    for r in 0..n {
                        let ur = eig.vectors[(r, k)];
                        for c in 0..n {
                            coords[r * n + c] += ur * eig.vectors[(c, k)].conj();
                        }
                    }
                }
                idempotents.push(alg.element(coords)?);
            }
            Ok(SpectralDecomposition { eigenvalues, idempotents, merged })
        }
        AlgebraKind::Spin(_) => {
            let c = h.coords();
            let lambda = c[0].re;
            let radius = c[1..].iter().map(|z| z.re * z.re).sum::<f64>().sqrt();
            if radius <= CLUSTER_TOL * lambda.abs().max(1.0) {
                return Ok(SpectralDecomposition {
                    eigenvalues: vec![lambda],
                    idempotents: vec![alg.unit()],
                    merged: radius > 0.0,
                });
            }
            let mut lower = vec![C64::new(0.5, 0.0)];
            let mut upper = vec![C64::new(0.5, 0.0)];
            for z in &c[1..] {
                lower.push(C64::new(-0.5 * z.re / radius, 0.0));
                upper.push(C64::new(0.5 * z.re / radius, 0.0));
            }
            Ok(SpectralDecomposition {
                eigenvalues: vec![lambda - radius, lambda + radius],
                idempotents: vec![alg.element(lower)?, alg.element(upper)?],
                merged: false,
            })
        }
        AlgebraKind::Albert => {
            let real = h.albert_real_coords()?;
            let (t, s, n) = albert::cubic_invariants(&real);
            let roots = albert::cubic_roots(t, s, n);
            if let Some(d) = albert_degenerate(&h, &roots)? {
                return Ok(d);
            }
            let groups = cluster(&roots);
            let merged = groups.iter().any(|g| g.len() > 1 && roots[*g.last().unwrap()] != roots[g[0]]);
            let eigenvalues: Vec<f64> = groups.iter().map(|g| mean(&roots, g)).collect();
            let unit = alg.unit();
            let mut idempotents = Vec::new();
            for (i, &li) in eigenvalues.iter().enumerate() {
                let mut e = unit.clone();
                for (j, &lj) in eigenvalues.iter().enumerate() {
                    if i != j {
                        let factor = (&h - &unit.scale_real(lj)).scale_real(1.0 / (li - lj));
                        e = e.jordan(&factor)?;
                    }
                }
                idempotents.push(e);
            }
            Ok(SpectralDecomposition { eigenvalues, idempotents, merged })
        }
        AlgebraKind::DirectSum(parts) => {
            let mut pieces = Vec::new();
            let mut merged = false;
            for i in 0..parts.len() {
                let d = spectral_decompose(&h.component(i)?)?;
                merged |= d.merged;
                pieces.push(d);
            }
            let mut all: Vec<f64> = pieces.iter().flat_map(|d| d.eigenvalues.iter().copied()).collect();
            all.sort_by(f64::total_cmp);
            let groups = cluster(&all);
            let mut eigenvalues = Vec::new();
            let mut idempotents = Vec::new();
            for g in &groups {
                let (lo, hi) = (all[g[0]], all[*g.last().unwrap()]);
                let mut coords = Vec::with_capacity(alg.dim());
                for (d, (a, _)) in pieces.iter().zip(parts) {
                    let mut block = a.zero();
                    for (&l, e) in d.eigenvalues.iter().zip(&d.idempotents) {
                        if l >= lo && l <= hi {
                            block = &block + e;
                        }
                    }
                    coords.extend_from_slice(block.coords());
                }
                merged |= g.len() > 1 && hi != lo;
                eigenvalues.push(mean(&all, g));
                idempotents.push(alg.element(coords)?);
            }
            Ok(SpectralDecomposition { eigenvalues, idempotents, merged })
        }
    }
}

/// `f(x)` for selfadjoint `x`.
pub fn apply_function(x: &JordanElement, f: impl Fn(f64) -> f64) -> Result<JordanElement> {
    spectral_decompose(x)?.apply(f)
}

/// `|x| = (x²)^{1/2}`.
pub fn abs(x: &JordanElement) -> Result<JordanElement> {
    apply_function(x, f64::abs)
}

/// True when every eigenvalue is at least `−1e−10`.
pub fn positive_part_check(x: &JordanElement) -> Result<bool> {
    Ok(spectral_decompose(x)?.min_eigenvalue() >= -POSITIVITY_TOL)
}

/// `x^t` for positive `x`; eigenvalues in `[−1e−10, 0)` are read as zero.
pub fn positive_power(x: &JordanElement, t: f64) -> Result<JordanElement> {
    let d = spectral_decompose(x)?;
    if d.min_eigenvalue() < -POSITIVITY_TOL * d.spectral_radius().max(1.0) {
        return Err(Error::NegativeRadicand(d.min_eigenvalue()));
    }
    d.apply(|l| {
        if l <= 0.0 {
            if t == 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            l.powf(t)
        }
    })
}

#[derive(Clone, Debug)]
pub struct PolarPair {
    /// Symmetry `s` with `s² = 1`.
    pub symmetry: JordanElement,
    pub modulus: JordanElement,
    /// Set when `0` is in the spectrum and the `sgn(0) = +1` convention was used.
    pub zero_in_spectrum: bool,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PolarResiduals {
    pub factorization: f64,
    pub symmetry_square: f64,
    pub selfadjoint: f64,
}

impl PolarPair {
    pub fn residuals(&self, x: &JordanElement) -> Result<PolarResiduals> {
        let alg = x.algebra();
        Ok(PolarResiduals {
            factorization: self.symmetry.jordan(&self.modulus)?.distance(x),
            symmetry_square: self.symmetry.square().distance(&alg.unit()),
            selfadjoint: self.symmetry.selfadjoint_residual(),
        })
    }
}

/// `x = s∘|x|` with `s = Σ sgn(λᵢ)eᵢ`, `sgn(0) = +1`.
pub fn polar_real(x: &JordanElement) -> Result<PolarPair> {
    let d = spectral_decompose(x)?;
    let scale = d.spectral_radius().max(1.0);
    let zero_in_spectrum = d.eigenvalues.iter().any(|l| l.abs() <= CLUSTER_TOL * scale);
    let symmetry = d.apply(|l| if l >= 0.0 { 1.0 } else { -1.0 })?;
    let modulus = d.apply(f64::abs)?;
    Ok(PolarPair { symmetry, modulus, zero_in_spectrum })
}
