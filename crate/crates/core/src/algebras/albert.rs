//! The Albert algebra of 3×3 Hermitian octonionic matrices.
//!
//! Real coordinates (27): `ξ₁, ξ₂, ξ₃` on the diagonal, then the octonions
//! `z₁, z₂, z₃` (eight coordinates each) placed as
//!
//! ```text
//! [ ξ₁   z₃   z̄₂ ]
//! [ z̄₃   ξ₂   z₁ ]
//! [ z₂   z̄₁   ξ₃ ]
//! ```
//!
//! Complex elements use the same coordinates with complex entries; the product
//! is the complex-bilinear extension of the real structure constants.

use std::sync::OnceLock;

use crate::densemat::{C64, ZERO};

use super::octonion::Octonion;

pub const ALBERT_DIM: usize = 27;

/// Octonion slot offsets of `z₁, z₂, z₃` in the coordinate vector.
pub const Z_OFFSETS: [usize; 3] = [3, 11, 19];

/// Sparse structure constants: `(i, j, k, c)` means `b_i ∘ b_j` has `c` in coordinate `k`.
#[derive(Debug)]
pub struct AlbertTable {
    entries: Vec<(u8, u8, u8, f64)>,
}

type OctMatrix = [[Octonion; 3]; 3];

fn to_oct_matrix(c: &[f64]) -> OctMatrix {
    let mut m = [[Octonion::ZERO; 3]; 3];
    for i in 0..3 {
        m[i][i] = Octonion::real(c[i]);
    }
    let z = |slot: usize| {
        let o = Z_OFFSETS[slot];
        let mut v = [0.0; 8];
        v.copy_from_slice(&c[o..o + 8]);
        Octonion(v)
    };
    let (z1, z2, z3) = (z(0), z(1), z(2));
    m[1][2] = z1;
    m[2][1] = z1.conj();
    m[2][0] = z2;
    m[0][2] = z2.conj();
    m[0][1] = z3;
    m[1][0] = z3.conj();
    m
}

fn from_oct_matrix(m: &OctMatrix) -> [f64; ALBERT_DIM] {
    let mut c = [0.0; ALBERT_DIM];
    for i in 0..3 {
        c[i] = m[i][i].re();
    }
    for (slot, &(r, q)) in [(1usize, 2usize), (2, 0), (0, 1)].iter().enumerate() {
        c[Z_OFFSETS[slot]..Z_OFFSETS[slot] + 8].copy_from_slice(&m[r][q].0);
    }
    c
}

fn oct_matmul(a: &OctMatrix, b: &OctMatrix) -> OctMatrix {
    let mut out = [[Octonion::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Octonion::ZERO;
            for k in 0..3 {
                acc = acc + a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Jordan product `(xy + yx)/2` of two real elements, computed in the octonionic matrix algebra.
pub fn real_jordan_product(x: &[f64], y: &[f64]) -> [f64; ALBERT_DIM] {
    let (a, b) = (to_oct_matrix(x), to_oct_matrix(y));
    let ab = oct_matmul(&a, &b);
    let ba = oct_matmul(&b, &a);
    let mut sum = [[Octonion::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            sum[i][j] = (ab[i][j] + ba[i][j]).scale(0.5);
        }
    }
    from_oct_matrix(&sum)
}

impl AlbertTable {
    fn build() -> Self {
        let mut entries = Vec::new();
        let basis = |i: usize| {
            let mut v = [0.0; ALBERT_DIM];
            v[i] = 1.0;
            v
        };
        for i in 0..ALBERT_DIM {
            for j in 0..ALBERT_DIM {
                let prod = real_jordan_product(&basis(i), &basis(j));
                for (k, &v) in prod.iter().enumerate() {
                    if v != 0.0 {
                        entries.push((i as u8, j as u8, k as u8, v));
                    }
                }
            }
        }
        AlbertTable { entries }
    }

    /// Shared table, built on first use.
    pub fn shared() -> &'static AlbertTable {
        static TABLE: OnceLock<AlbertTable> = OnceLock::new();
        TABLE.get_or_init(AlbertTable::build)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    pub fn product(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; ALBERT_DIM];
        for &(i, j, k, c) in &self.entries {
            let (xi, yj) = (x[i as usize], y[j as usize]);
            if xi == ZERO || yj == ZERO {
                continue;
            }
            out[k as usize] += xi * yj * c;
        }
        out
    }
}

fn octonion_at(c: &[f64], slot: usize) -> Octonion {
    let o = Z_OFFSETS[slot];
    let mut v = [0.0; 8];
    v.copy_from_slice(&c[o..o + 8]);
    Octonion(v)
}

/// Coefficients `(T, S, N)` of the characteristic cubic `λ³ − Tλ² + Sλ − N` of a real element.
pub fn cubic_invariants(c: &[f64]) -> (f64, f64, f64) {
    let (x1, x2, x3) = (c[0], c[1], c[2]);
    let (z1, z2, z3) = (octonion_at(c, 0), octonion_at(c, 1), octonion_at(c, 2));
    let t = x1 + x2 + x3;
    let sq = real_jordan_product(c, c);
    let s = (t * t - (sq[0] + sq[1] + sq[2])) / 2.0;
    let n = x1 * x2 * x3 - x1 * z1.norm_sqr() - x2 * z2.norm_sqr() - x3 * z3.norm_sqr() + 2.0 * ((z1 * z2) * z3).re();
    (t, s, n)
}

/// Real roots of `λ³ − Tλ² + Sλ − N` (ascending), assuming all three are real.
pub fn cubic_roots(t: f64, s: f64, n: f64) -> [f64; 3] {
    // depressed cubic in μ = λ − T/3: μ³ + pμ + q
    let shift = t / 3.0;
    let p = s - t * t / 3.0;
    let q = -2.0 * t * t * t / 27.0 + t * s / 3.0 - n;
    let mut roots = if p.abs() <= f64::EPSILON * (1.0 + t * t + s.abs()) {
        let r = (-q).cbrt();
        [r, r, r]
    } else if p > 0.0 {
        // only reachable through rounding; clamp to the real part of the triple root
        let r = (-q).cbrt();
        [r, r, r]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        [m * phi.cos(), m * (phi - tau).cos(), m * (phi - 2.0 * tau).cos()]
    };
    for r in roots.iter_mut() {
        *r += shift;
        // Newton polish against the undepressed polynomial
        for _ in 0..3 {
            let f = ((*r - t) * *r + s) * *r - n;
            let df = (3.0 * *r - 2.0 * t) * *r + s;
            if df.abs() > 1e-300 {
                let step = f / df;
                if step.is_finite() && step.abs() < 1e-3 * (1.0 + r.abs()) {
                    *r -= step;
                }
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}
