//! Spin factors `ℂ1 ⊕ ℂᵏ` and their Pauli spin-system representations.

use crate::densemat::{kron, CMatrix, C64, I, ONE, ZERO};

/// `diag(1, −1)`.
pub fn sigma1() -> CMatrix {
    CMatrix::diag_real(&[1.0, -1.0])
}

/// `[[0, 1], [1, 0]]`.
pub fn sigma2() -> CMatrix {
    CMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]])
}

/// `[[0, i], [−i, 0]]`.
pub fn sigma3() -> CMatrix {
    CMatrix::from_rows(&[vec![ZERO, I], vec![-I, ZERO]])
}

/// Number of tensor factors needed for `k` generators.
pub fn tensor_levels(k: usize) -> usize {
    k.div_ceil(2)
}

fn kron_chain(factors: &[CMatrix]) -> CMatrix {
    factors.iter().skip(1).fold(factors[0].clone(), |acc, f| kron(&acc, f))
}

/// Generators `s₁, …, s_k` in `M_{2ⁿ}` with `n = ⌈k/2⌉`:
/// `s_{2i−1} = σ₃^{⊗i−1} ⊗ σ₁ ⊗ I^{⊗n−i}` and `s_{2i} = σ₃^{⊗i−1} ⊗ σ₂ ⊗ I^{⊗n−i}`.
pub fn pauli_generators(k: usize) -> Vec<CMatrix> {
    let n = tensor_levels(k).max(1);
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let i = j / 2;
        let middle = if j % 2 == 0 { sigma1() } else { sigma2() };
        let mut factors = Vec::with_capacity(n);
        factors.extend(std::iter::repeat_n(sigma3(), i));
        factors.push(middle);
        factors.extend(std::iter::repeat_n(CMatrix::identity(2), n - i - 1));
        out.push(kron_chain(&factors));
    }
    out
}

/// Data shared by abstract and represented spin factors.
#[derive(Clone, Debug)]
pub struct SpinDescriptor {
    pub k: usize,
    /// When set, products are computed through the matrices and read back.
    pub represented: bool,
    pub generators: Vec<CMatrix>,
}

impl SpinDescriptor {
    pub fn new(k: usize, represented: bool) -> Self {
        SpinDescriptor { k, represented, generators: pauli_generators(k) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators.first().map_or(1, |g| g.rows())
    }

    /// `λI + Σ aⱼ sⱼ` for coordinates `[λ, a₁, …, a_k]`.
    pub fn represent(&self, coords: &[C64]) -> CMatrix {
        let m = self.ambient_dim();
        let mut out = CMatrix::identity(m).scale(coords[0]);
        for (g, &a) in self.generators.iter().zip(&coords[1..]) {
            if a != ZERO {
                out = &out + &g.scale(a);
            }
        }
        out
    }

    /// Hilbert–Schmidt coordinates of `m` against `I, s₁, …, s_k`.
    pub fn coordinates_of(&self, m: &CMatrix) -> Vec<C64> {
        let scale = 1.0 / self.ambient_dim() as f64;
        let mut out = Vec::with_capacity(self.k + 1);
        out.push(m.trace() * scale);
        for g in &self.generators {
            // generators are Hermitian, so tr(g m) is the HS pairing
            out.push(g.hs_inner(m) * scale);
        }
        out
    }

    /// `(λ + a)∘(μ + b) = μa + λb + (⟨a, b⟩ + λμ)1` with the bilinear pairing.
    pub fn rule_product(x: &[C64], y: &[C64]) -> Vec<C64> {
        let mut out = Vec::with_capacity(x.len());
        let bilinear: C64 = x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum();
        out.push(bilinear + x[0] * y[0]);
        for (a, b) in x[1..].iter().zip(&y[1..]) {
            out.push(y[0] * a + x[0] * b);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densemat::matmul;

    #[test]
    fn three_generators_match_hand_construction() {
        let s = pauli_generators(3);
        let i2 = CMatrix::identity(2);
        assert_eq!(s[0], kron(&sigma1(), &i2));
        assert_eq!(s[1], kron(&sigma2(), &i2));
        assert_eq!(s[2], kron(&sigma3(), &sigma1()));
        assert_eq!(s[0], CMatrix::diag_real(&[1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn spin_relations_are_exact() {
        for k in 2..=8 {
            let s = pauli_generators(k);
            let id = CMatrix::identity(s[0].rows());
            let zero = CMatrix::zeros(id.rows(), id.cols());
            for i in 0..k {
                assert_eq!(matmul(&s[i], &s[i]).unwrap(), id, "k={k} s{i}²");
                assert_eq!(s[i].trace(), ZERO);
                for j in 0..i {
                    let anti = &matmul(&s[i], &s[j]).unwrap() + &matmul(&s[j], &s[i]).unwrap();
                    assert_eq!(anti, zero, "k={k} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn ambient_dimension_uses_ceiling() {
        assert_eq!(pauli_generators(3)[0].rows(), 4);
        assert_eq!(pauli_generators(4)[0].rows(), 4);
        assert_eq!(pauli_generators(5)[0].rows(), 8);
        assert_eq!(pauli_generators(2)[0].rows(), 2);
    }

    #[test]
    fn rule_product_examples() {
        let e1 = [ZERO, ONE, ZERO];
        let e2 = [ZERO, ZERO, ONE];
        assert_eq!(SpinDescriptor::rule_product(&e1, &e2), vec![ZERO; 3]);
        assert_eq!(SpinDescriptor::rule_product(&e1, &e1), vec![ONE, ZERO, ZERO]);
        let a = [ONE, ONE, ZERO];
        let b = [ONE, -ONE, ZERO];
        assert_eq!(SpinDescriptor::rule_product(&a, &b), vec![ZERO; 3]);
    }

    #[test]
    fn coordinates_invert_representation() {
        let d = SpinDescriptor::new(4, true);
        let c = vec![C64::new(0.5, 0.1), C64::new(-1.0, 0.0), C64::new(0.0, 2.0), ONE, C64::new(0.3, -0.3)];
        let back = d.coordinates_of(&d.represent(&c));
        for (a, b) in c.iter().zip(&back) {
            assert!((a - b).norm() < 1e-15);
        }
    }
}
