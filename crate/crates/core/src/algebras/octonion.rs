//! Real octonions by Cayley–Dickson doubling of the Hamilton quaternions.
//!
//! Coordinates are over `1, i₁, …, i₇`; the pair `(a, b)` of quaternions is
//! stored as `[a₀, a₁, a₂, a₃, b₀, b₁, b₂, b₃]` and multiplies as
//! `(a, b)(c, d) = (ac − d̄b, da + bc̄)`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Octonion(pub [f64; 8]);

type Quat = [f64; 4];

fn qmul(a: Quat, b: Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qconj(a: Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

fn qadd(a: Quat, b: Quat) -> Quat {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn qsub(a: Quat, b: Quat) -> Quat {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

impl Octonion {
    pub const ZERO: Octonion = Octonion([0.0; 8]);
    pub const ONE: Octonion = Octonion([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    /// The `i`-th basis unit (`0` is the real unit).
    pub fn unit(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Octonion(c)
    }

    pub fn real(r: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = r;
        Octonion(c)
    }

    fn halves(&self) -> (Quat, Quat) {
        let c = &self.0;
        ([c[0], c[1], c[2], c[3]], [c[4], c[5], c[6], c[7]])
    }

    fn from_halves(a: Quat, b: Quat) -> Self {
        Octonion([a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3]])
    }

    pub fn conj(&self) -> Self {
        let mut c = self.0;
        for v in c.iter_mut().skip(1) {
            *v = -*v;
        }
        Octonion(c)
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Octonion(self.0.map(|v| v * s))
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        let (a, b) = self.halves();
        let (c, d) = rhs.halves();
        let left = qsub(qmul(a, c), qmul(qconj(d), b));
        let right = qadd(qmul(d, a), qmul(b, qconj(c)));
        Octonion::from_halves(left, right)
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0) {
            *x += y;
        }
        Octonion(c)
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0) {
            *x -= y;
        }
        Octonion(c)
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn oct() -> impl Strategy<Value = Octonion> {
        proptest::array::uniform8(-2.0f64..2.0).prop_map(Octonion)
    }

    fn close(a: Octonion, b: Octonion, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn units_square_to_minus_one() {
        for i in 1..8 {
            let e = Octonion::unit(i);
            assert_eq!(e * e, Octonion::real(-1.0));
        }
    }

    #[test]
    fn multiplication_is_not_associative() {
        let (a, b, c) = (Octonion::unit(1), Octonion::unit(2), Octonion::unit(4));
        assert!(!close((a * b) * c, a * (b * c), 1e-12));
    }

    #[test]
    fn conjugate_reverses_products() {
        let (a, b) = (Octonion::unit(3), Octonion::unit(5));
        assert_eq!((a * b).conj(), b.conj() * a.conj());
    }

    proptest! {
        #[test]
        fn composition(x in oct(), y in oct()) {
            let lhs = (x * y).norm();
            let rhs = x.norm() * y.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn alternative_laws(x in oct(), y in oct()) {
            prop_assert!(close(x * (x * y), (x * x) * y, 1e-12 * 64.0));
            prop_assert!(close((y * x) * x, y * (x * x), 1e-12 * 64.0));
        }

        #[test]
        fn moufang_identities(x in oct(), y in oct(), z in oct()) {
            prop_assert!(close(z * (x * (z * y)), ((z * x) * z) * y, 1e-12 * 1024.0));
            prop_assert!(close((z * x) * (y * z), (z * (x * y)) * z, 1e-12 * 1024.0));
        }
    }
}
