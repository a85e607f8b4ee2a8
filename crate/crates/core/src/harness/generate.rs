//! Seeded instance generation.

use serde::{Deserialize, Serialize};

use crate::calculus::spectral_decompose;
use crate::error::Result;
use crate::jordan::{JordanAlgebra, JordanElement};
use crate::sampling::{gaussian_coords, stream_id, stream_rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distribution {
    /// Complex Gaussian coordinates.
    Ball,
    /// `x + x*` from a ball sample.
    Selfadjoint,
    /// `x*∘x` from a ball sample.
    Positive,
    /// Sum of the spectral idempotents of a selfadjoint sample with positive eigenvalue.
    Idempotent,
}

impl Distribution {
    pub fn label(self) -> &'static str {
        match self {
            Distribution::Ball => "ball",
            Distribution::Selfadjoint => "selfadjoint",
            Distribution::Positive => "positive",
            Distribution::Idempotent => "idempotent",
        }
    }
}

/// Sample `index` of the stream selected by `seed` and the distribution.
pub fn generate_element(alg: &JordanAlgebra, dist: Distribution, seed: u64, index: u64) -> Result<JordanElement> {
    let mut rng = stream_rng(seed, stream_id(dist.label()), index);
    let x = alg.element(gaussian_coords(&mut rng, alg.dim()))?;
    match dist {
        Distribution::Ball => Ok(x),
        Distribution::Selfadjoint => Ok(&x + &x.star()),
        Distribution::Positive => x.star().jordan(&x),
        Distribution::Idempotent => {
            let d = spectral_decompose(&(&x + &x.star()))?;
            let mut e = alg.zero();
            for (&l, p) in d.eigenvalues.iter().zip(&d.idempotents) {
                if l > 0.0 {
                    e = &e + p;
                }
            }
            if e.coord_norm() == 0.0 {
                e = d.idempotents.last().expect("nonempty spectrum").clone();
            }
            Ok(e)
        }
    }
}
