//! P = (Id + α)/2 for the transpose α on M₃, checked against the conditional
//! expectation onto the real symmetric matrices.

use jordanlp::algebras::{fixed_point_subalgebra, matrix_jordan, AmbientMap};
use jordanlp::expect::{canonical_projection, conditional_expectation, verify_expectation};
use jordanlp::{Result, StateFunctional};

fn main() -> Result<()> {
    let alg = matrix_jordan(3)?;
    let alpha = AmbientMap::transpose();
    let p = canonical_projection(&alg, &alpha)?;
    let fixed = fixed_point_subalgebra(&alg, &alpha)?;
    println!("fixed points of {}: dimension {}", alpha.name(), fixed.len());

    let tau = StateFunctional::canonical_trace(&alg)?;
    let e = conditional_expectation(&alg, &fixed, &tau)?;
    println!("‖P − E‖_max = {:.2e}", (p.matrix() - e.matrix()).max_abs());

    let report = verify_expectation(&p, 500, 2)?;
    println!("all projection checks pass: {}", report.passed());

    // the identity is an automorphism, not an antiautomorphism, of M₃
    match canonical_projection(&alg, &AmbientMap::identity()) {
        Ok(_) => println!("identity unexpectedly accepted"),
        Err(err) => println!("identity rejected: {err}"),
    }
    Ok(())
}
