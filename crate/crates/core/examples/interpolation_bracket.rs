//! Certified brackets for the complex interpolation norm of one element,
//! compared with the normalized Schatten norm on M₂.

use jordanlp::harness::{generate_element, Distribution};
use jordanlp::interp::{bracket, CoupleSpec, InterpBudget};
use jordanlp::lp::ambient_schatten_norm;
use jordanlp::{Result, StateFunctional};

fn main() -> Result<()> {
    let alg = jordanlp::algebras::matrix_jordan(2)?;
    let tau = StateFunctional::canonical_trace(&alg)?;
    let x = generate_element(&alg, Distribution::Ball, 5, 0)?;
    let budget = InterpBudget::default();

    for p in [4.0 / 3.0, 2.0, 3.0, 4.0] {
        let spec = CoupleSpec::new(&tau, 1.0 / p)?;
        let b = bracket(&x, &spec, &budget)?;
        let schatten = ambient_schatten_norm(&x, p)?;
        println!(
            "p = {p:.3}: [{:.10}, {:.10}] ratio {:.6} via {:?}/{}; Schatten {schatten:.10}",
            b.lower,
            b.upper,
            b.ratio(),
            b.certificate.candidate_family,
            b.certificate.witness_name,
        );
    }
    Ok(())
}
