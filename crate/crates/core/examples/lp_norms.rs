//! Functional-calculus Lᵖ norms on M₃: monotonicity in p, duality, and a
//! non-tracial state for comparison.

use jordanlp::harness::{generate_element, Distribution, StateSpec};
use jordanlp::lp::{dual_norm_estimate, lp_norm};
use jordanlp::{Result, StateFunctional};

fn main() -> Result<()> {
    let alg = jordanlp::algebras::matrix_jordan(3)?;
    let tau = StateFunctional::canonical_trace(&alg)?;
    let x = generate_element(&alg, Distribution::Selfadjoint, 11, 0)?;

    println!("{:>6} {:>14} {:>14}", "p", "‖x‖_p", "dual estimate");
    for p in [1.0, 1.5, 2.0, 3.0, 6.0, f64::INFINITY] {
        let norm = lp_norm(&x, &tau, p)?.value;
        let dual = dual_norm_estimate(&x, &tau, p, 0, 0)?;
        println!("{p:>6} {norm:>14.10} {:>14.10}  ({})", dual.value.value, dual.attained_by);
    }

    let phi = StateSpec::parse("ambient_diag:0.6,0.3,0.1")?.build(&alg)?;
    println!("non-tracial φ (tracial: {}):", phi.is_tracial());
    for p in [1.0, 2.0, 4.0] {
        let v = lp_norm(&x, &phi, p)?;
        println!("  ‖x‖_{p} = {:.10} (exploratory: {})", v.value, v.exploratory);
    }
    Ok(())
}
