//! Jordan conditional expectations onto ℂ1, the diagonal of M₃ and the spin span in M₄.

use jordanlp::algebras::{matrix_jordan, pauli_spin_representation};
use jordanlp::expect::{
    diagonal_expectation, lp_contractivity_check, scalar_expectation, spin_span_expectation, verify_expectation,
};
use jordanlp::{Result, StateFunctional};

fn main() -> Result<()> {
    let operators = vec![
        scalar_expectation(&matrix_jordan(3)?)?,
        diagonal_expectation(3)?,
        spin_span_expectation(&pauli_spin_representation(3)?)?,
    ];
    for q in &operators {
        let report = verify_expectation(q, 200, 1)?;
        println!("{} (dim B = {}, digest {})", q.name(), q.sub_basis().len(), &q.digest()[..12]);
        for c in &report.checks {
            println!("  {:<22} max {:.2e}", c.name, c.max_violation);
        }
        let tau = StateFunctional::canonical_trace(q.domain())?;
        for p in [1.0, 2.0, 3.0] {
            let r = lp_contractivity_check(q, &tau, p, 500, 1)?;
            println!(
                "  L{p} contraction: {} violations, max ‖Qx‖ − ‖x‖ = {:.3e}",
                r.contraction.violations, r.contraction.max_violation
            );
        }
    }
    Ok(())
}
