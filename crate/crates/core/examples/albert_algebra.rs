//! The exceptional Jordan algebra H₃(𝕆): cubic invariants, spectral decomposition and Lᵖ norms.

use jordanlp::algebras::albert;
use jordanlp::algebras::albert::cubic_invariants;
use jordanlp::calculus::spectral_decompose;
use jordanlp::harness::{generate_element, Distribution};
use jordanlp::lp::lp_norm;
use jordanlp::{Result, StateFunctional};

fn main() -> Result<()> {
    let alg = albert();
    let tau = StateFunctional::canonical_trace(&alg)?;
    let x = generate_element(&alg, Distribution::Selfadjoint, 3, 0)?;
    let real: Vec<f64> = x.coords().iter().map(|z| z.re).collect();
    let (t, s, n) = cubic_invariants(&real);
    println!("T = {t:.6}, S = {s:.6}, N = {n:.6}");

    let d = spectral_decompose(&x)?;
    println!("eigenvalues {:?}", d.eigenvalues);
    let rebuilt = d.reconstruct();
    println!("reconstruction error {:.2e}", rebuilt.distance(&x));
    for (l, e) in d.eigenvalues.iter().zip(&d.idempotents) {
        println!("  λ = {l:+.6}: ‖e² − e‖ = {:.1e}, τ(e) = {:.6}", e.square().distance(e), tau.evaluate(e)?.re);
    }

    // Cayley–Hamilton: x³ − T x² + S x − N 1 = 0
    let x2 = x.square();
    let x3 = x.jordan(&x2)?;
    let ch = &(&(&x3 - &x2.scale_real(t)) + &x.scale_real(s)) - &alg.unit().scale_real(n);
    println!("Cayley–Hamilton residual {:.2e}", ch.coord_norm());

    for p in [1.0, 2.0, 3.0, f64::INFINITY] {
        println!("‖x‖_{p} = {:.10}", lp_norm(&x, &tau, p)?.value);
    }
    Ok(())
}
