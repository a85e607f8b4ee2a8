//! The spin factor V₃: the abstract product rule, its Pauli representation in M₄,
//! and the Lᵖ norms of a selfadjoint element read off the two-point spectrum.

use jordanlp::algebras::pauli_spin_representation;
use jordanlp::calculus::spectral_decompose;
use jordanlp::lp::{ambient_schatten_norm, lp_norm};
use jordanlp::{Result, StateFunctional};

fn main() -> Result<()> {
    let rep = pauli_spin_representation(3)?;
    let spin = &rep.spin;
    println!("{spin} → {}", rep.ambient);

    // eᵢ∘eⱼ = δᵢⱼ 1
    let e = spin.basis();
    for i in 1..e.len() {
        let row: Vec<String> = (1..e.len()).map(|j| format!("{:+.0}", e[i].jordan(&e[j]).unwrap().coords()[0].re)).collect();
        println!("e{i}∘e· = {}", row.join(" "));
    }

    let x = spin.real_element(&[0.5, 1.0, -0.5, 2.0])?;
    let d = spectral_decompose(&x)?;
    println!("spectrum of x: {:?}", d.eigenvalues);

    let tau = StateFunctional::canonical_trace(spin)?;
    let image = rep.map(&x)?;
    for p in [1.0, 2.0, 4.0, f64::INFINITY] {
        println!(
            "p = {p:>3}: ‖x‖_p = {:.12}, normalized Schatten of π(x) = {:.12}",
            lp_norm(&x, &tau, p)?.value,
            ambient_schatten_norm(&image, p)?
        );
    }
    Ok(())
}
