//! τ₂ of the two matrices of Kähler forms, and the split of τ₂(ψ^D).

use cliffverify::algebra::GaussianRational;
use cliffverify::forms::standard::{omega, psi_c, psi_d};
use cliffverify::forms::{tau2, tau2_decomposition};

fn main() -> cliffverify::Result<()> {
    println!("tau2(psi^C) = 0: {}", tau2(psi_c()).is_zero());
    let td = tau2(psi_d());
    let w2 = omega().wedge(omega())?;
    println!("tau2(psi^D) + 3 omega^2 = 0: {}", td.add(&w2.scale(&GaussianRational::from_int(3)))?.is_zero());

    let d = tau2_decomposition(psi_d())?;
    for c in &d.checks {
        println!("  {} {}", if c.pass { "ok  " } else { "FAIL" }, c.name);
    }
    for c in &d.printed_claims {
        println!("  claim {}: holds = {} ({})", c.name, c.holds, c.note);
    }
    println!("term counts: {:?}", d.term_counts);
    Ok(())
}
