//! The degree-8 invariants: τ₄(ψ^C)/360 on R¹⁶ and τ₄(ψ^D) on R³².

use std::time::Instant;

use cliffverify::forms::standard::{psi_c, psi_d};
use cliffverify::forms::{integer_content, tau4_minor_oracle, tau4_with_stats};

fn main() {
    let (t9, s9) = tau4_with_stats(psi_c());
    println!("tau4(psi^C): {} terms, coefficient gcd {:?}", t9.nnz(), integer_content(&t9).map(|g| g.to_string()));
    println!("  kernel {:?}, {} quadruples", s9.path, s9.quadruples);

    let start = Instant::now();
    let (t10, s10) = tau4_with_stats(psi_d());
    println!(
        "tau4(psi^D): {} terms in {} ms (largest Pfaffian {} terms), sha256 {}",
        t10.nnz(),
        start.elapsed().as_millis(),
        s10.max_pfaffian_terms,
        t10.sha256_hex()
    );
    let start = Instant::now();
    let oracle = tau4_minor_oracle(psi_d());
    println!("minor-determinant oracle agrees: {} ({} ms)", oracle == t10, start.elapsed().as_millis());
}
