//! spin(9) in so(16), spin(10) in su(16) and the algebra of pairs on R³²:
//! spans, closure, a bracket expressed in the basis, and the isomorphism check.

use cliffverify::algebra::{rank_of_family, solve_in_span, Rational, SpanSolution};
use cliffverify::lie::{
    bracket_closure_check, build_j_triples, build_jc, build_jd, build_p_basis, iso_check, so16_decomposition_check,
};

fn main() -> cliffverify::Result<()> {
    let jc = build_jc();
    println!("J^C: {} elements, rank {}", jc.len(), rank_of_family(&jc.matrices())?);
    println!("triples: rank {}", rank_of_family(&build_j_triples().matrices())?);
    let so16 = so16_decomposition_check()?;
    println!("pairs + triples: rank {} (so(16) has dimension 120)", so16.total_rank);

    let half = Rational::new(1, 2);
    let bracket = jc.get(&[8, 9]).unwrap().bracket(jc.get(&[7, 9]).unwrap())?.scale_rational(&half);
    match solve_in_span(&bracket, &jc.matrices())? {
        SpanSolution::InSpan(coeffs) => {
            let nonzero: Vec<_> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{c} J_{:?}", jc.elements[k].0))
                .collect();
            println!("[J_89, J_79]/2 = {}", nonzero.join(" + "));
        }
        SpanSolution::NotInSpan => println!("[J_89, J_79]/2 is outside the span"),
    }

    for b in [build_jd(), build_p_basis()] {
        let r = bracket_closure_check(&b)?;
        println!("{}: {} elements, rank {}, closed = {}", r.label, r.count, r.rank, r.closed);
    }
    let iso = iso_check()?;
    println!(
        "P_ab <-> J_ab correspondence: constants equal = {}, Jacobi on {} triples = {}",
        iso.constants_equal, iso.jacobi_triples, iso.jacobi_holds
    );
    Ok(())
}
