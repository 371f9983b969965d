//! Builds the three Clifford systems, checks their relations and runs the
//! composition scan behind the 375 > 256 count.

use cliffverify::clifford::{
    build_c9_system, build_pauli_system, build_spin9_system, composition, orthogonality_scan,
    unitary_obstruction_check, verify_clifford_relations,
};

fn main() -> cliffverify::Result<()> {
    for s in [build_spin9_system(), build_c9_system(), build_pauli_system()] {
        let r = verify_clifford_relations(&s);
        println!("{:>6}: {} members of size {}, {} checks, pass = {}", r.label, r.members, r.dim, r.checks, r.pass);
    }

    let c9 = build_c9_system();
    for ix in [vec![0, 1], vec![0, 1, 2], vec![0, 1, 2, 3], vec![0, 1, 2, 3, 4]] {
        let (_, class) = composition(&c9, &ix)?;
        println!("P{:?} is {:?}", ix, class.kind);
    }

    let scan = orthogonality_scan(&c9, &[2, 3, 6])?;
    println!(
        "compositions of 2, 3, 6 members: {:?} -> {} total, all complex structures = {}, orthogonal = {}, rank = {}",
        scan.counts, scan.total, scan.all_complex_structures, scan.pairwise_orthogonal, scan.rank
    );
    let spin9 = orthogonality_scan(&build_spin9_system(), &[2])?;
    println!("spin9 pairs: {} structures, rank {}", spin9.total, spin9.rank);

    let ob = unitary_obstruction_check();
    println!("{} independent complex structures vs {} = dim u(16): obstruction holds = {}", ob.total, ob.bound, ob.obstruction_holds);
    Ok(())
}
