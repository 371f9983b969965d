//! Prints the octonion multiplication table and a few products.

use cliffverify::octonion::{oct_mul, right_mult_composition, right_mult_matrix, MulTable, Octonion, BASIS_NAMES};

fn main() {
    let t = MulTable::standard();
    println!("     {}", BASIS_NAMES.map(|n| format!("{n:>3}")).join(""));
    for (x, row) in t.render().iter().enumerate() {
        println!("{:>3}  {}", BASIS_NAMES[x], row.iter().map(|s| format!("{s:>3}")).collect::<String>());
    }

    let x = Octonion::from_ints([0, 1, 0, 0, 1, 0, 0, 0]);
    println!("\n(i+e)(i+e)* = {}", oct_mul(&x, &x.conj()));

    let a = Octonion::from_ints([1, 2, 0, -1, 0, 3, 0, 1]);
    let b = Octonion::from_ints([0, -1, 1, 0, 2, 0, -2, 1]);
    println!("|ab|^2 = {}, |a|^2 |b|^2 = {}", oct_mul(&a, &b).norm(), &a.norm() * &b.norm());

    let ri = right_mult_matrix(&Octonion::basis(1));
    println!("R_i squared is -Id: {}", ri.mul(&ri).unwrap().is_neg_identity());
    let rij = right_mult_composition(&Octonion::basis(1), &Octonion::basis(2));
    println!("R_ij =\n{rij}");
}
