//! Kähler forms of the spin(10) complex structures, in real and complex coordinates.

use cliffverify::forms::standard::{omega, psi_c, psi_d};
use cliffverify::forms::ComplexBladeView;

fn main() {
    println!("psi_12 on R^16 = {}", psi_c().get(0, 1));
    println!("psi_19 on R^16 = {}", psi_c().get(0, 8));
    println!("psi_12 on R^32 = {}", psi_d().get(1, 2));
    println!("  complex view: {}", ComplexBladeView::from_real(psi_d().get(1, 2)));
    println!("psi_09 complex view: {}", ComplexBladeView::from_real(psi_d().get(0, 9)));
    let w = ComplexBladeView::from_real(omega());
    println!("omega: {} terms, bidegrees {:?}", omega().nnz(), w.bidegrees());
    println!("  {w}");
}
