//! Individual table lines checked literally through the public API.

use cliffverify::algebra::{GaussianRational, Rational};
use cliffverify::forms::standard::{omega, psi_c, psi_d};
use cliffverify::forms::{Blade, ComplexBladeView, SparseForm};

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(Rational::from_integer(re), Rational::from_integer(im))
}

fn real_terms(f: &SparseForm) -> Vec<(Vec<usize>, i64)> {
    f.terms_sorted()
        .into_iter()
        .map(|(b, c)| (b.indices(), c.re.to_i64().expect("integer coefficient")))
        .collect()
}

/// Doubled coefficients of the `dz_a ∧ dz̄_b` terms, sorted by `(a, b)`.
fn doubled_11(f: &SparseForm) -> Vec<(usize, usize, GaussianRational)> {
    let view = ComplexBladeView::from_real(f);
    let mut out = Vec::new();
    for a in 0..16 {
        for b in 0..16 {
            let c = view.coefficient(&[a], &[b]);
            if !c.is_zero() {
                out.push((a, b, &c + &c));
            }
        }
    }
    out
}

#[test]
fn psi24_on_r16() {
    let want = vec![
        (vec![0, 2], 1),
        (vec![1, 3], 1),
        (vec![4, 6], 1),
        (vec![5, 7], 1),
        (vec![8, 10], 1),
        (vec![9, 11], 1),
        (vec![12, 14], 1),
        (vec![13, 15], 1),
    ];
    assert_eq!(real_terms(psi_c().get(1, 3)), want);
}

#[test]
fn psi19_is_minus_the_diagonal_pairing() {
    let want: Vec<(Vec<usize>, i64)> = (0..8).map(|a| (vec![a, a + 8], -1)).collect();
    assert_eq!(real_terms(psi_c().get(0, 8)), want);
}

#[test]
fn doubled_psi12_complex_line() {
    let signs = [(0, 1, -1), (2, 3, 1), (4, 5, 1), (6, 7, -1), (8, 9, 1), (10, 11, -1), (12, 13, -1), (14, 15, 1)];
    let mut want = Vec::new();
    for (a, b, s) in signs {
        want.push((a, b, g(s, 0)));
        want.push((b, a, g(-s, 0)));
    }
    want.sort_by_key(|t| (t.0, t.1));
    assert_eq!(doubled_11(psi_d().get(1, 2)), want);
}

#[test]
fn doubled_psi01_mixes_primed_and_unprimed() {
    let mut want: Vec<_> = (0..8).flat_map(|a| [(a, a + 8, g(0, 1)), (a + 8, a, g(0, 1))]).collect();
    want.sort_by_key(|t| (t.0, t.1));
    assert_eq!(doubled_11(psi_d().get(0, 1)), want);
}

#[test]
fn doubled_psi09_and_omega() {
    let want: Vec<_> = (0..16).map(|a| (a, a, g(0, if a < 8 { 1 } else { -1 }))).collect();
    assert_eq!(doubled_11(psi_d().get(0, 9)), want);
    let w: Vec<_> = (0..16).map(|a| (a, a, g(0, 1))).collect();
    assert_eq!(doubled_11(omega()), w);
}

#[test]
fn blade_indices_helper_is_consistent() {
    let b = Blade::from_indices(&[3, 1, 7]).unwrap();
    assert_eq!(b.indices(), vec![1, 3, 7]);
}
