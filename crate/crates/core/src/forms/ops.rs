use rustc_hash::FxHashMap;

use crate::algebra::{ExactMatrix, GaussianRational};
use crate::error::{Error, Result};
use crate::forms::blade::{transport_sign, Blade};
use crate::forms::form::SparseForm;

/// `ψ = Σ_{a<b} J_ab dx_a ∧ dx_b` for a real skew `J`, i.e. `ψ(X, Y) = g(X, JY)`.
pub fn kahler_form_of(j: &ExactMatrix) -> Result<SparseForm> {
    if !j.is_real() {
        return Err(Error::WrongRealm { expected: "real".into(), found: j.realm().to_string() });
    }
    if j.dim() > 32 {
        return Err(Error::InvalidArgument(format!("dimension {} exceeds 32", j.dim())));
    }
    if !j.is_skew() {
        return Err(Error::NotSkew);
    }
    let mut f = SparseForm::zero(2);
    for a in 0..j.dim() {
        for b in a + 1..j.dim() {
            let c = j.get(a, b);
            if !c.is_zero() {
                f.add_term(Blade((1 << a) | (1 << b)), c.clone());
            }
        }
    }
    Ok(f)
}

/// The derivation extending `A · dx_b = −Σ_a A_ba dx_a` to all degrees.
/// `A` acts on the first `dim A` covectors.
pub fn lie_derivation(a: &ExactMatrix, f: &SparseForm) -> Result<SparseForm> {
    if !a.is_real() {
        return Err(Error::WrongRealm { expected: "real".into(), found: a.realm().to_string() });
    }
    let n = a.dim();
    if n > 32 {
        return Err(Error::InvalidArgument(format!("dimension {n} exceeds 32")));
    }
    if let (Some(ai), Some((terms, den))) = (a.to_i64_real(), f.to_scaled_integers()) {
        if let Some(out) = lie_derivation_int(&ai, n, &terms) {
            return SparseForm::from_scaled_integers(f.degree(), out, &den);
        }
    }
    let images: Vec<Vec<(u32, GaussianRational)>> = (0..n)
        .map(|b| (0..n).filter(|&c| !a.get(b, c).is_zero()).map(|c| (c as u32, -a.get(b, c))).collect())
        .collect();
    let mut out = SparseForm::zero(f.degree());
    for (blade, coeff) in f.iter() {
        for b in blade.indices().into_iter().filter(|&b| b < n) {
            for (to, c) in &images[b] {
                if let Some((sign, nb)) = move_covector(blade.0, b as u32, *to) {
                    let v = coeff * c;
                    out.add_term(nb, if sign > 0 { v } else { -v });
                }
            }
        }
    }
    Ok(out)
}

fn move_covector(mask: u32, from: u32, to: u32) -> Option<(i8, Blade)> {
    if from == to {
        return Some((1, Blade(mask)));
    }
    if mask & (1 << to) != 0 {
        return None;
    }
    Some((transport_sign(mask, from, to), Blade((mask & !(1 << from)) | (1 << to))))
}

fn lie_derivation_int(a: &[i64], n: usize, terms: &[(u32, i64)]) -> Option<Vec<(u32, i64)>> {
    let images: Vec<Vec<(u32, i64)>> =
        (0..n).map(|b| (0..n).filter(|&c| a[b * n + c] != 0).map(|c| (c as u32, -a[b * n + c])).collect()).collect();
    let mut acc: FxHashMap<u32, i64> = FxHashMap::default();
    for &(mask, coeff) in terms {
        let mut rest = mask;
        while rest != 0 {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            if b as usize >= n {
                break;
            }
            for &(to, c) in &images[b as usize] {
                if let Some((sign, nb)) = move_covector(mask, b, to) {
                    let v = coeff.checked_mul(c)?.checked_mul(sign as i64)?;
                    let e = acc.entry(nb.0).or_insert(0);
                    *e = e.checked_add(v)?;
                }
            }
        }
    }
    let mut v: Vec<(u32, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    v.sort_unstable();
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, Realm};
    use proptest::prelude::*;

    #[test]
    fn diagonal_scaling() {
        let a = ExactMatrix::from_fn(32, Realm::Real32, |r, c| GaussianRational::from_int((r == 0 && c == 0) as i64)).unwrap();
        let f = SparseForm::monomial(&[0, 1], GaussianRational::ONE).unwrap();
        assert_eq!(lie_derivation(&a, &f).unwrap(), f.neg());
    }

    #[test]
    fn kahler_rejects_bad_input() {
        let sym = ExactMatrix::identity(16);
        assert!(matches!(kahler_form_of(&sym), Err(Error::NotSkew)));
        let c = ExactMatrix::identity(16).scale(&GaussianRational::I);
        assert!(matches!(kahler_form_of(&c), Err(Error::WrongRealm { .. })));
    }

    #[test]
    fn kahler_of_rotation_generator() {
        let j = ExactMatrix::from_ints(4, |r, c| match (r, c) {
            (0, 1) => -1,
            (1, 0) => 1,
            _ => 0,
        });
        assert_eq!(kahler_form_of(&j).unwrap(), SparseForm::monomial(&[0, 1], GaussianRational::from_int(-1)).unwrap());
        assert!(lie_derivation(&j, &kahler_form_of(&j).unwrap()).unwrap().is_zero());
    }

    fn arb_int_matrix() -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec(-2i64..3, 36).prop_map(|v| ExactMatrix::from_ints(6, |r, c| v[r * 6 + c]))
    }

    fn arb_form6(deg: usize) -> impl Strategy<Value = SparseForm> {
        proptest::collection::vec((proptest::sample::subsequence((0..6).collect::<Vec<usize>>(), deg), -3i64..4, 1i64..3), 0..4)
            .prop_map(move |terms| {
                let mut f = SparseForm::zero(deg);
                for (ix, c, d) in terms {
                    f.add_term(Blade::from_indices(&ix).unwrap(), GaussianRational::real(Rational::new(c, d)));
                }
                f
            })
    }

    proptest! {
        #[test]
        fn leibniz(a in arb_int_matrix(), f in arb_form6(2), g in arb_form6(1)) {
            let lhs = lie_derivation(&a, &f.wedge(&g).unwrap()).unwrap();
            let rhs = lie_derivation(&a, &f).unwrap().wedge(&g).unwrap()
                .add(&f.wedge(&lie_derivation(&a, &g).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn integer_and_generic_paths_agree(a in arb_int_matrix(), f in arb_form6(3)) {
            let fast = lie_derivation(&a, &f).unwrap();
            // Adding and removing an imaginary term forces the exact path.
            let slow = lie_derivation(&a, &f.add(&SparseForm::monomial(&[0, 1, 2], GaussianRational::I).unwrap()).unwrap()).unwrap()
                .sub(&lie_derivation(&a, &SparseForm::monomial(&[0, 1, 2], GaussianRational::I).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(fast, slow);
        }
    }
}
