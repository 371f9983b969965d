//! The concrete forms on C¹⁶ = R³²: Kähler matrices of the spin(9) and
//! spin(10) generators, the Kähler form of 𝔍 and the canonical 8-forms.
//!
//! Real covectors 0..7 are the unprimed coordinates 1..8, 8..15 the primed
//! ones, and 16..31 their 𝔍-partners in the same order.

use std::sync::OnceLock;

use crate::algebra::ExactMatrix;
use crate::clifford::{jfrak, spin9_pair};
use crate::error::{Error, Result};
use crate::forms::form::{FormMatrix, SparseForm};
use crate::forms::ops::kahler_form_of;
use crate::forms::tau::{divide_exact, tau4};
use crate::lie::{build_jd, j0};

/// Real covectors of the primed coordinates and their partners.
pub const PRIMED_MASK: u32 = 0xFF00_FF00;
/// Real covectors of the unprimed coordinates and their partners.
pub const UNPRIMED_MASK: u32 = 0x00FF_00FF;
/// Killing the primed block models the quadric slice `z′ = 0`.
pub const Q8_KILL: u32 = PRIMED_MASK;

/// Normalizing constant between τ₄(ψ^C) and Φ on R¹⁶.
pub const PHI9_DIVISOR: i64 = 360;

/// Complex generator `J_αβ` of spin(10), `0 ≤ α < β ≤ 9`, as a real 32×32 matrix.
pub fn jd_real(alpha: usize, beta: usize) -> Result<ExactMatrix> {
    if alpha >= beta || beta > 9 {
        return Err(Error::InvalidIndices(format!("({alpha},{beta})")));
    }
    let m = if alpha == 0 { j0(beta)? } else { spin9_pair(alpha, beta)?.with_realm(crate::algebra::Realm::Complex16)? };
    m.realify()
}

/// `ψ_αβ` on R³² for `0 ≤ α < β ≤ 9`.
pub fn psi(alpha: usize, beta: usize) -> Result<SparseForm> {
    kahler_form_of(&jd_real(alpha, beta)?)
}

/// `ψ^C`: the 9×9 matrix of Kähler forms of `J_αβ` on R¹⁶ (row `k` is label `k + 1`).
pub fn psi_c() -> &'static FormMatrix {
    static CELL: OnceLock<FormMatrix> = OnceLock::new();
    CELL.get_or_init(|| {
        FormMatrix::from_upper(9, |a, b| kahler_form_of(&spin9_pair(a + 1, b + 1)?)).expect("spin(9) generators are skew")
    })
}

/// `ψ^D`: the 10×10 matrix of Kähler forms of the realified `J_αβ` on R³².
pub fn psi_d() -> &'static FormMatrix {
    static CELL: OnceLock<FormMatrix> = OnceLock::new();
    CELL.get_or_init(|| FormMatrix::from_upper(10, psi).expect("spin(10) generators are skew"))
}

/// Kähler form of 𝔍.
pub fn omega() -> &'static SparseForm {
    static CELL: OnceLock<SparseForm> = OnceLock::new();
    CELL.get_or_init(|| kahler_form_of(&jfrak()).expect("𝔍 is skew"))
}

/// The 45 realified spin(10) generators in lexicographic label order.
pub fn jd_realified() -> Result<Vec<(Vec<usize>, ExactMatrix)>> {
    build_jd().elements.into_iter().map(|(ix, m)| Ok((ix, m.realify()?))).collect()
}

/// `Φ₉ = τ₄(ψ^C) / 360` on R¹⁶; errors if the division is not exact.
pub fn phi_spin9() -> Result<SparseForm> {
    let t = tau4(psi_c());
    divide_exact(&t, PHI9_DIVISOR)
        .ok_or_else(|| Error::InvalidArgument(format!("τ₄(ψ^C) is not divisible by {PHI9_DIVISOR}")))
}

/// `Φ₁₀ = τ₄(ψ^D)`, computed once per process.
pub fn phi_spin10() -> &'static SparseForm {
    static CELL: OnceLock<SparseForm> = OnceLock::new();
    CELL.get_or_init(|| tau4(psi_d()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GaussianRational, Rational};
    use crate::forms::complex::ComplexBladeView;
    use crate::forms::ops::lie_derivation;
    use crate::forms::tau::tau2;

    fn short(pairs: &[(i64, usize, usize)]) -> SparseForm {
        let mut f = SparseForm::zero(2);
        for &(c, a, b) in pairs {
            f.add_assign(&SparseForm::monomial(&[a, b], GaussianRational::from_int(c)).unwrap()).unwrap();
        }
        f
    }

    #[test]
    fn psi12_and_psi19_tables() {
        // (−12+34+56−78) − (same on primed), with coordinate k at index k − 1.
        let base = [(-1, 0, 1), (1, 2, 3), (1, 4, 5), (-1, 6, 7)];
        let mut terms: Vec<(i64, usize, usize)> = base.to_vec();
        terms.extend(base.iter().map(|&(c, a, b)| (-c, a + 8, b + 8)));
        assert_eq!(kahler_form_of(&spin9_pair(1, 2).unwrap()).unwrap(), short(&terms));
        let diag: Vec<(i64, usize, usize)> = (0..8).map(|a| (-1, a, a + 8)).collect();
        assert_eq!(kahler_form_of(&spin9_pair(1, 9).unwrap()).unwrap(), short(&diag));
    }

    #[test]
    fn omega_shape() {
        let v = ComplexBladeView::from_real(omega());
        assert_eq!(omega().nnz(), 16);
        assert!(v.is_pure(1, 1));
        assert_eq!(v.coefficient(&[5], &[5]), GaussianRational::imag(Rational::new(1, 2)));
        assert!(lie_derivation(&jfrak(), omega()).unwrap().is_zero());
    }

    #[test]
    fn psi09_complex_view() {
        let v = ComplexBladeView::from_real(&psi(0, 9).unwrap());
        for a in 0..16 {
            let s = if a < 8 { 1 } else { -1 };
            assert_eq!(v.coefficient(&[a], &[a]), GaussianRational::imag(Rational::new(s, 2)));
        }
        assert_eq!(v.nnz(), 16);
    }

    #[test]
    fn every_psi_is_type_11() {
        for a in 0..10 {
            for b in a + 1..10 {
                let f = psi(a, b).unwrap();
                assert_eq!(f.nnz(), 16);
                assert!(ComplexBladeView::from_real(&f).is_pure(1, 1), "ψ{a}{b}");
            }
        }
    }

    #[test]
    fn tau2_values() {
        assert!(tau2(psi_c()).is_zero());
        let w2 = omega().wedge(omega()).unwrap();
        assert_eq!(tau2(psi_d()), w2.scale(&GaussianRational::from_int(-3)));
    }

    #[test]
    fn q8_restriction_of_psi0() {
        for b in 1..=8 {
            assert!(psi(0, b).unwrap().restrict(Q8_KILL).is_zero());
        }
        assert_eq!(psi(0, 9).unwrap().restrict(Q8_KILL), omega().restrict(Q8_KILL));
    }

    #[test]
    fn phi9_is_invariant() {
        let phi = phi_spin9().unwrap();
        assert_eq!(phi.degree(), 8);
        assert!(!phi.is_zero());
        for a in 1..=9 {
            for b in a + 1..=9 {
                assert!(lie_derivation(&spin9_pair(a, b).unwrap(), &phi).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn tau2_conjugation_equivariant() {
        let perm = [3, 0, 9, 1, 5, 2, 8, 4, 6, 7];
        let sign = [1, -1, 1, 1, -1, -1, 1, 1, -1, 1];
        let q = psi_d().conjugate_signed_permutation(&perm, &sign).unwrap();
        assert_eq!(tau2(&q), tau2(psi_d()));
    }
}
