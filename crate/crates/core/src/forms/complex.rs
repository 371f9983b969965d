//! Forms on C¹⁶ in the `dz`/`dz̄` basis.
//!
//! Real covector `k < 16` is `dx_k`, real covector `16 + k` is `dy_k`, with
//! `dz_k = dx_k − i·dy_k`. A complex blade uses bit `a` for `dz_a` and bit
//! `16 + a` for `dz̄_a`, so the canonical order lists every `dz` before every `dz̄`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::forms::blade::{wedge_sign, Blade};
use crate::forms::form::SparseForm;

const HALF_MASK: u32 = 0xFFFF;

/// A single complex covector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cov {
    Dz(usize),
    DzBar(usize),
}

impl Cov {
    fn bit(self) -> Option<u32> {
        match self {
            Cov::Dz(a) if a < 16 => Some(a as u32),
            Cov::DzBar(a) if a < 16 => Some(16 + a as u32),
            _ => None,
        }
    }
}

/// One line of the complex-view serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexTerm {
    pub dz: Vec<usize>,
    pub dzbar: Vec<usize>,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBladeView {
    form: SparseForm,
}

type Image = Vec<(u32, GaussianRational)>;

fn half(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(Rational::new(re, 2), Rational::new(im, 2))
}

/// Images of the 32 basis covectors under a linear change of basis.
fn substitute(f: &SparseForm, images: &[Image]) -> SparseForm {
    let mut out = SparseForm::zero(f.degree());
    for (blade, c) in f.terms_sorted() {
        let mut acc: Vec<(u32, GaussianRational)> = vec![(0, c.clone())];
        for k in blade.indices() {
            let mut next = Vec::with_capacity(acc.len() * images[k].len());
            for (mask, coeff) in &acc {
                for (bit, ck) in &images[k] {
                    if mask & (1 << bit) != 0 {
                        continue;
                    }
                    let p = coeff * ck;
                    let p = if wedge_sign(*mask, 1 << bit) > 0 { p } else { -p };
                    next.push((mask | (1 << bit), p));
                }
            }
            acc = next;
        }
        for (m, c) in acc {
            out.add_term(Blade(m), c);
        }
    }
    out
}

impl ComplexBladeView {
    pub fn from_real(f: &SparseForm) -> Self {
        // dx = (dz + dz̄)/2, dy = i(dz − dz̄)/2.
        let images: Vec<Image> = (0..32u32)
            .map(|k| {
                if k < 16 {
                    vec![(k, half(1, 0)), (k + 16, half(1, 0))]
                } else {
                    vec![(k - 16, half(0, 1)), (k, half(0, -1))]
                }
            })
            .collect();
        ComplexBladeView { form: substitute(f, &images) }
    }

    pub fn to_real(&self) -> SparseForm {
        let i = GaussianRational::I;
        let images: Vec<Image> = (0..32u32)
            .map(|k| {
                if k < 16 {
                    vec![(k, GaussianRational::ONE), (k + 16, -&i)]
                } else {
                    vec![(k - 16, GaussianRational::ONE), (k, i.clone())]
                }
            })
            .collect();
        substitute(&self.form, &images)
    }

    /// Wraps a form already written over complex blades.
    pub fn from_complex_form(form: SparseForm) -> Self {
        ComplexBladeView { form }
    }

    /// `c · f₁ ∧ … ∧ f_k` for the covectors in the given order.
    pub fn monomial(factors: &[Cov], c: GaussianRational) -> Result<Self> {
        let bits = factors
            .iter()
            .map(|f| f.bit().map(|b| b as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidArgument(format!("bad covectors {factors:?}")))?;
        Ok(ComplexBladeView { form: SparseForm::monomial(&bits, c)? })
    }

    pub fn form(&self) -> &SparseForm {
        &self.form
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn nnz(&self) -> usize {
        self.form.nnz()
    }

    /// Coefficient of `dz_{a…} ∧ dz̄_{b…}` with both lists ascending.
    pub fn coefficient(&self, dz: &[usize], dzbar: &[usize]) -> GaussianRational {
        let mut factors: Vec<Cov> = dz.iter().map(|&a| Cov::Dz(a)).collect();
        factors.extend(dzbar.iter().map(|&b| Cov::DzBar(b)));
        self.coefficient_in_order(&factors)
    }

    /// Coefficient of the product of `factors` taken in the order given.
    pub fn coefficient_in_order(&self, factors: &[Cov]) -> GaussianRational {
        match Self::monomial(factors, GaussianRational::ONE) {
            Ok(m) if !m.form.is_zero() => {
                let (blade, sign) = m.form.iter().next().map(|(b, c)| (*b, c.clone())).expect("one term");
                // The monomial is `sign · canonical`, so the coefficient picks up the same sign.
                &self.form.coefficient(blade) * &sign
            }
            _ => GaussianRational::ZERO,
        }
    }

    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.form
            .iter()
            .map(|(b, _)| ((b.0 & HALF_MASK).count_ones() as usize, (b.0 >> 16).count_ones() as usize))
            .collect()
    }

    /// True for a nonzero form of pure type `(p, q)`.
    pub fn is_pure(&self, p: usize, q: usize) -> bool {
        let b = self.bidegrees();
        b.len() == 1 && b.contains(&(p, q))
    }

    pub fn filter(&self, keep: impl Fn(u32, u32) -> bool) -> Self {
        ComplexBladeView { form: self.form.filter(|b| keep(b.0 & HALF_MASK, b.0 >> 16)) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(ComplexBladeView { form: self.form.add(&other.form)? })
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        ComplexBladeView { form: self.form.scale(s) }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        Ok(ComplexBladeView { form: self.form.wedge(&other.form)? })
    }

    pub fn to_jsonl_terms(&self) -> Vec<ComplexTerm> {
        self.form
            .terms_sorted()
            .into_iter()
            .map(|(b, c)| ComplexTerm {
                dz: Blade(b.0 & HALF_MASK).indices(),
                dzbar: Blade(b.0 >> 16).indices(),
                re: c.re.to_string(),
                im: c.im.to_string(),
            })
            .collect()
    }

    pub fn from_jsonl_terms(degree: usize, terms: &[ComplexTerm]) -> Result<Self> {
        let mut f = SparseForm::zero(degree);
        for t in terms {
            let ascending = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&a| a < 16);
            if !ascending(&t.dz) || !ascending(&t.dzbar) || t.dz.len() + t.dzbar.len() != degree {
                return Err(Error::Parse(format!("bad complex blade {:?}/{:?}", t.dz, t.dzbar)));
            }
            let mask = t.dz.iter().fold(0u32, |m, &a| m | 1 << a) | t.dzbar.iter().fold(0u32, |m, &b| m | 1 << (16 + b));
            f.add_term(Blade(mask), GaussianRational::new(t.re.parse()?, t.im.parse()?));
        }
        Ok(ComplexBladeView { form: f })
    }
}

impl fmt::Display for ComplexBladeView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .to_jsonl_terms()
            .into_iter()
            .zip(self.form.terms_sorted())
            .map(|(t, (_, c))| {
                let dz: Vec<String> = t.dz.iter().map(|a| format!("dz{a}")).collect();
                let dzb: Vec<String> = t.dzbar.iter().map(|a| format!("dzbar{a}")).collect();
                format!("({c}){}", [dz, dzb].concat().join("^"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn omega_model(n: usize) -> SparseForm {
        // −Σ dx_a ∧ dy_a
        let mut f = SparseForm::zero(2);
        for a in 0..n {
            f.add_term(Blade((1 << a) | (1 << (16 + a))), GaussianRational::from_int(-1));
        }
        f
    }

    #[test]
    fn omega_is_half_i_dz_dzbar() {
        let v = ComplexBladeView::from_real(&omega_model(16));
        assert!(v.is_pure(1, 1));
        assert_eq!(v.nnz(), 16);
        for a in 0..16 {
            assert_eq!(v.coefficient(&[a], &[a]), GaussianRational::imag(Rational::new(1, 2)));
        }
        assert_eq!(v.to_real(), omega_model(16));
    }

    #[test]
    fn omega_squared_coefficient() {
        let v = ComplexBladeView::from_real(&omega_model(16));
        let sq = v.wedge(&v).unwrap();
        let paired = [Cov::Dz(0), Cov::DzBar(0), Cov::Dz(1), Cov::DzBar(1)];
        assert_eq!(sq.coefficient_in_order(&paired), GaussianRational::real(Rational::new(-1, 2)));
        assert_eq!(sq.coefficient(&[0, 1], &[0, 1]), GaussianRational::real(Rational::new(1, 2)));
    }

    #[test]
    fn real_covectors_are_mixed() {
        let dx = SparseForm::monomial(&[3], GaussianRational::ONE).unwrap();
        let v = ComplexBladeView::from_real(&dx);
        assert_eq!(v.bidegrees().len(), 2);
        assert!(!v.is_pure(1, 0));
    }

    #[test]
    fn jsonl_round_trip() {
        let v = ComplexBladeView::from_real(&omega_model(4));
        let t = v.to_jsonl_terms();
        assert_eq!(t[0], ComplexTerm { dz: vec![0], dzbar: vec![0], re: "0".into(), im: "1/2".into() });
        assert_eq!(ComplexBladeView::from_jsonl_terms(2, &t).unwrap(), v);
    }

    proptest! {
        #[test]
        fn round_trip_is_identity(terms in proptest::collection::vec((0usize..32, 0usize..32, -4i64..5, -4i64..5), 0..6)) {
            let mut f = SparseForm::zero(2);
            for (a, b, re, im) in terms {
                if a != b {
                    let m = SparseForm::monomial(&[a, b], GaussianRational::new(re.into(), im.into())).unwrap();
                    f.add_assign(&m).unwrap();
                }
            }
            prop_assert_eq!(ComplexBladeView::from_real(&f).to_real(), f);
        }
    }
}
