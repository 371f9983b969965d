use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::forms::blade::Blade;

/// Homogeneous exterior form over 32 real covectors with exact coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct SparseForm {
    degree: usize,
    terms: FxHashMap<Blade, GaussianRational>,
}

/// One line of the JSON serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTerm {
    pub blade: Vec<usize>,
    pub re: String,
    pub im: String,
}

impl PartialEq for SparseForm {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.terms == other.terms
    }
}

impl Eq for SparseForm {}

impl SparseForm {
    pub fn zero(degree: usize) -> Self {
        SparseForm { degree, terms: FxHashMap::default() }
    }

    pub fn one() -> Self {
        Self::monomial(&[], GaussianRational::ONE).expect("empty blade")
    }

    pub fn monomial(indices: &[usize], coeff: GaussianRational) -> Result<Self> {
        let blade = Blade::from_indices(indices)
            .ok_or_else(|| Error::InvalidArgument(format!("bad covector list {indices:?}")))?;
        // An unsorted list picks up the sign of sorting it.
        let mut sign = 1i8;
        for i in 0..indices.len() {
            for j in i + 1..indices.len() {
                if indices[i] > indices[j] {
                    sign = -sign;
                }
            }
        }
        let mut f = Self::zero(indices.len());
        f.add_term(blade, if sign > 0 { coeff } else { -coeff });
        Ok(f)
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Blade, GaussianRational)>) -> Result<Self> {
        let mut f = Self::zero(degree);
        for (b, c) in terms {
            if b.degree() != degree {
                return Err(Error::InvalidArgument(format!("blade {b} has degree {} not {degree}", b.degree())));
            }
            f.add_term(b, c);
        }
        Ok(f)
    }

    /// Accumulate `c` onto `blade`, dropping the entry if it cancels.
    pub fn add_term(&mut self, blade: Blade, c: GaussianRational) {
        debug_assert_eq!(blade.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(blade) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blade: Blade) -> GaussianRational {
        self.terms.get(&blade).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Blade, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn terms_sorted(&self) -> Vec<(Blade, &GaussianRational)> {
        let mut v: Vec<(Blade, &GaussianRational)> = self.terms.iter().map(|(b, c)| (*b, c)).collect();
        // Lexicographic on the ascending index lists.
        v.sort_by_key(|(b, _)| std::cmp::Reverse(b.0.reverse_bits()));
        v
    }

    pub fn support_mask(&self) -> u32 {
        self.terms.keys().fold(0, |m, b| m | b.0)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::InvalidArgument(format!("degree {} vs {}", self.degree, other.degree)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_degree(other)?;
        for (b, c) in &other.terms {
            self.add_term(*b, c.clone());
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        SparseForm { degree: self.degree, terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect() }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.degree);
        }
        SparseForm { degree: self.degree, terms: self.terms.iter().map(|(b, c)| (*b, c * s)).collect() }
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        self.scale(&GaussianRational::real(s.clone()))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        let degree = self.degree + other.degree;
        if degree > 32 {
            return Err(Error::DegreeOverflow(degree));
        }
        let mut out = Self::zero(degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sign, blade)) = a.wedge(*b) {
                    let p = ca * cb;
                    out.add_term(blade, if sign > 0 { p } else { -p });
                }
            }
        }
        Ok(out)
    }

    /// `self ∧ self ∧ … ` (`k` factors; `k = 0` gives 1).
    pub fn wedge_power(&self, k: usize) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Drop every term whose blade meets the killed covectors.
    pub fn restrict(&self, killed: u32) -> Self {
        self.filter(|b| b.0 & killed == 0)
    }

    pub fn filter(&self, keep: impl Fn(Blade) -> bool) -> Self {
        SparseForm {
            degree: self.degree,
            terms: self.terms.iter().filter(|(b, _)| keep(**b)).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    /// Integer numerators over a common positive denominator, if everything is real
    /// and fits in `i64`.
    pub fn to_scaled_integers(&self) -> Option<(Vec<(u32, i64)>, BigInt)> {
        if !self.is_real() {
            return None;
        }
        let d = Rational::lcm_denominators(self.terms.values().map(|c| &c.re));
        let mut v = Vec::with_capacity(self.terms.len());
        for (b, c) in self.terms_sorted() {
            let n = c.re.numer() * (&d / c.re.denom());
            v.push((b.0, n.to_i64()?));
        }
        Some((v, d))
    }

    /// Real form from integer coefficients divided by `den`.
    pub fn from_scaled_integers(degree: usize, terms: impl IntoIterator<Item = (u32, i64)>, den: &BigInt) -> Result<Self> {
        let den_r = Rational::from_bigint(den.clone());
        let one = den.is_one();
        let mut f = Self::zero(degree);
        for (m, c) in terms {
            if c != 0 {
                let r = Rational::from_integer(c);
                let r = if one { r } else { r.checked_div(&den_r)? };
                f.terms.insert(Blade(m), GaussianRational::real(r));
            }
        }
        Ok(f)
    }

    pub fn to_jsonl_terms(&self) -> Vec<FormTerm> {
        self.terms_sorted()
            .into_iter()
            .map(|(b, c)| FormTerm { blade: b.indices(), re: c.re.to_string(), im: c.im.to_string() })
            .collect()
    }

    pub fn from_jsonl_terms(degree: usize, terms: &[FormTerm]) -> Result<Self> {
        let mut f = Self::zero(degree);
        for t in terms {
            let b = Blade::from_indices(&t.blade)
                .filter(|b| b.degree() == degree && t.blade.windows(2).all(|w| w[0] < w[1]))
                .ok_or_else(|| Error::Parse(format!("bad blade {:?}", t.blade)))?;
            f.add_term(b, GaussianRational::new(t.re.parse()?, t.im.parse()?));
        }
        Ok(f)
    }

    /// SHA-256 of the canonical serialization (degree, then sorted terms).
    pub fn sha256_hex(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("degree {}\n", self.degree));
        for (b, c) in self.terms_sorted() {
            h.update(format!("{:08x} {} {}\n", b.0, c.re, c.im));
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Smallest blade at which `self` and `other` differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(Blade, GaussianRational, GaussianRational)> {
        let mut blades: Vec<Blade> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        blades.sort_by_key(|b| std::cmp::Reverse(b.0.reverse_bits()));
        blades.dedup();
        blades.into_iter().find_map(|b| {
            let (x, y) = (self.coefficient(b), other.coefficient(b));
            (x != y).then_some((b, x, y))
        })
    }
}

impl fmt::Display for SparseForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms_sorted().iter().map(|(b, c)| format!("({c}){b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Skew-symmetric `n × n` array of 2-forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix {
    n: usize,
    entries: Vec<SparseForm>,
}

impl FormMatrix {
    /// Build from the strict upper triangle; `upper(α, β)` is called for `α < β`.
    pub fn from_upper(n: usize, mut upper: impl FnMut(usize, usize) -> Result<SparseForm>) -> Result<Self> {
        let mut entries = vec![SparseForm::zero(2); n * n];
        for a in 0..n {
            for b in a + 1..n {
                let f = upper(a, b)?;
                if f.degree() != 2 {
                    return Err(Error::InvalidArgument(format!("entry ({a},{b}) has degree {}", f.degree())));
                }
                entries[b * n + a] = f.neg();
                entries[a * n + b] = f;
            }
        }
        Ok(FormMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> &SparseForm {
        &self.entries[a * self.n + b]
    }

    pub fn is_skew(&self) -> bool {
        (0..self.n).all(|a| {
            self.get(a, a).is_zero() && (a + 1..self.n).all(|b| *self.get(b, a) == self.get(a, b).neg())
        })
    }

    /// Principal submatrix on the given rows/columns.
    pub fn principal(&self, idx: &[usize]) -> Result<FormMatrix> {
        if idx.iter().any(|&i| i >= self.n) {
            return Err(Error::InvalidIndices(format!("{idx:?} out of range for n = {}", self.n)));
        }
        FormMatrix::from_upper(idx.len(), |a, b| Ok(self.get(idx[a], idx[b]).clone()))
    }

    /// `Qᵀ M Q` for a signed permutation `Q e_k = sign[k] e_{perm[k]}`.
    pub fn conjugate_signed_permutation(&self, perm: &[usize], sign: &[i8]) -> Result<FormMatrix> {
        FormMatrix::from_upper(self.n, |a, b| {
            let f = self.get(perm[a], perm[b]);
            Ok(if sign[a] * sign[b] > 0 { f.clone() } else { f.neg() })
        })
    }

    pub fn restrict(&self, killed: u32) -> FormMatrix {
        FormMatrix { n: self.n, entries: self.entries.iter().map(|f| f.restrict(killed)).collect() }
    }

    /// Largest covector index used by any entry, plus one.
    pub fn ambient_dim(&self) -> usize {
        let m = self.entries.iter().fold(0u32, |m, f| m | f.support_mask());
        32 - m.leading_zeros() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn wedge_examples() {
        let a = SparseForm::monomial(&[0, 1], g(1)).unwrap();
        let b = SparseForm::monomial(&[0, 2], g(1)).unwrap();
        assert!(a.wedge(&b).unwrap().is_zero());
        let d1 = SparseForm::monomial(&[1], g(1)).unwrap();
        let d0 = SparseForm::monomial(&[0], g(1)).unwrap();
        assert_eq!(d1.wedge(&d0).unwrap(), a.neg());
        assert_eq!(SparseForm::monomial(&[1, 0], g(1)).unwrap(), a.neg());
    }

    #[test]
    fn degree_overflow() {
        let big = SparseForm::monomial(&(0..20).collect::<Vec<_>>(), g(1)).unwrap();
        assert!(matches!(big.wedge(&big), Err(Error::DegreeOverflow(40))));
    }

    #[test]
    fn restrict_everything_kills_positive_degree() {
        let f = SparseForm::monomial(&[3, 7], g(5)).unwrap();
        assert!(f.restrict(u32::MAX).is_zero());
        assert_eq!(SparseForm::one().restrict(u32::MAX), SparseForm::one());
    }

    #[test]
    fn jsonl_round_trip() {
        let f = SparseForm::monomial(&[2, 9], GaussianRational::new(Rational::new(-3, 4), Rational::new(1, 2)))
            .unwrap()
            .add(&SparseForm::monomial(&[0, 31], g(7)).unwrap())
            .unwrap();
        let t = f.to_jsonl_terms();
        assert_eq!(t[0].blade, vec![0, 31]);
        assert_eq!(SparseForm::from_jsonl_terms(2, &t).unwrap(), f);
        assert_eq!(f.sha256_hex().len(), 64);
    }

    #[test]
    fn scaled_integers() {
        let f = SparseForm::monomial(&[1, 2], GaussianRational::real(Rational::new(1, 2))).unwrap()
            .add(&SparseForm::monomial(&[1, 3], GaussianRational::real(Rational::new(-2, 3))).unwrap())
            .unwrap();
        let (v, d) = f.to_scaled_integers().unwrap();
        assert_eq!(d, BigInt::from(6));
        assert_eq!(v, vec![(0b0110, 3), (0b1010, -4)]);
        assert_eq!(SparseForm::from_scaled_integers(2, v, &d).unwrap(), f);
    }

    #[test]
    fn form_matrix_skew() {
        let m = FormMatrix::from_upper(3, |a, b| SparseForm::monomial(&[a, b + 3], g(1))).unwrap();
        assert!(m.is_skew());
        assert_eq!(m.get(2, 0), &m.get(0, 2).neg());
        assert_eq!(m.ambient_dim(), 6);
    }

    pub(crate) fn arb_form(max_deg: usize) -> impl Strategy<Value = SparseForm> {
        (0..=max_deg).prop_flat_map(|deg| {
            proptest::collection::vec((proptest::sample::subsequence((0..12).collect::<Vec<usize>>(), deg), -3i64..4), 0..5)
                .prop_map(move |terms| {
                    let mut f = SparseForm::zero(deg);
                    for (ix, c) in terms {
                        f.add_term(Blade::from_indices(&ix).unwrap(), GaussianRational::from_int(c));
                    }
                    f
                })
        })
    }

    proptest! {
        #[test]
        fn graded_commutative(f in arb_form(3), h in arb_form(3)) {
            let sign = if f.degree() * h.degree() % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(f.wedge(&h).unwrap(), h.wedge(&f).unwrap().scale(&g(sign)));
        }

        #[test]
        fn associative(a in arb_form(2), b in arb_form(2), c in arb_form(2)) {
            prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
        }

        #[test]
        fn restrict_commutes_with_wedge(f in arb_form(3), h in arb_form(3), killed in 0u32..(1 << 12)) {
            prop_assert_eq!(f.wedge(&h).unwrap().restrict(killed), f.restrict(killed).wedge(&h.restrict(killed)).unwrap());
        }
    }
}
