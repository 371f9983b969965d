//! Exact rank and span membership for families of matrices.
//!
//! Ranks are taken over Q(i). `rank_of_family` first reduces modulo the prime
//! `P = 998244353`, sending `i` to a square root of −1 in F_P. That map is a
//! ring homomorphism on the P-integral Gaussian rationals, so the modular
//! rank is a lower bound for the true rank; when it already equals the number
//! of members the answer is proven. Otherwise the family is re-ranked by
//! fraction-free (Bareiss) elimination over Z[i].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::algebra::{ExactMatrix, GaussianRational, Rational};
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices, no zero values.
pub type SparseVec = Vec<(usize, GaussianRational)>;

const P: u64 = 998_244_353;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// A square root of −1 modulo `P`, checked on every call.
fn sqrt_minus_one() -> u64 {
    let s = pow_mod(3, (P - 1) / 4);
    assert_eq!(s * s % P, P - 1, "3 is not a quadratic non-residue modulo P");
    s
}

fn rational_mod_p(r: &Rational) -> Option<u64> {
    let p = BigInt::from(P);
    let n = r.numer().mod_floor(&p).to_u64()?;
    let d = r.denom().mod_floor(&p).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(n * pow_mod(d, P - 2) % P)
}

pub fn flatten(m: &ExactMatrix) -> SparseVec {
    m.entries().iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Rank of the Q(i)-span of a family of equally sized matrices. An empty family has rank 0.
pub fn rank_of_family(mats: &[ExactMatrix]) -> Result<usize> {
    if let Some(first) = mats.first() {
        for m in mats {
            if m.dim() != first.dim() {
                return Err(Error::DimensionMismatch { left: first.dim(), right: m.dim() });
            }
        }
    }
    let rows: Vec<SparseVec> = mats.iter().map(flatten).collect();
    Ok(rank_of_vectors(&rows))
}

pub fn rank_of_vectors(rows: &[SparseVec]) -> usize {
    if let Some(r) = modular_rank(rows) {
        if r == rows.len() {
            return r;
        }
    }
    bareiss_rank(rows)
}

/// Column indices that occur in any row, mapped to a dense range.
fn compress_columns(rows: &[SparseVec]) -> FxHashMap<usize, usize> {
    let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|(c, _)| *c)).collect();
    cols.sort_unstable();
    cols.dedup();
    cols.into_iter().enumerate().map(|(i, c)| (c, i)).collect()
}

/// Rank over F_P, or `None` if some denominator vanishes modulo `P`.
pub fn modular_rank(rows: &[SparseVec]) -> Option<usize> {
    let s = sqrt_minus_one();
    let cols = compress_columns(rows);
    let width = cols.len();
    let mut dense: Vec<Vec<u64>> = Vec::with_capacity(rows.len());
    for row in rows {
        let mut v = vec![0u64; width];
        for (c, x) in row {
            let re = rational_mod_p(&x.re)?;
            let im = rational_mod_p(&x.im)?;
            v[cols[c]] = (re + im * s) % P;
        }
        dense.push(v);
    }
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..dense.len()).find(|&r| dense[r][col] != 0) else { continue };
        dense.swap(rank, pivot);
        let inv = pow_mod(dense[rank][col], P - 2);
        for x in dense[rank][col..].iter_mut() {
            *x = *x * inv % P;
        }
        let (head, tail) = dense.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &p) in row[col..].iter_mut().zip(&prow[col..]) {
                *x = (*x + (P - f) * p) % P;
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Gaussian integer with big components, used by the fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn one() -> Self {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Self) -> Self {
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &Self) -> Self {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Exact quotient; `None` if `o` does not divide `self`.
    fn exact_div(&self, o: &Self) -> Option<Self> {
        let n = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        let (qr, rr) = re.div_rem(&n);
        let (qi, ri) = im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then_some(GaussInt { re: qr, im: qi })
    }
}

/// Rank by Bareiss elimination over Z[i] after clearing denominators row by row.
pub fn bareiss_rank(rows: &[SparseVec]) -> usize {
    let cols = compress_columns(rows);
    let width = cols.len();
    let mut a: Vec<Vec<GaussInt>> = rows
        .iter()
        .map(|row| {
            let l = Rational::lcm_denominators(row.iter().flat_map(|(_, x)| [&x.re, &x.im]));
            let mut v = vec![GaussInt::zero(); width];
            for (c, x) in row {
                let scale = |r: &Rational| r.numer() * (&l / r.denom());
                v[cols[c]] = GaussInt { re: scale(&x.re), im: scale(&x.im) };
            }
            v
        })
        .collect();
    let mut prev = GaussInt::one();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, pivot);
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        let pv = &prow[col];
        for row in tail.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..width {
                let num = pv.mul(&row[j]).sub(&f.mul(&prow[j]));
                row[j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            row[col] = GaussInt::zero();
        }
        prev = pv.clone();
        rank += 1;
    }
    rank
}

fn axpy(acc: &mut SparseVec, coef: &GaussianRational, x: &SparseVec) {
    if coef.is_zero() {
        return;
    }
    let mut out = Vec::with_capacity(acc.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() || j < x.len() {
        let take_a = j >= x.len() || (i < acc.len() && acc[i].0 < x[j].0);
        let take_x = i >= acc.len() || (j < x.len() && x[j].0 < acc[i].0);
        if take_a {
            out.push(acc[i].clone());
            i += 1;
        } else if take_x {
            out.push((x[j].0, coef * &x[j].1));
            j += 1;
        } else {
            let v = &acc[i].1 + &(coef * &x[j].1);
            if !v.is_zero() {
                out.push((acc[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *acc = out;
}

fn lookup(v: &SparseVec, col: usize) -> Option<&GaussianRational> {
    v.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &v[i].1)
}

/// Outcome of expressing a target in a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanSolution {
    InSpan(Vec<GaussianRational>),
    NotInSpan,
}

/// Precomputed elimination of a linearly independent basis, reusable across many targets.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    basis: Vec<SparseVec>,
    /// Echelon rows: (pivot column, row with unit pivot, combination of basis members).
    rows: Vec<(usize, SparseVec, SparseVec)>,
}

impl SpanSolver {
    pub fn new(basis: Vec<SparseVec>) -> Result<Self> {
        let mut rows: Vec<(usize, SparseVec, SparseVec)> = Vec::with_capacity(basis.len());
        for (k, b) in basis.iter().enumerate() {
            let mut v = b.clone();
            let mut t: SparseVec = vec![(k, GaussianRational::ONE)];
            for (pc, prow, ptrans) in &rows {
                if let Some(x) = lookup(&v, *pc) {
                    let c = -x;
                    axpy(&mut v, &c, prow);
                    axpy(&mut t, &c, ptrans);
                }
            }
            let Some((pc, pv)) = v.first().cloned() else {
                return Err(Error::DependentBasis(k));
            };
            let inv = pv.recip()?;
            let scale = |s: &mut SparseVec| s.iter_mut().for_each(|(_, x)| *x = &*x * &inv);
            scale(&mut v);
            scale(&mut t);
            t.sort_by_key(|(c, _)| *c);
            rows.push((pc, v, t));
        }
        Ok(SpanSolver { basis, rows })
    }

    pub fn from_matrices(basis: &[ExactMatrix]) -> Result<Self> {
        if let Some(first) = basis.first() {
            for m in basis {
                if m.dim() != first.dim() {
                    return Err(Error::DimensionMismatch { left: first.dim(), right: m.dim() });
                }
            }
        }
        Self::new(basis.iter().map(flatten).collect())
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coefficients `c` with `Σ c_k basis_k = target`, checked by recombination.
    pub fn solve(&self, target: &SparseVec) -> SpanSolution {
        let mut v = target.clone();
        let mut coeffs: SparseVec = Vec::new();
        for (pc, prow, ptrans) in &self.rows {
            if let Some(x) = lookup(&v, *pc).cloned() {
                axpy(&mut v, &-&x, prow);
                axpy(&mut coeffs, &x, ptrans);
            }
        }
        if !v.is_empty() {
            return SpanSolution::NotInSpan;
        }
        let mut check: SparseVec = Vec::new();
        for (k, c) in &coeffs {
            axpy(&mut check, c, &self.basis[*k]);
        }
        assert_eq!(&check, target, "span solution failed recombination");
        let mut dense = vec![GaussianRational::ZERO; self.basis.len()];
        for (k, c) in coeffs {
            dense[k] = c;
        }
        SpanSolution::InSpan(dense)
    }

    pub fn solve_matrix(&self, target: &ExactMatrix) -> SpanSolution {
        self.solve(&flatten(target))
    }
}

/// One-shot convenience wrapper around [`SpanSolver`].
pub fn solve_in_span(target: &ExactMatrix, basis: &[ExactMatrix]) -> Result<SpanSolution> {
    if let Some(b) = basis.first() {
        if b.dim() != target.dim() {
            return Err(Error::DimensionMismatch { left: b.dim(), right: target.dim() });
        }
    }
    Ok(SpanSolver::from_matrices(basis)?.solve_matrix(target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Realm;
    use proptest::prelude::*;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> ExactMatrix {
        ExactMatrix::from_ints(2, |r, col| [a, b, c, d][r * 2 + col])
    }

    #[test]
    fn sqrt_minus_one_is_valid() {
        let s = sqrt_minus_one();
        assert_eq!(s * s % P, P - 1);
    }

    #[test]
    fn rank_of_identity_and_empty() {
        assert_eq!(rank_of_family(&[ExactMatrix::identity(4)]).unwrap(), 1);
        assert_eq!(rank_of_family(&[]).unwrap(), 0);
    }

    #[test]
    fn dependent_family_uses_exact_path() {
        let a = m2(1, 2, 3, 4);
        let b = m2(0, 1, 1, 0);
        let c = a.add(&b.scale_rational(&Rational::new(3, 7))).unwrap();
        assert_eq!(rank_of_family(&[a.clone(), b.clone(), c]).unwrap(), 2);
        assert_eq!(bareiss_rank(&[flatten(&a), flatten(&b)]), 2);
    }

    #[test]
    fn complex_dependence_is_detected() {
        let a = ExactMatrix::identity(2).with_realm(Realm::Other).unwrap();
        let ia = a.scale(&GaussianRational::I);
        // Over Q(i) these are proportional.
        assert_eq!(rank_of_family(&[a, ia]).unwrap(), 1);
    }

    #[test]
    fn solve_in_span_examples() {
        let e = |r: usize, c: usize| ExactMatrix::from_ints(2, move |i, j| (i == r && j == c) as i64);
        let basis = vec![e(0, 1).sub(&e(1, 0)).unwrap(), e(0, 0)];
        let target = e(0, 1).sub(&e(1, 0)).unwrap().scale_rational(&Rational::new(5, 3));
        match solve_in_span(&target, &basis).unwrap() {
            SpanSolution::InSpan(c) => {
                assert_eq!(c, vec![GaussianRational::real(Rational::new(5, 3)), GaussianRational::ZERO])
            }
            SpanSolution::NotInSpan => panic!("expected in span"),
        }
        assert_eq!(solve_in_span(&e(1, 1), &basis).unwrap(), SpanSolution::NotInSpan);
    }

    #[test]
    fn dependent_basis_is_an_error() {
        let a = m2(1, 2, 3, 4);
        assert!(matches!(SpanSolver::from_matrices(&[a.clone(), a.neg()]), Err(Error::DependentBasis(1))));
    }

    fn arb_family() -> impl Strategy<Value = Vec<ExactMatrix>> {
        proptest::collection::vec(proptest::collection::vec(-2i64..3, 9), 1..6)
            .prop_map(|v| v.into_iter().map(|e| ExactMatrix::from_ints(3, |r, c| e[r * 3 + c])).collect())
    }

    proptest! {
        #[test]
        fn rank_invariances(fam in arb_family(), k in 1i64..7, seed in 0usize..100) {
            let r = rank_of_family(&fam).unwrap();
            let rows: Vec<SparseVec> = fam.iter().map(flatten).collect();
            prop_assert_eq!(r, bareiss_rank(&rows));
            let mut perm = fam.clone();
            perm.rotate_left(seed % fam.len());
            prop_assert_eq!(rank_of_family(&perm).unwrap(), r);
            let mut scaled = fam.clone();
            let idx = seed % fam.len();
            scaled[idx] = scaled[idx].scale_rational(&Rational::new(k, 3));
            prop_assert_eq!(rank_of_family(&scaled).unwrap(), r);
        }
    }
}
