//! Characteristic coefficients τ₂ and τ₄ of a skew matrix of 2-forms.
//!
//! τ₄ is the sum over principal 4×4 minors of the squared Pfaffian. When all
//! entries have integer coefficients (after clearing one common denominator)
//! and a crude bound rules out `i64` overflow, the squares are accumulated
//! into dense integer arrays indexed by the rank of the 8-blade, one per
//! chunk of quadruples. Otherwise the generic exact path is used. Both paths
//! give identical results for any number of rayon threads.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::algebra::GaussianRational;
use crate::forms::blade::{wedge_sign, SubsetRanker};
use crate::forms::form::{FormMatrix, SparseForm};

const OVERFLOW_BOUND: u128 = 1 << 62;

pub fn tau2(m: &FormMatrix) -> SparseForm {
    let mut out = SparseForm::zero(4);
    for a in 0..m.n() {
        for b in a + 1..m.n() {
            let e = m.get(a, b);
            out.add_assign(&e.wedge(e).expect("degree 4")).expect("degree 4");
        }
    }
    out
}

/// All `a < b < c < d` below `n`, lexicographic.
pub fn quadruples(n: usize) -> Vec<[usize; 4]> {
    let mut q = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    q.push([a, b, c, d]);
                }
            }
        }
    }
    q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelPath {
    DenseInteger,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Tau4Stats {
    pub path: KernelPath,
    pub quadruples: usize,
    pub chunks: usize,
    /// Largest number of 4-form terms in a single Pfaffian.
    pub max_pfaffian_terms: usize,
    pub result_terms: usize,
}

pub fn tau4(m: &FormMatrix) -> SparseForm {
    tau4_with_stats(m).0
}

/// τ₄ on the current rayon pool, with bookkeeping about the run.
pub fn tau4_with_stats(m: &FormMatrix) -> (SparseForm, Tau4Stats) {
    let quads = quadruples(m.n());
    if let Some(r) = dense_integer_tau4(m, &quads) {
        return r;
    }
    generic_tau4(m, &quads)
}

fn pfaffian(m: &FormMatrix, [a, b, c, d]: [usize; 4]) -> SparseForm {
    let w = |p: (usize, usize), q: (usize, usize)| m.get(p.0, p.1).wedge(m.get(q.0, q.1)).expect("degree 4");
    let mut pf = w((a, b), (c, d));
    pf.add_assign(&w((a, c), (b, d)).neg()).expect("degree 4");
    pf.add_assign(&w((a, d), (b, c))).expect("degree 4");
    pf
}

fn generic_tau4(m: &FormMatrix, quads: &[[usize; 4]]) -> (SparseForm, Tau4Stats) {
    let parts: Vec<(SparseForm, usize)> = quads
        .par_iter()
        .map(|&q| {
            let pf = pfaffian(m, q);
            (pf.wedge(&pf).expect("degree 8"), pf.nnz())
        })
        .collect();
    let mut out = SparseForm::zero(8);
    let mut max_pf = 0;
    for (p, k) in &parts {
        out.add_assign(p).expect("degree 8");
        max_pf = max_pf.max(*k);
    }
    let stats = Tau4Stats {
        path: KernelPath::Generic,
        quadruples: quads.len(),
        chunks: quads.len(),
        max_pfaffian_terms: max_pf,
        result_terms: out.nnz(),
    };
    (out, stats)
}

type IntForm = Vec<(u32, i64)>;

/// Entries scaled to integers by one common denominator, or `None`.
fn integer_entries(m: &FormMatrix) -> Option<(Vec<IntForm>, BigInt)> {
    let n = m.n();
    let mut den = BigInt::from(1);
    for a in 0..n {
        for b in a + 1..n {
            let (_, d) = m.get(a, b).to_scaled_integers()?;
            den = num_integer::Integer::lcm(&den, &d);
        }
    }
    let mut entries = vec![Vec::new(); n * n];
    for a in 0..n {
        for b in a + 1..n {
            let f = m.get(a, b);
            let mut v = Vec::with_capacity(f.nnz());
            for (blade, c) in f.terms_sorted() {
                let x = c.re.numer() * (&den / c.re.denom());
                v.push((blade.0, i64::try_from(x).ok()?));
            }
            entries[a * n + b] = v;
        }
    }
    Some((entries, den))
}

fn int_wedge_into(acc: &mut FxHashMap<u32, i64>, x: &IntForm, y: &IntForm, sign: i64) -> Option<()> {
    for &(p, cp) in x {
        for &(q, cq) in y {
            if p & q == 0 {
                let v = cp.checked_mul(cq)?.checked_mul(sign * wedge_sign(p, q) as i64)?;
                let e = acc.entry(p | q).or_insert(0);
                *e = e.checked_add(v)?;
            }
        }
    }
    Some(())
}

fn int_pfaffian(e: &[IntForm], n: usize, [a, b, c, d]: [usize; 4]) -> Option<IntForm> {
    let g = |i: usize, j: usize| &e[i * n + j];
    let mut acc = FxHashMap::default();
    int_wedge_into(&mut acc, g(a, b), g(c, d), 1)?;
    int_wedge_into(&mut acc, g(a, c), g(b, d), -1)?;
    int_wedge_into(&mut acc, g(a, d), g(b, c), 1)?;
    let mut v: IntForm = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    v.sort_unstable();
    Some(v)
}

fn dense_integer_tau4(m: &FormMatrix, quads: &[[usize; 4]]) -> Option<(SparseForm, Tau4Stats)> {
    let (entries, den) = integer_entries(m)?;
    let n = m.n();
    let pfs: Vec<IntForm> = quads.par_iter().map(|&q| int_pfaffian(&entries, n, q)).collect::<Option<_>>()?;

    // |coefficient of Pf²| ≤ (Σ|c|)², summed over quadruples bounds every partial sum.
    let mut bound: u128 = 0;
    for pf in &pfs {
        let l1: u128 = pf.iter().map(|&(_, c)| c.unsigned_abs() as u128).sum();
        bound = bound.checked_add(l1.checked_mul(l1)?)?;
        if bound >= OVERFLOW_BOUND {
            return None;
        }
    }

    let ambient = m.ambient_dim();
    let ranker = SubsetRanker::new(ambient.max(8), 8);
    let chunks = rayon::current_num_threads().clamp(1, pfs.len().max(1));
    let chunk_len = pfs.len().div_ceil(chunks).max(1);
    let partials: Vec<Vec<i64>> = pfs
        .par_chunks(chunk_len)
        .map(|chunk| {
            let mut acc = vec![0i64; ranker.count()];
            for pf in chunk {
                for (i, &(p, cp)) in pf.iter().enumerate() {
                    for &(q, cq) in &pf[i + 1..] {
                        if p & q == 0 {
                            acc[ranker.rank(p | q)] += 2 * wedge_sign(p, q) as i64 * cp * cq;
                        }
                    }
                }
            }
            acc
        })
        .collect();

    let mut iter = partials.into_iter();
    let mut total = iter.next().unwrap_or_else(|| vec![0; ranker.count()]);
    for part in iter {
        for (t, x) in total.iter_mut().zip(part) {
            *t += x;
        }
    }

    let den4 = den.pow(4);
    let terms = total.iter().enumerate().filter(|(_, &c)| c != 0).map(|(r, &c)| (ranker.unrank(r), c));
    let out = SparseForm::from_scaled_integers(8, terms, &den4).ok()?;
    let stats = Tau4Stats {
        path: KernelPath::DenseInteger,
        quadruples: quads.len(),
        chunks: chunks.min(pfs.len().div_ceil(chunk_len)),
        max_pfaffian_terms: pfs.iter().map(Vec::len).max().unwrap_or(0),
        result_terms: out.nnz(),
    };
    Some((out, stats))
}

const DERANGEMENTS_4: [([usize; 4], i8); 9] = [
    ([1, 0, 3, 2], 1),
    ([1, 2, 3, 0], -1),
    ([1, 3, 0, 2], -1),
    ([2, 0, 3, 1], -1),
    ([2, 3, 0, 1], 1),
    ([2, 3, 1, 0], -1),
    ([3, 0, 1, 2], -1),
    ([3, 2, 0, 1], -1),
    ([3, 2, 1, 0], 1),
];

/// τ₄ as the sum of 4×4 principal minor determinants, expanded over permutations.
/// Only the nine fixed-point-free permutations contribute since the diagonal vanishes.
pub fn tau4_minor_oracle(m: &FormMatrix) -> SparseForm {
    let parts: Vec<SparseForm> = quadruples(m.n())
        .par_iter()
        .map(|q| {
            let mut det = SparseForm::zero(8);
            for (perm, sign) in DERANGEMENTS_4 {
                let left = m.get(q[0], q[perm[0]]).wedge(m.get(q[1], q[perm[1]])).expect("degree 4");
                if left.is_zero() {
                    continue;
                }
                let right = m.get(q[2], q[perm[2]]).wedge(m.get(q[3], q[perm[3]])).expect("degree 4");
                let prod = left.wedge(&right).expect("degree 8");
                det.add_assign(&if sign > 0 { prod } else { prod.neg() }).expect("degree 8");
            }
            det
        })
        .collect();
    let mut out = SparseForm::zero(8);
    for p in &parts {
        out.add_assign(p).expect("degree 8");
    }
    out
}

/// Greatest common divisor of the coefficients of a form with Gaussian-integer
/// coefficients that are all real; `None` otherwise or for the zero form.
pub fn integer_content(f: &SparseForm) -> Option<BigInt> {
    let mut g = BigInt::zero();
    for (_, c) in f.iter() {
        if !c.is_real() || !c.re.is_integer() {
            return None;
        }
        g = num_integer::Integer::gcd(&g, &c.re.numer());
    }
    (!g.is_zero()).then(|| g.abs())
}

/// `f / k` when every coefficient of `f` is an integer multiple of `k`.
pub fn divide_exact(f: &SparseForm, k: i64) -> Option<SparseForm> {
    let content = integer_content(f)?;
    if (&content % BigInt::from(k)).is_zero() {
        Some(f.scale(&GaussianRational::real(crate::algebra::Rational::new(1, k))))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use proptest::prelude::*;

    fn gi(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn derangement_signs() {
        for (p, s) in DERANGEMENTS_4 {
            let mut inv = 0;
            for i in 0..4 {
                assert_ne!(p[i], i);
                for j in i + 1..4 {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            assert_eq!(s, if inv % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn small_matrices_vanish() {
        let m = FormMatrix::from_upper(3, |a, b| SparseForm::monomial(&[a, b + 3], gi(1))).unwrap();
        assert!(tau4(&m).is_zero());
        assert_eq!(tau4(&m).degree(), 8);
        let one = FormMatrix::from_upper(1, |_, _| unreachable!()).unwrap();
        assert!(tau2(&one).is_zero());
    }

    fn arb_matrix(n: usize, rational: bool) -> impl Strategy<Value = FormMatrix> {
        let entry = proptest::collection::vec((0usize..10, 0usize..10, -3i64..4, 1i64..4), 0..4);
        proptest::collection::vec(entry, n * (n - 1) / 2).prop_map(move |raw| {
            let mut it = raw.into_iter();
            FormMatrix::from_upper(n, |_, _| {
                let mut f = SparseForm::zero(2);
                for (a, b, c, d) in it.next().unwrap() {
                    if a != b {
                        let d = if rational { d } else { 1 };
                        f.add_assign(&SparseForm::monomial(&[a, b], GaussianRational::real(Rational::new(c, d))).unwrap())
                            .unwrap();
                    }
                }
                Ok(f)
            })
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn kernel_matches_oracle(m in arb_matrix(5, true)) {
            prop_assert_eq!(tau4(&m), tau4_minor_oracle(&m));
        }

        #[test]
        fn dense_and_generic_paths_agree(m in arb_matrix(5, false)) {
            let q = quadruples(5);
            let generic = generic_tau4(&m, &q).0;
            let (dense, stats) = dense_integer_tau4(&m, &q).expect("integer input");
            prop_assert_eq!(stats.path, KernelPath::DenseInteger);
            prop_assert_eq!(dense, generic);
        }
    }

    #[test]
    fn complex_entries_take_generic_path() {
        let m = FormMatrix::from_upper(4, |a, b| {
            SparseForm::monomial(&[2 * a, 2 * b + 1], GaussianRational::I)
        })
        .unwrap();
        let (f, stats) = tau4_with_stats(&m);
        assert_eq!(stats.path, KernelPath::Generic);
        assert_eq!(f, tau4_minor_oracle(&m));
    }
}
