//! Clifford systems: the nine involutions on R¹⁶, the ten on R³², and the
//! realified Pauli triple, together with the composition bookkeeping used by
//! the unitary obstruction argument.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{modular_rank, rank_of_vectors, SparseVec};
use crate::algebra::{ExactMatrix, GaussianRational, Rational, Realm};
use crate::error::{Error, Result};
use crate::octonion::{right_mult_matrix, Octonion};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordSystem {
    pub label: String,
    pub dim: usize,
    /// Label of the first member: 1 for the R¹⁶ system, 0 otherwise.
    pub first_index: usize,
    pub members: Vec<ExactMatrix>,
}

impl CliffordSystem {
    pub fn member(&self, label: usize) -> Result<&ExactMatrix> {
        label
            .checked_sub(self.first_index)
            .and_then(|k| self.members.get(k))
            .ok_or_else(|| Error::InvalidIndices(format!("{} has no member {label}", self.label)))
    }

    pub fn labels(&self) -> std::ops::Range<usize> {
        self.first_index..self.first_index + self.members.len()
    }
}

fn blocks2(a: ExactMatrix, b: ExactMatrix, c: ExactMatrix, d: ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_blocks(&[vec![a, b], vec![c, d]]).expect("equal block sizes")
}

/// `I_α` for α = 1..9 on R¹⁶ = O ⊕ O.
pub fn spin9_member(alpha: usize) -> Result<ExactMatrix> {
    let z = ExactMatrix::zeros(8);
    let id = ExactMatrix::identity(8);
    Ok(match alpha {
        1 => blocks2(z.clone(), id.clone(), id, z),
        2..=8 => {
            let r = right_mult_matrix(&Octonion::basis(alpha - 1));
            blocks2(z.clone(), r.neg(), r, z)
        }
        9 => blocks2(id.clone(), z.clone(), z, id.neg()),
        _ => return Err(Error::InvalidIndices(format!("I_{alpha} does not exist"))),
    })
}

/// `J_αβ = I_α I_β` for 1 ≤ α < β ≤ 9.
pub fn spin9_pair(alpha: usize, beta: usize) -> Result<ExactMatrix> {
    if alpha >= beta {
        return Err(Error::InvalidIndices(format!("J_{alpha}{beta} needs α < β")));
    }
    spin9_member(alpha)?.mul(&spin9_member(beta)?)
}

pub fn build_spin9_system() -> CliffordSystem {
    CliffordSystem {
        label: "spin9".into(),
        dim: 16,
        first_index: 1,
        members: (1..=9).map(|a| spin9_member(a).expect("valid index")).collect(),
    }
}

pub fn build_c9_system() -> CliffordSystem {
    let z = ExactMatrix::zeros(16);
    let id = ExactMatrix::identity(16);
    let mut members = vec![blocks2(z.clone(), id.clone(), id.clone(), z.clone())];
    for beta in 1..=8 {
        let j = spin9_pair(1, beta + 1).expect("valid indices");
        members.push(blocks2(z.clone(), j.neg(), j, z.clone()));
    }
    members.push(blocks2(id.clone(), z.clone(), z, id.neg()));
    CliffordSystem { label: "c9".into(), dim: 32, first_index: 0, members }
}

/// The three Pauli matrices, realified to 4×4 real symmetric matrices.
pub fn build_pauli_system() -> CliffordSystem {
    let c = |re: i64, im: i64| GaussianRational::new(Rational::from_integer(re), Rational::from_integer(im));
    let pauli = [
        [c(0, 0), c(1, 0), c(1, 0), c(0, 0)],
        [c(0, 0), c(0, -1), c(0, 1), c(0, 0)],
        [c(1, 0), c(0, 0), c(0, 0), c(-1, 0)],
    ];
    let members = pauli
        .into_iter()
        .map(|e| {
            let m = ExactMatrix::new(2, e.to_vec(), Realm::Other).expect("2x2");
            m.realify_any().expect("realification")
        })
        .collect();
    CliffordSystem { label: "pauli".into(), dim: 4, first_index: 0, members }
}

/// `𝔍 = [[0, −Id₁₆], [Id₁₆, 0]]`, the realified multiplication by i.
pub fn jfrak() -> ExactMatrix {
    let z = ExactMatrix::zeros(16);
    let id = ExactMatrix::identity(16);
    blocks2(z.clone(), id.neg(), id, z)
}

/// Left multiplication by the quaternion `i` on each of the eight 4-blocks of R³² = H⁸.
pub fn quaternionic_left_i() -> ExactMatrix {
    const L: [[i64; 4]; 4] = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
    ExactMatrix::from_ints(32, |r, c| if r / 4 == c / 4 { L[r % 4][c % 4] } else { 0 })
}

/// Labels of the members that do not commute with `k`.
pub fn non_commuting_members(s: &CliffordSystem, k: &ExactMatrix) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (label, m) in s.labels().zip(&s.members) {
        if !m.bracket(k)?.is_zero() {
            out.push(label);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFailure {
    pub relation: String,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordReport {
    pub label: String,
    pub dim: usize,
    pub members: usize,
    pub symmetric: bool,
    pub involution: bool,
    pub anticommute: bool,
    pub orthogonal: bool,
    pub checks: usize,
    pub failures: Vec<RelationFailure>,
    pub pass: bool,
}

pub fn verify_clifford_relations(s: &CliffordSystem) -> CliffordReport {
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut fail = |relation: &str, indices: Vec<usize>| {
        failures.push(RelationFailure { relation: relation.into(), indices });
    };
    let labels: Vec<usize> = s.labels().collect();
    for (k, m) in s.members.iter().enumerate() {
        let l = labels[k];
        checks += 3;
        if !m.is_symmetric() || !m.is_real() {
            fail("symmetric", vec![l]);
        }
        if !m.mul(m).map(|p| p.is_identity()).unwrap_or(false) {
            fail("involution", vec![l]);
        }
        if !m.transpose().mul(m).map(|p| p.is_identity()).unwrap_or(false) {
            fail("orthogonal", vec![l]);
        }
    }
    for a in 0..s.members.len() {
        for b in a + 1..s.members.len() {
            checks += 1;
            let ok = s.members[a].anticommutator(&s.members[b]).map(|m| m.is_zero()).unwrap_or(false);
            if !ok {
                fail("anticommute", vec![labels[a], labels[b]]);
            }
        }
    }
    let has = |r: &str| failures.iter().any(|f| f.relation == r);
    CliffordReport {
        label: s.label.clone(),
        dim: s.dim,
        members: s.members.len(),
        symmetric: !has("symmetric"),
        involution: !has("involution"),
        anticommute: !has("anticommute"),
        orthogonal: !has("orthogonal"),
        checks,
        pass: failures.is_empty(),
        failures,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompositionKind {
    ComplexStructure,
    Involution,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompositionClass {
    pub indices: Vec<usize>,
    pub kind: CompositionKind,
}

/// Kind predicted by the number of factors: `|S| ≡ 2, 3 (mod 4)` gives a complex structure.
pub fn parity_kind(len: usize) -> CompositionKind {
    if matches!(len % 4, 2 | 3) {
        CompositionKind::ComplexStructure
    } else {
        CompositionKind::Involution
    }
}

/// What the matrix actually is, if either.
pub fn classify_matrix(m: &ExactMatrix) -> Option<CompositionKind> {
    let sq = m.mul(m).ok()?;
    if m.is_skew() && sq.is_neg_identity() {
        Some(CompositionKind::ComplexStructure)
    } else if m.is_symmetric() && sq.is_identity() {
        Some(CompositionKind::Involution)
    } else {
        None
    }
}

/// Ordered product `P_{s1} P_{s2} ⋯` over a strictly increasing label list.
pub fn composition(s: &CliffordSystem, indices: &[usize]) -> Result<(ExactMatrix, CompositionClass)> {
    if indices.is_empty() {
        return Err(Error::InvalidIndices("empty index list".into()));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidIndices(format!("{indices:?} is not strictly increasing")));
    }
    let mut m = s.member(indices[0])?.clone();
    for &i in &indices[1..] {
        m = m.mul(s.member(i)?)?;
    }
    let class = CompositionClass { indices: indices.to_vec(), kind: parity_kind(indices.len()) };
    Ok((m, class))
}

/// All strictly increasing `k`-subsets of `labels`, in lexicographic order.
pub fn subsets(labels: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(labels: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..labels.len() {
            if labels.len() - i < k - cur.len() {
                break;
            }
            cur.push(labels[i]);
            rec(labels, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(labels, k, 0, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub label: String,
    pub sizes: Vec<usize>,
    pub counts: Vec<usize>,
    pub total: usize,
    pub all_complex_structures: bool,
    pub pairwise_orthogonal: bool,
    /// First pair with nonzero inner product, if any.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    pub rank: usize,
    pub pass: bool,
}

/// Compositions of the requested sizes, each checked to be a complex structure,
/// then checked for pairwise trace orthogonality and full rank.
pub fn orthogonality_scan(s: &CliffordSystem, sizes: &[usize]) -> Result<ScanReport> {
    let labels: Vec<usize> = s.labels().collect();
    let mut all = Vec::new();
    let mut counts = Vec::new();
    for &k in sizes {
        let subs = subsets(&labels, k);
        counts.push(subs.len());
        all.extend(subs);
    }
    let built: Vec<(ExactMatrix, CompositionClass)> =
        all.par_iter().map(|ix| composition(s, ix)).collect::<Result<_>>()?;
    let all_cs = built
        .par_iter()
        .all(|(m, c)| c.kind == CompositionKind::ComplexStructure && classify_matrix(m) == Some(c.kind));

    // Every entry here is a small integer, so the inner products reduce to integer dot products.
    let ints: Option<Vec<Vec<i64>>> = built.iter().map(|(m, _)| m.to_i64_real()).collect();
    let n = built.len();
    let first_bad = |a: usize| -> Option<usize> {
        (a + 1..n).find(|&b| match &ints {
            Some(v) => v[a].iter().zip(&v[b]).map(|(x, y)| x * y).sum::<i64>() != 0,
            None => !built[a].0.herm_inner(&built[b].0).map(|t| t.is_zero()).unwrap_or(false),
        })
    };
    let bad: Vec<(usize, usize)> = (0..n).into_par_iter().filter_map(|a| first_bad(a).map(|b| (a, b))).collect();
    let witness = bad.first().map(|&(a, b)| (built[a].1.indices.clone(), built[b].1.indices.clone()));

    let rows: Vec<SparseVec> = built.iter().map(|(m, _)| crate::algebra::linalg::flatten(m)).collect();
    let rank = rank_of_vectors(&rows);
    let pairwise_orthogonal = witness.is_none();
    Ok(ScanReport {
        label: s.label.clone(),
        sizes: sizes.to_vec(),
        total: n,
        counts,
        all_complex_structures: all_cs,
        pairwise_orthogonal,
        witness,
        rank,
        pass: all_cs && pairwise_orthogonal && rank == n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub counts: (usize, usize, usize),
    pub total: usize,
    /// Dimension of the skew endomorphisms of R³² commuting with the fixed complex structure.
    pub bound: usize,
    pub obstruction_holds: bool,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn jfrak_entry(r: usize, c: usize) -> i64 {
    match (r < 16, c < 16) {
        (true, false) if c == r + 16 => -1,
        (false, true) if r == c + 16 => 1,
        _ => 0,
    }
}

/// Rows of the map `A ↦ [A, 𝔍]` on the basis `E_ab − E_ba` (a < b) of so(32).
fn commutator_rows() -> Vec<SparseVec> {
    let n = 32;
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            // [E_ab − E_ba, 𝔍] computed entrywise.
            let e = |r: usize, c: usize| -> i64 { (r == a && c == b) as i64 - (r == b && c == a) as i64 };
            let mut v = SparseVec::new();
            for r in 0..n {
                for c in 0..n {
                    let x: i64 = (0..n).map(|k| e(r, k) * jfrak_entry(k, c) - jfrak_entry(r, k) * e(k, c)).sum();
                    if x != 0 {
                        v.push((r * n + c, GaussianRational::from_int(x)));
                    }
                }
            }
            rows.push(v);
        }
    }
    rows
}

/// `[[X, −Y], [Y, X]]` for X running over a basis of skew and Y over a basis of
/// symmetric 16×16 matrices, as coordinate vectors on the `E_ab − E_ba` basis.
/// Each one is checked to commute with 𝔍.
fn commutant_witnesses() -> Option<Vec<SparseVec>> {
    let mut out = Vec::new();
    let pair_index = |a: usize, b: usize| a * 32 - a * (a + 1) / 2 + (b - a - 1);
    for p in 0..16 {
        for q in p..16 {
            for skew in [true, false] {
                if skew && p == q {
                    continue;
                }
                let mut m = [[0i64; 32]; 32];
                if skew {
                    for off in [0, 16] {
                        m[p + off][q + off] = 1;
                        m[q + off][p + off] = -1;
                    }
                } else {
                    m[p][q + 16] -= 1;
                    m[q][p + 16] -= if p == q { 0 } else { 1 };
                    m[q + 16][p] += 1;
                    m[p + 16][q] += if p == q { 0 } else { 1 };
                }
                for r in 0..32 {
                    for c in 0..32 {
                        let x: i64 = (0..32).map(|k| m[r][k] * jfrak_entry(k, c) - jfrak_entry(r, k) * m[k][c]).sum();
                        if x != 0 || m[r][c] != -m[c][r] {
                            return None;
                        }
                    }
                }
                let mut v = SparseVec::new();
                for a in 0..32 {
                    for b in a + 1..32 {
                        if m[a][b] != 0 {
                            v.push((pair_index(a, b), GaussianRational::from_int(m[a][b])));
                        }
                    }
                }
                out.push(v);
            }
        }
    }
    Some(out)
}

/// Dimension of `{A ∈ so(32) : A𝔍 = 𝔍A}` as `496 − rank(A ↦ [A, 𝔍])`.
///
/// The modular rank bounds the rank from below; independent kernel witnesses bound
/// it from above. When the bounds meet no elimination over Q(i) is needed.
pub fn unitary_commutant_dim() -> usize {
    let so32 = 32 * 31 / 2;
    let rows = commutator_rows();
    let lower = modular_rank(&rows);
    let kernel = commutant_witnesses().and_then(|w| modular_rank(&w).and_then(|r| (r == w.len()).then_some(r)));
    match (lower, kernel) {
        (Some(lo), Some(k)) if lo + k == so32 => so32 - lo,
        _ => so32 - rank_of_vectors(&rows),
    }
}

pub fn unitary_obstruction_check() -> ObstructionReport {
    let counts = (binomial(10, 2), binomial(10, 3), binomial(10, 6));
    let total = counts.0 + counts.1 + counts.2;
    let bound = unitary_commutant_dim();
    ObstructionReport { counts, total, bound, obstruction_holds: total > bound }
}

/// Radon–Hurwitz type function: δ(1..8) = 1, 2, 4, 4, 8, 8, 8, 8 and δ(8 + h) = 16 δ(h).
pub fn delta(m: u32) -> Result<u128> {
    const TABLE: [u128; 8] = [1, 2, 4, 4, 8, 8, 8, 8];
    if m < 1 {
        return Err(Error::InvalidArgument("δ(m) needs m ≥ 1".into()));
    }
    let periods = (m - 1) / 8;
    let base = TABLE[((m - 1) % 8) as usize];
    16u128
        .checked_pow(periods)
        .and_then(|p| p.checked_mul(base))
        .ok_or_else(|| Error::InvalidArgument(format!("δ({m}) overflows u128")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin9_examples() {
        let s = build_spin9_system();
        let z = ExactMatrix::zeros(8);
        let id = ExactMatrix::identity(8);
        assert_eq!(s.member(9).unwrap(), &blocks2(id.clone(), z.clone(), z.clone(), id.neg()));
        assert_eq!(s.member(1).unwrap(), &blocks2(z.clone(), id.clone(), id, z));
        assert!(verify_clifford_relations(&s).pass);
        assert!(s.member(1).unwrap().mul(s.member(1).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn c9_examples() {
        let s = build_c9_system();
        let z = ExactMatrix::zeros(16);
        let id = ExactMatrix::identity(16);
        assert_eq!(s.member(9).unwrap(), &blocks2(id.clone(), z.clone(), z.clone(), id.neg()));
        let j12 = spin9_pair(1, 2).unwrap();
        assert_eq!(s.member(1).unwrap(), &blocks2(z.clone(), j12.neg(), j12, z));
        let r = verify_clifford_relations(&s);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.checks, 10 * 3 + 45);
        let p0p9 = s.member(0).unwrap().anticommutator(s.member(9).unwrap()).unwrap();
        assert!(p0p9.is_zero());
    }

    #[test]
    fn c9_members_and_complex_structures() {
        let s = build_c9_system();
        assert_eq!(jfrak(), ExactMatrix::identity(16).scale(&GaussianRational::I).realify().unwrap());
        let k = quaternionic_left_i();
        assert!(k.mul(&k).unwrap().is_neg_identity() && k.is_skew());
        // The R_g and R_h blocks of P6 and P7 contain left quaternionic j and k.
        assert_eq!(non_commuting_members(&s, &k).unwrap(), vec![6, 7]);
        assert_eq!(non_commuting_members(&s, &jfrak()).unwrap(), vec![0, 9]);
        for a in [0, 9] {
            assert!(s.member(a).unwrap().anticommutator(&jfrak()).unwrap().is_zero());
        }
    }

    #[test]
    fn pauli_examples() {
        let s = build_pauli_system();
        assert!(s.members.iter().all(|m| m.mul(m).unwrap().is_identity()));
        assert!(verify_clifford_relations(&s).pass);
        assert_eq!(crate::algebra::rank_of_family(&s.members).unwrap(), 3);
    }

    #[test]
    fn duplicated_member_fails_anticommutation() {
        let mut s = build_spin9_system();
        s.members[1] = s.members[0].clone();
        let r = verify_clifford_relations(&s);
        assert!(!r.pass && !r.anticommute && r.symmetric && r.involution);
        assert_eq!(r.failures[0].indices, vec![1, 2]);
    }

    #[test]
    fn composition_rejects_bad_indices() {
        let s = build_c9_system();
        assert!(composition(&s, &[3, 2]).is_err());
        assert!(composition(&s, &[2, 2]).is_err());
        assert!(composition(&s, &[0, 10]).is_err());
        assert!(composition(&build_spin9_system(), &[0, 1]).is_err());
        assert!(composition(&s, &[]).is_err());
    }

    #[test]
    fn composition_examples() {
        let spin9 = build_spin9_system();
        let (m, c) = composition(&spin9, &[2, 5]).unwrap();
        assert_eq!(c.kind, CompositionKind::ComplexStructure);
        assert!(m.is_skew() && m.mul(&m).unwrap().is_neg_identity());

        let c9 = build_c9_system();
        let (m, c) = composition(&c9, &[0, 3, 4, 8]).unwrap();
        assert_eq!(c.kind, CompositionKind::Involution);
        assert_eq!(classify_matrix(&m), Some(CompositionKind::Involution));

        let (a, _) = composition(&c9, &[1, 2, 4, 6, 9]).unwrap();
        for zeta in [0, 3, 5, 7, 8] {
            assert!(a.anticommutator(c9.member(zeta).unwrap()).unwrap().is_zero());
        }
        assert!(a.trace().is_zero());
    }

    #[test]
    fn parity_law_on_c9() {
        let s = build_c9_system();
        let labels: Vec<usize> = s.labels().collect();
        for k in 1..=6 {
            for ix in subsets(&labels, k) {
                let (m, c) = composition(&s, &ix).unwrap();
                let sym = m.is_symmetric();
                let skew = m.is_skew();
                match k % 4 {
                    0 | 1 => assert!(sym && !skew, "{ix:?}"),
                    _ => assert!(skew && !sym, "{ix:?}"),
                }
                assert_eq!(classify_matrix(&m), Some(c.kind));
            }
        }
    }

    #[test]
    fn scans() {
        let spin9 = orthogonality_scan(&build_spin9_system(), &[2]).unwrap();
        assert!(spin9.pass && spin9.total == 36 && spin9.rank == 36);
        let pauli = orthogonality_scan(&build_pauli_system(), &[2, 3]).unwrap();
        assert_eq!(pauli.counts, vec![3, 1]);
        assert!(pauli.pass);
    }

    #[test]
    fn scan_reports_non_orthogonal_witness() {
        let mut s = build_pauli_system();
        s.members.push(s.members[0].clone());
        let r = orthogonality_scan(&s, &[2]).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn obstruction_counts() {
        let r = unitary_obstruction_check();
        assert_eq!(r.counts, (45, 120, 210));
        assert_eq!(r.total, 375);
        assert_eq!(r.bound, 256);
        assert!(r.obstruction_holds);
    }

    #[test]
    fn commutant_certificate_agrees_with_elimination() {
        assert_eq!(commutant_witnesses().map(|w| w.len()), Some(256));
        assert_eq!(crate::algebra::linalg::bareiss_rank(&commutator_rows()), 240);
    }

    #[test]
    fn delta_values() {
        let printed = [1, 2, 4, 4, 8, 8, 8, 8];
        for (m, want) in (1..=8).zip(printed) {
            assert_eq!(delta(m).unwrap(), want);
        }
        for h in 1..=8 {
            assert_eq!(delta(8 + h).unwrap(), 16 * delta(h).unwrap());
        }
        assert_eq!(delta(4).unwrap(), 4);
        assert_eq!(2 * delta(9).unwrap(), 32);
        assert_eq!(delta(17).unwrap(), 256);
        assert!(delta(0).is_err());
    }
}
