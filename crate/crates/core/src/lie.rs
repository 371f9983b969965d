//! Lie algebras spanned by the compositions: spin(9) inside so(16), its
//! complex extension spin(10) inside su(16), and the algebra 𝔥 ⊂ so(32)
//! generated by pairs from the ten-member system.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::SparseVec;
use crate::algebra::{rank_of_family, ExactMatrix, GaussianRational, Rational, Realm, SpanSolution, SpanSolver};
use crate::clifford::{build_c9_system, composition, jfrak, spin9_member, spin9_pair, subsets};
use crate::error::{Error, Result};
use crate::octonion::{right_mult_matrix, Octonion};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBasis {
    pub label: String,
    pub elements: Vec<(Vec<usize>, ExactMatrix)>,
}

impl LieBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn matrices(&self) -> Vec<ExactMatrix> {
        self.elements.iter().map(|(_, m)| m.clone()).collect()
    }

    pub fn get(&self, indices: &[usize]) -> Option<&ExactMatrix> {
        self.elements.iter().find(|(ix, _)| ix == indices).map(|(_, m)| m)
    }

    pub fn position(&self, indices: &[usize]) -> Option<usize> {
        self.elements.iter().position(|(ix, _)| ix == indices)
    }

    /// Same labels, every element realified (complex-16 → real-32).
    pub fn realified(&self) -> Result<LieBasis> {
        let elements =
            self.elements.iter().map(|(ix, m)| Ok((ix.clone(), m.realify()?))).collect::<Result<Vec<_>>>()?;
        Ok(LieBasis { label: format!("{}-real", self.label), elements })
    }
}

/// The 36 `J_αβ = I_α I_β`, 1 ≤ α < β ≤ 9.
pub fn build_jc() -> LieBasis {
    let labels: Vec<usize> = (1..=9).collect();
    let elements = subsets(&labels, 2)
        .into_iter()
        .map(|ix| {
            let m = spin9_pair(ix[0], ix[1]).expect("valid pair");
            (ix, m)
        })
        .collect();
    LieBasis { label: "JC".into(), elements }
}

/// The 84 `J_αβγ = I_α I_β I_γ`.
pub fn build_j_triples() -> LieBasis {
    let labels: Vec<usize> = (1..=9).collect();
    let elements = subsets(&labels, 3)
        .into_iter()
        .map(|ix| {
            let m = spin9_pair(ix[0], ix[1]).and_then(|p| p.mul(&spin9_member(ix[2])?)).expect("valid triple");
            (ix, m)
        })
        .collect();
    LieBasis { label: "J3".into(), elements }
}

/// `J_0β = i·I_β`.
pub fn j0(beta: usize) -> Result<ExactMatrix> {
    Ok(spin9_member(beta)?.with_realm(Realm::Complex16)?.scale(&GaussianRational::I))
}

/// The 45 complex matrices `J_αβ`, 0 ≤ α < β ≤ 9, in lexicographic order.
pub fn build_jd() -> LieBasis {
    let mut elements = Vec::with_capacity(45);
    for beta in 1..=9 {
        elements.push((vec![0, beta], j0(beta).expect("valid index")));
    }
    for (ix, m) in build_jc().elements {
        elements.push((ix, m.with_realm(Realm::Complex16).expect("real 16x16")));
    }
    elements.sort_by(|a, b| a.0.cmp(&b.0));
    LieBasis { label: "JD".into(), elements }
}

/// Checks `J_0β = ½[J_β9, J_09]` for β = 1..8.
pub fn jd_bracket_crosscheck() -> Result<bool> {
    let half = Rational::new(1, 2);
    let j09 = j0(9)?;
    for beta in 1..=8 {
        let jb9 = spin9_pair(beta, 9)?.with_realm(Realm::Complex16)?;
        if jb9.bracket(&j09)?.scale_rational(&half) != j0(beta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The 45 `P_αβ = P_α P_β` of the ten-member system on R³².
pub fn build_p_basis() -> LieBasis {
    let s = build_c9_system();
    let labels: Vec<usize> = s.labels().collect();
    let elements = subsets(&labels, 2)
        .into_iter()
        .map(|ix| {
            let (m, _) = composition(&s, &ix).expect("valid pair");
            (ix, m)
        })
        .collect();
    LieBasis { label: "P".into(), elements }
}

/// Sparse structure constants: `[x_i, x_j] = Σ_k c[i][j][k] x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub n: usize,
    pub tensor: Vec<Vec<SparseVec>>,
}

fn dense_to_sparse(v: Vec<GaussianRational>) -> SparseVec {
    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

impl StructureConstants {
    /// Brackets every ordered pair independently; `Err` if some bracket leaves the span.
    pub fn extract(b: &LieBasis) -> Result<std::result::Result<StructureConstants, Vec<(usize, usize)>>> {
        let n = b.len();
        let solver = SpanSolver::from_matrices(&b.matrices())?;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let solved: Vec<Option<SparseVec>> = pairs
            .par_iter()
            .map(|&(i, j)| -> Result<Option<SparseVec>> {
                if i == j {
                    return Ok(Some(SparseVec::new()));
                }
                let br = b.elements[i].1.bracket(&b.elements[j].1)?;
                Ok(match solver.solve_matrix(&br) {
                    SpanSolution::InSpan(c) => Some(dense_to_sparse(c)),
                    SpanSolution::NotInSpan => None,
                })
            })
            .collect::<Result<_>>()?;
        let failures: Vec<(usize, usize)> =
            pairs.iter().zip(&solved).filter(|(_, s)| s.is_none()).map(|(p, _)| *p).collect();
        if !failures.is_empty() {
            return Ok(Err(failures));
        }
        let mut tensor = vec![vec![SparseVec::new(); n]; n];
        for ((i, j), s) in pairs.into_iter().zip(solved) {
            tensor[i][j] = s.expect("checked above");
        }
        Ok(Ok(StructureConstants { n, tensor }))
    }

    pub fn get(&self, i: usize, j: usize) -> &SparseVec {
        &self.tensor[i][j]
    }

    /// Pairs where `c(i,j) ≠ −c(j,i)`.
    pub fn antisymmetry_failures(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                let neg: SparseVec = self.tensor[j][i].iter().map(|(k, c)| (*k, -c)).collect();
                if self.tensor[i][j] != neg {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `Σ_m c_ij^m c_mk^l + c_jk^m c_mi^l + c_ki^m c_mj^l` as a sparse vector in `l`.
    fn jacobiator(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let mut acc = vec![GaussianRational::ZERO; self.n];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, x) in &self.tensor[a][b] {
                for (l, y) in &self.tensor[*m][c] {
                    acc[*l] += &(x * y);
                }
            }
        }
        dense_to_sparse(acc)
    }

    /// Every triple `i < j < k` whose Jacobiator is nonzero. Returns (triples checked, failures).
    pub fn jacobi_failures(&self) -> (usize, Vec<(usize, usize, usize)>) {
        let n = self.n;
        let triples: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k)))).collect();
        let fails =
            triples.par_iter().filter(|&&(i, j, k)| !self.jacobiator(i, j, k).is_empty()).copied().collect();
        (triples.len(), fails)
    }

    /// The constants re-expressed after relabelling basis element `k` as `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> StructureConstants {
        let n = self.n;
        let mut tensor = vec![vec![SparseVec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut v: SparseVec = self.tensor[i][j].iter().map(|(k, c)| (perm[*k], c.clone())).collect();
                v.sort_by_key(|(k, _)| *k);
                tensor[perm[i]][perm[j]] = v;
            }
        }
        StructureConstants { n, tensor }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub label: String,
    pub count: usize,
    pub rank: usize,
    pub brackets: usize,
    pub closed: bool,
    pub failures: Vec<(Vec<usize>, Vec<usize>)>,
    pub pass: bool,
}

pub fn bracket_closure_check(b: &LieBasis) -> Result<ClosureReport> {
    let rank = rank_of_family(&b.matrices())?;
    if rank < b.len() {
        return Ok(ClosureReport {
            label: b.label.clone(),
            count: b.len(),
            rank,
            brackets: 0,
            closed: false,
            failures: Vec::new(),
            pass: false,
        });
    }
    let n = b.len();
    let (closed, failures) = match StructureConstants::extract(b)? {
        Ok(_) => (true, Vec::new()),
        Err(f) => (false, f.into_iter().map(|(i, j)| (b.elements[i].0.clone(), b.elements[j].0.clone())).collect()),
    };
    Ok(ClosureReport {
        label: b.label.clone(),
        count: n,
        rank,
        brackets: n * (n - 1),
        closed,
        failures,
        pass: closed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub correspondence: Vec<(Vec<usize>, Vec<usize>)>,
    pub constants_equal: bool,
    /// First basis pair (P labels) where the two sides differ.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    pub antisymmetric: bool,
    pub jacobi_triples: usize,
    pub jacobi_holds: bool,
    pub pass: bool,
}

/// The label of the spin(10) element matched with `P_αβ`.
pub fn iso_partner(p: &[usize]) -> Vec<usize> {
    let (a, b) = (p[0], p[1]);
    if b == 9 {
        vec![0, a + 1]
    } else {
        vec![a + 1, b + 1]
    }
}

pub fn iso_check() -> Result<IsoReport> {
    let p = build_p_basis();
    let jd = build_jd().realified()?;
    let correspondence: Vec<(Vec<usize>, Vec<usize>)> =
        p.elements.iter().map(|(ix, _)| (ix.clone(), iso_partner(ix))).collect();
    // perm[k] = position in the J^D basis of the partner of the k-th P element.
    let perm: Vec<usize> = correspondence
        .iter()
        .map(|(_, q)| jd.position(q).ok_or_else(|| Error::InvalidIndices(format!("no J^D element {q:?}"))))
        .collect::<Result<_>>()?;
    let missing = |label: &str| Error::InvalidArgument(format!("{label} is not closed under brackets"));
    let cp = StructureConstants::extract(&p)?.map_err(|_| missing("P"))?;
    let cj = StructureConstants::extract(&jd)?.map_err(|_| missing("JD"))?;
    let cp_moved = cp.permuted(&perm);
    let mut witness = None;
    'outer: for i in 0..cp.n {
        for j in 0..cp.n {
            if cp_moved.get(perm[i], perm[j]) != cj.get(perm[i], perm[j]) {
                witness = Some((p.elements[i].0.clone(), p.elements[j].0.clone()));
                break 'outer;
            }
        }
    }
    let antisymmetric = cp.antisymmetry_failures().is_empty() && cj.antisymmetry_failures().is_empty();
    let (tp, fp) = cp.jacobi_failures();
    let (tj, fj) = cj.jacobi_failures();
    let jacobi_holds = fp.is_empty() && fj.is_empty();
    let constants_equal = witness.is_none();
    Ok(IsoReport {
        correspondence,
        constants_equal,
        witness,
        antisymmetric,
        jacobi_triples: tp + tj,
        jacobi_holds,
        pass: constants_equal && antisymmetric && jacobi_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct So16Report {
    pub pair_rank: usize,
    pub triple_rank: usize,
    pub total_rank: usize,
    pub cross_orthogonal: bool,
    pub pairwise_orthogonal: bool,
    pub pass: bool,
}

pub fn so16_decomposition_check() -> Result<So16Report> {
    let pairs = build_jc().matrices();
    let triples = build_j_triples().matrices();
    let all: Vec<ExactMatrix> = pairs.iter().chain(&triples).cloned().collect();
    let ints: Vec<Vec<i64>> =
        all.iter().map(|m| m.to_i64_real().ok_or(Error::InvalidArgument("non-integer entry".into()))).collect::<Result<_>>()?;
    let dot = |a: usize, b: usize| ints[a].iter().zip(&ints[b]).map(|(x, y)| x * y).sum::<i64>();
    let np = pairs.len();
    let n = all.len();
    let cross_orthogonal = (0..np).all(|a| (np..n).all(|b| dot(a, b) == 0));
    let pairwise_orthogonal = (0..n).all(|a| (a + 1..n).all(|b| dot(a, b) == 0));
    let pair_rank = rank_of_family(&pairs)?;
    let triple_rank = rank_of_family(&triples)?;
    let total_rank = rank_of_family(&all)?;
    Ok(So16Report {
        pair_rank,
        triple_rank,
        total_rank,
        cross_orthogonal,
        pairwise_orthogonal,
        pass: cross_orthogonal && pairwise_orthogonal && pair_rank == 36 && triple_rank == 84 && total_rank == 120,
    })
}

/// `m_(r,v) = i·[[r·Id₈, R_v̄], [R_v, −r·Id₈]]`.
pub fn clifford_rep_map(r: &Rational, v: &Octonion) -> ExactMatrix {
    let rid = ExactMatrix::identity(8).scale_rational(r);
    let m = ExactMatrix::from_blocks(&[
        vec![rid.clone(), right_mult_matrix(&v.conj())],
        vec![right_mult_matrix(v), rid.neg()],
    ])
    .expect("8x8 blocks");
    m.with_realm(Realm::Complex16).expect("16x16").scale(&GaussianRational::I)
}

/// Sign `s` in `m_(r,v)² = s·(r² + ‖v‖²)·Id`, if the square is scalar of that form.
pub fn clifford_rep_square_sign(r: &Rational, v: &Octonion) -> Option<i8> {
    let m = clifford_rep_map(r, v);
    let sq = m.mul(&m).ok()?;
    let n = r * r + v.norm();
    let id = ExactMatrix::identity(16).scale_rational(&n);
    if sq == id.neg() {
        Some(-1)
    } else if sq == id {
        Some(1)
    } else {
        None
    }
}

type Labels = Vec<usize>;

/// Labels of the elements of `b` that commute and anticommute with 𝔍.
pub fn jfrak_behaviour(b: &LieBasis) -> Result<(Vec<Labels>, Vec<Labels>)> {
    let j = jfrak();
    let mut commute = Vec::new();
    let mut anti = Vec::new();
    for (ix, m) in &b.elements {
        if m.bracket(&j)?.is_zero() {
            commute.push(ix.clone());
        } else if m.anticommutator(&j)?.is_zero() {
            anti.push(ix.clone());
        }
    }
    Ok((commute, anti))
}
