//! Named tables of matrices and Kähler forms, their JSON-lines serialization
//! and the symbolic block notation used for matrices.
//!
//! Matrices are written as 2×2 arrays of block symbols. A 16×16 matrix uses
//! 8×8 blocks drawn from `0`, `Id`, `R_u` and `R_uv = R_u R_v`; a 32×32
//! matrix uses 16×16 blocks drawn from `0`, `Id` and `J_ab`. Any symbol may
//! carry a leading `-`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::ExactMatrix;
use crate::clifford::{build_c9_system, build_spin9_system, composition, spin9_pair};
use crate::error::{Error, Result};
use crate::forms::standard::psi;
use crate::forms::{kahler_form_of, ComplexBladeView, ComplexTerm, FormTerm, SparseForm};
use crate::octonion::{right_mult_composition, right_mult_matrix, Octonion, BASIS_NAMES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    /// Real 16×16 or 32×32 matrices in block notation.
    Matrix,
    /// Real 2-forms on R¹⁶.
    RealForm,
    /// `2ψ` for 2-forms on R³², in the complex view.
    ComplexForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSpec {
    pub name: &'static str,
    pub kind: TableKind,
    pub description: &'static str,
}

pub const TABLES: [TableSpec; 13] = [
    TableSpec { name: "spin9-system", kind: TableKind::Matrix, description: "I_1..I_9 on R^16" },
    TableSpec { name: "jc-first-row", kind: TableKind::Matrix, description: "J_1b, b = 2..8" },
    TableSpec { name: "jc-inner", kind: TableKind::Matrix, description: "J_ab, 2 <= a < b <= 8" },
    TableSpec { name: "jc-last-column", kind: TableKind::Matrix, description: "J_a9, a = 1..8" },
    TableSpec { name: "c9-system", kind: TableKind::Matrix, description: "P_0..P_9 on R^32" },
    TableSpec { name: "p-first-row", kind: TableKind::Matrix, description: "P_0b, b = 1..8" },
    TableSpec { name: "p-inner", kind: TableKind::Matrix, description: "P_ab, 1 <= a < b <= 8" },
    TableSpec { name: "p-last-column", kind: TableKind::Matrix, description: "P_a9, a = 0..8" },
    TableSpec { name: "kahler-inner", kind: TableKind::RealForm, description: "psi_ab on R^16, 1 <= a < b <= 8" },
    TableSpec { name: "kahler-last-column", kind: TableKind::RealForm, description: "psi_a9 on R^16, a = 1..8" },
    TableSpec { name: "complex-inner", kind: TableKind::ComplexForm, description: "2 psi_ab on C^16, 1 <= a < b <= 8" },
    TableSpec { name: "complex-last-column", kind: TableKind::ComplexForm, description: "2 psi_a9 on C^16, a = 1..8" },
    TableSpec { name: "complex-first-row", kind: TableKind::ComplexForm, description: "2 psi_0b on C^16, b = 1..9" },
];

pub fn table_spec(name: &str) -> Option<&'static TableSpec> {
    TABLES.iter().find(|t| t.name == name)
}

/// One table entry in block notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub name: String,
    pub blocks: [[String; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealFormEntry {
    pub name: String,
    pub terms: Vec<FormTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFormEntry {
    pub name: String,
    pub terms: Vec<ComplexTerm>,
}

/// A table built from the constructors.
#[derive(Clone, Debug)]
pub enum Table {
    Matrices(Vec<(String, ExactMatrix)>),
    RealForms(Vec<(String, SparseForm)>),
    /// Stores `ψ`; serialization doubles it.
    ComplexForms(Vec<(String, SparseForm)>),
}

type Vocab = Vec<(String, ExactMatrix)>;

fn vocab8() -> &'static Vocab {
    static CELL: OnceLock<Vocab> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v = vec![("0".to_string(), ExactMatrix::zeros(8)), ("Id".to_string(), ExactMatrix::identity(8))];
        for u in 1..8 {
            v.push((format!("R_{}", BASIS_NAMES[u]), right_mult_matrix(&Octonion::basis(u))));
        }
        for u in 1..8 {
            for w in u + 1..8 {
                let m = right_mult_composition(&Octonion::basis(u), &Octonion::basis(w));
                v.push((format!("R_{}{}", BASIS_NAMES[u], BASIS_NAMES[w]), m));
            }
        }
        v
    })
}

fn vocab16() -> &'static Vocab {
    static CELL: OnceLock<Vocab> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v = vec![("0".to_string(), ExactMatrix::zeros(16)), ("Id".to_string(), ExactMatrix::identity(16))];
        for a in 1..=9 {
            for b in a + 1..=9 {
                v.push((format!("J_{a}{b}"), spin9_pair(a, b).expect("valid pair")));
            }
        }
        v
    })
}

fn vocab_for(block: usize) -> Result<&'static Vocab> {
    match block {
        8 => Ok(vocab8()),
        16 => Ok(vocab16()),
        _ => Err(Error::InvalidArgument(format!("no block vocabulary for size {block}"))),
    }
}

/// Symbol for a block, or `None` if the block is not in the vocabulary.
pub fn block_symbol(m: &ExactMatrix) -> Result<Option<String>> {
    let vocab = vocab_for(m.dim())?;
    let neg = m.neg();
    for (name, v) in vocab {
        if v == m {
            return Ok(Some(name.clone()));
        }
        if name != "0" && *v == neg {
            return Ok(Some(format!("-{name}")));
        }
    }
    Ok(None)
}

pub fn parse_block_symbol(sym: &str, size: usize) -> Result<ExactMatrix> {
    let (neg, base) = match sym.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, sym),
    };
    let m = vocab_for(size)?
        .iter()
        .find(|(n, _)| n == base)
        .map(|(_, m)| m.clone())
        .ok_or_else(|| Error::Parse(format!("unknown block symbol {sym:?}")))?;
    Ok(if neg { m.neg() } else { m })
}

pub fn to_block_entry(name: &str, m: &ExactMatrix) -> Result<MatrixEntry> {
    let half = m.dim() / 2;
    let mut blocks: [[String; 2]; 2] = Default::default();
    for (r, row) in blocks.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let b = m.block(r * half, c * half, half)?;
            *cell = block_symbol(&b)?
                .ok_or_else(|| Error::InvalidArgument(format!("{name}: block ({r},{c}) has no symbol")))?;
        }
    }
    Ok(MatrixEntry { name: name.to_string(), blocks })
}

pub fn from_block_entry(e: &MatrixEntry, dim: usize) -> Result<ExactMatrix> {
    let half = dim / 2;
    let row = |r: usize| -> Result<Vec<ExactMatrix>> { e.blocks[r].iter().map(|s| parse_block_symbol(s, half)).collect() };
    ExactMatrix::from_blocks(&[row(0)?, row(1)?])
}

fn pairs(lo: usize, hi: usize) -> Vec<(usize, usize)> {
    (lo..=hi).flat_map(|a| (a + 1..=hi).map(move |b| (a, b))).collect()
}

fn jc(list: Vec<(usize, usize)>) -> Result<Table> {
    list.into_iter().map(|(a, b)| Ok((format!("J_{a}{b}"), spin9_pair(a, b)?))).collect::<Result<_>>().map(Table::Matrices)
}

fn pc(list: Vec<(usize, usize)>) -> Result<Table> {
    let s = build_c9_system();
    list.into_iter()
        .map(|(a, b)| Ok((format!("P_{a}{b}"), composition(&s, &[a, b])?.0)))
        .collect::<Result<_>>()
        .map(Table::Matrices)
}

fn real_forms(list: Vec<(usize, usize)>) -> Result<Table> {
    list.into_iter()
        .map(|(a, b)| Ok((format!("psi_{a}{b}"), kahler_form_of(&spin9_pair(a, b)?)?)))
        .collect::<Result<_>>()
        .map(Table::RealForms)
}

fn complex_forms(list: Vec<(usize, usize)>) -> Result<Table> {
    list.into_iter().map(|(a, b)| Ok((format!("2psi_{a}{b}"), psi(a, b)?))).collect::<Result<_>>().map(Table::ComplexForms)
}

/// Builds a named table from the constructors.
pub fn build_table(name: &str) -> Result<Table> {
    match name {
        "spin9-system" => {
            let s = build_spin9_system();
            Ok(Table::Matrices(s.labels().zip(s.members).map(|(l, m)| (format!("I_{l}"), m)).collect()))
        }
        "jc-first-row" => jc((2..=8).map(|b| (1, b)).collect()),
        "jc-inner" => jc(pairs(2, 8)),
        "jc-last-column" => jc((1..=8).map(|a| (a, 9)).collect()),
        "c9-system" => {
            let s = build_c9_system();
            Ok(Table::Matrices(s.labels().zip(s.members).map(|(l, m)| (format!("P_{l}"), m)).collect()))
        }
        "p-first-row" => pc((1..=8).map(|b| (0, b)).collect()),
        "p-inner" => pc(pairs(1, 8)),
        "p-last-column" => pc((0..=8).map(|a| (a, 9)).collect()),
        "kahler-inner" => real_forms(pairs(1, 8)),
        "kahler-last-column" => real_forms((1..=8).map(|a| (a, 9)).collect()),
        "complex-inner" => complex_forms(pairs(1, 8)),
        "complex-last-column" => complex_forms((1..=8).map(|a| (a, 9)).collect()),
        "complex-first-row" => complex_forms((1..=9).map(|b| (0, b)).collect()),
        _ => Err(Error::InvalidArgument(format!("unknown table {name:?}"))),
    }
}

fn two() -> crate::algebra::GaussianRational {
    crate::algebra::GaussianRational::from_int(2)
}

/// Deterministic JSON-lines text, one entry per line.
pub fn render_table(t: &Table) -> Result<String> {
    let mut out = String::new();
    let mut push = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match t {
        Table::Matrices(v) => {
            for (n, m) in v {
                push(serde_json::to_string(&to_block_entry(n, m)?)?);
            }
        }
        Table::RealForms(v) => {
            for (n, f) in v {
                push(serde_json::to_string(&RealFormEntry { name: n.clone(), terms: f.to_jsonl_terms() })?);
            }
        }
        Table::ComplexForms(v) => {
            for (n, f) in v {
                let c = ComplexBladeView::from_real(f).scale(&two());
                push(serde_json::to_string(&ComplexFormEntry { name: n.clone(), terms: c.to_jsonl_terms() })?);
            }
        }
    }
    Ok(out)
}

/// Parses a rendered table back into named objects of the same kind as `kind`.
pub fn parse_table(kind: TableKind, text: &str, matrix_dim: usize) -> Result<Table> {
    let lines = text.lines().filter(|l| !l.trim().is_empty());
    match kind {
        TableKind::Matrix => lines
            .map(|l| {
                let e: MatrixEntry = serde_json::from_str(l)?;
                Ok((e.name.clone(), from_block_entry(&e, matrix_dim)?))
            })
            .collect::<Result<_>>()
            .map(Table::Matrices),
        TableKind::RealForm => lines
            .map(|l| {
                let e: RealFormEntry = serde_json::from_str(l)?;
                Ok((e.name, SparseForm::from_jsonl_terms(2, &e.terms)?))
            })
            .collect::<Result<_>>()
            .map(Table::RealForms),
        TableKind::ComplexForm => lines
            .map(|l| {
                let e: ComplexFormEntry = serde_json::from_str(l)?;
                let doubled = ComplexBladeView::from_jsonl_terms(2, &e.terms)?;
                let half = crate::algebra::GaussianRational::real(crate::algebra::Rational::new(1, 2));
                Ok((e.name, doubled.scale(&half).to_real()))
            })
            .collect::<Result<_>>()
            .map(Table::ComplexForms),
    }
}

/// Matrix size of a matrix table (16 or 32), 0 for form tables.
pub fn matrix_dim(name: &str) -> usize {
    match name {
        "spin9-system" | "jc-first-row" | "jc-inner" | "jc-last-column" => 16,
        "c9-system" | "p-first-row" | "p-inner" | "p-last-column" => 32,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_renders_and_round_trips() {
        for spec in &TABLES {
            let t = build_table(spec.name).unwrap();
            let text = render_table(&t).unwrap();
            let back = parse_table(spec.kind, &text, matrix_dim(spec.name)).unwrap();
            assert_eq!(render_table(&back).unwrap(), text, "{}", spec.name);
        }
    }

    #[test]
    fn table_sizes() {
        let len = |n: &str| render_table(&build_table(n).unwrap()).unwrap().lines().count();
        let jc: usize = ["jc-first-row", "jc-inner", "jc-last-column"].iter().map(|n| len(n)).sum();
        let p: usize = ["p-first-row", "p-inner", "p-last-column"].iter().map(|n| len(n)).sum();
        assert_eq!((len("spin9-system"), jc, len("c9-system"), p), (9, 36, 10, 45));
        assert_eq!(len("kahler-inner") + len("kahler-last-column"), 36);
        assert_eq!(len("complex-inner") + len("complex-last-column") + len("complex-first-row"), 45);
    }

    #[test]
    fn block_examples() {
        let e = to_block_entry("J_23", &spin9_pair(2, 3).unwrap()).unwrap();
        assert_eq!(e.blocks, [["-R_ij".to_string(), "0".into()], ["0".into(), "-R_ij".into()]]);
        let s = build_c9_system();
        let p12 = composition(&s, &[1, 2]).unwrap().0;
        assert_eq!(to_block_entry("P_12", &p12).unwrap().blocks[0][0], "J_23");
        assert!(parse_block_symbol("R_zz", 8).is_err());
    }
}
