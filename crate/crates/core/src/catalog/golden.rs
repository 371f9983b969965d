use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{FormTerm, SparseForm};

use super::tables::{build_table, render_table, TABLES};

pub const PHI9_FILE: &str = "phi9.jsonl";
pub const PHI10_FILE: &str = "phi10.json";
pub const ERRATA_FILE: &str = "errata.jsonl";

/// `CLIFFVERIFY_GOLDEN_DIR` if set, else the directory shipped with the crate.
pub fn default_golden_dir() -> PathBuf {
    std::env::var_os("CLIFFVERIFY_GOLDEN_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("golden"))
}

pub fn read_golden(dir: &Path, file: &str) -> Result<String> {
    fs::read_to_string(dir.join(file))
        .map_err(|e| Error::Golden { name: file.to_string(), reason: e.to_string() })
}

/// Φ₁₀ is too large to commit term by term; its golden is a fingerprint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Phi10Summary {
    pub degree: usize,
    pub terms: usize,
    pub sha256: String,
    /// The first terms in canonical order.
    pub leading_terms: Vec<FormTerm>,
}

pub fn phi10_summary(f: &SparseForm) -> Phi10Summary {
    Phi10Summary {
        degree: f.degree(),
        terms: f.nnz(),
        sha256: f.sha256_hex(),
        leading_terms: f.to_jsonl_terms().into_iter().take(8).collect(),
    }
}

pub(crate) fn render_form_lines(f: &SparseForm) -> Result<String> {
    let mut out = String::new();
    for t in f.to_jsonl_terms() {
        out.push_str(&serde_json::to_string(&t)?);
        out.push('\n');
    }
    Ok(out)
}

pub(crate) fn parse_form_lines(degree: usize, text: &str) -> Result<SparseForm> {
    let terms: Vec<FormTerm> =
        text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect::<std::result::Result<_, _>>()?;
    SparseForm::from_jsonl_terms(degree, &terms)
}

/// A printed coefficient that differs from the computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrataEntry {
    pub table: String,
    pub entry: String,
    pub dz: Vec<usize>,
    pub dzbar: Vec<usize>,
    pub printed: String,
    pub computed: String,
}

/// Every generated golden file, as `(file name, contents)`.
pub fn golden_files() -> Result<Vec<(String, String)>> {
    let mut files = Vec::new();
    for t in &TABLES {
        files.push((format!("{}.jsonl", t.name), render_table(&build_table(t.name)?)?));
    }
    files.push((PHI9_FILE.to_string(), render_form_lines(&crate::forms::standard::phi_spin9()?)?));
    let summary = phi10_summary(crate::forms::standard::phi_spin10());
    files.push((PHI10_FILE.to_string(), serde_json::to_string_pretty(&summary)? + "\n"));
    Ok(files)
}

/// Writes every generated golden file into `dir`. The errata list is curated and left alone.
pub fn emit_golden_all(dir: &Path) -> Result<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, text) in golden_files()? {
        fs::write(dir.join(&name), text)?;
        written.push(name);
    }
    Ok(written)
}
