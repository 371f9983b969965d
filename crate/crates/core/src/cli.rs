//! Library side of the command-line tool: verification suites, serialization
//! targets and the benchmark harness. The binary only parses flags.
//!
//! Exit codes: 0 when every identity holds, 1 when one fails, 2 on usage or IO errors.

use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::ExactMatrix;
use crate::catalog::{
    self, default_golden_dir, read_golden, run, verify_phi_spin10, verify_phi_spin9, verify_restriction_identity,
    verify_tables, verify_theorem_tau, IdentityReport, PHI10_FILE, PHI9_FILE,
};
use crate::clifford::{
    build_c9_system, build_pauli_system, build_spin9_system, delta, orthogonality_scan, unitary_obstruction_check,
    verify_clifford_relations, CliffordSystem,
};
use crate::error::{Error, Result};
use crate::forms::standard::{jd_realified, omega, psi_c, psi_d, PHI9_DIVISOR};
use crate::forms::{lie_derivation, tau4_with_stats, ComplexBladeView, FormMatrix, SparseForm};
use crate::lie::{
    bracket_closure_check, build_j_triples, build_jc, build_jd, build_p_basis, iso_check, jd_bracket_crosscheck,
    so16_decomposition_check, LieBasis,
};
use crate::octonion::{oct_mul, MulTable, Octonion, BASIS_NAMES};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Clifford,
    Lie,
    Forms,
    Tables,
    Theorems,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Lie => "lie",
            Suite::Forms => "forms",
            Suite::Tables => "tables",
            Suite::Theorems => "theorems",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemName {
    Spin9,
    C9,
    Pauli,
}

impl SystemName {
    pub fn build(self) -> CliffordSystem {
        match self {
            SystemName::Spin9 => build_spin9_system(),
            SystemName::C9 => build_c9_system(),
            SystemName::Pauli => build_pauli_system(),
        }
    }

    fn expected_shape(self) -> (usize, usize) {
        match self {
            SystemName::Spin9 => (9, 16),
            SystemName::C9 => (10, 32),
            SystemName::Pauli => (3, 4),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisName {
    /// The 36 pairs spanning spin(9).
    Jc,
    /// The 84 triples.
    J3,
    /// The 45 complex generators of spin(10).
    Jd,
    /// The 45 pairs of the ten-member system on R³².
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormName {
    #[value(name = "psi-C")]
    PsiC,
    #[value(name = "psi-D")]
    PsiD,
    Omega,
    Phi9,
    Phi10,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Workload {
    #[value(name = "tau4-psiD")]
    #[serde(rename = "tau4-psiD")]
    Tau4PsiD,
    #[value(name = "tau4-psiC")]
    #[serde(rename = "tau4-psiC")]
    Tau4PsiC,
    #[value(name = "orth-scan-375")]
    #[serde(rename = "orth-scan-375")]
    OrthScan375,
}

impl Workload {
    pub fn name(self) -> &'static str {
        match self {
            Workload::Tau4PsiD => "tau4-psiD",
            Workload::Tau4PsiC => "tau4-psiC",
            Workload::OrthScan375 => "orth-scan-375",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub items: Vec<IdentityReport>,
    pub pass: bool,
    pub version: String,
    pub convention_fingerprint: String,
}

impl VerificationReport {
    pub fn new(suite: &str, items: Vec<IdentityReport>) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            pass: items.iter().all(|r| r.pass),
            items,
            version: VERSION.to_string(),
            convention_fingerprint: convention_fingerprint(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.items {
            out.push_str(&format!("{} {} ({} ms)\n", if r.pass { "PASS" } else { "FAIL" }, r.name, r.millis));
            if let Some(w) = &r.witness {
                out.push_str(&format!("    witness: {w}\n"));
            }
            for d in &r.details {
                out.push_str(&format!("    {d}\n"));
            }
        }
        let passed = self.items.iter().filter(|r| r.pass).count();
        out.push_str(&format!("{}: {passed}/{} passed\n", self.suite, self.items.len()));
        out
    }
}

/// Sign conventions the whole crate depends on, hashed together with the octonion table.
pub const SIGN_CONVENTIONS: &str = "octonions: Cayley-Dickson (a,b)(c,d) = (ac - d*b, da + bc*) over i,j,k\n\
kahler: psi(X,Y) = g(X,JY), psi = sum_{a<b} J_ab dx_a dx_b\n\
complex: dz = dx - i dy, coordinates 0..15 then their partners 16..31\n\
jfrak: [[0,-Id],[Id,0]]\n\
lie action: A.dx_b = -sum_a A_ba dx_a\n";

pub fn convention_fingerprint() -> String {
    let mut h = Sha256::new();
    for row in MulTable::standard().render() {
        h.update(row.join(" "));
        h.update("\n");
    }
    h.update(SIGN_CONVENTIONS);
    hex(&h.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Options shared by the verification suites.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Run only items whose name equals this or starts with it followed by `-`.
    pub only: Option<String>,
    /// Restrict the Clifford relation check to one system.
    pub system: Option<SystemName>,
    pub golden_dir: Option<std::path::PathBuf>,
}

impl VerifyOptions {
    fn selects(&self, name: &str) -> bool {
        match &self.only {
            None => true,
            Some(o) => name == o || name.strip_prefix(o.as_str()).is_some_and(|rest| rest.starts_with('-')),
        }
    }
}

type Runner = Box<dyn Fn(&Path) -> Result<Vec<IdentityReport>>>;
type Item = (&'static str, Runner);

fn single(f: impl Fn() -> IdentityReport + 'static) -> Runner {
    Box::new(move |_| Ok(vec![f()]))
}

fn items_for(suite: Suite, opts: &VerifyOptions) -> Vec<Item> {
    let mut items: Vec<Item> = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Clifford {
        if opts.system.is_none() {
            items.push(("octonion-table", single(octonion_report)));
        }
        for s in [SystemName::Spin9, SystemName::C9, SystemName::Pauli] {
            if opts.system.is_none_or(|x| x == s) {
                let name = match s {
                    SystemName::Spin9 => "clifford-spin9",
                    SystemName::C9 => "clifford-c9",
                    SystemName::Pauli => "clifford-pauli",
                };
                items.push((name, single(move || clifford_report(s))));
            }
        }
        if opts.system.is_none() {
            items.push(("orth-scan-375", single(orth_scan_report)));
            items.push(("unitary-obstruction", single(obstruction_report)));
            items.push(("delta", single(delta_report)));
        }
    }
    if all || suite == Suite::Lie {
        items.push(("so16", single(so16_report)));
        items.push(("closure-jc", single(|| closure_report("closure-jc", build_jc(), 36))));
        items.push(("closure-jd", single(|| closure_report("closure-jd", build_jd(), 45))));
        items.push(("closure-p", single(|| closure_report("closure-p", build_p_basis(), 45))));
        items.push(("iso", single(iso_report)));
    }
    if all || suite == Suite::Forms {
        items.push(("kahler-forms", single(kahler_forms_report)));
        items.push(("omega-invariance", single(omega_invariance_report)));
    }
    if all || suite == Suite::Tables {
        items.push(("tables", Box::new(|dir: &Path| verify_tables(dir))));
    }
    if all || suite == Suite::Theorems {
        items.push(("theorem-tau", single(verify_theorem_tau)));
        items.push(("phi-spin9", Box::new(|dir: &Path| Ok(vec![verify_phi_spin9(dir)?]))));
        items.push(("phi-spin10", Box::new(|dir: &Path| Ok(vec![verify_phi_spin10(dir)?]))));
        items.push(("restriction", single(verify_restriction_identity)));
    }
    items
}

/// Runs a suite. Errors are reserved for usage and IO problems; failed identities
/// show up as `pass == false` in the report.
pub fn run_verify(suite: Suite, opts: &VerifyOptions) -> Result<VerificationReport> {
    let dir = opts.golden_dir.clone().unwrap_or_else(default_golden_dir);
    let mut reports = Vec::new();
    let mut matched = false;
    for (name, f) in items_for(suite, opts) {
        // The tables item expands into one report per table; filter those by their own names.
        if name == "tables" {
            let wanted = opts.only.is_none() || catalog::TABLES.iter().any(|t| opts.selects(t.name)) || opts.selects("errata") || opts.selects("tables");
            if !wanted {
                continue;
            }
            matched = true;
            let keep_all = opts.only.is_none() || opts.selects("tables");
            reports.extend(f(&dir)?.into_iter().filter(|r| keep_all || opts.selects(&r.name)));
            continue;
        }
        if !opts.selects(name) {
            continue;
        }
        matched = true;
        reports.extend(f(&dir)?);
    }
    if !matched {
        return Err(Error::InvalidArgument(format!(
            "no item of suite {} matches {:?}",
            suite.name(),
            opts.only.as_deref().unwrap_or("")
        )));
    }
    Ok(VerificationReport::new(suite.name(), reports))
}

fn octonion_report() -> IdentityReport {
    run("octonion-table", |c| {
        let t = MulTable::standard();
        let mut signed_perm = true;
        for row in t.rows() {
            let mut seen = [false; 8];
            for u in row {
                signed_perm &= u.sign.abs() == 1 && !std::mem::replace(&mut seen[u.index], true);
            }
        }
        c.check("every row is a signed permutation of the basis", signed_perm);
        c.check("1 is the identity", (0..8).all(|x| t.product(0, x).index == x && t.product(x, 0).index == x));
        let squares = (1..8).all(|x| t.product(x, x).index == 0 && t.product(x, x).sign == -1);
        c.check("imaginary units square to -1", squares);
        let anti = (1..8).all(|x| {
            (1..8).filter(|&y| y != x).all(|y| {
                let (p, q) = (t.product(x, y), t.product(y, x));
                p.index == q.index && p.sign == -q.sign
            })
        });
        c.check("distinct imaginary units anticommute", anti);
        let e = Octonion::basis;
        let mut alt = true;
        let mut assoc_fail = false;
        for x in 0..8 {
            for y in 0..8 {
                alt &= oct_mul(&e(x), &oct_mul(&e(x), &e(y))) == oct_mul(&oct_mul(&e(x), &e(x)), &e(y));
                alt &= oct_mul(&oct_mul(&e(y), &e(x)), &e(x)) == oct_mul(&e(y), &oct_mul(&e(x), &e(x)));
                for z in 0..8 {
                    assoc_fail |= oct_mul(&oct_mul(&e(x), &e(y)), &e(z)) != oct_mul(&e(x), &oct_mul(&e(y), &e(z)));
                }
            }
        }
        c.check("left and right alternative on basis units", alt);
        c.check("not associative", assoc_fail);
        let samples = [
            Octonion::from_ints([1, -2, 3, 0, 5, -1, 2, 4]),
            Octonion::from_ints([0, 3, -1, 2, -2, 0, 1, -3]),
            Octonion::from_ints([2, 1, 1, -4, 0, 3, -2, 1]),
        ];
        let norm_mult = samples.iter().all(|x| samples.iter().all(|y| oct_mul(x, y).norm() == &x.norm() * &y.norm()));
        c.check("norm is multiplicative on samples", norm_mult);
        Ok(())
    })
}

fn clifford_report(s: SystemName) -> IdentityReport {
    let name = format!("clifford-{}", build_label(s));
    run(&name, |c| {
        let sys = s.build();
        let (members, dim) = s.expected_shape();
        c.check(&format!("{members} members of size {dim}"), sys.members.len() == members && sys.dim == dim);
        let r = verify_clifford_relations(&sys);
        c.check("symmetric", r.symmetric);
        c.check("involutions", r.involution);
        c.check("orthogonal", r.orthogonal);
        c.fail_with("pairwise anticommuting", r.anticommute, || {
            let f = r.failures.iter().find(|f| f.relation == "anticommute");
            format!("members {:?} do not anticommute", f.map(|f| f.indices.clone()).unwrap_or_default())
        });
        c.note(format!("{} relation checks", r.checks));
        Ok(())
    })
}

fn build_label(s: SystemName) -> &'static str {
    match s {
        SystemName::Spin9 => "spin9",
        SystemName::C9 => "c9",
        SystemName::Pauli => "pauli",
    }
}

fn orth_scan_report() -> IdentityReport {
    run("orth-scan-375", |c| {
        let r = orthogonality_scan(&build_c9_system(), &[2, 3, 6])?;
        c.check("45 + 120 + 210 = 375 compositions", r.counts == [45, 120, 210] && r.total == 375);
        c.check("every composition is a complex structure", r.all_complex_structures);
        c.fail_with("pairwise trace-orthogonal", r.pairwise_orthogonal, || format!("{:?}", r.witness));
        c.check("rank 375", r.rank == 375);
        c.note(format!("rank {}", r.rank));
        Ok(())
    })
}

fn obstruction_report() -> IdentityReport {
    run("unitary-obstruction", |c| {
        let r = unitary_obstruction_check();
        c.check("commutant of the complex structure in so(32) has dimension 256", r.bound == 256);
        c.check("375 > 256", r.total == 375 && r.obstruction_holds);
        c.note(format!("{} independent complex structures vs bound {}", r.total, r.bound));
        Ok(())
    })
}

fn delta_report() -> IdentityReport {
    run("delta", |c| {
        let table = [1u128, 2, 4, 4, 8, 8, 8, 8];
        let first = (1..=8).map(delta).collect::<Result<Vec<_>>>()?;
        c.check("delta(1..8) = 1 2 4 4 8 8 8 8", first == table);
        let periodic = (1..=8u32).map(|h| Ok(delta(8 + h)? == 16 * delta(h)?)).collect::<Result<Vec<bool>>>()?;
        c.check("delta(8+h) = 16 delta(h)", periodic.iter().all(|&b| b));
        c.check("2 delta(9) = 32", 2 * delta(9)? == 32);
        Ok(())
    })
}

fn so16_report() -> IdentityReport {
    run("so16", |c| {
        let r = so16_decomposition_check()?;
        c.check("pairs span 36 dimensions", r.pair_rank == 36);
        c.check("triples span 84 dimensions", r.triple_rank == 84);
        c.check("together they span so(16), 120 dimensions", r.total_rank == 120);
        c.check("pairs and triples are mutually orthogonal", r.cross_orthogonal && r.pairwise_orthogonal);
        Ok(())
    })
}

fn closure_report(name: &str, b: LieBasis, expected: usize) -> IdentityReport {
    run(name, |c| {
        let r = bracket_closure_check(&b)?;
        c.check(&format!("{expected} independent elements"), r.count == expected && r.rank == expected);
        c.fail_with("closed under brackets", r.closed, || format!("bracket of {:?} leaves the span", r.failures.first()));
        c.note(format!("{} brackets", r.brackets));
        Ok(())
    })
}

fn iso_report() -> IdentityReport {
    run("iso", |c| {
        let r = iso_check()?;
        c.fail_with("structure constants agree under the correspondence", r.constants_equal, || {
            format!("pair {:?}", r.witness)
        });
        c.check("structure constants antisymmetric", r.antisymmetric);
        c.check("Jacobi identity on every triple", r.jacobi_holds);
        c.check("J_0b = [J_b9, J_09]/2", jd_bracket_crosscheck()?);
        c.note(format!("{} Jacobi triples", r.jacobi_triples));
        Ok(())
    })
}

fn kahler_forms_report() -> IdentityReport {
    run("kahler-forms", |c| {
        let first_bad = |m: &FormMatrix, offset: usize, ok: &dyn Fn(&SparseForm) -> bool| {
            (0..m.n())
                .flat_map(|a| (a + 1..m.n()).map(move |b| (a, b)))
                .find(|&(a, b)| !ok(m.get(a, b)))
                .map(|(a, b)| format!("psi_{}{}", a + offset, b + offset))
        };
        let bad_c = first_bad(psi_c(), 1, &|f| f.degree() == 2 && f.is_real() && f.nnz() == 8 && f.support_mask() & !0xFFFF == 0);
        c.fail_with("psi^C: real 8-term 2-forms on the first 16 coordinates", bad_c.is_none(), || bad_c.clone().unwrap_or_default());
        let bad_d = first_bad(psi_d(), 0, &|f| {
            f.degree() == 2 && f.is_real() && f.nnz() == 16 && ComplexBladeView::from_real(f).is_pure(1, 1)
        });
        c.fail_with("psi^D: real 16-term forms of type (1,1)", bad_d.is_none(), || bad_d.clone().unwrap_or_default());
        c.check("psi^C and psi^D are skew", psi_d().is_skew() && psi_c().is_skew());
        let w = ComplexBladeView::from_real(omega());
        c.check("omega has 16 terms of type (1,1)", omega().nnz() == 16 && w.is_pure(1, 1));
        Ok(())
    })
}

fn omega_invariance_report() -> IdentityReport {
    run("omega-invariance", |c| {
        let gens = jd_realified()?;
        let moved = gens.iter().find_map(|(ix, m)| match lie_derivation(m, omega()) {
            Ok(f) if f.is_zero() => None,
            Ok(_) => Some(format!("{ix:?}")),
            Err(e) => Some(e.to_string()),
        });
        c.fail_with("omega annihilated by the 45 realified spin(10) generators", moved.is_none(), || {
            moved.clone().unwrap_or_default()
        });
        Ok(())
    })
}

fn matrix_rows(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.dim()).map(|r| (0..m.dim()).map(|c| m.get(r, c).to_string()).collect()).collect()
}

fn form_matrix_lines(m: &FormMatrix, offset: usize) -> Result<String> {
    let mut out = String::new();
    for a in 0..m.n() {
        for b in a + 1..m.n() {
            let line = json!({ "entry": format!("psi_{}{}", a + offset, b + offset), "terms": m.get(a, b).to_jsonl_terms() });
            out.push_str(&serde_json::to_string(&line)?);
            out.push('\n');
        }
    }
    Ok(out)
}

fn form_lines(f: &SparseForm, complex: bool) -> Result<String> {
    let mut out = String::new();
    if complex {
        for t in ComplexBladeView::from_real(f).to_jsonl_terms() {
            out.push_str(&serde_json::to_string(&t)?);
            out.push('\n');
        }
    } else {
        for t in f.to_jsonl_terms() {
            out.push_str(&serde_json::to_string(&t)?);
            out.push('\n');
        }
    }
    Ok(out)
}

pub enum EmitTarget {
    MulTable,
    System(SystemName),
    LieBasis(BasisName),
    Form { name: FormName, complex: bool },
    GoldenAll(std::path::PathBuf),
}

/// Deterministic serialization of one target. Matrices carry exact rational strings, row-major.
pub fn run_emit(target: &EmitTarget, format: Format) -> Result<String> {
    match target {
        EmitTarget::MulTable => {
            let t = MulTable::standard();
            if format == Format::Text {
                let mut out = format!("    {}\n", BASIS_NAMES.map(|n| format!("{n:>3}")).join(""));
                for (x, row) in t.render().iter().enumerate() {
                    out.push_str(&format!("{:>3} {}\n", BASIS_NAMES[x], row.iter().map(|s| format!("{s:>3}")).collect::<String>()));
                }
                return Ok(out);
            }
            let rows: Vec<Vec<Value>> = t
                .rows()
                .iter()
                .map(|row| row.iter().map(|u| json!({ "sign": u.sign, "index": u.index, "name": BASIS_NAMES[u.index] })).collect())
                .collect();
            Ok(serde_json::to_string_pretty(&json!({ "basis": BASIS_NAMES, "table": rows }))? + "\n")
        }
        EmitTarget::System(name) => {
            let s = name.build();
            let members: Vec<Value> = s
                .labels()
                .zip(&s.members)
                .map(|(l, m)| json!({ "label": l, "rows": matrix_rows(m) }))
                .collect();
            let v = json!({ "label": s.label, "dim": s.dim, "first_index": s.first_index, "members": members });
            Ok(serde_json::to_string(&v)? + "\n")
        }
        EmitTarget::LieBasis(name) => {
            let b = match name {
                BasisName::Jc => build_jc(),
                BasisName::J3 => build_j_triples(),
                BasisName::Jd => build_jd(),
                BasisName::P => build_p_basis(),
            };
            let elements: Vec<Value> = b
                .elements
                .iter()
                .map(|(ix, m)| json!({ "indices": ix, "dim": m.dim(), "rows": matrix_rows(m) }))
                .collect();
            Ok(serde_json::to_string(&json!({ "label": b.label, "elements": elements }))? + "\n")
        }
        EmitTarget::Form { name, complex } => match name {
            FormName::PsiC => form_matrix_lines(psi_c(), 1),
            FormName::PsiD => form_matrix_lines(psi_d(), 0),
            FormName::Omega => form_lines(omega(), *complex),
            FormName::Phi9 => form_lines(&crate::forms::standard::phi_spin9()?, *complex),
            FormName::Phi10 => form_lines(crate::forms::standard::phi_spin10(), *complex),
        },
        EmitTarget::GoldenAll(dir) => {
            let written = catalog::emit_golden_all(dir)?;
            Ok(serde_json::to_string_pretty(&json!({ "directory": dir, "written": written }))? + "\n")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchResult {
    pub workload: Workload,
    pub repetitions: usize,
    pub workers: usize,
    pub min_ms: u64,
    pub median_ms: u64,
    pub peak_terms: usize,
    pub output_hash: String,
    /// Hash the output must reproduce; `None` when the workload has no frozen output.
    pub golden_hash: Option<String>,
    /// Output agrees with its golden (or, for the scan, has rank 375).
    pub matches_golden: bool,
}

impl BenchResult {
    pub fn exit_code(&self) -> i32 {
        if self.matches_golden {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn render_text(&self) -> String {
        format!(
            "{} workers={} reps={} min={} ms median={} ms peak_terms={} hash={} {}\n",
            self.workload.name(),
            self.workers,
            self.repetitions,
            self.min_ms,
            self.median_ms,
            self.peak_terms,
            self.output_hash,
            if self.matches_golden { "ok" } else { "MISMATCH" }
        )
    }
}

fn golden_form_hash(dir: &Path, file: &str) -> Result<String> {
    let text = read_golden(dir, file)?;
    if file == PHI10_FILE {
        let s: catalog::Phi10Summary = serde_json::from_str(&text)?;
        return Ok(s.sha256);
    }
    Ok(catalog::parse_form_lines(8, &text)?.sha256_hex())
}

/// Output of one workload run: hash, peak term count, and whether it meets its own check.
fn run_workload(w: Workload) -> Result<(String, usize, bool)> {
    match w {
        Workload::Tau4PsiD => {
            let (f, stats) = tau4_with_stats(psi_d());
            Ok((f.sha256_hex(), stats.result_terms.max(stats.max_pfaffian_terms), true))
        }
        Workload::Tau4PsiC => {
            let (f, stats) = tau4_with_stats(psi_c());
            let phi = crate::forms::divide_exact(&f, PHI9_DIVISOR)
                .ok_or_else(|| Error::InvalidArgument("tau4(psi^C) is not divisible by 360".into()))?;
            Ok((phi.sha256_hex(), stats.result_terms.max(stats.max_pfaffian_terms), true))
        }
        Workload::OrthScan375 => {
            let r = orthogonality_scan(&build_c9_system(), &[2, 3, 6])?;
            let digest = hex(&Sha256::digest(serde_json::to_vec(&r)?));
            Ok((digest, r.total, r.pass && r.rank == 375))
        }
    }
}

/// Times `repetitions` runs of a workload inside a pool of `workers` threads.
pub fn run_bench(workload: Workload, workers: usize, repetitions: usize, golden_dir: Option<&Path>) -> Result<BenchResult> {
    if workers == 0 || repetitions == 0 {
        return Err(Error::InvalidArgument("workers and repetitions must be positive".into()));
    }
    let dir = golden_dir.map(Path::to_path_buf).unwrap_or_else(default_golden_dir);
    let golden_hash = match workload {
        Workload::Tau4PsiD => Some(golden_form_hash(&dir, PHI10_FILE)?),
        Workload::Tau4PsiC => Some(golden_form_hash(&dir, PHI9_FILE)?),
        Workload::OrthScan375 => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut times = Vec::with_capacity(repetitions);
    let mut hashes = Vec::with_capacity(repetitions);
    let mut peak = 0;
    let mut self_check = true;
    for _ in 0..repetitions {
        let start = Instant::now();
        let (hash, terms, ok) = pool.install(|| run_workload(workload))?;
        times.push(start.elapsed().as_millis() as u64);
        hashes.push(hash);
        peak = peak.max(terms);
        self_check &= ok;
    }
    times.sort_unstable();
    let output_hash = hashes[0].clone();
    let stable = hashes.iter().all(|h| *h == output_hash);
    let matches_golden = stable && self_check && golden_hash.as_ref().is_none_or(|g| *g == output_hash);
    Ok(BenchResult {
        workload,
        repetitions,
        workers,
        min_ms: times[0],
        median_ms: times[times.len() / 2],
        peak_terms: peak,
        output_hash,
        golden_hash,
        matches_golden,
    })
}
