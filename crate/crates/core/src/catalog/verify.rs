use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{rank_of_vectors, SparseVec};
use crate::algebra::{GaussianRational, Rational};
use crate::clifford::{jfrak, spin9_pair};
use crate::error::{Error, Result};
use crate::forms::standard::{jd_realified, omega, phi_spin10, psi_c, psi_d, Q8_KILL, PHI9_DIVISOR};
use crate::forms::{
    integer_content, lie_derivation, tau2, tau2_decomposition, tau4, tau4_minor_oracle, ComplexBladeView, Cov,
    SparseForm,
};

use super::golden::{parse_form_lines, phi10_summary, read_golden, ErrataEntry, Phi10Summary, ERRATA_FILE, PHI10_FILE, PHI9_FILE};
use super::tables::{build_table, matrix_dim, parse_table, render_table, Table, TABLES};

/// Outcome of one named identity. `pass` holds iff every sub-check is exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub pass: bool,
    /// First failing sub-check, with the offending blade or entry when there is one.
    pub witness: Option<String>,
    pub details: Vec<String>,
    pub millis: u64,
}

#[derive(Default)]
pub(crate) struct Checks {
    details: Vec<String>,
    witness: Option<String>,
    failed: bool,
}

impl Checks {
    pub(crate) fn check(&mut self, label: &str, ok: bool) {
        self.fail_with(label, ok, || label.to_string());
    }

    pub(crate) fn fail_with(&mut self, label: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.details.push(format!("{} {label}", if ok { "ok" } else { "FAIL" }));
        if !ok {
            self.failed = true;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub(crate) fn forms_equal(&mut self, label: &str, a: &SparseForm, b: &SparseForm) {
        let diff = if a.degree() != b.degree() { None } else { a.first_difference(b) };
        let ok = a.degree() == b.degree() && diff.is_none();
        self.fail_with(label, ok, || match diff {
            Some((blade, x, y)) => format!("{label}: blade {blade} has {x} vs {y}"),
            None => format!("{label}: degree {} vs {}", a.degree(), b.degree()),
        });
    }

    pub(crate) fn note(&mut self, s: String) {
        self.details.push(s);
    }
}

pub(crate) fn run(name: &str, body: impl FnOnce(&mut Checks) -> Result<()>) -> IdentityReport {
    let start = Instant::now();
    let mut c = Checks::default();
    if let Err(e) = body(&mut c) {
        c.failed = true;
        c.witness.get_or_insert_with(|| format!("error: {e}"));
    }
    IdentityReport {
        name: name.to_string(),
        pass: !c.failed,
        witness: c.witness,
        details: c.details,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn gi(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

/// Regenerates each table and compares it with its golden file, byte for byte and entry by entry.
/// Missing or unparsable golden files are errors rather than failed reports.
pub fn verify_tables(dir: &Path) -> Result<Vec<IdentityReport>> {
    let mut reports = Vec::new();
    for spec in &TABLES {
        let file = format!("{}.jsonl", spec.name);
        let golden = read_golden(dir, &file)?;
        let parsed = parse_table(spec.kind, &golden, matrix_dim(spec.name))
            .map_err(|e| Error::Golden { name: file.clone(), reason: e.to_string() })?;
        reports.push(run(spec.name, |c| {
            let built = build_table(spec.name)?;
            let text = render_table(&built)?;
            let first_line = text.lines().zip(golden.lines()).position(|(a, b)| a != b);
            c.fail_with("byte-identical to golden", text == golden, || match first_line {
                Some(i) => format!("line {} differs", i + 1),
                None => format!("{} lines vs {}", text.lines().count(), golden.lines().count()),
            });
            let mismatch = match (&built, &parsed) {
                (Table::Matrices(a), Table::Matrices(b)) => {
                    first_mismatch(a, b, |x, y| x == y)
                }
                (Table::RealForms(a), Table::RealForms(b)) | (Table::ComplexForms(a), Table::ComplexForms(b)) => {
                    first_mismatch(a, b, |x, y| x == y)
                }
                _ => Some("table kind".to_string()),
            };
            c.fail_with("golden entries equal constructors", mismatch.is_none(), || {
                format!("entry {}", mismatch.clone().unwrap_or_default())
            });
            c.note(format!("{} entries", text.lines().count()));
            Ok(())
        }));
    }
    reports.push(verify_errata(dir)?);
    Ok(reports)
}

fn first_mismatch<T>(a: &[(String, T)], b: &[(String, T)], eq: impl Fn(&T, &T) -> bool) -> Option<String> {
    if a.len() != b.len() {
        return Some(format!("count {} vs {}", a.len(), b.len()));
    }
    a.iter().zip(b).find(|((na, xa), (nb, xb))| na != nb || !eq(xa, xb)).map(|((na, _), _)| na.clone())
}

/// Checks the curated list of printed coefficients that disagree with the computed tables:
/// every listed coefficient must be the computed one with its sign reversed.
pub fn verify_errata(dir: &Path) -> Result<IdentityReport> {
    let text = read_golden(dir, ERRATA_FILE)?;
    let entries: Vec<ErrataEntry> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Golden { name: ERRATA_FILE.into(), reason: e.to_string() })?;
    Ok(run("errata", |c| {
        let mut by_entry: std::collections::BTreeMap<String, usize> = Default::default();
        for e in &entries {
            let Table::ComplexForms(forms) = build_table(&e.table)? else {
                c.check(&format!("{} is a complex table", e.table), false);
                continue;
            };
            let f = forms
                .iter()
                .find(|(n, _)| *n == e.entry)
                .ok_or_else(|| Error::Golden { name: ERRATA_FILE.into(), reason: format!("no entry {}", e.entry) })?;
            let doubled = ComplexBladeView::from_real(&f.1).scale(&gi(2));
            let computed = doubled.coefficient(&e.dz, &e.dzbar);
            let printed = parse_gaussian(&e.printed)?;
            let label = format!("{} {:?}/{:?}", e.entry, e.dz, e.dzbar);
            c.fail_with(&label, computed.to_string() == e.computed && printed == -&computed, || {
                format!("{label}: computed {computed}, listed {} / printed {}", e.computed, e.printed)
            });
            *by_entry.entry(e.entry.clone()).or_default() += 1;
        }
        c.note(format!("{} printed coefficients differ from the computed tables by sign", entries.len()));
        for (k, v) in by_entry {
            c.note(format!("{k}: {v}"));
        }
        Ok(())
    }))
}

fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    // Display form: "a", "bi", "a+bi", "a-bi".
    let t = s.trim();
    if let Some(body) = t.strip_suffix('i') {
        let split = body.char_indices().skip(1).filter(|(_, ch)| *ch == '+' || *ch == '-').map(|(i, _)| i).last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x.trim_start_matches('+'),
        };
        return Ok(GaussianRational::new(re.parse()?, im.parse()?));
    }
    Ok(GaussianRational::real(t.parse()?))
}

/// τ₂(ψ^C) = 0, τ₂(ψ^D) = −3ω², and every step of the split of τ₂(ψ^D).
pub fn verify_theorem_tau() -> IdentityReport {
    run("theorem-tau", |c| {
        let tc = tau2(psi_c());
        c.check("tau2(psi^C) = 0", tc.is_zero());
        let w2 = omega().wedge(omega())?;
        let td = tau2(psi_d());
        c.forms_equal("tau2(psi^D) = -3 omega^2", &td, &w2.scale(&gi(-3)));
        let d = tau2_decomposition(psi_d())?;
        for step in &d.checks {
            c.check(&step.name, step.pass);
        }
        for claim in &d.printed_claims {
            c.note(format!(
                "literal claim \"{}\" {}: {}",
                claim.name,
                if claim.holds { "holds" } else { "does not hold" },
                claim.note
            ));
        }
        let counts: Vec<String> = d.term_counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        c.note(format!("term counts: {}", counts.join(", ")));
        Ok(())
    })
}

/// Φ₉ = τ₄(ψ^C)/360: exact divisibility, golden freeze and spin(9) invariance.
pub fn verify_phi_spin9(dir: &Path) -> Result<IdentityReport> {
    let golden = parse_form_lines(8, &read_golden(dir, PHI9_FILE)?)
        .map_err(|e| Error::Golden { name: PHI9_FILE.into(), reason: e.to_string() })?;
    Ok(run("phi-spin9", |c| {
        let t = tau4(psi_c());
        c.check("tau4(psi^C) != 0", !t.is_zero());
        c.forms_equal("tau4(psi^C) = minor-determinant oracle", &t, &tau4_minor_oracle(psi_c()));
        let content = integer_content(&t);
        let divisible = content.as_ref().is_some_and(|g| (g % PHI9_DIVISOR) == 0.into());
        c.check("every coefficient divisible by 360", divisible);
        if let Some(g) = content {
            c.note(format!("gcd of coefficients = {g}"));
        }
        let phi = t.scale_rational(&Rational::new(1, PHI9_DIVISOR));
        c.check("degree 8", phi.degree() == 8);
        c.note(format!("{} terms", phi.nnz()));
        c.forms_equal("equals golden", &phi, &golden);
        let mut failing = None;
        for a in 1..=9 {
            for b in a + 1..=9 {
                if failing.is_none() && !lie_derivation(&spin9_pair(a, b)?, &phi)?.is_zero() {
                    failing = Some((a, b));
                }
            }
        }
        c.fail_with("annihilated by the 36 spin(9) derivations", failing.is_none(), || {
            format!("J_{}{} moves Phi", failing.unwrap().0, failing.unwrap().1)
        });
        Ok(())
    }))
}

/// Φ₁₀ = τ₄(ψ^D): oracle agreement, golden fingerprint, invariance, independence from ω⁴.
pub fn verify_phi_spin10(dir: &Path) -> Result<IdentityReport> {
    let golden: Phi10Summary = serde_json::from_str(&read_golden(dir, PHI10_FILE)?)
        .map_err(|e| Error::Golden { name: PHI10_FILE.into(), reason: e.to_string() })?;
    Ok(run("phi-spin10", |c| {
        let phi = phi_spin10();
        c.check("Phi != 0", !phi.is_zero());
        c.note(format!("{} terms", phi.nnz()));
        c.forms_equal("tau4(psi^D) = minor-determinant oracle", phi, &tau4_minor_oracle(psi_d()));
        let summary = phi10_summary(phi);
        c.fail_with("fingerprint equals golden", summary == golden, || {
            format!("sha256 {} vs golden {}", summary.sha256, golden.sha256)
        });
        let mut generators = jd_realified()?;
        generators.push((vec![], jfrak()));
        let mut failing = None;
        for (ix, m) in &generators {
            if failing.is_none() && !lie_derivation(m, phi)?.is_zero() {
                failing = Some(ix.clone());
            }
        }
        c.fail_with("annihilated by the 45 realified spin(10) derivations and the complex structure", failing.is_none(), || {
            format!("generator {:?} moves Phi", failing.clone().unwrap_or_default())
        });
        let w4 = omega().wedge_power(4)?;
        let as_vec = |f: &SparseForm| -> SparseVec { f.terms_sorted().into_iter().map(|(b, x)| (b.0 as usize, x.clone())).collect() };
        let rank = rank_of_vectors(&[as_vec(phi), as_vec(&w4)]);
        c.check("rank of {Phi, omega^4} is 2", rank == 2);
        Ok(())
    }))
}

/// The τ₄ split on the slice where the primed coordinates vanish.
pub fn verify_restriction_identity() -> IdentityReport {
    run("restriction", |c| {
        let r = psi_d().restrict(Q8_KILL);
        let vanishing = (1..=8).filter(|&b| !r.get(0, b).is_zero()).collect::<Vec<_>>();
        c.fail_with("psi_0b| = 0 for b = 1..8", vanishing.is_empty(), || format!("psi_0{} survives", vanishing[0]));
        let mut expected = SparseForm::zero(2);
        for a in 0..8 {
            let m = ComplexBladeView::monomial(&[Cov::Dz(a), Cov::DzBar(a)], GaussianRational::imag(Rational::new(1, 2)))?;
            expected.add_assign(m.form())?;
        }
        let expected = ComplexBladeView::from_complex_form(expected).to_real();
        c.forms_equal("psi_09| = (i/2) sum dz dzbar", r.get(0, 9), &expected);
        let w_r = omega().restrict(Q8_KILL);
        c.forms_equal("psi_09| = omega|", r.get(0, 9), &w_r);
        let alpha9 = (1..=8).filter(|&a| !r.get(a, 9).is_zero()).collect::<Vec<_>>();
        c.fail_with("psi_a9| = 0 for a = 1..8", alpha9.is_empty(), || format!("psi_{}9 survives", alpha9[0]));

        let lhs = tau4(&r);
        let inner = tau4(&r.principal(&(1..=8).collect::<Vec<_>>())?);
        let mut cross = SparseForm::zero(8);
        for a in 1..=8 {
            for b in a + 1..=8 {
                let p = r.get(a, b).wedge(r.get(0, 9))?;
                cross.add_assign(&p.wedge(&p)?)?;
            }
        }
        c.forms_equal("tau4(psi^D|) = tau4((psi_ab)_1..8|) + sum (psi_ab psi_09)^2|", &lhs, &inner.add(&cross)?);
        c.forms_equal("sum (psi_ab psi_09)^2| = -4 (omega|)^4", &cross, &w_r.wedge_power(4)?.scale(&gi(-4)));
        c.note(format!("terms: lhs {}, inner {}, cross {}", lhs.nnz(), inner.nnz(), cross.nnz()));
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::default_golden_dir;

    #[test]
    fn gaussian_display_round_trip() {
        for (re, im) in [(0, 1), (1, 0), (-3, 2), (5, -7), (0, -1)] {
            let g = GaussianRational::new(Rational::new(re, 2), Rational::new(im, 3));
            assert_eq!(parse_gaussian(&g.to_string()).unwrap(), g);
        }
    }

    #[test]
    fn theorem_tau_passes() {
        let r = verify_theorem_tau();
        assert!(r.pass, "{:?}", r.witness);
        assert!(r.details.iter().any(|d| d.contains("does not hold")));
    }

    #[test]
    fn restriction_passes() {
        let r = verify_restriction_identity();
        assert!(r.pass, "{:?}", r.witness);
    }

    #[test]
    fn committed_tables_and_errata_verify() {
        let reports = verify_tables(&default_golden_dir()).unwrap();
        for r in &reports {
            assert!(r.pass, "{}: {:?}", r.name, r.witness);
        }
        let errata = reports.iter().find(|r| r.name == "errata").unwrap();
        assert!(errata.details.iter().any(|d| d.starts_with("56 ")));
    }
}
