//! Re-derivation of the published level-raising tables from newform data.

use crate::audit::{
    congruence_audit, sign_char, sign_extract, sign_from_atkin_lehner, sign_from_eigenvalue, AuditCurve, CertificateStatus,
    CongruenceCertificate,
};
use crate::client::Client;
use crate::record::NewformRecord;
use crate::LmfdbError;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Default prime bound for congruence checks; the fixtures carry a_n to 100.
pub const DEFAULT_BOUND: u64 = 97;

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct TableFixture {
    pub eigenvalue_table: EigenvalueTable,
    pub sign_tables: Vec<SignTable>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct EigenvalueTable {
    pub anchor: String,
    pub provenance: String,
    pub curve: String,
    pub primes: Vec<u64>,
    pub rows: Vec<EigenvalueRow>,
    pub not_congruent: Vec<ExcludedForm>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct EigenvalueRow {
    pub class: String,
    pub level: u64,
    pub ap: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ExcludedForm {
    pub class: String,
    pub level: u64,
    pub dim: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct SignTable {
    pub anchor: String,
    pub provenance: String,
    pub curve: String,
    pub groups: Vec<SignGroup>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct SignGroup {
    pub level: u64,
    pub sign_primes: Vec<u64>,
    pub rows: Vec<SignRow>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct SignRow {
    pub class: String,
    pub signs: String,
    pub dim: usize,
}

impl TableFixture {
    pub fn bundled() -> Self {
        serde_json::from_str(include_str!("../fixtures/tables.json")).expect("bundled table fixture parses")
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, LmfdbError> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| LmfdbError::Table(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellCheck {
    pub p: u64,
    pub expected: i64,
    pub found: Option<i64>,
    /// a_p recomputed from the curve by point counting (base-curve rows).
    pub from_curve: Option<i64>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueRowResult {
    pub class: String,
    pub level: u64,
    pub matched_form: Option<String>,
    pub status: Option<CertificateStatus>,
    pub cells: Vec<CellCheck>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExcludedResult {
    pub class: String,
    pub level: u64,
    pub form: Option<String>,
    pub status: Option<CertificateStatus>,
    pub first_offending_prime: Option<u64>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueTableResult {
    pub anchor: String,
    pub curve: String,
    pub rows: Vec<EigenvalueRowResult>,
    pub not_congruent: Vec<ExcludedResult>,
    pub cells_checked: usize,
    pub cells_matching: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormSummary {
    pub label: String,
    pub dim: usize,
    pub signs: String,
    pub status: CertificateStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignKeyCheck {
    pub signs: String,
    pub dim: usize,
    pub in_table: usize,
    pub in_data: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupResult {
    pub level: u64,
    pub sign_primes: Vec<u64>,
    pub forms_at_level: usize,
    pub congruent: Vec<FormSummary>,
    pub keys: Vec<SignKeyCheck>,
    pub sign_combinations: Vec<String>,
    /// Primes exactly dividing the level, away from the conductor, where a_p(E) is odd.
    pub consistency_violations: Vec<String>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignTableResult {
    pub anchor: String,
    pub curve: String,
    pub groups: Vec<GroupResult>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableAuditReport {
    pub anchor: &'static str,
    pub bound: u64,
    pub eigenvalue_table: EigenvalueTableResult,
    pub sign_tables: Vec<SignTableResult>,
    pub certificates: Vec<CongruenceCertificate>,
    pub mismatches: Vec<String>,
    pub passed: bool,
}

impl TableAuditReport {
    pub fn group(&self, level: u64) -> Option<&GroupResult> {
        self.sign_tables.iter().flat_map(|t| &t.groups).find(|g| g.level == level)
    }

    pub fn certificate(&self, label: &str) -> Option<&CongruenceCertificate> {
        self.certificates.iter().find(|c| c.newform == label)
    }
}

struct Context<'a> {
    client: &'a Client,
    bound: u64,
    curves: BTreeMap<String, AuditCurve>,
    forms: BTreeMap<u64, Vec<NewformRecord>>,
    certs: BTreeMap<(String, String), CongruenceCertificate>,
}

impl Context<'_> {
    fn curve(&mut self, label: &str) -> Result<AuditCurve, LmfdbError> {
        if let Some(c) = self.curves.get(label) {
            return Ok(c.clone());
        }
        let c = AuditCurve::new(self.client.fetch_curve(label)?)?;
        self.curves.insert(label.to_string(), c.clone());
        Ok(c)
    }

    fn forms(&mut self, level: u64) -> Result<Vec<NewformRecord>, LmfdbError> {
        if let Some(f) = self.forms.get(&level) {
            return Ok(f.clone());
        }
        let f = self.client.fetch_newforms(level)?;
        self.forms.insert(level, f.clone());
        Ok(f)
    }

    /// Certificates for every form at the level, computed in parallel.
    fn certify(&mut self, e: &AuditCurve, forms: &[NewformRecord]) -> Result<Vec<CongruenceCertificate>, LmfdbError> {
        let todo: Vec<&NewformRecord> =
            forms.iter().filter(|g| !self.certs.contains_key(&(e.label.clone(), g.label.clone()))).collect();
        let bound = self.bound;
        let done: Vec<CongruenceCertificate> =
            todo.par_iter().map(|g| congruence_audit(e, g, bound)).collect::<Result<_, _>>()?;
        for c in done {
            self.certs.insert((e.label.clone(), c.newform.clone()), c);
        }
        Ok(forms.iter().map(|g| self.certs[&(e.label.clone(), g.label.clone())].clone()).collect())
    }
}

fn signs_of(g: &NewformRecord, primes: &[u64], mismatches: &mut Vec<String>) -> Result<String, LmfdbError> {
    let mut out = String::new();
    for &p in primes {
        let s = sign_extract(g, p)?;
        if let Ok(a) = sign_from_atkin_lehner(g, p) {
            if a != s {
                mismatches.push(format!("{}: trace sign {s} and Atkin-Lehner sign {a} disagree at {p}", g.label));
            }
        }
        if let Ok(b) = sign_from_eigenvalue(g, p) {
            if b != s {
                mismatches.push(format!("{}: trace sign {s} and eigenvalue sign {b} disagree at {p}", g.label));
            }
        }
        out.push(sign_char(s));
    }
    Ok(out)
}

fn eigenvalue_table(ctx: &mut Context, t: &EigenvalueTable, mismatches: &mut Vec<String>) -> Result<EigenvalueTableResult, LmfdbError> {
    let e = ctx.curve(&t.curve)?;
    let mut rows = Vec::new();
    let mut used: BTreeSet<String> = BTreeSet::new();
    for row in &t.rows {
        if row.ap.len() != t.primes.len() {
            return Err(LmfdbError::Table(format!("row {} has {} entries for {} primes", row.class, row.ap.len(), t.primes.len())));
        }
        let forms = ctx.forms(row.level)?;
        let certs = ctx.certify(&e, &forms)?;
        let score = |g: &NewformRecord| t.primes.iter().zip(&row.ap).filter(|(&p, &a)| g.trace(p as usize) == Some(a)).count();
        // rational forms, best agreement first, label order breaking ties
        let best = forms
            .iter()
            .zip(&certs)
            .filter(|(g, _)| g.dim == 1 && !used.contains(&g.label))
            .max_by(|(a, _), (b, _)| score(a).cmp(&score(b)).then(b.label.cmp(&a.label)));
        let from_curve = row.level == e.conductor;
        let mut cells = Vec::new();
        for (&p, &expected) in t.primes.iter().zip(&row.ap) {
            let found = best.and_then(|(g, _)| g.trace(p as usize));
            let counted = if from_curve { Some(e.ap(p)?) } else { None };
            let matches = found == Some(expected) && counted.map_or(true, |c| c == expected);
            if !matches {
                mismatches.push(format!("{} at p={p}: expected {expected}, found {found:?}, curve {counted:?}", row.class));
            }
            cells.push(CellCheck { p, expected, found, from_curve: counted, matches });
        }
        let status = best.map(|(_, c)| c.status);
        if let Some((g, _)) = best {
            used.insert(g.label.clone());
        }
        let congruent = status.is_some_and(|s| s == CertificateStatus::Certified);
        if !congruent {
            mismatches.push(format!("{}: not certified congruent to {} ({status:?})", row.class, t.curve));
        }
        let matches = congruent && cells.iter().all(|c| c.matches);
        rows.push(EigenvalueRowResult {
            class: row.class.clone(),
            level: row.level,
            matched_form: best.map(|(g, _)| g.label.clone()),
            status,
            cells,
            matches,
        });
    }
    let mut not_congruent = Vec::new();
    for ex in &t.not_congruent {
        let forms = ctx.forms(ex.level)?;
        let certs = ctx.certify(&e, &forms)?;
        let rest: Vec<_> = forms.iter().zip(&certs).filter(|(g, _)| g.dim == ex.dim && !used.contains(&g.label)).collect();
        let (form, status, first) = match rest.as_slice() {
            [(g, c)] => (Some(g.label.clone()), Some(c.status), c.first_offending_prime),
            _ => (None, None, None),
        };
        let matches = status == Some(CertificateStatus::Failed);
        if !matches {
            mismatches.push(format!("{}: expected exactly one remaining form that fails the audit, found {}", ex.class, rest.len()));
        }
        not_congruent.push(ExcludedResult { class: ex.class.clone(), level: ex.level, form, status, first_offending_prime: first, matches });
    }
    let cells_checked = rows.iter().map(|r| r.cells.len()).sum();
    let cells_matching = rows.iter().flat_map(|r| &r.cells).filter(|c| c.matches).count();
    let matches = rows.iter().all(|r| r.matches) && not_congruent.iter().all(|r| r.matches);
    Ok(EigenvalueTableResult {
        anchor: t.anchor.clone(),
        curve: t.curve.clone(),
        rows,
        not_congruent,
        cells_checked,
        cells_matching,
        matches,
    })
}

fn sign_group(ctx: &mut Context, e: &AuditCurve, group: &SignGroup, mismatches: &mut Vec<String>) -> Result<GroupResult, LmfdbError> {
    let forms = ctx.forms(group.level)?;
    let certs = ctx.certify(e, &forms)?;
    let mut congruent = Vec::new();
    let mut violations = Vec::new();
    for (g, c) in forms.iter().zip(&certs) {
        if !c.congruent() {
            continue;
        }
        let signs = signs_of(g, &group.sign_primes, mismatches)?;
        for p in lrlab_core::arith::primes_up_to(g.level) {
            if g.level % p == 0 && g.level % (p * p) != 0 && e.conductor % p != 0 && e.ap(p)?.rem_euclid(2) != 0 {
                violations.push(format!("{} at {p}", g.label));
            }
        }
        congruent.push(FormSummary { label: g.label.clone(), dim: g.dim, signs, status: c.status });
    }
    let mut table: BTreeMap<(String, usize), usize> = BTreeMap::new();
    for r in &group.rows {
        if r.signs.chars().count() != group.sign_primes.len() {
            return Err(LmfdbError::Table(format!("row {} has signs {:?} for primes {:?}", r.class, r.signs, group.sign_primes)));
        }
        *table.entry((r.signs.clone(), r.dim)).or_default() += 1;
    }
    let mut data: BTreeMap<(String, usize), usize> = BTreeMap::new();
    for f in &congruent {
        *data.entry((f.signs.clone(), f.dim)).or_default() += 1;
    }
    let all_keys: BTreeSet<_> = table.keys().chain(data.keys()).cloned().collect();
    let keys: Vec<SignKeyCheck> = all_keys
        .into_iter()
        .map(|k| SignKeyCheck {
            in_table: table.get(&k).copied().unwrap_or(0),
            in_data: data.get(&k).copied().unwrap_or(0),
            signs: k.0,
            dim: k.1,
        })
        .collect();
    for k in keys.iter().filter(|k| k.in_table != k.in_data) {
        mismatches.push(format!(
            "level {}: signs {} dim {}: {} in table, {} congruent forms",
            group.level, k.signs, k.dim, k.in_table, k.in_data
        ));
    }
    if !violations.is_empty() {
        mismatches.push(format!("level {}: a_p(E) odd at a Steinberg prime: {}", group.level, violations.join(", ")));
    }
    let sign_combinations: Vec<String> = congruent.iter().map(|f| f.signs.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let matches = keys.iter().all(|k| k.in_table == k.in_data) && violations.is_empty();
    Ok(GroupResult {
        level: group.level,
        sign_primes: group.sign_primes.clone(),
        forms_at_level: forms.len(),
        congruent,
        keys,
        sign_combinations,
        consistency_violations: violations,
        matches,
    })
}

/// Re-derives every table cell, sign row and certificate from newform data.
pub fn verify_table(client: &Client, fixture: &TableFixture, bound: u64) -> Result<TableAuditReport, LmfdbError> {
    let mut ctx = Context { client, bound, curves: BTreeMap::new(), forms: BTreeMap::new(), certs: BTreeMap::new() };
    let mut mismatches = Vec::new();
    let eigen = eigenvalue_table(&mut ctx, &fixture.eigenvalue_table, &mut mismatches)?;
    let mut sign_tables = Vec::new();
    for t in &fixture.sign_tables {
        let e = ctx.curve(&t.curve)?;
        let groups =
            t.groups.iter().map(|g| sign_group(&mut ctx, &e, g, &mut mismatches)).collect::<Result<Vec<_>, _>>()?;
        let matches = groups.iter().all(|g| g.matches);
        sign_tables.push(SignTableResult { anchor: t.anchor.clone(), curve: t.curve.clone(), groups, matches });
    }
    let passed = mismatches.is_empty() && eigen.matches && sign_tables.iter().all(|t| t.matches);
    Ok(TableAuditReport {
        anchor: "table-audit",
        bound,
        eigenvalue_table: eigen,
        sign_tables,
        certificates: ctx.certs.into_values().collect(),
        mismatches,
        passed,
    })
}
