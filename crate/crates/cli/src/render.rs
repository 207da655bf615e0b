//! Output documents: JSON, CSV and Markdown renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use eaqmds_core::engine::{Certificate, Verdict};
use eaqmds_core::tables::TableRow;
use eaqmds_core::{LemmaReport, LemmaStatus};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

pub const CSV_HEADER: [&str; 10] = ["n", "k", "d", "c", "q", "t", "m", "family", "defect", "status"];

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn csv_doc(rows: impl IntoIterator<Item = Vec<String>>, header: &[&str]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct TableDoc<'a> {
    table: u8,
    rows: &'a [TableRow],
}

pub fn table(which: u8, rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Json => json(&TableDoc { table: which, rows }),
        Format::Csv => csv_doc(
            rows.iter().map(|r| {
                let p = r.derived;
                vec![
                    p.n.to_string(),
                    p.k.to_string(),
                    p.d.to_string(),
                    p.c.to_string(),
                    r.q.to_string(),
                    r.t.to_string(),
                    r.m.to_string(),
                    r.family.to_string(),
                    r.derived_defect.to_string(),
                    r.status(),
                ]
            }),
            &CSV_HEADER,
        ),
        Format::Markdown => {
            let mut s = String::new();
            s.push_str("| Parameters | t | m | Listed | Defect (derived/listed) | Engine | Status |\n");
            s.push_str("|---|---|---|---|---|---|---|\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {}/{} | {} | {} |",
                    r.derived, r.t, r.m, r.listed, r.derived_defect, r.listed_defect, r.engine, r.status()
                );
            }
            s
        }
    }
}

fn cert_row(c: &Certificate) -> Vec<String> {
    let p = c.params;
    vec![
        p.n.to_string(),
        p.k.to_string(),
        p.d.to_string(),
        p.c.to_string(),
        p.q.to_string(),
        opt(c.inputs.t),
        opt(c.inputs.m),
        c.inputs.family.clone().unwrap_or_default(),
        c.defect.to_string(),
        match c.verdict {
            Verdict::Pass => "pass".into(),
            Verdict::Fail => "fail".into(),
        },
    ]
}

pub fn certificate(c: &Certificate, format: Format) -> String {
    match format {
        Format::Json => json(c),
        Format::Csv => csv_doc([cert_row(c)], &CSV_HEADER),
        Format::Markdown => {
            let mut s = format!("## {}\n\n", c.params);
            let _ = writeln!(s, "- |T| = {}, |T_ss| = {}, run = {}", c.sizes.t, c.sizes.t_ss, c.sizes.run);
            let _ = writeln!(s, "- defect = {}", c.defect);
            let _ = writeln!(s, "- distance: {:?}", c.distance_exactness);
            for w in &c.warnings {
                let _ = writeln!(s, "- warning: {w}");
            }
            s.push_str("\n| Check | Status | Detail |\n|---|---|---|\n");
            for ch in &c.checks {
                let _ = writeln!(s, "| {} | {:?} | {} |", ch.name, ch.status, md_cell(&ch.detail));
            }
            let _ = writeln!(s, "\nverdict: {:?}", c.verdict);
            s
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanSummary {
    pub total: usize,
    pub eaqmds_hits: usize,
    pub formula_agreements: usize,
    pub passed: usize,
}

impl ScanSummary {
    pub fn of(certs: &[Certificate]) -> Self {
        let agree = certs
            .iter()
            .filter(|c| {
                c.check("expected_match")
                    .is_some_and(|ch| ch.status == eaqmds_core::engine::CheckStatus::Pass)
            })
            .count();
        ScanSummary {
            total: certs.len(),
            eaqmds_hits: certs.iter().filter(|c| c.defect == 0).count(),
            formula_agreements: agree,
            passed: certs.iter().filter(|c| c.verdict == Verdict::Pass).count(),
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} certificates, {} EAQMDS (defect 0), {} matching the closed form, {} passed",
            self.total, self.eaqmds_hits, self.formula_agreements, self.passed
        )
    }
}

#[derive(Serialize)]
struct ScanDoc<'a> {
    certificates: &'a [Certificate],
    summary: ScanSummary,
}

pub fn scan(certs: &[Certificate], format: Format) -> String {
    let summary = ScanSummary::of(certs);
    match format {
        Format::Json => json(&ScanDoc { certificates: certs, summary }),
        Format::Csv => csv_doc(certs.iter().map(cert_row), &CSV_HEADER),
        Format::Markdown => {
            let mut s = String::from("| Parameters | t | m | Family | Defect | Verdict |\n|---|---|---|---|---|---|\n");
            for c in certs {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {:?} |",
                    c.params,
                    opt(c.inputs.t),
                    opt(c.inputs.m),
                    c.inputs.family.as_deref().unwrap_or(""),
                    c.defect,
                    c.verdict
                );
            }
            let _ = writeln!(s, "\n{}", summary.line());
            s
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LemmaSummary {
    pub reports: usize,
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
}

impl LemmaSummary {
    pub fn of(reports: &[LemmaReport]) -> Self {
        let count = |s| reports.iter().filter(|r| r.status == s).count();
        LemmaSummary {
            reports: reports.len(),
            pass: count(LemmaStatus::Pass),
            fail: count(LemmaStatus::Fail),
            vacuous: count(LemmaStatus::Vacuous),
        }
    }
}

#[derive(Serialize)]
struct LemmaDoc<'a> {
    reports: &'a [LemmaReport],
    summary: LemmaSummary,
}

pub const LEMMA_CSV_HEADER: [&str; 8] = ["lemma", "q", "t", "m", "n", "cases", "counterexamples", "status"];

fn status_str(s: LemmaStatus) -> &'static str {
    match s {
        LemmaStatus::Pass => "pass",
        LemmaStatus::Fail => "fail",
        LemmaStatus::Vacuous => "vacuous",
    }
}

pub fn lemmas(reports: &[LemmaReport], format: Format) -> String {
    let summary = LemmaSummary::of(reports);
    match format {
        Format::Json => json(&LemmaDoc { reports, summary }),
        Format::Csv => csv_doc(
            reports.iter().map(|r| {
                vec![
                    r.lemma.to_string(),
                    r.q.to_string(),
                    r.t.to_string(),
                    opt(r.m),
                    r.n.to_string(),
                    r.cases.to_string(),
                    r.counterexamples.len().to_string(),
                    status_str(r.status).to_string(),
                ]
            }),
            &LEMMA_CSV_HEADER,
        ),
        Format::Markdown => {
            let mut s = String::from("| Identity | q | t | m | n | Cases | Counterexamples | Status |\n|---|---|---|---|---|---|---|---|\n");
            for r in reports {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} | {} | {} |",
                    r.lemma,
                    r.q,
                    r.t,
                    opt(r.m),
                    r.n,
                    r.cases,
                    r.counterexamples.len(),
                    status_str(r.status)
                );
            }
            let _ = writeln!(
                s,
                "\n{} reports: {} pass, {} fail, {} vacuous",
                summary.reports, summary.pass, summary.fail, summary.vacuous
            );
            s
        }
    }
}
