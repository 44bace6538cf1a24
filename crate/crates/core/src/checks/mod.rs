//! The built-in certification checks and their runner.

mod defs_flat;
mod defs_hc;
mod defs_monge;
mod defs_rolling;

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use crate::catalog::RunMode;
use crate::error::{Error, Result};
use crate::linalg::Ledger;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Reported,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Reported => "REPORTED",
            Status::Fail => "FAIL",
        };
        write!(f, "{}", s)
    }
}

/// One verified item inside a check.
#[derive(Clone, Debug)]
pub struct Item {
    pub name: String,
    pub ok: bool,
}

/// Accumulates the outcome of one check procedure.
#[derive(Default)]
pub struct Outcome {
    pub items: Vec<Item>,
    /// findings that flip the status to REPORTED (typo-policy evidence,
    /// open-question reconciliations)
    pub notes: Vec<String>,
    /// informational remarks that do not affect the status
    pub remarks: Vec<String>,
    pub residuals: Vec<String>,
    pub ledger: Ledger,
}

impl Outcome {
    pub fn item(&mut self, name: impl Into<String>, ok: bool) {
        self.items.push(Item {
            name: name.into(),
            ok,
        });
    }

    pub fn expect(&mut self, name: impl Into<String>, ok: bool, residual: Option<String>) {
        let name = name.into();
        if !ok {
            if let Some(r) = residual {
                self.residuals.push(format!("{}: {}", name, r));
            }
        }
        self.items.push(Item { name, ok });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn remark(&mut self, s: impl Into<String>) {
        self.remarks.push(s.into());
    }

    pub fn merge_ledger(&mut self, l: &Ledger) {
        self.ledger.merge(l);
    }

    fn status(&self) -> Status {
        if self.items.iter().any(|i| !i.ok) {
            Status::Fail
        } else if self.notes.is_empty() {
            Status::Pass
        } else {
            Status::Reported
        }
    }
}

pub struct CheckContext {
    /// restrict multi-mode checks to one mode; None runs every declared mode
    pub mode: Option<RunMode>,
    pub seed: u64,
}

pub struct CheckDef {
    pub id: &'static str,
    pub title: &'static str,
    /// short slug naming the certified claim
    pub anchor: &'static str,
    pub modes: &'static [RunMode],
    pub run: fn(&CheckContext) -> Result<Outcome>,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: String,
    pub title: String,
    pub status: Status,
    pub items: Vec<Item>,
    pub notes: Vec<String>,
    pub remarks: Vec<String>,
    pub residuals: Vec<String>,
    pub ledger: Vec<String>,
    pub millis: u128,
}

pub fn all_checks() -> Vec<CheckDef> {
    let mut v = Vec::new();
    v.extend(defs_flat::checks());
    v.extend(defs_hc::checks());
    v.extend(defs_rolling::checks());
    v.extend(defs_monge::checks());
    v.sort_by_key(|c| {
        c.id[1..]
            .parse::<u32>()
            .expect("check ids are C<number>")
    });
    v
}

pub fn find_check(id: &str) -> Result<CheckDef> {
    all_checks()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Run one check, optionally pinned to a mode.
pub fn run_check(id: &str, mode: Option<RunMode>, seed: u64) -> Result<CheckReport> {
    let def = find_check(id)?;
    if let Some(m) = mode {
        if !def.modes.contains(&m) {
            return Err(Error::ModeMismatch {
                check: id.to_string(),
                mode: m.to_string(),
            });
        }
    }
    let ctx = CheckContext { mode, seed };
    let t0 = Instant::now();
    let outcome = (def.run)(&ctx)?;
    Ok(CheckReport {
        id: def.id.to_string(),
        title: def.title.to_string(),
        status: outcome.status(),
        items: outcome.items,
        notes: outcome.notes,
        remarks: outcome.remarks,
        residuals: outcome.residuals,
        ledger: outcome.ledger.entries().map(|s| s.to_string()).collect(),
        millis: t0.elapsed().as_millis(),
    })
}

/// Run several checks in parallel; reports come back ordered by id.
pub fn run_many(
    ids: &[String],
    mode: Option<RunMode>,
    seed: u64,
) -> Result<Vec<CheckReport>> {
    let mut reports: Vec<CheckReport> = ids
        .par_iter()
        .map(|id| run_check(id, mode, seed))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by_key(|r| {
        r.id[1..]
            .parse::<u32>()
            .expect("check ids are C<number>")
    });
    Ok(reports)
}

/// Deterministic text rendering (no timings).
pub fn render_text(reports: &[CheckReport]) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for r in reports {
        let ok = r.items.iter().filter(|i| i.ok).count();
        writeln!(
            out,
            "{:<4} {:<8} {} ({}/{} items)",
            r.id,
            r.status.to_string(),
            r.title,
            ok,
            r.items.len()
        )
        .unwrap();
        for i in r.items.iter().filter(|i| !i.ok) {
            writeln!(out, "     item failed: {}", i.name).unwrap();
        }
        for n in &r.notes {
            writeln!(out, "     finding: {}", n).unwrap();
        }
        for n in &r.remarks {
            writeln!(out, "     remark: {}", n).unwrap();
        }
        for n in &r.residuals {
            writeln!(out, "     residual: {}", n).unwrap();
        }
        if !r.ledger.is_empty() {
            writeln!(out, "     assuming nonzero: {}", r.ledger.join(", ")).unwrap();
        }
    }
    let fails = reports.iter().filter(|r| r.status == Status::Fail).count();
    let reported = reports
        .iter()
        .filter(|r| r.status == Status::Reported)
        .count();
    writeln!(
        out,
        "{} checks: {} passed, {} reported, {} failed",
        reports.len(),
        reports.len() - fails - reported,
        reported,
        fails
    )
    .unwrap();
    out
}

/// One JSON object per line: id, status, residual_count, ledger, millis.
pub fn render_jsonl(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let obj = serde_json::json!({
            "id": r.id,
            "status": r.status.to_string(),
            "residual_count": r.residuals.len(),
            "items": r.items.iter().map(|i| serde_json::json!({
                "name": i.name,
                "ok": i.ok,
            })).collect::<Vec<_>>(),
            "notes": r.notes,
            "remarks": r.remarks,
            "ledger": r.ledger,
            "millis": r.millis,
        });
        out.push_str(&obj.to_string());
        out.push('\n');
    }
    out
}

// shared helpers for the check definitions -------------------------------

use crate::distgeo::{SpanResult};
use crate::expr::Expr;
use crate::exterior::DiffForm;
use crate::parse::format_expr;

pub(crate) fn expect_zero_form(out: &mut Outcome, name: &str, f: &DiffForm) {
    let ok = f.is_zero();
    let residual = if ok {
        None
    } else {
        f.comps.values().next().map(format_expr)
    };
    out.expect(name, ok, residual);
}

pub(crate) fn expect_zero(out: &mut Outcome, name: &str, e: &Expr) {
    let ok = e.is_zero();
    let residual = if ok { None } else { Some(format_expr(e)) };
    out.expect(name, ok, residual);
}

pub(crate) fn expect_span(
    out: &mut Outcome,
    name: &str,
    target: &DiffForm,
    basis: &[DiffForm],
) -> Result<Option<Vec<Expr>>> {
    match crate::distgeo::span_membership_forms(target, basis)? {
        SpanResult::InSpan {
            coefficients,
            ledger,
        } => {
            // membership holds off the coefficient singular loci
            for c in &coefficients {
                out.ledger.record_denominator(c);
            }
            out.merge_ledger(&ledger);
            out.item(name, true);
            Ok(Some(coefficients))
        }
        SpanResult::NotInSpan { residual, ledger } => {
            out.merge_ledger(&ledger);
            out.expect(name, false, Some(format_expr(&residual)));
            Ok(None)
        }
    }
}

pub(crate) fn expect_not_span(
    out: &mut Outcome,
    name: &str,
    target: &DiffForm,
    basis: &[DiffForm],
) -> Result<Option<Expr>> {
    match crate::distgeo::span_membership_forms(target, basis)? {
        SpanResult::InSpan { .. } => {
            out.expect(name, false, Some("unexpected membership".into()));
            Ok(None)
        }
        SpanResult::NotInSpan { residual, .. } => {
            out.item(name, true);
            Ok(Some(residual))
        }
    }
}
