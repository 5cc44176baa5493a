//! Report structures shared by the text and JSON output formats.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Report {
    pub invariants: Invariants,
    pub monodromy: MonodromySection,
    pub zeta: ZetaSection,
    pub checks: Vec<CheckResult>,
    pub warnings: Vec<String>,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    CheckFailed,
}

#[derive(Debug, Serialize)]
pub struct Invariants {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kodaira: Option<String>,
    pub g: u32,
    pub p: u64,
    pub e: u64,
    pub conductor: String,
    pub potential_toric_rank: u32,
    pub jumps: Vec<JumpOut>,
    pub elementary_divisors: Vec<String>,
    pub divisors: Vec<DivisorOut>,
    pub ord_samples: Vec<OrdSample>,
}

#[derive(Debug, Serialize)]
pub struct JumpOut {
    pub jump: String,
    pub multiplicity: u32,
    pub order: u64,
}

#[derive(Debug, Serialize)]
pub struct DivisorOut {
    pub alpha: u64,
    pub toric_rank: u32,
    pub abelian_rank: u32,
    pub components: u64,
    pub class: String,
}

#[derive(Debug, Serialize)]
pub struct OrdSample {
    pub d: u64,
    pub ord: u64,
}

#[derive(Debug, Serialize)]
pub struct MonodromySection {
    pub char_poly: String,
    pub cyclotomic_factors: Vec<CycloFactor>,
    pub hg_char_poly: String,
    pub conductor_order: u64,
}

#[derive(Debug, Serialize)]
pub struct CycloFactor {
    pub order: u64,
    pub multiplicity: u64,
}

#[derive(Debug, Serialize)]
pub struct ZetaSection {
    pub closed_form: String,
    pub degree: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pole: Option<PoleOut>,
    pub series_prefix: String,
}

#[derive(Debug, Serialize)]
pub struct PoleOut {
    pub location: String,
    pub order: u32,
    pub unique: bool,
    pub residue_leading_sign: i8,
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    fn tag(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skip",
        }
    }
}

/// One term of an expanded series, for the `expand` subcommand.
#[derive(Debug, Serialize)]
pub struct ExpandReport {
    pub truncation: u64,
    pub terms: Vec<TermOut>,
    pub rendered: String,
}

#[derive(Debug, Serialize)]
pub struct TermOut {
    pub degree: u64,
    pub coefficient: String,
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let inv = &report.invariants;
    if let Some(tag) = &inv.kodaira {
        let _ = writeln!(out, "kodaira type {tag}");
        let _ = writeln!(out);
    }
    let _ = writeln!(out, "reduction data");
    let _ = writeln!(out, "  g = {}, p = {}, e = {}", inv.g, inv.p, inv.e);
    let _ = writeln!(out, "  conductor c = {}", inv.conductor);
    let _ = writeln!(out, "  potential toric rank = {}", inv.potential_toric_rank);
    let jumps: Vec<String> = inv
        .jumps
        .iter()
        .map(|j| format!("{} (m = {})", j.jump, j.multiplicity))
        .collect();
    let _ = writeln!(out, "  jumps: {}", jumps.join(", "));
    let _ = writeln!(
        out,
        "  elementary divisors: {}",
        inv.elementary_divisors.join(", ")
    );
    let _ = writeln!(out, "  divisors:");
    for d in &inv.divisors {
        let _ = writeln!(
            out,
            "    d = {}: t = {}, a = {}, phi = {}, class = {}",
            d.alpha, d.toric_rank, d.abelian_rank, d.components, d.class
        );
    }
    let ords: Vec<String> = inv
        .ord_samples
        .iter()
        .map(|s| format!("{}:{}", s.d, s.ord))
        .collect();
    let _ = writeln!(out, "  ord(d) samples: {}", ords.join(" "));

    let m = &report.monodromy;
    let _ = writeln!(out);
    let _ = writeln!(out, "tame monodromy");
    let _ = writeln!(out, "  P(t) = {}", m.char_poly);
    let factors: Vec<String> = m
        .cyclotomic_factors
        .iter()
        .map(|f| {
            if f.multiplicity == 1 {
                format!("Phi_{}", f.order)
            } else {
                format!("Phi_{}^{}", f.order, f.multiplicity)
            }
        })
        .collect();
    let _ = writeln!(out, "  cyclotomic factorization: {}", factors.join(" * "));
    let _ = writeln!(out, "  H^g polynomial: {}", m.hg_char_poly);
    let _ = writeln!(out, "  conductor order in Q/Z: {}", m.conductor_order);

    let z = &report.zeta;
    let _ = writeln!(out);
    let _ = writeln!(out, "zeta function");
    let _ = writeln!(out, "  Z(T) = {}", z.closed_form);
    let _ = writeln!(out, "  degree = {}", z.degree);
    match &z.pole {
        Some(p) => {
            let _ = writeln!(
                out,
                "  pole: location {}, order {}, unique = {}, residue leading sign = {}",
                p.location, p.order, p.unique, p.residue_leading_sign
            );
        }
        None => {
            let _ = writeln!(out, "  pole: none at the conductor");
        }
    }
    let _ = writeln!(out, "  series: {}", z.series_prefix);

    let _ = writeln!(out);
    let _ = writeln!(out, "checks");
    for c in &report.checks {
        let _ = writeln!(out, "  [{}] {:<9} {}", c.status.tag(), c.name, c.detail);
    }

    if !report.warnings.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "warnings");
        for w in &report.warnings {
            let _ = writeln!(out, "  {w}");
        }
    }

    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "status: {}",
        match report.status {
            Status::Ok => "ok",
            Status::CheckFailed => "check-failed",
        }
    );
    out
}
