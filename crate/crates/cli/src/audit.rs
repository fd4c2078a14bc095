use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::{execute, AuditArgs, Invocation};
use crate::report::{Claim, Report, Verdict};
use crate::{parse_invocation, CliError};

/// One row of the audit table: a claim produced by a subcommand.
#[derive(Debug, Clone)]
pub struct Row {
    pub id: String,
    pub argv: Vec<String>,
    pub claim: String,
}

fn cyclic(n: u32) -> String {
    format!(r#"{{"type":"cyclic","n":{n}}}"#)
}

fn cyclic_tower(p: u32, depth: u32) -> String {
    let levels: Vec<String> = (1..=depth).map(|d| cyclic(p.pow(d))).collect();
    format!(r#"{{"levels":[{}],"p":{p}}}"#, levels.join(","))
}

fn sl_zmod(n: u32, m: u32) -> String {
    format!(r#"{{"type":"sl","n":{n},"ring":{{"type":"zmod","m":{m}}}}}"#)
}

fn kernel_zmod(n: u32, m: u32) -> String {
    format!(r#"{{"type":"congruence_kernel","n":{n},"ring":{{"type":"zmod","m":{m}}},"level":1}}"#)
}

/// The fixed audit table, in report order.
pub fn registry() -> Vec<Row> {
    let mut rows = Vec::new();
    let mut add = |id: &str, argv: &[&str], claim: &str| {
        let argv: Vec<String> = argv.iter().map(|s| s.to_string()).collect();
        let argv = parse_invocation(&argv).map(|inv| inv.argv()).unwrap_or(argv);
        rows.push(Row { id: id.to_string(), argv, claim: claim.to_string() });
    };
    let laurent = ["laurent-report", "--p", "2", "--l-max", "7", "--graded-max", "8"];
    add("laurent/orders", &laurent, "orders-listed");
    add("laurent/band-transitions", &laurent, "band-transitions");
    add("laurent/limit", &laurent, "limit-Zp");
    add("laurent/coefficients", &laurent, "coefficients");
    add("laurent/vandermonde", &laurent, "vandermonde");
    add("laurent/char-zero", &laurent, "char-zero");
    for l in 1..=4 {
        add(&format!("laurent/ideal-l{l}"), &["ideal-audit"], &format!("ideal-l{l}"));
    }

    let (z3, z4, z6) = (cyclic(3), cyclic(4), cyclic(6));
    add("completion/z3-f2", &["completion-profile", "--group", &z3, "--field", "F2"], "cyclic-completion");
    add("completion/z3-q", &["completion-profile", "--group", &z3, "--field", "Q"], "trivial-completion");
    add("completion/z4-f2", &["completion-profile", "--group", &z4, "--field", "F2"], "cyclic-completion");
    add(
        "completion/z4-f2-powers",
        &["jpowers", "--group", &z4, "--field", "F2", "--max-l", "6"],
        "cyclic-powers",
    );
    add("completion/z6-f2", &["completion-profile", "--group", &z6, "--field", "F2"], "cyclic-completion");

    let z12 = cyclic(12);
    let v4 = format!(r#"{{"type":"product","factors":[{},{}]}}"#, cyclic(2), cyclic(2));
    let ut = |p: u32| format!(r#"{{"type":"unitriangular","n":3,"p":{p}}}"#);
    for (id, g, f) in [
        ("comparison/z12-p2", z12.clone(), "F2"),
        ("comparison/z12-p3", z12, "F3"),
        ("comparison/v4-p2", v4, "F2"),
        ("comparison/ut3-p2", ut(2), "F2"),
        ("comparison/ut3-p3", ut(3), "F3"),
    ] {
        add(id, &["completion-profile", "--group", &g, "--field", f], "p-completion");
    }

    for (n, p, m) in [(3, 2, 2), (3, 2, 3), (3, 3, 2)] {
        let (n, p, m) = (n.to_string(), p.to_string(), m.to_string());
        add(
            &format!("congruence/{n}-{p}-{m}"),
            &["series", "--kind", "congruence", "--n", &n, "--p", &p, "--m", &m],
            "lcs-equals-congruence",
        );
    }
    add(
        "congruence/nonsplit",
        &["nonsplit-cert", "--group", &kernel_zmod(3, 8), "--onto", &kernel_zmod(3, 4)],
        "nonsplit",
    );

    for (n, p, l) in [(3, 2, 2), (3, 2, 3), (2, 2, 3)] {
        let (n, p, l) = (n.to_string(), p.to_string(), l.to_string());
        add(
            &format!("truncated/{n}-{p}-{l}"),
            &["series", "--kind", "truncated-sl", "--n", &n, "--p", &p, "--l", &l],
            "lcs-equals-t-adic",
        );
    }

    add("section/sl3-z4", &["section-search", "--group", &sl_zmod(3, 4), "--onto", &sl_zmod(3, 2)], "no-splitting");

    add("cohomology/z4-f2", &["cohomology", "--group", &z4, "--p", "2", "--degree", "2"], "periodic");
    for (id, p, depth) in [("cohomology/tower-2", 2, 5), ("cohomology/tower-3", 3, 3)] {
        add(
            id,
            &["tower", "--tower", &cyclic_tower(p, depth), "--discrete-h1", "1", "--discrete-h2", "0"],
            "tower-comparison",
        );
    }

    for i in 1..=8 {
        add(&format!("graded/i{i}"), &laurent, &format!("graded-{i}"));
    }
    rows
}

fn selected(rows: Vec<Row>, filters: &[String]) -> Result<Vec<Row>, CliError> {
    if filters.is_empty() {
        return Ok(rows);
    }
    for f in filters {
        if !rows.iter().any(|r| matches(r, f)) {
            return Err(CliError::Usage(format!("--rows: `{f}` matches no audit row")));
        }
    }
    Ok(rows.into_iter().filter(|r| filters.iter().any(|f| matches(r, f))).collect())
}

fn matches(r: &Row, filter: &str) -> bool {
    r.id == filter || r.id.split('/').next() == Some(filter)
}

fn shell_quote(s: &str) -> String {
    if s.chars().all(|c| c.is_ascii_alphanumeric() || "-_./,".contains(c)) {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\'', r"'\''"))
    }
}

pub fn reproduce(argv: &[String]) -> String {
    let mut s = String::from("completion-lab");
    for a in argv {
        s.push(' ');
        s.push_str(&shell_quote(a));
    }
    s
}

type Outcome = Result<Report, String>;

pub fn audit_all(args: &AuditArgs, cap: usize) -> Result<Report, CliError> {
    let rows = selected(registry(), &args.rows)?;
    let mut distinct: Vec<&Vec<String>> = Vec::new();
    for r in &rows {
        if !distinct.contains(&&r.argv) {
            distinct.push(&r.argv);
        }
    }
    let start = Instant::now();
    let budget = args.budget_secs.map(Duration::from_secs);
    let outcomes: BTreeMap<&Vec<String>, Outcome> = distinct
        .par_iter()
        .map(|argv| {
            if budget.is_some_and(|b| start.elapsed() > b) {
                return (*argv, Err("time budget exhausted before the row started".to_string()));
            }
            let inv: Invocation = match parse_invocation(argv) {
                Ok(inv) => inv,
                Err(e) => return (*argv, Err(format!("bad registry entry: {e}"))),
            };
            (*argv, execute(&inv, cap).map_err(|e| e.to_string()))
        })
        .collect();

    let mut claims = Vec::with_capacity(rows.len());
    let mut table = Vec::with_capacity(rows.len());
    for r in &rows {
        let (text, verdict, detail) = match &outcomes[&r.argv] {
            Ok(report) => match report.claim(&r.claim) {
                Some(c) => (c.claim.clone(), c.verdict, c.detail.clone()),
                None => (r.claim.clone(), Verdict::Inconclusive, "the subcommand did not produce this claim".into()),
            },
            Err(e) => (r.claim.clone(), Verdict::Inconclusive, e.clone()),
        };
        table.push(json!({
            "id": r.id,
            "claim_id": r.claim,
            "claim": text,
            "verdict": verdict,
            "detail": detail,
            "reproduce": reproduce(&r.argv),
        }));
        claims.push(Claim::new(r.id.clone(), text, verdict, detail));
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for c in &claims {
        *counts.entry(c.verdict.label()).or_default() += 1;
    }
    Ok(Report {
        command: "audit-all".into(),
        input: json!({"rows": args.rows, "budget_secs": args.budget_secs}),
        results: json!({ "rows": table, "counts": counts }),
        verdicts: claims,
    })
}

/// Human-readable audit table.
pub fn audit_table(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", crate::report::SCHEMA, report.command);
    let rows = report.results["rows"].as_array().cloned().unwrap_or_default();
    for (c, row) in report.verdicts.iter().zip(&rows) {
        let _ = writeln!(out, "{:<12} {:<26} {}", c.verdict.label(), c.id, c.claim);
        if !c.detail.is_empty() {
            let _ = writeln!(out, "{:<12} {:<26} {}", "", "", c.detail);
        }
        if let Some(Value::String(cmd)) = row.get("reproduce") {
            let _ = writeln!(out, "{:<12} {:<26} $ {}", "", "", cmd);
        }
    }
    let counts: Vec<String> = report.results["counts"]
        .as_object()
        .map(|m| m.iter().map(|(k, v)| format!("{k} {v}")).collect())
        .unwrap_or_default();
    let _ = writeln!(out, "rows: {}  ({})", report.verdicts.len(), counts.join(", "));
    out
}
