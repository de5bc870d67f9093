//! Instance documents and solve reports.
//!
//! Instances are TOML documents:
//!
//! ```toml
//! name = "example3"
//! m = 2
//! n = 5
//! A = [
//!   [7, 8, -1, 1, 3],
//!   [5, 6, -1, 2, 1],
//! ]
//! b = [26, 19]
//! c = [126, 141, -10, 5, 67]
//! ```
//!
//! Integers outside the 64-bit range may be written as decimal strings.

use std::fmt::{self, Write as _};
use std::ops::Range;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;
use toml::Spanned;

use crate::driver::{InfeasibilityEvidence, SolveReport, SolveStatus};
use crate::exact::{Mixed, Rational};
use crate::instance::{DualFormInstance, InstanceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{}", syntax_message(.line, .field, .message))]
    Syntax {
        line: Option<usize>,
        field: Option<String>,
        message: String,
    },
    #[error("line {line}: {field} has {found} entries, expected {expected}")]
    Dimension {
        line: usize,
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: A has rank {rank}, needs full row rank {m}")]
    Rank { line: usize, rank: usize, m: usize },
}

fn syntax_message(line: &Option<usize>, field: &Option<String>, message: &str) -> String {
    let mut out = String::new();
    if let Some(l) = line {
        let _ = write!(out, "line {l}: ");
    }
    if let Some(f) = field {
        let _ = write!(out, "field {f}: ");
    }
    out.push_str(message);
    out
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { line, .. } => *line,
            ParseError::Dimension { line, .. } | ParseError::Rank { line, .. } => Some(*line),
        }
    }

    pub fn field(&self) -> Option<&str> {
        match self {
            ParseError::Syntax { field, .. } => field.as_deref(),
            ParseError::Dimension { field, .. } => Some(field),
            ParseError::Rank { .. } => Some("A"),
        }
    }
}

struct Int(BigInt);

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(BigInt::from(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(BigInt::from(v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.trim()
                    .parse()
                    .map(Int)
                    .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        deserializer.deserialize_any(IntVisitor)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    name: Option<String>,
    m: Spanned<usize>,
    n: Spanned<usize>,
    #[serde(rename = "A")]
    a: Spanned<Vec<Spanned<Vec<Int>>>>,
    b: Spanned<Vec<Int>>,
    c: Spanned<Vec<Int>>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Key assigned on the given line, if the line looks like `key = ...`.
fn key_on_line(text: &str, line: usize) -> Option<String> {
    let l = text.lines().nth(line.checked_sub(1)?)?;
    let (key, _) = l.split_once('=')?;
    let key = key.trim();
    (!key.is_empty()
        && key
            .chars()
            .all(|ch| ch.is_ascii_alphanumeric() || ch == '_'))
    .then(|| key.to_string())
}

fn backticked(message: &str) -> Option<String> {
    let start = message.find('`')? + 1;
    let len = message[start..].find('`')?;
    Some(message[start..start + len].to_string())
}

fn syntax_error(text: &str, err: toml::de::Error) -> ParseError {
    let message = err.message().trim().to_string();
    let line = err.span().map(|s: Range<usize>| line_of(text, s.start));
    let field = if message.starts_with("missing field") || message.starts_with("unknown field") {
        backticked(&message)
    } else {
        line.and_then(|l| key_on_line(text, l))
    };
    ParseError::Syntax {
        line,
        field,
        message,
    }
}

fn check_len(
    text: &str,
    field: &str,
    span: Range<usize>,
    expected: usize,
    found: usize,
) -> Result<(), ParseError> {
    if expected == found {
        return Ok(());
    }
    Err(ParseError::Dimension {
        line: line_of(text, span.start),
        field: field.to_string(),
        expected,
        found,
    })
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<DualFormInstance, ParseError> {
    let doc: Document = toml::from_str(text).map_err(|e| syntax_error(text, e))?;
    let m = *doc.m.get_ref();
    let n = *doc.n.get_ref();
    if m == 0 {
        return Err(ParseError::Syntax {
            line: Some(line_of(text, doc.m.span().start)),
            field: Some("m".into()),
            message: "an instance needs at least one row".into(),
        });
    }
    let a_span = doc.a.span();
    let rows = doc.a.into_inner();
    check_len(text, "A", a_span.clone(), m, rows.len())?;
    let mut a_rows = Vec::with_capacity(m);
    for (k, row) in rows.into_iter().enumerate() {
        let span = row.span();
        let row = row.into_inner();
        check_len(text, &format!("A[{}]", k + 1), span, n, row.len())?;
        a_rows.push(row.into_iter().map(|x| x.0).collect());
    }
    let b_span = doc.b.span();
    let b: Vec<BigInt> = doc.b.into_inner().into_iter().map(|x| x.0).collect();
    check_len(text, "b", b_span, m, b.len())?;
    let c_span = doc.c.span();
    let c: Vec<BigInt> = doc.c.into_inner().into_iter().map(|x| x.0).collect();
    check_len(text, "c", c_span, n, c.len())?;
    let instance = DualFormInstance::new(a_rows, b, c).map_err(|e| match e {
        InstanceError::Rank { rank, m } => ParseError::Rank {
            line: line_of(text, a_span.start),
            rank,
            m,
        },
        other => ParseError::Syntax {
            line: None,
            field: None,
            message: other.to_string(),
        },
    })?;
    Ok(match doc.name {
        Some(name) => instance.with_name(name),
        None => instance,
    })
}

fn render_int(x: &BigInt) -> String {
    match i64::try_from(x) {
        Ok(v) => v.to_string(),
        Err(_) => format!("\"{x}\""),
    }
}

fn render_list(xs: &[BigInt]) -> String {
    let items: Vec<String> = xs.iter().map(render_int).collect();
    format!("[{}]", items.join(", "))
}

/// Canonical document for an instance; [`parse_instance`] reads it back
/// unchanged. Only the original columns are written.
pub fn render_instance(instance: &DualFormInstance) -> String {
    let n = instance.original_n();
    let mut out = String::new();
    if let Some(name) = instance.name() {
        let _ = writeln!(out, "name = {}", toml::Value::String(name.to_string()));
    }
    let _ = writeln!(out, "m = {}", instance.m());
    let _ = writeln!(out, "n = {n}");
    out.push_str("A = [\n");
    for row in instance.rows() {
        let _ = writeln!(out, "  {},", render_list(&row[..n]));
    }
    out.push_str("]\n");
    let _ = writeln!(out, "b = {}", render_list(instance.b()));
    let _ = writeln!(out, "c = {}", render_list(&instance.costs()[..n]));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

/// Result of comparing a solve against brute-force enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleCheck {
    Compared {
        /// `None` when the solver stopped at a cap and there is nothing to compare.
        agrees: Option<bool>,
        z_star: Option<BigInt>,
        lex_max: Option<Vec<BigInt>>,
        optimal_points: usize,
    },
    /// The oracle could not run, e.g. the box was too large.
    Failed(String),
}

impl OracleCheck {
    pub fn agrees(&self) -> Option<bool> {
        match self {
            OracleCheck::Compared { agrees, .. } => *agrees,
            OracleCheck::Failed(_) => None,
        }
    }
}

/// Extra context printed alongside a report.
#[derive(Debug, Clone, Default)]
pub struct ReportContext {
    pub instance_name: Option<String>,
    pub oracle: Option<OracleCheck>,
}

fn int_value(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integer literal"))
}

fn int_array(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

fn rational_value(q: &Rational) -> Value {
    json!({ "num": int_value(q.numer()), "den": int_value(q.denom()) })
}

fn rational_array(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(rational_value).collect())
}

fn opt<T>(x: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    x.map_or(Value::Null, f)
}

fn mixed_list(qs: &[Rational]) -> String {
    qs.iter()
        .map(|q| Mixed(q).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn int_tuple(xs: &[BigInt]) -> String {
    let items: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", items.join(", "))
}

/// Renders a report as text or JSON. JSON numbers are exact integers and
/// rationals are `{"num": …, "den": …}` objects.
pub fn emit_report(report: &SolveReport, format: ReportFormat, context: &ReportContext) -> String {
    match format {
        ReportFormat::Text => text_report(report, context),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&json_report(report, context))
                .expect("json serialization");
            s.push('\n');
            s
        }
    }
}

fn text_report(r: &SolveReport, context: &ReportContext) -> String {
    let mut out = String::new();
    if let Some(name) = &context.instance_name {
        let _ = writeln!(out, "instance: {name}");
    }
    let _ = writeln!(out, "mode: {}", r.mode.as_str());
    let _ = writeln!(out, "status: {}", r.status.as_str());
    if let Some(z) = &r.z_star {
        let _ = writeln!(out, "z* = {z}");
    }
    if let Some(y) = &r.y_star {
        let _ = writeln!(out, "y* = {}", int_tuple(y));
    }
    match r.infeasibility {
        Some(InfeasibilityEvidence::EmptyRelaxation) => {
            let _ = writeln!(out, "evidence: continuous relaxation is empty");
        }
        Some(InfeasibilityEvidence::PrimalUnbounded { cuts }) => {
            let _ = writeln!(out, "evidence: primal unbounded ({cuts} cut columns appended)");
        }
        None => {}
    }
    if let Some(kind) = r.limit {
        let _ = writeln!(out, "limit: {} cap reached", kind.as_str());
    }
    let _ = writeln!(
        out,
        "pivots: {} (phase one: {})",
        r.pivot_count, r.phase_one_pivots
    );
    let _ = write!(out, "cuts: {}", r.cut_count);
    if r.duplicates_skipped > 0 {
        let _ = write!(out, " ({} duplicates skipped)", r.duplicates_skipped);
    }
    out.push('\n');
    if !r.objective_trace.is_empty() {
        let _ = writeln!(out, "objective trace: {}", mixed_list(&r.objective_trace));
        let _ = writeln!(out, "optima: {}", mixed_list(&r.optimum_trace));
    }
    for (k, cut) in r.cut_trace.iter().enumerate() {
        let _ = writeln!(
            out,
            "cut {} (column {}, source y{}): {}",
            k + 1,
            cut.column + 1,
            cut.source_label,
            cut.inequality
        );
    }
    if r.status != SolveStatus::Optimal && !r.final_dual.is_empty() {
        let items: Vec<String> = r.final_dual.iter().map(|q| Mixed(q).to_string()).collect();
        let _ = writeln!(out, "last dual solution: ({})", items.join(", "));
    }
    if let Some(caveat) = &r.caveat {
        let _ = writeln!(out, "note: {caveat}");
    }
    match &context.oracle {
        Some(OracleCheck::Compared { agrees, z_star, .. }) => {
            let verdict = match agrees {
                Some(true) => "agrees",
                Some(false) => "DISAGREES",
                None => "not compared",
            };
            let z = z_star
                .as_ref()
                .map_or("infeasible".to_string(), ToString::to_string);
            let _ = writeln!(out, "oracle: {verdict} (oracle z* = {z})");
        }
        Some(OracleCheck::Failed(msg)) => {
            let _ = writeln!(out, "oracle: not run ({msg})");
        }
        None => {}
    }
    out
}

fn json_report(r: &SolveReport, context: &ReportContext) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "instance".into(),
        opt(context.instance_name.as_ref(), |s| Value::String(s.clone())),
    );
    obj.insert("mode".into(), r.mode.as_str().into());
    obj.insert("status".into(), r.status.as_str().into());
    obj.insert("y_star".into(), opt(r.y_star.as_deref(), int_array));
    obj.insert("z_star".into(), opt(r.z_star.as_ref(), int_value));
    obj.insert("pivot_count".into(), r.pivot_count.into());
    obj.insert("phase_one_pivots".into(), r.phase_one_pivots.into());
    obj.insert("cut_count".into(), r.cut_count.into());
    obj.insert("duplicates_skipped".into(), r.duplicates_skipped.into());
    obj.insert("objective_trace".into(), rational_array(&r.objective_trace));
    obj.insert("optimum_trace".into(), rational_array(&r.optimum_trace));
    obj.insert("final_dual".into(), rational_array(&r.final_dual));
    let cuts: Vec<Value> = r
        .cut_trace
        .iter()
        .map(|c| {
            json!({
                "column": c.column + 1,
                "source": c.source_label,
                "coefficients": int_array(&c.inequality.coeffs),
                "rhs": int_value(&c.inequality.rhs),
                "first_label": c.inequality.first_label,
                "inequality": c.inequality.to_string(),
                "r": int_array(&c.cut.r),
                "w": rational_array(&c.cut.w),
            })
        })
        .collect();
    obj.insert("cuts".into(), Value::Array(cuts));
    obj.insert(
        "limit".into(),
        opt(r.limit, |kind| {
            json!({
                "kind": kind.as_str(),
                "pivot_count": r.pivot_count,
                "cut_count": r.cut_count,
            })
        }),
    );
    obj.insert(
        "infeasibility".into(),
        opt(r.infeasibility, |e| match e {
            InfeasibilityEvidence::EmptyRelaxation => json!({ "evidence": "empty_relaxation" }),
            InfeasibilityEvidence::PrimalUnbounded { cuts } => {
                json!({ "evidence": "primal_unbounded", "cuts": cuts })
            }
        }),
    );
    obj.insert(
        "caveat".into(),
        opt(r.caveat.as_ref(), |s| Value::String(s.clone())),
    );
    let c = &r.checks;
    obj.insert(
        "checks".into(),
        json!({
            "lex_decrease": c.lex_decrease,
            "cut_fractional": c.cut_fractional,
            "cut_reduced_cost": c.cut_reduced_cost,
            "first_pivot_update": c.first_pivot_update,
            "first_pivot_dichotomy": c.first_pivot_dichotomy,
            "unique_improving": c.unique_improving,
            "basis_size": c.basis_size,
            "integrality": c.integrality,
            "optimality": c.optimality,
        }),
    );
    match &context.oracle {
        Some(OracleCheck::Compared {
            agrees,
            z_star,
            lex_max,
            optimal_points,
        }) => {
            obj.insert("oracle_agrees".into(), opt(*agrees, Value::Bool));
            obj.insert(
                "oracle".into(),
                json!({
                    "z_star": opt(z_star.as_ref(), int_value),
                    "lex_max": opt(lex_max.as_deref(), int_array),
                    "optimal_points": optimal_points,
                }),
            );
        }
        Some(OracleCheck::Failed(msg)) => {
            obj.insert("oracle_agrees".into(), Value::Null);
            obj.insert("oracle".into(), json!({ "error": msg }));
        }
        None => {}
    }
    Value::Object(obj)
}
