//! Command-line front end. [`run`] parses arguments, dispatches to the
//! engines and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use serde_json::{json, Value};

use crate::arith::{digit_sum_2, format_rational, nu2_int};
use crate::bordism::{
    bounding_verdict, check_almost_flat_consistency, integral_wu_numbers, spinc_index,
    sw_vanishing_report, wu_parity_check, ManifoldRecord, VerdictReport,
};
use crate::char_class::{
    multiplicative_class_chern, spin_wu_classes, spinc_wu_classes, SpinVariant,
};
use crate::error::{Error, Result};
use crate::group::{
    cohomology_with, holonomy_verdict_with, homology_with, named_group, parse_group_spec,
    recognize_2group, schur_multiplier_with, sylow_2, Budget, FiniteGroup,
};
use crate::series::{
    spin_normal_series, spin_tangential_series, spinc_coefficient_series, wu_normal_series,
    wu_tangential_series, TruncSeries,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

pub const MAX_SERIES_ORDER: usize = 512;
pub const MAX_CLASS_DEGREE: u32 = 40;
pub const MAX_DENOM_N: usize = 512;

#[derive(Debug, Parser)]
#[command(
    name = "wucalc",
    version,
    about = "Exact integral Wu class calculus and bordism verdicts"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of a characteristic series.
    Series {
        #[arg(value_enum)]
        name: SeriesName,
        /// Truncation order (largest power of x kept).
        #[arg(long)]
        order: usize,
    },
    /// Universal integral Wu classes up to a cohomological degree.
    WuClasses {
        #[arg(value_enum)]
        kind: ClassKind,
        #[arg(long)]
        degree: u32,
    },
    /// Compares the 2-adic valuation of the denominator of a_n with n - s_2(n).
    DenomCheck {
        #[arg(long)]
        max_n: usize,
    },
    /// Integral spin^c Wu numbers of a characteristic-number record and their parities.
    WuNumbers { record: String },
    /// Consistency checks and bounding verdict for a characteristic-number record.
    Verdict { record: String },
    /// Integral homology and cohomology of a finite group.
    Group {
        /// Named group (e.g. `cyclic:8`, `quaternion:16`) or path to a JSON table.
        group: String,
        #[arg(long, value_name = "N")]
        homology: Vec<usize>,
        #[arg(long, value_name = "N")]
        cohomology: Vec<usize>,
        /// Schur multiplier H_2(G).
        #[arg(long)]
        schur: bool,
        /// Sylow 2-subgroup, its type and multiplier.
        #[arg(long)]
        sylow: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Bounding verdict from the holonomy group.
    Holonomy {
        group: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    F,
    H,
    #[value(name = "g")]
    LowerG,
    #[value(name = "G")]
    UpperG,
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

impl SeriesName {
    fn label(self) -> &'static str {
        match self {
            SeriesName::F => "f",
            SeriesName::H => "h",
            SeriesName::LowerG => "g",
            SeriesName::UpperG => "G",
            SeriesName::A => "A",
            SeriesName::B => "B",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassKind {
    SpinTangential,
    SpinNormal,
    Spinc,
    Complex,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Largest group order for H_1, H_2 and the Sylow subgroup.
    #[arg(long, env = "WUCALC_MAX_ORDER")]
    pub max_order: Option<usize>,
    /// Largest group order for H_3.
    #[arg(long, env = "WUCALC_MAX_ORDER_H3")]
    pub max_order_h3: Option<usize>,
    /// Largest group order for the direct cochain computation of H^3.
    #[arg(long, env = "WUCALC_MAX_ORDER_COCHAIN_H3")]
    pub max_order_cochain_h3: Option<usize>,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget {
            max_order: self.max_order.unwrap_or(d.max_order),
            max_order_degree3: self.max_order_h3.unwrap_or(d.max_order_degree3),
            max_order_cochain3: self.max_order_cochain_h3.unwrap_or(d.max_order_cochain3),
        }
    }
}

/// Outcome of a command: a JSON document, its text rendering and the exit code.
struct Output {
    json: Value,
    text: String,
    code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeBudget(_) => EXIT_BUDGET,
        Error::Precondition(_) => EXIT_HYPOTHESIS,
        Error::CrossCheck(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(output) => {
            let written = match cli.format {
                Format::Json => writeln!(out, "{}", to_canonical_json(&output.json)),
                Format::Text => writeln!(out, "{}", output.text.trim_end()),
            };
            if written.is_err() {
                return EXIT_INTERNAL;
            }
            output.code
        }
        Err(e) => {
            let code = exit_code(&e);
            match cli.format {
                Format::Json => {
                    let doc = json!({"error": e.to_string(), "exit_code": code});
                    let _ = writeln!(err, "{}", to_canonical_json(&doc));
                }
                Format::Text => {
                    let _ = writeln!(err, "error: {e}");
                }
            }
            code
        }
    }
}

/// Pretty-printed JSON with object keys in sorted order.
pub fn to_canonical_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Series { name, order } => run_series(*name, *order),
        Command::WuClasses { kind, degree } => run_wu_classes(*kind, *degree),
        Command::DenomCheck { max_n } => run_denom_check(*max_n),
        Command::WuNumbers { record } => run_wu_numbers(&load_record(record)?),
        Command::Verdict { record } => run_verdict(&load_record(record)?),
        Command::Group {
            group,
            homology,
            cohomology,
            schur,
            sylow,
            budget,
        } => {
            let g = load_group(group)?;
            run_group(
                group,
                &g,
                homology,
                cohomology,
                *schur,
                *sylow,
                &budget.budget(),
            )
        }
        Command::Holonomy { group, budget } => {
            run_holonomy(group, &load_group(group)?, &budget.budget())
        }
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn load_record(path: &str) -> Result<ManifoldRecord> {
    let text = read_file(path)?;
    ManifoldRecord::from_json(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{path}: {msg}")),
        other => other,
    })
}

fn load_group(arg: &str) -> Result<FiniteGroup> {
    if Path::new(arg).is_file() {
        let text = read_file(arg)?;
        FiniteGroup::from_json(&text)
    } else {
        named_group(&parse_group_spec(arg)?)
    }
}

pub fn series_by_name(name: SeriesName, order: usize) -> TruncSeries {
    match name {
        SeriesName::F => wu_normal_series(order),
        SeriesName::H => wu_tangential_series(order),
        SeriesName::LowerG => spin_normal_series(order),
        SeriesName::UpperG => spin_tangential_series(order),
        SeriesName::A => spinc_coefficient_series(order).0,
        SeriesName::B => spinc_coefficient_series(order).1,
    }
}

fn run_series(name: SeriesName, order: usize) -> Result<Output> {
    if order > MAX_SERIES_ORDER {
        return Err(Error::SizeBudget(format!(
            "series order {order} exceeds {MAX_SERIES_ORDER}"
        )));
    }
    let s = series_by_name(name, order);
    let coeffs = s.to_strings();
    Ok(Output {
        text: coeffs.join(", "),
        json: json!({"series": name.label(), "order": order, "coefficients": coeffs}),
        code: EXIT_OK,
    })
}

fn run_wu_classes(kind: ClassKind, degree: u32) -> Result<Output> {
    if degree > MAX_CLASS_DEGREE {
        return Err(Error::SizeBudget(format!(
            "degree {degree} exceeds {MAX_CLASS_DEGREE}"
        )));
    }
    let (label, rows): (&str, Vec<(u32, String, Value)>) = match kind {
        ClassKind::SpinTangential | ClassKind::SpinNormal => {
            let (label, variant) = if kind == ClassKind::SpinTangential {
                ("mu", SpinVariant::Tangential)
            } else {
                ("nu", SpinVariant::Normal)
            };
            let classes = spin_wu_classes(4 * (degree / 4), variant)?;
            (
                label,
                classes
                    .iter()
                    .map(|p| (p.degree(), p.to_string(), p.to_json()))
                    .collect(),
            )
        }
        ClassKind::Spinc => {
            let classes = spinc_wu_classes(degree)?;
            (
                "mu",
                classes
                    .iter()
                    .map(|p| (p.degree(), p.to_string(), p.to_json()))
                    .collect(),
            )
        }
        ClassKind::Complex => {
            let classes = multiplicative_class_chern(
                &wu_tangential_series(((degree / 2) as usize).max(1)),
                degree,
            )?;
            (
                "w",
                classes
                    .iter()
                    .map(|p| (p.degree, p.to_string(), p.to_json()))
                    .collect(),
            )
        }
    };
    let text = rows
        .iter()
        .map(|(d, t, _)| {
            if *d == 0 {
                t.clone()
            } else {
                format!("{label}_{d} = {t}")
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    let kind_name = kind
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Ok(Output {
        text,
        json: json!({"kind": kind_name, "degree": degree, "classes": rows.into_iter().map(|r| r.2).collect::<Vec<_>>()}),
        code: EXIT_OK,
    })
}

fn run_denom_check(max_n: usize) -> Result<Output> {
    if max_n > MAX_DENOM_N {
        return Err(Error::SizeBudget(format!(
            "max-n {max_n} exceeds {MAX_DENOM_N}"
        )));
    }
    let (a, b) = spinc_coefficient_series(max_n.max(1));
    let mut rows = Vec::new();
    let mut lines = vec!["n\ta_n\tnu2(denom)\tbound\ttight".to_string()];
    let mut violations = 0usize;
    for n in 1..=max_n {
        let an = a.coeff(n);
        let val = nu2_int(an.denom())?;
        let bound = n as u64 - u64::from(digit_sum_2(n as u64));
        if val > bound {
            violations += 1;
        }
        let tight = val == bound;
        lines.push(format!(
            "{n}\t{}\t{val}\t{bound}\t{}",
            format_rational(&an),
            if tight { "tight" } else { "-" }
        ));
        rows.push(json!({
            "n": n, "a_n": format_rational(&an), "nu2_denominator": val, "bound": bound, "tight": tight,
        }));
    }
    let odd_b: Vec<usize> = (1..=max_n)
        .filter(|&k| !(b.coeff(k).is_integer() && b.coeff(k).numer().is_even()))
        .collect();
    lines.push(format!("bound violations: {violations}"));
    lines.push(if odd_b.is_empty() {
        format!("b_k even for 1 <= k <= {max_n}")
    } else {
        format!("b_k not even for k in {odd_b:?}")
    });
    let ok = violations == 0 && odd_b.is_empty();
    Ok(Output {
        text: lines.join("\n"),
        json: json!({"max_n": max_n, "rows": rows, "violations": violations, "b_not_even": odd_b, "ok": ok}),
        code: if ok { EXIT_OK } else { EXIT_HYPOTHESIS },
    })
}

fn report_json(r: &VerdictReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn run_wu_numbers(r: &ManifoldRecord) -> Result<Output> {
    let values = integral_wu_numbers(r)?;
    let parity = wu_parity_check(r)?;
    let mut lines: Vec<String> = values
        .iter()
        .map(|(p, v)| format!("wu{p} = {}", format_rational(v)))
        .collect();
    if values.is_empty() {
        lines.push("odd dimension: no integral Wu numbers".into());
    }
    lines.push(parity.to_string());
    let numbers: Vec<Value> = values
        .iter()
        .map(|(p, v)| json!({"partition": p.parts(), "value": format_rational(v)}))
        .collect();
    Ok(Output {
        text: lines.join("\n"),
        json: json!({"dim": r.dim, "wu_numbers": numbers, "parity": report_json(&parity)}),
        code: if parity.conclusion.is_failure() {
            EXIT_HYPOTHESIS
        } else {
            EXIT_OK
        },
    })
}

fn run_verdict(r: &ManifoldRecord) -> Result<Output> {
    let consistency = check_almost_flat_consistency(r);
    let verdict = bounding_verdict(r);
    let sw = sw_vanishing_report(r);
    let index = match spinc_index(r) {
        Ok(i) => json!({"value": format_rational(&i.value), "integral": i.integral}),
        Err(Error::Precondition(why)) => json!({"unavailable": why}),
        Err(e) => json!({"unavailable": e.to_string()}),
    };
    let index_text = match index.get("value") {
        Some(v) => format!(
            "spin^c index: {} ({})",
            v.as_str().unwrap_or_default(),
            if index["integral"] == Value::Bool(true) {
                "integral"
            } else {
                "not integral"
            }
        ),
        None => format!(
            "spin^c index not available: {}",
            index["unavailable"].as_str().unwrap_or_default()
        ),
    };
    let mut text = String::new();
    if !r.label.is_empty() {
        text.push_str(&format!("record: {}\n", r.label));
    }
    text.push_str(&format!("{index_text}\n\n{verdict}\n\n{sw}\n"));
    Ok(Output {
        text,
        json: json!({
            "dim": r.dim,
            "label": r.label,
            "consistency": report_json(&consistency),
            "spinc_index": index,
            "verdict": report_json(&verdict),
            "sw": report_json(&sw),
        }),
        code: if verdict.conclusion.is_failure() {
            EXIT_HYPOTHESIS
        } else {
            EXIT_OK
        },
    })
}

fn run_group(
    name: &str,
    g: &FiniteGroup,
    homology: &[usize],
    cohomology: &[usize],
    schur: bool,
    sylow: bool,
    budget: &Budget,
) -> Result<Output> {
    let mut lines = vec![format!(
        "group {name}: order {}, {}",
        g.order(),
        if g.is_abelian() {
            "abelian"
        } else {
            "non-abelian"
        }
    )];
    let mut doc = serde_json::Map::new();
    doc.insert("group".into(), name.into());
    doc.insert("order".into(), g.order().into());
    doc.insert("abelian".into(), g.is_abelian().into());
    let default_view = homology.is_empty() && cohomology.is_empty() && !schur && !sylow;
    let homology: Vec<usize> = if default_view {
        vec![1, 2]
    } else {
        homology.to_vec()
    };

    let mut h = serde_json::Map::new();
    for &n in &homology {
        let inv = homology_with(g, n, budget)?;
        lines.push(format!("H_{n} = {}", describe(&inv.to_string())));
        h.insert(
            n.to_string(),
            serde_json::to_value(&inv).expect("serializable"),
        );
    }
    if !h.is_empty() {
        doc.insert("homology".into(), Value::Object(h));
    }
    let mut c = serde_json::Map::new();
    for &n in cohomology {
        let inv = cohomology_with(g, n, budget)?;
        lines.push(format!("H^{n} = {}", describe(&inv.to_string())));
        c.insert(
            n.to_string(),
            serde_json::to_value(&inv).expect("serializable"),
        );
    }
    if !c.is_empty() {
        doc.insert("cohomology".into(), Value::Object(c));
    }
    if schur {
        let inv = schur_multiplier_with(g, budget)?;
        lines.push(format!("Schur multiplier = {}", describe(&inv.to_string())));
        doc.insert(
            "schur_multiplier".into(),
            serde_json::to_value(&inv).expect("serializable"),
        );
    }
    if sylow {
        let p = sylow_2(g)?;
        let kind = recognize_2group(&p.group)?;
        let mult = schur_multiplier_with(&p.group, budget)?;
        lines.push(format!(
            "Sylow 2-subgroup: order {}, {kind:?}, multiplier {}",
            p.group.order(),
            describe(&mult.to_string())
        ));
        doc.insert(
            "sylow_2".into(),
            json!({"order": p.group.order(), "kind": kind, "elements": p.embedding, "multiplier": mult}),
        );
    }
    Ok(Output {
        text: lines.join("\n"),
        json: Value::Object(doc),
        code: EXIT_OK,
    })
}

fn describe(invariants: &str) -> String {
    if invariants == "0" {
        "0 (trivial)".into()
    } else {
        invariants.into()
    }
}

fn run_holonomy(name: &str, g: &FiniteGroup, budget: &Budget) -> Result<Output> {
    let report = holonomy_verdict_with(g, budget)?;
    let mut lines = vec![
        format!("group {name}: order {}", report.group_order),
        format!(
            "Sylow 2-subgroup: order {}, {:?}, multiplier {}",
            report.sylow_order,
            report.sylow_kind,
            describe(&report.sylow_multiplier.to_string())
        ),
        format!(
            "spin^c route (odd-order multiplier): {}",
            if report.spinc_route {
                "applies"
            } else {
                "does not apply"
            }
        ),
        format!(
            "cyclic/quaternion route: {}",
            if report.df_route {
                "applies"
            } else {
                "does not apply"
            }
        ),
    ];
    lines.extend(report.notes.iter().map(|n| format!("note: {n}")));
    let both = report.spinc_route && report.df_route;
    lines.push(format!(
        "verdict: {}",
        match report.verdict {
            crate::group::HolonomyVerdict::Inconclusive => "inconclusive".to_string(),
            _ if both => "bounds (both routes)".to_string(),
            crate::group::HolonomyVerdict::BoundsSpincRoute => "bounds (spin^c route)".to_string(),
            crate::group::HolonomyVerdict::BoundsDfRoute =>
                "bounds (cyclic/quaternion route)".to_string(),
        }
    ));
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["group"] = name.into();
    Ok(Output {
        text: lines.join("\n"),
        json,
        code: EXIT_OK,
    })
}
