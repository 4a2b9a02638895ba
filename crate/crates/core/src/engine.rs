//! Method registry, applicability checks, trace assembly and the
//! vedic-versus-traditional comparison runner.
//!
//! All frontends go through this module. The registry is built once and
//! never mutated, so every function here can be called from any thread.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical;
use crate::numeral::{DigitString, ExactValue};
use crate::run::{MethodError, MethodRun, MAX_ADD_OPERANDS};
use crate::trace::{LatentDisplay, Metrics, Pane, Trace};
use crate::{traditional, vedic};

/// Operand length guard applied unless overridden.
pub const DEFAULT_MAX_DIGITS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Add,
    Subtract,
    Multiply,
    Sqrt,
}

impl Operation {
    pub const ALL: [Operation; 4] = [
        Operation::Add,
        Operation::Subtract,
        Operation::Multiply,
        Operation::Sqrt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Operation::Add => "add",
            Operation::Subtract => "subtract",
            Operation::Multiply => "multiply",
            Operation::Sqrt => "sqrt",
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Operation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Operation::ALL
            .into_iter()
            .find(|op| op.as_str() == s)
            .ok_or_else(|| format!("unknown operation {s:?}; expected add, subtract, multiply or sqrt"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Vedic,
    Traditional,
}

impl Family {
    pub fn pane(self) -> Pane {
        match self {
            Family::Vedic => Pane::Vedic,
            Family::Traditional => Pane::Traditional,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.pane(), f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arity {
    pub min: usize,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MethodDescriptor {
    pub id: String,
    pub operation: Operation,
    pub family: Family,
    pub display_name: String,
    pub info_text: String,
    /// 1 = addition, 2 = multiplication and subtraction, 3 = square root.
    pub level: u8,
    pub operand_arity: Arity,
    pub constraints: Vec<String>,
}

type MethodFn = fn(&[DigitString]) -> Result<MethodRun, MethodError>;

struct Entry {
    descriptor: MethodDescriptor,
    run: MethodFn,
}

fn entry(
    id: &str,
    operation: Operation,
    family: Family,
    display_name: &str,
    info_text: &str,
    constraints: &[&str],
    run: MethodFn,
) -> Entry {
    let (level, operand_arity) = match operation {
        Operation::Add => (1, Arity { min: 2, max: MAX_ADD_OPERANDS }),
        Operation::Subtract | Operation::Multiply => (2, Arity { min: 2, max: 2 }),
        Operation::Sqrt => (3, Arity { min: 1, max: 1 }),
    };
    Entry {
        descriptor: MethodDescriptor {
            id: id.to_owned(),
            operation,
            family,
            display_name: display_name.to_owned(),
            info_text: info_text.to_owned(),
            level,
            operand_arity,
            constraints: constraints.iter().map(|c| (*c).to_owned()).collect(),
        },
        run,
    }
}

static REGISTRY: LazyLock<Vec<Entry>> = LazyLock::new(|| {
    let mut entries = vec![
        entry(
            "vedic.add.placevalue",
            Operation::Add,
            Family::Vedic,
            "Place-value addition",
            "Adds several numbers one place value at a time, starting from the units. \
             Each step totals the digits that share a place, keeps the units digit of that \
             total and passes the rest on to the next place.",
            &["2 to 10 non-negative whole numbers"],
            vedic::place_value_add,
        ),
        entry(
            "traditional.add.column",
            Operation::Add,
            Family::Traditional,
            "Column addition",
            "The familiar written method: line the numbers up on the right, add each column \
             from right to left and write any carry above the next column.",
            &["2 to 10 non-negative whole numbers"],
            traditional::column_add,
        ),
        entry(
            "vedic.multiply.crisscross",
            Operation::Multiply,
            Family::Vedic,
            "Vertically and crosswise (Urdhva-Tiryagbhyam)",
            "Multiplies two numbers with an equal number of digits. Each digit of the answer \
             comes from one column: multiply vertically and crosswise, add the products and \
             any carry, write the units digit and carry the rest, so the answer is produced \
             in one pass from right to left. Numbers of unequal length are handled by padding \
             the shorter one with zeros on the left, which is why some products are zero.",
            &[
                "exactly 2 non-negative whole numbers",
                "unequal lengths are padded with leading zeros",
            ],
            |ops| Ok(vedic::criss_cross_multiply(&ops[0], &ops[1])),
        ),
        entry(
            "traditional.multiply.long",
            Operation::Multiply,
            Family::Traditional,
            "Long multiplication",
            "Multiplies the top number by each digit of the bottom number to form shifted \
             partial products, then adds the partial products column by column.",
            &["exactly 2 non-negative whole numbers"],
            |ops| Ok(traditional::long_multiply(&ops[0], &ops[1])),
        ),
        entry(
            "vedic.subtract.complement",
            Operation::Subtract,
            Family::Vedic,
            "All from 9 and the last from 10 (Nikhilam)",
            "Subtracts by complement: take every digit of the subtrahend from 9 and the last \
             non-zero digit from 10, add the result to the minuend and drop the leading 1. \
             When the minuend is a power of ten the complement itself is the answer.",
            &[
                "exactly 2 non-negative whole numbers",
                "the first number must not be smaller than the second",
            ],
            |ops| vedic::complement_subtract(&ops[0], &ops[1]),
        ),
        entry(
            "traditional.subtract.borrow",
            Operation::Subtract,
            Family::Traditional,
            "Subtraction with borrowing",
            "Subtracts column by column from the right, borrowing 10 from the next column \
             whenever the top digit is too small.",
            &[
                "exactly 2 non-negative whole numbers",
                "the first number must not be smaller than the second",
            ],
            |ops| traditional::borrow_subtract(&ops[0], &ops[1]),
        ),
        entry(
            "vedic.sqrt.duplex",
            Operation::Sqrt,
            Family::Vedic,
            "Duplex square root (Dwandwa)",
            "Pairs the digits from the right. The leading pair gives the first root digit and \
             a divisor of twice that digit; every further digit is brought down, reduced by \
             the duplex of the root digits found so far and divided by the divisor. A trial \
             digit that would make a later remainder negative is lowered in an adjustment \
             step. Gives the whole-number root and the remainder.",
            &["exactly 1 non-negative whole number", "no decimal expansion"],
            |ops| Ok(vedic::duplex_sqrt(&ops[0])),
        ),
        entry(
            "traditional.sqrt.longdivision",
            Operation::Sqrt,
            Family::Traditional,
            "Long-division square root",
            "Pairs the digits from the right and brings them down one pair at a time. At each \
             step the next root digit t is the largest with (20×root so far + t)×t not above \
             the current value. Gives the whole-number root and the remainder.",
            &["exactly 1 non-negative whole number", "no decimal expansion"],
            |ops| Ok(traditional::long_division_sqrt(&ops[0])),
        ),
    ];
    entries.sort_by(|a, b| {
        (a.descriptor.level, &a.descriptor.id).cmp(&(b.descriptor.level, &b.descriptor.id))
    });
    entries
});

fn lookup(id: &str) -> Result<&'static Entry, EngineError> {
    REGISTRY
        .iter()
        .find(|e| e.descriptor.id == id)
        .ok_or_else(|| EngineError::UnknownMethod(id.to_owned()))
}

fn lookup_family(operation: Operation, family: Family) -> &'static Entry {
    REGISTRY
        .iter()
        .find(|e| e.descriptor.operation == operation && e.descriptor.family == family)
        .expect("every operation has both families")
}

/// All registered methods, ordered by level then id.
pub fn list_methods() -> Vec<MethodDescriptor> {
    REGISTRY.iter().map(|e| e.descriptor.clone()).collect()
}

pub fn describe_method(id: &str) -> Result<MethodDescriptor, EngineError> {
    lookup(id).map(|e| e.descriptor.clone())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BuildOptions {
    #[serde(default)]
    pub max_digits: Option<usize>,
    #[serde(default)]
    pub latent_display: Option<LatentDisplay>,
}

impl BuildOptions {
    pub fn max_digits(&self) -> usize {
        self.max_digits.unwrap_or(DEFAULT_MAX_DIGITS)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WarningCode {
    Arity,
    NegativeResult,
    OperandTooLong,
    PaddingApplied,
}

impl WarningCode {
    pub fn as_str(self) -> &'static str {
        match self {
            WarningCode::Arity => "ARITY",
            WarningCode::NegativeResult => "NEGATIVE_RESULT",
            WarningCode::OperandTooLong => "OPERAND_TOO_LONG",
            WarningCode::PaddingApplied => "PADDING_APPLIED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Warning {
    pub code: WarningCode,
    pub message: String,
    pub suggestion: String,
    /// A blocking warning means the method cannot run on these operands.
    pub blocking: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplicabilityReport {
    pub ok: bool,
    pub warnings: Vec<Warning>,
}

impl ApplicabilityReport {
    pub fn blocking(&self) -> impl Iterator<Item = &Warning> {
        self.warnings.iter().filter(|w| w.blocking)
    }

    /// Code of the first blocking warning, if any.
    pub fn code(&self) -> Option<WarningCode> {
        self.blocking().next().map(|w| w.code)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unknown method {0:?}")]
    UnknownMethod(String),
    #[error("{}", blocking_summary(.family, .report))]
    Applicability {
        /// Set when the failure comes from one side of a comparison.
        family: Option<Family>,
        report: ApplicabilityReport,
    },
    #[error(transparent)]
    Method(#[from] MethodError),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

fn blocking_summary(family: &Option<Family>, report: &ApplicabilityReport) -> String {
    let messages: Vec<String> = report
        .blocking()
        .map(|w| format!("{}: {}", w.code.as_str(), w.message))
        .collect();
    match family {
        Some(f) => format!("{f} method cannot run: {}", messages.join("; ")),
        None => messages.join("; "),
    }
}

/// Checks whether the method can run on `operands`.
pub fn validate(
    id: &str,
    operands: &[DigitString],
    options: &BuildOptions,
) -> Result<ApplicabilityReport, EngineError> {
    let descriptor = &lookup(id)?.descriptor;
    Ok(check_operands(descriptor, operands, options))
}

fn check_operands(
    descriptor: &MethodDescriptor,
    operands: &[DigitString],
    options: &BuildOptions,
) -> ApplicabilityReport {
    let mut warnings = Vec::new();
    let Arity { min, max } = descriptor.operand_arity;
    let arity_ok = (min..=max).contains(&operands.len());
    if !arity_ok {
        let expected = if min == max {
            format!("exactly {min}")
        } else {
            format!("between {min} and {max}")
        };
        warnings.push(Warning {
            code: WarningCode::Arity,
            message: format!(
                "{} takes {expected} operand{}, but {} were given",
                descriptor.display_name,
                if max == 1 { "" } else { "s" },
                operands.len()
            ),
            suggestion: format!("Enter {expected} number{}.", if max == 1 { "" } else { "s" }),
            blocking: true,
        });
    }
    let limit = options.max_digits();
    for (i, d) in operands.iter().enumerate() {
        if d.len() > limit {
            warnings.push(Warning {
                code: WarningCode::OperandTooLong,
                message: format!(
                    "operand {} has {} digits; the limit is {limit}",
                    i + 1,
                    d.len()
                ),
                suggestion: format!("Use numbers with at most {limit} digits."),
                blocking: true,
            });
        }
    }
    if arity_ok && descriptor.operation == Operation::Subtract && operands[0].value() < operands[1].value() {
        warnings.push(Warning {
            code: WarningCode::NegativeResult,
            message: format!(
                "{} is smaller than {}, so the difference would be negative",
                operands[0], operands[1]
            ),
            suggestion: "Swap the operands; only non-negative results are supported.".to_owned(),
            blocking: true,
        });
    }
    if arity_ok
        && descriptor.operation == Operation::Multiply
        && descriptor.family == Family::Vedic
        && operands[0].len() != operands[1].len()
    {
        let n = operands[0].len().max(operands[1].len());
        warnings.push(Warning {
            code: WarningCode::PaddingApplied,
            message: format!(
                "the operands have {} and {} digits; the shorter one is padded with zeros on the left to {n} digits",
                operands[0].len(),
                operands[1].len()
            ),
            suggestion: "No action needed; the padded zeros appear as zero products.".to_owned(),
            blocking: false,
        });
    }
    ApplicabilityReport {
        ok: !warnings.iter().any(|w| w.blocking),
        warnings,
    }
}

/// Runs one method and assembles its trace.
pub fn build_trace(
    id: &str,
    operands: &[DigitString],
    options: &BuildOptions,
) -> Result<Trace, EngineError> {
    let entry = lookup(id)?;
    assemble(entry, operands, options, None).map(|(trace, _)| trace)
}

fn assemble(
    entry: &Entry,
    operands: &[DigitString],
    options: &BuildOptions,
    family: Option<Family>,
) -> Result<(Trace, Option<ExactValue>), EngineError> {
    let report = check_operands(&entry.descriptor, operands, options);
    if !report.ok {
        return Err(EngineError::Applicability { family, report });
    }
    let run = (entry.run)(operands)?;
    let recomputed = Metrics::recompute(&run.steps);
    if recomputed != run.metrics {
        return Err(EngineError::Inconsistent(format!(
            "{} reported {:?} but its steps give {:?}",
            entry.descriptor.id, run.metrics, recomputed
        )));
    }
    let trace = Trace {
        method_id: entry.descriptor.id.clone(),
        operands: operands.to_vec(),
        layouts: BTreeMap::from([(run.pane, run.layout)]),
        steps: run.steps,
        result: run.result.normalized(),
        metrics: run.metrics,
        latent_display: options.latent_display.unwrap_or_default(),
    };
    Ok((trace, run.remainder))
}

/// Signed metric differences, vedic minus traditional.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MetricDeltas {
    pub digit_multiplications: i64,
    pub digit_additions: i64,
    pub carries: i64,
    pub main_steps: i64,
    pub basic_ops: i64,
}

impl MetricDeltas {
    pub fn between(vedic: &Metrics, traditional: &Metrics) -> Self {
        let d = |a: u64, b: u64| a as i64 - b as i64;
        Self {
            digit_multiplications: d(vedic.digit_multiplications, traditional.digit_multiplications),
            digit_additions: d(vedic.digit_additions, traditional.digit_additions),
            carries: d(vedic.carries, traditional.carries),
            main_steps: d(vedic.main_steps, traditional.main_steps),
            basic_ops: d(vedic.basic_ops, traditional.basic_ops),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub vedic: Trace,
    pub traditional: Trace,
    pub deltas: MetricDeltas,
}

impl ComparisonReport {
    pub fn to_canonical_bytes(&self) -> Vec<u8> {
        canonical::to_canonical_bytes(self)
    }
}

/// Runs the vedic and the traditional method for `operation` on the same
/// operands. Their results (and remainders, for square roots) must agree.
pub fn build_comparison(
    operation: Operation,
    operands: &[DigitString],
    options: &BuildOptions,
) -> Result<ComparisonReport, EngineError> {
    let vedic_entry = lookup_family(operation, Family::Vedic);
    let traditional_entry = lookup_family(operation, Family::Traditional);
    let (vedic, vedic_rem) = assemble(vedic_entry, operands, options, Some(Family::Vedic))?;
    let (traditional, traditional_rem) =
        assemble(traditional_entry, operands, options, Some(Family::Traditional))?;
    if vedic.result.value() != traditional.result.value() || vedic_rem != traditional_rem {
        return Err(EngineError::Inconsistent(format!(
            "{operation}: vedic gives {} (remainder {vedic_rem:?}), traditional gives {} (remainder {traditional_rem:?})",
            vedic.result, traditional.result
        )));
    }
    let deltas = MetricDeltas::between(&vedic.metrics, &traditional.metrics);
    Ok(ComparisonReport {
        vedic,
        traditional,
        deltas,
    })
}
