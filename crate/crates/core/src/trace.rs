//! Step-event data model, replay validation and the latent basic-op stream.
//!
//! A [`Trace`] is a complete record of one method run: the grid layout of
//! its pane, the ordered [`MainStep`]s that write into that grid, and the
//! elementary calculations ([`BasicOp`]s) behind each step. Grids are
//! write-once: a cell receives at most one token, so replaying the writes on
//! empty grids is a total check of a trace's structure.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical;
use crate::numeral::{DigitString, ExactValue};

/// Label of the work row holding a square root's final remainder.
pub const REMAINDER_LABEL: &str = "remainder";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pane {
    Traditional,
    Vedic,
}

impl fmt::Display for Pane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pane::Traditional => "traditional",
            Pane::Vedic => "vedic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellRef {
    pub pane: Pane,
    pub row: usize,
    /// Column index equals the place-value exponent; display reverses it.
    pub col: usize,
}

impl CellRef {
    pub fn new(pane: Pane, row: usize, col: usize) -> Self {
        Self { pane, row, col }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockKind {
    OperandRow,
    WorkRow,
    ResultRow,
    Guide,
}

/// Half-open row interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowRange {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Block {
    pub kind: BlockKind,
    pub row_range: RowRange,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellWrite {
    pub cell: CellRef,
    pub token: String,
}

/// Layout of one pane. `preset` holds the cells shown before the first step
/// (the operands as entered, with any padding zeros).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
    pub blocks: Vec<Block>,
    pub preset: Vec<CellWrite>,
}

impl GridSpec {
    pub fn block(&self, label: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.label == label)
    }

    pub fn block_for_row(&self, row: usize) -> Option<&Block> {
        self.blocks
            .iter()
            .find(|b| b.row_range.start <= row && row < b.row_range.end)
    }

    pub fn result_row(&self) -> Option<usize> {
        self.blocks
            .iter()
            .find(|b| b.kind == BlockKind::ResultRow)
            .map(|b| b.row_range.start)
    }

    fn check(&self) -> Result<(), String> {
        let mut ranges: Vec<RowRange> = Vec::with_capacity(self.blocks.len());
        for block in &self.blocks {
            let r = block.row_range;
            if r.start >= r.end || r.end > self.rows {
                return Err(format!("block {:?} has row range outside the grid", block.label));
            }
            if ranges.iter().any(|o| r.start < o.end && o.start < r.end) {
                return Err(format!("block {:?} overlaps another block", block.label));
            }
            ranges.push(r);
        }
        let results: Vec<_> = self
            .blocks
            .iter()
            .filter(|b| b.kind == BlockKind::ResultRow)
            .collect();
        match results.as_slice() {
            [one] if one.row_range.end - one.row_range.start == 1 => Ok(()),
            _ => Err("layout needs exactly one single-row result block".to_owned()),
        }
    }
}

/// One latent-space entry: an elementary calculation such as `4×6 = 24`.
///
/// Expressions use `+`, `−`, `×`, `÷` (floor division) and a postfix `²`,
/// with the usual precedence and left associativity. `operands` lists the
/// numbers of the expression in reading order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicOp {
    pub expression: String,
    pub operands: Vec<ExactValue>,
    pub result: ExactValue,
}

impl BasicOp {
    /// Re-evaluates the expression and confirms both operands and result.
    pub fn check(&self) -> Result<(), String> {
        let (operands, value) = evaluate_expression(&self.expression)?;
        if operands != self.operands {
            return Err(format!("operands of {:?} do not match the expression", self.expression));
        }
        if value.sign() == Sign::Minus || value.magnitude() != self.result.as_biguint() {
            return Err(format!(
                "{} evaluates to {value}, recorded {}",
                self.expression, self.result
            ));
        }
        Ok(())
    }

    /// Number of multiplicative operators (`×`, `²`).
    pub fn multiplications(&self) -> u64 {
        self.expression.chars().filter(|c| matches!(c, '×' | '²')).count() as u64
    }

    /// Number of additive operators (`+`, `−`).
    pub fn additions(&self) -> u64 {
        self.expression.chars().filter(|c| matches!(c, '+' | '−')).count() as u64
    }
}

impl fmt::Display for BasicOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.expression, self.result)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CarryDirection {
    /// Value moves to a higher place.
    Carry,
    /// Value is taken from a higher place.
    Borrow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CarryNote {
    pub value: ExactValue,
    pub target_col: usize,
    pub direction: CarryDirection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MainStep {
    pub index: usize,
    pub description: String,
    pub highlights: Vec<CellRef>,
    pub writes: Vec<CellWrite>,
    pub sub_ops: Vec<BasicOp>,
    pub carry_note: Option<CarryNote>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Metrics {
    pub digit_multiplications: u64,
    pub digit_additions: u64,
    pub carries: u64,
    pub main_steps: u64,
    pub basic_ops: u64,
}

impl Metrics {
    /// Counts taken directly from the steps' contents.
    pub fn recompute(steps: &[MainStep]) -> Self {
        let mut m = Metrics {
            main_steps: steps.len() as u64,
            ..Metrics::default()
        };
        for step in steps {
            if step.carry_note.is_some() {
                m.carries += 1;
            }
            for op in &step.sub_ops {
                m.basic_ops += 1;
                m.digit_multiplications += op.multiplications();
                m.digit_additions += op.additions();
            }
        }
        m
    }
}

/// Which pane's latent operations a viewer should display.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatentDisplay {
    #[default]
    Vedic,
    Both,
    None,
}

impl LatentDisplay {
    pub fn shows(self, pane: Pane) -> bool {
        match self {
            LatentDisplay::Vedic => pane == Pane::Vedic,
            LatentDisplay::Both => true,
            LatentDisplay::None => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Trace {
    pub method_id: String,
    pub operands: Vec<DigitString>,
    pub layouts: BTreeMap<Pane, GridSpec>,
    pub steps: Vec<MainStep>,
    pub result: DigitString,
    pub metrics: Metrics,
    pub latent_display: LatentDisplay,
}

impl Trace {
    pub fn to_canonical_bytes(&self) -> Vec<u8> {
        canonical_serialize(self)
    }

    /// The remainder row of a square-root trace, if the layout has one.
    pub fn remainder(&self) -> Option<ExactValue> {
        let grids = replay(self).ok()?;
        grids.iter().find_map(|(pane, grid)| {
            let row = self.layouts[pane].block(REMAINDER_LABEL)?.row_range.start;
            grid.row_value(row).ok()
        })
    }
}

pub fn canonical_serialize(trace: &Trace) -> Vec<u8> {
    canonical::to_canonical_bytes(trace)
}

pub fn parse_trace(bytes: &[u8]) -> Result<Trace, serde_json::Error> {
    serde_json::from_slice(bytes)
}

/// Concatenation of every step's sub-operations in step order.
pub fn flatten_basic_ops(trace: &Trace) -> Vec<BasicOp> {
    trace
        .steps
        .iter()
        .flat_map(|s| s.sub_ops.iter().cloned())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("replay failed at step {step:?}: {reason}")]
pub struct ReplayError {
    /// `None` when the problem lies in the layout or presets.
    pub step: Option<usize>,
    pub reason: String,
}

/// Replayed state of one pane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub rows: usize,
    pub cols: usize,
    cells: Vec<Option<String>>,
}

impl Grid {
    fn empty(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            cells: vec![None; rows * cols],
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&str> {
        if row >= self.rows || col >= self.cols {
            return None;
        }
        self.cells[row * self.cols + col].as_deref()
    }

    /// Reads a digit row most-significant first. Written cells must form a
    /// contiguous run starting at column 0 and hold plain digit tokens.
    pub fn row_value(&self, row: usize) -> Result<ExactValue, String> {
        let written: Vec<Option<&str>> = (0..self.cols).map(|c| self.get(row, c)).collect();
        let len = written.iter().rposition(Option::is_some).map_or(0, |i| i + 1);
        if len == 0 {
            return Err(format!("row {row} is empty"));
        }
        let mut text = String::with_capacity(len);
        for col in (0..len).rev() {
            match written[col] {
                Some(tok) if tok.bytes().all(|b| b.is_ascii_digit()) && tok.len() == 1 => {
                    text.push_str(tok)
                }
                Some(tok) => return Err(format!("row {row} col {col} holds {tok:?}, not a digit")),
                None => return Err(format!("row {row} has a gap at col {col}")),
            }
        }
        crate::numeral::parse_operand(&text)
            .map(|d| d.value())
            .map_err(|e| e.to_string())
    }

    fn write(&mut self, write: &CellWrite) -> Result<(), String> {
        let CellRef { row, col, .. } = write.cell;
        if row >= self.rows || col >= self.cols {
            return Err(format!("write to ({row},{col}) is outside the {}x{} grid", self.rows, self.cols));
        }
        if !valid_token(&write.token) {
            return Err(format!("malformed token {:?}", write.token));
        }
        let slot = &mut self.cells[row * self.cols + col];
        if slot.is_some() {
            return Err(format!("cell ({row},{col}) written twice"));
        }
        *slot = Some(write.token.clone());
        Ok(())
    }
}

/// A digit string, optionally prefixed by `^` (carry superscript).
pub fn valid_token(token: &str) -> bool {
    let digits = token.strip_prefix('^').unwrap_or(token);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Applies all writes to empty grids and checks every pane's result row
/// against `trace.result`.
pub fn replay(trace: &Trace) -> Result<BTreeMap<Pane, Grid>, ReplayError> {
    replay_with_result(&trace.layouts, &trace.steps, &trace.result)
}

/// [`replay_steps`] followed by the result-row check against `result`.
pub fn replay_with_result(
    layouts: &BTreeMap<Pane, GridSpec>,
    steps: &[MainStep],
    result: &DigitString,
) -> Result<BTreeMap<Pane, Grid>, ReplayError> {
    let grids = replay_steps(layouts, steps)?;
    let expected = result.value();
    let last = steps.last().map(|s| s.index);
    for (pane, grid) in &grids {
        let row = layouts[pane].result_row().expect("checked layout");
        let got = grid.row_value(row).map_err(|reason| ReplayError { step: last, reason })?;
        if got != expected {
            return Err(ReplayError {
                step: last,
                reason: format!("{pane} result row spells {got}, trace result is {expected}"),
            });
        }
    }
    Ok(grids)
}

/// Applies presets and then the given steps, without the result check.
/// Useful for replaying a prefix of a trace.
pub fn replay_steps(
    layouts: &BTreeMap<Pane, GridSpec>,
    steps: &[MainStep],
) -> Result<BTreeMap<Pane, Grid>, ReplayError> {
    let layout_err = |reason: String| ReplayError { step: None, reason };
    let mut grids = BTreeMap::new();
    for (pane, spec) in layouts {
        spec.check().map_err(layout_err)?;
        let mut grid = Grid::empty(spec.rows, spec.cols);
        for w in &spec.preset {
            if w.cell.pane != *pane {
                return Err(layout_err(format!("preset for {} inside {pane} layout", w.cell.pane)));
            }
            grid.write(w).map_err(layout_err)?;
        }
        grids.insert(*pane, grid);
    }

    let mut previous: Option<usize> = None;
    for step in steps {
        let fail = |reason: String| ReplayError { step: Some(step.index), reason };
        if previous.is_some_and(|p| step.index <= p) {
            return Err(fail("step index does not increase".to_owned()));
        }
        previous = Some(step.index);
        for cell in &step.highlights {
            let grid = grids
                .get(&cell.pane)
                .ok_or_else(|| fail(format!("highlight in {} which has no layout", cell.pane)))?;
            if cell.row >= grid.rows || cell.col >= grid.cols {
                return Err(fail(format!("highlight ({},{}) out of bounds", cell.row, cell.col)));
            }
        }
        for w in &step.writes {
            let grid = grids
                .get_mut(&w.cell.pane)
                .ok_or_else(|| fail(format!("write in {} which has no layout", w.cell.pane)))?;
            grid.write(w).map_err(fail)?;
        }
        for op in &step.sub_ops {
            op.check().map_err(fail)?;
        }
    }
    Ok(grids)
}

/// Evaluates a basic-op expression, returning its numbers in reading order
/// and its exact value.
pub fn evaluate_expression(expression: &str) -> Result<(Vec<ExactValue>, BigInt), String> {
    let tokens = tokenize(expression)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        operands: Vec::new(),
    };
    let value = parser.sum()?;
    if parser.pos != tokens.len() {
        return Err(format!("trailing input in {expression:?}"));
    }
    Ok((parser.operands, value))
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigUint),
    Plus,
    Minus,
    Times,
    Divide,
    Squared,
}

fn tokenize(expression: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let mut chars = expression.chars().peekable();
    while let Some(c) = chars.next() {
        let token = match c {
            '0'..='9' => {
                let mut text = String::from(c);
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    text.push(d);
                    chars.next();
                }
                Token::Num(text.parse().expect("ascii digits"))
            }
            '+' => Token::Plus,
            '−' | '-' => Token::Minus,
            '×' | '*' => Token::Times,
            '÷' | '/' => Token::Divide,
            '²' => Token::Squared,
            ' ' => continue,
            other => return Err(format!("unexpected {other:?} in {expression:?}")),
        };
        tokens.push(token);
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    operands: Vec<ExactValue>,
}

impl Parser<'_> {
    fn sum(&mut self) -> Result<BigInt, String> {
        let mut acc = self.product()?;
        while let Some(tok @ (Token::Plus | Token::Minus)) = self.tokens.get(self.pos) {
            self.pos += 1;
            let rhs = self.product()?;
            if *tok == Token::Plus {
                acc += rhs;
            } else {
                acc -= rhs;
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<BigInt, String> {
        let mut acc = self.factor()?;
        while let Some(tok @ (Token::Times | Token::Divide)) = self.tokens.get(self.pos) {
            self.pos += 1;
            let rhs = self.factor()?;
            if *tok == Token::Times {
                acc *= rhs;
            } else {
                if rhs.sign() == Sign::NoSign {
                    return Err("division by zero".to_owned());
                }
                if acc.sign() == Sign::Minus {
                    return Err("floor division of a negative value".to_owned());
                }
                acc /= rhs;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BigInt, String> {
        let Some(Token::Num(n)) = self.tokens.get(self.pos) else {
            return Err("expected a number".to_owned());
        };
        self.pos += 1;
        self.operands.push(ExactValue::new(n.clone()));
        let mut value = BigInt::from(n.clone());
        while self.tokens.get(self.pos) == Some(&Token::Squared) {
            self.pos += 1;
            value = &value * &value;
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeral::parse_operand;

    fn op(expression: &str, operands: &[u64], result: u64) -> BasicOp {
        BasicOp {
            expression: expression.to_owned(),
            operands: operands.iter().map(|&v| ExactValue::from(v)).collect(),
            result: ExactValue::from(result),
        }
    }

    fn single_cell_trace() -> Trace {
        let layout = GridSpec {
            rows: 1,
            cols: 1,
            blocks: vec![Block {
                kind: BlockKind::ResultRow,
                row_range: RowRange { start: 0, end: 1 },
                label: "result".to_owned(),
            }],
            preset: vec![],
        };
        Trace {
            method_id: "test".to_owned(),
            operands: vec![],
            layouts: BTreeMap::from([(Pane::Vedic, layout)]),
            steps: vec![MainStep {
                index: 0,
                description: "write zero".to_owned(),
                highlights: vec![],
                writes: vec![CellWrite {
                    cell: CellRef::new(Pane::Vedic, 0, 0),
                    token: "0".to_owned(),
                }],
                sub_ops: vec![],
                carry_note: None,
            }],
            result: parse_operand("0").unwrap(),
            metrics: Metrics {
                main_steps: 1,
                ..Metrics::default()
            },
            latent_display: LatentDisplay::Vedic,
        }
    }

    #[test]
    fn evaluates_expressions() {
        assert!(op("4×6", &[4, 6], 24).check().is_ok());
        assert!(op("2×3×5+4²", &[2, 3, 5, 4], 46).check().is_ok());
        assert!(op("10+0−1−5", &[10, 0, 1, 5], 4).check().is_ok());
        assert!(op("42÷8", &[42, 8], 5).check().is_ok());
        assert!(op("42−8×5", &[42, 8, 5], 2).check().is_ok());
        assert!(op("4×6", &[4, 6], 25).check().is_err());
        assert!(op("4×6", &[6, 4], 24).check().is_err());
        assert!(op("3−4", &[3, 4], 0).check().is_err());
        assert!(op("4÷0", &[4, 0], 0).check().is_err());
        assert!(op("4××6", &[4, 6], 24).check().is_err());
        assert!(op("4x6", &[4, 6], 24).check().is_err());
    }

    #[test]
    fn operator_counts() {
        let o = op("2×3×5+4²", &[2, 3, 5, 4], 46);
        assert_eq!(o.multiplications(), 3);
        assert_eq!(o.additions(), 1);
    }

    #[test]
    fn replays_single_write() {
        let trace = single_cell_trace();
        let grids = replay(&trace).unwrap();
        assert_eq!(grids[&Pane::Vedic].get(0, 0), Some("0"));
        assert!(flatten_basic_ops(&trace).is_empty());
    }

    #[test]
    fn rejects_double_write() {
        let mut trace = single_cell_trace();
        let mut second = trace.steps[0].clone();
        second.index = 1;
        trace.steps.push(second);
        let err = replay(&trace).unwrap_err();
        assert_eq!(err.step, Some(1));
        assert!(err.reason.contains("twice"));
    }

    #[test]
    fn rejects_out_of_bounds_and_mismatch() {
        let mut trace = single_cell_trace();
        trace.steps[0].writes[0].cell.col = 3;
        assert!(replay(&trace).unwrap_err().reason.contains("outside"));

        let mut trace = single_cell_trace();
        trace.result = parse_operand("1").unwrap();
        assert_eq!(replay(&trace).unwrap_err().step, Some(0));

        let mut trace = single_cell_trace();
        trace.steps[0].highlights.push(CellRef::new(Pane::Traditional, 0, 0));
        assert!(replay(&trace).is_err());

        let mut trace = single_cell_trace();
        trace.steps[0].writes[0].token = "x".to_owned();
        assert!(replay(&trace).unwrap_err().reason.contains("malformed"));
    }

    #[test]
    fn rejects_bad_sub_op_and_index_order() {
        let mut trace = single_cell_trace();
        trace.steps[0].sub_ops.push(op("1+1", &[1, 1], 3));
        assert!(replay(&trace).is_err());

        let mut trace = single_cell_trace();
        let mut second = trace.steps[0].clone();
        second.writes.clear();
        trace.steps.push(second);
        assert!(replay(&trace).unwrap_err().reason.contains("index"));
    }

    #[test]
    fn row_reading_rules() {
        let mut grid = Grid::empty(1, 4);
        let w = |col: usize, token: &str| CellWrite {
            cell: CellRef::new(Pane::Vedic, 0, col),
            token: token.to_owned(),
        };
        grid.write(&w(0, "8")).unwrap();
        grid.write(&w(1, "0")).unwrap();
        grid.write(&w(2, "4")).unwrap();
        assert_eq!(grid.row_value(0).unwrap(), ExactValue::from(408u64));
        let mut gappy = Grid::empty(1, 4);
        gappy.write(&w(1, "4")).unwrap();
        assert!(gappy.row_value(0).is_err());
    }

    #[test]
    fn overlapping_blocks_rejected() {
        let mut trace = single_cell_trace();
        let spec = trace.layouts.get_mut(&Pane::Vedic).unwrap();
        spec.rows = 2;
        spec.blocks.push(Block {
            kind: BlockKind::WorkRow,
            row_range: RowRange { start: 0, end: 2 },
            label: "w".to_owned(),
        });
        assert!(replay(&trace).is_err());
    }

    #[test]
    fn serialization_shape() {
        let trace = single_cell_trace();
        let text = String::from_utf8(canonical_serialize(&trace)).unwrap();
        assert!(text.starts_with(r#"{"latentDisplay":"vedic","layouts":{"vedic":{"blocks":[{"kind":"result-row""#));
        assert!(text.contains(r#""carryNote":null"#));
        assert_eq!(parse_trace(text.as_bytes()).unwrap(), trace);
        assert_eq!(Metrics::recompute(&trace.steps), trace.metrics);
    }

    #[test]
    fn description_change_is_local() {
        let a = single_cell_trace();
        let mut b = a.clone();
        b.steps[0].description = "write a zero".to_owned();
        let (sa, sb) = (canonical_serialize(&a), canonical_serialize(&b));
        let prefix = sa.iter().zip(&sb).take_while(|(x, y)| x == y).count();
        let suffix = sa[prefix..].iter().rev().zip(sb[prefix..].iter().rev()).take_while(|(x, y)| x == y).count();
        let changed_a = std::str::from_utf8(&sa[prefix..sa.len() - suffix]).unwrap();
        let changed_b = std::str::from_utf8(&sb[prefix..sb.len() - suffix]).unwrap();
        assert!("write zero".contains(changed_a));
        assert!("write a zero".contains(changed_b));
    }
}
