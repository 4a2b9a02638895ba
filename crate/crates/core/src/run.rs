//! Output of a method implementation and the helpers methods use to record
//! their steps.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use thiserror::Error;

use crate::numeral::{DigitString, ExactValue};
use crate::trace::{
    BasicOp, Block, BlockKind, CarryDirection, CarryNote, CellRef, CellWrite, GridSpec, MainStep,
    Metrics, Pane, RowRange, replay_with_result, Grid, ReplayError,
};

/// Upper bound on the operand count of multi-operand addition.
pub const MAX_ADD_OPERANDS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MethodError {
    #[error("expected between {min} and {max} operands, got {got}")]
    Arity { min: usize, max: usize, got: usize },
    #[error("{minuend} − {subtrahend} would be negative; only non-negative results are supported")]
    NegativeResult {
        minuend: DigitString,
        subtrahend: DigitString,
    },
}

/// Raw result of a method: its steps on a single pane, the layout they write
/// into and the self-counted metrics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodRun {
    pub pane: Pane,
    pub steps: Vec<MainStep>,
    pub result: DigitString,
    pub metrics: Metrics,
    pub layout: GridSpec,
    /// Square-root methods only.
    pub remainder: Option<ExactValue>,
}

impl MethodRun {
    /// Replays the steps against the run's own layout, checking the result row.
    pub fn replay(&self) -> Result<BTreeMap<Pane, Grid>, ReplayError> {
        let layouts = BTreeMap::from([(self.pane, self.layout.clone())]);
        replay_with_result(&layouts, &self.steps, &self.result)
    }
}

pub(crate) fn check_arity(got: usize, min: usize, max: usize) -> Result<(), MethodError> {
    if (min..=max).contains(&got) {
        Ok(())
    } else {
        Err(MethodError::Arity { min, max, got })
    }
}

/// Row-by-row layout assembly; every block spans one row.
pub(crate) struct Layout {
    pane: Pane,
    blocks: Vec<Block>,
    preset: Vec<CellWrite>,
}

impl Layout {
    pub fn new(pane: Pane) -> Self {
        Self {
            pane,
            blocks: Vec::new(),
            preset: Vec::new(),
        }
    }

    /// Appends a row and returns its index.
    pub fn row(&mut self, kind: BlockKind, label: impl Into<String>) -> usize {
        let row = self.blocks.len();
        self.blocks.push(Block {
            kind,
            row_range: RowRange {
                start: row,
                end: row + 1,
            },
            label: label.into(),
        });
        row
    }

    /// Operand row pre-filled with `digits`, one per column from place 0.
    pub fn operand_row(&mut self, label: impl Into<String>, digits: &DigitString) -> usize {
        let row = self.row(BlockKind::OperandRow, label);
        for (col, &d) in digits.digits().iter().enumerate() {
            self.preset.push(CellWrite {
                cell: CellRef::new(self.pane, row, col),
                token: d.to_string(),
            });
        }
        row
    }

    pub fn finish(self, cols: usize) -> GridSpec {
        GridSpec {
            rows: self.blocks.len(),
            cols,
            blocks: self.blocks,
            preset: self.preset,
        }
    }
}

/// Collects steps and keeps its own running operation counts, which the
/// engine later checks against counts recomputed from the expressions.
pub(crate) struct Recorder {
    pane: Pane,
    steps: Vec<MainStep>,
    metrics: Metrics,
}

impl Recorder {
    pub fn new(pane: Pane) -> Self {
        Self {
            pane,
            steps: Vec::new(),
            metrics: Metrics::default(),
        }
    }

    pub fn step(&self) -> StepDraft {
        StepDraft {
            pane: self.pane,
            highlights: Vec::new(),
            writes: Vec::new(),
            sub_ops: Vec::new(),
            carry_note: None,
            multiplications: 0,
            additions: 0,
        }
    }

    pub fn push(&mut self, draft: StepDraft, description: String) {
        self.metrics.main_steps += 1;
        self.metrics.basic_ops += draft.sub_ops.len() as u64;
        self.metrics.digit_multiplications += draft.multiplications;
        self.metrics.digit_additions += draft.additions;
        if draft.carry_note.is_some() {
            self.metrics.carries += 1;
        }
        self.steps.push(MainStep {
            index: self.steps.len(),
            description,
            highlights: draft.highlights,
            writes: draft.writes,
            sub_ops: draft.sub_ops,
            carry_note: draft.carry_note,
        });
    }

    pub fn finish(
        self,
        layout: GridSpec,
        result: DigitString,
        remainder: Option<ExactValue>,
    ) -> MethodRun {
        MethodRun {
            pane: self.pane,
            steps: self.steps,
            result,
            metrics: self.metrics,
            layout,
            remainder,
        }
    }
}

pub(crate) struct StepDraft {
    pane: Pane,
    highlights: Vec<CellRef>,
    writes: Vec<CellWrite>,
    sub_ops: Vec<BasicOp>,
    carry_note: Option<CarryNote>,
    multiplications: u64,
    additions: u64,
}

impl StepDraft {
    pub fn highlight(&mut self, row: usize, col: usize) {
        self.highlights.push(CellRef::new(self.pane, row, col));
    }

    pub fn write(&mut self, row: usize, col: usize, token: impl Into<String>) {
        self.writes.push(CellWrite {
            cell: CellRef::new(self.pane, row, col),
            token: token.into(),
        });
    }

    /// Writes the digits of `value` along `row`, starting at column `from`.
    pub fn write_digits(&mut self, row: usize, from: usize, value: &ExactValue) {
        for (offset, d) in value.to_digit_string().digits().iter().enumerate() {
            self.write(row, from + offset, d.to_string());
        }
    }

    pub fn carry(&mut self, value: u64, target_col: usize) {
        self.carry_note = Some(CarryNote {
            value: value.into(),
            target_col,
            direction: CarryDirection::Carry,
        });
    }

    pub fn borrow(&mut self, target_col: usize) {
        self.carry_note = Some(CarryNote {
            value: 1u64.into(),
            target_col,
            direction: CarryDirection::Borrow,
        });
    }

    /// Records an arbitrary basic op together with its operator counts.
    pub fn op(
        &mut self,
        expression: String,
        operands: Vec<ExactValue>,
        result: ExactValue,
        multiplications: u64,
        additions: u64,
    ) {
        self.multiplications += multiplications;
        self.additions += additions;
        self.sub_ops.push(BasicOp {
            expression,
            operands,
            result,
        });
    }

    pub fn product(&mut self, a: u64, b: u64) -> u64 {
        let p = a * b;
        self.op(format!("{a}×{b}"), vec![a.into(), b.into()], p.into(), 1, 0);
        p
    }

    /// Adds the terms, recording an op only when there are at least two.
    pub fn sum(&mut self, terms: &[u64]) -> u64 {
        let total: u64 = terms.iter().sum();
        if terms.len() >= 2 {
            let expression = terms
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join("+");
            let operands = terms.iter().map(|&t| t.into()).collect();
            self.op(expression, operands, total.into(), 0, terms.len() as u64 - 1);
        }
        total
    }

    pub fn difference(&mut self, a: &BigUint, b: &BigUint) -> BigUint {
        let d = a - b;
        self.op(
            format!("{a}−{b}"),
            vec![a.clone().into(), b.clone().into()],
            d.clone().into(),
            0,
            1,
        );
        d
    }

    /// Records `duplex(digits)` as an explicit pair-product sum; `digits` are
    /// in reading order. Returns the duplex value.
    pub fn duplex(&mut self, digits: &[u8]) -> u64 {
        let len = digits.len();
        let mut terms = Vec::new();
        let mut operands: Vec<ExactValue> = Vec::new();
        let mut multiplications = 0;
        for i in 0..len / 2 {
            let (x, y) = (digits[i], digits[len - 1 - i]);
            terms.push(format!("2×{x}×{y}"));
            operands.extend([2u64.into(), x.into(), y.into()]);
            multiplications += 2;
        }
        if len % 2 == 1 {
            let mid = digits[len / 2];
            terms.push(format!("{mid}²"));
            operands.push(mid.into());
            multiplications += 1;
        }
        let value = crate::numeral::duplex_u64(digits);
        let additions = terms.len() as u64 - 1;
        self.op(terms.join("+"), operands, value.into(), multiplications, additions);
        value
    }
}
