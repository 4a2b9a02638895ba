//! Schoolbook counterparts of the Vedic methods, producing the same
//! [`MethodRun`] shape so both panes can be compared step for step.

use num_bigint::BigUint;

use crate::numeral::{DigitString, ExactValue};
use crate::run::{check_arity, Layout, MethodError, MethodRun, Recorder, MAX_ADD_OPERANDS};
use crate::trace::{BlockKind, Pane, REMAINDER_LABEL};
use crate::vedic::{carry_suffix, place_name};

const PANE: Pane = Pane::Traditional;

/// Long multiplication: one partial-product row per multiplier digit, built
/// digit by digit, then the shifted rows are added column by column.
///
/// Operands are used as entered; no padding.
pub fn long_multiply(a: &DigitString, b: &DigitString) -> MethodRun {
    let (la, lb) = (a.len(), b.len());
    let mut layout = Layout::new(PANE);
    let top = layout.operand_row("multiplicand", a);
    let bottom = layout.operand_row("multiplier", b);
    let partial_rows: Vec<usize> = (0..lb)
        .map(|j| {
            if lb == 1 {
                layout.row(BlockKind::ResultRow, "product")
            } else {
                layout.row(BlockKind::WorkRow, format!("partial product {}", j + 1))
            }
        })
        .collect();
    let product_row = if lb == 1 {
        partial_rows[0]
    } else {
        layout.row(BlockKind::ResultRow, "product")
    };

    let mut rec = Recorder::new(PANE);
    // Digits written into each partial row, keyed by column.
    let mut columns: Vec<Vec<(usize, u8)>> = vec![Vec::new(); la + lb];
    for (j, &row) in partial_rows.iter().enumerate() {
        let m = u64::from(b.digit(j));
        let mut carry = 0u64;
        for i in 0..la {
            let mut step = rec.step();
            step.highlight(top, i);
            step.highlight(bottom, j);
            let d = u64::from(a.digit(i));
            let total = d * m + carry;
            if carry > 0 {
                step.op(
                    format!("{d}×{m}+{carry}"),
                    vec![d.into(), m.into(), carry.into()],
                    total.into(),
                    1,
                    1,
                );
            } else {
                step.product(d, m);
            }
            let digit = (total % 10) as u8;
            let carry_in = carry;
            carry = total / 10;
            step.write(row, i + j, digit.to_string());
            columns[i + j].push((row, digit));
            if carry > 0 {
                step.carry(carry, i + j + 1);
            }
            let plus = if carry_in > 0 {
                format!(" plus the carry {carry_in}")
            } else {
                String::new()
            };
            let mut description = format!(
                "{d} times the multiplier digit {m}{plus} is {total}; write {digit}{}",
                carry_suffix(carry)
            );
            if i + 1 == la && carry > 0 {
                step.write(row, la + j, carry.to_string());
                columns[la + j].push((row, carry as u8));
                description.push_str(&format!(" and write the carry {carry} at the end of the row"));
            }
            rec.push(step, description);
        }
    }

    let digits: Vec<u8> = if lb == 1 {
        columns.iter().flatten().map(|&(_, d)| d).collect()
    } else {
        let used = columns.iter().rposition(|c| !c.is_empty()).map_or(1, |i| i + 1);
        let mut digits = Vec::with_capacity(la + lb);
        let mut carry = 0u64;
        for (col, entries) in columns.iter().enumerate().take(used) {
            let mut step = rec.step();
            for &(row, _) in entries {
                step.highlight(row, col);
            }
            let mut terms: Vec<u64> = entries.iter().map(|&(_, d)| u64::from(d)).collect();
            let carry_in = carry;
            if carry_in > 0 {
                terms.push(carry_in);
            }
            let total = step.sum(&terms);
            let digit = (total % 10) as u8;
            carry = total / 10;
            step.write(product_row, col, digit.to_string());
            if carry > 0 {
                step.carry(carry, col + 1);
            }
            digits.push(digit);
            let shown = terms
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" + ");
            rec.push(
                step,
                format!(
                    "Add the partial products in the {} column: {shown} = {total}; write {digit}{}",
                    place_name(col),
                    carry_suffix(carry)
                ),
            );
        }
        if carry > 0 {
            let mut step = rec.step();
            let value = ExactValue::from(carry);
            step.write_digits(product_row, used, &value);
            digits.extend(value.to_digit_string().digits());
            rec.push(step, format!("Write the final carry {carry} in front of the product"));
        }
        digits
    };
    let result = DigitString::from_digits(digits).expect("digits").normalized();
    rec.finish(layout.finish(la + lb), result, None)
}

/// Right-to-left column addition with carries marked above the columns.
pub fn column_add(operands: &[DigitString]) -> Result<MethodRun, MethodError> {
    check_arity(operands.len(), 2, MAX_ADD_OPERANDS)?;
    let width = operands.iter().map(DigitString::len).max().unwrap_or(1);

    let mut layout = Layout::new(PANE);
    let carry_row = layout.row(BlockKind::WorkRow, "carries");
    let rows: Vec<usize> = operands
        .iter()
        .enumerate()
        .map(|(i, d)| layout.operand_row(format!("operand {}", i + 1), d))
        .collect();
    let sum_row = layout.row(BlockKind::ResultRow, "sum");

    let mut rec = Recorder::new(PANE);
    let mut digits = Vec::with_capacity(width + 1);
    let mut carry = 0u64;
    for place in 0..width {
        let mut step = rec.step();
        let mut terms = Vec::new();
        let carry_in = carry;
        if carry_in > 0 {
            step.highlight(carry_row, place);
            terms.push(carry_in);
        }
        for (d, &row) in operands.iter().zip(&rows) {
            if place < d.len() {
                step.highlight(row, place);
                terms.push(u64::from(d.digit(place)));
            }
        }
        let total = step.sum(&terms);
        let digit = (total % 10) as u8;
        carry = total / 10;
        step.write(sum_row, place, digit.to_string());
        if carry > 0 {
            step.write(carry_row, place + 1, format!("^{carry}"));
            step.carry(carry, place + 1);
        }
        digits.push(digit);
        let shown = terms
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" + ");
        rec.push(
            step,
            format!(
                "Add the {} column: {shown} = {total}; write {digit}{}",
                place_name(place),
                if carry > 0 {
                    format!(" and carry {carry} to the next column")
                } else {
                    String::new()
                }
            ),
        );
    }
    if carry > 0 {
        let mut step = rec.step();
        step.highlight(carry_row, width);
        let value = ExactValue::from(carry);
        step.write_digits(sum_row, width, &value);
        digits.extend(value.to_digit_string().digits());
        rec.push(step, format!("Bring down the final carry {carry}"));
    }
    let cols = digits.len().max(width);
    let result = DigitString::from_digits(digits).expect("digits").normalized();
    Ok(rec.finish(layout.finish(cols), result, None))
}

/// Digit-pair long division square root.
pub fn long_division_sqrt(x: &DigitString) -> MethodRun {
    let x = x.normalized();
    let len = x.len();
    let groups = len.div_ceil(2);
    let msf: Vec<u8> = x.digits().iter().rev().copied().collect();
    let lead_len = if len.is_multiple_of(2) { 2 } else { 1 };

    let mut layout = Layout::new(PANE);
    let radicand = layout.operand_row("radicand", &x);
    let divisor_row = layout.row(BlockKind::WorkRow, "trial divisors");
    let running_row = layout.row(BlockKind::WorkRow, "running remainders");
    let root_row = layout.row(BlockKind::ResultRow, "root");
    let rem_row = layout.row(BlockKind::WorkRow, REMAINDER_LABEL);

    let mut rec = Recorder::new(PANE);
    let mut root = BigUint::default();
    let mut remainder = BigUint::default();
    let mut root_digits = Vec::with_capacity(groups);
    let mut start = 0;
    for g in 0..groups {
        let width = if g == 0 { lead_len } else { 2 };
        let pair = &msf[start..start + width];
        let mut step = rec.step();
        for offset in 0..width {
            step.highlight(radicand, len - 1 - start - offset);
        }
        start += width;
        let pair_value = pair.iter().fold(0u64, |acc, &d| acc * 10 + u64::from(d));
        let current = if g == 0 {
            BigUint::from(pair_value)
        } else {
            let current = &remainder * 100u32 + pair_value;
            step.op(
                format!("{remainder}×100+{pair_value}"),
                vec![remainder.clone().into(), 100u64.into(), pair_value.into()],
                current.clone().into(),
                1,
                1,
            );
            current
        };
        let base = &root * 20u32;
        let fits = |t: u64| (&base + t) * t <= current;
        let digit = (0..=9u64).rev().find(|&t| fits(t)).expect("t = 0 fits");

        let trial = |step: &mut crate::run::StepDraft, t: u64| -> BigUint {
            let divisor = &base + t;
            step.op(
                format!("20×{root}+{t}"),
                vec![20u64.into(), root.clone().into(), t.into()],
                divisor.clone().into(),
                1,
                1,
            );
            let product = &divisor * t;
            step.op(
                format!("{divisor}×{t}"),
                vec![divisor.clone().into(), t.into()],
                product.clone().into(),
                1,
                0,
            );
            product
        };
        let product = trial(&mut step, digit);
        let divisor = &base + digit;
        let overshoot = if digit < 9 {
            let over = trial(&mut step, digit + 1);
            format!(", while {} would need {over}", digit + 1)
        } else {
            String::new()
        };
        remainder = step.difference(&current, &product);
        let prior = root.clone();
        root = root * 10u32 + digit;
        root_digits.push(digit as u8);

        let col = groups - 1 - g;
        step.write(divisor_row, col, divisor.to_string());
        step.write(running_row, col, remainder.to_string());
        step.write(root_row, col, digit.to_string());
        if g + 1 == groups {
            step.write_digits(rem_row, 0, &remainder.clone().into());
        }
        let brought = if g == 0 {
            format!("Start with the leading group {pair_value}")
        } else {
            format!("Bring down the pair {pair_value:02} to get {current}")
        };
        rec.push(
            step,
            format!(
                "{brought}. The largest digit t with (20×{}+t)×t ≤ {current} is {digit}: \
                 {divisor}×{digit} = {product}{overshoot}; remainder {remainder}",
                prior
            ),
        );
    }
    let result = DigitString::from_digits(root_digits.into_iter().rev().collect())
        .expect("root digits")
        .normalized();
    rec.finish(layout.finish(len), result, Some(remainder.into()))
}

/// Right-to-left subtraction, borrowing from the next column when the top
/// digit is too small.
pub fn borrow_subtract(a: &DigitString, b: &DigitString) -> Result<MethodRun, MethodError> {
    if a.value() < b.value() {
        return Err(MethodError::NegativeResult {
            minuend: a.clone(),
            subtrahend: b.clone(),
        });
    }
    let width = a.len().max(b.len());
    let mut layout = Layout::new(PANE);
    let adjusted_row = layout.row(BlockKind::WorkRow, "after borrowing");
    let a_row = layout.operand_row("minuend", a);
    let b_row = layout.operand_row("subtrahend", b);
    let diff_row = layout.row(BlockKind::ResultRow, "difference");

    let mut rec = Recorder::new(PANE);
    let mut digits = Vec::with_capacity(width);
    let mut borrowed = 0u64;
    for place in 0..width {
        let mut step = rec.step();
        let top = u64::from(a.digit(place));
        let bottom = u64::from(b.digit(place));
        if place < a.len() {
            step.highlight(a_row, place);
        }
        if place < b.len() {
            step.highlight(b_row, place);
        }
        let needs_borrow = top < bottom + borrowed;
        let mut notes = Vec::new();
        let adjusted = match (borrowed > 0, needs_borrow) {
            (false, false) => top,
            (true, false) => {
                let v = top - 1;
                step.op(format!("{top}−1"), vec![top.into(), 1u64.into()], v.into(), 0, 1);
                notes.push(format!("{top} lent 1 to the right, leaving {v}"));
                v
            }
            (false, true) => {
                let v = 10 + top;
                step.op(format!("10+{top}"), vec![10u64.into(), top.into()], v.into(), 0, 1);
                notes.push(format!("borrow 10 from the left, making {v}"));
                v
            }
            (true, true) => {
                let v = 10 + top - 1;
                step.op(
                    format!("10+{top}−1"),
                    vec![10u64.into(), top.into(), 1u64.into()],
                    v.into(),
                    0,
                    2,
                );
                notes.push(format!("{top} lent 1 to the right and borrows 10 from the left, making {v}"));
                v
            }
        };
        if adjusted != top {
            step.write(adjusted_row, place, adjusted.to_string());
        }
        if needs_borrow {
            step.borrow(place + 1);
        }
        let digit = adjusted - bottom;
        step.op(
            format!("{adjusted}−{bottom}"),
            vec![adjusted.into(), bottom.into()],
            digit.into(),
            0,
            1,
        );
        step.write(diff_row, place, digit.to_string());
        digits.push(digit as u8);
        borrowed = u64::from(needs_borrow);
        let note = if notes.is_empty() {
            String::new()
        } else {
            format!(" ({})", notes.join("; "))
        };
        rec.push(
            step,
            format!(
                "Subtract in the {} column{note}: {adjusted}−{bottom} = {digit}",
                place_name(place)
            ),
        );
    }
    let result = DigitString::from_digits(digits).expect("digits").normalized();
    Ok(rec.finish(layout.finish(width), result, None))
}
