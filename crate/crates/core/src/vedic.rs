//! Step-generating Vedic techniques: vertically-and-crosswise multiplication,
//! place-value addition, duplex square root and ten's-complement subtraction.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::numeral::{pad_to_length, power_of_ten, DigitString, ExactValue};
use crate::run::{check_arity, Layout, MethodError, MethodRun, Recorder, MAX_ADD_OPERANDS};
use crate::trace::{BlockKind, Pane, REMAINDER_LABEL};

const PANE: Pane = Pane::Vedic;

pub(crate) fn place_name(place: usize) -> String {
    match place {
        0 => "units".to_owned(),
        1 => "tens".to_owned(),
        2 => "hundreds".to_owned(),
        3 => "thousands".to_owned(),
        p => format!("10^{p}"),
    }
}

pub(crate) fn carry_suffix(carry: u64) -> String {
    if carry > 0 {
        format!(", carry {carry}")
    } else {
        String::new()
    }
}

/// Urdhva-Tiryagbhyam ("vertically and crosswise").
///
/// Both operands are padded with leading zeros to a common length `n`; column
/// `k` of the answer comes from the crosswise products `a_i×b_j` with
/// `i + j = k`, taken in increasing `i`, plus the incoming carry.
pub fn criss_cross_multiply(a: &DigitString, b: &DigitString) -> MethodRun {
    let n = a.len().max(b.len());
    let a = pad_to_length(a, n).expect("n is the larger length");
    let b = pad_to_length(b, n).expect("n is the larger length");

    let mut layout = Layout::new(PANE);
    let top = layout.operand_row("multiplicand", &a);
    let bottom = layout.operand_row("multiplier", &b);
    let totals = layout.row(BlockKind::WorkRow, "column totals");
    let product = layout.row(BlockKind::ResultRow, "product");

    let mut rec = Recorder::new(PANE);
    let mut digits = Vec::with_capacity(2 * n);
    let mut carry = 0u64;
    for k in 0..2 * n - 1 {
        let mut step = rec.step();
        let mut terms = Vec::new();
        for i in (k.saturating_sub(n - 1)..=k.min(n - 1)).rev() {
            let j = k - i;
            step.highlight(top, i);
            step.highlight(bottom, j);
            terms.push(step.product(a.digit(i).into(), b.digit(j).into()));
        }
        let products = terms.len();
        let carry_in = carry;
        if carry_in > 0 {
            terms.push(carry_in);
        }
        let total = step.sum(&terms);
        let digit = (total % 10) as u8;
        carry = total / 10;
        step.write(totals, k, total.to_string());
        step.write(product, k, digit.to_string());
        if carry > 0 {
            step.carry(carry, k + 1);
        }
        digits.push(digit);

        let group = if n == 1 {
            "Multiply the digits vertically".to_owned()
        } else if k == 0 {
            "Multiply the units digits vertically".to_owned()
        } else if k == 2 * n - 2 {
            "Multiply the digits in the highest place vertically".to_owned()
        } else if k + 1 < n {
            format!("Multiply crosswise within the {} columns on the right and add", k + 1)
        } else if k + 1 == n {
            format!("Multiply crosswise across all {n} columns and add")
        } else {
            format!("Multiply crosswise within the {} columns on the left and add", 2 * n - 1 - k)
        };
        let pairs = (k.saturating_sub(n - 1)..=k.min(n - 1))
            .rev()
            .map(|i| format!("{}×{}", a.digit(i), b.digit(k - i)))
            .collect::<Vec<_>>()
            .join(" + ");
        let incoming = if carry_in > 0 {
            format!(" + carry {carry_in}")
        } else {
            String::new()
        };
        debug_assert_eq!(products, (k.saturating_sub(n - 1)..=k.min(n - 1)).count());
        rec.push(
            step,
            format!(
                "{group}: {pairs}{incoming} = {total}; write {digit} at the {} place{}",
                place_name(k),
                carry_suffix(carry)
            ),
        );
    }
    if carry > 0 {
        let mut step = rec.step();
        let value = ExactValue::from(carry);
        step.write_digits(product, 2 * n - 1, &value);
        digits.extend(value.to_digit_string().digits());
        rec.push(
            step,
            format!("Write the final carry {carry} as the leading digits of the product"),
        );
    }
    let cols = digits.len().max(2 * n);
    let result = DigitString::from_digits(digits).expect("digits").normalized();
    rec.finish(layout.finish(cols), result, None)
}

/// Column-by-column addition of 2 to 10 operands, one step per place value.
pub fn place_value_add(operands: &[DigitString]) -> Result<MethodRun, MethodError> {
    check_arity(operands.len(), 2, MAX_ADD_OPERANDS)?;
    let width = operands.iter().map(DigitString::len).max().unwrap_or(1);

    let mut layout = Layout::new(PANE);
    let rows: Vec<usize> = operands
        .iter()
        .enumerate()
        .map(|(i, d)| layout.operand_row(format!("operand {}", i + 1), d))
        .collect();
    layout.row(BlockKind::Guide, "+");
    let totals = layout.row(BlockKind::WorkRow, "place-value totals");
    let sum_row = layout.row(BlockKind::ResultRow, "sum");

    let mut rec = Recorder::new(PANE);
    let mut digits = Vec::with_capacity(width + 1);
    let mut carry = 0u64;
    for place in 0..width {
        let mut step = rec.step();
        let mut terms = Vec::new();
        for (d, &row) in operands.iter().zip(&rows) {
            if place < d.len() {
                step.highlight(row, place);
                terms.push(u64::from(d.digit(place)));
            }
        }
        let carry_in = carry;
        if carry_in > 0 {
            terms.push(carry_in);
        }
        let total = step.sum(&terms);
        let digit = (total % 10) as u8;
        carry = total / 10;
        step.write(totals, place, total.to_string());
        step.write(sum_row, place, digit.to_string());
        if carry > 0 {
            step.carry(carry, place + 1);
        }
        digits.push(digit);
        let shown = terms
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" + ");
        let incoming = if carry_in > 0 { " (including the carry)" } else { "" };
        rec.push(
            step,
            format!(
                "Add the {} place digits{incoming}: {shown} = {total}; write {digit}{}",
                place_name(place),
                carry_suffix(carry)
            ),
        );
    }
    if carry > 0 {
        let mut step = rec.step();
        let value = ExactValue::from(carry);
        step.write_digits(sum_row, width, &value);
        digits.extend(value.to_digit_string().digits());
        rec.push(
            step,
            format!("Write the final carry {carry} as the leading digits of the sum"),
        );
    }
    let cols = digits.len().max(width);
    let result = DigitString::from_digits(digits).expect("digits").normalized();
    Ok(rec.finish(layout.finish(cols), result, None))
}

/// Digit positions of the radicand, most-significant first, split into the
/// leading group and the digits that follow it.
struct Radicand {
    digits_msf: Vec<u8>,
    lead_len: usize,
    groups: usize,
}

impl Radicand {
    fn new(x: &DigitString) -> Self {
        let digits_msf: Vec<u8> = x.digits().iter().rev().copied().collect();
        let len = digits_msf.len();
        Self {
            lead_len: if len.is_multiple_of(2) { 2 } else { 1 },
            groups: len.div_ceil(2),
            digits_msf,
        }
    }

    fn len(&self) -> usize {
        self.digits_msf.len()
    }

    fn lead_group(&self) -> u64 {
        self.digits_msf[..self.lead_len]
            .iter()
            .fold(0, |acc, &d| acc * 10 + u64::from(d))
    }

    /// Column of the `j`-th digit after the leading group (1-based).
    fn col_after_lead(&self, j: usize) -> usize {
        self.len() - self.lead_len - j
    }

    fn digit_after_lead(&self, j: usize) -> u8 {
        self.digits_msf[self.lead_len + j - 1]
    }
}

/// Result of completing the running remainder over the pending places.
enum Completion {
    /// Every link stayed non-negative; the value is the exact remainder of
    /// the partial root against the matching prefix of the radicand.
    Holds(BigUint),
    /// A pending duplex exceeds the available amount.
    Overdraws { available: BigUint, duplex: u64 },
}

/// Dwandwa (duplex) square root: floor root and remainder.
///
/// Digits are paired from the right. The first root digit comes from the
/// leading group and fixes the divisor `2·r₁`. Each further group brings
/// down one digit, subtracts the duplex of the root digits found after the
/// first and divides by the divisor. A trial digit is accepted only if the
/// running remainder, carried through the places still pending for the
/// partial root, never goes negative; otherwise an adjustment step lowers it.
pub fn duplex_sqrt(x: &DigitString) -> MethodRun {
    let x = x.normalized();
    let rad = Radicand::new(&x);
    let m = rad.groups;

    let mut layout = Layout::new(PANE);
    let radicand = layout.operand_row("radicand", &x);
    let divisor_row = layout.row(BlockKind::Guide, "divisor");
    let net_row = layout.row(BlockKind::WorkRow, "net dividends");
    let running_row = layout.row(BlockKind::WorkRow, "running remainders");
    let root_row = layout.row(BlockKind::ResultRow, "root");
    let rem_row = layout.row(BlockKind::WorkRow, REMAINDER_LABEL);
    let grid = layout.finish(rad.len());

    let mut rec = Recorder::new(PANE);

    // Leading group.
    let lead = rad.lead_group();
    let first = (0..=9u64).rev().find(|r| r * r <= lead).expect("0² fits");
    let mut step = rec.step();
    for i in 0..rad.lead_len {
        step.highlight(radicand, rad.len() - 1 - i);
    }
    let square = first * first;
    step.op(format!("{first}²"), vec![first.into()], square.into(), 1, 0);
    if first < 9 {
        let next = first + 1;
        step.op(format!("{next}²"), vec![next.into()], (next * next).into(), 1, 0);
    }
    let mut remainder = step.difference(&BigUint::from(lead), &BigUint::from(square));
    let divisor = 2 * first;
    step.write(root_row, m - 1, first.to_string());
    step.write(running_row, m - 1, remainder.to_string());
    let mut description = format!(
        "Pair the digits from the right into {m} group{}; the leading group is {lead}. \
         The largest square not above it is {first}² = {square}, so the first root digit is {first} \
         and the remainder is {remainder}",
        if m == 1 { "" } else { "s" }
    );
    if m > 1 {
        step.product(2, first);
        step.write(divisor_row, 0, divisor.to_string());
        description.push_str(&format!("; the divisor is 2×{first} = {divisor}"));
    } else {
        step.write_digits(rem_row, 0, &remainder.clone().into());
    }
    rec.push(step, description);
    let mut final_remainder = remainder.clone();

    let mut root: Vec<u8> = vec![first as u8];
    for t in 2..=m {
        let mut step = rec.step();
        let e = rad.digit_after_lead(t - 1);
        step.highlight(radicand, rad.col_after_lead(t - 1));
        step.highlight(divisor_row, 0);
        let gross = &remainder * 10u32 + u32::from(e);
        step.op(
            format!("{remainder}×10+{e}"),
            vec![remainder.clone().into(), 10u64.into(), e.into()],
            gross.clone().into(),
            1,
            1,
        );
        let (net, duplex_note) = if t >= 3 {
            for p in 1..t - 1 {
                step.highlight(root_row, m - 1 - p);
            }
            let d = step.duplex(&root[1..]);
            let net = step.difference(&gross, &BigUint::from(d));
            (net, format!(" minus the duplex {d} of {}", digits_text(&root[1..])))
        } else {
            (gross.clone(), String::new())
        };
        let raw = &net / divisor;
        step.op(
            format!("{net}÷{divisor}"),
            vec![net.clone().into(), divisor.into()],
            raw.clone().into(),
            0,
            0,
        );
        let mut digit = raw.to_u64().map_or(9, |q| q.min(9));
        let capped = if raw > BigUint::from(9u32) { " (capped at 9)" } else { "" };
        let mut running = &net - BigUint::from(divisor * digit);
        step.op(
            format!("{net}−{divisor}×{digit}"),
            vec![net.clone().into(), divisor.into(), digit.into()],
            running.clone().into(),
            1,
            1,
        );
        let col = m - t;
        step.write(net_row, col, net.to_string());
        let mut description = format!(
            "Bring down {e}: gross dividend {gross}{duplex_note} leaves {net}; \
             {net} ÷ {divisor} gives trial digit {digit}{capped} with remainder {running}"
        );

        loop {
            let mut trial = root.clone();
            trial.push(digit as u8);
            match complete(&mut step, &rad, &trial, &running) {
                Completion::Holds(exact) => {
                    step.write(root_row, col, digit.to_string());
                    step.write(running_row, col, running.to_string());
                    if t == m {
                        step.write_digits(rem_row, 0, &exact.clone().into());
                        final_remainder = exact.clone();
                        description.push_str(&format!(
                            "; carrying it through the remaining places leaves the final remainder {exact}"
                        ));
                    } else {
                        description.push_str("; the pending places stay non-negative, so keep it");
                    }
                    rec.push(step, description);
                    root.push(digit as u8);
                    remainder = running;
                    break;
                }
                Completion::Overdraws { available, duplex } => {
                    description.push_str(&format!(
                        "; a later place would need {duplex} but only {available} is available, \
                         so digit {digit} overdraws"
                    ));
                    rec.push(step, description);
                    step = rec.step();
                    step.highlight(net_row, col);
                    let lowered = digit - 1;
                    step.op(
                        format!("{digit}−1"),
                        vec![digit.into(), 1u64.into()],
                        lowered.into(),
                        0,
                        1,
                    );
                    let restored = &running + BigUint::from(divisor);
                    step.op(
                        format!("{running}+{divisor}"),
                        vec![running.clone().into(), divisor.into()],
                        restored.clone().into(),
                        0,
                        1,
                    );
                    description = format!(
                        "Adjust: lower the root digit to {lowered} and return the divisor {divisor} \
                         to the remainder, giving {restored}"
                    );
                    digit = lowered;
                    running = restored;
                }
            }
        }
    }

    let result = DigitString::from_digits(root.iter().rev().copied().collect())
        .expect("root digits")
        .normalized();
    rec.finish(grid, result, Some(final_remainder.into()))
}

fn digits_text(digits: &[u8]) -> String {
    digits.iter().map(|d| char::from(b'0' + d)).collect()
}

/// Carries the running remainder of `root` (root digits so far, leading digit
/// first) through the places it has not yet paid for, recording each link.
fn complete(
    step: &mut crate::run::StepDraft,
    rad: &Radicand,
    root: &[u8],
    running: &BigUint,
) -> Completion {
    let t = root.len();
    let mut value = running.clone();
    // Pending places use the radicand digits following the one just brought
    // down; the place for digit j needs the duplex of the root digits whose
    // positions (1-based, after the first) sum to j + 2.
    for j in t..=2 * t - 2 {
        let e = rad.digit_after_lead(j);
        let available = &value * 10u32 + u32::from(e);
        step.op(
            format!("{value}×10+{e}"),
            vec![value.clone().into(), 10u64.into(), e.into()],
            available.clone().into(),
            1,
            1,
        );
        // Positions p, q in 2..=t with p + q = j + 2.
        let lo = j + 2 - t;
        let window = &root[lo - 1..t];
        let d = step.duplex(window);
        if available < BigUint::from(d) {
            return Completion::Overdraws {
                available,
                duplex: d,
            };
        }
        value = step.difference(&available, &BigUint::from(d));
    }
    Completion::Holds(value)
}

/// Subtraction by ten's complement (Nikhilam: all from 9 and the last from
/// 10). When the minuend is itself a power of ten the complement is the
/// answer; otherwise the complement is added and the leading 1 discarded.
pub fn complement_subtract(a: &DigitString, b: &DigitString) -> Result<MethodRun, MethodError> {
    if a.value() < b.value() {
        return Err(MethodError::NegativeResult {
            minuend: a.clone(),
            subtrahend: b.clone(),
        });
    }
    let na = a.normalized();
    let nb = b.normalized();
    let pure_power = na.len() >= 2
        && na.digits()[na.len() - 1] == 1
        && na.digits()[..na.len() - 1].iter().all(|&d| d == 0)
        && na.len() > nb.len();
    if pure_power {
        Ok(complement_of_power(&na, &nb))
    } else {
        Ok(complement_and_add(a, b))
    }
}

/// Writes the complement digits of `b` (padded to `width`) into `row`, one
/// step per place.
fn complement_steps(
    rec: &mut Recorder,
    b: &DigitString,
    width: usize,
    b_row: usize,
    row: usize,
    lead_note: &str,
) -> Vec<u8> {
    let last_nonzero = b.digits().iter().position(|&d| d != 0);
    let mut out = Vec::with_capacity(width + 1);
    for place in 0..width {
        let mut step = rec.step();
        let d = u64::from(b.digit(place));
        if place < b.len() {
            step.highlight(b_row, place);
        }
        let (digit, how) = match last_nonzero {
            Some(z) if place == z => {
                let c = 10 - d;
                step.op(format!("10−{d}"), vec![10u64.into(), d.into()], c.into(), 0, 1);
                (c, format!("the last non-zero digit comes from 10: 10−{d} = {c}"))
            }
            Some(z) if place > z => {
                let c = 9 - d;
                step.op(format!("9−{d}"), vec![9u64.into(), d.into()], c.into(), 0, 1);
                (c, format!("from 9: 9−{d} = {c}"))
            }
            _ => (0, "a trailing zero stays 0".to_owned()),
        };
        step.write(row, place, digit.to_string());
        out.push(digit as u8);
        let mut description = format!(
            "{}Complement digit at the {} place: {how}",
            if place == 0 { lead_note } else { "" },
            place_name(place)
        );
        if last_nonzero.is_none() && place + 1 == width {
            step.write(row, width, "1");
            out.push(1);
            description.push_str(&format!("; the complement of 0 is 1 followed by {width} zeros"));
        }
        rec.push(step, description);
    }
    out
}

fn complement_of_power(a: &DigitString, b: &DigitString) -> MethodRun {
    let width = a.len() - 1;
    let padded = pad_to_length(b, width).expect("width covers b");
    let mut layout = Layout::new(PANE);
    layout.operand_row("minuend", a);
    let b_row = layout.operand_row("subtrahend", &padded);
    let diff_row = layout.row(BlockKind::ResultRow, "difference");

    let mut rec = Recorder::new(PANE);
    let note = format!("{a} is 10^{width}, so the answer is the ten's complement of {padded}. ");
    let digits = complement_steps(&mut rec, &padded, width, b_row, diff_row, &note);
    let result = DigitString::from_digits(digits).expect("digits").normalized();
    rec.finish(layout.finish(width + 1), result, None)
}

fn complement_and_add(a: &DigitString, b: &DigitString) -> MethodRun {
    let width = a.len().max(b.len());
    let pa = pad_to_length(a, width).expect("width covers a");
    let pb = pad_to_length(b, width).expect("width covers b");
    let mut layout = Layout::new(PANE);
    let a_row = layout.operand_row("minuend", &pa);
    let b_row = layout.operand_row("subtrahend", &pb);
    let comp_row = layout.row(BlockKind::WorkRow, "complement");
    layout.row(BlockKind::Guide, "+");
    let sum_row = layout.row(BlockKind::WorkRow, "sum");
    let diff_row = layout.row(BlockKind::ResultRow, "difference");

    let mut rec = Recorder::new(PANE);
    let complement = complement_steps(&mut rec, &pb, width, b_row, comp_row, "");

    let mut sum_digits = Vec::with_capacity(width + 1);
    let mut carry = 0u64;
    for place in 0..=width {
        let mut step = rec.step();
        let mut terms = Vec::new();
        if place < width {
            step.highlight(a_row, place);
            terms.push(u64::from(pa.digit(place)));
        }
        if let Some(&c) = complement.get(place) {
            step.highlight(comp_row, place);
            terms.push(u64::from(c));
        }
        let carry_in = carry;
        if carry_in > 0 {
            terms.push(carry_in);
        }
        let total = step.sum(&terms);
        let digit = (total % 10) as u8;
        carry = total / 10;
        step.write(sum_row, place, digit.to_string());
        if carry > 0 {
            step.carry(carry, place + 1);
        }
        sum_digits.push(digit);
        let shown = terms
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" + ");
        let description = if place < width {
            format!(
                "Add the minuend and the complement at the {} place: {shown} = {total}; write {digit}{}",
                place_name(place),
                carry_suffix(carry)
            )
        } else {
            format!("Write the leading digit of the sum: {shown} = {total}")
        };
        rec.push(step, description);
    }

    let sum = DigitString::from_digits(sum_digits).expect("digits").value();
    let power = power_of_ten(width);
    let mut step = rec.step();
    step.highlight(sum_row, width);
    let diff = step.difference(sum.as_biguint(), power.as_biguint());
    let diff_digits = pad_to_length(&ExactValue::from(diff.clone()).to_digit_string(), width)
        .expect("difference fits the width");
    for (place, d) in diff_digits.digits().iter().enumerate() {
        step.write(diff_row, place, d.to_string());
    }
    rec.push(
        step,
        format!("Discard the leading 1, i.e. subtract 10^{width}: {sum} − {power} = {diff}"),
    );
    let result = if diff.is_zero() {
        DigitString::zero()
    } else {
        diff_digits.normalized()
    };
    rec.finish(layout.finish(width + 1), result, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeral::parse_operand;

    fn ds(text: &str) -> DigitString {
        parse_operand(text).unwrap()
    }

    fn value(run: &MethodRun) -> u64 {
        run.result.to_display_string().parse().unwrap()
    }

    #[test]
    fn criss_cross_single_digit() {
        let run = criss_cross_multiply(&ds("1"), &ds("1"));
        assert_eq!(run.steps.len(), 1);
        assert_eq!(run.steps[0].sub_ops.len(), 1);
        assert_eq!(run.steps[0].sub_ops[0].expression, "1×1");
        assert_eq!(value(&run), 1);
        assert_eq!(run.metrics.digit_multiplications, 1);
        run.replay().unwrap();
    }

    #[test]
    fn criss_cross_12_by_34() {
        let run = criss_cross_multiply(&ds("12"), &ds("34"));
        let totals: Vec<&str> = run
            .steps
            .iter()
            .map(|s| s.writes[0].token.as_str())
            .collect();
        assert_eq!(totals, ["8", "10", "4"]);
        assert_eq!(run.steps[1].carry_note.as_ref().unwrap().value, 1u64.into());
        assert_eq!(value(&run), 408);
        let exprs: Vec<&str> = run
            .steps
            .iter()
            .flat_map(|s| &s.sub_ops)
            .map(|o| o.expression.as_str())
            .collect();
        assert_eq!(exprs, ["2×4", "1×4", "2×3", "4+6", "1×3", "3+1"]);
        run.replay().unwrap();
    }

    #[test]
    fn criss_cross_final_carry_and_padding() {
        let run = criss_cross_multiply(&ds("99"), &ds("99"));
        assert_eq!(value(&run), 9801);
        assert_eq!(run.steps.len(), 4);
        let run = criss_cross_multiply(&ds("12"), &ds("345"));
        assert_eq!(value(&run), 4140);
        assert_eq!(run.metrics.digit_multiplications, 9);
        assert_eq!(run.steps.len(), 5);
        run.replay().unwrap();
    }

    #[test]
    fn place_value_add_examples() {
        let run = place_value_add(&[ds("999"), ds("1")]).unwrap();
        assert_eq!(value(&run), 1000);
        assert_eq!(run.steps.len(), 4);
        assert_eq!(run.metrics.carries, 3);
        run.replay().unwrap();

        let run = place_value_add(&[ds("123"), ds("456"), ds("789")]).unwrap();
        assert_eq!(value(&run), 1368);
        run.replay().unwrap();

        let run = place_value_add(&[ds("0"), ds("4321")]).unwrap();
        assert_eq!(value(&run), 4321);
        run.replay().unwrap();

        assert_eq!(
            place_value_add(&[ds("1")]).unwrap_err(),
            MethodError::Arity { min: 2, max: 10, got: 1 }
        );
        assert!(place_value_add(&vec![ds("1"); 11]).is_err());
        assert!(place_value_add(&vec![ds("9"); 10]).is_ok());
    }

    #[test]
    fn duplex_sqrt_examples() {
        for (x, root, rem) in [(0u64, 0u64, 0u64), (1, 1, 0), (2025, 45, 0), (2026, 45, 1), (99, 9, 18)] {
            let run = duplex_sqrt(&DigitString::from_u64(x));
            assert_eq!(value(&run), root, "root of {x}");
            assert_eq!(run.remainder, Some(rem.into()), "remainder of {x}");
            run.replay().unwrap();
        }
    }

    #[test]
    fn duplex_sqrt_adjusts_overdrawn_digit() {
        // 4899: 69 is tried first for 6·10 + 9 > √4899 ≈ 69.99.
        // Exhaustively find an input that forces an adjustment step.
        let mut found = false;
        for x in 100u64..20000 {
            let run = duplex_sqrt(&DigitString::from_u64(x));
            let root = (x as f64).sqrt() as u64;
            assert_eq!(value(&run), root, "{x}");
            if run.steps.iter().any(|s| s.description.starts_with("Adjust")) {
                found = true;
                run.replay().unwrap();
            }
        }
        assert!(found, "no adjustment exercised");
    }

    #[test]
    fn duplex_sqrt_ignores_leading_zeros() {
        let run = duplex_sqrt(&ds("002025"));
        assert_eq!(value(&run), 45);
        assert_eq!(run.steps.len(), 2);
    }

    #[test]
    fn complement_examples() {
        let run = complement_subtract(&ds("1000"), &ds("456")).unwrap();
        assert_eq!(value(&run), 544);
        assert_eq!(run.steps.len(), 3);
        run.replay().unwrap();

        let run = complement_subtract(&ds("731"), &ds("0")).unwrap();
        assert_eq!(value(&run), 731);
        run.replay().unwrap();

        let run = complement_subtract(&ds("100"), &ds("0")).unwrap();
        assert_eq!(value(&run), 100);
        run.replay().unwrap();

        let run = complement_subtract(&ds("523"), &ds("523")).unwrap();
        assert_eq!(value(&run), 0);
        run.replay().unwrap();

        // Round numbers that are not powers of ten take the addition path.
        for (a, b, d) in [("70", "08", 62), ("70", "8", 62), ("200", "37", 163), ("9000", "1", 8999)] {
            let run = complement_subtract(&ds(a), &ds(b)).unwrap();
            assert_eq!(value(&run), d, "{a}−{b}");
            run.replay().unwrap();
        }

        let run = complement_subtract(&ds("7"), &ds("0000")).unwrap();
        assert_eq!(value(&run), 7);
        run.replay().unwrap();

        assert!(matches!(
            complement_subtract(&ds("123"), &ds("456")),
            Err(MethodError::NegativeResult { .. })
        ));
    }
}
