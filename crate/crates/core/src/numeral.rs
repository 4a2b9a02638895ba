//! Exact non-negative decimal integers and the digit-level primitives the
//! methods are built from.
//!
//! [`DigitString`] keeps digits least-significant first, so index `k` is the
//! place value `10^k`. Rendering layers reverse the order for display.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Failure to read an operand from text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid operand at position {position}: {reason}")]
pub struct ParseError {
    /// Character offset into the original (untrimmed) text.
    pub position: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("requested width {requested} is shorter than the {actual} digits present")]
pub struct LengthError {
    pub requested: usize,
    pub actual: usize,
}

/// Base-10 digit sequence, index 0 = units. Always holds at least one digit.
///
/// Leading (most-significant) zeros are allowed; [`DigitString::normalized`]
/// strips them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    digits: Vec<u8>,
}

impl DigitString {
    pub fn zero() -> Self {
        Self { digits: vec![0] }
    }

    /// Builds from least-significant-first digits. Returns `None` if the slice
    /// is empty or holds a value above 9.
    pub fn from_digits(digits: Vec<u8>) -> Option<Self> {
        if digits.is_empty() || digits.iter().any(|&d| d > 9) {
            return None;
        }
        Some(Self { digits })
    }

    pub fn from_u64(mut value: u64) -> Self {
        let mut digits = Vec::new();
        loop {
            digits.push((value % 10) as u8);
            value /= 10;
            if value == 0 {
                break;
            }
        }
        Self { digits }
    }

    /// Digits least-significant first.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Digit at place `10^place`, zero beyond the stored length.
    pub fn digit(&self, place: usize) -> u8 {
        self.digits.get(place).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// Always false; a digit string holds at least one digit.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// Strips leading zeros, keeping a single `0` for zero.
    pub fn normalized(&self) -> Self {
        let keep = self
            .digits
            .iter()
            .rposition(|&d| d != 0)
            .map_or(1, |i| i + 1);
        Self {
            digits: self.digits[..keep].to_vec(),
        }
    }

    pub fn value(&self) -> ExactValue {
        value_of(self)
    }

    /// Digits most-significant first, as a person would write them.
    pub fn to_display_string(&self) -> String {
        self.digits
            .iter()
            .rev()
            .map(|&d| char::from(b'0' + d))
            .collect()
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_display_string())
    }
}

impl FromStr for DigitString {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_operand(s)
    }
}

impl Serialize for DigitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_display_string())
    }
}

impl<'de> Deserialize<'de> for DigitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_operand(&text).map_err(serde::de::Error::custom)
    }
}

/// Arbitrary-precision non-negative integer. Serialized as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactValue(BigUint);

impl ExactValue {
    pub fn new(value: BigUint) -> Self {
        Self(value)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Inverse of [`value_of`]; the result is normalized.
    pub fn to_digit_string(&self) -> DigitString {
        DigitString {
            digits: self.0.to_radix_le(10),
        }
    }
}

impl From<u64> for ExactValue {
    fn from(value: u64) -> Self {
        Self(BigUint::from(value))
    }
}

impl From<u32> for ExactValue {
    fn from(value: u32) -> Self {
        Self(BigUint::from(value))
    }
}

impl From<u8> for ExactValue {
    fn from(value: u8) -> Self {
        Self(BigUint::from(value))
    }
}

impl From<BigUint> for ExactValue {
    fn from(value: BigUint) -> Self {
        Self(value)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for ExactValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        let digits = parse_operand(&text).map_err(serde::de::Error::custom)?;
        Ok(digits.value())
    }
}

/// Reads an operand: optional surrounding whitespace around one or more ASCII
/// digits. Leading zeros are preserved.
pub fn parse_operand(text: &str) -> Result<DigitString, ParseError> {
    let start = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.is_empty() {
        return Err(ParseError {
            position: 0,
            reason: "operand is empty".to_owned(),
        });
    }
    let mut digits = Vec::with_capacity(body.len());
    for (offset, ch) in body.char_indices() {
        let position = start + offset;
        let reason = match ch {
            '0'..='9' => {
                digits.push(ch as u8 - b'0');
                continue;
            }
            '+' | '-' | '\u{2212}' => "signs are not accepted; operands are non-negative integers",
            '.' | ',' => "decimal points are not accepted; operands are whole numbers",
            c if c.is_whitespace() => "whitespace inside an operand",
            _ => "not a decimal digit",
        };
        return Err(ParseError {
            position,
            reason: format!("{reason} (found {ch:?})"),
        });
    }
    digits.reverse();
    Ok(DigitString { digits })
}

/// Σ digits[i]·10^i.
pub fn value_of(digits: &DigitString) -> ExactValue {
    ExactValue(BigUint::from_radix_le(&digits.digits, 10).unwrap_or_default())
}

/// Extends with leading zeros to exactly `width` places.
pub fn pad_to_length(digits: &DigitString, width: usize) -> Result<DigitString, LengthError> {
    if width < digits.len() {
        return Err(LengthError {
            requested: width,
            actual: digits.len(),
        });
    }
    let mut padded = digits.digits.clone();
    padded.resize(width, 0);
    Ok(DigitString { digits: padded })
}

/// Dwandwa: twice the sum of products of digit pairs equidistant from the
/// ends, plus the square of the middle digit when the length is odd.
pub fn duplex(digits: &DigitString) -> ExactValue {
    duplex_u64(&digits.digits).into()
}

pub(crate) fn duplex_u64(digits: &[u8]) -> u64 {
    let len = digits.len();
    let mut total = 0u64;
    for i in 0..len / 2 {
        total += 2 * u64::from(digits[i]) * u64::from(digits[len - 1 - i]);
    }
    if len % 2 == 1 {
        let mid = u64::from(digits[len / 2]);
        total += mid * mid;
    }
    total
}

/// `10^width − value`, formed by the all-from-9-last-from-10 rule.
///
/// The result has `width` digits, or `width + 1` when the input is zero.
pub fn tens_complement(digits: &DigitString, width: usize) -> Result<DigitString, LengthError> {
    let significant = digits.normalized();
    if significant.is_zero() {
        let mut out = vec![0; width];
        out.push(1);
        return Ok(DigitString { digits: out });
    }
    if width < significant.len() {
        return Err(LengthError {
            requested: width,
            actual: significant.len(),
        });
    }
    let padded = pad_to_length(&significant, width)?;
    let last_nonzero = padded
        .digits
        .iter()
        .position(|&d| d != 0)
        .expect("non-zero value has a non-zero digit");
    let out = padded
        .digits
        .iter()
        .enumerate()
        .map(|(place, &d)| match place.cmp(&last_nonzero) {
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Equal => 10 - d,
            std::cmp::Ordering::Greater => 9 - d,
        })
        .collect();
    Ok(DigitString { digits: out })
}

/// `10^exponent` as an exact value.
pub fn power_of_ten(exponent: usize) -> ExactValue {
    let mut value = BigUint::one();
    for _ in 0..exponent {
        value *= 10u32;
    }
    ExactValue(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ds(text: &str) -> DigitString {
        parse_operand(text).unwrap()
    }

    fn big(text: &str) -> BigUint {
        text.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(ds("0").digits(), &[0]);
        assert_eq!(ds("123").digits(), &[3, 2, 1]);
        assert_eq!(ds("007").digits(), &[7, 0, 0]);
        assert_eq!(ds("007").value(), ExactValue::from(7u64));
        assert_eq!(ds("  42\t").digits(), &[2, 4]);
    }

    #[test]
    fn parse_rejections() {
        for (text, position) in [("", 0), ("   ", 0), ("-4", 0), ("+4", 0), ("1.5", 1), ("12a", 2), ("1 2", 1)] {
            let err = parse_operand(text).unwrap_err();
            assert_eq!(err.position, position, "{text:?}");
        }
        assert!(parse_operand("1.5").unwrap_err().reason.contains("decimal"));
        assert!(parse_operand("-4").unwrap_err().reason.contains("sign"));
    }

    #[test]
    fn value_examples() {
        assert_eq!(value_of(&DigitString::zero()), ExactValue::from(0u64));
        assert_eq!(value_of(&ds("123")), ExactValue::from(123u64));
        assert_eq!(
            value_of(&DigitString::from_digits(vec![9; 10]).unwrap()),
            ExactValue::from(9_999_999_999u64)
        );
    }

    #[test]
    fn padding() {
        assert_eq!(pad_to_length(&ds("7"), 3).unwrap().digits(), &[7, 0, 0]);
        assert_eq!(pad_to_length(&ds("123"), 3).unwrap(), ds("123"));
        assert_eq!(
            pad_to_length(&ds("123"), 2),
            Err(LengthError { requested: 2, actual: 3 })
        );
    }

    #[test]
    fn duplex_examples() {
        assert_eq!(duplex(&ds("4")), ExactValue::from(16u64));
        assert_eq!(duplex(&ds("23")), ExactValue::from(12u64));
        assert_eq!(duplex(&ds("345")), ExactValue::from(46u64));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(tens_complement(&ds("7"), 1).unwrap(), ds("3"));
        assert_eq!(tens_complement(&ds("0"), 3).unwrap().value(), ExactValue::from(1000u64));
        assert_eq!(tens_complement(&ds("456"), 3).unwrap().value(), ExactValue::from(544u64));
        assert_eq!(tens_complement(&ds("100"), 3).unwrap(), ds("900"));
        assert_eq!(tens_complement(&ds("0456"), 3).unwrap(), ds("544"));
        assert!(tens_complement(&ds("1234"), 3).is_err());
    }

    #[test]
    fn normalize_and_zero() {
        assert_eq!(ds("000").normalized(), ds("0"));
        assert_eq!(ds("0120").normalized(), ds("120"));
        assert!(ds("000").is_zero());
        assert_eq!(ExactValue::from(0u64).to_digit_string(), ds("0"));
        assert!(DigitString::from_digits(vec![]).is_none());
        assert!(DigitString::from_digits(vec![10]).is_none());
    }

    fn digit_text(max_len: usize) -> impl Strategy<Value = String> {
        proptest::collection::vec(0u8..10, 1..=max_len)
            .prop_map(|ds| ds.into_iter().map(|d| char::from(b'0' + d)).collect())
    }

    proptest! {
        #[test]
        fn parse_round_trips_against_bigint(text in digit_text(50)) {
            prop_assert_eq!(value_of(&ds(&text)).into_biguint(), big(&text));
        }

        #[test]
        fn value_round_trips_on_normalized(text in digit_text(30)) {
            let d = ds(&text).normalized();
            prop_assert_eq!(d.value().to_digit_string(), d);
        }

        #[test]
        fn padding_is_value_neutral(text in digit_text(20), extra in 0usize..10) {
            let d = ds(&text);
            let padded = pad_to_length(&d, d.len() + extra).unwrap();
            prop_assert_eq!(padded.len(), d.len() + extra);
            prop_assert_eq!(&padded.digits()[..d.len()], d.digits());
            prop_assert_eq!(padded.value(), d.value());
        }

        #[test]
        fn duplex_matches_pair_sum(digits in proptest::collection::vec(0u8..10, 1..=6)) {
            let len = digits.len();
            let mut brute = 0u64;
            for i in 0..len {
                for j in 0..len {
                    if i + j == len - 1 {
                        brute += u64::from(digits[i]) * u64::from(digits[j]);
                    }
                }
            }
            let d = DigitString::from_digits(digits).unwrap();
            prop_assert_eq!(duplex(&d), ExactValue::from(brute));
        }

        #[test]
        fn complement_sums_to_power(text in digit_text(12), extra in 0usize..4) {
            let d = ds(&text);
            let width = d.normalized().len() + extra;
            let c = tens_complement(&d, width).unwrap();
            let sum = d.value().into_biguint() + c.value().into_biguint();
            prop_assert_eq!(sum, power_of_ten(width).into_biguint());
            if !d.is_zero() {
                prop_assert_eq!(c.len(), width);
            }
        }
    }
}
