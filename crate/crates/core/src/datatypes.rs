//! Number formats, bit-matrix encoding and the reference ordering.
//!
//! A dataset is stored row-major as one `u64` word per number; column 1 is
//! the most significant bit. Floating-point formats follow the IEEE-style
//! value equation `(-1)^s * 1.f * 2^(e - bias)` with `e = 0` read as the
//! subnormal `0.f * 2^(1 - bias)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rowset::RowSet;

pub const MAX_WIDTH: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormatKind {
    Unsigned,
    TwosComplement,
    SignMagnitude,
    Float,
}

impl FormatKind {
    pub fn name(self) -> &'static str {
        match self {
            FormatKind::Unsigned => "unsigned",
            FormatKind::TwosComplement => "twos_complement",
            FormatKind::SignMagnitude => "sign_magnitude",
            FormatKind::Float => "float",
        }
    }
}

impl FromStr for FormatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "unsigned" => Ok(FormatKind::Unsigned),
            "twos_complement" => Ok(FormatKind::TwosComplement),
            "sign_magnitude" => Ok(FormatKind::SignMagnitude),
            "float" => Ok(FormatKind::Float),
            other => Err(Error::Format(format!("unknown format kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "min")]
    MinFirst,
    #[serde(rename = "max")]
    MaxFirst,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" | "min-first" | "asc" => Ok(Direction::MinFirst),
            "max" | "max-first" | "desc" => Ok(Direction::MaxFirst),
            other => Err(Error::Config(format!("unknown direction '{other}'"))),
        }
    }
}

/// How one column of the (possibly padded) bit matrix takes part in number
/// exclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ColumnRole {
    Magnitude,
    /// Two's complement sign column: exclusion polarity is inverted.
    TwosSign,
    /// Explicit sign bit of sign-magnitude and float words.
    Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumberFormat {
    pub kind: FormatKind,
    pub width: u32,
    #[serde(default)]
    pub exp_bits: u32,
    #[serde(default)]
    pub frac_bits: u32,
    #[serde(default)]
    pub bias: i32,
}

impl NumberFormat {
    pub fn unsigned(width: u32) -> Result<Self> {
        Self::int(FormatKind::Unsigned, width)
    }

    pub fn twos_complement(width: u32) -> Result<Self> {
        Self::int(FormatKind::TwosComplement, width)
    }

    pub fn sign_magnitude(width: u32) -> Result<Self> {
        Self::int(FormatKind::SignMagnitude, width)
    }

    fn int(kind: FormatKind, width: u32) -> Result<Self> {
        let fmt = NumberFormat { kind, width, exp_bits: 0, frac_bits: 0, bias: 0 };
        fmt.validate()?;
        Ok(fmt)
    }

    /// Float format with the default bias `2^(exp_bits-1) - 1`.
    pub fn float(exp_bits: u32, frac_bits: u32) -> Result<Self> {
        if exp_bits == 0 || exp_bits > 11 {
            return Err(Error::Format(format!("exp_bits must be in 1..=11, got {exp_bits}")));
        }
        Self::float_with_bias(exp_bits, frac_bits, (1i32 << (exp_bits - 1)) - 1)
    }

    pub fn float_with_bias(exp_bits: u32, frac_bits: u32, bias: i32) -> Result<Self> {
        let fmt = NumberFormat {
            kind: FormatKind::Float,
            width: 1 + exp_bits + frac_bits,
            exp_bits,
            frac_bits,
            bias,
        };
        fmt.validate()?;
        Ok(fmt)
    }

    /// 1 sign, 5 exponent and 10 fraction bits, bias 15.
    pub fn half() -> Self {
        NumberFormat { kind: FormatKind::Float, width: 16, exp_bits: 5, frac_bits: 10, bias: 15 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.width > MAX_WIDTH {
            return Err(Error::Format(format!("width must be in 1..={MAX_WIDTH}, got {}", self.width)));
        }
        if self.kind != FormatKind::Float {
            return Ok(());
        }
        if self.exp_bits == 0 || self.exp_bits > 11 || self.frac_bits > 52 {
            return Err(Error::Format(format!(
                "float needs 1..=11 exponent bits and at most 52 fraction bits (exp={}, frac={})",
                self.exp_bits, self.frac_bits
            )));
        }
        if 1 + self.exp_bits + self.frac_bits != self.width {
            return Err(Error::Format(format!(
                "float width {} != 1 + {} + {}",
                self.width, self.exp_bits, self.frac_bits
            )));
        }
        // Every bit pattern must decode to a finite f64 without rounding.
        let top_exp = (1i64 << self.exp_bits) - 1 - self.bias as i64;
        let low_exp = 1 - self.bias as i64 - self.frac_bits as i64;
        if top_exp > 1023 || low_exp < -1074 {
            return Err(Error::Format(format!(
                "float exponent range 2^{low_exp}..2^{top_exp} exceeds f64"
            )));
        }
        Ok(())
    }

    pub fn is_signed(&self) -> bool {
        self.kind != FormatKind::Unsigned
    }

    /// Whether the format carries a separate sign bit that drives the sign phase.
    pub fn has_sign_bit(&self) -> bool {
        matches!(self.kind, FormatKind::SignMagnitude | FormatKind::Float)
    }

    fn mask(&self) -> u64 {
        if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        }
    }

    /// Bit at 0-based column `col` counted from the MSB.
    pub fn bit(&self, word: u64, col: u32) -> bool {
        (word >> (self.width - 1 - col)) & 1 == 1
    }

    /// Bit at column `col` of the word widened to `self.width + pad` columns.
    /// Two's complement is sign-extended, sign-magnitude and float get zeros
    /// inserted between sign and magnitude, unsigned gets leading zeros.
    pub fn padded_bit(&self, word: u64, pad: u32, col: u32) -> bool {
        match self.kind {
            FormatKind::Unsigned => col >= pad && self.bit(word, col - pad),
            FormatKind::TwosComplement => {
                if col < pad {
                    self.bit(word, 0)
                } else {
                    self.bit(word, col - pad)
                }
            }
            FormatKind::SignMagnitude | FormatKind::Float => {
                if col == 0 {
                    self.bit(word, 0)
                } else if col <= pad {
                    false
                } else {
                    self.bit(word, col - pad)
                }
            }
        }
    }

    /// Exclusion role of every column of the padded matrix.
    pub fn column_roles(&self, pad: u32) -> Vec<ColumnRole> {
        let total = self.width + pad;
        (0..total)
            .map(|col| match self.kind {
                FormatKind::Unsigned => ColumnRole::Magnitude,
                FormatKind::TwosComplement if col <= pad => ColumnRole::TwosSign,
                FormatKind::TwosComplement => ColumnRole::Magnitude,
                _ if col == 0 => ColumnRole::Sign,
                _ => ColumnRole::Magnitude,
            })
            .collect()
    }

    /// Header line of the dataset file format.
    pub fn header(&self) -> String {
        match self.kind {
            FormatKind::Float => format!(
                "#fmt=float,W={},exp={},frac={},bias={}",
                self.width, self.exp_bits, self.frac_bits, self.bias
            ),
            kind => format!("#fmt={},W={}", kind.name(), self.width),
        }
    }

    pub fn parse_header(line: &str) -> Result<Self> {
        let body = line
            .trim()
            .strip_prefix('#')
            .ok_or_else(|| Error::Format("header must start with '#'".into()))?;
        let mut kind = None;
        let mut width = None;
        let mut exp = None;
        let mut frac = None;
        let mut bias = None;
        for field in body.split(',') {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("malformed header field '{field}'")))?;
            let value = value.trim();
            let num = |v: &str| -> Result<i64> {
                v.parse::<i64>().map_err(|_| Error::Format(format!("bad number '{v}' in header")))
            };
            match key.trim() {
                "fmt" => kind = Some(value.parse::<FormatKind>()?),
                "W" | "w" => width = Some(num(value)?),
                "exp" => exp = Some(num(value)?),
                "frac" => frac = Some(num(value)?),
                "bias" => bias = Some(num(value)?),
                other => return Err(Error::Format(format!("unknown header key '{other}'"))),
            }
        }
        let kind = kind.ok_or_else(|| Error::Format("header lacks fmt=".into()))?;
        let to_u32 = |v: i64, what: &str| -> Result<u32> {
            u32::try_from(v).map_err(|_| Error::Format(format!("{what} out of range: {v}")))
        };
        let fmt = match kind {
            FormatKind::Float => {
                let e = to_u32(exp.ok_or_else(|| Error::Format("float header lacks exp=".into()))?, "exp")?;
                let f = to_u32(frac.ok_or_else(|| Error::Format("float header lacks frac=".into()))?, "frac")?;
                let fmt = match bias {
                    Some(b) => NumberFormat::float_with_bias(e, f, b as i32)?,
                    None => NumberFormat::float(e, f)?,
                };
                if let Some(w) = width {
                    if w != fmt.width as i64 {
                        return Err(Error::Format(format!("W={w} but 1+exp+frac={}", fmt.width)));
                    }
                }
                fmt
            }
            _ => {
                let w = to_u32(width.ok_or_else(|| Error::Format("header lacks W=".into()))?, "W")?;
                NumberFormat::int(kind, w)?
            }
        };
        Ok(fmt)
    }

    /// Encode one value, rejecting anything outside the format's range or precision.
    pub fn encode_value(&self, value: Value) -> Result<u64> {
        let reject = || Error::Unrepresentable { value: value.to_string(), fmt: self.to_string() };
        match self.kind {
            FormatKind::Float => {
                let x = value.as_f64();
                let word = encode_float(x, self).ok_or_else(reject)?;
                Ok(word)
            }
            kind => {
                let (neg_zero, v) = match value {
                    Value::Int(v) => (false, v),
                    Value::NegativeZero => (true, 0),
                    Value::Float(f) => {
                        if !f.is_finite() || f.fract() != 0.0 || f.abs() >= 1e38 {
                            return Err(reject());
                        }
                        (f == 0.0 && f.is_sign_negative(), f as i128)
                    }
                };
                let w = self.width;
                match kind {
                    FormatKind::Unsigned => {
                        if v < 0 || v > self.mask() as i128 {
                            return Err(reject());
                        }
                        Ok(v as u64)
                    }
                    FormatKind::TwosComplement => {
                        let lo = -(1i128 << (w - 1));
                        let hi = (1i128 << (w - 1)) - 1;
                        if v < lo || v > hi {
                            return Err(reject());
                        }
                        Ok((v as i64 as u64) & self.mask())
                    }
                    _ => {
                        let hi = (1i128 << (w - 1)) - 1;
                        if v.abs() > hi || (w == 1 && v != 0) {
                            return Err(reject());
                        }
                        let sign = (v < 0 || neg_zero) as u64;
                        Ok((sign << (w - 1)) | v.unsigned_abs() as u64)
                    }
                }
            }
        }
    }

    pub fn decode_word(&self, word: u64) -> Value {
        let word = word & self.mask();
        let w = self.width;
        match self.kind {
            FormatKind::Unsigned => Value::Int(word as i128),
            FormatKind::TwosComplement => {
                let sign = (word >> (w - 1)) & 1;
                Value::Int(word as i128 - ((sign as i128) << w))
            }
            FormatKind::SignMagnitude => {
                let sign = (word >> (w - 1)) & 1 == 1;
                let mag = (word & (self.mask() >> 1)) as i128;
                match (sign, mag) {
                    (true, 0) => Value::NegativeZero,
                    (true, m) => Value::Int(-m),
                    (false, m) => Value::Int(m),
                }
            }
            FormatKind::Float => Value::Float(decode_float(word, self)),
        }
    }

    /// Parse one value as written in a dataset file.
    pub fn parse_value(&self, text: &str) -> Result<Value> {
        let t = text.trim();
        let bad = || Error::Format(format!("cannot parse '{t}' as {self}"));
        let value = match self.kind {
            FormatKind::Float => Value::Float(t.parse::<f64>().map_err(|_| bad())?),
            _ if t == "-0" => Value::NegativeZero,
            _ => Value::Int(t.parse::<i128>().map_err(|_| bad())?),
        };
        self.encode_value(value)?;
        Ok(value)
    }
}

impl fmt::Display for NumberFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FormatKind::Float => write!(
                f,
                "float W={} (exp={}, frac={}, bias={})",
                self.width, self.exp_bits, self.frac_bits, self.bias
            ),
            kind => write!(f, "{} W={}", kind.name(), self.width),
        }
    }
}

fn pow2(k: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

/// `x * 2^k` in steps so no intermediate leaves the normal range.
fn ldexp(mut x: f64, mut k: i64) -> f64 {
    while k > 1000 {
        x *= pow2(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= pow2(-1000);
        k += 1000;
    }
    x * pow2(k)
}

/// Floor of log2 for a positive finite f64, including f64 subnormals.
fn ilog2(m: f64) -> i64 {
    let bits = m.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i64;
    if e == 0 {
        let mant = bits & ((1u64 << 52) - 1);
        -1074 + (63 - mant.leading_zeros() as i64)
    } else {
        e - 1023
    }
}

fn decode_float(word: u64, fmt: &NumberFormat) -> f64 {
    let f = fmt.frac_bits;
    let frac = word & ((1u64 << f) - 1);
    let exp = (word >> f) & ((1u64 << fmt.exp_bits) - 1);
    let sign = (word >> (fmt.width - 1)) & 1 == 1;
    let mag = if exp == 0 {
        ldexp(frac as f64, 1 - fmt.bias as i64 - f as i64)
    } else {
        ldexp(((1u64 << f) | frac) as f64, exp as i64 - fmt.bias as i64 - f as i64)
    };
    if sign {
        -mag
    } else {
        mag
    }
}

fn encode_float(x: f64, fmt: &NumberFormat) -> Option<u64> {
    if !x.is_finite() {
        return None;
    }
    let sign = (x.is_sign_negative() as u64) << (fmt.width - 1);
    let m = x.abs();
    if m == 0.0 {
        return Some(sign);
    }
    let f = fmt.frac_bits as i64;
    let u = ilog2(m);
    let e = u + fmt.bias as i64;
    let all_ones = (1i64 << fmt.exp_bits) - 1;
    let (exp, frac) = if e >= 1 {
        if e >= all_ones {
            return None;
        }
        let mant = ldexp(m, f - u);
        if mant.fract() != 0.0 {
            return None;
        }
        (e as u64, mant as u64 - (1u64 << f))
    } else {
        let mant = ldexp(m, f + fmt.bias as i64 - 1);
        if mant.fract() != 0.0 || mant >= pow2(f) {
            return None;
        }
        (0, mant as u64)
    };
    let word = sign | (exp << f) | frac;
    (decode_float(word, fmt).to_bits() == x.to_bits()).then_some(word)
}

/// A decoded number. Sign-magnitude keeps negative zero distinct from zero.
#[derive(Debug, Clone, Copy)]
pub enum Value {
    Int(i128),
    NegativeZero,
    Float(f64),
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Value::Int(v) => v as f64,
            Value::NegativeZero => -0.0,
            Value::Float(f) => f,
        }
    }

    /// Total order used everywhere in the crate; `-0` sorts just below `+0`.
    pub fn total_cmp(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::NegativeZero, Value::NegativeZero) => Ordering::Equal,
            _ => self.as_f64().total_cmp(&other.as_f64()),
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.total_cmp(other) == Ordering::Equal
    }
}

impl Eq for Value {}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::NegativeZero => write!(f, "-0"),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Value::Int(v) => match i64::try_from(v) {
                Ok(v) => s.serialize_i64(v),
                Err(_) => s.serialize_u64(v as u64),
            },
            Value::NegativeZero => s.serialize_f64(-0.0),
            Value::Float(x) => s.serialize_f64(x),
        }
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v as i128)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

/// N x W bit matrix in input row order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedDataset {
    pub fmt: NumberFormat,
    words: Vec<u64>,
}

impl EncodedDataset {
    /// Wrap raw words; bits above the format width are dropped.
    pub fn from_words(fmt: NumberFormat, words: Vec<u64>) -> Self {
        let mask = fmt.mask();
        EncodedDataset { fmt, words: words.into_iter().map(|w| w & mask).collect() }
    }

    pub fn n_rows(&self) -> usize {
        self.words.len()
    }

    pub fn width(&self) -> u32 {
        self.fmt.width
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn word(&self, row: usize) -> u64 {
        self.words[row]
    }

    /// Bit of `row` at 1-based column `col` (1 = MSB).
    pub fn bit(&self, row: usize, col: u32) -> bool {
        self.fmt.bit(self.words[row], col - 1)
    }

    /// Rows holding a 1 at 1-based column `col`.
    pub fn column(&self, col: u32) -> RowSet {
        let n = self.n_rows();
        RowSet::from_rows(n, (0..n).filter(|&r| self.bit(r, col)))
    }

    pub fn row_bits(&self, row: usize) -> String {
        (1..=self.width()).map(|c| if self.bit(row, c) { '1' } else { '0' }).collect()
    }

    pub fn values(&self) -> Vec<Value> {
        self.words.iter().map(|&w| self.fmt.decode_word(w)).collect()
    }
}

pub fn encode(values: &[Value], fmt: NumberFormat) -> Result<EncodedDataset> {
    fmt.validate()?;
    let words = values.iter().map(|&v| fmt.encode_value(v)).collect::<Result<Vec<_>>>()?;
    Ok(EncodedDataset { fmt, words })
}

/// Encode plain unsigned integers.
pub fn encode_unsigned(values: &[u64], width: u32) -> Result<EncodedDataset> {
    let fmt = NumberFormat::unsigned(width)?;
    let vals: Vec<Value> = values.iter().map(|&v| Value::Int(v as i128)).collect();
    encode(&vals, fmt)
}

pub fn decode(ds: &EncodedDataset, row: usize) -> Result<Value> {
    if row >= ds.n_rows() {
        return Err(Error::OutOfRange { index: row, limit: ds.n_rows() });
    }
    Ok(ds.fmt.decode_word(ds.words[row]))
}

/// Stable ordering of row indices; ties keep ascending row order in both directions.
pub fn reference_order(values: &[Value], direction: Direction) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    match direction {
        Direction::MinFirst => idx.sort_by(|&a, &b| values[a].cmp(&values[b])),
        Direction::MaxFirst => idx.sort_by(|&a, &b| values[b].cmp(&values[a])),
    }
    idx
}

/// Parse the text dataset format: a `#fmt=...` header then one value per line.
pub fn parse_dataset(text: &str) -> Result<(NumberFormat, Vec<Value>)> {
    let mut fmt = None;
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let Some(f) = fmt else {
            if !line.starts_with("#fmt=") {
                return Err(Error::Parse { line: line_no, msg: "expected '#fmt=' header".into() });
            }
            fmt = Some(
                NumberFormat::parse_header(line)
                    .map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?,
            );
            continue;
        };
        if line.starts_with('#') {
            continue;
        }
        let v = f
            .parse_value(line)
            .map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
        values.push(v);
    }
    let fmt = fmt.ok_or(Error::Parse { line: 1, msg: "missing '#fmt=' header".into() })?;
    Ok((fmt, values))
}

pub fn write_dataset(fmt: &NumberFormat, values: &[Value]) -> String {
    let mut out = fmt.header();
    out.push('\n');
    for v in values {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Value> {
        v.iter().map(|&x| Value::from(x)).collect()
    }

    #[test]
    fn encodes_fixed_point_examples() {
        let ds = encode(&ints(&[9]), NumberFormat::unsigned(4).unwrap()).unwrap();
        assert_eq!(ds.row_bits(0), "1001");
        let ds = encode(&ints(&[-7]), NumberFormat::twos_complement(4).unwrap()).unwrap();
        assert_eq!(ds.row_bits(0), "1001");
        assert_eq!(decode(&ds, 0).unwrap(), Value::Int(-7));
        let ds = encode(&ints(&[-5]), NumberFormat::sign_magnitude(4).unwrap()).unwrap();
        assert_eq!(ds.row_bits(0), "1101");
    }

    #[test]
    fn zero_word_decodes_to_zero() {
        for fmt in [
            NumberFormat::unsigned(8).unwrap(),
            NumberFormat::twos_complement(8).unwrap(),
            NumberFormat::sign_magnitude(8).unwrap(),
            NumberFormat::half(),
        ] {
            assert_eq!(fmt.decode_word(0).as_f64(), 0.0);
        }
    }

    #[test]
    fn half_precision_words() {
        let half = NumberFormat::half();
        assert_eq!(half.encode_value(Value::Float(1.5)).unwrap(), 0b0011_1110_0000_0000);
        assert_eq!(half.decode_word(0b1011_1110_0000_0000), Value::Float(-1.5));
        assert_eq!(half.encode_value(Value::Float(65504.0)).unwrap(), 0x7bff);
        assert_eq!(half.encode_value(Value::Float(2f64.powi(-24))).unwrap(), 1);
        assert!(half.encode_value(Value::Float(4.079)).is_err());
        assert!(half.encode_value(Value::Float(f64::NAN)).is_err());
        assert!(half.encode_value(Value::Float(65536.0)).is_err());
    }

    #[test]
    fn range_checks() {
        let u = NumberFormat::unsigned(4).unwrap();
        assert!(u.encode_value(Value::Int(16)).is_err());
        assert!(u.encode_value(Value::Int(-1)).is_err());
        let t = NumberFormat::twos_complement(4).unwrap();
        assert!(t.encode_value(Value::Int(-8)).is_ok());
        assert!(t.encode_value(Value::Int(8)).is_err());
        let s = NumberFormat::sign_magnitude(4).unwrap();
        assert!(s.encode_value(Value::Int(-8)).is_err());
        assert_eq!(s.encode_value(Value::NegativeZero).unwrap(), 0b1000);
        let u64fmt = NumberFormat::unsigned(64).unwrap();
        assert_eq!(u64fmt.encode_value(Value::Int(u64::MAX as i128)).unwrap(), u64::MAX);
    }

    #[test]
    fn msb_is_column_one() {
        let ds = encode_unsigned(&[1 << 7], 8).unwrap();
        assert!(ds.bit(0, 1));
        assert!((2..=8).all(|c| !ds.bit(0, c)));
    }

    #[test]
    fn reference_order_is_stable() {
        let v = ints(&[2, 3, 9, 6, 14, 14]);
        assert_eq!(reference_order(&v, Direction::MinFirst), vec![0, 1, 3, 2, 4, 5]);
        assert_eq!(reference_order(&v, Direction::MaxFirst), vec![4, 5, 2, 3, 1, 0]);
        let z = vec![Value::Int(0), Value::NegativeZero];
        assert_eq!(reference_order(&z, Direction::MinFirst), vec![1, 0]);
    }

    #[test]
    fn padding_rules() {
        let t = NumberFormat::twos_complement(3).unwrap();
        // -3 = 101 -> 1101 when widened by one column
        let bits: Vec<bool> = (0..4).map(|c| t.padded_bit(0b101, 1, c)).collect();
        assert_eq!(bits, vec![true, true, false, true]);
        assert_eq!(t.column_roles(1)[..2], [ColumnRole::TwosSign, ColumnRole::TwosSign]);
        let s = NumberFormat::sign_magnitude(3).unwrap();
        let bits: Vec<bool> = (0..4).map(|c| s.padded_bit(0b101, 1, c)).collect();
        assert_eq!(bits, vec![true, false, false, true]);
    }

    #[test]
    fn dataset_file_round_trip() {
        let text = "#fmt=unsigned,W=4\n2\n3\n\n9\n6\n14\n14\n";
        let (fmt, values) = parse_dataset(text).unwrap();
        assert_eq!(fmt, NumberFormat::unsigned(4).unwrap());
        assert_eq!(values, ints(&[2, 3, 9, 6, 14, 14]));
        let again = parse_dataset(&write_dataset(&fmt, &values)).unwrap();
        assert_eq!(again.1, values);

        let (_, empty) = parse_dataset("#fmt=float,W=16,exp=5,frac=10,bias=15\n").unwrap();
        assert!(empty.is_empty());

        match parse_dataset("#fmt=unsigned,W=4\n1\nabc\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
