//! The textual decimal syntax: `-17.341`, `0.(9)`, `1.41(6)`.
//!
//! A repetend in parentheses may follow the fractional digits. On input,
//! `0.1666...` (or `…`) is accepted as an alias for `0.1(6)` when the digits
//! before the ellipsis end in three copies of a block.

use std::str::FromStr;

use crate::error::ParseError;
use crate::periodic::PeriodicDecimal;

fn digits_at(bytes: &[u8], mut pos: usize) -> (Vec<u8>, usize) {
    let mut out = Vec::new();
    while let Some(&b) = bytes.get(pos) {
        if !b.is_ascii_digit() {
            break;
        }
        out.push(b - b'0');
        pos += 1;
    }
    (out, pos)
}

fn ellipsis_len(src: &str, pos: usize) -> Option<usize> {
    let rest = &src[pos..];
    if rest.starts_with("...") {
        Some(3)
    } else if rest.starts_with('…') {
        Some('…'.len_utf8())
    } else {
        None
    }
}

/// Splits `fraction` into preperiod and repetend when it ends in three copies
/// of its shortest trailing block.
fn split_repeating_tail(fraction: &[u8]) -> Option<(Vec<u8>, Vec<u8>)> {
    let len = fraction.len();
    (1..=len / 3).find_map(|p| {
        let tail = &fraction[len - 3 * p..];
        let block = &tail[..p];
        tail.chunks(p).all(|c| c == block).then(|| {
            (fraction[..len - 3 * p].to_vec(), block.to_vec())
        })
    })
}

/// Parses an unsigned literal starting at byte `pos`; returns the value and the
/// position just after it.
pub(crate) fn parse_unsigned(src: &str, pos: usize) -> Result<(PeriodicDecimal, usize), ParseError> {
    let bytes = src.as_bytes();
    let (integer, mut pos) = digits_at(bytes, pos);
    if integer.is_empty() {
        return Err(ParseError::new(pos, &["digit"]));
    }
    let mut fraction = Vec::new();
    let mut repetend = vec![0];
    if bytes.get(pos) == Some(&b'.') && ellipsis_len(src, pos).is_none() {
        let (frac, after) = digits_at(bytes, pos + 1);
        fraction = frac;
        pos = after;
        if bytes.get(pos) == Some(&b'(') {
            let (rep, after) = digits_at(bytes, pos + 1);
            if rep.is_empty() {
                return Err(ParseError::new(after, &["digit"]));
            }
            if bytes.get(after) != Some(&b')') {
                return Err(ParseError::new(after, &["digit", "')'"]));
            }
            repetend = rep;
            pos = after + 1;
        } else if let Some(skip) = ellipsis_len(src, pos) {
            match split_repeating_tail(&fraction) {
                Some((pre, rep)) => {
                    fraction = pre;
                    repetend = rep;
                    pos += skip;
                }
                None => return Err(ParseError::new(pos, &["three copies of a repetend"])),
            }
        } else if fraction.is_empty() {
            return Err(ParseError::new(pos, &["digit", "'('"]));
        }
    }
    let integer: Vec<u8> = integer.into_iter().skip_while(|&d| d == 0).collect();
    let value = PeriodicDecimal::from_parts(false, &integer, &fraction, &repetend)
        .map_err(|_| ParseError::new(pos, &["digit"]))?;
    Ok((value, pos))
}

impl FromStr for PeriodicDecimal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let (negative, start) = match s.as_bytes().first() {
            Some(b'-') => (true, 1),
            _ => (false, 0),
        };
        let (value, end) = parse_unsigned(s, start)?;
        if end != s.len() {
            return Err(ParseError::new(end, &["end of input"]));
        }
        Ok(if negative { value.negate() } else { value })
    }
}
