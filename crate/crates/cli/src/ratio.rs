//! Exact rationals on the command line and in reports.

use planar_bisect_core::Cost;
use serde::{Deserialize, Deserializer, Serializer};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("not a nonnegative rational: {0:?}")]
pub struct ParseRatioError(pub String);

/// Parses `"3"`, `"1/2"` or `"0.25"` exactly.
pub fn parse_ratio(s: &str) -> Result<Cost, ParseRatioError> {
    let err = || ParseRatioError(s.to_string());
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| err())?;
        let d: i128 = d.trim().parse().map_err(|_| err())?;
        if d <= 0 || n < 0 {
            return Err(err());
        }
        return Ok(Cost::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 30 {
        return Err(err());
    }
    let whole: i128 = if int.is_empty() {
        0
    } else {
        int.parse().map_err(|_| err())?
    };
    if whole < 0 || int.starts_with('-') {
        return Err(err());
    }
    let den = 10i128.pow(frac.len() as u32);
    let num: i128 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|_| err())?
    };
    Ok(Cost::from_integer(whole) + Cost::new(num, den))
}

/// Serde adapter writing a cost as `"n"` or `"n/d"`.
pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(c: &Cost, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(c)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Cost, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map_err(serde::de::Error::custom)
    }
}

pub mod opt_string {
    use super::*;

    pub fn serialize<S: Serializer>(c: &Option<Cost>, s: S) -> Result<S::Ok, S::Error> {
        match c {
            Some(c) => s.collect_str(c),
            None => s.serialize_none(),
        }
    }
}

pub fn float(c: Cost) -> f64 {
    *c.numer() as f64 / *c.denom() as f64
}
