//! Rational inputs: lengths as rationals, angles as rational multiples of pi.

use std::f64::consts::PI;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geometry::BoundaryData;

pub type Q = BigRational;

/// Parses `"3"`, `"-1/2"`, `"0.25"`, `"1e-3"` exactly.
pub fn parse_rational(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num = BigInt::from_str(a.trim()).map_err(|e| format!("bad numerator {a:?}: {e}"))?;
        let den = BigInt::from_str(b.trim()).map_err(|e| format!("bad denominator {b:?}: {e}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Q::new(num, den));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Q, String> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (
            &s[..i],
            s[i + 1..].parse::<i32>().map_err(|e| format!("bad exponent in {s:?}: {e}"))?,
        ),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(format!("empty number {s:?}"));
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("not a number: {s:?}"));
    }
    let mut q = Q::from_integer(BigInt::from_str(&digits).map_err(|e| e.to_string())?);
    let shift = exp - frac.len() as i32;
    let ten = Q::from_integer(BigInt::from(10));
    let p = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        q *= p;
    } else {
        q /= p;
    }
    Ok(if neg { -q } else { q })
}

/// The decimal number a float prints as, read back exactly.
pub fn decimal_rational(x: f64) -> Q {
    parse_decimal(&format!("{x:e}")).expect("finite float formats as a decimal")
}

pub fn q_to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactBoundaryData {
    pub lengths: Vec<Q>,
    /// Angles divided by pi.
    pub angles_pi: Vec<Q>,
}

impl ExactBoundaryData {
    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn to_float(&self) -> BoundaryData {
        BoundaryData::from_raw(
            self.lengths.iter().map(q_to_f64).collect(),
            self.angles_pi.iter().map(|a| q_to_f64(a) * PI).collect(),
        )
    }

    pub fn perimeter(&self) -> Q {
        self.lengths.iter().fold(Q::zero(), |acc, l| acc + l)
    }

    /// Exact angle-sum check; closure is checked in floating point.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.n();
        if self.angles_pi.len() != n {
            return Err(format!("{} lengths but {} angles", n, self.angles_pi.len()));
        }
        if n < 3 {
            return Err(format!("need at least 3 vertices, got {n}"));
        }
        if let Some(i) = self.lengths.iter().position(|l| !l.is_positive()) {
            return Err(format!("non-positive edge length at edge {i}"));
        }
        if let Some(i) = self
            .angles_pi
            .iter()
            .position(|a| !a.is_positive() || *a >= Q::one())
        {
            return Err(format!("angle {i} outside (0, pi)"));
        }
        let sum = self.angles_pi.iter().fold(Q::zero(), |acc, a| acc + a);
        if sum != Q::from_integer(BigInt::from(n as i64 - 2)) {
            return Err(format!("angle sum is {sum} pi, expected {} pi", n - 2));
        }
        self.to_float().validate().map_err(|e| e.to_string())
    }
}

/// `cos(pi^2 / (2 q pi)) = cos(pi / (2q))`, exact at odd and even angles.
pub fn c_of_angle_pi(q: &Q) -> f64 {
    let x = q.recip() / Q::from_integer(BigInt::from(2)); // multiple of pi
    if x.is_integer() {
        let k = x.to_integer();
        return if (k % BigInt::from(2)).is_zero() { 1.0 } else { -1.0 };
    }
    if (x.clone() * Q::from_integer(BigInt::from(2))).is_integer() {
        return 0.0;
    }
    (q_to_f64(&x) * PI).cos()
}

/// `sin(pi / (2q))`, exact at odd and even angles.
pub fn sin_of_angle_pi(q: &Q) -> f64 {
    let x = q.recip() / Q::from_integer(BigInt::from(2));
    if x.is_integer() {
        return 0.0;
    }
    let twice = x.clone() * Q::from_integer(BigInt::from(2));
    if twice.is_integer() {
        // x = (2j+1)/2
        let j = (twice.to_integer() - BigInt::one()) / BigInt::from(2);
        return if (j % BigInt::from(2)).is_zero() { 1.0 } else { -1.0 };
    }
    (q_to_f64(&x) * PI).sin()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), Q::new(1.into(), 2.into()));
        assert_eq!(parse_rational("0.25").unwrap(), Q::new(1.into(), 4.into()));
        assert_eq!(parse_rational("-3").unwrap(), Q::from_integer((-3).into()));
        assert_eq!(parse_rational("2.5e-1").unwrap(), Q::new(1.into(), 4.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn decimal_of_float() {
        assert_eq!(decimal_rational(0.1), Q::new(1.into(), 10.into()));
    }

    #[test]
    fn exact_c_values() {
        let third = Q::new(1.into(), 3.into());
        let half = Q::new(1.into(), 2.into());
        let sixth = Q::new(1.into(), 6.into());
        assert_eq!(c_of_angle_pi(&third), 0.0);
        assert_eq!(c_of_angle_pi(&half), -1.0);
        assert_eq!(c_of_angle_pi(&sixth), -1.0);
        assert_eq!(sin_of_angle_pi(&third), -1.0);
        assert_eq!(sin_of_angle_pi(&Q::new(1.into(), 5.into())), 1.0);
    }
}
