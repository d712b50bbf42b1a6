//! Arbitrary-precision rational scalars.
//!
//! Everything in this crate is computed over `BigRational`; no floating
//! point is used anywhere. This module adds the few conveniences the rest
//! of the code needs: short constructors, `"num/den"` parsing/formatting
//! (the JSON and dump-file encoding of a rational), and dense vector
//! helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The scalar type used throughout the crate.
pub type Rat = BigRational;

/// A dense vector of rationals. Semantics are always dense: the length is
/// the dimension of the ambient space.
pub type RatVector = Vec<Rat>;

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `"n"` or `"n/d"`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"n"` or `"n/d"`. Whitespace is not accepted.
pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((n, d)) => {
            let n = n.parse::<BigInt>().ok()?;
            let d = d.parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
    }
}

/// All-zero vector of the given length.
pub fn zero_vec(len: usize) -> RatVector {
    vec![Rat::zero(); len]
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> RatVector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> RatVector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Rat, v: &[Rat]) -> RatVector {
    v.iter().map(|x| c * x).collect()
}

/// In-place `a += c * b`.
pub fn add_scaled(a: &mut [Rat], c: &Rat, b: &[Rat]) {
    debug_assert_eq!(a.len(), b.len());
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

/// Sign of a rational: -1, 0, or 1.
pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_format_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        // non-canonical inputs normalize
        assert_eq!(fmt_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(fmt_rat(&parse_rat("2/-4").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn vector_helpers() {
        let a = vec![rat_int(1), rat_int(2)];
        let b = vec![rat(1, 2), rat_int(-2)];
        assert_eq!(add_vec(&a, &b), vec![rat(3, 2), rat_int(0)]);
        assert!(is_zero_vec(&sub_vec(&a, &a)));
        let mut c = a.clone();
        add_scaled(&mut c, &rat_int(-1), &a);
        assert!(is_zero_vec(&c));
    }
}
