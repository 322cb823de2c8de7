//! Arbitrary-precision rationals with an inline fast path for values that fit
//! in machine words.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FieldError;

/// A reduced fraction `num / den` with `den > 0`.
///
/// Small values are kept in `i64` words; anything that overflows is promoted
/// to big integers and demoted again when it shrinks back.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(BigInt, BigInt),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// `num / den`, reduced.
    pub fn new(num: i64, den: i64) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::from_big_unreduced(num, den))
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Self::zero();
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        n /= g;
        d /= g;
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big_unreduced(mut n: BigInt, mut d: BigInt) -> Self {
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        if n.is_zero() {
            return Self::zero();
        }
        let g = n.gcd(&d);
        if !g.is_one() {
            n /= &g;
            d /= &g;
        }
        Self::demote(n, d)
    }

    fn demote(n: BigInt, d: BigInt) -> Self {
        match (n.to_i64(), d.to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(n, d)),
        }
    }

    fn big_parts(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(n, d) => (n.clone(), d.clone()),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.big_parts().0
    }

    pub fn denom(&self) -> BigInt {
        self.big_parts().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(_, d) => d.is_one(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(n, _) => match n.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, *d)),
                None => Self::from_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(n, d) => Self::demote(-n, d.clone()),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Rational(Repr::Small(s, 1));
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => {
                let (a, b) = self.big_parts();
                let (c, d) = o.big_parts();
                Self::from_big_unreduced(a * &d + c * &b, b * d)
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(p) = a.checked_mul(*c) {
                        return Rational(Repr::Small(p, 1));
                    }
                }
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => {
                let (a, b) = self.big_parts();
                let (c, d) = o.big_parts();
                Self::from_big_unreduced(a * c, b * d)
            }
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        match &self.0 {
            Repr::Small(0, _) => Err(FieldError::DivisionByZero),
            Repr::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Repr::Big(n, d) => Ok(Self::from_big_unreduced(d.clone(), n.clone())),
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact square root, if this rational is the square of a rational.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let (n, d) = self.big_parts();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &rn * &rn == n && &rd * &rd == d {
            Some(Self::demote(rn, rd))
        } else {
            None
        }
    }

    /// Residue of this rational modulo an odd prime, when the denominator is a unit.
    pub fn mod_prime(&self, p: u32) -> Result<u32, FieldError> {
        let (n, d) = self.big_parts();
        let pb = BigInt::from(p);
        let nr = n.mod_floor(&pb).to_u64().unwrap_or(0);
        let dr = d.mod_floor(&pb).to_u64().unwrap_or(0);
        if dr == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let inv = super::prime::mod_pow(dr, (p - 2) as u64, p as u64);
        Ok(((nr * inv) % p as u64) as u32)
    }

    /// Integer content helpers used by polynomial normalization.
    pub(crate) fn gcd_with(&self, o: &Self) -> Self {
        // gcd(a/b, c/d) = gcd(a, c) / lcm(b, d)
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &o.0) {
            let g = gcd_u128(a.unsigned_abs() as u128, c.unsigned_abs() as u128);
            let bd = gcd_u128(*b as u128, *d as u128);
            let l = (*b as u128 / bd) * *d as u128;
            return Self::from_i128(g as i128, l as i128);
        }
        let (a, b) = self.big_parts();
        let (c, d) = o.big_parts();
        Self::from_big_unreduced(a.gcd(&c), b.lcm(&d))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for Rational {
    fn eq(&self, o: &Self) -> bool {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a, b), Repr::Big(c, d)) => a == c && b == d,
            // canonical: a value is Small whenever it fits
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => {
                let (a, b) = self.big_parts();
                let (c, d) = o.big_parts();
                (a * d).cmp(&(c * b))
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl core::hash::Hash for Rational {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        let (n, d) = self.big_parts();
        n.hash(state);
        d.hash(state);
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_int(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::demote(n, BigInt::one())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(n, d) if d.is_one() => write!(f, "{n}"),
            Repr::Big(n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || FieldError::Parse(String::from(s));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        if n.is_empty() || d.is_empty() || d.starts_with('-') || d.starts_with('+') {
            return Err(bad());
        }
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        Self::from_bigints(n, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn adds_fractions() {
        assert_eq!(q("1/2").add(&q("1/3")), q("5/6"));
        assert_eq!(q("1/2").sub(&q("1/2")), Rational::zero());
    }

    #[test]
    fn canonical_under_overflow() {
        let big = Rational::from_int(i64::MAX);
        let sq = big.mul(&big);
        let back = sq.div(&big).unwrap();
        assert_eq!(back, big);
        assert_eq!(q("-4/2").to_string(), "-2");
        assert!("1/-2".parse::<Rational>().is_err());
        assert_eq!(q("6/4"), q("3/2"));
    }

    #[test]
    fn square_roots() {
        assert_eq!(q("9/4").sqrt(), Some(q("3/2")));
        assert_eq!(q("2").sqrt(), None);
        assert_eq!(q("-1").sqrt(), None);
    }

    #[test]
    fn rejects_zero_denominator() {
        assert_eq!(Rational::new(1, 0), Err(FieldError::DivisionByZero));
        assert_eq!(Rational::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn reduces_mod_prime() {
        assert_eq!(q("3/5").mod_prime(7).unwrap(), 2);
        assert_eq!(q("-1").mod_prime(7).unwrap(), 6);
    }
}
