use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use super::{FieldError, Rational, Scalar, SquareTest};

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field `F_p` for an odd prime `p < 2^16`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElem {
    value: u32,
    modulus: u32,
}

impl PrimeFieldElem {
    pub fn check_modulus(p: u64) -> Result<u32, FieldError> {
        if p > 2 && p < (1 << 16) && is_prime(p as u32) {
            Ok(p as u32)
        } else {
            Err(FieldError::InvalidModulus(p))
        }
    }

    pub fn new(value: i64, modulus: u64) -> Result<Self, FieldError> {
        let p = Self::check_modulus(modulus)?;
        Ok(Self {
            value: value.rem_euclid(p as i64) as u32,
            modulus: p,
        })
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn with(&self, value: u64) -> Self {
        Self {
            value: (value % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }

    fn check(&self, o: &Self) -> Result<(), FieldError> {
        if self.modulus == o.modulus {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(
                self.field_name(),
                o.field_name(),
            ))
        }
    }

    /// Euler's criterion.
    pub fn is_residue(&self) -> bool {
        self.value == 0
            || mod_pow(
                self.value as u64,
                (self.modulus as u64 - 1) / 2,
                self.modulus as u64,
            ) == 1
    }

    /// Every element of the field, in increasing order.
    pub fn elements(modulus: u32) -> impl Iterator<Item = PrimeFieldElem> {
        (0..modulus).map(move |value| PrimeFieldElem { value, modulus })
    }
}

impl Scalar for PrimeFieldElem {
    fn zero_like(&self) -> Self {
        self.with(0)
    }

    fn one_like(&self) -> Self {
        self.with(1)
    }

    fn from_rational_like(&self, q: &Rational) -> Result<Self, FieldError> {
        Ok(self.with(q.mod_prime(self.modulus)? as u64))
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn checked_add(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        Ok(self.with(self.value as u64 + o.value as u64))
    }

    fn checked_sub(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        Ok(self.with(self.value as u64 + self.modulus as u64 - o.value as u64))
    }

    fn checked_mul(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        Ok(self.with(self.value as u64 * o.value as u64))
    }

    fn neg(&self) -> Self {
        self.with(self.modulus as u64 - self.value as u64)
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let m = self.modulus as u64;
        Ok(self.with(mod_pow(self.value as u64, m - 2, m)))
    }

    fn characteristic(&self) -> u64 {
        self.modulus as u64
    }

    fn square_test(&self) -> Result<SquareTest<Self>, FieldError> {
        if !self.is_residue() {
            return Ok(SquareTest::NonSquare);
        }
        // p is desk-scale; exhaustive search is fine
        let root = (0..self.modulus)
            .map(|v| self.with(v as u64))
            .find(|r| r.value as u64 * r.value as u64 % self.modulus as u64 == self.value as u64)
            .expect("Euler's criterion guarantees a root");
        Ok(SquareTest::Square(root))
    }

    fn field_name(&self) -> alloc::string::String {
        alloc::format!("fp:{}", self.modulus)
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl fmt::Debug for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PrimeFieldElem {
    type Err = FieldError;

    /// Parses `"k mod p"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::Parse(s.to_string());
        let (k, p) = s.split_once(" mod ").ok_or_else(bad)?;
        let k: i64 = k.trim().parse().map_err(|_| bad())?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let p = Self::check_modulus(p)?;
        if k < 0 || k >= p as i64 {
            return Err(bad());
        }
        Self::new(k, p as u64)
    }
}
