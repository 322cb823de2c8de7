use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use super::{FieldError, Rational, Scalar, SquareTest};

/// `x + y*z` in `F[z]/(z^2 - d)` for a non-square `d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt<F> {
    x: F,
    y: F,
    d: F,
}

impl<F: Scalar> QuadExt<F> {
    pub fn new(x: F, y: F, d: F) -> Result<Self, FieldError> {
        if let SquareTest::Square(_) = d.square_test()? {
            return Err(FieldError::SquareDiscriminant(d.to_string()));
        }
        Ok(Self { x, y, d })
    }

    /// Embeds `x` with the same discriminant as `self`.
    pub fn lift(&self, x: F) -> Self {
        Self {
            y: x.zero_like(),
            x,
            d: self.d.clone(),
        }
    }

    /// The adjoined root `z` itself.
    pub fn generator(d: F) -> Result<Self, FieldError> {
        Self::new(d.zero_like(), d.one_like(), d)
    }

    pub fn x(&self) -> &F {
        &self.x
    }

    pub fn y(&self) -> &F {
        &self.y
    }

    pub fn discriminant(&self) -> &F {
        &self.d
    }

    pub fn conj(&self) -> Self {
        Self {
            x: self.x.clone(),
            y: self.y.neg(),
            d: self.d.clone(),
        }
    }

    /// `x^2 - d y^2`.
    pub fn norm(&self) -> F {
        self.x
            .mul(&self.x)
            .sub(&self.d.mul(&self.y).mul(&self.y))
    }

    pub fn is_base(&self) -> bool {
        self.y.is_zero()
    }

    fn check(&self, o: &Self) -> Result<(), FieldError> {
        if self.d == o.d && self.x.characteristic() == o.x.characteristic() {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.field_name(), o.field_name()))
        }
    }
}

impl<F: Scalar> Scalar for QuadExt<F> {
    fn zero_like(&self) -> Self {
        self.lift(self.x.zero_like())
    }

    fn one_like(&self) -> Self {
        self.lift(self.x.one_like())
    }

    fn from_rational_like(&self, q: &Rational) -> Result<Self, FieldError> {
        Ok(self.lift(self.x.from_rational_like(q)?))
    }

    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    fn checked_add(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        Ok(Self {
            x: self.x.checked_add(&o.x)?,
            y: self.y.checked_add(&o.y)?,
            d: self.d.clone(),
        })
    }

    fn checked_sub(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        Ok(Self {
            x: self.x.checked_sub(&o.x)?,
            y: self.y.checked_sub(&o.y)?,
            d: self.d.clone(),
        })
    }

    fn checked_mul(&self, o: &Self) -> Result<Self, FieldError> {
        self.check(o)?;
        let x = self
            .x
            .checked_mul(&o.x)?
            .checked_add(&self.d.checked_mul(&self.y)?.checked_mul(&o.y)?)?;
        let y = self
            .x
            .checked_mul(&o.y)?
            .checked_add(&o.x.checked_mul(&self.y)?)?;
        Ok(Self {
            x,
            y,
            d: self.d.clone(),
        })
    }

    fn neg(&self) -> Self {
        Self {
            x: self.x.neg(),
            y: self.y.neg(),
            d: self.d.clone(),
        }
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm().inv()?;
        Ok(Self {
            x: self.x.mul(&n),
            y: self.y.neg().mul(&n),
            d: self.d.clone(),
        })
    }

    fn characteristic(&self) -> u64 {
        self.x.characteristic()
    }

    fn square_test(&self) -> Result<SquareTest<Self>, FieldError> {
        if self.is_zero() {
            return Ok(SquareTest::Square(self.clone()));
        }
        let mk = |x: F, y: F| Self {
            x,
            y,
            d: self.d.clone(),
        };
        if self.y.is_zero() {
            if let SquareTest::Square(u) = self.x.square_test()? {
                return Ok(SquareTest::Square(mk(u, self.x.zero_like())));
            }
            if let SquareTest::Square(v) = self.x.checked_div(&self.d)?.square_test()? {
                return Ok(SquareTest::Square(mk(self.x.zero_like(), v)));
            }
            return Ok(SquareTest::NonSquare);
        }
        // (u + v z)^2 = x + y z forces u^2 = (x + s)/2 with s^2 = norm, v = y/(2u)
        let two_inv = self.x.from_int_like(2).inv()?;
        let s = match self.norm().square_test()? {
            SquareTest::Square(s) => s,
            SquareTest::NonSquare => return Ok(SquareTest::NonSquare),
        };
        for s in [s.clone(), s.neg()] {
            let u2 = self.x.add(&s).mul(&two_inv);
            if let SquareTest::Square(u) = u2.square_test()? {
                if !u.is_zero() {
                    let r = mk(u.clone(), self.y.mul(&two_inv).div(&u));
                    if r.mul(&r) == *self {
                        return Ok(SquareTest::Square(r));
                    }
                }
            }
        }
        Ok(SquareTest::NonSquare)
    }

    fn field_name(&self) -> String {
        format!("{}[sqrt({})]", self.x.field_name(), self.d)
    }

    fn is_symbolic(&self) -> bool {
        self.x.is_symbolic() || self.y.is_symbolic()
    }

    fn weight(&self) -> usize {
        self.x.weight() + self.y.weight()
    }
}

impl<F: Scalar> fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*z [{}]", self.x, self.y, self.d)
    }
}

impl<F: Scalar> fmt::Debug for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeFieldElem;

    #[test]
    fn inverse_of_root_two() {
        let z = QuadExt::generator(Rational::from_int(2)).unwrap();
        let half = Rational::new(1, 2).unwrap();
        assert_eq!(z.inv().unwrap(), QuadExt::new(Rational::zero(), half, Rational::from_int(2)).unwrap());
    }

    #[test]
    fn inverse_over_f7() {
        let f = |v| PrimeFieldElem::new(v, 7).unwrap();
        let w = QuadExt::new(f(1), f(1), f(3)).unwrap();
        assert_eq!(w.inv().unwrap(), QuadExt::new(f(3), f(4), f(3)).unwrap());
    }

    #[test]
    fn rejects_square_discriminant() {
        assert!(QuadExt::generator(Rational::from_int(4)).is_err());
        assert!(QuadExt::generator(PrimeFieldElem::new(2, 7).unwrap()).is_err());
    }

    #[test]
    fn square_roots_in_extension() {
        let z = QuadExt::generator(Rational::from_int(2)).unwrap();
        let w = z.add(&z.from_int_like(3));
        let sq = w.mul(&w);
        match sq.square_test().unwrap() {
            SquareTest::Square(r) => assert_eq!(r.mul(&r), sq),
            SquareTest::NonSquare => panic!("square expected"),
        }
        // 2 = z^2 is now a square
        assert!(matches!(z.from_int_like(2).square_test().unwrap(), SquareTest::Square(_)));
        assert_eq!(z.square_test().unwrap(), SquareTest::NonSquare);
    }
}
