//! Exact scalar fields: rationals, prime fields, quadratic extensions and
//! rational functions in the structure parameters.

use alloc::string::String;

mod poly;
mod prime;
mod quad;
mod rational;
mod ratfunc;

pub use poly::{Monomial, MultiPoly, Var, NVARS};
pub use prime::PrimeFieldElem;
pub use quad::QuadExt;
pub use rational::Rational;
pub use ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("operation needs a numeric scalar but got a symbolic one")]
    SymbolicScalar,
    #[error("cannot parse scalar: {0:?}")]
    Parse(String),
    #[error("invalid modulus {0}: need an odd prime below 65536")]
    InvalidModulus(u64),
    #[error("extension discriminant {0} is a square")]
    SquareDiscriminant(String),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareTest<S> {
    Square(S),
    NonSquare,
}

/// A field element carrying whatever context (modulus, extension
/// discriminant) it needs, so constants are made from an existing element.
pub trait Scalar: Clone + PartialEq + core::fmt::Debug + core::fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, q: &Rational) -> Result<Self, FieldError>;
    fn is_zero(&self) -> bool;
    fn checked_add(&self, o: &Self) -> Result<Self, FieldError>;
    fn checked_sub(&self, o: &Self) -> Result<Self, FieldError>;
    fn checked_mul(&self, o: &Self) -> Result<Self, FieldError>;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn square_test(&self) -> Result<SquareTest<Self>, FieldError>;
    fn field_name(&self) -> String;

    fn from_int_like(&self, n: i64) -> Self {
        self.from_rational_like(&Rational::from_int(n))
            .expect("integers embed in every field of odd characteristic")
    }

    fn is_one(&self) -> bool {
        self.checked_sub(&self.one_like())
            .map(|d| d.is_zero())
            .unwrap_or(false)
    }

    fn checked_div(&self, o: &Self) -> Result<Self, FieldError> {
        self.checked_mul(&o.inv()?)
    }

    fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("scalar addition")
    }

    fn sub(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("scalar subtraction")
    }

    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("scalar multiplication")
    }

    fn div(&self, o: &Self) -> Self {
        self.checked_div(o).expect("scalar division")
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// True for elements that still depend on free parameters.
    fn is_symbolic(&self) -> bool {
        false
    }

    /// Rough cost of using this element as a pivot; lower is cheaper.
    fn weight(&self) -> usize {
        1
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn from_rational_like(&self, q: &Rational) -> Result<Self, FieldError> {
        Ok(q.clone())
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }

    fn checked_add(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(Rational::add(self, o))
    }

    fn checked_sub(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(Rational::sub(self, o))
    }

    fn checked_mul(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(Rational::mul(self, o))
    }

    fn neg(&self) -> Self {
        Rational::neg(self)
    }

    fn inv(&self) -> Result<Self, FieldError> {
        Rational::inv(self)
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn square_test(&self) -> Result<SquareTest<Self>, FieldError> {
        Ok(match self.sqrt() {
            Some(r) => SquareTest::Square(r),
            None => SquareTest::NonSquare,
        })
    }

    fn field_name(&self) -> String {
        String::from("q")
    }

    fn weight(&self) -> usize {
        let (n, d) = (self.numer(), self.denom());
        (n.bits() + d.bits()) as usize / 32 + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn f101() -> impl Strategy<Value = PrimeFieldElem> {
        (0i64..101).prop_map(|v| PrimeFieldElem::new(v, 101).unwrap())
    }

    fn quad() -> impl Strategy<Value = QuadExt<Rational>> {
        (rat(), rat()).prop_map(|(x, y)| QuadExt::new(x, y, Rational::from_int(2)).unwrap())
    }

    fn axioms<S: Scalar>(a: &S, b: &S, c: &S) {
        assert_eq!(a.add(b), b.add(a));
        assert_eq!(a.mul(b), b.mul(a));
        assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        assert_eq!(a.add(&a.zero_like()), a.clone());
        assert_eq!(a.mul(&a.one_like()), a.clone());
        assert!(a.add(&a.neg()).is_zero());
        if !a.is_zero() {
            assert!(a.mul(&a.inv().unwrap()).is_one());
        } else {
            assert_eq!(a.inv(), Err(FieldError::DivisionByZero));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rational_axioms(a in rat(), b in rat(), c in rat()) {
            axioms(&a, &b, &c);
        }

        #[test]
        fn prime_axioms(a in f101(), b in f101(), c in f101()) {
            axioms(&a, &b, &c);
        }

        #[test]
        fn quad_axioms(a in quad(), b in quad(), c in quad()) {
            axioms(&a, &b, &c);
        }

        #[test]
        fn rationals_stay_reduced(n in -10_000i64..10_000, d in 1i64..10_000, k in 1i64..50) {
            let a = Rational::new(n * k, d * k).unwrap();
            prop_assert_eq!(a.clone(), Rational::new(n, d).unwrap());
            let g = num_integer::Integer::gcd(&a.numer(), &a.denom());
            prop_assert!(num_traits::One::is_one(&g));
            prop_assert!(num_traits::Signed::is_positive(&a.denom()));
        }

        #[test]
        fn conjugation_is_involutive_and_multiplicative(a in quad(), b in quad()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
            prop_assert_eq!(a.mul(&a.conj()).x().clone(), a.norm());
        }

        #[test]
        fn square_roots_square_back(a in rat(), p in f101()) {
            let sq = a.mul(&a);
            match sq.square_test().unwrap() {
                SquareTest::Square(r) => prop_assert_eq!(r.mul(&r), sq),
                SquareTest::NonSquare => prop_assert!(false, "{sq} is a square"),
            }
            let psq = p.mul(&p);
            match psq.square_test().unwrap() {
                SquareTest::Square(r) => prop_assert_eq!(r.mul(&r), psq),
                SquareTest::NonSquare => prop_assert!(false),
            }
        }
    }
}
