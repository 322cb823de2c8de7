use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use super::{FieldError, MultiPoly, Rational, Scalar, SquareTest, Var, NVARS};

/// Reduced quotient of polynomials in the structure parameters.
///
/// The denominator has coprime integer coefficients and a positive leading
/// coefficient, so equal functions have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        Self {
            num,
            den: MultiPoly::one(),
        }
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            return Self::from_poly(num.scale(&c.inv().expect("nonzero denominator")));
        }
        if let Some(q) = num.exact_div(&den) {
            return Self::from_poly(q);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize(num, den)
    }

    /// Fixes the scalar normalization of an already coprime pair.
    fn normalize(num: MultiPoly, den: MultiPoly) -> Self {
        let c = den.content();
        if c.is_one() {
            return Self { num, den };
        }
        let ci = c.inv().expect("nonzero content");
        Self {
            num: num.scale(&ci),
            den: den.scale(&ci),
        }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn add_impl(&self, o: &Self) -> Self {
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&o.num));
            }
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        if o.den.is_one() {
            return Self::normalize(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return Self::normalize(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let d1 = self.den.exact_div(&g).expect("gcd divides");
        let d2 = o.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        let den = self.den.mul(&d2);
        if g.is_one() {
            Self::normalize(num, den)
        } else {
            Self::reduce(num, den)
        }
    }

    pub fn mul_impl(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        // cross-cancel; each side is already reduced
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        Self::normalize(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn neg_impl(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv_impl(&self) -> Result<Self, FieldError> {
        if self.num.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn substitute(&self, v: Var, value: &Rational) -> Result<Self, FieldError> {
        Self::new(self.num.substitute(v, value), self.den.substitute(v, value))
    }

    pub fn permute_vars(&self, perm: &[usize; NVARS]) -> Self {
        Self::normalize(self.num.permute_vars(perm), self.den.permute_vars(perm))
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    /// Evaluates at a point; fails when the denominator vanishes there.
    pub fn eval<S: Scalar>(&self, values: &[S; NVARS]) -> Result<S, FieldError> {
        let n = self.num.eval(values)?;
        let d = self.den.eval(values)?;
        n.checked_div(&d)
    }
}

fn cancel(n: &MultiPoly, d: &MultiPoly) -> (MultiPoly, MultiPoly) {
    if d.is_one() || n.is_constant() || d.is_constant() {
        return (n.clone(), d.clone());
    }
    let g = n.gcd(d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (
            n.exact_div(&g).expect("gcd divides"),
            d.exact_div(&g).expect("gcd divides"),
        )
    }
}

impl Scalar for RatFunc {
    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::one()
    }

    fn from_rational_like(&self, q: &Rational) -> Result<Self, FieldError> {
        Ok(Self::constant(q.clone()))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    fn checked_add(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self.add_impl(o))
    }

    fn checked_sub(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self.add_impl(&o.neg_impl()))
    }

    fn checked_mul(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self.mul_impl(o))
    }

    fn neg(&self) -> Self {
        self.neg_impl()
    }

    fn inv(&self) -> Result<Self, FieldError> {
        self.inv_impl()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn square_test(&self) -> Result<SquareTest<Self>, FieldError> {
        match self.constant_value() {
            Some(c) => Ok(match c.sqrt() {
                Some(r) => SquareTest::Square(Self::constant(r)),
                None => SquareTest::NonSquare,
            }),
            None => Err(FieldError::SymbolicScalar),
        }
    }

    fn field_name(&self) -> String {
        String::from("q(alpha,beta,gamma,psi,eta)")
    }

    fn is_symbolic(&self) -> bool {
        !(self.den.is_one() && self.num.is_constant())
    }

    fn weight(&self) -> usize {
        if self.is_symbolic() {
            16 * (self.num.len() + self.den.len())
        } else {
            1
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} | {}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RatFunc {
    type Err = FieldError;

    /// Parses `"num"` or `"num | den"` with both sides expanded polynomials.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('|') {
            Some((n, d)) => {
                let num: MultiPoly = n.parse()?;
                let den: MultiPoly = d.parse()?;
                Self::new(num, den).map_err(|_| FieldError::Parse(s.to_string()))
            }
            None => Ok(Self::from_poly(s.parse()?)),
        }
    }
}

impl From<Rational> for RatFunc {
    fn from(q: Rational) -> Self {
        Self::constant(q)
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn reduces_to_lowest_terms() {
        let x = r("alpha^2 - beta^2 | 2*alpha + 2*beta");
        assert_eq!(x, r("1/2*alpha - 1/2*beta"));
        assert!(x.is_polynomial());
        let y = r("alpha | -2*beta");
        assert_eq!(y.to_string(), "-1/2*alpha | beta");
    }

    #[test]
    fn field_operations() {
        let a = r("alpha | beta + 1");
        let b = r("1 | beta + 1");
        assert_eq!(a.add(&b), r("alpha + 1 | beta + 1"));
        assert_eq!(a.sub(&a), RatFunc::zero());
        assert_eq!(a.div(&b), r("alpha"));
        assert!(a.mul(&a.inv().unwrap()).is_one());
        let c = r("1 | alpha - gamma");
        let d = r("1 | gamma - alpha");
        assert!(c.add(&d).is_zero());
    }

    #[test]
    fn substitution_and_evaluation() {
        let x = r("eta - 1 | 2*eta - 1");
        let q = |n, d| Rational::new(n, d).unwrap();
        assert_eq!(x.substitute(Var::Eta, &q(1, 3)).unwrap(), RatFunc::constant(q(2, 1)));
        assert!(x.substitute(Var::Eta, &q(1, 2)).is_err());
        let vals = [q(1, 1), q(1, 1), q(1, 1), q(1, 1), q(3, 1)];
        assert_eq!(x.eval(&vals).unwrap(), q(2, 5));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "-psi", "alpha*beta - 1/3 | gamma + psi", "3/2*alpha^2*beta - psi"] {
            let x = r(s);
            assert_eq!(r(&x.to_string()), x);
        }
    }
}
