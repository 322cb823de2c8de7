//! Sparse multivariate polynomials over the rationals in the five parameter
//! symbols `alpha, beta, gamma, psi, eta`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{FieldError, Rational, Scalar};

pub const NVARS: usize = 5;

/// Parameter symbols, in term-order significance (alpha is most significant).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Alpha = 0,
    Beta = 1,
    Gamma = 2,
    Psi = 3,
    Eta = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Alpha, Var::Beta, Var::Gamma, Var::Psi, Var::Eta];

    pub fn name(self) -> &'static str {
        match self {
            Var::Alpha => "alpha",
            Var::Beta => "beta",
            Var::Gamma => "gamma",
            Var::Psi => "psi",
            Var::Eta => "eta",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Exponent vector. The derived `Ord` is lexicographic with alpha most significant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u8; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v as usize] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        Monomial(e)
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Self) -> Self {
        let mut e = o.0;
        for (a, b) in e.iter_mut().zip(self.0) {
            *a -= b;
        }
        Monomial(e)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0) {
            *a = (*a).min(b);
        }
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.0[v as usize];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(v.name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Terms sorted by strictly decreasing monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly {
                terms: alloc::vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(x) => *x = x.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        MultiPoly {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u8 {
        self.terms
            .iter()
            .map(|(m, _)| m.0[v as usize])
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.0[v as usize] > 0)
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let c = if negate {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| {
            let c = if negate { c.neg() } else { c.clone() };
            (*m, c)
        }));
        MultiPoly { terms: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        self.merge(o, true)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(n, x)| (n.mul(m), x.mul(c))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2);
                match acc.get_mut(&m) {
                    Some(x) => *x = x.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        assert!(!g.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = g.constant_value() {
            return Some(self.scale(&c.inv().ok()?));
        }
        let (glm, glc) = g.terms[0].clone();
        let glc_inv = glc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            if !glm.divides(&rm) {
                return None;
            }
            let qm = glm.quotient_of(&rm);
            let qc = rc.mul(&glc_inv);
            rem = rem.sub(&g.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        // quotient terms are produced in decreasing order
        Some(MultiPoly { terms: quot })
    }

    /// Rational content with the sign of the leading coefficient: `self = content * primitive`,
    /// where `primitive` has coprime integer coefficients and positive leading coefficient.
    pub fn content(&self) -> Rational {
        let mut it = self.terms.iter();
        let Some((_, first)) = it.next() else {
            return Rational::one();
        };
        let mut g = it.fold(first.abs(), |g, (_, c)| g.gcd_with(c));
        if self.leading_coeff().is_negative() {
            g = g.neg();
        }
        g
    }

    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        self.scale(&c.inv().expect("nonzero content"))
    }

    /// Splits into coefficients of powers of `v` (descending powers, coefficients free of `v`).
    pub fn coeffs_in(&self, v: Var) -> Vec<(u8, MultiPoly)> {
        let vi = v as usize;
        let mut groups: BTreeMap<u8, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[vi];
            let mut mm = *m;
            mm.0[vi] = 0;
            groups.entry(e).or_default().push((mm, c.clone()));
        }
        groups
            .into_iter()
            .rev()
            .map(|(e, ts)| {
                let mut p = MultiPoly { terms: ts };
                p.terms.sort_by(|a, b| b.0.cmp(&a.0));
                (e, p)
            })
            .collect()
    }

    fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |g, (m, _)| g.gcd(m))
    }

    /// Greatest common divisor, normalized to coprime integer coefficients and a
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        gcd_rec(self, o)
    }

    pub fn substitute(&self, v: Var, value: &Rational) -> Self {
        let vi = v as usize;
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut mm = *m;
            let e = mm.0[vi];
            mm.0[vi] = 0;
            (mm, c.mul(&value.pow(e as u32)))
        }))
    }

    /// Relabels variables: the exponent of variable `i` moves to slot `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize; NVARS]) -> Self {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = [0u8; NVARS];
            for (i, &x) in m.0.iter().enumerate() {
                e[perm[i]] = x;
            }
            (Monomial(e), c.clone())
        }))
    }

    /// Evaluates at values drawn from any field.
    pub fn eval<S: Scalar>(&self, values: &[S; NVARS]) -> Result<S, FieldError> {
        let proto = &values[0];
        let mut acc = proto.zero_like();
        for (m, c) in &self.terms {
            let mut t = proto.from_rational_like(c)?;
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.checked_mul(&values[i])?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }
}

fn unit_normal(p: MultiPoly) -> MultiPoly {
    if p.is_zero() {
        p
    } else {
        p.primitive()
    }
}

fn lowest_var(f: &MultiPoly, g: &MultiPoly) -> Option<Var> {
    Var::ALL
        .into_iter()
        .find(|&v| f.contains(v) || g.contains(v))
}

/// gcd of the coefficients of `f` viewed as a polynomial in `v`.
fn content_in(f: &MultiPoly, v: Var) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for (_, c) in f.coeffs_in(v) {
        g = gcd_rec(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn dense_in(f: &MultiPoly, v: Var) -> Vec<MultiPoly> {
    let cs = f.coeffs_in(v);
    let deg = cs.first().map(|(e, _)| *e as usize).unwrap_or(0);
    let mut out = alloc::vec![MultiPoly::zero(); deg + 1];
    for (e, c) in cs {
        out[e as usize] = c;
    }
    out
}

fn from_dense(coeffs: &[MultiPoly], v: Var) -> MultiPoly {
    let vi = v as usize;
    MultiPoly::from_terms(coeffs.iter().enumerate().flat_map(|(e, c)| {
        c.terms.iter().map(move |(m, x)| {
            let mut mm = *m;
            mm.0[vi] = e as u8;
            (mm, x.clone())
        })
    }))
}

fn trim(r: &mut Vec<MultiPoly>) {
    while r.len() > 1 && r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
}

/// Pseudo-remainder of `a` by `b` in their main variable (dense coefficient vectors).
fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let k = i + dr - db;
            r[k] = r[k].sub(&lr.mul(bc));
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        if r.is_empty() {
            r.push(MultiPoly::zero());
        }
        trim(&mut r);
    }
    r
}

fn gcd_rec(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return unit_normal(g.clone());
    }
    if g.is_zero() {
        return unit_normal(f.clone());
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one();
    }
    if f.terms.len() == 1 || g.terms.len() == 1 {
        let m = f.monomial_content().gcd(&g.monomial_content());
        return MultiPoly::monomial(m, Rational::one());
    }
    // cheap divisibility shortcuts
    if f.terms.len() >= g.terms.len() {
        if f.exact_div(g).is_some() {
            return unit_normal(g.clone());
        }
    } else if g.exact_div(f).is_some() {
        return unit_normal(f.clone());
    }
    let v = lowest_var(f, g).expect("non-constant polynomials contain a variable");
    if !f.contains(v) {
        return gcd_rec(f, &content_in(g, v));
    }
    if !g.contains(v) {
        return gcd_rec(&content_in(f, v), g);
    }
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd_rec(&cf, &cg);
    let pf = f.exact_div(&cf).expect("content divides");
    let pg = g.exact_div(&cg).expect("content divides");
    let (mut r0, mut r1) = (dense_in(&pf, v), dense_in(&pg, v));
    if r0.len() < r1.len() {
        core::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let r = prem(&r0, &r1);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        if r.len() == 1 {
            // constant in v: the primitive parts are coprime
            r1 = alloc::vec![MultiPoly::one()];
            break;
        }
        let rp = from_dense(&r, v);
        let rc = content_in(&rp, v);
        let rp = rp.exact_div(&rc).expect("content divides");
        r0 = r1;
        r1 = dense_in(&rp, v);
    }
    let last = from_dense(&r1, v);
    let last = last
        .exact_div(&content_in(&last, v))
        .expect("content divides");
    unit_normal(c.mul(&last))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_term(t: &str, full: &str) -> Result<MultiPoly, FieldError> {
    let bad = || FieldError::Parse(full.to_string());
    let mut coeff = Rational::one();
    let mut mono = Monomial::ONE;
    for factor in t.split('*') {
        if factor.is_empty() {
            return Err(bad());
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coeff = coeff.mul(&factor.parse::<Rational>().map_err(|_| bad())?);
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<u8>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        let v = Var::from_name(name).ok_or_else(bad)?;
        let mut e = [0u8; NVARS];
        e[v as usize] = exp;
        mono = mono.mul(&Monomial(e));
    }
    Ok(MultiPoly::monomial(mono, coeff))
}

impl FromStr for MultiPoly {
    type Err = FieldError;

    /// Parses expanded sums such as `"3/2*alpha^2*beta - psi"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(FieldError::Parse(s.to_string()));
        }
        let mut acc = MultiPoly::zero();
        let mut sign = Rational::one();
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut i = 0;
        if bytes[0] == b'-' || bytes[0] == b'+' {
            if bytes[0] == b'-' {
                sign = sign.neg();
            }
            start = 1;
            i = 1;
        }
        while i <= bytes.len() {
            if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
                let term = &compact[start..i];
                if term.is_empty() {
                    return Err(FieldError::Parse(s.to_string()));
                }
                acc = acc.add(&parse_term(term, s)?.scale(&sign));
                if i < bytes.len() {
                    sign = if bytes[i] == b'-' {
                        Rational::one().neg()
                    } else {
                        Rational::one()
                    };
                }
                start = i + 1;
            }
            i += 1;
        }
        Ok(acc)
    }
}
