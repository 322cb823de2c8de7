//! Commutative nonassociative algebras given by structure constants.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{FieldError, Scalar};
use crate::linalg::{LinalgError, Matrix, Solution, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("element has {got} coordinates, algebra has dimension {dim}")]
    AlgebraMismatch { dim: usize, got: usize },
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("products e{0}*e{1} and e{1}*e{0} disagree")]
    Asymmetric(usize, usize),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("eigenvalue eta must differ from 0 and 1")]
    InvalidEta,
    #[error("adjoint is not semisimple: eigenspaces miss {defect} dimensions")]
    NotSemisimple { defect: usize },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Terms<S> = Vec<(usize, S)>;

fn tri(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    j * (j + 1) / 2 + i
}

/// Commutative algebra on a labelled basis; only products `e_i e_j` with
/// `i <= j` are stored.
#[derive(Clone, PartialEq)]
pub struct Algebra<S> {
    labels: Vec<String>,
    table: Vec<Terms<S>>,
    zero: S,
}

impl<S: Scalar> Algebra<S> {
    /// Algebra with every product zero.
    pub fn new(labels: Vec<String>, zero: &S) -> Result<Self, AlgebraError> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        Ok(Self {
            labels,
            table: vec![Vec::new(); n * (n + 1) / 2],
            zero: zero.zero_like(),
        })
    }

    /// Builds from `(i, j, terms)` entries; a pair given in both orders must agree.
    pub fn from_constants(
        labels: Vec<String>,
        zero: &S,
        constants: impl IntoIterator<Item = (usize, usize, Terms<S>)>,
    ) -> Result<Self, AlgebraError> {
        let mut alg = Self::new(labels, zero)?;
        let n = alg.dim();
        let mut seen = vec![false; alg.table.len()];
        for (i, j, terms) in constants {
            let t = alg.normalize_terms(terms)?;
            if i >= n || j >= n {
                return Err(AlgebraError::IndexOutOfRange(i.max(j)));
            }
            let idx = tri(i, j);
            if seen[idx] {
                if alg.table[idx] != t {
                    return Err(AlgebraError::Asymmetric(i, j));
                }
                continue;
            }
            seen[idx] = true;
            alg.table[idx] = t;
        }
        Ok(alg)
    }

    fn normalize_terms(&self, terms: Terms<S>) -> Result<Terms<S>, AlgebraError> {
        let mut v = vec![self.zero.clone(); self.dim()];
        for (k, c) in terms {
            if k >= self.dim() {
                return Err(AlgebraError::IndexOutOfRange(k));
            }
            v[k] = v[k].checked_add(&c)?;
        }
        Ok(sparse(&v))
    }

    pub fn set_product(&mut self, i: usize, j: usize, terms: Terms<S>) -> Result<(), AlgebraError> {
        if i >= self.dim() || j >= self.dim() {
            return Err(AlgebraError::IndexOutOfRange(i.max(j)));
        }
        self.table[tri(i, j)] = self.normalize_terms(terms)?;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero_elem(&self) -> &S {
        &self.zero
    }

    pub fn field_name(&self) -> String {
        self.zero.field_name()
    }

    /// Nonzero terms of `e_i e_j`, in increasing basis order.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.table[tri(i, j)]
    }

    pub fn product_vector(&self, i: usize, j: usize) -> Vec<S> {
        dense(self.product_terms(i, j), self.dim(), &self.zero)
    }

    /// Every stored product as `(i, j, terms)` with `i <= j`.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, &[(usize, S)])> {
        let n = self.dim();
        (0..n).flat_map(move |j| (0..=j).map(move |i| (i, j, self.product_terms(i, j))))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = self.zero_vector();
        v[i] = self.zero.one_like();
        v
    }

    pub fn zero_vector(&self) -> Vec<S> {
        vec![self.zero.clone(); self.dim()]
    }

    fn check_len(&self, x: &[S]) -> Result<(), AlgebraError> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch {
                dim: self.dim(),
                got: x.len(),
            })
        }
    }

    pub fn multiply(&self, x: &[S], y: &[S]) -> Result<Vec<S>, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = self.zero_vector();
        let xs: Vec<usize> = (0..x.len()).filter(|&i| !x[i].is_zero()).collect();
        let ys: Vec<usize> = (0..y.len()).filter(|&i| !y[i].is_zero()).collect();
        for &i in &xs {
            for &j in &ys {
                let terms = self.product_terms(i, j);
                if terms.is_empty() {
                    continue;
                }
                let c = x[i].checked_mul(&y[j])?;
                for (k, t) in terms {
                    out[*k] = out[*k].checked_add(&c.checked_mul(t)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Right multiplication by `a`: row `i` holds the coordinates of `e_i a`.
    pub fn adjoint(&self, a: &[S]) -> Result<Matrix<S>, AlgebraError> {
        self.check_len(a)?;
        let rows = (0..self.dim())
            .map(|i| self.multiply(&self.basis_vector(i), a))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(rows, &self.zero)?)
    }

    pub fn is_idempotent(&self, a: &[S]) -> Result<bool, AlgebraError> {
        Ok(self.multiply(a, a)? == a)
    }

    /// Eigenspace of `ad_a` for `lambda`, as a subspace of coordinate vectors.
    pub fn eigenspace(&self, a: &[S], lambda: &S) -> Result<Subspace<S>, AlgebraError> {
        Ok(self.adjoint(a)?.transpose().eigenspace(lambda)?)
    }

    pub fn peirce(&self, a: &[S], eta: &S) -> Result<PeirceDecomposition<S>, AlgebraError> {
        if eta.is_zero() || eta.is_one() {
            return Err(AlgebraError::InvalidEta);
        }
        if !self.is_idempotent(a)? {
            return Err(AlgebraError::NotIdempotent);
        }
        let ad = self.adjoint(a)?.transpose();
        let one = ad.eigenspace(&self.zero.one_like())?;
        let zero = ad.eigenspace(&self.zero)?;
        let half = ad.eigenspace(eta)?;
        let total = one.dim() + zero.dim() + half.dim();
        if total < self.dim() {
            return Err(AlgebraError::NotSemisimple {
                defect: self.dim() - total,
            });
        }
        Ok(PeirceDecomposition {
            axis: a.to_vec(),
            eta: eta.clone(),
            one,
            zero,
            eta_space: half,
        })
    }

    pub fn check_fusion(&self, d: &PeirceDecomposition<S>) -> Result<FusionReport<S>, AlgebraError> {
        let zero_space = Subspace::zero(self.dim(), &self.zero);
        let zero_plus_one = d.zero.sum(&d.one);
        let spaces = |s: Space| match s {
            Space::One => &d.one,
            Space::Zero => &d.zero,
            Space::Eta => &d.eta_space,
        };
        let mut checks = Vec::with_capacity(FusionRule::ALL.len());
        for rule in FusionRule::ALL {
            let (l, r) = rule.factors();
            let target = match rule {
                FusionRule::OneOne => &d.one,
                FusionRule::ZeroZero => &d.zero,
                FusionRule::OneZero => &zero_space,
                FusionRule::OneEta | FusionRule::ZeroEta => &d.eta_space,
                FusionRule::EtaEta => &zero_plus_one,
            };
            let (ls, rs) = (spaces(l), spaces(r));
            let mut witness = None;
            'outer: for (i, u) in ls.basis().iter().enumerate() {
                let start = if l == r { i } else { 0 };
                for v in &rs.basis()[start..] {
                    let p = self.multiply(u, v)?;
                    if !target.contains(&p) {
                        witness = Some(FusionWitness {
                            left: u.clone(),
                            right: v.clone(),
                            product: p,
                        });
                        break 'outer;
                    }
                }
            }
            checks.push(FusionCheck { rule, witness });
        }
        Ok(FusionReport {
            axis: d.axis.clone(),
            checks,
        })
    }

    pub fn is_primitive_axis(&self, a: &[S], eta: &S) -> Result<bool, AlgebraError> {
        let d = match self.peirce(a, eta) {
            Ok(d) => d,
            Err(AlgebraError::NotIdempotent) => return Ok(false),
            Err(e) => return Err(e),
        };
        Ok(d.one.dim() == 1 && self.check_fusion(&d)?.passed())
    }

    /// Pairs `(x, y)` with `x` a basis vector and `y` in `A_1(a) + A_0(a)` where
    /// `a(xy) != (ax)y`.
    pub fn seress_failures(&self, d: &PeirceDecomposition<S>) -> Result<Vec<(usize, Vec<S>)>, AlgebraError> {
        let a = &d.axis;
        let ys = d.one.sum(&d.zero);
        let mut bad = Vec::new();
        for i in 0..self.dim() {
            let x = self.basis_vector(i);
            let ax = self.multiply(a, &x)?;
            for y in ys.basis() {
                let lhs = self.multiply(a, &self.multiply(&x, y)?)?;
                let rhs = self.multiply(&ax, y)?;
                if lhs != rhs {
                    bad.push((i, y.clone()));
                }
            }
        }
        Ok(bad)
    }

    fn closure(&self, gens: &[Vec<S>], ideal: bool) -> Result<Subspace<S>, AlgebraError> {
        for g in gens {
            self.check_len(g)?;
        }
        let mut space = Subspace::span(self.dim(), gens.to_vec(), &self.zero);
        for _ in 0..=self.dim() {
            let basis = space.basis().to_vec();
            let mut vecs = basis.clone();
            if ideal {
                for v in &basis {
                    for i in 0..self.dim() {
                        vecs.push(self.multiply(v, &self.basis_vector(i))?);
                    }
                }
            } else {
                for (i, u) in basis.iter().enumerate() {
                    for v in &basis[i..] {
                        vecs.push(self.multiply(u, v)?);
                    }
                }
            }
            let next = Subspace::span(self.dim(), vecs, &self.zero);
            if next.dim() == space.dim() {
                return Ok(next);
            }
            space = next;
        }
        Ok(space)
    }

    /// Smallest subspace containing `gens` and closed under multiplication.
    pub fn subalgebra_closure(&self, gens: &[Vec<S>]) -> Result<Subspace<S>, AlgebraError> {
        self.closure(gens, false)
    }

    /// Smallest ideal containing `gens`.
    pub fn ideal_closure(&self, gens: &[Vec<S>]) -> Result<Subspace<S>, AlgebraError> {
        self.closure(gens, true)
    }

    pub fn is_ideal(&self, ideal: &Subspace<S>) -> Result<bool, AlgebraError> {
        for v in ideal.basis() {
            for i in 0..self.dim() {
                if !ideal.contains(&self.multiply(v, &self.basis_vector(i))?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Factor algebra on the complement spanned by the non-pivot basis vectors of `ideal`.
    pub fn quotient(&self, ideal: &Subspace<S>) -> Result<Quotient<S>, AlgebraError> {
        if ideal.ambient() != self.dim() {
            return Err(AlgebraError::AlgebraMismatch {
                dim: self.dim(),
                got: ideal.ambient(),
            });
        }
        if !self.is_ideal(ideal)? {
            return Err(AlgebraError::NotAnIdeal);
        }
        let pivots = ideal.pivots();
        let complement: Vec<usize> = (0..self.dim()).filter(|i| !pivots.contains(i)).collect();
        let labels = complement.iter().map(|&i| self.labels[i].clone()).collect();
        let mut q = Quotient {
            algebra: Algebra::new(labels, &self.zero)?,
            complement,
            ideal: ideal.clone(),
        };
        let comp = q.complement.clone();
        for (p, &i) in comp.iter().enumerate() {
            for (r, &j) in comp.iter().enumerate().skip(p) {
                let img = q.project(&self.product_vector(i, j))?;
                q.algebra.set_product(p, r, sparse(&img))?;
            }
        }
        // the projection must be a homomorphism on all basis pairs
        for i in 0..self.dim() {
            let pi = q.project(&self.basis_vector(i))?;
            for j in i..self.dim() {
                let pj = q.project(&self.basis_vector(j))?;
                if q.project(&self.product_vector(i, j))? != q.algebra.multiply(&pi, &pj)? {
                    return Err(AlgebraError::NotAnIdeal);
                }
            }
        }
        Ok(q)
    }

    pub fn map_scalars<T: Scalar, E>(
        &self,
        zero: &T,
        f: impl Fn(&S) -> Result<T, E>,
    ) -> Result<Algebra<T>, E> {
        let table = self
            .table
            .iter()
            .map(|terms| {
                let mut out = Vec::with_capacity(terms.len());
                for (k, c) in terms {
                    let v = f(c)?;
                    if !v.is_zero() {
                        out.push((*k, v));
                    }
                }
                Ok(out)
            })
            .collect::<Result<_, E>>()?;
        Ok(Algebra {
            labels: self.labels.clone(),
            table,
            zero: zero.zero_like(),
        })
    }
}

impl<S: Scalar> core::fmt::Debug for Algebra<S> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "Algebra over {} on {:?}", self.field_name(), self.labels)?;
        for (i, j, t) in self.constants() {
            if !t.is_empty() {
                writeln!(f, "  {}*{} = {:?}", self.labels[i], self.labels[j], t)?;
            }
        }
        Ok(())
    }
}

pub fn sparse<S: Scalar>(v: &[S]) -> Terms<S> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

pub fn dense<S: Scalar>(terms: &[(usize, S)], n: usize, zero: &S) -> Vec<S> {
    let mut v = vec![zero.zero_like(); n];
    for (k, c) in terms {
        v[*k] = c.clone();
    }
    v
}

pub fn add_vec<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
}

pub fn sub_vec<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
}

pub fn scale_vec<S: Scalar>(c: &S, x: &[S]) -> Vec<S> {
    x.iter().map(|a| c.mul(a)).collect()
}

/// Linear combination `Σ c_i v_i` of equal-length vectors.
pub fn combine<S: Scalar>(terms: &[(S, &[S])], zero: &S, n: usize) -> Vec<S> {
    let mut out = vec![zero.zero_like(); n];
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v.iter()) {
            if !x.is_zero() {
                *o = o.add(&c.mul(x));
            }
        }
    }
    out
}

/// Coordinates of `v` in the (independent) vectors `basis`, if `v` lies in their span.
pub fn express<S: Scalar>(basis: &[Vec<S>], v: &[S], zero: &S) -> Result<Option<Vec<S>>, AlgebraError> {
    let m = Matrix::from_fn(v.len(), basis.len(), zero, |i, j| basis[j][i].clone());
    match m.solve(v)? {
        Solution::Unique(x) => Ok(Some(x)),
        Solution::None => Ok(None),
        Solution::Affine(..) => Err(AlgebraError::Linalg(LinalgError::DimensionMismatch(
            "expression basis is dependent",
        ))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeirceDecomposition<S> {
    pub axis: Vec<S>,
    pub eta: S,
    pub one: Subspace<S>,
    pub zero: Subspace<S>,
    pub eta_space: Subspace<S>,
}

impl<S: Scalar> PeirceDecomposition<S> {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.one.dim(), self.zero.dim(), self.eta_space.dim())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    One,
    Zero,
    Eta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FusionRule {
    OneOne,
    ZeroZero,
    OneZero,
    OneEta,
    ZeroEta,
    EtaEta,
}

impl FusionRule {
    pub const ALL: [FusionRule; 6] = [
        FusionRule::OneOne,
        FusionRule::ZeroZero,
        FusionRule::OneZero,
        FusionRule::OneEta,
        FusionRule::ZeroEta,
        FusionRule::EtaEta,
    ];

    pub fn factors(self) -> (Space, Space) {
        match self {
            FusionRule::OneOne => (Space::One, Space::One),
            FusionRule::ZeroZero => (Space::Zero, Space::Zero),
            FusionRule::OneZero => (Space::One, Space::Zero),
            FusionRule::OneEta => (Space::One, Space::Eta),
            FusionRule::ZeroEta => (Space::Zero, Space::Eta),
            FusionRule::EtaEta => (Space::Eta, Space::Eta),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FusionRule::OneOne => "A1*A1 in A1",
            FusionRule::ZeroZero => "A0*A0 in A0",
            FusionRule::OneZero => "A1*A0 = 0",
            FusionRule::OneEta => "A1*Aeta in Aeta",
            FusionRule::ZeroEta => "A0*Aeta in Aeta",
            FusionRule::EtaEta => "Aeta*Aeta in A0+A1",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FusionWitness<S> {
    pub left: Vec<S>,
    pub right: Vec<S>,
    pub product: Vec<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FusionCheck<S> {
    pub rule: FusionRule,
    pub witness: Option<FusionWitness<S>>,
}

impl<S> FusionCheck<S> {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FusionReport<S> {
    pub axis: Vec<S>,
    pub checks: Vec<FusionCheck<S>>,
}

impl<S> FusionReport<S> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(FusionCheck::passed)
    }
}

#[derive(Clone)]
pub struct Quotient<S> {
    pub algebra: Algebra<S>,
    /// Original basis indices kept as the quotient basis.
    pub complement: Vec<usize>,
    pub ideal: Subspace<S>,
}

impl<S: Scalar> Quotient<S> {
    /// Image of `v` under the natural projection, in quotient coordinates.
    pub fn project(&self, v: &[S]) -> Result<Vec<S>, AlgebraError> {
        let r = self.ideal.reduce(v)?;
        Ok(self.complement.iter().map(|&i| r[i].clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use alloc::string::ToString;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    /// Spin-factor-like toy: e0, e1 orthogonal idempotents plus e2 with e2^2 = e0 + e1.
    fn toy() -> Algebra<Rational> {
        let one = q(1, 1);
        let half = q(1, 2);
        Algebra::from_constants(
            ["e0", "e1", "e2"].iter().map(|s| s.to_string()).collect(),
            &q(0, 1),
            [
                (0, 0, vec![(0, one.clone())]),
                (1, 1, vec![(1, one.clone())]),
                (0, 2, vec![(2, half.clone())]),
                (1, 2, vec![(2, half)]),
                (2, 2, vec![(0, one.clone()), (1, one)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_duplicates_and_asymmetry() {
        let labels = vec!["x".to_string(), "x".to_string()];
        assert!(matches!(
            Algebra::<Rational>::new(labels, &q(0, 1)),
            Err(AlgebraError::DuplicateLabel(_))
        ));
        let labels = vec!["x".to_string(), "y".to_string()];
        let r = Algebra::from_constants(
            labels,
            &q(0, 1),
            [(0, 1, vec![(0, q(1, 1))]), (1, 0, vec![(1, q(1, 1))])],
        );
        assert_eq!(r.unwrap_err(), AlgebraError::Asymmetric(1, 0));
    }

    #[test]
    fn peirce_of_toy_axis() {
        let a = toy();
        let e0 = a.basis_vector(0);
        let d = a.peirce(&e0, &q(1, 2)).unwrap();
        assert_eq!(d.dims(), (1, 1, 1));
        assert!(a.check_fusion(&d).unwrap().passed());
        assert!(a.is_primitive_axis(&e0, &q(1, 2)).unwrap());
        assert!(a.seress_failures(&d).unwrap().is_empty());
        let unit = add_vec(&e0, &a.basis_vector(1));
        let d = a.peirce(&unit, &q(1, 2)).unwrap();
        assert_eq!(d.dims(), (3, 0, 0));
        assert!(!a.is_primitive_axis(&unit, &q(1, 2)).unwrap());
        assert!(matches!(a.peirce(&a.basis_vector(2), &q(1, 2)), Err(AlgebraError::NotIdempotent)));
    }

    #[test]
    fn perturbed_constants_break_fusion() {
        let mut a = toy();
        a.set_product(2, 2, vec![(0, q(1, 1)), (1, q(1, 1)), (2, q(1, 1))]).unwrap();
        let d = a.peirce(&a.basis_vector(0), &q(1, 2)).unwrap();
        let rep = a.check_fusion(&d).unwrap();
        let failed: Vec<_> = rep.checks.iter().filter(|c| !c.passed()).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].rule, FusionRule::EtaEta);
        let w = failed[0].witness.as_ref().unwrap();
        assert_eq!(a.multiply(&w.left, &w.right).unwrap(), w.product);
    }

    #[test]
    fn closures_and_quotient() {
        let a = toy();
        let s = a.subalgebra_closure(&[a.basis_vector(0)]).unwrap();
        assert_eq!(s.dim(), 1);
        let spin = a.subalgebra_closure(&[a.basis_vector(2)]).unwrap();
        assert_eq!(spin.dim(), 2);
        let full = a.subalgebra_closure(&[a.basis_vector(0), a.basis_vector(2)]).unwrap();
        assert_eq!(full.dim(), 3);
        let i = a.ideal_closure(&[a.basis_vector(0)]).unwrap();
        assert_eq!(i.dim(), 3);
        assert!(s.is_subspace_of(&i));

        let zero = Subspace::zero(3, &q(0, 1));
        let same = a.quotient(&zero).unwrap();
        assert_eq!(same.algebra, a);
        let all = a.quotient(&Subspace::full(3, &q(0, 1))).unwrap();
        assert_eq!(all.algebra.dim(), 0);
        assert!(matches!(
            a.quotient(&Subspace::span(3, vec![a.basis_vector(0)], &q(0, 1))),
            Err(AlgebraError::NotAnIdeal)
        ));
    }

    #[test]
    fn express_in_basis() {
        let b = vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(-1, 1)]];
        let c = express(&b, &[q(3, 1), q(1, 1)], &q(0, 1)).unwrap().unwrap();
        assert_eq!(c, vec![q(2, 1), q(1, 1)]);
    }
}
