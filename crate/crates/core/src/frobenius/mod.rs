//! The associating bilinear form: solving for it, its closed form on the
//! universal algebra, the radical, the identity element and simplicity.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{scale_vec, Algebra, AlgebraError};
use crate::field::{FieldError, MultiPoly, Rational, Scalar};
use crate::linalg::{LinalgError, Matrix, Subspace};
use crate::universal::{UniversalParams, A, AB, AC, A_BC, B, BC, B_AC, C, C_AB, DIM};

mod radical;

pub use radical::{radical, table5_basis, table5_match, RadicalCase, RadicalReport, Table5Row};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrobeniusError {
    #[error("axis {0} is not a primitive idempotent")]
    NotPrimitive(usize),
    #[error("no associating form: constraint from (e{0} e{1}, e{2}) fails")]
    NoSolution(usize, usize, usize),
    #[error("associating form is not unique: {0} free parameters")]
    NonUnique(usize),
    #[error("e x = lambda x fails for basis element {0}")]
    VerificationFailed(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Upper triangle of the Gram matrix on the universal basis, as `(d, poly)`
/// meaning `poly / d`.
const GRAM: [&[(i64, &str)]; DIM] = [
    &[
        (1, "1"),
        (1, "alpha"),
        (1, "gamma"),
        (1, "alpha"),
        (1, "psi"),
        (1, "gamma"),
        (1, "psi"),
        (2, "alpha*gamma + psi"),
        (2, "alpha*gamma + psi"),
    ],
    &[
        (1, "1"),
        (1, "beta"),
        (1, "alpha"),
        (1, "beta"),
        (1, "psi"),
        (2, "alpha*beta + psi"),
        (1, "psi"),
        (2, "alpha*beta + psi"),
    ],
    &[
        (1, "1"),
        (1, "psi"),
        (1, "beta"),
        (1, "gamma"),
        (2, "beta*gamma + psi"),
        (2, "beta*gamma + psi"),
        (1, "psi"),
    ],
    &[
        (2, "alpha^2 + alpha"),
        (2, "alpha*beta + psi"),
        (2, "alpha*gamma + psi"),
        (4, "alpha*beta + 2*alpha*psi + psi"),
        (4, "alpha*gamma + 2*alpha*psi + psi"),
        (4, "alpha*beta + alpha*gamma + 2*alpha*psi"),
    ],
    &[
        (2, "beta^2 + beta"),
        (2, "beta*gamma + psi"),
        (4, "alpha*beta + beta*gamma + 2*beta*psi"),
        (4, "beta*gamma + 2*beta*psi + psi"),
        (4, "alpha*beta + 2*beta*psi + psi"),
    ],
    &[
        (2, "gamma^2 + gamma"),
        (4, "beta*gamma + 2*gamma*psi + psi"),
        (4, "alpha*gamma + beta*gamma + 2*gamma*psi"),
        (4, "alpha*gamma + 2*gamma*psi + psi"),
    ],
    &[
        (8, "alpha*beta + beta*gamma + 2*beta*psi + 4*psi^2"),
        (8, "2*alpha*beta*gamma + alpha*psi + beta*gamma + beta*psi + gamma*psi + 2*psi^2"),
        (8, "2*alpha*beta*gamma + alpha*beta + alpha*psi + beta*psi + gamma*psi + 2*psi^2"),
    ],
    &[
        (8, "alpha*gamma + beta*gamma + 2*gamma*psi + 4*psi^2"),
        (8, "2*alpha*beta*gamma + alpha*gamma + alpha*psi + beta*psi + gamma*psi + 2*psi^2"),
    ],
    &[(8, "alpha*beta + alpha*gamma + 2*alpha*psi + 4*psi^2")],
];

/// The closed-form Gram matrix with polynomial entries.
pub fn gram_polys() -> Vec<Vec<MultiPoly>> {
    let mut g = vec![vec![MultiPoly::zero(); DIM]; DIM];
    for (i, row) in GRAM.iter().enumerate() {
        for (off, &(d, p)) in row.iter().enumerate() {
            let j = i + off;
            let v = p
                .parse::<MultiPoly>()
                .expect("gram entry parses")
                .scale(&Rational::new(1, d).expect("nonzero"));
            g[i][j] = v.clone();
            g[j][i] = v;
        }
    }
    g
}

pub fn gram_closed_form<S: Scalar>(p: &UniversalParams<S>) -> Result<Matrix<S>, FieldError> {
    let pt = p.half_point();
    let rows = gram_polys()
        .iter()
        .map(|r| r.iter().map(|c| c.eval(&pt)).collect::<Result<Vec<S>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows, &p.zero()).expect("square"))
}

/// Determinant of the closed-form Gram matrix, by elimination.
pub fn gram_det<S: Scalar>(p: &UniversalParams<S>) -> Result<S, FrobeniusError> {
    Ok(gram_closed_form(p)?.det()?)
}

/// `(alpha beta gamma - psi^2)^3 (alpha + beta + gamma - 2 psi - 1)^6 / 1024`.
pub fn gram_det_formula<S: Scalar>(p: &UniversalParams<S>) -> S {
    let c = p.zero().from_int_like(1024).inv().expect("characteristic is odd");
    p.delta().pow(3).mul(&p.lambda().pow(6)).mul(&c)
}

/// An associating symmetric form together with the axes it was normalized on.
#[derive(Clone, PartialEq)]
pub struct GramForm<S> {
    pub matrix: Matrix<S>,
    pub axes: Vec<Vec<S>>,
}

impl<S: Scalar> core::fmt::Debug for GramForm<S> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("GramForm").field("matrix", &self.matrix).field("axes", &self.axes).finish()
    }
}

impl<S: Scalar> GramForm<S> {
    pub fn pair(&self, x: &[S], y: &[S]) -> Result<S, FrobeniusError> {
        let gy = self.matrix.mul_vec(y)?;
        Ok(crate::linalg::dot(x, &gy, self.matrix.zero_elem())?)
    }
}

fn tri(i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    j * (j + 1) / 2 + i
}

/// Reduced echelon rows grown one equation at a time.
struct Echelon<S> {
    width: usize,
    rows: Vec<(usize, Vec<S>)>,
}

enum Added {
    Pivot,
    Redundant,
    Inconsistent,
}

impl<S: Scalar> Echelon<S> {
    fn add(&mut self, mut eq: Vec<S>) -> Added {
        for (p, r) in &self.rows {
            if !eq[*p].is_zero() {
                let c = eq[*p].clone();
                for (e, x) in eq.iter_mut().zip(r) {
                    if !x.is_zero() {
                        *e = e.sub(&c.mul(x));
                    }
                }
            }
        }
        let piv = (0..self.width)
            .filter(|&k| !eq[k].is_zero())
            .min_by_key(|&k| eq[k].weight());
        let Some(piv) = piv else {
            return if eq[self.width].is_zero() {
                Added::Redundant
            } else {
                Added::Inconsistent
            };
        };
        let inv = eq[piv].inv().expect("nonzero pivot");
        for e in eq.iter_mut() {
            if !e.is_zero() {
                *e = e.mul(&inv);
            }
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[piv].is_zero() {
                let c = r[piv].clone();
                for (x, e) in r.iter_mut().zip(&eq) {
                    if !e.is_zero() {
                        *x = x.sub(&c.mul(e));
                    }
                }
            }
        }
        self.rows.push((piv, eq));
        Added::Pivot
    }
}

/// Finds the unique symmetric form with `(xy, z) = (x, yz)` on all basis
/// triples and `(a, a) = 1` for each axis.
pub fn solve_frobenius<S: Scalar>(alg: &Algebra<S>, axes: &[Vec<S>]) -> Result<GramForm<S>, FrobeniusError> {
    let n = alg.dim();
    let zero = alg.zero_elem().clone();
    let one = zero.one_like();
    for (k, a) in axes.iter().enumerate() {
        if !alg.is_idempotent(a)? || alg.eigenspace(a, &one)?.dim() != 1 {
            return Err(FrobeniusError::NotPrimitive(k));
        }
    }
    let m = n * (n + 1) / 2;
    let mut ech = Echelon {
        width: m,
        rows: Vec::new(),
    };
    let mut first_bad = None;
    for a in axes {
        let mut eq = vec![zero.clone(); m + 1];
        for p in 0..n {
            for q in 0..n {
                if !a[p].is_zero() && !a[q].is_zero() {
                    let t = tri(p, q);
                    eq[t] = eq[t].add(&a[p].mul(&a[q]));
                }
            }
        }
        eq[m] = one.clone();
        if let Added::Inconsistent = ech.add(eq) {
            return Err(FrobeniusError::NoSolution(0, 0, 0));
        }
    }
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if ech.rows.len() == m {
                    break 'outer;
                }
                // (e_i e_j, e_k) - (e_i, e_j e_k)
                let mut eq = vec![zero.clone(); m + 1];
                for (r, c) in alg.product_terms(i, j) {
                    let t = tri(*r, k);
                    eq[t] = eq[t].add(c);
                }
                for (r, c) in alg.product_terms(j, k) {
                    let t = tri(i, *r);
                    eq[t] = eq[t].sub(c);
                }
                if let Added::Inconsistent = ech.add(eq) {
                    first_bad.get_or_insert((i, j, k));
                }
            }
        }
    }
    if let Some((i, j, k)) = first_bad {
        return Err(FrobeniusError::NoSolution(i, j, k));
    }
    if ech.rows.len() < m {
        return Err(FrobeniusError::NonUnique(m - ech.rows.len()));
    }
    let mut g = Matrix::zeros(n, n, &zero);
    for (p, r) in &ech.rows {
        let (i, j) = untri(*p);
        g.set(i, j, r[m].clone());
        g.set(j, i, r[m].clone());
    }
    if let Some((i, j, k)) = association_failures(alg, &g)?.first() {
        return Err(FrobeniusError::NoSolution(*i, *j, *k));
    }
    Ok(GramForm {
        matrix: g,
        axes: axes.to_vec(),
    })
}

fn untri(t: usize) -> (usize, usize) {
    let mut j = 0;
    while (j + 1) * (j + 2) / 2 <= t {
        j += 1;
    }
    (t - j * (j + 1) / 2, j)
}

/// Basis triples `(i, j, k)` with `(e_i e_j, e_k) != (e_i, e_j e_k)`.
pub fn association_failures<S: Scalar>(
    alg: &Algebra<S>,
    g: &Matrix<S>,
) -> Result<Vec<(usize, usize, usize)>, FrobeniusError> {
    let n = alg.dim();
    let zero = alg.zero_elem();
    let check = |t: usize| -> Result<Option<(usize, usize, usize)>, FrobeniusError> {
        let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
        let mut lhs = zero.clone();
        for (r, c) in alg.product_terms(i, j) {
            lhs = lhs.checked_add(&c.checked_mul(g.get(*r, k))?)?;
        }
        let mut rhs = zero.clone();
        for (r, c) in alg.product_terms(j, k) {
            rhs = rhs.checked_add(&c.checked_mul(g.get(i, *r))?)?;
        }
        Ok((lhs != rhs).then_some((i, j, k)))
    };
    crate::par_map(n * n * n, check)
        .into_iter()
        .filter_map(Result::transpose)
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum IdentityVerdict<S> {
    Identity(Vec<S>),
    Annihilator(Vec<S>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCertificate<S> {
    pub e: Vec<S>,
    pub lambda: S,
    pub verdict: IdentityVerdict<S>,
}

/// `e = (beta-1)a + (gamma-1)b + (alpha-1)c + 2(ab + bc + ac - a(bc) - b(ac) - c(ab))`.
pub fn identity_candidate<S: Scalar>(p: &UniversalParams<S>) -> Vec<S> {
    let z = p.zero();
    let one = z.one_like();
    let two = z.from_int_like(2);
    let mut e = vec![z.clone(); DIM];
    e[A] = p.beta.sub(&one);
    e[B] = p.gamma.sub(&one);
    e[C] = p.alpha.sub(&one);
    for k in [AB, BC, AC] {
        e[k] = two.clone();
    }
    for k in [A_BC, B_AC, C_AB] {
        e[k] = two.neg();
    }
    e
}

pub fn identity_element<S: Scalar>(
    alg: &Algebra<S>,
    p: &UniversalParams<S>,
) -> Result<IdentityCertificate<S>, FrobeniusError> {
    let e = identity_candidate(p);
    let lambda = p.lambda();
    for k in 0..alg.dim() {
        let x = alg.basis_vector(k);
        if alg.multiply(&e, &x)? != scale_vec(&lambda, &x) {
            return Err(FrobeniusError::VerificationFailed(k));
        }
    }
    let verdict = if lambda.is_zero() {
        IdentityVerdict::Annihilator(e.clone())
    } else {
        IdentityVerdict::Identity(scale_vec(&lambda.inv()?, &e))
    };
    Ok(IdentityCertificate { e, lambda, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl ProjectionGraph {
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(x, y) in &self.edges {
                for (s, t) in [(x, y), (y, x)] {
                    if s == v && !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Graph on the form's axes with an edge wherever the pairing is nonzero.
pub fn projection_graph<S: Scalar>(g: &GramForm<S>, names: &[&str]) -> Result<ProjectionGraph, FrobeniusError> {
    let n = g.axes.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = g.pair(&g.axes[i], &g.axes[j])?;
            if v.is_symbolic() {
                return Err(FieldError::SymbolicScalar.into());
            }
            if !v.is_zero() {
                edges.push((i, j));
            }
        }
    }
    let vertices = (0..n)
        .map(|i| names.get(i).map_or_else(|| alloc::format!("x{i}"), |s| String::from(*s)))
        .collect();
    Ok(ProjectionGraph { vertices, edges })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Simplicity<S> {
    Simple,
    NotSimple(Subspace<S>),
    /// The projection graph is disconnected, so the radical criterion does not apply.
    Inconclusive,
}

pub fn simplicity<S: Scalar>(g: &GramForm<S>, graph: &ProjectionGraph) -> Simplicity<S> {
    if !graph.is_connected() {
        return Simplicity::Inconclusive;
    }
    let r = g.matrix.kernel();
    if r.is_zero() {
        Simplicity::Simple
    } else {
        Simplicity::NotSimple(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RatFunc;
    use crate::universal::{build_symbolic, build_universal};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn axes<S: Scalar>(alg: &Algebra<S>) -> Vec<Vec<S>> {
        (0..3).map(|k| alg.basis_vector(k)).collect()
    }

    #[test]
    fn closed_form_entries() {
        let g = gram_polys();
        assert_eq!(g[A][B], "alpha".parse().unwrap());
        assert_eq!(g[AB][AB], "1/2*alpha^2 + 1/2*alpha".parse().unwrap());
        assert_eq!(g[B_AC][A], "1/2*alpha*gamma + 1/2*psi".parse().unwrap());
        let z = gram_closed_form(&UniversalParams::from_ints(0, 0, 0, 0)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(z.get(i, j).is_one(), i == j);
                assert_eq!(z.get(i, j).is_zero(), i != j);
            }
        }
        let o = gram_closed_form(&UniversalParams::from_ints(1, 1, 1, 1)).unwrap();
        assert_eq!(o.get(AB, C_AB), &q(1, 1));
    }

    #[test]
    fn solved_form_matches_closed_form_at_points() {
        for (a, b, c, p) in [(1, 1, 1, 1), (2, 2, 2, 3), (0, 0, 0, 0), (3, -1, 2, 5), (1, 0, 0, 0)] {
            let params = UniversalParams::from_ints(a, b, c, p);
            let alg = build_universal(&params).unwrap();
            let g = solve_frobenius(&alg, &axes(&alg)).unwrap();
            assert_eq!(g.matrix, gram_closed_form(&params).unwrap(), "{params:?}");
        }
    }

    #[test]
    fn determinant_at_points() {
        let p = UniversalParams::from_ints(2, 2, 2, 3);
        assert_eq!(gram_det(&p).unwrap(), q(-1, 1024));
        assert_eq!(gram_det_formula(&p), q(-1, 1024));
        assert!(gram_det(&UniversalParams::from_ints(0, 0, 0, 0)).unwrap().is_zero());
        let p = UniversalParams::new(q(1, 3), q(-2, 5), q(7, 2), q(3, 4));
        assert_eq!(gram_det(&p).unwrap(), gram_det_formula(&p));
    }

    #[test]
    fn solver_rejects_non_primitive_axes() {
        let params = UniversalParams::from_ints(1, 1, 1, 0);
        let alg = build_universal(&params).unwrap();
        let cert = identity_element(&alg, &params).unwrap();
        let IdentityVerdict::Identity(unit) = cert.verdict else {
            panic!("lambda is 2")
        };
        assert!(matches!(
            solve_frobenius(&alg, &[unit]),
            Err(FrobeniusError::NotPrimitive(0))
        ));
    }

    #[test]
    fn identity_cases() {
        let p = UniversalParams::from_ints(1, 1, 1, 1);
        let alg = build_universal(&p).unwrap();
        let c = identity_element(&alg, &p).unwrap();
        assert!(c.lambda.is_zero());
        assert!(matches!(c.verdict, IdentityVerdict::Annihilator(_)));
        let p = UniversalParams::from_ints(1, 1, 1, 0);
        let alg = build_universal(&p).unwrap();
        let c = identity_element(&alg, &p).unwrap();
        assert_eq!(c.lambda, q(2, 1));
        let IdentityVerdict::Identity(u) = c.verdict else { panic!() };
        for k in 0..9 {
            let x = alg.basis_vector(k);
            assert_eq!(alg.multiply(&u, &x).unwrap(), x);
        }
    }

    #[test]
    fn identity_symbolic() {
        let p = UniversalParams::<RatFunc>::symbolic();
        let c = identity_element(&build_symbolic(), &p).unwrap();
        assert_eq!(c.lambda.to_string(), "alpha + beta + gamma - 2*psi - 1");
    }

    #[test]
    fn projection_graphs() {
        let names = ["a", "b", "c"];
        let graph = |a, b, c, p| {
            let params = UniversalParams::from_ints(a, b, c, p);
            let alg = build_universal(&params).unwrap();
            let g = GramForm {
                matrix: gram_closed_form(&params).unwrap(),
                axes: axes(&alg),
            };
            (projection_graph(&g, &names).unwrap(), g)
        };
        let (t, g) = graph(1, 1, 1, 0);
        assert_eq!(t.edges.len(), 3);
        assert!(t.is_connected());
        assert_eq!(simplicity(&g, &t), Simplicity::Simple);
        let (t, _) = graph(0, 0, 0, 0);
        assert!(t.edges.is_empty());
        assert!(!t.is_connected());
        let (t, g) = graph(1, 0, 0, 0);
        assert_eq!(t.edges, vec![(0, 1)]);
        assert_eq!(simplicity(&g, &t), Simplicity::Inconclusive);
        let (t, g) = graph(1, 1, 1, 1);
        match simplicity(&g, &t) {
            Simplicity::NotSimple(r) => assert_eq!(r.dim(), 8),
            other => panic!("{other:?}"),
        }
        let (t, g) = graph(2, 2, 2, 3);
        assert_eq!(simplicity(&g, &t), Simplicity::Simple);
    }

    #[test]
    fn symbolic_pairing_is_rejected() {
        let alg = build_symbolic();
        let g = GramForm {
            matrix: gram_closed_form(&UniversalParams::symbolic()).unwrap(),
            axes: axes(&alg),
        };
        assert!(projection_graph(&g, &[]).is_err());
    }
}
