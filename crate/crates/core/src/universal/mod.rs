//! The universal algebra `A(alpha, beta, gamma, psi)` of Jordan type one half,
//! the generator symmetries, and the derivation engine for general `eta`.
//!
//! Basis order is fixed everywhere as
//! `[a, b, c, ab, bc, ac, a(bc), b(ac), c(ab)]`; the products `(ab)c`,
//! `(ac)b`, `(bc)a` coincide with `c(ab)`, `b(ac)`, `a(bc)` by commutativity.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::{Algebra, AlgebraError, Terms};
use crate::field::{FieldError, MultiPoly, RatFunc, Rational, Scalar, Var, NVARS};

mod derive;
mod theorem1;

pub use derive::{
    axis_products, derive_table, eta_relations, pair_products, phi, triple_products, DeriveError,
    DerivedTable, EtaMode, EtaRelations, Inconsistency,
};
pub use theorem1::{peirce_products, theorem1_vectors, verify_theorem1, PeirceProducts, Theorem1Report, Theorem1Vectors};

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const AB: usize = 3;
pub const BC: usize = 4;
pub const AC: usize = 5;
pub const A_BC: usize = 6;
pub const B_AC: usize = 7;
pub const C_AB: usize = 8;

pub const DIM: usize = 9;

pub const LABELS: [&str; DIM] = ["a", "b", "c", "ab", "bc", "ac", "a(bc)", "b(ac)", "c(ab)"];

pub fn labels() -> Vec<String> {
    LABELS.iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniversalParams<S> {
    pub alpha: S,
    pub beta: S,
    pub gamma: S,
    pub psi: S,
}

impl<S: Scalar> UniversalParams<S> {
    pub fn new(alpha: S, beta: S, gamma: S, psi: S) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            psi,
        }
    }

    /// Values for `[alpha, beta, gamma, psi, eta]`.
    pub fn point(&self, eta: S) -> [S; NVARS] {
        [
            self.alpha.clone(),
            self.beta.clone(),
            self.gamma.clone(),
            self.psi.clone(),
            eta,
        ]
    }

    pub fn half_point(&self) -> [S; NVARS] {
        let half = self.alpha.from_int_like(2).inv().expect("characteristic is odd");
        self.point(half)
    }

    pub fn zero(&self) -> S {
        self.alpha.zero_like()
    }

    /// `alpha + beta + gamma - 2 psi - 1`, the eigenvalue of the identity candidate.
    pub fn lambda(&self) -> S {
        self.alpha
            .add(&self.beta)
            .add(&self.gamma)
            .sub(&self.psi.add(&self.psi))
            .sub(&self.alpha.one_like())
    }

    /// `alpha beta gamma - psi^2`.
    pub fn delta(&self) -> S {
        self.alpha
            .mul(&self.beta)
            .mul(&self.gamma)
            .sub(&self.psi.mul(&self.psi))
    }

    pub fn map<T: Scalar, E>(&self, f: impl Fn(&S) -> Result<T, E>) -> Result<UniversalParams<T>, E> {
        Ok(UniversalParams {
            alpha: f(&self.alpha)?,
            beta: f(&self.beta)?,
            gamma: f(&self.gamma)?,
            psi: f(&self.psi)?,
        })
    }
}

impl UniversalParams<RatFunc> {
    pub fn symbolic() -> Self {
        Self::new(
            RatFunc::var(Var::Alpha),
            RatFunc::var(Var::Beta),
            RatFunc::var(Var::Gamma),
            RatFunc::var(Var::Psi),
        )
    }
}

impl UniversalParams<Rational> {
    pub fn from_ints(alpha: i64, beta: i64, gamma: i64, psi: i64) -> Self {
        Self::new(
            Rational::from_int(alpha),
            Rational::from_int(beta),
            Rational::from_int(gamma),
            Rational::from_int(psi),
        )
    }
}

type Entry = (usize, usize, i64, &'static [(usize, &'static str)]);

/// Products for eta = 1/2 as `(i, j, d, terms)` meaning `e_i e_j = (1/d) sum`.
const TABLE: &[Entry] = &[
    (A, A, 1, &[(A, "1")]),
    (B, B, 1, &[(B, "1")]),
    (C, C, 1, &[(C, "1")]),
    (A, B, 1, &[(AB, "1")]),
    (A, C, 1, &[(AC, "1")]),
    (B, C, 1, &[(BC, "1")]),
    (A, BC, 1, &[(A_BC, "1")]),
    (B, AC, 1, &[(B_AC, "1")]),
    (C, AB, 1, &[(C_AB, "1")]),
    (A, AB, 2, &[(A, "alpha"), (AB, "1")]),
    (A, AC, 2, &[(A, "gamma"), (AC, "1")]),
    (B, AB, 2, &[(B, "alpha"), (AB, "1")]),
    (B, BC, 2, &[(B, "beta"), (BC, "1")]),
    (C, AC, 2, &[(C, "gamma"), (AC, "1")]),
    (C, BC, 2, &[(C, "beta"), (BC, "1")]),
    (A, A_BC, 2, &[(A, "psi"), (A_BC, "1")]),
    (B, B_AC, 2, &[(B, "psi"), (B_AC, "1")]),
    (C, C_AB, 2, &[(C, "psi"), (C_AB, "1")]),
    (A, B_AC, 4, &[(A, "psi"), (AB, "gamma"), (AC, "alpha"), (A_BC, "1"), (B_AC, "1"), (C_AB, "-1")]),
    (A, C_AB, 4, &[(A, "psi"), (AB, "gamma"), (AC, "alpha"), (A_BC, "1"), (B_AC, "-1"), (C_AB, "1")]),
    (B, A_BC, 4, &[(B, "psi"), (AB, "beta"), (BC, "alpha"), (A_BC, "1"), (B_AC, "1"), (C_AB, "-1")]),
    (B, C_AB, 4, &[(B, "psi"), (AB, "beta"), (BC, "alpha"), (A_BC, "-1"), (B_AC, "1"), (C_AB, "1")]),
    (C, A_BC, 4, &[(C, "psi"), (BC, "gamma"), (AC, "beta"), (A_BC, "1"), (B_AC, "-1"), (C_AB, "1")]),
    (C, B_AC, 4, &[(C, "psi"), (BC, "gamma"), (AC, "beta"), (A_BC, "-1"), (B_AC, "1"), (C_AB, "1")]),
    (AB, AB, 4, &[(A, "alpha"), (B, "alpha"), (AB, "2*alpha")]),
    (BC, BC, 4, &[(B, "beta"), (C, "beta"), (BC, "2*beta")]),
    (AC, AC, 4, &[(A, "gamma"), (C, "gamma"), (AC, "2*gamma")]),
    (AB, BC, 4, &[(B, "psi"), (AB, "beta"), (BC, "alpha"), (A_BC, "1"), (B_AC, "-1"), (C_AB, "1")]),
    (BC, AC, 4, &[(C, "psi"), (BC, "gamma"), (AC, "beta"), (A_BC, "1"), (B_AC, "1"), (C_AB, "-1")]),
    (AB, AC, 4, &[(A, "psi"), (AB, "gamma"), (AC, "alpha"), (A_BC, "-1"), (B_AC, "1"), (C_AB, "1")]),
    (AB, A_BC, 8, &[(A, "alpha*beta + psi"), (B, "psi"), (AB, "2*psi"), (BC, "alpha"), (A_BC, "2*alpha")]),
    (AB, B_AC, 8, &[(A, "psi"), (B, "alpha*gamma + psi"), (AB, "2*psi"), (AC, "alpha"), (B_AC, "2*alpha")]),
    (BC, B_AC, 8, &[(B, "beta*gamma + psi"), (C, "psi"), (BC, "2*psi"), (AC, "beta"), (B_AC, "2*beta")]),
    (BC, C_AB, 8, &[(B, "psi"), (C, "alpha*beta + psi"), (AB, "beta"), (BC, "2*psi"), (C_AB, "2*beta")]),
    (AC, A_BC, 8, &[(A, "beta*gamma + psi"), (C, "psi"), (BC, "gamma"), (AC, "2*psi"), (A_BC, "2*gamma")]),
    (AC, C_AB, 8, &[(A, "psi"), (C, "alpha*gamma + psi"), (AB, "gamma"), (AC, "2*psi"), (C_AB, "2*gamma")]),
    (
        AB,
        C_AB,
        8,
        &[
            (A, "alpha*beta"),
            (B, "alpha*gamma"),
            (AB, "4*psi"),
            (BC, "alpha"),
            (AC, "alpha"),
            (A_BC, "-2*alpha"),
            (B_AC, "-2*alpha"),
            (C_AB, "4*alpha"),
        ],
    ),
    (
        BC,
        A_BC,
        8,
        &[
            (B, "beta*gamma"),
            (C, "alpha*beta"),
            (AB, "beta"),
            (BC, "4*psi"),
            (AC, "beta"),
            (A_BC, "4*beta"),
            (B_AC, "-2*beta"),
            (C_AB, "-2*beta"),
        ],
    ),
    (
        AC,
        B_AC,
        8,
        &[
            (A, "beta*gamma"),
            (C, "alpha*gamma"),
            (AB, "gamma"),
            (BC, "gamma"),
            (AC, "4*psi"),
            (A_BC, "-2*gamma"),
            (B_AC, "4*gamma"),
            (C_AB, "-2*gamma"),
        ],
    ),
    (
        A_BC,
        A_BC,
        16,
        &[
            (A, "alpha*beta + beta*gamma + 2*beta*psi"),
            (B, "beta*gamma"),
            (C, "alpha*beta"),
            (BC, "4*psi"),
            (A_BC, "2*beta + 8*psi"),
            (B_AC, "-2*beta"),
            (C_AB, "-2*beta"),
        ],
    ),
    (
        B_AC,
        B_AC,
        16,
        &[
            (A, "beta*gamma"),
            (B, "alpha*gamma + beta*gamma + 2*gamma*psi"),
            (C, "alpha*gamma"),
            (AC, "4*psi"),
            (A_BC, "-2*gamma"),
            (B_AC, "2*gamma + 8*psi"),
            (C_AB, "-2*gamma"),
        ],
    ),
    (
        C_AB,
        C_AB,
        16,
        &[
            (A, "alpha*beta"),
            (B, "alpha*gamma"),
            (C, "alpha*beta + alpha*gamma + 2*alpha*psi"),
            (AB, "4*psi"),
            (A_BC, "-2*alpha"),
            (B_AC, "-2*alpha"),
            (C_AB, "2*alpha + 8*psi"),
        ],
    ),
    (
        A_BC,
        B_AC,
        16,
        &[
            (A, "beta*gamma + beta*psi"),
            (B, "beta*gamma + gamma*psi"),
            (C, "alpha*psi"),
            (AB, "2*psi"),
            (BC, "2*alpha*gamma + 2*psi"),
            (AC, "2*alpha*beta + 2*psi"),
            (A_BC, "4*psi - alpha + beta - gamma"),
            (B_AC, "4*psi - alpha - beta + gamma"),
            (C_AB, "alpha - beta - gamma - 4*psi"),
        ],
    ),
    (
        B_AC,
        C_AB,
        16,
        &[
            (A, "beta*psi"),
            (B, "alpha*gamma + gamma*psi"),
            (C, "alpha*gamma + alpha*psi"),
            (AB, "2*beta*gamma + 2*psi"),
            (BC, "2*psi"),
            (AC, "2*alpha*beta + 2*psi"),
            (A_BC, "beta - alpha - gamma - 4*psi"),
            (B_AC, "4*psi - alpha - beta + gamma"),
            (C_AB, "4*psi + alpha - beta - gamma"),
        ],
    ),
    (
        A_BC,
        C_AB,
        16,
        &[
            (A, "alpha*beta + beta*psi"),
            (B, "gamma*psi"),
            (C, "alpha*beta + alpha*psi"),
            (AB, "2*beta*gamma + 2*psi"),
            (BC, "2*alpha*gamma + 2*psi"),
            (AC, "2*psi"),
            (A_BC, "4*psi - alpha + beta - gamma"),
            (B_AC, "gamma - alpha - beta - 4*psi"),
            (C_AB, "4*psi + alpha - beta - gamma"),
        ],
    ),
];

/// The 45 structure constants with polynomial coefficients in
/// `alpha, beta, gamma, psi`, as `(i, j, terms)` with `i <= j`.
pub fn structure_polys() -> Vec<(usize, usize, Vec<(usize, MultiPoly)>)> {
    TABLE
        .iter()
        .map(|&(i, j, d, terms)| {
            let s = Rational::new(1, d).expect("nonzero");
            let t = terms
                .iter()
                .map(|&(k, p)| (k, p.parse::<MultiPoly>().expect("table entry parses").scale(&s)))
                .collect();
            (i.min(j), i.max(j), t)
        })
        .collect()
}

/// Dense coordinate vector of `e_i e_j` over polynomials.
pub fn structure_vector(i: usize, j: usize) -> Vec<MultiPoly> {
    let (i, j) = (i.min(j), i.max(j));
    let mut v = alloc::vec![MultiPoly::zero(); DIM];
    for (p, q, t) in structure_polys() {
        if (p, q) == (i, j) {
            for (k, c) in t {
                v[k] = c;
            }
        }
    }
    v
}

pub fn build_universal<S: Scalar>(p: &UniversalParams<S>) -> Result<Algebra<S>, AlgebraError> {
    let point = p.half_point();
    let zero = p.zero();
    let entries = structure_polys()
        .into_iter()
        .map(|(i, j, t)| {
            let terms = t
                .iter()
                .map(|(k, c)| Ok((*k, c.eval(&point)?)))
                .collect::<Result<Terms<S>, FieldError>>()?;
            Ok((i, j, terms))
        })
        .collect::<Result<Vec<_>, FieldError>>()?;
    Algebra::from_constants(labels(), &zero, entries)
}

/// `A(alpha, beta, gamma, psi)` over the rational function field.
pub fn build_symbolic() -> Algebra<RatFunc> {
    build_universal(&UniversalParams::symbolic()).expect("symbolic table is well formed")
}

/// A permutation of the generators `a, b, c`, sending generator `k` to `p[k]`.
///
/// It induces the relabeling of all nine basis elements and of the
/// parameters, under which the product table is invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenPerm(pub [usize; 3]);

impl GenPerm {
    pub const IDENTITY: GenPerm = GenPerm([0, 1, 2]);
    /// `a -> b -> c -> a`.
    pub const CYCLE: GenPerm = GenPerm([1, 2, 0]);
    pub const SWAP_AB: GenPerm = GenPerm([1, 0, 2]);
    pub const SWAP_BC: GenPerm = GenPerm([0, 2, 1]);

    pub fn all() -> [GenPerm; 6] {
        [
            GenPerm([0, 1, 2]),
            GenPerm([0, 2, 1]),
            GenPerm([1, 0, 2]),
            GenPerm([1, 2, 0]),
            GenPerm([2, 0, 1]),
            GenPerm([2, 1, 0]),
        ]
    }

    pub fn compose(self, then: GenPerm) -> GenPerm {
        GenPerm([then.0[self.0[0]], then.0[self.0[1]], then.0[self.0[2]]])
    }

    pub fn inverse(self) -> GenPerm {
        let mut inv = [0; 3];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v] = k;
        }
        GenPerm(inv)
    }

    fn pair(&self, pair: usize) -> usize {
        let (x, y) = match pair {
            AB => (0, 1),
            BC => (1, 2),
            _ => (0, 2),
        };
        pair_index(self.0[x], self.0[y])
    }

    /// Image of each basis index.
    pub fn basis_map(&self) -> [usize; DIM] {
        let p = self.0;
        [
            p[0],
            p[1],
            p[2],
            self.pair(AB),
            self.pair(BC),
            self.pair(AC),
            A_BC + p[0],
            A_BC + p[1],
            A_BC + p[2],
        ]
    }

    /// Image of each parameter slot, for `MultiPoly::permute_vars`.
    pub fn var_map(&self) -> [usize; NVARS] {
        let m = self.basis_map();
        [m[AB] - AB, m[BC] - AB, m[AC] - AB, 3, 4]
    }

    /// Parameters of the relabeled algebra.
    pub fn apply_params<S: Clone>(&self, p: &UniversalParams<S>) -> UniversalParams<S> {
        let old = [&p.alpha, &p.beta, &p.gamma];
        let vm = self.var_map();
        let mut new = [p.alpha.clone(), p.beta.clone(), p.gamma.clone()];
        for i in 0..3 {
            new[vm[i]] = old[i].clone();
        }
        let [alpha, beta, gamma] = new;
        UniversalParams {
            alpha,
            beta,
            gamma,
            psi: p.psi.clone(),
        }
    }

    /// Moves coordinates only.
    pub fn permute_coords<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let m = self.basis_map();
        let mut out = v.to_vec();
        for k in 0..DIM {
            out[m[k]] = v[k].clone();
        }
        out
    }

    /// Moves coordinates and renames the parameters in each coefficient.
    pub fn apply_poly_vec(&self, v: &[MultiPoly]) -> Vec<MultiPoly> {
        let vm = self.var_map();
        let moved: Vec<MultiPoly> = v.iter().map(|c| c.permute_vars(&vm)).collect();
        self.permute_coords(&moved)
    }
}

fn pair_index(x: usize, y: usize) -> usize {
    match (x.min(y), x.max(y)) {
        (0, 1) => AB,
        (1, 2) => BC,
        _ => AC,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn table_has_every_cell_once() {
        let polys = structure_polys();
        assert_eq!(polys.len(), 45);
        let mut seen = alloc::vec![false; 81];
        for (i, j, _) in &polys {
            assert!(!seen[i * 9 + j]);
            seen[i * 9 + j] = true;
        }
    }

    #[test]
    fn sample_entries() {
        let v = structure_vector(A, B_AC);
        assert_eq!(v[A], p("1/4*psi"));
        assert_eq!(v[AB], p("1/4*gamma"));
        assert_eq!(v[C_AB], p("-1/4"));
        let sq = structure_vector(A_BC, A_BC);
        assert_eq!(sq[A], p("1/16*alpha*beta + 1/16*beta*gamma + 1/8*beta*psi"));
        assert_eq!(sq[A_BC], p("1/8*beta + 1/2*psi"));
    }

    #[test]
    fn cycle_maps_basis_and_parameters() {
        let s = GenPerm::CYCLE;
        assert_eq!(s.basis_map(), [1, 2, 0, 4, 5, 3, 7, 8, 6]);
        assert_eq!(s.var_map(), [1, 2, 0, 3, 4]);
        let t = GenPerm::SWAP_AB;
        assert_eq!(t.basis_map(), [1, 0, 2, 3, 5, 4, 7, 6, 8]);
        assert_eq!(t.var_map(), [0, 2, 1, 3, 4]);
        assert_eq!(s.compose(s).compose(s), GenPerm::IDENTITY);
        for g in GenPerm::all() {
            assert_eq!(g.compose(g.inverse()), GenPerm::IDENTITY);
        }
    }

    #[test]
    fn table_is_invariant_under_generator_permutations() {
        for g in GenPerm::all() {
            let m = g.basis_map();
            for (i, j, _) in structure_polys() {
                let image = g.apply_poly_vec(&structure_vector(i, j));
                assert_eq!(image, structure_vector(m[i], m[j]), "{g:?} on ({i},{j})");
            }
        }
    }

    #[test]
    fn relabeled_parameters() {
        let q = UniversalParams::from_ints(1, 2, 3, 4);
        let r = GenPerm::CYCLE.apply_params(&q);
        assert_eq!(r, UniversalParams::from_ints(3, 1, 2, 4));
    }

    #[test]
    fn concrete_build_matches_symbolic_evaluation() {
        let q = UniversalParams::from_ints(2, -1, 3, 5);
        let alg = build_universal(&q).unwrap();
        let sym = build_symbolic();
        let pt = q.point(Rational::new(1, 2).unwrap());
        for (i, j, t) in sym.constants() {
            let mut v = alg.zero_vector();
            for (k, c) in t {
                v[*k] = c.eval(&pt).unwrap();
            }
            assert_eq!(v, alg.product_vector(i, j));
        }
    }
}
