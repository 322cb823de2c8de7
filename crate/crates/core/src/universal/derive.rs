//! Straight-line derivation of the product table for an arbitrary `eta`.
//!
//! Every step is a Seress reduction `a(xy) = (ax)y` with `y` in
//! `A_0(a) + A_1(a)`, or a projection identity for a generator. Cells
//! reached by two routes are compared and any disagreement is kept.

use alloc::vec;
use alloc::vec::Vec;

use super::{GenPerm, A, AB, AC, A_BC, B, BC, B_AC, C, C_AB, DIM};
use crate::algebra::{Algebra, AlgebraError};
use crate::field::{MultiPoly, RatFunc, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeriveError {
    #[error("product e{0}*e{1} is needed before it is derived")]
    Missing(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaMode {
    Half,
    Symbolic,
}

impl EtaMode {
    pub fn eta(self) -> MultiPoly {
        match self {
            EtaMode::Half => MultiPoly::constant(Rational::new(1, 2).expect("nonzero")),
            EtaMode::Symbolic => MultiPoly::var(Var::Eta),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EtaMode::Half => "1/2",
            EtaMode::Symbolic => "symbolic",
        }
    }
}

/// Two derivations of the same cell that disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Inconsistency {
    pub cell: (usize, usize),
    pub route: &'static str,
    pub kept: Vec<MultiPoly>,
    pub rejected: Vec<MultiPoly>,
    pub difference: Vec<MultiPoly>,
    /// Every coordinate of the difference is divisible by `2 eta - 1`.
    pub vanishes_at_half: bool,
    /// Every coordinate is divisible by one of the three eta relations.
    pub in_relation_ideal: bool,
}

type Vector = Vec<MultiPoly>;

#[derive(Clone, Debug)]
pub struct DerivedTable {
    mode: EtaMode,
    cells: Vec<Option<Vector>>,
    inconsistencies: Vec<Inconsistency>,
}

fn tri(i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    j * (j + 1) / 2 + i
}

impl DerivedTable {
    pub fn mode(&self) -> EtaMode {
        self.mode
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&[MultiPoly]> {
        self.cells[tri(i, j)].as_deref()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn inconsistencies(&self) -> &[Inconsistency] {
        &self.inconsistencies
    }

    /// Derived cells as `(i, j, coords)` with `i <= j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &[MultiPoly])> {
        (0..DIM).flat_map(move |j| {
            (0..=j).filter_map(move |i| self.entry(i, j).map(|v| (i, j, v)))
        })
    }

    /// Substitutes a value for eta in every cell.
    pub fn specialize_eta(&self, eta: &Rational) -> DerivedTable {
        let sub = |v: &Vector| v.iter().map(|c| c.substitute(Var::Eta, eta)).collect::<Vector>();
        DerivedTable {
            mode: self.mode,
            cells: self.cells.iter().map(|c| c.as_ref().map(sub)).collect(),
            inconsistencies: self.inconsistencies.clone(),
        }
    }

    /// Cells whose value differs from `expected(i, j)`.
    pub fn mismatches(&self, expected: impl Fn(usize, usize) -> Vector) -> Vec<(usize, usize)> {
        self.entries()
            .filter(|(i, j, v)| *v != expected(*i, *j).as_slice())
            .map(|(i, j, _)| (i, j))
            .collect()
    }

    /// The completed table as an algebra over the rational function field.
    pub fn to_algebra(&self) -> Result<Algebra<RatFunc>, AlgebraError> {
        let zero = RatFunc::zero();
        let mut alg = Algebra::new(super::labels(), &zero)?;
        for (i, j, v) in self.entries() {
            let terms = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, RatFunc::from_poly(c.clone())))
                .collect();
            alg.set_product(i, j, terms)?;
        }
        Ok(alg)
    }
}

fn unit(k: usize) -> Vector {
    let mut v = vec![MultiPoly::zero(); DIM];
    v[k] = MultiPoly::one();
    v
}

fn add(x: &[MultiPoly], y: &[MultiPoly]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
}

fn sub(x: &[MultiPoly], y: &[MultiPoly]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
}

fn scale(c: &MultiPoly, x: &[MultiPoly]) -> Vector {
    x.iter().map(|a| a.mul(c)).collect()
}

fn half(x: &[MultiPoly]) -> Vector {
    let h = Rational::new(1, 2).expect("nonzero");
    x.iter().map(|a| a.scale(&h)).collect()
}

/// `sum c_k e_k`.
fn lin(terms: &[(MultiPoly, usize)]) -> Vector {
    let mut v = vec![MultiPoly::zero(); DIM];
    for (c, k) in terms {
        v[*k] = v[*k].add(c);
    }
    v
}

fn var(v: Var) -> MultiPoly {
    MultiPoly::var(v)
}

fn one_minus(p: &MultiPoly) -> MultiPoly {
    MultiPoly::one().sub(p)
}

/// Values of the projection functional `phi_g` on the basis, where `g` is
/// generator `0`, `1` or `2`.
pub fn phi(generator: usize, eta: &MultiPoly) -> Vector {
    let (al, ga, ps) = (var(Var::Alpha), var(Var::Gamma), var(Var::Psi));
    let mixed = one_minus(eta).mul(&al).mul(&ga).add(&eta.mul(&ps));
    let phi_a = vec![
        MultiPoly::one(),
        al.clone(),
        ga.clone(),
        al,
        ps.clone(),
        ga,
        ps,
        mixed.clone(),
        mixed,
    ];
    let mut g = GenPerm::IDENTITY;
    for _ in 0..generator {
        g = g.compose(GenPerm::CYCLE);
    }
    g.apply_poly_vec(&phi_a)
}

fn dot(x: &[MultiPoly], y: &[MultiPoly]) -> MultiPoly {
    x.iter().zip(y).fold(MultiPoly::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
}

fn relation_polys() -> [MultiPoly; 3] {
    let (al, be, ga, et) = (var(Var::Alpha), var(Var::Beta), var(Var::Gamma), var(Var::Eta));
    let two = Rational::from_int(2);
    [
        al.mul(&ga.sub(&be)).mul(&et.sub(&al.scale(&two))),
        be.mul(&al.sub(&ga)).mul(&et.sub(&be.scale(&two))),
        ga.mul(&be.sub(&al)).mul(&et.sub(&ga.scale(&two))),
    ]
}

struct Engine {
    mode: EtaMode,
    eta: MultiPoly,
    cells: Vec<Option<Vector>>,
    issues: Vec<Inconsistency>,
}

impl Engine {
    fn new(mode: EtaMode) -> Self {
        Self {
            mode,
            eta: mode.eta(),
            cells: vec![None; DIM * (DIM + 1) / 2],
            issues: Vec::new(),
        }
    }

    fn get(&self, i: usize, j: usize) -> Result<&Vector, DeriveError> {
        self.cells[tri(i, j)].as_ref().ok_or(DeriveError::Missing(i, j))
    }

    fn mul(&self, x: &[MultiPoly], y: &[MultiPoly]) -> Result<Vector, DeriveError> {
        let mut out = vec![MultiPoly::zero(); DIM];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = xi.mul(yj);
                for (k, t) in self.get(i, j)?.iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = out[k].add(&c.mul(t));
                    }
                }
            }
        }
        Ok(out)
    }

    fn e(&self, i: usize, y: &[MultiPoly]) -> Result<Vector, DeriveError> {
        self.mul(&unit(i), y)
    }

    fn cell(&self, i: usize, j: usize) -> Result<Vector, DeriveError> {
        self.get(i, j).cloned()
    }

    fn put(&mut self, i: usize, j: usize, v: Vector, route: &'static str) {
        let idx = tri(i, j);
        match &self.cells[idx] {
            None => self.cells[idx] = Some(v),
            Some(old) if *old == v => {}
            Some(old) => {
                let difference = sub(old, &v);
                let issue = self.classify((i.min(j), i.max(j)), route, old.clone(), v, difference);
                self.issues.push(issue);
            }
        }
    }

    /// Stores `e_i e_j = v` and its images under the 3-cycle.
    fn put_orbit(&mut self, i: usize, j: usize, v: Vector, route: &'static str) {
        let s = GenPerm::CYCLE;
        let m = s.basis_map();
        let v1 = s.apply_poly_vec(&v);
        let v2 = s.apply_poly_vec(&v1);
        self.put(i, j, v, route);
        self.put(m[i], m[j], v1, route);
        self.put(m[m[i]], m[m[j]], v2, route);
    }

    fn classify(
        &self,
        cell: (usize, usize),
        route: &'static str,
        kept: Vector,
        rejected: Vector,
        difference: Vector,
    ) -> Inconsistency {
        let two_eta = var(Var::Eta).scale(&Rational::from_int(2)).sub(&MultiPoly::one());
        let rel = relation_polys();
        let nonzero: Vec<&MultiPoly> = difference.iter().filter(|c| !c.is_zero()).collect();
        let vanishes_at_half = self.mode == EtaMode::Symbolic
            && nonzero.iter().all(|c| c.exact_div(&two_eta).is_some());
        let in_relation_ideal = self.mode == EtaMode::Symbolic
            && nonzero
                .iter()
                .all(|c| rel.iter().any(|r| c.exact_div(r).is_some()));
        Inconsistency {
            cell,
            route,
            kept,
            rejected,
            difference,
            vanishes_at_half,
            in_relation_ideal,
        }
    }

    fn finish(self) -> DerivedTable {
        DerivedTable {
            mode: self.mode,
            cells: self.cells,
            inconsistencies: self.issues,
        }
    }

    /// `w = c(ab) + b(ac) - eta bc - eta gamma b - eta alpha c`, which lies in
    /// `A_0(a) + A_1(a)`.
    fn w_a(&self) -> Vector {
        let et = &self.eta;
        lin(&[
            (MultiPoly::one(), C_AB),
            (MultiPoly::one(), B_AC),
            (et.neg(), BC),
            (et.mul(&var(Var::Gamma)).neg(), B),
            (et.mul(&var(Var::Alpha)).neg(), C),
        ])
    }

    fn axis_stage(&mut self) -> Result<(), DeriveError> {
        let et = self.eta.clone();
        let (al, ga, ps) = (var(Var::Alpha), var(Var::Gamma), var(Var::Psi));
        let mut row: Vec<(usize, Vector)> = vec![
            (A, unit(A)),
            (B, unit(AB)),
            (C, unit(AC)),
            (BC, unit(A_BC)),
            (AB, lin(&[(one_minus(&et).mul(&al), A), (et.clone(), AB)])),
            (AC, lin(&[(one_minus(&et).mul(&ga), A), (et.clone(), AC)])),
            (A_BC, lin(&[(one_minus(&et).mul(&ps), A), (et.clone(), A_BC)])),
        ];
        for (k, v) in &row {
            self.put(A, *k, v.clone(), "axis a");
        }
        // a w = phi_a(w) a since w has no eta-component
        let w = self.w_a();
        let kappa = dot(&phi(0, &et), &w);
        let rest = sub(&w, &lin(&[(MultiPoly::one(), C_AB), (MultiPoly::one(), B_AC)]));
        let s = sub(&lin(&[(kappa, A)]), &self.e(A, &rest)?);
        // b(ac) - c(ab) is an eta-eigenvector
        let d = scale(&et, &sub(&unit(B_AC), &unit(C_AB)));
        row.push((B_AC, half(&add(&s, &d))));
        row.push((C_AB, half(&sub(&s, &d))));
        for (k, v) in row.into_iter() {
            self.put_orbit(A, k, v, "axis row image");
        }
        Ok(())
    }

    fn pair_stage(&mut self) -> Result<(), DeriveError> {
        let et = self.eta.clone();
        let ac = unit(AC);
        let (z, y, x) = (unit(A_BC), unit(B_AC), unit(C_AB));

        let b_ab = self.cell(B, AB)?;
        let inner = sub(&b_ab, &scale(&et, &unit(B)));
        let ab_ab = add(&self.e(A, &inner)?, &scale(&et, &b_ab));
        self.put_orbit(AB, AB, ab_ab, "(ab)(ab)");

        let ab_bc = add(&sub(&self.cell(B, A_BC)?, &scale(&et, &y)), &scale(&et, &x));
        self.put_orbit(AB, BC, ab_bc.clone(), "(ab)(bc)");

        let ab_ac = add(&sub(&self.cell(A, B_AC)?, &scale(&et, &z)), &scale(&et, &x));
        self.put(AB, AC, ab_ac.clone(), "(ab)(ac) via axis a");

        let t = self.e(A, &sub(&y, &scale(&et, &ac)))?;
        let ab_y = add(&self.e(B, &t)?, &scale(&et, &ab_ac));
        self.put_orbit(AB, B_AC, ab_y.clone(), "(ab)b(ac)");

        let bw = self.e(B, &self.w_a())?;
        let corr = add(
            &add(&ab_bc, &scale(&var(Var::Gamma), &self.cell(B, AB)?)),
            &scale(&var(Var::Alpha), &x),
        );
        let ab_x = add(&sub(&self.e(A, &bw)?, &ab_y), &scale(&et, &corr));
        self.put_orbit(AB, C_AB, ab_x, "(ab)c(ab)");

        let t = sub(&self.cell(B, A_BC)?, &scale(&et, &self.cell(B, BC)?));
        let ab_z = add(&self.e(A, &t)?, &scale(&et, &ab_bc));
        self.put_orbit(AB, A_BC, ab_z, "(ab)a(bc)");
        let swapped = GenPerm::SWAP_AB.apply_poly_vec(&ab_y);
        self.put(AB, A_BC, swapped, "(ab)a(bc) as the a<->b image of (ab)b(ac)");

        Ok(())
    }

    fn triple_stage(&mut self) -> Result<(), DeriveError> {
        let et = self.eta.clone();
        let (bc, z) = (unit(BC), unit(A_BC));

        let t = self.mul(&bc, &sub(&z, &scale(&et, &bc)))?;
        let zz = add(&self.e(A, &t)?, &scale(&et, &self.cell(BC, A_BC)?));
        self.put_orbit(A_BC, A_BC, zz, "(a(bc))^2");

        let w = self.w_a();
        let t = self.mul(&bc, &w)?;
        let shift = lin(&[
            (et.clone(), BC),
            (et.mul(&var(Var::Gamma)), B),
            (et.mul(&var(Var::Alpha)), C),
        ]);
        let s_a = add(&self.e(A, &t)?, &self.mul(&z, &shift)?);
        let s_b = GenPerm::CYCLE.apply_poly_vec(&s_a);
        let s_c = GenPerm::CYCLE.apply_poly_vec(&s_b);
        let zy = half(&sub(&add(&s_a, &s_b), &s_c));
        self.put_orbit(A_BC, B_AC, zy.clone(), "a(bc)b(ac)");
        self.put(A_BC, C_AB, sub(&s_a, &zy), "a(bc)c(ab) from z(x+y) - zy");
        Ok(())
    }
}

/// Products of each generator with the whole basis.
pub fn axis_products(mode: EtaMode) -> Result<DerivedTable, DeriveError> {
    let mut e = Engine::new(mode);
    e.axis_stage()?;
    Ok(e.finish())
}

/// Adds the products of `ab`, `bc`, `ac` with everything.
pub fn pair_products(mode: EtaMode) -> Result<DerivedTable, DeriveError> {
    let mut e = Engine::new(mode);
    e.axis_stage()?;
    e.pair_stage()?;
    Ok(e.finish())
}

/// The completed 45-cell table.
pub fn triple_products(mode: EtaMode) -> Result<DerivedTable, DeriveError> {
    let mut e = Engine::new(mode);
    e.axis_stage()?;
    e.pair_stage()?;
    e.triple_stage()?;
    Ok(e.finish())
}

pub fn derive_table(mode: EtaMode) -> Result<DerivedTable, DeriveError> {
    triple_products(mode)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EtaRelations {
    /// `(b, a(c(ab))) - (a, b(c(ab)))` and its two images under the 3-cycle.
    pub differences: [MultiPoly; 3],
    /// The expected closed forms `alpha(gamma - beta)(eta - 1/2)(eta - 2 alpha)` and images.
    pub expected: [MultiPoly; 3],
    /// `differences` with the factor `eta - 1/2` removed, when it divides.
    pub relations: [Option<MultiPoly>; 3],
}

impl EtaRelations {
    pub fn holds(&self) -> bool {
        self.differences == self.expected
    }
}

/// Evaluates the three pairing differences on the symbolic axis products.
pub fn eta_relations() -> Result<EtaRelations, DeriveError> {
    let table = axis_products(EtaMode::Symbolic)?;
    let eta = var(Var::Eta);
    let get = |i: usize, j: usize| table.entry(i, j).map(<[MultiPoly]>::to_vec).ok_or(DeriveError::Missing(i, j));
    // (g, h(t)) - (h, g(t)) for generators g, h and the triple t of the third
    let diff = |g: usize, h: usize, t: usize| -> Result<MultiPoly, DeriveError> {
        Ok(dot(&phi(g, &eta), &get(h, t)?).sub(&dot(&phi(h, &eta), &get(g, t)?)))
    };
    let differences = [diff(B, A, C_AB)?, diff(C, B, A_BC)?, diff(A, C, B_AC)?];
    let half = MultiPoly::constant(Rational::new(1, 2).expect("nonzero"));
    let eta_half = eta.sub(&half);
    let (al, be, ga) = (var(Var::Alpha), var(Var::Beta), var(Var::Gamma));
    let two = Rational::from_int(2);
    let expected = [
        al.mul(&ga.sub(&be)).mul(&eta_half).mul(&eta.sub(&al.scale(&two))),
        be.mul(&al.sub(&ga)).mul(&eta_half).mul(&eta.sub(&be.scale(&two))),
        ga.mul(&be.sub(&al)).mul(&eta_half).mul(&eta.sub(&ga.scale(&two))),
    ];
    let relations = [
        differences[0].exact_div(&eta_half),
        differences[1].exact_div(&eta_half),
        differences[2].exact_div(&eta_half),
    ];
    Ok(EtaRelations {
        differences,
        expected,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universal::structure_vector;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn axis_row_at_symbolic_eta() {
        let t = axis_products(EtaMode::Symbolic).unwrap();
        let v = t.entry(A, AB).unwrap();
        assert_eq!(v[A], p("alpha - alpha*eta"));
        assert_eq!(v[AB], p("eta"));
        let v = t.entry(A, A_BC).unwrap();
        assert_eq!(v[A], p("psi - psi*eta"));
        let v = t.entry(A, C_AB).unwrap();
        assert_eq!(v[A], p("alpha*gamma + 1/2*eta*psi - 2*eta*alpha*gamma"));
        assert_eq!(v[B_AC], p("-1/2*eta"));
        assert!(t.inconsistencies().is_empty());
        assert_eq!(t.len(), 24);
    }

    #[test]
    fn pair_products_at_half() {
        let t = pair_products(EtaMode::Half).unwrap();
        assert_eq!(t.entry(AB, AB).unwrap(), structure_vector(AB, AB).as_slice());
        assert_eq!(t.entry(AB, BC).unwrap(), structure_vector(AB, BC).as_slice());
        assert_eq!(t.entry(AB, B_AC).unwrap(), structure_vector(AB, B_AC).as_slice());
    }

    #[test]
    fn full_table_at_half_matches() {
        let t = derive_table(EtaMode::Half).unwrap();
        assert!(t.is_complete());
        assert!(t.inconsistencies().is_empty(), "{:?}", t.inconsistencies());
        assert!(t.mismatches(structure_vector).is_empty());
    }

    #[test]
    fn symbolic_table_specializes_to_half() {
        let t = derive_table(EtaMode::Symbolic).unwrap();
        let h = t.specialize_eta(&Rational::new(1, 2).unwrap());
        assert!(h.mismatches(structure_vector).is_empty());
        for issue in t.inconsistencies() {
            assert!(issue.vanishes_at_half, "{issue:?}");
        }
    }

    #[test]
    fn relations_match_closed_form() {
        let r = eta_relations().unwrap();
        assert!(r.holds(), "{:?}", r.differences);
        for rel in &r.relations {
            assert!(rel.is_some());
        }
        let swapped = r.differences[0].permute_vars(&[0, 2, 1, 3, 4]);
        assert_eq!(swapped, r.differences[0].neg());
    }

    #[test]
    fn phi_functionals() {
        let et = var(Var::Eta);
        let pb = phi(1, &et);
        assert_eq!(pb[A], p("alpha"));
        assert_eq!(pb[AC], p("psi"));
        assert_eq!(pb[A_BC], p("alpha*beta - alpha*beta*eta + eta*psi"));
        assert_eq!(pb[B_AC], p("psi"));
        let pc = phi(2, &et);
        assert_eq!(pc[AB], p("psi"));
        assert_eq!(pc[C_AB], p("psi"));
        assert_eq!(pc[B_AC], p("beta*gamma - beta*gamma*eta + eta*psi"));
    }
}
