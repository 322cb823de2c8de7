use alloc::vec;
use alloc::vec::Vec;

use super::FrobeniusError;
use crate::algebra::Algebra;
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};
use crate::universal::{GenPerm, UniversalParams, DIM};

/// The degenerate parameter families, each with a known radical basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Table5Row {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
}

impl Table5Row {
    pub const ALL: [Table5Row; 9] = [
        Table5Row::R1,
        Table5Row::R2,
        Table5Row::R3,
        Table5Row::R4,
        Table5Row::R5,
        Table5Row::R6,
        Table5Row::R7,
        Table5Row::R8,
        Table5Row::R9,
    ];

    pub fn condition(self) -> &'static str {
        match self {
            Table5Row::R1 => "αβγ=ψ², ψ≠0, α+β+γ≠2ψ+1",
            Table5Row::R2 => "αβγ=ψ², ψ≠0, α≠1, α+β+γ=2ψ+1",
            Table5Row::R3 => "ψ=α=β=γ=1",
            Table5Row::R4 => "ψ=α=β=γ=0",
            Table5Row::R5 => "ψ=α=β=0, γ≠0,1",
            Table5Row::R6 => "ψ=α=β=0, γ=1",
            Table5Row::R7 => "ψ=α=0, β,γ≠0, β+γ=1",
            Table5Row::R8 => "ψ=α=0, β,γ≠0, β+γ≠1",
            Table5Row::R9 => "ψ²≠αβγ, α+β+γ=2ψ+1, α≠1",
        }
    }

    /// Rank of the form listed for this family.
    pub fn printed_rank(self) -> usize {
        match self {
            Table5Row::R3 => 1,
            Table5Row::R6 => 2,
            Table5Row::R2 | Table5Row::R4 | Table5Row::R7 => 3,
            Table5Row::R5 | Table5Row::R9 => 4,
            Table5Row::R1 | Table5Row::R8 => 6,
        }
    }

    /// Whether `p` satisfies the condition literally, without relabeling.
    pub fn matches<S: Scalar>(self, p: &UniversalParams<S>) -> bool {
        let one = p.zero().one_like();
        let (al, be, ga, ps) = (&p.alpha, &p.beta, &p.gamma, &p.psi);
        let z = |x: &S| x.is_zero();
        let u = |x: &S| *x == one;
        let d = p.delta().is_zero();
        let l = p.lambda().is_zero();
        match self {
            Table5Row::R1 => d && !z(ps) && !l,
            Table5Row::R2 => d && !z(ps) && !u(al) && l,
            Table5Row::R3 => u(ps) && u(al) && u(be) && u(ga),
            Table5Row::R4 => z(ps) && z(al) && z(be) && z(ga),
            Table5Row::R5 => z(ps) && z(al) && z(be) && !z(ga) && !u(ga),
            Table5Row::R6 => z(ps) && z(al) && z(be) && u(ga),
            Table5Row::R7 => z(ps) && z(al) && !z(be) && !z(ga) && u(&be.add(ga)),
            Table5Row::R8 => z(ps) && z(al) && !z(be) && !z(ga) && !u(&be.add(ga)),
            Table5Row::R9 => !d && l && !u(al),
        }
    }
}

/// The listed radical basis for `row`, evaluated at `p`.
pub fn table5_basis<S: Scalar>(row: Table5Row, p: &UniversalParams<S>) -> Vec<Vec<S>> {
    let zero = p.zero();
    let n = |k: i64| zero.from_int_like(k);
    let h = |k: i64, d: i64| zero.from_int_like(k).mul(&zero.from_int_like(d).inv().expect("odd characteristic"));
    let (al, be, ga, ps) = (p.alpha.clone(), p.beta.clone(), p.gamma.clone(), p.psi.clone());
    let one = n(1);
    let unit = |k: usize| {
        let mut v = vec![zero.clone(); DIM];
        v[k] = one.clone();
        v
    };
    let with = |pairs: &[(usize, i64)]| {
        let mut v = vec![zero.clone(); DIM];
        for &(k, c) in pairs {
            v[k] = n(c);
        }
        v
    };
    match row {
        Table5Row::R1 => {
            let tp = ps.add(&ps);
            let (bg, ab, ag) = (be.mul(&ga).neg(), al.mul(&be).neg(), al.mul(&ga).neg());
            let z = zero.clone();
            vec![
                vec![z.clone(), z.clone(), z.clone(), bg.clone(), z.clone(), ab.clone(), tp.clone(), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), z.clone(), bg, ag.clone(), z.clone(), z.clone(), tp.clone(), z.clone()],
                vec![z.clone(), z.clone(), z.clone(), z.clone(), ag, ab, z.clone(), z, tp],
            ]
        }
        Table5Row::R2 => {
            let z = zero.clone();
            let a2 = al.mul(&al);
            let a2a = a2.sub(&al);
            let two = n(2);
            vec![
                vec![
                    al.mul(&be.sub(&one)),
                    al.mul(&ga.sub(&one)),
                    al.mul(&one.sub(&al)),
                    two.mul(&al.sub(&ps)),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                ],
                vec![
                    z.clone(),
                    al.mul(&be).sub(&al.mul(&ps)),
                    z.clone(),
                    ps.sub(&al.mul(&be)),
                    a2a.clone(),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                ],
                vec![
                    al.mul(&ga).sub(&al.mul(&ps)),
                    z.clone(),
                    z.clone(),
                    ps.sub(&al.mul(&ga)),
                    z.clone(),
                    a2a.clone(),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                ],
                vec![
                    al.mul(&ps).sub(&a2.mul(&be)),
                    z.clone(),
                    z.clone(),
                    al.add(&ps).sub(&a2).sub(&al.mul(&ga)),
                    z.clone(),
                    z.clone(),
                    two.mul(&a2a),
                    z.clone(),
                    z.clone(),
                ],
                vec![
                    z.clone(),
                    al.mul(&ps).sub(&a2.mul(&ga)),
                    z.clone(),
                    al.add(&ps).sub(&a2).sub(&al.mul(&be)),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    two.mul(&a2a),
                    z.clone(),
                ],
                vec![
                    ps.sub(&al.mul(&be)),
                    ps.sub(&al.mul(&ga)),
                    z.clone(),
                    one.sub(&al),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    two.mul(&al.sub(&one)),
                ],
            ]
        }
        Table5Row::R3 => (1..DIM).map(|k| with(&[(0, -1), (k, 1)])).collect(),
        Table5Row::R4 => (3..DIM).map(unit).collect(),
        Table5Row::R5 => [3, 4, 6, 7, 8].into_iter().map(unit).collect(),
        Table5Row::R6 => vec![
            with(&[(0, -1), (2, 1)]),
            unit(3),
            unit(4),
            with(&[(0, -1), (5, 1)]),
            unit(6),
            unit(7),
            unit(8),
        ],
        Table5Row::R7 => {
            let g2 = ga.mul(&h(1, 2));
            let b2 = be.mul(&h(1, 2));
            let g4 = ga.mul(&h(1, 4));
            let b4 = be.mul(&h(1, 4));
            let mut rows = vec![unit(3), unit(4), unit(5), unit(6), unit(7), unit(8)];
            for (r, c) in [
                (1, [g2.clone(), b2.neg(), h(-1, 2)]),
                (2, [g2.neg(), b2, h(-1, 2)]),
                (3, [g4.clone(), b4.clone(), h(-1, 4)]),
                (4, [g4, b4, h(-1, 4)]),
            ] {
                rows[r][..3].clone_from_slice(&c);
            }
            rows
        }
        Table5Row::R8 => vec![unit(3), with(&[(6, -1), (7, 1)]), unit(8)],
        Table5Row::R9 => {
            let z = zero.clone();
            let ha = h(1, 2);
            let am1 = al.sub(&one);
            let oma = one.sub(&al);
            let two = n(2);
            let four = n(4);
            vec![
                vec![
                    ha.mul(&be.sub(&one)),
                    ha.mul(&be.sub(&al)),
                    ha.mul(&oma),
                    one.sub(&be),
                    am1.clone(),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                ],
                vec![
                    ha.mul(&ga.sub(&al)),
                    ha.mul(&ga.sub(&one)),
                    ha.mul(&oma),
                    one.sub(&ga),
                    z.clone(),
                    am1.clone(),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                ],
                vec![
                    two.mul(&ps).sub(&two.mul(&al).mul(&be)).add(&be).sub(&one),
                    ga.sub(&one),
                    oma.clone(),
                    four.sub(&two.mul(&al)).sub(&two.mul(&ga)),
                    z.clone(),
                    z.clone(),
                    four.mul(&am1),
                    z.clone(),
                    z.clone(),
                ],
                vec![
                    be.sub(&one),
                    two.mul(&ps).sub(&two.mul(&al).mul(&ga)).add(&ga).sub(&one),
                    oma.clone(),
                    four.sub(&two.mul(&al)).sub(&two.mul(&be)),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    four.mul(&am1),
                    z.clone(),
                ],
                vec![
                    ps.sub(&al),
                    ps.sub(&al),
                    al.mul(&oma),
                    two.sub(&be).sub(&ga),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    z,
                    two.mul(&am1),
                ],
            ]
        }
    }
}

/// First row, then first relabeling (identity first), whose condition holds.
/// The returned permutation `g` is such that the row matches `g.apply_params(p)`.
pub fn table5_match<S: Scalar>(p: &UniversalParams<S>) -> Option<(Table5Row, GenPerm)> {
    Table5Row::ALL.into_iter().find_map(|row| {
        GenPerm::all()
            .into_iter()
            .find(|g| row.matches(&g.apply_params(p)))
            .map(|g| (row, g))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum RadicalCase {
    Nondegenerate,
    Row(Table5Row),
    Uncatalogued,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadicalReport<S> {
    pub rank: usize,
    pub radical: Subspace<S>,
    pub case: RadicalCase,
    pub permutation: GenPerm,
    pub printed_rank: Option<usize>,
    /// Whether the listed basis, pulled back along `permutation`, spans the computed radical.
    pub table_span_matches: Option<bool>,
    pub is_ideal: bool,
}

/// Radical of the form `gram` on `alg`; with `params` it is also located in the
/// table of degenerate families.
pub fn radical<S: Scalar>(
    alg: &Algebra<S>,
    gram: &Matrix<S>,
    params: Option<&UniversalParams<S>>,
) -> Result<RadicalReport<S>, FrobeniusError> {
    let rad = gram.kernel();
    let rank = alg.dim() - rad.dim();
    let is_ideal = alg.is_ideal(&rad)?;
    let mut report = RadicalReport {
        rank,
        radical: rad,
        case: RadicalCase::Uncatalogued,
        permutation: GenPerm::IDENTITY,
        printed_rank: None,
        table_span_matches: None,
        is_ideal,
    };
    let Some(p) = params else {
        if report.radical.is_zero() {
            report.case = RadicalCase::Nondegenerate;
        }
        return Ok(report);
    };
    if !p.delta().is_zero() && !p.lambda().is_zero() {
        report.case = RadicalCase::Nondegenerate;
        report.table_span_matches = Some(report.radical.is_zero());
        return Ok(report);
    }
    if let Some((row, g)) = table5_match(p) {
        let m = g.basis_map();
        let pulled: Vec<Vec<S>> = table5_basis(row, &g.apply_params(p))
            .into_iter()
            .map(|w| (0..DIM).map(|k| w[m[k]].clone()).collect())
            .collect();
        let span = Subspace::span(DIM, pulled, alg.zero_elem());
        report.case = RadicalCase::Row(row);
        report.permutation = g;
        report.printed_rank = Some(row.printed_rank());
        report.table_span_matches =
            Some(span.is_subspace_of(&report.radical) && report.radical.is_subspace_of(&span));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeFieldElem, Rational};
    use crate::frobenius::gram_closed_form;
    use crate::universal::build_universal;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn samples() -> Vec<(Table5Row, UniversalParams<Rational>)> {
        let z = q(0, 1);
        vec![
            (Table5Row::R1, UniversalParams::from_ints(1, 1, 4, 2)),
            (Table5Row::R2, UniversalParams::from_ints(2, 1, 2, 2)),
            (Table5Row::R3, UniversalParams::from_ints(1, 1, 1, 1)),
            (Table5Row::R4, UniversalParams::from_ints(0, 0, 0, 0)),
            (Table5Row::R5, UniversalParams::from_ints(0, 0, 2, 0)),
            (Table5Row::R6, UniversalParams::from_ints(0, 0, 1, 0)),
            (Table5Row::R7, UniversalParams::new(z.clone(), q(1, 3), q(2, 3), z.clone())),
            (Table5Row::R8, UniversalParams::from_ints(0, 1, 2, 0)),
            (Table5Row::R9, UniversalParams::from_ints(2, 1, 0, 1)),
        ]
    }

    fn report(p: &UniversalParams<Rational>) -> RadicalReport<Rational> {
        let alg = build_universal(p).unwrap();
        let g = gram_closed_form(p).unwrap();
        radical(&alg, &g, Some(p)).unwrap()
    }

    #[test]
    fn canonical_samples_match_their_rows() {
        for (row, p) in samples() {
            assert!(row.matches(&p), "{row:?}");
            let r = report(&p);
            assert_eq!(r.case, RadicalCase::Row(row));
            assert_eq!(r.permutation, GenPerm::IDENTITY);
            assert_eq!(r.rank, row.printed_rank(), "{row:?}");
            assert_eq!(r.table_span_matches, Some(true), "{row:?}");
            assert!(r.is_ideal);
        }
    }

    #[test]
    fn relabeled_samples_are_found() {
        for (row, p) in samples() {
            for g in GenPerm::all() {
                let moved = g.apply_params(&p);
                let r = report(&moved);
                assert_eq!(r.rank, row.printed_rank());
                assert_eq!(r.table_span_matches, Some(true), "{row:?} {g:?}");
            }
        }
    }

    #[test]
    fn nondegenerate_points() {
        let r = report(&UniversalParams::from_ints(2, 2, 2, 3));
        assert_eq!(r.case, RadicalCase::Nondegenerate);
        assert_eq!(r.rank, 9);
    }

    #[test]
    fn listed_vectors_are_independent() {
        for (row, p) in samples() {
            let b = table5_basis(row, &p);
            assert_eq!(b.len(), DIM - row.printed_rank());
            assert_eq!(Matrix::from_rows(b, &q(0, 1)).unwrap().rank(), DIM - row.printed_rank());
        }
    }

    #[test]
    fn over_a_prime_field() {
        let f = |k: i64| PrimeFieldElem::new(k, 7).unwrap();
        let p = UniversalParams::new(f(1), f(1), f(4), f(2));
        let alg = build_universal(&p).unwrap();
        let r = radical(&alg, &gram_closed_form(&p).unwrap(), Some(&p)).unwrap();
        assert_eq!(r.case, RadicalCase::Row(Table5Row::R1));
        assert_eq!(r.table_span_matches, Some(true));
    }
}
