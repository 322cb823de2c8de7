use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::hermitian::{build_hermitian_iso, HermitianContext};
use super::matrix::{flatten, special_product, trace_form, MatrixJordan};
use super::JordanError;
use crate::field::{Scalar, SquareTest};
use crate::frobenius::{gram_closed_form, radical, RadicalReport};
use crate::linalg::Matrix;
use crate::universal::{build_universal, labels, UniversalParams, DIM};

/// Matrices in `M_3(F)^+` realizing the universal basis.
#[derive(Clone, PartialEq)]
pub struct IsoWitness<S> {
    pub t: S,
    /// Images of `a, b, c, ab, bc, ac, a(bc), b(ac), c(ab)`.
    pub images: Vec<Matrix<S>>,
    pub checks: Vec<(String, bool)>,
}

impl<S: Scalar> core::fmt::Debug for IsoWitness<S> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("IsoWitness")
            .field("t", &self.t)
            .field("images", &self.images)
            .field("checks", &self.checks)
            .finish()
    }
}

impl<S> IsoWitness<S> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub(super) fn require_nondegenerate<S: Scalar>(p: &UniversalParams<S>) -> Result<(), JordanError> {
    if p.lambda().is_zero() {
        return Err(JordanError::PreconditionFailed("α+β+γ-2ψ-1 = 0"));
    }
    if p.delta().is_zero() {
        return Err(JordanError::PreconditionFailed("αβγ-ψ² = 0"));
    }
    Ok(())
}

/// The three rank-one idempotents and their six derived products.
pub(super) fn generator_images<S: Scalar>(p: &UniversalParams<S>, t: &S) -> Result<Vec<Matrix<S>>, JordanError> {
    let z = p.zero();
    let one = z.one_like();
    let m = |rows: [[S; 3]; 3]| Matrix::from_rows(rows.into_iter().map(Vec::from).collect(), &z);
    let a = m([
        [one.clone(), z.clone(), z.clone()],
        [p.alpha.clone(), z.clone(), z.clone()],
        [t.clone(), z.clone(), z.clone()],
    ])?;
    let b = m([
        [z.clone(), one.clone(), z.clone()],
        [z.clone(), one.clone(), z.clone()],
        [z.clone(), p.beta.clone(), z.clone()],
    ])?;
    let c = m([
        [z.clone(), z.clone(), p.gamma.checked_div(t)?],
        [z.clone(), z.clone(), one.clone()],
        [z.clone(), z.clone(), one],
    ])?;
    let sp = special_product::<S>;
    let ab = sp(&a, &b)?;
    let bc = sp(&b, &c)?;
    let ac = sp(&a, &c)?;
    let abc = sp(&a, &bc)?;
    let bac = sp(&b, &ac)?;
    let cab = sp(&c, &ab)?;
    Ok(vec![a, b, c, ab, bc, ac, abc, bac, cab])
}

/// Checks that `images` realize the universal algebra at `p` inside `M_3(F)^+`.
pub(super) fn verify_images<S: Scalar>(
    p: &UniversalParams<S>,
    images: &[Matrix<S>],
) -> Result<Vec<(String, bool)>, JordanError> {
    let z = p.zero();
    let mj = MatrixJordan::new(3, &z);
    let full = mj.algebra()?;
    let mut checks = Vec::new();
    let mut log = |name: &str, ok: bool| checks.push((String::from(name), ok));

    let idem = images[..3]
        .iter()
        .map(|x| Ok(special_product(x, x)? == *x))
        .collect::<Result<Vec<bool>, JordanError>>()?;
    log("axes_idempotent", idem.iter().all(|&b| b));
    let mut prim = true;
    for x in &images[..3] {
        prim &= full.eigenspace(&flatten(x), &z.one_like())?.dim() == 1;
    }
    log("axes_primitive", prim);

    let stack: Vec<Vec<S>> = images.iter().map(flatten).collect();
    let independent = Matrix::from_rows(stack, &z)?.rank() == DIM;
    log("linearly_independent", independent);

    let tf = |i: usize, j: usize| trace_form(&images[i], &images[j]);
    let pairings = tf(0, 1)? == p.alpha && tf(1, 2)? == p.beta && tf(0, 2)? == p.gamma && tf(0, 4)? == p.psi;
    log("trace_pairings", pairings);

    let gram = Matrix::from_fn(DIM, DIM, &z, |i, j| tf(i, j).unwrap_or_else(|_| z.clone()));
    log("trace_gram_matches_closed_form", gram == gram_closed_form(p)?);

    let mut products = independent;
    if independent {
        let sub = mj.subalgebra(images, labels());
        let table = build_universal(p)?;
        products = match sub {
            Ok(sub) => first_mismatch(&sub, &table).is_none(),
            Err(JordanError::VerificationFailed { .. }) => false,
            Err(e) => return Err(e),
        };
    }
    log("products_match_table", products);
    Ok(checks)
}

pub(super) fn first_mismatch<S: Scalar>(
    x: &crate::algebra::Algebra<S>,
    y: &crate::algebra::Algebra<S>,
) -> Option<(usize, usize)> {
    x.constants()
        .zip(y.constants())
        .find(|((_, _, s), (_, _, t))| s != t)
        .map(|((i, j, _), _)| (i, j))
}

/// Realizes the universal algebra at `p` as `M_3(F)^+`.
pub fn build_m3_iso<S: Scalar>(p: &UniversalParams<S>) -> Result<IsoWitness<S>, JordanError> {
    require_nondegenerate(p)?;
    let d = p.delta().neg();
    let SquareTest::Square(r) = d.square_test()? else {
        return Err(JordanError::PreconditionFailed("ψ²-αβγ is not a square"));
    };
    let t = match p.psi.add(&r) {
        t if t.is_zero() => p.psi.sub(&r),
        t => t,
    };
    let images = generator_images(p, &t)?;
    let checks = verify_images(p, &images)?;
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        let check = CHECK_NAMES.iter().find(|n| **n == name.as_str()).copied().unwrap_or("unknown");
        let cell = if check == "products_match_table" {
            MatrixJordan::new(3, &p.zero())
                .subalgebra(&images, labels())
                .ok()
                .and_then(|s| first_mismatch(&s, &build_universal(p).ok()?))
        } else {
            None
        };
        return Err(JordanError::VerificationFailed { check, cell });
    }
    Ok(IsoWitness { t, images, checks })
}

const CHECK_NAMES: [&str; 6] = [
    "axes_idempotent",
    "axes_primitive",
    "linearly_independent",
    "trace_pairings",
    "trace_gram_matches_closed_form",
    "products_match_table",
];

#[derive(Clone, Debug, PartialEq)]
pub enum Theorem2<S: Scalar> {
    M3Plus(IsoWitness<S>),
    Hermitian(HermitianContext<S>),
    NotSimple(RadicalReport<S>),
}

/// Routes on the two degeneracy factors and on whether `ψ²-αβγ` is a square.
pub fn theorem2_dispatch<S: Scalar>(p: &UniversalParams<S>) -> Result<Theorem2<S>, JordanError> {
    if p.lambda().is_zero() || p.delta().is_zero() {
        let alg = build_universal(p)?;
        let g = gram_closed_form(p)?;
        return Ok(Theorem2::NotSimple(radical(&alg, &g, Some(p))?));
    }
    match p.delta().neg().square_test()? {
        SquareTest::Square(_) => Ok(Theorem2::M3Plus(build_m3_iso(p)?)),
        SquareTest::NonSquare => Ok(Theorem2::Hermitian(build_hermitian_iso(p, None)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeFieldElem, Rational};
    use crate::frobenius::{RadicalCase, Table5Row};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn rational_witness() {
        let p = UniversalParams::from_ints(2, 2, 2, 3);
        let w = build_m3_iso(&p).unwrap();
        assert_eq!(w.t, q(4, 1));
        assert!(w.passed());
        assert_eq!(w.checks.len(), 6);
        // A o B
        let ab = &w.images[3];
        assert_eq!(ab.get(0, 0), &q(1, 1));
        assert_eq!(ab.get(0, 1), &q(1, 2));
        assert_eq!(ab.get(2, 1), &q(2, 1));
    }

    #[test]
    fn triple_trace_is_psi() {
        let p = UniversalParams::new(q(3, 2), q(-1, 3), q(2, 1), q(5, 4));
        let w = build_m3_iso(&p);
        // psi^2 - alpha beta gamma = 25/16 + 1 = 41/16 is not a rational square
        assert!(matches!(w, Err(JordanError::PreconditionFailed(_))));
        let p = UniversalParams::new(q(1, 1), q(1, 1), q(8, 1), q(3, 1));
        let w = build_m3_iso(&p).unwrap();
        assert_eq!(w.t, q(4, 1));
        assert_eq!(trace_form(&w.images[0], &w.images[4]).unwrap(), q(3, 1));
    }

    #[test]
    fn zero_root_falls_back() {
        // psi = -1, psi^2 - alpha beta gamma = 1: psi + 1 = 0, so t = -2
        let p = UniversalParams::from_ints(0, 0, 0, -1);
        let w = build_m3_iso(&p).unwrap();
        assert_eq!(w.t, q(-2, 1));
        assert!(w.passed());
    }

    #[test]
    fn primitive_axis_eigenspace() {
        let p = UniversalParams::from_ints(2, 2, 2, 3);
        let w = build_m3_iso(&p).unwrap();
        let full = MatrixJordan::new(3, &q(0, 1)).algebra().unwrap();
        let e = full.eigenspace(&flatten(&w.images[0]), &q(1, 1)).unwrap();
        assert_eq!(e.dim(), 1);
        assert!(e.contains(&flatten(&w.images[0])));
    }

    #[test]
    fn degenerate_parameters_rejected() {
        for p in [UniversalParams::from_ints(1, 1, 1, 1), UniversalParams::from_ints(1, 1, 4, 2)] {
            assert!(matches!(build_m3_iso(&p), Err(JordanError::PreconditionFailed(_))));
        }
    }

    #[test]
    fn dispatch() {
        let p = UniversalParams::from_ints(2, 2, 2, 3);
        assert!(matches!(theorem2_dispatch(&p).unwrap(), Theorem2::M3Plus(_)));
        let Theorem2::NotSimple(r) = theorem2_dispatch(&UniversalParams::from_ints(1, 1, 1, 1)).unwrap() else {
            panic!()
        };
        assert_eq!(r.case, RadicalCase::Row(Table5Row::R3));
        let f = |k| PrimeFieldElem::new(k, 7).unwrap();
        let p = UniversalParams::new(f(1), f(1), f(1), f(2));
        assert!(matches!(theorem2_dispatch(&p).unwrap(), Theorem2::Hermitian(_)));
        let p = UniversalParams::new(f(2), f(2), f(2), f(3));
        assert!(matches!(theorem2_dispatch(&p).unwrap(), Theorem2::M3Plus(_)));
    }
}
