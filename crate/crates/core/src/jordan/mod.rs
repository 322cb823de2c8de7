//! The Jordan identity, matrix Jordan algebras and explicit isomorphisms of
//! the universal algebra onto them.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::{Algebra, AlgebraError};
use crate::field::{FieldError, Rational, Scalar};
use crate::frobenius::FrobeniusError;
use crate::linalg::LinalgError;
use crate::universal::{build_universal, UniversalParams};

mod hermitian;
mod iso;
mod matrix;

pub use hermitian::{build_hermitian_iso, HermitianContext};
pub use iso::{build_m3_iso, theorem2_dispatch, IsoWitness, Theorem2};
pub use matrix::{conj_transpose, flatten, special_product, trace_form, unflatten, MatrixJordan};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JordanError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
    #[error("check {check} failed{}", cell.map_or(String::new(), |(i, j)| alloc::format!(" at ({i}, {j})")))]
    VerificationFailed {
        check: &'static str,
        cell: Option<(usize, usize)>,
    },
    #[error("involution axiom fails: {0}")]
    InvolutionInvalid(&'static str),
    #[error("fixed space has dimension {0}, expected 9")]
    FixedSpaceWrongDimension(usize),
    #[error("no witness found: {0}")]
    NoWitness(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JordanMode {
    /// Every coefficient of `(x^2 y) x - x^2 (y x)` as a polynomial in the
    /// coordinates of generic `x` and `y`.
    Symbolic,
    /// Full evaluation at random points.
    Sampled { points: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum JordanWitness<S> {
    /// Nonzero coefficient of `x_i x_k x_l y_j`, as a vector.
    Monomial {
        x: [usize; 3],
        y: usize,
        residual: Vec<S>,
    },
    Sample {
        params: Option<UniversalParams<S>>,
        x: Vec<S>,
        y: Vec<S>,
        residual: Vec<S>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanCheckReport<S> {
    pub mode: JordanMode,
    pub checked: usize,
    pub failures: Vec<JordanWitness<S>>,
}

impl<S> JordanCheckReport<S> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(x^2 y) x - x^2 (y x)`.
pub fn jordan_residual<S: Scalar>(alg: &Algebra<S>, x: &[S], y: &[S]) -> Result<Vec<S>, AlgebraError> {
    let x2 = alg.multiply(x, x)?;
    let l = alg.multiply(&alg.multiply(&x2, y)?, x)?;
    let r = alg.multiply(&x2, &alg.multiply(y, x)?)?;
    Ok(crate::algebra::sub_vec(&l, &r))
}

/// Expands the identity with `x = sum t_i e_i`, `y = e_j` and checks that the
/// coefficient of every cubic monomial in the `t_i` vanishes. The identity is
/// linear in `y`, so this covers generic `y`.
pub fn jordan_check<S: Scalar>(alg: &Algebra<S>) -> Result<JordanCheckReport<S>, JordanError> {
    let n = alg.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|q| (0..=q).map(move |p| (p, q))).collect();
    // terms[pair][j][r] = ((e_p e_q) e_j) e_r - (e_p e_q)(e_j e_r)
    let terms = crate::par_map(pairs.len(), |t| -> Result<Vec<Vec<Vec<S>>>, AlgebraError> {
        let (p, q) = pairs[t];
        let u = alg.product_vector(p, q);
        (0..n)
            .map(|j| {
                let uy = alg.multiply(&u, &alg.basis_vector(j))?;
                (0..n)
                    .map(|r| {
                        let er = alg.basis_vector(r);
                        let l = alg.multiply(&uy, &er)?;
                        let rr = alg.multiply(&u, &alg.product_vector(j, r))?;
                        Ok(crate::algebra::sub_vec(&l, &rr))
                    })
                    .collect()
            })
            .collect()
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let pair_index = |p: usize, q: usize| {
        let (p, q) = (p.min(q), p.max(q));
        q * (q + 1) / 2 + p
    };
    let zero = alg.zero_elem();
    let two = zero.from_int_like(2);
    let mut failures = Vec::new();
    let mut checked = 0;
    for l in 0..n {
        for k in 0..=l {
            for i in 0..=k {
                let m = [i, k, l];
                for j in 0..n {
                    checked += 1;
                    let mut acc = alg.zero_vector();
                    for pos in 0..3 {
                        if m[..pos].contains(&m[pos]) {
                            continue;
                        }
                        let rest: Vec<usize> = (0..3).filter(|&s| s != pos).map(|s| m[s]).collect();
                        let t = &terms[pair_index(rest[0], rest[1])][j][m[pos]];
                        let w = if rest[0] == rest[1] { None } else { Some(&two) };
                        for (a, b) in acc.iter_mut().zip(t) {
                            if !b.is_zero() {
                                let b = w.map_or_else(|| b.clone(), |w| b.mul(w));
                                *a = a.checked_add(&b)?;
                            }
                        }
                    }
                    if acc.iter().any(|c| !c.is_zero()) {
                        failures.push(JordanWitness::Monomial {
                            x: m,
                            y: j,
                            residual: acc,
                        });
                    }
                }
            }
        }
    }
    Ok(JordanCheckReport {
        mode: JordanMode::Symbolic,
        checked,
        failures,
    })
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-12..=12), rng.gen_range(1..=7)).expect("nonzero denominator")
}

/// Evaluates the identity at `points` random elements `x`, `y` of `alg`.
pub fn jordan_sampled<S: Scalar, R: Rng>(
    alg: &Algebra<S>,
    points: usize,
    rng: &mut R,
) -> Result<JordanCheckReport<S>, JordanError> {
    let zero = alg.zero_elem();
    let draw = |rng: &mut R| -> Result<Vec<S>, FieldError> {
        (0..alg.dim()).map(|_| zero.from_rational_like(&random_rational(rng))).collect()
    };
    let mut failures = Vec::new();
    for _ in 0..points {
        let (x, y) = (draw(rng)?, draw(rng)?);
        let residual = jordan_residual(alg, &x, &y)?;
        if residual.iter().any(|c| !c.is_zero()) {
            failures.push(JordanWitness::Sample {
                params: None,
                x,
                y,
                residual,
            });
        }
    }
    Ok(JordanCheckReport {
        mode: JordanMode::Sampled { points },
        checked: points,
        failures,
    })
}

/// Like [`jordan_sampled`] on the universal algebra, drawing fresh rational
/// parameters for every point.
pub fn jordan_sampled_universal<R: Rng>(points: usize, rng: &mut R) -> Result<JordanCheckReport<Rational>, JordanError> {
    let mut failures = Vec::new();
    for _ in 0..points {
        let params = UniversalParams::new(
            random_rational(rng),
            random_rational(rng),
            random_rational(rng),
            random_rational(rng),
        );
        let alg = build_universal(&params)?;
        let r = jordan_sampled(&alg, 1, rng)?;
        for w in r.failures {
            if let JordanWitness::Sample { x, y, residual, .. } = w {
                failures.push(JordanWitness::Sample {
                    params: Some(params.clone()),
                    x,
                    y,
                    residual,
                });
            }
        }
    }
    Ok(JordanCheckReport {
        mode: JordanMode::Sampled { points },
        checked: points,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RatFunc;
    use crate::universal::{build_symbolic, AB, C};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn universal_symbolic_passes() {
        let r = jordan_check(&build_symbolic()).unwrap();
        assert_eq!(r.checked, 165 * 9);
        assert!(r.passed(), "{:?}", r.failures.first());
    }

    #[test]
    fn perturbed_table_fails_with_polynomial_residual() {
        let mut alg = build_symbolic();
        let mut t = alg.product_terms(AB, AB).to_vec();
        t.push((C, RatFunc::one()));
        alg.set_product(AB, AB, t).unwrap();
        let r = jordan_check(&alg).unwrap();
        assert!(!r.passed());
        let JordanWitness::Monomial { residual, .. } = &r.failures[0] else {
            panic!()
        };
        assert!(residual.iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn sampled_universal_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = jordan_sampled_universal(50, &mut rng).unwrap();
        assert_eq!(r.checked, 50);
        assert!(r.passed());
    }

    #[test]
    fn sampled_detects_perturbation() {
        let p = UniversalParams::from_ints(1, 2, 3, 4);
        let mut alg = build_universal(&p).unwrap();
        let mut t = alg.product_terms(AB, AB).to_vec();
        t.push((C, Rational::from_int(1)));
        alg.set_product(AB, AB, t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(!jordan_sampled(&alg, 5, &mut rng).unwrap().passed());
    }

    #[test]
    fn idempotent_contributes_nothing() {
        let p = UniversalParams::from_ints(3, 1, 2, 5);
        let alg = build_universal(&p).unwrap();
        let a = alg.basis_vector(0);
        assert!(jordan_residual(&alg, &a, &a).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn nonjordan_algebra_fails() {
        // e0 e0 = e1, e1 e1 = e0: (x^2 y) x != x^2 (y x) at x = e0, y = e0
        let z = Rational::from_int(0);
        let o = Rational::from_int(1);
        let alg = Algebra::from_constants(
            alloc::vec![String::from("u"), String::from("v")],
            &z,
            [(0, 0, alloc::vec![(1, o.clone())]), (1, 1, alloc::vec![(0, o)])],
        )
        .unwrap();
        assert!(!jordan_check(&alg).unwrap().passed());
    }
}
