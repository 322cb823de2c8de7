use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::JordanError;
use crate::algebra::{express, sparse, Algebra};
use crate::field::{QuadExt, Scalar};
use crate::linalg::{LinalgError, Matrix};

/// `(XY + YX) / 2`.
pub fn special_product<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> Result<Matrix<S>, LinalgError> {
    if !x.is_square() || x.rows() != y.rows() || y.cols() != x.cols() {
        return Err(LinalgError::DimensionMismatch("special product needs equal square sizes"));
    }
    let half = x.zero_elem().from_int_like(2).inv()?;
    x.mul(y)?.add(&y.mul(x)?)?.scale(&half)
}

/// `tr(X o Y)`, which equals `tr(XY)`.
pub fn trace_form<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> Result<S, LinalgError> {
    special_product(x, y)?.trace()
}

pub fn flatten<S: Scalar>(m: &Matrix<S>) -> Vec<S> {
    m.to_rows().into_iter().flatten().collect()
}

pub fn unflatten<S: Scalar>(n: usize, v: &[S], zero: &S) -> Matrix<S> {
    Matrix::from_fn(n, n, zero, |i, j| v[i * n + j].clone())
}

pub fn conj_transpose<F: Scalar>(m: &Matrix<QuadExt<F>>) -> Matrix<QuadExt<F>> {
    Matrix::from_fn(m.cols(), m.rows(), m.zero_elem(), |i, j| m.get(j, i).conj())
}

/// `M_n(F)` under the special product.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixJordan<S> {
    pub n: usize,
    pub zero: S,
}

impl<S: Scalar> MatrixJordan<S> {
    pub fn new(n: usize, zero: &S) -> Self {
        Self {
            n,
            zero: zero.zero_like(),
        }
    }

    pub fn unit(&self, i: usize, j: usize) -> Matrix<S> {
        let mut m = Matrix::zeros(self.n, self.n, &self.zero);
        m.set(i, j, self.zero.one_like());
        m
    }

    /// The algebra on the matrix units `E_ij`, in row-major order.
    pub fn algebra(&self) -> Result<Algebra<S>, JordanError> {
        let n = self.n;
        let units: Vec<Matrix<S>> = (0..n * n).map(|k| self.unit(k / n, k % n)).collect();
        let labels = (0..n * n).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
        let mut constants = Vec::new();
        for q in 0..n * n {
            for p in 0..=q {
                let prod = special_product(&units[p], &units[q])?;
                constants.push((p, q, sparse(&flatten(&prod))));
            }
        }
        Ok(Algebra::from_constants(labels, &self.zero, constants)?)
    }

    /// Structure constants of the span of `images`, which must be linearly
    /// independent and closed under the special product.
    pub fn subalgebra(&self, images: &[Matrix<S>], labels: Vec<String>) -> Result<Algebra<S>, JordanError> {
        let basis: Vec<Vec<S>> = images.iter().map(flatten).collect();
        if Matrix::from_rows(basis.clone(), &self.zero)?.rank() != basis.len() {
            return Err(JordanError::VerificationFailed {
                check: "linearly_independent",
                cell: None,
            });
        }
        let mut constants = Vec::new();
        for q in 0..images.len() {
            for p in 0..=q {
                let prod = flatten(&special_product(&images[p], &images[q])?);
                let Some(c) = express(&basis, &prod, &self.zero)? else {
                    return Err(JordanError::VerificationFailed {
                        check: "closure",
                        cell: Some((p, q)),
                    });
                };
                constants.push((p, q, sparse(&c)));
            }
        }
        Ok(Algebra::from_constants(labels, &self.zero, constants)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::jordan::jordan_check;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn unit_products() {
        let m = MatrixJordan::new(3, &q(0));
        let id = Matrix::identity(3, &q(0));
        assert_eq!(special_product(&id, &id).unwrap(), id);
        let p = special_product(&m.unit(0, 0), &m.unit(0, 1)).unwrap();
        assert_eq!(p, m.unit(0, 1).scale(&Rational::new(1, 2).unwrap()).unwrap());
        assert!(special_product(&id, &Matrix::identity(2, &q(0))).is_err());
    }

    #[test]
    fn matrix_algebras_are_jordan() {
        for n in 1..=3 {
            let alg = MatrixJordan::new(n, &q(0)).algebra().unwrap();
            assert_eq!(alg.dim(), n * n);
            assert!(jordan_check(&alg).unwrap().passed(), "n = {n}");
        }
    }

    fn m3() -> impl Strategy<Value = Matrix<Rational>> {
        proptest::collection::vec(-5i64..=5, 9)
            .prop_map(|v| Matrix::from_fn(3, 3, &q(0), |i, j| q(v[3 * i + j])))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn trace_form_associates(x in m3(), y in m3(), z in m3()) {
            let l = trace_form(&special_product(&x, &y).unwrap(), &z).unwrap();
            let r = trace_form(&x, &special_product(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn special_product_commutes(x in m3(), y in m3()) {
            prop_assert_eq!(special_product(&x, &y).unwrap(), special_product(&y, &x).unwrap());
        }
    }
}
