use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::iso::{build_m3_iso, first_mismatch, require_nondegenerate, IsoWitness};
use super::matrix::{conj_transpose, special_product};
use super::JordanError;
use crate::algebra::{express, sparse, Algebra};
use crate::field::{QuadExt, Scalar, SquareTest};
use crate::linalg::Matrix;
use crate::universal::{build_universal, labels, UniversalParams, DIM};

type P<S> = QuadExt<S>;

/// The universal algebra realized inside `H(M_3(P), j)` with
/// `P = F(z)`, `z^2 = ψ²-αβγ` and `j(X) = T^{-1} conj(X)' T`.
#[derive(Clone, PartialEq)]
pub struct HermitianContext<S: Scalar> {
    /// `ψ²-αβγ`, the square of the adjoined root.
    pub discriminant: S,
    pub involution: Matrix<P<S>>,
    /// The scalar with `conj(T)' = t T`.
    pub t: P<S>,
    /// Realization in `M_3(P)^+` before conjugating into `H`.
    pub split: IsoWitness<P<S>>,
    /// `S` with `X -> S X S^{-1}` carrying the split realization into `H`.
    pub conjugator: Matrix<P<S>>,
    /// Images of the universal basis, all fixed by `j`.
    pub images: Vec<Matrix<P<S>>>,
    /// Basis of `H` over `F`.
    pub fixed_basis: Vec<Matrix<P<S>>>,
    pub checks: Vec<(String, bool)>,
}

impl<S: Scalar> core::fmt::Debug for HermitianContext<S> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("HermitianContext")
            .field("discriminant", &self.discriminant)
            .field("involution", &self.involution)
            .field("t", &self.t)
            .field("images", &self.images)
            .field("fixed_dim", &self.fixed_basis.len())
            .field("checks", &self.checks)
            .finish()
    }
}

impl<S: Scalar> HermitianContext<S> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn fixed_dim(&self) -> usize {
        self.fixed_basis.len()
    }

    pub fn apply_involution(&self, x: &Matrix<P<S>>) -> Result<Matrix<P<S>>, JordanError> {
        Involution::new(&self.involution)?.apply(x)
    }
}

struct Involution<S: Scalar> {
    t: Matrix<P<S>>,
    t_inv: Matrix<P<S>>,
}

impl<S: Scalar> Involution<S> {
    fn new(t: &Matrix<P<S>>) -> Result<Self, JordanError> {
        let t_inv = t.inverse()?.ok_or(JordanError::InvolutionInvalid("T is singular"))?;
        Ok(Self { t: t.clone(), t_inv })
    }

    fn apply(&self, x: &Matrix<P<S>>) -> Result<Matrix<P<S>>, JordanError> {
        Ok(self.t_inv.mul(&conj_transpose(x))?.mul(&self.t)?)
    }
}

fn to_base<S: Scalar>(x: &Matrix<P<S>>) -> Vec<S> {
    x.to_rows()
        .into_iter()
        .flatten()
        .flat_map(|e| [e.x().clone(), e.y().clone()])
        .collect()
}

fn from_base<S: Scalar>(v: &[S], z: &P<S>) -> Matrix<P<S>> {
    Matrix::from_fn(3, 3, &z.zero_like(), |i, j| {
        let k = 2 * (3 * i + j);
        z.lift(v[k].clone()).add(&z.mul(&z.lift(v[k + 1].clone())))
    })
}

/// `x` with `x conj(x) = target`, searched over small second coordinates.
fn norm_preimage<S: Scalar>(target: &S, z: &P<S>) -> Result<Option<P<S>>, JordanError> {
    let d = z.discriminant();
    let candidates: Vec<(i64, i64)> = match target.characteristic() {
        0 => (1..=8).flat_map(|m| (0..=32).map(move |k| (k, m))).collect(),
        p => (0..p.min(4096) as i64).map(|k| (k, 1)).collect(),
    };
    for (k, m) in candidates {
        let y = target.from_int_like(k).checked_div(&target.from_int_like(m))?;
        if let SquareTest::Square(x) = target.add(&d.mul(&y).mul(&y)).square_test()? {
            return Ok(Some(z.lift(x).add(&z.mul(&z.lift(y)))));
        }
    }
    Ok(None)
}

/// `R` invertible and `D` in `F` with `conj(R)' W R = diag(D)`, for Hermitian `W`.
fn hermitian_diagonalize<S: Scalar>(w: &Matrix<P<S>>, z: &P<S>) -> Result<(Matrix<P<S>>, Vec<S>), JordanError> {
    let zero = z.zero_like();
    let h = |x: &[P<S>], y: &[P<S>]| -> Result<P<S>, JordanError> {
        let wy = w.mul_vec(y)?;
        let xc: Vec<P<S>> = x.iter().map(P::conj).collect();
        Ok(crate::linalg::dot(&xc, &wy, &zero)?)
    };
    let mut rest: Vec<Vec<P<S>>> = (0..3).map(|k| Matrix::identity(3, &zero).row(k).to_vec()).collect();
    let mut cols = Vec::new();
    let mut diag = Vec::new();
    while !rest.is_empty() {
        let mut pick = None;
        'search: for i in 0..rest.len() {
            if !h(&rest[i], &rest[i])?.is_zero() {
                pick = Some((i, rest[i].clone()));
                break;
            }
            for j in 0..rest.len() {
                for c in [z.one_like(), z.clone()] {
                    if i == j {
                        continue;
                    }
                    let v: Vec<P<S>> = rest[i].iter().zip(&rest[j]).map(|(a, b)| a.add(&c.mul(b))).collect();
                    if !h(&v, &v)?.is_zero() {
                        pick = Some((i, v));
                        break 'search;
                    }
                }
            }
        }
        let (drop, v) = pick.ok_or(JordanError::InvolutionInvalid("Hermitian form is degenerate"))?;
        rest.remove(drop);
        let hv = h(&v, &v)?;
        for u in rest.iter_mut() {
            let c = h(&v, u)?.checked_div(&hv)?;
            for (a, b) in u.iter_mut().zip(&v) {
                *a = a.sub(&c.mul(b));
            }
        }
        diag.push(hv.x().clone());
        cols.push(v);
    }
    let r = Matrix::from_rows(cols, &zero)?.transpose();
    Ok((r, diag))
}

/// Realizes the universal algebra at `p`, with `ψ²-αβγ` a non-square, inside
/// the `j`-fixed matrices. `involution` is `(T, t)`; `None` means `T = I`, `t = 1`.
pub fn build_hermitian_iso<S: Scalar>(
    p: &UniversalParams<S>,
    involution: Option<(Matrix<P<S>>, P<S>)>,
) -> Result<HermitianContext<S>, JordanError> {
    require_nondegenerate(p)?;
    let d = p.delta().neg();
    if let SquareTest::Square(_) = d.square_test()? {
        return Err(JordanError::PreconditionFailed("ψ²-αβγ is a square"));
    }
    let z = P::generator(d.clone())?;
    let zero = z.zero_like();
    let one = z.one_like();
    let (tm, t) = involution.unwrap_or_else(|| (Matrix::identity(3, &zero), one.clone()));
    if tm.rows() != 3 || !tm.is_square() {
        return Err(JordanError::InvolutionInvalid("T must be 3x3"));
    }
    if t.mul(&t.conj()) != one {
        return Err(JordanError::InvolutionInvalid("t conj(t) != 1"));
    }
    if conj_transpose(&tm) != tm.scale(&t)? {
        return Err(JordanError::InvolutionInvalid("conj(T)' != t T"));
    }
    let j = Involution::new(&tm)?;

    let lifted = p.map(|x| Ok::<_, JordanError>(z.lift(x.clone())))?;
    let split = build_m3_iso(&lifted)?;
    let x = &split.images;

    // The generators are p_k e_k' with p_k the k-th column of the k-th image.
    let cols = Matrix::from_fn(3, 3, &zero, |i, k| x[k].get(i, k).clone());
    let lam = [
        lifted.alpha.mul(&lifted.beta),
        lifted.beta.clone(),
        one.clone(),
    ];
    let t0 = Matrix::diag(&lam, &zero).mul(
        &cols
            .inverse()?
            .ok_or(JordanError::NoWitness("generator columns are dependent"))?,
    )?;

    // Make T Hermitian: conj(sT)' = sT when t = s / conj(s).
    let s = if t == one.neg() { z.clone() } else { one.add(&t) };
    let herm = tm.scale(&s)?;
    let (r0, d0) = hermitian_diagonalize(&t0, &z)?;
    let (r1, d1) = hermitian_diagonalize(&herm, &z)?;
    let mut scales = vec![zero.x().one_like()];
    for k in 0..3 {
        scales.push(d0[k].checked_div(&d1[k])?);
    }
    let mut u = None;
    'scale: for c in scales {
        let mut diag = Vec::new();
        for k in 0..3 {
            match norm_preimage(&c.mul(&d0[k]).checked_div(&d1[k])?, &z)? {
                Some(v) => diag.push(v),
                None => continue 'scale,
            }
        }
        u = Some(diag);
        break;
    }
    let u = u.ok_or(JordanError::NoWitness("the two Hermitian forms are not similar"))?;
    let r0_inv = r0.inverse()?.ok_or(JordanError::NoWitness("singular diagonalizer"))?;
    let conj = r1.mul(&Matrix::diag(&u, &zero))?.mul(&r0_inv)?;
    let conj_inv = conj.inverse()?.ok_or(JordanError::NoWitness("singular conjugator"))?;
    let images = x
        .iter()
        .map(|m| Ok(conj.mul(m)?.mul(&conj_inv)?))
        .collect::<Result<Vec<_>, JordanError>>()?;

    let mut checks = Vec::new();
    let mut log = |name: &str, ok: bool| checks.push((String::from(name), ok));

    let units: Vec<Matrix<P<S>>> = (0..18)
        .map(|k| {
            let mut e = vec![d.zero_like(); 18];
            e[k] = d.one_like();
            from_base(&e, &z)
        })
        .collect();
    let mut invol = true;
    let mut anti = true;
    for a in &units {
        invol &= j.apply(&j.apply(a)?)? == *a;
        for b in units.iter().step_by(5) {
            anti &= j.apply(&a.mul(b)?)? == j.apply(b)?.mul(&j.apply(a)?)?;
        }
    }
    log("involutive", invol);
    log("anti_automorphism", anti);
    if !invol {
        return Err(JordanError::InvolutionInvalid("j(j(X)) != X"));
    }
    if !anti {
        return Err(JordanError::InvolutionInvalid("j(XY) != j(Y) j(X)"));
    }

    let fzero = d.zero_like();
    let shift = Matrix::from_rows(
        units
            .iter()
            .map(|e| Ok(to_base(&j.apply(e)?.sub(e)?)))
            .collect::<Result<Vec<_>, JordanError>>()?,
        &fzero,
    )?
    .transpose();
    let fixed = shift.kernel();
    if fixed.dim() != DIM {
        return Err(JordanError::FixedSpaceWrongDimension(fixed.dim()));
    }
    let fixed_basis: Vec<Matrix<P<S>>> = fixed.basis().iter().map(|v| from_base(v, &z)).collect();

    let mut fixed_ok = true;
    for m in &images {
        fixed_ok &= j.apply(m)? == *m;
    }
    log("images_fixed", fixed_ok);

    let mut h_constants = Vec::new();
    let mut closed = true;
    for q in 0..DIM {
        for pp in 0..=q {
            let prod = to_base(&special_product(&fixed_basis[pp], &fixed_basis[q])?);
            match express(fixed.basis(), &prod, &fzero)? {
                Some(c) => h_constants.push((pp, q, sparse(&c))),
                None => closed = false,
            }
        }
    }
    log("closed_under_product", closed);
    if !closed {
        return Err(JordanError::VerificationFailed {
            check: "closed_under_product",
            cell: None,
        });
    }
    let h_labels = (0..DIM).map(|k| alloc::format!("h{k}")).collect();
    let h_alg = Algebra::from_constants(h_labels, &fzero, h_constants)?;

    let coords = |m: &Matrix<P<S>>| -> Result<Vec<S>, JordanError> {
        express(fixed.basis(), &to_base(m), &fzero)?.ok_or(JordanError::VerificationFailed {
            check: "images_fixed",
            cell: None,
        })
    };
    let axes = images[..3].iter().map(coords).collect::<Result<Vec<_>, _>>()?;
    let mut primitive = true;
    for a in &axes {
        primitive &= h_alg.is_idempotent(a)? && h_alg.eigenspace(a, &fzero.one_like())?.dim() == 1;
    }
    log("axes_primitive", primitive);

    let m = |x: &[S], y: &[S]| h_alg.multiply(x, y);
    let (a, b, c) = (&axes[0], &axes[1], &axes[2]);
    let ab = m(a, b)?;
    let bc = m(b, c)?;
    let ac = m(a, c)?;
    let (abc, bac, cab) = (m(a, &bc)?, m(b, &ac)?, m(c, &ab)?);
    let derived = vec![a.clone(), b.clone(), c.clone(), ab, bc, ac, abc, bac, cab];
    let independent = Matrix::from_rows(derived.clone(), &fzero)?.rank() == DIM;
    log("generators_span", independent);
    let mut table_ok = false;
    let mut cell = None;
    if independent {
        let mut constants = Vec::new();
        for q in 0..DIM {
            for pp in 0..=q {
                let prod = h_alg.multiply(&derived[pp], &derived[q])?;
                let cf = express(&derived, &prod, &fzero)?.expect("derived vectors span H");
                constants.push((pp, q, sparse(&cf)));
            }
        }
        let got = Algebra::from_constants(labels(), &fzero, constants)?;
        cell = first_mismatch(&got, &build_universal(p)?);
        table_ok = cell.is_none();
    }
    log("products_match_table", table_ok);
    if !table_ok {
        return Err(JordanError::VerificationFailed {
            check: "products_match_table",
            cell,
        });
    }
    Ok(HermitianContext {
        discriminant: d,
        involution: tm,
        t,
        split,
        conjugator: conj,
        images,
        fixed_basis,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeFieldElem, Rational};

    fn f7(k: i64) -> PrimeFieldElem {
        PrimeFieldElem::new(k, 7).unwrap()
    }

    #[test]
    fn f7_identity_involution() {
        let p = UniversalParams::new(f7(1), f7(1), f7(1), f7(2));
        let h = build_hermitian_iso(&p, None).unwrap();
        assert_eq!(h.fixed_dim(), 9);
        assert!(h.passed(), "{:?}", h.checks);
        for m in &h.images {
            assert_eq!(conj_transpose(m), *m);
        }
    }

    #[test]
    fn f7_twisted_involution() {
        let p = UniversalParams::new(f7(1), f7(1), f7(1), f7(2));
        let z = P::generator(f7(3)).unwrap();
        // t = z^2 / 3 ... pick t = -1 with T = z I, conj(T)' = -T
        let tm = Matrix::identity(3, &z.zero_like()).scale(&z).unwrap();
        let h = build_hermitian_iso(&p, Some((tm, z.one_like().neg()))).unwrap();
        assert!(h.passed());
    }

    #[test]
    fn other_primes() {
        // 11: 3 is a square, 5 is not
        let f = |k| PrimeFieldElem::new(k, 11).unwrap();
        let p = UniversalParams::new(f(1), f(1), f(2), f(3));
        // psi^2 - alpha beta gamma = 7, a non-residue mod 11
        assert!(build_hermitian_iso(&p, None).unwrap().passed());
    }

    #[test]
    fn invalid_involutions() {
        let p = UniversalParams::new(f7(1), f7(1), f7(1), f7(2));
        let z = P::generator(f7(3)).unwrap();
        let zero = z.zero_like();
        let bad = Matrix::identity(3, &zero).scale(&z).unwrap();
        assert!(matches!(
            build_hermitian_iso(&p, Some((bad, z.one_like()))),
            Err(JordanError::InvolutionInvalid(_))
        ));
        assert!(matches!(
            build_hermitian_iso(&p, Some((Matrix::zeros(3, 3, &zero), z.one_like()))),
            Err(JordanError::InvolutionInvalid(_))
        ));
    }

    #[test]
    fn square_discriminant_rejected() {
        let p = UniversalParams::from_ints(2, 2, 2, 3);
        assert!(matches!(build_hermitian_iso(&p, None), Err(JordanError::PreconditionFailed(_))));
    }

    #[test]
    fn rational_real_extension() {
        // psi^2 - alpha beta gamma = 2
        let p = UniversalParams::new(
            Rational::from_int(1),
            Rational::from_int(1),
            Rational::from_int(7),
            Rational::from_int(3),
        );
        let h = build_hermitian_iso(&p, None).unwrap();
        assert!(h.passed());
    }
}
