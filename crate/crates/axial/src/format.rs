//! JSON encodings of algebras, matrices and reports.
//!
//! Scalars are always written as strings: `"2/3"` over Q, the residue `"5"`
//! over a prime field, and an expanded polynomial or `"num | den"` over the
//! parameter field.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Context};
use axial_core::algebra::Algebra;
use axial_core::field::{FieldError, PrimeFieldElem, QuadExt, RatFunc, Rational, Scalar};
use axial_core::frobenius::{RadicalCase, RadicalReport};
use axial_core::jordan::{HermitianContext, IsoWitness};
use axial_core::linalg::Matrix;
use axial_core::universal::{DerivedTable, EtaMode, UniversalParams, LABELS};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
    /// Rational functions in alpha, beta, gamma, psi, eta.
    Symbolic,
}

impl FromStr for FieldSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s.trim() {
            "q" | "Q" => Ok(FieldSpec::Rational),
            "symbolic" | "q(alpha,beta,gamma,psi,eta)" => Ok(FieldSpec::Symbolic),
            other => {
                let Some(p) = other.strip_prefix("fp:") else {
                    bail!("unknown field {other:?}; expected q, fp:P or symbolic");
                };
                let p: u64 = p.parse().with_context(|| format!("bad modulus in {other:?}"))?;
                Ok(FieldSpec::Prime(PrimeFieldElem::check_modulus(p)?))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
            FieldSpec::Symbolic => f.write_str("q(alpha,beta,gamma,psi,eta)"),
        }
    }
}

/// Scalars that can be written into a report.
pub trait TextScalar: Scalar {
    fn to_text(&self) -> String;
}

/// Scalars that can also be read back, given an element of the target field.
pub trait CliScalar: TextScalar {
    fn parse_text(zero: &Self, s: &str) -> Result<Self, FieldError>;
    fn spec(zero: &Self) -> FieldSpec;
}

impl TextScalar for Rational {
    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl CliScalar for Rational {
    fn parse_text(_: &Self, s: &str) -> Result<Self, FieldError> {
        s.parse()
    }

    fn spec(_: &Self) -> FieldSpec {
        FieldSpec::Rational
    }
}

impl TextScalar for PrimeFieldElem {
    fn to_text(&self) -> String {
        self.value().to_string()
    }
}

impl CliScalar for PrimeFieldElem {
    fn parse_text(zero: &Self, s: &str) -> Result<Self, FieldError> {
        if s.contains(" mod ") {
            let x: PrimeFieldElem = s.parse()?;
            if x.modulus() != zero.modulus() {
                return Err(FieldError::FieldMismatch(x.field_name(), zero.field_name()));
            }
            return Ok(x);
        }
        zero.from_rational_like(&s.parse()?)
    }

    fn spec(zero: &Self) -> FieldSpec {
        FieldSpec::Prime(zero.modulus())
    }
}

impl TextScalar for RatFunc {
    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl CliScalar for RatFunc {
    fn parse_text(_: &Self, s: &str) -> Result<Self, FieldError> {
        s.parse()
    }

    fn spec(_: &Self) -> FieldSpec {
        FieldSpec::Symbolic
    }
}

impl<F: TextScalar> TextScalar for QuadExt<F> {
    fn to_text(&self) -> String {
        match (self.x().is_zero(), self.y().is_zero()) {
            (_, true) => self.x().to_text(),
            (true, false) => format!("{}*z", self.y().to_text()),
            (false, false) => format!("{} + {}*z", self.x().to_text(), self.y().to_text()),
        }
    }
}

pub fn texts<S: TextScalar>(v: &[S]) -> Vec<String> {
    v.iter().map(TextScalar::to_text).collect()
}

pub fn params_json<S: TextScalar>(p: &UniversalParams<S>) -> Value {
    json!({
        "alpha": p.alpha.to_text(),
        "beta": p.beta.to_text(),
        "gamma": p.gamma.to_text(),
        "psi": p.psi.to_text(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix<S: TextScalar>(m: &Matrix<S>) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_rows().iter().map(|r| texts(r)).collect(),
        }
    }

    pub fn to_matrix<S: CliScalar>(&self, zero: &S) -> anyhow::Result<Matrix<S>> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            bail!("matrix shape does not match rows = {}, cols = {}", self.rows, self.cols);
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| S::parse_text(zero, s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if self.rows == 0 {
            return Ok(Matrix::zeros(0, self.cols, zero));
        }
        Ok(Matrix::from_rows(rows, zero)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub schema_version: u32,
    pub field: String,
    pub basis: Vec<String>,
    pub constants: Vec<ConstantJson>,
    /// Parameters of a universal algebra, when the file holds one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<[String; 4]>,
}

impl AlgebraJson {
    pub fn from_algebra<S: CliScalar>(alg: &Algebra<S>, params: Option<&UniversalParams<S>>) -> Self {
        let constants = alg
            .constants()
            .filter(|(_, _, t)| !t.is_empty())
            .map(|(i, j, t)| ConstantJson {
                i,
                j,
                terms: t.iter().map(|(k, c)| (*k, c.to_text())).collect(),
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            field: S::spec(alg.zero_elem()).to_string(),
            basis: alg.labels().to_vec(),
            constants,
            params: params.map(|p| [&p.alpha, &p.beta, &p.gamma, &p.psi].map(TextScalar::to_text)),
        }
    }

    pub fn field_spec(&self) -> anyhow::Result<FieldSpec> {
        self.field.parse()
    }

    /// Parses every constant into the field of `zero`; products given for both
    /// `(i, j)` and `(j, i)` must agree.
    pub fn to_algebra<S: CliScalar>(&self, zero: &S) -> anyhow::Result<Algebra<S>> {
        if self.field_spec()? != S::spec(zero) {
            bail!("algebra is over {}, expected {}", self.field, S::spec(zero));
        }
        let mut constants = Vec::with_capacity(self.constants.len());
        for c in &self.constants {
            let terms = c
                .terms
                .iter()
                .map(|(k, s)| {
                    S::parse_text(zero, s)
                        .map(|v| (*k, v))
                        .with_context(|| format!("product ({}, {}), coordinate {k}", c.i, c.j))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            constants.push((c.i, c.j, terms));
        }
        Ok(Algebra::from_constants(self.basis.clone(), zero, constants)?)
    }

    pub fn params<S: CliScalar>(&self, zero: &S) -> anyhow::Result<Option<UniversalParams<S>>> {
        let Some(p) = &self.params else {
            return Ok(None);
        };
        let v = p
            .iter()
            .map(|s| S::parse_text(zero, s))
            .collect::<Result<Vec<_>, _>>()?;
        let [a, b, c, psi]: [S; 4] = v.try_into().expect("four parameters");
        Ok(Some(UniversalParams::new(a, b, c, psi)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InconsistencyJson {
    pub cell: (usize, usize),
    pub route: String,
    pub difference: Vec<String>,
    pub vanishes_at_half: bool,
    pub in_relation_ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedTableJson {
    pub schema_version: u32,
    pub eta: String,
    pub field: String,
    pub basis: Vec<String>,
    pub constants: Vec<ConstantJson>,
    pub complete: bool,
    pub inconsistencies: Vec<InconsistencyJson>,
}

impl DerivedTableJson {
    pub fn from_table(t: &DerivedTable) -> Self {
        let constants = t
            .entries()
            .filter(|(_, _, v)| v.iter().any(|c| !c.is_zero()))
            .map(|(i, j, v)| ConstantJson {
                i,
                j,
                terms: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.to_string()))
                    .collect(),
            })
            .collect();
        let inconsistencies = t
            .inconsistencies()
            .iter()
            .map(|x| InconsistencyJson {
                cell: x.cell,
                route: x.route.to_string(),
                difference: x.difference.iter().map(ToString::to_string).collect(),
                vanishes_at_half: x.vanishes_at_half,
                in_relation_ideal: x.in_relation_ideal,
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            eta: match t.mode() {
                EtaMode::Half => "1/2".into(),
                EtaMode::Symbolic => "symbolic".into(),
            },
            field: FieldSpec::Symbolic.to_string(),
            basis: LABELS.iter().map(|s| s.to_string()).collect(),
            constants,
            complete: t.is_complete(),
            inconsistencies,
        }
    }

    /// The table as an algebra over the parameter field.
    pub fn to_algebra(&self) -> anyhow::Result<Algebra<RatFunc>> {
        AlgebraJson {
            schema_version: self.schema_version,
            field: self.field.clone(),
            basis: self.basis.clone(),
            constants: self.constants.clone(),
            params: None,
        }
        .to_algebra(&RatFunc::zero())
    }
}

pub fn case_tag(case: &RadicalCase) -> String {
    match case {
        RadicalCase::Nondegenerate => "nondegenerate".into(),
        RadicalCase::Row(r) => r.condition().into(),
        RadicalCase::Uncatalogued => "uncatalogued".into(),
    }
}

pub fn radical_json<S: TextScalar>(r: &RadicalReport<S>) -> Value {
    json!({
        "rank": r.rank,
        "case": case_tag(&r.case),
        "permutation": r.permutation.0,
        "radical_basis": r.radical.basis().iter().map(|v| texts(v)).collect::<Vec<_>>(),
        "is_ideal": r.is_ideal,
        "printed_rank": r.printed_rank,
        "table_span_matches": r.table_span_matches,
    })
}

fn checks_json(checks: &[(String, bool)]) -> Value {
    Value::Object(checks.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect())
}

fn images_json<S: TextScalar>(images: &[Matrix<S>]) -> Value {
    Value::Object(
        LABELS
            .iter()
            .zip(images)
            .map(|(l, m)| (l.to_string(), json!(MatrixJson::from_matrix(m))))
            .collect(),
    )
}

pub fn iso_json<S: TextScalar>(w: &IsoWitness<S>) -> Value {
    json!({
        "t": w.t.to_text(),
        "images": images_json(&w.images),
        "checks": checks_json(&w.checks),
    })
}

pub fn hermitian_json<S: TextScalar>(h: &HermitianContext<S>) -> Value {
    json!({
        "discriminant": h.discriminant.to_text(),
        "involution": MatrixJson::from_matrix(&h.involution),
        "t": h.t.to_text(),
        "conjugator": MatrixJson::from_matrix(&h.conjugator),
        "images": images_json(&h.images),
        "fixed_dim": h.fixed_dim(),
        "split": iso_json(&h.split),
        "checks": checks_json(&h.checks),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use axial_core::universal::{build_symbolic, build_universal};

    #[test]
    fn field_descriptors() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("fp:7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("symbolic".parse::<FieldSpec>().unwrap(), FieldSpec::Symbolic);
        assert!("fp:9".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
        for s in [FieldSpec::Rational, FieldSpec::Prime(11), FieldSpec::Symbolic] {
            assert_eq!(s.to_string().parse::<FieldSpec>().unwrap(), s);
        }
    }

    #[test]
    fn prime_scalars() {
        let z = PrimeFieldElem::new(0, 7).unwrap();
        assert_eq!(PrimeFieldElem::parse_text(&z, "1/2").unwrap().value(), 4);
        assert_eq!(PrimeFieldElem::parse_text(&z, "3 mod 7").unwrap().value(), 3);
        assert!(PrimeFieldElem::parse_text(&z, "3 mod 11").is_err());
        assert!(PrimeFieldElem::parse_text(&z, "1/7").is_err());
    }

    #[test]
    fn algebra_round_trip() {
        let p = UniversalParams::new(
            Rational::new(2, 3).unwrap(),
            Rational::from_int(-1),
            Rational::from_int(5),
            Rational::new(1, 4).unwrap(),
        );
        let alg = build_universal(&p).unwrap();
        let j = AlgebraJson::from_algebra(&alg, Some(&p));
        let text = serde_json::to_string(&j).unwrap();
        let back: AlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_algebra(&Rational::zero()).unwrap(), alg);
        assert_eq!(back.params(&Rational::zero()).unwrap(), Some(p));

        let sym = build_symbolic();
        let j = AlgebraJson::from_algebra(&sym, None);
        assert_eq!(j.to_algebra(&RatFunc::zero()).unwrap(), sym);
    }

    #[test]
    fn load_rejects_wrong_field_and_asymmetry() {
        let alg = build_universal(&UniversalParams::from_ints(1, 2, 3, 4)).unwrap();
        let mut j = AlgebraJson::from_algebra(&alg, None);
        assert!(j.to_algebra(&PrimeFieldElem::new(0, 7).unwrap()).is_err());
        j.constants[0].terms[0].1 = "alpha".into();
        assert!(j.to_algebra(&Rational::zero()).is_err());
        let mut j = AlgebraJson::from_algebra(&alg, None);
        let c = j.constants.iter().find(|c| c.i != c.j).unwrap().clone();
        j.constants.push(ConstantJson {
            i: c.j,
            j: c.i,
            terms: vec![(0, "17".into())],
        });
        assert!(j.to_algebra(&Rational::zero()).is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let m = Matrix::from_rows(
            vec![vec![Rational::from_int(1), Rational::new(-1, 2).unwrap()]],
            &Rational::zero(),
        )
        .unwrap();
        let j = MatrixJson::from_matrix(&m);
        assert_eq!(j.entries, vec![vec!["1".to_string(), "-1/2".to_string()]]);
        assert_eq!(j.to_matrix(&Rational::zero()).unwrap(), m);
    }

    #[test]
    fn quadratic_text() {
        let d = Rational::from_int(2);
        let z = QuadExt::generator(d.clone()).unwrap();
        assert_eq!(z.to_text(), "1*z");
        let x = QuadExt::new(Rational::from_int(3), Rational::new(1, 2).unwrap(), d).unwrap();
        assert_eq!(x.to_text(), "3 + 1/2*z");
    }
}
