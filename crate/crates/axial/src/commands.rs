//! Command implementations. Each returns an [`Outcome`]; mathematical failures
//! are reported in-band, while `Err` means the invocation itself was unusable.

use std::time::Instant;

use anyhow::bail;
use axial_core::algebra::{Algebra, FusionRule};
use axial_core::field::{Rational, Scalar};
use axial_core::frobenius::{
    association_failures, gram_closed_form, gram_det, gram_det_formula, identity_element, projection_graph,
    radical, simplicity, solve_frobenius, IdentityVerdict, Simplicity,
};
use axial_core::jordan::{jordan_check, jordan_sampled, jordan_sampled_universal, theorem2_dispatch, JordanWitness, Theorem2};
use axial_core::linalg::Matrix;
use axial_core::universal::{build_universal, derive_table, eta_relations, structure_vector, EtaMode, UniversalParams};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::format::{
    hermitian_json, iso_json, params_json, radical_json, texts, AlgebraJson, CliScalar, DerivedTableJson, FieldSpec,
    MatrixJson, TextScalar, SCHEMA_VERSION,
};

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub result: Value,
    /// File contents for `--out`, when the command produces one.
    pub artifact: Option<Value>,
}

impl Outcome {
    fn new(passed: bool, result: Value) -> Self {
        Self {
            passed,
            result,
            artifact: None,
        }
    }

    fn failed(err: impl std::fmt::Display) -> Self {
        Self::new(false, json!({ "error": err.to_string() }))
    }

    fn with_artifact(mut self, v: Value) -> Self {
        self.artifact = Some(v);
        self
    }

    /// The full report printed on stdout.
    pub fn report(&self, command: &[String], started: Instant) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "passed": self.passed,
            "result": self.result,
            "elapsed_ms": started.elapsed().as_millis() as u64,
        })
    }
}

/// Runs `$body` with `$zero` bound to the zero of the selected field.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $zero:ident => $body:expr) => {
        match $spec {
            $crate::format::FieldSpec::Rational => {
                let $zero = axial_core::field::Rational::zero();
                $body
            }
            $crate::format::FieldSpec::Prime(p) => {
                let $zero = axial_core::field::PrimeFieldElem::new(0, u64::from(p))?;
                $body
            }
            $crate::format::FieldSpec::Symbolic => {
                let $zero = axial_core::field::RatFunc::zero();
                $body
            }
        }
    };
}

/// Parameter strings as given on the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamStrings {
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub gamma: Option<String>,
    pub psi: Option<String>,
}

impl ParamStrings {
    pub fn all(alpha: &str, beta: &str, gamma: &str, psi: &str) -> Self {
        Self {
            alpha: Some(alpha.into()),
            beta: Some(beta.into()),
            gamma: Some(gamma.into()),
            psi: Some(psi.into()),
        }
    }

    fn values(&self) -> [&Option<String>; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.psi]
    }

    /// True when no value is given or every value is `symbolic`.
    pub fn is_symbolic(&self) -> bool {
        self.values().iter().all(|v| v.as_deref().is_none_or(|s| s == "symbolic"))
    }

    /// Concrete parameters in the field of `zero`.
    pub fn parse<S: CliScalar>(&self, zero: &S) -> anyhow::Result<UniversalParams<S>> {
        let names = ["alpha", "beta", "gamma", "psi"];
        let mut out = Vec::with_capacity(4);
        for (name, v) in names.iter().zip(self.values()) {
            let Some(s) = v.as_deref().filter(|s| *s != "symbolic") else {
                bail!("--{name} is required and must be concrete");
            };
            out.push(S::parse_text(zero, s).map_err(|e| anyhow::anyhow!("--{name} {s:?}: {e}"))?);
        }
        let [a, b, c, psi]: [S; 4] = out.try_into().expect("four parameters");
        Ok(UniversalParams::new(a, b, c, psi))
    }
}

/// Field for a parameter set: symbolic parameters force the parameter field.
pub fn resolve_field(field: FieldSpec, params: &ParamStrings, symbolic_ok: bool) -> anyhow::Result<FieldSpec> {
    match (params.is_symbolic(), field) {
        (true, _) if !symbolic_ok => bail!("this command needs concrete --alpha, --beta, --gamma and --psi"),
        (true, FieldSpec::Rational) | (true, FieldSpec::Symbolic) => Ok(FieldSpec::Symbolic),
        (true, FieldSpec::Prime(_)) => bail!("symbolic parameters need the symbolic field"),
        (false, FieldSpec::Symbolic) => bail!("concrete parameters need --field q or fp:P"),
        (false, f) => Ok(f),
    }
}

/// Universal parameters in the field of `zero`, symbolic for the parameter field.
pub fn universal_params<S: CliScalar>(zero: &S, params: &ParamStrings) -> anyhow::Result<UniversalParams<S>> {
    if S::spec(zero) == FieldSpec::Symbolic {
        let sym = UniversalParams::symbolic();
        return Ok(sym.map(|c| S::parse_text(zero, &c.to_string()))?);
    }
    params.parse(zero)
}

pub fn build<S: CliScalar>(p: &UniversalParams<S>) -> Outcome {
    match build_universal(p) {
        Ok(alg) => Outcome::new(
            true,
            json!({
                "field": S::spec(&p.zero()).to_string(),
                "params": params_json(p),
                "dim": alg.dim(),
                "basis": alg.labels(),
            }),
        )
        .with_artifact(json!(AlgebraJson::from_algebra(&alg, Some(p)))),
        Err(e) => Outcome::failed(e),
    }
}

pub fn derive(eta: &str) -> anyhow::Result<Outcome> {
    let mode = match eta {
        "1/2" => EtaMode::Half,
        "symbolic" => EtaMode::Symbolic,
        other => bail!("--eta must be 1/2 or symbolic, got {other:?}"),
    };
    let table = match derive_table(mode) {
        Ok(t) => t,
        Err(e) => return Ok(Outcome::failed(e)),
    };
    let file = DerivedTableJson::from_table(&table);
    let mismatches = match mode {
        EtaMode::Half => table.mismatches(structure_vector),
        EtaMode::Symbolic => table.specialize_eta(&Rational::new(1, 2)?).mismatches(structure_vector),
    };
    let stray = table.inconsistencies().iter().filter(|x| !x.vanishes_at_half).count();
    let passed = table.is_complete()
        && mismatches.is_empty()
        && stray == 0
        && (mode == EtaMode::Symbolic || table.inconsistencies().is_empty());
    Ok(Outcome::new(
        passed,
        json!({
            "eta": file.eta,
            "cells": table.len(),
            "complete": table.is_complete(),
            "mismatches_at_half": mismatches,
            "inconsistencies": file.inconsistencies,
        }),
    )
    .with_artifact(json!(file)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Fusion,
    Jordan,
    Frobenius,
    Seress,
}

fn axes<S: Scalar>(alg: &Algebra<S>) -> Vec<Vec<S>> {
    (0..3.min(alg.dim())).map(|k| alg.basis_vector(k)).collect()
}

fn half<S: Scalar>(zero: &S) -> S {
    zero.from_int_like(2).inv().expect("odd characteristic")
}

pub fn verify<S: CliScalar>(
    alg: &Algebra<S>,
    params: Option<&UniversalParams<S>>,
    suite: Suite,
    sampled: Option<(usize, u64)>,
) -> Outcome {
    let r = match suite {
        Suite::Fusion => verify_fusion(alg),
        Suite::Seress => verify_seress(alg),
        Suite::Jordan => verify_jordan(alg, sampled),
        Suite::Frobenius => verify_frobenius(alg, params),
    };
    r.unwrap_or_else(Outcome::failed)
}

fn verify_fusion<S: CliScalar>(alg: &Algebra<S>) -> anyhow::Result<Outcome> {
    let eta = half(alg.zero_elem());
    let mut passed = true;
    let mut out = Vec::new();
    for a in axes(alg) {
        let label = &alg.labels()[out.len()];
        let d = alg.peirce(&a, &eta)?;
        let report = alg.check_fusion(&d)?;
        let primitive = alg.is_primitive_axis(&a, &eta)?;
        passed &= report.passed() && primitive;
        let (one, zero, eta_dim) = d.dims();
        let rules: serde_json::Map<String, Value> = FusionRule::ALL
            .iter()
            .zip(&report.checks)
            .map(|(r, c)| (r.name().to_string(), Value::Bool(c.passed())))
            .collect();
        let witnesses: Vec<Value> = report
            .checks
            .iter()
            .filter_map(|c| {
                c.witness.as_ref().map(|w| {
                    json!({
                        "rule": c.rule.name(),
                        "left": texts(&w.left),
                        "right": texts(&w.right),
                        "product": texts(&w.product),
                    })
                })
            })
            .collect();
        out.push(json!({
            "axis": label,
            "dims": { "1": one, "0": zero, "1/2": eta_dim },
            "primitive": primitive,
            "rules": rules,
            "witnesses": witnesses,
        }));
    }
    Ok(Outcome::new(passed, json!({ "suite": "fusion", "axes": out })))
}

fn verify_seress<S: CliScalar>(alg: &Algebra<S>) -> anyhow::Result<Outcome> {
    let eta = half(alg.zero_elem());
    let mut passed = true;
    let mut out = Vec::new();
    for a in axes(alg) {
        let label = &alg.labels()[out.len()];
        let d = alg.peirce(&a, &eta)?;
        let bad = alg.seress_failures(&d)?;
        passed &= bad.is_empty();
        let witnesses: Vec<Value> = bad
            .iter()
            .map(|(i, y)| json!({ "x": alg.labels()[*i], "y": texts(y) }))
            .collect();
        out.push(json!({ "axis": label, "failures": witnesses }));
    }
    Ok(Outcome::new(passed, json!({ "suite": "seress", "axes": out })))
}

fn witness_json<S: TextScalar>(w: &JordanWitness<S>) -> Value {
    match w {
        JordanWitness::Monomial { x, y, residual } => json!({ "x": x, "y": y, "residual": texts(residual) }),
        JordanWitness::Sample { params, x, y, residual } => json!({
            "params": params.as_ref().map(params_json),
            "x": texts(x),
            "y": texts(y),
            "residual": texts(residual),
        }),
    }
}

fn verify_jordan<S: CliScalar>(alg: &Algebra<S>, sampled: Option<(usize, u64)>) -> anyhow::Result<Outcome> {
    let report = match sampled {
        None => jordan_check(alg)?,
        Some((n, seed)) => jordan_sampled(alg, n, &mut StdRng::seed_from_u64(seed))?,
    };
    let mode = if sampled.is_some() { "sampled" } else { "symbolic" };
    Ok(Outcome::new(
        report.passed(),
        json!({
            "suite": "jordan",
            "mode": mode,
            "checked": report.checked,
            "failures": report.failures.iter().map(witness_json).collect::<Vec<_>>(),
        }),
    ))
}

/// Sampled check of the universal algebra at fresh rational parameters.
pub fn verify_jordan_universal(points: usize, seed: u64) -> Outcome {
    match jordan_sampled_universal(points, &mut StdRng::seed_from_u64(seed)) {
        Ok(report) => Outcome::new(
            report.passed(),
            json!({
                "suite": "jordan",
                "mode": "sampled",
                "checked": report.checked,
                "failures": report.failures.iter().map(witness_json).collect::<Vec<_>>(),
            }),
        ),
        Err(e) => Outcome::failed(e),
    }
}

fn verify_frobenius<S: CliScalar>(alg: &Algebra<S>, params: Option<&UniversalParams<S>>) -> anyhow::Result<Outcome> {
    let g = solve_frobenius(alg, &axes(alg))?;
    let failures = association_failures(alg, &g.matrix)?;
    let closed = params.map(gram_closed_form).transpose()?.map(|c| c == g.matrix);
    Ok(Outcome::new(
        failures.is_empty() && closed != Some(false),
        json!({
            "suite": "frobenius",
            "gram": MatrixJson::from_matrix(&g.matrix),
            "association_failures": failures,
            "matches_closed_form": closed,
        }),
    ))
}

pub fn gram<S: CliScalar>(p: &UniversalParams<S>) -> Outcome {
    let run = || -> anyhow::Result<Outcome> {
        let g = gram_closed_form(p)?;
        let det = gram_det(p)?;
        let formula = gram_det_formula(p);
        let m = MatrixJson::from_matrix(&g);
        Ok(Outcome::new(
            det == formula,
            json!({
                "gram": m,
                "det": det.to_text(),
                "det_formula": formula.to_text(),
                "lambda": p.lambda().to_text(),
                "delta": p.delta().to_text(),
            }),
        )
        .with_artifact(json!({ "schema_version": SCHEMA_VERSION, "rows": m.rows, "cols": m.cols, "entries": m.entries })))
    };
    run().unwrap_or_else(Outcome::failed)
}

pub fn radical_cmd<S: CliScalar>(p: &UniversalParams<S>) -> Outcome {
    let run = || -> anyhow::Result<Outcome> {
        let alg = build_universal(p)?;
        let r = radical(&alg, &gram_closed_form(p)?, Some(p))?;
        let passed = r.is_ideal && r.table_span_matches != Some(false) && r.printed_rank.is_none_or(|k| k == r.rank);
        Ok(Outcome::new(passed, radical_json(&r)))
    };
    run().unwrap_or_else(Outcome::failed)
}

pub fn identity<S: CliScalar>(p: &UniversalParams<S>) -> Outcome {
    let run = || -> anyhow::Result<Outcome> {
        let alg = build_universal(p)?;
        let c = identity_element(&alg, p)?;
        let (kind, v) = match &c.verdict {
            IdentityVerdict::Identity(v) => ("identity", v),
            IdentityVerdict::Annihilator(v) => ("annihilator", v),
        };
        Ok(Outcome::new(
            true,
            json!({ "e": texts(&c.e), "lambda": c.lambda.to_text(), "verdict": kind, "element": texts(v) }),
        ))
    };
    run().unwrap_or_else(Outcome::failed)
}

pub fn simple<S: CliScalar>(p: &UniversalParams<S>) -> Outcome {
    let run = || -> anyhow::Result<Outcome> {
        let alg = build_universal(p)?;
        let g = solve_frobenius(&alg, &axes(&alg))?;
        let graph = projection_graph(&g, &["a", "b", "c"])?;
        let det_zero = gram_det_formula(p).is_zero();
        let (verdict, radical_dim, consistent) = match simplicity(&g, &graph) {
            Simplicity::Simple => ("simple", 0, !det_zero),
            Simplicity::NotSimple(r) => ("not simple", r.dim(), det_zero),
            Simplicity::Inconclusive => ("inconclusive", 0, true),
        };
        Ok(Outcome::new(
            consistent,
            json!({
                "connected": graph.is_connected(),
                "edges": graph.edges,
                "verdict": verdict,
                "radical_dim": radical_dim,
            }),
        ))
    };
    run().unwrap_or_else(Outcome::failed)
}

pub fn iso<S: CliScalar>(p: &UniversalParams<S>) -> Outcome {
    match theorem2_dispatch(p) {
        Ok(Theorem2::M3Plus(w)) => Outcome::new(w.passed(), json!({ "kind": "M3+", "witness": iso_json(&w) })),
        Ok(Theorem2::Hermitian(h)) => {
            Outcome::new(h.passed(), json!({ "kind": "hermitian", "witness": hermitian_json(&h) }))
        }
        Ok(Theorem2::NotSimple(r)) => {
            let ok = r.is_ideal && r.table_span_matches != Some(false);
            Outcome::new(ok, json!({ "kind": "not simple", "radical": radical_json(&r) }))
        }
        Err(e) => Outcome::failed(e),
    }
}

pub fn quotient<S: CliScalar>(p: &UniversalParams<S>) -> Outcome {
    let run = || -> anyhow::Result<Outcome> {
        let alg = build_universal(p)?;
        let g = gram_closed_form(p)?;
        let r = radical(&alg, &g, Some(p))?;
        let q = alg.quotient(&r.radical)?;
        let kept = &q.complement;
        let induced = Matrix::from_fn(kept.len(), kept.len(), &p.zero(), |i, j| g.get(kept[i], kept[j]).clone());
        let nondegenerate = induced.rank() == kept.len();
        Ok(Outcome::new(
            nondegenerate && q.algebra.dim() == r.rank,
            json!({
                "dim": q.algebra.dim(),
                "basis": q.algebra.labels(),
                "radical": radical_json(&r),
                "induced_form_nondegenerate": nondegenerate,
            }),
        )
        .with_artifact(json!(AlgebraJson::from_algebra(&q.algebra, None))))
    };
    run().unwrap_or_else(Outcome::failed)
}

pub fn relations() -> Outcome {
    match eta_relations() {
        Ok(r) => Outcome::new(
            r.holds() && r.relations.iter().all(Option::is_some),
            json!({
                "differences": r.differences.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "expected": r.expected.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "relations": r.relations.iter().map(|x| x.as_ref().map(ToString::to_string)).collect::<Vec<_>>(),
                "holds": r.holds(),
            }),
        ),
        Err(e) => Outcome::failed(e),
    }
}

/// Loads an algebra file and runs a verification suite on it.
pub fn verify_file(text: &str, suite: Suite, sampled: Option<(usize, u64)>) -> anyhow::Result<Outcome> {
    let file: AlgebraJson = serde_json::from_str(text)?;
    if file.schema_version != SCHEMA_VERSION {
        bail!("unsupported schema_version {}", file.schema_version);
    }
    with_field!(file.field_spec()?, zero => {
        let alg = file.to_algebra(&zero)?;
        let params = file.params(&zero)?;
        Ok(verify(&alg, params.as_ref(), suite, sampled))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use axial_core::field::PrimeFieldElem;

    fn q_params(a: &str, b: &str, c: &str, psi: &str) -> UniversalParams<Rational> {
        ParamStrings::all(a, b, c, psi).parse(&Rational::zero()).unwrap()
    }

    #[test]
    fn field_resolution() {
        let none = ParamStrings::default();
        let some = ParamStrings::all("1", "1", "1", "0");
        assert_eq!(resolve_field(FieldSpec::Rational, &none, true).unwrap(), FieldSpec::Symbolic);
        assert!(resolve_field(FieldSpec::Rational, &none, false).is_err());
        assert!(resolve_field(FieldSpec::Symbolic, &some, true).is_err());
        assert_eq!(resolve_field(FieldSpec::Prime(7), &some, false).unwrap(), FieldSpec::Prime(7));
        let partial = ParamStrings {
            alpha: Some("1".into()),
            ..ParamStrings::default()
        };
        assert!(partial.parse(&Rational::zero()).is_err());
    }

    #[test]
    fn radical_at_origin() {
        let o = radical_cmd(&q_params("0", "0", "0", "0"));
        assert!(o.passed);
        assert_eq!(o.result["rank"], 3);
        assert_eq!(o.result["case"], "ψ=α=β=γ=0");
    }

    #[test]
    fn iso_kinds() {
        let o = iso(&q_params("2", "2", "2", "3"));
        assert!(o.passed);
        assert_eq!(o.result["kind"], "M3+");
        let f = PrimeFieldElem::new(0, 7).unwrap();
        let p = ParamStrings::all("1", "1", "1", "2").parse(&f).unwrap();
        let o = iso(&p);
        assert!(o.passed, "{}", o.result);
        assert_eq!(o.result["kind"], "hermitian");
        assert_eq!(o.result["witness"]["fixed_dim"], 9);
        let o = iso(&q_params("1", "1", "1", "1"));
        assert_eq!(o.result["kind"], "not simple");
    }

    #[test]
    fn identity_and_simplicity() {
        let o = identity(&q_params("2", "2", "2", "3"));
        assert_eq!(o.result["verdict"], "identity");
        assert_eq!(o.result["lambda"], "-1");
        let o = identity(&q_params("1", "1", "1", "1"));
        assert_eq!(o.result["verdict"], "annihilator");
        assert!(simple(&q_params("2", "2", "2", "3")).passed);
        let o = simple(&q_params("1", "1", "4", "2"));
        assert!(o.passed);
        assert_eq!(o.result["verdict"], "not simple");
    }

    #[test]
    fn quotient_dimension_is_rank() {
        let o = quotient(&q_params("0", "0", "0", "0"));
        assert!(o.passed, "{}", o.result);
        assert_eq!(o.result["dim"], 3);
        let alg: AlgebraJson = serde_json::from_value(o.artifact.unwrap()).unwrap();
        assert_eq!(alg.basis.len(), 3);
    }

    #[test]
    fn concrete_suites_pass() {
        let p = q_params("1/2", "3", "-2", "5/3");
        let alg = build_universal(&p).unwrap();
        for s in [Suite::Fusion, Suite::Jordan, Suite::Frobenius, Suite::Seress] {
            let o = verify(&alg, Some(&p), s, None);
            assert!(o.passed, "{s:?}: {}", o.result);
        }
        assert!(verify(&alg, None, Suite::Jordan, Some((5, 1))).passed);
    }

    #[test]
    fn broken_algebra_fails_in_band() {
        let p = q_params("1", "2", "3", "4");
        let mut alg = build_universal(&p).unwrap();
        alg.set_product(3, 3, vec![(2, Rational::from_int(1))]).unwrap();
        let o = verify(&alg, Some(&p), Suite::Jordan, None);
        assert!(!o.passed);
        assert!(!o.result["failures"].as_array().unwrap().is_empty());
    }

    #[test]
    fn relations_hold() {
        assert!(relations().passed);
    }
}
