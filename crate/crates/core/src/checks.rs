//! Named verification runs producing machine-readable reports.
//!
//! Every check is deterministic for fixed parameters. Witness data is a
//! `serde_json::Value`, whose maps serialize with sorted keys.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactlin::{rank_of, span_equal, LinComb};
use crate::fqsym::{psi, psi_morphism_defect, quadri_primitives, quadri_span, words_over, Fqsym, ShuffleWords};
use crate::models::{rect_generation, squares_basis, tensor_iso_check, Rect, Squares};
use crate::operad::{
    free_basis, koszul_dual, manin_black_relations, presentation, quad_shriek_to_dias_pairs, theta_apply,
    theta_expand, TreeMonomial,
};
use crate::quadri::{scan_axioms, scan_bialgebra, scan_coaxioms, scan_dual_axioms, Op};
use crate::rewrite::RewriteSystem;
use crate::series::{
    catalan, dendriform_generator_series_from, dim_quad_from_dual, dim_quad_series, primitive_series_from, IntSeries,
    SERIES_CAP,
};
use crate::words::{perm, Permutation, PackedWord};
use crate::wqsym::Wqsym;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("{what} = {value} exceeds the cap {cap}")]
    Cap { what: &'static str, value: usize, cap: usize },
    #[error("{what} = {value} needs --slow")]
    NeedsSlow { what: &'static str, value: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: Value,
    pub verdict: Verdict,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    fn new(check: &str, params: Value, passed: bool, witness: Value) -> Report {
        Report {
            check: check.to_string(),
            params,
            verdict: if passed { Verdict::Pass } else { Verdict::Fail },
            witness,
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Runs `f` and records its wall time on the report.
pub fn timed(f: impl FnOnce() -> Result<Report, CheckError>) -> Result<Report, CheckError> {
    let start = Instant::now();
    let mut r = f()?;
    r.elapsed_ms = Some(start.elapsed().as_millis());
    Ok(r)
}

#[derive(Debug, Deserialize)]
pub struct ExpectedEntry {
    pub description: String,
    pub values: Vec<u64>,
}

/// Vendored expected values, keyed by name.
pub fn expected() -> &'static BTreeMap<String, ExpectedEntry> {
    static DATA: OnceLock<BTreeMap<String, ExpectedEntry>> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(include_str!("../data/expected.json")).expect("bundled data parses"))
}

pub fn expected_values(name: &str) -> &'static [u64] {
    &expected().get(name).unwrap_or_else(|| panic!("no expected entry {name}")).values
}

fn internal<E: std::fmt::Display>(e: E) -> CheckError {
    CheckError::Internal(e.to_string())
}

fn cap(what: &'static str, value: usize, max: usize) -> Result<(), CheckError> {
    if value > max {
        Err(CheckError::Cap { what, value, cap: max })
    } else {
        Ok(())
    }
}

fn slow_gate(what: &'static str, value: usize, limit: usize, slow: bool) -> Result<(), CheckError> {
    if value > limit && !slow {
        Err(CheckError::NeedsSlow { what, value })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraName {
    Fqsym,
    Wqsym,
    Rect,
    ShuffleWords,
}

impl AlgebraName {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraName::Fqsym => "fqsym",
            AlgebraName::Wqsym => "wqsym",
            AlgebraName::Rect => "rect",
            AlgebraName::ShuffleWords => "shuffle-words",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureCheck {
    Axioms,
    Coaxioms,
    Bialgebra,
}

impl StructureCheck {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureCheck::Axioms => "axioms",
            StructureCheck::Coaxioms => "coaxioms",
            StructureCheck::Bialgebra => "bialgebra",
        }
    }
}

fn fqsym_basis(n: usize) -> Vec<Permutation> {
    Permutation::all(n)
}

fn wqsym_basis(n: usize) -> Vec<PackedWord> {
    PackedWord::all(n)
}

fn three_letter_words(n: usize) -> Vec<String> {
    words_over(&['a', 'b', 'c'], n)
}

/// Exhaustive scan of quadri (co)axioms or bialgebra compatibilities. The
/// square model is a dual quadri-algebra, so `axioms` checks the 23 dual
/// identities there.
pub fn structure(check: StructureCheck, algebra: AlgebraName, max_degree: usize, slow: bool) -> Result<Report, CheckError> {
    cap("max-degree", max_degree, 8)?;
    slow_gate("max-degree", max_degree, 6, slow)?;
    use AlgebraName as A;
    use StructureCheck as S;
    let summary = match (check, algebra) {
        (S::Axioms, A::Fqsym) => scan_axioms(&Fqsym, &fqsym_basis, max_degree),
        (S::Coaxioms, A::Fqsym) => scan_coaxioms(&Fqsym, &fqsym_basis, max_degree),
        (S::Bialgebra, A::Fqsym) => scan_bialgebra(&Fqsym, &fqsym_basis, max_degree),
        (S::Axioms, A::Wqsym) => scan_axioms(&Wqsym, &wqsym_basis, max_degree),
        (S::Coaxioms, A::Wqsym) => scan_coaxioms(&Wqsym, &wqsym_basis, max_degree),
        (S::Bialgebra, A::Wqsym) => scan_bialgebra(&Wqsym, &wqsym_basis, max_degree),
        (S::Axioms, A::Rect) => scan_dual_axioms(&Squares, &squares_basis, max_degree),
        (S::Axioms, A::ShuffleWords) => scan_axioms(&ShuffleWords, &three_letter_words, max_degree),
        (c, a) => {
            return Err(CheckError::Unsupported(format!(
                "{} has no {} check",
                a.as_str(),
                c.as_str()
            )))
        }
    };
    let passed = summary.passed() && summary.inputs > 0;
    Ok(Report::new(
        check.as_str(),
        json!({"algebra": algebra.as_str(), "max_degree": max_degree}),
        passed,
        serde_json::to_value(&summary).map_err(internal)?,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperadName {
    Quad,
    QuadShriek,
    Dend,
    Dias,
}

impl OperadName {
    pub fn as_str(self) -> &'static str {
        match self {
            OperadName::Quad => "quad",
            OperadName::QuadShriek => "quad-shriek",
            OperadName::Dend => "dend",
            OperadName::Dias => "dias",
        }
    }

    fn presentation_name(self) -> &'static str {
        match self {
            OperadName::Quad => "Quad",
            OperadName::QuadShriek => "QuadShriek",
            OperadName::Dend => "Dend",
            OperadName::Dias => "Dias",
        }
    }

    /// Independently known dimension in arity `n`, where available.
    fn known_dim(self, n: usize) -> Option<u128> {
        match self {
            OperadName::QuadShriek => Some((n * n) as u128),
            OperadName::Dend => catalan(n).try_into().ok(),
            OperadName::Dias => Some(n as u128),
            OperadName::Quad => None,
        }
    }
}

fn system(op: OperadName) -> Result<RewriteSystem, CheckError> {
    Ok(RewriteSystem::standard(&presentation(op.presentation_name()).map_err(internal)?))
}

/// Orientation, critical monomials, joinability and normal-form counts.
pub fn confluence(operad: OperadName) -> Result<Report, CheckError> {
    let top = match operad {
        OperadName::Dias => 6,
        OperadName::Quad => return Err(CheckError::Unsupported("quad has no quadratic rewriting check; use quad-shriek".into())),
        _ => 5,
    };
    let sys = system(operad)?;
    let report = sys.confluence_check(top).map_err(internal)?;
    let dims_ok = (2..=top).all(|n| Some(report.normal_form_dims[n - 2] as u128) == operad.known_dim(n));
    let counts_ok = match operad {
        OperadName::QuadShriek => {
            report.rules as u64 == expected_values("quad_shriek_rules")[0]
                && report.critical as u64 == expected_values("quad_shriek_critical")[0]
        }
        _ => true,
    };
    let passed = report.joinable && dims_ok && counts_ok;
    let mut witness = sys.report_json(&report);
    witness["failures"] = json!(report.failures);
    witness["arities"] = json!((2..=top).collect::<Vec<_>>());
    Ok(Report::new(
        "confluence",
        json!({"operad": operad.as_str()}),
        passed,
        witness,
    ))
}

/// `R^⊥` for Quad against the dual relations, or for Dend against Dias.
pub fn koszul(operad: OperadName) -> Result<Report, CheckError> {
    let (src, target) = match operad {
        OperadName::Quad => ("Quad", "QuadShriek"),
        OperadName::Dend => ("Dend", "Dias"),
        other => return Err(CheckError::Unsupported(format!("koszul-dual is defined for quad and dend, not {}", other.as_str()))),
    };
    let p = presentation(src).map_err(internal)?;
    let t = presentation(target).map_err(internal)?;
    let dual = koszul_dual(&p);
    let equal = span_equal(&dual.relations, &t.relations);
    let involution = span_equal(&koszul_dual(&dual).relations, &p.relations);
    let dim = dual.relations.len();
    let expected_dim = free_basis(p.generators.len(), 3).map_err(internal)?.len() - p.relations.len();
    Ok(Report::new(
        "koszul-dual",
        json!({"operad": operad.as_str()}),
        equal && involution && dim == expected_dim,
        json!({"dual_dimension": dim, "span_equal": equal, "involution": involution, "target": target}),
    ))
}

/// The componentwise pairs of Dias relations against the dual relations.
pub fn manin() -> Result<Report, CheckError> {
    let dias = presentation("Dias").map_err(internal)?;
    let black = manin_black_relations(&dias, &dias).map_err(internal)?;
    let shriek = presentation("QuadShriek").map_err(internal)?;
    let map: Vec<u8> = (0..4)
        .map(|i| {
            let (a, b) = quad_shriek_to_dias_pairs(Op::from_index(i));
            a * 2 + b
        })
        .collect();
    let moved = shriek.relabel(&map, black.generators.clone()).map_err(internal)?;
    let rank = rank_of(&black.relations);
    let equal = span_equal(&moved.relations, &black.relations);
    Ok(Report::new(
        "manin",
        json!({}),
        black.relations.len() == 25 && rank == 23 && equal,
        json!({"relations": black.relations.len(), "rank": rank, "span_equal": equal}),
    ))
}

/// Θ on Quad relations and its rank in arity 3, and arity 4 with `--slow`.
pub fn theta(max_arity: usize, slow: bool) -> Result<Report, CheckError> {
    cap("max-arity", max_arity, 4)?;
    slow_gate("max-arity", max_arity, 3, slow)?;
    if max_arity < 3 {
        return Err(CheckError::Unsupported("max-arity must be 3 or 4".into()));
    }
    let dend = system(OperadName::Dend)?;
    let quad = presentation("Quad").map_err(internal)?;
    let killed = quad.relations.iter().filter(|r| theta_apply(r, &dend).is_zero()).count();
    let expected_ranks = expected_values("theta_ranks");
    let mut ranks = Vec::new();
    for n in 3..=max_arity {
        let images: Vec<LinComb<(TreeMonomial, TreeMonomial)>> = free_basis(4, n)
            .map_err(internal)?
            .iter()
            .map(|m| theta_expand(m, &dend))
            .collect();
        ranks.push(rank_of(&images) as u64);
    }
    let passed = killed == quad.relations.len() && ranks.as_slice() == &expected_ranks[..ranks.len()];
    Ok(Report::new(
        "theta",
        json!({"max_arity": max_arity}),
        passed,
        json!({"relations_killed": killed, "relations": quad.relations.len(), "ranks": ranks}),
    ))
}

/// Dimensions of the quadri-subalgebra of FQSym generated by `(12)`.
pub fn freeness_fqsym(max_degree: usize, slow: bool) -> Result<Report, CheckError> {
    cap("max-degree", max_degree, 8)?;
    slow_gate("max-degree", max_degree, 6, slow)?;
    let spans = quadri_span(&[LinComb::basis(perm("(12)"))], max_degree).map_err(internal)?;
    let dims: Vec<u64> = spans.iter().map(|s| s.dim as u64).collect();
    let degrees: Vec<usize> = spans.iter().map(|s| s.degree).collect();
    let want = &expected_values("fqsym_span_of_12")[..degrees.len()];
    let even = degrees.iter().enumerate().all(|(k, &d)| d == 2 * (k + 1));
    Ok(Report::new(
        "freeness-fqsym",
        json!({"max_degree": max_degree}),
        even && dims.as_slice() == want,
        json!({"degrees": degrees, "dims": dims}),
    ))
}

/// ψ on `(12)` and the morphism property on pairs of even degrees.
pub fn psi_check(max_degree: usize) -> Result<Report, CheckError> {
    cap("max-degree", max_degree, 8)?;
    let base = psi(&perm("(12)")).map_err(internal)?;
    let base_ok = base == LinComb::basis((perm("(1)"), perm("(1)")));
    let mut pairs = 0usize;
    let mut nonzero = 0usize;
    for a in (2..max_degree).step_by(2) {
        for b in (2..=max_degree - a).step_by(2) {
            for s in Permutation::all(a) {
                for t in Permutation::all(b) {
                    for op in Op::ALL {
                        pairs += 1;
                        if !psi_morphism_defect(op, &s, &t).map_err(internal)?.is_zero() {
                            nonzero += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(Report::new(
        "psi",
        json!({"max_degree": max_degree}),
        base_ok && nonzero == 0,
        json!({"psi_12": base_ok, "identities": pairs, "nonzero": nonzero}),
    ))
}

/// Quadri-primitive dimensions of FQSym.
pub fn primitives(max_degree: usize) -> Result<Report, CheckError> {
    cap("max-degree", max_degree, 4)?;
    let mut dims = Vec::new();
    for n in 1..=max_degree {
        dims.push(quadri_primitives(n).map_err(internal)?.len() as u64);
    }
    let want = &expected_values("fqsym_primitive_dims")[..dims.len()];
    Ok(Report::new(
        "primitives",
        json!({"max_degree": max_degree}),
        dims.as_slice() == want,
        json!({"dims": dims}),
    ))
}

/// Generation of the square model, `n²` dimensions and the Dias tensor
/// isomorphism.
pub fn rect(max_n: usize) -> Result<Report, CheckError> {
    cap("max-n", max_n, 8)?;
    let reached = rect_generation(max_n);
    let generated = reached.iter().enumerate().all(|(k, &c)| c == (k + 1) * (k + 1));
    let dims: Vec<usize> = (1..=max_n.max(8)).map(|n| Rect::all(n).len()).collect();
    let dims_ok = dims.iter().enumerate().all(|(k, &d)| d == (k + 1) * (k + 1));
    let iso_arity = max_n.min(4);
    let iso = tensor_iso_check(iso_arity);
    let dual = scan_dual_axioms(&Squares, &squares_basis, 3.max(max_n.min(5)));
    Ok(Report::new(
        "rect",
        json!({"max_n": max_n}),
        generated && dims_ok && iso && dual.passed(),
        json!({
            "reached": reached,
            "total": reached.iter().sum::<usize>(),
            "dims": dims,
            "tensor_iso_arity": iso_arity,
            "tensor_iso": iso,
            "dual_axioms": dual,
        }),
    ))
}

/// Dimension table of a named operad in arities `1..=upto`.
pub fn dims(operad: OperadName, upto: usize) -> Result<Report, CheckError> {
    cap("upto", upto, SERIES_CAP)?;
    match operad {
        OperadName::Quad => {
            let computed = dim_quad_series(upto).map_err(internal)?;
            let dual = dim_quad_from_dual(upto).map_err(internal)?;
            let printed = expected_values("quad_dims");
            let values: Vec<String> = computed.coeffs().iter().map(|c| c.to_string()).collect();
            let mismatches: Vec<Value> = (1..=upto.min(printed.len()))
                .filter(|&n| computed.coeff(n) != printed[n - 1].into())
                .map(|n| json!({"n": n, "printed": printed[n - 1], "computed": computed.coeff(n).to_string()}))
                .collect();
            let agree = computed == dual;
            Ok(Report::new(
                "dims",
                json!({"operad": "quad", "upto": upto}),
                agree && mismatches.is_empty(),
                json!({"dims": values, "matches_koszul_dual_inverse": agree, "printed_mismatches": mismatches}),
            ))
        }
        other => {
            let sys = system(other)?;
            let found = sys.normal_form_dims(1..=upto);
            let ok = found
                .iter()
                .enumerate()
                .all(|(k, &d)| Some(d as u128) == other.known_dim(k + 1));
            Ok(Report::new(
                "dims",
                json!({"operad": other.as_str(), "upto": upto}),
                ok,
                json!({"dims": found}),
            ))
        }
    }
}

/// The `b` and `c` rows from the functional equations against the printed
/// rows.
pub fn series_table() -> Result<Report, CheckError> {
    let a = dim_quad_series(10).map_err(internal)?;
    let b = primitive_series_from(&a).map_err(internal)?;
    let c = dendriform_generator_series_from(&a).map_err(internal)?;
    let as_u64 = |s: &IntSeries| -> Vec<String> { s.coeffs().iter().map(|x| x.to_string()).collect() };
    let matches = |s: &IntSeries, name: &str| {
        let want = expected_values(name);
        (1..=10).all(|n| s.coeff(n) == want[n - 1].into())
    };
    let b_ok = matches(&b, "primitive_dims");
    let c_ok = matches(&c, "dendriform_generator_dims");
    Ok(Report::new(
        "series",
        json!({"table": "abc"}),
        b_ok && c_ok,
        json!({"a": as_u64(&a), "b": as_u64(&b), "c": as_u64(&c), "b_matches": b_ok, "c_matches": c_ok}),
    ))
}

/// The default battery: every check at its fast parameters.
pub fn battery(slow: bool) -> Vec<(&'static str, Box<dyn Fn() -> Result<Report, CheckError> + Send + Sync>)> {
    use AlgebraName as A;
    use StructureCheck as S;
    let d6 = 6;
    vec![
        ("axioms fqsym", Box::new(move || structure(S::Axioms, A::Fqsym, d6, slow))),
        ("coaxioms fqsym", Box::new(move || structure(S::Coaxioms, A::Fqsym, d6, slow))),
        ("bialgebra fqsym", Box::new(move || structure(S::Bialgebra, A::Fqsym, 5, slow))),
        ("axioms wqsym", Box::new(move || structure(S::Axioms, A::Wqsym, 5, slow))),
        ("coaxioms wqsym", Box::new(move || structure(S::Coaxioms, A::Wqsym, 5, slow))),
        ("bialgebra wqsym", Box::new(move || structure(S::Bialgebra, A::Wqsym, 4, slow))),
        ("axioms rect", Box::new(move || structure(S::Axioms, A::Rect, 5, slow))),
        ("axioms shuffle-words", Box::new(move || structure(S::Axioms, A::ShuffleWords, 4, slow))),
        ("confluence quad-shriek", Box::new(|| confluence(OperadName::QuadShriek))),
        ("confluence dend", Box::new(|| confluence(OperadName::Dend))),
        ("confluence dias", Box::new(|| confluence(OperadName::Dias))),
        ("koszul-dual quad", Box::new(|| koszul(OperadName::Quad))),
        ("koszul-dual dend", Box::new(|| koszul(OperadName::Dend))),
        ("manin", Box::new(manin)),
        ("theta", Box::new(move || theta(if slow { 4 } else { 3 }, slow))),
        ("freeness-fqsym", Box::new(move || freeness_fqsym(if slow { 8 } else { 6 }, slow))),
        ("psi", Box::new(|| psi_check(6))),
        ("primitives", Box::new(|| primitives(4))),
        ("rect", Box::new(|| rect(6))),
        ("dims quad", Box::new(|| dims(OperadName::Quad, 10))),
        ("series", Box::new(series_table)),
    ]
}
