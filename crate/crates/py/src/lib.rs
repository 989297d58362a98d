//! Python bindings for the weighted zero-sum sequence engine.
//!
//! Thin wrappers over the core crate: weight sets and modes use the same
//! textual specs as the CLI, results come back as plain dicts and lists.
//! One deliberate difference from the CLI reports: witness indices here are
//! 0-based, matching Python indexing (`seq[i]` works directly).

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use zerosum_core::constants::{
    compute_constant, ConstantKind, ConstantOutcome, SearchOptions, DEFAULT_SEARCH_BUDGET,
};
use zerosum_core::engine::{
    find_wzs_subsequence, verify_witness as core_verify_witness, SubsequenceConstraint, Witness,
};
use zerosum_core::extremal::{
    are_related as core_are_related, canonicalize as core_canonicalize,
    enumerate_extremal, orbit as core_orbit, SymmetryRelation,
};
use zerosum_core::residue::{classify as core_classify, Classification, Modulus, WeightSet};
use zerosum_core::sequence::Sequence;
use zerosum_core::verify::{
    list_checks, run_checks as core_run_checks, CheckSelection, VerifyOptions,
};
use zerosum_core::{Error, ENGINE_VERSION};

create_exception!(
    zerosum_py,
    BudgetError,
    PyRuntimeError,
    "A search or oracle budget ran out before the question was decided."
);

fn to_py_err(err: Error) -> PyErr {
    match &err {
        Error::SearchBudget { .. } | Error::OracleBudget { .. } => {
            BudgetError::new_err(err.to_string())
        }
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn modulus(n: u32) -> PyResult<Modulus> {
    Modulus::new(n).map_err(to_py_err)
}

fn weight_set(spec: &str, m: Modulus) -> PyResult<WeightSet> {
    WeightSet::parse(spec, m).map_err(to_py_err)
}

fn relation(text: &str) -> PyResult<SymmetryRelation> {
    SymmetryRelation::parse(text).map_err(to_py_err)
}

fn constraint(mode: &str) -> PyResult<SubsequenceConstraint> {
    let parsed = match mode {
        "any" => SubsequenceConstraint::Any,
        "consecutive" => SubsequenceConstraint::Consecutive,
        other => match other
            .strip_prefix("exact:")
            .and_then(|len| len.parse::<usize>().ok())
        {
            Some(len) => SubsequenceConstraint::ExactLength(len),
            None => {
                return Err(PyValueError::new_err(format!(
                    "mode must be any, consecutive, or exact:L, got `{other}`"
                )))
            }
        },
    };
    parsed.validate().map_err(to_py_err)
}

fn to_py<'py, T: Serialize + ?Sized>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    Ok(pythonize::pythonize(py, value)?)
}

/// Search `seq` over Z/n for a qualifying (A,B)-weighted zero-sum
/// subsequence.
///
/// `a` and `b` are weight-set specs (`one`, `zero`, `all-nonzero`, `units`,
/// `minus-one`, or `{c1,c2,...}`); `mode` is `any`, `consecutive`, or
/// `exact:L`.  Returns a witness dict with 0-based `indices`, `a_coeffs`
/// and `b_coeffs`, or None when no subsequence qualifies.
#[pyfunction]
#[pyo3(signature = (n, a, b, seq, mode = "any"))]
fn check<'py>(
    py: Python<'py>,
    n: u32,
    a: &str,
    b: &str,
    seq: Vec<i64>,
    mode: &str,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let m = modulus(n)?;
    let a = weight_set(a, m)?;
    let b = weight_set(b, m)?;
    let constraint = constraint(mode)?;
    let s = Sequence::new(m, seq);
    match find_wzs_subsequence(&s, &a, &b, constraint).map_err(to_py_err)? {
        Some(witness) => Ok(Some(to_py(py, &witness)?)),
        None => Ok(None),
    }
}

/// Re-check a witness against a sequence: True when both congruences hold.
///
/// `indices` are 0-based.  An empty `b_coeffs` stands for the all-zero
/// B-assignment.  Structurally malformed witnesses raise ValueError.
#[pyfunction]
#[pyo3(signature = (n, a, b, seq, indices, a_coeffs, b_coeffs = Vec::new()))]
fn verify_witness(
    n: u32,
    a: &str,
    b: &str,
    seq: Vec<i64>,
    indices: Vec<usize>,
    a_coeffs: Vec<u32>,
    b_coeffs: Vec<u32>,
) -> PyResult<bool> {
    let m = modulus(n)?;
    let a = weight_set(a, m)?;
    let b = weight_set(b, m)?;
    let s = Sequence::new(m, seq);
    let witness = Witness {
        indices,
        a_coeffs,
        b_coeffs,
    };
    core_verify_witness(&s, &a, &b, &witness).map_err(to_py_err)
}

/// Compute the constant C, D or E for the weight-set pair over Z/n.
///
/// Returns `{"verdict": "COMPLETE", "constant": {...}}` when the scan
/// finished, or `{"verdict": "BUDGET", "bounds": {...}}` with the certified
/// partial bounds when the budget ran out.
#[pyfunction]
#[pyo3(signature = (kind, n, a, b, budget = None, assume_cap = false))]
fn constant<'py>(
    py: Python<'py>,
    kind: &str,
    n: u32,
    a: &str,
    b: &str,
    budget: Option<u64>,
    assume_cap: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let kind = ConstantKind::parse(kind).map_err(to_py_err)?;
    let m = modulus(n)?;
    let a = weight_set(a, m)?;
    let b = weight_set(b, m)?;
    let options = SearchOptions {
        budget: budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
        assume_cap,
    };
    let payload = match compute_constant(kind, &a, &b, &options).map_err(to_py_err)? {
        ConstantOutcome::Complete(result) => {
            serde_json::json!({ "verdict": "COMPLETE", "constant": result })
        }
        ConstantOutcome::BudgetExhausted(bounds) => {
            serde_json::json!({ "verdict": "BUDGET", "bounds": bounds })
        }
    };
    to_py(py, &payload)
}

/// Enumerate the extremal sequences for a constant and bucket them into
/// classes under a symmetry relation.
///
/// `relation` is one of `equivalence`, `order-equivalence`,
/// `translate-of-equivalent`, `translate-of-order-equivalent`,
/// `translation-only`.  Raises BudgetError when enumeration is infeasible
/// within the budget.
#[pyfunction]
#[pyo3(signature = (kind, n, a, b, relation, budget = None))]
fn extremal<'py>(
    py: Python<'py>,
    kind: &str,
    n: u32,
    a: &str,
    b: &str,
    relation: &str,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let kind = ConstantKind::parse(kind).map_err(to_py_err)?;
    let m = modulus(n)?;
    let a = weight_set(a, m)?;
    let b = weight_set(b, m)?;
    let rel = self::relation(relation)?;
    let options = SearchOptions {
        budget: budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
        assume_cap: false,
    };
    let enumeration = enumerate_extremal(kind, &a, &b, rel, None, &options).map_err(to_py_err)?;
    to_py(py, &enumeration)
}

/// Run the theorem-check harness and return one report dict per (check, n).
///
/// `checks` is "all" or a comma-separated list of check ids.
#[pyfunction]
#[pyo3(signature = (checks = "all", n_min = 2, n_max = 5, budget = None, force_expensive = false))]
fn run_checks<'py>(
    py: Python<'py>,
    checks: &str,
    n_min: u32,
    n_max: u32,
    budget: Option<u64>,
    force_expensive: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let selection = if checks.trim() == "all" {
        CheckSelection::All
    } else {
        let ids: Vec<String> = checks
            .split(',')
            .map(|id| id.trim().to_string())
            .filter(|id| !id.is_empty())
            .collect();
        CheckSelection::Ids(ids)
    };
    let options = VerifyOptions {
        n_min,
        n_max,
        budget: budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
        force_expensive,
    };
    let reports = core_run_checks(&selection, &options).map_err(to_py_err)?;
    to_py(py, &reports)
}

/// The catalog of checkable statements: id, modulus range, expectation
/// text, cost class, and whether the statement is an external baseline.
#[pyfunction]
fn catalog(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, list_checks())
}

/// The lexicographically least sequence related to `seq` under the
/// relation.  Returns the term list.
#[pyfunction]
fn canonicalize(n: u32, seq: Vec<i64>, relation: &str) -> PyResult<Vec<u32>> {
    let m = modulus(n)?;
    let rel = self::relation(relation)?;
    Ok(core_canonicalize(&Sequence::new(m, seq), rel).terms().to_vec())
}

/// True when some transform of the relation carries `s` onto `t`.
#[pyfunction]
fn are_related(n: u32, s: Vec<i64>, t: Vec<i64>, relation: &str) -> PyResult<bool> {
    let m = modulus(n)?;
    let rel = self::relation(relation)?;
    core_are_related(&Sequence::new(m, s), &Sequence::new(m, t), rel).map_err(to_py_err)
}

/// Every distinct sequence related to `seq`, in lexicographic order.
#[pyfunction]
fn orbit(n: u32, seq: Vec<i64>, relation: &str) -> PyResult<Vec<Vec<u32>>> {
    let m = modulus(n)?;
    let rel = self::relation(relation)?;
    Ok(core_orbit(&Sequence::new(m, seq), rel)
        .into_iter()
        .map(|s| s.terms().to_vec())
        .collect())
}

/// Classify a residue as "ZERO", "UNIT" or "ZERO_DIVISOR" mod n.
#[pyfunction]
fn classify(n: u32, value: i64) -> PyResult<&'static str> {
    let m = modulus(n)?;
    Ok(match core_classify(m.reduce(value), m) {
        Classification::Zero => "ZERO",
        Classification::Unit => "UNIT",
        Classification::ZeroDivisor => "ZERO_DIVISOR",
    })
}

/// The reduced, sorted members of a weight-set spec mod n.
#[pyfunction]
fn weight_set_members(n: u32, spec: &str) -> PyResult<Vec<u32>> {
    let m = modulus(n)?;
    Ok(weight_set(spec, m)?.members().to_vec())
}

#[pymodule]
fn zerosum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ENGINE_VERSION", ENGINE_VERSION)?;
    m.add("__version__", ENGINE_VERSION)?;
    m.add("BudgetError", m.py().get_type_bound::<BudgetError>())?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witness, m)?)?;
    m.add_function(wrap_pyfunction!(constant, m)?)?;
    m.add_function(wrap_pyfunction!(extremal, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(are_related, m)?)?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(weight_set_members, m)?)?;
    Ok(())
}
