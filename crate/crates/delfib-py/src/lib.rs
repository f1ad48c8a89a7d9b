//! Python bindings for the `delfib` library.
//!
//! Exact sequence terms cross as Python ints (rationals as numerator /
//! denominator pairs); fixed-point reals cross as decimal strings so no
//! precision is lost to floats.

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use delfib::ap::{Complex, PrecisionContext, Real};
use delfib::characteristic::{self, CoeffMethod};
use delfib::sequences::{Family, RecurrenceSpec, Term};
use delfib::{asymptotics, combinatorics, intertwine, VerificationReport};

fn to_py_err(err: delfib::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn spec_for(family: &str, ell: Option<usize>) -> PyResult<RecurrenceSpec> {
    match (family, ell) {
        ("F", None) | ("f", None) => Ok(RecurrenceSpec::fibonacci()),
        ("F", Some(l)) | ("f", Some(l)) => RecurrenceSpec::higher(l).map_err(to_py_err),
        ("G", None) | ("g", None) => Ok(RecurrenceSpec::gibonacci()),
        ("H", None) | ("h", None) => Ok(RecurrenceSpec::double_delayed()),
        _ => Err(PyValueError::new_err(format!(
            "unknown family {family:?} (expected F, G or H; ell only with F)"
        ))),
    }
}

fn ctx_for(digits: u32) -> PyResult<PrecisionContext> {
    PrecisionContext::new(digits).map_err(to_py_err)
}

fn rational_pair(t: &Term) -> (BigInt, BigInt) {
    (t.numer().clone(), t.denom().clone())
}

fn real_str(r: &Real, digits: u32) -> String {
    r.to_decimal(digits)
}

fn complex_pair(c: &Complex, digits: u32) -> (String, String) {
    (c.re.to_decimal(digits), c.im.to_decimal(digits))
}

fn report_dict<'py>(py: Python<'py>, report: &VerificationReport) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    let checks = PyList::empty(py);
    for check in report.checks() {
        let entry = PyDict::new(py);
        entry.set_item("name", &check.name)?;
        entry.set_item("pass", check.pass)?;
        entry.set_item("detail", &check.detail)?;
        checks.append(entry)?;
    }
    out.set_item("passed", report.passed())?;
    out.set_item("checks", checks)?;
    Ok(out)
}

/// Exact terms of a family over an index range, as (numerator, denominator)
/// pairs.
#[pyfunction]
#[pyo3(signature = (family, from_index, to_index, ell=None))]
fn stream(
    family: &str,
    from_index: i64,
    to_index: i64,
    ell: Option<usize>,
) -> PyResult<Vec<(BigInt, BigInt)>> {
    let spec = spec_for(family, ell)?;
    let terms = spec.stream(from_index, to_index).map_err(to_py_err)?;
    Ok(terms.iter().map(rational_pair).collect())
}

/// Single exact integer term of F, G or H (all-ones initials).
#[pyfunction]
#[pyo3(signature = (family, n, ell=None))]
fn term(family: &str, n: i64, ell: Option<usize>) -> PyResult<BigInt> {
    let spec = spec_for(family, ell)?;
    let t = spec.term(n);
    if !num_traits::One::is_one(t.denom()) {
        return Err(PyValueError::new_err("term is not an integer"));
    }
    Ok(t.numer().clone())
}

/// G with the middle initial value replaced by a/b, as a rational pair.
#[pyfunction]
fn param_gibonacci(a_num: i64, a_den: i64, n: i64) -> PyResult<(BigInt, BigInt)> {
    if a_den == 0 {
        return Err(PyValueError::new_err("zero denominator"));
    }
    let a = delfib::sequences::ratio(a_num, a_den);
    Ok(rational_pair(&delfib::sequences::param_gibonacci(&a, n)))
}

/// Characteristic roots of one equation as a dict of decimal strings.
#[pyfunction]
#[pyo3(signature = (set, digits=50))]
fn roots<'py>(py: Python<'py>, set: &str, digits: u32) -> PyResult<Bound<'py, PyDict>> {
    let ctx = ctx_for(digits)?;
    let out = PyDict::new(py);
    match set {
        "quadratic" => {
            let r = characteristic::golden_roots(&ctx);
            out.set_item("eta_a", real_str(&r.eta_a, digits))?;
            out.set_item("eta_b", real_str(&r.eta_b, digits))?;
        }
        "cubic" => {
            let r = characteristic::plastic_roots(&ctx);
            out.set_item("x0", real_str(&r.x0, digits))?;
            out.set_item("d_plus", real_str(&r.d_plus, digits))?;
            out.set_item("d_minus", real_str(&r.d_minus, digits))?;
            out.set_item("rho_a", real_str(&r.rho_a, digits))?;
            out.set_item("rho_d", real_str(&r.rho_d, digits))?;
            out.set_item("rho_b", complex_pair(&r.rho_b, digits))?;
            out.set_item("rho_c", complex_pair(&r.rho_c, digits))?;
        }
        "quartic" => {
            let r = characteristic::quartic_roots(&ctx).map_err(to_py_err)?;
            out.set_item(
                "real_roots",
                [real_str(&r.real_roots[0], digits), real_str(&r.real_roots[1], digits)],
            )?;
            out.set_item("tau_plus", complex_pair(&r.tau_plus, digits))?;
            out.set_item("tau_minus", complex_pair(&r.tau_minus, digits))?;
        }
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown root set {set:?} (expected quadratic, cubic or quartic)"
            )))
        }
    }
    Ok(out)
}

/// Binet-style coefficients of F or G as a dict of decimal strings.
#[pyfunction]
#[pyo3(signature = (family, digits=50, method="closed-form"))]
fn coefficients<'py>(
    py: Python<'py>,
    family: &str,
    digits: u32,
    method: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let ctx = ctx_for(digits)?;
    let out = PyDict::new(py);
    match family {
        "F" | "f" => {
            let c = characteristic::fib_coefficients(&ctx);
            out.set_item("a", real_str(&c.a, digits))?;
            out.set_item("b", real_str(&c.b, digits))?;
        }
        "G" | "g" => {
            let m = match method {
                "closed-form" => CoeffMethod::ClosedForm,
                "linear-solve" => CoeffMethod::LinearSolve,
                _ => {
                    return Err(PyValueError::new_err(format!(
                        "unknown method {method:?} (expected closed-form or linear-solve)"
                    )))
                }
            };
            let c = characteristic::gib_coefficients(&ctx, m);
            out.set_item("a", real_str(&c.a_coeff, digits))?;
            out.set_item("k", real_str(&c.k, digits))?;
            out.set_item("l", real_str(&c.l, digits))?;
            out.set_item("sigma", real_str(&c.sigma, digits))?;
            out.set_item("delta", real_str(&c.delta, digits))?;
            out.set_item("b", complex_pair(&c.b(), digits))?;
            out.set_item("c", complex_pair(&c.c(), digits))?;
        }
        _ => {
            return Err(PyValueError::new_err(
                "coefficients are available for families F and G",
            ))
        }
    }
    Ok(out)
}

/// Evaluates the Binet-style formula: (rounded integer, residual string).
#[pyfunction]
#[pyo3(signature = (family, n, digits=50))]
fn binet(family: &str, n: u64, digits: u32) -> PyResult<(BigUint, String)> {
    let fam = match family {
        "F" | "f" => Family::F,
        "G" | "g" => Family::G,
        _ => return Err(PyValueError::new_err("binet supports families F and G")),
    };
    let ctx = ctx_for(digits)?;
    let (rounded, residual) = characteristic::binet_eval(fam, n, &ctx).map_err(to_py_err)?;
    Ok((rounded, residual.to_decimal(digits)))
}

/// Bracket position of F_n among the G values.
#[pyfunction]
fn rank<'py>(py: Python<'py>, n: u64) -> PyResult<Bound<'py, PyDict>> {
    let r = intertwine::rank(n);
    let out = PyDict::new(py);
    out.set_item("n", r.n)?;
    out.set_item("lower_m", r.lower_m)?;
    out.set_item("tie_above", r.tie_above)?;
    out.set_item("tie_below", r.tie_below)?;
    out.set_item("tie_count", r.tie_count)?;
    out.set_item("bracket", r.bracket_range())?;
    Ok(out)
}

/// Stage decomposition of one residue row up to k_max.
#[pyfunction]
#[pyo3(signature = (row, k_max=200))]
fn breakpoints<'py>(py: Python<'py>, row: u32, k_max: u64) -> PyResult<Bound<'py, PyList>> {
    if row > 6 {
        return Err(PyValueError::new_err("row must be 0..6"));
    }
    let records = PyList::empty(py);
    for b in intertwine::scan_breakpoints(row, k_max) {
        let entry = PyDict::new(py);
        entry.set_item("row", b.row)?;
        entry.set_item("stage", b.stage)?;
        entry.set_item("k_start", b.k_start)?;
        entry.set_item("k_end", b.k_end)?;
        entry.set_item("offset", b.offset)?;
        records.append(entry)?;
    }
    Ok(records)
}

/// Runs the bracketing and stage-table verification.
#[pyfunction]
#[pyo3(signature = (k_max=100))]
fn verify<'py>(py: Python<'py>, k_max: u64) -> PyResult<Bound<'py, PyDict>> {
    report_dict(py, &intertwine::verify_stage_tables(k_max))
}

/// Number of chain compositions of `k` into parts {1, ell + 1}.
#[pyfunction]
fn binomial_sum(ell: u64, k: u64) -> PyResult<BigUint> {
    if ell < 1 {
        return Err(PyValueError::new_err("ell must be positive"));
    }
    Ok(combinatorics::binomial_sum(ell, k))
}

/// All chain structures of the given length, as S/B strings.
#[pyfunction]
#[pyo3(signature = (ell, length, cap=combinatorics::DEFAULT_ENUM_CAP))]
fn chains(ell: u32, length: u64, cap: u64) -> PyResult<Vec<String>> {
    let listed = combinatorics::enumerate_chains_with_cap(ell, length, cap).map_err(to_py_err)?;
    Ok(listed.iter().map(|c| c.symbols()).collect())
}

/// Three-way count identity report for one family.
#[pyfunction]
#[pyo3(signature = (ell, k_max=60))]
fn identity_check<'py>(py: Python<'py>, ell: u32, k_max: u64) -> PyResult<Bound<'py, PyDict>> {
    report_dict(py, &combinatorics::identity_check(ell, k_max))
}

/// The growth-rate ratio ln(rho_A)/ln(eta_a) with its expansion partials.
#[pyfunction]
#[pyo3(signature = (digits=50))]
fn log_ratio<'py>(py: Python<'py>, digits: u32) -> PyResult<Bound<'py, PyDict>> {
    let ctx = ctx_for(digits)?;
    let r = asymptotics::log_ratio(&ctx).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("ratio", real_str(&r.ratio, digits))?;
    out.set_item("partials", r.partials.iter().map(|p| real_str(p, digits)).collect::<Vec<_>>())?;
    out.set_item(
        "residuals",
        r.residuals.iter().map(|p| real_str(p, digits)).collect::<Vec<_>>(),
    )?;
    Ok(out)
}

/// The logarithmic-quotient report behind eta_a^5 ~ e * rho_A^5.
#[pyfunction]
#[pyo3(signature = (digits=50))]
fn mystery_quotient<'py>(py: Python<'py>, digits: u32) -> PyResult<Bound<'py, PyDict>> {
    let ctx = ctx_for(digits)?;
    let r = asymptotics::mystery_quotient(&ctx).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("log_quotient", real_str(&r.log_quotient, digits))?;
    out.set_item("approx_value", real_str(&r.approx_value, digits))?;
    out.set_item("rho5_relative_error", real_str(&r.rho5_relative_error, digits))?;
    Ok(out)
}

/// Alignment sample G_M ~ F_N with N = floor(ratio * M).
#[pyfunction]
#[pyo3(signature = (m, digits=50))]
fn growth_alignment<'py>(py: Python<'py>, m: u64, digits: u32) -> PyResult<Bound<'py, PyDict>> {
    let ctx = ctx_for(digits)?;
    let s = asymptotics::growth_alignment(m, &ctx);
    let out = PyDict::new(py);
    out.set_item("m", s.m)?;
    out.set_item("n", s.n)?;
    out.set_item("g_m", s.g_m)?;
    out.set_item("f_n", s.f_n)?;
    out.set_item("log_gap", real_str(&s.log_gap, digits))?;
    Ok(out)
}

#[pymodule]
fn delfib_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ARTIFACT_VERSION", delfib::ARTIFACT_VERSION)?;
    m.add_function(wrap_pyfunction!(stream, m)?)?;
    m.add_function(wrap_pyfunction!(term, m)?)?;
    m.add_function(wrap_pyfunction!(param_gibonacci, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(binet, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(breakpoints, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_sum, m)?)?;
    m.add_function(wrap_pyfunction!(chains, m)?)?;
    m.add_function(wrap_pyfunction!(identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(log_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(mystery_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(growth_alignment, m)?)?;
    Ok(())
}
