//! Python bindings: instance analysis, the built-in family, corpus runs,
//! tangent cones, and the exact bound formulas. Reports come back as plain
//! dicts mirroring the CLI's JSON schema.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use conelab::analyze::{analyze_instance, AnalyzeOptions};
use conelab::arith::{Field, PrimeField, Rationals};
use conelab::basis::{tangent_cone as core_tangent_cone, Ideal};
use conelab::bounds::CoeffVariant;
use conelab::corpus::{corpus_run, CorpusSource};
use conelab::error::Error;
use conelab::instance::{FieldDesc, InstanceSpec};
use conelab::poly::{PolyRing, TermOrder};

fn to_py_err(e: Error) -> PyErr {
    match &e {
        Error::Parse { .. } | Error::NotPrime(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<PyObject> {
    Ok(match v {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().unbind().into(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.unbind().into()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.unbind().into()
            } else {
                n.as_f64().unwrap().into_pyobject(py)?.unbind().into()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.unbind().into(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.unbind().into()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.unbind().into()
        }
    })
}

fn serialize_to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let json = serde_json::to_value(value)
        .map_err(|e| PyRuntimeError::new_err(format!("serialization: {e}")))?;
    json_to_py(py, &json)
}

/// Analyze an instance given in the directive text form; returns the
/// structured report as a dict.
#[pyfunction]
#[pyo3(signature = (text, horizon=None))]
fn analyze(py: Python<'_>, text: &str, horizon: Option<i64>) -> PyResult<PyObject> {
    let spec = InstanceSpec::parse(text).map_err(to_py_err)?;
    let bundle = analyze_instance(&spec, &AnalyzeOptions { horizon }).map_err(to_py_err)?;
    serialize_to_py(py, &bundle.report)
}

/// Analyze and return the human-readable text report.
#[pyfunction]
#[pyo3(signature = (text, horizon=None))]
fn analyze_text(text: &str, horizon: Option<i64>) -> PyResult<String> {
    let spec = InstanceSpec::parse(text).map_err(to_py_err)?;
    let bundle = analyze_instance(&spec, &AnalyzeOptions { horizon }).map_err(to_py_err)?;
    Ok(bundle.text)
}

/// The family instance x^2, x*y^r in directive text form.
#[pyfunction]
fn family(r: u64) -> PyResult<String> {
    if r == 0 {
        return Err(PyValueError::new_err("family parameter r must be >= 1"));
    }
    Ok(InstanceSpec::family(r).emit())
}

/// Run a generated corpus and return the summary as a dict.
#[pyfunction]
#[pyo3(signature = (seed=0, monomial=100, binomial=50, horizon=None))]
fn corpus(
    py: Python<'_>,
    seed: u64,
    monomial: usize,
    binomial: usize,
    horizon: Option<i64>,
) -> PyResult<PyObject> {
    let summary = corpus_run(
        &CorpusSource::Generated { seed, monomial, binomial },
        &AnalyzeOptions { horizon },
    )
    .map_err(to_py_err)?;
    serialize_to_py(py, &summary)
}

/// Standard basis and initial-forms ideal of an instance's tangent cone:
/// {"standard_basis": [...], "initial_ideal": [...]}.
#[pyfunction]
fn tangent_cone(py: Python<'_>, text: &str) -> PyResult<PyObject> {
    let spec = InstanceSpec::parse(text).map_err(to_py_err)?;
    fn compute<F: Field>(
        field: F,
        spec: &InstanceSpec,
    ) -> Result<(Vec<String>, Vec<String>), Error> {
        let vars: Vec<&str> = spec.vars.iter().map(|s| s.as_str()).collect();
        let ring = PolyRing::new(field, &vars, TermOrder::grevlex());
        let ideal = Ideal::new(&ring, spec.generators(&ring)?);
        let cone = core_tangent_cone(&ideal)?;
        Ok((
            cone.standard_basis.iter().map(|p| p.to_text()).collect(),
            cone.initial_ideal.gens().iter().map(|p| p.to_text()).collect(),
        ))
    }
    let (sb, init) = match &spec.field {
        FieldDesc::Prime(p) => {
            compute(PrimeField::new(*p).map_err(to_py_err)?, &spec).map_err(to_py_err)?
        }
        FieldDesc::Rationals => compute(Rationals, &spec).map_err(to_py_err)?,
    };
    let dict = PyDict::new(py);
    dict.set_item("standard_basis", sb)?;
    dict.set_item("initial_ideal", init)?;
    Ok(dict.unbind().into())
}

#[pyfunction]
fn hs_upper_bound(n: i64, d: u64, e: BigInt, i: BigInt) -> PyResult<BigInt> {
    conelab::bounds::hs_upper_bound(n, d, &e, &i).map_err(to_py_err)
}

#[pyfunction]
fn hs_upper_bound_weak(n: i64, d: u64, big_d: BigInt) -> PyResult<BigInt> {
    conelab::bounds::hs_upper_bound_weak(n, d, &big_d).map_err(to_py_err)
}

#[pyfunction]
fn reg_upper_bound(d: u64, e: BigInt, i: BigInt) -> PyResult<BigInt> {
    conelab::bounds::reg_upper_bound(d, &e, &i).map_err(to_py_err)
}

#[pyfunction]
fn reg_upper_bound_cm(d: u64, e: BigInt) -> PyResult<BigInt> {
    conelab::bounds::reg_upper_bound_cm(d, &e).map_err(to_py_err)
}

/// Coefficient bound; variant is one of "main", "cm", "srinivas-trivedi",
/// "trivedi" (the latter takes c, defaulting to 2I).
#[pyfunction]
#[pyo3(signature = (i, e, i_dev, variant="main", c=None))]
fn coeff_upper_bound(
    i: u64,
    e: BigInt,
    i_dev: BigInt,
    variant: &str,
    c: Option<BigInt>,
) -> PyResult<BigInt> {
    let variant = match variant {
        "main" => CoeffVariant::Main,
        "cm" => CoeffVariant::CohenMacaulay,
        "srinivas-trivedi" => CoeffVariant::SrinivasTrivedi,
        "trivedi" => CoeffVariant::Trivedi {
            c: c.unwrap_or_else(|| BigInt::from(2) * &i_dev),
        },
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown variant '{other}': expected main | cm | srinivas-trivedi | trivedi"
            )))
        }
    };
    conelab::bounds::coeff_upper_bound(i, &e, &i_dev, &variant).map_err(to_py_err)
}

/// Full finiteness envelope as a dict.
#[pyfunction]
fn envelope(py: Python<'_>, d: u64, q: u64) -> PyResult<PyObject> {
    let env = conelab::bounds::finiteness_envelope(d, q).map_err(to_py_err)?;
    serialize_to_py(py, &env)
}

/// Just the candidate-space count of the finiteness envelope.
#[pyfunction]
fn envelope_count(d: u64, q: u64) -> PyResult<BigInt> {
    Ok(conelab::bounds::finiteness_envelope(d, q)
        .map_err(to_py_err)?
        .total_count)
}

#[pymodule]
#[pyo3(name = "conelab")]
fn conelab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_text, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    m.add_function(wrap_pyfunction!(tangent_cone, m)?)?;
    m.add_function(wrap_pyfunction!(hs_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(hs_upper_bound_weak, m)?)?;
    m.add_function(wrap_pyfunction!(reg_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(reg_upper_bound_cm, m)?)?;
    m.add_function(wrap_pyfunction!(coeff_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(envelope, m)?)?;
    m.add_function(wrap_pyfunction!(envelope_count, m)?)?;
    Ok(())
}
