//! Python bindings. Reports come back as plain dicts and lists.

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyString};
use serde_json::Value;

use ilmt::census;
use ilmt::edgelist;
use ilmt::generator::{GeneratingSequence, Generator, StepKind};
use ilmt::props::{self, AnalyzeOptions};
use ilmt::verify::{self, Suite};

fn err(e: ilmt::Error) -> PyErr {
    if e.is_cap() {
        PyOverflowError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(x) => {
            if let Some(i) = x.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = x.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                x.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(a) => {
            let items = a.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn report<'py>(py: Python<'py>, r: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(r).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

fn sequence(seq: &str) -> PyResult<GeneratingSequence> {
    seq.parse().map_err(err)
}

#[pyclass(name = "Tournament", module = "ilmt_py", frozen)]
struct PyTournament {
    inner: ilmt::Tournament,
}

#[pymethods]
impl PyTournament {
    /// `Tournament(n, arcs)` with `arcs` a list of `(u, v)` pairs.
    #[new]
    fn new(n: usize, arcs: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self {
            inner: ilmt::Tournament::build(n, &arcs).map_err(err)?,
        })
    }

    /// Builtin fixture: `d3`, `t3`, `edge`, `hero:3`, `fig2:T`, ...
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: ilmt::fixtures::named(name).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_edgelist(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: edgelist::parse_tournament(text).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner.arcs()
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.inner.n() && v < self.inner.n() && self.inner.has_arc(u, v)
    }

    fn to_edgelist(&self) -> String {
        edgelist::write_tournament(&self.inner)
    }

    /// One step; `kind` is 0 or 1.
    fn step(&self, kind: u8) -> PyResult<Self> {
        let kind = match kind {
            0 => StepKind::Zero,
            1 => StepKind::One,
            _ => return Err(PyValueError::new_err("step kind must be 0 or 1")),
        };
        let (g, _) = Generator::from_env().step(&self.inner, kind).map_err(err)?;
        Ok(Self { inner: g })
    }

    /// Applies `seq` (a string over 0/1), or its first `steps` entries.
    #[pyo3(signature = (seq, steps=None))]
    fn generate(&self, seq: &str, steps: Option<usize>) -> PyResult<Self> {
        let s = sequence(seq)?;
        let steps = steps.unwrap_or(s.len());
        let (g, _) = Generator::from_env()
            .generate(&self.inner, &s, steps)
            .map_err(err)?;
        Ok(Self { inner: g })
    }

    /// `(a, b)`: directed 3-cycles and transitive triples.
    fn census3(&self) -> (u64, u64) {
        let c = census::census3(&self.inner);
        (c.a, c.b)
    }

    /// Counts of the four 4-node types, keyed by name.
    fn census4<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = census::census4(&self.inner).map_err(err)?;
        let d = PyDict::new(py);
        for ty in [
            census::FourType::Transitive,
            census::FourType::Winner,
            census::FourType::Loser,
            census::FourType::Mixed,
        ] {
            d.set_item(ty.name(), c.get(ty))?;
        }
        Ok(d)
    }

    fn diameter(&self) -> Option<usize> {
        props::diameter(&self.inner)
    }

    fn is_strong(&self) -> bool {
        props::is_strong(&self.inner)
    }

    #[pyo3(signature = (chi=false, cop=false))]
    fn analyze<'py>(&self, py: Python<'py>, chi: bool, cop: bool) -> PyResult<Bound<'py, PyAny>> {
        let r = props::analyze(&self.inner, AnalyzeOptions { chi, cop }).map_err(err)?;
        report(py, &r)
    }

    fn chromatic_number(&self) -> PyResult<usize> {
        Ok(props::chromatic_number(&self.inner).map_err(err)?.chi)
    }

    fn cop_number(&self) -> PyResult<usize> {
        Ok(ilmt::cop_number(&self.inner).map_err(err)?.cop_number)
    }

    fn is_isomorphic(&self, other: &PyTournament) -> PyResult<bool> {
        Ok(ilmt::is_isomorphic(&self.inner, &other.inner)
            .map_err(err)?
            .is_some())
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __eq__(&self, other: &PyTournament) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Tournament(n={}, arcs={})", self.inner.n(), self.inner.arc_count())
    }
}

/// Rows `(t, n_t, a_t, b_t)` of the exact 3-cycle recurrence.
#[pyfunction]
fn census3_recurrence(
    n0: u64,
    a0: u64,
    seq: &str,
    steps: usize,
) -> PyResult<Vec<(usize, num_bigint::BigUint, num_bigint::BigUint, num_bigint::BigUint)>> {
    let rows = census::census3_recurrence(n0, a0, &sequence(seq)?, steps).map_err(err)?;
    Ok(rows.into_iter().map(|r| (r.t, r.n, r.a, r.b)).collect())
}

#[pyfunction]
fn quasirandom_trace<'py>(
    py: Python<'py>,
    base: &PyTournament,
    seq: &str,
    steps: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let t = census::quasirandom_trace(&base.inner, &sequence(seq)?, steps).map_err(err)?;
    report(py, &t)
}

/// First step at which the degree multisets differ, or `None`.
#[pyfunction]
fn distinguish(base: &PyTournament, s1: &str, s2: &str, t_max: usize) -> PyResult<Option<usize>> {
    census::distinguish_sequences(&base.inner, &sequence(s1)?, &sequence(s2)?, t_max).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (base, target, seq, full=false))]
fn embed<'py>(
    py: Python<'py>,
    base: &PyTournament,
    target: &PyTournament,
    seq: &str,
    full: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let s = sequence(seq)?;
    let e = if full {
        ilmt::embed_full(&base.inner, &s, &target.inner)
    } else {
        ilmt::embed(&base.inner, &s, &target.inner)
    }
    .map_err(err)?;
    report(py, &e)
}

/// Runs a property battery by name (`motifs`, ..., `all`).
#[pyfunction]
#[pyo3(signature = (suite="all"))]
fn run_suite<'py>(py: Python<'py>, suite: &str) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let r = py.detach(|| verify::run_suite(suite));
    report(py, &r)
}

#[pymodule]
fn ilmt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTournament>()?;
    m.add_function(wrap_pyfunction!(census3_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(quasirandom_trace, m)?)?;
    m.add_function(wrap_pyfunction!(distinguish, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
