use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use outerext::cli::run_cli;
use outerext::extengine::{
    self, compute_ext2_table, e1_support, run_koszul_recursion, solve_acyclic, ExtLookup, Mode, RowComplex, Solution,
};
use outerext::multdata::{self, load_mult_file, merge_and_validate, Mult};
use outerext::{liechar, Error};

create_exception!(outerext, OuterextError, PyException);
create_exception!(outerext, CoverageError, OuterextError);

fn to_py(e: Error) -> PyErr {
    match e.kind() {
        "input" => PyValueError::new_err(e.to_string()),
        "coverage" => CoverageError::new_err(e.to_string()),
        _ => OuterextError::new_err(format!("{}: {}", e.kind(), e)),
    }
}

#[pyclass(name = "Partition", frozen, eq, ord, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyPartition(outerext::Partition);

#[pymethods]
impl PyPartition {
    /// Accepts `"3,1,1"`, `"3,1^2"` or a list of parts.
    #[new]
    fn new(spec: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(s) = spec.extract::<String>() {
            return s.parse().map(PyPartition).map_err(to_py);
        }
        let parts: Vec<usize> = spec.extract()?;
        outerext::Partition::new(parts).map(PyPartition).map_err(to_py)
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn conjugate(&self) -> Self {
        PyPartition(self.0.conjugate())
    }

    fn dimension(&self) -> BigInt {
        self.0.hook_dimension()
    }

    fn compact(&self) -> String {
        self.0.display_compact()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition('{}')", self.0)
    }
}

#[pyfunction]
fn partitions(n: usize) -> Vec<PyPartition> {
    outerext::generate_partitions(n).into_iter().map(PyPartition).collect()
}

#[pyfunction]
fn hook_family(m: usize) -> Vec<PyPartition> {
    outerext::hook_family(m).into_iter().map(PyPartition).collect()
}

/// `(text, dim)` for the Lie character at level n.
#[pyfunction]
fn lie_rep(n: usize) -> PyResult<(String, BigInt)> {
    let l = liechar::lie_rep(n).map_err(to_py)?;
    Ok((l.rep.to_string(), l.dim()))
}

#[pyclass(name = "MultTable", skip_from_py_object)]
#[derive(Clone)]
struct PyMultTable(multdata::MultTable);

#[pymethods]
impl PyMultTable {
    #[staticmethod]
    fn builtin(max_degree: usize) -> Self {
        PyMultTable(multdata::MultTable::builtin(max_degree))
    }

    /// Built-in entries through `max_degree` merged with the given files.
    #[staticmethod]
    #[pyo3(signature = (paths, max_degree = 10))]
    fn load(paths: Vec<String>, max_degree: usize) -> PyResult<Self> {
        let mut parts = vec![multdata::MultTable::builtin(max_degree)];
        for p in &paths {
            parts.push(load_mult_file(p.as_ref(), false).map_err(to_py)?.table);
        }
        merge_and_validate(&parts).map(PyMultTable).map_err(to_py)
    }

    /// The multiplicity, or `None` when unknown.
    fn get(&self, lam: &PyPartition, rho: &PyPartition) -> Option<u64> {
        match self.0.query(&lam.0, &rho.0) {
            Mult::Unknown => None,
            m => m.value(),
        }
    }

    fn covers(&self, degree: usize) -> bool {
        self.0.covers(degree)
    }

    fn coverage_degree(&self) -> usize {
        self.0.coverage_degree()
    }

    fn to_text(&self) -> String {
        self.0.to_canonical_text()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyclass(name = "ExtTable", skip_from_py_object)]
#[derive(Clone)]
struct PyExtTable(extengine::ExtTable);

#[pymethods]
impl PyExtTable {
    #[staticmethod]
    fn load(path: String) -> PyResult<Self> {
        extengine::load_ext_file(path.as_ref()).map(PyExtTable).map_err(to_py)
    }

    /// Ext^k(ν, λ) when known, else `None`.
    fn get(&self, nu: &PyPartition, lam: &PyPartition, k: usize) -> Option<u64> {
        match self.0.get(&nu.0, &lam.0, k) {
            ExtLookup::Forced(v) | ExtLookup::Stored(v, _) => Some(v),
            ExtLookup::HypothesisZero => Some(0),
            _ => None,
        }
    }

    fn to_text(&self) -> String {
        self.0.to_cache_text()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyclass(name = "ContradictionReport", frozen)]
struct PyReport(extengine::ContradictionReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn nu(&self) -> PyPartition {
        PyPartition(self.0.nu.clone())
    }

    #[getter]
    fn lam(&self) -> PyPartition {
        PyPartition(self.0.lambda.clone())
    }

    #[getter]
    fn term_dims(&self) -> Vec<u64> {
        self.0.term_dims.clone()
    }

    #[getter]
    fn forced_value(&self) -> i64 {
        self.0.forced_value
    }

    #[getter]
    fn blame_set(&self) -> Vec<(PyPartition, PyPartition, usize)> {
        self.0
            .blame_set
            .iter()
            .map(|(n, l, k)| (PyPartition(n.clone()), PyPartition(l.clone()), *k))
            .collect()
    }

    fn render(&self) -> String {
        self.0.render()
    }

    fn __repr__(&self) -> String {
        format!("ContradictionReport({})", self.0.headline())
    }
}

/// The forced top term, or a `ContradictionReport` when it is negative.
#[pyfunction]
fn solve(py: Python<'_>, nu: &PyPartition, lam: &PyPartition, dims: Vec<u64>) -> PyResult<Py<PyAny>> {
    let c = RowComplex::from_dims(nu.0.clone(), lam.0.clone(), &dims).map_err(to_py)?;
    Ok(match solve_acyclic(&c).map_err(to_py)? {
        Solution::Value(v) => v.into_pyobject(py)?.into_any().unbind(),
        Solution::Contradiction(r) => Py::new(py, PyReport(*r))?.into_any(),
    })
}

#[pyfunction]
#[pyo3(signature = (max_degree, mult, strict = false))]
fn recursion(
    py: Python<'_>,
    max_degree: usize,
    mult: &PyMultTable,
    strict: bool,
) -> PyResult<(PyExtTable, Vec<PyReport>)> {
    let mode = if strict { Mode::Strict } else { Mode::Continue };
    let out = py
        .detach(|| run_koszul_recursion(max_degree, &mult.0, mode))
        .map_err(to_py)?;
    Ok((PyExtTable(out.table), out.reports.into_iter().map(PyReport).collect()))
}

/// `(decomposition, dim)` of Ext²(a⊗(n−2), a⊗n).
#[pyfunction]
fn ext2(n: usize, mult: &PyMultTable) -> PyResult<(String, BigInt)> {
    let e = compute_ext2_table(n, &mult.0).map_err(to_py)?;
    Ok((e.birep.render(), e.birep.dim()))
}

#[pyfunction]
#[pyo3(signature = (nu_size, lambda_size, svg = false))]
fn diagram(nu_size: usize, lambda_size: usize, svg: bool) -> String {
    let s = e1_support(nu_size, lambda_size);
    if svg {
        s.render_svg()
    } else {
        s.render_ascii()
    }
}

/// Runs the command line in-process: `(status, stdout, stderr)`.
#[pyfunction]
fn cli(args: Vec<String>) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("outerext".to_string()).chain(args);
    let code = run_cli(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

#[pymodule]
#[pyo3(name = "outerext")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("OuterextError", m.py().get_type::<OuterextError>())?;
    m.add("CoverageError", m.py().get_type::<CoverageError>())?;
    m.add_class::<PyPartition>()?;
    m.add_class::<PyMultTable>()?;
    m.add_class::<PyExtTable>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(partitions, m)?)?;
    m.add_function(wrap_pyfunction!(hook_family, m)?)?;
    m.add_function(wrap_pyfunction!(lie_rep, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(recursion, m)?)?;
    m.add_function(wrap_pyfunction!(ext2, m)?)?;
    m.add_function(wrap_pyfunction!(diagram, m)?)?;
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    Ok(())
}
