//! Python bindings, importable as `hfdt`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hazard_trees::constructions;
use hazard_trees::measures::{self, ByValue};
use hazard_trees::optimal::{self, Objective};
use hazard_trees::verify::{self, MeasureReport};
use hazard_trees::{FunctionLiteral, Mode, TernaryWord};

fn err(e: hazard_trees::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn word(text: &str) -> PyResult<TernaryWord> {
    text.parse().map_err(err)
}

fn by_value(v: ByValue) -> (usize, usize, usize) {
    (v.zero, v.unknown, v.one)
}

#[pyclass(name = "BooleanFunction", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct BooleanFunction(hazard_trees::BooleanFunction);

#[pymethods]
impl BooleanFunction {
    /// Parses `named:<family>:<n>` or `table:<n>:<hex>`.
    #[staticmethod]
    fn parse(spec: &str) -> PyResult<Self> {
        let lit: FunctionLiteral = spec.parse().map_err(err)?;
        Ok(BooleanFunction(lit.function))
    }

    /// Truth table indexed by the binary value of the input, first variable most significant.
    #[staticmethod]
    fn from_table(n: usize, table: Vec<bool>) -> PyResult<Self> {
        hazard_trees::BooleanFunction::new(n, table)
            .map(BooleanFunction)
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn table(&self) -> Vec<bool> {
        self.0.table().to_vec()
    }

    fn hex(&self) -> String {
        self.0.to_hex()
    }

    fn __call__(&self, bits: Vec<bool>) -> PyResult<bool> {
        self.0.eval(&bits).map_err(err)
    }

    fn is_nondegenerate(&self) -> bool {
        self.0.is_nondegenerate()
    }

    /// Hazard-free extension over {0, u, 1}.
    fn extension(&self) -> PyResult<TernaryFunction> {
        hazard_trees::hazard_free_extension(&self.0)
            .map(TernaryFunction)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "BooleanFunction('table:{}:{}')",
            self.0.n(),
            self.0.to_hex()
        )
    }
}

#[pyclass(name = "TernaryFunction", frozen)]
struct TernaryFunction(hazard_trees::TernaryFunction);

#[pymethods]
impl TernaryFunction {
    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// Value on a word such as "01u", returned as "0", "u" or "1".
    fn __call__(&self, x: &str) -> PyResult<String> {
        Ok(self.0.eval(&word(x)?).map_err(err)?.to_string())
    }

    fn is_natural(&self) -> PyResult<bool> {
        self.0.is_natural().map_err(err)
    }

    fn is_weakly_hazard_free(&self) -> PyResult<bool> {
        self.0.is_weakly_hazard_free().map_err(err)
    }

    /// Sensitivity at a word, or the (zero, u, one) profile when `at` is omitted.
    #[pyo3(signature = (at=None))]
    fn sensitivity(&self, py: Python<'_>, at: Option<&str>) -> PyResult<Py<PyAny>> {
        match at {
            Some(x) => Ok(measures::sensitivity_u(&self.0, &word(x)?)
                .map_err(err)?
                .into_pyobject(py)?
                .into_any()
                .unbind()),
            None => Ok(
                by_value(measures::sensitivity_profile(&self.0).map_err(err)?)
                    .into_pyobject(py)?
                    .into_any()
                    .unbind(),
            ),
        }
    }

    #[pyo3(signature = (at=None))]
    fn block_sensitivity(&self, py: Python<'_>, at: Option<&str>) -> PyResult<Py<PyAny>> {
        match at {
            Some(x) => Ok(measures::block_sensitivity_u(&self.0, &word(x)?)
                .map_err(err)?
                .into_pyobject(py)?
                .into_any()
                .unbind()),
            None => Ok(
                by_value(measures::block_sensitivity_profile(&self.0).map_err(err)?)
                    .into_pyobject(py)?
                    .into_any()
                    .unbind(),
            ),
        }
    }

    #[pyo3(signature = (at=None))]
    fn certificate_complexity(&self, py: Python<'_>, at: Option<&str>) -> PyResult<Py<PyAny>> {
        match at {
            Some(x) => Ok(measures::certificate_complexity_u(&self.0, &word(x)?)
                .map_err(err)?
                .into_pyobject(py)?
                .into_any()
                .unbind()),
            None => Ok(
                by_value(measures::certificate_profile(&self.0).map_err(err)?)
                    .into_pyobject(py)?
                    .into_any()
                    .unbind(),
            ),
        }
    }
}

#[pyclass(name = "DecisionTree", frozen, skip_from_py_object)]
#[derive(Clone)]
struct DecisionTree(hazard_trees::DecisionTree);

#[pymethods]
impl DecisionTree {
    /// Parses the S-expression form, e.g. "(x0 0 u 1)".
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(DecisionTree).map_err(err)
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth()
    }

    #[getter]
    fn ternary(&self) -> bool {
        self.0.arity() == hazard_trees::Arity::Ternary
    }

    fn __call__(&self, x: &str) -> PyResult<String> {
        Ok(self.0.evaluate(&word(x)?).map_err(err)?.to_string())
    }

    /// Whether the tree computes `f` exactly: on Boolean inputs when `k` is
    /// None and `hazard_free` is false, on all inputs when `hazard_free`, or on
    /// inputs with at most `k` unstable digits.
    #[pyo3(signature = (f, hazard_free=true, k=None))]
    fn computes(&self, f: &BooleanFunction, hazard_free: bool, k: Option<usize>) -> bool {
        let mode = match (k, hazard_free) {
            (Some(k), _) => Mode::KBit(k),
            (None, true) => Mode::HazardFree,
            (None, false) => Mode::Boolean,
        };
        self.0.computes(&f.0, mode)
    }

    fn __str__(&self) -> String {
        self.0.to_sexpr()
    }

    fn __repr__(&self) -> String {
        format!("DecisionTree('{}')", self.0)
    }
}

/// Optimal value and witness tree. `measure` is one of depth, size,
/// depth_u, size_u, depth_k, size_k; the last two need `k`.
#[pyfunction]
#[pyo3(signature = (f, measure, k=None))]
fn optimal_tree(
    f: &BooleanFunction,
    measure: &str,
    k: Option<usize>,
) -> PyResult<(usize, DecisionTree)> {
    let kbit = || {
        k.map(Mode::KBit)
            .ok_or_else(|| PyValueError::new_err("k is required"))
    };
    let (mode, objective) = match measure {
        "depth" => (Mode::Boolean, Objective::Depth),
        "size" => (Mode::Boolean, Objective::Size),
        "depth_u" => (Mode::HazardFree, Objective::Depth),
        "size_u" => (Mode::HazardFree, Objective::Size),
        "depth_k" => (kbit()?, Objective::Depth),
        "size_k" => (kbit()?, Objective::Size),
        other => return Err(PyValueError::new_err(format!("unknown measure {other:?}"))),
    };
    let r = optimal::optimal(&f.0, mode, objective).map_err(err)?;
    Ok((r.value, DecisionTree(r.witness)))
}

/// Hazard-free tree built from a Boolean tree for `f`; with `k`, correct on
/// inputs with at most `k` unstable digits.
#[pyfunction]
#[pyo3(signature = (tree, f, k=None))]
fn from_boolean_tree(
    tree: &DecisionTree,
    f: &BooleanFunction,
    k: Option<usize>,
) -> PyResult<DecisionTree> {
    match k {
        Some(k) => constructions::k_hazard_free_from_boolean(&tree.0, &f.0, k),
        None => constructions::hazard_free_from_boolean(&tree.0, &f.0),
    }
    .map(DecisionTree)
    .map_err(err)
}

#[pyfunction]
fn mux_tree(n: usize) -> PyResult<DecisionTree> {
    Ok(DecisionTree(constructions::mux_trees(n).map_err(err)?.1))
}

#[pyfunction]
fn smalldepth_tree(n: usize) -> PyResult<DecisionTree> {
    constructions::smalldepth_tree(n)
        .map(DecisionTree)
        .map_err(err)
}

/// Every measure of `f` as a dict keyed by the report columns.
#[pyfunction]
fn analyze<'py>(py: Python<'py>, f: &BooleanFunction) -> PyResult<Bound<'py, PyDict>> {
    let report = MeasureReport::compute(&f.0, verify::function_id(&f.0)).map_err(err)?;
    let dict = PyDict::new(py);
    for (key, value) in MeasureReport::tsv_header()
        .split('\t')
        .zip(report.tsv_row().split('\t'))
    {
        dict.set_item(key, value)?;
    }
    Ok(dict)
}

/// Runs checks over functions on `n` variables; returns (function, check, status, detail) rows.
#[pyfunction]
#[pyo3(signature = (n, filter="all", checks="all"))]
fn run_checks(
    py: Python<'_>,
    n: usize,
    filter: &str,
    checks: &str,
) -> PyResult<Vec<(String, String, String, String)>> {
    let filter = filter.parse().map_err(err)?;
    let checks = verify::select_checks(checks).map_err(err)?;
    let fs = verify::enumerate_functions(n, filter).map_err(err)?;
    let report = py.detach(|| verify::run_checks(&fs, &checks));
    Ok(report
        .outcomes
        .into_iter()
        .map(|o| {
            (
                o.function,
                o.check.to_string(),
                o.status.to_string(),
                o.detail,
            )
        })
        .collect())
}

#[pymodule]
fn hfdt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<BooleanFunction>()?;
    m.add_class::<TernaryFunction>()?;
    m.add_class::<DecisionTree>()?;
    m.add_function(wrap_pyfunction!(optimal_tree, m)?)?;
    m.add_function(wrap_pyfunction!(from_boolean_tree, m)?)?;
    m.add_function(wrap_pyfunction!(mux_tree, m)?)?;
    m.add_function(wrap_pyfunction!(smalldepth_tree, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    Ok(())
}
