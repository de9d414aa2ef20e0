//! Python bindings. Structured results cross the boundary as JSON and arrive as
//! plain dicts and lists.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use nichols_core::grp::{characters, FiniteGroup, GroupDocument, GroupSpec};
use nichols_core::ydmod::{BraidedVectorSpace, BraidingExport, DiagonalBraiding, YDModule};

fn err(e: nichols_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(value).map_err(json_err)?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

#[pyclass(frozen, module = "nichols")]
struct Group {
    inner: Arc<FiniteGroup>,
}

impl Group {
    fn element(&self, label: &str) -> PyResult<usize> {
        self.inner
            .find(label)
            .ok_or_else(|| PyValueError::new_err(format!("no element '{label}'")))
    }
}

#[pymethods]
impl Group {
    /// Builds a catalog group from a spec such as `heisenberg:n=1,m=3`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let g = spec.parse::<GroupSpec>().map_err(err)?.build().map_err(err)?;
        Ok(Group { inner: Arc::new(g) })
    }

    #[staticmethod]
    fn from_json(name: &str, doc: &str) -> PyResult<Self> {
        let doc: GroupDocument = serde_json::from_str(doc).map_err(json_err)?;
        let g = FiniteGroup::from_document(name, &doc).map_err(err)?;
        Ok(Group { inner: Arc::new(g) })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_document()).map_err(json_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn label(&self, i: usize) -> PyResult<String> {
        if i >= self.inner.order() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.inner.label(i))
    }

    fn find(&self, label: &str) -> Option<usize> {
        self.inner.find(label)
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.label(self.inner.mul(self.element(a)?, self.element(b)?)))
    }

    fn center_order(&self) -> usize {
        self.inner.center().order()
    }

    fn commutator_order(&self) -> usize {
        self.inner.commutator_subgroup().order()
    }

    fn is_nilpotent(&self) -> bool {
        self.inner.is_nilpotent()
    }

    /// `(representative label, size, centralizer order)` for each class.
    fn conjugacy_classes(&self) -> Vec<(String, usize, usize)> {
        self.inner
            .conjugacy_classes()
            .iter()
            .map(|c| (self.inner.label(c.representative), c.len(), c.centralizer.order()))
            .collect()
    }

    /// Values `a/n` at the basepoint of every character of its centralizer.
    fn character_values(&self, class_rep: &str) -> PyResult<Vec<String>> {
        let x = self.element(class_rep)?;
        Ok(characters(&self.inner, &self.inner.centralizer(x))
            .iter()
            .map(|c| c.at(x).to_string())
            .collect())
    }

    #[pyo3(signature = (class_rep, budget = None))]
    fn type_c(&self, py: Python<'_>, class_rep: &str, budget: Option<u64>) -> PyResult<Py<PyAny>> {
        let x = self.element(class_rep)?;
        let rack = nichols_core::rack::Rack::conjugation(self.inner.clone(), &self.inner.conjugacy_class(x));
        let outcome = nichols_core::rack::type_c_search(&rack, budget).map_err(err)?;
        to_py(py, &outcome)
    }

    #[pyo3(signature = (budget = None))]
    fn audit(&self, py: Python<'_>, budget: Option<u64>) -> PyResult<Py<PyAny>> {
        let budget = budget.unwrap_or(nichols_core::rack::DEFAULT_BUDGET);
        let report = nichols_core::rack::audit_type_c_dichotomy(self.inner.clone(), budget).map_err(err)?;
        to_py(py, &report)
    }

    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = nichols_core::classify::classify_odd_nilpotent(self.inner.clone()).map_err(err)?;
        to_py(py, &report)
    }

    fn __repr__(&self) -> String {
        format!("Group('{}', order={})", self.inner.name(), self.inner.order())
    }
}

#[pyclass(frozen, module = "nichols")]
struct Braiding {
    inner: BraidedVectorSpace,
}

#[pymethods]
impl Braiding {
    /// A diagonal braiding such as `[[w,w],[w,w]]`.
    #[staticmethod]
    fn diagonal(matrix: &str) -> PyResult<Self> {
        let q: DiagonalBraiding = matrix.parse().map_err(err)?;
        Ok(Braiding {
            inner: BraidedVectorSpace::from_diagonal(&q),
        })
    }

    /// The braiding of `M(O, χ)` for the class of `class_rep` and the given character
    /// of its centralizer.
    #[staticmethod]
    #[pyo3(signature = (group, class_rep, character = 0))]
    fn module(group: &Group, class_rep: &str, character: usize) -> PyResult<Self> {
        let g = &group.inner;
        let x = group.element(class_rep)?;
        let chi = characters(g, &g.centralizer(x))
            .into_iter()
            .nth(character)
            .ok_or_else(|| PyValueError::new_err("character index out of range"))?;
        let m = YDModule::new(g.clone(), x, chi).map_err(err)?;
        Ok(Braiding { inner: m.braiding() })
    }

    #[staticmethod]
    fn from_json(doc: &str) -> PyResult<Self> {
        let doc: BraidingExport = serde_json::from_str(doc).map_err(json_err)?;
        Ok(Braiding {
            inner: BraidedVectorSpace::import(&doc).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.export()).map_err(json_err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn satisfies_braid_equation(&self) -> bool {
        self.inner.satisfies_braid_equation()
    }

    /// The diagonal matrix as `a/n` strings, when the braiding is diagonal.
    fn diagonal_matrix(&self) -> Option<Vec<Vec<String>>> {
        self.inner
            .diagonal()
            .map(|q| q.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
    }

    fn dim_profile(&self, py: Python<'_>, max_degree: usize) -> PyResult<Py<PyAny>> {
        let p = nichols_core::nichols::dim_profile(&self.inner, max_degree).map_err(err)?;
        to_py(py, &p)
    }

    fn verdict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let q = self
            .inner
            .diagonal()
            .ok_or_else(|| PyValueError::new_err("braiding is not diagonal"))?;
        to_py(py, &nichols_core::nichols::diagonal_verdict(&q))
    }

    fn __repr__(&self) -> String {
        format!("Braiding(dim={})", self.inner.dim())
    }
}

/// Verdict for a diagonal braiding given as a matrix string.
#[pyfunction]
fn diagonal_verdict(py: Python<'_>, matrix: &str) -> PyResult<Py<PyAny>> {
    let q: DiagonalBraiding = matrix.parse().map_err(err)?;
    to_py(py, &nichols_core::nichols::diagonal_verdict(&q))
}

#[pymodule]
fn nichols(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<Braiding>()?;
    m.add_function(wrap_pyfunction!(diagonal_verdict, m)?)?;
    Ok(())
}
