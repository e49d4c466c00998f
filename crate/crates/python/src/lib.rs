//! Python bindings. Objects cross the boundary as JSON documents (the same
//! shapes the CLI reads); reports come back as plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use tangal::csep::{self, FrobeniusMonoid};
use tangal::gset::{self, GSet};
use tangal::hopf;
use tangal::rep::{self, Representation};
use tangal::suite::{self, SuiteOptions};
use tangal::{Algebra, Error, Field, FiniteGroup, HopfAlgebra, Poly};

create_exception!(pytangal, BudgetExceeded, PyException);
create_exception!(pytangal, NeedsExtension, PyException);

fn err(e: Error) -> PyErr {
    match e {
        Error::SearchBudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::NeedsExtension(m) => NeedsExtension::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Accepts a JSON string or anything `json.dumps` can serialize.
fn from_py<T: DeserializeOwned>(doc: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = match doc.extract::<String>() {
        Ok(s) => s,
        Err(_) => doc.py().import("json")?.call_method1("dumps", (doc,))?.extract()?,
    };
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyclass(name = "Field", module = "pytangal", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyField {
    inner: Field,
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, n = 1))]
    fn new(p: u32, n: u32) -> PyResult<Self> {
        Ok(PyField { inner: Field::new(p, n).map_err(err)? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        self.inner.add(a, b)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.inner.mul(a, b)
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        if a == 0 || a >= self.inner.q() {
            return Err(PyValueError::new_err("no inverse"));
        }
        Ok(self.inner.inv(a))
    }

    fn __eq__(&self, other: &PyField) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Field({}, {})", self.inner.p(), self.inner.n())
    }
}

#[pyclass(name = "Poly", module = "pytangal", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoly {
    inner: Poly,
}

#[pymethods]
impl PyPoly {
    /// Coefficients in increasing degree.
    #[new]
    fn new(field: &PyField, coeffs: Vec<i64>) -> Self {
        PyPoly { inner: Poly::from_ints(&field.inner, &coeffs) }
    }

    #[getter]
    fn coeffs(&self) -> Vec<u32> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn is_irreducible(&self) -> bool {
        self.inner.is_irreducible()
    }

    fn roots(&self) -> Vec<u32> {
        self.inner.roots()
    }

    /// Returns (unit, [(monic irreducible, exponent), ...]).
    fn factor(&self) -> PyResult<(u32, Vec<(PyPoly, usize)>)> {
        let f = self.inner.factor().map_err(err)?;
        Ok((f.unit, f.factors.into_iter().map(|(p, e)| (PyPoly { inner: p }, e)).collect()))
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        if self.inner.field() != other.inner.field() {
            return Err(err(Error::FieldMismatch));
        }
        Ok(PyPoly { inner: self.inner.mul(&other.inner) })
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?})", self.inner.coeffs())
    }
}

#[pyclass(name = "Group", module = "pytangal", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup {
    inner: FiniteGroup,
}

#[pymethods]
impl PyGroup {
    /// Catalog lookup: "Z5", "S3", "D4", "Q8", ...
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        FiniteGroup::by_name(name)
            .map(|g| PyGroup { inner: g })
            .ok_or_else(|| PyValueError::new_err(format!("unknown group {name}")))
    }

    #[staticmethod]
    fn cyclic(n: usize) -> Self {
        PyGroup { inner: FiniteGroup::cyclic(n) }
    }

    #[staticmethod]
    fn symmetric(n: usize) -> Self {
        PyGroup { inner: FiniteGroup::symmetric(n) }
    }

    #[staticmethod]
    fn from_json(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyGroup { inner: FiniteGroup::from_json(&from_py(doc)?).map_err(err)? })
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.mul(a, b)
    }

    fn inv(&self, a: usize) -> usize {
        self.inner.inv(a)
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn subgroups(&self) -> Vec<Vec<usize>> {
        self.inner.subgroups()
    }

    fn is_isomorphic(&self, other: &PyGroup) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("Group(order={})", self.inner.order())
    }
}

#[pyclass(name = "Algebra", module = "pytangal", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    inner: Algebra,
}

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    fn from_json(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyAlgebra { inner: Algebra::from_json(&from_py(doc)?).map_err(err)? })
    }

    /// k x k x ... x k, n factors.
    #[staticmethod]
    fn diagonal(field: &PyField, n: usize) -> Self {
        PyAlgebra { inner: Algebra::diagonal(&field.inner, n) }
    }

    /// k[x]/(f).
    #[staticmethod]
    fn quotient(poly: &PyPoly) -> PyResult<Self> {
        Ok(PyAlgebra { inner: Algebra::quotient_poly(&poly.inner).map_err(err)? })
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn mul(&self, a: Vec<u32>, b: Vec<u32>) -> PyResult<Vec<u32>> {
        if a.len() != self.inner.dim() || b.len() != self.inner.dim() {
            return Err(err(Error::DimensionMismatch("element length".into())));
        }
        Ok(self.inner.mul(&a, &b))
    }

    fn tensor(&self, other: &PyAlgebra) -> PyResult<PyAlgebra> {
        Ok(PyAlgebra { inner: self.inner.tensor(&other.inner).map_err(err)? })
    }

    fn product(&self, other: &PyAlgebra) -> PyResult<PyAlgebra> {
        Ok(PyAlgebra { inner: self.inner.product(&other.inner).map_err(err)? })
    }

    fn is_separable(&self) -> bool {
        self.inner.is_separable()
    }

    fn nilradical(&self) -> Vec<Vec<u32>> {
        self.inner.nilradical()
    }

    /// Largest separable subalgebra, with its basis in ambient coordinates.
    fn pi0(&self) -> (PyAlgebra, Vec<Vec<u32>>) {
        let s = self.inner.pi0();
        (PyAlgebra { inner: s.induced.clone() }, s.basis.transpose().to_rows())
    }

    fn component_count(&self) -> usize {
        self.inner.component_count()
    }

    #[pyo3(signature = (seed = suite::DEFAULT_SEED))]
    fn splitting_degree(&self, seed: u64) -> u32 {
        self.inner.splitting_degree(seed)
    }

    #[pyo3(signature = (seed = suite::DEFAULT_SEED))]
    fn idempotents(&self, seed: u64) -> Vec<Vec<u32>> {
        tangal::pierce::idempotents(&self.inner, seed)
    }

    /// Number of algebra maps to the base field.
    fn point_count(&self) -> usize {
        self.inner.points().len()
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, q={})", self.inner.dim(), self.inner.field().q())
    }
}

#[pyclass(name = "HopfAlgebra", module = "pytangal", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyHopf {
    inner: HopfAlgebra,
}

#[pymethods]
impl PyHopf {
    #[staticmethod]
    fn from_json(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyHopf { inner: HopfAlgebra::from_json(&from_py(doc)?).map_err(err)? })
    }

    /// Functions on a finite group.
    #[staticmethod]
    fn constant(group: &PyGroup, field: &PyField) -> Self {
        PyHopf { inner: HopfAlgebra::constant(&group.inner, &field.inner) }
    }

    /// k[x]/(x^n - 1) with x grouplike.
    #[staticmethod]
    fn mu(n: usize, field: &PyField) -> PyResult<Self> {
        Ok(PyHopf { inner: HopfAlgebra::mu(n, &field.inner).map_err(err)? })
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn algebra(&self) -> PyAlgebra {
        PyAlgebra { inner: self.inner.algebra().clone() }
    }

    fn is_cocommutative(&self) -> bool {
        self.inner.is_cocommutative()
    }

    fn points_group(&self) -> PyResult<PyGroup> {
        Ok(PyGroup { inner: hopf::points_group(&self.inner).map_err(err)?.group })
    }

    fn pi0(&self) -> PyResult<PyHopf> {
        Ok(PyHopf { inner: hopf::pi0_hopf(&self.inner).map_err(err)?.0 })
    }

    fn identity_component(&self) -> PyResult<PyHopf> {
        Ok(PyHopf { inner: hopf::identity_component(&self.inner).map_err(err)?.0 })
    }

    /// Number of Hopf algebra maps self -> other.
    #[pyo3(signature = (other, budget = hopf::DEFAULT_BUDGET))]
    fn hom_count(&self, other: &PyHopf, budget: u128) -> PyResult<usize> {
        Ok(hopf::hopf_homs(&self.inner, &other.inner, budget).map_err(err)?.len())
    }

    /// Tannaka reconstruction from the regular comodule.
    #[pyo3(signature = (budget = rep::DEFAULT_HOM_BUDGET))]
    fn reconstruct<'py>(&self, py: Python<'py>, budget: u128) -> PyResult<Bound<'py, PyAny>> {
        let s = [rep::Comodule::regular(&self.inner)];
        to_py(py, &rep::verify_reconstruction(&self.inner, &s, budget).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("HopfAlgebra(dim={}, q={})", self.inner.dim(), self.inner.field().q())
    }
}

#[pyclass(name = "GSet", module = "pytangal", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGSet {
    inner: GSet,
}

#[pymethods]
impl PyGSet {
    /// `action[g * size + x]` is g.x.
    #[new]
    fn new(group: &PyGroup, size: usize, action: Vec<usize>) -> PyResult<Self> {
        Ok(PyGSet { inner: GSet::new(&group.inner, size, action).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyGSet { inner: GSet::from_json(&from_py(doc)?).map_err(err)? })
    }

    #[staticmethod]
    fn cosets(group: &PyGroup, subgroup: Vec<usize>) -> PyResult<Self> {
        Ok(PyGSet { inner: GSet::cosets(&group.inner, &subgroup).map_err(err)? })
    }

    #[staticmethod]
    fn regular(group: &PyGroup) -> Self {
        PyGSet { inner: GSet::regular(&group.inner) }
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup { inner: self.inner.group().clone() }
    }

    fn act(&self, g: usize, x: usize) -> PyResult<usize> {
        if g >= self.inner.group().order() || x >= self.inner.size() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.act(g, x))
    }

    fn is_transitive(&self) -> bool {
        self.inner.is_transitive()
    }

    fn orbits(&self) -> Vec<PyGSet> {
        gset::orbits(&self.inner).parts.into_iter().map(|p| PyGSet { inner: p }).collect()
    }

    fn coproduct(&self, other: &PyGSet) -> PyResult<PyGSet> {
        Ok(PyGSet { inner: self.inner.coproduct(&other.inner).map_err(err)? })
    }

    /// Equivariant maps self -> other, as lists of images.
    #[pyo3(signature = (other, budget = hopf::DEFAULT_BUDGET))]
    fn homs(&self, other: &PyGSet, budget: u128) -> PyResult<Vec<Vec<usize>>> {
        Ok(gset::homs(&self.inner, &other.inner, budget).map_err(err)?.into_iter().map(|m| m.map).collect())
    }

    fn linearize(&self, field: &PyField) -> PyResult<PyMonoid> {
        Ok(PyMonoid { inner: csep::linearize(&self.inner, &field.inner).map_err(err)? })
    }

    /// Bijection from this set onto the spectrum of its linearization.
    #[pyo3(signature = (field, seed = suite::DEFAULT_SEED))]
    fn roundtrip(&self, field: &PyField, seed: u64) -> PyResult<Vec<usize>> {
        Ok(csep::roundtrip_gset(&self.inner, &field.inner, seed).map_err(err)?.map)
    }

    fn __repr__(&self) -> String {
        format!("GSet(size={}, order={})", self.inner.size(), self.inner.group().order())
    }
}

#[pyclass(name = "Representation", module = "pytangal", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRep {
    inner: Representation,
}

#[pymethods]
impl PyRep {
    #[staticmethod]
    fn from_json(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyRep { inner: Representation::from_json(&from_py(doc)?).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (group, field, dim = 1))]
    fn trivial(group: &PyGroup, field: &PyField, dim: usize) -> Self {
        PyRep { inner: Representation::trivial(&group.inner, &field.inner, dim) }
    }

    #[staticmethod]
    fn regular(group: &PyGroup, field: &PyField) -> Self {
        PyRep { inner: Representation::regular(&group.inner, &field.inner) }
    }

    /// Permutation representation of a G-set.
    #[staticmethod]
    fn permutation(x: &PyGSet, field: &PyField) -> PyResult<Self> {
        let g = &x.inner;
        let r = Representation::permutation(g.group(), &field.inner, g.size(), |a, i| g.act(a, i)).map_err(err)?;
        Ok(PyRep { inner: r })
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn matrix(&self, g: usize) -> PyResult<Vec<Vec<u32>>> {
        if g >= self.inner.group().order() {
            return Err(PyValueError::new_err("group element out of range"));
        }
        Ok(self.inner.matrix(g).to_rows())
    }

    fn character(&self) -> Vec<u32> {
        self.inner.character_table()
    }

    fn tensor(&self, other: &PyRep) -> PyResult<PyRep> {
        Ok(PyRep { inner: self.inner.tensor(&other.inner).map_err(err)? })
    }

    fn direct_sum(&self, other: &PyRep) -> PyResult<PyRep> {
        Ok(PyRep { inner: self.inner.direct_sum(&other.inner).map_err(err)? })
    }

    fn dual(&self) -> PyRep {
        PyRep { inner: self.inner.dual() }
    }

    /// Basis of Hom_G(self, other), each a row-major matrix.
    fn hom_space(&self, other: &PyRep) -> PyResult<Vec<Vec<Vec<u32>>>> {
        Ok(rep::hom_space(&self.inner, &other.inner).map_err(err)?.iter().map(|m| m.to_rows()).collect())
    }

    fn __eq__(&self, other: &PyRep) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Representation(dim={}, order={})", self.inner.dim(), self.inner.group().order())
    }
}

#[pyclass(name = "FrobeniusMonoid", module = "pytangal", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMonoid {
    inner: FrobeniusMonoid,
}

#[pymethods]
impl PyMonoid {
    #[staticmethod]
    fn from_json(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyMonoid { inner: FrobeniusMonoid::from_json(&from_py(doc)?).map_err(err)? })
    }

    /// Trace-form Frobenius structure on a separable algebra carried by `carrier`.
    #[staticmethod]
    fn from_algebra(carrier: &PyRep, algebra: &PyAlgebra) -> PyResult<Self> {
        Ok(PyMonoid { inner: FrobeniusMonoid::from_separable_algebra(carrier.inner.clone(), &algebra.inner).map_err(err)? })
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn carrier(&self) -> PyRep {
        PyRep { inner: self.inner.carrier().clone() }
    }

    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.report())
    }

    /// Raises NeedsExtension when the idempotents are not rational.
    #[pyo3(signature = (seed = suite::DEFAULT_SEED))]
    fn spectrum(&self, seed: u64) -> PyResult<PyGSet> {
        Ok(PyGSet { inner: csep::spectrum(&self.inner, seed).map_err(err)?.gset })
    }

    /// Comonoid morphisms self -> other, as matrices.
    #[pyo3(signature = (other, budget = hopf::DEFAULT_BUDGET, seed = suite::DEFAULT_SEED))]
    fn comonoid_homs(&self, other: &PyMonoid, budget: u128, seed: u64) -> PyResult<Vec<Vec<Vec<u32>>>> {
        let hs = csep::comonoid_homs(&self.inner, &other.inner, budget, seed).map_err(err)?;
        Ok(hs.iter().map(|h| h.matrix.to_rows()).collect())
    }

    fn __repr__(&self) -> String {
        format!("FrobeniusMonoid(dim={})", self.inner.dim())
    }
}

/// Compare Aut of the fiber functor, the points of the reconstructed Hopf
/// algebra and the group itself.
#[pyfunction]
#[pyo3(signature = (group, field, budget = hopf::DEFAULT_BUDGET, seed = suite::DEFAULT_SEED))]
fn gamma_report<'py>(py: Python<'py>, group: &PyGroup, field: &PyField, budget: u128, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &csep::gamma_report(&group.inner, &field.inner, budget, seed).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (group, field, samples = suite::DUALITY_PAIRS, seed = suite::DEFAULT_SEED))]
fn check_fiber_axioms<'py>(py: Python<'py>, group: &PyGroup, field: &PyField, samples: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &rep::check_fiber_axioms(&group.inner, &field.inner, samples, seed).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (seed = suite::DEFAULT_SEED, filter = None))]
fn run_suite<'py>(py: Python<'py>, seed: u64, filter: Option<String>) -> PyResult<Bound<'py, PyAny>> {
    let r = suite::run_suite(&SuiteOptions { seed, filter, timings: false });
    to_py(py, &r)
}

#[pymodule]
fn pytangal(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyHopf>()?;
    m.add_class::<PyGSet>()?;
    m.add_class::<PyRep>()?;
    m.add_class::<PyMonoid>()?;
    m.add_function(wrap_pyfunction!(gamma_report, m)?)?;
    m.add_function(wrap_pyfunction!(check_fiber_axioms, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("NeedsExtension", m.py().get_type::<NeedsExtension>())?;
    Ok(())
}
