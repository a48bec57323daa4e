//! Python bindings for `neural-ideals`.
//!
//! Codewords are passed as `0/1` strings and pseudomonomials as their text
//! form (`x1*(1-x3)`) or as `Pseudomonomial` objects. Library errors are
//! raised as `NeuralError`, a subclass of `ValueError`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use neural_ideals::realize::interval::parse_rational;
use neural_ideals::text::{self, Realization};
use neural_ideals as ni;

create_exception!(pyneural, NeuralError, PyValueError);

fn err(e: ni::Error) -> PyErr {
    NeuralError::new_err(e.to_string())
}

fn codeword(bits: &str) -> PyResult<ni::Codeword> {
    bits.parse().map_err(err)
}

fn permutation(images: Vec<usize>) -> PyResult<ni::Permutation> {
    ni::Permutation::new(images).map_err(err)
}

#[pyclass(name = "Pseudomonomial", module = "pyneural", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPseudomonomial(ni::Pseudomonomial);

#[pymethods]
impl PyPseudomonomial {
    /// `Π_{i∈sigma} x_i Π_{j∈tau} (1 - x_j)` over `n` variables.
    #[new]
    #[pyo3(signature = (n, sigma=vec![], tau=vec![]))]
    fn new(n: usize, sigma: Vec<usize>, tau: Vec<usize>) -> PyResult<Self> {
        ni::Pseudomonomial::new(n, &sigma, &tau).map(Self).map_err(err)
    }

    #[staticmethod]
    fn parse(n: usize, text: &str) -> PyResult<Self> {
        ni::Pseudomonomial::parse(n, text).map(Self).map_err(err)
    }

    /// The indicator of a codeword.
    #[staticmethod]
    fn indicator(bits: &str) -> PyResult<Self> {
        Ok(Self(ni::Pseudomonomial::indicator(&codeword(bits)?)))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn sigma(&self) -> Vec<usize> {
        self.0.sigma()
    }

    #[getter]
    fn tau(&self) -> Vec<usize> {
        self.0.tau()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn eval(&self, bits: &str) -> PyResult<bool> {
        self.0.eval(&codeword(bits)?).map_err(err)
    }

    fn divides(&self, other: &Self) -> PyResult<bool> {
        self.0.divides(&other.0).map_err(err)
    }

    /// Codewords whose indicators sum to this pseudomonomial.
    fn expand_indicators(&self) -> PyResult<Vec<String>> {
        Ok(self
            .0
            .expand_indicators()
            .map_err(err)?
            .iter()
            .map(|w| w.to_string())
            .collect())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Pseudomonomial({}, \"{}\")", self.0.n(), self.0)
    }
}

/// A pseudomonomial given as an object or as text over `n` variables.
#[derive(FromPyObject)]
enum PmArg {
    Pm(PyPseudomonomial),
    Text(String),
}

impl PmArg {
    fn resolve(self, n: usize) -> PyResult<ni::Pseudomonomial> {
        match self {
            PmArg::Pm(p) => Ok(p.0),
            PmArg::Text(t) => ni::Pseudomonomial::parse(n, &t).map_err(err),
        }
    }
}

#[pyclass(name = "Code", module = "pyneural", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyCode(ni::Code);

#[pymethods]
impl PyCode {
    #[new]
    #[pyo3(signature = (n, words=vec![]))]
    fn new(n: usize, words: Vec<String>) -> PyResult<Self> {
        ni::Code::from_strs(n, &words).map(Self).map_err(err)
    }

    /// Parses the code file format. `n` is needed only for empty files.
    #[staticmethod]
    #[pyo3(signature = (content, n=None))]
    fn from_text(content: &str, n: Option<usize>) -> PyResult<Self> {
        Ok(Self(text::parse_code(content, n).map_err(err)?.code))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// Codewords in canonical order.
    #[getter]
    fn words(&self) -> Vec<String> {
        self.0.iter().map(|w| w.to_string()).collect()
    }

    fn permute(&self, images: Vec<usize>) -> PyResult<Self> {
        self.0.permute(&permutation(images)?).map(Self).map_err(err)
    }

    fn bitflip(&self, i: usize) -> PyResult<Self> {
        self.0.bitflip(i).map(Self).map_err(err)
    }

    fn restrict(&self, m: usize, mp: usize) -> PyResult<Self> {
        self.0.restrict(m, mp).map(Self).map_err(err)
    }

    fn to_text(&self) -> String {
        text::write_code(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, bits: &str) -> PyResult<bool> {
        Ok(self.0.contains(&codeword(bits)?))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Code({}, {:?})", self.0.n(), self.words())
    }
}

#[pyclass(name = "NeuralIdeal", module = "pyneural", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyNeuralIdeal(ni::NeuralIdeal);

#[pymethods]
impl PyNeuralIdeal {
    /// The neural ideal of a code.
    #[new]
    fn new(code: &PyCode) -> Self {
        Self(ni::NeuralIdeal::from_code(code.0.clone()))
    }

    /// The ideal generated by pseudomonomials over `n` variables.
    #[staticmethod]
    fn from_generators(n: usize, generators: Vec<PmArg>) -> PyResult<Self> {
        let gens = generators
            .into_iter()
            .map(|g| g.resolve(n))
            .collect::<PyResult<Vec<_>>>()?;
        let set = ni::GeneratorSet::new(n, gens).map_err(err)?;
        ni::NeuralIdeal::from_generators(&set).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn code(&self) -> PyCode {
        PyCode(self.0.code().clone())
    }

    fn contains(&self, f: PmArg) -> PyResult<bool> {
        self.0.contains(&f.resolve(self.0.n())?).map_err(err)
    }

    /// A codeword on which `f` is 1, or `None` when `f` is in the ideal.
    fn witness(&self, f: PmArg) -> PyResult<Option<String>> {
        let w = self.0.witness(&f.resolve(self.0.n())?).map_err(err)?;
        Ok(w.map(|w| w.to_string()))
    }

    /// `f` written as a sum of generators, e.g. `(1-x1)*x2 + x1*x2`.
    fn certificate(&self, f: PmArg) -> PyResult<String> {
        let cert = self.0.membership_certificate(&f.resolve(self.0.n())?).map_err(err)?;
        Ok(cert.to_string())
    }

    fn generators(&self) -> PyResult<Vec<PyPseudomonomial>> {
        let gens = self.0.generators().map_err(err)?;
        Ok(gens.gens().iter().map(|g| PyPseudomonomial(*g)).collect())
    }

    #[pyo3(signature = (bound=ni::ideals::DEFAULT_ENUMERATION_BOUND))]
    fn canonical_form(&self, bound: usize) -> PyResult<Vec<PyPseudomonomial>> {
        let cf = self.0.canonical_form_bounded(bound).map_err(err)?;
        Ok(cf.iter().map(|f| PyPseudomonomial(*f)).collect())
    }

    fn __repr__(&self) -> String {
        format!("NeuralIdeal({})", self.0.code())
    }
}

#[pyclass(name = "NipHom", module = "pyneural", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyNipHom(ni::NipHom);

#[pymethods]
impl PyNipHom {
    /// A map `F_2[n] → F_2[m]` from one image per variable, each written as
    /// `0`, `1`, `x<j>` or `1-x<j>`.
    #[new]
    fn new(m: usize, images: Vec<String>) -> PyResult<Self> {
        let raw = images
            .iter()
            .map(|s| text::parse_image(s).map_err(err))
            .collect::<PyResult<Vec<_>>>()?;
        ni::NipHom::validate(raw.len(), m, &raw).map(Self).map_err(err)
    }

    /// Parses the hom file format.
    #[staticmethod]
    fn from_text(content: &str) -> PyResult<Self> {
        let raw = text::parse_hom(content).map_err(err)?;
        raw.validate().map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        ni::NipHom::identity(n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn permutation(images: Vec<usize>) -> PyResult<Self> {
        ni::NipHom::permutation(&permutation(images)?).map(Self).map_err(err)
    }

    #[staticmethod]
    fn bitflip(n: usize, flips: Vec<usize>) -> PyResult<Self> {
        ni::NipHom::bitflip(n, &flips).map(Self).map_err(err)
    }

    #[staticmethod]
    fn restriction(n: usize, m: usize, mp: usize) -> PyResult<Self> {
        ni::NipHom::restriction(n, m, mp).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn images(&self) -> Vec<String> {
        self.0.images().iter().map(|i| i.to_string()).collect()
    }

    /// The image of `f`, or `None` when it is zero.
    fn apply_pm(&self, f: PmArg) -> PyResult<Option<PyPseudomonomial>> {
        let image = self.0.apply_pm(&f.resolve(self.0.n())?).map_err(err)?;
        Ok(image.pseudomonomial().map(|p| PyPseudomonomial(*p)))
    }

    fn apply_code(&self, code: &PyCode) -> PyResult<PyCode> {
        self.0.apply_code(&code.0).map(PyCode).map_err(err)
    }

    fn apply_ideal(&self, ideal: &PyNeuralIdeal) -> PyResult<PyNeuralIdeal> {
        self.0.apply_ideal(&ideal.0).map(PyNeuralIdeal).map_err(err)
    }

    fn preimage_ideal(&self, ideal: &PyNeuralIdeal) -> PyResult<PyNeuralIdeal> {
        self.0.preimage_ideal(&ideal.0).map(PyNeuralIdeal).map_err(err)
    }

    /// The canonical form of the image of `ideal`, transported from the
    /// canonical form of `ideal`.
    fn transport_cf(&self, ideal: &PyNeuralIdeal) -> PyResult<Vec<PyPseudomonomial>> {
        let cf = ideal.0.canonical_form().map_err(err)?;
        let moved = self.0.transport_cf(&cf).map_err(err)?;
        Ok(moved.iter().map(|f| PyPseudomonomial(*f)).collect())
    }

    /// `self ∘ first`.
    fn compose(&self, first: &Self) -> PyResult<Self> {
        self.0.compose(&first.0).map(Self).map_err(err)
    }

    fn decompose(&self) -> PyDecomposition {
        PyDecomposition(self.0.decompose())
    }

    fn to_text(&self) -> String {
        text::write_hom(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("NipHom(m={}, images={:?})", self.0.m(), self.images())
    }
}

#[pyclass(name = "Decomposition", module = "pyneural", frozen)]
struct PyDecomposition(ni::Decomposition);

#[pymethods]
impl PyDecomposition {
    #[getter]
    fn flips(&self) -> Vec<usize> {
        self.0.flips()
    }

    #[getter]
    fn perm(&self) -> Vec<usize> {
        self.0.perm().images().to_vec()
    }

    #[getter]
    fn restriction(&self) -> (usize, usize) {
        self.0.restriction()
    }

    fn delta(&self) -> PyNipHom {
        PyNipHom(self.0.delta())
    }

    fn lambda_(&self) -> PyNipHom {
        PyNipHom(self.0.lambda())
    }

    fn omega(&self) -> PyNipHom {
        PyNipHom(self.0.omega())
    }

    fn recompose(&self) -> PyNipHom {
        PyNipHom(self.0.recompose())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// A transformation given as keyword arguments: exactly one of
/// `permute=[...]`, `flip=i`, `restrict=(m, mp)`.
fn transform(
    permute: Option<Vec<usize>>,
    flip: Option<usize>,
    restrict: Option<(usize, usize)>,
) -> PyResult<ni::Transform> {
    match (permute, flip, restrict) {
        (Some(images), None, None) => Ok(ni::Transform::Permute(permutation(images)?)),
        (None, Some(i), None) => Ok(ni::Transform::Flip(i)),
        (None, None, Some((m, mp))) => Ok(ni::Transform::Restrict { m, mp }),
        _ => Err(PyValueError::new_err(
            "give exactly one of permute, flip, restrict",
        )),
    }
}

#[derive(FromPyObject)]
enum Endpoint {
    Int(i64),
    Text(String),
}

impl Endpoint {
    fn value(&self) -> PyResult<ni::Rational> {
        match self {
            Endpoint::Int(k) => Ok(ni::Rational::from_integer(*k)),
            Endpoint::Text(s) => parse_rational(s).map_err(err),
        }
    }
}

fn interval(bounds: &(Endpoint, Endpoint)) -> PyResult<ni::Interval> {
    ni::Interval::new(bounds.0.value()?, bounds.1.value()?).map_err(err)
}

/// A point realization or a 1-D interval realization.
#[pyclass(name = "Cover", module = "pyneural", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyCover(Realization);

#[pymethods]
impl PyCover {
    /// Point `r` lies in set `i` iff `rows[r][i-1] == "1"`.
    #[staticmethod]
    fn from_rows(n: usize, rows: Vec<String>) -> PyResult<Self> {
        let rows = rows.iter().map(|r| codeword(r)).collect::<PyResult<Vec<_>>>()?;
        let cover = ni::Cover::from_incidence(&rows, n).map_err(err)?;
        Ok(Self(Realization::Points(cover)))
    }

    /// Sets given as lists of `(start, end)` half-open intervals. Endpoints
    /// are integers or strings such as `"3/2"`.
    #[staticmethod]
    fn from_intervals(
        universe: (Endpoint, Endpoint),
        sets: Vec<Vec<(Endpoint, Endpoint)>>,
    ) -> PyResult<Self> {
        let sets = sets
            .iter()
            .map(|parts| {
                parts
                    .iter()
                    .map(interval)
                    .collect::<PyResult<Vec<_>>>()
                    .map(ni::IntervalSet::new)
            })
            .collect::<PyResult<Vec<_>>>()?;
        let cover = ni::IntervalCover::new(interval(&universe)?, sets).map_err(err)?;
        Ok(Self(Realization::Intervals(cover)))
    }

    /// Parses either realization file format.
    #[staticmethod]
    fn from_text(content: &str) -> PyResult<Self> {
        text::parse_realization(content).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        match &self.0 {
            Realization::Points(c) => c.n(),
            Realization::Intervals(c) => c.n(),
        }
    }

    #[getter]
    fn is_interval(&self) -> bool {
        matches!(self.0, Realization::Intervals(_))
    }

    fn code(&self) -> PyCode {
        PyCode(self.0.code())
    }

    /// Convexity of an interval realization.
    fn is_convex(&self) -> PyResult<bool> {
        match &self.0 {
            Realization::Intervals(c) => Ok(c.is_convex()),
            Realization::Points(_) => Err(PyValueError::new_err(
                "convexity is only defined for interval realizations",
            )),
        }
    }

    #[pyo3(signature = (*, permute=None, flip=None, restrict=None))]
    fn transform(
        &self,
        permute: Option<Vec<usize>>,
        flip: Option<usize>,
        restrict: Option<(usize, usize)>,
    ) -> PyResult<Self> {
        let t = transform(permute, flip, restrict)?;
        let moved = match &self.0 {
            Realization::Points(c) => Realization::Points(c.transform(&t).map_err(err)?),
            Realization::Intervals(c) => Realization::Intervals(c.transform(&t).map_err(err)?),
        };
        Ok(Self(moved))
    }

    fn to_text(&self) -> String {
        text::write_realization(&self.0)
    }

    fn __str__(&self) -> String {
        self.to_text()
    }
}

#[pyfunction]
fn ideal_equal(a: &PyNeuralIdeal, b: &PyNeuralIdeal) -> PyResult<bool> {
    ni::ideal_equal(&a.0, &b.0).map_err(err)
}

/// Canonical form of the neural ideal of `code`.
#[pyfunction]
fn canonical_form(code: &PyCode) -> PyResult<Vec<PyPseudomonomial>> {
    PyNeuralIdeal(ni::NeuralIdeal::from_code(code.0.clone())).canonical_form(ni::ideals::DEFAULT_ENUMERATION_BOUND)
}

#[pymodule]
fn pyneural(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NeuralError", m.py().get_type::<NeuralError>())?;
    m.add_class::<PyPseudomonomial>()?;
    m.add_class::<PyCode>()?;
    m.add_class::<PyNeuralIdeal>()?;
    m.add_class::<PyNipHom>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_class::<PyCover>()?;
    m.add_function(wrap_pyfunction!(ideal_equal, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_form, m)?)?;
    Ok(())
}
