//! Python bindings. Exact values cross the boundary as `fractions.Fraction`,
//! rational functions of `q` as `(numerator, denominator)` strings.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use kme::cterm::{self, AutPlace, Mode};
use kme::local_oracle::{self, GkMode};
use kme::qfield::{int, rational_string};
use kme::verify::{self, Target};
use kme::{AutomorphismData, CartanType, Character, LPolynomial, Numeric, Place, RatFunc, Rational, TorusData, ZetaFunction};

create_exception!(kme_py, KmeError, PyException);

fn err(e: kme::Error) -> PyErr {
    KmeError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((rational_string(r),))
}

fn ratfunc(f: &RatFunc) -> (String, String) {
    (f.num().to_string(), f.den().to_string())
}

/// Accepts ints, `Fraction`s and strings such as `"-7/2"`.
fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(int(n));
    }
    let s: String = obj.str()?.extract()?;
    s.trim().parse::<Rational>().map_err(|_| KmeError::new_err(format!("cannot read '{s}' as a rational number")))
}

fn zeta(lpoly_half: Option<Vec<i64>>) -> ZetaFunction {
    ZetaFunction::new(LPolynomial::from_half(&lpoly_half.unwrap_or_default()))
}

#[pyclass(name = "AffineDatum", module = "kme_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAffineDatum {
    inner: kme::AffineDatum,
}

#[pymethods]
impl PyAffineDatum {
    #[new]
    fn new(kind: &str, rank: usize) -> PyResult<Self> {
        let kind: CartanType = kind.parse().map_err(err)?;
        Ok(Self { inner: kme::AffineDatum::build(kind, rank).map_err(err)? })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn num_generators(&self) -> usize {
        self.inner.num_generators()
    }

    #[getter]
    fn dual_coxeter(&self) -> i64 {
        self.inner.dual_coxeter()
    }

    #[getter]
    fn weyl_order(&self) -> u64 {
        self.inner.finite().weyl_order()
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.inner.affine_cartan().to_vec()
    }

    fn character(&self, values: &Bound<'_, PyList>) -> PyResult<PyCharacter> {
        let v = values.iter().map(|x| to_rational(&x)).collect::<PyResult<Vec<_>>>()?;
        let chi = Character::new(v);
        chi.check(&self.inner).map_err(err)?;
        Ok(PyCharacter { inner: chi })
    }

    fn element(&self, word: Vec<usize>) -> PyResult<PyWeylElement> {
        let w = kme::WeylElement::reduce(&self.inner, &word).map_err(err)?;
        Ok(PyWeylElement { inner: w, datum: self.inner.clone() })
    }

    /// All elements of length at most `max_len`, ordered by length then word.
    fn enumerate(&self, max_len: usize) -> PyResult<Vec<PyWeylElement>> {
        let els = kme::affine_weyl::enumerate(&self.inner, max_len).map_err(err)?;
        Ok(els.into_iter().map(|w| PyWeylElement { inner: w, datum: self.inner.clone() }).collect())
    }

    fn __repr__(&self) -> String {
        format!("AffineDatum('{}', {})", self.inner.finite().kind(), self.inner.rank())
    }
}

#[pyclass(name = "Character", module = "kme_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCharacter {
    inner: Character,
}

#[pymethods]
impl PyCharacter {
    fn values<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.values().iter().map(|v| fraction(py, v)).collect()
    }

    fn on_delta<'py>(&self, py: Python<'py>, datum: &PyAffineDatum) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.on_delta(&datum.inner))
    }

    /// `w o chi = w(chi + rho) - rho`.
    fn shifted(&self, element: &PyWeylElement) -> PyResult<PyCharacter> {
        let c = kme::affine_weyl::shifted_action(&element.datum, &element.inner, &self.inner).map_err(err)?;
        Ok(PyCharacter { inner: c })
    }

    fn __repr__(&self) -> String {
        let v: Vec<String> = self.inner.values().iter().map(rational_string).collect();
        format!("Character([{}])", v.join(", "))
    }
}

#[pyclass(name = "WeylElement", module = "kme_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWeylElement {
    inner: kme::WeylElement,
    datum: kme::AffineDatum,
}

#[pymethods]
impl PyWeylElement {
    #[getter]
    fn word(&self) -> Vec<usize> {
        self.inner.word().0
    }

    #[getter]
    fn length(&self) -> usize {
        self.inner.length()
    }

    fn inverse(&self) -> Self {
        Self { inner: self.inner.inverse(&self.datum), datum: self.datum.clone() }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self { inner: self.inner.mul(&self.datum, &other.inner), datum: self.datum.clone() }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    /// Positive roots sent negative by the inverse, as strings like `a1 + 2d`.
    fn inversion_set(&self) -> Vec<String> {
        self.inner.inversion_set(&self.datum).iter().map(|a| a.to_string()).collect()
    }

    fn inverse_inversion_set(&self) -> Vec<String> {
        self.inner.inverse_inversion_set(&self.datum).iter().map(|a| a.to_string()).collect()
    }

    /// `(classical word, translation)` with `w^{-1} = w_1 T_H`.
    fn decompose(&self) -> PyResult<(Vec<usize>, Vec<i64>)> {
        let d = self.inner.decompose(&self.datum).map_err(err)?;
        Ok((d.classical.word().0, d.translation))
    }

    fn __repr__(&self) -> String {
        format!("WeylElement({})", self.inner.word())
    }
}

/// `c(chi, w)` as `(numerator, denominator)` polynomials in `q`.
#[pyfunction]
#[pyo3(signature = (chi, element, lpoly_half=None))]
fn c_function(chi: &PyCharacter, element: &PyWeylElement, lpoly_half: Option<Vec<i64>>) -> PyResult<(String, String)> {
    let c = cterm::c_function(&element.datum, &chi.inner, &element.inner, &zeta(lpoly_half)).map_err(err)?;
    Ok(ratfunc(&c))
}

/// `c(chi, w)` at `q = q0`.
#[pyfunction]
#[pyo3(signature = (chi, element, q0, lpoly_half=None))]
fn c_value<'py>(
    py: Python<'py>,
    chi: &PyCharacter,
    element: &PyWeylElement,
    q0: i64,
    lpoly_half: Option<Vec<i64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let c = cterm::c_function(&element.datum, &chi.inner, &element.inner, &zeta(lpoly_half)).map_err(err)?;
    fraction(py, &c.eval(&int(q0)).map_err(err)?)
}

fn numeric<'py>(py: Python<'py>, n: &Numeric) -> PyResult<Bound<'py, PyAny>> {
    match n {
        Numeric::Exact(r) => fraction(py, r),
        Numeric::Approx(x) => Ok(x.into_pyobject(py)?.into_any()),
    }
}

/// Truncated constant term. `h` is a list of `(degree, orders)` and `m` a
/// list of `(degree, exponent)`.
#[pyfunction]
#[pyo3(signature = (datum, chi, max_len, q0=None, h=vec![], m=vec![], lpoly_half=None, meromorphic=false))]
#[allow(clippy::too_many_arguments)]
fn constant_term<'py>(
    py: Python<'py>,
    datum: &PyAffineDatum,
    chi: &PyCharacter,
    max_len: usize,
    q0: Option<u64>,
    h: Vec<(u32, Vec<i64>)>,
    m: Vec<(u32, i64)>,
    lpoly_half: Option<Vec<i64>>,
    meromorphic: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let torus = TorusData::new(h.into_iter().map(|(degree, ord)| Place { degree, ord }).collect()).map_err(err)?;
    let aut = AutomorphismData::new(m.into_iter().map(|(degree, m)| AutPlace { degree, m }).collect()).map_err(err)?;
    let mode = if meromorphic { Mode::Meromorphic } else { Mode::Convergence };
    let d = &datum.inner;
    let z = zeta(lpoly_half);
    let ct = py
        .detach(|| cterm::constant_term(d, &chi.inner, &torus, &aut, &z, max_len, q0, mode))
        .map_err(err)?;
    let terms = PyList::empty(py);
    for t in &ct.terms {
        let row = PyDict::new(py);
        row.set_item("word", t.element.word().0)?;
        row.set_item("length", t.element.length())?;
        row.set_item("c", ratfunc(&t.c))?;
        row.set_item("char_exponent", fraction(py, &t.char_exponent)?)?;
        terms.append(row)?;
    }
    let sums = PyList::empty(py);
    for p in &ct.partial_sums {
        let row = PyDict::new(py);
        row.set_item("L", p.max_len)?;
        row.set_item("partial_sum", numeric(py, &p.value)?)?;
        row.set_item("tail_bound", p.tail_bound)?;
        sums.append(row)?;
    }
    let out = PyDict::new(py);
    out.set_item("terms", terms)?;
    out.set_item("partial_sums", sums)?;
    if let Some(t) = &ct.theta {
        let theta = PyDict::new(py);
        theta.set_item("sigma1", t.sigma1)?;
        theta.set_item("sigma2", t.sigma2)?;
        theta.set_item("sigma2_coeff", fraction(py, &t.sigma2_coeff)?)?;
        theta.set_item("sigma3", t.sigma3)?;
        theta.set_item("m_eps", t.m_eps)?;
        out.set_item("theta", theta)?;
    }
    Ok(out)
}

/// Rank-one local integral: brute force when `m` is given, shell sums otherwise.
#[pyfunction]
#[pyo3(signature = (q, kappa, n=4, m=None))]
fn gk_integral<'py>(py: Python<'py>, q: u64, kappa: i64, n: u32, m: Option<u32>) -> PyResult<Bound<'py, PyDict>> {
    let mode = match m {
        Some(m) => GkMode::BruteForce { n, m },
        None => GkMode::Shells { n },
    };
    let g = py.detach(|| local_oracle::gk_integral(q, kappa, mode)).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("truncated", fraction(py, &g.truncated)?)?;
    out.set_item("tail", fraction(py, &g.tail)?)?;
    out.set_item("total", fraction(py, &g.total)?)?;
    out.set_item("closed_form", fraction(py, &g.closed_form)?)?;
    out.set_item("weak_hypothesis", g.weak_hypothesis)?;
    Ok(out)
}

/// Local product over the inversion set of `w^{-1}`, cross-checked by induction.
#[pyfunction]
fn gk_local_product<'py>(py: Python<'py>, chi: &PyCharacter, element: &PyWeylElement, q: u64) -> PyResult<Bound<'py, PyAny>> {
    let p = local_oracle::gk_local_product(&element.datum, &chi.inner, &element.inner, q).map_err(err)?;
    fraction(py, &p)
}

/// `(partial, closed, tail_bound)` for the genus-0 Euler product at real `s`.
#[pyfunction]
fn euler_partial(q: u64, s: &Bound<'_, PyAny>, max_deg: u32) -> PyResult<(f64, f64, f64)> {
    let e = kme::zeta::euler_partial(q, &to_rational(s)?, max_deg).map_err(err)?;
    Ok((e.partial, e.closed, e.tail_bound))
}

/// Run a verification grid; all targets when `target` is omitted. Returns
/// `(target, checks, failures)` triples.
#[pyfunction]
#[pyo3(signature = (target=None))]
fn verify_grid(py: Python<'_>, target: Option<&str>) -> PyResult<Vec<(String, usize, Vec<String>)>> {
    let targets = match target {
        Some(t) => vec![t.parse::<Target>().map_err(err)?],
        None => Target::ALL.to_vec(),
    };
    let reports = py
        .detach(|| targets.into_iter().map(verify::run).collect::<kme::Result<Vec<_>>>())
        .map_err(err)?;
    Ok(reports.into_iter().map(|r| (r.target.to_string(), r.checks, r.failures)).collect())
}

#[pymodule]
fn kme_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("KmeError", m.py().get_type::<KmeError>())?;
    m.add_class::<PyAffineDatum>()?;
    m.add_class::<PyCharacter>()?;
    m.add_class::<PyWeylElement>()?;
    m.add_function(wrap_pyfunction!(c_function, m)?)?;
    m.add_function(wrap_pyfunction!(c_value, m)?)?;
    m.add_function(wrap_pyfunction!(constant_term, m)?)?;
    m.add_function(wrap_pyfunction!(gk_integral, m)?)?;
    m.add_function(wrap_pyfunction!(gk_local_product, m)?)?;
    m.add_function(wrap_pyfunction!(euler_partial, m)?)?;
    m.add_function(wrap_pyfunction!(verify_grid, m)?)?;
    Ok(())
}
