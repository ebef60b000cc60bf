//! Python bindings: `import geokernel`.

use num_complex::Complex64;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use geokernel::inversive::{invert_point, real_cross_ratio};
use geokernel::klein::{self, BolyaiConstruction};
use geokernel::moebius::complex_cross_ratio;
use geokernel::poincare as pc;
use geokernel::script::{self, Status};
use geokernel::spherical as sp;
use geokernel::{Cline, ExtPoint, GeoError, InversionCircle, Tolerances};

fn err(e: GeoError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `None` stands for the point at infinity.
fn ext(z: Option<Complex64>) -> ExtPoint {
    z.map_or(ExtPoint::Infinity, ExtPoint::Finite)
}

fn tolerances(eps_assert: Option<f64>) -> PyResult<Tolerances> {
    let mut t = Tolerances::default();
    if let Some(e) = eps_assert {
        t.eps_assert = e;
        t.validate().map_err(err)?;
    }
    Ok(t)
}

/// A point of the Poincaré disk.
#[pyclass(name = "HPoint", frozen, skip_from_py_object, module = "geokernel")]
#[derive(Clone, Copy)]
struct PyHPoint(pc::HPoint);

#[pymethods]
impl PyHPoint {
    #[new]
    fn new(x: f64, y: f64) -> PyResult<Self> {
        pc::HPoint::from_xy(x, y).map(PyHPoint).map_err(err)
    }

    #[getter]
    fn z(&self) -> Complex64 {
        self.0.z()
    }

    #[getter]
    fn x(&self) -> f64 {
        self.0.z().re
    }

    #[getter]
    fn y(&self) -> f64 {
        self.0.z().im
    }

    fn dist(&self, other: &PyHPoint) -> f64 {
        pc::h_dist(self.0, other.0)
    }

    #[pyo3(name = "to_klein")]
    fn klein_image(&self) -> Complex64 {
        klein::poincare_to_klein(self.0).z()
    }

    #[staticmethod]
    fn from_klein(x: f64, y: f64) -> PyResult<Self> {
        let k = klein::KPoint::from_xy(x, y).map_err(err)?;
        Ok(PyHPoint(klein::klein_to_poincare(k)))
    }

    fn __repr__(&self) -> String {
        format!("HPoint({}, {})", self.0.z().re, self.0.z().im)
    }
}

/// An h-line, given by its ideal points on the unit circle.
#[pyclass(name = "HLine", frozen, skip_from_py_object, module = "geokernel")]
#[derive(Clone)]
struct PyHLine(pc::HLine);

#[pymethods]
impl PyHLine {
    #[staticmethod]
    fn through(p: &PyHPoint, q: &PyHPoint) -> PyResult<Self> {
        pc::h_line_through(p.0, q.0).map(PyHLine).map_err(err)
    }

    #[staticmethod]
    fn from_ideal(a: Complex64, b: Complex64) -> PyResult<Self> {
        pc::HLine::from_ideal(a, b).map(PyHLine).map_err(err)
    }

    #[getter]
    fn ideal_points(&self) -> (Complex64, Complex64) {
        (self.0.ideal_a, self.0.ideal_b)
    }

    /// `(center, radius)` of the carrier circle, or `None` for a diameter.
    #[getter]
    fn carrier(&self) -> Option<(Complex64, f64)> {
        match &self.0.carrier {
            Cline::Circle(c) => Some((c.center, c.radius)),
            Cline::Line(_) => None,
        }
    }

    #[pyo3(signature = (p, eps = 1e-9))]
    fn contains(&self, p: &PyHPoint, eps: f64) -> bool {
        self.0.contains(p.0, eps)
    }

    fn reflect(&self, p: &PyHPoint) -> PyHPoint {
        PyHPoint(pc::h_reflect(&self.0, p.0))
    }

    fn foot(&self, p: &PyHPoint) -> PyHPoint {
        PyHPoint(pc::h_foot(p.0, &self.0))
    }

    fn dist(&self, p: &PyHPoint) -> f64 {
        pc::h_dist_to_line(p.0, &self.0)
    }

    fn perpendicular(&self, p: &PyHPoint) -> PyResult<PyHLine> {
        pc::h_perpendicular(p.0, &self.0).map(PyHLine).map_err(err)
    }

    /// The two asymptotic parallels through `p`.
    fn parallels(&self, p: &PyHPoint) -> PyResult<(PyHLine, PyHLine)> {
        let (a, b) = pc::asymptotic_parallels(p.0, &self.0, &Tolerances::default()).map_err(err)?;
        Ok((PyHLine(a), PyHLine(b)))
    }

    fn intersection(&self, other: &PyHLine) -> Option<PyHPoint> {
        pc::h_intersection(&self.0, &other.0, &Tolerances::default()).map(PyHPoint)
    }

    fn __repr__(&self) -> String {
        format!("HLine.from_ideal({}, {})", self.0.ideal_a, self.0.ideal_b)
    }
}

/// An h-circle with its Euclidean realization.
#[pyclass(name = "HCircle", frozen, skip_from_py_object, module = "geokernel")]
#[derive(Clone)]
struct PyHCircle(pc::HCircle);

#[pymethods]
impl PyHCircle {
    #[new]
    fn new(center: &PyHPoint, radius: f64) -> PyResult<Self> {
        pc::h_circle_realize(center.0, radius).map(PyHCircle).map_err(err)
    }

    #[staticmethod]
    fn ideal_incircle(a: Complex64, b: Complex64, c: Complex64) -> PyResult<Self> {
        pc::ideal_triangle_incircle(a, b, c).map(PyHCircle).map_err(err)
    }

    #[getter]
    fn hcenter(&self) -> PyHPoint {
        PyHPoint(self.0.hcenter)
    }

    #[getter]
    fn hradius(&self) -> f64 {
        self.0.hradius
    }

    #[getter]
    fn euclid(&self) -> (Complex64, f64) {
        (self.0.euclid.center, self.0.euclid.radius)
    }

    fn circumference(&self) -> PyResult<f64> {
        pc::h_circumference(self.0.hradius).map_err(err)
    }
}

/// `z ↦ (a·z + b)/(c·z + d)`; `None` is the point at infinity.
#[pyclass(name = "Moebius", frozen, skip_from_py_object, module = "geokernel")]
#[derive(Clone, Copy)]
struct PyMoebius(geokernel::Moebius);

#[pymethods]
impl PyMoebius {
    #[new]
    fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> PyResult<Self> {
        geokernel::Moebius::new(a, b, c, d).map(PyMoebius).map_err(err)
    }

    /// The map sending `z0, z1, zinf` to `0, 1, ∞`.
    #[staticmethod]
    fn from_three_points(z0: Option<Complex64>, z1: Option<Complex64>, zinf: Option<Complex64>) -> PyResult<Self> {
        geokernel::Moebius::from_three_points(ext(z0), ext(z1), ext(zinf))
            .map(PyMoebius)
            .map_err(err)
    }

    fn __call__(&self, z: Option<Complex64>) -> Option<Complex64> {
        self.0.apply(ext(z)).finite()
    }

    fn compose(&self, other: &PyMoebius) -> PyMoebius {
        PyMoebius(self.0.compose(&other.0))
    }

    fn inverse(&self) -> PyMoebius {
        PyMoebius(self.0.inverse())
    }

    #[getter]
    fn coefficients(&self) -> [Complex64; 4] {
        self.0.coefficients()
    }
}

/// A unit vector in R³.
#[pyclass(name = "SPoint", frozen, skip_from_py_object, module = "geokernel")]
#[derive(Clone, Copy)]
struct PySPoint(sp::SPoint);

#[pymethods]
impl PySPoint {
    /// Normalizes `(x, y, z)`.
    #[new]
    fn new(x: f64, y: f64, z: f64) -> PyResult<Self> {
        sp::SPoint::normalized([x, y, z].into()).map(PySPoint).map_err(err)
    }

    #[getter]
    fn xyz(&self) -> (f64, f64, f64) {
        let v = self.0.v();
        (v.x, v.y, v.z)
    }

    fn dist(&self, other: &PySPoint) -> f64 {
        sp::s_dist(self.0, other.0)
    }

    /// Stereographic image in the plane, `None` for the South Pole.
    #[pyo3(name = "to_plane")]
    fn plane_image(&self) -> Option<Complex64> {
        sp::sphere_to_plane(self.0).finite()
    }

    #[staticmethod]
    fn from_plane(z: Complex64) -> PySPoint {
        PySPoint(sp::stereographic_to_sphere(ExtPoint::Finite(z)))
    }
}

#[pyfunction]
fn h_dist(p: &PyHPoint, q: &PyHPoint) -> f64 {
    pc::h_dist(p.0, q.0)
}

/// Signed h-angle at `q`.
#[pyfunction]
fn h_angle(p: &PyHPoint, q: &PyHPoint, r: &PyHPoint) -> PyResult<f64> {
    pc::h_angle(p.0, q.0, r.0).map(|a| a.radians()).map_err(err)
}

#[pyfunction]
fn h_defect(p: &PyHPoint, q: &PyHPoint, r: &PyHPoint) -> PyResult<f64> {
    pc::h_defect(p.0, q.0, r.0, &Tolerances::default()).map_err(err)
}

#[pyfunction]
fn angle_of_parallelism(h: f64) -> PyResult<f64> {
    pc::angle_of_parallelism(h).map(|a| a.radians()).map_err(err)
}

#[pyfunction]
fn parallelism_distance(phi: f64) -> PyResult<f64> {
    pc::parallelism_distance(phi).map_err(err)
}

#[pyfunction]
fn h_circumference(r: f64) -> PyResult<f64> {
    pc::h_circumference(r).map_err(err)
}

#[pyfunction]
fn klein_dist(p: Complex64, q: Complex64) -> PyResult<f64> {
    let (p, q) = (klein::KPoint::new(p).map_err(err)?, klein::KPoint::new(q).map_err(err)?);
    Ok(klein::klein_dist(p, q))
}

/// Inversion in the circle with the given center and radius.
#[pyfunction]
fn invert(z: Option<Complex64>, center: Complex64, radius: f64) -> PyResult<Option<Complex64>> {
    let w = InversionCircle::new(center, radius).map_err(err)?;
    Ok(invert_point(&w, ext(z)).finite())
}

/// `AB·CD / (BC·DA)`.
#[pyfunction]
fn cross_ratio(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> PyResult<f64> {
    real_cross_ratio(a, b, c, d).map_err(err)
}

/// `(u−w)(v−z) / ((v−w)(u−z))`.
#[pyfunction]
fn complex_cross(
    u: Option<Complex64>,
    v: Option<Complex64>,
    w: Option<Complex64>,
    z: Option<Complex64>,
) -> PyResult<Complex64> {
    complex_cross_ratio(ext(u), ext(v), ext(w), ext(z)).map_err(err)
}

#[pyfunction]
fn s_excess(a: &PySPoint, b: &PySPoint, c: &PySPoint) -> PyResult<f64> {
    sp::s_excess(a.0, b.0, c.0, &Tolerances::default()).map_err(err)
}

/// Bolyai's construction of the parallels from `p` to `l`, as a dict.
#[pyfunction]
fn bolyai<'py>(py: Python<'py>, l: &PyHLine, p: &PyHPoint) -> PyResult<Bound<'py, PyDict>> {
    let b: BolyaiConstruction = klein::bolyai_construct(&l.0, p.0, &Tolerances::default()).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("q", PyHPoint(b.q))?;
    d.set_item("r", PyHPoint(b.r))?;
    d.set_item("t", (PyHPoint(b.t[0]), PyHPoint(b.t[1])))?;
    d.set_item("lines", (PyHLine(b.lines[0]), PyHLine(b.lines[1])))?;
    d.set_item("qr", b.qr())?;
    d.set_item("pt", b.pt())?;
    Ok(d)
}

/// Parses and evaluates a construction script.
///
/// Returns `(exit_code, report)` where `report` is the JSON report as Python
/// objects. A parse error raises `ValueError` carrying `line:col: message`.
#[pyfunction]
#[pyo3(signature = (text, tol = None))]
fn run_script<'py>(py: Python<'py>, text: &str, tol: Option<f64>) -> PyResult<(i32, Bound<'py, PyAny>)> {
    let report = script::run(text, &tolerances(tol)?).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let json = serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let obj = py.import("json")?.call_method1("loads", (json,))?;
    Ok((report.status.exit_code(), obj))
}

/// Renders every binding of a script as SVG.
#[pyfunction]
#[pyo3(signature = (text, width = 600))]
fn render_script(text: &str, width: u32) -> PyResult<String> {
    let report = script::run(text, &Tolerances::default()).map_err(|e| PyValueError::new_err(e.to_string()))?;
    if report.status == Status::GeometricError {
        return Err(PyValueError::new_err("script has geometric errors"));
    }
    script::render_svg(&report, &[], report.model, width).map_err(|e| PyKeyError::new_err(e.to_string()))
}

#[pymodule]
#[pyo3(name = "geokernel")]
fn geokernel_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHPoint>()?;
    m.add_class::<PyHLine>()?;
    m.add_class::<PyHCircle>()?;
    m.add_class::<PyMoebius>()?;
    m.add_class::<PySPoint>()?;
    m.add_function(wrap_pyfunction!(h_dist, m)?)?;
    m.add_function(wrap_pyfunction!(h_angle, m)?)?;
    m.add_function(wrap_pyfunction!(h_defect, m)?)?;
    m.add_function(wrap_pyfunction!(angle_of_parallelism, m)?)?;
    m.add_function(wrap_pyfunction!(parallelism_distance, m)?)?;
    m.add_function(wrap_pyfunction!(h_circumference, m)?)?;
    m.add_function(wrap_pyfunction!(klein_dist, m)?)?;
    m.add_function(wrap_pyfunction!(invert, m)?)?;
    m.add_function(wrap_pyfunction!(cross_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(complex_cross, m)?)?;
    m.add_function(wrap_pyfunction!(s_excess, m)?)?;
    m.add_function(wrap_pyfunction!(bolyai, m)?)?;
    m.add_function(wrap_pyfunction!(run_script, m)?)?;
    m.add_function(wrap_pyfunction!(render_script, m)?)?;
    Ok(())
}
