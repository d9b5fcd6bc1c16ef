//! Python bindings. Reports cross the boundary as JSON or markdown text;
//! fields are given as basis names or comma-separated rationals.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use kvfcl_core::corpus;
use kvfcl_core::report::{self, Input, Parameters, Report};
use kvfcl_core::scalar::{format_scalar, parse_scalar};
use kvfcl_core::spectral::{char_poly, is_compact_vector, spectrum_is_pure_imaginary};
use kvfcl_core::theorems;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn render(r: &Report, format: &str) -> PyResult<String> {
    match format {
        "json" => Ok(r.to_json()),
        "markdown" => Ok(r.to_markdown()),
        other => Err(PyValueError::new_err(format!("unknown format `{other}`"))),
    }
}

/// A reductive homogeneous space `G/H` with a `G`-invariant metric.
#[pyclass(frozen, module = "kvfcl")]
struct Space {
    input: Input,
}

impl Space {
    fn field(&self, field: &str) -> PyResult<kvfcl_core::Vector> {
        self.input.parse_field(field).map_err(value_error)
    }
}

#[pymethods]
impl Space {
    /// Parses a space document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            input: Input::from_text(text).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        Ok(Self {
            input: Input::load(&path).map_err(value_error)?,
        })
    }

    /// One of the built-in example spaces.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let doc = corpus::corpus()
            .into_iter()
            .find(|d| d.name == name)
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))?;
        Ok(Self {
            input: Input::from_document(&doc).map_err(value_error)?,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.input.document.name.clone()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.input.algebra().dim()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.input.algebra().names().to_vec()
    }

    #[getter]
    fn sha256(&self) -> String {
        self.input.sha256.clone()
    }

    fn to_json(&self) -> String {
        self.input.document.to_json()
    }

    /// Coordinates of `[x, y]` as rational strings.
    fn bracket(&self, x: &str, y: &str) -> PyResult<Vec<String>> {
        let (x, y) = (self.field(x)?, self.field(y)?);
        Ok(self.input.algebra().bracket(&x, &y).coords().iter().map(format_scalar).collect())
    }

    fn char_poly(&self, field: &str) -> PyResult<String> {
        let x = self.field(field)?;
        Ok(char_poly(&self.input.algebra().ad(&x)).render("λ"))
    }

    fn is_pure_imaginary(&self, field: &str) -> PyResult<bool> {
        let x = self.field(field)?;
        spectrum_is_pure_imaginary(&char_poly(&self.input.algebra().ad(&x))).map_err(value_error)
    }

    fn is_compact_vector(&self, field: &str) -> PyResult<bool> {
        let x = self.field(field)?;
        Ok(is_compact_vector(self.input.algebra(), &x))
    }

    /// Constant-length verdict rendered as text, e.g.
    /// `RefutedAt word (e2,1): F=2 vs 1`.
    #[pyo3(signature = (field, samples=200, order=6, seed=0, tol=1e-9))]
    fn check_constant_length(&self, field: &str, samples: usize, order: usize, seed: u64, tol: f64) -> PyResult<String> {
        let x = self.field(field)?;
        let p = Parameters { samples, order, seed, tol, ..Parameters::default() };
        let cfg = p.sampling();
        let v = self
            .input
            .space
            .check_constant_length(&x, &cfg)
            .unwrap_or_else(|_| self.input.space.sampled_constant_length(&x, &cfg));
        Ok(v.render(self.input.algebra()))
    }

    #[pyo3(signature = (format="json"))]
    fn inspect(&self, format: &str) -> PyResult<String> {
        render(&report::cmd_inspect(&self.input, &Parameters::default()), format)
    }

    #[pyo3(signature = (field, format="json"))]
    fn spectrum(&self, field: &str, format: &str) -> PyResult<String> {
        let x = self.field(field)?;
        let p = Parameters { fields: vec![field.to_string()], ..Parameters::default() };
        render(&report::cmd_spectrum(&self.input, &p, &x), format)
    }

    #[pyo3(signature = (field, samples=200, order=6, seed=0, tol=1e-9, go=false, format="json"))]
    #[allow(clippy::too_many_arguments)]
    fn check(&self, field: &str, samples: usize, order: usize, seed: u64, tol: f64, go: bool, format: &str) -> PyResult<String> {
        let x = self.field(field)?;
        let p = Parameters { samples, order, seed, tol, go, statements: "all".into(), fields: vec![field.to_string()] };
        render(&report::cmd_check(&self.input, &p, &x), format)
    }

    #[pyo3(signature = (statements="all", fields=Vec::new(), samples=200, order=6, seed=0, tol=1e-9, format="json"))]
    #[allow(clippy::too_many_arguments)]
    fn verify(
        &self,
        statements: &str,
        fields: Vec<String>,
        samples: usize,
        order: usize,
        seed: u64,
        tol: f64,
        format: &str,
    ) -> PyResult<String> {
        let extra = fields.iter().map(|f| self.field(f)).collect::<PyResult<Vec<_>>>()?;
        let p = Parameters { samples, order, seed, tol, go: false, statements: statements.into(), fields };
        let r = report::cmd_verify(&self.input, &p, &extra).map_err(value_error)?;
        render(&r, format)
    }

    fn __repr__(&self) -> String {
        format!("Space({:?}, dimension={})", self.input.document.name, self.input.algebra().dim())
    }
}

/// Names of the built-in example spaces.
#[pyfunction]
fn corpus_names() -> Vec<String> {
    corpus::corpus().into_iter().map(|d| d.name).collect()
}

/// Registered statement ids in report order.
#[pyfunction]
fn statement_ids() -> Vec<&'static str> {
    theorems::REGISTRY.iter().map(|s| s.id).collect()
}

/// `(det, expected)` of the 3×3 block system for rational `alpha`, `beta`.
#[pyfunction]
fn block_determinant(alpha: &str, beta: &str) -> PyResult<(String, String)> {
    let a = parse_scalar(alpha).map_err(value_error)?;
    let b = parse_scalar(beta).map_err(value_error)?;
    let (det, expected) = theorems::block_determinant(&a, &b);
    Ok((format_scalar(&det), format_scalar(&expected)))
}

#[pymodule]
fn kvfcl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", report::VERSION)?;
    m.add_class::<Space>()?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(statement_ids, m)?)?;
    m.add_function(wrap_pyfunction!(block_determinant, m)?)?;
    Ok(())
}
