//! Python bindings for the analysis kernel. A `Model` wraps one graded
//! differential model; analysis methods return JSON strings with the same
//! shapes the command-line reports use, plus a few scalar getters for
//! quick interactive use.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use dgcm::algebra::parse::parse_homogeneous;
use dgcm::algebra::Ideal;
use dgcm::cm;
use dgcm::dg::DgRing;
use dgcm::invariants::{invariants_of_ring, ExtInt};
use dgcm::io;
use dgcm::KernelError;

fn err(e: KernelError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| PyValueError::new_err(format!("serialization failed: {e}")))
}

/// One graded differential model together with the candidate primes that
/// came with its problem file.
#[pyclass]
struct Model {
    inner: DgRing,
    primes: Vec<Ideal>,
}

impl Model {
    fn from_built(built: io::BuiltProblem) -> Model {
        Model {
            inner: built.model,
            primes: built.primes,
        }
    }
}

#[pymethods]
impl Model {
    /// Build a model from problem-file JSON text.
    #[staticmethod]
    fn from_problem(text: &str) -> PyResult<Model> {
        let problem = io::parse_problem(text).map_err(err)?;
        Ok(Model::from_built(io::build_problem(&problem, None).map_err(err)?))
    }

    /// Build one of the bundled example models by name.
    #[staticmethod]
    fn from_example(name: &str) -> PyResult<Model> {
        let ex = io::bundled_example(name)
            .ok_or_else(|| PyValueError::new_err(format!("no bundled example named {name}")))?;
        Model::from_problem(ex.text)
    }

    #[getter]
    fn amplitude(&self) -> PyResult<i64> {
        match invariants_of_ring(&self.inner).map_err(err)?.amp {
            ExtInt::Finite(v) => Ok(v),
            ExtInt::NegInf => Err(PyValueError::new_err("zero model has no amplitude")),
        }
    }

    #[getter]
    fn dim_h0(&self) -> i64 {
        self.inner.cohomology_at(0).map(|e| e.dim).unwrap_or(0)
    }

    #[getter]
    fn nonnegative(&self) -> bool {
        self.inner.is_nonnegative()
    }

    #[getter]
    fn construction(&self) -> String {
        self.inner.kind().render(self.inner.ring())
    }

    /// "CM", "NOT_CM", or "UNKNOWN" from the criterion matching the
    /// model's grading side.
    fn verdict(&self) -> PyResult<String> {
        let v = if self.inner.is_nonnegative() {
            cm::check_cm_nonneg(&self.inner).map_err(err)?
        } else {
            cm::check_local_cm(&self.inner).map_err(err)?
        };
        Ok(v.verdict.to_string())
    }

    /// Cohomology, torsion profile, and the derived invariants, as JSON.
    fn invariants_json(&self) -> PyResult<String> {
        json(&invariants_of_ring(&self.inner).map_err(err)?)
    }

    /// Local Cohen-Macaulay check with its certificate, as JSON.
    fn check_cm(&self) -> PyResult<String> {
        if self.inner.is_nonnegative() {
            json(&cm::check_cm_nonneg(&self.inner).map_err(err)?)
        } else {
            json(&cm::check_local_cm(&self.inner).map_err(err)?)
        }
    }

    /// Stratum check at the prime generated by the given polynomials.
    fn check_cm_at(&self, generators: Vec<String>) -> PyResult<String> {
        let ring = self.inner.ring().clone();
        let gens = generators
            .iter()
            .map(|s| parse_homogeneous(&ring, s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let p = Ideal::new(ring, gens).map_err(err)?;
        json(&cm::check_cm_at_prime(&self.inner, &p).map_err(err)?)
    }

    /// Stratified global check over the discovered and attached primes.
    fn check_cm_global(&self) -> PyResult<String> {
        json(&cm::check_cm_global(&self.inner, &self.primes).map_err(err)?)
    }

    /// Normalized dualizing structure report, as JSON.
    fn dualizing(&self) -> PyResult<String> {
        json(&cm::dualizing_structure_report(&self.inner).map_err(err)?)
    }

    /// Search for a maximal regular sequence; with `sop` the elements must
    /// also drop the degree-zero dimension at every step.
    #[pyo3(signature = (sop = false, seed = 1, max_tries = 64))]
    fn regular_sequence(&self, sop: bool, seed: u64, max_tries: u32) -> PyResult<String> {
        json(&cm::find_regular_sequence(&self.inner, sop, seed, max_tries).map_err(err)?)
    }

    /// Run the internal theorem suite, as JSON.
    fn verify(&self) -> PyResult<String> {
        json(&cm::verify_theorem_suite(&self.inner).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "Model({}, nonnegative={})",
            self.construction(),
            self.inner.is_nonnegative()
        )
    }
}

/// Names and descriptions of the bundled examples.
#[pyfunction]
fn examples() -> Vec<(String, String)> {
    io::bundled_examples()
        .iter()
        .map(|ex| (ex.name.to_string(), ex.description.to_string()))
        .collect()
}

#[pymodule]
fn dgcm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    Ok(())
}
