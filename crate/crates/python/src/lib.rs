//! Python bindings: mixed product specs, formula and oracle reports, Betti
//! tables, witnesses and sweeps.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mixprod::harness::{enumerate_specs, run_sweep_with_jobs, SweepConfig};
use mixprod::{
    alexander_dual, cm_classify, formula_report, hochster_betti, koszul_cycle_witness, minimal_primes,
    oracle_report, realize_spec, syzygy_witness, verify_koszul_cycle, verify_syzygy_witness, Ambient, FieldSpec,
    InvariantReport, MixedProductSpec, Term,
};

fn py_err(e: mixprod::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_field(field: &str) -> PyResult<FieldSpec> {
    field.parse().map_err(py_err)
}

fn report_dict<'py>(py: Python<'py>, r: &InvariantReport, case: &str) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("dim", r.dim)?;
    d.set_item("depth", r.depth)?;
    d.set_item("pd", r.pd)?;
    d.set_item("reg_ideal", r.reg_ideal)?;
    d.set_item("reg_quotient", r.reg_quotient)?;
    d.set_item("cm", r.cm)?;
    d.set_item("height", r.height)?;
    d.set_item("case", case)?;
    d.set_item("field", r.field.map(|f| f.to_string()))?;
    Ok(d)
}

/// `Σ I_k J_l` over `K[x_1..x_n, y_1..y_m]`, stored in canonical form.
#[pyclass(name = "MixedProduct", module = "mixprod_py", frozen)]
struct PyMixedProduct {
    spec: MixedProductSpec,
}

#[pymethods]
impl PyMixedProduct {
    #[new]
    fn new(n: usize, m: usize, terms: Vec<(usize, usize)>) -> PyResult<Self> {
        let ambient = Ambient::new(n, m).map_err(py_err)?;
        let terms = terms.into_iter().map(|(k, l)| Term::new(k, l)).collect();
        let spec = MixedProductSpec::canonical(ambient, terms).map_err(py_err)?;
        Ok(Self { spec })
    }

    #[getter]
    fn n(&self) -> usize {
        self.spec.ambient().n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.spec.ambient().m()
    }

    /// Canonical terms as `(k, l)` pairs.
    #[getter]
    fn terms(&self) -> Vec<(usize, usize)> {
        self.spec.terms().iter().map(|t| (t.x_deg, t.y_deg)).collect()
    }

    /// Minimal generators, e.g. `["x1y1y2", ...]`.
    fn generators(&self) -> Vec<String> {
        let amb = self.spec.ambient();
        realize_spec(&self.spec).gens().iter().map(|g| amb.format_monomial(*g)).collect()
    }

    /// Generators of the Alexander dual over all variables.
    fn alexander_dual(&self) -> PyResult<Vec<String>> {
        let amb = self.spec.ambient();
        let dual = alexander_dual(&realize_spec(&self.spec), amb.full()).map_err(py_err)?;
        Ok(dual.gens().iter().map(|g| amb.format_monomial(*g)).collect())
    }

    fn minimal_primes(&self) -> PyResult<Vec<Vec<String>>> {
        let amb = self.spec.ambient();
        let primes = minimal_primes(&realize_spec(&self.spec)).map_err(py_err)?;
        Ok(primes.iter().map(|p| p.indices().map(|v| amb.var_name(v)).collect()).collect())
    }

    fn cm_classify(&self) -> PyResult<(bool, String)> {
        let (cm, label) = cm_classify(&self.spec).map_err(py_err)?;
        Ok((cm, label.to_string()))
    }

    fn formula_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = formula_report(&self.spec).map_err(py_err)?;
        let (_, label) = cm_classify(&self.spec).map_err(py_err)?;
        report_dict(py, &r, label.as_str())
    }

    #[pyo3(signature = (field = "q"))]
    fn oracle_report<'py>(&self, py: Python<'py>, field: &str) -> PyResult<Bound<'py, PyDict>> {
        let field = parse_field(field)?;
        let ideal = realize_spec(&self.spec);
        let r = py.detach(|| oracle_report(&ideal, field)).map_err(py_err)?;
        let label = mixprod::mixed::case_label(&self.spec).map(|l| l.to_string()).unwrap_or_default();
        report_dict(py, &r, &label)
    }

    /// Graded Betti numbers of `S/I` as `(i, j, rank)` triples.
    #[pyo3(signature = (field = "q"))]
    fn betti(&self, py: Python<'_>, field: &str) -> PyResult<Vec<(usize, usize, u64)>> {
        let field = parse_field(field)?;
        let ideal = realize_spec(&self.spec);
        let table = py.detach(|| hochster_betti(&ideal, field)).map_err(py_err)?;
        Ok(table.entries().map(|((i, j), r)| (i, j, r)).collect())
    }

    fn syzygy_witness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let amb = self.spec.ambient();
        let w = syzygy_witness(&self.spec).map_err(py_err)?;
        let d = PyDict::new(py);
        d.set_item("u", amb.format_monomial(w.u))?;
        d.set_item("v", amb.format_monomial(w.v))?;
        d.set_item("cofactor_u", amb.format_monomial(w.cofactor_u))?;
        d.set_item("cofactor_v", amb.format_monomial(w.cofactor_v))?;
        d.set_item("internal_degree", w.internal_degree)?;
        d.set_item("verified", verify_syzygy_witness(&w))?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("MixedProduct({})", self.spec)
    }
}

/// Koszul cycle for `I_1J_1`: signed `(sign, coefficient, omitted_y)`
/// summands and whether the cycle check passes.
#[pyfunction]
fn koszul_cycle(n: usize, m: usize) -> PyResult<(Vec<(i8, String, usize)>, bool)> {
    let amb = Ambient::new(n, m).map_err(py_err)?;
    let w = koszul_cycle_witness(amb).map_err(py_err)?;
    let summands = w
        .summands
        .iter()
        .map(|s| (s.sign, amb.format_monomial(s.coefficient), s.omitted_y))
        .collect();
    Ok((summands, verify_koszul_cycle(&w)))
}

/// All canonical one- and two-term specs up to the given block sizes.
#[pyfunction]
fn enumerate(max_n: usize, max_m: usize) -> PyResult<Vec<PyMixedProduct>> {
    Ok(enumerate_specs(max_n, max_m).map_err(py_err)?.into_iter().map(|spec| PyMixedProduct { spec }).collect())
}

/// Runs a formula-vs-oracle sweep and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (max_n, max_m, fields = vec!["q".to_string()], jobs = 1, witness_checks = true))]
fn sweep(
    py: Python<'_>,
    max_n: usize,
    max_m: usize,
    fields: Vec<String>,
    jobs: usize,
    witness_checks: bool,
) -> PyResult<String> {
    let fields = fields.iter().map(|f| parse_field(f)).collect::<PyResult<Vec<_>>>()?;
    let mut cfg = SweepConfig::new(max_n, max_m, fields);
    cfg.include_witness_checks = witness_checks;
    let report = py.detach(|| run_sweep_with_jobs(&cfg, jobs)).map_err(py_err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn mixprod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMixedProduct>()?;
    m.add_function(wrap_pyfunction!(koszul_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add("MAX_VARS", mixprod::MAX_VARS)?;
    Ok(())
}
