//! Python module `rado`: equations, colorings, exact search and bound formulas.

use std::time::Duration;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rado_core::bounds as core_bounds;
use rado_core::coloring::Color;
use rado_core::{ExcellenceStatus, RadoStatus, Registry, ReproOptions, Scope, SearchOptions, SolutionTuple};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `c_1 x_1 + ... + c_{k-1} x_{k-1} = x_k + shift`.
#[pyclass(frozen, module = "rado")]
struct Equation {
    inner: rado_core::Equation,
}

#[pymethods]
impl Equation {
    #[new]
    #[pyo3(signature = (coeffs, shift = 0))]
    fn new(coeffs: Vec<i64>, shift: i64) -> PyResult<Self> {
        let inner = rado_core::Equation::new(coeffs, shift).map_err(value_err)?;
        Ok(Equation { inner })
    }

    /// Parses `coeffs=1,1 shift=-1`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Equation {
            inner: text.parse().map_err(value_err)?,
        })
    }

    #[getter]
    fn coeffs(&self) -> Vec<i64> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn shift(&self) -> i64 {
        self.inner.shift()
    }

    #[getter]
    fn s(&self) -> i64 {
        self.inner.sum_s()
    }

    fn with_shift(&self, shift: i64) -> Self {
        Equation {
            inner: self.inner.with_shift(shift),
        }
    }

    fn is_solution(&self, xs: Vec<i64>) -> PyResult<bool> {
        self.inner.is_solution(&SolutionTuple(xs)).map_err(value_err)
    }

    /// All solutions whose largest entry is `p`, in lexicographic order.
    fn solutions_with_max(&self, p: i64) -> Vec<Vec<i64>> {
        self.inner.solutions_with_max(p).into_iter().map(|t| t.0).collect()
    }

    /// One of `regular_positive_ratio`, `regular_negative_ratio_hom_regular`,
    /// `not_regular`, `degenerate_s`, `homogeneous_regular`, `homogeneous_not_regular`.
    fn regularity_status(&self) -> &'static str {
        use rado_core::RegularityStatus::*;
        match self.inner.regularity_status() {
            RegularPositiveRatio => "regular_positive_ratio",
            RegularNegativeRatioHomRegular => "regular_negative_ratio_hom_regular",
            NotRegular => "not_regular",
            DegenerateS => "degenerate_s",
            HomogeneousRegular => "homogeneous_regular",
            HomogeneousNotRegular => "homogeneous_not_regular",
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Equation({:?}, {})", self.inner.coeffs(), self.inner.shift())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

fn coloring(colors: Vec<Color>, num_colors: Option<usize>) -> PyResult<rado_core::Coloring> {
    match num_colors {
        Some(t) => rado_core::Coloring::new(t, colors),
        None => rado_core::Coloring::from_colors(colors),
    }
    .map_err(value_err)
}

/// Plain integers, so Python sees a list rather than `bytes`.
fn as_list(col: &rado_core::Coloring) -> Vec<u32> {
    col.colors().iter().map(|&c| c as u32).collect()
}

/// Outcome of `rado_number` or `max_excellent_length`.
#[pyclass(frozen, get_all, module = "rado")]
struct SearchResult {
    /// `exact`, `exceeds_cap` or `timeout`.
    status: &'static str,
    /// The Rado number (or longest excellent length) when exact.
    value: Option<usize>,
    /// Longest good (or excellent) length found.
    best_len: usize,
    witness: Vec<u32>,
    elapsed_ms: u64,
    nodes: u64,
}

#[pymethods]
impl SearchResult {
    fn __repr__(&self) -> String {
        format!(
            "SearchResult(status={:?}, value={:?}, best_len={})",
            self.status, self.value, self.best_len
        )
    }
}

fn search_options(threads: usize, split_depth: usize, budget_secs: Option<f64>) -> PyResult<SearchOptions> {
    let budget = budget_secs
        .map(Duration::try_from_secs_f64)
        .transpose()
        .map_err(value_err)?;
    Ok(SearchOptions {
        threads: threads.max(1),
        split_depth,
        budget,
    })
}

fn check_colors(t: usize) -> PyResult<()> {
    if !(1..=255).contains(&t) {
        return Err(value_err("number of colors must be between 1 and 255"));
    }
    Ok(())
}

#[pyfunction]
#[pyo3(signature = (eq, colors, num_colors = None))]
fn is_good_coloring(eq: &Equation, colors: Vec<Color>, num_colors: Option<usize>) -> PyResult<bool> {
    Ok(rado_core::is_good_coloring(&eq.inner, &coloring(colors, num_colors)?))
}

#[pyfunction]
#[pyo3(signature = (coeffs, colors, num_colors = None))]
fn is_excellent_coloring(coeffs: Vec<i64>, colors: Vec<Color>, num_colors: Option<usize>) -> PyResult<bool> {
    rado_core::equation::validate_coeffs(&coeffs).map_err(value_err)?;
    Ok(rado_core::is_excellent_coloring(
        &coeffs,
        &coloring(colors, num_colors)?,
    ))
}

/// A monochromatic solution inside the coloring, or `None` if it is good.
#[pyfunction]
#[pyo3(signature = (eq, colors, num_colors = None))]
fn find_monochromatic(eq: &Equation, colors: Vec<Color>, num_colors: Option<usize>) -> PyResult<Option<Vec<i64>>> {
    Ok(coloring(colors, num_colors)?.find_monochromatic(&eq.inner))
}

#[pyfunction]
fn find_good_coloring(py: Python<'_>, eq: &Equation, t: usize, n: usize) -> PyResult<Option<Vec<u32>>> {
    check_colors(t)?;
    let eq = eq.inner.clone();
    Ok(py
        .detach(move || rado_core::find_good_coloring(&eq, t, n))
        .map(|c| as_list(&c)))
}

#[pyfunction]
#[pyo3(signature = (eq, t, cap, threads = 1, split_depth = 12, budget_secs = None))]
fn rado_number(
    py: Python<'_>,
    eq: &Equation,
    t: usize,
    cap: usize,
    threads: usize,
    split_depth: usize,
    budget_secs: Option<f64>,
) -> PyResult<SearchResult> {
    check_colors(t)?;
    if cap == 0 {
        return Err(value_err("cap must be positive"));
    }
    let opts = search_options(threads, split_depth, budget_secs)?;
    let eq = eq.inner.clone();
    let res = py.detach(move || rado_core::rado_number(&eq, t, cap, &opts));
    let (status, value) = match res.status {
        RadoStatus::Exact(r) => ("exact", Some(r)),
        RadoStatus::ExceedsCap(_) => ("exceeds_cap", None),
        RadoStatus::Timeout { .. } => ("timeout", None),
    };
    Ok(SearchResult {
        status,
        value,
        best_len: res.witness.len(),
        witness: as_list(&res.witness),
        elapsed_ms: res.elapsed.as_millis() as u64,
        nodes: res.nodes,
    })
}

#[pyfunction]
#[pyo3(signature = (coeffs, t, cap, threads = 1, split_depth = 12, budget_secs = None))]
fn max_excellent_length(
    py: Python<'_>,
    coeffs: Vec<i64>,
    t: usize,
    cap: usize,
    threads: usize,
    split_depth: usize,
    budget_secs: Option<f64>,
) -> PyResult<SearchResult> {
    check_colors(t)?;
    rado_core::equation::validate_coeffs(&coeffs).map_err(value_err)?;
    if cap == 0 {
        return Err(value_err("cap must be positive"));
    }
    let opts = search_options(threads, split_depth, budget_secs)?;
    let res = py.detach(move || rado_core::max_excellent_length(&coeffs, t, cap, &opts));
    let (status, value) = match res.status {
        ExcellenceStatus::Exact(n) => ("exact", Some(n)),
        ExcellenceStatus::ExceedsCap(_) => ("exceeds_cap", None),
        ExcellenceStatus::Timeout { .. } => ("timeout", None),
    };
    Ok(SearchResult {
        status,
        value,
        best_len: res.witness.len(),
        witness: as_list(&res.witness),
        elapsed_ms: res.elapsed.as_millis() as u64,
        nodes: res.nodes,
    })
}

#[pyfunction]
fn upper_bound_neg(coeffs: Vec<i64>, b: i64, r: i64) -> PyResult<i64> {
    core_bounds::upper_bound_neg(&coeffs, b, r).map_err(value_err)
}

#[pyfunction]
fn lower_bound_neg(coeffs: Vec<i64>, b: i64, n: i64) -> PyResult<i64> {
    core_bounds::lower_bound_neg(&coeffs, b, n).map_err(value_err)
}

#[pyfunction]
fn upper_bound_pos(coeffs: Vec<i64>, b: i64, r: i64) -> PyResult<i64> {
    core_bounds::upper_bound_pos(&coeffs, b, r).map_err(value_err)
}

#[pyfunction]
fn lower_bound_pos(coeffs: Vec<i64>, b: i64, n: i64) -> PyResult<i64> {
    core_bounds::lower_bound_pos(&coeffs, b, n).map_err(value_err)
}

#[pyfunction]
fn trivial_bounds(coeffs: Vec<i64>, b: i64) -> PyResult<(i64, i64)> {
    core_bounds::trivial_bounds(&coeffs, b).map_err(value_err)
}

#[pyfunction]
fn lift_coloring_neg(chi: Vec<Color>, coeffs: Vec<i64>, b: i64) -> PyResult<Vec<u32>> {
    let lifted = core_bounds::lift_coloring_neg(&coloring(chi, None)?, &coeffs, b).map_err(value_err)?;
    Ok(as_list(&lifted))
}

#[pyfunction]
fn lift_coloring_pos(chi: Vec<Color>, coeffs: Vec<i64>, b: i64) -> PyResult<Vec<u32>> {
    let lifted = core_bounds::lift_coloring_pos(&coloring(chi, None)?, &coeffs, b).map_err(value_err)?;
    Ok(as_list(&lifted))
}

/// `(lower, upper)` on `r(eq; t)` from the available inputs; either may be `None`.
#[pyfunction]
#[pyo3(signature = (eq, t, homogeneous_rado = None, excellent_length = None))]
fn bounds_report(
    eq: &Equation,
    t: usize,
    homogeneous_rado: Option<i64>,
    excellent_length: Option<i64>,
) -> PyResult<(Option<i64>, Option<i64>)> {
    let inputs = core_bounds::BoundInputs {
        homogeneous_rado,
        excellent_length,
    };
    let rep = core_bounds::bounds_report(&eq.inner, t, &inputs).map_err(value_err)?;
    Ok((rep.lower.map(|b| b.value), rep.upper.map(|b| b.value)))
}

/// Known `R_C(t)` from the built-in registry.
#[pyfunction]
fn known_r(coeffs: Vec<i64>, t: usize) -> Option<i64> {
    Registry::builtin().known_r(&coeffs, t).map(|k| k.value)
}

#[pyfunction]
fn conjecture_value(coeffs: Vec<i64>, shift: i64, r: i64) -> PyResult<i64> {
    rado_core::conjecture_value(&coeffs, shift, r).map_err(value_err)
}

/// Runs the reproduction harness and returns the markdown table.
#[pyfunction]
#[pyo3(signature = (scope = "all", threads = 1))]
fn reproduce_report(py: Python<'_>, scope: &str, threads: usize) -> PyResult<String> {
    let scope: Scope = scope.parse().map_err(value_err)?;
    let opts = ReproOptions {
        search: SearchOptions::with_threads(threads),
        store: None,
        force: false,
    };
    let report = py
        .detach(move || rado_core::reproduce_report(scope, &opts))
        .map_err(value_err)?;
    Ok(report.to_markdown())
}

#[pymodule]
fn rado(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ENGINE_VERSION", rado_core::ENGINE_VERSION)?;
    m.add_class::<Equation>()?;
    m.add_class::<SearchResult>()?;
    m.add_function(wrap_pyfunction!(is_good_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(is_excellent_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(find_monochromatic, m)?)?;
    m.add_function(wrap_pyfunction!(find_good_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(rado_number, m)?)?;
    m.add_function(wrap_pyfunction!(max_excellent_length, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound_neg, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_neg, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound_pos, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_pos, m)?)?;
    m.add_function(wrap_pyfunction!(trivial_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(lift_coloring_neg, m)?)?;
    m.add_function(wrap_pyfunction!(lift_coloring_pos, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_report, m)?)?;
    m.add_function(wrap_pyfunction!(known_r, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_value, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_report, m)?)?;
    Ok(())
}
