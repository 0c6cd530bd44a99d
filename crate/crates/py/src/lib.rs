//! Python bindings for the balsim library: residue arithmetic, stencils,
//! orbit evaluation, simplex extraction, arithmetic simplices and the
//! Steinhaus search.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use balsim::arith::ArithSimplex;
use balsim::automaton::WeightScheme;
use balsim::orbit::{
    closed_form, cone_value, ClosedFormOrbit, ConeOrbit, OrbitPoint, Seed, DEFAULT_CELL_BUDGET,
};
use balsim::residue::{size_period as rust_size_period, Modulus};
use balsim::search::{search_balanced_parallel, SearchOptions, SteinhausTriangle};
use balsim::simplex::{extract, ResidueMultiset, SimplexSpec};
use balsim::{Error, Residue};

fn err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::ZeroModulus => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn modulus(m: u32) -> PyResult<Modulus> {
    Modulus::new(m).map_err(err)
}

fn residue(m: Modulus, v: i64) -> Residue {
    m.residue(v as i128)
}

fn counts_dict(ms: &ResidueMultiset) -> BTreeMap<u32, u64> {
    ms.nonzero_counts().into_iter().collect()
}

/// Multiplicative inverse of x mod m.
#[pyfunction]
fn mod_inverse(x: i64, m: u32) -> PyResult<u32> {
    Ok(residue(modulus(m)?, x).inv().map_err(err)?.value())
}

/// Multiplicative order of x in (Z/mZ)*.
#[pyfunction]
fn mult_order(x: i64, m: u32) -> PyResult<u64> {
    residue(modulus(m)?, x).ord().map_err(err)
}

/// Order of x in (Z/mZ)*/{-1,1}.
#[pyfunction]
fn proj_mult_order(x: i64, m: u32) -> PyResult<u64> {
    residue(modulus(m)?, x).pord().map_err(err)
}

/// lcm(ord_m(sigma), m), the admissible-size period.
#[pyfunction]
fn size_period(sigma: i64, m: u32) -> PyResult<u64> {
    rust_size_period(residue(modulus(m)?, sigma)).map_err(err)
}

/// Largest u with 2^u dividing m.
#[pyfunction]
fn v2(m: u32) -> PyResult<u32> {
    Ok(modulus(m)?.v2())
}

/// A weight stencil together with its modulus.
#[pyclass]
struct Stencil {
    scheme: WeightScheme,
}

#[pymethods]
impl Stencil {
    /// Builds from stencil text: `q=1;r=1;w=2,1,1`, `pascal:2`, or a bare
    /// 1-D weight list like `2,1,1`.
    #[new]
    fn new(text: &str, m: u32) -> PyResult<Self> {
        let scheme = balsim::cli::parse_weights(text, modulus(m)?).map_err(err)?;
        Ok(Stencil { scheme })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.scheme.dim()
    }

    #[getter]
    fn radius(&self) -> usize {
        self.scheme.radius()
    }

    #[getter]
    fn modulus(&self) -> u32 {
        self.scheme.modulus().get()
    }

    #[getter]
    fn sigma(&self) -> u32 {
        self.scheme.sigma().value()
    }

    #[getter]
    fn sigma_k(&self) -> Vec<u32> {
        self.scheme.sigma_k().iter().map(|r| r.value()).collect()
    }

    /// Orbit value at (space, time); arithmetic seeds with invertible sigma
    /// use the closed form, everything else the dependency cone.
    #[pyo3(signature = (seed, space, time, budget=None))]
    fn orbit_value(&self, seed: &str, space: Vec<i64>, time: u64, budget: Option<u64>) -> PyResult<u32> {
        let m = self.scheme.modulus();
        let seed = Seed::parse(seed, self.scheme.dim(), m).map_err(err)?;
        let point = OrbitPoint::new(space, time);
        let value = match &seed {
            Seed::Arithmetic { first, diffs } if self.scheme.sigma().is_invertible() => {
                closed_form(&self.scheme, *first, diffs, &point).map_err(err)?
            }
            _ => cone_value(&self.scheme, &seed, &point, budget.unwrap_or(DEFAULT_CELL_BUDGET))
                .map_err(err)?,
        };
        Ok(value.value())
    }

    /// Extracts one oriented simplex; returns (counts, total, balanced,
    /// witness).
    #[pyo3(signature = (seed, apex_space, apex_time, orient, size, budget=None))]
    fn simplex_counts(
        &self,
        seed: &str,
        apex_space: Vec<i64>,
        apex_time: u64,
        orient: &str,
        size: u64,
        budget: Option<u64>,
    ) -> PyResult<(BTreeMap<u32, u64>, u64, bool, Option<(u32, u32)>)> {
        let m = self.scheme.modulus();
        let seed = Seed::parse(seed, self.scheme.dim(), m).map_err(err)?;
        let orientation = SimplexSpec::parse_orientation(orient).map_err(err)?;
        let spec = SimplexSpec::new(apex_space, apex_time, orientation, size).map_err(err)?;
        let ms = match &seed {
            Seed::Arithmetic { first, diffs } if self.scheme.sigma().is_invertible() => {
                let orbit =
                    ClosedFormOrbit::new(&self.scheme, *first, diffs.clone()).map_err(err)?;
                extract(&orbit, &spec).map_err(err)?
            }
            _ => {
                let orbit =
                    ConeOrbit::new(&self.scheme, seed, budget.unwrap_or(DEFAULT_CELL_BUDGET));
                extract(&orbit, &spec).map_err(err)?
            }
        };
        let witness = ms.balance_witness().map(|(a, b)| (a.value(), b.value()));
        Ok((counts_dict(&ms), ms.total(), witness.is_none(), witness))
    }
}

/// Multiplicity table of the arithmetic simplex AS(a, d, size) as a dict.
#[pyfunction]
fn arith_counts(m: u32, a: i64, d: Vec<i64>, size: u64) -> PyResult<BTreeMap<u32, u64>> {
    let md = modulus(m)?;
    let diffs = d.into_iter().map(|v| residue(md, v)).collect();
    let t = ArithSimplex::new(residue(md, a), diffs, size).map_err(err)?;
    Ok(counts_dict(&t.as_multiset().map_err(err)?))
}

/// Whether AS(a, d, size) is balanced in Z/mZ.
#[pyfunction]
fn arith_balanced(m: u32, a: i64, d: Vec<i64>, size: u64) -> PyResult<bool> {
    let md = modulus(m)?;
    let diffs = d.into_iter().map(|v| residue(md, v)).collect();
    let t = ArithSimplex::new(residue(md, a), diffs, size).map_err(err)?;
    t.is_balanced().map_err(err)
}

/// All rows of the Steinhaus triangle derived from a first row.
#[pyfunction]
fn steinhaus_rows(m: u32, first_row: Vec<u32>) -> PyResult<Vec<Vec<u32>>> {
    if first_row.is_empty() {
        return Err(PyValueError::new_err("first row must be non-empty"));
    }
    Ok(SteinhausTriangle::new(modulus(m)?, &first_row).rows().to_vec())
}

/// Whether the Steinhaus triangle of a first row is balanced.
#[pyfunction]
fn steinhaus_balanced(m: u32, first_row: Vec<u32>) -> PyResult<bool> {
    if first_row.is_empty() {
        return Err(PyValueError::new_err("first row must be non-empty"));
    }
    Ok(SteinhausTriangle::new(modulus(m)?, &first_row).is_balanced())
}

/// Exhaustive balanced-triangle search over all m^size first rows.
/// Returns (count, rows); rows are canonical representatives when
/// `symmetry` is set.
#[pyfunction]
#[pyo3(signature = (m, size, symmetry=false, collect=true, shards=1))]
fn search_balanced(
    m: u32,
    size: u64,
    symmetry: bool,
    collect: bool,
    shards: usize,
) -> PyResult<(u64, Vec<Vec<u32>>)> {
    let opts = SearchOptions { symmetry, collect, ..Default::default() };
    let out = search_balanced_parallel(modulus(m)?, size, shards, &opts).map_err(err)?;
    Ok((out.balanced, out.rows))
}

/// Balanced Steinhaus triangles with arithmetic first rows (the odd-m
/// statement); returns (passed, instances, failures).
#[pyfunction]
fn check_chap1(m: u32, a: i64, d: i64, count: usize) -> PyResult<(bool, u64, Vec<String>)> {
    let md = modulus(m)?;
    let v = balsim::search::verify_chap1(md, residue(md, a), residue(md, d), count).map_err(err)?;
    let failures = v.failures.iter().map(|f| format!("{}: {}", f.parameters, f.witness)).collect();
    Ok((v.passed(), v.instances, failures))
}

#[pymodule]
fn pybalsim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(mod_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(mult_order, m)?)?;
    m.add_function(wrap_pyfunction!(proj_mult_order, m)?)?;
    m.add_function(wrap_pyfunction!(size_period, m)?)?;
    m.add_function(wrap_pyfunction!(v2, m)?)?;
    m.add_function(wrap_pyfunction!(arith_counts, m)?)?;
    m.add_function(wrap_pyfunction!(arith_balanced, m)?)?;
    m.add_function(wrap_pyfunction!(steinhaus_rows, m)?)?;
    m.add_function(wrap_pyfunction!(steinhaus_balanced, m)?)?;
    m.add_function(wrap_pyfunction!(search_balanced, m)?)?;
    m.add_function(wrap_pyfunction!(check_chap1, m)?)?;
    m.add_class::<Stencil>()?;
    Ok(())
}
