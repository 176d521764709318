//! Python bindings. Words cross the boundary as strings; symbols are the
//! underlying bytes.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use zimin::avoidance::{self, SearchLimits};
use zimin::borders::BorderState;
use zimin::fibonacci;
use zimin::oracle;
use zimin::pattern::{self, Morphism};
use zimin::ztype as zt;

fn err(e: zimin::Error) -> PyErr {
    if e.is_resource_limit() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn morphism_dict(h: &Morphism) -> BTreeMap<u32, String> {
    h.images()
        .iter()
        .enumerate()
        .map(|(i, w)| (i as u32 + 1, w.to_string()))
        .collect()
}

/// (start, end, rank, morphism) with 1-based inclusive positions.
type Occurrence = (usize, usize, u32, BTreeMap<u32, String>);

/// (variable, fib_index, length) triples describing a symbolic image.
type SymbolicImage = (u32, i32, u64);

/// Online scanner over one growing word: border, short border, and Zimin
/// type of every prefix.
#[pyclass]
struct BorderTracker {
    state: BorderState,
}

#[pymethods]
impl BorderTracker {
    #[new]
    fn new() -> Self {
        BorderTracker {
            state: BorderState::new(),
        }
    }

    /// Consumes one symbol; returns (border, short_border, ztype).
    fn push(&mut self, symbol: &str) -> PyResult<(usize, usize, u32)> {
        let bytes = symbol.as_bytes();
        if bytes.len() != 1 {
            return Err(PyValueError::new_err(
                "push expects a single one-byte symbol",
            ));
        }
        let step = self.state.push(bytes[0]);
        Ok((step.border, step.short_border, step.ztype))
    }

    fn position(&self) -> usize {
        self.state.position()
    }

    fn ztype(&self) -> u32 {
        self.state.ztype()
    }

    fn border(&self, j: usize) -> i64 {
        self.state.border(j)
    }

    fn short_border(&self, j: usize) -> usize {
        self.state.short_border(j)
    }

    fn ztype_at(&self, j: usize) -> u32 {
        self.state.ztype_at(j)
    }

    fn cursor_increments(&self) -> u64 {
        self.state.cursor_increments()
    }

    fn cursor_decrements(&self) -> u64 {
        self.state.cursor_decrements()
    }
}

#[pyfunction]
fn ztype(word: &str) -> u32 {
    zt::ztype(word.as_bytes())
}

#[pyfunction]
fn ztype_prefixes(word: &str) -> Vec<u32> {
    zt::ztype_prefixes(word.as_bytes())
}

#[pyfunction]
fn border_array(word: &str) -> Vec<i64> {
    zimin::border_array(word.as_bytes())
}

#[pyfunction]
fn short_border_array(word: &str) -> Vec<usize> {
    zimin::short_border_array(word.as_bytes())
}

#[pyfunction]
fn zimin_word(k: u32) -> PyResult<Vec<u32>> {
    if k > 24 {
        return Err(PyValueError::new_err(
            "rank too large to materialize as a list",
        ));
    }
    Ok(pattern::zimin_word(k).map_err(err)?.to_vec())
}

#[pyfunction]
fn decompose(word: &str, k: u32) -> PyResult<BTreeMap<u32, String>> {
    Ok(morphism_dict(
        &zt::decompose(word.as_bytes(), k).map_err(err)?,
    ))
}

#[pyfunction]
fn apply_morphism(rank: u32, images: Vec<String>) -> PyResult<String> {
    let pattern = pattern::zimin_word(rank).map_err(err)?;
    let h = Morphism::new(images.into_iter().map(|s| s.as_str().into()).collect()).map_err(err)?;
    Ok(h.apply(&pattern).map_err(err)?.to_string())
}

#[pyfunction]
fn max_sequence_value(i: u64) -> u32 {
    zt::max_sequence_value(i)
}

#[pyfunction]
fn iterate_morphism(rules: BTreeMap<String, String>, seed: &str, len: usize) -> PyResult<String> {
    let mut byte_rules = BTreeMap::new();
    for (sym, image) in &rules {
        let s = sym.as_bytes();
        if s.len() != 1 {
            return Err(PyValueError::new_err("rule symbols must be single bytes"));
        }
        byte_rules.insert(s[0], image.as_bytes().to_vec());
    }
    let seed = seed.as_bytes();
    if seed.len() != 1 {
        return Err(PyValueError::new_err("seed must be a single byte"));
    }
    Ok(pattern::iterate_morphism(&byte_rules, seed[0], len)
        .map_err(err)?
        .to_string())
}

/// Returns (start, end, rank, morphism) with 1-based inclusive positions,
/// or None when no factor reaches the rank.
#[pyfunction]
fn search_zimin(word: &str, k: u32) -> PyResult<Option<Occurrence>> {
    Ok(zimin::search_zimin(word.as_bytes(), k)
        .map_err(err)?
        .map(|occ| (occ.start, occ.end, occ.rank, morphism_dict(&occ.witness))))
}

/// Returns (rank, occurrence) where occurrence is as in search_zimin.
#[pyfunction]
fn max_factor_ztype(word: &str) -> (u32, Option<Occurrence>) {
    let (rank, occ) = zimin::max_factor_ztype(word.as_bytes());
    (
        rank,
        occ.map(|occ| (occ.start, occ.end, occ.rank, morphism_dict(&occ.witness))),
    )
}

#[pyfunction]
fn zeckendorf(n: u64) -> PyResult<String> {
    Ok(fibonacci::zeckendorf(n).map_err(err)?.digits().to_string())
}

#[pyfunction]
fn from_fib(digits: &str) -> PyResult<u64> {
    fibonacci::from_fib(digits).map_err(err)
}

#[pyfunction]
fn psi(digits: &str) -> PyResult<u32> {
    Ok(fibonacci::psi(
        &fibonacci::FibRep::parse(digits).map_err(err)?,
    ))
}

#[pyfunction]
fn zfib(n: u64) -> PyResult<u32> {
    fibonacci::zfib(n).map_err(err)
}

#[pyfunction]
fn sb_fib(n: u64) -> PyResult<u64> {
    fibonacci::sb_fib(n).map_err(err)
}

#[pyfunction]
fn zfib_array(n: usize) -> PyResult<Vec<u32>> {
    fibonacci::zfib_array(n).map_err(err)
}

#[pyfunction]
fn fib_prefix(len: usize) -> PyResult<String> {
    Ok(fibonacci::fib_prefix(len).map_err(err)?.to_string())
}

/// Length of the Fibonacci word with the given index (index >= -2).
#[pyfunction]
fn phi(index: i32) -> PyResult<u64> {
    if index < -2 {
        return Err(PyValueError::new_err("index must be at least -2"));
    }
    fibonacci::phi(index).map_err(err)
}

/// The Fibonacci word with the given index (index >= -1).
#[pyfunction]
fn fib_word(index: i32) -> PyResult<String> {
    if index < -1 {
        return Err(PyValueError::new_err("index must be at least -1"));
    }
    Ok(fibonacci::fib_word(index, fibonacci::DEFAULT_BUDGET)
        .map_err(err)?
        .to_string())
}

/// Returns (rank, images) with images as (variable, fib_index, length)
/// triples; the image words themselves may be astronomically long.
#[pyfunction]
fn fib_embedding(n: u64) -> PyResult<(u32, Vec<SymbolicImage>)> {
    let e = fibonacci::fib_embedding(n).map_err(err)?;
    let images = e
        .images
        .iter()
        .enumerate()
        .map(|(i, r)| (i as u32 + 1, r.index, r.len))
        .collect();
    Ok((e.rank, images))
}

#[pyfunction]
fn fib_ratio(n: u64) -> PyResult<f64> {
    fibonacci::fib_ratio(n).map_err(err)
}

#[pyfunction]
fn is_minimal(word: &str, n: u32) -> bool {
    avoidance::is_minimal(word.as_bytes(), n)
}

#[pyfunction]
#[pyo3(signature = (n, k, len_cap=64, node_cap=1_000_000_000, threads=1, split_depth=8))]
fn count_minimal(
    n: u32,
    k: u32,
    len_cap: usize,
    node_cap: u64,
    threads: usize,
    split_depth: usize,
) -> PyResult<u64> {
    let limits = SearchLimits {
        len_cap,
        node_cap,
        threads,
        split_depth,
    };
    avoidance::count_minimal(n, k, &limits).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, k, len_cap=64, node_cap=1_000_000_000, threads=1, split_depth=8))]
fn minimal_words(
    n: u32,
    k: u32,
    len_cap: usize,
    node_cap: u64,
    threads: usize,
    split_depth: usize,
) -> PyResult<Vec<String>> {
    let limits = SearchLimits {
        len_cap,
        node_cap,
        threads,
        split_depth,
    };
    Ok(avoidance::minimal_words(n, k, &limits)
        .map_err(err)?
        .iter()
        .map(|w| w.to_string())
        .collect())
}

/// Returns (f, witness, minimal_count).
#[pyfunction]
#[pyo3(signature = (n, k, len_cap=64, node_cap=1_000_000_000, threads=1, split_depth=8))]
fn f_exact(
    n: u32,
    k: u32,
    len_cap: usize,
    node_cap: u64,
    threads: usize,
    split_depth: usize,
) -> PyResult<(u64, String, u64)> {
    let limits = SearchLimits {
        len_cap,
        node_cap,
        threads,
        split_depth,
    };
    let stats = avoidance::f_exact(n, k, &limits).map_err(err)?;
    Ok((
        stats.f,
        stats.witness.map(|w| w.to_string()).unwrap_or_default(),
        stats.minimal_count.unwrap_or(0),
    ))
}

#[pyfunction]
fn f2_closed(k: u32) -> PyResult<(u64, String)> {
    let stats = avoidance::f2_closed(k).map_err(err)?;
    Ok((
        stats.f,
        stats.witness.map(|w| w.to_string()).unwrap_or_default(),
    ))
}

#[pyfunction]
fn m2_formula(k: u32) -> PyResult<u128> {
    avoidance::m2_formula(k).map_err(err)
}

#[pyfunction]
fn f_upper_bound(n_next: u32, f_prev: u128, m_prev: u128) -> PyResult<u128> {
    avoidance::f_upper_bound(n_next, f_prev, m_prev).map_err(err)
}

#[pyfunction]
fn f3_general_bound(r: u32) -> PyResult<u128> {
    avoidance::f3_general_bound(r).map_err(err)
}

#[pyfunction]
fn ztype_brute(word: &str) -> PyResult<u32> {
    oracle::ztype_brute(word.as_bytes()).map_err(err)
}

#[pyfunction]
fn embeds_zimin_brute(word: &str, k: u32) -> PyResult<bool> {
    oracle::embeds_zimin_brute(word.as_bytes(), k).map_err(err)
}

#[pyfunction]
fn pattern_embeds_brute(pattern: Vec<u32>, word: &str) -> PyResult<Option<BTreeMap<u32, String>>> {
    Ok(oracle::pattern_embeds_brute(&pattern, word.as_bytes())
        .map_err(err)?
        .map(|h| morphism_dict(&h)))
}

#[pymodule]
fn zimin_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<BorderTracker>()?;
    m.add_function(wrap_pyfunction!(ztype, m)?)?;
    m.add_function(wrap_pyfunction!(ztype_prefixes, m)?)?;
    m.add_function(wrap_pyfunction!(border_array, m)?)?;
    m.add_function(wrap_pyfunction!(short_border_array, m)?)?;
    m.add_function(wrap_pyfunction!(zimin_word, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(apply_morphism, m)?)?;
    m.add_function(wrap_pyfunction!(max_sequence_value, m)?)?;
    m.add_function(wrap_pyfunction!(iterate_morphism, m)?)?;
    m.add_function(wrap_pyfunction!(search_zimin, m)?)?;
    m.add_function(wrap_pyfunction!(max_factor_ztype, m)?)?;
    m.add_function(wrap_pyfunction!(zeckendorf, m)?)?;
    m.add_function(wrap_pyfunction!(from_fib, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(zfib, m)?)?;
    m.add_function(wrap_pyfunction!(sb_fib, m)?)?;
    m.add_function(wrap_pyfunction!(zfib_array, m)?)?;
    m.add_function(wrap_pyfunction!(fib_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(fib_word, m)?)?;
    m.add_function(wrap_pyfunction!(fib_embedding, m)?)?;
    m.add_function(wrap_pyfunction!(fib_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(is_minimal, m)?)?;
    m.add_function(wrap_pyfunction!(count_minimal, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_words, m)?)?;
    m.add_function(wrap_pyfunction!(f_exact, m)?)?;
    m.add_function(wrap_pyfunction!(f2_closed, m)?)?;
    m.add_function(wrap_pyfunction!(m2_formula, m)?)?;
    m.add_function(wrap_pyfunction!(f_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(f3_general_bound, m)?)?;
    m.add_function(wrap_pyfunction!(ztype_brute, m)?)?;
    m.add_function(wrap_pyfunction!(embeds_zimin_brute, m)?)?;
    m.add_function(wrap_pyfunction!(pattern_embeds_brute, m)?)?;
    Ok(())
}
