//! The rho functions on monomials, by two independent routes, and the facet
//! machinery of the simplicial complexes attached to the initial ideals of
//! the minor ideals.
//!
//! A face is a set of grid cells with no strictly increasing chain of i
//! cells. rho_i(M) is the minimum over facets of the exponents of M outside
//! the facet, and equals the maximum of gamma_i over decompositions of M's
//! cell multiset into increasing chains; the suite checks the two agree.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::decomp::{search, Goal};
use crate::error::{Error, Result};
use crate::grid::{Cell, Limits, MatrixConfig};
use crate::poly::{GridMonomial, Polynomial};

pub const FACET_CACHE_ENV: &str = "MINORALG_FACET_CACHE_DIR";

/// The facets of the complex of i-chain-free subsets of the m x n grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetSet {
    pub m: usize,
    pub n: usize,
    pub i: usize,
    /// Each facet sorted row-major; facets sorted lexicographically.
    pub facets: Vec<Vec<Cell>>,
}

impl FacetSet {
    /// Facet cardinality forced by purity.
    pub fn expected_size(m: usize, n: usize, i: usize) -> usize {
        m * n - (m - i + 1) * (n - i + 1)
    }

    /// The linear forms attached to the facets for a given t: value 1 on the
    /// variables outside the facet, -(t+1-i) on T.
    pub fn linear_forms(&self, t: usize) -> Vec<LinearForm> {
        let all: Vec<Cell> = {
            let mut v = Vec::new();
            for r in 1..=self.m as u16 {
                for c in 1..=self.n as u16 {
                    v.push(Cell::new(r, c));
                }
            }
            v
        };
        self.facets
            .iter()
            .map(|f| LinearForm {
                outside: all.iter().copied().filter(|c| !f.contains(c)).collect(),
                t_coeff: -((t as i64) + 1 - (self.i as i64)),
            })
            .collect()
    }
}

/// ell_G / L_F data: the complement of a face plus the T coefficient.
#[derive(Debug, Clone, Serialize)]
pub struct LinearForm {
    pub outside: Vec<Cell>,
    pub t_coeff: i64,
}

impl LinearForm {
    /// Value on a monomial of S (the T part ignored).
    pub fn eval_x(&self, m: &GridMonomial) -> i64 {
        self.outside.iter().map(|c| m.exp(c) as i64).sum()
    }

    /// Value on a monomial of S[T].
    pub fn eval(&self, m: &GridMonomial) -> i64 {
        self.eval_x(m) + (m.t_pow() as i64) * self.t_coeff
    }
}

/// Longest strictly increasing chain (rows and columns both strictly
/// increasing) among `cells`, which must be sorted row-major.
fn longest_chain(cells: &[Cell]) -> usize {
    let mut lis = vec![1usize; cells.len()];
    let mut best = 0;
    for j in 0..cells.len() {
        for p in 0..j {
            if cells[p].strictly_below(&cells[j]) {
                lis[j] = lis[j].max(lis[p] + 1);
            }
        }
        best = best.max(lis[j]);
    }
    best
}

fn compute_facets(m: usize, n: usize, i: usize, limits: &Limits) -> Result<FacetSet> {
    let cells_total = m * n;
    if cells_total > limits.max_facet_cells {
        return Err(Error::resource(
            "facet enumeration grid cells",
            limits.max_facet_cells,
        ));
    }
    if i == 0 || i > m.min(n) {
        return Err(Error::invalid(format!(
            "facet index i={i} must satisfy 1 <= i <= min(m,n)"
        )));
    }
    let grid: Vec<Cell> = MatrixConfig::new(m, n, 1)?.cells();
    let mut facets = Vec::new();
    for mask in 0u32..(1u32 << cells_total) {
        let subset: Vec<Cell> = (0..cells_total)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| grid[b])
            .collect();
        if longest_chain(&subset) >= i {
            continue;
        }
        let maximal = (0..cells_total).all(|b| {
            if mask >> b & 1 == 1 {
                return true;
            }
            let mut bigger = subset.clone();
            bigger.push(grid[b]);
            bigger.sort();
            longest_chain(&bigger) >= i
        });
        if maximal {
            facets.push(subset);
        }
    }
    facets.sort();
    let expected = FacetSet::expected_size(m, n, i);
    for f in &facets {
        if f.len() != expected {
            return Err(Error::PurityViolation(format!(
                "facet of size {} on the {m}x{n} grid at i={i}, expected {expected}",
                f.len()
            )));
        }
    }
    Ok(FacetSet { m, n, i, facets })
}

type FacetCache = Mutex<HashMap<(usize, usize, usize), Arc<FacetSet>>>;

static FACET_CACHE: OnceLock<FacetCache> = OnceLock::new();

/// All facets, cached per (m, n, i); purity is checked on construction.
/// When `MINORALG_FACET_CACHE_DIR` is set, results are also mirrored to disk.
pub fn enumerate_facets(m: usize, n: usize, i: usize, limits: &Limits) -> Result<Arc<FacetSet>> {
    let cache = FACET_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(m, n, i)) {
        return Ok(Arc::clone(f));
    }
    if let Some(fs) = load_from_disk(m, n, i) {
        let arc = Arc::new(fs);
        cache
            .lock()
            .unwrap()
            .entry((m, n, i))
            .or_insert_with(|| Arc::clone(&arc));
        return Ok(arc);
    }
    let computed = Arc::new(compute_facets(m, n, i, limits)?);
    store_to_disk(&computed);
    cache
        .lock()
        .unwrap()
        .entry((m, n, i))
        .or_insert_with(|| Arc::clone(&computed));
    Ok(computed)
}

fn cache_path(m: usize, n: usize, i: usize) -> Option<std::path::PathBuf> {
    let dir = std::env::var_os(FACET_CACHE_ENV)?;
    Some(std::path::Path::new(&dir).join(format!("facets_{m}x{n}_i{i}.json")))
}

fn load_from_disk(m: usize, n: usize, i: usize) -> Option<FacetSet> {
    let path = cache_path(m, n, i)?;
    let text = std::fs::read_to_string(path).ok()?;
    let fs: FacetSet = serde_json::from_str(&text).ok()?;
    (fs.m == m && fs.n == n && fs.i == i).then_some(fs)
}

fn store_to_disk(fs: &FacetSet) {
    if let Some(path) = cache_path(fs.m, fs.n, fs.i) {
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        if let Ok(text) = serde_json::to_string(fs) {
            let _ = std::fs::write(path, text);
        }
    }
}

fn check_monomial_in_grid(m: usize, n: usize, mono: &GridMonomial) -> Result<()> {
    for cell in mono.exps().keys() {
        if cell.row as usize > m || cell.col as usize > n {
            return Err(Error::invalid(format!(
                "monomial cell {cell} outside the {m}x{n} grid"
            )));
        }
    }
    Ok(())
}

/// rho_i of an x-monomial via the facet description: the minimum over
/// facets of the exponent sum outside the facet.
pub fn rho_facet(
    m: usize,
    n: usize,
    i: usize,
    mono: &GridMonomial,
    limits: &Limits,
) -> Result<i64> {
    if mono.t_pow() != 0 {
        return Err(Error::invalid(
            "rho_facet expects a monomial of S (no T part)",
        ));
    }
    check_monomial_in_grid(m, n, mono)?;
    let facets = enumerate_facets(m, n, i, limits)?;
    let forms = facets.linear_forms(1);
    Ok(forms
        .iter()
        .map(|f| f.eval_x(mono))
        .min()
        .expect("every grid has at least one facet"))
}

/// rho_i of an x-monomial as the maximum of gamma_i over decompositions of
/// its cell multiset into strictly increasing chains.
pub fn rho_search(
    m: usize,
    n: usize,
    i: usize,
    mono: &GridMonomial,
    limits: &Limits,
) -> Result<i64> {
    if mono.t_pow() != 0 {
        return Err(Error::invalid(
            "rho_search expects a monomial of S (no T part)",
        ));
    }
    check_monomial_in_grid(m, n, mono)?;
    if mono.x_degree() > limits.max_rho_search_degree {
        return Err(Error::resource(
            "rho search degree",
            limits.max_rho_search_degree,
        ));
    }
    let cells = mono.cell_multiset();
    let out = search(
        &cells,
        |chain: &[Cell], next: &Cell| chain.last().is_none_or(|l| l.strictly_below(next)),
        Goal::MaxGamma { i },
    );
    Ok(out.best.max(0))
}

/// rho_i on monomials of S[T]: rho of the x part minus tPower*(t+1-i).
pub fn rho_st(cfg: &MatrixConfig, i: usize, mono: &GridMonomial, limits: &Limits) -> Result<i64> {
    let base = rho_facet(cfg.m(), cfg.n(), i, &mono.x_part(), limits)?;
    Ok(base - (mono.t_pow() as i64) * ((cfg.t() as i64) + 1 - i as i64))
}

/// rho_i of a polynomial of S[T]: the minimum over its monomials.
pub fn rho_st_poly(
    cfg: &MatrixConfig,
    i: usize,
    f: &Polynomial,
    limits: &Limits,
) -> Result<Option<i64>> {
    let mut best: Option<i64> = None;
    for (mono, _) in f.terms() {
        let v = rho_st(cfg, i, mono, limits)?;
        best = Some(best.map_or(v, |b: i64| b.min(v)));
    }
    Ok(best)
}
