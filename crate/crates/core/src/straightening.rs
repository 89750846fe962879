//! Standard monomial enumeration and the straightening oracle.
//!
//! Straightening is done by global linear algebra per degree: the expansions
//! of all standard monomials of a degree form a basis of that homogeneous
//! component, so coordinates are found by tracked row reduction. Tables are
//! cached per (m, n, degree).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Limits, MatrixConfig};
use crate::linalg::{TermIndex, TrackedEchelon};
use crate::minor::{minor_le, Minor, ProductOfMinors, Shape};
use crate::poly::{expand_product, Polynomial, Rational};

/// Structural restriction applied during enumeration (prunes the search,
/// unlike a post-filter).
#[derive(Debug, Clone)]
pub enum StandardFilter {
    All,
    /// At most this many factors.
    MaxParts(usize),
    /// Exactly this shape.
    Shape(Shape),
}

impl StandardFilter {
    fn next_size_ok(&self, parts_used: usize, size: usize) -> bool {
        match self {
            StandardFilter::All => true,
            StandardFilter::MaxParts(p) => parts_used < *p,
            StandardFilter::Shape(s) => s.parts().get(parts_used) == Some(&size),
        }
    }

    /// Upper bound on the degree the remaining factors can still absorb.
    fn remaining_capacity(&self, parts_used: usize, next_max_size: usize) -> usize {
        match self {
            StandardFilter::All => usize::MAX,
            StandardFilter::MaxParts(p) => p.saturating_sub(parts_used) * next_max_size,
            StandardFilter::Shape(s) => s.parts().iter().skip(parts_used).sum(),
        }
    }
}

/// All standard monomials of total degree `d`: weakly increasing multichains
/// in the minor poset, factor sizes weakly decreasing along the chain.
/// Deterministic order (DFS over the canonically ordered minor list).
pub fn enumerate_standard(
    cfg: &MatrixConfig,
    d: usize,
    filter: &StandardFilter,
    limits: &Limits,
) -> Result<Vec<ProductOfMinors>> {
    if d > limits.max_enum_degree {
        return Err(Error::resource(
            "standard monomial enumeration degree",
            limits.max_enum_degree,
        ));
    }
    if let StandardFilter::Shape(s) = filter {
        if s.total() != d {
            return Ok(Vec::new());
        }
    }
    let minors = Minor::all(cfg);
    // up_sets[i] = indices of minors >= minors[i], in canonical order.
    let up_sets: Vec<Vec<usize>> = minors
        .iter()
        .map(|a| {
            minors
                .iter()
                .enumerate()
                .filter(|(_, b)| minor_le(a, b))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let roots: Vec<usize> = (0..minors.len()).collect();

    fn go(
        minors: &[Minor],
        up_sets: &[Vec<usize>],
        filter: &StandardFilter,
        candidates: &[usize],
        remaining: usize,
        chain: &mut Vec<Minor>,
        out: &mut Vec<ProductOfMinors>,
    ) {
        if remaining == 0 {
            out.push(ProductOfMinors::new(chain.clone()));
            return;
        }
        for &j in candidates {
            let size = minors[j].size();
            if size > remaining || !filter.next_size_ok(chain.len(), size) {
                continue;
            }
            // Later factors cannot be larger than this one; prune when the
            // remaining degree is out of reach.
            let capacity = filter
                .remaining_capacity(chain.len() + 1, size)
                .saturating_add(size);
            if capacity < remaining {
                continue;
            }
            chain.push(minors[j].clone());
            go(
                minors,
                up_sets,
                filter,
                &up_sets[j],
                remaining - size,
                chain,
                out,
            );
            chain.pop();
        }
    }

    let mut out = Vec::new();
    go(
        &minors,
        &up_sets,
        filter,
        &roots,
        d,
        &mut Vec::new(),
        &mut out,
    );
    Ok(out)
}

/// A polynomial written in the standard-monomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardRep {
    entries: Vec<StandardEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardEntry {
    pub coeff: String,
    #[serde(rename = "product")]
    pub standard: ProductOfMinors,
}

impl StandardRep {
    pub fn entries(&self) -> impl Iterator<Item = (Rational, &ProductOfMinors)> {
        self.entries
            .iter()
            .map(|e| (e.coeff.parse::<Rational>().unwrap(), &e.standard))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Expand the representation back to a polynomial.
    pub fn to_polynomial(&self, limits: &Limits) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (c, p) in self.entries() {
            out = &out + &expand_product(p, limits)?.scale(&c);
        }
        Ok(out)
    }
}

/// Straightening table for one (m, n, degree): the standard monomials, their
/// expansions, and a tracked echelon over them.
pub struct Table {
    pub standards: Vec<ProductOfMinors>,
    pub index: TermIndex,
    tracked: TrackedEchelon,
}

impl Table {
    fn build(m: usize, n: usize, d: usize, limits: &Limits) -> Result<Table> {
        let cfg = MatrixConfig::new(m, n, 1)?;
        let standards = enumerate_standard(&cfg, d, &StandardFilter::All, limits)?;
        let expected = binomial(m * n - 1 + d, d);
        if standards.len() as u128 != expected {
            return Err(Error::InternalInconsistency(format!(
                "standard monomial count {} for ({m},{n}) degree {d}, expected {expected}",
                standards.len()
            )));
        }
        let expansions: Vec<Polynomial> = standards
            .iter()
            .map(|p| expand_product(p, limits))
            .collect::<Result<_>>()?;
        let index = TermIndex::build(expansions.iter());
        if index.len() as u128 != expected {
            return Err(Error::InternalInconsistency(
                "standard expansions do not reach the full monomial support".into(),
            ));
        }
        let mut tracked = TrackedEchelon::new(limits.max_row_support);
        for e in &expansions {
            let row = index.row(e).expect("index covers its own support");
            if tracked.insert(row)?.is_some() {
                return Err(Error::InternalInconsistency(format!(
                    "standard expansions are linearly dependent at ({m},{n}) degree {d}"
                )));
            }
        }
        Ok(Table {
            standards,
            index,
            tracked,
        })
    }

    /// Coordinates of a homogeneous polynomial of the table degree over the
    /// standard basis: (standard index, coefficient), index ascending.
    pub fn coordinates(&self, f: &Polynomial) -> Result<Vec<(usize, Rational)>> {
        if f.is_zero() {
            return Ok(Vec::new());
        }
        let row = self.index.row(f).ok_or_else(|| {
            Error::InternalInconsistency(
                "polynomial support escapes the straightening basis".into(),
            )
        })?;
        let (rem, coords) = self.tracked.express(row);
        if !rem.is_zero() {
            return Err(Error::InternalInconsistency(
                "polynomial is not in the span of the standard basis".into(),
            ));
        }
        Ok(coords
            .entries()
            .iter()
            .map(|(i, c)| (*i as usize, c.clone()))
            .collect())
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

type TableCache = Mutex<HashMap<(usize, usize, usize), Arc<Table>>>;

static TABLE_CACHE: OnceLock<TableCache> = OnceLock::new();

/// Straightening table for (m, n, degree), cached.
pub fn table(m: usize, n: usize, d: usize, limits: &Limits) -> Result<Arc<Table>> {
    if d > limits.max_straighten_degree {
        return Err(Error::resource(
            "straightening degree",
            limits.max_straighten_degree,
        ));
    }
    let cache = TABLE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(m, n, d)) {
        return Ok(Arc::clone(t));
    }
    let built = Arc::new(Table::build(m, n, d, limits)?);
    cache
        .lock()
        .unwrap()
        .entry((m, n, d))
        .or_insert_with(|| Arc::clone(&built));
    Ok(built)
}

/// Unique coordinates of an x-homogeneous polynomial of S in the
/// standard-monomial basis of its degree.
pub fn standard_rep(cfg: &MatrixConfig, f: &Polynomial, limits: &Limits) -> Result<StandardRep> {
    if f.terms().any(|(m, _)| m.t_pow() != 0) {
        return Err(Error::invalid(
            "straightening applies to polynomials of S, not S[T]",
        ));
    }
    for (m, _) in f.terms() {
        for cell in m.exps().keys() {
            if !cfg.contains_cell(cell) {
                return Err(Error::invalid(format!(
                    "variable x{}{} outside the {}x{} grid",
                    cell.row,
                    cell.col,
                    cfg.m(),
                    cfg.n()
                )));
            }
        }
    }
    let d = f
        .x_homogeneous_degree()
        .ok_or_else(|| Error::invalid("straightening input must be x-homogeneous"))?;
    let tbl = table(cfg.m(), cfg.n(), d, limits)?;
    let coords = tbl.coordinates(f)?;
    Ok(StandardRep {
        entries: coords
            .into_iter()
            .map(|(i, c)| StandardEntry {
                coeff: c.to_string(),
                standard: tbl.standards[i].clone(),
            })
            .collect(),
    })
}

/// Straighten a product of minors: its coordinates over standard monomials
/// of the same degree. A standard input comes back as itself.
pub fn straighten(cfg: &MatrixConfig, p: &ProductOfMinors, limits: &Limits) -> Result<StandardRep> {
    if !p.fits(cfg) {
        return Err(Error::invalid(
            "product does not fit in the configured grid",
        ));
    }
    let f = expand_product(p, limits)?;
    standard_rep(cfg, &f, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn lim() -> Limits {
        Limits::default()
    }

    fn product(s: &str) -> ProductOfMinors {
        s.parse().unwrap()
    }

    #[test]
    fn degree_two_on_2x2() {
        let cfg = MatrixConfig::new(2, 2, 1).unwrap();
        let got = enumerate_standard(&cfg, 2, &StandardFilter::All, &lim()).unwrap();
        assert_eq!(got.len(), 10);
        let expected: Vec<ProductOfMinors> = [
            "[1,2|1,2]",
            "[1|1]*[1|2]",
            "[1|1]*[2|1]",
            "[1|1]*[2|2]",
            "[1|2]*[2|2]",
            "[2|1]*[2|2]",
            "[1|1]*[1|1]",
            "[1|2]*[1|2]",
            "[2|1]*[2|1]",
            "[2|2]*[2|2]",
        ]
        .iter()
        .map(|s| product(s))
        .collect();
        for e in &expected {
            assert!(got.contains(e), "missing {e}");
        }
    }

    #[test]
    fn degree_one_is_the_variables() {
        for (m, n) in [(2usize, 3usize), (3, 3)] {
            let cfg = MatrixConfig::new(m, n, 1).unwrap();
            let got = enumerate_standard(&cfg, 1, &StandardFilter::All, &lim()).unwrap();
            assert_eq!(got.len(), m * n);
            assert!(got.iter().all(|p| p.shape().parts() == [1]));
        }
    }

    #[test]
    fn shape_filter_picks_the_two_minors() {
        let cfg = MatrixConfig::new(3, 3, 2).unwrap();
        let shape = Shape::new(vec![2]).unwrap();
        let got = enumerate_standard(&cfg, 2, &StandardFilter::Shape(shape), &lim()).unwrap();
        assert_eq!(got.len(), 9);
    }

    #[test]
    fn degree_zero_is_the_unit() {
        let cfg = MatrixConfig::new(3, 3, 2).unwrap();
        let got = enumerate_standard(&cfg, 0, &StandardFilter::All, &lim()).unwrap();
        assert_eq!(got, vec![ProductOfMinors::unit()]);
    }

    #[test]
    fn enumeration_matches_dimension_small() {
        for (m, n) in [(2usize, 2usize), (2, 3), (3, 3)] {
            let cfg = MatrixConfig::new(m, n, 1).unwrap();
            for d in 0..=3 {
                let got = enumerate_standard(&cfg, d, &StandardFilter::All, &lim()).unwrap();
                assert_eq!(
                    got.len() as u128,
                    binomial(m * n - 1 + d, d),
                    "({m},{n}) degree {d}"
                );
                assert!(got.iter().all(|p| p.is_standard()));
            }
        }
    }

    #[test]
    fn straighten_swap_product() {
        let cfg = MatrixConfig::new(2, 2, 1).unwrap();
        let rep = straighten(&cfg, &product("[1|2]*[2|1]"), &lim()).unwrap();
        assert_eq!(rep.len(), 2);
        let entries: Vec<(Rational, ProductOfMinors)> =
            rep.entries().map(|(c, p)| (c, p.clone())).collect();
        assert!(entries.contains(&(rat(1), product("[1|1]*[2|2]"))));
        assert!(entries.contains(&(rat(-1), product("[1,2|1,2]"))));
    }

    #[test]
    fn straighten_standard_is_identity() {
        let cfg = MatrixConfig::new(2, 2, 1).unwrap();
        for s in ["[1|1]*[2|2]", "[1,2|1,2]"] {
            let rep = straighten(&cfg, &product(s), &lim()).unwrap();
            assert_eq!(rep.len(), 1);
            let (c, p) = rep.entries().next().unwrap();
            assert_eq!(c, rat(1));
            assert_eq!(p, &product(s));
        }
    }

    #[test]
    fn straighten_round_trips() {
        let cfg = MatrixConfig::new(3, 3, 1).unwrap();
        for s in [
            "[1|2]*[2|1]*[3|3]",
            "[1,2|2,3]*[2,3|1,2]",
            "[1,3|1,3]*[2|2]",
        ] {
            let p = product(s);
            let rep = straighten(&cfg, &p, &lim()).unwrap();
            assert_eq!(
                rep.to_polynomial(&lim()).unwrap(),
                expand_product(&p, &lim()).unwrap(),
                "round trip for {s}"
            );
            for (_, q) in rep.entries() {
                assert!(q.is_standard());
            }
        }
    }

    #[test]
    fn straightening_never_lowers_gamma() {
        // Every standard monomial appearing in the representation of a
        // product has gamma at least the gamma of the product's shape,
        // exhaustively over small products.
        use crate::gamma::{gamma_product, gamma_shape};
        use itertools::Itertools;

        let sweep = |m: usize, n: usize, dmax: usize| {
            let cfg = MatrixConfig::new(m, n, 1).unwrap();
            let minors = Minor::all(&cfg);
            for count in 1..=3usize {
                for combo in minors.iter().combinations_with_replacement(count) {
                    let p = ProductOfMinors::new(combo.into_iter().cloned().collect());
                    if p.degree() > dmax {
                        continue;
                    }
                    let shape = p.shape();
                    let rep = straighten(&cfg, &p, &lim()).unwrap();
                    for t in 1..=m.min(n) {
                        let bound = gamma_shape(t, &shape);
                        for (_, q) in rep.entries() {
                            assert!(
                                gamma_product(t, q) >= bound,
                                "gamma_{t} dropped below the shape bound for {p}"
                            );
                        }
                    }
                }
            }
        };
        sweep(2, 2, 4);
        sweep(3, 3, 3);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let cfg = MatrixConfig::new(2, 2, 1).unwrap();
        let mut limits = lim();
        limits.max_straighten_degree = 2;
        let p = product("[1|1]*[1|1]*[1|1]");
        assert!(matches!(
            straighten(&cfg, &p, &limits),
            Err(Error::ResourceBound { .. })
        ));
    }

    #[test]
    fn rejects_out_of_grid_product() {
        let cfg = MatrixConfig::new(2, 2, 1).unwrap();
        assert!(straighten(&cfg, &product("[3|1]"), &lim()).is_err());
    }
}
