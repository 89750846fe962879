//! Minors of a generic matrix, the natural partial order on them, shapes of
//! products, and standardness.
//!
//! A minor is written `[a_1,..,a_s | b_1,..,b_s]` with strictly ascending row
//! and column indices. The order is `[a|b] <= [c|d]` iff the left minor is at
//! least as large and dominates entrywise on the common range.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Cell, MatrixConfig};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Minor {
    rows: Vec<u16>,
    cols: Vec<u16>,
}

impl Minor {
    pub fn new(rows: Vec<u16>, cols: Vec<u16>) -> Result<Self> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::invalid(
                "a minor needs equally many row and column indices, at least one of each",
            ));
        }
        let ascending =
            |v: &[u16]| v.windows(2).all(|w| w[0] < w[1]) && v.first().is_some_and(|&x| x >= 1);
        if !ascending(&rows) || !ascending(&cols) {
            return Err(Error::invalid(
                "row and column indices must be strictly ascending and 1-based",
            ));
        }
        Ok(Minor { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u16] {
        &self.rows
    }

    pub fn cols(&self) -> &[u16] {
        &self.cols
    }

    pub fn fits(&self, cfg: &MatrixConfig) -> bool {
        *self.rows.last().unwrap() as usize <= cfg.m()
            && *self.cols.last().unwrap() as usize <= cfg.n()
    }

    /// The main diagonal (a_i, b_i), i.e. the cells whose product is the
    /// initial monomial under a diagonal term order.
    pub fn diagonal(&self) -> Vec<Cell> {
        self.rows
            .iter()
            .zip(&self.cols)
            .map(|(&r, &c)| Cell::new(r, c))
            .collect()
    }

    /// The minor whose diagonal is the given strictly increasing chain of
    /// cells.
    pub fn from_diagonal(chain: &[Cell]) -> Result<Self> {
        Minor::new(
            chain.iter().map(|c| c.row).collect(),
            chain.iter().map(|c| c.col).collect(),
        )
    }

    pub fn transpose(&self) -> Minor {
        Minor {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// All minors of the grid, every size, in the canonical order used for
    /// deterministic enumeration (size descending, then lexicographic).
    pub fn all(cfg: &MatrixConfig) -> Vec<Minor> {
        use itertools::Itertools;
        let mut out = Vec::new();
        for s in (1..=cfg.min_dim()).rev() {
            for rows in (1..=cfg.m() as u16).combinations(s) {
                for cols in (1..=cfg.n() as u16).combinations(s) {
                    out.push(Minor {
                        rows: rows.clone(),
                        cols,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for Minor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u16]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "[{}|{}]", join(&self.rows), join(&self.cols))
    }
}

impl FromStr for Minor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::invalid(format!("minor must look like [1,2|1,3], got {s:?}")))?;
        let (r, c) = body
            .split_once('|')
            .ok_or_else(|| Error::invalid("minor is missing the | separator"))?;
        let parse = |part: &str| -> Result<Vec<u16>> {
            part.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u16>()
                        .map_err(|_| Error::invalid(format!("bad index {x:?}")))
                })
                .collect()
        };
        Minor::new(parse(r)?, parse(c)?)
    }
}

impl Serialize for Minor {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Minor {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Outcome of comparing two minors in the partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorCompare {
    Le,
    Ge,
    Eq,
    Incomparable,
}

/// `a <= b` iff size(a) >= size(b) and a dominates b entrywise on rows and
/// columns up to size(b).
pub fn minor_le(a: &Minor, b: &Minor) -> bool {
    a.size() >= b.size()
        && (0..b.size()).all(|i| a.rows()[i] <= b.rows()[i] && a.cols()[i] <= b.cols()[i])
}

pub fn minor_compare(a: &Minor, b: &Minor) -> MinorCompare {
    if a == b {
        return MinorCompare::Eq;
    }
    match (minor_le(a, b), minor_le(b, a)) {
        (true, true) => MinorCompare::Eq,
        (true, false) => MinorCompare::Le,
        (false, true) => MinorCompare::Ge,
        (false, false) => MinorCompare::Incomparable,
    }
}

/// A partition: the multiset of factor sizes of a product of minors, stored
/// weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("shape parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Shape(parts))
    }

    pub fn empty() -> Self {
        Shape(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Shape {
        let cols = self.0.first().copied().unwrap_or(0);
        Shape(
            (1..=cols)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count())
                .collect(),
        )
    }

    /// All partitions of `total` with at most `max_parts` parts, each part at
    /// most `max_part`.
    pub fn partitions(total: usize, max_parts: usize, max_part: usize) -> Vec<Shape> {
        fn go(rest: usize, slots: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Shape>) {
            if rest == 0 {
                out.push(Shape(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                cur.push(p);
                go(rest - p, slots - 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(total, max_parts, max_part, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// An ordered product of minors. Factors are stored canonically (size
/// descending, then lexicographic) so that equal products compare equal
/// structurally. The empty product is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductOfMinors {
    factors: Vec<Minor>,
}

impl ProductOfMinors {
    pub fn new(mut factors: Vec<Minor>) -> Self {
        factors.sort_unstable_by(|a, b| {
            b.size()
                .cmp(&a.size())
                .then_with(|| a.rows().cmp(b.rows()))
                .then_with(|| a.cols().cmp(b.cols()))
        });
        ProductOfMinors { factors }
    }

    pub fn unit() -> Self {
        ProductOfMinors {
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[Minor] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|m| m.size()).sum()
    }

    pub fn shape(&self) -> Shape {
        // Canonical storage is already weakly decreasing in size.
        Shape(self.factors.iter().map(|m| m.size()).collect())
    }

    /// A product is standard when its factors can be arranged into a weakly
    /// increasing chain. In a poset this holds exactly when the factors are
    /// pairwise comparable; the canonical storage order is then the chain
    /// order itself.
    pub fn is_standard(&self) -> bool {
        for i in 0..self.factors.len() {
            for j in (i + 1)..self.factors.len() {
                if minor_compare(&self.factors[i], &self.factors[j]) == MinorCompare::Incomparable {
                    return false;
                }
            }
        }
        true
    }

    pub fn fits(&self, cfg: &MatrixConfig) -> bool {
        self.factors.iter().all(|m| m.fits(cfg))
    }

    pub fn transpose(&self) -> ProductOfMinors {
        ProductOfMinors::new(self.factors.iter().map(|m| m.transpose()).collect())
    }
}

impl fmt::Display for ProductOfMinors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let s = self
            .factors
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join("*");
        write!(f, "{s}")
    }
}

impl FromStr for ProductOfMinors {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(ProductOfMinors::unit());
        }
        let factors = s
            .split('*')
            .map(|part| part.parse::<Minor>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductOfMinors::new(factors))
    }
}

impl Serialize for ProductOfMinors {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProductOfMinors {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
