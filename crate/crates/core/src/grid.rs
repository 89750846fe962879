use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell of the m x n grid, 1-based as in the classical notation for
/// generic matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: u16,
    pub col: u16,
}

impl Cell {
    pub fn new(row: u16, col: u16) -> Self {
        Cell { row, col }
    }

    /// Strict domination in both coordinates: the order under which a set of
    /// cells is the main diagonal of a minor.
    pub fn strictly_below(&self, other: &Cell) -> bool {
        self.row < other.row && self.col < other.col
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.row, self.col)
    }
}

/// Size data for a generic m x n matrix together with the minor size t under
/// study. The assumption flags are derived, never user supplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatrixConfig {
    m: usize,
    n: usize,
    t: usize,
    rees_assumption: bool,
    at_assumption: bool,
}

impl MatrixConfig {
    pub fn new(m: usize, n: usize, t: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::invalid("matrix dimensions must be at least 1"));
        }
        let v = m.min(n);
        if t == 0 || t > v {
            return Err(Error::invalid(format!(
                "minor size t={t} must satisfy 1 <= t <= min(m,n)={v}"
            )));
        }
        let rees_assumption = t < v;
        let at_assumption = 1 < t && t < v && !(m == n && t == v - 1);
        Ok(MatrixConfig {
            m,
            n,
            t,
            rees_assumption,
            at_assumption,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn min_dim(&self) -> usize {
        self.m.min(self.n)
    }

    /// t < min(m,n): the setting in which the Rees-algebra statements that go
    /// beyond the maximal-minors case are formulated.
    pub fn rees_assumption(&self) -> bool {
        self.rees_assumption
    }

    /// 1 < t < min(m,n) and m != n when t = min(m,n) - 1: the setting for the
    /// class-group and canonical-class statements about the algebra generated
    /// by the t-minors.
    pub fn at_assumption(&self) -> bool {
        self.at_assumption
    }

    pub fn require_rees(&self) -> Result<()> {
        if self.rees_assumption {
            Ok(())
        } else {
            Err(Error::AssumptionViolation(format!(
                "(m,n,t)=({},{},{}) needs t < min(m,n)",
                self.m, self.n, self.t
            )))
        }
    }

    pub fn require_at(&self) -> Result<()> {
        if self.at_assumption {
            Ok(())
        } else {
            Err(Error::AssumptionViolation(format!(
                "(m,n,t)=({},{},{}) needs 1 < t < min(m,n), with m != n when t = min(m,n)-1",
                self.m, self.n, self.t
            )))
        }
    }

    pub fn contains_cell(&self, c: &Cell) -> bool {
        (1..=self.m).contains(&(c.row as usize)) && (1..=self.n).contains(&(c.col as usize))
    }

    /// All grid cells in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.m * self.n);
        for r in 1..=self.m {
            for c in 1..=self.n {
                out.push(Cell::new(r as u16, c as u16));
            }
        }
        out
    }
}

/// Resource caps. Exceeding any of these raises `Error::ResourceBound`
/// rather than silently truncating.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest minor expanded by the Leibniz rule.
    pub max_minor_size: usize,
    /// Largest x-degree for which a straightening table is built.
    pub max_straighten_degree: usize,
    /// Largest x-degree for standard-monomial enumeration.
    pub max_enum_degree: usize,
    /// Largest grid (cell count) for facet enumeration.
    pub max_facet_cells: usize,
    /// Largest monomial degree for the search-based rho computation.
    pub max_rho_search_degree: usize,
    /// Total nonzero entries allowed across a row-reduction.
    pub max_row_support: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_minor_size: 5,
            max_straighten_degree: 8,
            max_enum_degree: 12,
            max_facet_cells: 20,
            max_rho_search_degree: 10,
            max_row_support: 1_000_000,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assumption_flags() {
        let c = MatrixConfig::new(3, 3, 2).unwrap();
        assert!(c.rees_assumption());
        // m = n with t = min - 1 is excluded from the A_t setting.
        assert!(!c.at_assumption());

        let c = MatrixConfig::new(3, 4, 2).unwrap();
        assert!(c.rees_assumption());
        assert!(c.at_assumption());

        let c = MatrixConfig::new(4, 4, 2).unwrap();
        assert!(c.at_assumption());

        let c = MatrixConfig::new(3, 3, 3).unwrap();
        assert!(!c.rees_assumption());
        assert!(!c.at_assumption());

        let c = MatrixConfig::new(5, 5, 1).unwrap();
        assert!(!c.at_assumption());
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(MatrixConfig::new(0, 3, 1).is_err());
        assert!(MatrixConfig::new(3, 3, 0).is_err());
        assert!(MatrixConfig::new(3, 3, 4).is_err());
    }
}
