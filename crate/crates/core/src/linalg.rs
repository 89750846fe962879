//! Exact Gaussian elimination over the rationals for spaces of homogeneous
//! polynomials, ordered by the diagonal term order.
//!
//! Rows are sparse vectors over an indexed set of monomials; index 0 is the
//! largest monomial, so the first entry of a row is its initial term.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grid::Limits;
use crate::poly::{GridMonomial, Polynomial, Rational};

/// Monomials of a working space, sorted descending in the diagonal order.
pub struct TermIndex {
    monos: Vec<GridMonomial>,
    pos: HashMap<GridMonomial, u32>,
}

impl TermIndex {
    pub fn build<'a, I: IntoIterator<Item = &'a Polynomial>>(polys: I) -> TermIndex {
        let mut set = BTreeSet::new();
        for p in polys {
            for (m, _) in p.terms() {
                set.insert(m.clone());
            }
        }
        let monos: Vec<GridMonomial> = set.into_iter().rev().collect();
        let pos = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        TermIndex { monos, pos }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomial(&self, idx: u32) -> &GridMonomial {
        &self.monos[idx as usize]
    }

    pub fn position(&self, m: &GridMonomial) -> Option<u32> {
        self.pos.get(m).copied()
    }

    /// None when some monomial of `p` lies outside the indexed space.
    pub fn row(&self, p: &Polynomial) -> Option<SparseRow> {
        let mut entries = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms_desc() {
            entries.push((self.position(m)?, c.clone()));
        }
        Some(SparseRow { entries })
    }

    pub fn polynomial(&self, row: &SparseRow) -> Polynomial {
        let mut p = Polynomial::zero();
        for (idx, c) in &row.entries {
            p.add_term(self.monomial(*idx).clone(), c.clone());
        }
        p
    }
}

/// Sparse vector sorted by ascending index; entry 0 is the initial term.
#[derive(Debug, Clone, Default)]
pub struct SparseRow {
    entries: Vec<(u32, Rational)>,
}

impl SparseRow {
    pub fn unit(idx: u32) -> SparseRow {
        SparseRow {
            entries: vec![(idx, Rational::one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn lead(&self) -> Option<(u32, &Rational)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn entries(&self) -> &[(u32, Rational)] {
        &self.entries
    }

    fn scale_in_place(&mut self, c: &Rational) {
        for (_, a) in &mut self.entries {
            *a *= c;
        }
    }

    /// self -= c * other
    fn axpy(&mut self, c: &Rational, other: &SparseRow) {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = self.entries.iter();
        let mut b = other.entries.iter();
        let (mut na, mut nb) = (a.next(), b.next());
        loop {
            match (na, nb) {
                (Some((ia, ca)), Some((ib, cb))) => {
                    if ia < ib {
                        out.push((*ia, ca.clone()));
                        na = a.next();
                    } else if ia > ib {
                        out.push((*ib, -(cb * c)));
                        nb = b.next();
                    } else {
                        let v = ca - &(cb * c);
                        if !v.is_zero() {
                            out.push((*ia, v));
                        }
                        na = a.next();
                        nb = b.next();
                    }
                }
                (Some((ia, ca)), None) => {
                    out.push((*ia, ca.clone()));
                    na = a.next();
                }
                (None, Some((ib, cb))) => {
                    out.push((*ib, -(cb * c)));
                    nb = b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }
}

/// Row-echelon accumulator: rows with distinct lead indices, lead
/// coefficient 1.
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivots: BTreeMap<u32, usize>,
    support: usize,
    cap: usize,
}

impl Echelon {
    pub fn new(cap: usize) -> Echelon {
        Echelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            support: 0,
            cap,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Pivot indices in ascending order (descending monomials).
    pub fn lead_indices(&self) -> Vec<u32> {
        self.pivots.keys().copied().collect()
    }

    /// Cancel leading entries of `row` against the pivots until the lead is
    /// unmatched or the row vanishes.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((lead, coeff)) = row.lead() {
            match self.pivots.get(&lead) {
                Some(&i) => {
                    let c = coeff.clone();
                    row.axpy(&c, &self.rows[i]);
                }
                None => break,
            }
        }
        row
    }

    /// Reduce and, if nonzero, normalize and keep. Returns whether the rank
    /// grew.
    pub fn insert(&mut self, row: SparseRow) -> Result<bool> {
        let mut row = self.reduce(row);
        match row.lead() {
            None => Ok(false),
            Some((lead, coeff)) => {
                let inv = coeff.recip();
                row.scale_in_place(&inv);
                self.support += row.nnz();
                if self.support > self.cap {
                    return Err(Error::resource("row reduction support", self.cap));
                }
                self.pivots.insert(lead, self.rows.len());
                self.rows.push(row);
                Ok(true)
            }
        }
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_zero()
    }
}

/// Echelon with coordinate tracking: every stored row knows its expression
/// in terms of the inserted input rows.
pub struct TrackedEchelon {
    rows: Vec<(SparseRow, SparseRow)>,
    pivots: BTreeMap<u32, usize>,
    inserted: u32,
    support: usize,
    cap: usize,
}

impl TrackedEchelon {
    pub fn new(cap: usize) -> TrackedEchelon {
        TrackedEchelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            inserted: 0,
            support: 0,
            cap,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_pair(&self, mut row: SparseRow, mut coords: SparseRow) -> (SparseRow, SparseRow) {
        while let Some((lead, coeff)) = row.lead() {
            match self.pivots.get(&lead) {
                Some(&i) => {
                    let c = coeff.clone();
                    row.axpy(&c, &self.rows[i].0);
                    coords.axpy(&c, &self.rows[i].1);
                }
                None => break,
            }
        }
        (row, coords)
    }

    /// Insert the next input row. When the row is dependent, returns the
    /// coordinates of a vanishing combination (a kernel element over the
    /// inputs inserted so far, including this one).
    pub fn insert(&mut self, row: SparseRow) -> Result<Option<SparseRow>> {
        let k = self.inserted;
        self.inserted += 1;
        let (mut row, mut coords) = self.reduce_pair(row, SparseRow::unit(k));
        match row.lead() {
            None => Ok(Some(coords)),
            Some((lead, coeff)) => {
                let inv = coeff.recip();
                row.scale_in_place(&inv);
                coords.scale_in_place(&inv);
                self.support += row.nnz() + coords.nnz();
                if self.support > self.cap {
                    return Err(Error::resource("tracked row reduction support", self.cap));
                }
                self.pivots.insert(lead, self.rows.len());
                self.rows.push((row, coords));
                Ok(None)
            }
        }
    }

    /// Express `row` over the input rows: returns (remainder, coords) with
    /// row = sum(coords * inputs) + remainder.
    pub fn express(&self, row: SparseRow) -> (SparseRow, SparseRow) {
        let (rem, coords) = self.reduce_pair(row, SparseRow::default());
        // reduce_pair tracks the subtractions, so coords currently holds the
        // negated combination.
        let mut coords = coords;
        coords.scale_in_place(&-Rational::one());
        (rem, coords)
    }
}

/// Exact row reduction of a list of polynomials, all x-homogeneous of the
/// same degree (the T-grading is carried along unchanged). Returns the
/// reduced basis and its initial monomials, both in descending diagonal
/// order of the leads.
pub fn row_reduce(
    polys: &[Polynomial],
    limits: &Limits,
) -> Result<(Vec<Polynomial>, Vec<GridMonomial>)> {
    let mut degree: Option<usize> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let d = p
            .x_homogeneous_degree()
            .ok_or_else(|| Error::invalid("row_reduce input must be x-homogeneous"))?;
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => {
                return Err(Error::invalid(
                    "row_reduce inputs must all have the same x-degree",
                ))
            }
            _ => {}
        }
    }
    let ech = echelon_of(polys, limits)?;
    let index = TermIndex::build(polys.iter());
    let mut rows: Vec<&SparseRow> = ech.rows().iter().collect();
    rows.sort_by_key(|r| r.lead().map(|(i, _)| i).unwrap_or(u32::MAX));
    let basis = rows.iter().map(|r| index.polynomial(r)).collect();
    let leads = rows
        .iter()
        .filter_map(|r| r.lead().map(|(i, _)| index.monomial(i).clone()))
        .collect();
    Ok((basis, leads))
}

/// Echelon form of the span of `polys` over their own term support.
/// The returned echelon shares indices with `TermIndex::build(polys)`.
pub fn echelon_of(polys: &[Polynomial], limits: &Limits) -> Result<Echelon> {
    let index = TermIndex::build(polys.iter());
    let mut ech = Echelon::new(limits.max_row_support);
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let row = index.row(p).expect("index covers its own support");
        ech.insert(row)?;
    }
    Ok(ech)
}

/// A subspace of a fixed homogeneous component, closed under membership
/// queries.
pub struct Subspace {
    index: TermIndex,
    ech: Echelon,
}

impl Subspace {
    pub fn from_polys(polys: &[Polynomial], limits: &Limits) -> Result<Subspace> {
        let index = TermIndex::build(polys.iter());
        let mut ech = Echelon::new(limits.max_row_support);
        for p in polys {
            if p.is_zero() {
                continue;
            }
            let row = index.row(p).expect("index covers its own support");
            ech.insert(row)?;
        }
        Ok(Subspace { index, ech })
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return true;
        }
        match self.index.row(f) {
            // Support outside the space spanned: cannot be a member.
            None => false,
            Some(row) => self.ech.contains(row),
        }
    }

    pub fn contains_all(&self, fs: &[Polynomial]) -> bool {
        fs.iter().all(|f| self.contains(f))
    }

    /// Initial monomials of the subspace, descending.
    pub fn lead_monomials(&self) -> Vec<GridMonomial> {
        self.ech
            .lead_indices()
            .into_iter()
            .map(|i| self.index.monomial(i).clone())
            .collect()
    }
}

/// Basis of the intersection of two spans (Zassenhaus doubling).
pub fn intersect_spans(
    us: &[Polynomial],
    ws: &[Polynomial],
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let index = TermIndex::build(us.iter().chain(ws.iter()));
    let n = index.len() as u32;
    let mut ech = Echelon::new(limits.max_row_support);
    for u in us {
        if u.is_zero() {
            continue;
        }
        let row = index.row(u).unwrap();
        let mut doubled = row.clone();
        doubled
            .entries
            .extend(row.entries.iter().map(|(i, c)| (i + n, c.clone())));
        ech.insert(doubled)?;
    }
    for w in ws {
        if w.is_zero() {
            continue;
        }
        ech.insert(index.row(w).unwrap())?;
    }
    let mut out = Vec::new();
    for row in ech.rows() {
        if let Some((lead, _)) = row.lead() {
            if lead >= n {
                let shifted = SparseRow {
                    entries: row
                        .entries
                        .iter()
                        .map(|(i, c)| (i - n, c.clone()))
                        .collect(),
                };
                out.push(index.polynomial(&shifted));
            }
        }
    }
    // Deterministic order: by initial monomial, descending.
    out.sort_by(|a, b| {
        let la = a.initial_term().unwrap().0;
        let lb = b.initial_term().unwrap().0;
        lb.cmp(&la)
    });
    Ok(out)
}

/// Basis of {F in span(ws) : g^k divides F}, computed by iterating
/// "kernel of reduction mod g, then exact quotient" k times.
pub fn divisible_subspace(
    ws: &[Polynomial],
    g: &Polynomial,
    k: usize,
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let mut space: Vec<Polynomial> = ws.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut divided: Vec<Polynomial> = space.clone();
    for _ in 0..k {
        // Remainders mod g are linear in the input, so combinations of the
        // basis that are divisible by g are exactly the kernel of the
        // remainder map.
        let rems: Vec<Polynomial> = divided
            .iter()
            .map(|w| w.div_rem(g).map(|(_, r)| r))
            .collect::<Result<_>>()?;
        let index = TermIndex::build(rems.iter());
        let mut tracked = TrackedEchelon::new(limits.max_row_support);
        let mut kernel: Vec<SparseRow> = Vec::new();
        for r in &rems {
            let row = index.row(r).expect("index covers its own support");
            if let Some(combo) = tracked.insert(row)? {
                kernel.push(combo);
            }
        }
        let mut next_space = Vec::new();
        let mut next_divided = Vec::new();
        for combo in kernel {
            let mut in_space = Polynomial::zero();
            let mut in_divided = Polynomial::zero();
            for (i, c) in combo.entries() {
                in_space = &in_space + &space[*i as usize].scale(c);
                in_divided = &in_divided + &divided[*i as usize].scale(c);
            }
            let q = in_divided.exact_div(g)?.ok_or_else(|| {
                Error::InternalInconsistency("kernel element not divisible".into())
            })?;
            next_space.push(in_space);
            next_divided.push(q);
        }
        space = next_space;
        divided = next_divided;
        if space.is_empty() {
            break;
        }
    }
    Ok(space)
}
