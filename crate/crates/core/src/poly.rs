//! Exact multivariate polynomial arithmetic over the rationals in the grid
//! variables x_ij and the auxiliary variable T.
//!
//! The term order is the diagonal order fixed for the whole toolkit: pure
//! lexicographic with the variables ordered row-major, x11 > x12 > ... > xmn,
//! and T smaller than every x variable. Under this order the initial term of
//! any minor is its main-diagonal product.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::{Cell, Limits};
use crate::minor::Minor;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// A monomial: exponents over grid cells plus a power of T. Zero exponents
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GridMonomial {
    exps: BTreeMap<Cell, u32>,
    t_pow: u32,
}

impl GridMonomial {
    pub fn one() -> Self {
        GridMonomial::default()
    }

    pub fn var(cell: Cell) -> Self {
        let mut exps = BTreeMap::new();
        exps.insert(cell, 1);
        GridMonomial { exps, t_pow: 0 }
    }

    pub fn t_power(k: u32) -> Self {
        GridMonomial {
            exps: BTreeMap::new(),
            t_pow: k,
        }
    }

    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        let mut exps = BTreeMap::new();
        for c in cells {
            *exps.entry(c).or_insert(0) += 1;
        }
        GridMonomial { exps, t_pow: 0 }
    }

    pub fn from_exps(pairs: Vec<(Cell, u32)>, t_pow: u32) -> Self {
        let mut exps = BTreeMap::new();
        for (c, e) in pairs {
            if e > 0 {
                *exps.entry(c).or_insert(0) += e;
            }
        }
        GridMonomial { exps, t_pow }
    }

    pub fn exps(&self) -> &BTreeMap<Cell, u32> {
        &self.exps
    }

    pub fn exp(&self, cell: &Cell) -> u32 {
        self.exps.get(cell).copied().unwrap_or(0)
    }

    pub fn t_pow(&self) -> u32 {
        self.t_pow
    }

    pub fn x_degree(&self) -> usize {
        self.exps.values().map(|&e| e as usize).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.values().all(|&e| e == 1)
    }

    /// The cell multiset, with repetition.
    pub fn cell_multiset(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.x_degree());
        for (&c, &e) in &self.exps {
            for _ in 0..e {
                out.push(c);
            }
        }
        out
    }

    pub fn x_part(&self) -> GridMonomial {
        GridMonomial {
            exps: self.exps.clone(),
            t_pow: 0,
        }
    }

    pub fn with_t_pow(&self, k: u32) -> GridMonomial {
        GridMonomial {
            exps: self.exps.clone(),
            t_pow: k,
        }
    }

    pub fn mul(&self, other: &GridMonomial) -> GridMonomial {
        let mut exps = self.exps.clone();
        for (&c, &e) in &other.exps {
            *exps.entry(c).or_insert(0) += e;
        }
        GridMonomial {
            exps,
            t_pow: self.t_pow + other.t_pow,
        }
    }

    pub fn divides(&self, other: &GridMonomial) -> bool {
        self.t_pow <= other.t_pow && self.exps.iter().all(|(c, &e)| other.exp(c) >= e)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_of(&self, other: &GridMonomial) -> GridMonomial {
        debug_assert!(self.divides(other));
        let mut exps = BTreeMap::new();
        for (&c, &e) in &other.exps {
            let q = e - self.exp(&c);
            if q > 0 {
                exps.insert(c, q);
            }
        }
        GridMonomial {
            exps,
            t_pow: other.t_pow - self.t_pow,
        }
    }
}

/// The diagonal order. Greater in this `Ord` means greater in the term
/// order. Cells iterate row-major, so the first cell where the exponents
/// differ is the most significant variable; T is compared last.
impl Ord for GridMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.exps.iter();
        let mut b = other.exps.iter();
        let (mut na, mut nb) = (a.next(), b.next());
        loop {
            match (na, nb) {
                (Some((ca, ea)), Some((cb, eb))) => match ca.cmp(cb) {
                    // The earlier cell has a positive exponent on one side and
                    // zero on the other: that side is larger.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        na = a.next();
                        nb = b.next();
                    }
                },
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return self.t_pow.cmp(&other.t_pow),
            }
        }
    }
}

impl PartialOrd for GridMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GridMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() && self.t_pow == 0 {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self
            .exps
            .iter()
            .map(|(c, &e)| {
                if e == 1 {
                    format!("x{}{}", c.row, c.col)
                } else {
                    format!("x{}{}^{}", c.row, c.col, e)
                }
            })
            .collect();
        match self.t_pow {
            0 => {}
            1 => parts.push("T".into()),
            k => parts.push(format!("T^{k}")),
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A polynomial: finitely many monomials with nonzero rational coefficients.
/// The term map is keyed by the diagonal order, so the last entry is the
/// initial term.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<GridMonomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(GridMonomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn monomial(m: GridMonomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn var(cell: Cell) -> Self {
        Polynomial::monomial(GridMonomial::var(cell), rat(1))
    }

    pub fn t_var() -> Self {
        Polynomial::monomial(GridMonomial::t_power(1), rat(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending diagonal order.
    pub fn terms(&self) -> impl Iterator<Item = (&GridMonomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending diagonal order (initial term first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&GridMonomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &GridMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: GridMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// The greatest term under the diagonal order.
    pub fn initial_term(&self) -> Result<(GridMonomial, Rational)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &GridMonomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// x-degree if x-homogeneous (ignoring T), else None. The zero
    /// polynomial is homogeneous of every degree; report 0.
    pub fn x_homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.x_degree());
        let first = match it.next() {
            None => return Some(0),
            Some(d) => d,
        };
        it.all(|d| d == first).then_some(first)
    }

    /// Split into T-layers: result[j] is the coefficient of T^j, a
    /// polynomial with t_pow 0 everywhere.
    pub fn t_layers(&self) -> Vec<Polynomial> {
        let max = self.terms.keys().map(|m| m.t_pow()).max().unwrap_or(0) as usize;
        let mut layers = vec![Polynomial::zero(); max + 1];
        for (m, c) in &self.terms {
            layers[m.t_pow() as usize].add_term(m.x_part(), c.clone());
        }
        layers
    }

    /// Split into x-homogeneous components (T-degree untouched), keyed by
    /// x-degree.
    pub fn x_components(&self) -> BTreeMap<usize, Polynomial> {
        let mut out: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.x_degree())
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Division with remainder by a single nonzero divisor: self = q*g + r
    /// where no term of r is divisible by the initial monomial of g. For a
    /// principal ideal this decides membership: self is a multiple of g
    /// exactly when r = 0.
    pub fn div_rem(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let (gin, gc) = g.initial_term()?;
        let mut rest = self.clone();
        let mut quo = Polynomial::zero();
        let mut rem = Polynomial::zero();
        while let Some((m, c)) = rest
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            if gin.divides(&m) {
                let factor = gin.quotient_of(&m);
                let coeff = c / &gc;
                // rest -= coeff * factor * g
                for (gm, gcoef) in &g.terms {
                    rest.add_term(gm.mul(&factor), -(gcoef * &coeff));
                }
                quo.add_term(factor, coeff);
            } else {
                rest.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        Ok((quo, rem))
    }

    /// Exact quotient self / g, or None when g does not divide self.
    pub fn exact_div(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.div_rem(g)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono_is_one = m == &GridMonomial::one();
            if mag.is_one() && !mono_is_one {
                write!(f, "{m}")?;
            } else if mono_is_one {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Leibniz expansion of a minor determinant: size! signed terms, each the
/// product of one cell per row and column.
pub fn expand_minor(minor: &Minor, limits: &Limits) -> Result<Polynomial> {
    use itertools::Itertools;
    let s = minor.size();
    if s > limits.max_minor_size {
        return Err(Error::resource(
            "minor expansion size",
            limits.max_minor_size,
        ));
    }
    let mut out = Polynomial::zero();
    for perm in (0..s).permutations(s) {
        let sign = permutation_sign(&perm);
        let cells = (0..s).map(|i| Cell::new(minor.rows()[i], minor.cols()[perm[i]]));
        out.add_term(GridMonomial::from_cells(cells), rat(sign));
    }
    Ok(out)
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Expansion of a product of minors.
pub fn expand_product(p: &crate::minor::ProductOfMinors, limits: &Limits) -> Result<Polynomial> {
    let mut out = Polynomial::one();
    for m in p.factors() {
        out = &out * &expand_minor(m, limits)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// JSON form: {"terms":[{"coeff":"3/2","exps":{"1,1":2,"2,3":1},"T":1}, ...]}
// with terms in descending diagonal order.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    exps: BTreeMap<String, u32>,
    #[serde(rename = "T")]
    t: u32,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms_desc()
            .map(|(m, c)| TermRepr {
                coeff: c.to_string(),
                exps: m
                    .exps()
                    .iter()
                    .map(|(cell, &e)| (cell.to_string(), e))
                    .collect(),
                t: m.t_pow(),
            })
            .collect();
        PolyRepr { terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(de)?;
        let mut out = Polynomial::zero();
        for term in repr.terms {
            let coeff: Rational = term
                .coeff
                .parse()
                .map_err(|e| D::Error::custom(format!("bad rational {:?}: {e}", term.coeff)))?;
            let mut cells = Vec::new();
            for (key, e) in term.exps {
                let (r, c) = key
                    .split_once(',')
                    .ok_or_else(|| D::Error::custom(format!("bad cell key {key:?}")))?;
                let row: u16 = r.trim().parse().map_err(D::Error::custom)?;
                let col: u16 = c.trim().parse().map_err(D::Error::custom)?;
                if row == 0 || col == 0 {
                    return Err(D::Error::custom("cell indices are 1-based"));
                }
                cells.push((Cell::new(row, col), e));
            }
            out.add_term(GridMonomial::from_exps(cells, term.t), coeff);
        }
        Ok(out)
    }
}

/// All monomials of x-degree d on the grid of `cfg`.
pub fn monomials_of_degree(cfg: &crate::grid::MatrixConfig, d: usize) -> Vec<GridMonomial> {
    use itertools::Itertools;
    cfg.cells()
        .iter()
        .combinations_with_replacement(d)
        .map(|combo| GridMonomial::from_cells(combo.into_iter().copied()))
        .collect()
}

/// Parse a monomial in the CLI syntax "1,1;2,2" (cells, ';'-separated, each
/// optionally with "^e"). The empty string is the unit monomial.
pub fn parse_monomial(s: &str) -> Result<GridMonomial> {
    let s = s.trim();
    if s.is_empty() || s == "1" {
        return Ok(GridMonomial::one());
    }
    let mut pairs = Vec::new();
    for part in s.split(';') {
        let (cell_str, exp) = match part.split_once('^') {
            Some((c, e)) => (
                c,
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::invalid(format!("bad exponent in {part:?}")))?,
            ),
            None => (part, 1),
        };
        let (r, c) = cell_str
            .split_once(',')
            .ok_or_else(|| Error::invalid(format!("bad cell {cell_str:?}, expected r,c")))?;
        let row: u16 = r
            .trim()
            .parse()
            .map_err(|_| Error::invalid("bad row index"))?;
        let col: u16 = c
            .trim()
            .parse()
            .map_err(|_| Error::invalid("bad column index"))?;
        if row == 0 || col == 0 {
            return Err(Error::invalid("cell indices are 1-based"));
        }
        pairs.push((Cell::new(row, col), exp));
    }
    Ok(GridMonomial::from_exps(pairs, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::MatrixConfig;

    fn minor(s: &str) -> Minor {
        s.parse().unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    fn mono(cells: &[(u16, u16)]) -> GridMonomial {
        GridMonomial::from_cells(cells.iter().map(|&(r, c)| Cell::new(r, c)))
    }

    #[test]
    fn expand_2x2() {
        let p = expand_minor(&minor("[1,2|1,2]"), &lim()).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&mono(&[(1, 1), (2, 2)])), rat(1));
        assert_eq!(p.coeff(&mono(&[(1, 2), (2, 1)])), rat(-1));
    }

    #[test]
    fn expand_single_entry() {
        let p = expand_minor(&minor("[1|3]"), &lim()).unwrap();
        assert_eq!(p, Polynomial::var(Cell::new(1, 3)));
    }

    #[test]
    fn expand_3x3() {
        let p = expand_minor(&minor("[1,2,3|1,2,3]"), &lim()).unwrap();
        assert_eq!(p.num_terms(), 6);
        assert_eq!(p.coeff(&mono(&[(1, 1), (2, 2), (3, 3)])), rat(1));
        assert_eq!(p.coeff(&mono(&[(1, 3), (2, 2), (3, 1)])), rat(-1));
    }

    #[test]
    fn expansion_size_capped() {
        let m = Minor::new((1..=6).collect(), (1..=6).collect()).unwrap();
        assert!(matches!(
            expand_minor(&m, &lim()),
            Err(Error::ResourceBound { .. })
        ));
    }

    #[test]
    fn initial_term_examples() {
        let p = expand_minor(&minor("[1,2|1,2]"), &lim()).unwrap();
        let (m, c) = p.initial_term().unwrap();
        assert_eq!(m, mono(&[(1, 1), (2, 2)]));
        assert_eq!(c, rat(1));

        let mut f = Polynomial::zero();
        f.add_term(mono(&[(1, 2), (2, 1)]), rat(1));
        f.add_term(mono(&[(1, 1), (2, 2)]), rat(2));
        let (m, c) = f.initial_term().unwrap();
        assert_eq!(m, mono(&[(1, 1), (2, 2)]));
        assert_eq!(c, rat(2));

        let p = expand_minor(&minor("[1,2,3|2,3,4]"), &lim()).unwrap();
        let (m, c) = p.initial_term().unwrap();
        assert_eq!(m, mono(&[(1, 2), (2, 3), (3, 4)]));
        assert_eq!(c, rat(1));

        assert!(matches!(
            Polynomial::zero().initial_term(),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn diagonal_order_on_all_small_minors() {
        // The fixed order is genuinely diagonal: the initial term of every
        // minor on grids up to 4x4 is the main-diagonal product, coefficient 1.
        for m in 1..=4usize {
            for n in 1..=4usize {
                let cfg = MatrixConfig::new(m, n, 1).unwrap();
                for d in Minor::all(&cfg) {
                    let p = expand_minor(&d, &lim()).unwrap();
                    let (init, c) = p.initial_term().unwrap();
                    assert_eq!(init, GridMonomial::from_cells(d.diagonal()), "minor {d}");
                    assert_eq!(c, rat(1));
                }
            }
        }
    }

    #[test]
    fn t_smaller_than_every_x() {
        let t5 = GridMonomial::t_power(5);
        let x = GridMonomial::var(Cell::new(3, 3));
        assert!(x > t5);
        assert!(t5 > GridMonomial::one());
    }

    #[test]
    fn layers_and_components() {
        // F = x11 + det * T
        let det = expand_minor(&minor("[1,2|1,2]"), &lim()).unwrap();
        let f = &Polynomial::var(Cell::new(1, 1)) + &(&det * &Polynomial::t_var());
        let layers = f.t_layers();
        assert_eq!(layers.len(), 2);
        assert_eq!(layers[0], Polynomial::var(Cell::new(1, 1)));
        assert_eq!(layers[1], det);
        assert_eq!(layers[0].x_homogeneous_degree(), Some(1));
        assert_eq!(f.x_homogeneous_degree(), None);
    }

    #[test]
    fn division_exact_and_with_remainder() {
        let d = expand_minor(&minor("[1,2|1,2]"), &lim()).unwrap();
        let x = Polynomial::var(Cell::new(1, 1));
        let prod = &d * &x;
        let q = prod.exact_div(&d).unwrap().unwrap();
        assert_eq!(q, x);
        assert!(x.exact_div(&d).unwrap().is_none());

        let (q, r) = prod.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, prod);
    }

    #[test]
    fn json_roundtrip() {
        let d = expand_minor(&minor("[1,2|1,2]"), &lim()).unwrap();
        let f = &d.scale(&(rat(3) / rat(2))) * &Polynomial::t_var();
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"3/2\""));
        assert!(json.contains("\"T\":1"));
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn parse_monomial_syntax() {
        let m = parse_monomial("1,1;2,2").unwrap();
        assert_eq!(m, mono(&[(1, 1), (2, 2)]));
        let m = parse_monomial("1,1^2;2,3").unwrap();
        assert_eq!(m.exp(&Cell::new(1, 1)), 2);
        assert_eq!(m.x_degree(), 3);
        assert_eq!(parse_monomial("").unwrap(), GridMonomial::one());
        assert!(parse_monomial("0,1").is_err());
        assert!(parse_monomial("a,b").is_err());
    }

    proptest::proptest! {
        #[test]
        fn add_then_subtract_is_identity(seed in 0u64..500) {
            let (f, g) = random_pair(seed);
            let back = &(&f + &g) - &g;
            proptest::prop_assert_eq!(back, f);
        }

        #[test]
        fn initial_term_is_multiplicative(seed in 0u64..500) {
            let (f, g) = random_pair(seed);
            if !f.is_zero() && !g.is_zero() {
                let (mf, cf) = f.initial_term().unwrap();
                let (mg, cg) = g.initial_term().unwrap();
                let (mfg, cfg) = (&f * &g).initial_term().unwrap();
                proptest::prop_assert_eq!(mfg, mf.mul(&mg));
                proptest::prop_assert_eq!(cfg, cf * cg);
            }
        }
    }

    /// Small deterministic pseudo-random polynomials on a 3x3 grid.
    fn random_pair(seed: u64) -> (Polynomial, Polynomial) {
        let mut state = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut make = |terms: u64| {
            let mut p = Polynomial::zero();
            for _ in 0..terms {
                let r = (next() % 3 + 1) as u16;
                let c = (next() % 3 + 1) as u16;
                let e = (next() % 2 + 1) as u32;
                let t = (next() % 2) as u32;
                let coeff = rat((next() % 7) as i64 - 3);
                p.add_term(
                    GridMonomial::from_exps(vec![(Cell::new(r, c), e)], t),
                    coeff,
                );
            }
            p
        };
        (make(3), make(3))
    }
}
