//! The Hankel analogue: minors of a matrix with entries x_{i+j-1}, their
//! initial complexes, class-group and canonical-class formulas, and the
//! Gorenstein classification.
//!
//! Polynomials in x_1..x_n are realized on a 1 x n grid, cell (1, j) playing
//! x_j; the fixed diagonal order then restricts to lex with x_1 > ... > x_n.
//! The minor ideal depends only on (n, t), not on the chosen matrix size,
//! and the suite checks that on the initial side.
//!
//! Out of scope here: the defining equations (quadratic Groebner bases) of
//! the Hankel blow-up and minor algebras, and positive-characteristic
//! coefficients; everything runs over the rationals.

use itertools::Itertools;
use serde::Serialize;

use crate::decomp::{search, Goal};
use crate::divisor::DivisorClassA;
use crate::error::{Error, Result};
use crate::gamma::gamma_shape;
use crate::grid::{Cell, Limits};
use crate::minor::{Minor, Shape};
use crate::poly::{GridMonomial, Polynomial};

/// n variables, minor size t; m = floor((n+1)/2) bounds t. The a x b
/// realization (a + b - 1 = n) defaults to a = m, which carries every minor
/// size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HankelConfig {
    n: usize,
    t: usize,
    m: usize,
    a: usize,
    b: usize,
}

impl HankelConfig {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        let m = n.div_ceil(2);
        Self::with_realization(n, t, m)
    }

    pub fn with_realization(n: usize, t: usize, a: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("need at least one variable"));
        }
        let m = n.div_ceil(2);
        if t == 0 || t > m {
            return Err(Error::invalid(format!(
                "minor size t={t} must satisfy 1 <= t <= floor((n+1)/2) = {m}"
            )));
        }
        if a == 0 || a > n {
            return Err(Error::invalid("matrix rows out of range"));
        }
        let b = n + 1 - a;
        if a.min(b) < t {
            return Err(Error::invalid(format!(
                "{a}x{b} realization has no {t}-minors"
            )));
        }
        Ok(HankelConfig { n, t, m, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> usize {
        self.a
    }

    pub fn cols(&self) -> usize {
        self.b
    }

    /// height of the i-minor ideal: n - 2i + 2.
    pub fn height(&self, i: usize) -> usize {
        self.n + 2 - 2 * i
    }

    fn var(j: usize) -> Cell {
        Cell::new(1, j as u16)
    }

    /// The product of all variables as a monomial.
    pub fn full_monomial(&self) -> GridMonomial {
        GridMonomial::from_cells((1..=self.n).map(Self::var))
    }
}

/// Determinant of a Hankel minor after the substitution x_{ij} = x_{i+j-1}.
pub fn hankel_expand(cfg: &HankelConfig, minor: &Minor, limits: &Limits) -> Result<Polynomial> {
    let s = minor.size();
    if s > limits.max_minor_size {
        return Err(Error::resource(
            "minor expansion size",
            limits.max_minor_size,
        ));
    }
    if *minor.rows().last().unwrap() as usize > cfg.a
        || *minor.cols().last().unwrap() as usize > cfg.b
    {
        return Err(Error::invalid(format!(
            "minor {minor} does not fit in the {}x{} Hankel matrix",
            cfg.a, cfg.b
        )));
    }
    let mut out = Polynomial::zero();
    for perm in (0..s).permutations(s) {
        let mut inversions = 0;
        for i in 0..s {
            for j in (i + 1)..s {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        let cells = (0..s).map(|i| {
            let var = minor.rows()[i] as usize + minor.cols()[perm[i]] as usize - 1;
            HankelConfig::var(var)
        });
        out.add_term(GridMonomial::from_cells(cells), crate::poly::rat(sign));
    }
    Ok(out)
}

/// All i-minors of the realization.
pub fn hankel_minors(cfg: &HankelConfig, i: usize) -> Vec<Minor> {
    let mut out = Vec::new();
    for rows in (1..=cfg.a as u16).combinations(i) {
        for cols in (1..=cfg.b as u16).combinations(i) {
            out.push(Minor::new(rows.clone(), cols).expect("ascending by construction"));
        }
    }
    out
}

/// Variable-index supports of the initial monomials of all i-minors.
pub fn initial_supports(cfg: &HankelConfig, i: usize, limits: &Limits) -> Result<Vec<Vec<u16>>> {
    let mut set = std::collections::BTreeSet::new();
    for minor in hankel_minors(cfg, i) {
        let (init, _) = hankel_expand(cfg, &minor, limits)?.initial_term()?;
        if !init.is_squarefree() {
            return Err(Error::InternalInconsistency(format!(
                "initial term of {minor} is not squarefree"
            )));
        }
        set.insert(init.exps().keys().map(|c| c.col).collect::<Vec<u16>>());
    }
    Ok(set.into_iter().collect())
}

/// Facets of the complex attached to the initial ideal of the i-minors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HankelFacetSet {
    pub n: usize,
    pub i: usize,
    /// Each facet a sorted list of variable indices.
    pub facets: Vec<Vec<u16>>,
}

pub fn hankel_facets(cfg: &HankelConfig, i: usize, limits: &Limits) -> Result<HankelFacetSet> {
    if cfg.n > limits.max_facet_cells {
        return Err(Error::resource(
            "facet enumeration variables",
            limits.max_facet_cells,
        ));
    }
    if i == 0 || i > cfg.m {
        return Err(Error::invalid("facet index out of range"));
    }
    let generators = initial_supports(cfg, i, limits)?;
    let n = cfg.n;
    let contains_generator = |mask: u32| -> bool {
        generators
            .iter()
            .any(|g| g.iter().all(|&v| mask >> (v - 1) & 1 == 1))
    };
    let mut facets = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if contains_generator(mask) {
            continue;
        }
        let maximal = (0..n).all(|v| mask >> v & 1 == 1 || contains_generator(mask | (1 << v)));
        if maximal {
            facets.push(
                (0..n)
                    .filter(|v| mask >> v & 1 == 1)
                    .map(|v| (v + 1) as u16)
                    .collect(),
            );
        }
    }
    facets.sort();
    Ok(HankelFacetSet { n, i, facets })
}

/// Purity: every facet has exactly n - height = 2i - 2 variables.
pub fn hankel_purity(cfg: &HankelConfig, i: usize, limits: &Limits) -> Result<bool> {
    let fs = hankel_facets(cfg, i, limits)?;
    let expected = 2 * i - 2;
    Ok(fs.facets.iter().all(|f| f.len() == expected))
}

/// rho_i of a monomial in x_1..x_n via the facet linear forms.
pub fn hankel_rho_facet(
    cfg: &HankelConfig,
    i: usize,
    mono: &GridMonomial,
    limits: &Limits,
) -> Result<i64> {
    let fs = hankel_facets(cfg, i, limits)?;
    Ok(fs
        .facets
        .iter()
        .map(|facet| {
            mono.exps()
                .iter()
                .filter(|(c, _)| !facet.contains(&c.col))
                .map(|(_, &e)| e as i64)
                .sum()
        })
        .min()
        .expect("at least one facet"))
}

/// True when the strictly increasing, >=2-spaced variable sequence is the
/// diagonal of some minor of the a x b realization.
pub fn diagonal_realizable(cfg: &HankelConfig, seq: &[u16]) -> bool {
    let len = seq.len();
    if len == 0 {
        return true;
    }
    if len > cfg.a.min(cfg.b) {
        return false;
    }
    for rows in (1..=cfg.a as u16).combinations(len) {
        let mut ok = true;
        let mut prev_col = 0u16;
        for (idx, &r) in rows.iter().enumerate() {
            let j = seq[idx];
            if j < r {
                ok = false;
                break;
            }
            let c = j + 1 - r;
            if c as usize > cfg.b || c <= prev_col {
                ok = false;
                break;
            }
            prev_col = c;
        }
        if ok {
            return true;
        }
    }
    false
}

/// rho_i by bounded search over products of Hankel minors with the
/// prescribed initial monomial.
pub fn hankel_rho_search(
    cfg: &HankelConfig,
    i: usize,
    mono: &GridMonomial,
    limits: &Limits,
) -> Result<i64> {
    if mono.x_degree() > limits.max_rho_search_degree {
        return Err(Error::resource(
            "rho search degree",
            limits.max_rho_search_degree,
        ));
    }
    let vars: Vec<u16> = mono.cell_multiset().iter().map(|c| c.col).collect();
    let out = search(
        &vars,
        |chain: &[u16], next: &u16| match chain.last() {
            Some(&last) if *next < last + 2 => false,
            _ => {
                let mut seq = chain.to_vec();
                seq.push(*next);
                diagonal_realizable(cfg, &seq)
            }
        },
        Goal::MaxGamma { i },
    );
    Ok(out.best.max(0))
}

/// Canonical class of the Hankel Rees algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HankelReesClass {
    /// t < m: coefficients -n+t+i on the free basis cl(P_1)..cl(P_t).
    Class(crate::divisor::DivisorClassR),
    /// t = m, n even: complete intersection, canonical class zero.
    CompleteIntersection,
    /// t = m, n odd: the minor ideal is principal; no class report.
    Principal,
}

/// The three routes for t < m: the closed form -n+t+i, the height form
/// cl(I_t R) + sum (1 - height I_i) cl(P_i), and 1 - gamma_i(DT) from the
/// distinguished shape.
pub fn canonical_class_rees_hankel_forms(n: usize, t: usize) -> Result<[Vec<i64>; 3]> {
    let cfg = HankelConfig::new(n, t)?;
    if t >= cfg.m {
        return Err(Error::AssumptionViolation(
            "the coefficient formula needs t < floor((n+1)/2)".into(),
        ));
    }
    let direct: Vec<i64> = (1..=t).map(|i| -(n as i64) + t as i64 + i as i64).collect();
    let height_form: Vec<i64> = (1..=t)
        .map(|i| (t - i + 1) as i64 + 1 - cfg.height(i) as i64)
        .collect();
    let d_shape = hankel_d_shape(n)?;
    let gamma_form: Vec<i64> = (1..=t)
        .map(|i| {
            let gamma_d = gamma_shape(i, &d_shape);
            1 - (gamma_d - (t as i64 + 1 - i as i64))
        })
        .collect();
    Ok([direct, height_form, gamma_form])
}

pub fn canonical_class_rees_hankel(n: usize, t: usize) -> Result<HankelReesClass> {
    let cfg = HankelConfig::new(n, t)?;
    if t == cfg.m {
        return Ok(if n.is_multiple_of(2) {
            HankelReesClass::CompleteIntersection
        } else {
            HankelReesClass::Principal
        });
    }
    let [direct, height_form, gamma_form] = canonical_class_rees_hankel_forms(n, t)?;
    if direct != height_form || direct != gamma_form {
        return Err(Error::Mismatch(format!(
            "Hankel canonical class forms disagree at (n,t)=({n},{t}): {direct:?} vs {height_form:?} vs {gamma_form:?}"
        )));
    }
    Ok(HankelReesClass::Class(crate::divisor::DivisorClassR {
        coeffs: direct,
    }))
}

/// Case analysis for the algebra of t-minors of a Hankel matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HankelAtCase {
    /// t = 1 or t = m: a polynomial ring.
    Polynomial,
    /// t = m-1 with n odd: the Grassmannian coordinate ring, factorial.
    Grassmann,
    /// The remaining range: class group Z with canonical class (n-3t) cl(q).
    Generic {
        class: DivisorClassA,
        gorenstein: bool,
    },
}

pub fn classify_at_hankel(n: usize, t: usize) -> Result<HankelAtCase> {
    let cfg = HankelConfig::new(n, t)?;
    let m = cfg.m;
    if t == 1 || t == m {
        return Ok(HankelAtCase::Polynomial);
    }
    if t == m - 1 && n % 2 == 1 {
        return Ok(HankelAtCase::Grassmann);
    }
    let q_mult = n as i64 - 3 * t as i64;
    Ok(HankelAtCase::Generic {
        class: DivisorClassA { q_mult },
        gorenstein: q_mult == 0,
    })
}

/// Canonical class in the generic case; the other cases have no rank-one
/// class report.
pub fn canonical_class_at_hankel(n: usize, t: usize) -> Result<DivisorClassA> {
    match classify_at_hankel(n, t)? {
        HankelAtCase::Generic { class, .. } => Ok(class),
        other => Err(Error::AssumptionViolation(format!(
            "(n,t)=({n},{t}) falls in the {other:?} case, no cl(q) multiple is reported"
        ))),
    }
}

/// Gorenstein across all cases: n = 3t, or the Grassmann case, or a
/// polynomial ring.
pub fn is_gorenstein_at_hankel(n: usize, t: usize) -> Result<bool> {
    Ok(match classify_at_hankel(n, t)? {
        HankelAtCase::Polynomial | HankelAtCase::Grassmann => true,
        HankelAtCase::Generic { gorenstein, .. } => gorenstein,
    })
}

/// Shape of the distinguished product: (m, m-1) for odd n, (m, m) for even.
pub fn hankel_d_shape(n: usize) -> Result<Shape> {
    if n < 2 {
        return Err(Error::invalid("the distinguished product needs n >= 2"));
    }
    let m = n.div_ceil(2);
    if n % 2 == 1 {
        Shape::new(vec![m, m - 1])
    } else {
        Shape::new(vec![m, m])
    }
}

/// Searches for products of Hankel minors with initial monomial
/// x_1 ... x_n and gamma_i = rho_i of that monomial for every i, and
/// confirms that at least one exists and that all of them have the
/// distinguished shape.
pub fn hankel_d_verify(n: usize, limits: &Limits) -> Result<bool> {
    let m = n.div_ceil(2);
    let cfg = HankelConfig::new(n, m)?;
    let full = cfg.full_monomial();
    let targets: Vec<i64> = (1..=m)
        .map(|i| hankel_rho_facet(&cfg, i, &full, limits))
        .collect::<Result<_>>()?;
    let vars: Vec<u16> = (1..=n as u16).collect();
    let out = search(
        &vars,
        |chain: &[u16], next: &u16| match chain.last() {
            Some(&last) if *next < last + 2 => false,
            _ => {
                let mut seq = chain.to_vec();
                seq.push(*next);
                diagonal_realizable(&cfg, &seq)
            }
        },
        Goal::MatchProfile { targets: &targets },
    );
    if out.matches.is_empty() {
        return Ok(false);
    }
    let expected = hankel_d_shape(n)?;
    Ok(out.matches.iter().all(|chains| {
        let mut parts: Vec<usize> = chains.iter().map(|c| c.len()).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Shape::new(parts).is_ok_and(|s| s == expected)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn lim() -> Limits {
        Limits::default()
    }

    fn xvar(j: usize) -> GridMonomial {
        GridMonomial::var(Cell::new(1, j as u16))
    }

    #[test]
    fn classic_2x2_hankel_minor() {
        let cfg = HankelConfig::new(3, 2).unwrap();
        let p = hankel_expand(&cfg, &"[1,2|1,2]".parse().unwrap(), &lim()).unwrap();
        // x1 x3 - x2^2
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&xvar(1).mul(&xvar(3))), rat(1));
        assert_eq!(p.coeff(&xvar(2).mul(&xvar(2))), rat(-1));
    }

    #[test]
    fn single_entry_minor() {
        let cfg = HankelConfig::new(5, 1).unwrap();
        let p = hankel_expand(&cfg, &"[1|3]".parse().unwrap(), &lim()).unwrap();
        assert_eq!(p, Polynomial::monomial(xvar(3), rat(1)));
    }

    #[test]
    fn three_minor_lead() {
        let cfg = HankelConfig::new(5, 3).unwrap();
        let p = hankel_expand(&cfg, &"[1,2,3|1,2,3]".parse().unwrap(), &lim()).unwrap();
        let (init, c) = p.initial_term().unwrap();
        assert_eq!(init, xvar(1).mul(&xvar(3)).mul(&xvar(5)));
        assert_eq!(c, rat(1));
    }

    #[test]
    fn initial_terms_are_diagonal_products() {
        // The lex order x1 > ... > xn is genuinely diagonal on Hankel
        // minors for every realization up to n = 6.
        for n in 2..=6usize {
            let m = n.div_ceil(2);
            for t in 1..=m {
                for a in 1..=n {
                    let Ok(cfg) = HankelConfig::with_realization(n, t, a) else {
                        continue;
                    };
                    for minor in hankel_minors(&cfg, t) {
                        let p = hankel_expand(&cfg, &minor, &lim()).unwrap();
                        let (init, c) = p.initial_term().unwrap();
                        let diag = GridMonomial::from_cells(
                            minor
                                .rows()
                                .iter()
                                .zip(minor.cols())
                                .map(|(&r, &c)| Cell::new(1, r + c - 1)),
                        );
                        assert_eq!(init, diag, "minor {minor} in {a}x{}", cfg.b);
                        assert_eq!(c, rat(1));
                    }
                }
            }
        }
    }

    #[test]
    fn facets_for_three_variables() {
        let cfg = HankelConfig::new(3, 2).unwrap();
        let fs = hankel_facets(&cfg, 2, &lim()).unwrap();
        assert_eq!(fs.facets, vec![vec![1, 2], vec![2, 3]]);
        assert!(hankel_purity(&cfg, 2, &lim()).unwrap());
    }

    #[test]
    fn facets_at_one_are_empty() {
        let cfg = HankelConfig::new(5, 1).unwrap();
        let fs = hankel_facets(&cfg, 1, &lim()).unwrap();
        assert_eq!(fs.facets, vec![Vec::<u16>::new()]);
    }

    #[test]
    fn purity_small_sweep() {
        for n in 2..=6usize {
            let m = n.div_ceil(2);
            for i in 1..=m {
                let cfg = HankelConfig::new(n, m).unwrap();
                assert!(hankel_purity(&cfg, i, &lim()).unwrap(), "n={n}, i={i}");
            }
        }
    }

    #[test]
    fn rho_of_full_product_is_the_height() {
        for n in 2..=6usize {
            let m = n.div_ceil(2);
            let cfg = HankelConfig::new(n, m).unwrap();
            let full = cfg.full_monomial();
            for i in 1..=m {
                assert_eq!(
                    hankel_rho_facet(&cfg, i, &full, &lim()).unwrap(),
                    (n + 2 - 2 * i) as i64,
                    "n={n} i={i}"
                );
            }
        }
    }

    #[test]
    fn rees_class_examples() {
        match canonical_class_rees_hankel(7, 2).unwrap() {
            HankelReesClass::Class(c) => assert_eq!(c.coeffs, vec![-4, -3]),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            canonical_class_rees_hankel(6, 3).unwrap(),
            HankelReesClass::CompleteIntersection
        );
        assert_eq!(
            canonical_class_rees_hankel(7, 4).unwrap(),
            HankelReesClass::Principal
        );
    }

    #[test]
    fn at_classification_examples() {
        match classify_at_hankel(8, 2).unwrap() {
            HankelAtCase::Generic { class, gorenstein } => {
                assert_eq!(class.q_mult, 2);
                assert!(!gorenstein);
            }
            other => panic!("unexpected {other:?}"),
        }
        match classify_at_hankel(9, 3).unwrap() {
            HankelAtCase::Generic { class, gorenstein } => {
                assert_eq!(class.q_mult, 0);
                assert!(gorenstein);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(classify_at_hankel(7, 3).unwrap(), HankelAtCase::Grassmann);
        assert!(is_gorenstein_at_hankel(7, 3).unwrap());
        assert_eq!(classify_at_hankel(9, 1).unwrap(), HankelAtCase::Polynomial);
        assert_eq!(classify_at_hankel(7, 4).unwrap(), HankelAtCase::Polynomial);
        assert!(canonical_class_at_hankel(7, 3).is_err());
    }

    #[test]
    fn d_shapes() {
        assert_eq!(hankel_d_shape(5).unwrap(), Shape::new(vec![3, 2]).unwrap());
        assert_eq!(hankel_d_shape(6).unwrap(), Shape::new(vec![3, 3]).unwrap());
        assert_eq!(hankel_d_shape(3).unwrap(), Shape::new(vec![2, 1]).unwrap());
    }

    #[test]
    fn d_verification_small() {
        for n in 2..=6usize {
            assert!(hankel_d_verify(n, &lim()).unwrap(), "n={n}");
        }
    }

    #[test]
    fn size_independence_small() {
        for n in 2..=6usize {
            let m = n.div_ceil(2);
            for t in 1..=m {
                let mut reference: Option<Vec<Vec<u16>>> = None;
                for a in 1..=n {
                    let Ok(cfg) = HankelConfig::with_realization(n, t, a) else {
                        continue;
                    };
                    let gens = initial_supports(&cfg, t, &lim()).unwrap();
                    match &reference {
                        None => reference = Some(gens),
                        Some(r) => assert_eq!(r, &gens, "n={n} t={t} a={a}"),
                    }
                }
            }
        }
    }
}
