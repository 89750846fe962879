//! Membership oracles for symbolic and ordinary powers of the minor ideals,
//! the Rees-type algebras inside S[T], their initial counterparts, and the
//! degreewise verifier for the primary decomposition of ordinary powers.

use itertools::Itertools;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gamma::{gamma_product, gamma_st, GammaValue};
use crate::grid::{Limits, MatrixConfig};
use crate::linalg::Subspace;
use crate::minor::Minor;
use crate::poly::{expand_minor, expand_product, GridMonomial, Polynomial};
use crate::rho::{rho_facet, rho_st};
use crate::straightening::{enumerate_standard, standard_rep, StandardFilter, StandardRep};

/// A membership verdict together with the valuation data that decided it.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub verdict: bool,
    /// The gamma or rho values against their thresholds.
    pub witness: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_rep: Option<StandardRep>,
}

fn gamma_values_of_rep(rep: &StandardRep, i: usize) -> GammaValue {
    rep.entries()
        .map(|(_, p)| GammaValue::Finite(gamma_product(i, p)))
        .fold(GammaValue::Infinity, GammaValue::min)
}

/// f lies in the k-th symbolic power of the t-minor ideal iff
/// gamma_t(f) >= k.
pub fn in_symbolic_power(
    cfg: &MatrixConfig,
    f: &Polynomial,
    k: usize,
    limits: &Limits,
) -> Result<MembershipReport> {
    if f.x_homogeneous_degree().is_none() {
        return Err(Error::invalid(
            "membership oracles expect homogeneous input",
        ));
    }
    let rep = standard_rep(cfg, f, limits)?;
    let t = cfg.t();
    let value = gamma_values_of_rep(&rep, t);
    Ok(MembershipReport {
        verdict: value.at_least(k as i64),
        witness: json!({ format!("gamma_{t}"): value, "threshold": k }),
        standard_rep: Some(rep),
    })
}

/// f lies in the k-th ordinary power iff gamma_i(f) >= k(t+1-i) for every
/// i = 1..t.
pub fn in_ordinary_power(
    cfg: &MatrixConfig,
    f: &Polynomial,
    k: usize,
    limits: &Limits,
) -> Result<MembershipReport> {
    if f.x_homogeneous_degree().is_none() {
        return Err(Error::invalid(
            "membership oracles expect homogeneous input",
        ));
    }
    let rep = standard_rep(cfg, f, limits)?;
    let t = cfg.t();
    let mut verdict = true;
    let mut witness = serde_json::Map::new();
    for i in 1..=t {
        let value = gamma_values_of_rep(&rep, i);
        let threshold = (k * (t + 1 - i)) as i64;
        if !value.at_least(threshold) {
            verdict = false;
        }
        witness.insert(
            format!("gamma_{i}"),
            json!({ "value": value, "threshold": threshold }),
        );
    }
    Ok(MembershipReport {
        verdict,
        witness: witness.into(),
        standard_rep: Some(rep),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerKind {
    Symbolic,
    Ordinary,
}

/// Initial-ideal membership of a monomial: the rho thresholds matching the
/// chosen power.
pub fn in_initial_power(
    cfg: &MatrixConfig,
    mono: &GridMonomial,
    k: usize,
    kind: PowerKind,
    limits: &Limits,
) -> Result<bool> {
    let t = cfg.t();
    match kind {
        PowerKind::Symbolic => Ok(rho_facet(cfg.m(), cfg.n(), t, mono, limits)? >= k as i64),
        PowerKind::Ordinary => {
            for i in 1..=t {
                if rho_facet(cfg.m(), cfg.n(), i, mono, limits)? < (k * (t + 1 - i)) as i64 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// F lies in the Rees algebra (as a subring of S[T]) iff gamma_i(F) >= 0
/// for i = 1..t.
pub fn in_rees(cfg: &MatrixConfig, f: &Polynomial, limits: &Limits) -> Result<MembershipReport> {
    let mut verdict = true;
    let mut witness = serde_json::Map::new();
    for i in 1..=cfg.t() {
        let value = gamma_st(cfg, i, f, limits)?;
        if !value.at_least(0) {
            verdict = false;
        }
        witness.insert(
            format!("gamma_{i}"),
            json!({ "value": value, "threshold": 0 }),
        );
    }
    Ok(MembershipReport {
        verdict,
        witness: witness.into(),
        standard_rep: None,
    })
}

/// Membership in the Veronese-type ring V_t: every term has x-degree equal
/// to t times its T-degree.
pub fn in_vt(cfg: &MatrixConfig, f: &Polynomial) -> MembershipReport {
    let t = cfg.t();
    let mut bad = Vec::new();
    for (m, _) in f.terms() {
        if m.x_degree() != t * (m.t_pow() as usize) {
            bad.push(m.to_string());
        }
    }
    MembershipReport {
        verdict: bad.is_empty(),
        witness: json!({ "unbalanced_terms": bad, "t": t }),
        standard_rep: None,
    }
}

/// The assumption-free characterization of membership in the algebra
/// generated by the t-minors: F in V_t with gamma_2(F) >= 0 (the higher
/// gamma conditions follow; for t = 1 the V_t condition alone decides).
pub fn at_membership_unchecked(
    cfg: &MatrixConfig,
    f: &Polynomial,
    limits: &Limits,
) -> Result<bool> {
    if !in_vt(cfg, f).verdict {
        return Ok(false);
    }
    if cfg.t() == 1 {
        return Ok(true);
    }
    Ok(gamma_st(cfg, 2, f, limits)?.at_least(0))
}

/// Membership in the algebra of t-minors. Requires the configuration to
/// satisfy the A_t assumption.
pub fn in_at(cfg: &MatrixConfig, f: &Polynomial, limits: &Limits) -> Result<MembershipReport> {
    cfg.require_at()?;
    let vt = in_vt(cfg, f);
    if !vt.verdict {
        return Ok(MembershipReport {
            verdict: false,
            witness: json!({ "in_vt": false, "detail": vt.witness }),
            standard_rep: None,
        });
    }
    let g2 = gamma_st(cfg, 2, f, limits)?;
    Ok(MembershipReport {
        verdict: g2.at_least(0),
        witness: json!({ "in_vt": true, "gamma_2": g2, "threshold": 0 }),
        standard_rep: None,
    })
}

/// Initial-algebra membership for monomials of S[T]: rho_i(N) >= 0 for
/// i = 1..t.
pub fn in_initial_rees(cfg: &MatrixConfig, mono: &GridMonomial, limits: &Limits) -> Result<bool> {
    for i in 1..=cfg.t() {
        if rho_st(cfg, i, mono, limits)? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Initial-algebra membership for the algebra of minors: rho_1(N) = 0 and
/// rho_2(N) >= 0 (for t = 1 the balance condition alone).
pub fn in_initial_at(cfg: &MatrixConfig, mono: &GridMonomial, limits: &Limits) -> Result<bool> {
    if rho_st(cfg, 1, mono, limits)? != 0 {
        return Ok(false);
    }
    if cfg.t() == 1 {
        return Ok(true);
    }
    Ok(rho_st(cfg, 2, mono, limits)? >= 0)
}

/// Polynomial versions (initial algebras are monomial spaces, so membership
/// is termwise).
pub fn in_initial_rees_poly(cfg: &MatrixConfig, f: &Polynomial, limits: &Limits) -> Result<bool> {
    for (m, _) in f.terms() {
        if !in_initial_rees(cfg, m, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn in_initial_at_poly(cfg: &MatrixConfig, f: &Polynomial, limits: &Limits) -> Result<bool> {
    for (m, _) in f.terms() {
        if !in_initial_at(cfg, m, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The shape-count inequality behind the reduction of the A_t membership to
/// gamma_2 alone: given factor counts a_1..a_m with sum(i * a_i) = k*t,
/// checks sum_{i>=j} a_i (i+1-j) >= k(t+1-j) for every j = 3..t.
///
/// Whenever sum(a_i) <= k this must come out true; the suite sweeps that
/// implication exhaustively.
pub fn gaa_shape_implication(m: usize, t: usize, k: usize, counts: &[usize]) -> Result<bool> {
    if counts.len() != m {
        return Err(Error::invalid("need one count per factor size 1..m"));
    }
    let weighted: usize = counts.iter().enumerate().map(|(i, a)| (i + 1) * a).sum();
    if weighted != k * t {
        return Err(Error::invalid(format!(
            "counts have weighted sum {weighted}, expected k*t = {}",
            k * t
        )));
    }
    for j in 3..=t {
        let lhs: i64 = counts
            .iter()
            .enumerate()
            .map(|(idx, &a)| {
                let i = idx + 1;
                if i >= j {
                    (a as i64) * ((i + 1 - j) as i64)
                } else {
                    0
                }
            })
            .sum();
        if lhs < (k * (t + 1 - j)) as i64 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Comparison of one homogeneous degree of the ordinary power against the
/// gamma-cut space.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeComparison {
    pub degree: usize,
    pub generator_dim: usize,
    pub gamma_count: usize,
    pub generators_contained: bool,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IrredundancyWitness {
    pub dropped_component: usize,
    pub witness_degree: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimaryDecompositionReport {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub dmax: usize,
    pub degrees: Vec<DegreeComparison>,
    pub irredundancy_threshold: Option<usize>,
    pub irredundancy: Vec<IrredundancyWitness>,
    pub pass: bool,
}

/// Standard monomials of degree d passing all gamma thresholds
/// gamma_i >= k(t+1-i), i = 1..t; `skip` drops one component.
fn gamma_cut_standards(
    cfg: &MatrixConfig,
    d: usize,
    k: usize,
    skip: Option<usize>,
    limits: &Limits,
) -> Result<Vec<crate::minor::ProductOfMinors>> {
    let t = cfg.t();
    let all = enumerate_standard(cfg, d, &StandardFilter::All, limits)?;
    Ok(all
        .into_iter()
        .filter(|p| {
            (1..=t).all(|i| {
                if skip == Some(i) {
                    return true;
                }
                gamma_product(i, p) >= (k * (t + 1 - i)) as i64
            })
        })
        .collect())
}

/// Degreewise check that the ordinary power equals the intersection of the
/// symbolic powers prescribed by its primary decomposition, with
/// irredundancy witnesses when k clears the stated bound.
pub fn verify_primary_decomposition(
    cfg: &MatrixConfig,
    k: usize,
    dmax: usize,
    limits: &Limits,
) -> Result<PrimaryDecompositionReport> {
    cfg.require_rees()?;
    if dmax > limits.max_straighten_degree {
        return Err(Error::resource(
            "primary decomposition degree",
            limits.max_straighten_degree,
        ));
    }
    let t = cfg.t();
    let t_minors: Vec<Minor> = Minor::all(cfg)
        .into_iter()
        .filter(|m| m.size() == t)
        .collect();
    let minor_polys: Vec<Polynomial> = t_minors
        .iter()
        .map(|m| expand_minor(m, limits))
        .collect::<Result<_>>()?;

    let mut degrees = Vec::new();
    let mut pass = true;
    for d in 0..=dmax {
        let gamma_side = gamma_cut_standards(cfg, d, k, None, limits)?;
        let gamma_count = gamma_side.len();

        // Definitional spanning set: products of k t-minors times monomials.
        let mut generators: Vec<Polynomial> = Vec::new();
        if d >= k * t {
            let monomials = crate::poly::monomials_of_degree(cfg, d - k * t);
            for combo in minor_polys.iter().combinations_with_replacement(k) {
                let mut prod = Polynomial::one();
                for f in combo {
                    prod = &prod * f;
                }
                for mono in &monomials {
                    generators.push(prod.mul_monomial(mono));
                }
            }
        }
        let generator_space = Subspace::from_polys(&generators, limits)?;
        let generator_dim = generator_space.dim();

        let gamma_polys: Vec<Polynomial> = gamma_side
            .iter()
            .map(|p| expand_product(p, limits))
            .collect::<Result<_>>()?;
        let gamma_space = Subspace::from_polys(&gamma_polys, limits)?;
        if gamma_space.dim() != gamma_count {
            return Err(Error::InternalInconsistency(
                "standard monomials of the gamma cut are dependent".into(),
            ));
        }
        let generators_contained = generators.iter().all(|g| gamma_space.contains(g));
        let equal = generators_contained && generator_dim == gamma_count;
        if !equal {
            pass = false;
        }
        degrees.push(DegreeComparison {
            degree: d,
            generator_dim,
            gamma_count,
            generators_contained,
            equal,
        });
    }

    // Irredundancy: above the stated bound, dropping any component must
    // strictly enlarge the intersection in some degree.
    let v = cfg.min_dim();
    let threshold = (v - 1).div_ceil(v - t);
    let mut irredundancy = Vec::new();
    if t >= 2 && k >= threshold {
        for dropped in 1..=t {
            let mut witness_degree = None;
            for d in 0..=dmax {
                let full = gamma_cut_standards(cfg, d, k, None, limits)?.len();
                let without = gamma_cut_standards(cfg, d, k, Some(dropped), limits)?.len();
                if without > full {
                    witness_degree = Some(d);
                    break;
                }
            }
            if witness_degree.is_none() {
                pass = false;
            }
            irredundancy.push(IrredundancyWitness {
                dropped_component: dropped,
                witness_degree,
            });
        }
    }

    Ok(PrimaryDecompositionReport {
        m: cfg.m(),
        n: cfg.n(),
        t,
        k,
        dmax,
        degrees,
        irredundancy_threshold: (t >= 2).then_some(threshold),
        irredundancy,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Cell;
    use crate::poly::parse_monomial;

    fn lim() -> Limits {
        Limits::default()
    }

    fn det3() -> Polynomial {
        expand_minor(&"[1,2,3|1,2,3]".parse().unwrap(), &lim()).unwrap()
    }

    #[test]
    fn symbolic_power_examples() {
        let cfg = MatrixConfig::new(3, 3, 1).unwrap();
        assert!(in_symbolic_power(&cfg, &det3(), 3, &lim()).unwrap().verdict);

        let cfg = MatrixConfig::new(3, 3, 2).unwrap();
        let two_minor = expand_minor(&"[1,2|1,2]".parse().unwrap(), &lim()).unwrap();
        assert!(
            !in_symbolic_power(&cfg, &two_minor, 2, &lim())
                .unwrap()
                .verdict
        );

        let cfg22 = MatrixConfig::new(2, 2, 2).unwrap();
        let swap = &Polynomial::var(Cell::new(1, 2)) * &Polynomial::var(Cell::new(2, 1));
        assert!(!in_symbolic_power(&cfg22, &swap, 1, &lim()).unwrap().verdict);
    }

    #[test]
    fn ordinary_power_examples() {
        let cfg = MatrixConfig::new(3, 3, 2).unwrap();
        let f = &Polynomial::var(Cell::new(1, 1)) * &det3();
        assert!(in_ordinary_power(&cfg, &f, 2, &lim()).unwrap().verdict);
        assert!(!in_ordinary_power(&cfg, &det3(), 2, &lim()).unwrap().verdict);

        // Products of k t-minors are definitional generators.
        let m1 = expand_minor(&"[1,2|1,2]".parse().unwrap(), &lim()).unwrap();
        let m2 = expand_minor(&"[2,3|2,3]".parse().unwrap(), &lim()).unwrap();
        assert!(
            in_ordinary_power(&cfg, &(&m1 * &m2), 2, &lim())
                .unwrap()
                .verdict
        );
    }

    #[test]
    fn initial_power_examples() {
        let cfg = MatrixConfig::new(2, 2, 2).unwrap();
        let diag = parse_monomial("1,1;2,2").unwrap();
        let anti = parse_monomial("1,2;2,1").unwrap();
        assert!(in_initial_power(&cfg, &diag, 1, PowerKind::Symbolic, &lim()).unwrap());
        assert!(!in_initial_power(&cfg, &anti, 1, PowerKind::Symbolic, &lim()).unwrap());
        assert!(in_initial_power(&cfg, &anti, 0, PowerKind::Symbolic, &lim()).unwrap());
        assert!(in_initial_power(&cfg, &anti, 0, PowerKind::Ordinary, &lim()).unwrap());
    }

    #[test]
    fn rees_membership_examples() {
        let cfg = MatrixConfig::new(3, 3, 2).unwrap();
        let d2 = expand_minor(&"[1,2|1,2]".parse().unwrap(), &lim()).unwrap();
        let dt = &d2 * &Polynomial::t_var();
        assert!(in_rees(&cfg, &dt, &lim()).unwrap().verdict);

        let xt = &Polynomial::var(Cell::new(1, 1)) * &Polynomial::t_var();
        assert!(!in_rees(&cfg, &xt, &lim()).unwrap().verdict);

        // Anything in S itself is in the Rees algebra.
        let f = &d2 * &Polynomial::var(Cell::new(3, 1));
        assert!(in_rees(&cfg, &f, &lim()).unwrap().verdict);
    }

    #[test]
    fn at_membership_examples() {
        let cfg = MatrixConfig::new(3, 4, 2).unwrap();
        let d2 = expand_minor(&"[1,2|1,2]".parse().unwrap(), &lim()).unwrap();
        let gen = &d2 * &Polynomial::t_var();
        assert!(in_at(&cfg, &gen, &lim()).unwrap().verdict);

        // x11^t * T fails: gamma_2 = -t + 1 < 0.
        let x11 = Polynomial::var(Cell::new(1, 1));
        let bad = &(&x11 * &x11) * &Polynomial::t_var();
        let rep = in_at(&cfg, &bad, &lim()).unwrap();
        assert!(!rep.verdict);

        // Vt violation.
        let unbalanced = &x11 * &Polynomial::t_var();
        assert!(!in_at(&cfg, &unbalanced, &lim()).unwrap().verdict);

        // Assumption gate: (3,3,2) fails the A_t assumption.
        let cfg33 = MatrixConfig::new(3, 3, 2).unwrap();
        assert!(matches!(
            in_at(&cfg33, &gen, &lim()),
            Err(Error::AssumptionViolation(_))
        ));
    }

    #[test]
    fn at_membership_unchecked_on_3x3() {
        let cfg = MatrixConfig::new(3, 3, 2).unwrap();
        let x11_det_t2 = &(&Polynomial::var(Cell::new(1, 1)) * &det3())
            * &(&Polynomial::t_var() * &Polynomial::t_var());
        assert!(at_membership_unchecked(&cfg, &x11_det_t2, &lim()).unwrap());
    }

    #[test]
    fn initial_algebra_examples() {
        let cfg22 = MatrixConfig::new(2, 2, 2).unwrap();
        let n = parse_monomial("1,1;2,2").unwrap().with_t_pow(1);
        assert!(in_initial_rees(&cfg22, &n, &lim()).unwrap());
        assert!(in_initial_at(&cfg22, &n, &lim()).unwrap());
        let bad = parse_monomial("1,2;2,1").unwrap().with_t_pow(1);
        assert!(!in_initial_at(&cfg22, &bad, &lim()).unwrap());
        assert!(in_initial_rees(&cfg22, &GridMonomial::one(), &lim()).unwrap());
        assert!(in_initial_at(&cfg22, &GridMonomial::one(), &lim()).unwrap());
    }

    #[test]
    fn shape_implication_examples() {
        // Vacuous range for t = 2.
        assert!(gaa_shape_implication(3, 2, 2, &[0, 2, 0]).unwrap());
        // t = 3, k = 2, shape (3,3).
        assert!(gaa_shape_implication(3, 3, 2, &[0, 0, 2]).unwrap());
        // Bad weighted sum is rejected.
        assert!(gaa_shape_implication(3, 3, 2, &[1, 0, 0]).is_err());
    }

    #[test]
    fn primary_decomposition_smoke() {
        let cfg = MatrixConfig::new(3, 3, 2).unwrap();
        let report = verify_primary_decomposition(&cfg, 1, 3, &lim()).unwrap();
        assert!(report.pass, "{report:?}");
        // Degree 2 of I_2: exactly the nine minors.
        assert_eq!(report.degrees[2].generator_dim, 9);
        assert_eq!(report.degrees[2].gamma_count, 9);
    }

    #[test]
    fn algebra_membership_is_closed_under_products() {
        let cfg = MatrixConfig::new(3, 4, 2).unwrap();
        let t_var = Polynomial::t_var();
        let gens: Vec<Polynomial> = ["[1,2|1,2]", "[2,3|2,4]", "[1,3|1,4]"]
            .iter()
            .map(|s| &expand_minor(&s.parse().unwrap(), &lim()).unwrap() * &t_var)
            .collect();
        for a in &gens {
            for b in &gens {
                assert!(in_at(&cfg, a, &lim()).unwrap().verdict);
                assert!(in_at(&cfg, &(a * b), &lim()).unwrap().verdict);
            }
        }
    }

    #[test]
    fn symbolic_members_have_initial_monomials_in_the_initial_power() {
        let cfg = MatrixConfig::new(3, 3, 2).unwrap();
        let samples = vec![
            det3(),
            expand_minor(&"[1,2|2,3]".parse().unwrap(), &lim()).unwrap(),
            &expand_minor(&"[1,2|1,2]".parse().unwrap(), &lim()).unwrap()
                * &expand_minor(&"[2,3|1,3]".parse().unwrap(), &lim()).unwrap(),
        ];
        for f in samples {
            for k in 1..=2 {
                if in_symbolic_power(&cfg, &f, k, &lim()).unwrap().verdict {
                    let (init, _) = f.initial_term().unwrap();
                    assert!(
                        in_initial_power(&cfg, &init, k, PowerKind::Symbolic, &lim()).unwrap(),
                        "initial monomial of a member must lie in the initial power"
                    );
                }
            }
        }
    }

    #[test]
    fn primary_decomposition_trivial_at_t1() {
        // One-minor ideal: the intersection has a single component, so the
        // comparison is an identity check degree by degree.
        let cfg = MatrixConfig::new(3, 3, 1).unwrap();
        let report = verify_primary_decomposition(&cfg, 2, 3, &lim()).unwrap();
        assert!(report.pass);
        assert!(report.irredundancy.is_empty());
        // Degree d of the square of the irrelevant ideal has full dimension
        // from degree 2 on.
        assert_eq!(report.degrees[2].generator_dim, 45);
        assert_eq!(report.degrees[3].generator_dim, 165);
    }

    #[test]
    fn symbolic_contains_ordinary_on_samples() {
        let cfg = MatrixConfig::new(3, 3, 2).unwrap();
        let samples = vec![
            &Polynomial::var(Cell::new(1, 1)) * &det3(),
            det3(),
            expand_minor(&"[1,2|2,3]".parse().unwrap(), &lim()).unwrap(),
        ];
        for f in samples {
            for k in 1..=2 {
                let ord = in_ordinary_power(&cfg, &f, k, &lim()).unwrap().verdict;
                let sym = in_symbolic_power(&cfg, &f, k, &lim()).unwrap().verdict;
                assert!(!ord || sym, "ordinary membership must imply symbolic");
            }
        }
    }
}
