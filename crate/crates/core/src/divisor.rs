//! Divisor-class arithmetic for the Rees algebra and the algebra of
//! t-minors, the distinguished product D with initial term equal to the
//! product of all variables, canonical classes and canonical-ideal
//! membership, and the degreewise verifier for the ideal identities that
//! underpin the class computations.

use serde::Serialize;
use serde_json::json;

use crate::decomp::{search, Goal};
use crate::error::{Error, Result};
use crate::gamma::{gamma_shape, gamma_st};
use crate::grid::{Cell, Limits, MatrixConfig};
use crate::linalg::{divisible_subspace, intersect_spans, Subspace};
use crate::membership::{in_vt, MembershipReport};
use crate::minor::{Minor, ProductOfMinors};
use crate::poly::{expand_product, Polynomial};
use crate::rho::rho_facet;
use crate::straightening::{enumerate_standard, StandardFilter};

/// Divisor class of the Rees algebra in the free basis cl(P_1)..cl(P_t).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorClassR {
    pub coeffs: Vec<i64>,
}

/// Divisor class of the algebra of minors: an integer multiple of cl(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivisorClassA {
    pub q_mult: i64,
}

/// The distinguished product of minors whose initial term is the product of
/// all the variables and whose gamma values match rho of that product.
#[derive(Debug, Clone, Serialize)]
pub struct DistinguishedD {
    m: usize,
    n: usize,
    product: ProductOfMinors,
    /// gamma_i for i = 1..=min(m,n).
    gamma: Vec<i64>,
}

impl DistinguishedD {
    pub fn product(&self) -> &ProductOfMinors {
        &self.product
    }

    pub fn gamma(&self, i: usize) -> i64 {
        self.gamma[i - 1]
    }

    pub fn gamma_values(&self) -> &[i64] {
        &self.gamma
    }

    /// gamma_i(D T) in the context of a given t.
    pub fn gamma_dt(&self, t: usize, i: usize) -> i64 {
        self.gamma(i) - (t as i64 + 1 - i as i64)
    }
}

/// The staircase product (for m <= n): two minors of each size 1..m-1 hugging
/// the lower-left and upper-right corners, plus the maximal minors on the
/// n-m+1 consecutive column windows. For m > n everything is transposed.
pub fn build_d(m: usize, n: usize) -> Result<DistinguishedD> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("grid dimensions must be positive"));
    }
    if m > n {
        let t = build_d(n, m)?;
        let product = t.product.transpose();
        return verify_d_invariants(m, n, product);
    }
    let mut factors = Vec::new();
    for s in 1..m {
        let rows: Vec<u16> = ((m - s + 1)..=m).map(|x| x as u16).collect();
        let cols: Vec<u16> = (1..=s).map(|x| x as u16).collect();
        factors.push(Minor::new(rows, cols)?);
        let rows: Vec<u16> = (1..=s).map(|x| x as u16).collect();
        let cols: Vec<u16> = ((n - s + 1)..=n).map(|x| x as u16).collect();
        factors.push(Minor::new(rows, cols)?);
    }
    for j in 1..=(n - m + 1) {
        let rows: Vec<u16> = (1..=m).map(|x| x as u16).collect();
        let cols: Vec<u16> = (j..j + m).map(|x| x as u16).collect();
        factors.push(Minor::new(rows, cols)?);
    }
    verify_d_invariants(m, n, ProductOfMinors::new(factors))
}

fn verify_d_invariants(m: usize, n: usize, product: ProductOfMinors) -> Result<DistinguishedD> {
    // The factor diagonals must partition the grid; with the
    // multiplicativity of initial terms this is exactly in(D) = product of
    // all variables.
    let mut seen = std::collections::BTreeSet::new();
    for f in product.factors() {
        for c in f.diagonal() {
            if !seen.insert(c) {
                return Err(Error::InvariantViolation(format!(
                    "diagonal cell {c} covered twice"
                )));
            }
        }
    }
    if seen.len() != m * n {
        return Err(Error::InvariantViolation(
            "diagonals do not cover the grid".into(),
        ));
    }
    let v = m.min(n);
    let shape = product.shape();
    let mut gamma = Vec::with_capacity(v);
    for i in 1..=v {
        let g = gamma_shape(i, &shape);
        let expected = ((m - i + 1) * (n - i + 1)) as i64;
        if g != expected {
            return Err(Error::InvariantViolation(format!(
                "gamma_{i} of the staircase is {g}, expected {expected}"
            )));
        }
        gamma.push(g);
    }
    Ok(DistinguishedD {
        m,
        n,
        product,
        gamma,
    })
}

/// Exhaustively confirms that exactly one decomposition of the full grid
/// into increasing chains attains gamma_i = rho_i(product of all variables)
/// for every i simultaneously, and that it is the staircase.
pub fn verify_d_unique(m: usize, n: usize, limits: &Limits) -> Result<bool> {
    if m * n > limits.max_facet_cells {
        return Err(Error::resource(
            "grid cells for uniqueness search",
            limits.max_facet_cells,
        ));
    }
    let cfg = MatrixConfig::new(m, n, 1)?;
    let full = crate::poly::GridMonomial::from_cells(cfg.cells());
    let v = m.min(n);
    let targets: Vec<i64> = (1..=v)
        .map(|i| rho_facet(m, n, i, &full, limits))
        .collect::<Result<_>>()?;
    let cells = cfg.cells();
    let out = search(
        &cells,
        |chain: &[Cell], next: &Cell| chain.last().is_none_or(|l| l.strictly_below(next)),
        Goal::MatchProfile { targets: &targets },
    );
    if out.matches.len() != 1 {
        return Ok(false);
    }
    let d = build_d(m, n)?;
    let mut expected: Vec<Vec<Cell>> = d.product().factors().iter().map(|f| f.diagonal()).collect();
    expected.sort();
    let mut found = out.matches[0].clone();
    found.sort();
    Ok(found == expected)
}

/// Canonical class of the Rees algebra, computed along three routes that
/// must agree: the closed form 2-(m-i+1)(n-i+1)+t-i, the height form
/// cl(I_t R) + sum (1 - height I_i) cl(P_i), and the gamma-threshold form
/// 1 - gamma_i(DT).
pub fn canonical_class_rees_forms(m: usize, n: usize, t: usize) -> Result<[Vec<i64>; 3]> {
    let cfg = MatrixConfig::new(m, n, t)?;
    cfg.require_rees()?;
    let direct: Vec<i64> = (1..=t)
        .map(|i| 2 - ((m - i + 1) * (n - i + 1)) as i64 + t as i64 - i as i64)
        .collect();
    let it_class = class_of_it_rees(t);
    let height_form: Vec<i64> = (1..=t)
        .map(|i| it_class.coeffs[i - 1] + 1 - ((m - i + 1) * (n - i + 1)) as i64)
        .collect();
    let d = build_d(m, n)?;
    let gamma_form: Vec<i64> = (1..=t).map(|i| 1 - d.gamma_dt(t, i)).collect();
    Ok([direct, height_form, gamma_form])
}

pub fn canonical_class_rees(m: usize, n: usize, t: usize) -> Result<DivisorClassR> {
    let [direct, height_form, gamma_form] = canonical_class_rees_forms(m, n, t)?;
    if direct != height_form || direct != gamma_form {
        return Err(Error::Mismatch(format!(
            "canonical class forms disagree at ({m},{n},{t}): {direct:?} vs {height_form:?} vs {gamma_form:?}"
        )));
    }
    Ok(DivisorClassR { coeffs: direct })
}

/// Class of the extended ideal I_t R in the free basis: coefficients t-i+1.
pub fn class_of_it_rees(t: usize) -> DivisorClassR {
    DivisorClassR {
        coeffs: (1..=t).map(|i| (t - i + 1) as i64).collect(),
    }
}

/// Canonical class of the algebra of t-minors: (mn - tm - tn) cl(q).
pub fn canonical_class_at(m: usize, n: usize, t: usize) -> Result<DivisorClassA> {
    let cfg = MatrixConfig::new(m, n, t)?;
    cfg.require_at()?;
    Ok(DivisorClassA {
        q_mult: (m * n) as i64 - (t * m) as i64 - (t * n) as i64,
    })
}

pub fn is_gorenstein_at(m: usize, n: usize, t: usize) -> Result<bool> {
    Ok(canonical_class_at(m, n, t)?.q_mult == 0)
}

/// cl(q_j) = (j - t) cl(q) for the height-one prime attached to a j-minor.
pub fn class_of_qj(cfg: &MatrixConfig, j: usize) -> Result<DivisorClassA> {
    cfg.require_at()?;
    if j == 0 || j > cfg.min_dim() {
        return Err(Error::invalid(format!(
            "q_j needs 1 <= j <= min(m,n), got {j}"
        )));
    }
    Ok(DivisorClassA {
        q_mult: j as i64 - cfg.t() as i64,
    })
}

/// cl(p) = -t cl(q) for the gamma_2 prime of the algebra of minors.
pub fn class_of_p(cfg: &MatrixConfig) -> Result<DivisorClassA> {
    cfg.require_at()?;
    Ok(DivisorClassA {
        q_mult: -(cfg.t() as i64),
    })
}

fn expand_d_poly(d: &DistinguishedD, limits: &Limits) -> Result<Polynomial> {
    expand_product(d.product(), limits)
}

/// Canonical-ideal membership for the Rees algebra: DT divides F in S[T]
/// and gamma_i(F) >= 1 for i = 1..t. The gamma values are taken as
/// gamma_i(DT) plus gamma_i of the quotient, which keeps the straightening
/// degree at that of F/(DT).
pub fn in_canonical_rees(
    cfg: &MatrixConfig,
    f: &Polynomial,
    limits: &Limits,
) -> Result<MembershipReport> {
    cfg.require_rees()?;
    let d = build_d(cfg.m(), cfg.n())?;
    let dt = &expand_d_poly(&d, limits)? * &Polynomial::t_var();
    let quotient = f.exact_div(&dt)?;
    let Some(h) = quotient else {
        return Ok(MembershipReport {
            verdict: false,
            witness: json!({ "dt_divides": false }),
            standard_rep: None,
        });
    };
    let t = cfg.t();
    let mut verdict = true;
    let mut witness = serde_json::Map::new();
    witness.insert("dt_divides".into(), json!(true));
    for i in 1..=t {
        let g = gamma_st(cfg, i, &h, limits)?.shift(d.gamma_dt(t, i));
        if !g.at_least(1) {
            verdict = false;
        }
        witness.insert(format!("gamma_{i}"), json!({ "value": g, "threshold": 1 }));
    }
    Ok(MembershipReport {
        verdict,
        witness: witness.into(),
        standard_rep: None,
    })
}

/// Canonical-ideal membership for the algebra of minors: F in V_t, DT
/// divides F, gamma_2(F) >= 1.
pub fn in_canonical_at(
    cfg: &MatrixConfig,
    f: &Polynomial,
    limits: &Limits,
) -> Result<MembershipReport> {
    cfg.require_at()?;
    let vt = in_vt(cfg, f).verdict;
    let d = build_d(cfg.m(), cfg.n())?;
    let dt = &expand_d_poly(&d, limits)? * &Polynomial::t_var();
    let quotient = f.exact_div(&dt)?;
    let Some(h) = quotient else {
        return Ok(MembershipReport {
            verdict: false,
            witness: json!({ "in_vt": vt, "dt_divides": false }),
            standard_rep: None,
        });
    };
    let g2 = gamma_st(cfg, 2, &h, limits)?.shift(d.gamma_dt(cfg.t(), 2));
    Ok(MembershipReport {
        verdict: vt && g2.at_least(1),
        witness: json!({
            "in_vt": vt,
            "dt_divides": true,
            "gamma_2": g2,
            "threshold": 1,
        }),
        standard_rep: None,
    })
}

// ---------------------------------------------------------------------------
// Degreewise verification of the ideal identities inside the algebra of
// minors. All spaces live in a single T-degree k, so they are handled as
// spaces of x-polynomials of degree k*t.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub t_degree: usize,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRelationsReport {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub dmax: usize,
    pub f_minor: String,
    pub checks: Vec<RelationCheck>,
    pub pass: bool,
}

impl ClassRelationsReport {
    /// The data that must not depend on the choice of the (t+1)-minor.
    pub fn fingerprint(&self) -> Vec<(String, usize, usize, usize, bool)> {
        self.checks
            .iter()
            .map(|c| (c.name.clone(), c.t_degree, c.lhs_dim, c.rhs_dim, c.pass))
            .collect()
    }
}

struct AtDegrees<'a> {
    cfg: &'a MatrixConfig,
    limits: &'a Limits,
    /// basis[k] = expansions of the standard monomials spanning T-degree k.
    basis: Vec<Vec<Polynomial>>,
}

impl<'a> AtDegrees<'a> {
    fn new(cfg: &'a MatrixConfig, dmax: usize, limits: &'a Limits) -> Result<Self> {
        let t = cfg.t();
        let mut basis = Vec::new();
        for k in 0..=dmax {
            let standards = enumerate_standard(cfg, k * t, &StandardFilter::MaxParts(k), limits)?;
            let polys = standards
                .iter()
                .map(|p| expand_product(p, limits))
                .collect::<Result<Vec<_>>>()?;
            basis.push(polys);
        }
        Ok(AtDegrees { cfg, limits, basis })
    }

    /// Basis of the height-one prime p in T-degree k: standard monomials
    /// with at most k-1 factors (gamma_2 >= k(t-1)+1).
    fn p_basis(&self, k: usize) -> Result<Vec<Polynomial>> {
        if k == 0 {
            return Ok(Vec::new());
        }
        let standards = enumerate_standard(
            self.cfg,
            k * self.cfg.t(),
            &StandardFilter::MaxParts(k - 1),
            self.limits,
        )?;
        standards
            .iter()
            .map(|p| expand_product(p, self.limits))
            .collect()
    }

    /// Basis of {F in A, T-degree k : g^j | F in S[T]} for an x-polynomial g.
    fn divisible(&self, k: usize, g: &Polynomial, j: usize) -> Result<Vec<Polynomial>> {
        divisible_subspace(&self.basis[k], g, j, self.limits)
    }

    /// g * (T-degree k - shift component), i.e. the principal ideal slice.
    fn principal_slice(&self, g: &Polynomial, k: usize, shift: usize) -> Vec<Polynomial> {
        if k < shift {
            return Vec::new();
        }
        self.basis[k - shift].iter().map(|b| g * b).collect()
    }
}

fn spaces_equal(
    lhs: &[Polynomial],
    rhs: &[Polynomial],
    limits: &Limits,
) -> Result<(bool, usize, usize)> {
    let l = Subspace::from_polys(lhs, limits)?;
    let r = Subspace::from_polys(rhs, limits)?;
    let eq = l.dim() == r.dim()
        && rhs.iter().all(|f| l.contains(f))
        && lhs.iter().all(|f| r.contains(f));
    Ok((eq, l.dim(), r.dim()))
}

/// Verifies, degree by degree up to T-degree dmax:
///   - q^(t) meet p = (g), with q the prime attached to a (t+1)-minor f and
///     g = f^t T^(t+1),
///   - p q^t contained in (g) contained in p meet q,
///   - the tight-shape identities (Delta) S[T] meet A = (Delta T^k) A for
///     Delta = f_j f_(t+1)^(t-j) (j <= t) and f_j f_(t-1)^(j-t) (j > t).
///
/// The verdict data must be independent of which (t+1)-minor is chosen;
/// the caller compares fingerprints across choices.
pub fn verify_class_relations(
    cfg: &MatrixConfig,
    dmax: usize,
    f_choice: Option<&Minor>,
    limits: &Limits,
) -> Result<ClassRelationsReport> {
    let t = cfg.t();
    if t < 2 {
        return Err(Error::AssumptionViolation(
            "the ideal identities live in the t >= 2 setting".into(),
        ));
    }
    let upper_left = |s: usize| -> Result<Minor> {
        Minor::new((1..=s as u16).collect(), (1..=s as u16).collect())
    };
    let f_minor = match f_choice {
        Some(m) => {
            if m.size() != t + 1 || !m.fits(cfg) {
                return Err(Error::invalid("f must be a (t+1)-minor of the grid"));
            }
            m.clone()
        }
        None => upper_left(t + 1)?,
    };
    let f_poly = expand_product(&ProductOfMinors::new(vec![f_minor.clone()]), limits)?;
    let g_poly = f_poly.pow(t); // x-part of g = f^t T^(t+1)

    let degrees = AtDegrees::new(cfg, dmax, limits)?;
    let mut checks: Vec<RelationCheck> = Vec::new();

    for k in 0..=dmax {
        // q^(t) meet p = (g), non-vacuous from k = t+1 on.
        let qt = degrees.divisible(k, &g_poly, 1)?; // f^t divides == g-part divides
        let p = degrees.p_basis(k)?;
        let lhs = intersect_spans(&qt, &p, limits)?;
        let rhs = degrees.principal_slice(&g_poly, k, t + 1);
        let (eq, ld, rd) = spaces_equal(&lhs, &rhs, limits)?;
        checks.push(RelationCheck {
            name: "q^(t) meet p = (g)".into(),
            t_degree: k,
            lhs_dim: ld,
            rhs_dim: rd,
            pass: eq,
        });

        // p q^t subset of (g): spanning products a * b_1 ... b_t * c over
        // all T-degree splits.
        let g_space = Subspace::from_polys(&rhs, limits)?;
        let mut products: Vec<Polynomial> = Vec::new();
        build_pqt_products(&degrees, &f_poly, k, t, &mut products)?;
        let span = Subspace::from_polys(&products, limits)?;
        let pqt_ok = products.iter().all(|prod| g_space.contains(prod));
        checks.push(RelationCheck {
            name: "p q^t subset (g)".into(),
            t_degree: k,
            lhs_dim: span.dim(),
            rhs_dim: rhs.len(),
            pass: pqt_ok,
        });

        // (g) subset p meet q.
        let p_space = Subspace::from_polys(&p, limits)?;
        let q_basis = degrees.divisible(k, &f_poly, 1)?;
        let q_space = Subspace::from_polys(&q_basis, limits)?;
        let ok = rhs
            .iter()
            .all(|gab| p_space.contains(gab) && q_space.contains(gab));
        checks.push(RelationCheck {
            name: "(g) subset p meet q".into(),
            t_degree: k,
            lhs_dim: rhs.len(),
            rhs_dim: p_space.dim().min(q_space.dim()),
            pass: ok,
        });
    }

    // Tight-shape identities per auxiliary minor size j: the product
    // f_j f^(t-j) for j <= t, and f_j f_(t-1)^(j-t) for j > t, has degree
    // divisible by t and exactly deg/t factors.
    for j in 1..=cfg.min_dim() {
        let delta = if j <= t {
            let mut factors = vec![upper_left(j)?];
            factors.extend(std::iter::repeat_n(f_minor.clone(), t - j));
            ProductOfMinors::new(factors)
        } else {
            // For j = t+1 the j-minor is the chosen f itself, so this slot
            // exercises q directly.
            let fj = if j == t + 1 {
                f_minor.clone()
            } else {
                upper_left(j)?
            };
            let mut factors = vec![fj];
            factors.extend(std::iter::repeat_n(upper_left(t - 1)?, j - t));
            ProductOfMinors::new(factors)
        };
        let deg = delta.degree();
        if !deg.is_multiple_of(t) {
            return Err(Error::InternalInconsistency(
                "tight-shape product degree not divisible by t".into(),
            ));
        }
        let shift = deg / t;
        let delta_poly = expand_product(&delta, limits)?;
        for k in shift..=dmax {
            let lhs = degrees.divisible(k, &delta_poly, 1)?;
            let rhs = degrees.principal_slice(&delta_poly, k, shift);
            let (eq, ld, rd) = spaces_equal(&lhs, &rhs, limits)?;
            checks.push(RelationCheck {
                name: format!("tight shape j={j}"),
                t_degree: k,
                lhs_dim: ld,
                rhs_dim: rd,
                pass: eq,
            });
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(ClassRelationsReport {
        m: cfg.m(),
        n: cfg.n(),
        t,
        dmax,
        f_minor: f_minor.to_string(),
        checks,
        pass,
    })
}

/// Spanning set of (p q^t) in T-degree k: products a * b_1 ... b_t * c with
/// a in p, b_i in q, c in the algebra, T-degrees summing to k.
fn build_pqt_products(
    degrees: &AtDegrees<'_>,
    f_poly: &Polynomial,
    k: usize,
    t: usize,
    out: &mut Vec<Polynomial>,
) -> Result<()> {
    // q has no elements below T-degree 2 and p none below T-degree 3;
    // enumerate all splits, the empty bases prune them.
    let mut q_bases: Vec<Vec<Polynomial>> = Vec::new();
    let mut p_bases: Vec<Vec<Polynomial>> = Vec::new();
    for kk in 0..=k {
        q_bases.push(degrees.divisible(kk, f_poly, 1)?);
        p_bases.push(degrees.p_basis(kk)?);
    }

    // Compositions k = k_p + k_1 + ... + k_t + k_c.
    fn splits(total: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=total {
            cur.push(v);
            splits(total - v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut compositions = Vec::new();
    splits(k, t + 2, &mut Vec::new(), &mut compositions);

    for comp in compositions {
        let kp = comp[0];
        let kc = comp[t + 1];
        if p_bases[kp].is_empty() {
            continue;
        }
        if comp[1..=t].iter().any(|&kq| q_bases[kq].is_empty()) {
            continue;
        }
        // Multiply out the cross products.
        let mut partials: Vec<Polynomial> = p_bases[kp].clone();
        for &kq in &comp[1..=t] {
            let mut next = Vec::new();
            for a in &partials {
                for b in &q_bases[kq] {
                    next.push(a * b);
                }
            }
            partials = next;
        }
        for a in &partials {
            for c in &degrees.basis[kc] {
                out.push(a * c);
            }
        }
    }
    Ok(())
}
