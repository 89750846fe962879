//! The Hilbert function of the algebra of t-minors, by direct
//! standard-monomial enumeration and by the hook-content formula, cross
//! validated.
//!
//! The degree-k component is spanned by the standard monomials of degree kt
//! with at most k factors (that bound is the gamma_2 condition in disguise),
//! and those counts decompose over shapes; each shape contributes the
//! product of two column-strict tableau counts on the row and column
//! alphabets of the conjugate shape. Agreement of the two routes is the
//! correctness contract for the hook path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Limits, MatrixConfig};
use crate::minor::Shape;
use crate::straightening::{enumerate_standard, StandardFilter};

#[derive(Debug, Clone, Serialize)]
pub struct HilbertRecord {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub dim_enum: u64,
    pub dim_hook: u64,
    pub agree: bool,
}

/// Dimension of the degree-k component by exhaustive enumeration of
/// standard monomials of degree kt with at most k factors.
pub fn hilbert_at_enum(cfg: &MatrixConfig, k: usize, limits: &Limits) -> Result<u64> {
    if k == 0 {
        return Ok(1);
    }
    let standards = enumerate_standard(cfg, k * cfg.t(), &StandardFilter::MaxParts(k), limits)?;
    Ok(standards.len() as u64)
}

/// Number of column-strict tableaux of the given shape with entries in
/// 1..=q: the product over cells of (q + content) / (hook length).
pub fn hook_content_count(shape: &Shape, q: usize) -> Result<u64> {
    if shape.is_empty() {
        return Ok(1);
    }
    let conj = shape.conjugate();
    let mut value = BigRational::one();
    for (r0, &len) in shape.parts().iter().enumerate() {
        for c0 in 0..len {
            let content = c0 as i64 - r0 as i64;
            let numer = q as i64 + content;
            if numer <= 0 {
                return Ok(0);
            }
            let arm = (len - 1 - c0) as i64;
            let leg = (conj.parts()[c0] as i64) - 1 - r0 as i64;
            let hook = arm + leg + 1;
            value *= BigRational::new(BigInt::from(numer), BigInt::from(hook));
        }
    }
    if !value.denom().is_one() || value.is_negative() {
        return Err(Error::InternalInconsistency(format!(
            "hook-content product {value} is not a nonnegative integer for {shape} at q={q}"
        )));
    }
    let big = value.to_integer();
    u64::try_from(big.clone()).map_err(|_| {
        Error::InternalInconsistency(format!("hook-content count {big} does not fit in u64"))
    })
}

/// Dimension of the degree-k component by summing, over the admissible
/// shapes, the bitableau counts of the conjugate shape on the two
/// alphabets.
pub fn hilbert_at_hook(cfg: &MatrixConfig, k: usize, _limits: &Limits) -> Result<u64> {
    if k == 0 {
        return Ok(1);
    }
    let mut total: u64 = 0;
    for shape in Shape::partitions(k * cfg.t(), k, cfg.min_dim()) {
        let conj = shape.conjugate();
        let rows = hook_content_count(&conj, cfg.m())?;
        let cols = hook_content_count(&conj, cfg.n())?;
        total = total
            .checked_add(rows.checked_mul(cols).ok_or_else(|| {
                Error::InternalInconsistency("hook-content product overflow".into())
            })?)
            .ok_or_else(|| Error::InternalInconsistency("hilbert sum overflow".into()))?;
    }
    Ok(total)
}

/// Both routes plus the agreement flag.
pub fn hilbert_record(cfg: &MatrixConfig, k: usize, limits: &Limits) -> Result<HilbertRecord> {
    let dim_enum = hilbert_at_enum(cfg, k, limits)?;
    let dim_hook = hilbert_at_hook(cfg, k, limits)?;
    Ok(HilbertRecord {
        m: cfg.m(),
        n: cfg.n(),
        t: cfg.t(),
        k,
        dim_enum,
        dim_hook,
        agree: dim_enum == dim_hook,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    /// Independent oracle: brute-force enumeration of column-strict
    /// tableaux (rows weakly increasing, columns strictly increasing).
    fn count_tableaux_brute(shape: &Shape, q: usize) -> u64 {
        fn fill(shape: &[usize], q: usize, r: usize, c: usize, grid: &mut Vec<Vec<usize>>) -> u64 {
            if r == shape.len() {
                return 1;
            }
            if c == shape[r] {
                return fill(shape, q, r + 1, 0, grid);
            }
            let min = {
                let left = if c > 0 { grid[r][c - 1] } else { 1 };
                let above = if r > 0 && shape[r - 1] > c {
                    grid[r - 1][c] + 1
                } else {
                    1
                };
                left.max(above)
            };
            let mut total = 0;
            for v in min..=q {
                grid[r][c] = v;
                total += fill(shape, q, r, c + 1, grid);
            }
            total
        }
        let mut grid: Vec<Vec<usize>> = shape.parts().iter().map(|&l| vec![0; l]).collect();
        fill(shape.parts(), q, 0, 0, &mut grid)
    }

    #[test]
    fn hook_content_examples() {
        assert_eq!(
            hook_content_count(&Shape::new(vec![1]).unwrap(), 5).unwrap(),
            5
        );
        assert_eq!(
            hook_content_count(&Shape::new(vec![2, 2]).unwrap(), 3).unwrap(),
            6
        );
        assert_eq!(
            hook_content_count(&Shape::new(vec![2, 1, 1]).unwrap(), 3).unwrap(),
            3
        );
        // More rows than letters: no column-strict filling.
        assert_eq!(
            hook_content_count(&Shape::new(vec![1, 1, 1]).unwrap(), 2).unwrap(),
            0
        );
        assert_eq!(hook_content_count(&Shape::empty(), 4).unwrap(), 1);
    }

    #[test]
    fn hook_content_matches_brute_force() {
        for total in 1..=5usize {
            for shape in Shape::partitions(total, total, total) {
                for q in 1..=4usize {
                    assert_eq!(
                        hook_content_count(&shape, q).unwrap(),
                        count_tableaux_brute(&shape, q),
                        "shape {shape} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn hilbert_3x3_t2_values() {
        let cfg = MatrixConfig::new(3, 3, 2).unwrap();
        assert_eq!(hilbert_at_enum(&cfg, 0, &lim()).unwrap(), 1);
        assert_eq!(hilbert_at_enum(&cfg, 1, &lim()).unwrap(), 9);
        assert_eq!(hilbert_at_enum(&cfg, 2, &lim()).unwrap(), 45);
        assert_eq!(hilbert_at_hook(&cfg, 2, &lim()).unwrap(), 45);
    }

    #[test]
    fn counted_monomials_are_algebra_members() {
        // The counted standard monomials are exactly those whose T-twist
        // passes the algebra membership characterization.
        use crate::membership::at_membership_unchecked;
        use crate::poly::{expand_product, Polynomial};
        use crate::straightening::{enumerate_standard, StandardFilter};

        let cfg = MatrixConfig::new(3, 3, 2).unwrap();
        let k = 2usize;
        let counted =
            enumerate_standard(&cfg, k * cfg.t(), &StandardFilter::MaxParts(k), &lim()).unwrap();
        let t_pow = Polynomial::t_var().pow(k);
        for p in &counted {
            let f = &expand_product(p, &lim()).unwrap() * &t_pow;
            assert!(at_membership_unchecked(&cfg, &f, &lim()).unwrap(), "{p}");
        }
        // A degree-4 standard monomial with too many factors fails.
        let rejected: crate::minor::ProductOfMinors = "[1|1]*[1|2]*[1|3]*[2|1]".parse().unwrap();
        let f = &expand_product(&rejected, &lim()).unwrap() * &t_pow;
        assert!(!at_membership_unchecked(&cfg, &f, &lim()).unwrap());
    }

    #[test]
    fn first_degree_counts_the_minors() {
        fn binom(n: usize, k: usize) -> u64 {
            if k > n {
                return 0;
            }
            let mut out = 1u64;
            for i in 0..k {
                out = out * (n - i) as u64 / (i + 1) as u64;
            }
            out
        }
        for m in 1..=4 {
            for n in 1..=4 {
                for t in 1..=m.min(n) {
                    let cfg = MatrixConfig::new(m, n, t).unwrap();
                    assert_eq!(
                        hilbert_at_enum(&cfg, 1, &lim()).unwrap(),
                        binom(m, t) * binom(n, t),
                        "({m},{n},{t})"
                    );
                }
            }
        }
    }

    #[test]
    fn enum_and_hook_agree_small() {
        for (m, n, t, k) in [(2, 2, 2, 2), (2, 3, 2, 2), (3, 3, 2, 3), (3, 3, 3, 2)] {
            let cfg = MatrixConfig::new(m, n, t).unwrap();
            let rec = hilbert_record(&cfg, k, &lim()).unwrap();
            assert!(rec.agree, "{rec:?}");
        }
    }
}
