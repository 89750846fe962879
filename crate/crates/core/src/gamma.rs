//! The gamma valuations: on shapes, on polynomials of S through their
//! standard representation, and on S[T] through the T-twist
//! gamma_i(T) = -(t+1-i).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::{Limits, MatrixConfig};
use crate::minor::{ProductOfMinors, Shape};
use crate::poly::Polynomial;
use crate::straightening::standard_rep;

/// A gamma value. Infinity is reserved for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GammaValue {
    Finite(i64),
    Infinity,
}

impl GammaValue {
    pub fn finite(self) -> Option<i64> {
        match self {
            GammaValue::Finite(v) => Some(v),
            GammaValue::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == GammaValue::Infinity
    }

    pub fn min(self, other: GammaValue) -> GammaValue {
        std::cmp::min(self, other)
    }

    pub fn shift(self, delta: i64) -> GammaValue {
        match self {
            GammaValue::Finite(v) => GammaValue::Finite(v + delta),
            GammaValue::Infinity => GammaValue::Infinity,
        }
    }

    pub fn at_least(self, bound: i64) -> bool {
        match self {
            GammaValue::Finite(v) => v >= bound,
            GammaValue::Infinity => true,
        }
    }
}

/// Addition with the infinity convention for the zero polynomial.
impl std::ops::Add for GammaValue {
    type Output = GammaValue;
    fn add(self, other: GammaValue) -> GammaValue {
        match (self, other) {
            (GammaValue::Finite(a), GammaValue::Finite(b)) => GammaValue::Finite(a + b),
            _ => GammaValue::Infinity,
        }
    }
}

impl fmt::Display for GammaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaValue::Finite(v) => write!(f, "{v}"),
            GammaValue::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for GammaValue {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GammaValue::Finite(v) => ser.serialize_i64(*v),
            GammaValue::Infinity => ser.serialize_str("inf"),
        }
    }
}

/// The values gamma_1..gamma_t of one element, in the context of a fixed t.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaVector {
    pub t: usize,
    pub values: Vec<GammaValue>,
}

/// gamma_t of a shape: sum of max(part + 1 - t, 0).
pub fn gamma_shape(t: usize, shape: &Shape) -> i64 {
    assert!(t >= 1, "gamma index must be at least 1");
    shape
        .parts()
        .iter()
        .map(|&p| (p as i64 + 1 - t as i64).max(0))
        .sum()
}

/// gamma_t of a product of minors is gamma_t of its shape, standard or not.
pub fn gamma_product(t: usize, p: &ProductOfMinors) -> i64 {
    gamma_shape(t, &p.shape())
}

/// gamma_t of an x-homogeneous polynomial of S: the minimum of gamma_t over
/// the standard monomials in its standard representation.
pub fn gamma_poly(
    cfg: &MatrixConfig,
    t: usize,
    f: &Polynomial,
    limits: &Limits,
) -> Result<GammaValue> {
    if f.x_homogeneous_degree().is_none() {
        return Err(Error::invalid(
            "gamma is exposed for x-homogeneous polynomials",
        ));
    }
    gamma_poly_any(cfg, t, f, limits)
}

/// Internal version: minimum over x-homogeneous components, so it is
/// defined for every polynomial of S.
pub(crate) fn gamma_poly_any(
    cfg: &MatrixConfig,
    t: usize,
    f: &Polynomial,
    limits: &Limits,
) -> Result<GammaValue> {
    if f.is_zero() {
        return Ok(GammaValue::Infinity);
    }
    let mut best = GammaValue::Infinity;
    for (_, component) in f.x_components() {
        let rep = standard_rep(cfg, &component, limits)?;
        for (_, p) in rep.entries() {
            best = best.min(GammaValue::Finite(gamma_product(t, p)));
        }
    }
    Ok(best)
}

/// gamma_i on S[T]: minimum over T-layers of gamma_i(f_j) - j(t+1-i), with
/// t taken from the configuration. Each layer must be x-homogeneous.
pub fn gamma_st(
    cfg: &MatrixConfig,
    i: usize,
    big_f: &Polynomial,
    limits: &Limits,
) -> Result<GammaValue> {
    if big_f.is_zero() {
        return Ok(GammaValue::Infinity);
    }
    let t = cfg.t() as i64;
    let mut best = GammaValue::Infinity;
    for (j, layer) in big_f.t_layers().into_iter().enumerate() {
        if layer.is_zero() {
            continue;
        }
        if layer.x_homogeneous_degree().is_none() {
            return Err(Error::invalid(format!("T-layer {j} is not x-homogeneous")));
        }
        let base = gamma_poly_any(cfg, i, &layer, limits)?;
        best = best.min(base.shift(-(j as i64) * (t + 1 - i as i64)));
    }
    Ok(best)
}

/// gamma_1..gamma_t of an S[T] element.
pub fn gamma_vector_st(
    cfg: &MatrixConfig,
    big_f: &Polynomial,
    limits: &Limits,
) -> Result<GammaVector> {
    let values = (1..=cfg.t())
        .map(|i| gamma_st(cfg, i, big_f, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(GammaVector { t: cfg.t(), values })
}
