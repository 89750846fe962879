//! Exact symbolic toolkit for the algebras generated by the minors of a
//! generic matrix, and their Hankel analogues.
//!
//! Everything is computed over the rationals with exact arithmetic:
//! straightening-law standard bases, the gamma valuations and their monomial
//! companions rho, membership oracles for symbolic and ordinary powers and
//! for the Rees-type algebras inside S[T], divisor-class and canonical-class
//! arithmetic, Hilbert functions, and a verification harness that checks the
//! structural facts the library relies on at desk scale.

pub(crate) mod decomp;
pub mod divisor;
pub mod error;
pub mod gamma;
pub mod grid;
pub mod hankel;
pub mod hilbert;
pub mod linalg;
pub mod membership;
pub mod minor;
pub mod poly;
pub mod rho;
pub mod straightening;
pub mod verify;

pub use divisor::{
    build_d, canonical_class_at, canonical_class_rees, class_of_it_rees, class_of_qj,
    class_of_p, in_canonical_at, in_canonical_rees, is_gorenstein_at, verify_class_relations,
    verify_d_unique,
    ClassRelationsReport, DistinguishedD, DivisorClassA, DivisorClassR,
};
pub use error::{Error, Result};
pub use gamma::{
    gamma_poly, gamma_product, gamma_shape, gamma_st, gamma_vector_st, GammaValue, GammaVector,
};
pub use grid::{Cell, Limits, MatrixConfig};
pub use hankel::{
    canonical_class_at_hankel, canonical_class_rees_hankel, classify_at_hankel, hankel_d_shape,
    hankel_d_verify, hankel_expand, hankel_facets, hankel_purity, hankel_rho_facet,
    hankel_rho_search, is_gorenstein_at_hankel, HankelAtCase, HankelConfig, HankelFacetSet,
    HankelReesClass,
};
pub use hilbert::{
    hilbert_at_enum, hilbert_at_hook, hilbert_record, hook_content_count, HilbertRecord,
};
pub use membership::{
    at_membership_unchecked, gaa_shape_implication, in_at, in_initial_at, in_initial_power,
    in_initial_rees, in_ordinary_power, in_rees, in_symbolic_power, in_vt,
    verify_primary_decomposition, MembershipReport, PowerKind, PrimaryDecompositionReport,
};
pub use minor::{minor_compare, minor_le, Minor, MinorCompare, ProductOfMinors, Shape};
pub use poly::{expand_minor, expand_product, GridMonomial, Polynomial, Rational};
pub use rho::{enumerate_facets, rho_facet, rho_search, rho_st, FacetSet, LinearForm};
pub use straightening::{
    enumerate_standard, standard_rep, straighten, StandardFilter, StandardRep,
};
pub use verify::{run_all, run_suite, CheckResult, SuiteOptions, VerifyReport, SUITE_IDS};
