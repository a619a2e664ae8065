//! Covering systems of polynomial congruences over finite fields.
//!
//! A covering system over F_q[x] is a finite list of congruences
//! f ≡ r_i (mod m_i) whose solution sets jointly exhaust the polynomials
//! under consideration.  This crate provides the arithmetic needed to study
//! such systems exactly — field and polynomial operations, factorization,
//! CRT — together with coverage deciders, a normalization pass that reduces
//! any incomplete system to one with irreducible moduli, rational counting
//! bounds on the polynomials missed by an incomplete system, and
//! constructions and exhaustive searches around the extremal examples.

pub mod bounds;
pub mod construct;
pub mod covering;
pub mod crt;
pub mod error;
pub mod factor;
pub mod field;
pub mod normalize;
pub mod poly;

pub use bounds::{
    am_gm_upper_bound, cumulative_irreducible_bound, degree_gap_check, exchange_step_check,
    large_n_threshold_check, max_coverage_upper, nth_irreducible_degree, uncovered_lower_bound,
    worst_case_product, BoundCheck, BoundInstance, ExchangeCheck, ThresholdCheck,
};
pub use construct::{
    build_sharp_system, conjecture_search, degree_threshold, theorem_exhaustive_check,
    verify_sharp, SearchReport, SharpSystem,
};
pub use covering::{
    intersection_count, ClassSet, Congruence, CongruenceSystem, CoverageReport, ExactCheck,
    DEFAULT_CLASS_CAP, DEFAULT_WITNESS_CAP,
};
pub use crt::crt_combine;
pub use error::{Error, Result};
pub use factor::{
    count_irreducible, count_irreducible_order, count_irreducible_upto, factor, is_irreducible,
    irreducibles_of_degree, irreducibles_up_to, mobius, monic_polys_of_degree, Factorization,
};
pub use field::{is_prime, prime_power_parts, FieldDesc, FieldElem};
pub use normalize::{normalize_system, NormalizedSystem};
pub use poly::Poly;
