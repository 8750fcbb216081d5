//! Major index statistics over pattern-avoiding permutations.
//!
//! Counts `M_n^m(Π)` of permutations of length `n` with major index `m`
//! avoiding every pattern in `Π`, by exhaustive generation and by exact
//! core/padding-profile counting; the injection behind column monotonicity
//! for single patterns; and degrees of the polynomials the columns
//! eventually follow.

pub mod asymptotics;
pub mod decomposition;
pub mod enumeration;
pub mod error;
pub mod monotonicity;
pub mod oeis;
pub mod perm;
pub mod poly;
pub mod scalar;
pub mod table;

pub use asymptotics::{
    bounded_degree_criterion, degree_report, detect_degree, limit_probability, predicted_degree, s_k, tri_floor,
    witness_core_mg2, witness_core_theorem, DegreeReport, Detection, Prediction, Rule, SeriesSource, Verdict,
};
pub use decomposition::{cap_profile, co_layered, compose, decompose, CoreDecomposition, PaddingProfile};
pub use enumeration::{
    admissible_units, core_polynomial, core_set, count_avoiders, count_by_core, eventual_polynomial,
    generate_avoiders, maj_table, Algorithm, CoreSet, EventualPolynomial, PatternSet, SearchConfig,
};
pub use error::{Error, Result};
pub use monotonicity::{monotone_injection, verify_monotonicity, InjectionCase, MonotonicityReport};
pub use perm::{order_pattern, set_magnitude, DescentSet, Magnitude, Permutation};
pub use poly::Polynomial;
pub use table::MajTable;

pub type Rational = num_rational::BigRational;
pub type RationalPolynomial = Polynomial<Rational>;
/// Table with 128-bit counts; overflow is reported, not wrapped.
pub type Table = MajTable<u128>;
pub type BigTable = MajTable<num_bigint::BigUint>;
