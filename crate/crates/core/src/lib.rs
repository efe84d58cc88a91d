//! Additive structure of even perfect numbers.
//!
//! An even perfect number `n = 2^(p-1) * (2^p - 1)` has exactly `2p - 1`
//! proper divisors, and every `1 <= m <= n` is a sum of distinct ones among
//! them. This crate builds those numbers, produces the canonical
//! decomposition of any `m`, counts every representation by direct search,
//! and checks the same "every m <= n is reachable" property for arbitrary
//! integers.
//!
//! ```
//! use num_bigint::BigUint;
//! use perfect_sums::{decompose, PerfectNumber};
//!
//! let six = PerfectNumber::new(2).unwrap();
//! let d = decompose(&BigUint::from(5u32), &six).unwrap();
//! let parts: Vec<String> = d.subset.divisors(&six).iter().map(|v| v.to_string()).collect();
//! assert_eq!(parts, ["2", "3"]);
//! ```

mod error;

pub mod decompose;
pub mod mersenne;
pub mod practical;
pub mod representations;

pub use decompose::{decompose, split_k_r, subset_value, Decomposition, DivisorSubset};
pub use error::{Error, Result};
pub use mersenne::{lucas_lehmer, make_perfect, mersenne_exponents, sigma, MersenneExponent, PerfectNumber};
pub use practical::{check_panrepresentable, is_perfect, represent, PanChecker, PanReport};
pub use representations::{
    alternate_representation, count_representations, predict_count, total_subsets,
    verify_counting_identity, RepReport, RepresentationCounter, Strategy,
};
