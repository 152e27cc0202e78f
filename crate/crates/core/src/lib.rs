//! Galois width of finite permutation groups, of integer polynomials and of
//! one-parameter polynomial families.
//!
//! The width of a group is the least possible maximum index along a maximal
//! subgroup chain; it equals the largest minimal faithful permutation degree
//! among its composition factors. Polynomials are handled by certifying their
//! Galois group from Frobenius cycle types, families by numerical monodromy.
//!
//! ```
//! use galois_width::expr::{evaluate, parse};
//! use galois_width::poly::{parse_polynomial, width_of_polynomial};
//! use galois_width::width::width;
//!
//! let g = evaluate(&parse("wr(S(2),S(3))").unwrap()).unwrap();
//! assert_eq!(width(&g).unwrap().width, 3);
//!
//! let f = parse_polynomial("x^5 - x - 1").unwrap();
//! assert_eq!(width_of_polynomial(&f, 1000).unwrap().width, 5);
//! ```

pub mod cli;
pub mod error;
pub mod expr;
pub mod monodromy;
pub mod perm;
pub mod poly;
pub mod primes;
pub mod structure;
pub mod width;

pub use error::{Error, Result};
pub use perm::{BlockSystem, PermGroup, Permutation};
