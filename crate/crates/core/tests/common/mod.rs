#![allow(dead_code)]

use galois_width::expr::{evaluate, parse};
use galois_width::PermGroup;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Groups of order at most 500 spanning the constructors.
pub const CORPUS: &[&str] = &[
    "C(1)",
    "C(2)",
    "C(5)",
    "C(12)",
    "C(2) x C(3)",
    "C(2) x C(2) x C(2)",
    "C(4) x C(6)",
    "D(4)",
    "D(5)",
    "D(6)",
    "D(10)",
    "S(3)",
    "S(4)",
    "A(4)",
    "S(5)",
    "A(5)",
    "A(6)",
    "S(3) x C(4)",
    "S(3) x S(3)",
    "A(4) x C(3)",
    "wr(S(2),S(2))",
    "wr(S(2),S(3))",
    "wr(C(3),C(2))",
    "wr(S(3),C(2))",
    "wr(S(2),S(3)) & alt",
    "onsets(S(4),2)",
    "onsets(S(5),2)",
    "onsets(A(5),2)",
];

/// Solvable members of the corpus.
pub const SOLVABLE: &[&str] = &[
    "C(2)",
    "C(12)",
    "C(4) x C(6)",
    "D(5)",
    "D(10)",
    "S(4)",
    "A(4) x C(3)",
    "S(3) x S(3)",
    "wr(S(2),S(3))",
    "wr(S(3),C(2))",
    "onsets(S(4),2)",
];

/// `(G, H)` pairs for `wr(G, H)`.
pub const WREATH_PAIRS: &[(&str, &str)] =
    &[("S(2)", "S(3)"), ("C(3)", "C(2)"), ("S(3)", "S(2)"), ("A(4)", "C(2)"), ("C(2)", "A(4)"), ("C(5)", "S(2)")];

pub fn group(text: &str) -> PermGroup {
    evaluate(&parse(text).unwrap_or_else(|e| panic!("{text}: {e}"))).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn largest_prime(n: &BigUint) -> u64 {
    let n = n.to_u64().expect("small order");
    galois_width::primes::factor_u64(n).into_iter().max().unwrap_or(1)
}
