//! Integer polynomials: exact arithmetic, resultants, factorization modulo
//! primes and over ℚ, and Galois group certification.

mod dense;
mod fp;
mod galois;
mod parse;
mod resultant;
mod zfactor;

pub use dense::{IntPolynomial, Poly, Ring};
pub use fp::{factor_mod_p, product_mod_p, Fp, FpPoly, ModPFactorization};
pub use galois::{
    certify_group, is_square, width_of_certificate, width_of_polynomial, CycleTypeEvidence, GaloisCertificate, GroupClaim,
    Witnesses, DEFAULT_PRIME_BUDGET,
};
pub use parse::{parse_coefficients_json, parse_family, parse_polynomial, parse_polynomial_in, MAX_EXPONENT};
pub use resultant::{discriminant, resultant};
pub use zfactor::{factor_squarefree, possible_factor_degrees};
