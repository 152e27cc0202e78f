//! Galois groups of integer polynomials from Frobenius cycle types.
//!
//! Only `S_n` and `A_n` are ever certified. The criteria used, for an
//! irreducible `f` of degree `n` whose group `G` is then transitive:
//!
//! * a cycle type with a prime part `q > n/2` makes `G` primitive;
//! * a cycle type with one part `2` and every other part odd gives a
//!   transposition, and a primitive group with a transposition is `S_n`;
//! * a prime part `q` occurring once, with no other part divisible by `q`,
//!   gives a `q`-cycle; for `q = 3` or `q ≤ n − 3` a primitive `G` then
//!   contains `A_n`, and the discriminant decides between `A_n` and `S_n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::fp::factor_mod_p;
use super::resultant::discriminant;
use super::zfactor::{factor_squarefree_with, possible_factor_degrees};
use super::IntPolynomial;
use crate::error::{Error, Result};
use crate::expr::GroupExpr;
use crate::primes::{factor_u64, is_prime, Primes};
use crate::width::{width_by_factors, Confidence, WidthReport};

pub const DEFAULT_PRIME_BUDGET: usize = 10_000;

/// Good primes scanned before irreducibility is settled by factoring.
const IRREDUCIBILITY_SCAN: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleTypeEvidence {
    pub prime: u64,
    /// Degrees of the irreducible factors mod `prime`, ascending.
    pub factor_degrees: Vec<usize>,
}

impl fmt::Display for CycleTypeEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factor_degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "p = {}: {{{}}}", self.prime, parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "degree")]
pub enum GroupClaim {
    Symmetric(usize),
    Alternating(usize),
    Undetermined,
}

impl fmt::Display for GroupClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupClaim::Symmetric(n) => write!(f, "S({n})"),
            GroupClaim::Alternating(n) => write!(f, "A({n})"),
            GroupClaim::Undetermined => f.write_str("undetermined"),
        }
    }
}

/// Primes whose cycle types triggered each criterion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub primitive: Option<u64>,
    pub transposition: Option<u64>,
    pub prime_cycle: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisCertificate {
    pub degree: usize,
    pub group_claim: GroupClaim,
    /// One entry per good prime scanned, ascending.
    pub evidence: Vec<CycleTypeEvidence>,
    pub discriminant: BigInt,
    pub discriminant_square: bool,
    pub irreducible_mod_p_witness: Option<u64>,
    pub witnesses: Witnesses,
}

impl GaloisCertificate {
    /// Distinct cycle types with the first prime and the number of primes
    /// showing each.
    pub fn cycle_type_summary(&self) -> Vec<(Vec<usize>, u64, usize)> {
        let mut out: Vec<(Vec<usize>, u64, usize)> = Vec::new();
        for e in &self.evidence {
            match out.iter_mut().find(|(t, _, _)| *t == e.factor_degrees) {
                Some(entry) => entry.2 += 1,
                None => out.push((e.factor_degrees.clone(), e.prime, 1)),
            }
        }
        out
    }
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

#[derive(Default)]
struct Tracker {
    witnesses: Witnesses,
    irreducible_witness: Option<u64>,
}

impl Tracker {
    fn observe(&mut self, n: usize, prime: u64, degrees: &[usize]) {
        if degrees == [n] && self.irreducible_witness.is_none() {
            self.irreducible_witness = Some(prime);
        }
        for &q in degrees {
            let q64 = q as u64;
            if !is_prime(q64) {
                continue;
            }
            if 2 * q > n && self.witnesses.primitive.is_none() {
                self.witnesses.primitive = Some(prime);
            }
            let isolated = degrees.iter().filter(|&&d| d == q).count() == 1 && degrees.iter().all(|&d| d == q || d % q != 0);
            if isolated && (q == 3 || q + 3 <= n) && self.witnesses.prime_cycle.is_none() {
                self.witnesses.prime_cycle = Some(prime);
            }
        }
        let twos = degrees.iter().filter(|&&d| d == 2).count();
        if twos == 1 && degrees.iter().all(|&d| d == 2 || d % 2 == 1) && self.witnesses.transposition.is_none() {
            self.witnesses.transposition = Some(prime);
        }
    }

    fn claim(&self, n: usize, irreducible: bool, square: bool) -> GroupClaim {
        if !irreducible {
            return GroupClaim::Undetermined;
        }
        match n {
            1 | 2 => return GroupClaim::Symmetric(n),
            3 if square => return GroupClaim::Alternating(3),
            3 => return GroupClaim::Symmetric(3),
            _ => {}
        }
        let w = &self.witnesses;
        if w.primitive.is_none() {
            return GroupClaim::Undetermined;
        }
        if w.transposition.is_some() {
            return GroupClaim::Symmetric(n);
        }
        if w.prime_cycle.is_some() {
            return if square { GroupClaim::Alternating(n) } else { GroupClaim::Symmetric(n) };
        }
        GroupClaim::Undetermined
    }
}

/// Certifies `Gal(f) ∈ {S_n, A_n}` from at most `prime_budget` primes of
/// good reduction.
pub fn certify_group(f: &IntPolynomial, prime_budget: usize) -> Result<GaloisCertificate> {
    if f.deg() == 0 {
        return Err(Error::DegenerateInput);
    }
    let f = f.primitive_part();
    let n = f.deg();
    let disc = discriminant(&f);
    if disc.is_zero() {
        let repeated = f.gcd(&f.derivative());
        return Err(Error::NotSquarefree { repeated: repeated.to_string() });
    }
    let square = is_square(&disc);
    let bad = f.lc() * &disc;
    let mut tracker = Tracker::default();
    let mut evidence = Vec::new();
    let mut irreducible = n == 1;
    let mut patterns = Vec::new();
    for p in Primes::new() {
        if evidence.len() >= prime_budget || tracker.claim(n, irreducible, square) != GroupClaim::Undetermined {
            break;
        }
        if (&bad % BigInt::from(p)).is_zero() {
            continue;
        }
        let r = factor_mod_p(&f, p)?;
        debug_assert!(r.squarefree, "p does not divide the discriminant");
        let degrees = r.degrees();
        tracker.observe(n, p, &degrees);
        irreducible |= tracker.irreducible_witness.is_some();
        patterns.push(degrees.clone());
        evidence.push(CycleTypeEvidence { prime: p, factor_degrees: degrees });
        if !irreducible && evidence.len() == IRREDUCIBILITY_SCAN.min(prime_budget) {
            irreducible = settle_irreducibility(&f, &patterns)?;
        }
    }
    if !irreducible {
        irreducible = settle_irreducibility(&f, &patterns)?;
    }
    Ok(GaloisCertificate {
        degree: n,
        group_claim: tracker.claim(n, irreducible, square),
        evidence,
        discriminant: disc,
        discriminant_square: square,
        irreducible_mod_p_witness: tracker.irreducible_witness,
        witnesses: tracker.witnesses,
    })
}

/// True if `f` is irreducible; a reducible `f` is an error listing its factors.
fn settle_irreducibility(f: &IntPolynomial, patterns: &[Vec<usize>]) -> Result<bool> {
    let n = f.deg();
    let allowed = possible_factor_degrees(n, patterns);
    if (1..n).all(|d| !allowed[d]) {
        return Ok(true);
    }
    let factors = factor_squarefree_with(f, patterns)?;
    if factors.len() == 1 {
        Ok(true)
    } else {
        Err(Error::Reducible { factors: factors.iter().map(|g| format!("({g})")).collect() })
    }
}

/// Width of a certificate's group; undetermined groups give a lower bound.
pub fn width_of_certificate(cert: &GaloisCertificate) -> WidthReport {
    let expr = match cert.group_claim {
        GroupClaim::Symmetric(n) => Some(GroupExpr::Symmetric(n as u64)),
        GroupClaim::Alternating(n) => Some(GroupExpr::Alternating(n as u64)),
        GroupClaim::Undetermined => None,
    };
    if let Some(factors) = expr.and_then(|e| e.symbolic_factors()) {
        let mut r = width_by_factors(&factors);
        r.notes.push(format!("Galois group certified as {}", cert.group_claim));
        return r;
    }
    // every prime dividing |G| needs a composition factor of at least that degree
    let mut primes: Vec<u64> = factor_u64(cert.degree as u64);
    for e in &cert.evidence {
        for &d in &e.factor_degrees {
            primes.extend(factor_u64(d as u64));
        }
    }
    let bound = primes.into_iter().max().unwrap_or(1);
    let mut r = WidthReport::trivial();
    r.width = bound;
    r.confidence = Confidence::HeuristicLowerBound;
    r.notes.push(format!("Galois group not certified from {} primes; width is at least {bound}", cert.evidence.len()));
    r
}

pub fn width_of_polynomial(f: &IntPolynomial, prime_budget: usize) -> Result<WidthReport> {
    Ok(width_of_certificate(&certify_group(f, prime_budget)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn cert(text: &str) -> GaloisCertificate {
        certify_group(&parse_polynomial(text).unwrap(), DEFAULT_PRIME_BUDGET).unwrap()
    }

    #[test]
    fn symmetric_and_alternating() {
        assert_eq!(cert("x^3 - 2").group_claim, GroupClaim::Symmetric(3));
        assert_eq!(cert("x^3 - 3x + 1").group_claim, GroupClaim::Alternating(3));
        assert_eq!(cert("x^2 - 2").group_claim, GroupClaim::Symmetric(2));
        assert_eq!(cert("x^5 - x - 1").group_claim, GroupClaim::Symmetric(5));
        assert_eq!(cert("x^4 - x - 1").group_claim, GroupClaim::Symmetric(4));
        assert_eq!(cert("x^6 - 3x - 1").group_claim, GroupClaim::Symmetric(6));
        assert_eq!(cert("3x - 7").group_claim, GroupClaim::Symmetric(1));
        // x^4 + 8x + 12 has group A_4
        let a4 = cert("x^4 + 8x + 12");
        assert_eq!(a4.group_claim, GroupClaim::Alternating(4));
        assert!(a4.discriminant_square);
        // x^5 + 20x + 16 has group A_5
        assert_eq!(cert("x^5 + 20x + 16").group_claim, GroupClaim::Alternating(5));
    }

    #[test]
    fn sextic_from_a_linear_model() {
        let f = parse_polynomial("[5670, 170397, 434717, -2105058, -2310180, 4127767, 1126944]").unwrap();
        let c = certify_group(&f, DEFAULT_PRIME_BUDGET).unwrap();
        assert_eq!(c.group_claim, GroupClaim::Symmetric(6));
        assert!(!c.discriminant_square);
        let w = width_of_certificate(&c);
        assert_eq!((w.width, w.confidence), (6, Confidence::Proved));
    }

    #[test]
    fn solvable_groups_stay_undetermined() {
        let c = cert("x^4 + x^3 + x^2 + x + 1");
        assert_eq!(c.group_claim, GroupClaim::Undetermined);
        assert!(c.evidence.iter().all(|e| [vec![4], vec![2, 2], vec![1, 1, 1, 1]].contains(&e.factor_degrees)));
        let w = width_of_certificate(&c);
        assert_eq!((w.width, w.confidence), (2, Confidence::HeuristicLowerBound));
        // x^4 + 1 is irreducible without irreducible reductions
        let c = certify_group(&parse_polynomial("x^4 + 1").unwrap(), 200).unwrap();
        assert_eq!(c.group_claim, GroupClaim::Undetermined);
        assert!(c.irreducible_mod_p_witness.is_none());
        assert_eq!(c.evidence.len(), 200);
    }

    #[test]
    fn widths() {
        let w = width_of_polynomial(&parse_polynomial("x^2 - 2").unwrap(), 100).unwrap();
        assert_eq!((w.width, w.confidence), (2, Confidence::Proved));
        let w = width_of_polynomial(&parse_polynomial("x^4 - x - 1").unwrap(), 100).unwrap();
        assert_eq!(w.width, 3);
        let w = width_of_polynomial(&parse_polynomial("x^3 - 3x + 1").unwrap(), 100).unwrap();
        assert_eq!((w.width, w.confidence), (3, Confidence::Proved));
    }

    #[test]
    fn rejections() {
        let e = certify_group(&parse_polynomial("x^4 - 1").unwrap(), 100).unwrap_err();
        match e {
            Error::Reducible { factors } => assert_eq!(factors, ["(x - 1)", "(x + 1)", "(x^2 + 1)"]),
            other => panic!("{other:?}"),
        }
        let e = certify_group(&parse_polynomial("(x - 1)^2 (x + 3)").unwrap(), 100).unwrap_err();
        assert_eq!(e, Error::NotSquarefree { repeated: "x - 1".into() });
        assert_eq!(certify_group(&parse_polynomial("5").unwrap(), 100), Err(Error::DegenerateInput));
    }

    #[test]
    fn square_detection() {
        assert!(is_square(&BigInt::from(0)));
        assert!(is_square(&BigInt::from(144)));
        assert!(!is_square(&BigInt::from(-4)));
        assert!(!is_square(&BigInt::from(145)));
    }
}
