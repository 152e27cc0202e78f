//! Factorization over the integers: Hensel lifting of a modular
//! factorization followed by recombination of lifted factors.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp::{factor_mod_p, Fp, FpPoly};
use super::IntPolynomial;
use crate::error::{Error, Result};
use crate::primes::Primes;

/// Candidate primes examined before choosing one to lift from.
const PRIME_TRIALS: usize = 10;

/// Degrees `d` such that every factorization pattern allows a factor of
/// degree `d`; index `d` of the result, `0..=n`.
pub fn possible_factor_degrees(n: usize, patterns: &[Vec<usize>]) -> Vec<bool> {
    let mut allowed = vec![true; n + 1];
    for pattern in patterns {
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for &d in pattern {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for (a, s) in allowed.iter_mut().zip(sums) {
            *a &= s;
        }
    }
    allowed
}

fn mod_poly(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Coefficients reduced into `(−m/2, m/2]`.
fn symmetric(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half: BigInt = m / 2;
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `f ≡ lc · ∏ g_i (mod p)`, with `g_i` monic and pairwise coprime,
/// to monic `G_i` with `f ≡ lc · ∏ G_i (mod p^k)`.
fn hensel_lift(f: &IntPolynomial, p: u64, factors: &[FpPoly], k: u32) -> Vec<IntPolynomial> {
    let fp = Fp::new(p);
    let pb = BigInt::from(p);
    let modulus = pb.pow(k);
    let lc_inv = f.lc().extended_gcd(&modulus).x.mod_floor(&modulus);
    let target = mod_poly(&f.scale(&lc_inv), &modulus);
    let target_p = fp.reduce(&target);
    let cofactor_inverses: Vec<FpPoly> = factors
        .iter()
        .map(|g| {
            let (others, _) = fp.divrem(&target_p, g);
            let (unit, s, _) = fp.ext_gcd(&fp.rem(&others, g), g);
            debug_assert!(unit.is_one(), "modular factors must be coprime");
            fp.rem(&s, g)
        })
        .collect();
    let mut lifted: Vec<IntPolynomial> = factors.iter().map(FpPoly::to_int).collect();
    let mut pk = pb.clone();
    for _ in 1..k {
        let next = &pk * &pb;
        let prod = lifted.iter().fold(IntPolynomial::constant(BigInt::one()), |acc, g| mod_poly(&acc.mul(g), &next));
        let err = mod_poly(&target.sub(&prod), &next).div_scalar(&pk);
        let e = fp.reduce(&err);
        for (g, (gp, s)) in lifted.iter_mut().zip(factors.iter().zip(&cofactor_inverses)) {
            let delta = fp.rem(&fp.mul(&e, s), gp);
            *g = g.add(&delta.to_int().scale(&pk));
        }
        pk = next;
    }
    lifted
}

/// `p^k` must exceed twice any coefficient of `lc(f)/lc(g) · g` for a factor
/// `g` of `f`.
fn coefficient_bound(f: &IntPolynomial) -> BigInt {
    let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = BigInt::from(BigUint::try_from(norm_sq).expect("nonnegative").sqrt()) + 1;
    BigInt::from(2) * f.lc().abs() * (BigInt::one() << f.deg()) * norm
}

/// Irreducible factors over ℚ of a squarefree integer polynomial, as
/// primitive polynomials with positive leading coefficient, sorted by degree.
pub fn factor_squarefree(f: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    factor_squarefree_with(f, &[])
}

/// As [`factor_squarefree`], with factorization patterns already known to
/// constrain the degrees of true factors.
pub fn factor_squarefree_with(f: &IntPolynomial, patterns: &[Vec<usize>]) -> Result<Vec<IntPolynomial>> {
    if f.deg() == 0 {
        return Err(Error::DegenerateInput);
    }
    let f = f.primitive_part();
    let n = f.deg();
    if n == 1 {
        return Ok(vec![f]);
    }
    if f.coeff(0).is_zero() {
        let mut out = vec![IntPolynomial::x()];
        let rest = f.exact_quotient(&IntPolynomial::x()).expect("x divides f");
        if rest.deg() > 0 {
            out.extend(factor_squarefree_with(&rest, &[])?);
        }
        out.sort_by_key(IntPolynomial::deg);
        return Ok(out);
    }
    let mut patterns = patterns.to_vec();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in Primes::new() {
        if tried == PRIME_TRIALS {
            break;
        }
        if (f.lc() % BigInt::from(p)).is_zero() {
            continue;
        }
        let r = factor_mod_p(&f, p)?;
        if !r.squarefree {
            continue;
        }
        tried += 1;
        patterns.push(r.degrees());
        if r.factors.len() == 1 {
            return Ok(vec![f]);
        }
        if best.as_ref().is_none_or(|(_, b)| r.factors.len() < b.len()) {
            best = Some((p, r.factors));
        }
    }
    let allowed = possible_factor_degrees(n, &patterns);
    if (1..n).all(|d| !allowed[d]) {
        return Ok(vec![f]);
    }
    let (p, modular) = best.ok_or_else(|| Error::Internal("no prime of good reduction found".into()))?;
    let bound = coefficient_bound(&f);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    while pb.pow(k) <= bound {
        k += 1;
    }
    let modulus = pb.pow(k);
    let lifted = hensel_lift(&f, p, &modular, k);
    Ok(recombine(f, lifted, &modulus, &allowed))
}

fn recombine(mut f: IntPolynomial, mut pool: Vec<IntPolynomial>, modulus: &BigInt, allowed: &[bool]) -> Vec<IntPolynomial> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        for subset in Combinations::new(pool.len(), size) {
            let degree: usize = subset.iter().map(|&i| pool[i].deg()).sum();
            if !allowed[degree] {
                continue;
            }
            let lc = f.lc();
            let candidate = subset.iter().fold(IntPolynomial::constant(lc), |acc, &i| mod_poly(&acc.mul(&pool[i]), modulus));
            let g = symmetric(&candidate, modulus).primitive_part();
            if let Some(q) = f.exact_quotient(&g) {
                hit = Some((subset, g, q));
                break;
            }
        }
        match hit {
            Some((subset, g, q)) => {
                found.push(g);
                f = q.primitive_part();
                for &i in subset.iter().rev() {
                    pool.remove(i);
                }
            }
            None => size += 1,
        }
    }
    found.push(f);
    found.sort_by(|a, b| (a.deg(), a.coeffs()).cmp(&(b.deg(), b.coeffs())));
    found
}

/// `k`-subsets of `0..n` in lexicographic order, as ascending index lists.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, current: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        match (0..k).rev().find(|&i| next[i] < self.n - k + i) {
            Some(i) => {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
            }
            None => self.current = None,
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn product(fs: &[IntPolynomial]) -> IntPolynomial {
        fs.iter().fold(IntPolynomial::constant(BigInt::one()), |a, b| a.mul(b))
    }

    #[test]
    fn known_factorizations() {
        let r = factor_squarefree(&p(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(r, [p(&[-1, 1]), p(&[1, 1]), p(&[1, 0, 1])]);
        // x⁴ + 1 is irreducible over ℚ but splits modulo every prime
        assert_eq!(factor_squarefree(&p(&[1, 0, 0, 0, 1])).unwrap().len(), 1);
        // (2x + 3)(3x² − 5)
        let f = p(&[3, 2]).mul(&p(&[-5, 0, 3]));
        assert_eq!(factor_squarefree(&f).unwrap(), [p(&[3, 2]), p(&[-5, 0, 3])]);
        let x = IntPolynomial::x();
        assert_eq!(factor_squarefree(&x.mul(&p(&[-2, 0, 1]))).unwrap(), [x, p(&[-2, 0, 1])]);
        assert_eq!(factor_squarefree(&p(&[-1, -3, 0, 0, 0, 0, 1])).unwrap().len(), 1);
    }

    #[test]
    fn swinnerton_dyer_quartic() {
        // x⁴ − 10x² + 1, minimal polynomial of √2 + √3
        assert_eq!(factor_squarefree(&p(&[1, 0, -10, 0, 1])).unwrap().len(), 1);
        let f = p(&[1, 0, -10, 0, 1]).mul(&p(&[-3, 0, 0, 1]));
        assert_eq!(factor_squarefree(&f).unwrap().len(), 2);
    }

    #[test]
    fn degree_patterns() {
        let a = possible_factor_degrees(4, &[vec![2, 2], vec![1, 3]]);
        assert_eq!(a, [true, false, false, false, true]);
        let a = possible_factor_degrees(4, &[vec![2, 2]]);
        assert_eq!(a, [true, false, true, false, true]);
    }

    #[test]
    fn combinations() {
        assert_eq!(Combinations::new(4, 2).count(), 6);
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), [Vec::<usize>::new()]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    fn factor_strategy() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-9i64..=9, 2..=4).prop_map(|mut c| {
            if *c.last().unwrap() == 0 {
                *c.last_mut().unwrap() = 1;
            }
            IntPolynomial::from_i64(&c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn product_of_factors(a in factor_strategy(), b in factor_strategy(), c in factor_strategy()) {
            let f = a.mul(&b).mul(&c);
            prop_assume!(!crate::poly::discriminant(&f).is_zero());
            let fs = factor_squarefree(&f).unwrap();
            prop_assert!(fs.len() >= 3);
            prop_assert_eq!(product(&fs), f.primitive_part());
        }
    }
}
