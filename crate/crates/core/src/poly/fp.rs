//! Polynomials over prime fields and their factorization.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IntPolynomial;
use crate::error::{Error, Result};

/// Coefficients in `0..p`, ascending, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub coeffs: Vec<u64>,
}

/// Arithmetic in `F_p[x]` for a fixed prime `p`.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { coeffs }
    }

    pub fn one() -> Self {
        FpPoly { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        FpPoly { coeffs: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Lifts to integer coefficients in `0..p`.
    pub fn to_int(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn addm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    fn subm(&self, a: u64, b: u64) -> u64 {
        self.addm(a, self.p - b % self.p)
    }

    fn powm(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulm(acc, b);
            }
            b = self.mulm(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.powm(a, self.p - 2)
    }

    pub fn reduce(&self, f: &IntPolynomial) -> FpPoly {
        let m = BigInt::from(self.p);
        FpPoly::new(f.coeffs().iter().map(|c| c.mod_floor(&m).to_u64().expect("residue fits")).collect())
    }

    pub fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        FpPoly::new((0..n).map(|i| self.addm(*a.coeffs.get(i).unwrap_or(&0), *b.coeffs.get(i).unwrap_or(&0))).collect())
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        FpPoly::new((0..n).map(|i| self.subm(*a.coeffs.get(i).unwrap_or(&0), *b.coeffs.get(i).unwrap_or(&0))).collect())
    }

    pub fn scale(&self, a: &FpPoly, c: u64) -> FpPoly {
        FpPoly::new(a.coeffs.iter().map(|&x| self.mulm(x, c)).collect())
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.is_zero() || b.is_zero() {
            return FpPoly::new(Vec::new());
        }
        let mut out = vec![0u128; a.coeffs.len() + b.coeffs.len() - 1];
        let p = self.p as u128;
        for (i, &x) in a.coeffs.iter().enumerate() {
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u128 * y as u128) % p;
            }
        }
        FpPoly::new(out.into_iter().map(|c| c as u64).collect())
    }

    /// Quotient and remainder; `b` nonzero.
    pub fn divrem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let db = b.deg();
        let inv = self.inv(b.lc());
        let mut r = a.coeffs.clone();
        if r.len() < b.coeffs.len() {
            return (FpPoly::new(Vec::new()), a.clone());
        }
        let mut q = vec![0u64; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mulm(r[i + db], inv);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[i + j] = self.subm(r[i + j], self.mulm(c, bj));
            }
        }
        r.truncate(db);
        (FpPoly::new(q), FpPoly::new(r))
    }

    pub fn rem(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &FpPoly) -> FpPoly {
        if a.is_zero() {
            return a.clone();
        }
        self.scale(a, self.inv(a.lc()))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s·a + t·b = g` monic.
    pub fn ext_gcd(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let zero = FpPoly::new(Vec::new());
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (FpPoly::one(), zero.clone());
        let (mut t0, mut t1) = (zero, FpPoly::one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let c = self.inv(r0.lc());
        (self.scale(&r0, c), self.scale(&s0, c), self.scale(&t0, c))
    }

    pub fn derivative(&self, a: &FpPoly) -> FpPoly {
        FpPoly::new(a.coeffs.iter().enumerate().skip(1).map(|(i, &c)| self.mulm(c, i as u64 % self.p)).collect())
    }

    /// `a^e mod m` for a big exponent.
    pub fn powmod(&self, a: &FpPoly, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = self.rem(&FpPoly::one(), m);
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        acc
    }

    /// `g` with `g^p = a`, for `a` with derivative zero.
    fn pth_root(&self, a: &FpPoly) -> FpPoly {
        let p = self.p as usize;
        // in F_p the Frobenius is the identity on coefficients
        FpPoly::new(a.coeffs.iter().step_by(p).copied().collect())
    }

    /// Squarefree parts of a monic polynomial as `(part, multiplicity)`. An
    /// irreducible factor whose multiplicity exceeds `p` may occur in two parts.
    pub fn squarefree_decomposition(&self, f: &FpPoly) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        self.sqf_into(&self.monic(f), 1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    fn sqf_into(&self, f: &FpPoly, scale: usize, out: &mut Vec<(FpPoly, usize)>) {
        if f.deg() == 0 {
            return;
        }
        let df = self.derivative(f);
        let mut c = self.gcd(f, &df);
        let mut w = self.divrem(f, &c).0;
        let mut i = 1;
        while w.deg() > 0 {
            let y = self.gcd(&w, &c);
            let fac = self.divrem(&w, &y).0;
            if fac.deg() > 0 {
                out.push((fac, i * scale));
            }
            w = y;
            c = self.divrem(&c, &w).0;
            i += 1;
        }
        if c.deg() > 0 {
            let root = self.pth_root(&c);
            self.sqf_into(&root, scale * self.p as usize, out);
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self, f: &FpPoly) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x = FpPoly::x();
        let p = BigUint::from(self.p);
        let mut h = self.rem(&x, &f);
        let mut d = 1;
        while 2 * d <= f.deg() {
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if g.deg() > 0 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.deg() > 0 {
            let deg = f.deg();
            out.push((f, deg));
        }
        out
    }

    /// Splits a monic squarefree product of irreducibles of degree `d`.
    pub fn equal_degree(&self, f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        if f.deg() == d {
            return vec![f.clone()];
        }
        let n = f.deg();
        let exponent = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a = FpPoly::new((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.deg() == 0 {
                continue;
            }
            let b = if self.p == 2 {
                // trace a + a² + … + a^(2^(d−1)) lands in F_2 on every component
                let mut t = self.rem(&a, f);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = self.rem(&self.mul(&t, &t), f);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                self.sub(&self.powmod(&a, &exponent, f), &FpPoly::one())
            };
            let g = self.gcd(f, &b);
            if g.deg() > 0 && g.deg() < n {
                let rest = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&rest, d, rng));
                return out;
            }
        }
    }
}

/// Irreducible factors of `f mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPFactorization {
    pub prime: u64,
    /// Distinct monic irreducible factors of the radical, sorted.
    pub factors: Vec<FpPoly>,
    /// True iff `f mod p` has no repeated factor.
    pub squarefree: bool,
}

impl ModPFactorization {
    /// Degrees of the factors, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.factors.iter().map(FpPoly::deg).collect();
        d.sort_unstable();
        d
    }
}

/// Seed from the polynomial and the prime, so that runs repeat exactly.
fn seed_for(f: &IntPolynomial, p: u64) -> u64 {
    // FNV-1a over the decimal coefficients
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let text = format!("{p}:{:?}", f.coeffs());
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Factors the squarefree part of `f mod p`.
pub fn factor_mod_p(f: &IntPolynomial, p: u64) -> Result<ModPFactorization> {
    if f.deg() == 0 || f.is_zero() {
        return Err(Error::DegenerateInput);
    }
    let fp = Fp::new(p);
    if (f.lc() % BigInt::from(p)).is_zero() {
        return Err(Error::BadReduction { prime: p });
    }
    let g = fp.monic(&fp.reduce(f));
    let parts = fp.squarefree_decomposition(&g);
    let squarefree = parts.iter().all(|(_, m)| *m == 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(f, p));
    let mut factors = Vec::new();
    for (part, _) in &parts {
        for (block, d) in fp.distinct_degree(part) {
            factors.extend(fp.equal_degree(&block, d, &mut rng));
        }
    }
    factors.sort_by(|a, b| (a.deg(), &a.coeffs).cmp(&(b.deg(), &b.coeffs)));
    factors.dedup();
    Ok(ModPFactorization { prime: p, factors, squarefree })
}

/// Product of monic factors, mod `p`.
pub fn product_mod_p(factors: &[FpPoly], p: u64) -> FpPoly {
    let fp = Fp::new(p);
    factors.iter().fold(FpPoly::one(), |acc, g| fp.mul(&acc, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::discriminant;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn small_examples() {
        let r = factor_mod_p(&p(&[1, 0, 1]), 5).unwrap();
        assert_eq!(r.factors, [FpPoly::new(vec![2, 1]), FpPoly::new(vec![3, 1])]);
        let r = factor_mod_p(&p(&[1, 0, 1]), 3).unwrap();
        assert_eq!(r.factors, [FpPoly::new(vec![1, 0, 1])]);
        // 2 is not a cube mod 7, and has a unique cube root mod 5
        assert_eq!(factor_mod_p(&p(&[-2, 0, 0, 1]), 7).unwrap().degrees(), [3]);
        let r = factor_mod_p(&p(&[-2, 0, 0, 1]), 5).unwrap();
        assert_eq!(r.degrees(), [1, 2]);
        assert!(r.squarefree);
        assert!(matches!(factor_mod_p(&p(&[1, 0, 3]), 3), Err(Error::BadReduction { prime: 3 })));
    }

    #[test]
    fn repeated_factors_and_characteristic_roots() {
        // (x + 1)² mod 3
        let r = factor_mod_p(&p(&[1, 2, 1]), 3).unwrap();
        assert!(!r.squarefree);
        assert_eq!(r.factors, [FpPoly::new(vec![1, 1])]);
        // x⁴ + 1 = (x + 1)⁴ mod 2
        let r = factor_mod_p(&p(&[1, 0, 0, 0, 1]), 2).unwrap();
        assert!(!r.squarefree);
        assert_eq!(r.factors, [FpPoly::new(vec![1, 1])]);
        // x³ − x = x(x−1)(x+1) mod 3 is squarefree; x³ + 1 = (x+1)³ mod 3 is not
        assert_eq!(factor_mod_p(&p(&[0, -1, 0, 1]), 3).unwrap().degrees(), [1, 1, 1]);
        assert!(!factor_mod_p(&p(&[1, 0, 0, 1]), 3).unwrap().squarefree);
    }

    #[test]
    fn characteristic_two_splitting() {
        // x⁴ + x + 1 is irreducible mod 2; x^15 − 1 has factors of degrees 1, 2, 4, 4, 4
        assert_eq!(factor_mod_p(&p(&[1, 1, 0, 0, 1]), 2).unwrap().degrees(), [4]);
        let mut c = vec![0i64; 16];
        c[0] = -1;
        c[15] = 1;
        assert_eq!(factor_mod_p(&p(&c), 2).unwrap().degrees(), [1, 2, 4, 4, 4]);
    }

    fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-100i64..=100, 3..=7).prop_map(|mut c| {
            if *c.last().unwrap() == 0 {
                *c.last_mut().unwrap() = 1;
            }
            IntPolynomial::from_i64(&c)
        })
    }

    const SMALL_PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn discriminant_detects_repeated_factors(f in poly_strategy(), i in 0usize..10) {
            let p = SMALL_PRIMES[i];
            prop_assume!(!(f.lc() % BigInt::from(p)).is_zero());
            let r = factor_mod_p(&f, p).unwrap();
            let d = discriminant(&f) % BigInt::from(p);
            prop_assert_eq!(d.is_zero(), !r.squarefree);
        }

        #[test]
        fn factors_multiply_back(f in poly_strategy(), i in 0usize..10) {
            let p = SMALL_PRIMES[i];
            prop_assume!(!(f.lc() % BigInt::from(p)).is_zero());
            let r = factor_mod_p(&f, p).unwrap();
            let fp = Fp::new(p);
            let monic = fp.monic(&fp.reduce(&f));
            let prod = product_mod_p(&r.factors, p);
            if r.squarefree {
                prop_assert_eq!(prod, monic);
                prop_assert_eq!(r.degrees().iter().sum::<usize>(), f.deg());
            } else {
                // the product is the radical: it divides f and f divides a power of it
                prop_assert!(fp.rem(&monic, &prod).is_zero());
                let pow = (0..f.deg()).fold(FpPoly::one(), |acc, _| fp.mul(&acc, &prod));
                prop_assert!(fp.rem(&pow, &monic).is_zero());
            }
            for g in &r.factors {
                prop_assert_eq!(fp.distinct_degree(g), vec![(g.clone(), g.deg())]);
                prop_assert_eq!(g.lc(), 1);
            }
        }
    }
}
