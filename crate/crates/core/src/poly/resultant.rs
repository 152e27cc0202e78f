//! Resultants and discriminants by subresultant pseudo-remainder sequences.

use super::dense::{Poly, Ring};

fn sign<R: Ring>(negative: bool, x: R) -> R {
    if negative {
        x.neg()
    } else {
        x
    }
}

/// `Res(a, b)` over any integral domain, without fractions.
pub fn resultant<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut negative = false;
    if a.deg() < b.deg() {
        negative = a.deg() % 2 == 1 && b.deg() % 2 == 1;
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        return sign(negative, b.lc().pow(a.deg() as u32));
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let delta = (a.deg() - b.deg()) as u32;
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            negative = !negative;
        }
        let r = a.prem(&b);
        a = b;
        if r.is_zero() {
            return R::zero();
        }
        b = r.div_scalar(&g.mul(&h.pow(delta)));
        g = a.lc();
        // h ← g^δ / h^(δ−1)
        h = if delta == 0 { h } else { g.pow(delta).exact_div(&h.pow(delta - 1)) };
        if b.deg() == 0 {
            let da = a.deg() as u32;
            let last = b.lc().pow(da).exact_div(&h.pow(da - 1));
            return sign(negative, last);
        }
    }
}

/// `(−1)^(n(n−1)/2) · Res(f, f′) / lc(f)`; zero below degree 2 is not
/// meaningful and degree 1 gives 1.
pub fn discriminant<R: Ring>(f: &Poly<R>) -> R {
    let n = f.deg();
    if n < 2 {
        return R::one();
    }
    let res = resultant(f, &f.derivative());
    sign((n * (n - 1) / 2) % 2 == 1, res.exact_div(&f.lc()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    /// Determinant of the Sylvester matrix by fraction-free elimination.
    fn sylvester_resultant(a: &IntPolynomial, b: &IntPolynomial) -> BigInt {
        let (m, n) = (a.deg(), b.deg());
        let size = m + n;
        let mut rows = vec![vec![BigInt::from(0); size]; size];
        for i in 0..n {
            for j in 0..=m {
                rows[i][i + j] = a.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                rows[n + i][i + j] = b.coeff(n - j);
            }
        }
        bareiss(rows)
    }

    fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
        let n = a.len();
        let mut negative = false;
        let mut prev = BigInt::from(1);
        for k in 0..n {
            if a[k][k] == BigInt::from(0) {
                let Some(swap) = (k + 1..n).find(|&i| a[i][k] != BigInt::from(0)) else {
                    return BigInt::from(0);
                };
                a.swap(k, swap);
                negative = !negative;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if negative {
            -prev
        } else {
            prev
        }
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn classical_discriminants() {
        // b² − 4c
        assert_eq!(discriminant(&p(&[3, 5, 1])), BigInt::from(13));
        // −4p³ − 27q² for x³ + px + q
        assert_eq!(discriminant(&p(&[2, -3, 0, 1])), BigInt::from(108 - 108));
        assert_eq!(discriminant(&p(&[1, 2, 0, 1])), BigInt::from(-32 - 27));
        assert_eq!(discriminant(&p(&[-1, 0, 0, 1])), BigInt::from(-27));
        assert_eq!(discriminant(&p(&[-2, 0, 0, 1])), BigInt::from(-108));
        assert_eq!(discriminant(&p(&[1, 1, 1, 1, 1])), BigInt::from(125));
        // non-monic: disc(2x² + 3x + 1) = 9 − 8
        assert_eq!(discriminant(&p(&[1, 3, 2])), BigInt::from(1));
    }

    #[test]
    fn discriminant_over_a_polynomial_ring() {
        // y³ + p·y + p as a polynomial in y over ℤ[p]
        let pp = IntPolynomial::x();
        let f = Poly::new(vec![pp.clone(), pp.clone(), IntPolynomial::zero(), IntPolynomial::one()]);
        assert_eq!(discriminant(&f), p(&[0, 0, -27, -4]));
        // y³ − p
        let g = Poly::new(vec![pp.neg(), IntPolynomial::zero(), IntPolynomial::zero(), IntPolynomial::one()]);
        assert_eq!(discriminant(&g), p(&[0, 0, -27]));
    }

    #[test]
    fn degenerate_degrees() {
        assert_eq!(resultant(&p(&[3]), &p(&[1, 1, 1])), BigInt::from(9));
        assert_eq!(resultant(&p(&[1, 1]), &p(&[-1, 1])), BigInt::from(-2));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[1, 1])), BigInt::from(0));
    }

    fn poly_strategy(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-20i64..=20, 1..=max_deg + 1).prop_map(|mut c| {
            if *c.last().unwrap() == 0 {
                *c.last_mut().unwrap() = 1;
            }
            IntPolynomial::from_i64(&c)
        })
    }

    proptest! {
        #[test]
        fn matches_sylvester_determinant(a in poly_strategy(6), b in poly_strategy(6)) {
            prop_assume!(a.deg() + b.deg() > 0);
            prop_assert_eq!(resultant(&a, &b), sylvester_resultant(&a, &b));
        }

        #[test]
        fn resultant_symmetry(a in poly_strategy(5), b in poly_strategy(5)) {
            let s = if a.deg() % 2 == 1 && b.deg() % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(resultant(&a, &b), resultant(&b, &a) * BigInt::from(s));
        }
    }
}
