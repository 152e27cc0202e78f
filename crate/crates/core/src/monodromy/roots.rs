//! Simultaneous root finding for complex polynomials.

use num_complex::Complex64;

const MAX_ITERATIONS: usize = 2000;

/// Value and derivative by Horner's rule; coefficients ascending.
pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// `Σ |c_i| |z|^i`, the scale of rounding error in evaluating at `z`.
pub(crate) fn magnitude(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// All roots of a polynomial with nonzero leading coefficient, by Aberth
/// iteration from a circle enclosing the roots, then Newton polishing.
/// `None` if the iteration does not settle.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len().checked_sub(1)?;
    let lead = coeffs[n];
    if n == 0 {
        return Some(Vec::new());
    }
    if lead.norm() == 0.0 || coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return None;
    }
    // Fujiwara's bound
    let radius =
        (1..=n).map(|k| (coeffs[n - k] / lead).norm().powf(1.0 / k as f64)).fold(0.0f64, f64::max).max(f64::MIN_POSITIVE) * 2.0;
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64)).collect();
    let mut settled = false;
    for _ in 0..MAX_ITERATIONS {
        let mut largest = 0.0f64;
        for i in 0..n {
            let (v, d) = horner(coeffs, z[i]);
            if v.norm() <= 4.0 * f64::EPSILON * magnitude(coeffs, z[i]) {
                continue;
            }
            let newton = v / d;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                largest = largest.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if largest < 1e-15 {
            settled = true;
            break;
        }
    }
    if !settled {
        return None;
    }
    for root in &mut z {
        for _ in 0..3 {
            let (v, d) = horner(coeffs, *root);
            if d.norm() == 0.0 {
                break;
            }
            let step = v / d;
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            *root -= step;
        }
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn roots_of_unity_and_reals() {
        let r = polynomial_roots(&[c(-1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        assert_eq!(r.len(), 3);
        for z in &r {
            assert!((z.powu(3) - c(1.0)).norm() < 1e-12);
        }
        let mut r: Vec<f64> = polynomial_roots(&[c(6.0), c(-5.0), c(1.0)]).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] - 2.0).abs() < 1e-12 && (r[1] - 3.0).abs() < 1e-12);
        // −27p² − 4p³ has the roots 0 and −27/4
        let mut r: Vec<f64> = polynomial_roots(&[c(0.0), c(-27.0), c(-4.0)]).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] + 6.75).abs() < 1e-12 && r[1].abs() < 1e-12);
    }

    #[test]
    fn wilkinson_like_spread() {
        // (x − 1)(x − 2)…(x − 10)
        let mut coeffs = vec![c(1.0)];
        for k in 1..=10 {
            let mut next = vec![c(0.0); coeffs.len() + 1];
            for (i, &a) in coeffs.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * k as f64;
            }
            coeffs = next;
        }
        let mut r: Vec<f64> = polynomial_roots(&coeffs).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (k, x) in r.iter().enumerate() {
            assert!((x - (k + 1) as f64).abs() < 1e-8, "{r:?}");
        }
    }
}
