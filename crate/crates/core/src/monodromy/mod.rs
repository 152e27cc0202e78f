//! Numerical monodromy of one-parameter families `f(y; p) = Σ c_i(p)·y^i`.
//!
//! Branch points are the roots of the exact integer polynomial
//! `disc_y(f)·c_d`. From a base point outside all of them, one petal loop
//! per branch point is tracked: out along a ray, once counterclockwise
//! around the point, and back. The loop permutations generate a subgroup of
//! the monodromy group, so their width is a lower bound for the family.

mod roots;
mod track;

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::ToPrimitive;

pub use roots::polynomial_roots;
pub use track::{track_path, Leg, Path, TrackOptions};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::poly::{discriminant, parse_family, IntPolynomial, Poly};
use crate::width::{width, Confidence, WidthReport};

/// Angle of the base point on its circle.
pub const BASE_ANGLE: f64 = 0.577_215_664_9;

/// `f(y; p)` with integer coefficients.
#[derive(Clone, Debug)]
pub struct ParametricFamily {
    /// Coefficient `c_i(p)` of `y^i`.
    coeffs: Poly<IntPolynomial>,
    pub(crate) float_coeffs: Vec<Vec<Complex64>>,
    discriminant: IntPolynomial,
}

impl ParametricFamily {
    pub fn new(coeffs: Poly<IntPolynomial>) -> Result<Self> {
        if coeffs.deg() == 0 {
            return Err(Error::DegenerateInput);
        }
        let discriminant = discriminant(&coeffs);
        if discriminant.is_zero() {
            return Err(Error::ZeroDiscriminant);
        }
        let float_coeffs = coeffs
            .coeffs()
            .iter()
            .map(|c| c.coeffs().iter().map(|v| Complex64::new(v.to_f64().unwrap_or(f64::INFINITY), 0.0)).collect())
            .collect();
        Ok(ParametricFamily { coeffs, float_coeffs, discriminant })
    }

    /// Parses an expression in `y` and `p`.
    pub fn parse(text: &str) -> Result<Self> {
        ParametricFamily::new(parse_family(text)?)
    }

    pub fn fiber_degree(&self) -> usize {
        self.coeffs.deg()
    }

    pub fn coefficients(&self) -> &Poly<IntPolynomial> {
        &self.coeffs
    }

    /// `disc_y f` as a polynomial in `p`.
    pub fn discriminant(&self) -> &IntPolynomial {
        &self.discriminant
    }

    /// `disc_y(f)·c_d` with repeated factors removed.
    pub fn branch_polynomial(&self) -> IntPolynomial {
        let full = self.discriminant.mul(&self.coeffs.lc());
        if full.deg() == 0 {
            return IntPolynomial::constant(full.lc());
        }
        let g = full.gcd(&full.derivative());
        full.exact_quotient(&g).expect("the gcd divides the polynomial").primitive_part()
    }

    /// The specialization `f(y; p₀)` at an integer parameter.
    pub fn specialize(&self, p0: &num_bigint::BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.coeffs().iter().map(|c| c.eval(p0)).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchPoint {
    pub value: Complex64,
    /// `|P(b)| / Σ |c_i||b|^i` for the branch polynomial `P`.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct MonodromyOptions {
    pub max_branch_points: usize,
    /// Matching tolerance after scaling the fiber to diameter 1.
    pub match_tol: f64,
    /// Relative residual accepted for branch points.
    pub branch_tol: f64,
    /// Smallest petal radius.
    pub min_clearance: f64,
    pub track: TrackOptions,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions {
            max_branch_points: 64,
            match_tol: 1e-4,
            branch_tol: 1e-8,
            min_clearance: 1e-3,
            track: TrackOptions::default(),
        }
    }
}

fn canonical_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Branch points in canonical order (by real part, then imaginary part).
pub fn branch_points(family: &ParametricFamily, opts: &MonodromyOptions) -> Result<Vec<BranchPoint>> {
    let poly = family.branch_polynomial();
    if poly.deg() == 0 {
        return Ok(Vec::new());
    }
    if poly.deg() > opts.max_branch_points {
        return Err(Error::TooManyBranchPoints { count: poly.deg(), max: opts.max_branch_points });
    }
    let coeffs: Vec<Complex64> = poly.coeffs().iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::INFINITY), 0.0)).collect();
    let roots = polynomial_roots(&coeffs).ok_or_else(|| Error::Tracking {
        branch_point: None,
        message: "root finding for the branch polynomial did not converge".into(),
        history: Vec::new(),
    })?;
    let mut out = Vec::with_capacity(roots.len());
    for z in roots {
        let (v, _) = roots::horner(&coeffs, z);
        let residual = v.norm() / roots::magnitude(&coeffs, z).max(f64::MIN_POSITIVE);
        if residual >= opts.branch_tol {
            return Err(Error::Tracking {
                branch_point: None,
                message: format!("branch point {z:.6} has relative residual {residual:.2e}"),
                history: Vec::new(),
            });
        }
        // real polynomial: snap tiny imaginary parts so conjugates order stably
        let z = if z.im.abs() < 1e-12 * (1.0 + z.re.abs()) { Complex64::new(z.re, 0.0) } else { z };
        out.push(BranchPoint { value: z, residual });
    }
    out.sort_by(|a, b| canonical_order(&a.value, &b.value));
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MonodromyResult {
    pub base_point: Complex64,
    /// Roots over the base point; permutations act on their indices.
    pub fiber: Vec<Complex64>,
    pub branch_points: Vec<BranchPoint>,
    /// One per branch point, in the order of `branch_points`.
    pub loop_permutations: Vec<Permutation>,
    pub petal_radii: Vec<f64>,
    pub group: PermGroup,
}

impl MonodromyResult {
    /// Product of the petal permutations in angular order as seen from the
    /// base point, which equals the permutation of one large
    /// counterclockwise circle through the base point.
    pub fn petal_product(&self) -> Permutation {
        let d = self.fiber.len();
        let mut order: Vec<usize> = (0..self.branch_points.len()).collect();
        let inward = -self.base_point;
        let angle = |k: usize| ((self.branch_points[k].value - self.base_point) / inward).arg();
        order.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
        order.into_iter().fold(Permutation::identity(d), |acc, k| self.loop_permutations[k].mul(&acc))
    }
}

/// `j` with `end[i] ≈ start[j]`, as a permutation `i ↦ j`.
fn match_fibers(start: &[Complex64], end: &[Complex64], tol: f64) -> std::result::Result<Permutation, String> {
    let d = start.len();
    let mut diameter = 0.0f64;
    for a in start {
        for b in start {
            diameter = diameter.max((a - b).norm());
        }
    }
    let scale = if diameter > 0.0 { diameter } else { 1.0 };
    let mut images = Vec::with_capacity(d);
    let mut used = vec![false; d];
    for (i, y) in end.iter().enumerate() {
        let mut dist: Vec<(f64, usize)> = start.iter().enumerate().map(|(j, s)| ((y - s).norm() / scale, j)).collect();
        dist.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (best, j) = dist[0];
        if best > tol {
            return Err(format!("end root {i} is {best:.2e} from the nearest start root"));
        }
        if dist.len() > 1 && dist[1].0 <= tol {
            return Err(format!("end root {i} matches two start roots"));
        }
        if used[j] {
            return Err(format!("start root {j} matched twice"));
        }
        used[j] = true;
        images.push(j as u32);
    }
    Ok(Permutation::from_images(images).expect("a bijection"))
}

/// Permutation `i ↦ j` when continuing root `i` of the fiber over `base`
/// along the closed path ends at root `j`.
pub fn track_loop(family: &ParametricFamily, fiber: &[Complex64], path: &Path, opts: &MonodromyOptions) -> Result<Permutation> {
    let end = track_path(family, path, fiber, &opts.track)?;
    match_fibers(fiber, &end, opts.match_tol).map_err(|message| Error::Tracking {
        branch_point: None,
        message,
        history: Vec::new(),
    })
}

/// Roots of `f(y; base)`, refined.
pub fn base_fiber(family: &ParametricFamily, base: Complex64, opts: &MonodromyOptions) -> Result<Vec<Complex64>> {
    let fw = family.at(base);
    let fail = |message: String| Error::Tracking { branch_point: None, message, history: Vec::new() };
    let roots = polynomial_roots(&fw.c).ok_or_else(|| fail("base fiber root finding did not converge".into()))?;
    let mut fiber = track::refine_fiber(family, base, &roots, &opts.track)
        .ok_or_else(|| fail("base fiber roots fail the residual check".into()))?;
    fiber.sort_by(canonical_order);
    Ok(fiber)
}

/// Clearance radius of each branch point: half the distance to the nearest
/// other, at most 1 and at least `floor`.
fn petal_radii(points: &[Complex64], floor: f64) -> Vec<f64> {
    points
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let nearest =
                points.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, b)| (a - b).norm()).fold(f64::INFINITY, f64::min);
            (nearest / 2.0).min(1.0).max(floor)
        })
        .collect()
}

/// Path from `from` to `to` that goes around every disk it would cross,
/// keeping each disk center on the side where it lies relative to the
/// straight segment.
fn detoured_segment(from: Complex64, to: Complex64, disks: &[(Complex64, f64)]) -> Path {
    let dir = to - from;
    let len = dir.norm();
    let unit = dir / len;
    // obstacles as (entry, exit) parameters along the segment
    let mut hits: Vec<(f64, f64, Complex64, f64)> = Vec::new();
    for &(c, r) in disks {
        let rel = (c - from) / unit;
        let (along, off) = (rel.re, rel.im);
        if off.abs() < r && along > 0.0 && along < len {
            let half = (r * r - off * off).sqrt();
            hits.push((along - half, along + half, c, off));
        }
    }
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut legs = Vec::new();
    let mut cursor = from;
    for (enter, exit, c, off) in hits {
        let p_in = from + unit * enter.max(0.0);
        let p_out = from + unit * exit.min(len);
        legs.push(Leg::Segment { from: cursor, to: p_in });
        let a_in = (p_in - c).arg();
        let a_out = (p_out - c).arg();
        // a center left of travel is passed on its right: counterclockwise about it
        let mut sweep = a_out - a_in;
        if off >= 0.0 {
            while sweep < 0.0 {
                sweep += TAU;
            }
        } else {
            while sweep > 0.0 {
                sweep -= TAU;
            }
        }
        let r = (p_in - c).norm();
        legs.push(Leg::Arc { center: c, radius: r, start: a_in, sweep });
        cursor = p_out;
    }
    legs.push(Leg::Segment { from: cursor, to });
    legs.retain(|l| l.length() > 0.0);
    Path { legs }
}

/// Petal loop around `points[k]` based at `base`.
pub fn petal(base: Complex64, points: &[Complex64], radii: &[f64], k: usize) -> Path {
    let b = points[k];
    let r = radii[k];
    let toward_base = (base - b) / (base - b).norm();
    let touch = b + toward_base * r;
    let obstacles: Vec<(Complex64, f64)> =
        points.iter().zip(radii).enumerate().filter(|(j, _)| *j != k).map(|(_, (&c, &rr))| (c, rr)).collect();
    let out = detoured_segment(base, touch, &obstacles);
    let around = Path::circle(b, r, toward_base.arg());
    out.clone().then(&around).then(&out.reversed())
}

/// Base point on the circle of radius `2·max|b| + 1` at [`BASE_ANGLE`].
pub fn base_point(points: &[Complex64]) -> Complex64 {
    let reach = points.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Complex64::from_polar(2.0 * reach + 1.0, BASE_ANGLE)
}

pub fn monodromy_group(family: &ParametricFamily, opts: &MonodromyOptions) -> Result<MonodromyResult> {
    let bps = branch_points(family, opts)?;
    let points: Vec<Complex64> = bps.iter().map(|b| b.value).collect();
    let base = base_point(&points);
    let fiber = base_fiber(family, base, opts)?;
    let radii = petal_radii(&points, opts.min_clearance);
    let mut perms = Vec::with_capacity(points.len());
    for k in 0..points.len() {
        let path = petal(base, &points, &radii, k);
        let perm = track_loop(family, &fiber, &path, opts).map_err(|e| match e {
            Error::Tracking { message, history, .. } => {
                Error::Tracking { branch_point: Some(k), message: format!("{message} (branch point {:.6})", points[k]), history }
            }
            other => other,
        })?;
        perms.push(perm);
    }
    let d = fiber.len();
    let group = PermGroup::new(d, perms.clone())?;
    Ok(MonodromyResult { base_point: base, fiber, branch_points: bps, loop_permutations: perms, petal_radii: radii, group })
}

/// Width of the numerically generated monodromy group, reported as a lower
/// bound for the family.
pub fn family_width(family: &ParametricFamily, opts: &MonodromyOptions) -> Result<(MonodromyResult, WidthReport)> {
    let result = monodromy_group(family, opts)?;
    let mut report = width(&result.group)?;
    report.confidence = report.confidence.weaker(Confidence::HeuristicLowerBound);
    report.notes.push("monodromy computed numerically; the group may be a proper subgroup".into());
    if !result.group.is_transitive() {
        report.notes.push("monodromy group is not transitive: the family looks reducible".into());
    }
    Ok((result, report))
}

/// Large counterclockwise circle through the base point around every
/// branch point.
pub fn enclosing_circle(result: &MonodromyResult) -> Path {
    Path::circle(Complex64::new(0.0, 0.0), result.base_point.norm(), result.base_point.arg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn run(text: &str) -> MonodromyResult {
        monodromy_group(&ParametricFamily::parse(text).unwrap(), &MonodromyOptions::default()).unwrap()
    }

    #[test]
    fn branch_point_examples() {
        let opts = MonodromyOptions::default();
        let b = branch_points(&ParametricFamily::parse("y^3 - p").unwrap(), &opts).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].value.norm() < 1e-12);
        let b = branch_points(&ParametricFamily::parse("y^3 + p*y + p").unwrap(), &opts).unwrap();
        assert_eq!(b.len(), 2);
        assert!((b[0].value - Complex64::new(-6.75, 0.0)).norm() < 1e-10);
        assert!(b[1].value.norm() < 1e-10);
        assert!(matches!(ParametricFamily::parse("(y - p)^2"), Err(Error::ZeroDiscriminant)));
    }

    #[test]
    fn small_groups() {
        let r = run("y^2 - p");
        assert_eq!(r.group.order(), BigUint::from(2u32));
        assert_eq!(r.loop_permutations[0].cycle_type(), [2]);
        let r = run("y^3 - p");
        assert_eq!(r.group.order(), BigUint::from(3u32));
        assert!(r.group.is_transitive());
        let r = run("y^3 + p*y + p");
        assert_eq!(r.group.order(), BigUint::from(6u32));
        // a simple branch point at −27/4, a triple root at 0
        assert_eq!(r.loop_permutations[0].cycle_type(), [1, 2]);
        assert_eq!(r.loop_permutations[1].cycle_type(), [3]);
        let r = run("y^5 - p*y - p");
        assert_eq!(r.group.order(), BigUint::from(120u32));
    }

    #[test]
    fn reducible_family_is_intransitive() {
        let r = run("(y^2 - p)(y - 2)");
        assert!(!r.group.is_transitive());
        assert_eq!(r.group.order(), BigUint::from(2u32));
    }

    #[test]
    fn leading_coefficient_zeros_are_branch_points() {
        // p·y² − 1 has roots ±p^(−1/2): swapped around 0
        let r = run("p*y^2 - 1");
        assert_eq!(r.branch_points.len(), 1);
        assert_eq!(r.group.order(), BigUint::from(2u32));
    }

    #[test]
    fn petal_product_matches_the_enclosing_circle() {
        let opts = MonodromyOptions::default();
        for text in [
            "y^3 + p*y + p",
            "y^5 - p*y - p",
            "y^4 - p",
            "y^3 - 3*y - p",
            "y^4 + p*y^2 - p^3 + 1",
            "y^2 - p*(p - 1)*(p - 2)*(p - 3)*(p - 4)",
            "y^3 - p^7 + p + 1",
            "y^2 - (p^8 - 1)",
        ] {
            let f = ParametricFamily::parse(text).unwrap();
            let r = monodromy_group(&f, &opts).unwrap();
            let big = track_loop(&f, &r.fiber, &enclosing_circle(&r), &opts).unwrap();
            assert_eq!(big, r.petal_product(), "{text}");
        }
        let f = ParametricFamily::parse("y^5 - p").unwrap();
        let r = monodromy_group(&f, &opts).unwrap();
        let big = track_loop(&f, &r.fiber, &enclosing_circle(&r), &opts).unwrap();
        assert_eq!(big.cycle_type(), [5]);
    }

    #[test]
    fn detours_keep_clear_of_disks() {
        let disks = [(Complex64::new(5.0, 0.2), 0.5), (Complex64::new(8.0, -0.1), 0.3)];
        let path = detoured_segment(Complex64::new(0.0, 0.0), Complex64::new(10.0, 0.0), &disks);
        assert_eq!(path.legs.len(), 5);
        for (c, r) in disks {
            assert!(path.clearance(c) >= r * (1.0 - 1e-9));
        }
        assert_eq!(path.end(), Some(Complex64::new(10.0, 0.0)));
    }

    #[test]
    fn contractible_loop_is_trivial() {
        let f = ParametricFamily::parse("y^3 + p*y + p").unwrap();
        let opts = MonodromyOptions::default();
        let base = Complex64::new(5.0, 1.0);
        let fiber = base_fiber(&f, base, &opts).unwrap();
        let path = Path::polygon(&[base, Complex64::new(6.0, 1.0), Complex64::new(6.0, 2.0), Complex64::new(5.0, 2.0)]);
        assert!(track_loop(&f, &fiber, &path, &opts).unwrap().is_identity());
    }

    #[test]
    fn deterministic() {
        let a = run("y^5 - p*y - p");
        let b = run("y^5 - p*y - p");
        assert_eq!(a.loop_permutations, b.loop_permutations);
        assert_eq!(a.fiber, b.fiber);
    }

    #[test]
    fn widths() {
        let opts = MonodromyOptions::default();
        for (text, w) in [("y^2 - p", 2), ("y^3 - p", 3), ("y^3 + p*y + p", 3), ("y^5 - p*y - p", 5)] {
            let (_, r) = family_width(&ParametricFamily::parse(text).unwrap(), &opts).unwrap();
            assert_eq!(r.width, w, "{text}");
            assert_eq!(r.confidence, Confidence::HeuristicLowerBound);
        }
    }
}
