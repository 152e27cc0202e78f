//! Continuation of a fiber along a path in the parameter plane.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::roots::{horner, magnitude};
use super::ParametricFamily;
use crate::error::{Error, Result};

/// A piece of a path, parametrized over `t ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Leg {
    Segment {
        from: Complex64,
        to: Complex64,
    },
    /// Starts at `center + radius·e^{i·start}` and turns through `sweep`
    /// radians, counterclockwise when positive.
    Arc {
        center: Complex64,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl Leg {
    pub fn at(&self, t: f64) -> Complex64 {
        match *self {
            Leg::Segment { from, to } => from + (to - from) * t,
            Leg::Arc { center, radius, start, sweep } => center + Complex64::from_polar(radius, start + sweep * t),
        }
    }

    pub fn velocity(&self, t: f64) -> Complex64 {
        match *self {
            Leg::Segment { from, to } => to - from,
            Leg::Arc { radius, start, sweep, .. } => Complex64::i() * Complex64::from_polar(radius * sweep, start + sweep * t),
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Leg::Segment { from, to } => (to - from).norm(),
            Leg::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    fn end(&self) -> Complex64 {
        self.at(1.0)
    }
}

/// A path in the parameter plane, as consecutive legs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Path {
    pub legs: Vec<Leg>,
}

impl Path {
    /// Closed polygon through `points`, returning to the first.
    pub fn polygon(points: &[Complex64]) -> Self {
        let legs = (0..points.len()).map(|i| Leg::Segment { from: points[i], to: points[(i + 1) % points.len()] }).collect();
        Path { legs }
    }

    /// Full counterclockwise circle starting at `center + radius·e^{i·start}`.
    pub fn circle(center: Complex64, radius: f64, start: f64) -> Self {
        Path { legs: vec![Leg::Arc { center, radius, start, sweep: TAU }] }
    }

    pub fn start(&self) -> Option<Complex64> {
        self.legs.first().map(|l| l.at(0.0))
    }

    pub fn end(&self) -> Option<Complex64> {
        self.legs.last().map(Leg::end)
    }

    /// This path followed by `other`.
    pub fn then(mut self, other: &Path) -> Self {
        self.legs.extend(other.legs.iter().copied());
        self
    }

    pub fn reversed(&self) -> Self {
        let legs = self
            .legs
            .iter()
            .rev()
            .map(|l| match *l {
                Leg::Segment { from, to } => Leg::Segment { from: to, to: from },
                Leg::Arc { center, radius, start, sweep } => Leg::Arc { center, radius, start: start + sweep, sweep: -sweep },
            })
            .collect();
        Path { legs }
    }

    /// Distance from `z` to the path, by sampling each leg finely.
    pub fn clearance(&self, z: Complex64) -> f64 {
        self.legs
            .iter()
            .map(|leg| match *leg {
                Leg::Segment { from, to } => {
                    let d = to - from;
                    let len2 = d.norm_sqr();
                    let t = if len2 == 0.0 { 0.0 } else { (((z - from) * d.conj()).re / len2).clamp(0.0, 1.0) };
                    (from + d * t - z).norm()
                }
                Leg::Arc { center, radius, start, sweep } => {
                    let steps = 256;
                    (0..=steps)
                        .map(|k| (center + Complex64::from_polar(radius, start + sweep * k as f64 / steps as f64) - z).norm())
                        .fold(f64::INFINITY, f64::min)
                }
            })
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TrackOptions {
    /// Accepted residual relative to `1 + Σ |c_i(p)|·max(1, |y|)^i`.
    pub residual_tol: f64,
    /// Smallest step, as a fraction of a leg, before giving up.
    pub min_step: f64,
    /// Largest step along a leg, as a fraction of its length scale.
    pub max_step: f64,
    pub newton_iterations: usize,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions { residual_tol: 1e-8, min_step: 1e-12, max_step: 0.05, newton_iterations: 8 }
    }
}

/// Coefficients `c_i(p)` and `c_i′(p)` at a complex parameter.
pub(crate) struct Fiberwise {
    pub c: Vec<Complex64>,
    pub dc: Vec<Complex64>,
}

impl ParametricFamily {
    pub(crate) fn at(&self, p: Complex64) -> Fiberwise {
        let mut c = Vec::with_capacity(self.float_coeffs.len());
        let mut dc = Vec::with_capacity(self.float_coeffs.len());
        for row in &self.float_coeffs {
            let (v, d) = horner(row, p);
            c.push(v);
            dc.push(d);
        }
        Fiberwise { c, dc }
    }
}

fn residual_scale(c: &[Complex64], y: Complex64) -> f64 {
    1.0 + magnitude(c, Complex64::new(y.norm().max(1.0), 0.0))
}

fn min_separation(ys: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..ys.len() {
        for j in i + 1..ys.len() {
            best = best.min((ys[i] - ys[j]).norm());
        }
    }
    best
}

/// Newton's method in `y` at fixed `p`; `None` unless it meets the residual
/// tolerance with shrinking corrections.
fn correct(c: &[Complex64], y0: Complex64, opts: &TrackOptions) -> Option<Complex64> {
    let mut y = y0;
    let mut last = f64::INFINITY;
    for _ in 0..opts.newton_iterations {
        let (v, d) = horner(c, y);
        let step = v / d;
        if !(step.re.is_finite() && step.im.is_finite()) {
            return None;
        }
        y -= step;
        let s = step.norm();
        if s > last && s > 1e-14 * (1.0 + y.norm()) {
            return None;
        }
        last = s;
        if s <= 1e-13 * (1.0 + y.norm()) {
            break;
        }
    }
    let (v, _) = horner(c, y);
    (v.norm() < opts.residual_tol * residual_scale(c, y)).then_some(y)
}

/// Refines every root of the fiber over `p`.
pub(crate) fn refine_fiber(
    family: &ParametricFamily,
    p: Complex64,
    ys: &[Complex64],
    opts: &TrackOptions,
) -> Option<Vec<Complex64>> {
    let fw = family.at(p);
    ys.iter().map(|&y| correct(&fw.c, y, opts)).collect()
}

/// Continues the fiber `ys` along `path`. Returns the end fiber, in the same
/// order as `ys`.
pub fn track_path(family: &ParametricFamily, path: &Path, ys: &[Complex64], opts: &TrackOptions) -> Result<Vec<Complex64>> {
    let mut ys = ys.to_vec();
    let mut history: Vec<String> = Vec::new();
    for (li, leg) in path.legs.iter().enumerate() {
        let mut t = 0.0f64;
        let mut dt = opts.max_step;
        while t < 1.0 {
            let h = dt.min(1.0 - t);
            match step(family, leg, t, h, &ys, opts) {
                Some(next) => {
                    ys = next;
                    t += h;
                    dt = (dt * 1.5).min(opts.max_step);
                }
                None => {
                    dt /= 2.0;
                    if history.len() == 8 {
                        history.remove(0);
                    }
                    history.push(format!("leg {li}: step rejected at t = {t:.6}, p = {:.6}", leg.at(t)));
                    if dt < opts.min_step {
                        return Err(Error::Tracking {
                            branch_point: None,
                            message: format!("step size underflow on leg {li} near p = {:.6}", leg.at(t)),
                            history,
                        });
                    }
                }
            }
        }
    }
    Ok(ys)
}

/// One Euler predictor step of size `h` followed by Newton correction.
fn step(family: &ParametricFamily, leg: &Leg, t: f64, h: f64, ys: &[Complex64], opts: &TrackOptions) -> Option<Vec<Complex64>> {
    let here = family.at(leg.at(t));
    let dp = leg.velocity(t);
    let there = family.at(leg.at(t + h));
    let separation = min_separation(ys);
    let mut out = Vec::with_capacity(ys.len());
    for &y in ys {
        let (_, fy) = horner(&here.c, y);
        let (fp, _) = horner(&here.dc, y);
        let dy = -(fp * dp) / fy;
        let predicted = y + dy * h;
        let corrected = correct(&there.c, predicted, opts)?;
        // a root may not travel far relative to the fiber's spacing in one step
        if (corrected - y).norm() > 0.25 * separation || (corrected - predicted).norm() > 0.1 * separation {
            return None;
        }
        out.push(corrected);
    }
    (min_separation(&out) > 0.0).then_some(out)
}
