//! Cauchy transform of the weighted difference law as a root of a cubic.
//!
//! `G` solves `R(G) + 1/G = z` with `R(g) = 1/(1 - c g) - eta/(1 + c eta g)`.
//! In `H = 1/G` this is the monic cubic `H^3 + A H^2 + B H + C = 0` with
//! `A = (1 - eta)(1 - c) - z`, `B = eta c (2 - c) - z (eta - 1) c`,
//! `C = z eta c^2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::closed::check_c;
use crate::error::{Error, Result};

/// Roots closer than this are treated as coincident.
pub const ROOT_COINCIDENCE: f64 = 1e-13;

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::InvalidParams(format!("eta must be finite and positive, got {eta}")));
    }
    Ok(())
}

/// `(A, B, C)` of the monic cubic in `H = 1/G`.
pub fn cubic_coefficients(z: Complex64, c: f64, eta: f64) -> [Complex64; 3] {
    let a = (1.0 - eta) * (1.0 - c) - z;
    let b = eta * c * (2.0 - c) - z * ((eta - 1.0) * c);
    let cc = z * (eta * c * c);
    [a, b, cc]
}

/// Roots of `t^3 + a t^2 + b t + c` (Cardano, then Newton polishing).
pub fn solve_monic_cubic(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 3] {
    let third = 1.0 / 3.0;
    let p = b - a * a * third;
    let q = 2.0 * a * a * a / 27.0 - a * b * third + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let (u1, u2) = (-q / 2.0 + disc, -q / 2.0 - disc);
    let u3 = if u1.norm() >= u2.norm() { u1 } else { u2 };
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let mut roots = [Complex64::new(0.0, 0.0); 3];
    if u3.norm() == 0.0 {
        // p = q = 0: triple root.
        roots = [-a * third; 3];
    } else {
        let u = u3.powf(third);
        let mut w = u;
        for r in roots.iter_mut() {
            *r = w - p / (3.0 * w) - a * third;
            w *= omega;
        }
    }
    let f = |t: Complex64| ((t + a) * t + b) * t + c;
    let df = |t: Complex64| (3.0 * t + 2.0 * a) * t + b;
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let d = df(*r);
            if d.norm() == 0.0 {
                break;
            }
            let step = f(*r) / d;
            let next = *r - step;
            if !next.is_finite() || f(next).norm() > f(*r).norm() {
                break;
            }
            *r = next;
        }
    }
    roots
}

/// Discriminant of the monic cubic; negative iff one real root and a
/// complex pair (for real coefficients).
pub fn cubic_discriminant(a: f64, b: f64, c: f64) -> f64 {
    18.0 * a * b * c - 4.0 * a.powi(3) * c + a * a * b * b - 4.0 * b.powi(3) - 27.0 * c * c
}

/// The three roots for `G(z)` and the index of the physical branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyEval {
    pub z: Complex64,
    pub roots: [Complex64; 3],
    pub selected: usize,
}

impl CauchyEval {
    pub fn value(&self) -> Complex64 {
        self.roots[self.selected]
    }
}

fn g_roots(z: Complex64, c: f64, eta: f64) -> [Complex64; 3] {
    let [a, b, cc] = cubic_coefficients(z, c, eta);
    solve_monic_cubic(a, b, cc).map(|h| 1.0 / h)
}

/// Physical branch at `z` (`Im z > 0`): the unique root with `Im G < 0`, or,
/// when several qualify, the one reached by continuation down a vertical
/// path from far above the real axis where `G ~ 1/z`.
pub fn cauchy_roots(z: Complex64, c: f64, eta: f64) -> Result<CauchyEval> {
    check_c(c)?;
    check_eta(eta)?;
    if !(z.im > 0.0) || !z.is_finite() {
        return Err(Error::DomainError(format!("Cauchy transform needs Im z > 0, got {z}")));
    }
    let roots = g_roots(z, c, eta);
    let candidates: Vec<usize> = (0..3).filter(|&k| roots[k].im < 0.0).collect();
    if candidates.len() == 1 {
        return Ok(CauchyEval {
            z,
            roots,
            selected: candidates[0],
        });
    }
    let selected = continuation(z, c, eta, &roots)?;
    Ok(CauchyEval { z, roots, selected })
}

fn nearest(roots: &[Complex64; 3], target: Complex64) -> Result<usize> {
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&i, &j| (roots[i] - target).norm().total_cmp(&(roots[j] - target).norm()));
    if (roots[order[0]] - roots[order[1]]).norm() < ROOT_COINCIDENCE {
        return Err(Error::BranchAmbiguity {
            re: target.re,
            im: target.im,
        });
    }
    Ok(order[0])
}

fn continuation(z: Complex64, c: f64, eta: f64, final_roots: &[Complex64; 3]) -> Result<usize> {
    let scale = 10.0 * (1.0 + z.re.abs() + c + eta * c + (1.0 + c.sqrt()).powi(2) * (1.0 + eta));
    let mut im = scale.max(z.im);
    let start = Complex64::new(z.re, im);
    let mut current = g_roots(start, c, eta)[nearest(&g_roots(start, c, eta), 1.0 / start)?];
    while im > z.im {
        im = (im * 0.8).max(z.im);
        let roots = if im == z.im {
            *final_roots
        } else {
            g_roots(Complex64::new(z.re, im), c, eta)
        };
        let k = nearest(&roots, current)?;
        current = roots[k];
        if im == z.im {
            return Ok(k);
        }
    }
    nearest(final_roots, current)
}

/// `R(g) = 1/(1 - c g) - eta/(1 + c eta g)`.
pub fn r_transform_sum(g: Complex64, c: f64, eta: f64) -> Result<Complex64> {
    let d1 = 1.0 - c * g;
    let d2 = 1.0 + c * eta * g;
    if d1.norm() == 0.0 || d2.norm() == 0.0 {
        return Err(Error::PoleError(format!("R-transform pole at g = {g}")));
    }
    Ok(1.0 / d1 - eta / d2)
}

/// `-Im G(x + i eps) / pi`, Richardson-extrapolated from `eps` and `eps/2`.
///
/// Exactly zero where the cubic has three real roots at `z = x`. At `x = 0`
/// the root `H = 0` (the atom) is deflated and the density is read from the
/// remaining quadratic.
pub fn aed_numeric(x: f64, c: f64, eta: f64, epsilon: f64) -> Result<f64> {
    check_c(c)?;
    check_eta(eta)?;
    if !(epsilon > 0.0 && epsilon <= 1e-4) {
        return Err(Error::InvalidParams(format!("epsilon must lie in (0, 1e-4], got {epsilon}")));
    }
    if !x.is_finite() {
        return Err(Error::InvalidParams(format!("x must be finite, got {x}")));
    }
    let [a, b, cc] = cubic_coefficients(Complex64::new(x, 0.0), c, eta);
    if x == 0.0 {
        // H^2 + A H + B = 0
        let (a, b) = (a.re, b.re);
        let disc = a * a - 4.0 * b;
        if disc >= 0.0 {
            return Ok(0.0);
        }
        let h = Complex64::new(-a / 2.0, (-disc).sqrt() / 2.0);
        // Of the conjugate pair of G = 1/H, the physical one has Im G < 0.
        let g = 1.0 / h;
        return Ok(g.im.abs() / PI);
    }
    if cubic_discriminant(a.re, b.re, cc.re) >= 0.0 {
        return Ok(0.0);
    }
    let at = |e: f64| -> Result<f64> { Ok(-cauchy_roots(Complex64::new(x, e), c, eta)?.value().im / PI) };
    let (r1, r2) = (at(epsilon)?, at(epsilon / 2.0)?);
    Ok((2.0 * r2 - r1).max(0.0))
}

/// Real support edges: sign changes of the discriminant of the cubic at
/// `z = x`, refined by bisection. Sorted ascending.
pub fn support_edges(c: f64, eta: f64) -> Result<Vec<f64>> {
    check_c(c)?;
    check_eta(eta)?;
    let mp = (1.0 + c.sqrt()).powi(2);
    let (lo, hi) = (-eta * mp - 1.0, mp + 1.0);
    let disc = |x: f64| {
        let [a, b, cc] = cubic_coefficients(Complex64::new(x, 0.0), c, eta);
        cubic_discriminant(a.re, b.re, cc.re)
    };
    let samples = 20_000;
    let step = (hi - lo) / samples as f64;
    let mut edges = Vec::new();
    let mut prev_x = lo;
    let mut prev = disc(lo);
    for i in 1..=samples {
        let x = lo + step * i as f64;
        let v = disc(x);
        if (v < 0.0) != (prev < 0.0) {
            let (mut l, mut r) = (prev_x, x);
            let left_negative = prev < 0.0;
            for _ in 0..200 {
                let mid = 0.5 * (l + r);
                if mid <= l || mid >= r {
                    break;
                }
                if (disc(mid) < 0.0) == left_negative {
                    l = mid;
                } else {
                    r = mid;
                }
            }
            edges.push(0.5 * (l + r));
        }
        prev_x = x;
        prev = v;
    }
    Ok(edges)
}
