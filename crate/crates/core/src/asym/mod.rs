//! Asymptotic eigenvalue density (AED) of `N (p rho_1 - q rho_2) / p` as
//! `N, M -> infinity` with `c = N / M` fixed.

pub mod cauchy;
pub mod closed;
pub mod mp;

use std::fmt::Write as _;

pub use cauchy::{aed_numeric, cauchy_roots, r_transform_sum, support_edges, CauchyEval};
pub use closed::{aed_symmetric, aed_symmetric_wform, eta_function, support_points};
pub use mp::{marchenko_pastur, marchenko_pastur_support};

use crate::error::{Error, Result};
use crate::quad::{integrate_sqrt_ends, QuadResult, Tolerance};

pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Ratio `c = N / M` and weight ratio `eta = q / p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AedSpec {
    pub c: f64,
    pub eta: f64,
}

impl AedSpec {
    pub fn new(c: f64, eta: f64) -> Result<Self> {
        closed::check_c(c)?;
        cauchy::check_eta(eta)?;
        Ok(Self { c, eta })
    }

    pub fn symmetric(c: f64) -> Result<Self> {
        Self::new(c, 1.0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.eta == 1.0
    }

    /// Continuous part of the density at `x`.
    pub fn density(&self, x: f64) -> Result<f64> {
        if self.is_symmetric() {
            aed_symmetric(x, self.c)
        } else {
            aed_numeric(x, self.c, self.eta, DEFAULT_EPSILON)
        }
    }

    /// Density with `epsilon` shrunk in proportion to the distance from the
    /// nearest support edge (or 0), where the density may be singular.
    fn density_near_edges(&self, x: f64, edges: &[f64]) -> Result<f64> {
        if self.is_symmetric() {
            return aed_symmetric(x, self.c);
        }
        let dist = edges.iter().fold(x.abs(), |d, e| d.min((x - e).abs()));
        aed_numeric(x, self.c, self.eta, (1e-3 * dist).clamp(1e-18, DEFAULT_EPSILON))
    }

    fn edges(&self) -> Result<Vec<f64>> {
        if self.is_symmetric() {
            let (xm, xp) = support_points(self.c)?;
            return Ok(match xm {
                Some(xm) if xm > 0.0 => vec![-xp, -xm, xm, xp],
                _ => vec![-xp, xp],
            });
        }
        support_edges(self.c, self.eta)
    }

    /// Intervals carrying the continuous part, split at 0 when 0 is interior.
    pub fn support_intervals(&self) -> Result<Vec<(f64, f64)>> {
        let edges = self.edges()?;
        if edges.len() % 2 != 0 {
            return Err(Error::NoConvergence("odd number of support edges"));
        }
        let mut out = Vec::new();
        for pair in edges.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            if a < 0.0 && b > 0.0 {
                out.push((a, 0.0));
                out.push((0.0, b));
            } else {
                out.push((a, b));
            }
        }
        Ok(out)
    }

    /// `integral f(x) rho(x) dx` over the continuous part.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, tol: Tolerance) -> Result<QuadResult> {
        let mut total = QuadResult {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        };
        let edges = self.edges()?;
        for (a, b) in self.support_intervals()? {
            let mut failure = None;
            let r = integrate_sqrt_ends(
                |x| match self.density_near_edges(x, &edges) {
                    Ok(d) => f(x) * d,
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                },
                a,
                b,
                tol,
            )?;
            if let Some(e) = failure {
                return Err(e);
            }
            total.value += r.value;
            total.error += r.error;
            total.intervals += r.intervals;
        }
        Ok(total)
    }

    /// Mass of the continuous part.
    pub fn continuous_mass(&self) -> Result<f64> {
        Ok(self.integrate(|_| 1.0, Tolerance::new(1e-11, 1e-11))?.value)
    }

    /// `x_plus`: largest `|x|` in the support.
    pub fn x_plus(&self) -> Result<f64> {
        if self.is_symmetric() {
            return Ok(support_points(self.c)?.1);
        }
        let edges = support_edges(self.c, self.eta)?;
        Ok(edges.iter().fold(0.0, |m: f64, e| m.max(e.abs())))
    }

    /// Distance from 0 to the support when 0 lies in a gap (for `eta = 1`
    /// this is `x_minus` of [`support_points`]).
    pub fn x_minus(&self) -> Result<Option<f64>> {
        if self.is_symmetric() {
            return Ok(support_points(self.c)?.0);
        }
        let edges = self.edges()?;
        let inside = edges.chunks(2).any(|p| p[0] < 0.0 && p[1] > 0.0);
        let nearest = edges.iter().fold(f64::INFINITY, |d, e| d.min(e.abs()));
        Ok((!inside && nearest > 1e-12).then_some(nearest))
    }
}

/// Weight of the atom at 0: `max(1 - 2/c, 0)` for `eta = 1`, otherwise the
/// mass missing from the numerically integrated continuous part.
pub fn atom_weight(c: f64, eta: f64) -> Result<f64> {
    let spec = AedSpec::new(c, eta)?;
    if spec.is_symmetric() {
        return Ok((1.0 - 2.0 / c).max(0.0));
    }
    Ok((1.0 - spec.continuous_mass()?).max(0.0))
}

/// Density on a grid plus the atom and support.
#[derive(Debug, Clone, PartialEq)]
pub struct AedResult {
    pub c: f64,
    pub eta: f64,
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
    pub atom_weight: f64,
    pub x_minus: Option<f64>,
    pub x_plus: f64,
}

pub fn aed_on_grid(spec: AedSpec, grid: &[f64]) -> Result<AedResult> {
    let edges = spec.edges()?;
    let density = grid
        .iter()
        .map(|&x| spec.density_near_edges(x, &edges))
        .collect::<Result<Vec<_>>>()?;
    Ok(AedResult {
        c: spec.c,
        eta: spec.eta,
        grid: grid.to_vec(),
        density,
        atom_weight: atom_weight(spec.c, spec.eta)?,
        x_minus: spec.x_minus()?,
        x_plus: spec.x_plus()?,
    })
}

impl AedResult {
    /// `x,density` rows and a trailing metadata comment.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,density\n");
        for (x, d) in self.grid.iter().zip(&self.density) {
            let _ = writeln!(s, "{x:.16e},{d:.16e}");
        }
        let xm = self.x_minus.map_or_else(|| "none".to_string(), |v| format!("{v:.16e}"));
        let _ = writeln!(
            s,
            "# atom_weight={:.16e} x_minus={xm} x_plus={:.16e} c={:.16e} eta={:.16e}",
            self.atom_weight, self.x_plus, self.c, self.eta
        );
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidParams(format!("malformed AED csv: {m}"));
        let mut lines = text.lines();
        if lines.next() != Some("x,density") {
            return Err(bad("header"));
        }
        let (mut grid, mut density) = (Vec::new(), Vec::new());
        let mut meta = None;
        for line in lines {
            if let Some(rest) = line.strip_prefix("# ") {
                meta = Some(rest.to_string());
                continue;
            }
            let (x, d) = line.split_once(',').ok_or_else(|| bad(line))?;
            grid.push(x.parse().map_err(|_| bad(x))?);
            density.push(d.parse().map_err(|_| bad(d))?);
        }
        let meta = meta.ok_or_else(|| bad("metadata line"))?;
        let field = |key: &str| -> Result<String> {
            meta.split_whitespace()
                .find_map(|kv| kv.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
                .map(str::to_string)
                .ok_or_else(|| bad(key))
        };
        let num = |key: &str| -> Result<f64> { field(key)?.parse().map_err(|_| bad(key)) };
        let xm = field("x_minus")?;
        Ok(Self {
            c: num("c")?,
            eta: num("eta")?,
            grid,
            density,
            atom_weight: num("atom_weight")?,
            x_minus: if xm == "none" {
                None
            } else {
                Some(xm.parse().map_err(|_| bad("x_minus"))?)
            },
            x_plus: num("x_plus")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_examples() {
        assert_eq!(atom_weight(1.0, 1.0).unwrap(), 0.0);
        assert!((atom_weight(5.0, 1.0).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(atom_weight(2.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn symmetric_normalization() {
        for &c in &[0.25, 0.8, 1.0, 1.6, 2.0, 2.5, 5.0] {
            let spec = AedSpec::symmetric(c).unwrap();
            let total = spec.continuous_mass().unwrap() + atom_weight(c, 1.0).unwrap();
            assert!((total - 1.0).abs() < 1e-6, "c = {c}: {total}");
        }
    }

    #[test]
    fn second_moment() {
        for &c in &[0.5, 1.0, 3.0] {
            let spec = AedSpec::symmetric(c).unwrap();
            let m2 = spec.integrate(|x| x * x, Tolerance::new(1e-12, 1e-11)).unwrap().value;
            assert!((m2 - 2.0 * c).abs() < 1e-5 * 2.0 * c);
        }
    }

    #[test]
    fn weighted_atom_matches_residue() {
        for &(c, eta) in &[(1.0, 0.2), (0.5, 2.0), (3.0, 2.0), (5.0, 0.4)] {
            let w = atom_weight(c, eta).unwrap();
            assert!((w - (1.0 - 2.0 / c).max(0.0)).abs() < 1e-6, "c = {c}, eta = {eta}: {w}");
        }
    }

    #[test]
    fn csv_round_trip() {
        let spec = AedSpec::symmetric(2.5).unwrap();
        let grid: Vec<f64> = (0..11).map(|i| -3.0 + 0.6 * i as f64).collect();
        let r = aed_on_grid(spec, &grid).unwrap();
        let back = AedResult::from_csv(&r.to_csv()).unwrap();
        assert_eq!(back, r);
        let csv = r.to_csv();
        assert!(csv.lines().last().unwrap().starts_with("# atom_weight="));
    }
}
