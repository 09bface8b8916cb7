//! Derivative principle applied to a product-Gaussian diagonal law, whose
//! eigenvalue law is known in closed form (GUE).

use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Outcome of [`derivative_principle_selftest`].
#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub passed: bool,
    pub points: usize,
    pub max_rel_error: f64,
    pub worst_point: Vec<f64>,
}

/// `P(z) exp(-|z|^2 / 2)` with `P` held as exponent vector -> coefficient.
type GaussPoly = BTreeMap<Vec<u32>, f64>;

/// `(d_i - d_j)(P e)` = `((d_i - d_j) P - (z_i - z_j) P) e`.
fn apply_difference(p: &GaussPoly, i: usize, j: usize) -> GaussPoly {
    let mut out = GaussPoly::new();
    let mut add = |e: Vec<u32>, c: f64| *out.entry(e).or_insert(0.0) += c;
    for (e, &c) in p {
        for (k, sign) in [(i, 1.0), (j, -1.0)] {
            if e[k] > 0 {
                let mut d = e.clone();
                d[k] -= 1;
                add(d, sign * c * f64::from(e[k]));
            }
            let mut up = e.clone();
            up[k] += 1;
            add(up, -sign * c);
        }
    }
    out.retain(|_, c| *c != 0.0);
    out
}

/// Runs the check for `N = 2` and `N = 3` on grids and reports the largest
/// relative deviation from `(prod p!)^-1 Delta^2 (2 pi)^(-N/2) exp(-|x|^2/2)`.
pub fn derivative_principle_selftest() -> SelftestReport {
    let mut report = SelftestReport {
        passed: true,
        points: 0,
        max_rel_error: 0.0,
        worst_point: Vec::new(),
    };
    for n in [2usize, 3] {
        let mut poly = GaussPoly::new();
        poly.insert(vec![0; n], (2.0 * PI).powf(-(n as f64) / 2.0));
        for i in 0..n {
            for j in i + 1..n {
                poly = apply_difference(&poly, i, j);
            }
        }
        let prod_fact: f64 = (1..=n).map(|p| (1..=p).product::<usize>() as f64).product();
        let grid: Vec<f64> = (0..9).map(|k| -2.0 + 0.5 * k as f64).collect();
        let mut idx = vec![0usize; n];
        loop {
            let x: Vec<f64> = idx.iter().map(|&k| grid[k]).collect();
            let gauss = (-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp();
            let mut vdm = 1.0;
            for i in 0..n {
                for j in i + 1..n {
                    vdm *= x[j] - x[i];
                }
            }
            let derived: f64 = poly
                .iter()
                .map(|(e, c)| c * e.iter().zip(&x).map(|(&k, v)| v.powi(k as i32)).product::<f64>())
                .sum();
            let got = vdm * derived * gauss / prod_fact;
            let want = vdm * vdm * (2.0 * PI).powf(-(n as f64) / 2.0) * gauss / prod_fact;
            let err = if want == 0.0 {
                got.abs()
            } else {
                ((got - want) / want).abs()
            };
            report.points += 1;
            if err > report.max_rel_error {
                report.max_rel_error = err;
                report.worst_point = x.clone();
            }
            let mut pos = 0;
            while pos < n {
                idx[pos] += 1;
                if idx[pos] < grid.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    report.passed = report.max_rel_error <= 1e-10;
    if !report.passed {
        log::warn!(
            "derivative principle self-test failed: max relative error {:e} at {:?}",
            report.max_rel_error,
            report.worst_point
        );
    }
    report
}
