use std::f64::consts::PI;

use super::closed::check_c;
use crate::error::Result;

/// Support `[x_-, x_+]` of the Marchenko-Pastur law with ratio `c`,
/// `x_pm = (1 pm sqrt(c))^2`.
pub fn marchenko_pastur_support(c: f64) -> Result<(f64, f64)> {
    check_c(c)?;
    let s = c.sqrt();
    Ok(((1.0 - s).powi(2), (1.0 + s).powi(2)))
}

/// `(continuous density at x, atom weight at 0)` of the rescaled spectrum
/// of one reduced density matrix.
pub fn marchenko_pastur(x: f64, c: f64) -> Result<(f64, f64)> {
    let (lo, hi) = marchenko_pastur_support(c)?;
    let atom = (1.0 - 1.0 / c).max(0.0);
    if !(x > lo && x < hi) {
        return Ok((0.0, atom));
    }
    Ok((((x - lo) * (hi - x)).sqrt() / (2.0 * PI * c * x), atom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate_sqrt_ends, Tolerance};

    #[test]
    fn examples() {
        assert_eq!(marchenko_pastur_support(1.0).unwrap(), (0.0, 4.0));
        assert_eq!(marchenko_pastur(0.0, 1.0).unwrap().1, 0.0);
        assert_eq!(marchenko_pastur(0.0, 4.0).unwrap().1, 0.75);
    }

    #[test]
    fn normalized() {
        for &c in &[0.25, 1.0, 4.0] {
            let (lo, hi) = marchenko_pastur_support(c).unwrap();
            let r = integrate_sqrt_ends(|x| marchenko_pastur(x, c).unwrap().0, lo, hi, Tolerance::default()).unwrap();
            let atom = marchenko_pastur(0.0, c).unwrap().1;
            assert!((r.value + atom - 1.0).abs() < 1e-8, "c = {c}");
        }
    }

    #[test]
    fn unit_mean() {
        let c = 0.3;
        let (lo, hi) = marchenko_pastur_support(c).unwrap();
        let r = integrate_sqrt_ends(|x| x * marchenko_pastur(x, c).unwrap().0, lo, hi, Tolerance::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }
}
