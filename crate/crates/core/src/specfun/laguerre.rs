use super::gamma::ln_factorial;

/// Exact coefficient `(2(M-1) - k)! / (k! (M-1-k)!)` for `M <= 20`.
fn small_coefficient(m1: u64, k: u64) -> f64 {
    let num: f64 = ((m1 - k + 1)..=(2 * m1 - k)).map(|i| i as f64).product();
    let den: f64 = (1..=k).map(|i| i as f64).product();
    num / den
}

/// `sum_{k=0}^{M-1} (2(M-1) - k)! / (k! (M-1-k)!) t^k`, which equals
/// `(M-1)! (-1)^(M-1) L_{M-1}^{(1-2M)}(t)`.
///
/// Coefficients are formed from exact products up to `M = 20` and from
/// log-factorials above.
pub fn laguerre_sum(m_large: u32, t: f64) -> f64 {
    assert!(m_large >= 1, "laguerre_sum needs M >= 1");
    let m1 = u64::from(m_large - 1);
    let mut sum = 0.0;
    // Horner from the top coefficient down.
    for k in (0..=m1).rev() {
        let coeff = if m_large <= 20 {
            small_coefficient(m1, k)
        } else {
            (ln_factorial(2 * m1 - k) - ln_factorial(k) - ln_factorial(m1 - k)).exp()
        };
        sum = sum * t + coeff;
    }
    sum
}
