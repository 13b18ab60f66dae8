/// Sum `Σ a_n L_n(x)` by backward Clenshaw recurrence.
///
/// Uses `L_{n+1}(x) = ((2n + 1 - x) L_n(x) - n L_{n-1}(x)) / (n + 1)`, so the
/// recurrence coefficients are `α_n(x) = (2n + 1 - x)/(n + 1)` and
/// `β_n = -n/(n + 1)`.
pub fn laguerre_sum(coefficients: &[f64], x: f64) -> f64 {
    let n = coefficients.len();
    if n == 0 {
        return 0.0;
    }
    // b_k = a_k + α_k b_{k+1} + β_{k+1} b_{k+2}
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for k in (0..n).rev() {
        let kf = k as f64;
        let alpha = (2.0 * kf + 1.0 - x) / (kf + 1.0);
        let beta_next = -(kf + 1.0) / (kf + 2.0);
        let b0 = coefficients[k] + alpha * b1 + beta_next * b2;
        b2 = b1;
        b1 = b0;
    }
    // L_0 = 1, so the sum collapses to b_0.
    b1
}
