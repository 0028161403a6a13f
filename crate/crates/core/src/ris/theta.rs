use super::RisError;

/// `ln C(n, k) = Σ_{i=1..k} ln((n − k + i) / i)`, using the smaller of k and n − k.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    assert!(k <= n);
    let k = k.min(n - k);
    let base = (n - k) as f64;
    (1..=k).map(|i| ((base + i as f64) / i as f64).ln()).sum()
}

/// Number of RR samples:
/// `θ = ⌈(8 + 2ε) · n · (ℓ ln n + ln C(n,k) + ln 2) / (KPT · ε²)⌉`, at least 1.
pub fn compute_theta(
    kpt: f64,
    n: usize,
    k: usize,
    epsilon: f64,
    ell: f64,
) -> Result<u64, RisError> {
    if k > n {
        return Err(RisError::KExceedsN { k, n });
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(RisError::BadEpsilon(epsilon));
    }
    let kpt = kpt.max(1.0);
    let nf = n as f64;
    let log_term = ell * nf.ln() + ln_binomial(n, k) + std::f64::consts::LN_2;
    let raw = (8.0 + 2.0 * epsilon) * nf * log_term / (kpt * epsilon * epsilon);
    Ok((raw.ceil() as u64).max(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_k_above_n() {
        assert_eq!(
            compute_theta(1.0, 5, 6, 0.3, 1.0),
            Err(RisError::KExceedsN { k: 6, n: 5 })
        );
        assert!(compute_theta(1.0, 5, 2, 0.0, 1.0).is_err());
        assert!(compute_theta(1.0, 5, 2, 1.0, 1.0).is_err());
    }

    #[test]
    fn small_binomials() {
        assert!((ln_binomial(5, 2) - 10f64.ln()).abs() < 1e-12);
        assert!(ln_binomial(7, 0).abs() < 1e-12);
        assert!(ln_binomial(7, 7).abs() < 1e-12);
    }

    #[test]
    fn larger_kpt_shrinks_theta() {
        let a = compute_theta(1.0, 1000, 10, 0.3, 1.0).unwrap();
        let b = compute_theta(50.0, 1000, 10, 0.3, 1.0).unwrap();
        assert!(b < a);
        assert!(compute_theta(1e30, 10, 1, 0.3, 1.0).unwrap() >= 1);
    }
}
