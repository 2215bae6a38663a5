//! Exact binomial confidence limits and the two-sample Kolmogorov-Smirnov test.

use statrs::distribution::{Beta, ContinuousCDF};

/// One-sided exact (Clopper-Pearson) upper confidence limit at level `level`
/// for a binomial proportion after `successes` out of `trials`.
pub fn clopper_pearson_upper(successes: u64, trials: u64, level: f64) -> f64 {
    assert!(trials > 0 && successes <= trials && (0.0..1.0).contains(&level));
    if successes == trials {
        return 1.0;
    }
    if successes == 0 {
        return 1.0 - (1.0 - level).powf(1.0 / trials as f64);
    }
    Beta::new(successes as f64 + 1.0, (trials - successes) as f64)
        .expect("positive shape parameters")
        .inverse_cdf(level)
}

/// One-sided exact lower confidence limit, the mirror of
/// [`clopper_pearson_upper`].
pub fn clopper_pearson_lower(successes: u64, trials: u64, level: f64) -> f64 {
    assert!(trials > 0 && successes <= trials && (0.0..1.0).contains(&level));
    if successes == 0 {
        return 0.0;
    }
    if successes == trials {
        return (1.0 - level).powf(1.0 / trials as f64);
    }
    Beta::new(successes as f64, (trials - successes) as f64 + 1.0)
        .expect("positive shape parameters")
        .inverse_cdf(1.0 - level)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsTest {
    /// `sup |F_a - F_b|`.
    pub statistic: f64,
    /// Asymptotic p-value.
    pub p_value: f64,
}

impl KsTest {
    pub fn rejects_at(&self, level: f64) -> bool {
        self.p_value < level
    }
}

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
/// distribution (Stephens' small-sample correction).
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsTest {
    assert!(!a.is_empty() && !b.is_empty());
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0f64);
    while i < a.len() && j < b.len() {
        // step past every copy of the smaller value so ties move together
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let en = (na * nb / (na + nb)).sqrt();
    let lambda = (en + 0.12 + 0.11 / en) * d;
    KsTest {
        statistic: d,
        p_value: kolmogorov_survival(lambda),
    }
}

/// `P(K > lambda)` for the Kolmogorov distribution.
fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=100 {
        let term = (-2.0 * (j * j) as f64 * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-16 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}
