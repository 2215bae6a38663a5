//! The two scalar functions shared by the improved bounds: the capped
//! Bernoulli variance `phi` and the Bernstein function `g`.

/// Capped Bernoulli variance `min(p, 1/2) * (1 - min(p, 1/2))`.
///
/// Concave and nondecreasing on `[0, 1]`, equal to `p(1 - p)` below one half
/// and frozen at `1/4` above.
pub fn phi(p: f64) -> f64 {
    let q = p.min(0.5);
    q * (1.0 - q)
}

/// Bernstein function `(e^x - 1 - x) / x^2`, extended by continuity with
/// `g(0) = 1/2`. Increasing on the whole real line.
pub fn bernstein_g(x: f64) -> f64 {
    // Below this magnitude the direct formula loses all digits to
    // cancellation; the Taylor series is exact to machine precision.
    if x.abs() < 1e-3 {
        // 1/2 + x/6 + x^2/24 + x^3/120 + x^4/720
        return 0.5 + x * (1.0 / 6.0 + x * (1.0 / 24.0 + x * (1.0 / 120.0 + x / 720.0)));
    }
    (x.exp_m1() - x) / (x * x)
}
