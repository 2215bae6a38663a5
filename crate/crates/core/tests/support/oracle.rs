//! Every closed-form bound against a bisection on the inequality it solves.
//!
//! The oracle recomputes the complexity terms from scratch and only shares
//! the public evaluation entry points with the library. Each check returns
//! the largest deviation seen, or a description of the first disagreement.

use std::f64::consts::{E, LN_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vc_bounds::bounds::*;

pub const SAMPLES: usize = 1_000;
const AGREEMENT: f64 = 1e-9;

fn sauer(h: u32, m: u64) -> f64 {
    let (h, m) = (h as f64, m as f64);
    if m < h {
        m * LN_2
    } else {
        (h * (E * m / h).ln()).min(m * LN_2)
    }
}

fn d_over(h: u32, m: u64, eps: f64) -> f64 {
    sauer(h, m) + (1.0 / eps).ln()
}

/// Crossing of `f(x) = x - r1 - rhs(x)` on `[r1, hi]`, growing `hi` past 1
/// only when the right-hand side is defined there.
fn bisect(r1: f64, hi: f64, unbounded: bool, f: impl Fn(f64) -> f64) -> Option<f64> {
    let (mut lo, mut hi) = (r1, hi);
    if f(lo) > 0.0 {
        return None;
    }
    while !(f(hi) > 0.0) {
        if !unbounded || hi > 1e6 {
            return None;
        }
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy)]
struct Case {
    n: u64,
    h: u32,
    eps: f64,
    r1: f64,
    k: u64,
    /// uniform draw for theorem-specific parameters
    u: f64,
}

impl Case {
    fn draw(rng: &mut ChaCha8Rng) -> Self {
        let n = 10f64.powf(rng.gen_range(2.5..6.3)) as u64;
        let errors = rng.gen_range(0..=n * 45 / 100);
        Case {
            n,
            h: rng.gen_range(1..=25),
            eps: 10f64.powf(rng.gen_range(-4.0..-0.5)),
            r1: errors as f64 / n as f64,
            k: 10f64.powf(rng.gen_range(0.0..2.4)).round() as u64,
            u: rng.gen(),
        }
    }

    fn input(&self) -> BoundInput {
        BoundInput::vc(self.n, self.h, self.eps, self.r1, self.k)
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }

    fn q(&self) -> f64 {
        1.0 + 1.0 / self.k as f64
    }
}

pub type Outcome = Result<f64, String>;
pub type Check = fn() -> Outcome;

/// Runs `pair` on random cases until `SAMPLES` of them produce a
/// (library, oracle) pair, and checks their agreement.
fn check(name: &str, seed: u64, pair: impl Fn(&Case) -> Option<(f64, f64)>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut attempts, mut worst) = (0, 0, 0f64);
    while checked < SAMPLES {
        attempts += 1;
        if attempts >= 50 * SAMPLES {
            return Err(format!("{name}: too few usable cases ({checked})"));
        }
        let case = Case::draw(&mut rng);
        if let Some((lib, oracle)) = pair(&case) {
            let diff = (lib - oracle).abs();
            if !(diff <= AGREEMENT) {
                return Err(format!("{name}: {case:?} library {lib} oracle {oracle}"));
            }
            worst = worst.max(diff);
            checked += 1;
        }
    }
    Ok(worst)
}

fn inflation(d: f64, alpha: f64) -> f64 {
    1.0 - alpha.ln() / (2.0 * d) + alpha / (PI * d).sqrt()
}

fn alpha_for(c: &Case, d: f64) -> (Alpha, f64) {
    if c.u < 0.5 {
        (Alpha::Auto, 0.5 * (PI / d).sqrt())
    } else {
        let a = 0.05 + 3.0 * c.u;
        (Alpha::Value(a), a)
    }
}

pub fn sqrt_solver() -> Outcome {
    check("solve_sqrt_inequality", 1, |c| {
        let (c1, c2) = (c.u * 0.3, c.eps);
        let lib = solve_sqrt_inequality(c.r1, c1, c2);
        let oracle = bisect(c.r1, 1.0, true, |x| x - c.r1 - (c1 + c2 * x).sqrt())?;
        Some((lib, oracle))
    })
}

pub fn vapnik() -> Outcome {
    check("vapnik", 2, |c| {
        let dp = sauer(c.h, 2 * c.n) + (4.0 / c.eps).ln();
        let lib = vapnik_bound(&c.input()).unwrap().value;
        let oracle = bisect(c.r1, 1.0, true, |x| {
            x - c.r1 - 2.0 * (dp * x / c.nf()).sqrt()
        })?;
        Some((lib, oracle))
    })
}

pub fn previous_pac() -> Outcome {
    check("previous-pac", 3, |c| {
        let zeta = 1.1 + 4.0 * c.u;
        let d = sauer(c.h, 2 * c.n) + ((2.0 * zeta * c.nf()).ln() / (c.eps * zeta.ln())).ln();
        let lib = previous_pac_bound(&c.input(), zeta).ok()?.value;
        let oracle = bisect(c.r1, 1.0, true, |x| {
            x - c.r1 - (2.0 * zeta * d * (c.r1 + x) / c.nf()).sqrt()
        })?;
        Some((lib, oracle))
    })
}

pub fn transductive_basic_bound() -> Outcome {
    check("transductive-basic", 4, |c| {
        let d = d_over(c.h, (c.k + 1) * c.n, c.eps);
        let (n, k) = (c.nf(), c.k as f64);
        let lib = transductive_basic(&c.input()).unwrap().value;
        let oracle = bisect(c.r1, 1.0, true, |x| {
            x - c.r1 - (2.0 * d * c.r1 / (k * n) + 2.0 * d * x / n).sqrt()
        })?;
        Some((lib, oracle))
    })
}

pub fn transductive_improved_k1_bound() -> Outcome {
    check("transductive-improved-k1", 5, |c| {
        let d = d_over(c.h, 2 * c.n, c.eps);
        let lib = transductive_improved_k1(&c.input().with_k(1))
            .unwrap()
            .value;
        let oracle = bisect(c.r1, 1.0, true, |x| {
            x - c.r1 - (2.0 * d * (c.r1 + x - 2.0 * c.r1 * x) / c.nf()).sqrt()
        })?;
        Some((lib, oracle))
    })
}

pub fn transductive_improved_bound() -> Outcome {
    check("transductive-improved", 6, |c| {
        let d = d_over(c.h, (c.k + 1) * c.n, c.eps);
        let (q, k) = (c.q(), c.k as f64);
        let lib = transductive_improved(&c.input()).unwrap().value;
        let oracle = bisect(c.r1, 1.0, false, |x| {
            let p = (c.r1 + k * x) / (k + 1.0);
            x - c.r1 - (2.0 * q * q * d * p * (1.0 - p) / c.nf()).sqrt()
        })?;
        Some((lib, oracle))
    })
}

pub fn inductive_integrated_bound() -> Outcome {
    check("inductive-integrated", 7, |c| {
        let d = d_over(c.h, (c.k + 1) * c.n, c.eps);
        let (alpha, a) = alpha_for(c, d);
        let q = c.q();
        let dp = d * q * q * inflation(d, a).powi(2);
        let lib = inductive_integrated(&c.input(), alpha).unwrap().value;
        let oracle = bisect(c.r1, 1.0, false, |x| {
            x - c.r1 - (2.0 * dp * x * (1.0 - x) / c.nf()).sqrt()
        })?;
        Some((lib, oracle))
    })
}

pub fn inductive_integrated_tight_bound() -> Outcome {
    check("inductive-integrated-tight", 8, |c| {
        let d = d_over(c.h, (c.k + 1) * c.n, c.eps);
        let (alpha, a) = alpha_for(c, d);
        let l = d - a.ln();
        let cc = 2.0 * a * (l / PI).sqrt() + a * a / PI;
        let (q, k) = (c.q(), c.k as f64);
        let lib = inductive_integrated_tight(&c.input(), alpha).ok()?.value;
        let oracle = bisect(c.r1, 1.0, false, |x| {
            let p = (c.r1 + k * x) / (k + 1.0);
            x - c.r1 - (2.0 * q * q * (l * p * (1.0 - p) + cc * x * (1.0 - x)) / c.nf()).sqrt()
        })?;
        Some((lib, oracle))
    })
}

pub fn inductive_basic_variance_bound() -> Outcome {
    check("inductive-basic-variance", 9, |c| {
        let d = d_over(c.h, (c.k + 1) * c.n, c.eps);
        let (alpha, a) = alpha_for(c, d);
        let dp = c.q() * inflation(d, a).powi(2) * d;
        let lib = inductive_basic_variance(&c.input(), alpha).unwrap().value;
        let oracle = bisect(c.r1, 1.0, true, |x| {
            x - c.r1 - (2.0 * dp * x / c.nf()).sqrt()
        })?;
        Some((lib, oracle))
    })
}

pub fn inductive_exchangeable_k1_bound() -> Outcome {
    check("inductive-exchangeable-k1", 10, |c| {
        let d = d_over(c.h, 2 * c.n, c.eps);
        let (alpha, a) = alpha_for(c, d);
        let dp = d - a.ln();
        let cc = 2.0 * a * (dp / PI).sqrt() + a * a / PI;
        let n = c.nf();
        let weakened = (c.u * 1e6).fract() < 0.5;
        let lib = inductive_exchangeable_k1(&c.input().with_k(1), alpha, weakened)
            .ok()?
            .value;
        let oracle = if weakened {
            let dpp = dp + 2.0 * cc;
            bisect(c.r1, 1.0, true, |x| {
                x - c.r1 - (2.0 * dpp * (c.r1 + x - 2.0 * c.r1 * x) / n).sqrt()
            })?
        } else {
            bisect(c.r1, 1.0, false, |x| {
                x - c.r1
                    - (2.0 * dp * (c.r1 + x - 2.0 * c.r1 * x) / n + 4.0 * cc * x * (1.0 - x) / n)
                        .sqrt()
            })?
        };
        Some((lib, oracle))
    })
}

pub fn inductive_near_optimal_lambda_bound() -> Outcome {
    check("inductive-near-optimal-lambda", 11, |c| {
        let d = d_over(c.h, (c.k + 1) * c.n, c.eps);
        let q = c.q();
        let (dbar, dp) = if c.u < 0.5 {
            (DBar::DStar, q * q * d)
        } else {
            let db = d * (0.5 + 3.0 * (c.u - 0.5));
            (DBar::Value(db), 0.25 * q * q * (db + d) * (1.0 + d / db))
        };
        let lib = inductive_near_optimal_lambda(&c.input(), dbar)
            .unwrap()
            .value;
        let oracle = bisect(c.r1, 1.0, false, |x| {
            x - c.r1 - (2.0 * dp * x * (1.0 - x) / c.nf()).sqrt()
        })?;
        Some((lib, oracle))
    })
}

pub fn inductive_exchangeable_lambda_bound() -> Outcome {
    check("inductive-exchangeable-lambda", 12, |c| {
        let (dbar, dp) = if c.u < 0.5 {
            (DBar::DStar, 2.0 * d_over(c.h, c.n, c.eps))
        } else {
            let d = d_over(c.h, 2 * c.n, c.eps);
            let db = d * (0.5 + 3.0 * (c.u - 0.5));
            (DBar::Value(db), 0.5 * db * (1.0 + d / db).powi(2))
        };
        let lib = inductive_exchangeable_lambda(&c.input(), dbar)
            .unwrap()
            .value;
        let oracle = bisect(c.r1, 1.0, false, |x| {
            x - c.r1 - (2.0 * dp * x * (1.0 - x) / c.nf()).sqrt()
        })?;
        Some((lib, oracle))
    })
}

fn bernstein(x: f64) -> f64 {
    (x.exp() - 1.0 - x) / (x * x)
}

pub fn relative_chained_bound() -> Outcome {
    check("relative-chained", 13, |c| {
        // floor(ln N), guarded against rounding when N is close to e^j
        let levels = (c.nf().ln().floor() as u32..)
            .take(2)
            .filter(|j| (*j as f64).exp() <= c.nf())
            .max()?;
        let j = 1 + (c.u * levels as f64) as u32 % levels;
        let (n, k, h) = (c.nf(), c.k as f64, c.h as f64);
        let m = (k + 1.0) * n;
        let xi = (m * (-(j as f64)).exp()).floor() / m;
        if xi <= 0.0 {
            return None;
        }
        let entropy = (E * levels as f64 * (h + 1.0)).ln() + (1.0 / c.eps).ln();
        let dj = h * (2.0 * E * E * m / (h * xi)).ln() + entropy;
        let djp = h * (2.0 * E / xi).ln() + entropy;
        let q2 = c.q() * c.q();
        let a = (bernstein((8.0 * dj / (xi * n)).sqrt()) + 0.5) * (2.0 * q2 * xi * dj / n).sqrt();
        let b = (2.0 * q2 * djp / n).sqrt();
        let lib = relative_chained(&c.input(), Level::Fixed(j)).ok()?.value;
        // p = 1 at this x; beyond it the variance term is undefined
        let hi = (((1.0 - xi) * (1.0 + k) - c.r1) / k).min(1.0);
        let oracle = bisect(c.r1, hi, false, |x| {
            let p = (c.r1 + k * x) / (1.0 + k) + xi;
            x - c.r1 - a - b * (p * (1.0 - p)).sqrt()
        })?;
        Some((lib, oracle))
    })
}

/// Every check with the bound it covers.
pub const ALL: [(&str, Check); 13] = [
    ("solve_sqrt_inequality", sqrt_solver),
    ("vapnik", vapnik),
    ("previous-pac", previous_pac),
    ("transductive-basic", transductive_basic_bound),
    ("transductive-improved-k1", transductive_improved_k1_bound),
    ("transductive-improved", transductive_improved_bound),
    ("inductive-integrated", inductive_integrated_bound),
    (
        "inductive-integrated-tight",
        inductive_integrated_tight_bound,
    ),
    ("inductive-basic-variance", inductive_basic_variance_bound),
    ("inductive-exchangeable-k1", inductive_exchangeable_k1_bound),
    (
        "inductive-near-optimal-lambda",
        inductive_near_optimal_lambda_bound,
    ),
    (
        "inductive-exchangeable-lambda",
        inductive_exchangeable_lambda_bound,
    ),
    ("relative-chained", relative_chained_bound),
];
