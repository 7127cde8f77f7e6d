//! Sample statistics used by the Monte Carlo oracle.

use crate::scalar::Real;

/// Mean and central moments `m2, m3, m4` (population normalization).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub n: usize,
    pub mean: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
}

impl Moments {
    /// Two-pass moments, summed in index order.
    pub fn of<T: Real>(xs: &[T]) -> Self {
        let n = xs.len();
        let nf = n as f64;
        if xs.windows(2).all(|w| w[0] == w[1]) {
            let mean = xs.first().map_or(0.0, |x| x.to_f64_lossy());
            return Self {
                n,
                mean,
                m2: 0.0,
                m3: 0.0,
                m4: 0.0,
            };
        }
        let mean = xs.iter().map(|x| x.to_f64_lossy()).sum::<f64>() / nf;
        let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
        for x in xs {
            let d = x.to_f64_lossy() - mean;
            let d2 = d * d;
            m2 += d2;
            m3 += d2 * d;
            m4 += d2 * d2;
        }
        Self {
            n,
            mean,
            m2: m2 / nf,
            m3: m3 / nf,
            m4: m4 / nf,
        }
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.m2 * self.n as f64 / (self.n as f64 - 1.0)
    }

    /// Large-sample standard error of the sample variance,
    /// `√((m4 − m2²)/n)`.
    pub fn variance_standard_error(&self) -> f64 {
        let v = (self.m4 - self.m2 * self.m2).max(0.0);
        (v / self.n as f64).sqrt()
    }

    pub fn skewness(&self) -> f64 {
        if self.m2 == 0.0 {
            0.0
        } else {
            self.m3 / self.m2.powf(1.5)
        }
    }

    pub fn excess_kurtosis(&self) -> f64 {
        if self.m2 == 0.0 {
            0.0
        } else {
            self.m4 / (self.m2 * self.m2) - 3.0
        }
    }
}

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// One-sample Kolmogorov–Smirnov statistic `sup |F_n − F|`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic Kolmogorov–Smirnov critical value at level `alpha`
/// (`0.01`, `0.05` or `0.10`).
pub fn ks_critical(n: usize, alpha: f64) -> f64 {
    let c = if alpha <= 0.01 {
        1.628
    } else if alpha <= 0.05 {
        1.358
    } else {
        1.224
    };
    c / (n as f64).sqrt()
}
