//! Monte Carlo oracle: particles diffusing across a reflecting channel
//! while the centered velocity carries them along it.
//!
//! ```text
//! dY = v(Y) dt + σ dB  (reflected at 0 and a),   dX = u'(t, Y) dt
//! ```
//!
//! `B` has diffusivity ½, so each Euler–Maruyama increment of `σB` is
//! `Normal(0, σ² dt)`. The dispersivity is the growth rate of `Var X`.
//!
//! Every particle draws from its own ChaCha8 stream selected by its index,
//! so an ensemble is bitwise reproducible from the seed regardless of how
//! the particles are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::domain::{
    profile_mean, stationary_density, ChannelConfig, DensityProfile, DispersivityEstimate,
    FlowSpec, Harmonic, Method, SpatialProfile,
};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stats::{ks_critical, ks_statistic, normal_cdf, Moments};

/// Nodes of the density used for initial positions and centering.
const DENSITY_NODES: usize = 4097;

/// Discretization and ensemble size of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimParams<T> {
    pub dt: T,
    /// Total simulated time, burn-in included.
    pub horizon: T,
    pub particles: usize,
    /// Initial time excluded from the displacement.
    pub burn_in: T,
    pub seed: u64,
}

impl<T: Real> Default for SimParams<T> {
    fn default() -> Self {
        Self {
            dt: T::lit(1e-4),
            horizon: T::lit(50.0),
            particles: 100_000,
            burn_in: T::lit(5.0),
            seed: 1,
        }
    }
}

impl<T: Real> SimParams<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero() && self.dt.is_finite()) {
            return Err(Error::input(format!("dt must be > 0, got {}", self.dt)));
        }
        if !(self.horizon >= T::lit(100.0) * self.dt) {
            return Err(Error::input(format!(
                "horizon must be at least 100 steps (>= {}), got {}",
                T::lit(100.0) * self.dt,
                self.horizon
            )));
        }
        if self.particles < 100 {
            return Err(Error::input(format!(
                "need at least 100 particles, got {}",
                self.particles
            )));
        }
        if !(self.burn_in >= T::zero() && self.burn_in < self.horizon) {
            return Err(Error::input(format!(
                "burn-in must lie in [0, horizon), got {}",
                self.burn_in
            )));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.horizon / self.dt).round().to_usize().unwrap_or(0)
    }

    pub fn burn_steps(&self) -> usize {
        (self.burn_in / self.dt).round().to_usize().unwrap_or(0)
    }

    /// Length of the accumulation window.
    pub fn window(&self) -> T {
        T::from_usize_lossy(self.steps() - self.burn_steps()) * self.dt
    }
}

/// Terminal state of every particle.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble<T> {
    /// Streamwise displacement accumulated after burn-in.
    pub displacement: Vec<T>,
    /// Cross-channel position at the horizon.
    pub endpoint: Vec<T>,
    /// Accumulation time.
    pub window: T,
}

impl<T: Real> Ensemble<T> {
    pub fn len(&self) -> usize {
        self.displacement.len()
    }

    pub fn is_empty(&self) -> bool {
        self.displacement.is_empty()
    }
}

/// Folds `y` into `[0, a]` by repeated mirroring at the walls.
#[inline]
pub fn reflect<T: Real>(mut y: T, a: T) -> T {
    loop {
        if y < T::zero() {
            y = -y;
        } else if y > a {
            y = a + a - y;
        } else {
            return y;
        }
    }
}

/// One increment of `σB` over `dt`.
#[inline]
pub fn brownian_increment<T: Real, R: Rng>(rng: &mut R, sigma: T, dt: T) -> T {
    let xi: f64 = rng.sample(StandardNormal);
    sigma * dt.sqrt() * T::lit(xi)
}

/// Random stream of particle `index` under `seed`.
pub fn particle_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Centered profiles and their per-step time factors.
struct Advection<T> {
    profiles: Vec<SpatialProfile<T>>,
    /// `factors[k * steps + n] = U0_k cos(ω_k t_{n+½} + ψ_k)`.
    factors: Vec<T>,
    steps: usize,
}

impl<T: Real> Advection<T> {
    fn new(flow: &FlowSpec<T>, q: &DensityProfile<T>, params: &SimParams<T>) -> Self {
        let steps = params.steps();
        let mut profiles = Vec::new();
        let mut factors = Vec::new();
        for h in flow.harmonics() {
            if h.amplitude == T::zero() {
                continue;
            }
            let mean = profile_mean(&h.profile, q);
            profiles.push(h.profile.clone().with_offset(-mean));
            factors.extend((0..steps).map(|n| {
                let t = (T::from_usize_lossy(n) + T::lit(0.5)) * params.dt;
                h.amplitude * (h.omega * t + h.phase).cos()
            }));
        }
        Self {
            profiles,
            factors,
            steps,
        }
    }

    #[inline]
    fn shapes(&self, s: T, out: &mut [T]) {
        for (o, p) in out.iter_mut().zip(&self.profiles) {
            *o = p.value(s);
        }
    }

    #[inline]
    fn velocity(&self, step: usize, before: &[T], after: &[T]) -> T {
        let mut u = T::zero();
        for ((b, a), factors) in before
            .iter()
            .zip(after)
            .zip(self.factors.chunks_exact(self.steps))
        {
            u = u + factors[step] * (*b + *a);
        }
        u
    }
}

fn simulate_one<T: Real>(
    index: usize,
    config: &ChannelConfig<T>,
    q: &DensityProfile<T>,
    adv: &Advection<T>,
    params: &SimParams<T>,
    initial: Initial,
) -> Result<(T, T)> {
    let mut rng = particle_rng(params.seed, index);
    let a = config.width;
    let u: f64 = rng.random();
    let mut y = match initial {
        Initial::Stationary => q.quantile(T::lit(u)),
        Initial::Uniform => T::lit(u) * a,
    };
    let k = adv.profiles.len();
    let mut before = vec![T::zero(); k];
    let mut after = vec![T::zero(); k];
    adv.shapes(y / a, &mut before);
    let (steps, burn) = (params.steps(), params.burn_steps());
    let drift = !config.drift.is_zero();
    let noise = config.sigma * params.dt.sqrt();
    let inv_a = T::one() / a;
    let mut x = T::zero();
    for n in 0..steps {
        let xi: f64 = rng.sample(StandardNormal);
        let mut next = y + noise * T::lit(xi);
        if drift {
            next = next + config.drift.value(y) * params.dt;
        }
        if !next.is_finite() {
            return Err(Error::NonFinite {
                step: n,
                particle: index,
            });
        }
        y = reflect(next, a);
        if k == 1 && n >= burn {
            let shape = adv.profiles[0].value(y * inv_a);
            x = x + adv.factors[n] * (before[0] + shape);
            before[0] = shape;
        } else if k > 1 && n >= burn {
            adv.shapes(y * inv_a, &mut after);
            x = x + adv.velocity(n, &before, &after);
            std::mem::swap(&mut before, &mut after);
        } else if k > 0 && n + 1 == burn {
            adv.shapes(y * inv_a, &mut before);
        }
    }
    x = x * T::lit(0.5) * params.dt;
    if !x.is_finite() {
        return Err(Error::NonFinite {
            step: steps,
            particle: index,
        });
    }
    Ok((x, y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Initial {
    Stationary,
    Uniform,
}

fn run<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
    params: &SimParams<T>,
    initial: Initial,
) -> Result<Ensemble<T>> {
    params.validate()?;
    let q = stationary_density(config, DENSITY_NODES)?;
    let adv = Advection::new(flow, &q, params);
    let states: Vec<(T, T)> = (0..params.particles)
        .into_par_iter()
        .map(|i| simulate_one(i, config, &q, &adv, params, initial))
        .collect::<Result<_>>()?;
    let (displacement, endpoint) = states.into_iter().unzip();
    Ok(Ensemble {
        displacement,
        endpoint,
        window: params.window(),
    })
}

/// Simulates the ensemble with `Y₀` drawn from the stationary density.
///
/// Each step is `Y ← reflect(Y + v(Y) dt + σ√dt ξ)`; `X` accumulates the
/// density-centered velocity at the step's mid-time, averaged over the two
/// endpoints of the step, from the end of the burn-in on.
pub fn simulate_paths<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
    params: &SimParams<T>,
) -> Result<Ensemble<T>> {
    run(config, flow, params, Initial::Stationary)
}

/// Cross-channel positions at the horizon for particles started uniformly,
/// without advection. With the horizon well past the relaxation time the
/// sample follows the stationary density.
pub fn occupancy_sample<T: Real>(
    config: &ChannelConfig<T>,
    params: &SimParams<T>,
) -> Result<Vec<T>> {
    let still = Harmonic::new(
        T::zero(),
        T::zero(),
        T::zero(),
        SpatialProfile::linear_shear(),
    )?;
    let ensemble = run(config, &FlowSpec::single(still), params, Initial::Uniform)?;
    Ok(ensemble.endpoint)
}

/// `Var X / window` with the large-sample standard error of the variance.
pub fn estimate_dispersivity_mc<T: Real>(
    ensemble: &Ensemble<T>,
    window: T,
) -> Result<DispersivityEstimate<T>> {
    if ensemble.len() < 2 {
        return Err(Error::input(format!(
            "need at least 2 particles, got {}",
            ensemble.len()
        )));
    }
    if !(window > T::zero()) {
        return Err(Error::domain(format!("window must be > 0, got {window}")));
    }
    let m = Moments::of(&ensemble.displacement);
    let w = window.to_f64_lossy();
    let mut est = DispersivityEstimate::new(T::lit(m.variance() / w), Method::MonteCarlo)
        .with_uncertainty(T::lit(m.variance_standard_error() / w));
    est.metadata.particles = Some(ensemble.len());
    Ok(est)
}

/// Shape statistics of `X/√window` against the normal law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalityRecord {
    pub particles: usize,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    /// Kolmogorov–Smirnov distance to `N(0, D̂)` with `D̂` the sample
    /// dispersivity.
    pub ks_statistic: f64,
    /// 1% critical value for `particles` samples.
    pub ks_critical: f64,
}

/// Advisory normality statistics; thresholds are left to the caller.
pub fn normality_check<T: Real>(ensemble: &Ensemble<T>) -> Result<NormalityRecord> {
    let n = ensemble.len();
    if n < 1000 {
        return Err(Error::Precondition(format!(
            "normality statistics need at least 1000 particles, got {n}"
        )));
    }
    let root = ensemble.window.to_f64_lossy().sqrt();
    let z: Vec<f64> = ensemble
        .displacement
        .iter()
        .map(|x| x.to_f64_lossy() / root)
        .collect();
    let m = Moments::of(&z);
    let sd = m.variance().sqrt();
    let ks = if sd > 0.0 {
        ks_statistic(&z, |x| normal_cdf(x / sd))
    } else {
        1.0
    };
    Ok(NormalityRecord {
        particles: n,
        skewness: m.skewness(),
        excess_kurtosis: m.excess_kurtosis(),
        ks_statistic: ks,
        ks_critical: ks_critical(n, 0.01),
    })
}

/// Estimates at `dt` and `dt/2` with their combined standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct StepHalving<T> {
    pub coarse: DispersivityEstimate<T>,
    pub fine: DispersivityEstimate<T>,
    /// `fine − coarse`.
    pub bias: T,
    /// `√(se_coarse² + se_fine²)`.
    pub combined_error: T,
}

impl<T: Real> StepHalving<T> {
    pub fn within_noise(&self) -> bool {
        self.bias.abs() < self.combined_error
    }
}

/// Weak-order bias check by repeating the run with half the timestep.
pub fn step_halving_check<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
    params: &SimParams<T>,
) -> Result<StepHalving<T>> {
    let estimate = |p: &SimParams<T>| {
        let e = simulate_paths(config, flow, p)?;
        let mut est = estimate_dispersivity_mc(&e, e.window)?;
        est.metadata.dt = Some(p.dt);
        Ok::<_, Error>(est)
    };
    let coarse = estimate(params)?;
    let halved = SimParams {
        dt: params.dt * T::lit(0.5),
        ..*params
    };
    let fine = estimate(&halved)?;
    let se = |e: &DispersivityEstimate<T>| e.uncertainty.unwrap_or(T::zero());
    let combined_error = (se(&coarse).powi(2) + se(&fine).powi(2)).sqrt();
    Ok(StepHalving {
        bias: fine.value - coarse.value,
        combined_error,
        coarse,
        fine,
    })
}
