//! Small- and large-frequency limits of the dispersivity for arbitrary
//! profiles.
//!
//! For `ω → ∞` the tracer has no time to diffuse across the channel during
//! one period and `D ~ σ²/(2ω²) ∫ (∂_y U)² q dy`. For `ω → 0` every instant
//! sees the steady problem, so `D` is the time average of the steady
//! dispersivity of the instantaneous profile; a single cosine gives half
//! the steady value of its peak profile.

use num_complex::Complex;

use crate::cell_solver::{
    assemble_group, group_harmonics, solve_cell_problem, ComplexField, FrequencyGroup, SolveDomain,
    DEFAULT_GRID,
};
use crate::domain::{
    dimensional_dispersivity, nondimensionalize, stationary_density, ChannelConfig, DensityProfile,
    DispersivityEstimate, FlowSpec, Harmonic, Method, SpatialProfile,
};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Trapezoid nodes for gradient energies without a closed expression.
pub const QUADRATURE_NODES: usize = 100_000;
/// Minimum time samples per common period.
pub const PERIOD_SAMPLES: usize = 64;
/// Largest denominator accepted when rationalizing frequency ratios.
pub const MAX_DENOMINATOR: u64 = 1000;

/// `σ²/(2ω²) ∫ (dU/dy)² q dy` for `u = cos(ωt) U(y/a)`.
pub fn large_omega_dispersivity<T: Real>(
    profile: &SpatialProfile<T>,
    omega: T,
    config: &ChannelConfig<T>,
) -> Result<DispersivityEstimate<T>> {
    let h = Harmonic::new(T::one(), omega, T::zero(), profile.clone())?;
    large_omega_flow(config, &FlowSpec::single(h))
}

/// Large-frequency limit for a flow; same-frequency harmonics interfere,
/// distinct frequencies add.
pub fn large_omega_flow<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
) -> Result<DispersivityEstimate<T>> {
    let a = config.width;
    let var = config.sigma * config.sigma;
    let mut total = T::zero();
    for group in group_harmonics(flow) {
        if !(group.omega > T::zero()) {
            return Err(Error::domain(format!(
                "large-frequency limit needs omega > 0, got {}",
                group.omega
            )));
        }
        let energy = match (&group.components[..], config.drift.is_zero()) {
            ([(c, p)], true) => match p.gradient_energy() {
                Some(e) => c.norm_sqr() * e,
                None => gradient_energy_uniform(&group),
            },
            (_, true) => gradient_energy_uniform(&group),
            (_, false) => {
                let q = stationary_density(config, QUADRATURE_NODES + 1)?;
                gradient_energy_weighted(&group, &q) * a
            }
        };
        // ∫₀ᵃ (dU/dy)² (1/a) dy = a⁻² ∫₀¹ (dU/ds)² ds
        total = total + var * energy / (T::lit(2.0) * group.omega * group.omega * a * a);
    }
    Ok(DispersivityEstimate::new(total, Method::AsymptoticLarge))
}

fn slope<T: Real>(group: &FrequencyGroup<T>, s: T) -> Complex<T> {
    group
        .components
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, (c, p)| {
            acc + *c * p.derivative(s)
        })
}

fn gradient_energy_uniform<T: Real>(group: &FrequencyGroup<T>) -> T {
    let n = QUADRATURE_NODES;
    let h = T::one() / T::from_usize_lossy(n);
    let f = |i: usize| slope(group, T::from_usize_lossy(i) * h).norm_sqr();
    let interior: T = (1..n).map(f).sum();
    h * (interior + T::lit(0.5) * (f(0) + f(n)))
}

fn gradient_energy_weighted<T: Real>(group: &FrequencyGroup<T>, q: &DensityProfile<T>) -> T {
    let a = q.width();
    q.weighted_integral(|y| slope(group, y / a).norm_sqr())
}

/// Period-averaged steady dispersivity of the instantaneous profile.
///
/// Frequencies must be commensurate (ratios within `1e-9` of a fraction
/// with denominator at most [`MAX_DENOMINATOR`]).
pub fn small_omega_dispersivity<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
) -> Result<DispersivityEstimate<T>> {
    small_omega_dispersivity_on(config, flow, DEFAULT_GRID)
}

/// As [`small_omega_dispersivity`] on an `n`-interval grid, with the
/// grid-halving extrapolation and difference as uncertainty.
pub fn small_omega_dispersivity_on<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
    n: usize,
) -> Result<DispersivityEstimate<T>> {
    if n < 32 || !n.is_multiple_of(2) {
        return Err(Error::input(format!(
            "grid size must be even and >= 32, got {n}"
        )));
    }
    let nd = nondimensionalize(config, flow);
    let groups = group_harmonics(&nd.flow);
    let multiples = common_multiples(&groups)?;
    let fine = period_average(&nd.config, &groups, &multiples, n)?;
    let coarse = period_average(&nd.config, &groups, &multiples, n / 2)?;
    let value = ((T::lit(4.0) * fine - coarse) / T::lit(3.0)).max(T::zero());
    let mut est = DispersivityEstimate::new(value, Method::AsymptoticSmall)
        .with_uncertainty((fine - coarse).abs());
    est.metadata.grid = Some(n);
    dimensional_dispersivity(est, &nd.scales)
}

/// Integer multiples `k_j` with `ω_j = k_j ω_base`; zero for steady groups.
fn common_multiples<T: Real>(groups: &[FrequencyGroup<T>]) -> Result<Vec<u64>> {
    let reference = groups
        .iter()
        .map(|g| g.omega)
        .filter(|&w| w > T::zero())
        .fold(T::infinity(), T::min);
    if !reference.is_finite() {
        return Ok(vec![0; groups.len()]);
    }
    let mut fractions = Vec::with_capacity(groups.len());
    for g in groups {
        if g.omega == T::zero() {
            fractions.push((0, 1));
            continue;
        }
        let ratio = (g.omega / reference).to_f64_lossy();
        match rationalize(ratio, MAX_DENOMINATOR, 1e-9) {
            Some(pq) => fractions.push(pq),
            None => {
                return Err(Error::Unsupported(format!(
                    "frequencies {} and {} have no common period",
                    reference, g.omega
                )))
            }
        }
    }
    let lcm = fractions.iter().fold(1u64, |l, &(_, q)| l / gcd(l, q) * q);
    Ok(fractions.iter().map(|&(p, q)| p * (lcm / q)).collect())
}

/// Best rational approximation `p/q` of `x > 0` by continued fractions.
fn rationalize(x: f64, max_den: u64, rel_tol: f64) -> Option<(u64, u64)> {
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e12 {
            return None;
        }
        let a = a as u64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64 / k1 as f64) - x).abs() <= rel_tol * x {
            return Some((h1, k1));
        }
        let frac = r - a as f64;
        if frac <= 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Trapezoid average over one common period of `σ² ∫ (∂_y f)² q` with `f`
/// the steady response to the instantaneous profile.
fn period_average<T: Real>(
    config: &ChannelConfig<T>,
    groups: &[FrequencyGroup<T>],
    multiples: &[u64],
    n: usize,
) -> Result<T> {
    let domain = if config.drift.is_zero() && groups.iter().all(|g| g.is_symmetric()) {
        SolveDomain::Half
    } else {
        SolveDomain::Full
    };
    let q = stationary_density(config, n + 1)?;
    let fields: Vec<ComplexField<T>> = groups
        .iter()
        .map(|g| {
            let steady = FrequencyGroup {
                omega: T::zero(),
                components: g.components.clone(),
            };
            solve_cell_problem(&assemble_group(config, &steady, &q, n, domain)?)
        })
        .collect::<Result<_>>()?;

    let kmax = multiples.iter().copied().max().unwrap_or(0) as usize;
    let samples = PERIOD_SAMPLES.max(2 * kmax + 2);
    let grid = &fields[0].grid;
    let h = grid[1] - grid[0];
    let weights: Vec<T> = grid
        .iter()
        .enumerate()
        .map(|(i, &y)| {
            let end = i == 0 || i + 1 == grid.len();
            let w = if end { T::lit(0.5) } else { T::one() };
            w * h * q.value_at(y)
        })
        .collect();

    let mut sum = T::zero();
    for m in 0..samples {
        let theta = T::lit(2.0) * T::PI() * T::from_usize_lossy(m) / T::from_usize_lossy(samples);
        let phases: Vec<Complex<T>> = multiples
            .iter()
            .map(|&k| Complex::from_polar(T::one(), theta * T::from_usize_lossy(k as usize)))
            .collect();
        let energy: T = (0..grid.len())
            .map(|i| {
                let g: T = fields
                    .iter()
                    .zip(&phases)
                    .map(|(f, e)| (f.derivative[i] * e).re)
                    .sum();
                g * g * weights[i]
            })
            .sum();
        sum = sum + energy;
    }
    let mut avg = config.sigma * config.sigma * sum / T::from_usize_lossy(samples);
    if domain == SolveDomain::Half {
        avg = avg * T::lit(2.0);
    }
    Ok(avg)
}
