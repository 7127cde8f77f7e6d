//! Numerical solution of the periodic cell problem
//!
//! ```text
//! ½σ² f_yy + v f_y + f_t = u'(t, y),   f_y = 0 at y = 0, a,
//! ```
//!
//! and the dispersivity `D = ⟨σ² ∫ f_y² q dy⟩_t`.
//!
//! Each frequency is handled through the complex amplitude `F` in
//! `f = Re[F e^{iωt}]`, giving `½σ² F'' + v F' + iω F = Û'` with `Û'` the
//! density-centered complex profile amplitude. The equation is discretized
//! with second-order central differences on a uniform grid, the Neumann
//! condition is imposed through mirrored ghost nodes, and the tridiagonal
//! system is solved directly.

use num_complex::Complex;

use crate::closed_forms::same_frequency;
use crate::domain::{
    dimensional_dispersivity, nondimensionalize, profile_mean, stationary_density, ChannelConfig,
    DensityProfile, DispersivityEstimate, FlowSpec, Harmonic, Method, SpatialProfile,
};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tridiag;

/// Grid intervals used when the caller has no preference.
pub const DEFAULT_GRID: usize = 2048;
/// Smallest grid accepted by the assembler.
pub const MIN_GRID: usize = 16;

/// Interval the cell problem is solved on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveDomain {
    /// `[0, a]`.
    Full,
    /// `[0, a/2]` with a mirror condition at mid-channel; only valid for
    /// even forcing and zero drift. Integrals are doubled.
    Half,
}

/// Whether the pipeline may exploit mid-channel symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainPolicy {
    /// Half range for even forcing without drift, full range otherwise.
    Auto,
    FullOnly,
}

/// Harmonics sharing one frequency, merged into complex amplitudes
/// `U0 e^{iψ}` attached to their profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGroup<T> {
    pub omega: T,
    pub components: Vec<(Complex<T>, SpatialProfile<T>)>,
}

impl<T: Real> FrequencyGroup<T> {
    pub fn is_symmetric(&self) -> bool {
        self.components.iter().all(|(_, p)| p.is_symmetric())
    }
}

impl<T: Real> From<&Harmonic<T>> for FrequencyGroup<T> {
    fn from(h: &Harmonic<T>) -> Self {
        Self {
            omega: h.omega,
            components: vec![(Complex::from_polar(h.amplitude, h.phase), h.profile.clone())],
        }
    }
}

/// Groups harmonics by frequency (relative tolerance `1e-12`), keeping the
/// order of first appearance.
pub fn group_harmonics<T: Real>(flow: &FlowSpec<T>) -> Vec<FrequencyGroup<T>> {
    let mut groups: Vec<FrequencyGroup<T>> = Vec::new();
    for h in flow.harmonics() {
        let amp = Complex::from_polar(h.amplitude, h.phase);
        match groups.iter_mut().find(|g| same_frequency(g.omega, h.omega)) {
            Some(g) => g.components.push((amp, h.profile.clone())),
            None => groups.push(FrequencyGroup {
                omega: h.omega,
                components: vec![(amp, h.profile.clone())],
            }),
        }
    }
    groups
}

/// Discretized cell problem for one frequency.
#[derive(Debug, Clone)]
pub struct ComplexBvp<T> {
    grid: Vec<T>,
    h: T,
    omega: T,
    domain: SolveDomain,
    lower: Vec<Complex<T>>,
    diag: Vec<Complex<T>>,
    upper: Vec<Complex<T>>,
    rhs: Vec<Complex<T>>,
    pinned: bool,
}

impl<T: Real> ComplexBvp<T> {
    /// Number of grid intervals.
    pub fn intervals(&self) -> usize {
        self.grid.len() - 1
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn rhs(&self) -> &[Complex<T>] {
        &self.rhs
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn domain(&self) -> SolveDomain {
        self.domain
    }

    /// True when `F(0) = 0` replaced the first row (`omega = 0`).
    pub fn is_pinned(&self) -> bool {
        self.pinned
    }

    /// Applies the assembled matrix to `x`.
    pub fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = x.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s = s + self.lower[i] * x[i - 1];
                }
                if i + 1 < n {
                    s = s + self.upper[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// `max |A x - b| / max |b|`.
    pub fn relative_residual(&self, x: &[Complex<T>]) -> T {
        let ax = self.apply(x);
        let num = ax
            .iter()
            .zip(&self.rhs)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max);
        let den = self.rhs.iter().map(|b| b.norm()).fold(T::zero(), T::max);
        if den == T::zero() {
            num
        } else {
            num / den
        }
    }
}

/// Complex amplitude `F` and its derivative on the solver grid.
#[derive(Debug, Clone)]
pub struct ComplexField<T> {
    pub grid: Vec<T>,
    pub values: Vec<Complex<T>>,
    pub derivative: Vec<Complex<T>>,
    pub omega: T,
    pub domain: SolveDomain,
}

impl<T: Real> ComplexField<T> {
    /// Largest boundary derivative relative to the largest derivative.
    pub fn neumann_defect(&self) -> T {
        let n = self.derivative.len();
        let peak = self
            .derivative
            .iter()
            .map(|d| d.norm())
            .fold(T::zero(), T::max);
        let ends = self.derivative[0].norm().max(self.derivative[n - 1].norm());
        if peak == T::zero() {
            ends
        } else {
            ends / peak
        }
    }
}

/// Assembles the cell problem for a single harmonic on the full channel.
pub fn assemble_cell_problem<T: Real>(
    config: &ChannelConfig<T>,
    harmonic: &Harmonic<T>,
    q: &DensityProfile<T>,
    n: usize,
) -> Result<ComplexBvp<T>> {
    assemble_group(
        config,
        &FrequencyGroup::from(harmonic),
        q,
        n,
        SolveDomain::Full,
    )
}

/// Assembles `½σ² F'' + v F' + iω F = Σ_k c_k (U_k − ⟨U_k⟩_q)` with
/// ghost-node Neumann rows.
pub fn assemble_group<T: Real>(
    config: &ChannelConfig<T>,
    group: &FrequencyGroup<T>,
    q: &DensityProfile<T>,
    n: usize,
    domain: SolveDomain,
) -> Result<ComplexBvp<T>> {
    if n < MIN_GRID {
        return Err(Error::input(format!(
            "cell grid needs >= {MIN_GRID} intervals, got {n}"
        )));
    }
    if !(group.omega.is_finite() && group.omega >= T::zero()) {
        return Err(Error::input(format!(
            "frequency must be >= 0, got {}",
            group.omega
        )));
    }
    let a = config.width;
    if (q.width() - a).abs() > T::lit(1e-12) * a {
        return Err(Error::input(format!(
            "density grid spans [0, {}] but the channel width is {a}",
            q.width()
        )));
    }
    if domain == SolveDomain::Half {
        if !config.drift.is_zero() {
            return Err(Error::Precondition(
                "half-range solve requires zero vertical drift".into(),
            ));
        }
        if !group.is_symmetric() {
            return Err(Error::Precondition(
                "half-range solve requires profiles even about mid-channel".into(),
            ));
        }
    }

    let length = match domain {
        SolveDomain::Full => a,
        SolveDomain::Half => a * T::lit(0.5),
    };
    let nt = T::from_usize_lossy(n);
    let h = length / nt;
    let grid: Vec<T> = (0..=n)
        .map(|i| length * T::from_usize_lossy(i) / nt)
        .collect();

    let means: Vec<T> = group
        .components
        .iter()
        .map(|(_, p)| profile_mean(p, q))
        .collect();
    let mut rhs: Vec<Complex<T>> = grid
        .iter()
        .map(|&y| {
            let s = y / a;
            group
                .components
                .iter()
                .zip(&means)
                .fold(Complex::new(T::zero(), T::zero()), |acc, ((c, p), &m)| {
                    acc + *c * (p.value(s) - m)
                })
        })
        .collect();

    let diff = T::lit(0.5) * config.sigma * config.sigma / (h * h);
    let zero = Complex::new(T::zero(), T::zero());
    let centre = Complex::new(-T::lit(2.0) * diff, group.omega);
    let mut lower = vec![zero; n + 1];
    let mut diag = vec![centre; n + 1];
    let mut upper = vec![zero; n + 1];
    for i in 1..n {
        let adv = config.drift.value(grid[i]) / (T::lit(2.0) * h);
        lower[i] = Complex::new(diff - adv, T::zero());
        upper[i] = Complex::new(diff + adv, T::zero());
    }
    // F_{-1} = F_1 and F_{n+1} = F_{n-1}; the drift terms cancel.
    upper[0] = Complex::new(T::lit(2.0) * diff, T::zero());
    lower[n] = Complex::new(T::lit(2.0) * diff, T::zero());

    let pinned = group.omega == T::zero();
    if pinned {
        // Constants span the null space; F only enters through F'.
        diag[0] = Complex::new(T::one(), T::zero());
        upper[0] = zero;
        rhs[0] = zero;
    }

    Ok(ComplexBvp {
        grid,
        h,
        omega: group.omega,
        domain,
        lower,
        diag,
        upper,
        rhs,
        pinned,
    })
}

/// Direct solve; `F'` by central differences, with the mirrored ghost
/// values at the walls (so the boundary derivative is exactly zero).
pub fn solve_cell_problem<T: Real>(bvp: &ComplexBvp<T>) -> Result<ComplexField<T>> {
    let values = tridiag::solve(&bvp.lower, &bvp.diag, &bvp.upper, &bvp.rhs).map_err(|_| {
        Error::Singular {
            omega: bvp.omega.to_f64_lossy(),
            n: bvp.intervals(),
        }
    })?;
    let n = values.len();
    let zero = Complex::new(T::zero(), T::zero());
    let inv = T::one() / (T::lit(2.0) * bvp.h);
    let mut derivative = vec![zero; n];
    for i in 1..n - 1 {
        derivative[i] = (values[i + 1] - values[i - 1]) * inv;
    }
    Ok(ComplexField {
        grid: bvp.grid.clone(),
        values,
        derivative,
        omega: bvp.omega,
        domain: bvp.domain,
    })
}

/// `D = Σ_k σ² ⟨∫ (∂_y Re[F_k e^{iω_k t}])² q dy⟩_t` by the trapezoid rule.
///
/// For `ω > 0` the time average of the squared cosine gives
/// `½σ² ∫ |F'|² q`; a zero-frequency field is steady and contributes
/// `σ² ∫ (Re F')² q`. Fields must carry pairwise distinct frequencies.
pub fn dispersivity_from_field<T: Real>(
    fields: &[ComplexField<T>],
    q: &DensityProfile<T>,
    sigma: T,
) -> Result<T> {
    for (i, f) in fields.iter().enumerate() {
        if fields[i + 1..]
            .iter()
            .any(|g| same_frequency(f.omega, g.omega))
        {
            return Err(Error::Precondition(format!(
                "two fields share frequency {}; merge same-frequency harmonics into one \
                 complex amplitude before solving",
                f.omega
            )));
        }
    }
    let mut total = T::zero();
    for f in fields {
        let n = f.grid.len();
        let h = f.grid[1] - f.grid[0];
        let steady = f.omega == T::zero();
        let integrand = |i: usize| {
            let d = f.derivative[i];
            let energy = if steady {
                d.re * d.re
            } else {
                T::lit(0.5) * d.norm_sqr()
            };
            energy * q.value_at(f.grid[i])
        };
        let interior: T = (1..n - 1).map(integrand).sum();
        let mut integral = h * (interior + T::lit(0.5) * (integrand(0) + integrand(n - 1)));
        if f.domain == SolveDomain::Half {
            integral = integral * T::lit(2.0);
        }
        total = total + integral;
    }
    Ok(sigma * sigma * total)
}

fn choose_domain<T: Real>(
    config: &ChannelConfig<T>,
    group: &FrequencyGroup<T>,
    policy: DomainPolicy,
) -> SolveDomain {
    match policy {
        DomainPolicy::Auto if config.drift.is_zero() && group.is_symmetric() => SolveDomain::Half,
        _ => SolveDomain::Full,
    }
}

/// Solved fields for every frequency of the flow on an `n`-interval grid.
pub fn solve_flow<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
    q: &DensityProfile<T>,
    n: usize,
    policy: DomainPolicy,
) -> Result<Vec<ComplexField<T>>> {
    group_harmonics(flow)
        .iter()
        .map(|g| {
            let domain = choose_domain(config, g, policy);
            solve_cell_problem(&assemble_group(config, g, q, n, domain)?)
        })
        .collect()
}

/// Second-order estimate on a single `n`-interval grid, in the units of
/// `config` and `flow`.
pub fn grid_dispersivity<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
    n: usize,
    policy: DomainPolicy,
) -> Result<T> {
    let q = stationary_density(config, n + 1)?;
    let fields = solve_flow(config, flow, &q, n, policy)?;
    dispersivity_from_field(&fields, &q, config.sigma)
}

/// Grid-halving pair `(extrapolated value, |D_n − D_{n/2}|)` in the units of
/// `config` and `flow`.
///
/// The extrapolation `(4 D_n − D_{n/2}) / 3` cancels the leading `h²` term
/// of the second-order scheme.
pub fn extrapolated_dispersivity<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
    n: usize,
    policy: DomainPolicy,
) -> Result<(T, T)> {
    if n < 2 * MIN_GRID || !n.is_multiple_of(2) {
        return Err(Error::input(format!(
            "grid size must be even and >= {}, got {n}",
            2 * MIN_GRID
        )));
    }
    let fine = grid_dispersivity(config, flow, n, policy)?;
    let coarse = grid_dispersivity(config, flow, n / 2, policy)?;
    let value = ((T::lit(4.0) * fine - coarse) / T::lit(3.0)).max(T::zero());
    Ok((value, (fine - coarse).abs()))
}

/// Full pipeline: nondimensionalize, merge same-frequency harmonics, centre,
/// solve on `n` and `n/2` intervals, extrapolate and rescale.
///
/// Even forcing without drift is solved on the half channel. The reported
/// uncertainty is the grid-halving difference.
pub fn numerical_dispersivity<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
    n: usize,
) -> Result<DispersivityEstimate<T>> {
    numerical_dispersivity_with(config, flow, n, DomainPolicy::Auto)
}

pub fn numerical_dispersivity_with<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
    n: usize,
    policy: DomainPolicy,
) -> Result<DispersivityEstimate<T>> {
    let nd = nondimensionalize(config, flow);
    let (value, spread) = extrapolated_dispersivity(&nd.config, &nd.flow, n, policy)?;
    let mut est = DispersivityEstimate::new(value, Method::Numerical).with_uncertainty(spread);
    est.metadata.grid = Some(n);
    let half = policy == DomainPolicy::Auto
        && nd.config.drift.is_zero()
        && group_harmonics(&nd.flow).iter().all(|g| g.is_symmetric());
    if half {
        est.metadata.note = Some("half-range".into());
    }
    dimensional_dispersivity(est, &nd.scales)
}

/// Dispersivity of the steady flow `u = U(y)`: `σ² ∫ f_y² q` with
/// `½σ² f'' + v f' = U − ⟨U⟩_q`.
///
/// Without drift and with `σ = a = 1` this equals `4 ∫₀¹ (∫₀ʸ U')² dy`.
pub fn steady_dispersivity<T: Real>(
    config: &ChannelConfig<T>,
    profile: &SpatialProfile<T>,
) -> Result<DispersivityEstimate<T>> {
    let flow = FlowSpec::single(Harmonic::new(
        T::one(),
        T::zero(),
        T::zero(),
        profile.clone(),
    )?);
    numerical_dispersivity(config, &flow, DEFAULT_GRID)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{d1, d2, power_law_closed_form};
    use crate::domain::VerticalDrift;
    use approx::assert_relative_eq;

    fn single(omega: f64, phase: f64, profile: SpatialProfile<f64>) -> FlowSpec<f64> {
        FlowSpec::single(Harmonic::new(1.0, omega, phase, profile).unwrap())
    }

    fn unit_q(n: usize) -> DensityProfile<f64> {
        stationary_density(&ChannelConfig::unit(), n + 1).unwrap()
    }

    /// `4 ∫₀¹ (∫₀ʸ (U − ⟨U⟩))² dy` by composite Simpson on a fine grid.
    fn steady_oracle(profile: &SpatialProfile<f64>) -> f64 {
        let m = 40_000;
        let h = 1.0 / m as f64;
        let mean = {
            let s: f64 = (0..=m)
                .map(|i| {
                    let w = if i == 0 || i == m {
                        1.0
                    } else if i % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    w * profile.value(i as f64 * h)
                })
                .sum();
            s * h / 3.0
        };
        // Antiderivative G by cumulative Simpson over pairs of cells.
        let mut g = vec![0.0; m + 1];
        for i in (0..m).step_by(2) {
            let f = |k: usize| profile.value(k as f64 * h) - mean;
            let mid = f(i) + f(i + 1);
            g[i + 1] = g[i] + h * (5.0 * f(i) + 8.0 * f(i + 1) - f(i + 2)) / 12.0;
            g[i + 2] = g[i] + h * (f(i) + 4.0 * f(i + 1) + f(i + 2)) / 3.0;
            let _ = mid;
        }
        let s: f64 = (0..=m)
            .map(|i| {
                let w = if i == 0 || i == m {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                w * g[i] * g[i]
            })
            .sum();
        4.0 * s * h / 3.0
    }

    #[test]
    fn assembly_examples() {
        let cfg = ChannelConfig::unit();
        let q = unit_q(64);
        let shear = Harmonic::new(1.0, 1.0, 0.0, SpatialProfile::linear_shear()).unwrap();
        let bvp = assemble_cell_problem(&cfg, &shear, &q, 64).unwrap();
        for (y, r) in bvp.grid().iter().zip(bvp.rhs()) {
            assert!((r.re - (y - 0.5)).abs() < 1e-15 && r.im == 0.0);
        }
        let pois = Harmonic::new(1.0, 1.0, 0.0, SpatialProfile::poiseuille()).unwrap();
        let bvp = assemble_cell_problem(&cfg, &pois, &q, 64).unwrap();
        for (y, r) in bvp.grid().iter().zip(bvp.rhs()) {
            assert!((r.re - (y - y * y - 1.0 / 6.0)).abs() < 1e-15);
        }
        assert!(!bvp.is_pinned());
        let steady = Harmonic::new(1.0, 0.0, 0.0, SpatialProfile::linear_shear()).unwrap();
        let bvp = assemble_cell_problem(&cfg, &steady, &q, 64).unwrap();
        assert!(bvp.is_pinned());
        assert_eq!(bvp.rhs()[0], Complex::new(0.0, 0.0));
    }

    #[test]
    fn assembly_rejects_bad_input() {
        let cfg = ChannelConfig::unit();
        let q = unit_q(64);
        let h = Harmonic::new(1.0, 1.0, 0.0, SpatialProfile::linear_shear()).unwrap();
        assert!(matches!(
            assemble_cell_problem(&cfg, &h, &q, 8),
            Err(Error::Input(_))
        ));
        let wide = ChannelConfig::new(2.0, 1.0, VerticalDrift::Zero).unwrap();
        assert!(matches!(
            assemble_cell_problem(&wide, &h, &q, 64),
            Err(Error::Input(_))
        ));
        let g = FrequencyGroup::from(&h);
        assert!(matches!(
            assemble_group(&cfg, &g, &q, 64, SolveDomain::Half),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn homogeneous_problem_has_zero_solution() {
        let cfg = ChannelConfig::unit();
        let q = unit_q(64);
        let flat = Harmonic::new(1.0, 2.0, 0.0, SpatialProfile::linear_shear())
            .map(|mut h| {
                h.amplitude = 0.0;
                h
            })
            .unwrap();
        let field =
            solve_cell_problem(&assemble_cell_problem(&cfg, &flat, &q, 64).unwrap()).unwrap();
        assert!(field.values.iter().all(|v| v.norm() == 0.0));
        assert!(field.derivative.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn solve_residual_and_neumann() {
        for drift in [VerticalDrift::Zero, VerticalDrift::Constant(0.5)] {
            let cfg = ChannelConfig::new(1.0, 1.0, drift).unwrap();
            let q = stationary_density(&cfg, 1025).unwrap();
            for omega in [0.0, 0.1, 1.0, 10.0, 100.0] {
                let h = Harmonic::new(1.0, omega, 0.4, SpatialProfile::poiseuille()).unwrap();
                let bvp = assemble_cell_problem(&cfg, &h, &q, 1024).unwrap();
                let field = solve_cell_problem(&bvp).unwrap();
                assert!(bvp.relative_residual(&field.values) < 1e-10);
                assert!(field.neumann_defect() < 1e-8);
            }
        }
    }

    #[test]
    fn shear_at_unit_frequency() {
        let cfg = ChannelConfig::unit();
        let q = unit_q(2048);
        let h = Harmonic::new(1.0, 1.0, 0.0, SpatialProfile::linear_shear()).unwrap();
        let field =
            solve_cell_problem(&assemble_cell_problem(&cfg, &h, &q, 2048).unwrap()).unwrap();
        let raw = dispersivity_from_field(&[field], &q, 1.0).unwrap();
        assert!((raw - 0.016010).abs() < 1e-6);
        assert_relative_eq!(raw, d1(1.0).unwrap(), max_relative = 1e-6);
    }

    #[test]
    fn field_functional_examples() {
        let q = unit_q(32);
        let grid: Vec<f64> = (0..=32).map(|i| i as f64 / 32.0).collect();
        let zero = Complex::new(0.0, 0.0);
        let flat = ComplexField {
            grid: grid.clone(),
            values: vec![zero; 33],
            derivative: vec![zero; 33],
            omega: 1.0,
            domain: SolveDomain::Full,
        };
        assert_eq!(
            dispersivity_from_field(std::slice::from_ref(&flat), &q, 1.0).unwrap(),
            0.0
        );

        let c = 0.7;
        let sloped = ComplexField {
            derivative: vec![Complex::new(0.6 * c, 0.8 * c); 33],
            ..flat.clone()
        };
        assert_relative_eq!(
            dispersivity_from_field(std::slice::from_ref(&sloped), &q, 1.0).unwrap(),
            c * c / 2.0,
            max_relative = 1e-14
        );
        let err = dispersivity_from_field(&[sloped.clone(), sloped], &q, 1.0).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn merged_mixed_flow() {
        let flow = FlowSpec::new(vec![
            Harmonic::new(1.0, 1.0, 0.0, SpatialProfile::linear_shear()).unwrap(),
            Harmonic::new(
                1.0,
                1.0,
                std::f64::consts::FRAC_PI_4,
                SpatialProfile::poiseuille(),
            )
            .unwrap(),
        ])
        .unwrap();
        assert_eq!(group_harmonics(&flow).len(), 1);
        let est = numerical_dispersivity(&ChannelConfig::unit(), &flow, 2048).unwrap();
        let expected = d1(1.0).unwrap() + d2(1.0).unwrap();
        assert_relative_eq!(est.value, expected, max_relative = 1e-6);
    }

    #[test]
    fn pipeline_matches_closed_forms() {
        let cfg = ChannelConfig::unit();
        let est = numerical_dispersivity(
            &cfg,
            &single(1.0, 0.0, SpatialProfile::linear_shear()),
            2048,
        )
        .unwrap();
        assert_relative_eq!(est.value, d1(1.0).unwrap(), max_relative = 1e-6);
        assert_eq!(est.method, Method::Numerical);
        assert_eq!(est.metadata.grid, Some(2048));

        let p5 = single(10.0, 0.0, SpatialProfile::power_law(5.0).unwrap());
        let est = numerical_dispersivity(&cfg, &p5, 4096).unwrap();
        assert_relative_eq!(
            est.value,
            power_law_closed_form(5, 10.0).unwrap(),
            max_relative = 1e-6
        );
        assert_eq!(est.metadata.note.as_deref(), Some("half-range"));
    }

    #[test]
    fn drift_case_converges() {
        let cfg = ChannelConfig::new(1.0, 1.0, VerticalDrift::Constant(0.5)).unwrap();
        let est = numerical_dispersivity(
            &cfg,
            &single(1.0, 0.0, SpatialProfile::linear_shear()),
            2048,
        )
        .unwrap();
        assert!(est.uncertainty.unwrap() < 1e-7);
        assert!(est.value > 0.0);
    }

    #[test]
    fn second_order_convergence() {
        let cfg = ChannelConfig::unit();
        for (profile, exact) in [
            (SpatialProfile::linear_shear(), d1 as fn(f64) -> Result<f64>),
            (SpatialProfile::poiseuille(), d2 as fn(f64) -> Result<f64>),
        ] {
            // the h² coefficient vanishes like ω² as ω → 0, so small
            // frequencies need finer grids to leave the h⁴ regime
            for (omega, n) in [(0.1, 1024), (1.0, 256), (10.0, 256)] {
                let flow = single(omega, 0.0, profile.clone());
                let e = exact(omega).unwrap();
                let err = |n| {
                    (grid_dispersivity(&cfg, &flow, n, DomainPolicy::FullOnly).unwrap() - e).abs()
                };
                let ratio = err(n) / err(2 * n);
                assert!((ratio - 4.0).abs() < 0.5, "ratio {ratio} at ω = {omega}");
            }
        }
    }

    #[test]
    fn constant_shift_and_phase_do_not_matter() {
        let cfg = ChannelConfig::unit();
        let base =
            numerical_dispersivity(&cfg, &single(3.0, 0.0, SpatialProfile::linear_shear()), 512)
                .unwrap()
                .value;
        let shifted = numerical_dispersivity(
            &cfg,
            &single(3.0, 0.0, SpatialProfile::linear_shear().with_offset(17.5)),
            512,
        )
        .unwrap()
        .value;
        assert_relative_eq!(base, shifted, max_relative = 1e-12);
        for k in 1..8 {
            let psi = k as f64 * 0.9;
            let v = numerical_dispersivity(
                &cfg,
                &single(3.0, psi, SpatialProfile::linear_shear()),
                512,
            )
            .unwrap()
            .value;
            assert_relative_eq!(base, v, max_relative = 1e-12);
        }
    }

    #[test]
    fn half_range_matches_full_range() {
        let cfg = ChannelConfig::unit();
        for n in [2.0, 4.0, 6.0, 3.0] {
            for omega in [0.5, 20.0] {
                let flow = single(omega, 0.0, SpatialProfile::power_law(n).unwrap());
                let half = numerical_dispersivity_with(&cfg, &flow, 4096, DomainPolicy::Auto)
                    .unwrap()
                    .value;
                let full = numerical_dispersivity_with(&cfg, &flow, 4096, DomainPolicy::FullOnly)
                    .unwrap()
                    .value;
                assert_relative_eq!(half, full, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn shear_plus_poiseuille_is_additive() {
        let cfg = ChannelConfig::unit();
        for omega in [0.3, 4.0] {
            let both = FlowSpec::new(vec![
                Harmonic::new(1.3, omega, 0.2, SpatialProfile::linear_shear()).unwrap(),
                Harmonic::new(0.8, omega, 2.0, SpatialProfile::poiseuille()).unwrap(),
            ])
            .unwrap();
            let d = |f: &FlowSpec<f64>| numerical_dispersivity(&cfg, f, 1024).unwrap().value;
            let s = d(&FlowSpec::single(both.harmonics()[0].clone()));
            let p = d(&FlowSpec::single(both.harmonics()[1].clone()));
            assert_relative_eq!(d(&both), s + p, max_relative = 1e-8);
        }
    }

    #[test]
    fn distinct_frequencies_add() {
        let cfg = ChannelConfig::new(1.0, 1.0, VerticalDrift::Constant(0.8)).unwrap();
        let a = Harmonic::new(1.0, 1.0, 0.0, SpatialProfile::linear_shear()).unwrap();
        let b = Harmonic::new(0.5, 3.0, 0.0, SpatialProfile::linear_shear()).unwrap();
        let d = |f: FlowSpec<f64>| numerical_dispersivity(&cfg, &f, 512).unwrap().value;
        let both = d(FlowSpec::new(vec![a.clone(), b.clone()]).unwrap());
        assert_relative_eq!(
            both,
            d(FlowSpec::single(a)) + d(FlowSpec::single(b)),
            max_relative = 1e-12
        );
    }

    #[test]
    fn steady_examples() {
        let cfg = ChannelConfig::unit();
        let shear = steady_dispersivity(&cfg, &SpatialProfile::linear_shear())
            .unwrap()
            .value;
        let oracle = steady_oracle(&SpatialProfile::linear_shear());
        assert_relative_eq!(oracle, 1.0 / 30.0, max_relative = 1e-12);
        assert_relative_eq!(shear, oracle, max_relative = 1e-9);
        assert_relative_eq!(shear, 2.0 * d1(0.0).unwrap(), max_relative = 1e-9);

        let pois = steady_dispersivity(&cfg, &SpatialProfile::poiseuille())
            .unwrap()
            .value;
        let oracle = steady_oracle(&SpatialProfile::poiseuille());
        assert_relative_eq!(oracle, 1.0 / 1890.0, max_relative = 1e-12);
        assert_relative_eq!(pois, oracle, max_relative = 1e-9);

        let flat = SpatialProfile::tabulated(vec![0.0, 0.5, 1.0], vec![2.0; 3]).unwrap();
        assert!(steady_dispersivity(&cfg, &flat).unwrap().value.abs() < 1e-20);
    }

    #[test]
    fn steady_power_law_limits() {
        let cfg = ChannelConfig::unit();
        for n in 1..=6u32 {
            let p = SpatialProfile::power_law(n as f64).unwrap();
            let solver = steady_dispersivity(&cfg, &p).unwrap().value;
            let oracle = steady_oracle(&p);
            assert_relative_eq!(solver, oracle, max_relative = 1e-8);
            let closed: f64 = power_law_closed_form(n, 0.0).unwrap();
            assert_relative_eq!(0.5 * oracle, closed, max_relative = 1e-9);
        }
    }

    #[test]
    fn dimensional_route_agrees_with_scaled_route() {
        let cfg = ChannelConfig::new(2.0, 1.0, VerticalDrift::Zero).unwrap();
        let flow = FlowSpec::single(
            Harmonic::new(3.0, 0.25, 0.0, SpatialProfile::linear_shear()).unwrap(),
        );
        let scaled = numerical_dispersivity(&cfg, &flow, 1024).unwrap().value;
        let (direct, _) = extrapolated_dispersivity(&cfg, &flow, 1024, DomainPolicy::Auto).unwrap();
        assert_relative_eq!(scaled, direct, max_relative = 1e-10);
        assert_relative_eq!(scaled, 9.0 * 4.0 * d1(1.0).unwrap(), max_relative = 1e-9);
    }
}
