//! Channel, flow and density types shared by the closed-form, cell-problem
//! and Monte Carlo routes.
//!
//! Lengths across the channel are measured from the lower wall. Velocity
//! profiles are dimensionless shape functions of the normalized coordinate
//! `s = y / a`; a [`Harmonic`] multiplies a profile by a dimensional
//! amplitude and a `cos(omega t + phase)` time factor.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Piecewise-linear table over a closed interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated<T> {
    nodes: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> Tabulated<T> {
    /// Builds a table whose nodes are strictly increasing and span
    /// `[lo, hi]` exactly at the ends (up to a relative `1e-12`).
    pub fn new(nodes: Vec<T>, values: Vec<T>, lo: T, hi: T, min_nodes: usize) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::input(format!(
                "table has {} nodes but {} values",
                nodes.len(),
                values.len()
            )));
        }
        if nodes.len() < min_nodes {
            return Err(Error::input(format!(
                "table needs at least {min_nodes} nodes, got {}",
                nodes.len()
            )));
        }
        if nodes.iter().chain(values.iter()).any(|x| !x.is_finite()) {
            return Err(Error::input("table contains a non-finite entry"));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::input("table nodes must be strictly increasing"));
        }
        let tol = T::lit(1e-12) * (hi - lo).abs().max(T::one());
        let first = nodes[0];
        let last = nodes[nodes.len() - 1];
        if (first - lo).abs() > tol || (last - hi).abs() > tol {
            return Err(Error::input(format!(
                "table must cover [{lo}, {hi}], got [{first}, {last}]"
            )));
        }
        Ok(Self { nodes, values })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    fn segment(&self, x: T) -> usize {
        let n = self.nodes.len();
        let i = self.nodes.partition_point(|&node| node <= x);
        i.clamp(1, n - 1) - 1
    }

    /// Linear interpolation; constant extrapolation outside the table.
    pub fn eval(&self, x: T) -> T {
        let n = self.nodes.len();
        if x <= self.nodes[0] {
            return self.values[0];
        }
        if x >= self.nodes[n - 1] {
            return self.values[n - 1];
        }
        let i = self.segment(x);
        let (x0, x1) = (self.nodes[i], self.nodes[i + 1]);
        let t = (x - x0) / (x1 - x0);
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }

    /// Slope of the segment containing `x`.
    pub fn slope(&self, x: T) -> T {
        let i = self.segment(x);
        (self.values[i + 1] - self.values[i]) / (self.nodes[i + 1] - self.nodes[i])
    }

    /// Exact integral of the interpolant over the table range.
    pub fn integral(&self) -> T {
        self.nodes
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, v)| T::lit(0.5) * (x[1] - x[0]) * (v[0] + v[1]))
            .sum()
    }

    /// Exact integral of the squared slope over the table range.
    pub fn slope_energy(&self) -> T {
        self.nodes
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, v)| {
                let dx = x[1] - x[0];
                let dv = v[1] - v[0];
                dv * dv / dx
            })
            .sum()
    }

    fn map(&self, node: impl Fn(T) -> T, value: impl Fn(T) -> T) -> Self {
        Self {
            nodes: self.nodes.iter().map(|&x| node(x)).collect(),
            values: self.values.iter().map(|&v| value(v)).collect(),
        }
    }
}

/// Cross-channel drift `v(y)`.
#[derive(Debug, Clone, PartialEq)]
pub enum VerticalDrift<T> {
    Zero,
    Constant(T),
    /// Samples over `[0, a]` in dimensional coordinates.
    Tabulated(Tabulated<T>),
}

impl<T: Real> VerticalDrift<T> {
    #[inline]
    pub fn value(&self, y: T) -> T {
        match self {
            VerticalDrift::Zero => T::zero(),
            VerticalDrift::Constant(c) => *c,
            VerticalDrift::Tabulated(table) => table.eval(y),
        }
    }

    /// True when the drift vanishes identically.
    pub fn is_zero(&self) -> bool {
        match self {
            VerticalDrift::Zero => true,
            VerticalDrift::Constant(c) => *c == T::zero(),
            VerticalDrift::Tabulated(table) => table.values().iter().all(|v| *v == T::zero()),
        }
    }
}

/// Channel geometry and particle noise.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelConfig<T> {
    /// Width `a` of the channel.
    pub width: T,
    /// Noise amplitude; the molecular diffusivity is `sigma^2 / 2`.
    pub sigma: T,
    pub drift: VerticalDrift<T>,
}

impl<T: Real> ChannelConfig<T> {
    pub fn new(width: T, sigma: T, drift: VerticalDrift<T>) -> Result<Self> {
        if !(width.is_finite() && width > T::zero()) {
            return Err(Error::input(format!(
                "channel width must be > 0, got {width}"
            )));
        }
        if !(sigma.is_finite() && sigma > T::zero()) {
            return Err(Error::input(format!("sigma must be > 0, got {sigma}")));
        }
        match &drift {
            VerticalDrift::Zero => {}
            VerticalDrift::Constant(c) => {
                if !c.is_finite() {
                    return Err(Error::input("constant drift must be finite"));
                }
            }
            VerticalDrift::Tabulated(table) => {
                // Re-validate against the channel width.
                Tabulated::new(
                    table.nodes().to_vec(),
                    table.values().to_vec(),
                    T::zero(),
                    width,
                    2,
                )?;
            }
        }
        Ok(Self {
            width,
            sigma,
            drift,
        })
    }

    /// Unit width, unit noise, no drift.
    pub fn unit() -> Self {
        Self {
            width: T::one(),
            sigma: T::one(),
            drift: VerticalDrift::Zero,
        }
    }

    pub fn diffusivity(&self) -> T {
        T::lit(0.5) * self.sigma * self.sigma
    }
}

/// Parity about mid-channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind<T> {
    /// `U(s) = s`.
    LinearShear,
    /// `U(s) = s (1 - s)`.
    Poiseuille,
    /// `U(s) = -|s - 1/2|^n`, `n >= 1`.
    PowerLaw { n: T },
    /// Samples over the normalized coordinate `[0, 1]`.
    Tabulated(Tabulated<T>),
    /// `(B(s) ± B(1 - s)) / 2`.
    Symmetrized {
        base: Box<SpatialProfile<T>>,
        parity: Parity,
    },
}

/// Dimensionless velocity shape `U(s)` plus an additive constant.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialProfile<T> {
    pub kind: ProfileKind<T>,
    pub offset: T,
}

impl<T: Real> SpatialProfile<T> {
    pub fn linear_shear() -> Self {
        Self::from_kind(ProfileKind::LinearShear)
    }

    pub fn poiseuille() -> Self {
        Self::from_kind(ProfileKind::Poiseuille)
    }

    pub fn power_law(n: T) -> Result<Self> {
        if !(n.is_finite() && n >= T::one()) {
            return Err(Error::input(format!(
                "power-law exponent must be >= 1, got {n}"
            )));
        }
        Ok(Self::from_kind(ProfileKind::PowerLaw { n }))
    }

    /// Piecewise-linear profile through `(s_i, U_i)`, `s` spanning `[0, 1]`.
    pub fn tabulated(nodes: Vec<T>, values: Vec<T>) -> Result<Self> {
        let table = Tabulated::new(nodes, values, T::zero(), T::one(), 3)?;
        Ok(Self::from_kind(ProfileKind::Tabulated(table)))
    }

    pub(crate) fn symmetrized(base: SpatialProfile<T>, parity: Parity) -> Self {
        Self::from_kind(ProfileKind::Symmetrized {
            base: Box::new(base),
            parity,
        })
    }

    fn from_kind(kind: ProfileKind<T>) -> Self {
        Self {
            kind,
            offset: T::zero(),
        }
    }

    pub fn with_offset(mut self, c: T) -> Self {
        self.offset = self.offset + c;
        self
    }

    /// `U(s)` at normalized position `s`.
    #[inline]
    pub fn value(&self, s: T) -> T {
        self.offset + self.shape(s)
    }

    #[inline]
    fn shape(&self, s: T) -> T {
        match &self.kind {
            ProfileKind::LinearShear => s,
            ProfileKind::Poiseuille => s * (T::one() - s),
            ProfileKind::PowerLaw { n } => -power_abs(s - T::lit(0.5), *n),
            ProfileKind::Tabulated(table) => table.eval(s),
            ProfileKind::Symmetrized { base, parity } => {
                let mirrored = base.value(T::one() - s);
                let sign = match parity {
                    Parity::Even => T::one(),
                    Parity::Odd => -T::one(),
                };
                T::lit(0.5) * (base.value(s) + sign * mirrored)
            }
        }
    }

    /// `dU/ds`. At a kink the one-sided value of the right segment is
    /// returned (zero at the apex of `n = 1`).
    pub fn derivative(&self, s: T) -> T {
        match &self.kind {
            ProfileKind::LinearShear => T::one(),
            ProfileKind::Poiseuille => T::one() - T::lit(2.0) * s,
            ProfileKind::PowerLaw { n } => {
                let x = s - T::lit(0.5);
                if x == T::zero() {
                    return T::zero();
                }
                -*n * power_abs(x, *n - T::one()) * x.signum()
            }
            ProfileKind::Tabulated(table) => table.slope(s),
            ProfileKind::Symmetrized { base, parity } => {
                let sign = match parity {
                    Parity::Even => T::one(),
                    Parity::Odd => -T::one(),
                };
                T::lit(0.5) * (base.derivative(s) - sign * base.derivative(T::one() - s))
            }
        }
    }

    /// Whether `U(s) = U(1 - s)` holds by construction.
    pub fn is_symmetric(&self) -> bool {
        match &self.kind {
            ProfileKind::Poiseuille | ProfileKind::PowerLaw { .. } => true,
            ProfileKind::Symmetrized { parity, .. } => *parity == Parity::Even,
            ProfileKind::LinearShear | ProfileKind::Tabulated(_) => false,
        }
    }

    /// Exact `∫₀¹ U(s) ds`.
    pub fn uniform_mean(&self) -> T {
        let shape = match &self.kind {
            ProfileKind::LinearShear => T::lit(0.5),
            ProfileKind::Poiseuille => T::one() / T::lit(6.0),
            ProfileKind::PowerLaw { n } => -T::one() / (T::lit(2.0).powf(*n) * (*n + T::one())),
            ProfileKind::Tabulated(table) => table.integral(),
            ProfileKind::Symmetrized { base, parity } => match parity {
                Parity::Even => base.uniform_mean(),
                Parity::Odd => T::zero(),
            },
        };
        self.offset + shape
    }

    /// Exact `∫₀¹ (dU/ds)² ds` where a closed expression exists.
    pub fn gradient_energy(&self) -> Option<T> {
        match &self.kind {
            ProfileKind::LinearShear => Some(T::one()),
            ProfileKind::Poiseuille => Some(T::one() / T::lit(3.0)),
            ProfileKind::PowerLaw { n } => {
                let two_n_minus_one = T::lit(2.0) * *n - T::one();
                Some(*n * *n / (two_n_minus_one * T::lit(4.0).powf(*n - T::one())))
            }
            ProfileKind::Tabulated(table) => Some(table.slope_energy()),
            ProfileKind::Symmetrized { .. } => None,
        }
    }

    /// Integer exponent when the profile is a pure power law with `n ∈ ℕ`.
    pub fn integer_power(&self) -> Option<u32> {
        match &self.kind {
            ProfileKind::PowerLaw { n } if n.fract() == T::zero() => n.to_u32(),
            _ => None,
        }
    }
}

#[inline]
fn power_abs<T: Real>(x: T, n: T) -> T {
    let ax = x.abs();
    if n.fract() == T::zero() && n < T::lit(64.0) {
        ax.powi(n.to_i32().unwrap_or(0))
    } else {
        ax.powf(n)
    }
}

/// One time-harmonic component `amplitude · cos(omega t + phase) · U(y/a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Harmonic<T> {
    pub amplitude: T,
    /// Angular frequency, radians per unit time.
    pub omega: T,
    pub phase: T,
    pub profile: SpatialProfile<T>,
}

impl<T: Real> Harmonic<T> {
    pub fn new(amplitude: T, omega: T, phase: T, profile: SpatialProfile<T>) -> Result<Self> {
        if !amplitude.is_finite() {
            return Err(Error::input("harmonic amplitude must be finite"));
        }
        if !(omega.is_finite() && omega >= T::zero()) {
            return Err(Error::input(format!(
                "harmonic frequency must be >= 0, got {omega}"
            )));
        }
        if !phase.is_finite() {
            return Err(Error::input("harmonic phase must be finite"));
        }
        Ok(Self {
            amplitude,
            omega,
            phase,
            profile,
        })
    }

    #[inline]
    pub fn time_factor(&self, t: T) -> T {
        self.amplitude * (self.omega * t + self.phase).cos()
    }
}

/// Horizontal velocity as a sum of harmonics.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowSpec<T> {
    harmonics: Vec<Harmonic<T>>,
}

impl<T: Real> FlowSpec<T> {
    pub fn new(harmonics: Vec<Harmonic<T>>) -> Result<Self> {
        if harmonics.is_empty() {
            return Err(Error::input("flow needs at least one harmonic"));
        }
        Ok(Self { harmonics })
    }

    pub fn single(harmonic: Harmonic<T>) -> Self {
        Self {
            harmonics: vec![harmonic],
        }
    }

    pub fn harmonics(&self) -> &[Harmonic<T>] {
        &self.harmonics
    }

    /// `u(t, y)` for a channel of the given width.
    pub fn velocity(&self, width: T, t: T, y: T) -> Result<T> {
        if !(y >= T::zero() && y <= width) {
            return Err(Error::domain(format!("position {y} outside [0, {width}]")));
        }
        let s = y / width;
        Ok(self
            .harmonics
            .iter()
            .map(|h| h.time_factor(t) * h.profile.value(s))
            .sum())
    }
}

/// Evaluates `u(t, y) = Σ U0_k cos(omega_k t + psi_k) U_k(y / a)`.
pub fn evaluate_velocity<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
    t: T,
    y: T,
) -> Result<T> {
    flow.velocity(config.width, t, y)
}

/// Stationary cross-channel density on a uniform grid over `[0, a]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile<T> {
    grid: Vec<T>,
    values: Vec<T>,
    alpha: T,
    uniform: bool,
}

impl<T: Real> DensityProfile<T> {
    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Normalization constant multiplying `exp(∫ 2v/σ²)`.
    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// True for zero drift, where `q ≡ 1/a` exactly.
    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn width(&self) -> T {
        self.grid[self.grid.len() - 1]
    }

    fn spacing(&self) -> T {
        self.width() / T::from_usize_lossy(self.grid.len() - 1)
    }

    /// `q(y)` by linear interpolation between grid nodes.
    pub fn value_at(&self, y: T) -> T {
        if self.uniform {
            return self.values[0];
        }
        let n = self.grid.len();
        let h = self.spacing();
        let x = (y / h).max(T::zero());
        let i = x.floor().to_usize().unwrap_or(0).min(n - 2);
        let t = (x - T::from_usize_lossy(i)).min(T::one());
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }

    /// Trapezoid rule for `∫₀ᵃ q(y) g(y) dy` on the density grid.
    pub fn weighted_integral(&self, g: impl Fn(T) -> T) -> T {
        let h = self.spacing();
        let n = self.grid.len();
        let interior: T = (1..n - 1).map(|i| self.values[i] * g(self.grid[i])).sum();
        let ends = self.values[0] * g(self.grid[0]) + self.values[n - 1] * g(self.grid[n - 1]);
        h * (interior + T::lit(0.5) * ends)
    }

    /// Trapezoid integral of `q` itself.
    pub fn total_mass(&self) -> T {
        self.weighted_integral(|_| T::one())
    }

    /// Cumulative distribution `∫₀ʸ q`, consistent with [`quantile`](Self::quantile).
    pub fn cdf(&self) -> impl Fn(T) -> T + '_ {
        let h = self.spacing();
        let mut cumulative = Vec::with_capacity(self.grid.len());
        let mut acc = T::zero();
        cumulative.push(acc);
        for w in self.values.windows(2) {
            acc = acc + T::lit(0.5) * h * (w[0] + w[1]);
            cumulative.push(acc);
        }
        move |y: T| {
            let a = self.width();
            if y <= T::zero() {
                return T::zero();
            }
            if y >= a {
                return T::one();
            }
            if self.uniform {
                return y / a;
            }
            let n = self.grid.len();
            let i = (y / h).floor().to_usize().unwrap_or(0).min(n - 2);
            let x = y - self.grid[i];
            let (q0, q1) = (self.values[i], self.values[i + 1]);
            (cumulative[i] + q0 * x + T::lit(0.5) * (q1 - q0) / h * x * x).min(T::one())
        }
    }

    /// Inverse of the cumulative distribution, with `u ∈ [0, 1)`.
    pub fn quantile(&self, u: T) -> T {
        if self.uniform {
            return u * self.width();
        }
        let h = self.spacing();
        let mut cumulative = T::zero();
        for i in 0..self.grid.len() - 1 {
            let (q0, q1) = (self.values[i], self.values[i + 1]);
            let mass = T::lit(0.5) * h * (q0 + q1);
            if cumulative + mass >= u {
                // CDF is quadratic on the cell; solve for the local offset.
                let target = u - cumulative;
                let slope = (q1 - q0) / h;
                let x = if slope.abs() <= T::epsilon() * q0.abs().max(T::one()) {
                    target / q0.max(T::min_positive_value())
                } else {
                    let disc = (q0 * q0 + T::lit(2.0) * slope * target).max(T::zero());
                    T::lit(2.0) * target / (q0 + disc.sqrt())
                };
                return (self.grid[i] + x.max(T::zero()).min(h)).min(self.width());
            }
            cumulative = cumulative + mass;
        }
        self.width()
    }
}

/// Stationary density `q(y) = α exp(∫₀ʸ 2v/σ²)` on `resolution` uniform
/// nodes, normalized so the trapezoid integral is one.
pub fn stationary_density<T: Real>(
    config: &ChannelConfig<T>,
    resolution: usize,
) -> Result<DensityProfile<T>> {
    if resolution < 3 {
        return Err(Error::input(format!(
            "density resolution must be >= 3, got {resolution}"
        )));
    }
    let a = config.width;
    let last = T::from_usize_lossy(resolution - 1);
    let grid: Vec<T> = (0..resolution)
        .map(|i| a * T::from_usize_lossy(i) / last)
        .collect();
    if config.drift.is_zero() {
        let q = T::one() / a;
        return Ok(DensityProfile {
            grid,
            values: vec![q; resolution],
            alpha: q,
            uniform: true,
        });
    }
    let two_over_var = T::lit(2.0) / (config.sigma * config.sigma);
    let exponent: Vec<T> = match &config.drift {
        VerticalDrift::Zero => unreachable!(),
        VerticalDrift::Constant(c) => grid.iter().map(|&y| two_over_var * *c * y).collect(),
        VerticalDrift::Tabulated(_) => {
            let v: Vec<T> = grid.iter().map(|&y| config.drift.value(y)).collect();
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::input("non-finite drift sample"));
            }
            let h = a / last;
            let mut acc = T::zero();
            let mut out = Vec::with_capacity(resolution);
            out.push(T::zero());
            for w in v.windows(2) {
                acc = acc + T::lit(0.5) * h * (w[0] + w[1]);
                out.push(two_over_var * acc);
            }
            out
        }
    };
    if exponent.iter().any(|x| !x.is_finite()) {
        return Err(Error::input("non-finite drift exponent"));
    }
    let peak = exponent.iter().copied().fold(T::neg_infinity(), T::max);
    let shifted: Vec<T> = exponent.iter().map(|&e| (e - peak).exp()).collect();
    let h = a / last;
    let n = resolution;
    let z = h
        * ((1..n - 1).map(|i| shifted[i]).sum::<T>() + T::lit(0.5) * (shifted[0] + shifted[n - 1]));
    let values = shifted.iter().map(|&e| e / z).collect();
    Ok(DensityProfile {
        grid,
        values,
        alpha: (-peak).exp() / z,
        uniform: false,
    })
}

/// `U − ∫ q U`: the profile with its density-weighted mean removed.
///
/// Uniform densities use the exact mean of the profile; otherwise the
/// trapezoid rule on the density grid.
pub fn remove_mean<T: Real>(
    profile: &SpatialProfile<T>,
    q: &DensityProfile<T>,
) -> SpatialProfile<T> {
    let mean = profile_mean(profile, q);
    profile.clone().with_offset(-mean)
}

pub(crate) fn profile_mean<T: Real>(profile: &SpatialProfile<T>, q: &DensityProfile<T>) -> T {
    if q.is_uniform() {
        profile.uniform_mean()
    } else {
        let a = q.width();
        q.weighted_integral(|y| profile.value(y / a))
    }
}

/// Characteristic scales of a dimensional problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleFactors<T> {
    /// Channel width `a`.
    pub length: T,
    /// Cross-channel relaxation time `a² / σ²`.
    pub time: T,
    /// Reference velocity amplitude.
    pub velocity: T,
    /// `U² a² / σ²`.
    pub dispersivity: T,
}

impl<T: Real> ScaleFactors<T> {
    pub fn identity() -> Self {
        Self {
            length: T::one(),
            time: T::one(),
            velocity: T::one(),
            dispersivity: T::one(),
        }
    }

    /// Dimensionless frequency `omega a² / σ²`.
    pub fn omega_hat(&self, omega: T) -> T {
        omega * self.time
    }
}

/// A problem rewritten with `σ = 1`, `a = 1` and unit reference amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct Nondimensional<T> {
    pub config: ChannelConfig<T>,
    pub flow: FlowSpec<T>,
    pub scales: ScaleFactors<T>,
}

/// Rescales lengths by `a`, times by `a²/σ²` and velocities by the largest
/// harmonic amplitude (amplitude ratios between harmonics are kept).
pub fn nondimensionalize<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
) -> Nondimensional<T> {
    let a = config.width;
    let var = config.sigma * config.sigma;
    let time = a * a / var;
    let peak = flow
        .harmonics()
        .iter()
        .map(|h| h.amplitude.abs())
        .fold(T::zero(), T::max);
    let velocity = if peak > T::zero() { peak } else { T::one() };
    let drift = match &config.drift {
        VerticalDrift::Zero => VerticalDrift::Zero,
        VerticalDrift::Constant(c) => VerticalDrift::Constant(*c * a / var),
        VerticalDrift::Tabulated(table) => {
            VerticalDrift::Tabulated(table.map(|y| y / a, |v| v * a / var))
        }
    };
    let harmonics = flow
        .harmonics()
        .iter()
        .map(|h| Harmonic {
            amplitude: h.amplitude / velocity,
            omega: h.omega * time,
            phase: h.phase,
            profile: h.profile.clone(),
        })
        .collect();
    Nondimensional {
        config: ChannelConfig {
            width: T::one(),
            sigma: T::one(),
            drift,
        },
        flow: FlowSpec { harmonics },
        scales: ScaleFactors {
            length: a,
            time,
            velocity,
            dispersivity: velocity * velocity * time,
        },
    }
}

/// Which route produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Numerical,
    AsymptoticSmall,
    AsymptoticLarge,
    MonteCarlo,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::Numerical => "numeric",
            Method::AsymptoticSmall => "small",
            Method::AsymptoticLarge => "large",
            Method::MonteCarlo => "mc",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Run metadata attached to an estimate.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Metadata<T> {
    /// Cell-problem grid intervals.
    pub grid: Option<usize>,
    pub particles: Option<usize>,
    pub dt: Option<T>,
    pub note: Option<String>,
}

/// A Taylor dispersivity together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersivityEstimate<T> {
    pub value: T,
    pub method: Method,
    /// Standard error (Monte Carlo) or grid-halving difference (numerical).
    pub uncertainty: Option<T>,
    pub metadata: Metadata<T>,
}

impl<T: Real> DispersivityEstimate<T> {
    pub fn new(value: T, method: Method) -> Self {
        Self {
            value,
            method,
            uncertainty: None,
            metadata: Metadata::default(),
        }
    }

    pub fn with_uncertainty(mut self, uncertainty: T) -> Self {
        self.uncertainty = Some(uncertainty);
        self
    }
}

/// Converts an estimate in scaled units back to dimensional units,
/// `D = D̂ · U² a² / σ²`.
pub fn dimensional_dispersivity<T: Real>(
    scaled: DispersivityEstimate<T>,
    scales: &ScaleFactors<T>,
) -> Result<DispersivityEstimate<T>> {
    if !(scaled.value >= T::zero()) {
        return Err(Error::domain(format!(
            "dispersivity must be >= 0, got {}",
            scaled.value
        )));
    }
    let k = scales.dispersivity;
    Ok(DispersivityEstimate {
        value: scaled.value * k,
        uncertainty: scaled.uncertainty.map(|u| u * k),
        ..scaled
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn unit_flow(profile: SpatialProfile<f64>) -> FlowSpec<f64> {
        FlowSpec::single(Harmonic::new(1.0, 1.0, 0.0, profile).unwrap())
    }

    #[test]
    fn velocity_examples() {
        let cfg = ChannelConfig::<f64>::unit();
        let shear = unit_flow(SpatialProfile::linear_shear());
        assert_eq!(evaluate_velocity(&cfg, &shear, 0.0, 1.0).unwrap(), 1.0);
        assert!(
            evaluate_velocity(&cfg, &shear, PI / 2.0, 0.3)
                .unwrap()
                .abs()
                < 1e-16
        );

        let mixed = FlowSpec::new(vec![
            Harmonic::new(1.0, 1.0, 0.0, SpatialProfile::linear_shear()).unwrap(),
            Harmonic::new(1.0, 1.0, 0.0, SpatialProfile::poiseuille()).unwrap(),
        ])
        .unwrap();
        assert_eq!(evaluate_velocity(&cfg, &mixed, 0.0, 0.5).unwrap(), 0.75);
    }

    #[test]
    fn velocity_outside_channel_is_domain_error() {
        let cfg = ChannelConfig::<f64>::unit();
        let shear = unit_flow(SpatialProfile::linear_shear());
        assert!(matches!(
            evaluate_velocity(&cfg, &shear, 0.0, 1.5),
            Err(Error::Domain(_))
        ));
        assert!(evaluate_velocity(&cfg, &shear, 0.0, -0.1).is_err());
    }

    #[test]
    fn density_zero_drift() {
        let q = stationary_density(&ChannelConfig::<f64>::unit(), 65).unwrap();
        assert!(q.values().iter().all(|&v| v == 1.0));
        let wide = ChannelConfig::new(2.0, 1.0, VerticalDrift::Zero).unwrap();
        let q = stationary_density(&wide, 65).unwrap();
        assert!(q.values().iter().all(|&v| v == 0.5));
        assert_relative_eq!(q.total_mass(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn density_constant_drift_matches_exponential() {
        let cfg = ChannelConfig::<f64>::new(1.0, 1.0, VerticalDrift::Constant(1.0)).unwrap();
        let q = stationary_density(&cfg, 4097).unwrap();
        let e2 = 1f64.exp().powi(2);
        for (&y, &v) in q.grid().iter().zip(q.values()) {
            let exact = 2.0 * (2.0 * y).exp() / (e2 - 1.0);
            // trapezoid normalization differs from the exact one by O(h²)
            assert_relative_eq!(v, exact, max_relative = 1e-7);
        }
        assert_relative_eq!(q.total_mass(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn density_tabulated_matches_constant() {
        let table = Tabulated::new(vec![0.0, 0.4, 1.0], vec![0.7, 0.7, 0.7], 0.0, 1.0, 2).unwrap();
        let tab = ChannelConfig::<f64>::new(1.0, 1.3, VerticalDrift::Tabulated(table)).unwrap();
        let cst = ChannelConfig::<f64>::new(1.0, 1.3, VerticalDrift::Constant(0.7)).unwrap();
        let qt = stationary_density(&tab, 257).unwrap();
        let qc = stationary_density(&cst, 257).unwrap();
        for (a, b) in qt.values().iter().zip(qc.values()) {
            assert_relative_eq!(*a, *b, max_relative = 1e-12);
        }
    }

    #[test]
    fn density_rejects_tiny_resolution() {
        assert!(stationary_density(&ChannelConfig::<f64>::unit(), 2).is_err());
    }

    #[test]
    fn large_drift_does_not_overflow() {
        let cfg = ChannelConfig::<f64>::new(1.0, 0.1, VerticalDrift::Constant(50.0)).unwrap();
        let q = stationary_density(&cfg, 1025).unwrap();
        assert!(q.values().iter().all(|v| v.is_finite()));
        assert_relative_eq!(q.total_mass(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn remove_mean_examples() {
        let q = stationary_density(&ChannelConfig::<f64>::unit(), 129).unwrap();
        let shear = remove_mean(&SpatialProfile::linear_shear(), &q);
        let pois = remove_mean(&SpatialProfile::poiseuille(), &q);
        let centered = remove_mean(&SpatialProfile::linear_shear().with_offset(-0.5), &q);
        for i in 0..=10 {
            let y = i as f64 / 10.0;
            assert!((shear.value(y) - (y - 0.5)).abs() < 1e-15);
            assert!((pois.value(y) - (y - y * y - 1.0 / 6.0)).abs() < 1e-15);
            assert!((centered.value(y) - (y - 0.5)).abs() < 1e-15);
        }
    }

    #[test]
    fn power_law_means_are_exact() {
        let q = stationary_density(&ChannelConfig::<f64>::unit(), 3).unwrap();
        for n in 1..=6 {
            let p = SpatialProfile::power_law(n as f64)
                .unwrap()
                .with_offset(0.3);
            let centered = remove_mean(&p, &q);
            // Simpson on a fine grid as an independent check of the mean.
            let m = 20000;
            let h = 1.0 / m as f64;
            let simpson: f64 = (0..=m)
                .map(|i| {
                    let w = if i == 0 || i == m {
                        1.0
                    } else if i % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    w * centered.value(i as f64 * h)
                })
                .sum::<f64>()
                * h
                / 3.0;
            assert!(simpson.abs() < 1e-12, "n = {n}: {simpson}");
        }
    }

    #[test]
    fn weighted_mean_with_drift_vanishes() {
        let cfg = ChannelConfig::<f64>::new(2.0, 1.5, VerticalDrift::Constant(-0.8)).unwrap();
        let q = stationary_density(&cfg, 1025).unwrap();
        let p = remove_mean(&SpatialProfile::poiseuille(), &q);
        let mean = q.weighted_integral(|y| p.value(y / 2.0));
        assert!(mean.abs() < 1e-12 * 0.25);
    }

    #[test]
    fn profile_validation() {
        assert!(SpatialProfile::<f64>::power_law(0.5).is_err());
        assert!(SpatialProfile::<f64>::tabulated(vec![0.0, 1.0], vec![0.0, 1.0]).is_err());
        assert!(SpatialProfile::<f64>::tabulated(vec![0.0, 0.7, 0.6, 1.0], vec![0.0; 4]).is_err());
        assert!(SpatialProfile::<f64>::tabulated(vec![0.0, 0.5, 0.9], vec![0.0; 3]).is_err());
        assert!(Harmonic::new(1.0, -1.0, 0.0, SpatialProfile::linear_shear()).is_err());
        assert!(FlowSpec::<f64>::new(vec![]).is_err());
        assert!(ChannelConfig::<f64>::new(0.0, 1.0, VerticalDrift::Zero).is_err());
        assert!(ChannelConfig::<f64>::new(1.0, -1.0, VerticalDrift::Zero).is_err());
        assert!(ChannelConfig::<f64>::new(1.0, 1.0, VerticalDrift::Constant(f64::NAN)).is_err());
    }

    #[test]
    fn power_law_derivative_matches_differences() {
        for n in [1.0, 1.5, 2.0, 3.0, 4.7] {
            let p = SpatialProfile::power_law(n).unwrap();
            for &s in &[0.1, 0.3, 0.45, 0.55, 0.8] {
                let h = 1e-6;
                let fd = (p.value(s + h) - p.value(s - h)) / (2.0 * h);
                assert_relative_eq!(p.derivative(s), fd, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn gradient_energy_matches_quadrature() {
        for p in [
            SpatialProfile::linear_shear(),
            SpatialProfile::poiseuille(),
            SpatialProfile::power_law(3.0).unwrap(),
            SpatialProfile::power_law(2.5).unwrap(),
        ] {
            let m = 200_000;
            let h = 1.0 / m as f64;
            let quad: f64 = (0..m)
                .map(|i| p.derivative((i as f64 + 0.5) * h).powi(2))
                .sum::<f64>()
                * h;
            assert_relative_eq!(p.gradient_energy().unwrap(), quad, max_relative = 1e-8);
        }
    }

    #[test]
    fn nondimensionalize_examples() {
        let flow = unit_flow(SpatialProfile::linear_shear());
        let nd = nondimensionalize(&ChannelConfig::<f64>::unit(), &flow);
        assert_eq!(nd.scales, ScaleFactors::identity());
        assert_eq!(nd.flow.harmonics()[0].omega, 1.0);

        let cfg = ChannelConfig::<f64>::new(1.0, 2.0, VerticalDrift::Zero).unwrap();
        let flow =
            FlowSpec::single(Harmonic::new(1.0, 4.0, 0.0, SpatialProfile::linear_shear()).unwrap());
        let nd = nondimensionalize(&cfg, &flow);
        assert_eq!(nd.flow.harmonics()[0].omega, 1.0);
        assert_eq!(nd.config.sigma, 1.0);
        assert_eq!(nd.config.width, 1.0);
    }

    #[test]
    fn nondimensional_drift_scaling() {
        let cfg = ChannelConfig::<f64>::new(2.0, 0.5, VerticalDrift::Constant(0.25)).unwrap();
        let flow = unit_flow(SpatialProfile::linear_shear());
        let nd = nondimensionalize(&cfg, &flow);
        assert_eq!(nd.config.drift, VerticalDrift::Constant(0.25 * 2.0 / 0.25));
    }

    #[test]
    fn dimensional_dispersivity_examples() {
        let unit = ScaleFactors::identity();
        let base = DispersivityEstimate::new(1.0 / 60.0, Method::ClosedForm);
        assert_eq!(
            dimensional_dispersivity(base.clone(), &unit).unwrap().value,
            1.0 / 60.0
        );

        let cfg = ChannelConfig::<f64>::unit();
        let flow =
            FlowSpec::single(Harmonic::new(2.0, 1.0, 0.0, SpatialProfile::linear_shear()).unwrap());
        let scales = nondimensionalize(&cfg, &flow).scales;
        assert_relative_eq!(
            dimensional_dispersivity(base, &scales).unwrap().value,
            4.0 / 60.0,
            max_relative = 1e-15
        );

        let cfg = ChannelConfig::<f64>::new(2.0, 1.0, VerticalDrift::Zero).unwrap();
        let flow =
            FlowSpec::single(Harmonic::new(1.0, 1.0, 0.0, SpatialProfile::poiseuille()).unwrap());
        let scales = nondimensionalize(&cfg, &flow).scales;
        let est = DispersivityEstimate::new(1.0 / 3780.0, Method::ClosedForm);
        assert_relative_eq!(
            dimensional_dispersivity(est, &scales).unwrap().value,
            4.0 / 3780.0,
            max_relative = 1e-15
        );

        let negative = DispersivityEstimate::new(-1e-3, Method::Numerical);
        assert!(matches!(
            dimensional_dispersivity(negative, &unit),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn quantile_inverts_cdf() {
        let cfg = ChannelConfig::<f64>::new(1.0, 1.0, VerticalDrift::Constant(1.0)).unwrap();
        let q = stationary_density(&cfg, 2049).unwrap();
        let e2 = 2f64.exp();
        for &u in &[0.01, 0.2, 0.5, 0.77, 0.999] {
            let y = q.quantile(u);
            let cdf = ((2.0 * y).exp() - 1.0) / (e2 - 1.0);
            assert!((cdf - u).abs() < 1e-6, "u = {u}, cdf = {cdf}");
        }
    }

    #[test]
    fn cdf_round_trips_quantile() {
        let cfg = ChannelConfig::<f64>::new(1.0, 1.0, VerticalDrift::Constant(1.0)).unwrap();
        let q = stationary_density(&cfg, 2049).unwrap();
        let cdf = q.cdf();
        for &u in &[0.0, 0.01, 0.2, 0.5, 0.77, 0.999] {
            assert!((cdf(q.quantile(u)) - u).abs() < 1e-12);
        }
        let e2 = 2f64.exp();
        assert!((cdf(0.3) - ((0.6f64).exp() - 1.0) / (e2 - 1.0)).abs() < 1e-6);
        let flat = stationary_density(&ChannelConfig::<f64>::unit(), 3).unwrap();
        assert_eq!(flat.cdf()(0.25), 0.25);
        assert_eq!(flat.cdf()(-1.0), 0.0);
        assert_eq!(flat.cdf()(2.0), 1.0);
    }

    #[test]
    fn works_in_single_precision() {
        let q = stationary_density(&ChannelConfig::<f32>::unit(), 33).unwrap();
        let p = remove_mean(&SpatialProfile::<f32>::poiseuille(), &q);
        assert!((p.value(0.5) - (0.25 - 1.0 / 6.0)).abs() < 1e-6);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn drift() -> impl Strategy<Value = VerticalDrift<f64>> {
            prop_oneof![
                Just(VerticalDrift::Zero),
                (-5.0..5.0f64).prop_map(VerticalDrift::Constant),
                prop::collection::vec(-3.0..3.0f64, 2..8).prop_map(|v| {
                    let n = v.len();
                    let nodes = (0..n).map(|i| 1.5 * i as f64 / (n - 1) as f64).collect();
                    VerticalDrift::Tabulated(Tabulated::new(nodes, v, 0.0, 1.5, 2).unwrap())
                }),
            ]
        }

        fn profile() -> impl Strategy<Value = SpatialProfile<f64>> {
            prop_oneof![
                Just(SpatialProfile::linear_shear()),
                Just(SpatialProfile::poiseuille()),
                (1.0..7.0f64).prop_map(|n| SpatialProfile::power_law(n).unwrap()),
                prop::collection::vec(-2.0..2.0f64, 3..10).prop_map(|v| {
                    let n = v.len();
                    let nodes = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
                    SpatialProfile::tabulated(nodes, v).unwrap()
                }),
            ]
        }

        proptest! {
            #[test]
            fn density_integrates_to_one(d in drift(), sigma in 0.5..2.0f64, res in 64usize..600) {
                let cfg = ChannelConfig::new(1.5, sigma, d).unwrap();
                let q = stationary_density(&cfg, res).unwrap();
                prop_assert!(q.values().iter().all(|&v| v >= 0.0));
                prop_assert!((q.total_mass() - 1.0).abs() < 1e-12);
            }

            #[test]
            fn remove_mean_idempotent_and_shift_invariant(
                p in profile(), d in drift(), shift in -10.0..10.0f64,
            ) {
                let cfg = ChannelConfig::new(1.5, 1.0, d).unwrap();
                let q = stationary_density(&cfg, 257).unwrap();
                let once = remove_mean(&p, &q);
                let twice = remove_mean(&once, &q);
                let shifted = remove_mean(&p.clone().with_offset(shift), &q);
                for i in 0..=20 {
                    let s = i as f64 / 20.0;
                    prop_assert!((once.value(s) - twice.value(s)).abs() < 1e-14);
                    prop_assert!((once.value(s) - shifted.value(s)).abs() < 1e-14 * (1.0 + shift.abs()));
                }
            }
        }
    }
}
