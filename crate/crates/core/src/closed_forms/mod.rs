//! Exact dispersivities for oscillatory shear, Poiseuille and integer
//! power-law channel flows (zero drift, `σ = 1`, `a = 1`).
//!
//! Every formula is a ratio of trigonometric/hyperbolic expressions in
//! `ν = √ω`. Two regimes need care:
//!
//! * near `ν = 0` numerator and denominator vanish to high order, so the
//!   direct quotient loses all significance; below a per-formula switch
//!   point a 40-term expansion in `ω²` is used instead (see `coeffs.rs`);
//! * for large `ν` the hyperbolic terms overflow, so numerator and
//!   denominator are divided by `e^ν` (or `e^{ν/2}`) analytically and the
//!   polynomial factors by the highest power of `ν` before evaluation.

mod coeffs;

use num_complex::Complex;

use crate::domain::{
    nondimensionalize, ChannelConfig, DispersivityEstimate, FlowSpec, Method, ProfileKind,
    SpatialProfile,
};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Flows with a known closed-form dispersivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormKind {
    /// `U(y) = y`.
    Shear,
    /// `U(y) = y (1 - y)`.
    Poiseuille,
    /// `U(y) = const - |y - 1/2|^n` for `n ∈ {1, …, 6}`.
    PowerLaw(u32),
}

impl ClosedFormKind {
    pub fn power_law(n: u32) -> Result<Self> {
        if (1..=6).contains(&n) {
            Ok(ClosedFormKind::PowerLaw(n))
        } else {
            Err(Error::Unsupported(format!(
                "no closed form for power-law exponent n = {n} (available for n = 1..6); \
                 use the numerical cell solver (method=numeric)"
            )))
        }
    }

    /// Closed-form kind for a spatial profile, ignoring its additive constant.
    pub fn for_profile<T: Real>(profile: &SpatialProfile<T>) -> Result<Self> {
        match &profile.kind {
            ProfileKind::LinearShear => Ok(ClosedFormKind::Shear),
            ProfileKind::Poiseuille => Ok(ClosedFormKind::Poiseuille),
            ProfileKind::PowerLaw { n } => match profile.integer_power() {
                Some(k) => Self::power_law(k),
                None => Err(Error::Unsupported(format!(
                    "no closed form for non-integer power-law exponent n = {n}; \
                     use the numerical cell solver (method=numeric)"
                ))),
            },
            _ => Err(Error::Unsupported(
                "no closed form for this profile; use the numerical cell solver (method=numeric)"
                    .into(),
            )),
        }
    }

    /// Profile even about mid-channel.
    pub fn is_symmetric(self) -> bool {
        !matches!(self, ClosedFormKind::Shear)
    }

    fn formula(self) -> &'static Formula {
        match self {
            ClosedFormKind::Shear => &SHEAR,
            // n = 2 is the Newtonian pressure-driven flow.
            ClosedFormKind::Poiseuille | ClosedFormKind::PowerLaw(2) => &POISEUILLE,
            ClosedFormKind::PowerLaw(1) => &POWER_1,
            ClosedFormKind::PowerLaw(3) => &POWER_3,
            ClosedFormKind::PowerLaw(4) => &POWER_4,
            ClosedFormKind::PowerLaw(5) => &POWER_5,
            ClosedFormKind::PowerLaw(6) => &POWER_6,
            ClosedFormKind::PowerLaw(n) => unreachable!("validated power-law exponent {n}"),
        }
    }
}

#[derive(Clone, Copy)]
enum Trig {
    Cos,
    Cosh,
    Sin,
    Sinh,
    CosHalf,
    CoshHalf,
    SinHalf,
    SinhHalf,
    CoshHalfSinHalf,
    CosHalfSinhHalf,
}

struct Term {
    /// Polynomial in ν, lowest degree first.
    poly: &'static [f64],
    trig: Trig,
}

struct Formula {
    prefactor: f64,
    numerator: &'static [Term],
    /// Denominator `constant · ν^power · Σ sign · trig`.
    den_constant: f64,
    den_power: i32,
    den_trig: &'static [(f64, Trig)],
    /// Only half-argument functions appear.
    half_argument: bool,
    series: &'static [f64],
    /// Below this ν the series is used.
    switch_nu: f64,
}

const fn term(poly: &'static [f64], trig: Trig) -> Term {
    Term { poly, trig }
}

static SHEAR: Formula = Formula {
    prefactor: 1.0,
    numerator: &[
        term(&[0.0, 1.0], Trig::Cos),
        term(&[0.0, 1.0], Trig::Cosh),
        term(&[-1.0], Trig::Sin),
        term(&[-1.0], Trig::Sinh),
    ],
    den_constant: 2.0,
    den_power: 5,
    den_trig: &[(1.0, Trig::Cos), (1.0, Trig::Cosh)],
    half_argument: false,
    series: &coeffs::SHEAR,
    switch_nu: 1.25,
};

static POISEUILLE: Formula = Formula {
    prefactor: 1.0,
    numerator: &[
        term(&[0.0, 1.0], Trig::Cos),
        term(&[0.0, -1.0], Trig::Cosh),
        term(&[-3.0], Trig::Sin),
        term(&[3.0], Trig::Sinh),
    ],
    den_constant: 6.0,
    den_power: 5,
    den_trig: &[(1.0, Trig::Cos), (-1.0, Trig::Cosh)],
    half_argument: false,
    series: &coeffs::POISEUILLE,
    switch_nu: 2.0,
};

static POWER_1: Formula = Formula {
    prefactor: 1.0,
    numerator: &[
        term(&[0.0, 1.0], Trig::CosHalf),
        term(&[0.0, 1.0], Trig::CoshHalf),
        term(&[-2.0], Trig::SinHalf),
        term(&[-2.0], Trig::SinhHalf),
    ],
    den_constant: 2.0,
    den_power: 5,
    den_trig: &[(1.0, Trig::CosHalf), (1.0, Trig::CoshHalf)],
    half_argument: true,
    series: &coeffs::POWER_1,
    switch_nu: 2.0,
};

static POWER_3: Formula = Formula {
    prefactor: 9.0,
    numerator: &[
        term(&[0.0, -80.0, 0.0, 0.0, 0.0, 1.0], Trig::Cos),
        term(&[0.0, 80.0, 0.0, 0.0, 0.0, -1.0], Trig::Cosh),
        term(&[-320.0, 0.0, 80.0], Trig::CoshHalfSinHalf),
        term(&[160.0, 0.0, -40.0, 0.0, -5.0], Trig::Sin),
        term(&[320.0, 0.0, 80.0], Trig::CosHalfSinhHalf),
        term(&[-160.0, 0.0, -40.0, 0.0, 5.0], Trig::Sinh),
    ],
    den_constant: 160.0,
    den_power: 9,
    den_trig: &[(1.0, Trig::Cos), (-1.0, Trig::Cosh)],
    half_argument: false,
    series: &coeffs::POWER_3,
    switch_nu: 2.5,
};

static POWER_4: Formula = Formula {
    prefactor: 1.0,
    numerator: &[
        term(&[0.0, -672.0, 0.0, 0.0, 0.0, 1.0], Trig::Cos),
        term(&[0.0, 672.0, 0.0, 0.0, 0.0, -1.0], Trig::Cosh),
        term(&[1008.0, 0.0, -168.0, 0.0, -7.0], Trig::Sin),
        term(&[-1008.0, 0.0, -168.0, 0.0, 7.0], Trig::Sinh),
    ],
    den_constant: 56.0,
    den_power: 9,
    den_trig: &[(1.0, Trig::Cos), (-1.0, Trig::Cosh)],
    half_argument: false,
    series: &coeffs::POWER_4,
    switch_nu: 2.5,
};

static POWER_5: Formula = Formula {
    prefactor: 5.0,
    numerator: &[
        term(
            &[0.0, 414720.0, 0.0, 0.0, 0.0, -13824.0, 0.0, 0.0, 0.0, 5.0],
            Trig::Cos,
        ),
        term(
            &[0.0, -414720.0, 0.0, 0.0, 0.0, 13824.0, 0.0, 0.0, 0.0, -5.0],
            Trig::Cosh,
        ),
        term(
            &[1658880.0, 0.0, -414720.0, 0.0, -17280.0],
            Trig::CoshHalfSinHalf,
        ),
        term(
            &[
                -829440.0, 0.0, 207360.0, 0.0, 34560.0, 0.0, -2160.0, 0.0, -45.0,
            ],
            Trig::Sin,
        ),
        term(
            &[-1658880.0, 0.0, -414720.0, 0.0, 17280.0],
            Trig::CosHalfSinhHalf,
        ),
        term(
            &[
                829440.0, 0.0, 207360.0, 0.0, -34560.0, 0.0, -2160.0, 0.0, 45.0,
            ],
            Trig::Sinh,
        ),
    ],
    den_constant: 4608.0,
    den_power: 13,
    den_trig: &[(1.0, Trig::Cos), (-1.0, Trig::Cosh)],
    half_argument: false,
    series: &coeffs::POWER_5,
    switch_nu: 2.5,
};

static POWER_6: Formula = Formula {
    prefactor: 9.0,
    numerator: &[
        term(
            &[0.0, 11827200.0, 0.0, 0.0, 0.0, -54560.0, 0.0, 0.0, 0.0, 7.0],
            Trig::Cos,
        ),
        term(
            &[
                0.0,
                -11827200.0,
                0.0,
                0.0,
                0.0,
                54560.0,
                0.0,
                0.0,
                0.0,
                -7.0,
            ],
            Trig::Cosh,
        ),
        term(
            &[
                -17740800.0,
                0.0,
                2956800.0,
                0.0,
                197120.0,
                0.0,
                -6160.0,
                0.0,
                -77.0,
            ],
            Trig::Sin,
        ),
        term(
            &[
                17740800.0, 0.0, 2956800.0, 0.0, -197120.0, 0.0, -6160.0, 0.0, 77.0,
            ],
            Trig::Sinh,
        ),
    ],
    den_constant: 39424.0,
    den_power: 13,
    den_trig: &[(1.0, Trig::Cos), (-1.0, Trig::Cosh)],
    half_argument: false,
    series: &coeffs::POWER_6,
    switch_nu: 3.0,
};

/// Trig values divided by `e^ν` (or `e^{ν/2}` for half-argument formulas).
struct ScaledTrig<T> {
    nu: T,
    half_argument: bool,
    e_full: T,
    e_half: T,
}

impl<T: Real> ScaledTrig<T> {
    fn new(nu: T, half_argument: bool) -> Self {
        Self {
            nu,
            half_argument,
            e_full: (-nu).exp(),
            e_half: (-nu * T::lit(0.5)).exp(),
        }
    }

    fn eval(&self, trig: Trig) -> T {
        let half = T::lit(0.5);
        let nu = self.nu;
        let h = nu * half;
        let (e, eh) = (self.e_full, self.e_half);
        if self.half_argument {
            return match trig {
                Trig::CosHalf => h.cos() * eh,
                Trig::SinHalf => h.sin() * eh,
                Trig::CoshHalf => half * (T::one() + eh * eh),
                Trig::SinhHalf => half * (T::one() - eh * eh),
                _ => unreachable!("full-argument term in a half-argument formula"),
            };
        }
        match trig {
            Trig::Cos => nu.cos() * e,
            Trig::Sin => nu.sin() * e,
            Trig::Cosh => half * (T::one() + e * e),
            Trig::Sinh => half * (T::one() - e * e),
            Trig::CoshHalfSinHalf => h.sin() * half * (eh + eh * e),
            Trig::CosHalfSinhHalf => h.cos() * half * (eh - eh * e),
            Trig::CosHalf | Trig::SinHalf | Trig::CoshHalf | Trig::SinhHalf => {
                unreachable!("bare half-argument term in a full-argument formula")
            }
        }
    }
}

impl Formula {
    /// Direct evaluation with exponential and polynomial rescaling.
    fn direct<T: Real>(&self, nu: T) -> T {
        let trig = ScaledTrig::new(nu, self.half_argument);
        let top = self
            .numerator
            .iter()
            .map(|t| t.poly.len() - 1)
            .max()
            .unwrap_or(0);
        let r = T::one() / nu;
        let numerator: T = self
            .numerator
            .iter()
            .map(|t| {
                // Σ c_k ν^(k - top) by Horner in 1/ν.
                let shift = top - (t.poly.len() - 1);
                let mut acc = T::zero();
                for &c in t.poly {
                    acc = acc * r + T::lit(c);
                }
                acc * r.powi(shift as i32) * trig.eval(t.trig)
            })
            .sum();
        let denominator: T = self
            .den_trig
            .iter()
            .map(|&(sign, t)| T::lit(sign) * trig.eval(t))
            .sum();
        T::lit(self.prefactor) * numerator
            / (T::lit(self.den_constant) * nu.powi(self.den_power - top as i32) * denominator)
    }

    fn series<T: Real>(&self, omega: T) -> T {
        let x = omega * omega;
        self.series
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * x + T::lit(c))
    }

    fn eval<T: Real>(&self, omega: T) -> T {
        if omega == T::zero() {
            return T::lit(self.series[0]);
        }
        let nu = omega.sqrt();
        if nu < T::lit(self.switch_nu) {
            self.series(omega)
        } else {
            self.direct(nu)
        }
    }
}

fn check_omega<T: Real>(omega: T) -> Result<()> {
    if omega.is_finite() && omega >= T::zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "dimensionless frequency must be finite and >= 0, got {omega}"
        )))
    }
}

/// Nondimensional dispersivity of the given kind at frequency `omega`.
pub fn closed_form<T: Real>(kind: ClosedFormKind, omega: T) -> Result<T> {
    check_omega(omega)?;
    if let ClosedFormKind::PowerLaw(n) = kind {
        ClosedFormKind::power_law(n)?;
    }
    Ok(kind.formula().eval(omega))
}

/// Oscillatory simple shear, `u = cos(ωt) y`.
pub fn d1<T: Real>(omega: T) -> Result<T> {
    closed_form(ClosedFormKind::Shear, omega)
}

/// Oscillatory plane Poiseuille flow, `u = cos(ωt) y (1 - y)`.
pub fn d2<T: Real>(omega: T) -> Result<T> {
    closed_form(ClosedFormKind::Poiseuille, omega)
}

/// Power-law flow `u = cos(ωt) (const - |y - 1/2|^n)` for `n = 1..6`.
pub fn power_law_closed_form<T: Real>(n: u32, omega: T) -> Result<T> {
    closed_form(ClosedFormKind::power_law(n)?, omega)
}

/// Three-term small-frequency expansions for shear and Poiseuille flow.
pub fn small_omega_series<T: Real>(kind: ClosedFormKind, omega: T) -> Result<T> {
    check_omega(omega)?;
    let w2 = omega * omega;
    let r = |p: f64, q: f64| T::lit(p) / T::lit(q);
    match kind {
        ClosedFormKind::Shear => {
            Ok(r(1.0, 60.0) - r(31.0, 45360.0) * w2 + r(5461.0, 194594400.0) * w2 * w2)
        }
        ClosedFormKind::Poiseuille => {
            Ok(r(1.0, 3780.0) - r(1.0, 1496880.0) * w2 + r(1.0, 583783200.0) * w2 * w2)
        }
        ClosedFormKind::PowerLaw(_) => Err(Error::Unsupported(
            "three-term series only tabulated for shear and Poiseuille flow".into(),
        )),
    }
}

/// Shear of amplitude `u1` plus Poiseuille flow of amplitude `u2` lagging by
/// `psi`: `U1² d1 + U2² d2`. The phase does not enter.
pub fn combined_dispersivity<T: Real>(u1: T, u2: T, psi: T, omega: T) -> Result<T> {
    let _ = psi;
    Ok(u1 * u1 * d1(omega)? + u2 * u2 * d2(omega)?)
}

/// Dimensional closed-form dispersivity for flows built from shear,
/// Poiseuille and integer power-law harmonics in a drift-free channel.
///
/// Harmonics of equal frequency and equal kind are merged as complex
/// amplitudes; at one frequency at most one even kind may appear next to
/// shear, since distinct even profiles interact. At `omega = 0` the
/// `omega → 0` limit of the oscillatory result is returned.
pub fn closed_form_dispersivity<T: Real>(
    config: &ChannelConfig<T>,
    flow: &FlowSpec<T>,
) -> Result<DispersivityEstimate<T>> {
    if !config.drift.is_zero() {
        return Err(Error::Unsupported(
            "closed forms require zero vertical drift; use the numerical cell solver \
             (method=numeric)"
                .into(),
        ));
    }
    let nd = nondimensionalize(config, flow);
    // (omega, kind, summed complex amplitude)
    let mut groups: Vec<(T, ClosedFormKind, Complex<T>)> = Vec::new();
    for h in nd.flow.harmonics() {
        let kind = ClosedFormKind::for_profile(&h.profile)?;
        let kind = if kind == ClosedFormKind::PowerLaw(2) {
            ClosedFormKind::Poiseuille
        } else {
            kind
        };
        let amp = Complex::from_polar(h.amplitude, h.phase);
        match groups
            .iter_mut()
            .find(|(w, k, _)| same_frequency(*w, h.omega) && *k == kind)
        {
            Some(entry) => entry.2 = entry.2 + amp,
            None => groups.push((h.omega, kind, amp)),
        }
    }
    for (i, (w, k, _)) in groups.iter().enumerate() {
        if k.is_symmetric()
            && groups[i + 1..]
                .iter()
                .any(|(w2, k2, _)| same_frequency(*w, *w2) && k2.is_symmetric())
        {
            return Err(Error::Unsupported(
                "two different even profiles at one frequency have no closed form; use the \
                 numerical cell solver (method=numeric)"
                    .into(),
            ));
        }
    }
    let mut total = T::zero();
    for (w, kind, amp) in &groups {
        total = total + amp.norm_sqr() * closed_form(*kind, *w)?;
    }
    let scaled = DispersivityEstimate::new(total, Method::ClosedForm);
    crate::domain::dimensional_dispersivity(scaled, &nd.scales)
}

pub(crate) fn same_frequency<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= T::lit(1e-12) * a.abs().max(b.abs())
}
