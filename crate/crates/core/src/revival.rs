//! Poisson-summation decomposition of the inversion: Fresnel integrals,
//! continuous envelope interpolation, stationary-phase revival terms
//! (standard and even-odd variants), the collapse term, and validity
//! diagnostics.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI, TAU};

use crate::dressed::DressednessProfile;
use crate::dynamics::{InversionSeries, SeriesLabel, TimeGrid};
use crate::error::{Error, Result};
use crate::numerics::{integrate, kahan_sum, poisson_weight, Pchip};

// ---------------------------------------------------------------------------
// Fresnel integrals, convention C(x) = √(2/π) ∫₀ˣ cos(y²) dy.
// ---------------------------------------------------------------------------

const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;
const SERIES_CUTOFF: f64 = 3.6;

fn fresnel_series(x: f64) -> (f64, f64) {
    let x2 = x * x;
    let x4 = x2 * x2;
    // C: Σ (-1)^m x^{4m+1} / ((2m)! (4m+1))
    let mut u = x;
    let mut c = x;
    // S: Σ (-1)^m x^{4m+3} / ((2m+1)! (4m+3))
    let mut v = x * x2;
    let mut s = v / 3.0;
    for m in 1..80 {
        let mf = m as f64;
        u *= -x4 / ((2.0 * mf - 1.0) * (2.0 * mf));
        let tc = u / (4.0 * mf + 1.0);
        c += tc;
        v *= -x4 / ((2.0 * mf) * (2.0 * mf + 1.0));
        let ts = v / (4.0 * mf + 3.0);
        s += ts;
        if tc.abs() < 1e-18 && ts.abs() < 1e-18 {
            break;
        }
    }
    (SQRT_2_OVER_PI * c, SQRT_2_OVER_PI * s)
}

/// erfc(z) for Re z > 0 via the classical continued fraction
/// √π e^{z²} erfc(z) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
/// evaluated with the modified Lentz algorithm.
fn erfc_cf(z: Complex64) -> Complex64 {
    let tiny = Complex64::new(1e-300, 0.0);
    let mut f = z;
    if f.norm() == 0.0 {
        f = tiny;
    }
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for k in 1..240 {
        let a = Complex64::new(k as f64 / 2.0, 0.0);
        d = z + a * d;
        if d.norm() == 0.0 {
            d = tiny;
        }
        c = z + a / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-17 {
            break;
        }
    }
    // erfc(z) = e^{-z²}/√π · CF
    let exp_term = (-z * z).exp();
    exp_term / PI.sqrt() / f
}

fn fresnel_cf(x: f64) -> (f64, f64) {
    // C(x) + iS(x) = e^{iπ/4}/√2 · erf(x e^{-iπ/4})
    let z = Complex64::from_polar(x, -FRAC_PI_4);
    let erf = Complex64::new(1.0, 0.0) - erfc_cf(z);
    let rot = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, FRAC_PI_4);
    let cs = rot * erf;
    (cs.re, cs.im)
}

/// Fresnel cosine and sine integrals
/// C(x) = √(2/π) ∫₀ˣ cos(y²) dy, S(x) = √(2/π) ∫₀ˣ sin(y²) dy,
/// extended to negative arguments as odd functions.
pub fn fresnel(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 0.0);
    }
    let sign = x.signum();
    let ax = x.abs();
    let (c, s) = if ax <= SERIES_CUTOFF { fresnel_series(ax) } else { fresnel_cf(ax) };
    (sign * c, sign * s)
}

/// First-order large-argument forms
/// C(x) ≈ ½ + √(1/2π) sin(x²)/x and S(x) ≈ ½ + √(1/2π) cos(x²)/x,
/// the reference step behind the zeroth-order (½, ½) limit used by the
/// stationary-phase terms. Diagnostic only; use [`fresnel`] for accurate
/// values.
pub fn fresnel_asymptotic(x: f64) -> (f64, f64) {
    let inv = (0.5 / PI).sqrt() / x;
    let x2 = x * x;
    (0.5 + inv * x2.sin(), 0.5 + inv * x2.cos())
}

// ---------------------------------------------------------------------------
// Continuous envelopes.
// ---------------------------------------------------------------------------

/// Index structure of a revival expansion: `Standard` sums over every shell,
/// `EvenOdd` over the even shells re-indexed by m (shell n = 2m).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Standard,
    EvenOdd,
}

/// How the discrete weighted-dressedness profile is continued to real
/// arguments. Both modes apply to the atom-superposition ⊗ coherent-field
/// family (and its even-odd entangled variant): `LogGamma` continues the
/// Poissonian factors through the Gamma function, `GaussianZz` replaces them
/// by same-mean Gaussians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InterpMode {
    LogGamma { alpha: Complex64, gamma: f64, xi: f64 },
    GaussianZz { alpha: Complex64, gamma: f64, xi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ShapeKind {
    LogGamma,
    Gaussian,
}

/// Continuous interpolation D(x), φ(x) of a weighted-dressedness profile,
/// with its support interval and index parity.
#[derive(Debug, Clone)]
pub struct Envelope {
    parity: Parity,
    kind: ShapeKind,
    alpha_sq: f64,
    cos2_gamma: f64,
    sin2_gamma: f64,
    cos_two_delta: f64,
    weight_plus: f64,
    weight_minus: f64,
    phi: Pchip,
    support: (f64, f64),
}

impl Envelope {
    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    /// Shell index in n-space of the continuous argument.
    fn shell(&self, x: f64) -> f64 {
        match self.parity {
            Parity::Standard => x,
            Parity::EvenOdd => 2.0 * x,
        }
    }

    /// Scaled Rabi frequency over 2λ at argument x: √(n(x)+1).
    pub fn freq(&self, x: f64) -> f64 {
        (self.shell(x) + 1.0).sqrt()
    }

    fn poissonian(&self, n: f64) -> f64 {
        match self.kind {
            ShapeKind::LogGamma => poisson_weight(n, self.alpha_sq),
            ShapeKind::Gaussian => {
                let d = n - self.alpha_sq;
                (-d * d / (2.0 * self.alpha_sq)).exp() / ((TAU * self.alpha_sq).sqrt())
            }
        }
    }

    /// Continuous weighted dressedness D(x).
    pub fn d(&self, x: f64) -> f64 {
        let n = self.shell(x);
        if n < 0.0 {
            return 0.0;
        }
        let q1 = self.weight_plus * self.cos2_gamma * self.poissonian(n);
        let q2 = self.weight_minus * self.sin2_gamma * self.poissonian(n + 1.0);
        (q1 * q1 + q2 * q2 - 2.0 * q1 * q2 * self.cos_two_delta).max(0.0).sqrt()
    }

    /// Interpolated initial relative phase φ(x).
    pub fn phi0(&self, x: f64) -> f64 {
        self.phi.eval(x)
    }

    /// Index of the revival window that τ falls in (0 = collapse region).
    pub fn revival_window(&self, tau: f64) -> u32 {
        let spacing = match self.parity {
            Parity::Standard => TAU * (self.alpha_sq + 1.0).sqrt(),
            Parity::EvenOdd => PI * (self.alpha_sq + 1.0).sqrt(),
        };
        (tau / spacing).round().max(0.0) as u32
    }
}

struct ModeParams {
    alpha_abs: f64,
    alpha_sq: f64,
    nu: f64,
    gamma: f64,
    xi: f64,
    kind: ShapeKind,
}

fn mode_params(mode: &InterpMode) -> ModeParams {
    let (alpha, gamma, xi, kind) = match *mode {
        InterpMode::LogGamma { alpha, gamma, xi } => (alpha, gamma, xi, ShapeKind::LogGamma),
        InterpMode::GaussianZz { alpha, gamma, xi } => (alpha, gamma, xi, ShapeKind::Gaussian),
    };
    ModeParams {
        alpha_abs: alpha.norm(),
        alpha_sq: alpha.norm_sqr(),
        nu: alpha.arg(),
        gamma,
        xi,
        kind,
    }
}

/// Interpolate the sampled phases: degenerate shells (negligible weight in
/// `d_samples`) are dropped, the remainder unwrapped and fitted with a
/// monotone cubic. Errors out if the profile is parity-structured (every
/// other shell empty) or the unwrapped branch still jumps by more than π.
fn phi_interp(
    xs: &[f64],
    phis: &[f64],
    d_samples: &[f64],
    support: (f64, f64),
) -> Result<Pchip> {
    let d_max = d_samples.iter().cloned().fold(0.0, f64::max);
    let keep_threshold = 1e-6 * d_max;
    let mut kept_x = Vec::new();
    let mut kept_phi = Vec::new();
    for i in 0..xs.len() {
        if d_samples[i] > keep_threshold {
            kept_x.push(xs[i]);
            kept_phi.push(phis[i]);
        }
    }
    if kept_x.len() < 2 {
        let v = kept_phi.first().copied().unwrap_or(0.0);
        let x0 = kept_x.first().copied().unwrap_or(0.0);
        return Pchip::new(&[x0, x0 + 1.0], &[v, v]);
    }
    // dropped interior nodes signal a parity-structured profile the smooth
    // interpolation cannot represent
    let in_support: Vec<usize> = (0..kept_x.len())
        .filter(|&i| kept_x[i] >= support.0 && kept_x[i] <= support.1)
        .collect();
    if in_support.len() >= 2 {
        let span = kept_x[*in_support.last().unwrap()] - kept_x[in_support[0]];
        let gaps: f64 = in_support
            .windows(2)
            .map(|w| kept_x[w[1]] - kept_x[w[0]] - 1.0)
            .sum();
        if span > 0.0 && gaps > 0.25 * span {
            return Err(Error::Unwrap(
                "profile has interleaved empty shells; build the envelope with the \
                 parity-aware constructor"
                    .into(),
            ));
        }
    }
    let unwrapped = crate::numerics::unwrap_phases(&kept_phi);
    if unwrapped.windows(2).any(|w| (w[1] - w[0]).abs() > PI) {
        return Err(Error::Unwrap("adjacent phases jump by more than π after unwrapping".into()));
    }
    Pchip::new(&kept_x, &unwrapped)
}

fn check_interpolation_constraint(env: &Envelope, profile: &DressednessProfile) -> Result<()> {
    if env.kind != ShapeKind::LogGamma {
        return Ok(());
    }
    let step = match env.parity {
        Parity::Standard => 1,
        Parity::EvenOdd => 2,
    };
    let lo = env.support.0.ceil().max(0.0) as usize;
    let hi = env.support.1.floor() as usize;
    for x in lo..=hi {
        let n = x * step;
        if n >= profile.d.len() || (step == 1 && n + 1 >= profile.d.len()) {
            break;
        }
        let diff = (env.d(x as f64) - profile.d[n]).abs();
        if diff > 1e-9 {
            return Err(Error::Domain(format!(
                "envelope does not interpolate the profile at n = {n}: |ΔD| = {diff:.3e}"
            )));
        }
    }
    Ok(())
}

/// Continuous envelope over the full shell index, for profiles from
/// atom-superposition ⊗ coherent-field states. `phi0` holds the initial
/// phases φ_n(0) sampled at the integers.
pub fn interp_envelope(
    profile: &DressednessProfile,
    phi0: &[f64],
    mode: InterpMode,
) -> Result<Envelope> {
    if phi0.len() != profile.d.len() {
        return Err(Error::Domain("phase samples must align with the profile".into()));
    }
    let p = mode_params(&mode);
    let lo = (p.alpha_sq - 12.0 * p.alpha_abs).max(0.0);
    let hi = (p.alpha_sq + 12.0 * p.alpha_abs).max(lo + 2.0);
    let support = (lo, hi);
    let xs: Vec<f64> = (0..phi0.len()).map(|i| i as f64).collect();
    let env = Envelope {
        parity: Parity::Standard,
        kind: p.kind,
        alpha_sq: p.alpha_sq,
        cos2_gamma: p.gamma.cos() * p.gamma.cos(),
        sin2_gamma: p.gamma.sin() * p.gamma.sin(),
        cos_two_delta: (2.0 * (p.nu - p.xi)).cos(),
        weight_plus: 1.0,
        weight_minus: 1.0,
        phi: phi_interp(&xs, phi0, &profile.d, support)?,
        support,
    };
    check_interpolation_constraint(&env, profile)?;
    Ok(env)
}

/// Parity-aware envelope for even-odd profiles: the even shells n = 2m are
/// re-indexed by m (so D(m = 3) continues D₆) and carry the exact doubled
/// cat-state weights.
pub fn interp_envelope_even(
    profile: &DressednessProfile,
    phi0: &[f64],
    mode: InterpMode,
) -> Result<Envelope> {
    if phi0.len() != profile.d.len() {
        return Err(Error::Domain("phase samples must align with the profile".into()));
    }
    let p = mode_params(&mode);
    if p.alpha_sq == 0.0 {
        return Err(Error::Domain("even-odd envelope needs a nonzero field amplitude".into()));
    }
    let lo = (p.alpha_sq - 12.0 * p.alpha_abs).max(0.0) / 2.0;
    let hi = ((p.alpha_sq + 12.0 * p.alpha_abs) / 2.0).max(lo + 2.0);
    let support = (lo, hi);
    let m_count = profile.d.len().div_ceil(2);
    let xs: Vec<f64> = (0..m_count).map(|m| m as f64).collect();
    let phis: Vec<f64> = (0..m_count).map(|m| phi0[2 * m]).collect();
    let ds: Vec<f64> = (0..m_count).map(|m| profile.d[2 * m]).collect();
    let tanh_term = (-2.0 * p.alpha_sq).exp();
    let env = Envelope {
        parity: Parity::EvenOdd,
        kind: p.kind,
        alpha_sq: p.alpha_sq,
        cos2_gamma: p.gamma.cos() * p.gamma.cos(),
        sin2_gamma: p.gamma.sin() * p.gamma.sin(),
        cos_two_delta: (2.0 * (p.nu + p.xi)).cos(),
        weight_plus: 2.0 / (1.0 + tanh_term),
        weight_minus: 2.0 / (1.0 - tanh_term),
        phi: phi_interp(&xs, &phis, &ds, support)?,
        support,
    };
    check_interpolation_constraint(&env, profile)?;
    Ok(env)
}

// ---------------------------------------------------------------------------
// Stationary-phase terms.
// ---------------------------------------------------------------------------

/// Stationary shell index of the k-th Poisson term: n_k = τ²/(4π²k²) − 1.
pub fn stationary_point(k: i32, tau: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain(
            "the k = 0 term has no isolated stationary point (its phase is always stationary)"
                .into(),
        ));
    }
    let kk = k as f64;
    Ok(tau * tau / (4.0 * PI * PI * kk * kk) - 1.0)
}

/// The k-th revival term for a standard envelope:
/// (τ/π√(2|k|³)) · D(n_k) · cos(φ(n_k) − τ²/2π|k| + π/4),
/// zero when the stationary point leaves the envelope support. The ±k labels
/// are the two conjugate halves of the same real term, so the value is even
/// in k.
pub fn revival_term(k: i32, tau: f64, env: &Envelope) -> f64 {
    assert!(k != 0, "revival_term requires k ≠ 0");
    assert!(env.parity() == Parity::Standard, "revival_term needs a standard-parity envelope");
    let ka = k.unsigned_abs() as f64;
    let x_k = tau * tau / (4.0 * PI * PI * ka * ka) - 1.0;
    if x_k < env.support.0 || x_k > env.support.1 {
        return 0.0;
    }
    let amp = tau / (PI * (2.0 * ka * ka * ka).sqrt());
    amp * env.d(x_k) * (env.phi0(x_k) - tau * tau / (2.0 * PI * ka) + FRAC_PI_4).cos()
}

/// The k-th revival term for an even-odd envelope: stationary index
/// m_k = τ²/2π²k² − ½, amplitude τ/(π|k|^{3/2}), carrier
/// cos(φ_{2m}(0) − τ²/π|k| − π|k| + π/4). Revivals recur at half the
/// standard spacing.
pub fn revival_term_eo(k: i32, tau: f64, env: &Envelope) -> f64 {
    assert!(k != 0, "revival_term_eo requires k ≠ 0");
    assert!(env.parity() == Parity::EvenOdd, "revival_term_eo needs an even-odd envelope");
    let ka = k.unsigned_abs() as f64;
    let m_k = tau * tau / (2.0 * PI * PI * ka * ka) - 0.5;
    if m_k < env.support.0 || m_k > env.support.1 {
        return 0.0;
    }
    let amp = tau / (PI * ka.powf(1.5));
    amp * env.d(m_k) * (env.phi0(m_k) - tau * tau / (PI * ka) - PI * ka + FRAC_PI_4).cos()
}

/// The k = 0 Poisson term plus the vacuum-shell correction:
/// ω₀(τ) = ∫ D(x) cos(φ(x) − 2τ√(n(x)+1)) dx over the envelope support, and
/// τ₀(τ) = ½ D(0) cos(φ₀(0) − 2τ) − w₋₁². Describes the initial collapse.
pub fn collapse_term(
    tau: f64,
    env: &Envelope,
    w_minus1_sq: f64,
    d0: f64,
    phi00: f64,
) -> Result<f64> {
    let (lo, hi) = env.support;
    let cycles = tau * (env.freq(hi) - env.freq(lo)).abs() / PI;
    let panels = (2.0 * cycles).ceil().max(64.0) as usize;
    let (omega0, _err) = integrate(
        |x| env.d(x) * (env.phi0(x) - 2.0 * tau * env.freq(x)).cos(),
        lo,
        hi,
        1e-9,
        panels,
    )?;
    let tau0 = 0.5 * d0 * (phi00 - 2.0 * tau).cos() - w_minus1_sq;
    Ok(omega0 + tau0)
}

/// Stationary-phase approximation of the inversion:
/// collapse term plus the mirror-averaged pair of each revival term up to
/// `k_max`.
pub fn approx_inversion(
    tau: f64,
    env: &Envelope,
    k_max: usize,
    w_minus1_sq: f64,
    d0: f64,
    phi00: f64,
) -> Result<f64> {
    let mut total = collapse_term(tau, env, w_minus1_sq, d0, phi00)?;
    for k in 1..=k_max as i32 {
        let pair = match env.parity() {
            Parity::Standard => revival_term(k, tau, env) + revival_term(-k, tau, env),
            Parity::EvenOdd => revival_term_eo(k, tau, env) + revival_term_eo(-k, tau, env),
        };
        total += 0.5 * pair;
    }
    Ok(total)
}

/// Sample [`approx_inversion`] on a grid.
pub fn approx_series(
    env: &Envelope,
    grid: &TimeGrid,
    k_max: usize,
    w_minus1_sq: f64,
    d0: f64,
    phi00: f64,
) -> Result<InversionSeries> {
    let sigma_z: Result<Vec<f64>> = grid
        .tau
        .iter()
        .map(|t| approx_inversion(*t, env, k_max, w_minus1_sq, d0, phi00))
        .collect();
    Ok(InversionSeries { grid: grid.clone(), sigma_z: sigma_z?, label: SeriesLabel::Approx })
}

// ---------------------------------------------------------------------------
// Validity diagnostics.
// ---------------------------------------------------------------------------

/// Applicability report for the k-th stationary-phase term.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub k: i32,
    /// Scaled time above which the Fresnel arguments are deep in their
    /// asymptotic regime: τ_min = 2(√(π|k|) + √(2π|k| + 4π²k²)).
    pub tau_min: f64,
    /// Lower bound the envelope's dominant shell must exceed.
    pub condition_b_bound: f64,
    /// Smallest shell index covering 99% of the distribution mass.
    pub dominant_n: usize,
    pub condition_b_ok: bool,
}

/// Check the validity conditions of the k-th revival term against a profile.
pub fn validity(k: i32, profile: &DressednessProfile) -> ValidityReport {
    assert!(k != 0, "validity requires k ≠ 0");
    let ka = k.unsigned_abs() as f64;
    let tau_min = 2.0 * ((PI * ka).sqrt() + (2.0 * PI * ka + 4.0 * PI * PI * ka * ka).sqrt());
    let bound = 4.0 + (1.5 + (2.0 + 4.0 * PI * ka).sqrt()) / (2.0 * PI * ka);
    let total = kahan_sum(profile.d.iter().copied());
    let mut dominant_n = 0;
    if total > 0.0 {
        let mut acc = 0.0;
        for (n, d) in profile.d.iter().enumerate() {
            acc += d;
            if acc >= 0.99 * total {
                dominant_n = n;
                break;
            }
        }
    }
    ValidityReport {
        k,
        tau_min,
        condition_b_bound: bound,
        dominant_n,
        condition_b_ok: total > 0.0 && (dominant_n as f64) > bound,
    }
}
