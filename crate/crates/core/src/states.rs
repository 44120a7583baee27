//! Construction and validation of truncated pure atom-field states in the
//! bare basis {|e,n⟩, |g,n⟩}.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{kahan_sum, ln_poisson, KahanSum};
use crate::params::ModelParams;

/// Pure state of the two-level atom: `excited`|e⟩ + `ground`|g⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomState {
    pub excited: Complex64,
    pub ground: Complex64,
}

impl AtomState {
    pub fn new(excited: Complex64, ground: Complex64) -> Result<Self> {
        let norm_sq = excited.norm_sqr() + ground.norm_sqr();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "atom state must be normalized: |p|² + |q|² = {norm_sq}"
            )));
        }
        Ok(Self { excited, ground })
    }

    pub fn excited_state() -> Self {
        Self { excited: Complex64::new(1.0, 0.0), ground: Complex64::new(0.0, 0.0) }
    }

    pub fn ground_state() -> Self {
        Self { excited: Complex64::new(0.0, 0.0), ground: Complex64::new(1.0, 0.0) }
    }

    /// cos(γ)|e⟩ + e^{-iξ} sin(γ)|g⟩.
    pub fn superposition(gamma: f64, xi: f64) -> Result<Self> {
        check_gamma_xi(gamma, xi)?;
        Ok(Self {
            excited: Complex64::new(gamma.cos(), 0.0),
            ground: Complex64::from_polar(gamma.sin(), -xi),
        })
    }

    /// (z|e⟩ + |g⟩)/√(1+|z|²): the atomic factor whose dipole phase matches
    /// the phase-field eigenvalue z.
    pub fn phase_matched(z: Complex64) -> Self {
        let norm = (1.0 + z.norm_sqr()).sqrt();
        Self { excited: z / norm, ground: Complex64::new(1.0 / norm, 0.0) }
    }
}

/// Truncated single-mode field state Σ c_n |n⟩, n = 0..=n_max.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub amps: Vec<Complex64>,
}

impl FieldState {
    pub fn n_max(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        kahan_sum(self.amps.iter().map(|c| c.norm_sqr()))
    }
}

/// Truncated joint pure state: a_n = ⟨e,n|Ψ⟩, b_n = ⟨g,n|Ψ⟩, n = 0..=n_max.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl JointState {
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(Error::Domain("joint state needs equal-length nonempty amplitude arrays".into()));
        }
        Ok(Self { a, b })
    }

    pub fn n_max(&self) -> usize {
        self.a.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        let mut acc = KahanSum::new();
        for (a, b) in self.a.iter().zip(&self.b) {
            acc.add(a.norm_sqr());
            acc.add(b.norm_sqr());
        }
        acc.value()
    }
}

pub(crate) fn check_gamma_xi(gamma: f64, xi: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&gamma) {
        return Err(Error::Domain(format!("gamma must lie in [0, π/2], got {gamma}")));
    }
    if !(0.0..std::f64::consts::TAU).contains(&xi) {
        return Err(Error::Domain(format!("xi must lie in [0, 2π), got {xi}")));
    }
    Ok(())
}

/// Smallest truncation index N such that both the Poisson tail beyond N and
/// the last retained weight are below `eps`.
pub(crate) fn poisson_truncation(mean_n: f64, eps: f64, cap: usize) -> Result<usize> {
    if mean_n == 0.0 {
        return Ok(1);
    }
    let mut n = mean_n.ceil() as usize + 1;
    loop {
        // geometric bound on the tail: Σ_{k>N} p_k ≤ p_{N+1} / (1 - r),
        // r = mean/(N+2), valid once N+2 > mean
        let r = mean_n / (n as f64 + 2.0);
        if r < 1.0 {
            let p_next = ln_poisson(n as f64 + 1.0, mean_n).exp();
            let p_last = ln_poisson(n as f64, mean_n).exp();
            if p_next / (1.0 - r) <= eps && p_last <= eps {
                return Ok(n.max(1));
            }
        }
        n += 1;
        if n > cap {
            return Err(Error::Truncation { cap, mean_n });
        }
    }
}

fn coherent_amps_on_grid(alpha: Complex64, n_max: usize) -> Vec<Complex64> {
    let a_abs = alpha.norm();
    if a_abs == 0.0 {
        let mut c = vec![Complex64::new(0.0, 0.0); n_max + 1];
        c[0] = Complex64::new(1.0, 0.0);
        return c;
    }
    let nu = alpha.arg();
    let a_sq = a_abs * a_abs;
    (0..=n_max)
        .map(|n| {
            let ln_mag = -0.5 * a_sq + n as f64 * a_abs.ln()
                - 0.5 * statrs::function::gamma::ln_gamma(n as f64 + 1.0);
            Complex64::from_polar(ln_mag.exp(), nu * n as f64)
        })
        .collect()
}

fn renormalized(mut amps: Vec<Complex64>) -> Vec<Complex64> {
    let norm = kahan_sum(amps.iter().map(|c| c.norm_sqr())).sqrt();
    for c in &mut amps {
        *c /= norm;
    }
    amps
}

/// Coherent field |α⟩, truncated so the discarded Poisson tail is below the
/// tail tolerance and renormalized over the retained range.
pub fn coherent_field(alpha: Complex64, params: &ModelParams) -> Result<FieldState> {
    let n = poisson_truncation(alpha.norm_sqr(), params.eps_tail, params.n_max)?;
    Ok(FieldState { amps: renormalized(coherent_amps_on_grid(alpha, n)) })
}

/// Field with amplitudes c_n ∝ j(n) zⁿ, |z| < 1. With all j(n) = +1 this is
/// the phase-coherent (lowering-phase-operator eigenstate) field. Sign
/// entries beyond the given array default to +1.
pub fn phase_field(z: Complex64, signs: &[i32], params: &ModelParams) -> Result<FieldState> {
    let z_abs = z.norm();
    if z_abs >= 1.0 {
        return Err(Error::Domain(format!(
            "|z| must be less than 1 for the state to be normalisable, got {z_abs}"
        )));
    }
    if let Some(bad) = signs.iter().find(|s| s.abs() != 1) {
        return Err(Error::Domain(format!("sign entries must be +1 or -1, got {bad}")));
    }
    let n = if z_abs == 0.0 {
        1
    } else {
        // normalized geometric weights: p_n = (1-|z|²)|z|^{2n}; tail after N
        // is exactly |z|^{2(N+1)}
        let needed = (params.eps_tail.ln() / (2.0 * z_abs.ln())).ceil() as usize;
        let n = needed.max(1);
        if n > params.n_max {
            let mean = z_abs * z_abs / (1.0 - z_abs * z_abs);
            return Err(Error::Truncation { cap: params.n_max, mean_n: mean });
        }
        n
    };
    let amps: Vec<Complex64> = (0..=n)
        .map(|k| {
            let j = *signs.get(k).unwrap_or(&1) as f64;
            j * z.powu(k as u32)
        })
        .collect();
    Ok(FieldState { amps: renormalized(amps) })
}

/// Photon-number parity of a cat field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatParity {
    Even,
    Odd,
}

fn cat_amps_on_grid(alpha: Complex64, parity: CatParity, n_max: usize) -> Result<Vec<Complex64>> {
    if alpha.norm() == 0.0 && parity == CatParity::Odd {
        return Err(Error::Domain("odd cat state is undefined at alpha = 0".into()));
    }
    let keep = |n: usize| match parity {
        CatParity::Even => n.is_multiple_of(2),
        CatParity::Odd => !n.is_multiple_of(2),
    };
    let amps: Vec<Complex64> = coherent_amps_on_grid(alpha, n_max)
        .into_iter()
        .enumerate()
        .map(|(n, c)| if keep(n) { c } else { Complex64::new(0.0, 0.0) })
        .collect();
    Ok(renormalized(amps))
}

/// Even or odd coherent superposition |α⟩ ± |−α⟩, normalized exactly over
/// the truncated range.
pub fn cat_field(alpha: Complex64, parity: CatParity, params: &ModelParams) -> Result<FieldState> {
    let n = poisson_truncation(alpha.norm_sqr(), params.eps_tail / 4.0, params.n_max)?;
    Ok(FieldState { amps: cat_amps_on_grid(alpha, parity, n)? })
}

/// Product state (p|e⟩ + q|g⟩) ⊗ Σ c_n|n⟩: a_n = p c_n, b_n = q c_n.
pub fn product_state(atom: &AtomState, field: &FieldState) -> JointState {
    JointState {
        a: field.amps.iter().map(|c| atom.excited * c).collect(),
        b: field.amps.iter().map(|c| atom.ground * c).collect(),
    }
}

/// Entangled even-odd state cos(γ)|e⟩|even⟩ + sin(γ)e^{iξ}|g⟩|odd⟩,
/// assembled directly in the bare basis.
pub fn eo_state(alpha: Complex64, gamma: f64, xi: f64, params: &ModelParams) -> Result<JointState> {
    check_gamma_xi(gamma, xi)?;
    let n = poisson_truncation(alpha.norm_sqr(), params.eps_tail / 4.0, params.n_max)?;
    let even = cat_amps_on_grid(alpha, CatParity::Even, n)?;
    let odd = cat_amps_on_grid(alpha, CatParity::Odd, n)?;
    let ce = Complex64::new(gamma.cos(), 0.0);
    let cg = Complex64::from_polar(gamma.sin(), xi);
    Ok(JointState {
        a: even.into_iter().map(|c| ce * c).collect(),
        b: odd.into_iter().map(|c| cg * c).collect(),
    })
}
