//! Dressed-state coordinates: the transform between bare amplitudes and the
//! (w, θ, χ, φ) parametrization, the weighted-dressedness distribution and
//! its trapping bound, closed-form coordinates for atom-superposition ⊗
//! coherent-field states, and the entanglement-entropy floor.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{Error, Result};
use crate::numerics::{kahan_sum, ln_poisson, KahanSum};
use crate::params::ModelParams;
use crate::states::{check_gamma_xi, poisson_truncation, JointState};

/// Below this shell weight the angles are undefined; they are set to zero by
/// convention so round trips stay deterministic.
pub const DEGENERACY_THRESHOLD: f64 = 1e-15;

/// A pure state expressed in the dressed basis:
/// w₋₁ e^{iβ}|g,0⟩ + Σ w_n e^{iχ_n}[cos(θ_n/2)|n+⟩ + e^{-iφ_n} sin(θ_n/2)|n−⟩].
///
/// The |g,0⟩ phase β (`b0_phase`) is stored alongside the real weight w₋₁ so
/// the transform is lossless.
#[derive(Debug, Clone, PartialEq)]
pub struct DressedCoordinates {
    pub w_minus1: f64,
    pub b0_phase: f64,
    pub w: Vec<f64>,
    pub theta: Vec<f64>,
    pub chi: Vec<f64>,
    pub phi: Vec<f64>,
}

impl DressedCoordinates {
    pub fn n_shells(&self) -> usize {
        self.w.len()
    }

    /// w₋₁² + Σ w_n².
    pub fn norm_sqr(&self) -> f64 {
        let mut acc = KahanSum::new();
        acc.add(self.w_minus1 * self.w_minus1);
        for w in &self.w {
            acc.add(w * w);
        }
        acc.value()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.w.len();
        if self.theta.len() != n || self.chi.len() != n || self.phi.len() != n {
            return Err(Error::Domain("coordinate arrays must have equal length".into()));
        }
        if (self.norm_sqr() - 1.0).abs() > 1e-10 {
            return Err(Error::Domain(format!(
                "dressed coordinates not normalized: w₋₁² + Σw² = {}",
                self.norm_sqr()
            )));
        }
        Ok(())
    }
}

/// The weighted dressedness distribution D_n = w_n² sin θ_n together with
/// the trapping bound M = Σ D_n and the steady offset w₋₁².
#[derive(Debug, Clone, PartialEq)]
pub struct DressednessProfile {
    pub d: Vec<f64>,
    pub m: f64,
    pub w_minus1_sq: f64,
}

/// Expand a bare-basis state over the dressed shells. Shell n combines a_n
/// with b_{n+1}; the amplitude beyond the truncation is treated as zero.
pub fn to_dressed(state: &JointState) -> DressedCoordinates {
    let n_max = state.n_max();
    let zero = Complex64::new(0.0, 0.0);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut w = Vec::with_capacity(n_max + 1);
    let mut theta = Vec::with_capacity(n_max + 1);
    let mut chi = Vec::with_capacity(n_max + 1);
    let mut phi = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let b_next = if n < n_max { state.b[n + 1] } else { zero };
        let c_plus = (state.a[n] + b_next) * inv_sqrt2;
        let c_minus = (state.a[n] - b_next) * inv_sqrt2;
        let wn = (c_plus.norm_sqr() + c_minus.norm_sqr()).sqrt();
        if wn < DEGENERACY_THRESHOLD {
            w.push(wn);
            theta.push(0.0);
            chi.push(0.0);
            phi.push(0.0);
        } else {
            w.push(wn);
            theta.push(2.0 * c_minus.norm().atan2(c_plus.norm()));
            let chi_n = c_plus.arg();
            chi.push(chi_n.rem_euclid(TAU));
            phi.push((chi_n - c_minus.arg()).rem_euclid(TAU));
        }
    }
    DressedCoordinates {
        w_minus1: state.b[0].norm(),
        b0_phase: state.b[0].arg(),
        w,
        theta,
        chi,
        phi,
    }
}

/// Reconstruct the bare amplitudes. Exact inverse of [`to_dressed`] up to
/// rounding; a top-shell |g, n_max+1⟩ component below 1e-14 is dropped,
/// otherwise the state grows by one Fock level to hold it.
pub fn from_dressed(coords: &DressedCoordinates) -> JointState {
    let shells = coords.n_shells();
    // shell n spans |e,n⟩ and |g,n+1⟩, so the top shell reaches Fock level
    // `shells`
    let mut a = vec![Complex64::new(0.0, 0.0); shells + 1];
    let mut b = vec![Complex64::new(0.0, 0.0); shells + 1];
    b[0] = Complex64::from_polar(coords.w_minus1, coords.b0_phase);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for n in 0..shells {
        let half = 0.5 * coords.theta[n];
        let c_plus = Complex64::from_polar(coords.w[n] * half.cos(), coords.chi[n]);
        let c_minus = Complex64::from_polar(coords.w[n] * half.sin(), coords.chi[n] - coords.phi[n]);
        a[n] = (c_plus + c_minus) * inv_sqrt2;
        b[n + 1] = (c_plus - c_minus) * inv_sqrt2;
    }
    if shells >= 1 && b[shells].norm() < 1e-14 {
        a.truncate(shells);
        b.truncate(shells);
    }
    JointState { a, b }
}

/// D_n = w_n² sin θ_n, M = Σ D_n, and the steady offset w₋₁².
pub fn dressedness_profile(coords: &DressedCoordinates) -> DressednessProfile {
    let d: Vec<f64> = coords
        .w
        .iter()
        .zip(&coords.theta)
        .map(|(w, th)| w * w * th.sin())
        .collect();
    DressednessProfile {
        m: kahan_sum(d.iter().copied()),
        d,
        w_minus1_sq: coords.w_minus1 * coords.w_minus1,
    }
}

/// Closed-form dressed coordinates of
/// [cos γ|e⟩ + e^{-iξ} sin γ|g⟩] ⊗ |α⟩ on the standard truncation grid.
///
/// The top shell follows the truncation convention of [`to_dressed`]
/// (no |g, n_max+1⟩ partner) rather than the infinite-grid closed form.
pub fn zz_coords(alpha: Complex64, gamma: f64, xi: f64, params: &ModelParams) -> Result<DressedCoordinates> {
    check_gamma_xi(gamma, xi)?;
    let a_abs = alpha.norm();
    let a_sq = a_abs * a_abs;
    let nu = alpha.arg();
    let delta = nu - xi;
    let n_max = poisson_truncation(a_sq, params.eps_tail, params.n_max)?;
    let cos2g = gamma.cos() * gamma.cos();
    let sin2g = gamma.sin() * gamma.sin();
    let sin_2gamma = (2.0 * gamma).sin();

    let mut w = Vec::with_capacity(n_max + 1);
    let mut theta = Vec::with_capacity(n_max + 1);
    let mut chi = Vec::with_capacity(n_max + 1);
    let mut phi = Vec::with_capacity(n_max + 1);
    for n in 0..n_max {
        let np1 = (n + 1) as f64;
        let p_n = ln_poisson(n as f64, a_sq).exp();
        let w_sq = p_n / np1 * (np1 * cos2g + a_sq * sin2g);
        // numerator of sin θ: |(n+1)cos²γ − α² e^{2iΔ} sin²γ|
        let re = np1 * cos2g - a_sq * sin2g * (2.0 * delta).cos();
        let im = -a_sq * sin2g * (2.0 * delta).sin();
        let num = (re * re + im * im).sqrt();
        let den = np1 * cos2g + a_sq * sin2g;
        let sin_th = num / den;
        let cos_th = sin_2gamma * a_abs * np1.sqrt() * delta.cos() / den;
        let wn = w_sq.max(0.0).sqrt();
        w.push(wn);
        if wn < DEGENERACY_THRESHOLD {
            theta.push(0.0);
            chi.push(0.0);
            phi.push(0.0);
            continue;
        }
        theta.push(sin_th.atan2(cos_th));
        let cos_phi_num = np1 * cos2g - a_sq * sin2g;
        let sin_phi_num = a_abs * np1.sqrt() * sin_2gamma * delta.sin();
        if num < 1e-300 || (cos_phi_num == 0.0 && sin_phi_num == 0.0) {
            phi.push(0.0);
        } else {
            phi.push(sin_phi_num.atan2(cos_phi_num).rem_euclid(TAU));
        }
        // global phase from the direct expansion:
        // arg(c_n (cos γ + sin γ |α| e^{iΔ}/√(n+1)) / √2)
        let inner = Complex64::new(gamma.cos(), 0.0)
            + Complex64::from_polar(gamma.sin() * a_abs / np1.sqrt(), delta);
        chi.push((nu * n as f64 + inner.arg()).rem_euclid(TAU));
    }
    // top shell: a_{n_max} alone, b_{n_max+1} truncated away
    let p_top = ln_poisson(n_max as f64, a_sq).exp();
    let w_top = (p_top * cos2g).sqrt();
    w.push(w_top);
    if w_top < DEGENERACY_THRESHOLD {
        theta.push(0.0);
        chi.push(0.0);
        phi.push(0.0);
    } else {
        theta.push(FRAC_PI_2);
        chi.push((nu * n_max as f64).rem_euclid(TAU));
        phi.push(0.0);
    }
    Ok(DressedCoordinates {
        w_minus1: (-0.5 * a_sq).exp() * gamma.sin(),
        b0_phase: -xi,
        w,
        theta,
        chi,
        phi,
    })
}

/// Closed-form weighted dressedness distribution of the same family:
/// D_n = √(Q₁² + Q₂² − 2 Q₁Q₂ cos 2(ν−ξ)) with Poissonian Q₁, Q₂.
pub fn zz_profile(alpha: Complex64, gamma: f64, xi: f64, params: &ModelParams) -> Result<DressednessProfile> {
    check_gamma_xi(gamma, xi)?;
    let a_sq = alpha.norm_sqr();
    let delta = alpha.arg() - xi;
    let cos_2d = (2.0 * delta).cos();
    let cos2g = gamma.cos() * gamma.cos();
    let sin2g = gamma.sin() * gamma.sin();
    let n_max = poisson_truncation(a_sq, params.eps_tail, params.n_max)?;
    let mut d = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let q1 = ln_poisson(n as f64, a_sq).exp() * cos2g;
        // the top shell has no b_{n+1} partner on the truncated grid
        let q2 = if n < n_max {
            ln_poisson(n as f64 + 1.0, a_sq).exp() * sin2g
        } else {
            0.0
        };
        let dsq = q1 * q1 + q2 * q2 - 2.0 * q1 * q2 * cos_2d;
        d.push(dsq.max(0.0).sqrt());
    }
    Ok(DressednessProfile {
        m: kahan_sum(d.iter().copied()),
        d,
        w_minus1_sq: (-a_sq).exp() * sin2g,
    })
}

/// Integer shell with the smallest sin θ (the most dressed component),
/// ignoring shells with negligible weight.
pub fn sin_theta_argmin(coords: &DressedCoordinates) -> usize {
    let mut best = 0;
    let mut best_val = f64::INFINITY;
    for (n, (w, th)) in coords.w.iter().zip(&coords.theta).enumerate() {
        if *w < 1e-10 {
            continue;
        }
        let s = th.sin();
        if s < best_val {
            best_val = s;
            best = n;
        }
    }
    best
}

/// Continuous estimate |α|² tan²γ − 1 of the most-dressed shell index.
pub fn n_min_estimate(alpha: Complex64, gamma: f64) -> f64 {
    let t = gamma.tan();
    alpha.norm_sqr() * t * t - 1.0
}

/// Lower bound on the atomic entropy reachable from a state with trapping
/// bound M: S_min = −½(1−M)ln(½(1−M)) − ½(1+M)ln(½(1+M)).
pub fn entropy_floor(m: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::Domain(format!("trapping bound must lie in [0, 1], got {m}")));
    }
    fn xlnx(x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            x * x.ln()
        }
    }
    Ok(-xlnx(0.5 * (1.0 - m)) - xlnx(0.5 * (1.0 + m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        cat_field, coherent_field, eo_state, phase_field, product_state, AtomState, CatParity,
    };
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params() -> ModelParams {
        ModelParams::default()
    }

    fn basis_state(n_max: usize, excited: bool, n: usize) -> JointState {
        let mut a = vec![c(0.0, 0.0); n_max + 1];
        let mut b = vec![c(0.0, 0.0); n_max + 1];
        if excited {
            a[n] = c(1.0, 0.0);
        } else {
            b[n] = c(1.0, 0.0);
        }
        JointState { a, b }
    }

    #[test]
    fn product_basis_states_sit_on_the_equator() {
        // |e,0⟩: w_0 = 1, θ_0 = π/2, φ_0 = 0
        let d = to_dressed(&basis_state(4, true, 0));
        assert_abs_diff_eq!(d.w[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.theta[0], FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(d.phi[0], 0.0, epsilon = 1e-15);
        // |g,1⟩: w_0 = 1, θ_0 = π/2, φ_0 = π
        let d = to_dressed(&basis_state(4, false, 1));
        assert_abs_diff_eq!(d.w[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.theta[0], FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(d.phi[0], PI, epsilon = 1e-15);
    }

    #[test]
    fn plus_dressed_state_sits_at_the_pole() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let mut a = vec![c(0.0, 0.0); 3];
        let mut b = vec![c(0.0, 0.0); 3];
        a[0] = c(inv, 0.0);
        b[1] = c(inv, 0.0);
        let d = to_dressed(&JointState { a, b });
        assert_abs_diff_eq!(d.w[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.theta[0], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn ground_vacuum_maps_to_w_minus1() {
        let d = to_dressed(&basis_state(3, false, 0));
        assert_abs_diff_eq!(d.w_minus1, 1.0, epsilon = 1e-15);
        assert!(d.w.iter().all(|w| *w == 0.0));
        let back = from_dressed(&d);
        assert_abs_diff_eq!(back.b[0].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn round_trip_on_random_states() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        for _ in 0..100 {
            let n_max = rng.gen_range(1..40);
            let mut a: Vec<Complex64> =
                (0..=n_max).map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
            let mut b: Vec<Complex64> =
                (0..=n_max).map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
            let norm = (kahan_sum(a.iter().chain(&b).map(|x| x.norm_sqr()))).sqrt();
            a.iter_mut().for_each(|x| *x /= norm);
            b.iter_mut().for_each(|x| *x /= norm);
            let s = JointState { a, b };
            let back = from_dressed(&to_dressed(&s));
            assert_eq!(back.n_max(), s.n_max());
            for n in 0..=s.n_max() {
                assert!((back.a[n] - s.a[n]).norm() < 1e-12);
                assert!((back.b[n] - s.b[n]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn from_dressed_random_coords_normalized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let shells = rng.gen_range(2..30);
            let mut w: Vec<f64> = (0..shells).map(|_| rng.gen::<f64>()).collect();
            let w_m1: f64 = rng.gen::<f64>();
            let norm = (w_m1 * w_m1 + w.iter().map(|x| x * x).sum::<f64>()).sqrt();
            w.iter_mut().for_each(|x| *x /= norm);
            let coords = DressedCoordinates {
                w_minus1: w_m1 / norm,
                b0_phase: rng.gen::<f64>() * TAU,
                theta: (0..shells).map(|_| rng.gen::<f64>() * PI).collect(),
                chi: (0..shells).map(|_| rng.gen::<f64>() * TAU).collect(),
                phi: (0..shells).map(|_| rng.gen::<f64>() * TAU).collect(),
                w,
            };
            coords.validate().unwrap();
            let s = from_dressed(&coords);
            assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn excited_atom_profile_is_photon_distribution() {
        let field = coherent_field(c(3.0, 0.0), &params()).unwrap();
        let s = product_state(&AtomState::excited_state(), &field);
        let prof = dressedness_profile(&to_dressed(&s));
        for n in 0..=field.n_max() {
            assert_abs_diff_eq!(prof.d[n], field.amps[n].norm_sqr(), epsilon = 1e-14);
        }
        assert_abs_diff_eq!(prof.m, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(prof.w_minus1_sq, 0.0, epsilon = 1e-30);
    }

    #[test]
    fn perfect_trapping_state_is_fully_dressed() {
        let z = c(0.5, 0.0);
        let field = phase_field(z, &[], &params()).unwrap();
        let s = product_state(&AtomState::phase_matched(z), &field);
        // the all-plus family satisfies a_n = b_{n+1}: every shell is a pure
        // |n+⟩ component
        for n in 0..s.n_max() {
            assert!((s.a[n] - s.b[n + 1]).norm() < 1e-12);
        }
        let prof = dressedness_profile(&to_dressed(&s));
        // interior shells are exactly dressed; the top shell has lost its
        // |g, n+1⟩ partner to truncation and carries the tail weight
        let last = prof.d.len() - 1;
        assert!(prof.d[..last].iter().all(|d| *d < 1e-14));
        assert!(prof.d[last] <= params().eps_tail);
        assert!(prof.m.abs() < 1e-12);
    }

    #[test]
    fn trapping_profile_flat_for_quadrature_phase() {
        // ν − ξ = π/2 makes every shell maximally undressed: sin θ_n = 1
        let coords = zz_coords(c(7.0, 0.0), FRAC_PI_4, 3.0 * FRAC_PI_2, &params()).unwrap();
        for (n, th) in coords.theta.iter().enumerate() {
            if coords.w[n] > 1e-8 {
                assert_abs_diff_eq!(th.sin(), 1.0, epsilon = 1e-12);
            }
        }
        let prof = dressedness_profile(&coords);
        assert_abs_diff_eq!(prof.m, 1.0 - prof.w_minus1_sq, epsilon = 1e-10);
    }

    #[test]
    fn zz_coords_gamma_zero_reduces_to_photon_distribution() {
        let coords = zz_coords(c(7.0, 0.0), 0.0, 0.0, &params()).unwrap();
        for (n, th) in coords.theta.iter().enumerate() {
            if coords.w[n] > 1e-8 {
                assert_abs_diff_eq!(*th, FRAC_PI_2, epsilon = 1e-12);
            }
        }
        let p49 = ln_poisson(49.0, 49.0).exp();
        assert_abs_diff_eq!(coords.w[49] * coords.w[49], p49, epsilon = 1e-12);
    }

    #[test]
    fn zz_most_dressed_shell_near_estimate() {
        let coords = zz_coords(c(7.0, 0.0), FRAC_PI_4, 0.0, &params()).unwrap();
        let n_min = sin_theta_argmin(&coords);
        assert_eq!(n_min, 48);
        assert_abs_diff_eq!(n_min_estimate(c(7.0, 0.0), FRAC_PI_4), 48.0, epsilon = 1e-9);
        // with ξ = ν the most dressed component is essentially a dressed state
        assert!(coords.theta[n_min].sin() < 1e-10);
    }

    #[test]
    fn zz_coords_match_numeric_transform() {
        // module-level smoke check; the acceptance suite runs the full grid
        for (gamma, xi) in [(FRAC_PI_6, 0.0), (FRAC_PI_4, FRAC_PI_2), (FRAC_PI_3, FRAC_PI_4)] {
            let alpha = c(5.0, 0.0);
            let analytic = zz_coords(alpha, gamma, xi, &params()).unwrap();
            let field = coherent_field(alpha, &params()).unwrap();
            let atom = AtomState::superposition(gamma, xi).unwrap();
            let numeric = to_dressed(&product_state(&atom, &field));
            assert_eq!(analytic.n_shells(), numeric.n_shells());
            for n in 0..analytic.n_shells() {
                let wa = analytic.w[n] * analytic.w[n];
                let wn = numeric.w[n] * numeric.w[n];
                assert_abs_diff_eq!(wa, wn, epsilon = 1e-10);
                if wn > 1e-12 {
                    assert_abs_diff_eq!(
                        analytic.theta[n].sin(),
                        numeric.theta[n].sin(),
                        epsilon = 1e-10
                    );
                    if numeric.theta[n].sin() > 1e-3 {
                        assert_abs_diff_eq!(
                            analytic.phi[n].cos(),
                            numeric.phi[n].cos(),
                            epsilon = 1e-10
                        );
                        assert_abs_diff_eq!(
                            analytic.phi[n].sin(),
                            numeric.phi[n].sin(),
                            epsilon = 1e-10
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn zz_coords_reconstruct_the_product_state() {
        let alpha = c(4.0, 3.0);
        let (gamma, xi) = (0.6, 1.1);
        let coords = zz_coords(alpha, gamma, xi, &params()).unwrap();
        let back = from_dressed(&coords);
        let field = coherent_field(alpha, &params()).unwrap();
        let atom = AtomState::superposition(gamma, xi).unwrap();
        let direct = product_state(&atom, &field);
        assert_eq!(back.n_max(), direct.n_max());
        for n in 0..=direct.n_max() {
            assert!((back.a[n] - direct.a[n]).norm() < 1e-10, "a[{n}]");
            assert!((back.b[n] - direct.b[n]).norm() < 1e-10, "b[{n}]");
        }
    }

    #[test]
    fn zz_profile_matches_coords_route() {
        for (gamma, xi) in [(FRAC_PI_4, 0.0), (FRAC_PI_4, FRAC_PI_2), (0.3, 1.0)] {
            let alpha = c(7.0, 0.0);
            let p1 = zz_profile(alpha, gamma, xi, &params()).unwrap();
            let p2 = dressedness_profile(&zz_coords(alpha, gamma, xi, &params()).unwrap());
            assert_eq!(p1.d.len(), p2.d.len());
            for n in 0..p1.d.len() {
                assert_abs_diff_eq!(p1.d[n], p2.d[n], epsilon = 1e-12);
            }
            assert_abs_diff_eq!(p1.m, p2.m, epsilon = 1e-12);
        }
    }

    #[test]
    fn zz_profile_algebraic_limits() {
        let alpha = c(7.0, 0.0);
        // ν − ξ = π/2: D = Q1 + Q2
        let p = zz_profile(alpha, FRAC_PI_4, 3.0 * FRAC_PI_2, &params()).unwrap();
        for n in 0..p.d.len() - 1 {
            let q1 = 0.5 * ln_poisson(n as f64, 49.0).exp();
            let q2 = 0.5 * ln_poisson(n as f64 + 1.0, 49.0).exp();
            assert_abs_diff_eq!(p.d[n], q1 + q2, epsilon = 1e-12);
        }
        // ν − ξ = 0: D = |Q1 − Q2|
        let p = zz_profile(alpha, FRAC_PI_4, 0.0, &params()).unwrap();
        for n in 0..p.d.len() - 1 {
            let q1 = 0.5 * ln_poisson(n as f64, 49.0).exp();
            let q2 = 0.5 * ln_poisson(n as f64 + 1.0, 49.0).exp();
            assert_abs_diff_eq!(p.d[n], (q1 - q2).abs(), epsilon = 1e-12);
        }
    }

    #[test]
    fn zz_profile_doublet_structure() {
        let p = zz_profile(c(7.0, 0.0), FRAC_PI_4, 0.0, &params()).unwrap();
        let hi = p.d.len().min(100);
        let seg = &p.d[20..hi];
        let imin = 20 + seg.iter().enumerate().min_by(|a, b| a.1.partial_cmp(b.1).unwrap()).unwrap().0;
        assert!((44..=52).contains(&imin), "minimum at {imin}");
        let left_max = p.d[10..imin].iter().cloned().fold(0.0, f64::max);
        let right_max = p.d[imin..].iter().cloned().fold(0.0, f64::max);
        assert!(left_max > 10.0 * p.d[imin]);
        assert!(right_max > 10.0 * p.d[imin]);
    }

    #[test]
    fn eo_odd_shells_vanish() {
        let s = eo_state(c(7.0, 0.0), FRAC_PI_4, 0.0, &params()).unwrap();
        let coords = to_dressed(&s);
        for n in (1..coords.n_shells()).step_by(2) {
            assert!(coords.w[n] <= 1e-14, "w[{n}] = {}", coords.w[n]);
        }
        assert_abs_diff_eq!(coords.w_minus1, 0.0, epsilon = 1e-300);
    }

    #[test]
    fn trapping_family_has_zero_bound_for_any_signs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let z = c(0.37, 0.21);
        for _ in 0..10 {
            let signs: Vec<i32> = (0..64).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
            let field = phase_field(z, &signs, &params()).unwrap();
            let s = product_state(&AtomState::phase_matched(z), &field);
            let prof = dressedness_profile(&to_dressed(&s));
            assert!(prof.m < 1e-12);
        }
    }

    #[test]
    fn entropy_floor_endpoints_and_monotonicity() {
        assert_abs_diff_eq!(entropy_floor(0.0).unwrap(), std::f64::consts::LN_2, epsilon = 1e-15);
        assert_abs_diff_eq!(entropy_floor(1.0).unwrap(), 0.0, epsilon = 1e-15);
        assert!(entropy_floor(-0.1).is_err());
        assert!(entropy_floor(1.1).is_err());
        let mut prev = entropy_floor(1e-6).unwrap();
        for i in 1..=999 {
            let m = i as f64 / 1000.0;
            let s = entropy_floor(m).unwrap();
            assert!(s < prev, "not strictly decreasing at M = {m}");
            prev = s;
        }
    }

    #[test]
    fn cat_product_states_have_even_support_too() {
        // |e⟩ ⊗ |even cat⟩ populates only even shells as well
        let field = cat_field(c(5.0, 0.0), CatParity::Even, &params()).unwrap();
        let s = product_state(&AtomState::excited_state(), &field);
        let coords = to_dressed(&s);
        for n in (1..coords.n_shells()).step_by(2) {
            assert!(coords.w[n] < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn prop_round_trip_identity(seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let n_max = rng.gen_range(1..24);
            let mut a: Vec<Complex64> = (0..=n_max).map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
            let mut b: Vec<Complex64> = (0..=n_max).map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
            let norm = kahan_sum(a.iter().chain(&b).map(|x| x.norm_sqr())).sqrt();
            prop_assume!(norm > 1e-3);
            a.iter_mut().for_each(|x| *x /= norm);
            b.iter_mut().for_each(|x| *x /= norm);
            let s = JointState { a, b };
            let back = from_dressed(&to_dressed(&s));
            prop_assert_eq!(back.n_max(), s.n_max());
            for n in 0..=s.n_max() {
                prop_assert!((back.a[n] - s.a[n]).norm() < 1e-12);
                prop_assert!((back.b[n] - s.b[n]).norm() < 1e-12);
            }
        }
    }
}
