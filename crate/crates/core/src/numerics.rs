//! Small numerical utilities: compensated summation, adaptive quadrature,
//! monotone cubic interpolation, phase unwrapping.

use crate::error::{Error, Result};

/// Neumaier-compensated accumulator. The long inversion sums run through
/// thousands of near-cancelling cosine terms during a collapse; naive
/// summation loses several digits there.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of an iterator.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = KahanSum::new();
    for v in iter {
        acc.add(v);
    }
    acc.value()
}

/// Natural log of the continuous Poisson weight
/// p(x) = exp(-a) a^x / Γ(x+1) for intensity `a` and real x ≥ 0.
pub fn ln_poisson(x: f64, intensity: f64) -> f64 {
    if intensity == 0.0 {
        return if x == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    -intensity + x * intensity.ln() - statrs::function::gamma::ln_gamma(x + 1.0)
}

/// Continuous Poisson weight, evaluated in log space.
pub fn poisson_weight(x: f64, intensity: f64) -> f64 {
    ln_poisson(x, intensity).exp()
}

const SIMPSON_MAX_DEPTH: u32 = 48;

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    err_out: &mut f64,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth >= SIMPSON_MAX_DEPTH || delta.abs() <= 15.0 * tol {
        *err_out += delta.abs() / 15.0;
        return left + right + delta / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, err_out)
        + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, err_out)
}

/// Adaptive Simpson quadrature of `f` on [a, b] to absolute tolerance `tol`.
///
/// The interval is pre-split into `panels` slices before adapting, which
/// keeps the subdivision honest on oscillatory integrands. Returns the value
/// and the accumulated error estimate; errors out if the estimate ends up
/// above the tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, panels: usize) -> Result<(f64, f64)> {
    if b <= a {
        return Ok((0.0, 0.0));
    }
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut total = KahanSum::new();
    let mut err = 0.0;
    let panel_tol = tol / panels as f64;
    for i in 0..panels {
        let pa = a + i as f64 * h;
        let pb = if i + 1 == panels { b } else { a + (i + 1) as f64 * h };
        let pm = 0.5 * (pa + pb);
        let fa = f(pa);
        let fm = f(pm);
        let fb = f(pb);
        let whole = simpson(fa, fm, fb, pb - pa);
        total.add(adapt(&f, pa, pb, fa, fm, fb, whole, panel_tol, 0, &mut err));
    }
    if err > tol * 10.0 {
        return Err(Error::Quadrature { achieved: err, tol });
    }
    Ok((total.value(), err))
}

/// Monotone (Fritsch-Carlson) piecewise-cubic interpolant.
///
/// Evaluation clamps to the end values outside the sample range.
#[derive(Debug, Clone)]
pub struct Pchip {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

impl Pchip {
    pub fn new(xs: &[f64], ys: &[f64]) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::Domain("interpolation needs at least two samples".into()));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("interpolation abscissae must be strictly increasing".into()));
        }
        let n = xs.len();
        let mut slopes = vec![0.0; n - 1];
        for i in 0..n - 1 {
            slopes[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        }
        let mut ds = vec![0.0; n];
        ds[0] = slopes[0];
        ds[n - 1] = slopes[n - 2];
        for i in 1..n - 1 {
            if slopes[i - 1] * slopes[i] <= 0.0 {
                ds[i] = 0.0;
            } else {
                let w1 = 2.0 * (xs[i + 1] - xs[i]) + (xs[i] - xs[i - 1]);
                let w2 = (xs[i + 1] - xs[i]) + 2.0 * (xs[i] - xs[i - 1]);
                ds[i] = (w1 + w2) / (w1 / slopes[i - 1] + w2 / slopes[i]);
            }
        }
        // clip end derivatives to preserve monotonicity
        if ds[0].signum() != slopes[0].signum() {
            ds[0] = 0.0;
        } else if slopes.len() > 1 && slopes[0].signum() != slopes[1].signum() && ds[0].abs() > 3.0 * slopes[0].abs() {
            ds[0] = 3.0 * slopes[0];
        }
        if ds[n - 1].signum() != slopes[n - 2].signum() {
            ds[n - 1] = 0.0;
        }
        Ok(Self { xs: xs.to_vec(), ys: ys.to_vec(), ds })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.ys[i],
            Err(i) => i - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.ds[i] + h01 * self.ys[i + 1] + h11 * h * self.ds[i + 1]
    }
}

/// Unwrap a sequence of angles (radians) into a continuous branch: each
/// consecutive difference is mapped to (-π, π].
pub fn unwrap_phases(wrapped: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(wrapped.len());
    let mut prev_out = 0.0;
    for (i, &p) in wrapped.iter().enumerate() {
        if i == 0 {
            prev_out = p;
        } else {
            let mut d = (p - wrapped[i - 1]) % std::f64::consts::TAU;
            if d > std::f64::consts::PI {
                d -= std::f64::consts::TAU;
            } else if d <= -std::f64::consts::PI {
                d += std::f64::consts::TAU;
            }
            prev_out += d;
        }
        out.push(prev_out);
    }
    out
}
