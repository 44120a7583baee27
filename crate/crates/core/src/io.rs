//! Deterministic text serialization: JSON for states, coordinates, profiles
//! and reports; CSV for time series and distributions. Floats are emitted
//! with 17 significant digits and LF line endings throughout.

use std::fmt::Write as _;

use crate::dressed::{DressedCoordinates, DressednessProfile};
use crate::dynamics::InversionSeries;
use crate::revival::ValidityReport;
use crate::states::JointState;

/// 17-significant-digit rendering used everywhere.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn float_array(values: impl Iterator<Item = f64>) -> String {
    let mut out = String::from("[");
    for (i, v) in values.enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&fmt_float(v));
    }
    out.push(']');
    out
}

/// A JSON scalar for the hand-rolled writers.
#[derive(Debug, Clone)]
pub enum JsonValue {
    Float(f64),
    Int(i64),
    Str(String),
    Bool(bool),
}

impl JsonValue {
    fn render(&self) -> String {
        match self {
            JsonValue::Float(x) => fmt_float(*x),
            JsonValue::Int(i) => i.to_string(),
            JsonValue::Str(s) => format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
            JsonValue::Bool(b) => b.to_string(),
        }
    }
}

fn json_object(fields: &[(&str, String)]) -> String {
    let mut out = String::from("{");
    for (i, (k, v)) in fields.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "\"{k}\": {v}");
    }
    out.push('}');
    out
}

/// `{"n_max": ..., "a_re": [...], "a_im": [...], "b_re": [...], "b_im": [...]}`
pub fn joint_state_json(state: &JointState) -> String {
    json_object(&[
        ("n_max", state.n_max().to_string()),
        ("a_re", float_array(state.a.iter().map(|c| c.re))),
        ("a_im", float_array(state.a.iter().map(|c| c.im))),
        ("b_re", float_array(state.b.iter().map(|c| c.re))),
        ("b_im", float_array(state.b.iter().map(|c| c.im))),
    ])
}

pub fn dressed_coords_json(coords: &DressedCoordinates) -> String {
    json_object(&[
        ("n_shells", coords.n_shells().to_string()),
        ("w_minus1", fmt_float(coords.w_minus1)),
        ("b0_phase", fmt_float(coords.b0_phase)),
        ("w", float_array(coords.w.iter().copied())),
        ("theta", float_array(coords.theta.iter().copied())),
        ("chi", float_array(coords.chi.iter().copied())),
        ("phi", float_array(coords.phi.iter().copied())),
    ])
}

pub fn profile_json(profile: &DressednessProfile) -> String {
    json_object(&[
        ("w_minus1_sq", fmt_float(profile.w_minus1_sq)),
        ("m", fmt_float(profile.m)),
        ("d", float_array(profile.d.iter().copied())),
    ])
}

/// `{"k": ..., "tau_min": ..., "condition_b_ok": ..., "dominant_n": ...}`
pub fn validity_json(report: &ValidityReport) -> String {
    json_object(&[
        ("k", report.k.to_string()),
        ("tau_min", fmt_float(report.tau_min)),
        ("condition_b_ok", report.condition_b_ok.to_string()),
        ("dominant_n", report.dominant_n.to_string()),
    ])
}

/// Run metadata: `{"command": ..., "params": {...}, "n_max": ..., "version": ...}`
pub fn metadata_json(command: &str, params: &[(&str, JsonValue)], n_max: usize, version: &str) -> String {
    let rendered: Vec<(&str, String)> = params.iter().map(|(k, v)| (*k, v.render())).collect();
    json_object(&[
        ("command", JsonValue::Str(command.into()).render()),
        ("params", json_object(&rendered)),
        ("n_max", n_max.to_string()),
        ("version", JsonValue::Str(version.into()).render()),
    ])
}

/// CSV with header `tau,sigma_z`.
pub fn series_csv(series: &InversionSeries) -> String {
    let mut out = String::from("tau,sigma_z\n");
    for (t, s) in series.grid.tau.iter().zip(&series.sigma_z) {
        let _ = writeln!(out, "{},{}", fmt_float(*t), fmt_float(*s));
    }
    out
}

/// CSV with header `n,D`.
pub fn profile_csv(profile: &DressednessProfile) -> String {
    let mut out = String::from("n,D\n");
    for (n, d) in profile.d.iter().enumerate() {
        let _ = writeln!(out, "{n},{}", fmt_float(*d));
    }
    out
}

/// CSV with header `tau,sigma_z_exact,sigma_z_approx,k_window`.
pub fn approx_csv(tau: &[f64], exact: &[f64], approx: &[f64], k_window: &[u32]) -> String {
    let mut out = String::from("tau,sigma_z_exact,sigma_z_approx,k_window\n");
    for i in 0..tau.len() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_float(tau[i]),
            fmt_float(exact[i]),
            fmt_float(approx[i]),
            k_window[i]
        );
    }
    out
}
