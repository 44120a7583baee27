//! Command-line front end: build states, transform to dressed coordinates,
//! compute trapping bounds, run exact and approximate evolutions, and emit
//! the figure-preset datasets. All output is deterministic for fixed
//! arguments.

use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use jcm::io::{self, JsonValue};
use jcm::{
    approx_series, cat_field, coherent_field, dressedness_profile, entropy_floor, eo_state,
    phase_field, product_state, series, to_dressed, validity, AtomState, CatParity,
    DressednessProfile, Envelope, InterpMode, JointState, ModelParams, SeriesKind, TimeGrid,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "jcm", version, about = "Resonant atom-field dynamics in dressed-state coordinates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an initial atom-field state and write it as JSON
    State(StateArgs),
    /// Dressed-state coordinates (JSON) or the weighted dressedness distribution (CSV)
    Dressed(DressedArgs),
    /// Trapping bound M, steady inversion offset, and the entropy floor
    Bound(FamilyArgs),
    /// Sample the inversion on a time grid (exact series, stationary-phase approximation, or both)
    Evolve(EvolveArgs),
    /// Validity report for the k-th stationary-phase revival term
    Revival(RevivalArgs),
    /// Write the preset datasets behind the standard figures
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Atom superposition cos γ|e⟩ + e^{-iξ} sin γ|g⟩ with a coherent field
    Zz,
    /// Entangled even-odd state cos γ|e⟩|even⟩ + e^{iξ} sin γ|g⟩|odd⟩
    Eo,
    /// Perfect-trapping family: phase-matched atom with c_n ∝ j(n) zⁿ field
    Trap,
    /// Excited atom with an even or odd cat field
    Cat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Approx,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// State family
    #[arg(long, value_enum, default_value = "zz")]
    family: Family,
    /// Re α of the coherent amplitude
    #[arg(long, visible_alias = "alpha", default_value_t = 7.0)]
    alpha_re: f64,
    /// Im α of the coherent amplitude
    #[arg(long, default_value_t = 0.0)]
    alpha_im: f64,
    /// Atomic mixing angle γ ∈ [0, π/2] (radians)
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    gamma: f64,
    /// Atomic phase ξ (radians; reduced mod 2π)
    #[arg(long, conflicts_with = "phase_diff")]
    xi: Option<f64>,
    /// Convenience: set ξ = ν_α − Δ for the given phase difference Δ
    #[arg(long)]
    phase_diff: Option<f64>,
    /// Re z of the phase-field eigenvalue (trap family)
    #[arg(long, default_value_t = 0.6)]
    z_re: f64,
    /// Im z of the phase-field eigenvalue (trap family)
    #[arg(long, default_value_t = 0.0)]
    z_im: f64,
    /// File of +1/-1 tokens, one per line: the signs j(n) (trap family)
    #[arg(long)]
    signs_file: Option<PathBuf>,
    /// Cat-field parity (cat family)
    #[arg(long, value_enum, default_value = "even")]
    parity: ParityArg,
}

#[derive(Args)]
struct StateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DressedArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// json: full coordinates; csv: rows n,D of the weighted dressedness
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Largest scaled time τ = λt
    #[arg(long, default_value_t = 100.0)]
    tau_max: f64,
    /// Number of grid samples (≥ 2)
    #[arg(long, default_value_t = 4000)]
    samples: usize,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Largest Poisson index kept in the approximation
    #[arg(long, default_value_t = 6)]
    k_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RevivalArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Poisson index of the revival term (nonzero)
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    k: i32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Preset: 2a 2b 2c 3a 3b 4a 4b 4c 5
    #[arg(long)]
    figure: String,
    /// Directory for the data and metadata files
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                CliError::Lib(jcm::Error::Truncation { .. }) => 3,
                CliError::Lib(jcm::Error::Quadrature { .. }) => 4,
                _ => 2,
            })
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(jcm::Error),
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<jcm::Error> for CliError {
    fn from(e: jcm::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parse a signs file: one "+1" or "-1" token per line; entries beyond the
/// file default to +1.
fn parse_signs_file(path: &Path) -> CliResult<Vec<i32>> {
    let text = fs::read_to_string(path)?;
    let mut signs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let tok = line.trim();
        if tok.is_empty() {
            continue;
        }
        match tok {
            "+1" | "1" => signs.push(1),
            "-1" => signs.push(-1),
            other => {
                return Err(CliError::Usage(format!(
                    "{}: parse error at line {}: expected +1 or -1, got {other:?}",
                    path.display(),
                    idx + 1
                )))
            }
        }
    }
    Ok(signs)
}

struct Prepared {
    state: JointState,
    /// ZZ-family parameters when the family supports the analytic envelope.
    envelope_params: Option<(Complex64, f64, f64)>,
    family: Family,
    alpha: Complex64,
    gamma: f64,
    xi: f64,
}

impl FamilyArgs {
    fn alpha(&self) -> Complex64 {
        Complex64::new(self.alpha_re, self.alpha_im)
    }

    fn xi_value(&self) -> f64 {
        let nu = self.alpha().arg();
        match (self.xi, self.phase_diff) {
            (Some(xi), _) => xi.rem_euclid(TAU),
            (None, Some(delta)) => (nu - delta).rem_euclid(TAU),
            (None, None) => 0.0,
        }
    }

    fn build(&self) -> CliResult<Prepared> {
        let params = ModelParams::default();
        let alpha = self.alpha();
        let xi = self.xi_value();
        let z = Complex64::new(self.z_re, self.z_im);
        let state = match self.family {
            Family::Zz => {
                let atom = AtomState::superposition(self.gamma, xi)?;
                let field = coherent_field(alpha, &params)?;
                product_state(&atom, &field)
            }
            Family::Eo => eo_state(alpha, self.gamma, xi, &params)?,
            Family::Trap => {
                let signs = match &self.signs_file {
                    Some(p) => parse_signs_file(p)?,
                    None => Vec::new(),
                };
                let field = phase_field(z, &signs, &params)?;
                product_state(&AtomState::phase_matched(z), &field)
            }
            Family::Cat => {
                let parity = match self.parity {
                    ParityArg::Even => CatParity::Even,
                    ParityArg::Odd => CatParity::Odd,
                };
                let field = cat_field(alpha, parity, &params)?;
                product_state(&AtomState::excited_state(), &field)
            }
        };
        let envelope_params = match self.family {
            Family::Zz | Family::Eo => Some((alpha, self.gamma, xi)),
            _ => None,
        };
        let _ = z;
        Ok(Prepared { state, envelope_params, family: self.family, alpha, gamma: self.gamma, xi })
    }

    fn param_list(&self) -> Vec<(&'static str, JsonValue)> {
        let mut out = vec![
            (
                "family",
                JsonValue::Str(
                    match self.family {
                        Family::Zz => "zz",
                        Family::Eo => "eo",
                        Family::Trap => "trap",
                        Family::Cat => "cat",
                    }
                    .into(),
                ),
            ),
            ("alpha_re", JsonValue::Float(self.alpha_re)),
            ("alpha_im", JsonValue::Float(self.alpha_im)),
            ("gamma", JsonValue::Float(self.gamma)),
            ("xi", JsonValue::Float(self.xi_value())),
        ];
        if self.family == Family::Trap {
            out.push(("z_re", JsonValue::Float(self.z_re)));
            out.push(("z_im", JsonValue::Float(self.z_im)));
        }
        out
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn build_envelope(prep: &Prepared) -> CliResult<(Envelope, DressednessProfile, Vec<f64>)> {
    let (alpha, gamma, xi) = prep.envelope_params.ok_or_else(|| {
        CliError::Usage("the stationary-phase approximation supports the zz and eo families".into())
    })?;
    let coords = to_dressed(&prep.state);
    let profile = dressedness_profile(&coords);
    let mode = InterpMode::LogGamma { alpha, gamma, xi };
    let env = match prep.family {
        Family::Eo => jcm::interp_envelope_even(&profile, &coords.phi, mode)?,
        _ => jcm::interp_envelope(&profile, &coords.phi, mode)?,
    };
    let phi0 = coords.phi.clone();
    Ok((env, profile, phi0))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::State(args) => {
            let prep = args.family.build()?;
            emit(&args.out, &(io::joint_state_json(&prep.state) + "\n"))
        }
        Command::Dressed(args) => {
            let prep = args.family.build()?;
            let coords = to_dressed(&prep.state);
            let content = match args.format {
                Format::Json => io::dressed_coords_json(&coords) + "\n",
                Format::Csv => io::profile_csv(&dressedness_profile(&coords)),
            };
            emit(&args.out, &content)
        }
        Command::Bound(args) => {
            let content = bound_report(&args)?;
            emit(&None, &content)
        }
        Command::Evolve(args) => run_evolve(&args),
        Command::Revival(args) => {
            if args.k == 0 {
                return Err(CliError::Usage("k must be nonzero".into()));
            }
            let prep = args.family.build()?;
            let profile = dressedness_profile(&to_dressed(&prep.state));
            let report = validity(args.k, &profile);
            emit(&args.out, &(io::validity_json(&report) + "\n"))
        }
        Command::Reproduce(args) => reproduce(&args),
    }
}

fn bound_report(args: &FamilyArgs) -> CliResult<String> {
    let prep = args.build()?;
    let coords = to_dressed(&prep.state);
    let profile = dressedness_profile(&coords);
    let s_min = entropy_floor(profile.m.min(1.0))?;
    let steady = -profile.w_minus1_sq;
    let mut fields: Vec<(&str, String)> = vec![
        ("command", "\"bound\"".into()),
        ("n_max", prep.state.n_max().to_string()),
    ];
    let param_fields: Vec<(&str, String)> = args
        .param_list()
        .iter()
        .map(|(k, v)| {
            (
                *k,
                match v {
                    JsonValue::Float(x) => io::fmt_float(*x),
                    JsonValue::Int(i) => i.to_string(),
                    JsonValue::Str(s) => format!("\"{s}\""),
                    JsonValue::Bool(b) => b.to_string(),
                },
            )
        })
        .collect();
    let mut params_obj = String::from("{");
    for (i, (k, v)) in param_fields.iter().enumerate() {
        if i > 0 {
            params_obj.push_str(", ");
        }
        params_obj.push_str(&format!("\"{k}\": {v}"));
    }
    params_obj.push('}');
    fields.push(("params", params_obj));
    fields.push(("m", io::fmt_float(profile.m)));
    fields.push(("w_minus1_sq", io::fmt_float(profile.w_minus1_sq)));
    fields.push(("steady_inversion", io::fmt_float(steady)));

    // with zz-family flags also report the even-odd companion state, whose
    // diagonal atomic density makes the entropy floor sharp; the top-level
    // s_min is that value
    let (zz_block, eo_block, top_s_min) = match prep.family {
        Family::Zz | Family::Eo => {
            let zz_coords = jcm::zz_coords(prep.alpha, prep.gamma, prep.xi, &ModelParams::default())?;
            let zz_prof = dressedness_profile(&zz_coords);
            let n_min = jcm::dressed::sin_theta_argmin(&zz_coords);
            let n_min_formula = jcm::dressed::n_min_estimate(prep.alpha, prep.gamma);
            let zz = format!(
                "{{\"m\": {}, \"w_minus1_sq\": {}, \"s_min\": {}, \"n_min\": {}, \"n_min_formula\": {}}}",
                io::fmt_float(zz_prof.m),
                io::fmt_float(zz_prof.w_minus1_sq),
                io::fmt_float(entropy_floor(zz_prof.m.min(1.0))?),
                n_min,
                io::fmt_float(n_min_formula),
            );
            let eo_state_val = eo_state(prep.alpha, prep.gamma, prep.xi, &ModelParams::default())?;
            let eo_prof = dressedness_profile(&to_dressed(&eo_state_val));
            let eo_s_min = entropy_floor(eo_prof.m.min(1.0))?;
            let eo = format!(
                "{{\"m\": {}, \"s_min\": {}}}",
                io::fmt_float(eo_prof.m),
                io::fmt_float(eo_s_min),
            );
            (Some(zz), Some(eo), eo_s_min)
        }
        _ => (None, None, s_min),
    };
    if let Some(zz) = zz_block {
        fields.push(("zz", zz));
    }
    if let Some(eo) = eo_block {
        fields.push(("eo", eo));
    }
    fields.push(("s_min", io::fmt_float(top_s_min)));
    fields.push(("version", format!("\"{VERSION}\"")));

    let mut out = String::from("{");
    for (i, (k, v)) in fields.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!("\"{k}\": {v}"));
    }
    out.push_str("}\n");
    Ok(out)
}

fn run_evolve(args: &EvolveArgs) -> CliResult<()> {
    if args.samples < 2 || args.tau_max <= 0.0 || !args.tau_max.is_finite() {
        return Err(CliError::Usage("need --samples ≥ 2 and --tau-max > 0".into()));
    }
    let prep = args.family.build()?;
    let grid = TimeGrid::linspace(args.tau_max, args.samples)?;
    let content = match args.mode {
        Mode::Exact => {
            let s = series(&prep.state, &grid, SeriesKind::ExactDressed);
            io::series_csv(&s)
        }
        Mode::Approx | Mode::Both => {
            let (env, profile, phi0) = build_envelope(&prep)?;
            let approx = approx_series(&env, &grid, args.k_max, profile.w_minus1_sq, profile.d[0], phi0[0])?;
            let exact = series(&prep.state, &grid, SeriesKind::ExactDressed);
            let k_window: Vec<u32> = grid.tau.iter().map(|t| env.revival_window(*t)).collect();
            io::approx_csv(&grid.tau, &exact.sigma_z, &approx.sigma_z, &k_window)
        }
    };
    emit(&args.out, &content)?;
    if let Some(out) = &args.out {
        let meta = io::metadata_json(
            "evolve",
            &with_grid_params(args.family.param_list(), args.tau_max, args.samples, args.k_max),
            prep.state.n_max(),
            VERSION,
        );
        fs::write(meta_path(out), meta + "\n")?;
    }
    Ok(())
}

fn with_grid_params(
    mut params: Vec<(&'static str, JsonValue)>,
    tau_max: f64,
    samples: usize,
    k_max: usize,
) -> Vec<(&'static str, JsonValue)> {
    params.push(("tau_max", JsonValue::Float(tau_max)));
    params.push(("samples", JsonValue::Int(samples as i64)));
    params.push(("k_max", JsonValue::Int(k_max as i64)));
    params
}

fn meta_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("output");
    out.with_file_name(format!("{stem}.meta.json"))
}

// ---------------------------------------------------------------------------
// Figure presets.
// ---------------------------------------------------------------------------

fn preset_family(family: Family, delta: f64) -> FamilyArgs {
    FamilyArgs {
        family,
        alpha_re: 7.0,
        alpha_im: 0.0,
        gamma: std::f64::consts::FRAC_PI_4,
        xi: Some((-delta).rem_euclid(TAU)),
        phase_diff: None,
        z_re: 0.6,
        z_im: 0.0,
        signs_file: None,
        parity: ParityArg::Even,
    }
}

fn reproduce(args: &ReproduceArgs) -> CliResult<()> {
    fs::create_dir_all(&args.out_dir)?;
    let fig = args.figure.as_str();
    let half_pi = std::f64::consts::FRAC_PI_2;
    match fig {
        "2a" | "2b" | "2c" | "4a" | "4b" | "4c" => {
            let delta = match &fig[1..] {
                "a" => half_pi,
                "b" => std::f64::consts::PI / 10.0,
                _ => 0.0,
            };
            let family = if fig.starts_with('2') { Family::Zz } else { Family::Eo };
            let fam = preset_family(family, delta);
            let prep = fam.build()?;
            let grid = TimeGrid::linspace(100.0, 4000)?;
            let s = series(&prep.state, &grid, SeriesKind::ExactDressed);
            write_preset(
                &args.out_dir,
                fig,
                &io::series_csv(&s),
                &fam,
                prep.state.n_max(),
                &[("tau_max", JsonValue::Float(100.0)), ("samples", JsonValue::Int(4000))],
            )
        }
        "3a" | "3b" => {
            // weighted dressedness distributions over a parameter sweep
            let sweeps: Vec<(f64, f64)> = if fig == "3a" {
                [half_pi, std::f64::consts::FRAC_PI_4, 0.0]
                    .iter()
                    .map(|d| (std::f64::consts::FRAC_PI_4, *d))
                    .collect()
            } else {
                [half_pi, std::f64::consts::FRAC_PI_3, std::f64::consts::FRAC_PI_4]
                    .iter()
                    .map(|g| (*g, 0.0))
                    .collect()
            };
            let params = ModelParams::default();
            let profiles: Vec<DressednessProfile> = sweeps
                .iter()
                .map(|(g, d)| {
                    jcm::zz_profile(Complex64::new(7.0, 0.0), *g, (-d).rem_euclid(TAU), &params)
                        .map_err(CliError::from)
                })
                .collect::<CliResult<_>>()?;
            let rows = profiles.iter().map(|p| p.d.len()).max().unwrap_or(0);
            let mut csv = String::from("n,D_1,D_2,D_3\n");
            for n in 0..rows {
                let mut line = n.to_string();
                for p in &profiles {
                    line.push(',');
                    line.push_str(&io::fmt_float(p.d.get(n).copied().unwrap_or(0.0)));
                }
                line.push('\n');
                csv.push_str(&line);
            }
            let fam = preset_family(Family::Zz, if fig == "3a" { half_pi } else { 0.0 });
            let n_max = rows.saturating_sub(1);
            let sweep_desc = if fig == "3a" {
                "gamma = pi/4; phase diff pi/2, pi/4, 0"
            } else {
                "phase diff 0; gamma = pi/2, pi/3, pi/4"
            };
            write_preset(
                &args.out_dir,
                fig,
                &csv,
                &fam,
                n_max,
                &[("sweep", JsonValue::Str(sweep_desc.into()))],
            )
        }
        "5" => {
            // exact and approximate first/second revivals for the
            // least-trapped (Δ = π/2) and most-trapped (Δ = 0) cases
            let grid = TimeGrid::linspace(100.0, 2801)?;
            let mask: Vec<f64> = grid.tau.iter().copied().filter(|t| *t >= 30.0).collect();
            let window = TimeGrid::from_vec(mask)?;
            let mut columns: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
            let mut k_window: Vec<u32> = Vec::new();
            for delta in [half_pi, 0.0] {
                let fam = preset_family(Family::Zz, delta);
                let prep = fam.build()?;
                let exact = series(&prep.state, &window, SeriesKind::ExactDressed);
                let (env, profile, phi0) = build_envelope(&prep)?;
                let approx =
                    approx_series(&env, &window, 6, profile.w_minus1_sq, profile.d[0], phi0[0])?;
                if k_window.is_empty() {
                    k_window = window.tau.iter().map(|t| env.revival_window(*t)).collect();
                }
                columns.push((exact.sigma_z, approx.sigma_z));
            }
            let mut csv = String::from(
                "tau,sigma_z_exact_a,sigma_z_approx_a,sigma_z_exact_b,sigma_z_approx_b,k_window\n",
            );
            for (i, tau) in window.tau.iter().enumerate() {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    io::fmt_float(*tau),
                    io::fmt_float(columns[0].0[i]),
                    io::fmt_float(columns[0].1[i]),
                    io::fmt_float(columns[1].0[i]),
                    io::fmt_float(columns[1].1[i]),
                    k_window[i],
                ));
            }
            let fam = preset_family(Family::Zz, half_pi);
            let prep = fam.build()?;
            write_preset(
                &args.out_dir,
                fig,
                &csv,
                &fam,
                prep.state.n_max(),
                &[
                    ("k_max", JsonValue::Int(6)),
                    ("columns_a", JsonValue::Str("phase diff pi/2".into())),
                    ("columns_b", JsonValue::Str("phase diff 0".into())),
                ],
            )
        }
        other => Err(CliError::Usage(format!(
            "unknown figure preset {other:?}; expected one of 2a 2b 2c 3a 3b 4a 4b 4c 5"
        ))),
    }
}

fn write_preset(
    dir: &Path,
    fig: &str,
    csv: &str,
    fam: &FamilyArgs,
    n_max: usize,
    extra: &[(&'static str, JsonValue)],
) -> CliResult<()> {
    let data_path = dir.join(format!("fig{fig}.csv"));
    fs::write(&data_path, csv)?;
    let mut params = fam.param_list();
    params.push(("figure", JsonValue::Str(fig.into())));
    for (k, v) in extra {
        params.push((k, v.clone()));
    }
    let meta = io::metadata_json("reproduce", &params, n_max, VERSION);
    fs::write(meta_path(&data_path), meta + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(name: &str, content: &str) -> PathBuf {
        let path = std::env::temp_dir().join(format!("jcm-signs-{}-{name}", std::process::id()));
        fs::write(&path, content).unwrap();
        path
    }

    #[test]
    fn parse_signs_basic() {
        let p = write_temp("basic", "+1\n-1\n+1");
        assert_eq!(parse_signs_file(&p).unwrap(), vec![1, -1, 1]);
        let _ = fs::remove_file(p);
    }

    #[test]
    fn parse_signs_empty_file_defaults() {
        let p = write_temp("empty", "");
        assert_eq!(parse_signs_file(&p).unwrap(), Vec::<i32>::new());
        let _ = fs::remove_file(p);
    }

    #[test]
    fn parse_signs_rejects_other_tokens() {
        let p = write_temp("bad", "0\n");
        let err = parse_signs_file(&p).unwrap_err();
        assert!(format!("{err}").contains("line 1"));
        let _ = fs::remove_file(p);
    }

    #[test]
    fn xi_from_phase_diff() {
        let mut fam = preset_family(Family::Zz, 0.0);
        fam.xi = None;
        fam.phase_diff = Some(std::f64::consts::FRAC_PI_2);
        // real α: ν = 0, so ξ = −π/2 mod 2π
        let expect = (2.0 - 0.5) * std::f64::consts::PI;
        assert!((fam.xi_value() - expect).abs() < 1e-15);
    }

    #[test]
    fn meta_path_replaces_extension() {
        assert_eq!(meta_path(Path::new("/tmp/x/fig2a.csv")), PathBuf::from("/tmp/x/fig2a.meta.json"));
    }
}
