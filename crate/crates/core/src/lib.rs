//! Resonant Jaynes-Cummings dynamics in dressed-state coordinates.
//!
//! The crate builds truncated pure atom-field states, transforms them to the
//! dressed-shell coordinates (w₋₁, w_n, θ_n, χ_n, φ_n), evolves them exactly
//! (precession of the shell angles, or the equivalent bare-basis series used
//! as an independent cross-check), quantifies population trapping through
//! the weighted dressedness distribution D_n = w_n² sin θ_n and its bound
//! M = Σ D_n, and approximates individual revivals analytically with
//! stationary-phase Poisson-summation terms built on Fresnel asymptotics.
//!
//! All dynamics runs in the scaled time τ = λt.

pub mod dressed;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod numerics;
pub mod params;
pub mod revival;
pub mod states;

pub use dressed::{
    dressedness_profile, entropy_floor, from_dressed, to_dressed, zz_coords, zz_profile,
    DressedCoordinates, DressednessProfile,
};
pub use dynamics::{
    atom_density, entropy, evolve, evolve_bare, inversion_bare, inversion_dressed,
    rabi_frequency, series, AtomDensity, InversionSeries, SeriesKind, SeriesLabel, TimeGrid,
};
pub use error::{Error, Result};
pub use params::ModelParams;
pub use revival::{
    approx_inversion, approx_series, collapse_term, fresnel, fresnel_asymptotic,
    interp_envelope, interp_envelope_even, revival_term, revival_term_eo, stationary_point,
    validity, Envelope, InterpMode, Parity, ValidityReport,
};
pub use states::{
    cat_field, coherent_field, eo_state, phase_field, product_state, AtomState, CatParity,
    FieldState, JointState,
};
