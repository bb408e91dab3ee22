//! Relativistic bound states of the Dirac equation with the Killingbeck
//! potential a r^2 + b r - c/r under pseudospin symmetry.
//!
//! The lower-component radial equation is quasi-exactly solvable: with a
//! Gaussian-times-exponential ansatz around a power series, part of the
//! spectrum closes in analytic form, but only on a constraint surface that
//! ties the linear strength b to the energy. Two analytic routes are
//! implemented — the closed-form energy relation ([`quasi_exact::solve_energy`])
//! and the joint series-termination system ([`quasi_exact::solve_by_termination`]) —
//! and every analytic result can be cross-checked against an independent
//! shooting-method eigensolver on the same radial equation ([`oracle`]).
//!
//! Units are natural units (hbar = c = 1) with energies in fm^-1 and
//! lengths in fm.

pub mod error;
pub mod model;
pub mod oracle;
pub mod quasi_exact;
pub mod roots;
pub mod series;
pub mod special;
pub mod table1;

pub use error::{Error, Result};
pub use model::{
    canonical_coefficients, CanonicalCoefficients, Channel, EnergyQuantities, PhysicalParams,
    PotentialParams,
};
pub use oracle::{
    effective_rhs, shoot, solve_numeric, verify, NumericEigenvalue, ShootingConfig,
    VerificationReport,
};
pub use quasi_exact::{
    ansatz_params, constrained_b, energy_residual, nearest_energy_gap, solve_by_termination,
    solve_energy, AnsatzParams, IndexConvention, QuasiExactSolution, SearchConfig, SolveMethod,
};
pub use series::{
    build_wavefunction, coefficients, dirac_system_residual, eval_f, eval_g, termination_check,
    GridConfig, RadialWavefunction, SeriesCoefficients,
};
pub use special::{
    coulomb_energy, limit_consistency, oscillator_energy, LimitEntry, LimitReport, OscillatorSpec,
};
