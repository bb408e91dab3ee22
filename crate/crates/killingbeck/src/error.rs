use thiserror::Error;

/// Errors shared across the solver, series, and oracle modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("spin-orbit number kappa must be nonzero")]
    InvalidKappa,

    #[error("series index n must be >= 1, got {0}")]
    InvalidSeriesIndex(i64),

    #[error("{what} must be finite and {constraint}, got {value}")]
    InvalidParameter {
        what: &'static str,
        constraint: &'static str,
        value: f64,
    },

    #[error("general ansatz requires a > 0 and gamma_tilde > 0 (a={a}, gamma_tilde={gamma_tilde}); use the special-case solvers for a = 0")]
    RequiresSpecialCase { a: f64, gamma_tilde: f64 },

    #[error("degenerate channel: n + delta - 1 = 0 (n={n}, delta={delta})")]
    DegenerateChannel { n: i64, delta: f64 },

    #[error("invalid bracket config: {0}")]
    InvalidBracket(String),

    #[error(
        "recurrence denominator X_{n} vanishes for delta = {delta} (irregular Frobenius root)"
    )]
    SingularRecurrence { n: usize, delta: f64 },

    #[error("p-spin singular point: M - E + C_ps = 0 at E = {e}")]
    PspinSingularPoint { e: f64 },

    #[error("non-finite sample while building wavefunction at r = {r}")]
    NumericOverflow { r: f64 },

    #[error("termination solver did not converge after {iterations} iterations (best |F| = {best_norm} at x = {best_x}, b = {best_b})")]
    NoConvergence {
        iterations: usize,
        best_x: f64,
        best_b: f64,
        best_norm: f64,
    },

    #[error("unsupported shooting regime: {0}")]
    UnsupportedRegime(String),

    #[error("integration overflow at r = {r} despite renormalization")]
    IntegrationOverflow { r: f64 },

    #[error("node count not monotone in E during scan: {nodes_lo} nodes at E = {e_lo}, {nodes_hi} at E = {e_hi}")]
    NodeCountNonMonotone {
        e_lo: f64,
        nodes_lo: usize,
        e_hi: f64,
        nodes_hi: usize,
    },

    #[error(
        "no match-defect sign change at node count {target_nodes} in E bracket [{e_min}, {e_max}]"
    )]
    EigenvalueNotFound {
        target_nodes: usize,
        e_min: f64,
        e_max: f64,
    },

    #[error("invalid shooting config: {0}")]
    InvalidShootingConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
