use thiserror::Error;

/// Errors surfaced by the physics modules.
#[derive(Debug, Error)]
pub enum Error {
    /// The Lande formula divides by J(J+1).
    #[error("g undefined at J=0")]
    GUndefinedAtJZero,

    /// J does not belong to the ladder of the given (L, S) multiplet.
    #[error("J={j} is not in the ladder of (L={l}, S={s})")]
    JNotInLadder { l: String, s: String, j: String },

    /// Quantum number failed a structural requirement.
    #[error("invalid quantum number: {0}")]
    InvalidQuantumNumber(String),

    /// The relativistic correction factor needs alpha*Z < 1.
    #[error("alpha*Z = {alpha_z} >= 1: correction factor undefined")]
    RelativisticDomain { alpha_z: f64 },

    /// Variational minimizer did not converge.
    #[error(
        "minimizer did not converge: {iterations} iterations, \
         last functional value {last_value}, last change {last_change}"
    )]
    NonConvergence {
        iterations: usize,
        last_value: f64,
        last_change: f64,
    },

    /// The Lieb-Thirring evaluator only covers fermions.
    #[error("bound applies to fermion statistics; use boson_bounds for bosons")]
    FermionsOnly,

    /// Shooting bracket failed to pin down the screening slope.
    #[error("shooting bracket failure: last bracket [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    /// Negative density handed to the equation of state.
    #[error("density must be nonnegative, got {0}")]
    NegativeDensity(f64),

    /// Structure integration ran past r_max without finding a surface.
    #[error("unbounded profile: no pressure zero within r_max={r_max} (central x={x_c})")]
    UnboundedProfile { r_max: f64, x_c: f64 },

    /// Generic invalid input.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
