use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("multinomial coefficient overflows u64 (degree {degree})")]
    Overflow { degree: u32 },

    #[error("constraint matrix is rank deficient or has trivial nullspace: rank {rank}, {rows} rows, {cols} unknowns")]
    RankDeficient { rank: usize, rows: usize, cols: usize },

    #[error("retained coefficient {value:.3e} is below tolerance {tol:.1e}; cannot normalise")]
    DegenerateMixed { value: f64, tol: f64 },

    #[error("quadratic coefficient {value:.3e} is below tolerance {tol:.1e}")]
    DegenerateQuadratic { value: f64, tol: f64 },

    #[error("no generic alpha matrix found after {attempts} rejections (margin {margin})")]
    GenericityFailure { attempts: usize, margin: f64 },

    #[error("grid too coarse: {points_per_decade} points per decade (minimum 16)")]
    GridTooCoarse { points_per_decade: usize },

    #[error("resolution too coarse: spacing {spacing:.3e} exceeds {required:.3e}")]
    ResolutionTooCoarse { spacing: f64, required: f64 },

    #[error("origin is not interior to strip {strip}")]
    OriginNotInterior { strip: usize },

    #[error("support polytope is unbounded")]
    Unbounded,

    #[error("adaptive quadrature did not reach tolerance {tol:.1e} (estimate {estimate:.3e}) within {max_subdivisions} subdivisions")]
    ToleranceNotMet { tol: f64, estimate: f64, max_subdivisions: usize },

    #[error("need at least {required} usable points, got {got}")]
    InsufficientPoints { required: usize, got: usize },

    #[error("series contains non-positive value {value} at N = {n}")]
    NonPositiveValues { n: f64, value: f64 },
}

impl Error {
    /// True for failures of numerical feasibility (as opposed to bad input).
    pub fn is_numeric_infeasibility(&self) -> bool {
        matches!(
            self,
            Error::GridTooCoarse { .. }
                | Error::ResolutionTooCoarse { .. }
                | Error::ToleranceNotMet { .. }
                | Error::Unbounded
                | Error::OriginNotInterior { .. }
        )
    }
}
