use thiserror::Error;

/// Errors raised by the lattice library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A lattice window is too small for the requested state, or would grow
    /// beyond the supported size.
    #[error("window error: {0}")]
    Window(String),

    /// Amplitude reached the hard wall of a finite window during numeric
    /// propagation.
    #[error("boundary reached: edge amplitude {edge:.3e} exceeds {limit:.3e} at t = {time}")]
    BoundaryReach { edge: f64, limit: f64, time: f64 },

    /// Lissajous target parameters that cannot be realized together.
    #[error("inconsistent target: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
