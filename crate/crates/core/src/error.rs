use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the region where the quantity is defined.
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },
    /// A series or spectral sum did not reach its tail tolerance before the cap.
    #[error("truncation cap of {cap} terms reached for {what} (tail estimate {tail:e})")]
    TruncationCap {
        what: &'static str,
        cap: usize,
        tail: f64,
    },
    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    /// Doubling the quadrature order moved the result by more than the tolerance.
    #[error("quadrature of order {order} not converged: doubling changed the result by {change:e}")]
    NotConverged { order: usize, change: f64 },
    #[error("degenerate slope fit: {0}")]
    DegenerateFit(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain {
        what,
        value,
        domain,
    }
}
