//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("complex has no pieces")]
    EmptyComplex,

    #[error("polyline has fewer than 2 vertices or repeated consecutive vertices")]
    DegeneratePiece,

    #[error("sampling step {step} cannot resolve the finest feature ({feature}) of {what}")]
    UnresolvableScale {
        what: String,
        step: f64,
        feature: f64,
    },

    #[error("scale error: {0}")]
    ScaleError(String),

    #[error("unknown domain id {0}")]
    UnknownDomain(u32),

    #[error("point ({x}, {y}) is farther than {tol} from the set")]
    NotOnSet { x: f64, y: f64, tol: f64 },

    #[error("decomposition has {0} domains, expected exactly 2")]
    NotTwoSided(usize),

    #[error("no connection at this resolution: {0}; a finer grid spacing may resolve it")]
    NoConnection(String),

    #[error("no accessible point in the neighborhood component at scale {eps}")]
    HypothesisFailed { eps: f64 },

    #[error("points lie in different components of the complex")]
    Disconnected,

    #[error("bad fixture spec: {0}")]
    BadFixtureSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
