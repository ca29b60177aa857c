//! Separating points in the plane with connected polygonal obstacles.
//!
//! Geometric questions are reduced to odd-labeled-cycle questions on a labeled
//! intersection graph whose vertices are obstacles. The crate provides exact
//! geometry ([`geom`]), arrangements and a ground-truth separation oracle
//! ([`arrangement`]), graph construction ([`labeled_graph`]), parity algebra
//! ([`parity`]), minimum (s, t) separators ([`sep2`]), obstacle removal via
//! odd cycle transversal ([`oct`]) and points-separation solvers
//! ([`pointsep`]).

pub mod arrangement;
pub mod fixtures;
pub mod gen;
pub mod geom;
pub mod labeled_graph;
pub mod oct;
pub mod parity;
pub mod pointsep;
pub mod sep2;
mod util;

pub use arrangement::{separates_geometric, Arrangement, SeparationOracle};
pub use geom::{Obstacle, Point, Polyline, Scene, Violation, Q};
pub use labeled_graph::{Label, LabeledMultigraph, Mode, ReferenceCurveSet};
pub use parity::{CycleCertificate, Partition};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid scene: {0:?}")]
    InvalidScene(Vec<Violation>),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error(transparent)]
    Arrangement(#[from] arrangement::ArrangementError),
    #[error(transparent)]
    Geom(#[from] geom::GeomError),
    #[error("reference curve routing failed: {0}")]
    RoutingFailed(String),
    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("label width {0} exceeds cap {1}")]
    WidthCapExceeded(usize, usize),
    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(usize),
    #[error("partition sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("no solution within budget {0}")]
    Infeasible(usize),
    #[error("cutting-plane loop hit the iteration limit {limit}; best objective {best}")]
    IterationLimit { limit: usize, best: String },
    #[error("rounded set leaves an odd cycle")]
    RoundingInfeasible,
    #[error("no separator exists for the requested pairs")]
    NoSeparatorExists,
    #[error("scene has no (s, t) pair")]
    MissingPair,
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
