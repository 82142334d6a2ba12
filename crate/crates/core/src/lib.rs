//! Route compression as shortest-path search over a thinned candidate graph,
//! encoded as a higher-order binary polynomial and minimised exactly or with
//! a simulated QAOA. The Ramer–Douglas–Peucker algorithm is included as the
//! baseline.
//!
//! The algebra is generic over [`Coefficient`]; `f64` is the working type and
//! `Rational64` gives exact arithmetic for verification.

pub mod error;
pub mod geometry;
pub mod graph;
pub mod hobo;
pub mod io;
pub mod ising;
pub mod optimize;
pub mod pipeline;
pub mod poly;
pub mod qaoa;
pub mod rdp;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{CandidateGraph, DivisionKind, Edge, SegmentPlan};
pub use pipeline::{compare_methods, compress_route, epsilon_sweep, CompressOptions, CompressionReport, SweepRow};
pub use qaoa::{QaoaConfig, QaoaOutcome};
pub use scalar::Coefficient;
pub use solver::{solve_exact, solve_qaoa, SolveMethod, SolveResult};

pub type Point = geometry::Point<f64>;
pub type Polyline = geometry::Polyline<f64>;
pub type Polynomial = poly::BinaryPolynomial<f64>;
pub type ExactPolynomial = poly::BinaryPolynomial<num_rational::Rational64>;
pub type Hamiltonian = ising::IsingHamiltonian<f64>;
pub type Model = hobo::HoboModel<f64>;
pub type ExactModel = hobo::HoboModel<num_rational::Rational64>;
