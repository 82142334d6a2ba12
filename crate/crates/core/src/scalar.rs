//! Scalar abstractions shared by the geometric and algebraic layers.
//!
//! Geometry is generic over [`num_traits::Float`]. Polynomial and Hamiltonian
//! coefficients are generic over [`Coefficient`], which admits `f32`, `f64`
//! and exact rationals. Lowering `x -> (1 - Z)/2` only introduces dyadic
//! factors, so the rational instantiation is exact end to end.

use std::fmt::Debug;

use num_rational::Rational64;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Coefficient ring for binary polynomials and Ising Hamiltonians.
pub trait Coefficient:
    Num + Copy + Debug + PartialOrd + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// True when the value is cancellation residue and may be dropped.
    fn is_negligible(&self) -> bool;

    /// Ties within this tolerance count as equal when minimizing.
    fn near(a: Self, b: Self) -> bool;

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    fn from_weight(w: f64) -> Self {
        Self::from_f64(w).expect("edge weight not representable in coefficient type")
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Coefficient for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-12
    }

    fn near(a: Self, b: Self) -> bool {
        (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
    }
}

impl Coefficient for f32 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-6
    }

    fn near(a: Self, b: Self) -> bool {
        (a - b).abs() <= 1e-4 * a.abs().max(b.abs()).max(1.0)
    }
}

impl Coefficient for Rational64 {
    fn is_negligible(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn near(a: Self, b: Self) -> bool {
        a == b
    }
}
