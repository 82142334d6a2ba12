//! Planar point and segment primitives.
//!
//! Distances are Euclidean on raw coordinate values. For routes stored as
//! lon/lat degrees this means thresholds are in degrees as well.

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Float> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Point<T>) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn scaled(&self, factor: T) -> Self {
        Point::new(self.x * factor, self.y * factor)
    }
}

impl<T: Float> From<(T, T)> for Point<T> {
    fn from((x, y): (T, T)) -> Self {
        Point::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment<T> {
    pub a: Point<T>,
    pub b: Point<T>,
}

impl<T: Float> Segment<T> {
    pub fn new(a: Point<T>, b: Point<T>) -> Self {
        Segment { a, b }
    }
}

/// Ordered route. Vertex `i` of the candidate graph is `points[i]`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Polyline<T> {
    pub points: Vec<Point<T>>,
}

impl<T: Float> Polyline<T> {
    pub fn new(points: Vec<Point<T>>) -> Self {
        Polyline { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// First non-finite point, if any.
    pub fn check_finite(&self) -> Result<()> {
        match self.points.iter().position(|p| !p.is_finite()) {
            Some(i) => Err(Error::NonFinitePoint(i)),
            None => Ok(()),
        }
    }
}

impl<T: Float> FromIterator<(T, T)> for Polyline<T> {
    fn from_iter<I: IntoIterator<Item = (T, T)>>(iter: I) -> Self {
        Polyline::new(iter.into_iter().map(Point::from).collect())
    }
}

/// Distance from `p` to the infinite line through `s.a` and `s.b`.
///
/// A degenerate segment (`a == b`) falls back to the point-to-point distance.
pub fn perpendicular_distance<T: Float>(p: &Point<T>, s: &Segment<T>) -> T {
    let dx = s.b.x - s.a.x;
    let dy = s.b.y - s.a.y;
    let len = dx.hypot(dy);
    if len == T::zero() {
        return p.distance(&s.a);
    }
    let cross = dx * (p.y - s.a.y) - dy * (p.x - s.a.x);
    cross.abs() / len
}

/// Arithmetic mean of the distances between consecutive points.
pub fn mean_adjacent_distance<T: Float>(route: &Polyline<T>) -> Result<T> {
    let n = route.len();
    if n < 2 {
        return Err(Error::DegenerateRoute(n));
    }
    let total = route
        .points
        .windows(2)
        .fold(T::zero(), |acc, w| acc + w[0].distance(&w[1]));
    Ok(total / T::from(n - 1).unwrap())
}

/// Scales every coordinate about the origin so the mean adjacent distance
/// becomes `target_mean`.
pub fn scale_route<T: Float>(route: &Polyline<T>, target_mean: T) -> Result<Polyline<T>> {
    if !(target_mean > T::zero()) || !target_mean.is_finite() {
        return Err(Error::InvalidTarget(target_mean.to_f64().unwrap_or(f64::NAN)));
    }
    let mean = mean_adjacent_distance(route)?;
    if mean == T::zero() {
        return Err(Error::CannotScale);
    }
    if mean == target_mean {
        return Ok(route.clone());
    }
    let factor = target_mean / mean;
    Ok(Polyline::new(route.points.iter().map(|p| p.scaled(factor)).collect()))
}

/// Factor that [`scale_route`] would apply.
pub fn scale_factor<T: Float>(route: &Polyline<T>, target_mean: T) -> Result<T> {
    let mean = mean_adjacent_distance(route)?;
    if mean == T::zero() {
        return Err(Error::CannotScale);
    }
    Ok(target_mean / mean)
}
