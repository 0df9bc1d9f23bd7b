//! Points of the ambient Euclidean space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of R^n with finite coordinates.
///
/// Construction rejects NaN and infinite coordinates, so every `Point` in
/// circulation is safe to feed into distance computations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::RejectedInput(
                "point must have dimension >= 1".into(),
            ));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                context: "point coordinate",
            });
        }
        Ok(Self { coords })
    }

    /// 1-dimensional point.
    pub fn scalar(x: f64) -> Result<Self> {
        Self::new(vec![x])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Coordinate-wise difference `self - other`.
    pub fn sub(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Point::new(coords)
    }

    /// Coordinate-wise sum `self + other`.
    pub fn add(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Point::new(coords)
    }

    /// Scalar multiple `lambda * self`.
    pub fn scale(&self, lambda: f64) -> Result<Point> {
        Point::new(self.coords.iter().map(|c| lambda * c).collect())
    }

    pub(crate) fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.coords
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
