//! Finite parameter grids standing in for the continuum simplex.

use crate::error::{Error, Result};
use crate::simplex::{enumerate_types_capped, SimplexPoint};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GridDescriptor {
    /// Points `c / denominator` for every composition `c` of `denominator` into `k` parts.
    Lattice {
        k: usize,
        denominator: u32,
    },
    Custom {
        k: usize,
        size: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterGrid {
    points: Vec<SimplexPoint>,
    descriptor: GridDescriptor,
}

impl ParameterGrid {
    /// Barycentric lattice; ordered with the first coordinate descending.
    pub fn lattice(k: usize, denominator: u32) -> Result<Self> {
        if denominator < 1 {
            return Err(Error::Domain("lattice denominator must be positive".into()));
        }
        let d = denominator as f64;
        let points = enumerate_types_capped(denominator, k, 50_000_000)?
            .into_iter()
            .map(|t| SimplexPoint::new(t.counts().iter().map(|&c| c as f64 / d).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(ParameterGrid {
            points,
            descriptor: GridDescriptor::Lattice { k, denominator },
        })
    }

    /// Binary grid of `m >= 2` equally spaced points including both vertices.
    pub fn binary(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(
                "binary grid needs at least two points".into(),
            ));
        }
        Self::lattice(2, (m - 1) as u32)
    }

    /// Default grid: 2001 points for `k = 2`, denominator 120 otherwise.
    pub fn default_for(k: usize) -> Result<Self> {
        if k == 2 {
            Self::binary(2001)
        } else {
            Self::lattice(k, 120)
        }
    }

    /// Arbitrary distinct points sharing one dimension.
    pub fn custom(points: Vec<SimplexPoint>) -> Result<Self> {
        let k = points.first().ok_or(Error::EmptySupport)?.k();
        for (i, p) in points.iter().enumerate() {
            if p.k() != k {
                return Err(Error::Dimension {
                    expected: k,
                    got: p.k(),
                });
            }
            if points[..i].contains(p) {
                return Err(Error::Domain(format!("duplicate grid point at index {i}")));
            }
        }
        let size = points.len();
        Ok(ParameterGrid {
            points,
            descriptor: GridDescriptor::Custom { k, size },
        })
    }

    pub fn points(&self) -> &[SimplexPoint] {
        &self.points
    }

    pub fn descriptor(&self) -> &GridDescriptor {
        &self.descriptor
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn k(&self) -> usize {
        self.points[0].k()
    }

    /// Points with every coordinate positive.
    pub fn interior(&self) -> Result<ParameterGrid> {
        self.filter(|p| p.probs().iter().all(|&x| x > 0.0))
    }

    /// Points with at most `l` nonzero coordinates.
    pub fn face(&self, l: usize) -> Result<ParameterGrid> {
        self.filter(|p| p.support_size() <= l)
    }

    pub fn filter<F: Fn(&SimplexPoint) -> bool>(&self, keep: F) -> Result<ParameterGrid> {
        let pts: Vec<SimplexPoint> = self.points.iter().filter(|p| keep(p)).cloned().collect();
        if pts.is_empty() {
            return Err(Error::EmptySupport);
        }
        let k = pts[0].k();
        let size = pts.len();
        Ok(ParameterGrid {
            points: pts,
            descriptor: GridDescriptor::Custom { k, size },
        })
    }
}
