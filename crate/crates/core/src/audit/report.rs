//! Generic sweep of an inequality over a finite domain.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Outcome of one inequality sweep. `max_violation <= 0` means the bound held
/// at every point; `witness` is the point attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub domain: String,
    pub points: usize,
    pub max_violation: f64,
    pub witness: Vec<f64>,
}

impl BoundReport {
    pub fn satisfied(&self) -> bool {
        self.max_violation <= 0.0
    }
}

type Violation = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// An inequality `lhs <= rhs` evaluated as `violation(point) = lhs - rhs`
/// (or a monotone transform of it) over a list of encoded points.
pub struct Audit {
    name: String,
    domain: String,
    points: Vec<Vec<f64>>,
    violation: Violation,
}

impl Audit {
    pub fn new<F>(
        name: impl Into<String>,
        domain: impl Into<String>,
        points: Vec<Vec<f64>>,
        violation: F,
    ) -> Audit
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Audit {
            name: name.into(),
            domain: domain.into(),
            points,
            violation: Box::new(violation),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Violation at a single point; NaN is reported as `+inf`.
    pub fn replay(&self, point: &[f64]) -> f64 {
        let v = (self.violation)(point);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }

    pub fn run(&self) -> BoundReport {
        let vals: Vec<f64> = self.points.par_iter().map(|p| self.replay(p)).collect();
        let mut best = 0;
        for (i, &v) in vals.iter().enumerate() {
            if v > vals[best] {
                best = i;
            }
        }
        let (max_violation, witness) = match vals.get(best) {
            Some(&v) => (v, self.points[best].clone()),
            None => (f64::NEG_INFINITY, Vec::new()),
        };
        BoundReport {
            name: self.name.clone(),
            domain: self.domain.clone(),
            points: vals.len(),
            max_violation,
            witness,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_is_first_maximizer() {
        let a = Audit::new(
            "t",
            "x",
            vec![vec![1.0], vec![3.0], vec![3.0], vec![2.0]],
            |p| p[0] - 5.0,
        );
        let r = a.run();
        assert_eq!(r.max_violation, -2.0);
        assert_eq!(r.witness, vec![3.0]);
        assert_eq!(a.replay(&r.witness).to_bits(), r.max_violation.to_bits());
        assert!(r.satisfied());
    }

    #[test]
    fn nan_counts_as_violation() {
        let a = Audit::new("t", "x", vec![vec![0.0]], |_| f64::NAN);
        assert!(!a.run().satisfied());
    }
}
