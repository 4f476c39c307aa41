//! How far Jeffreys' mixture falls short of minimax on lower-dimensional faces.

use super::constants::ln_face_factor;
use crate::error::{Error, Result};
use crate::grid::ParameterGrid;
use crate::mixtures::{jeffreys_mixture_on, vertex_divergence_closed_form, TypeTable};
use crate::solver::{asymptotic_prediction, grid_divergences};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JeffreysGap {
    pub n: u32,
    pub k: usize,
    pub l: usize,
    pub lambda: f64,
    /// Sup of the divergence over grid points with exactly `l` nonzero coordinates.
    pub face_sup: f64,
    /// Sup over grid points with every coordinate positive.
    pub interior_sup: f64,
    /// Leading terms plus the constant of the minimax asymptotics.
    pub prediction: f64,
    /// `face_sup - prediction`.
    pub gap: f64,
    pub face_minus_interior: f64,
    /// `(k-l)/2 (ln 2 + ln(1+λ)/λ)`.
    pub limit: f64,
    pub face_factor: f64,
}

pub fn jeffreys_gap(
    n: u32,
    k: usize,
    l: usize,
    lambda: f64,
    grid: &ParameterGrid,
) -> Result<JeffreysGap> {
    if l < 1 || l >= k {
        return Err(Error::Precondition(format!(
            "need 1 <= l <= k - 1, got l = {l}, k = {k}"
        )));
    }
    if grid.k() != k {
        return Err(Error::Dimension {
            expected: k,
            got: grid.k(),
        });
    }
    let q = jeffreys_mixture_on(TypeTable::new(n, k)?)?;
    let sup = |g: &ParameterGrid| {
        grid_divergences(&q, g, lambda)
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let face_sup = if l == 1 {
        vertex_divergence_closed_form(n, k, 1)?
            .full
            .expect("present at l = 1")
    } else {
        sup(&grid.filter(|p| p.support_size() == l)?)
    };
    let interior_sup = sup(&grid.interior()?);
    let prediction = asymptotic_prediction(n, k, lambda)?;
    Ok(JeffreysGap {
        n,
        k,
        l,
        lambda,
        face_sup,
        interior_sup,
        prediction,
        gap: face_sup - prediction,
        face_minus_interior: face_sup - interior_sup,
        limit: 0.5 * (k - l) as f64 * (2f64.ln() + lambda.ln_1p() / lambda),
        face_factor: ln_face_factor(k, l, n).exp(),
    })
}
