use serde::{Deserialize, Serialize};

use crate::error::{ExciteError, Result};

/// Uniform half-line grid `x_i = i·h` on `[0, x_max]` with an odd node count,
/// so every composite Simpson panel pair closes without a remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_max.is_finite() && x_max > 0.0) {
            return Err(ExciteError::InvalidGrid(format!("x_max must be positive, got {x_max}")));
        }
        if n_points < 3 || n_points % 2 == 0 {
            return Err(ExciteError::InvalidGrid(format!(
                "n_points must be odd and at least 3, got {n_points}"
            )));
        }
        Ok(Grid { x_max, n_points })
    }

    /// Grid on `[0, x_max]` with spacing as close as possible to `h` from below.
    pub fn with_spacing(x_max: f64, h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(ExciteError::InvalidGrid(format!("spacing must be positive, got {h}")));
        }
        let intervals = (x_max / h - 1e-9).ceil().max(2.0) as usize;
        Grid::new(x_max, intervals + intervals % 2 + 1)
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn h(&self) -> f64 {
        self.x_max / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            i as f64 * self.h()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Index of the node at `x`, if `x` sits on the grid to within 1e-9 of a spacing.
    pub fn node_index(&self, x: f64) -> Option<usize> {
        if !(0.0..=self.x_max * (1.0 + 1e-12)).contains(&x) {
            return None;
        }
        let f = x / self.h();
        let i = f.round();
        ((f - i).abs() <= 1e-9 && (i as usize) < self.n_points).then_some(i as usize)
    }

    /// Same interval, spacing halved.
    pub fn refined(&self) -> Self {
        Grid { x_max: self.x_max, n_points: 2 * self.n_points - 1 }
    }
}
