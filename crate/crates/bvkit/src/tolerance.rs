use serde::{Deserialize, Serialize};

use crate::error::{argument_err, Result};

/// All numeric tolerances and grid densities in one place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Absolute comparison tolerance.
    pub eq_tol: f64,
    /// Grid density for sup-approximations and admissibility scans.
    pub grid_n: usize,
    /// Root-bracket width / residual target for bisections.
    pub bisect_tol: f64,
    /// Anchor truncation threshold: the anchor iteration stops once an
    /// anchor falls at or below this value.
    pub stop_x: f64,
    /// Hard cap on the number of anchors produced by one build.
    pub max_anchors: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eq_tol: 1e-9,
            grid_n: 2048,
            bisect_tol: 1e-12,
            stop_x: 1e-4,
            max_anchors: 10_000,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eq_tol > 0.0) || !(self.bisect_tol > 0.0) || !(self.stop_x > 0.0) {
            return argument_err("tolerances must be positive");
        }
        if self.grid_n < 16 {
            return argument_err("grid_n must be at least 16");
        }
        if self.max_anchors == 0 {
            return argument_err("max_anchors must be positive");
        }
        Ok(())
    }
}
