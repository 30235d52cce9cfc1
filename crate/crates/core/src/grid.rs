use crate::error::{Error, Result};

/// Alignment tolerance for singular points, in units of h.
pub const ALIGNMENT_TOLERANCE: f64 = 1e-12;

/// Uniform grid whose nodes are integer multiples of h, so that any point
/// of the form m·h is hit exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    first_index: i64,
    h: f64,
    n_nodes: usize,
}

impl Grid {
    /// Smallest grid of multiples of h covering [x_left, x_right].
    pub fn covering(x_left: f64, x_right: f64, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidGrid(format!("spacing must be positive, got {h}")));
        }
        if !(x_left.is_finite() && x_right.is_finite() && x_left < x_right) {
            return Err(Error::InvalidGrid(format!(
                "empty interval [{x_left}, {x_right}]"
            )));
        }
        let first = snap(x_left / h).floor() as i64;
        let last = snap(x_right / h).ceil() as i64;
        let n_nodes = (last - first + 1) as usize;
        if n_nodes < 2 {
            return Err(Error::InvalidGrid("fewer than two nodes".into()));
        }
        Ok(Self {
            first_index: first,
            h,
            n_nodes,
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn x_left(&self) -> f64 {
        self.node(0)
    }

    pub fn x_right(&self) -> f64 {
        self.node(self.n_nodes - 1)
    }

    pub fn node(&self, j: usize) -> f64 {
        (self.first_index + j as i64) as f64 * self.h
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_nodes).map(|j| self.node(j))
    }

    /// Index of the node at x; x must lie within 1e-12·h of it.
    pub fn locate(&self, x: f64) -> Result<usize> {
        let m = (x / self.h).round();
        let offset = (x - m * self.h).abs();
        if offset > ALIGNMENT_TOLERANCE * self.h {
            return Err(Error::Misaligned {
                x,
                offset,
                h: self.h,
            });
        }
        let j = m as i64 - self.first_index;
        if j < 0 || j as usize >= self.n_nodes {
            return Err(Error::InvalidGrid(format!("x = {x} lies outside the grid")));
        }
        Ok(j as usize)
    }

    /// Nodes with x in [a, b].
    pub fn window(&self, a: f64, b: f64) -> std::ops::Range<usize> {
        let lo = snap((a / self.h) - self.first_index as f64).ceil().max(0.0) as usize;
        let hi = (snap((b / self.h) - self.first_index as f64).floor() + 1.0)
            .clamp(0.0, self.n_nodes as f64) as usize;
        lo.min(hi)..hi
    }
}

/// Rounds values that are within a few ulps of an integer onto it, so that
/// floor/ceil do not step past an aligned endpoint.
fn snap(v: f64) -> f64 {
    let r = v.round();
    if (v - r).abs() <= 1e-9 {
        r
    } else {
        v
    }
}
