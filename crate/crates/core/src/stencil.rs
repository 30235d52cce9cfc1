//! Upwind stencil from piecewise-linear nodal bases.
//!
//! For a nonlocal node the weights are
//! `a_{j,j-k} = -(1/ζ) ∫ φ_k(ζy) H(y) dy` for k ≥ 1 and the diagonal is the
//! sum of the magnitudes, so every row annihilates constants. At ζ = 0 the row
//! is the backward difference `[1/h, -1/h]`.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::horizon::{HorizonField, Reach};
use crate::kernel::ReferenceKernel;
use crate::quadrature::gauss_legendre_16;

/// Minimum number of uniform cells over [0, S_max] in the rescaled variable.
pub const MIN_CELLS: usize = 16;

/// Weights of one row. `taps` runs from the far-left neighbour to the
/// diagonal, so `taps[K - k] = a_{j,j-k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientRow {
    j: usize,
    taps: Vec<f64>,
}

impl CoefficientRow {
    pub fn from_weights(j: usize, weights: &[f64]) -> Self {
        let mut taps = weights.to_vec();
        taps.reverse();
        Self { j, taps }
    }

    pub fn node(&self) -> usize {
        self.j
    }

    /// K_j: number of left neighbours carried.
    pub fn bandwidth(&self) -> usize {
        self.taps.len() - 1
    }

    pub fn diagonal(&self) -> f64 {
        self.taps[self.bandwidth()]
    }

    /// a_{j,j-k}; zero beyond the bandwidth.
    pub fn weight(&self, k: usize) -> f64 {
        let band = self.bandwidth();
        if k > band {
            0.0
        } else {
            self.taps[band - k]
        }
    }

    /// a_{j,j-k} for k = 0..=K.
    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.taps.iter().rev().copied()
    }

    pub fn row_sum(&self) -> f64 {
        self.taps.iter().sum()
    }

    /// Σ_k a_{j,j-k} u_{j-k}, reading `left` for indices below zero.
    pub fn apply(&self, u: &[f64], left: f64) -> f64 {
        let band = self.bandwidth();
        if self.j >= band {
            dot(&self.taps, &u[self.j - band..=self.j])
        } else {
            let missing = band - self.j;
            let outside: f64 = self.taps[..missing].iter().sum();
            dot(&self.taps[missing..], &u[..=self.j]) + outside * left
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Assembles the row of node j.
pub fn assemble_row(
    grid: &Grid,
    kernel: &ReferenceKernel,
    horizon: &HorizonField,
    j: usize,
) -> Result<CoefficientRow> {
    if j >= grid.n_nodes() {
        return Err(Error::NodeOutOfRange {
            index: j,
            n_nodes: grid.n_nodes(),
        });
    }
    let h = grid.h();
    let taps = match horizon.reach(grid.node(j)) {
        Reach::Local => vec![-1.0 / h, 1.0 / h],
        Reach::Nonlocal { zeta } => {
            let mut hats = hat_integrals(kernel, zeta, h);
            hats[0] = hats[1..].iter().sum();
            for c in &mut hats[1..] {
                *c = -*c;
            }
            hats.reverse();
            hats
        }
    };
    Ok(CoefficientRow { j, taps })
}

/// `(1/ζ) ∫₀^{S_max} φ_m(ζy) H(y) dy` for m = 0..=K, with
/// K = ceil(ζ S_max / h) + 1.
///
/// Cells in y are the union of a uniform partition of [0, S_max] and the
/// hat kinks y = m h / ζ; on each cell only two hats are nonzero.
pub fn hat_integrals(kernel: &ReferenceKernel, zeta: f64, h: f64) -> Vec<f64> {
    let s_max = kernel.support_radius();
    let reach = zeta * s_max / h;
    let band = reach.ceil() as usize + 1;
    let n_uniform = MIN_CELLS.max(reach.ceil() as usize);

    let mut cuts: Vec<f64> = (0..=n_uniform)
        .map(|i| s_max * i as f64 / n_uniform as f64)
        .collect();
    let kink = h / zeta;
    cuts.extend((1..).map(|m| m as f64 * kink).take_while(|&y| y < s_max));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|b, a| (*b - *a).abs() <= 1e-14 * s_max);

    let rule = gauss_legendre_16();
    let mut hats = vec![0.0; band + 1];
    for cell in cuts.windows(2) {
        let (y0, y1) = (cell[0], cell[1]);
        let m = ((0.5 * (y0 + y1) * zeta / h).floor() as usize).min(band - 1);
        let (mut lower, mut upper) = (0.0, 0.0);
        for (y, w) in rule.mapped(y0, y1) {
            let t = y * zeta / h - m as f64;
            let f = w * kernel.value(y);
            lower += (1.0 - t) * f;
            upper += t * f;
        }
        hats[m] += lower;
        hats[m + 1] += upper;
    }
    for c in &mut hats {
        *c /= zeta;
    }
    hats
}

/// All rows of a grid, assembled once.
#[derive(Debug, Clone)]
pub struct Stencil {
    grid: Grid,
    rows: Vec<CoefficientRow>,
}

impl Stencil {
    pub fn assemble(grid: &Grid, kernel: &ReferenceKernel, horizon: &HorizonField) -> Result<Self> {
        let rows = (0..grid.n_nodes())
            .into_par_iter()
            .map(|j| assemble_row(grid, kernel, horizon, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid: *grid, rows })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn rows(&self) -> &[CoefficientRow] {
        &self.rows
    }

    pub fn row(&self, j: usize) -> &CoefficientRow {
        &self.rows[j]
    }

    pub fn max_diagonal(&self) -> f64 {
        self.rows.iter().map(CoefficientRow::diagonal).fold(0.0, f64::max)
    }

    pub fn max_bandwidth(&self) -> usize {
        self.rows.iter().map(CoefficientRow::bandwidth).max().unwrap_or(0)
    }

    /// (𝒟_h U)_j for every node.
    pub fn apply(&self, u: &[f64], left_extension: f64) -> Vec<f64> {
        let mut out = vec![0.0; u.len()];
        self.apply_into(u, left_extension, &mut out);
        out
    }

    pub fn apply_into(&self, u: &[f64], left_extension: f64, out: &mut [f64]) {
        assert_eq!(u.len(), self.rows.len(), "vector length does not match the grid");
        if left_extension != 0.0 {
            self.warn_truncation(u);
        }
        out.par_iter_mut()
            .zip(&self.rows)
            .for_each(|(o, row)| *o = row.apply(u, left_extension));
    }

    fn warn_truncation(&self, u: &[f64]) {
        let reaching = self
            .rows
            .iter()
            .filter(|r| r.bandwidth() > r.node())
            .any(|r| u[..=r.node()].iter().any(|&v| v != 0.0));
        if reaching {
            log::warn!(
                "stencil reaches left of x = {} with a nonzero extension next to a nonzero solution",
                self.grid.x_left()
            );
        }
    }

    /// Debug dump with columns j,x_j,k,a.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "j,x_j,k,a")?;
        for row in &self.rows {
            let x = self.grid.node(row.node());
            for (k, a) in row.weights().enumerate() {
                writeln!(w, "{},{},{},{:e}", row.node(), x, k, a)?;
            }
        }
        Ok(())
    }
}
