//! Fixtures shared by the benchmarks.

use nonconv_core::{Grid, HorizonDescriptor, HorizonField, ReferenceKernel, Stencil};

/// Grid, kernel and horizon for a benchmark case on [-2, 12] at h = 0.0125.
pub fn setup(horizon: HorizonDescriptor) -> (Grid, ReferenceKernel, HorizonField) {
    let grid = Grid::covering(-2.0, 12.0, 0.0125).expect("valid grid");
    let horizon = HorizonField::build(horizon).expect("valid horizon");
    (grid, ReferenceKernel::standard(), horizon)
}

pub fn stencil(horizon: HorizonDescriptor) -> Stencil {
    let (grid, kernel, horizon) = setup(horizon);
    Stencil::assemble(&grid, &kernel, &horizon).expect("assembly")
}

/// Gaussian bump sampled on the grid of `stencil`.
pub fn bump(stencil: &Stencil) -> Vec<f64> {
    stencil.grid().nodes().map(|x| (-10.0 * x * x).exp()).collect()
}
