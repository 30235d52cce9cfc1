//! Jumps `[u]` and `[u_x]` at fixed points, measured two ways: difference
//! quotients of the computed solution, and direct evaluation of the jump
//! evolution laws
//!
//! ```text
//! [u](x, t)   = e^{-k t} [ψ₀](x)
//! [u_x](x, t) = e^{-k t} [ψ₀ₓ](x)
//!             + [ζ'](x)/ζ(x)⁴ ∫₀ᵗ e^{-k(t-r)} ∫₀^∞ (u(x, r) − u(x−s, r)) B(s) ds dr
//! ```
//!
//! with `k = ∫γ(s, x) ds` and `B(s) = 2ζ H(s/ζ) + s H'(s/ζ)`.

use std::fmt;
use std::io::Write;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::horizon::{HorizonField, Reach};
use crate::initial::InitialData;
use crate::kernel::ReferenceKernel;
use crate::solver::SnapshotStore;

/// Snapshot spacing (in steps) beyond which the time sum is flagged.
pub const COARSE_SPACING_STEPS: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    JumpU,
    JumpUx,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::JumpU => "jump_u",
            Quantity::JumpUx => "jump_ux",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    M1Quotient,
    M2Analytic,
    LocalCharacteristic,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::M1Quotient => "m1_quotient",
            Method::M2Analytic => "m2_analytic",
            Method::LocalCharacteristic => "local_characteristic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JumpSeries {
    pub location: f64,
    pub quantity: Quantity,
    pub method: Method,
    samples: Vec<(f64, f64)>,
}

impl JumpSeries {
    pub fn new(location: f64, quantity: Quantity, method: Method) -> Self {
        Self {
            location,
            quantity,
            method,
            samples: Vec::new(),
        }
    }

    pub fn push(&mut self, t: f64, value: f64) -> Result<()> {
        if let Some(&(previous, _)) = self.samples.last() {
            if !(t > previous) {
                return Err(Error::SnapshotOrder { previous, next: t });
            }
        }
        self.samples.push((t, value));
        Ok(())
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|&(_, v)| v)
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|&(t, _)| t)
    }

    /// `{quantity}_{x}_{method}.csv`
    pub fn file_name(&self) -> String {
        format!("{}_{}_{}.csv", self.quantity, self.location, self.method)
    }

    /// One comment line naming the series, then `t,value` rows.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "# location={} quantity={} method={}",
            self.location, self.quantity, self.method
        )?;
        writeln!(w, "t,value")?;
        for &(t, v) in &self.samples {
            writeln!(w, "{t},{v:e}")?;
        }
        Ok(())
    }
}

fn interior(u: &[f64], j: usize) -> Result<()> {
    if j == 0 || j + 1 >= u.len() {
        Err(Error::NotInterior { index: j })
    } else {
        Ok(())
    }
}

/// U_{j+1} − U_{j−1}
pub fn jump_u_quotient(u: &[f64], j: usize) -> Result<f64> {
    interior(u, j)?;
    Ok(u[j + 1] - u[j - 1])
}

/// (U_{j+1} − U_j)/h − (U_j − U_{j−1})/h
pub fn jump_ux_quotient(u: &[f64], j: usize, h: f64) -> Result<f64> {
    interior(u, j)?;
    Ok((u[j + 1] - u[j]) / h - (u[j] - u[j - 1]) / h)
}

/// Method-1 series at x over every snapshot.
pub fn quotient_series(
    store: &SnapshotStore,
    grid: &Grid,
    x: f64,
    quantity: Quantity,
) -> Result<JumpSeries> {
    let j = grid.locate(x)?;
    let mut series = JumpSeries::new(x, quantity, Method::M1Quotient);
    for snap in store {
        let value = match quantity {
            Quantity::JumpU => jump_u_quotient(&snap.u, j)?,
            Quantity::JumpUx => jump_ux_quotient(&snap.u, j, grid.h())?,
        };
        series.push(snap.t, value)?;
    }
    Ok(series)
}

/// Analytic jump laws for one (kernel, horizon, initial data) triple.
#[derive(Debug, Clone, Copy)]
pub struct JumpLaws<'a> {
    pub kernel: &'a ReferenceKernel,
    pub horizon: &'a HorizonField,
    pub initial: &'a InitialData,
}

impl<'a> JumpLaws<'a> {
    pub fn new(kernel: &'a ReferenceKernel, horizon: &'a HorizonField, initial: &'a InitialData) -> Self {
        Self {
            kernel,
            horizon,
            initial,
        }
    }

    fn zeta(&self, x: f64) -> Result<f64> {
        match self.horizon.reach(x) {
            Reach::Nonlocal { zeta } => Ok(zeta),
            Reach::Local => Err(Error::LocalPoint { x }),
        }
    }

    /// e^{-k t}[ψ₀](x)
    pub fn jump_u(&self, x: f64, t: f64) -> Result<f64> {
        let k = self.kernel.decay_rate(self.horizon, x)?;
        Ok((-k * t).exp() * self.initial.value_jump(x))
    }

    /// e^{-k t}[ψ₀ₓ](x); valid only where ζ' is continuous.
    pub fn jump_ux_smooth(&self, x: f64, t: f64) -> Result<f64> {
        if self.horizon.is_breakpoint(x) {
            return Err(Error::HorizonBreakpoint { x });
        }
        self.homogeneous_ux(x, t)
    }

    fn homogeneous_ux(&self, x: f64, t: f64) -> Result<f64> {
        let k = self.kernel.decay_rate(self.horizon, x)?;
        Ok((-k * t).exp() * self.initial.derivative_jump(x))
    }

    pub fn jump_u_series(&self, x: f64, times: impl IntoIterator<Item = f64>) -> Result<JumpSeries> {
        let mut series = JumpSeries::new(x, Quantity::JumpU, Method::M2Analytic);
        for t in times {
            series.push(t, self.jump_u(x, t)?)?;
        }
        Ok(series)
    }

    pub fn jump_ux_smooth_series(
        &self,
        x: f64,
        times: impl IntoIterator<Item = f64>,
    ) -> Result<JumpSeries> {
        let mut series = JumpSeries::new(x, Quantity::JumpUx, Method::M2Analytic);
        for t in times {
            series.push(t, self.jump_ux_smooth(x, t)?)?;
        }
        Ok(series)
    }

    /// [u_x] at x for every snapshot time, with the forcing integral read
    /// from the snapshots: trapezoid over s = m h, m = 0..=`bandwidth`, and a
    /// left-endpoint sum in time. `tau` is only used to flag coarse
    /// snapshot spacing.
    pub fn jump_ux_general(
        &self,
        x: f64,
        store: &SnapshotStore,
        grid: &Grid,
        bandwidth: usize,
        tau: f64,
    ) -> Result<JumpSeries> {
        let zeta = self.zeta(x)?;
        let j = grid.locate(x)?;
        let h = grid.h();
        let k = self.kernel.decay_rate(self.horizon, x)?;
        let prefactor = self.horizon.derivative_jump(x) / zeta.powi(4);

        let bracket: Vec<f64> = (0..=bandwidth)
            .map(|m| {
                let end = if m == 0 || m == bandwidth { 0.5 } else { 1.0 };
                end * h * self.kernel.gamma_x_bracket_at(zeta, m as f64 * h)
            })
            .collect();
        let inner = |u: &[f64]| -> f64 {
            let here = u[j];
            bracket
                .iter()
                .enumerate()
                .map(|(m, w)| {
                    let there = if m <= j { u[j - m] } else { 0.0 };
                    w * (here - there)
                })
                .sum()
        };

        let snaps: Vec<_> = store.iter().collect();
        let spacing = snaps
            .windows(2)
            .map(|w| w[1].t - w[0].t)
            .fold(0.0, f64::max);
        if spacing > COARSE_SPACING_STEPS * tau * (1.0 + 1e-9) {
            log::warn!(
                "snapshot spacing {spacing} exceeds {COARSE_SPACING_STEPS} time steps; the time integral at x = {x} is coarse"
            );
        }
        let forcing: Vec<f64> = if prefactor == 0.0 {
            vec![0.0; snaps.len()]
        } else {
            snaps.iter().map(|s| inner(&s.u)).collect()
        };

        let mut series = JumpSeries::new(x, Quantity::JumpUx, Method::M2Analytic);
        for (n, snap) in snaps.iter().enumerate() {
            let t = snap.t;
            let integral: f64 = (0..n)
                .map(|i| {
                    let dt = snaps[i + 1].t - snaps[i].t;
                    dt * (-k * (t - snaps[i].t)).exp() * forcing[i]
                })
                .sum();
            series.push(t, self.homogeneous_ux(x, t)? + prefactor * integral)?;
        }
        Ok(series)
    }
}

/// [ψ₀](x − t) for the purely local equation u_t + u_x = 0.
pub fn local_characteristic(initial: &InitialData, x: f64, t: f64) -> f64 {
    initial.value_jump(x - t)
}

pub fn local_characteristic_series(
    initial: &InitialData,
    x: f64,
    times: impl IntoIterator<Item = f64>,
) -> Result<JumpSeries> {
    let mut series = JumpSeries::new(x, Quantity::JumpU, Method::LocalCharacteristic);
    for t in times {
        series.push(t, local_characteristic(initial, x, t))?;
    }
    Ok(series)
}

/// Steepest one-cell increment of a snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackPoint {
    pub t: f64,
    /// j such that |U_{j+1} − U_j| is largest (smallest j on ties).
    pub node: usize,
    pub increment: f64,
    /// U_j − U_{j−1}, zero at the left edge.
    pub left_increment: f64,
    /// U_{j+2} − U_{j+1}, zero at the right edge.
    pub right_increment: f64,
}

impl TrackPoint {
    /// |increment| over the larger neighbouring |increment|.
    pub fn dominance(&self) -> f64 {
        self.increment.abs() / self.left_increment.abs().max(self.right_increment.abs())
    }
}

pub fn track_discontinuity_location(
    store: &SnapshotStore,
    initial: &InitialData,
) -> Result<Vec<TrackPoint>> {
    if initial.value_jumps().is_empty() {
        return Err(Error::NoValueJumps);
    }
    store
        .iter()
        .map(|snap| {
            let u = &snap.u;
            let diffs: Vec<f64> = u.windows(2).map(|w| w[1] - w[0]).collect();
            let (node, _) = diffs.iter().enumerate().fold((0, -1.0), |best, (j, d)| {
                if d.abs() > best.1 {
                    (j, d.abs())
                } else {
                    best
                }
            });
            Ok(TrackPoint {
                t: snap.t,
                node,
                increment: diffs[node],
                left_increment: if node > 0 { diffs[node - 1] } else { 0.0 },
                right_increment: diffs.get(node + 1).copied().unwrap_or(0.0),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial::InitialDescriptor;

    fn triple(h: &str, i: &str) -> (ReferenceKernel, HorizonField, InitialData) {
        (
            ReferenceKernel::standard(),
            HorizonField::build(h.parse().unwrap()).unwrap(),
            InitialData::build(i.parse().unwrap()).unwrap(),
        )
    }

    fn sampled(grid: &Grid, initial: &InitialData) -> Vec<f64> {
        grid.nodes().map(|x| initial.nodal_value(x)).collect()
    }

    #[test]
    fn quotients_on_initial_data() {
        let grid = Grid::covering(-2.0, 2.0, 0.0125).unwrap();
        let (_, _, square) = triple("zero", "square(1)");
        let u = sampled(&grid, &square);
        assert_eq!(jump_u_quotient(&u, grid.locate(0.0).unwrap()).unwrap(), -2.0);
        assert_eq!(jump_u_quotient(&u, grid.locate(1.0).unwrap()).unwrap(), 1.0);
        let (_, _, hat) = triple("zero", "hat(1)");
        let u = sampled(&grid, &hat);
        let h = grid.h();
        let at = |x: f64| jump_ux_quotient(&u, grid.locate(x).unwrap(), h).unwrap();
        assert!((at(0.0) + 2.0).abs() < 1e-12);
        assert!((at(1.0) - 1.0).abs() < 1e-12);
        assert!((at(-1.0) - 1.0).abs() < 1e-12);
        assert!(at(0.5).abs() < 1e-12);
        assert!(matches!(jump_u_quotient(&u, 0), Err(Error::NotInterior { .. })));
        let c = vec![3.0; 5];
        assert_eq!(jump_u_quotient(&c, 2).unwrap(), 0.0);
        assert_eq!(jump_ux_quotient(&c, 2, h).unwrap(), 0.0);
    }

    #[test]
    fn quotient_of_quadratic_is_second_difference() {
        let h = 0.01;
        let u: Vec<f64> = (0..10).map(|i| (i as f64 * h).powi(2)).collect();
        assert!((jump_ux_quotient(&u, 4, h).unwrap() - 2.0 * h).abs() < 1e-12);
    }

    #[test]
    fn value_jump_law() {
        let (k, z, d) = triple("constant(0.1)", "square(1)");
        let laws = JumpLaws::new(&k, &z, &d);
        assert_eq!(laws.jump_u(0.0, 0.0).unwrap(), -2.0);
        // k = √(10π)/0.1
        let want = -2.0 * (-k.m0() / 0.1 * 0.1).exp();
        assert!((laws.jump_u(0.0, 0.1).unwrap() - want).abs() < 1e-14);
        let (k, z, d) = triple("erfc(0)", "square(1)");
        let laws = JumpLaws::new(&k, &z, &d);
        // [ψ₀](1) = 0 − (−1) = 1
        let zeta1 = 1.842_700_792_949_715;
        let want = (-k.m0() / zeta1).exp();
        assert!((laws.jump_u(1.0, 1.0).unwrap() - want).abs() < 1e-12);
        let (k, z, d) = triple("zero", "square(1)");
        assert!(JumpLaws::new(&k, &z, &d).jump_u(0.0, 1.0).is_err());
    }

    #[test]
    fn derivative_jump_law() {
        let (k, z, d) = triple("erfc(0)", "hat(1)");
        let laws = JumpLaws::new(&k, &z, &d);
        assert_eq!(laws.jump_ux_smooth(0.0, 0.0).unwrap(), -2.0);
        let want = -2.0 * (-k.m0()).exp();
        assert!((laws.jump_ux_smooth(0.0, 1.0).unwrap() - want).abs() < 1e-15);
        assert_eq!(laws.jump_ux_smooth(0.5, 3.0).unwrap(), 0.0);
        let (k, z, d) = triple("ramp(2)", "gaussian");
        let laws = JumpLaws::new(&k, &z, &d);
        assert!(matches!(
            laws.jump_ux_smooth(3.0, 1.0),
            Err(Error::HorizonBreakpoint { .. })
        ));
    }

    fn run(horizon: &str, initial: &str, t_end: f64) -> (Grid, crate::stencil::Stencil, SnapshotStore) {
        let (k, z, d) = triple(horizon, initial);
        let grid = Grid::covering(-3.0, 6.0, 0.0125).unwrap();
        let stencil = crate::stencil::Stencil::assemble(&grid, &k, &z).unwrap();
        let u0 = sampled(&grid, &d);
        let store = crate::solver::evolve(&stencil, u0, 0.00625, t_end, 0.05, |_| {}).unwrap();
        (grid, stencil, store)
    }

    #[test]
    fn general_law_without_breakpoint_is_homogeneous() {
        let (grid, stencil, store) = run("erfc(0)", "hat(1)", 0.5);
        let (k, z, d) = triple("erfc(0)", "hat(1)");
        let laws = JumpLaws::new(&k, &z, &d);
        for x in [0.0, 1.0] {
            let band = stencil.row(grid.locate(x).unwrap()).bandwidth();
            let general = laws.jump_ux_general(x, &store, &grid, band, 0.00625).unwrap();
            let smooth = laws.jump_ux_smooth_series(x, store.times()).unwrap();
            for (a, b) in general.values().zip(smooth.values()) {
                assert!((a - b).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn general_law_starts_at_zero_for_smooth_data() {
        let (grid, stencil, store) = run("ramp(2)", "gaussian", 0.3);
        let (k, z, d) = triple("ramp(2)", "gaussian");
        let laws = JumpLaws::new(&k, &z, &d);
        let band = stencil.row(grid.locate(3.0).unwrap()).bandwidth();
        let s = laws.jump_ux_general(3.0, &store, &grid, band, 0.00625).unwrap();
        assert_eq!(s.samples()[0].1, 0.0);
        assert!(s.values().skip(1).all(|v| v != 0.0));
        assert!(matches!(
            laws.jump_ux_general(0.0, &store, &grid, 1, 0.00625),
            Err(Error::LocalPoint { .. })
        ));
    }

    #[test]
    fn characteristic_carries_initial_jumps() {
        let d = InitialData::build(InitialDescriptor::Square { p: 1.0 }).unwrap();
        assert_eq!(local_characteristic(&d, 1.0, 0.0), 1.0);
        assert_eq!(local_characteristic(&d, 1.0, 0.5), 0.0);
        assert_eq!(local_characteristic(&d, 1.0, 1.0), -2.0);
        assert_eq!(local_characteristic(&d, 1.0, 2.0), 1.0);
    }

    #[test]
    fn tracker_requires_value_jumps() {
        let (_, _, store) = run("zero", "gaussian", 0.05);
        let d = InitialData::build(InitialDescriptor::Gaussian).unwrap();
        assert!(matches!(
            track_discontinuity_location(&store, &d),
            Err(Error::NoValueJumps)
        ));
    }

    #[test]
    fn tracker_breaks_ties_to_the_left() {
        let mut store = SnapshotStore::new();
        store.push(0.0, vec![0.0, 1.0, 2.0, 2.0]).unwrap();
        let d = InitialData::build(InitialDescriptor::Square { p: 1.0 }).unwrap();
        let track = track_discontinuity_location(&store, &d).unwrap();
        assert_eq!(track[0].node, 0);
        assert_eq!(track[0].right_increment, 1.0);
    }

    #[test]
    fn series_csv_layout() {
        let mut s = JumpSeries::new(0.0, Quantity::JumpU, Method::M1Quotient);
        s.push(0.0, -2.0).unwrap();
        s.push(0.05, -1.5).unwrap();
        assert!(s.push(0.05, 1.0).is_err());
        assert_eq!(s.file_name(), "jump_u_0_m1_quotient.csv");
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "# location=0 quantity=jump_u method=m1_quotient");
        assert_eq!(lines[1], "t,value");
        assert_eq!(lines.len(), 4);
    }
}
