//! Scenario configuration, validation, the preset catalog and output files.

mod config;
mod output;
pub mod presets;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::horizon::{HorizonField, Reach};
use crate::initial::{InitialData, LOCATION_TOLERANCE};
use crate::kernel::ReferenceKernel;
use crate::singularity::{self, JumpLaws, JumpSeries, Quantity};
use crate::solver::{self, DomainRequest, SnapshotStore, StabilityReport, DEFAULT_CADENCE, DEFAULT_MARGIN};
use crate::stencil::Stencil;

pub use config::{KernelChoice, ScenarioConfig, DEFAULT_H, DEFAULT_WINDOW};
pub use output::{write_outputs, Outputs, SOLUTION_HEADER};

/// A validated scenario with its grid and assembled stencil.
#[derive(Debug, Clone)]
pub struct Scenario {
    config: ScenarioConfig,
    kernel: ReferenceKernel,
    horizon: HorizonField,
    initial: InitialData,
    grid: Grid,
    stencil: Stencil,
    stability: StabilityReport,
}

impl ScenarioConfig {
    /// Fills defaults, chooses the domain, assembles the stencil and checks
    /// alignment and stability. All problems are reported together.
    pub fn validate(&self) -> Result<Scenario> {
        let mut errors = Vec::new();
        let mut positive = |name: &str, v: Option<f64>| {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    errors.push(format!("{name} must be positive, got {v}"));
                }
            }
        };
        positive("h", self.h);
        positive("tau", self.tau);
        positive("T", Some(self.final_time));
        positive("snapshot_cadence", self.snapshot_cadence);
        let h = self.h.unwrap_or(DEFAULT_H);
        let tau = self.tau.unwrap_or(0.5 * h);
        let cadence = self.snapshot_cadence.unwrap_or(DEFAULT_CADENCE);
        let window = self.window.unwrap_or(DEFAULT_WINDOW);
        if !(window.0 < window.1) {
            errors.push(format!("window ({}, {}) is empty", window.0, window.1));
        }
        if errors.is_empty() {
            let steps = self.final_time / tau;
            if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
                errors.push(format!("T = {} is not a whole number of steps of {tau}", self.final_time));
            }
        }

        let horizon = HorizonField::build(self.horizon).map_err(|e| errors.push(e.to_string()));
        let initial = InitialData::build(self.initial).map_err(|e| errors.push(e.to_string()));
        let (Ok(horizon), Ok(initial)) = (horizon, initial) else {
            return Err(Error::Config(errors));
        };
        if !errors.is_empty() {
            return Err(Error::Config(errors));
        }

        let kernel = match self.kernel {
            KernelChoice::ReferenceGaussian => ReferenceKernel::standard(),
        };
        let request = DomainRequest {
            support: initial.support(),
            final_time: self.final_time,
            max_horizon: horizon.sup(),
            margin: DEFAULT_MARGIN,
        };
        let (x_left, x_right) = solver::choose_domain(&request, &kernel, h);
        let grid = Grid::covering(x_left, x_right, h).map_err(|e| Error::Config(vec![e.to_string()]))?;

        let requested = self
            .singular_points
            .clone()
            .unwrap_or_else(|| default_singular_points(&initial, &horizon));
        let mut points = Vec::with_capacity(requested.len());
        for x in requested {
            match grid.locate(x) {
                Ok(j) if j > 0 && j + 1 < grid.n_nodes() => points.push(grid.node(j)),
                Ok(_) => errors.push(format!("singular point x = {x} is on the edge of the domain")),
                Err(Error::Misaligned { .. }) => errors.push(format!(
                    "singular point x = {x} is not on the grid with h = {h} (x/h = {})",
                    x / h
                )),
                Err(e) => errors.push(format!("singular point x = {x}: {e}")),
            }
        }
        points.sort_by(f64::total_cmp);
        points.dedup();

        let stencil = Stencil::assemble(&grid, &kernel, &horizon)?;
        let stability = match solver::stability_check(&stencil, tau) {
            Ok(r) => Some(r),
            Err(e) => {
                errors.push(format!(
                    "{e}; the largest stable step is {}",
                    1.0 / stencil.max_diagonal()
                ));
                None
            }
        };
        if !errors.is_empty() {
            return Err(Error::Config(errors));
        }

        let config = ScenarioConfig {
            h: Some(h),
            tau: Some(tau),
            snapshot_cadence: Some(cadence),
            singular_points: Some(points),
            window: Some(window),
            ..self.clone()
        };
        Ok(Scenario {
            config,
            kernel,
            horizon,
            initial,
            grid,
            stencil,
            stability: stability.expect("no errors means the check passed"),
        })
    }
}

/// Every jump point of ψ₀ and every breakpoint of ζ, sorted.
pub fn default_singular_points(initial: &InitialData, horizon: &HorizonField) -> Vec<f64> {
    let mut points: Vec<f64> = initial
        .value_jumps()
        .iter()
        .chain(initial.derivative_jumps())
        .map(|j| j.x)
        .chain(horizon.breakpoints().iter().copied())
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup_by(|b, a| (*b - *a).abs() <= LOCATION_TOLERANCE);
    points
}

/// Range of the solution over every step of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremes {
    pub min: f64,
    pub max: f64,
    /// Largest |U| seen at the two outermost nodes.
    pub boundary: f64,
}

#[derive(Debug, Clone)]
pub struct Simulation {
    pub snapshots: SnapshotStore,
    pub jumps: Vec<JumpSeries>,
    pub extremes: Extremes,
}

impl Scenario {
    /// The normalized configuration.
    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn kernel(&self) -> &ReferenceKernel {
        &self.kernel
    }

    pub fn horizon(&self) -> &HorizonField {
        &self.horizon
    }

    pub fn initial(&self) -> &InitialData {
        &self.initial
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn stencil(&self) -> &Stencil {
        &self.stencil
    }

    pub fn stability(&self) -> &StabilityReport {
        &self.stability
    }

    pub fn h(&self) -> f64 {
        self.grid.h()
    }

    pub fn tau(&self) -> f64 {
        self.config.tau.expect("normalized")
    }

    pub fn final_time(&self) -> f64 {
        self.config.final_time
    }

    pub fn cadence(&self) -> f64 {
        self.config.snapshot_cadence.expect("normalized")
    }

    pub fn singular_points(&self) -> &[f64] {
        self.config.singular_points.as_deref().expect("normalized")
    }

    pub fn window(&self) -> (f64, f64) {
        self.config.window.expect("normalized")
    }

    /// ψ₀ at the nodes.
    pub fn initial_vector(&self) -> Vec<f64> {
        self.grid.nodes().map(|x| self.initial.nodal_value(x)).collect()
    }

    pub fn evolve<F>(&self, observe: F) -> Result<SnapshotStore>
    where
        F: FnMut(&solver::SolverState),
    {
        solver::evolve(
            &self.stencil,
            self.initial_vector(),
            self.tau(),
            self.final_time(),
            self.cadence(),
            observe,
        )
    }

    /// Runs the solver and evaluates every jump series.
    pub fn simulate(&self) -> Result<Simulation> {
        let last = self.grid.n_nodes() - 1;
        let mut extremes = Extremes {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            boundary: 0.0,
        };
        let snapshots = self.evolve(|state| {
            for &v in &state.u {
                extremes.min = extremes.min.min(v);
                extremes.max = extremes.max.max(v);
            }
            extremes.boundary = extremes.boundary.max(state.u[0].abs()).max(state.u[last].abs());
        })?;
        let jumps = self.jump_series(&snapshots)?;
        Ok(Simulation {
            snapshots,
            jumps,
            extremes,
        })
    }

    /// Simulates and writes every output file into `dir`.
    pub fn run(&self, dir: &std::path::Path, dump_stencil: bool) -> Result<(Simulation, Outputs)> {
        let sim = self.simulate()?;
        let outputs = write_outputs(self, &sim, dir, dump_stencil)?;
        Ok((sim, outputs))
    }

    /// At a value jump of ψ₀: [u] by quotient, by the decay law where ζ > 0,
    /// and along characteristics when the whole problem is local.
    /// Elsewhere: [u_x] by quotient and, where ζ > 0, by the law that fits
    /// (the general one at breakpoints of ζ).
    pub fn jump_series(&self, snapshots: &SnapshotStore) -> Result<Vec<JumpSeries>> {
        let laws = JumpLaws::new(&self.kernel, &self.horizon, &self.initial);
        let mut out = Vec::new();
        for &x in self.singular_points() {
            let nonlocal = matches!(self.horizon.reach(x), Reach::Nonlocal { .. });
            if self.initial.value_jump_at(x).is_some() {
                out.push(singularity::quotient_series(snapshots, &self.grid, x, Quantity::JumpU)?);
                if nonlocal {
                    out.push(laws.jump_u_series(x, snapshots.times())?);
                }
                if self.horizon.is_local() {
                    out.push(singularity::local_characteristic_series(
                        &self.initial,
                        x,
                        snapshots.times(),
                    )?);
                }
            } else {
                out.push(singularity::quotient_series(snapshots, &self.grid, x, Quantity::JumpUx)?);
                if nonlocal {
                    let series = if self.horizon.is_breakpoint(x) {
                        let band = self.stencil.row(self.grid.locate(x)?).bandwidth();
                        laws.jump_ux_general(x, snapshots, &self.grid, band, self.tau())?
                    } else {
                        laws.jump_ux_smooth_series(x, snapshots.times())?
                    };
                    out.push(series);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::horizon::HorizonDescriptor;
    use crate::initial::InitialDescriptor;

    fn square_erfc() -> ScenarioConfig {
        ScenarioConfig::new(
            HorizonDescriptor::Erfc { alpha: 0.0 },
            InitialDescriptor::Square { p: 1.0 },
            0.5,
        )
    }

    #[test]
    fn defaults_are_filled() {
        let s = square_erfc().validate().unwrap();
        let c = s.config();
        assert_eq!(c.h, Some(0.0125));
        assert_eq!(c.tau, Some(0.00625));
        assert_eq!(c.snapshot_cadence, Some(0.05));
        assert_eq!(c.singular_points, Some(vec![-1.0, 0.0, 1.0]));
        assert_eq!(c.window, Some(DEFAULT_WINDOW));
    }

    #[test]
    fn normalized_config_round_trips() {
        let s = square_erfc().validate().unwrap();
        let text = s.config().to_text();
        let again = ScenarioConfig::parse(&text).unwrap().validate().unwrap();
        assert_eq!(again.config(), s.config());
    }

    #[test]
    fn misaligned_point_is_reported() {
        let mut c = square_erfc();
        c.h = Some(0.3);
        c.tau = Some(0.1);
        let Err(Error::Config(errors)) = c.validate() else {
            panic!("expected a configuration error");
        };
        assert!(errors.iter().any(|e| e.contains("x = 1 is not on the grid")), "{errors:?}");
    }

    #[test]
    fn unstable_step_is_reported() {
        let mut c = ScenarioConfig::new(HorizonDescriptor::Zero, InitialDescriptor::Square { p: 1.0 }, 1.0);
        c.tau = Some(1.0);
        let Err(Error::Config(errors)) = c.validate() else {
            panic!("expected a configuration error");
        };
        assert!(errors.iter().any(|e| e.contains("unstable")), "{errors:?}");
    }

    #[test]
    fn several_problems_at_once() {
        let mut c = square_erfc();
        c.h = Some(-1.0);
        c.window = Some((3.0, 1.0));
        c.initial = InitialDescriptor::Hat { p: 0.0 };
        let Err(Error::Config(errors)) = c.validate() else {
            panic!("expected a configuration error");
        };
        assert_eq!(errors.len(), 3, "{errors:?}");
    }

    #[test]
    fn series_plan_follows_point_type() {
        let c = ScenarioConfig::new(HorizonDescriptor::Ramp { slope: 2.0 }, InitialDescriptor::Gaussian, 0.2);
        let s = c.validate().unwrap();
        assert_eq!(s.singular_points(), &[0.0, 3.0]);
        let sim = s.simulate().unwrap();
        let names: Vec<String> = sim.jumps.iter().map(JumpSeries::file_name).collect();
        assert_eq!(
            names,
            ["jump_ux_0_m1_quotient.csv", "jump_ux_3_m1_quotient.csv", "jump_ux_3_m2_analytic.csv"]
        );

        let local = ScenarioConfig::new(HorizonDescriptor::Zero, InitialDescriptor::Square { p: 1.0 }, 0.1);
        let sim = local.validate().unwrap().simulate().unwrap();
        let methods: Vec<_> = sim.jumps.iter().map(|j| j.method.as_str()).collect();
        assert_eq!(methods.len(), 6);
        assert!(!methods.contains(&"m2_analytic"));
        assert!(methods.contains(&"local_characteristic"));
    }
}
