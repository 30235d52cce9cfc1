//! Forward Euler on the assembled stencil, with snapshots.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::ReferenceKernel;
use crate::stencil::Stencil;

/// Default snapshot spacing in time units.
pub const DEFAULT_CADENCE: f64 = 0.05;

/// Default distance kept between the support and either boundary.
pub const DEFAULT_MARGIN: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub u: Vec<f64>,
    pub t: f64,
    pub step_index: usize,
}

impl SolverState {
    pub fn new(u: Vec<f64>) -> Self {
        Self {
            u,
            t: 0.0,
            step_index: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub u: Vec<f64>,
}

/// Snapshots in strictly increasing time.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SnapshotStore {
    snapshots: Vec<Snapshot>,
}

impl SnapshotStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, t: f64, u: Vec<f64>) -> Result<()> {
        if let Some(last) = self.snapshots.last() {
            if !(t > last.t) {
                return Err(Error::SnapshotOrder {
                    previous: last.t,
                    next: t,
                });
            }
            if u.len() != last.u.len() {
                return Err(Error::SnapshotLength {
                    got: u.len(),
                    expected: last.u.len(),
                });
            }
        }
        self.snapshots.push(Snapshot { t, u });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Snapshot> {
        self.snapshots.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Snapshot> {
        self.snapshots.get(i)
    }

    pub fn first(&self) -> Option<&Snapshot> {
        self.snapshots.first()
    }

    pub fn last(&self) -> Option<&Snapshot> {
        self.snapshots.last()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.snapshots.iter().map(|s| s.t)
    }

    /// The snapshot whose time is closest to t.
    pub fn nearest(&self, t: f64) -> Option<&Snapshot> {
        self.snapshots
            .iter()
            .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
    }
}

impl<'a> IntoIterator for &'a SnapshotStore {
    type Item = &'a Snapshot;
    type IntoIter = std::slice::Iter<'a, Snapshot>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub tau: f64,
    pub max_diagonal: f64,
    /// τ · max_j a_jj
    pub product: f64,
    /// 1 − product
    pub margin: f64,
}

impl StabilityReport {
    pub fn passes(&self) -> bool {
        self.product <= 1.0
    }
}

/// Forward Euler is monotone iff τ · max_j a_jj ≤ 1.
pub fn stability_check(stencil: &Stencil, tau: f64) -> Result<StabilityReport> {
    let max_diagonal = stencil.max_diagonal();
    let product = tau * max_diagonal;
    let report = StabilityReport {
        tau,
        max_diagonal,
        product,
        margin: 1.0 - product,
    };
    if report.passes() && tau > 0.0 {
        Ok(report)
    } else {
        Err(Error::Unstable { tau, product })
    }
}

/// U ← U − τ 𝒟_h U with zero left extension.
pub fn step(state: &mut SolverState, stencil: &Stencil, tau: f64, scratch: &mut Vec<f64>) -> Result<()> {
    let u = &state.u;
    assert_eq!(u.len(), stencil.rows().len(), "state does not match the grid");
    scratch.resize(u.len(), 0.0);
    let (lo, hi) = match active_range(u) {
        Some(r) => r,
        None => {
            state.step_index += 1;
            state.t = state.step_index as f64 * tau;
            return Ok(());
        }
    };
    scratch
        .par_iter_mut()
        .zip(stencil.rows())
        .enumerate()
        .for_each(|(j, (out, row))| {
            // Rows that see only zeros keep their value.
            *out = if j < lo || j.saturating_sub(row.bandwidth()) > hi {
                u[j]
            } else {
                u[j] - tau * row.apply(u, 0.0)
            };
        });
    std::mem::swap(&mut state.u, scratch);
    state.step_index += 1;
    state.t = state.step_index as f64 * tau;
    if let Some(node) = state.u.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            step: state.step_index,
            node,
        });
    }
    Ok(())
}

fn active_range(u: &[f64]) -> Option<(usize, usize)> {
    let lo = u.iter().position(|&v| v != 0.0)?;
    let hi = u.iter().rposition(|&v| v != 0.0)?;
    Some((lo, hi))
}

/// Number of steps of size τ that reach T (T is rounded to the nearest step).
pub fn step_count(final_time: f64, tau: f64) -> usize {
    (final_time / tau).round() as usize
}

/// Steps between snapshots for a cadence in time units; at least one.
pub fn cadence_steps(cadence: f64, tau: f64) -> usize {
    ((cadence / tau).round() as usize).max(1)
}

/// Runs from `initial` to T, storing t = 0, every `cadence_steps`-th step
/// and the final step. `observe` sees every state, including t = 0.
pub fn evolve<F>(
    stencil: &Stencil,
    initial: Vec<f64>,
    tau: f64,
    final_time: f64,
    cadence: f64,
    mut observe: F,
) -> Result<SnapshotStore>
where
    F: FnMut(&SolverState),
{
    stability_check(stencil, tau)?;
    let n_steps = step_count(final_time, tau);
    let every = cadence_steps(cadence, tau);
    if n_steps % every != 0 {
        log::debug!("cadence of {every} steps does not divide {n_steps}; final step stored anyway");
    }
    let mut state = SolverState::new(initial);
    let mut store = SnapshotStore::new();
    let mut scratch = Vec::with_capacity(state.u.len());
    observe(&state);
    store.push(0.0, state.u.clone())?;
    for n in 1..=n_steps {
        step(&mut state, stencil, tau, &mut scratch)?;
        observe(&state);
        if n % every == 0 || n == n_steps {
            store.push(state.t, state.u.clone())?;
        }
    }
    Ok(store)
}

/// Inputs of the truncated computational domain.
#[derive(Debug, Clone, Copy)]
pub struct DomainRequest {
    pub support: (f64, f64),
    pub final_time: f64,
    pub max_horizon: f64,
    pub margin: f64,
}

/// [x_L, x_R] with
/// `x_L = inf supp − ζ_max S_max − margin` and
/// `x_R = sup supp + T + ζ_max S_max + margin + spread`,
/// where `spread = 6 √(T (ζ_max m2 + h))` covers the smearing of the
/// solution by the nonlocal operator (zero for local runs).
pub fn choose_domain(request: &DomainRequest, kernel: &ReferenceKernel, h: f64) -> (f64, f64) {
    let DomainRequest {
        support: (lo, hi),
        final_time,
        max_horizon,
        margin,
    } = *request;
    let reach = max_horizon * kernel.support_radius();
    let spread = if max_horizon > 0.0 {
        6.0 * (final_time * (max_horizon * kernel.m2() + h)).sqrt()
    } else {
        0.0
    };
    (lo - reach - margin, hi + final_time + reach + margin + spread)
}
