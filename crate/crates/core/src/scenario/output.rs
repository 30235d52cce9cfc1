use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{Scenario, Simulation};
use crate::error::{Error, Result};
use crate::singularity::JumpSeries;

pub const SOLUTION_HEADER: &str = "t,x,u";

/// Files written by one run.
#[derive(Debug, Clone, Default)]
pub struct Outputs {
    pub solution: PathBuf,
    pub jumps: Vec<PathBuf>,
    pub meta: PathBuf,
    pub plot: PathBuf,
    pub stencil: Option<PathBuf>,
}

impl Outputs {
    pub fn all(&self) -> impl Iterator<Item = &Path> {
        [&self.solution, &self.meta, &self.plot]
            .into_iter()
            .chain(&self.jumps)
            .chain(&self.stencil)
            .map(PathBuf::as_path)
    }
}

/// Times and positions are printed at 12 significant decimals so that
/// n·τ and m·h read as the intended values.
fn tidy(v: f64) -> f64 {
    let r = (v * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn finish(path: &Path, w: impl FnOnce() -> std::io::Result<()>) -> Result<()> {
    w().map_err(|e| Error::io(path, e))
}

/// Writes solution.csv, one CSV per jump series, meta.txt and plot.gp
/// (plus stencil.csv on request) into `dir`.
pub fn write_outputs(
    scenario: &Scenario,
    sim: &Simulation,
    dir: &Path,
    dump_stencil: bool,
) -> Result<Outputs> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut out = Outputs {
        solution: dir.join("solution.csv"),
        meta: dir.join("meta.txt"),
        plot: dir.join("plot.gp"),
        ..Outputs::default()
    };

    let grid = scenario.grid();
    let (lo, hi) = scenario.window();
    let nodes = grid.window(lo, hi);
    let mut w = create(&out.solution)?;
    finish(&out.solution, || {
        writeln!(w, "{SOLUTION_HEADER}")?;
        for snap in &sim.snapshots {
            let t = tidy(snap.t);
            for j in nodes.clone() {
                writeln!(w, "{t},{},{:e}", tidy(grid.node(j)), snap.u[j])?;
            }
        }
        w.flush()
    })?;

    for series in &sim.jumps {
        let path = dir.join(series.file_name());
        let mut w = create(&path)?;
        finish(&path, || {
            write_series(series, &mut w)?;
            w.flush()
        })?;
        out.jumps.push(path);
    }

    let mut w = create(&out.meta)?;
    finish(&out.meta, || {
        w.write_all(meta_text(scenario, sim).as_bytes())?;
        w.flush()
    })?;

    let mut w = create(&out.plot)?;
    finish(&out.plot, || {
        w.write_all(plot_script(scenario, &sim.jumps).as_bytes())?;
        w.flush()
    })?;

    if dump_stencil {
        let path = dir.join("stencil.csv");
        let mut w = create(&path)?;
        finish(&path, || {
            scenario.stencil().write_csv(&mut w)?;
            w.flush()
        })?;
        out.stencil = Some(path);
    }
    Ok(out)
}

fn write_series<W: Write>(series: &JumpSeries, mut w: W) -> std::io::Result<()> {
    let mut tidy_series = JumpSeries::new(series.location, series.quantity, series.method);
    for &(t, v) in series.samples() {
        // times are already strictly increasing, rounding keeps that at this cadence
        let _ = tidy_series.push(tidy(t), v);
    }
    tidy_series.write_csv(&mut w)
}

/// The normalized configuration, followed by derived quantities as comments.
/// The file parses back as a scenario.
fn meta_text(scenario: &Scenario, sim: &Simulation) -> String {
    let grid = scenario.grid();
    let st = scenario.stability();
    let mut text = scenario.config().to_text();
    let mut note = |line: String| {
        text.push_str("# ");
        text.push_str(&line);
        text.push('\n');
    };
    note(format!("domain = {}, {}", tidy(grid.x_left()), tidy(grid.x_right())));
    note(format!("nodes = {}", grid.n_nodes()));
    note(format!("steps = {}", crate::solver::step_count(scenario.final_time(), scenario.tau())));
    note(format!("snapshots = {}", sim.snapshots.len()));
    note(format!("max_bandwidth = {}", scenario.stencil().max_bandwidth()));
    note(format!("max_diagonal = {:e}", st.max_diagonal));
    note(format!("stability_margin = {:e}", st.margin));
    note(format!("support_radius = {}", scenario.kernel().support_radius()));
    note(format!("m0 = {}", scenario.kernel().m0()));
    note(format!("m2 = {}", scenario.kernel().m2()));
    note(format!("u_min = {:e}", sim.extremes.min));
    note(format!("u_max = {:e}", sim.extremes.max));
    note(format!("boundary_max = {:e}", sim.extremes.boundary));
    for &x in scenario.singular_points() {
        match scenario.kernel().decay_rate(scenario.horizon(), x) {
            Ok(k) => note(format!("decay_rate({x}) = {k}")),
            Err(_) => note(format!("decay_rate({x}) = local")),
        }
    }
    text
}

fn plot_script(scenario: &Scenario, jumps: &[JumpSeries]) -> String {
    let (lo, hi) = scenario.window();
    let t_end = scenario.final_time();
    let mut s = String::new();
    s.push_str(&format!(
        "# gnuplot -persist plot.gp\n\
         set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel 'x'\n\
         set ylabel 't'\n\
         set xrange [{lo}:{hi}]\n\
         set yrange [0:{t_end}]\n\
         set palette rgbformulae 33,13,10\n\
         \n\
         set title 'u(x, t), top view'\n\
         set view map\n\
         splot 'solution.csv' using 2:1:3 with points pointtype 5 pointsize 0.4 palette notitle\n\
         pause -1 'next: surface'\n\
         \n\
         set title 'u(x, t)'\n\
         set view 60, 30\n\
         set zlabel 'u'\n\
         splot 'solution.csv' using 2:1:3 with points pointtype 7 pointsize 0.2 palette notitle\n"
    ));
    if !jumps.is_empty() {
        s.push_str("pause -1 'next: jumps'\n\nunset view\nset xlabel 't'\nset ylabel 'jump'\n");
        s.push_str(&format!("set xrange [0:{t_end}]\nset autoscale y\nset title 'jumps at singular points'\nplot \\\n"));
        let lines: Vec<String> = jumps
            .iter()
            .map(|j| {
                format!(
                    "  '{}' using 1:2 with lines title '{} x={} {}'",
                    j.file_name(),
                    j.quantity,
                    j.location,
                    j.method
                )
            })
            .collect();
        s.push_str(&lines.join(", \\\n"));
        s.push('\n');
    }
    s
}
