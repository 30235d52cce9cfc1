//! Flat `key = value` scenario files.
//!
//! ```text
//! # square wave under an erfc horizon
//! kernel = gaussian_paper
//! horizon = erfc(0)
//! initial = square(1)
//! T = 2
//! window = -2, 4
//! ```

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::horizon::HorizonDescriptor;
use crate::initial::InitialDescriptor;

pub const DEFAULT_H: f64 = 0.0125;
pub const DEFAULT_WINDOW: (f64, f64) = (-2.0, 4.0);

const KEYS: [&str; 10] = [
    "kernel",
    "horizon",
    "initial",
    "h",
    "tau",
    "T",
    "snapshot_cadence",
    "singular_points",
    "out_dir",
    "window",
];

/// The only reference kernel offered: H(s) = 20 e^{-10 s²}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelChoice {
    #[default]
    ReferenceGaussian,
}

impl fmt::Display for KernelChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("gaussian_paper")
    }
}

impl FromStr for KernelChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gaussian_paper" => Ok(KernelChoice::ReferenceGaussian),
            other => Err(Error::InvalidDescriptor(other.to_owned())),
        }
    }
}

/// A scenario as written. Optional fields are filled by validation.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub kernel: KernelChoice,
    pub horizon: HorizonDescriptor,
    pub initial: InitialDescriptor,
    pub h: Option<f64>,
    pub tau: Option<f64>,
    pub final_time: f64,
    pub snapshot_cadence: Option<f64>,
    pub singular_points: Option<Vec<f64>>,
    pub out_dir: Option<PathBuf>,
    pub window: Option<(f64, f64)>,
}

impl ScenarioConfig {
    pub fn new(horizon: HorizonDescriptor, initial: InitialDescriptor, final_time: f64) -> Self {
        Self {
            kernel: KernelChoice::ReferenceGaussian,
            horizon,
            initial,
            h: None,
            tau: None,
            final_time,
            snapshot_cadence: None,
            singular_points: None,
            out_dir: None,
            window: None,
        }
    }

    pub fn with_window(mut self, lo: f64, hi: f64) -> Self {
        self.window = Some((lo, hi));
        self
    }

    /// Reads the text format; every problem found is reported at once.
    pub fn parse(text: &str) -> Result<Self> {
        let mut errors = Vec::new();
        let mut seen: Vec<&str> = Vec::new();
        let mut kernel = None;
        let mut horizon = None;
        let mut initial = None;
        let mut final_time = None;
        let mut config = ScenarioConfig::new(HorizonDescriptor::Zero, InitialDescriptor::Gaussian, 0.0);

        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let line_no = n + 1;
            let Some((key, value)) = line.split_once('=') else {
                errors.push(format!("line {line_no}: expected `key = value`, got `{line}`"));
                continue;
            };
            let (key, value) = (key.trim(), value.trim());
            let Some(&key) = KEYS.iter().find(|k| **k == key) else {
                errors.push(format!("line {line_no}: unknown key `{key}`"));
                continue;
            };
            if seen.contains(&key) {
                errors.push(format!("line {line_no}: duplicate key `{key}`"));
                continue;
            }
            seen.push(key);
            let mut note = |r: Result<()>| {
                if let Err(e) = r {
                    errors.push(format!("line {line_no}: {key}: {e}"));
                }
            };
            match key {
                "kernel" => note(value.parse().map(|v| kernel = Some(v))),
                "horizon" => note(value.parse().map(|v| horizon = Some(v))),
                "initial" => note(value.parse().map(|v| initial = Some(v))),
                "h" => note(number(value).map(|v| config.h = Some(v))),
                "tau" => note(number(value).map(|v| config.tau = Some(v))),
                "T" => note(number(value).map(|v| final_time = Some(v))),
                "snapshot_cadence" => note(number(value).map(|v| config.snapshot_cadence = Some(v))),
                "singular_points" => note(number_list(value).map(|v| config.singular_points = Some(v))),
                "out_dir" => config.out_dir = Some(PathBuf::from(value)),
                "window" => note(number_list(value).and_then(|v| match v[..] {
                    [lo, hi] => {
                        config.window = Some((lo, hi));
                        Ok(())
                    }
                    _ => Err(Error::InvalidDescriptor(format!("`{value}` is not two numbers"))),
                })),
                _ => unreachable!("key list and match arms agree"),
            }
        }
        for (key, missing) in [
            ("horizon", horizon.is_none()),
            ("initial", initial.is_none()),
            ("T", final_time.is_none()),
        ] {
            if missing && !errors.iter().any(|e| e.contains(&format!(" {key}:"))) {
                errors.push(format!("missing required key `{key}`"));
            }
        }
        if !errors.is_empty() {
            return Err(Error::Config(errors));
        }
        config.kernel = kernel.unwrap_or_default();
        config.horizon = horizon.expect("checked above");
        config.initial = initial.expect("checked above");
        config.final_time = final_time.expect("checked above");
        Ok(config)
    }

    /// Writes the text format; unset optional keys are omitted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        put("kernel", self.kernel.to_string());
        put("horizon", self.horizon.to_string());
        put("initial", self.initial.to_string());
        if let Some(h) = self.h {
            put("h", h.to_string());
        }
        if let Some(tau) = self.tau {
            put("tau", tau.to_string());
        }
        put("T", self.final_time.to_string());
        if let Some(c) = self.snapshot_cadence {
            put("snapshot_cadence", c.to_string());
        }
        if let Some(points) = &self.singular_points {
            let list: Vec<String> = points.iter().map(f64::to_string).collect();
            put(
                "singular_points",
                if list.is_empty() { "none".into() } else { list.join(", ") },
            );
        }
        if let Some(dir) = &self.out_dir {
            put("out_dir", dir.display().to_string());
        }
        if let Some((lo, hi)) = self.window {
            put("window", format!("{lo}, {hi}"));
        }
        out
    }
}

fn number(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::InvalidDescriptor(format!("`{s}` is not a finite number")))
}

fn number_list(s: &str) -> Result<Vec<f64>> {
    if s == "none" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| number(p.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a comment
kernel = gaussian_paper
horizon = erfc(0)
initial = square(1)   # trailing comment
h = 0.0125
T = 2
singular_points = -1, 0, 1
window = -2, 4
";

    #[test]
    fn parses_sample() {
        let c = ScenarioConfig::parse(SAMPLE).unwrap();
        assert_eq!(c.horizon, HorizonDescriptor::Erfc { alpha: 0.0 });
        assert_eq!(c.initial, InitialDescriptor::Square { p: 1.0 });
        assert_eq!(c.h, Some(0.0125));
        assert_eq!(c.tau, None);
        assert_eq!(c.final_time, 2.0);
        assert_eq!(c.singular_points, Some(vec![-1.0, 0.0, 1.0]));
        assert_eq!(c.window, Some((-2.0, 4.0)));
    }

    #[test]
    fn text_round_trip() {
        let c = ScenarioConfig::parse(SAMPLE).unwrap();
        assert_eq!(ScenarioConfig::parse(&c.to_text()).unwrap(), c);
        let mut empty = c.clone();
        empty.singular_points = Some(Vec::new());
        empty.out_dir = Some("runs/x".into());
        assert_eq!(ScenarioConfig::parse(&empty.to_text()).unwrap(), empty);
    }

    #[test]
    fn reports_every_problem() {
        let text = "horizon = wobble(2)\nh = abc\nfoo = 1\nh = 2\nnonsense\n";
        let Err(Error::Config(errors)) = ScenarioConfig::parse(text) else {
            panic!("expected errors");
        };
        let joined = errors.join("\n");
        assert!(joined.contains("wobble"), "{joined}");
        assert!(joined.contains("`abc`"));
        assert!(joined.contains("unknown key `foo`"));
        assert!(joined.contains("duplicate key `h`"));
        assert!(joined.contains("line 5"));
        assert!(joined.contains("missing required key `initial`"));
        assert!(joined.contains("missing required key `T`"));
        assert!(!joined.contains("missing required key `horizon`"));
    }
}
