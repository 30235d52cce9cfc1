//! Named scenarios covering the experiment families: smooth data under erfc
//! horizons, square waves, hats, and ramp horizons with a local region.

use crate::error::{Error, Result};
use crate::horizon::HorizonDescriptor;
use crate::initial::InitialDescriptor;

use super::ScenarioConfig;

#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub config: ScenarioConfig,
}

fn preset(
    name: &'static str,
    description: &'static str,
    horizon: HorizonDescriptor,
    initial: InitialDescriptor,
    final_time: f64,
    window: (f64, f64),
) -> Preset {
    Preset {
        name,
        description,
        config: ScenarioConfig::new(horizon, initial, final_time).with_window(window.0, window.1),
    }
}

/// The full catalog in a stable order.
pub fn catalog() -> Vec<Preset> {
    use HorizonDescriptor::{Constant, Erfc, Ramp, Zero};
    use InitialDescriptor::{Gaussian, Hat, Square};
    let smooth = (-2.0, 4.0);
    let hats = (-2.0, 5.0);
    let wide = (-4.0, 6.0);
    vec![
        preset("smooth-smooth-alpha-1", "gaussian data, horizon erfc(-x/2^-1)", Erfc { alpha: -1.0 }, Gaussian, 2.0, smooth),
        preset("smooth-smooth-alpha0", "gaussian data, horizon erfc(-x)", Erfc { alpha: 0.0 }, Gaussian, 2.0, smooth),
        preset("smooth-smooth-alpha1", "gaussian data, horizon erfc(-x/2)", Erfc { alpha: 1.0 }, Gaussian, 2.0, smooth),
        preset("square-erfc-p1", "square wave p=1, horizon erfc(-x)", Erfc { alpha: 0.0 }, Square { p: 1.0 }, 2.0, smooth),
        preset("square-constant0.1-p1", "square wave p=1, constant horizon 0.1", Constant(0.1), Square { p: 1.0 }, 2.0, smooth),
        preset("square-local-p1", "square wave p=1, local equation (zero horizon)", Zero, Square { p: 1.0 }, 2.0, smooth),
        preset("hat-smooth-p0.5", "hat p=0.5, horizon erfc(-x)", Erfc { alpha: 0.0 }, Hat { p: 0.5 }, 2.0, hats),
        preset("hat-smooth-p1", "hat p=1, horizon erfc(-x)", Erfc { alpha: 0.0 }, Hat { p: 1.0 }, 2.0, hats),
        preset("ramp-k1-gaussian", "gaussian data, ramp horizon min(max(x,0),6)", Ramp { slope: 1.0 }, Gaussian, 10.0, wide),
        preset("ramp-k2-gaussian", "gaussian data, ramp horizon min(max(2x,0),6)", Ramp { slope: 2.0 }, Gaussian, 10.0, wide),
        preset("ramp-k3-gaussian", "gaussian data, ramp horizon min(max(3x,0),6)", Ramp { slope: 3.0 }, Gaussian, 10.0, wide),
        preset("ramp-k1-hat-p0.5", "hat p=0.5, ramp horizon with slope 1", Ramp { slope: 1.0 }, Hat { p: 0.5 }, 2.0, smooth),
        preset("ramp-k1-hat-p1", "hat p=1, ramp horizon with slope 1", Ramp { slope: 1.0 }, Hat { p: 1.0 }, 2.0, smooth),
        preset("ramp-k2-hat-p0.5", "hat p=0.5, ramp horizon with slope 2", Ramp { slope: 2.0 }, Hat { p: 0.5 }, 2.0, smooth),
        preset("ramp-k2-hat-p1", "hat p=1, ramp horizon with slope 2", Ramp { slope: 2.0 }, Hat { p: 1.0 }, 5.0, smooth),
        preset("ramp-k3-hat-p2", "hat p=2, ramp horizon with slope 3 (plateau starts at the hat edge)", Ramp { slope: 3.0 }, Hat { p: 2.0 }, 3.0, smooth),
    ]
}

pub fn names() -> Vec<&'static str> {
    catalog().into_iter().map(|p| p.name).collect()
}

pub fn find(name: &str) -> Result<Preset> {
    catalog()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownPreset(name.to_owned()))
}
