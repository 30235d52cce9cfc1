//! The spatially varying horizon ζ(x).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Plateau value of the ramp family `max(min(kx, 6), 0)`.
pub const RAMP_CAP: f64 = 6.0;

/// erfc(z) = (2/√π) ∫_z^∞ e^{-t²} dt.
pub fn erfc(z: f64) -> f64 {
    libm::erfc(z)
}

/// Whether ζ vanishes at a point. Consumers branch on this instead of
/// carrying k = +∞ around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reach {
    Local,
    Nonlocal { zeta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HorizonDescriptor {
    /// ζ(x) = erfc(-x / 2^α)
    Erfc { alpha: f64 },
    /// ζ(x) = max(min(slope·x, 6), 0)
    Ramp { slope: f64 },
    Constant(f64),
    Zero,
}

impl fmt::Display for HorizonDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HorizonDescriptor::Erfc { alpha } => write!(f, "erfc({alpha})"),
            HorizonDescriptor::Ramp { slope } => write!(f, "ramp({slope})"),
            HorizonDescriptor::Constant(c) => write!(f, "constant({c})"),
            HorizonDescriptor::Zero => f.write_str("zero"),
        }
    }
}

impl FromStr for HorizonDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "zero" {
            return Ok(HorizonDescriptor::Zero);
        }
        let (name, arg) = call_syntax(s)?;
        match name {
            "erfc" => Ok(HorizonDescriptor::Erfc { alpha: arg }),
            "ramp" => Ok(HorizonDescriptor::Ramp { slope: arg }),
            "constant" => Ok(HorizonDescriptor::Constant(arg)),
            _ => Err(Error::InvalidDescriptor(s.to_owned())),
        }
    }
}

/// Splits `name(number)`.
pub(crate) fn call_syntax(s: &str) -> Result<(&str, f64)> {
    let bad = || Error::InvalidDescriptor(s.to_owned());
    let open = s.find('(').ok_or_else(bad)?;
    let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let value: f64 = inner.trim().parse().map_err(|_| bad())?;
    if !value.is_finite() {
        return Err(bad());
    }
    Ok((s[..open].trim(), value))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HorizonField {
    descriptor: HorizonDescriptor,
    breakpoints: Vec<f64>,
}

impl HorizonField {
    pub fn build(descriptor: HorizonDescriptor) -> Result<Self> {
        let invalid = |why: &str| Err(Error::InvalidDescriptor(format!("{descriptor}: {why}")));
        let breakpoints = match descriptor {
            HorizonDescriptor::Erfc { .. } => Vec::new(),
            HorizonDescriptor::Ramp { slope } => {
                if !(slope > 0.0 && slope.is_finite()) {
                    return invalid("ramp slope must be positive");
                }
                vec![0.0, RAMP_CAP / slope]
            }
            HorizonDescriptor::Constant(c) => {
                if !(c >= 0.0 && c.is_finite()) {
                    return invalid("constant horizon must be non-negative");
                }
                Vec::new()
            }
            HorizonDescriptor::Zero => Vec::new(),
        };
        Ok(Self {
            descriptor,
            breakpoints,
        })
    }

    pub fn descriptor(&self) -> HorizonDescriptor {
        self.descriptor
    }

    pub fn value(&self, x: f64) -> f64 {
        match self.descriptor {
            HorizonDescriptor::Erfc { alpha } => erfc(-x / alpha.exp2()),
            HorizonDescriptor::Ramp { slope } => (slope * x).clamp(0.0, RAMP_CAP),
            HorizonDescriptor::Constant(c) => c,
            HorizonDescriptor::Zero => 0.0,
        }
    }

    pub fn reach(&self, x: f64) -> Reach {
        let zeta = self.value(x);
        if zeta > 0.0 {
            Reach::Nonlocal { zeta }
        } else {
            Reach::Local
        }
    }

    /// True when ζ vanishes on the whole line.
    pub fn is_local(&self) -> bool {
        matches!(
            self.descriptor,
            HorizonDescriptor::Zero | HorizonDescriptor::Constant(0.0)
        )
    }

    /// Sorted points where ζ' jumps.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn is_breakpoint(&self, x: f64) -> bool {
        self.breakpoint_at(x).is_some()
    }

    fn breakpoint_at(&self, x: f64) -> Option<f64> {
        self.breakpoints
            .iter()
            .copied()
            .find(|b| (x - b).abs() <= 1e-12 * b.abs().max(1.0))
    }

    /// ζ'(x⁻)
    pub fn derivative_left(&self, x: f64) -> f64 {
        self.one_sided_derivative(x, Side::Left)
    }

    /// ζ'(x⁺)
    pub fn derivative_right(&self, x: f64) -> f64 {
        self.one_sided_derivative(x, Side::Right)
    }

    /// [ζ'](x) = ζ'(x⁺) − ζ'(x⁻); exactly zero away from breakpoints.
    pub fn derivative_jump(&self, x: f64) -> f64 {
        match self.breakpoint_at(x) {
            Some(b) => self.derivative_right(b) - self.derivative_left(b),
            None => 0.0,
        }
    }

    fn one_sided_derivative(&self, x: f64, side: Side) -> f64 {
        match self.descriptor {
            HorizonDescriptor::Erfc { alpha } => {
                let width = alpha.exp2();
                let z = x / width;
                2.0 / PI.sqrt() * (-z * z).exp() / width
            }
            HorizonDescriptor::Ramp { slope } => {
                let top = RAMP_CAP / slope;
                // Snap onto a breakpoint so the one-sided limits are exact there.
                let x = self.breakpoint_at(x).unwrap_or(x);
                let inside = match side {
                    Side::Left => x > 0.0 && x <= top,
                    Side::Right => x >= 0.0 && x < top,
                };
                if inside {
                    slope
                } else {
                    0.0
                }
            }
            HorizonDescriptor::Constant(_) | HorizonDescriptor::Zero => 0.0,
        }
    }

    /// δ = sup ζ.
    pub fn sup(&self) -> f64 {
        match self.descriptor {
            HorizonDescriptor::Erfc { .. } => 2.0,
            HorizonDescriptor::Ramp { .. } => RAMP_CAP,
            HorizonDescriptor::Constant(c) => c,
            HorizonDescriptor::Zero => 0.0,
        }
    }

    /// inf ζ over [a, b]. Every family here is non-decreasing in x.
    pub fn inf_on(&self, a: f64, b: f64) -> f64 {
        self.value(a.min(b))
    }
}

#[derive(Debug, Clone, Copy)]
enum Side {
    Left,
    Right,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(s: &str) -> HorizonField {
        HorizonField::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn erfc_family_values() {
        let z = field("erfc(0)");
        assert_eq!(z.value(0.0), 1.0);
        assert!((z.value(1.0) - 1.842_700_792_949_715).abs() < 1e-12);
        assert!((z.value(-1.0) - 0.157_299_207_050_285_1).abs() < 1e-12);
        assert!(z.breakpoints().is_empty());
        assert_eq!(z.derivative_jump(0.0), 0.0);
        // erfc(-x/2) is wider than erfc(-x)
        let wide = field("erfc(1)");
        assert!((wide.value(2.0) - z.value(1.0)).abs() < 1e-15);
    }

    #[test]
    fn erfc_derivative_matches_central_difference() {
        let z = field("erfc(-1)");
        for x in [-1.3, -0.2, 0.0, 0.7] {
            let e = 1e-6;
            let fd = (z.value(x + e) - z.value(x - e)) / (2.0 * e);
            assert!((z.derivative_left(x) - fd).abs() < 1e-8);
            assert_eq!(z.derivative_left(x), z.derivative_right(x));
        }
    }

    #[test]
    fn ramp_breakpoints_and_jumps() {
        let z = field("ramp(2)");
        assert_eq!(z.value(3.0), 6.0);
        assert_eq!(z.value(-1.0), 0.0);
        assert_eq!(z.value(10.0), 6.0);
        assert_eq!(z.breakpoints(), &[0.0, 3.0]);
        assert_eq!(z.derivative_jump(3.0), -2.0);
        assert_eq!(z.derivative_jump(0.0), 2.0);
        assert_eq!(z.derivative_jump(1.5), 0.0);
        assert_eq!(z.derivative_left(3.0), 2.0);
        assert_eq!(z.derivative_right(3.0), 0.0);
        assert_eq!(z.reach(0.0), Reach::Local);
        assert_eq!(z.reach(1.0), Reach::Nonlocal { zeta: 2.0 });
    }

    #[test]
    fn ramp_is_continuous_at_breakpoints() {
        for k in [1.0, 2.0, 3.0, 0.7] {
            let z = HorizonField::build(HorizonDescriptor::Ramp { slope: k }).unwrap();
            for &b in z.breakpoints() {
                let e = 1e-13;
                assert!((z.value(b - e) - z.value(b + e)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn constant_and_zero() {
        let c = field("constant(0.1)");
        assert_eq!(c.value(-7.0), 0.1);
        assert!(c.breakpoints().is_empty());
        assert_eq!(c.sup(), 0.1);
        assert!(!c.is_local());
        let z = field("zero");
        assert!(z.is_local());
        assert_eq!(z.reach(2.0), Reach::Local);
    }

    #[test]
    fn invalid_descriptors() {
        assert!(HorizonField::build(HorizonDescriptor::Constant(-0.1)).is_err());
        assert!(HorizonField::build(HorizonDescriptor::Ramp { slope: -1.0 }).is_err());
        assert!("ramp(x)".parse::<HorizonDescriptor>().is_err());
        assert!("wiggle(1)".parse::<HorizonDescriptor>().is_err());
        assert!("erfc(1".parse::<HorizonDescriptor>().is_err());
    }

    #[test]
    fn descriptor_text_round_trip() {
        for d in [
            HorizonDescriptor::Erfc { alpha: -1.0 },
            HorizonDescriptor::Ramp { slope: 3.0 },
            HorizonDescriptor::Constant(0.1),
            HorizonDescriptor::Zero,
        ] {
            assert_eq!(d.to_string().parse::<HorizonDescriptor>().unwrap(), d);
        }
    }

    #[test]
    fn inf_on_interval() {
        let z = field("ramp(1)");
        assert_eq!(z.inf_on(1.0, 4.0), 1.0);
        assert_eq!(z.inf_on(-2.0, 4.0), 0.0);
    }
}
