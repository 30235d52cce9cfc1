//! Initial data ψ₀ and its declared singularities.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::horizon::call_syntax;

/// Where two points count as the same singular location.
pub const LOCATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialDescriptor {
    /// e^{-10x²}
    Gaussian,
    /// 1/p on (-p, 0), -1/p on [0, p), 0 elsewhere.
    Square { p: f64 },
    /// 1 - |x|/p on (-p, p), 0 elsewhere.
    Hat { p: f64 },
}

impl fmt::Display for InitialDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialDescriptor::Gaussian => f.write_str("gaussian"),
            InitialDescriptor::Square { p } => write!(f, "square({p})"),
            InitialDescriptor::Hat { p } => write!(f, "hat({p})"),
        }
    }
}

impl FromStr for InitialDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "gaussian" {
            return Ok(InitialDescriptor::Gaussian);
        }
        match call_syntax(s)? {
            ("square", p) => Ok(InitialDescriptor::Square { p }),
            ("hat", p) => Ok(InitialDescriptor::Hat { p }),
            _ => Err(Error::InvalidDescriptor(s.to_owned())),
        }
    }
}

/// A declared jump `[f](x) = f(x⁺) − f(x⁻)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub x: f64,
    pub size: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitialData {
    descriptor: InitialDescriptor,
    value_jumps: Vec<Jump>,
    derivative_jumps: Vec<Jump>,
    support: (f64, f64),
}

impl InitialData {
    pub fn build(descriptor: InitialDescriptor) -> Result<Self> {
        let jumps_at = |p: f64| {
            vec![
                Jump { x: -p, size: 1.0 / p },
                Jump { x: 0.0, size: -2.0 / p },
                Jump { x: p, size: 1.0 / p },
            ]
        };
        let check = |p: f64| {
            if p > 0.0 && p.is_finite() {
                Ok(p)
            } else {
                Err(Error::InvalidDescriptor(format!(
                    "{descriptor}: width p must be positive"
                )))
            }
        };
        let data = match descriptor {
            InitialDescriptor::Gaussian => Self {
                descriptor,
                value_jumps: Vec::new(),
                derivative_jumps: Vec::new(),
                // e^{-40} ≈ 4e-18 at the edge
                support: (-2.0, 2.0),
            },
            InitialDescriptor::Square { p } => {
                let p = check(p)?;
                Self {
                    descriptor,
                    value_jumps: jumps_at(p),
                    derivative_jumps: Vec::new(),
                    support: (-p, p),
                }
            }
            InitialDescriptor::Hat { p } => {
                let p = check(p)?;
                Self {
                    descriptor,
                    value_jumps: Vec::new(),
                    derivative_jumps: jumps_at(p),
                    support: (-p, p),
                }
            }
        };
        Ok(data)
    }

    pub fn descriptor(&self) -> InitialDescriptor {
        self.descriptor
    }

    pub fn value_jumps(&self) -> &[Jump] {
        &self.value_jumps
    }

    pub fn derivative_jumps(&self) -> &[Jump] {
        &self.derivative_jumps
    }

    /// Interval outside which ψ₀ vanishes (numerically, for the Gaussian).
    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    /// [min ψ₀, max ψ₀] over the whole line, zero included.
    pub fn range(&self) -> (f64, f64) {
        match self.descriptor {
            InitialDescriptor::Gaussian | InitialDescriptor::Hat { .. } => (0.0, 1.0),
            InitialDescriptor::Square { p } => (-1.0 / p, 1.0 / p),
        }
    }

    /// Pointwise ψ₀ as defined (square data is right-continuous at 0 and p).
    pub fn value(&self, x: f64) -> f64 {
        match self.descriptor {
            InitialDescriptor::Gaussian => (-10.0 * x * x).exp(),
            InitialDescriptor::Square { p } => {
                if -p < x && x < 0.0 {
                    1.0 / p
                } else if (0.0..p).contains(&x) {
                    -1.0 / p
                } else {
                    0.0
                }
            }
            InitialDescriptor::Hat { p } => (1.0 - x.abs() / p).max(0.0),
        }
    }

    pub fn left_limit(&self, x: f64) -> f64 {
        match self.descriptor {
            InitialDescriptor::Square { p } => square_piece(p, x, true),
            _ => self.value(x),
        }
    }

    pub fn right_limit(&self, x: f64) -> f64 {
        match self.descriptor {
            InitialDescriptor::Square { p } => square_piece(p, x, false),
            _ => self.value(x),
        }
    }

    /// Value used to initialise a grid node: the right limit, so a value
    /// jump sits entirely between a node and its left neighbour.
    pub fn nodal_value(&self, x: f64) -> f64 {
        self.right_limit(x)
    }

    pub fn derivative_left(&self, x: f64) -> f64 {
        self.one_sided_derivative(x, true)
    }

    pub fn derivative_right(&self, x: f64) -> f64 {
        self.one_sided_derivative(x, false)
    }

    fn one_sided_derivative(&self, x: f64, left: bool) -> f64 {
        match self.descriptor {
            InitialDescriptor::Gaussian => -20.0 * x * (-10.0 * x * x).exp(),
            InitialDescriptor::Square { .. } => 0.0,
            InitialDescriptor::Hat { p } => {
                if in_piece(x, -p, 0.0, left) {
                    1.0 / p
                } else if in_piece(x, 0.0, p, left) {
                    -1.0 / p
                } else {
                    0.0
                }
            }
        }
    }

    /// [ψ₀](x) if x is a declared value jump.
    pub fn value_jump_at(&self, x: f64) -> Option<f64> {
        find_jump(&self.value_jumps, x)
    }

    /// [ψ₀ₓ](x) if x is a declared derivative jump.
    pub fn derivative_jump_at(&self, x: f64) -> Option<f64> {
        find_jump(&self.derivative_jumps, x)
    }

    /// [ψ₀](x), zero away from declared jumps.
    pub fn value_jump(&self, x: f64) -> f64 {
        self.value_jump_at(x).unwrap_or(0.0)
    }

    /// [ψ₀ₓ](x), zero away from declared jumps.
    pub fn derivative_jump(&self, x: f64) -> f64 {
        self.derivative_jump_at(x).unwrap_or(0.0)
    }
}

fn square_piece(p: f64, x: f64, left: bool) -> f64 {
    if in_piece(x, -p, 0.0, left) {
        1.0 / p
    } else if in_piece(x, 0.0, p, left) {
        -1.0 / p
    } else {
        0.0
    }
}

/// Membership of x⁻ (left) or x⁺ (right) in the open piece (lo, hi).
fn in_piece(x: f64, lo: f64, hi: f64, left: bool) -> bool {
    if left {
        lo < x && x <= hi
    } else {
        lo <= x && x < hi
    }
}

fn find_jump(jumps: &[Jump], x: f64) -> Option<f64> {
    jumps
        .iter()
        .find(|j| (j.x - x).abs() <= LOCATION_TOLERANCE)
        .map(|j| j.size)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(s: &str) -> InitialData {
        InitialData::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn square_jumps() {
        let d = data("square(1)");
        assert_eq!(d.value_jump(0.0), -2.0);
        assert_eq!(d.value_jump(-1.0), 1.0);
        assert_eq!(d.value_jump(1.0), 1.0);
        assert_eq!(d.value_jump(0.5), 0.0);
        assert_eq!(d.left_limit(0.0), 1.0);
        assert_eq!(d.right_limit(0.0), -1.0);
        assert_eq!(d.value(0.0), -1.0);
        assert_eq!(d.nodal_value(-1.0), 1.0);
        assert_eq!(d.nodal_value(1.0), 0.0);
        assert!(d.derivative_jumps().is_empty());
    }

    #[test]
    fn hat_jumps() {
        let d = data("hat(1)");
        assert_eq!(d.derivative_jump(0.0), -2.0);
        assert_eq!(d.derivative_jump(1.0), 1.0);
        assert_eq!(d.derivative_jump(-1.0), 1.0);
        assert!(d.value_jumps().is_empty());
        assert_eq!(d.value(0.5), 0.5);
        let half = data("hat(0.5)");
        assert_eq!(half.derivative_jump(0.0), -4.0);
        assert_eq!(half.derivative_jump(0.5), 2.0);
    }

    #[test]
    fn gaussian_has_no_jumps() {
        let d = data("gaussian");
        assert!(d.value_jumps().is_empty());
        assert!(d.derivative_jumps().is_empty());
        assert_eq!(d.value_jump(0.0), 0.0);
        assert!(d.value(2.0) < 1e-17);
    }

    #[test]
    fn declared_jumps_match_one_sided_limits() {
        for s in ["square(1)", "square(0.5)", "square(2)", "hat(1)", "hat(0.5)", "hat(2)"] {
            let d = data(s);
            for j in d.value_jumps() {
                let got = d.right_limit(j.x) - d.left_limit(j.x);
                assert!((got - j.size).abs() < 1e-10, "{s} at {}", j.x);
            }
            for j in d.derivative_jumps() {
                let got = d.derivative_right(j.x) - d.derivative_left(j.x);
                assert!((got - j.size).abs() < 1e-10, "{s} at {}", j.x);
                // continuity of the value itself
                let e = 1e-12;
                assert!((d.value(j.x + e) - d.value(j.x - e)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn invalid_width() {
        assert!(InitialData::build(InitialDescriptor::Square { p: 0.0 }).is_err());
        assert!(InitialData::build(InitialDescriptor::Hat { p: -1.0 }).is_err());
        assert!("triangle(1)".parse::<InitialDescriptor>().is_err());
    }

    #[test]
    fn compact_support() {
        for s in ["square(1)", "hat(0.5)", "gaussian"] {
            let d = data(s);
            let (lo, hi) = d.support();
            for x in [lo - 0.5, lo - 1e-9, hi + 1e-9, hi + 3.0] {
                assert!(d.value(x).abs() < 1e-17, "{s} at {x}");
            }
        }
    }
}
