use std::f64::consts::TAU;
use std::fmt;

use num_integer::Integer;

use crate::{Error, Result};

/// Reduced flux fraction `p/q`, with `γ = 2πp/q`.
///
/// `p` ranges over `[0, 2q)` so that phases up to `4π` stay representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalFlux {
    p: u64,
    q: u64,
}

impl RationalFlux {
    pub const ZERO: RationalFlux = RationalFlux { p: 0, q: 1 };

    /// Reduces `p/q` to lowest terms.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidFlux {
                p: p as i64,
                q: 0,
                reason: "zero denominator",
            });
        }
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        if p >= 2 * q {
            return Err(Error::InvalidFlux {
                p: p as i64,
                q: q as i64,
                reason: "numerator must satisfy 0 <= p < 2q",
            });
        }
        Ok(RationalFlux { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn gamma(&self) -> f64 {
        TAU * self.p as f64 / self.q as f64
    }

    /// The flux with the opposite phase, `γ → 2π − γ` (for `p < q`).
    pub fn conjugate(&self) -> RationalFlux {
        if self.p == 0 {
            return *self;
        }
        let q2 = 2 * self.q;
        let p = if self.p < self.q {
            self.q - self.p
        } else {
            q2 - self.p
        };
        RationalFlux::new(p, self.q).expect("reduced operand stays reduced")
    }
}

impl fmt::Display for RationalFlux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_validates() {
        let f = RationalFlux::new(6, 8).unwrap();
        assert_eq!((f.p(), f.q()), (3, 4));
        assert_eq!(RationalFlux::new(0, 7).unwrap(), RationalFlux::ZERO);
        assert!(RationalFlux::new(1, 0).is_err());
        assert!(RationalFlux::new(4, 2).is_err());
        assert!(RationalFlux::new(3, 2).is_ok());
        assert_eq!(
            RationalFlux::new(1, 3).unwrap().conjugate(),
            RationalFlux::new(2, 3).unwrap()
        );
        assert!((RationalFlux::new(1, 2).unwrap().gamma() - std::f64::consts::PI).abs() < 1e-15);
    }
}
