//! Slopes, lattice points and the integer sectors `I(r/s)`.
//!
//! `I(r/s)` is the set of points `(x, y)` in `N0^2` with `s*y <= r*x`; the
//! infinite slope gives the whole quadrant. Membership and counting are done
//! in exact integer arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A reduced positive rational slope `num/den`, or the vertical slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slope {
    Finite { num: u64, den: u64 },
    Infinite,
}

impl Slope {
    /// Builds `r/s` in lowest terms. Zero numerators and denominators are rejected.
    pub fn finite(r: u64, s: u64) -> Result<Self> {
        if r == 0 || s == 0 {
            return Err(Error::InvalidSlope(format!("{r}/{s}")));
        }
        let g = r.gcd(&s);
        Ok(Slope::Finite { num: r / g, den: s / g })
    }

    /// The integer slope `r/1`.
    pub fn integer(r: u64) -> Result<Self> {
        Self::finite(r, 1)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Slope::Finite { .. })
    }

    /// `(r, s)` for finite slopes.
    pub fn parts(&self) -> Option<(u64, u64)> {
        match *self {
            Slope::Finite { num, den } => Some((num, den)),
            Slope::Infinite => None,
        }
    }
}

/// Parses `r/s`, `r` or `inf`.
pub fn parse_slope(text: &str) -> Result<Slope> {
    let bad = || Error::InvalidSlope(text.to_string());
    let digits = |t: &str| -> Result<u64> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse().map_err(|_| bad())
    };
    if text == "inf" {
        return Ok(Slope::Infinite);
    }
    let (r, s) = match text.split_once('/') {
        Some((r, s)) => (digits(r)?, digits(s)?),
        None => (digits(text)?, 1),
    };
    Slope::finite(r, s).map_err(|_| bad())
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_slope(s)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite { num, den: 1 } => write!(f, "{num}"),
            Slope::Finite { num, den } => write!(f, "{num}/{den}"),
            Slope::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: BigUint,
    pub y: BigUint,
}

impl LatticePoint {
    pub fn new(x: impl Into<BigUint>, y: impl Into<BigUint>) -> Self {
        LatticePoint { x: x.into(), y: y.into() }
    }

    pub fn origin() -> Self {
        LatticePoint::new(0u32, 0u32)
    }
}

impl From<(u64, u64)> for LatticePoint {
    fn from((x, y): (u64, u64)) -> Self {
        LatticePoint::new(x, y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl FromStr for LatticePoint {
    type Err = Error;

    /// Parses `x,y`; surrounding parentheses are tolerated.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidPoint(text.to_string());
        let inner = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(text);
        let (x, y) = inner.split_once(',').ok_or_else(bad)?;
        let coord = |t: &str| -> Result<BigUint> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        Ok(LatticePoint::new(coord(x)?, coord(y)?))
    }
}

/// The integer sector `I(slope)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sector {
    pub slope: Slope,
}

impl Sector {
    pub fn new(slope: Slope) -> Self {
        Sector { slope }
    }

    pub fn quadrant() -> Self {
        Sector::new(Slope::Infinite)
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        match self.slope {
            Slope::Finite { num, den } => &p.y * den <= &p.x * num,
            Slope::Infinite => true,
        }
    }

    /// Highest `y` in column `x`, i.e. `floor(r*x/s)`; `None` for the quadrant.
    pub fn column_top(&self, x: &BigUint) -> Option<BigUint> {
        let (r, s) = self.slope.parts()?;
        Some(x * r / s)
    }

    /// Number of sector points with `x <= n`: the sum over `j = 0..=n` of `floor(r*j/s) + 1`.
    pub fn prefix_count(&self, n: u64) -> Result<BigUint> {
        let (r, s) = self.slope.parts().ok_or(Error::InfiniteSlope)?;
        let mut total = BigUint::zero();
        for j in 0..=n {
            total += BigUint::from(j) * r / s + 1u32;
        }
        Ok(total)
    }

    /// The free basis of the semigroup `I(slope)`, present only for slopes `1/s` and infinity.
    pub fn free_basis(&self) -> Option<[LatticePoint; 2]> {
        match self.slope {
            Slope::Infinite => Some([(1, 0).into(), (0, 1).into()]),
            Slope::Finite { num: 1, den } => Some([(1, 0).into(), (den, 1).into()]),
            Slope::Finite { .. } => None,
        }
    }

    pub(crate) fn require(&self, p: &LatticePoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OutsideSector { point: p.to_string(), slope: self.slope.to_string() })
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({})", self.slope)
    }
}
