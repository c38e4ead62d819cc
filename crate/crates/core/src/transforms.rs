//! Integer 2x2 linear maps acting on lattice points.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::sector::LatticePoint;

/// The matrix `[[a, b], [c, d]]`, acting as `(x, y) -> (a*x + b*y, c*x + d*y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl LinearMap2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        LinearMap2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        LinearMap2::new(1, 0, 0, 1)
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Row-major entries.
    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Image of an integer pair; the result may leave the quadrant.
    pub fn apply_pair(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }

    pub fn apply(&self, p: &LatticePoint) -> (BigInt, BigInt) {
        self.apply_pair(&BigInt::from(p.x.clone()), &BigInt::from(p.y.clone()))
    }

    /// `self * other`, so `other` acts first.
    pub fn compose(&self, other: &LinearMap2) -> LinearMap2 {
        LinearMap2 {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    /// Inverse over the integers; only unimodular maps have one.
    pub fn inverse(&self) -> Result<LinearMap2> {
        let det = self.determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        // det is +-1, so dividing by it is multiplying by it.
        Ok(LinearMap2 {
            a: &self.d * &det,
            b: -&self.b * &det,
            c: -&self.c * &det,
            d: &self.a * &det,
        })
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self) == LinearMap2::identity()
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }
}

impl fmt::Display for LinearMap2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.c, self.d)
    }
}

/// The shear `[[1, s], [0, 1]]`, a bijection from `I(inf)` onto `I(1/s)`.
pub fn lambda_map(s: u64) -> LinearMap2 {
    LinearMap2::new(1, s, 0, 1)
}

/// `[[s, 1], [1, 0]]`, the other bijection from `I(inf)` onto `I(1/s)`.
pub fn m_map(s: u64) -> LinearMap2 {
    LinearMap2::new(s, 1, 1, 0)
}

/// `[[s, 1 - s^2], [1, -s]]`, the non-identity involution of `I(1/s)`.
pub fn phi_map(s: u64) -> LinearMap2 {
    let s = BigInt::from(s);
    LinearMap2::new(s.clone(), BigInt::one() - &s * &s, 1, -s)
}

/// `[[1, 0], [r, -1]]`: `(x, y) -> (x, r*x - y)`, which reflects every column of `I(r)`.
pub fn psi_map(r: u64) -> Result<LinearMap2> {
    if r == 0 {
        return Err(Error::InvalidParameters("psi map needs r >= 1".into()));
    }
    Ok(LinearMap2::new(1, 0, r, -1))
}
