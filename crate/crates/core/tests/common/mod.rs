#![allow(dead_code)]

use num_bigint::BigInt;
use sector_pack::{LatticePoint, PackingFamily, QuadPoly, Rational, Sector};

/// An affine form `x*X + y*Y + c`.
#[derive(Clone)]
pub struct Affine {
    pub x: Rational,
    pub y: Rational,
    pub c: Rational,
}

pub fn affine(x: i64, y: i64, c: i64) -> Affine {
    Affine { x: x.into(), y: y.into(), c: c.into() }
}

impl Affine {
    pub fn scale(&self, k: &Rational) -> Affine {
        Affine { x: &self.x * k, y: &self.y * k, c: &self.c * k }
    }

    pub fn poly(&self) -> QuadPoly {
        let z = Rational::zero;
        QuadPoly::new([z(), z(), z(), self.x.clone(), self.y.clone(), self.c.clone()])
    }
}

/// Expands the product of two affine forms term by term.
pub fn mul(a: &Affine, b: &Affine) -> QuadPoly {
    QuadPoly::new([
        &a.x * &b.x,
        &a.x * &b.y + &a.y * &b.x,
        &a.y * &b.y,
        &a.x * &b.c + &a.c * &b.x,
        &a.y * &b.c + &a.c * &b.y,
        &a.c * &b.c,
    ])
}

pub fn frac(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Rational {
    Rational::new(n, d).unwrap()
}

pub fn int(n: i64) -> Rational {
    Rational::from(n)
}

pub fn sector(text: &str) -> Sector {
    Sector::new(text.parse().unwrap())
}

/// Sector points with `x <= max` (and `y <= max` on the quadrant).
pub fn points_up_to(sector: &Sector, max: u64) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    for x in 0..=max {
        for y in 0..=max * 10 {
            let p = LatticePoint::from((x, y));
            if !sector.contains(&p) {
                break;
            }
            if !sector.slope.is_finite() && y > max {
                break;
            }
            out.push(p);
        }
    }
    out
}

pub fn families() -> Vec<PackingFamily> {
    sector_pack::standard_families(10)
}
