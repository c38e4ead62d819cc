//! Constructors for the packing functions on integer sectors, together with
//! exact rank (evaluation) and unrank (inversion) for every family.
//!
//! Each family enumerates its sector block by block. Blocks are columns for
//! `I(r)`, the lines `J_a = {(a + d*j, j) : 0 <= j <= r*a}` for `I(r/s)` with
//! `r | s - 1`, and residue classes of columns for the quasi-polynomial
//! family. Ranks come from the closed-form polynomial; unranks are computed
//! independently by integer search over block prefix counts.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{CompiledForm, PolyForm, QuadPoly, QuasiPoly};
use crate::rational::Rational;
use crate::sector::{LatticePoint, Sector, Slope};
use crate::verify::EnumerationOrder;

/// Largest quasi-polynomial period accepted by `quasi_h`.
pub const MAX_PERIOD: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    CantorF,
    CantorG,
    SteepF(u64),
    SteepG(u64),
    DividesF(u64, u64),
    DividesG(u64, u64),
    QuasiH(u64, u64),
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::CantorF => f.write_str("cantor-f"),
            FamilyKind::CantorG => f.write_str("cantor-g"),
            FamilyKind::SteepF(r) => write!(f, "steep-f:{r}"),
            FamilyKind::SteepG(r) => write!(f, "steep-g:{r}"),
            FamilyKind::DividesF(r, s) => write!(f, "div-f:{r}/{s}"),
            FamilyKind::DividesG(r, s) => write!(f, "div-g:{r}/{s}"),
            FamilyKind::QuasiH(r, s) => write!(f, "quasi:{r}/{s}"),
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownFamily(name.to_string());
        let int = |t: &str| -> Result<u64> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(unknown());
            }
            t.parse().map_err(|_| unknown())
        };
        let ratio = |t: &str| -> Result<(u64, u64)> {
            let (r, s) = t.split_once('/').ok_or_else(unknown)?;
            Ok((int(r)?, int(s)?))
        };
        match name.split_once(':') {
            None if name == "cantor-f" => Ok(FamilyKind::CantorF),
            None if name == "cantor-g" => Ok(FamilyKind::CantorG),
            Some(("steep-f", r)) => Ok(FamilyKind::SteepF(int(r)?)),
            Some(("steep-g", r)) => Ok(FamilyKind::SteepG(int(r)?)),
            Some(("div-f", rs)) => ratio(rs).map(|(r, s)| FamilyKind::DividesF(r, s)),
            Some(("div-g", rs)) => ratio(rs).map(|(r, s)| FamilyKind::DividesG(r, s)),
            Some(("quasi", rs)) => ratio(rs).map(|(r, s)| FamilyKind::QuasiH(r, s)),
            _ => Err(unknown()),
        }
    }
}

/// A constructed packing function: its closed form, sector and enumeration order.
#[derive(Clone, Debug)]
pub struct PackingFamily {
    kind: FamilyKind,
    form: PolyForm,
    sector: Sector,
    order: EnumerationOrder,
    compiled: CompiledForm,
}

impl PartialEq for PackingFamily {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

fn q(n: impl Into<BigInt>) -> Rational {
    Rational::integer(n)
}

fn half(n: impl Into<BigInt>) -> Rational {
    Rational::new(n, 2).expect("nonzero")
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// `r*a*(a-1)/2 + base*a`: points before block `a` when block `k` holds `r*k + base` points.
fn block_start(r: u64, base: &BigUint, a: &BigUint) -> BigUint {
    if a.is_zero() {
        return BigUint::zero();
    }
    a * (a - 1u32) * r / 2u32 + base * a
}

/// Largest `a` with `f(a) <= n` for a nondecreasing `f` with `f(0) = 0`.
fn largest_at_most(n: &BigUint, f: impl Fn(&BigUint) -> BigUint) -> BigUint {
    let mut hi = BigUint::one();
    while f(&hi) <= *n {
        hi <<= 1;
    }
    // invariant: f(lo) <= n < f(hi)
    let mut lo = BigUint::zero();
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1;
        if f(&mid) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn check_divides(r: u64, s: u64) -> Result<u64> {
    if r == 0 || r >= s || r.gcd(&s) != 1 || (s - 1) % r != 0 {
        return Err(Error::InvalidParameters(format!(
            "{r}/{s}: need gcd(r,s) = 1, 1 <= r < s and r | s-1"
        )));
    }
    Ok((s - 1) / r)
}

impl PackingFamily {
    fn build(kind: FamilyKind, form: PolyForm, slope: Slope, order: EnumerationOrder) -> Self {
        let compiled = form.compile();
        PackingFamily { kind, form, sector: Sector::new(slope), order, compiled }
    }

    /// Cantor polynomials on the quadrant: `F = ((x+y)^2 + x + 3y)/2`, `G = ((x+y)^2 + 3x + y)/2`.
    pub fn cantor(variant: Variant) -> Self {
        let (kind, lin, order) = match variant {
            Variant::F => (FamilyKind::CantorF, [(1, 2), (3, 2)], EnumerationOrder::Diagonal),
            Variant::G => (FamilyKind::CantorG, [(3, 2), (1, 2)], EnumerationOrder::ReverseDiagonal),
        };
        let f = QuadPoly::from_fracs([(1, 2), (1, 1), (1, 2), lin[0], lin[1], (0, 1)]);
        Self::build(kind, f.into(), Slope::Infinite, order)
    }

    /// Column-by-column packings of `I(r)`:
    /// `F_r = r*x*(x-1)/2 + x + y` and `G_r = r*x*(x+1)/2 + x - y`.
    pub fn steep(variant: Variant, r: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameters("steep family needs r >= 1".into()));
        }
        let x2 = half(r);
        let (kind, x, y, order) = match variant {
            Variant::F => (FamilyKind::SteepF(r), half(2 - big(r)), q(1), EnumerationOrder::ColumnBottomUp),
            Variant::G => (FamilyKind::SteepG(r), half(big(r) + 2), q(-1), EnumerationOrder::ColumnTopDown),
        };
        let f = QuadPoly::new([x2, q(0), q(0), x, y, q(0)]);
        Ok(Self::build(kind, f.into(), Slope::integer(r)?, order))
    }

    /// Block packings of `I(r/s)` when `r | s - 1`, with `d = (s-1)/r`:
    /// `F = r(x-dy)^2/2 + ((2-r)x + (dr-2d+2)y)/2`,
    /// `G = r(x-dy)^2/2 + ((r+2)x - (2d+s+1)y)/2`.
    pub fn divides(variant: Variant, r: u64, s: u64) -> Result<Self> {
        let d = check_divides(r, s)?;
        let (rb, db, sb) = (big(r), big(d), big(s));
        // r(x - dy)^2 / 2
        let x2 = half(rb.clone());
        let xy = q(-(&rb * &db));
        let y2 = half(&rb * &db * &db);
        let (kind, x, y, order) = match variant {
            Variant::F => (
                FamilyKind::DividesF(r, s),
                half(BigInt::from(2) - &rb),
                half(&db * &rb - &db * 2u32 + 2u32),
                EnumerationOrder::BlockBottomUp(d),
            ),
            Variant::G => (
                FamilyKind::DividesG(r, s),
                half(&rb + 2u32),
                half(-(&db * 2u32 + sb + 1u32)),
                EnumerationOrder::BlockTopDown(d),
            ),
        };
        let f = QuadPoly::new([x2, xy, y2, x, y, q(0)]);
        Ok(Self::build(kind, f.into(), Slope::finite(r, s)?, order))
    }

    /// The period-`s` quasi-polynomial packing of `I(r/s)`: on `x = l (mod s)` it is
    /// `s*h_l + l` with `h_l = r(x-l)(x-l-s)/(2s^2) + (u_l+1)(x-l)/s + y` and `u_l = floor(r*l/s)`.
    pub fn quasi_h(r: u64, s: u64) -> Result<Self> {
        if r == 0 || s == 0 || r.gcd(&s) != 1 {
            return Err(Error::InvalidParameters(format!("{r}/{s}: need coprime positive r, s")));
        }
        if s > MAX_PERIOD {
            return Err(Error::InvalidParameters(format!("period {s} exceeds {MAX_PERIOD}")));
        }
        let (rb, sb) = (big(r), big(s));
        let over_two_s = |n: BigInt| Rational::new(n, &sb * 2u32).expect("nonzero");
        let branches = (0..s)
            .map(|l| {
                let lb = big(l);
                let u1 = &rb * &lb / &sb + 1u32;
                // s * h_l + l, expanded using (x-l)(x-l-s) = x^2 - (2l+s)x + l(l+s)
                QuadPoly::new([
                    over_two_s(rb.clone()),
                    q(0),
                    q(0),
                    over_two_s(-(&rb * (&lb * 2u32 + &sb))) + q(u1.clone()),
                    q(sb.clone()),
                    over_two_s(&rb * &lb * (&lb + &sb)) - q(&u1 * &lb) + q(lb.clone()),
                ])
            })
            .collect();
        let h = QuasiPoly::new(branches)?;
        Ok(Self::build(FamilyKind::QuasiH(r, s), h.into(), Slope::finite(r, s)?, EnumerationOrder::ResidueInterleaved(s)))
    }

    pub fn from_kind(kind: FamilyKind) -> Result<Self> {
        match kind {
            FamilyKind::CantorF => Ok(Self::cantor(Variant::F)),
            FamilyKind::CantorG => Ok(Self::cantor(Variant::G)),
            FamilyKind::SteepF(r) => Self::steep(Variant::F, r),
            FamilyKind::SteepG(r) => Self::steep(Variant::G, r),
            FamilyKind::DividesF(r, s) => Self::divides(Variant::F, r, s),
            FamilyKind::DividesG(r, s) => Self::divides(Variant::G, r, s),
            FamilyKind::QuasiH(r, s) => Self::quasi_h(r, s),
        }
    }

    /// Parses a CLI family name such as `div-f:2/3` and constructs it.
    pub fn from_name(name: &str) -> Result<Self> {
        Self::from_kind(name.parse()?)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn form(&self) -> &PolyForm {
        &self.form
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    /// The enumeration the closed form is built to reproduce.
    pub fn order(&self) -> EnumerationOrder {
        self.order
    }

    pub fn rank(&self, p: &LatticePoint) -> Result<BigUint> {
        self.sector.require(p)?;
        let non_integer = |value: String| Error::NonIntegerRank { point: p.to_string(), value };
        match self.compiled.eval_integer(p) {
            Ok(n) if !n.is_negative() => Ok(n.to_biguint().expect("nonnegative")),
            Ok(n) => Err(non_integer(n.to_string())),
            Err(q) => Err(non_integer(q.to_string())),
        }
    }

    /// The unique sector point of rank `n`.
    pub fn unrank(&self, n: &BigUint) -> LatticePoint {
        match self.kind {
            FamilyKind::CantorF | FamilyKind::CantorG => {
                let diag = largest_at_most(n, |k| k * (k + 1u32) / 2u32);
                let t = n - &diag * (&diag + 1u32) / 2u32;
                let rest = &diag - &t;
                if self.kind == FamilyKind::CantorF {
                    LatticePoint::new(rest, t)
                } else {
                    LatticePoint::new(t, rest)
                }
            }
            FamilyKind::SteepF(r) | FamilyKind::SteepG(r) => {
                let one = BigUint::one();
                let a = largest_at_most(n, |a| block_start(r, &one, a));
                let offset = n - block_start(r, &one, &a);
                let y = match self.kind {
                    FamilyKind::SteepF(_) => offset,
                    _ => &a * r - offset,
                };
                LatticePoint::new(a, y)
            }
            FamilyKind::DividesF(r, s) | FamilyKind::DividesG(r, s) => {
                let d = (s - 1) / r;
                let one = BigUint::one();
                let a = largest_at_most(n, |a| block_start(r, &one, a));
                let offset = n - block_start(r, &one, &a);
                let j = match self.kind {
                    FamilyKind::DividesF(..) => offset,
                    _ => &a * r - offset,
                };
                LatticePoint::new(a + &j * d, j)
            }
            FamilyKind::QuasiH(r, s) => {
                let (m, l) = n.div_rem(&BigUint::from(s));
                let l = l.to_u64().expect("residue below s");
                let base = BigUint::from(r * l / s + 1);
                let col = largest_at_most(&m, |a| block_start(r, &base, a));
                let y = &m - block_start(r, &base, &col);
                LatticePoint::new(col * s + l, y)
            }
        }
    }
}

/// Locates `p` in the block `J_a` of `I(r/s)` (`r | s - 1`): returns `(a, j)` with
/// `p = (a + d*j, j)` and `0 <= j <= r*a`.
pub fn sector_decompose(r: u64, s: u64, p: &LatticePoint) -> Result<(BigUint, BigUint)> {
    let d = check_divides(r, s)?;
    Sector::new(Slope::finite(r, s)?).require(p)?;
    Ok((&p.x - &p.y * d, p.y.clone()))
}

/// Every family whose parameters are at most `limit`: both Cantor polynomials,
/// `F_r, G_r` for `r <= limit`, the block families for valid `r/s` with `s <= limit`,
/// and the quasi-polynomials for coprime `r, s <= limit`.
pub fn standard_families(limit: u64) -> Vec<PackingFamily> {
    let mut out = vec![PackingFamily::cantor(Variant::F), PackingFamily::cantor(Variant::G)];
    for r in 1..=limit {
        for v in [Variant::F, Variant::G] {
            out.push(PackingFamily::steep(v, r).expect("r >= 1"));
        }
    }
    for s in 2..=limit {
        for r in 1..s {
            if check_divides(r, s).is_ok() {
                for v in [Variant::F, Variant::G] {
                    out.push(PackingFamily::divides(v, r, s).expect("checked"));
                }
            }
        }
    }
    for r in 1..=limit {
        for s in 1..=limit {
            if r.gcd(&s) == 1 {
                out.push(PackingFamily::quasi_h(r, s).expect("coprime"));
            }
        }
    }
    out
}
