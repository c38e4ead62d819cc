//! Brute-force enumeration oracles, packing verification for arbitrary
//! candidates, and bounded exhaustive search over polynomial coefficients.
//!
//! The oracles walk the sector with the membership predicate only; they never
//! consult the closed forms in `packing`, so agreement between the two is a
//! real check.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::poly::{PolyForm, QuadPoly};
use crate::rational::Rational;
use crate::sector::{LatticePoint, Sector, Slope};

/// `verify_packing` examines at least this many sector points per required value.
pub const COVERAGE_MARGIN: u64 = 4;

/// How many times the examined region may be doubled before a missing value counts as a failure.
pub const MAX_REGION_DOUBLINGS: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnumerationOrder {
    /// Diagonals `x + y = k` in turn, each from `(k, 0)` upward.
    Diagonal,
    /// Diagonals in turn, each from `(0, k)` downward.
    ReverseDiagonal,
    ColumnBottomUp,
    ColumnTopDown,
    /// Blocks `J_a` on the lines through `(a, 0)` with step `(d, 1)`, bottom point first.
    BlockBottomUp(u64),
    BlockTopDown(u64),
    /// Round-robin over the residue classes of `x` mod `s`, each class walked column by column.
    ResidueInterleaved(u64),
}

impl fmt::Display for EnumerationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerationOrder::Diagonal => f.write_str("diagonal"),
            EnumerationOrder::ReverseDiagonal => f.write_str("reverse-diagonal"),
            EnumerationOrder::ColumnBottomUp => f.write_str("column-bottom-up"),
            EnumerationOrder::ColumnTopDown => f.write_str("column-top-down"),
            EnumerationOrder::BlockBottomUp(d) => write!(f, "block-bottom-up:{d}"),
            EnumerationOrder::BlockTopDown(d) => write!(f, "block-top-down:{d}"),
            EnumerationOrder::ResidueInterleaved(s) => write!(f, "residue-interleaved:{s}"),
        }
    }
}

impl EnumerationOrder {
    /// Parses an order name. Block and residue orders take their parameter after a
    /// colon, or infer it from `slope` when it is omitted.
    pub fn parse(name: &str, slope: Slope) -> Result<Self> {
        let (base, arg) = match name.split_once(':') {
            Some((b, a)) => (b, Some(a)),
            None => (name, None),
        };
        let bad = || Error::IncompatibleOrder { order: name.to_string(), slope: slope.to_string() };
        let param = |inferred: Option<u64>| -> Result<u64> {
            match arg {
                Some(a) if !a.is_empty() && a.bytes().all(|b| b.is_ascii_digit()) => a.parse().map_err(|_| bad()),
                Some(_) => Err(bad()),
                None => inferred.ok_or_else(bad),
            }
        };
        let step = slope.parts().and_then(|(r, s)| ((s - 1) % r == 0 && r < s).then(|| (s - 1) / r));
        let den = slope.parts().map(|(_, s)| s);
        let order = match base {
            "diagonal" if arg.is_none() => EnumerationOrder::Diagonal,
            "reverse-diagonal" if arg.is_none() => EnumerationOrder::ReverseDiagonal,
            "column-bottom-up" if arg.is_none() => EnumerationOrder::ColumnBottomUp,
            "column-top-down" if arg.is_none() => EnumerationOrder::ColumnTopDown,
            "block-bottom-up" => EnumerationOrder::BlockBottomUp(param(step)?),
            "block-top-down" => EnumerationOrder::BlockTopDown(param(step)?),
            "residue-interleaved" => EnumerationOrder::ResidueInterleaved(param(den)?),
            _ => return Err(Error::IncompatibleOrder { order: name.to_string(), slope: slope.to_string() }),
        };
        Ok(order)
    }

    fn check(&self, sector: &Sector) -> Result<()> {
        let parts = sector.slope.parts();
        let ok = match *self {
            EnumerationOrder::Diagonal | EnumerationOrder::ReverseDiagonal => true,
            EnumerationOrder::ColumnBottomUp | EnumerationOrder::ColumnTopDown => parts.is_some(),
            EnumerationOrder::BlockBottomUp(d) | EnumerationOrder::BlockTopDown(d) => {
                matches!(parts, Some((r, s)) if r < s && (s - 1) % r == 0 && d == (s - 1) / r)
            }
            EnumerationOrder::ResidueInterleaved(m) => matches!(parts, Some((_, s)) if s == m),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IncompatibleOrder { order: self.to_string(), slope: sector.slope.to_string() })
        }
    }
}

fn inside(sector: &Sector, x: u64, y: u64) -> bool {
    sector.contains(&LatticePoint::from((x, y)))
}

/// Points `(x0 + step*t, y0 + t)` for `t = 0, 1, ...` while they stay in the sector.
fn walk(sector: &Sector, x0: u64, step: u64, reverse: bool) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut t = 0u64;
    while inside(sector, x0 + step * t, t) {
        out.push((x0 + step * t, t));
        t += 1;
    }
    if reverse {
        out.reverse();
    }
    out
}

/// Column `x` of the sector from the bottom.
fn column(sector: &Sector, x: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
    (0u64..).map_while(move |y| inside(sector, x, y).then_some((x, y)))
}

/// The first `count` points of `order` on `sector`; a point's rank is its position.
pub fn enumerate(sector: &Sector, order: EnumerationOrder, count: usize) -> Result<Vec<LatticePoint>> {
    order.check(sector)?;
    let sector = *sector;
    let points: Box<dyn Iterator<Item = (u64, u64)>> = match order {
        EnumerationOrder::Diagonal => Box::new(
            (0u64..).flat_map(move |k| (0..=k).map(move |y| (k - y, y)).filter(move |&(x, y)| inside(&sector, x, y))),
        ),
        EnumerationOrder::ReverseDiagonal => Box::new(
            (0u64..).flat_map(move |k| (0..=k).map(move |x| (x, k - x)).filter(move |&(x, y)| inside(&sector, x, y))),
        ),
        EnumerationOrder::ColumnBottomUp => Box::new((0u64..).flat_map(move |x| walk(&sector, x, 0, false))),
        EnumerationOrder::ColumnTopDown => Box::new((0u64..).flat_map(move |x| walk(&sector, x, 0, true))),
        EnumerationOrder::BlockBottomUp(d) => Box::new((0u64..).flat_map(move |a| walk(&sector, a, d, false))),
        EnumerationOrder::BlockTopDown(d) => Box::new((0u64..).flat_map(move |a| walk(&sector, a, d, true))),
        EnumerationOrder::ResidueInterleaved(m) => {
            let mut classes: Vec<Box<dyn Iterator<Item = (u64, u64)>>> = (0..m)
                .map(|l| {
                    let class: Box<dyn Iterator<Item = (u64, u64)>> =
                        Box::new((0u64..).flat_map(move |a| column(&sector, a * m + l).collect::<Vec<_>>()));
                    class
                })
                .collect();
            let mut turn = 0usize;
            Box::new(std::iter::from_fn(move || {
                let next = classes[turn].next();
                turn = (turn + 1) % classes.len();
                next
            }))
        }
    };
    Ok(points.take(count).map(LatticePoint::from).collect())
}

/// Why a candidate is not a packing function on the examined region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    NonInteger { point: LatticePoint, value: Rational },
    Negative { point: LatticePoint, value: BigInt },
    Collision { first: LatticePoint, second: LatticePoint, value: BigUint },
    Missing { value: u64 },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::NonInteger { point, value } => write!(f, "non-integer value {value} at {point}"),
            Failure::Negative { point, value } => write!(f, "negative value {value} at {point}"),
            Failure::Collision { first, second, value } => write!(f, "collision: {first} and {second} both map to {value}"),
            Failure::Missing { value } => write!(f, "missing value {value}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Failure),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Sector points in a fixed order such that each examined region is a prefix of the list.
/// Finite sectors go column by column; the quadrant goes by square shells `max(x, y) = n`.
#[derive(Debug)]
struct Region {
    points: Vec<(u64, u64)>,
    stages: Vec<usize>,
}

impl Region {
    fn new(sector: &Sector, prefix: u64) -> Self {
        let target = COVERAGE_MARGIN.saturating_mul(prefix);
        let mut bounds = Vec::new();
        match sector.slope.parts() {
            Some((r, s)) => {
                // least n with prefix_count(n) >= target
                let (mut n, mut count) = (0u64, 1u64);
                while count < target {
                    n += 1;
                    count += r * n / s + 1;
                }
                bounds.push(n);
            }
            None => {
                let mut n = 0u64;
                while (n + 1) * (n + 1) < target {
                    n += 1;
                }
                bounds.push(n);
            }
        }
        for _ in 0..MAX_REGION_DOUBLINGS {
            let last = *bounds.last().unwrap();
            bounds.push((2 * last).max(1));
        }
        let max = *bounds.last().unwrap();
        let mut points = Vec::new();
        let mut stages = Vec::new();
        let mut next_stage = 0;
        for n in 0..=max {
            match sector.slope.parts() {
                Some(_) => points.extend(column(sector, n)),
                None => {
                    points.extend((0..=n).map(|y| (n, y)));
                    points.extend((0..n).map(|x| (x, n)));
                }
            }
            while next_stage < bounds.len() && bounds[next_stage] == n {
                stages.push(points.len());
                next_stage += 1;
            }
        }
        Region { points, stages }
    }
}

/// Checks that `form` maps the examined sector points injectively to nonnegative
/// integers and that every value below `prefix` is attained. A missing value
/// triggers a re-check over a doubled region, up to `MAX_REGION_DOUBLINGS` times.
pub fn verify_packing(form: &PolyForm, sector: &Sector, prefix: u64) -> Verdict {
    let compiled = form.compile();
    let region = Region::new(sector, prefix);
    let want = prefix as usize;
    let mut seen: HashMap<BigUint, (u64, u64)> = HashMap::new();
    let mut covered = vec![false; want];
    let mut covered_count = 0usize;
    let mut start = 0usize;
    for &end in &region.stages {
        for &(x, y) in &region.points[start..end] {
            let point = LatticePoint::from((x, y));
            let value = match compiled.eval_integer(&point) {
                Ok(v) if v.is_negative() => return Verdict::Fail(Failure::Negative { point, value: v }),
                Ok(v) => v.to_biguint().expect("nonnegative"),
                Err(q) => return Verdict::Fail(Failure::NonInteger { point, value: q }),
            };
            if let Some(&(px, py)) = seen.get(&value) {
                return Verdict::Fail(Failure::Collision { first: (px, py).into(), second: point, value });
            }
            if let Some(small) = value.to_usize().filter(|&v| v < want) {
                covered[small] = true;
                covered_count += 1;
            }
            seen.insert(value, (x, y));
        }
        if covered_count == want {
            return Verdict::Pass;
        }
        start = end;
    }
    let missing = covered.iter().position(|c| !c).expect("some value is missing");
    Verdict::Fail(Failure::Missing { value: missing as u64 })
}

/// Outcome of a bounded coefficient search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub sector: Sector,
    pub degree: u32,
    pub coeff_bound: u64,
    pub prefix: u64,
    /// Number of coefficient tuples examined.
    pub candidates: u64,
    /// Candidates that passed `verify_packing` on the prefix, in lexicographic coefficient order.
    pub survivors: Vec<QuadPoly>,
    /// Whether every tuple in the coefficient lattice was examined.
    pub exhausted: bool,
}

impl SearchReport {
    pub fn to_json_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("sector".into(), Value::String(self.sector.slope.to_string()));
        map.insert("degree".into(), Value::from(self.degree));
        map.insert("coeff_bound".into(), Value::from(self.coeff_bound));
        map.insert("prefix".into(), Value::from(self.prefix));
        map.insert("candidates".into(), Value::from(self.candidates));
        map.insert("exhausted".into(), Value::Bool(self.exhausted));
        map.insert("survivors".into(), Value::Array(self.survivors.iter().map(QuadPoly::to_json_value).collect()));
        Value::Object(map)
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

/// Largest coefficient bound handled by the machine-integer pre-filter.
const FAST_BOUND_LIMIT: u64 = 1 << 30;

enum Quick {
    Reject,
    Keep,
}

/// Machine-integer screen that rejects only candidates `verify_packing` would also reject:
/// odd or negative doubled values, collisions among small values, or values still
/// missing after the last region stage.
struct Screen<'a> {
    monomials: &'a [[i128; 5]],
    stages: &'a [usize],
    prefix: usize,
    stamps: Vec<u32>,
    generation: u32,
}

impl<'a> Screen<'a> {
    fn new(monomials: &'a [[i128; 5]], stages: &'a [usize], prefix: usize) -> Self {
        let cap = monomials.len().max(prefix);
        Screen { monomials, stages, prefix, stamps: vec![0; cap], generation: 0 }
    }

    /// `doubled` holds twice the coefficients of `x^2, xy, y^2, x, y, 1`.
    fn check(&mut self, doubled: &[i64; 6]) -> Quick {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamps.fill(0);
            self.generation = 1;
        }
        let k: [i128; 6] = doubled.map(i128::from);
        let mut covered = 0usize;
        let mut start = 0usize;
        for &end in self.stages {
            for m in &self.monomials[start..end] {
                let v2 = k[0] * m[0] + k[1] * m[1] + k[2] * m[2] + k[3] * m[3] + k[4] * m[4] + k[5];
                if v2 < 0 || v2 & 1 == 1 {
                    return Quick::Reject;
                }
                let v = v2 >> 1;
                if v < self.stamps.len() as i128 {
                    let slot = v as usize;
                    if self.stamps[slot] == self.generation {
                        return Quick::Reject;
                    }
                    self.stamps[slot] = self.generation;
                    if slot < self.prefix {
                        covered += 1;
                    }
                }
            }
            if covered == self.prefix {
                return Quick::Keep;
            }
            start = end;
        }
        Quick::Reject
    }
}

fn halves(doubled: &[i64; 6]) -> QuadPoly {
    QuadPoly::new(doubled.map(|k| Rational::frac(k, 2)))
}

/// Exhaustive search over polynomials of the given degree (1 or 2) whose coefficients
/// lie in `{k/2 : |k| <= 2*coeff_bound}`. `progress` receives `(done, total)` outer steps.
pub fn search(
    sector: &Sector,
    degree: u32,
    coeff_bound: u64,
    prefix: u64,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> Result<SearchReport> {
    if !sector.slope.is_finite() {
        return Err(Error::InfiniteSlope);
    }
    if !(1..=2).contains(&degree) {
        return Err(Error::InvalidParameters(format!("search degree must be 1 or 2, got {degree}")));
    }
    if coeff_bound == 0 || coeff_bound > FAST_BOUND_LIMIT {
        return Err(Error::InvalidParameters(format!("coefficient bound must be in 1..={FAST_BOUND_LIMIT}")));
    }
    let k_max = 2 * coeff_bound as i64;
    let values: Vec<i64> = (-k_max..=k_max).collect();
    let width = values.len() as u64;
    let region = Region::new(sector, prefix);
    let monomials: Vec<[i128; 5]> = region
        .points
        .iter()
        .map(|&(x, y)| {
            let (x, y) = (i128::from(x), i128::from(y));
            [x * x, x * y, y * y, x, y]
        })
        .collect();

    // outer tasks fix the leading coefficients, inner loops run the linear part
    let outer: Vec<[i64; 3]> = if degree == 2 {
        let mut v = Vec::with_capacity(values.len().pow(3));
        for &a in &values {
            for &b in &values {
                for &c in &values {
                    v.push([a, b, c]);
                }
            }
        }
        v
    } else {
        vec![[0, 0, 0]]
    };
    let total = outer.len() as u64;
    let done = AtomicU64::new(0);
    let examined = AtomicU64::new(0);
    let mut kept: Vec<[i64; 6]> = outer
        .par_iter()
        .map_init(
            || Screen::new(&monomials, &region.stages, prefix as usize),
            |screen, lead| {
                let mut out = Vec::new();
                for &d in &values {
                    for &e in &values {
                        for &f in &values {
                            let k = [lead[0], lead[1], lead[2], d, e, f];
                            if let Quick::Keep = screen.check(&k) {
                                out.push(k);
                            }
                        }
                    }
                }
                examined.fetch_add(width.pow(3), Ordering::Relaxed);
                progress(done.fetch_add(1, Ordering::Relaxed) + 1, total);
                out
            },
        )
        .flatten()
        .collect();
    kept.sort();
    let survivors = kept
        .iter()
        .map(halves)
        .filter(|f| verify_packing(&f.clone().into(), sector, prefix).is_pass())
        .collect();
    let candidates = examined.into_inner();
    Ok(SearchReport {
        sector: *sector,
        degree,
        coeff_bound,
        prefix,
        candidates,
        survivors,
        exhausted: candidates == total * width.pow(3),
    })
}

/// Quadratic coefficient search; survivors are prefix-certified candidates.
pub fn search_quadratic(sector: &Sector, coeff_bound: u64, prefix: u64) -> Result<SearchReport> {
    search(sector, 2, coeff_bound, prefix, &|_, _| {})
}

/// The same pipeline over linear candidates; no sector admits a linear packing.
pub fn linear_impossibility_check(sector: &Sector, coeff_bound: u64, prefix: u64) -> Result<SearchReport> {
    search(sector, 1, coeff_bound, prefix, &|_, _| {})
}
