//! Bivariate polynomials of degree at most two and period-m quasi-polynomials,
//! all with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sector::LatticePoint;
use crate::transforms::LinearMap2;

/// JSON keys for the monomials `x^2, xy, y^2, x, y, 1`, in canonical order.
pub const MONOMIAL_KEYS: [&str; 6] = ["x2", "xy", "y2", "x", "y", "1"];

/// `x2*x^2 + xy*x*y + y2*y^2 + x*x + y*y + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadPoly {
    pub x2: Rational,
    pub xy: Rational,
    pub y2: Rational,
    pub x: Rational,
    pub y: Rational,
    pub constant: Rational,
}

impl QuadPoly {
    /// Coefficients in `MONOMIAL_KEYS` order.
    pub fn new(coeffs: [Rational; 6]) -> Self {
        let [x2, xy, y2, x, y, constant] = coeffs;
        QuadPoly { x2, xy, y2, x, y, constant }
    }

    pub fn zero() -> Self {
        QuadPoly::new(std::array::from_fn(|_| Rational::zero()))
    }

    /// Builds from `(numerator, denominator)` pairs; handy for literals.
    pub fn from_fracs(coeffs: [(i64, i64); 6]) -> Self {
        QuadPoly::new(coeffs.map(|(n, d)| Rational::frac(n, d)))
    }

    pub fn coefficients(&self) -> [&Rational; 6] {
        [&self.x2, &self.xy, &self.y2, &self.x, &self.y, &self.constant]
    }

    pub fn degree(&self) -> Option<u32> {
        let c = self.coefficients();
        if c[..3].iter().any(|q| !q.is_zero()) {
            Some(2)
        } else if c[3..5].iter().any(|q| !q.is_zero()) {
            Some(1)
        } else if !c[5].is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn eval_pair(&self, x: &Rational, y: &Rational) -> Rational {
        let quad = &self.x2 * &(x * x) + &self.xy * &(x * y) + &self.y2 * &(y * y);
        quad + &self.x * x + &self.y * y + &self.constant
    }

    pub fn eval(&self, p: &LatticePoint) -> Rational {
        let x = Rational::integer(p.x.clone());
        let y = Rational::integer(p.y.clone());
        self.eval_pair(&x, &y)
    }

    /// `self + other`.
    pub fn add(&self, other: &QuadPoly) -> QuadPoly {
        let (a, b) = (self.coefficients(), other.coefficients());
        QuadPoly::new(std::array::from_fn(|i| a[i] + b[i]))
    }

    pub fn scale(&self, k: &Rational) -> QuadPoly {
        QuadPoly::new(self.coefficients().map(|c| c * k))
    }

    /// The polynomial `(x, y) -> self(m(x, y))`, expanded.
    pub fn conjugate(&self, m: &LinearMap2) -> QuadPoly {
        let [a, b, c, d] = m.entries().map(|e| Rational::integer(e.clone()));
        let two = Rational::integer(2);
        // Images of the monomials x'^2, x'y', y'^2, x', y' in the (x^2, xy, y^2, x, y) basis.
        let xx = [&a * &a, &(&two * &a) * &b, &b * &b];
        let xy = [&a * &c, &(&a * &d) + &(&b * &c), &b * &d];
        let yy = [&c * &c, &(&two * &c) * &d, &d * &d];
        let quad: [Rational; 3] =
            std::array::from_fn(|i| &(&self.x2 * &xx[i]) + &(&self.xy * &xy[i]) + &self.y2 * &yy[i]);
        let [q0, q1, q2] = quad;
        QuadPoly::new([
            q0,
            q1,
            q2,
            &(&self.x * &a) + &(&self.y * &c),
            &(&self.x * &b) + &(&self.y * &d),
            self.constant.clone(),
        ])
    }

    pub fn to_json_value(&self) -> Value {
        let mut map = Map::new();
        for (key, coeff) in MONOMIAL_KEYS.iter().zip(self.coefficients()) {
            if !coeff.is_zero() {
                map.insert((*key).to_string(), Value::String(coeff.to_string()));
            }
        }
        Value::Object(map)
    }

    fn from_json_value(value: &Value) -> Result<Self> {
        let map = value.as_object().ok_or_else(|| Error::Format("expected a JSON object".into()))?;
        let mut coeffs: [Rational; 6] = std::array::from_fn(|_| Rational::zero());
        for (key, v) in map {
            let slot = MONOMIAL_KEYS
                .iter()
                .position(|k| k == key)
                .ok_or_else(|| Error::Format(format!("unknown monomial key {key:?}")))?;
            let text = v.as_str().ok_or_else(|| Error::Format(format!("coefficient {key:?} must be a string")))?;
            coeffs[slot] = text.parse().map_err(|_| Error::Format(format!("coefficient {key:?}: {text:?}")))?;
        }
        Ok(QuadPoly::new(coeffs))
    }

    /// Clears denominators for fast exact evaluation.
    pub fn scaled(&self) -> ScaledPoly {
        let denom = self
            .coefficients()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = self.coefficients().map(|c| c.numer() * (&denom / c.denom()));
        ScaledPoly { coeffs, denom }
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 6] = ["x^2", "xy", "y^2", "x", "y", ""];
        let mut first = true;
        for (name, c) in NAMES.iter().zip(self.coefficients()) {
            if c.is_zero() {
                continue;
            }
            let magnitude = if c.is_negative() { -c } else { c.clone() };
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if name.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude == Rational::one() {
                f.write_str(name)?;
            } else {
                write!(f, "{magnitude} {name}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A polynomial with integer coefficients over a common positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPoly {
    coeffs: [BigInt; 6],
    denom: BigInt,
}

impl ScaledPoly {
    /// `Ok(value)` when the value at `(x, y)` is an integer, otherwise the exact fraction.
    pub fn eval_integer(&self, x: &BigInt, y: &BigInt) -> std::result::Result<BigInt, Rational> {
        let [c20, c11, c02, c10, c01, c00] = &self.coeffs;
        let numer = x * (c20 * x + c11 * y + c10) + y * (c02 * y + c01) + c00;
        let (q, rem) = numer.div_rem(&self.denom);
        if rem.is_zero() {
            Ok(q)
        } else {
            Err(Rational::new(numer, self.denom.clone()).expect("positive denominator"))
        }
    }
}

/// Period-`m` quasi-polynomial: branch `l` applies where `x = l (mod m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiPoly {
    branches: Vec<QuadPoly>,
}

impl QuasiPoly {
    pub fn new(branches: Vec<QuadPoly>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::Format("a quasi-polynomial needs at least one branch".into()));
        }
        Ok(QuasiPoly { branches })
    }

    pub fn period(&self) -> usize {
        self.branches.len()
    }

    pub fn branches(&self) -> &[QuadPoly] {
        &self.branches
    }

    pub fn branch_index(&self, p: &LatticePoint) -> usize {
        (&p.x % self.branches.len()).to_usize().expect("residue fits in usize")
    }

    pub fn eval(&self, p: &LatticePoint) -> Rational {
        self.branches[self.branch_index(p)].eval(p)
    }

    pub fn to_json_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("period".into(), Value::from(self.period()));
        map.insert("branches".into(), Value::Array(self.branches.iter().map(QuadPoly::to_json_value).collect()));
        Value::Object(map)
    }
}

/// Either polynomial shape; what the serializer and the verifier accept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PolyForm {
    Quad(QuadPoly),
    Quasi(QuasiPoly),
}

impl PolyForm {
    pub fn eval(&self, p: &LatticePoint) -> Rational {
        match self {
            PolyForm::Quad(f) => f.eval(p),
            PolyForm::Quasi(h) => h.eval(p),
        }
    }

    pub fn compile(&self) -> CompiledForm {
        match self {
            PolyForm::Quad(f) => CompiledForm { branches: vec![f.scaled()] },
            PolyForm::Quasi(h) => CompiledForm { branches: h.branches.iter().map(QuadPoly::scaled).collect() },
        }
    }

    pub fn to_json_value(&self) -> Value {
        match self {
            PolyForm::Quad(f) => f.to_json_value(),
            PolyForm::Quasi(h) => h.to_json_value(),
        }
    }
}

impl From<QuadPoly> for PolyForm {
    fn from(f: QuadPoly) -> Self {
        PolyForm::Quad(f)
    }
}

impl From<QuasiPoly> for PolyForm {
    fn from(h: QuasiPoly) -> Self {
        PolyForm::Quasi(h)
    }
}

/// Denominator-cleared branches of a `PolyForm`.
#[derive(Clone, Debug)]
pub struct CompiledForm {
    branches: Vec<ScaledPoly>,
}

impl CompiledForm {
    pub fn eval_integer(&self, p: &LatticePoint) -> std::result::Result<BigInt, Rational> {
        let branch = if self.branches.len() == 1 {
            &self.branches[0]
        } else {
            &self.branches[(&p.x % self.branches.len()).to_usize().expect("residue fits in usize")]
        };
        branch.eval_integer(&BigInt::from(p.x.clone()), &BigInt::from(p.y.clone()))
    }
}

/// Single-line canonical JSON.
pub fn serialize(form: &PolyForm) -> String {
    form.to_json_value().to_string()
}

pub fn deserialize(text: &str) -> Result<PolyForm> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let map = value.as_object().ok_or_else(|| Error::Format("expected a JSON object".into()))?;
    if !map.contains_key("period") && !map.contains_key("branches") {
        return QuadPoly::from_json_value(&value).map(PolyForm::Quad);
    }
    if map.len() != 2 {
        return Err(Error::Format("quasi-polynomial takes exactly \"period\" and \"branches\"".into()));
    }
    let period = map
        .get("period")
        .and_then(Value::as_u64)
        .filter(|&m| m >= 1)
        .ok_or_else(|| Error::Format("period must be a positive integer".into()))?;
    let branches = map
        .get("branches")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("branches must be an array".into()))?;
    if branches.len() as u64 != period {
        return Err(Error::Format(format!("period {period} but {} branches", branches.len())));
    }
    let branches = branches.iter().map(QuadPoly::from_json_value).collect::<Result<Vec<_>>>()?;
    QuasiPoly::new(branches).map(PolyForm::Quasi)
}
