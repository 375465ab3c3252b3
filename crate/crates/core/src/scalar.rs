//! Scalar policy: floating complex values, exact roots of unity, tolerances,
//! and complex-valued functions on a finite semigroup.

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::semigroup::{FiniteSemigroup, InvolutiveMorphism};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `0` or a root of unity `e^{2πi q/m}` held in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootValue {
    Zero,
    Root { q: u32, m: u32 },
}

impl RootValue {
    pub const ONE: RootValue = RootValue::Root { q: 0, m: 1 };

    /// Builds `e^{2πi q/m}` in canonical form; `q` is reduced mod `m`.
    pub fn root(q: u32, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadRoot { q, m });
        }
        Ok(Self::reduced(u64::from(q), u64::from(m)))
    }

    fn reduced(q: u64, m: u64) -> Self {
        let q = q % m;
        let g = q.gcd(&m);
        RootValue::Root {
            q: (q / g) as u32,
            m: (m / g) as u32,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, RootValue::Zero)
    }

    pub fn pow(self, k: u32) -> Self {
        match self {
            RootValue::Zero if k == 0 => RootValue::ONE,
            RootValue::Zero => RootValue::Zero,
            RootValue::Root { q, m } => Self::reduced(u64::from(q) * u64::from(k), u64::from(m)),
        }
    }

    /// Floating value; quarter turns are produced exactly.
    pub fn to_complex(self) -> Complex64 {
        match self {
            RootValue::Zero => ZERO,
            RootValue::Root { q, m } => {
                if (4 * q) % m == 0 {
                    match 4 * q / m {
                        0 => ONE,
                        1 => c(0.0, 1.0),
                        2 => c(-1.0, 0.0),
                        _ => c(0.0, -1.0),
                    }
                } else {
                    let (s, co) = (TAU * f64::from(q) / f64::from(m)).sin_cos();
                    c(co, s)
                }
            }
        }
    }
}

impl Mul for RootValue {
    type Output = RootValue;

    fn mul(self, rhs: RootValue) -> RootValue {
        match (self, rhs) {
            (RootValue::Root { q: a, m: b }, RootValue::Root { q: c, m: d }) => {
                let (a, b, c, d) = (u64::from(a), u64::from(b), u64::from(c), u64::from(d));
                Self::reduced(a * d + c * b, b * d)
            }
            _ => RootValue::Zero,
        }
    }
}

/// Zero first, then roots by increasing angle in `[0, 2π)`.
impl Ord for RootValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RootValue::Zero, RootValue::Zero) => Ordering::Equal,
            (RootValue::Zero, _) => Ordering::Less,
            (_, RootValue::Zero) => Ordering::Greater,
            (RootValue::Root { q: a, m: b }, RootValue::Root { q: c, m: d }) => {
                (u64::from(*a) * u64::from(*d)).cmp(&(u64::from(*c) * u64::from(*b)))
            }
        }
    }
}

impl PartialOrd for RootValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootValue::Zero => f.write_str("0"),
            RootValue::Root { q: 0, .. } => f.write_str("1"),
            RootValue::Root { q, m } => write!(f, "e(2πi·{q}/{m})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Threshold for "this residual is zero".
    pub eq_tol: f64,
    /// Two functions closer than this in sup norm are the same solution.
    pub dedup_tol: f64,
    /// Convergence and matching threshold for the numerical oracle.
    pub oracle_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eq_tol: 1e-9,
            dedup_tol: 1e-7,
            oracle_tol: 1e-6,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = |t: f64| t.is_finite() && t >= 0.0;
        if ok(self.eq_tol) && ok(self.dedup_tol) && ok(self.oracle_tol) {
            Ok(())
        } else {
            Err(Error::BadParams("tolerances must be finite and nonnegative".into()))
        }
    }
}

/// A complex-valued function on the elements `0..n` of a semigroup.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFunction {
    values: Vec<Complex64>,
}

impl ScalarFunction {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("function values"));
        }
        Ok(Self { values })
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self {
            values: values.iter().map(|&r| c(r, 0.0)).collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self::constant(n, ZERO)
    }

    pub fn constant(n: usize, value: Complex64) -> Self {
        Self {
            values: vec![value; n],
        }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        Self {
            values: (0..n).map(f).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Fails unless the function is defined on every element of `s`.
    pub fn check_on(&self, s: &FiniteSemigroup) -> Result<()> {
        if self.len() == s.order() {
            Ok(())
        } else {
            Err(Error::FunctionLength {
                len: self.len(),
                n: s.order(),
            })
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn compose(&self, sigma: &InvolutiveMorphism) -> Self {
        Self::from_fn(self.len(), |x| self.values[sigma.apply(x)])
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.sup_norm() <= tol
    }
}

impl Index<usize> for ScalarFunction {
    type Output = Complex64;

    fn index(&self, x: usize) -> &Complex64 {
        &self.values[x]
    }
}

impl Add for &ScalarFunction {
    type Output = ScalarFunction;

    fn add(self, rhs: &ScalarFunction) -> ScalarFunction {
        ScalarFunction::from_fn(self.len(), |x| self[x] + rhs[x])
    }
}

impl Sub for &ScalarFunction {
    type Output = ScalarFunction;

    fn sub(self, rhs: &ScalarFunction) -> ScalarFunction {
        ScalarFunction::from_fn(self.len(), |x| self[x] - rhs[x])
    }
}
