//! Scalars and the built-in idempotent semirings.
//!
//! A [`Scalar`] is either the semiring zero ([`Scalar::Bottom`]) or a finite
//! 64-bit real. Which real plays which role is decided by a [`SemiringId`]:
//!
//! | id           | ⊕   | ⊙   | zero | one  |
//! |--------------|-----|-----|------|------|
//! | `maxplus`    | max | +   | −∞   | 0    |
//! | `minplus`    | min | +   | +∞   | 0    |
//! | `maxmin`     | max | min | −∞   | +∞   |
//! | `boolean`    | or  | and | 0    | 1    |
//! | `intmaxplus` | max | +   | −∞   | 0    |
//!
//! The zero is never stored as an IEEE infinity. The one exception to "finite"
//! is the unit of `maxmin`, which is `Finite(+∞)`: `min` and `max` never turn an
//! infinity into NaN, so this is safe.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest magnitude an `intmaxplus` value may take; every sum of two such
/// values is still an exactly representable integer.
pub const INT_LIMIT: f64 = 4_503_599_627_370_496.0; // 2^52

/// An element of an idempotent semiring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    /// The semiring zero 𝟘.
    Bottom,
    Finite(f64),
}

impl Scalar {
    pub fn finite(v: f64) -> Self {
        Scalar::Finite(v)
    }

    pub fn is_bottom(self) -> bool {
        matches!(self, Scalar::Bottom)
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Scalar::Bottom => None,
            Scalar::Finite(v) => Some(v),
        }
    }

    /// The finite value; panics on `Bottom`.
    pub fn unwrap_finite(self) -> f64 {
        match self {
            Scalar::Finite(v) => v,
            Scalar::Bottom => panic!("unwrap_finite on Bottom"),
        }
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Finite(v)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Finite(v as f64)
    }
}

/// Selector for one of the built-in semirings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiringId {
    MaxPlus,
    MinPlus,
    MaxMin,
    Boolean,
    IntMaxPlus,
}

impl SemiringId {
    pub const ALL: [SemiringId; 5] = [
        SemiringId::MaxPlus,
        SemiringId::MinPlus,
        SemiringId::MaxMin,
        SemiringId::Boolean,
        SemiringId::IntMaxPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemiringId::MaxPlus => "maxplus",
            SemiringId::MinPlus => "minplus",
            SemiringId::MaxMin => "maxmin",
            SemiringId::Boolean => "boolean",
            SemiringId::IntMaxPlus => "intmaxplus",
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::Bottom
    }

    pub fn one(self) -> Scalar {
        match self {
            SemiringId::MaxPlus | SemiringId::MinPlus | SemiringId::IntMaxPlus => {
                Scalar::Finite(0.0)
            }
            SemiringId::MaxMin => Scalar::Finite(f64::INFINITY),
            SemiringId::Boolean => Scalar::Finite(1.0),
        }
    }

    /// Every nonzero element has a ⊙-inverse.
    pub fn is_semifield(self) -> bool {
        matches!(
            self,
            SemiringId::MaxPlus | SemiringId::MinPlus | SemiringId::IntMaxPlus
        )
    }

    /// Arithmetic on finite values is exact (integer-valued storage).
    pub fn is_exact(self) -> bool {
        matches!(self, SemiringId::IntMaxPlus | SemiringId::Boolean)
    }

    /// Comparison tolerance used by internal consistency gates: zero on exact
    /// semirings, `1e-9` relative on the float ones.
    pub fn tolerance(self) -> f64 {
        if self.is_exact() {
            0.0
        } else {
            1e-9
        }
    }

    /// Checks that `a` is an element of this semiring.
    pub fn validate(self, a: Scalar) -> Result<Scalar> {
        let v = match a {
            Scalar::Bottom => return Ok(a),
            Scalar::Finite(v) => v,
        };
        let ok = match self {
            SemiringId::MaxPlus | SemiringId::MinPlus => v.is_finite(),
            SemiringId::MaxMin => !v.is_nan() && v != f64::NEG_INFINITY,
            SemiringId::Boolean => v == 1.0,
            SemiringId::IntMaxPlus => v.is_finite() && v.fract() == 0.0 && v.abs() <= INT_LIMIT,
        };
        if ok {
            Ok(a)
        } else {
            Err(Error::InvalidScalar {
                semiring: self,
                value: v.to_string(),
            })
        }
    }

    /// a ⊕ b.
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Bottom, x) | (x, Scalar::Bottom) => x,
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(match self {
                SemiringId::MinPlus => x.min(y),
                _ => x.max(y),
            }),
        }
    }

    /// a ⊙ b.
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Bottom, _) | (_, Scalar::Bottom) => Scalar::Bottom,
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(match self {
                SemiringId::MaxPlus | SemiringId::MinPlus | SemiringId::IntMaxPlus => x + y,
                SemiringId::MaxMin => x.min(y),
                SemiringId::Boolean => 1.0,
            }),
        }
    }

    /// The standard order: a ≼ b iff a ⊕ b = b.
    pub fn leq(self, a: Scalar, b: Scalar) -> bool {
        self.add(a, b) == b
    }

    /// Total comparison in the standard order.
    pub fn compare(self, a: Scalar, b: Scalar) -> Ordering {
        match (self.leq(a, b), self.leq(b, a)) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }

    /// Multiplicative inverse in a semifield.
    pub fn inv(self, a: Scalar) -> Result<Scalar> {
        if !self.is_semifield() {
            return Err(Error::NotASemifield(self));
        }
        match a {
            Scalar::Bottom => Err(Error::ZeroNotInvertible),
            Scalar::Finite(v) => Ok(Scalar::Finite(-v)),
        }
    }

    /// The n-th ⊙-root: the `y` with `y ⊙ … ⊙ y` (n factors) equal to `a`.
    pub fn nth_root(self, a: Scalar, n: u32) -> Result<Scalar> {
        if n == 0 {
            return Err(Error::Parse("root order must be positive".into()));
        }
        let not_closed = |a: Scalar| Error::NotAlgebraicallyClosed {
            semiring: self,
            value: format!("{a:?}"),
            n,
        };
        match (self, a) {
            (SemiringId::MaxPlus | SemiringId::MinPlus | SemiringId::IntMaxPlus, Scalar::Bottom) => {
                Ok(Scalar::Bottom)
            }
            (SemiringId::MaxPlus | SemiringId::MinPlus, Scalar::Finite(v)) => {
                Ok(Scalar::Finite(v / n as f64))
            }
            (SemiringId::IntMaxPlus, Scalar::Finite(v)) => {
                let r = v / n as f64;
                if r.fract() == 0.0 {
                    Ok(Scalar::Finite(r))
                } else {
                    Err(not_closed(a))
                }
            }
            _ => Err(not_closed(a)),
        }
    }

    /// n-fold product `a ⊙ … ⊙ a`; `pow(a, 0)` is 𝟙.
    pub fn pow(self, a: Scalar, n: u32) -> Scalar {
        (0..n).fold(self.one(), |acc, _| self.mul(acc, a))
    }

    /// Least upper bound of a finite set; the empty set gives 𝟘.
    pub fn sup_set<I: IntoIterator<Item = Scalar>>(self, xs: I) -> Scalar {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    /// Greatest lower bound of a nonempty finite set.
    pub fn inf_set<I: IntoIterator<Item = Scalar>>(self, xs: I) -> Result<Scalar> {
        xs.into_iter()
            .reduce(|a, b| self.meet(a, b))
            .ok_or(Error::EmptySet)
    }

    /// a ∧ b in the standard order.
    pub fn meet(self, a: Scalar, b: Scalar) -> Scalar {
        if self.leq(a, b) {
            a
        } else {
            b
        }
    }

    /// Equality up to [`SemiringId::tolerance`], relative to the magnitudes.
    pub fn approx_eq(self, a: Scalar, b: Scalar) -> bool {
        match (a, b) {
            (Scalar::Finite(x), Scalar::Finite(y)) => {
                if x == y {
                    return true;
                }
                let tol = self.tolerance();
                tol > 0.0 && (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs()))
            }
            _ => a == b,
        }
    }

    /// Parses a scalar token: a decimal literal, or `-inf`/`inf` as described
    /// in the module docs.
    pub fn parse_scalar(self, token: &str) -> Result<Scalar> {
        let t = token.trim();
        let bad = || Error::Parse(format!("invalid {} scalar {t:?}", self.name()));
        let lower = t.to_ascii_lowercase();
        let neg_inf = matches!(lower.as_str(), "-inf" | "-infinity" | "bottom");
        let pos_inf = matches!(lower.as_str(), "inf" | "+inf" | "infinity" | "+infinity");
        let s = match self {
            SemiringId::MaxPlus | SemiringId::IntMaxPlus if neg_inf => Scalar::Bottom,
            SemiringId::MinPlus if pos_inf => Scalar::Bottom,
            SemiringId::MaxMin if neg_inf => Scalar::Bottom,
            SemiringId::MaxMin if pos_inf => Scalar::Finite(f64::INFINITY),
            SemiringId::Boolean => match lower.as_str() {
                "0" | "false" | "-inf" => Scalar::Bottom,
                "1" | "true" => Scalar::Finite(1.0),
                _ => return Err(bad()),
            },
            _ if neg_inf || pos_inf => return Err(bad()),
            _ => Scalar::Finite(t.parse::<f64>().map_err(|_| bad())?),
        };
        self.validate(s).map_err(|_| bad())
    }

    pub fn format_scalar(self, a: Scalar) -> String {
        match (self, a) {
            (SemiringId::Boolean, Scalar::Bottom) => "0".into(),
            (SemiringId::Boolean, Scalar::Finite(_)) => "1".into(),
            (SemiringId::MinPlus, Scalar::Bottom) => "inf".into(),
            (_, Scalar::Bottom) => "-inf".into(),
            (_, Scalar::Finite(v)) => format_real(v),
        }
    }
}

impl fmt::Display for SemiringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SemiringId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown semiring {s:?}")))
    }
}

/// Formats a real with 12 significant digits, trailing zeros trimmed.
pub fn format_real(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    let s = if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        let s = format!("{v:.11e}");
        let (mantissa, e) = s.split_once('e').unwrap_or((&s, "0"));
        return format!("{}e{}", trim_zeros(mantissa), e);
    };
    let t = trim_zeros(&s);
    if t == "-0" {
        "0".into()
    } else {
        t
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// The dequantization parameter `h > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeqParams {
    h: f64,
}

impl DeqParams {
    pub fn new(h: f64) -> Result<Self> {
        if h > 0.0 && h.is_finite() {
            Ok(DeqParams { h })
        } else {
            Err(Error::UnstableParameters(format!("h must be > 0, got {h}")))
        }
    }

    pub fn h(self) -> f64 {
        self.h
    }
}

/// The deformed addition `u ⊕_h v = h ln(e^{u/h} + e^{v/h})`, evaluated as
/// `max(u, v) + h ln(1 + e^{-|u-v|/h})` so that it never overflows.
pub fn deq_add(u: f64, v: f64, p: DeqParams) -> f64 {
    let h = p.h;
    let m = u.max(v);
    m + h * (-(u - v).abs() / h).exp().ln_1p()
}

/// The change of variables `x ↦ h ln x` from the nonnegative reals to the
/// max-plus scalars; `0` maps to `Bottom` by continuity.
pub fn dequantize(x: f64, p: DeqParams) -> Result<Scalar> {
    if x < 0.0 || x.is_nan() {
        return Err(Error::NonPositiveInput(x, 0));
    }
    if x == 0.0 {
        Ok(Scalar::Bottom)
    } else {
        Ok(Scalar::Finite(p.h * x.ln()))
    }
}

/// Inverse of [`dequantize`]: `u ↦ e^{u/h}`, `Bottom ↦ 0`.
pub fn quantize(a: Scalar, p: DeqParams) -> f64 {
    match a {
        Scalar::Bottom => 0.0,
        Scalar::Finite(u) => (u / p.h).exp(),
    }
}
