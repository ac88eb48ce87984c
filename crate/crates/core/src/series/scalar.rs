//! Coefficient fields: exact complex rationals and complex doubles.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Complex number with arbitrary-precision rational parts.
pub type Exact = Complex<BigRational>;
/// Double-precision complex number.
pub type Approx = Complex<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Approx,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Approx => f.write_str("approx"),
        }
    }
}

/// A coefficient field usable by [`Series`](super::Series).
///
/// Everything downstream is generic over this trait, so one computation is
/// pinned to one mode by its type.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;

    fn from_rational(re: &BigRational, im: &BigRational) -> Self;

    fn to_c64(&self) -> Approx;

    fn conj(&self) -> Self;

    /// Equality in exact mode; agreement within `tol * (1 + |other|)` in approx mode.
    fn close_to(&self, other: &Self, tol: f64) -> bool;

    /// `exp(2πi · turns)` if it is representable in this field.
    fn unit_from_turns(turns: &BigRational) -> Option<Self>;

    fn to_exact(&self) -> Option<Exact>;

    fn from_approx(c: Approx) -> Option<Self>;

    fn ratio(num: i64, den: i64) -> Self {
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        Self::from_rational(&r, &BigRational::zero())
    }

    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }
}

/// Reduce a rational number of turns into `[0, 1)`.
pub fn reduce_turns(turns: &BigRational) -> BigRational {
    let fl = turns.floor();
    turns - fl
}

impl Scalar for Exact {
    const MODE: Mode = Mode::Exact;

    fn from_i64(v: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    fn from_rational(re: &BigRational, im: &BigRational) -> Self {
        Complex::new(re.clone(), im.clone())
    }

    fn to_c64(&self) -> Approx {
        Complex::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn unit_from_turns(turns: &BigRational) -> Option<Self> {
        let quarter = reduce_turns(turns) * BigRational::from_integer(BigInt::from(4));
        if !quarter.is_integer() {
            return None;
        }
        let one = BigRational::one();
        let zero = BigRational::zero();
        Some(match quarter.to_integer().to_i64()? {
            0 => Complex::new(one, zero),
            1 => Complex::new(zero, one),
            2 => Complex::new(-one, zero),
            _ => Complex::new(zero, -one),
        })
    }

    fn to_exact(&self) -> Option<Exact> {
        Some(self.clone())
    }

    fn from_approx(_: Approx) -> Option<Self> {
        None
    }
}

impl Scalar for Approx {
    const MODE: Mode = Mode::Approx;

    fn from_i64(v: i64) -> Self {
        Complex::new(v as f64, 0.0)
    }

    fn from_rational(re: &BigRational, im: &BigRational) -> Self {
        Complex::new(re.to_f64().unwrap_or(f64::NAN), im.to_f64().unwrap_or(f64::NAN))
    }

    fn to_c64(&self) -> Approx {
        *self
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol * (1.0 + other.norm())
    }

    fn unit_from_turns(turns: &BigRational) -> Option<Self> {
        let t = reduce_turns(turns).to_f64()?;
        Some(Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * t))
    }

    fn to_exact(&self) -> Option<Exact> {
        None
    }

    fn from_approx(c: Approx) -> Option<Self> {
        Some(c)
    }
}

/// Parse `"p/q"`, `"p"` or a decimal literal into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Ok(p) = text.parse::<BigInt>() {
        return Some(BigRational::from_integer(p));
    }
    // Decimal literals are read exactly, digit by digit.
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if int_part.chars().chain(frac_part.chars()).any(|c| !c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(digits, den);
    Some(if neg { -r } else { r })
}

/// Render a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact rational from an `f64`, without rounding.
pub fn rational_from_f64(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(Exact::unit_from_turns(&q(1, 4)), Some(Complex::new(q(0, 1), q(1, 1))));
        assert_eq!(Exact::unit_from_turns(&q(-1, 2)), Some(Complex::new(q(-1, 1), q(0, 1))));
        assert_eq!(Exact::unit_from_turns(&q(1, 3)), None);
        let a = Approx::unit_from_turns(&q(1, 3)).unwrap();
        assert!((a.arg() - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6"), Some(q(1, 2)));
        assert_eq!(parse_rational("-7"), Some(q(-7, 1)));
        assert_eq!(parse_rational("0.25"), Some(q(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(q(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&q(4, 6)), "2/3");
        assert_eq!(format_rational(&q(4, 2)), "2");
    }

    #[test]
    fn exact_division_via_conjugate() {
        let a = Exact::new(q(1, 1), q(2, 1));
        let b = Exact::new(q(3, 1), q(-1, 1));
        let c = a.clone() / b.clone();
        assert_eq!(c * b, a);
    }
}
