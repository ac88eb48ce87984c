//! Truncated formal power series over a [`Scalar`] field.
//!
//! A series of order `N` stores `c_0..=c_N`. Binary operations require equal
//! orders; nothing is silently truncated. The only order-changing operations
//! are [`Series::div_z`], [`Series::mul_z`] and [`Series::truncate`].

mod boxed;
pub mod scalar;

use thiserror::Error;

pub use boxed::{boxed_convolution, boxed_convolution_checked, cf_weight, BlockIndex};
pub use scalar::{Approx, Exact, Mode, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("composition needs an inner series with zero constant term")]
    InnerConstantTerm,
    #[error("compositional inverse needs c0 = 0 and c1 != 0")]
    NotInvertible,
    #[error("reciprocal needs a nonzero constant term")]
    ZeroConstantTerm,
    #[error("dividing by z needs a zero constant term")]
    NotDivisibleByZ,
    #[error("series needs at least {needed} tracked coefficients, has order {order}")]
    OrderTooSmall { needed: usize, order: usize },
    #[error("coefficient index {index} exceeds order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("expected a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("empty coefficient list")]
    Empty,
    #[error(transparent)]
    Partition(#[from] crate::partitions::PartitionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Formal power series `c_0 + c_1 z + ... + c_N z^N (mod z^{N+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Series<S> {
    pub fn from_coeffs(coeffs: Vec<S>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(Series { coeffs })
    }

    /// Builds a series of the given order from a prefix, padding with zeros.
    pub fn from_prefix(prefix: &[S], order: usize) -> Self {
        let mut coeffs: Vec<S> = prefix.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, S::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![S::zero(); order + 1] }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    /// The series `z` (or `0` at order zero).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = S::one();
        }
        s
    }

    /// `z / (1 - z)`, i.e. all coefficients from index 1 equal to one.
    pub fn geometric(order: usize) -> Self {
        let mut s = Self::zero(order);
        for c in s.coeffs.iter_mut().skip(1) {
            *c = S::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, index: usize) -> Result<&S, SeriesError> {
        self.coeffs
            .get(index)
            .ok_or(SeriesError::IndexOutOfRange { index, order: self.order() })
    }

    pub fn constant_term(&self) -> &S {
        &self.coeffs[0]
    }

    pub fn set_coeff(&mut self, index: usize, value: S) -> Result<(), SeriesError> {
        let order = self.order();
        let slot = self
            .coeffs
            .get_mut(index)
            .ok_or(SeriesError::IndexOutOfRange { index, order })?;
        *slot = value;
        Ok(())
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self, SeriesError> {
        match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Series { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Series { coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, factor: &S) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect() }
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    /// `self + c` for a scalar `c`.
    pub fn add_constant(&self, c: &S) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].clone() + c.clone();
        out
    }

    pub fn pow(&self, exponent: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exponent {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Drops the coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::OrderTooSmall { needed: order, order: self.order() });
        }
        Ok(Series { coeffs: self.coeffs[..=order].to_vec() })
    }

    /// `f(z) / z`; the result has order `N - 1`.
    pub fn div_z(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotDivisibleByZ);
        }
        if self.order() == 0 {
            return Err(SeriesError::OrderTooSmall { needed: 1, order: 0 });
        }
        Ok(Series { coeffs: self.coeffs[1..].to_vec() })
    }

    /// `z · f(z)`; the result has order `N + 1`.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// `self ∘ inner`, evaluated by Horner's rule in the truncated ring.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::InnerConstantTerm);
        }
        let n = self.order();
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul_unchecked(inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// The substitutional inverse `g` with `f∘g = g∘f = z`.
    ///
    /// Solved one coefficient at a time: with `g_1..g_{n-1}` fixed, the
    /// coefficient of `z^n` in `f∘g` is `f_1 g_n` plus a known remainder.
    pub fn invert_composition(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let f1_inv = S::one() / self.coeffs[1].clone();
        let mut g = Self::zero(n);
        g.coeffs[1] = f1_inv.clone();
        for k in 2..=n {
            let h = self.compose(&g)?;
            g.coeffs[k] = -(h.coeffs[k].clone() * f1_inv.clone());
        }
        Ok(g)
    }

    /// Multiplicative inverse.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let n = self.order();
        let c0_inv = S::one() / self.coeffs[0].clone();
        let mut g = Self::zero(n);
        g.coeffs[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = S::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * g.coeffs[k - j].clone();
            }
            g.coeffs[k] = -(acc * c0_inv.clone());
        }
        Ok(g)
    }

    /// `self / other`.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.mul(&other.reciprocal()?)
    }

    /// Coefficientwise closeness; see [`Scalar::close_to`].
    pub fn close_to(&self, other: &Self, tol: f64) -> bool {
        self.order() == other.order()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.close_to(b, tol))
    }

    /// Largest coefficient gap, in absolute value.
    pub fn max_gap(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a.to_c64() - b.to_c64()).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_approx(&self) -> Series<Approx> {
        Series { coeffs: self.coeffs.iter().map(Scalar::to_c64).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn ex(p: i64) -> Exact {
        Exact::from_i64(p)
    }

    fn exs(cs: &[i64]) -> Series<Exact> {
        Series::from_coeffs(cs.iter().map(|&c| ex(c)).collect()).unwrap()
    }

    fn rat(re: (i64, i64), im: (i64, i64)) -> Exact {
        Exact::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    #[test]
    fn ring_operations() {
        assert_eq!(exs(&[0, 1, 0]).add(&exs(&[0, 0, 1])).unwrap(), exs(&[0, 1, 1]));
        assert_eq!(exs(&[1, 1, 0]).mul(&exs(&[1, -1, 0])).unwrap(), exs(&[1, 0, -1]));
        assert_eq!(exs(&[0, 0, 0, 1]).mul(&exs(&[0, 1, 0, 0])).unwrap(), Series::zero(3));
        assert_eq!(
            exs(&[0, 1]).add(&exs(&[0, 1, 2])),
            Err(SeriesError::OrderMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn composition_basics() {
        let f = exs(&[2, 3, -1, 5]);
        assert_eq!(f.compose(&Series::identity(3)).unwrap(), f);
        // (z/(1-z)) ∘ (λz) = λz + λ²z² + λ³z³
        let lambda = rat((2, 3), (1, 1));
        let inner = Series::identity(3).scale(&lambda);
        let got = Series::<Exact>::geometric(3).compose(&inner).unwrap();
        let want = Series::from_coeffs(vec![
            ex(0),
            lambda.clone(),
            lambda.clone() * lambda.clone(),
            lambda.clone() * lambda.clone() * lambda.clone(),
        ])
        .unwrap();
        assert_eq!(got, want);
        assert_eq!(f.compose(&exs(&[1, 1, 0, 0])), Err(SeriesError::InnerConstantTerm));
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(Series::<Exact>::identity(5).invert_composition().unwrap(), Series::identity(5));
        // z + z² inverts to the signed Catalan series.
        let r = exs(&[0, 1, 1, 0, 0, 0]);
        assert_eq!(r.invert_composition().unwrap(), exs(&[0, 1, -1, 2, -5, 14]));
        // αz + βz²  ->  z/α − (β/α³) z²
        let a = rat((3, 1), (1, 2));
        let b = rat((-1, 4), (2, 1));
        let f = Series::from_coeffs(vec![ex(0), a.clone(), b.clone()]).unwrap();
        let g = f.invert_composition().unwrap();
        assert_eq!(g.coeff(1).unwrap(), &(ex(1) / a.clone()));
        assert_eq!(g.coeff(2).unwrap(), &(-(b / (a.clone() * a.clone() * a))));
        assert_eq!(exs(&[1, 1]).invert_composition(), Err(SeriesError::NotInvertible));
        assert_eq!(exs(&[0, 0, 1]).invert_composition(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(Series::<Exact>::one(4).reciprocal().unwrap(), Series::one(4));
        assert_eq!(exs(&[1, -1, 0, 0]).reciprocal().unwrap(), exs(&[1, 1, 1, 1]));
        assert_eq!(exs(&[0, 1]).reciprocal(), Err(SeriesError::ZeroConstantTerm));
    }

    #[test]
    fn z_shifts() {
        let f = exs(&[0, 4, 5]);
        assert_eq!(f.div_z().unwrap(), exs(&[4, 5]));
        assert_eq!(f.div_z().unwrap().mul_z(), f);
        assert_eq!(exs(&[1, 2]).div_z(), Err(SeriesError::NotDivisibleByZ));
    }

    fn small_exact() -> impl Strategy<Value = Exact> {
        (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| rat((a, b), (c, d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn inverse_and_reciprocal_are_exact(
            head in small_exact().prop_filter("nonzero", |c| !num_traits::Zero::is_zero(c)),
            tail in proptest::collection::vec(small_exact(), 6),
        ) {
            let mut cs = vec![ex(0), head.clone()];
            cs.extend(tail.iter().cloned());
            let f = Series::from_coeffs(cs).unwrap();
            let g = f.invert_composition().unwrap();
            prop_assert_eq!(g.compose(&f).unwrap(), Series::identity(7));
            prop_assert_eq!(f.compose(&g).unwrap(), Series::identity(7));

            let mut cs = vec![head];
            cs.extend(tail);
            let u = Series::from_coeffs(cs).unwrap();
            prop_assert_eq!(u.mul(&u.reciprocal().unwrap()).unwrap(), Series::one(6));
        }
    }
}
