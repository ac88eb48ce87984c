//! Probability measures on the unit circle, their multiplicative
//! convolutions, infinitely divisible laws and the limit experiments.
//!
//! Convolution outputs are truncated moment sequences. They are not
//! certified to be measures; [`toeplitz_psd_check`] is the sanity gate.

mod centering;
mod convolution;
mod generators;
mod limit;
mod toeplitz;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::series::scalar::{format_rational, reduce_turns};
use crate::series::{Approx, Exact, Scalar, Series, SeriesError};
use crate::transforms::TransformError;

pub use centering::{center_array, CenteredArrayRow};
pub use convolution::{
    boolean_convolve, cfree_multiplicative_convolve, cfree_power, free_multiplicative_convolve,
    sigma_of_pair,
};
pub use generators::{
    herglotz_exp, idiv_boolean_measure, idiv_free_measure, pair_from_sigma, root_generator,
    semigroup_pair, series_exp, series_log, series_powf, IdGenerator,
};
pub use limit::{limit_experiment, LimitConfig, LimitReport, LimitRow, LimitStep};
pub use toeplitz::{toeplitz_psd_check, ToeplitzReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("invalid measure: {0}")]
    Invalid(String),
    #[error("measure provides {have} moments, {need} needed")]
    TooFewMoments { have: usize, need: usize },
    #[error("not representable exactly: {0}")]
    NotExact(String),
    #[error("ψ-laws must both be Haar or both have nonzero first moment")]
    MixedHaar,
    #[error("ψ-law has zero first moment but is not Haar")]
    DegenerateNu,
    #[error("constant term {0} lies on the branch cut of the principal logarithm")]
    BranchCut(String),
    #[error("{0}")]
    Domain(String),
}

/// A point mass at `exp(2πi · turns)` with the given weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Atom {
    pub turns: BigRational,
    pub weight: BigRational,
}

impl Atom {
    pub fn new(turns: BigRational, weight: BigRational) -> Self {
        Atom { turns, weight }
    }

    /// Position on the circle, in approx mode.
    pub fn point(&self) -> Approx {
        Approx::unit_from_turns(&self.turns).expect("approx units always exist")
    }
}

/// A stored moment sequence `m_1, m_2, ...` in one arithmetic mode.
#[derive(Clone, Debug, PartialEq)]
pub enum MomentValues {
    Exact(Vec<Exact>),
    Approx(Vec<Approx>),
}

impl MomentValues {
    pub fn from_scalars<S: Scalar>(values: &[S]) -> Self {
        match values.iter().map(Scalar::to_exact).collect::<Option<Vec<_>>>() {
            Some(exact) => MomentValues::Exact(exact),
            None => MomentValues::Approx(values.iter().map(Scalar::to_c64).collect()),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            MomentValues::Exact(v) => v.len(),
            MomentValues::Approx(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get<S: Scalar>(&self, k: usize) -> Result<S, MeasureError> {
        match self {
            MomentValues::Exact(v) => Ok(S::from_rational(&v[k].re, &v[k].im)),
            MomentValues::Approx(v) => S::from_approx(v[k])
                .ok_or_else(|| MeasureError::NotExact("floating-point moment data".into())),
        }
    }
}

/// A probability measure on the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub enum CircleMeasure {
    Atomic(Vec<Atom>),
    Haar,
    /// The Poisson kernel measure with moments `α^n`, `|α| < 1`.
    Poisson(Exact),
    Moments(MomentValues),
}

impl CircleMeasure {
    /// Validates weights, reduces angles into `[0, 1)` and merges atoms at
    /// the same point.
    pub fn atomic(atoms: Vec<Atom>) -> Result<Self, MeasureError> {
        let merged = normalize_atoms(atoms)?;
        let total: BigRational = merged.iter().map(|a| a.weight.clone()).sum();
        if !total.is_one() {
            return Err(MeasureError::Invalid(format!("weights sum to {}", format_rational(&total))));
        }
        Ok(CircleMeasure::Atomic(merged))
    }

    pub fn point_mass(turns: BigRational) -> Self {
        CircleMeasure::Atomic(vec![Atom::new(reduce_turns(&turns), BigRational::one())])
    }

    /// `δ_1`.
    pub fn unit() -> Self {
        Self::point_mass(BigRational::zero())
    }

    pub fn poisson(alpha: Exact) -> Result<Self, MeasureError> {
        if alpha.norm_sqr() >= BigRational::one() {
            return Err(MeasureError::Invalid("Poisson kernel needs |α| < 1".into()));
        }
        Ok(CircleMeasure::Poisson(alpha))
    }

    pub fn from_scalars<S: Scalar>(values: &[S]) -> Self {
        CircleMeasure::Moments(MomentValues::from_scalars(values))
    }

    /// Moments `m_1..=m_n` in the field `S`.
    pub fn moments<S: Scalar>(&self, n: usize) -> Result<Vec<S>, MeasureError> {
        match self {
            CircleMeasure::Haar => Ok(vec![S::zero(); n]),
            CircleMeasure::Atomic(atoms) => {
                let mut points = Vec::with_capacity(atoms.len());
                for a in atoms {
                    let z = S::unit_from_turns(&a.turns).ok_or_else(|| {
                        MeasureError::NotExact(format!("atom at {} turns", format_rational(&a.turns)))
                    })?;
                    let w = S::from_rational(&a.weight, &BigRational::zero());
                    points.push((z, w));
                }
                let mut out = Vec::with_capacity(n);
                let mut powers: Vec<S> = points.iter().map(|_| S::one()).collect();
                for _ in 0..n {
                    let mut acc = S::zero();
                    for (p, (z, w)) in powers.iter_mut().zip(&points) {
                        *p = p.clone() * z.clone();
                        acc = acc + w.clone() * p.clone();
                    }
                    out.push(acc);
                }
                Ok(out)
            }
            CircleMeasure::Poisson(alpha) => {
                let a = S::from_rational(&alpha.re, &alpha.im);
                let mut p = S::one();
                Ok((0..n)
                    .map(|_| {
                        p = p.clone() * a.clone();
                        p.clone()
                    })
                    .collect())
            }
            CircleMeasure::Moments(values) => {
                if values.len() < n {
                    return Err(MeasureError::TooFewMoments { have: values.len(), need: n });
                }
                (0..n).map(|k| values.get(k)).collect()
            }
        }
    }

    pub fn moments_approx(&self, n: usize) -> Result<Vec<Approx>, MeasureError> {
        self.moments::<Approx>(n)
    }

    /// `m(z) = Σ_{k=1}^{order} m_k z^k`.
    pub fn moment_series<S: Scalar>(&self, order: usize) -> Result<Series<S>, MeasureError> {
        let mut coeffs = vec![S::zero()];
        coeffs.extend(self.moments::<S>(order)?);
        Ok(Series::from_coeffs(coeffs)?)
    }

    /// Haar, or a moment sequence that vanishes up to `order`.
    pub fn is_haar_like(&self, order: usize) -> Result<bool, MeasureError> {
        Ok(match self {
            CircleMeasure::Haar => true,
            _ => self.moments_approx(order)?.iter().all(|m| m.norm() == 0.0),
        })
    }

    /// Checks that stored moments are bounded by one in modulus.
    pub fn validate(&self) -> Result<(), MeasureError> {
        if let CircleMeasure::Moments(values) = self {
            let too_big = match values {
                MomentValues::Exact(v) => v.iter().any(|m| m.norm_sqr() > BigRational::one()),
                MomentValues::Approx(v) => v.iter().any(|m| m.norm() > 1.0 + 1e-9),
            };
            if too_big {
                return Err(MeasureError::Invalid("a moment exceeds one in modulus".into()));
            }
        }
        Ok(())
    }
}

fn normalize_atoms(atoms: Vec<Atom>) -> Result<Vec<Atom>, MeasureError> {
    let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
    for a in atoms {
        if a.weight.is_negative() {
            return Err(MeasureError::Invalid("negative atom weight".into()));
        }
        let turns = reduce_turns(&a.turns);
        match merged.iter_mut().find(|b| b.turns == turns) {
            Some(b) => b.weight = b.weight.clone() + a.weight,
            None => merged.push(Atom::new(turns, a.weight)),
        }
    }
    merged.retain(|a| !a.weight.is_zero());
    merged.sort();
    Ok(merged)
}

/// A `(μ, ν)` pair: `μ` is the `φ`-law and `ν` the `ψ`-law.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurePair {
    pub mu: CircleMeasure,
    pub nu: CircleMeasure,
}

impl MeasurePair {
    pub fn new(mu: CircleMeasure, nu: CircleMeasure) -> Self {
        MeasurePair { mu, nu }
    }

    /// `(δ_1, δ_1)`, the unit for `⊠`.
    pub fn unit() -> Self {
        MeasurePair::new(CircleMeasure::unit(), CircleMeasure::unit())
    }
}

pub(crate) fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
