use super::{CircleMeasure, MeasureError, MeasurePair};
use crate::series::{Scalar, Series};
use crate::transforms::{
    b_series, ct_transform, moments_from_b, moments_from_t, phi_moments_from_ct, sigma_series,
    t_transform,
};

/// `μ_1 ⊎ μ_2`: the `B`-transforms multiply. Moments up to `order`.
pub fn boolean_convolve<S: Scalar>(
    mu1: &CircleMeasure,
    mu2: &CircleMeasure,
    order: usize,
) -> Result<CircleMeasure, MeasureError> {
    let b1 = b_series(&mu1.moment_series::<S>(order)?)?;
    let b2 = b_series(&mu2.moment_series::<S>(order)?)?;
    let m = moments_from_b(&b1.mul(&b2)?)?;
    Ok(CircleMeasure::from_scalars(&m.coeffs()[1..]))
}

/// `ν_1 ⊠ ν_2`: the `T`-transforms multiply. Moments up to `order`.
pub fn free_multiplicative_convolve<S: Scalar>(
    nu1: &CircleMeasure,
    nu2: &CircleMeasure,
    order: usize,
) -> Result<CircleMeasure, MeasureError> {
    let t1 = t_transform(&nu1.moment_series::<S>(order)?)?;
    let t2 = t_transform(&nu2.moment_series::<S>(order)?)?;
    let m = moments_from_t(&t1.mul(&t2)?)?;
    Ok(CircleMeasure::from_scalars(&m.coeffs()[1..]))
}

/// `(μ_1, ν_1) ⊠ (μ_2, ν_2)`: `T` and `ᶜT` multiply. Moments up to `order`.
///
/// When both `ν_i` are Haar the output is `(μ, Haar)` where `μ` has moments
/// `(c_1 c_2)^n`, `c_i` being the first moment of `μ_i`. A Haar `ν` paired
/// with a non-Haar one is rejected.
pub fn cfree_multiplicative_convolve<S: Scalar>(
    p1: &MeasurePair,
    p2: &MeasurePair,
    order: usize,
) -> Result<MeasurePair, MeasureError> {
    let haar1 = p1.nu.is_haar_like(order)?;
    let haar2 = p2.nu.is_haar_like(order)?;
    if haar1 && haar2 {
        let c1 = p1.mu.moments::<S>(1)?.remove(0);
        let c2 = p2.mu.moments::<S>(1)?.remove(0);
        let c = c1 * c2;
        let mut p = S::one();
        let moments: Vec<S> = (0..order)
            .map(|_| {
                p = p.clone() * c.clone();
                p.clone()
            })
            .collect();
        return Ok(MeasurePair::new(CircleMeasure::from_scalars(&moments), CircleMeasure::Haar));
    }
    if haar1 || haar2 {
        return Err(MeasureError::MixedHaar);
    }
    let m1 = p1.nu.moment_series::<S>(order)?;
    let m2 = p2.nu.moment_series::<S>(order)?;
    for m in [&m1, &m2] {
        if m.coeffs()[1].is_zero() {
            return Err(MeasureError::DegenerateNu);
        }
    }
    let t = t_transform(&m1)?.mul(&t_transform(&m2)?)?;
    let m = moments_from_t(&t)?;
    let ct1 = ct_transform(&p1.mu.moment_series::<S>(order)?, &m1)?;
    let ct2 = ct_transform(&p2.mu.moment_series::<S>(order)?, &m2)?;
    let big_m = phi_moments_from_ct(&ct1.mul(&ct2)?, &m)?;
    Ok(MeasurePair::new(
        CircleMeasure::from_scalars(&big_m.coeffs()[1..]),
        CircleMeasure::from_scalars(&m.coeffs()[1..]),
    ))
}

/// The `k`-fold `⊠`-power of a pair (`k = 0` gives `(δ_1, δ_1)`).
pub fn cfree_power<S: Scalar>(p: &MeasurePair, k: usize, order: usize) -> Result<MeasurePair, MeasureError> {
    let mut acc = MeasurePair::unit();
    for _ in 0..k {
        acc = cfree_multiplicative_convolve::<S>(&acc, p, order)?;
    }
    Ok(acc)
}

/// `Σ_{(μ,ν)}` from moments up to `order`; the result has order `order − 1`.
pub fn sigma_of_pair<S: Scalar>(p: &MeasurePair, order: usize) -> Result<Series<S>, MeasureError> {
    Ok(sigma_series(&p.mu.moment_series::<S>(order)?, &p.nu.moment_series::<S>(order)?)?)
}
