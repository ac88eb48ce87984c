//! Direct non-crossing partition sums, used to cross-check the recurrences.

use crate::partitions::{enumerate_nc, NCPartition};
use crate::series::{cf_weight, BlockIndex, Scalar, Series, SeriesError};

/// `m_n = Σ_{π ∈ NC(n)} ∏_B r_{|B|}`.
pub fn moments_from_free_cumulants<S: Scalar>(r: &Series<S>) -> Result<Series<S>, SeriesError> {
    let mut m = Series::zero(r.order());
    for n in 1..=r.order() {
        let mut acc = S::zero();
        for p in enumerate_nc(n)? {
            acc = acc + cf_weight(&p, r, BlockIndex::Size)?;
        }
        m.set_coeff(n, acc)?;
    }
    Ok(m)
}

/// `M_n = Σ_{π ∈ NC(n)} ∏_{B ext} ᶜr_{|B|} ∏_{B int} r_{|B|}`.
pub fn phi_moments_from_cumulants<S: Scalar>(
    cr: &Series<S>,
    r: &Series<S>,
) -> Result<Series<S>, SeriesError> {
    let mut big_m = Series::zero(cr.order());
    for n in 1..=cr.order() {
        let mut acc = S::zero();
        for p in enumerate_nc(n)? {
            acc = acc + two_state_weight(&p, cr, r)?;
        }
        big_m.set_coeff(n, acc)?;
    }
    Ok(big_m)
}

fn two_state_weight<S: Scalar>(
    p: &NCPartition,
    cr: &Series<S>,
    r: &Series<S>,
) -> Result<S, SeriesError> {
    let mut acc = S::one();
    for (i, b) in p.blocks().iter().enumerate() {
        let s = if p.is_interior(i) { r } else { cr };
        acc = acc * s.coeff(b.len())?.clone();
    }
    Ok(acc)
}

/// Free cumulants from moments by peeling off the one-block term of the NC sum.
pub fn free_cumulants_from_moments<S: Scalar>(m: &Series<S>) -> Result<Series<S>, SeriesError> {
    let mut r = Series::zero(m.order());
    for n in 1..=m.order() {
        let mut acc = m.coeff(n)?.clone();
        for p in enumerate_nc(n)? {
            if p.len() > 1 {
                acc = acc - cf_weight(&p, &r, BlockIndex::Size)?;
            }
        }
        r.set_coeff(n, acc)?;
    }
    Ok(r)
}

/// C-free cumulants from `φ`-moments and known free cumulants, likewise.
pub fn cfree_cumulants_from_moments<S: Scalar>(
    big_m: &Series<S>,
    r: &Series<S>,
) -> Result<Series<S>, SeriesError> {
    let mut cr = Series::zero(big_m.order());
    for n in 1..=big_m.order() {
        let mut acc = big_m.coeff(n)?.clone();
        for p in enumerate_nc(n)? {
            if p.len() > 1 {
                acc = acc - two_state_weight(&p, &cr, r)?;
            }
        }
        cr.set_coeff(n, acc)?;
    }
    Ok(cr)
}
