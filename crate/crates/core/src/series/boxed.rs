use super::{Scalar, Series, SeriesError};
use crate::partitions::{enumerate_nc, Blocks, NCPartition};

/// Which coefficient a block of size `k` selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockIndex {
    /// `c_k`, as in `Cf_π(f) = ∏ α_|B|`.
    Size,
    /// `c_{k-1}`, the weights `t_{|B|-1}` of the linked-partition formulas.
    SizeMinusOne,
}

/// Product over the blocks of `p` of the coefficient selected by `index`.
pub fn cf_weight<S: Scalar, P: Blocks + ?Sized>(
    p: &P,
    f: &Series<S>,
    index: BlockIndex,
) -> Result<S, SeriesError> {
    let mut acc = S::one();
    for b in p.block_list() {
        let k = match index {
            BlockIndex::Size => b.len(),
            BlockIndex::SizeMinusOne => b.len() - 1,
        };
        acc = acc * f.coeff(k)?.clone();
    }
    Ok(acc)
}

fn boxed_with<S: Scalar>(
    f: &Series<S>,
    g: &Series<S>,
    keep: impl Fn(&NCPartition) -> bool,
) -> Result<Series<S>, SeriesError> {
    if f.order() != g.order() {
        return Err(SeriesError::OrderMismatch { left: f.order(), right: g.order() });
    }
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    let mut out = Series::zero(f.order());
    for n in 1..=f.order() {
        let mut acc = S::zero();
        for pi in enumerate_nc(n)?.iter().filter(|p| keep(p)) {
            let left = cf_weight(pi, f, BlockIndex::Size)?;
            if left.is_zero() {
                continue;
            }
            acc = acc + left * cf_weight(&pi.kreweras(), g, BlockIndex::Size)?;
        }
        out.set_coeff(n, acc)?;
    }
    Ok(out)
}

/// `f ⋆ g`: `γ_n = Σ_{π ∈ NC(n)} Cf_π(f) · Cf_{Kr(π)}(g)`.
pub fn boxed_convolution<S: Scalar>(f: &Series<S>, g: &Series<S>) -> Result<Series<S>, SeriesError> {
    boxed_with(f, g, |_| true)
}

/// `f ⋆̌ g`: the same sum restricted to partitions having `{1}` as a block.
pub fn boxed_convolution_checked<S: Scalar>(
    f: &Series<S>,
    g: &Series<S>,
) -> Result<Series<S>, SeriesError> {
    boxed_with(f, g, |p| p.contains_singleton(1))
}
