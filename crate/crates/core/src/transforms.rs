//! The transform tower `R, ᶜR, T, ᶜT, η, B, Σ` and its inversions.
//!
//! Moment series `m` (under `ψ`) and `M` (under `φ`) are stored as
//! `m_1 z + ... + m_N z^N` with a zero constant term. Transforms that divide
//! by `z` lose one order: `T`, `ᶜT`, `B` and `Σ` of order-`N` moments have
//! order `N − 1`, indexed from `t_0`.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::partitions::{enumerate_ncl, PartitionError};
use crate::series::{cf_weight, BlockIndex, Scalar, Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("first moment of {0} is zero, so the transform is undefined")]
    ZeroFirstMoment(&'static str),
    #[error("t_0 must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("the two routes to Σ disagree by {gap:e}")]
    SigmaRouteMismatch { gap: f64 },
}

/// Tolerance for the Σ route comparison in approx mode.
pub const SIGMA_ROUTE_TOL: f64 = 1e-9;

fn require_vanishing<S: Scalar>(s: &Series<S>) -> Result<(), SeriesError> {
    if !s.constant_term().is_zero() {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    Ok(())
}

fn require_first_moment<S: Scalar>(m: &Series<S>, what: &'static str) -> Result<(), TransformError> {
    require_vanishing(m)?;
    if m.order() == 0 || m.coeffs()[1].is_zero() {
        return Err(TransformError::ZeroFirstMoment(what));
    }
    Ok(())
}

/// `w(z) = z(1 + m(z))` at the order of `m`.
fn psi_argument<S: Scalar>(m: &Series<S>) -> Result<Series<S>, SeriesError> {
    let w = m.add_constant(&S::one()).mul(&Series::identity(m.order()))?;
    Ok(w)
}

/// The `R`-transform: `R(z(1+m)) = m`.
pub fn r_transform<S: Scalar>(m: &Series<S>) -> Result<Series<S>, TransformError> {
    require_vanishing(m)?;
    let w_inv = psi_argument(m)?.invert_composition()?;
    Ok(m.compose(&w_inv)?)
}

/// The `ᶜR`-transform: `ᶜR(z(1+m))(1+M) = M(1+m)`.
pub fn cr_transform<S: Scalar>(big_m: &Series<S>, m: &Series<S>) -> Result<Series<S>, TransformError> {
    require_vanishing(m)?;
    require_vanishing(big_m)?;
    let one = S::one();
    let lhs = big_m.mul(&m.add_constant(&one))?.div(&big_m.add_constant(&one))?;
    let w_inv = psi_argument(m)?.invert_composition()?;
    Ok(lhs.compose(&w_inv)?)
}

/// `((1/z) F) ∘ R^{⟨−1⟩}` at order `N − 1`.
fn over_z_composed<S: Scalar>(f: &Series<S>, r: &Series<S>) -> Result<Series<S>, TransformError> {
    let r_inv = r.invert_composition()?;
    let outer = f.div_z()?;
    Ok(outer.compose(&r_inv.truncate(outer.order())?)?)
}

/// `T = ((1/z) R) ∘ R^{⟨−1⟩}`, with `t_0 = m_1`.
pub fn t_transform<S: Scalar>(m: &Series<S>) -> Result<Series<S>, TransformError> {
    require_first_moment(m, "the ψ-law")?;
    let r = r_transform(m)?;
    over_z_composed(&r, &r)
}

/// `ᶜT = ((1/z) ᶜR) ∘ R^{⟨−1⟩}`, with `ᶜt_0 = M_1`.
pub fn ct_transform<S: Scalar>(big_m: &Series<S>, m: &Series<S>) -> Result<Series<S>, TransformError> {
    require_first_moment(m, "the ψ-law")?;
    let r = r_transform(m)?;
    let cr = cr_transform(big_m, m)?;
    over_z_composed(&cr, &r)
}

/// The multiplicative inverse of `T`, i.e. the classical `S`-transform.
pub fn s_transform<S: Scalar>(m: &Series<S>) -> Result<Series<S>, TransformError> {
    Ok(t_transform(m)?.reciprocal()?)
}

/// `η = m / (1 + m)`.
pub fn eta<S: Scalar>(m: &Series<S>) -> Result<Series<S>, TransformError> {
    require_vanishing(m)?;
    Ok(m.div(&m.add_constant(&S::one()))?)
}

/// `B = η / z`, of order `N − 1` with constant term `m_1`.
pub fn b_series<S: Scalar>(m: &Series<S>) -> Result<Series<S>, TransformError> {
    Ok(eta(m)?.div_z()?)
}

/// Moments from a `B`-series: `η = zB`, `m = η / (1 − η)`.
pub fn moments_from_b<S: Scalar>(b: &Series<S>) -> Result<Series<S>, TransformError> {
    let eta = b.mul_z();
    let one_minus = eta.neg().add_constant(&S::one());
    Ok(eta.div(&one_minus)?)
}

/// `Σ` computed both as `ᶜT ∘ (z/(1−z))` and as `B_μ ∘ η_ν^{⟨−1⟩}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaRoutes<S> {
    pub via_ct: Series<S>,
    pub via_b: Series<S>,
}

pub fn sigma_routes<S: Scalar>(
    big_m_mu: &Series<S>,
    m_nu: &Series<S>,
) -> Result<SigmaRoutes<S>, TransformError> {
    require_first_moment(m_nu, "ν")?;
    let ct = ct_transform(big_m_mu, m_nu)?;
    let via_ct = ct.compose(&Series::geometric(ct.order()))?;
    let b_mu = b_series(big_m_mu)?;
    let eta_inv = eta(m_nu)?.invert_composition()?;
    let via_b = b_mu.compose(&eta_inv.truncate(b_mu.order())?)?;
    Ok(SigmaRoutes { via_ct, via_b })
}

/// `Σ_{(μ,ν)}` from the `φ`-moments of `μ` and the `ψ`-moments of `ν`.
///
/// Both routes are computed; they must agree (exactly in exact mode, to
/// [`SIGMA_ROUTE_TOL`] in approx mode). The `B ∘ η^{⟨−1⟩}` route is returned.
pub fn sigma_series<S: Scalar>(
    big_m_mu: &Series<S>,
    m_nu: &Series<S>,
) -> Result<Series<S>, TransformError> {
    let routes = sigma_routes(big_m_mu, m_nu)?;
    if !routes.via_b.close_to(&routes.via_ct, SIGMA_ROUTE_TOL) {
        return Err(TransformError::SigmaRouteMismatch { gap: routes.via_b.max_gap(&routes.via_ct) });
    }
    Ok(routes.via_b)
}

/// `ψ`-moments of order `N + 1` from `T` of order `N`, solving
/// `m_n = [z^{n−1}] T(m(z)) (1 + m(z))` one coefficient at a time.
pub fn moments_from_t<S: Scalar>(t: &Series<S>) -> Result<Series<S>, TransformError> {
    if t.constant_term().is_zero() {
        return Err(TransformError::ZeroLeadingCoefficient);
    }
    let order = t.order() + 1;
    let t_full = Series::from_prefix(t.coeffs(), order);
    let mut m = Series::zero(order);
    for n in 1..=order {
        let h = t_full.compose(&m)?.mul(&m.add_constant(&S::one()))?;
        let next = h.coeffs()[n - 1].clone();
        m.set_coeff(n, next)?;
    }
    Ok(m)
}

/// `φ`-moments of order `N + 1` from `ᶜT` of order `N` and the `ψ`-moments,
/// solving `M_n = [z^{n−1}] ᶜT(m(z)) (1 + M(z))`.
pub fn phi_moments_from_ct<S: Scalar>(
    ct: &Series<S>,
    m: &Series<S>,
) -> Result<Series<S>, TransformError> {
    require_vanishing(m)?;
    let order = ct.order() + 1;
    if m.order() != order {
        return Err(SeriesError::OrderMismatch { left: order, right: m.order() }.into());
    }
    let g = Series::from_prefix(ct.coeffs(), order).compose(m)?;
    let mut big_m = Series::zero(order);
    for n in 1..=order {
        let h = g.mul(&big_m.add_constant(&S::one()))?;
        let next = h.coeffs()[n - 1].clone();
        big_m.set_coeff(n, next)?;
    }
    Ok(big_m)
}

/// `m_n` (or `M_n` when `ct` is given) as a sum over `NCL(n)`:
/// `Σ_γ t_0^{n−|γ|} ∏_B w_B`, where `w_B = t_{|B|−1}`, except that exterior
/// blocks take `ᶜt_{|B|−1}` in the `φ` version.
pub fn moments_via_ncl<S: Scalar>(
    t: &Series<S>,
    ct: Option<&Series<S>>,
    n: usize,
) -> Result<S, TransformError> {
    let t0 = t.constant_term().clone();
    let mut total = S::zero();
    for g in enumerate_ncl(n)? {
        let weight = match ct {
            None => cf_weight(&g, t, BlockIndex::SizeMinusOne)?,
            Some(ct) => {
                let mut acc = S::one();
                for (i, b) in g.blocks().iter().enumerate() {
                    let s = if g.is_interior(i) { t } else { ct };
                    acc = acc * s.coeff(b.len() - 1)?.clone();
                }
                acc
            }
        };
        let mut term = weight;
        for _ in 0..(n - g.len()) {
            term = term * t0.clone();
        }
        total = total + term;
    }
    Ok(total)
}

/// Names of the transforms, as used on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    R,
    Cr,
    T,
    Ct,
    Eta,
    B,
    Sigma,
}

impl FromStr for TransformKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "r" => TransformKind::R,
            "cr" => TransformKind::Cr,
            "t" => TransformKind::T,
            "ct" => TransformKind::Ct,
            "eta" => TransformKind::Eta,
            "b" => TransformKind::B,
            "sigma" => TransformKind::Sigma,
            other => return Err(format!("unknown transform `{other}`")),
        })
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformKind::R => "r",
            TransformKind::Cr => "cr",
            TransformKind::T => "t",
            TransformKind::Ct => "ct",
            TransformKind::Eta => "eta",
            TransformKind::B => "b",
            TransformKind::Sigma => "sigma",
        })
    }
}

/// Moment data of a pair with lazily computed transforms.
///
/// `m` is the `ψ`-moment series and `M` the `φ`-moment series; when no
/// `φ`-moments are given, `M = m`. Results are cached per bundle.
#[derive(Debug)]
pub struct TransformBundle<S> {
    m: Series<S>,
    big_m: Series<S>,
    r: OnceCell<Series<S>>,
    cr: OnceCell<Series<S>>,
    t: OnceCell<Series<S>>,
    ct: OnceCell<Series<S>>,
    eta: OnceCell<Series<S>>,
    b: OnceCell<Series<S>>,
    sigma: OnceCell<Series<S>>,
}

fn cached<S: Scalar>(
    cell: &OnceCell<Series<S>>,
    f: impl FnOnce() -> Result<Series<S>, TransformError>,
) -> Result<&Series<S>, TransformError> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v))
}

impl<S: Scalar> TransformBundle<S> {
    pub fn new(m: Series<S>, big_m: Option<Series<S>>) -> Result<Self, TransformError> {
        require_vanishing(&m)?;
        let big_m = big_m.unwrap_or_else(|| m.clone());
        require_vanishing(&big_m)?;
        if big_m.order() != m.order() {
            return Err(SeriesError::OrderMismatch { left: big_m.order(), right: m.order() }.into());
        }
        Ok(TransformBundle {
            m,
            big_m,
            r: OnceCell::new(),
            cr: OnceCell::new(),
            t: OnceCell::new(),
            ct: OnceCell::new(),
            eta: OnceCell::new(),
            b: OnceCell::new(),
            sigma: OnceCell::new(),
        })
    }

    pub fn m(&self) -> &Series<S> {
        &self.m
    }

    pub fn big_m(&self) -> &Series<S> {
        &self.big_m
    }

    pub fn r(&self) -> Result<&Series<S>, TransformError> {
        cached(&self.r, || r_transform(&self.m))
    }

    pub fn cr(&self) -> Result<&Series<S>, TransformError> {
        cached(&self.cr, || cr_transform(&self.big_m, &self.m))
    }

    pub fn t(&self) -> Result<&Series<S>, TransformError> {
        cached(&self.t, || t_transform(&self.m))
    }

    pub fn ct(&self) -> Result<&Series<S>, TransformError> {
        cached(&self.ct, || ct_transform(&self.big_m, &self.m))
    }

    pub fn eta(&self) -> Result<&Series<S>, TransformError> {
        cached(&self.eta, || eta(&self.m))
    }

    pub fn b(&self) -> Result<&Series<S>, TransformError> {
        cached(&self.b, || b_series(&self.m))
    }

    /// `Σ` of the pair whose `φ`-law has moments `M` and `ψ`-law moments `m`.
    pub fn sigma(&self) -> Result<&Series<S>, TransformError> {
        cached(&self.sigma, || sigma_series(&self.big_m, &self.m))
    }

    pub fn get(&self, kind: TransformKind) -> Result<&Series<S>, TransformError> {
        match kind {
            TransformKind::R => self.r(),
            TransformKind::Cr => self.cr(),
            TransformKind::T => self.t(),
            TransformKind::Ct => self.ct(),
            TransformKind::Eta => self.eta(),
            TransformKind::B => self.b(),
            TransformKind::Sigma => self.sigma(),
        }
    }
}
