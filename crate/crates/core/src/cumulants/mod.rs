//! Moment/cumulant conversion in one state (free cumulants) and two states
//! (c-free cumulants), partition-indexed cumulant products, and cumulants
//! of the product `XY` of two c-free variables.

pub mod nc_sum;

use std::collections::HashMap;

use thiserror::Error;

use crate::partitions::{enumerate_nc_0, NCPartition, PartitionError};
use crate::series::{boxed_convolution_checked, Scalar, Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CumulantError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("first free cumulant of {0} vanishes")]
    VanishingFirstCumulant(&'static str),
    #[error("word has length {word}, partition has ground set {n}")]
    WordLength { word: usize, n: usize },
    #[error("letter {0} has no cumulant data")]
    UnknownLetter(usize),
}

/// Which functional a word cumulant refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum State {
    /// `ψ` and the free cumulants `R^n`.
    Psi,
    /// `φ` and the c-free cumulants `ᶜR^n`.
    Phi,
}

/// `[z^k] u^p` for growing `k`, with `u` revealed one coefficient at a time.
struct PowerTable<S> {
    u: Vec<S>,
    // cols[k][p] = [z^k] u^p
    cols: Vec<Vec<S>>,
    max_power: usize,
}

impl<S: Scalar> PowerTable<S> {
    fn new(max_power: usize) -> Self {
        PowerTable { u: Vec::new(), cols: Vec::new(), max_power }
    }

    fn push(&mut self, u_k: S) {
        self.u.push(u_k);
        let k = self.u.len() - 1;
        let mut col = vec![S::zero(); self.max_power + 1];
        col[0] = if k == 0 { S::one() } else { S::zero() };
        for p in 1..=self.max_power {
            let mut acc = S::zero();
            for j in 0..=k {
                let lower = if j == 0 { &col[p - 1] } else { &self.cols[k - j][p - 1] };
                acc = acc + lower.clone() * self.u[j].clone();
            }
            col[p] = acc;
        }
        self.cols.push(col);
    }

    fn get(&self, k: usize, p: usize) -> &S {
        &self.cols[k][p]
    }
}

fn check_vanishing<S: Scalar>(s: &Series<S>) -> Result<(), SeriesError> {
    if !s.constant_term().is_zero() {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    Ok(())
}

/// `r_n = m_n − Σ_{p<n} r_p [z^{n−p}](1+m)^p`.
pub fn free_cumulants_from_moments<S: Scalar>(m: &Series<S>) -> Result<Series<S>, SeriesError> {
    check_vanishing(m)?;
    let n_max = m.order();
    let mut powers = PowerTable::new(n_max);
    powers.push(S::one());
    for k in 1..=n_max {
        powers.push(m.coeffs()[k].clone());
    }
    let mut r = Series::<S>::zero(n_max);
    for n in 1..=n_max {
        let mut acc = m.coeffs()[n].clone();
        for p in 1..n {
            acc = acc - r.coeffs()[p].clone() * powers.get(n - p, p).clone();
        }
        r.set_coeff(n, acc)?;
    }
    Ok(r)
}

/// `m_n = Σ_{p≤n} r_p [z^{n−p}](1+m)^p`; the right side only needs `m_1..m_{n-1}`.
pub fn moments_from_free_cumulants<S: Scalar>(r: &Series<S>) -> Result<Series<S>, SeriesError> {
    check_vanishing(r)?;
    let n_max = r.order();
    let mut powers = PowerTable::new(n_max);
    powers.push(S::one());
    let mut m = Series::zero(n_max);
    for n in 1..=n_max {
        let mut acc = S::zero();
        for p in 1..=n {
            acc = acc + r.coeffs()[p].clone() * powers.get(n - p, p).clone();
        }
        m.set_coeff(n, acc.clone())?;
        powers.push(acc);
    }
    Ok(m)
}

/// `[z^k] (1+m)^{p−1}(1+M)` from the power table of `1+m` and a prefix of `1+M`.
fn mixed_coeff<S: Scalar>(powers: &PowerTable<S>, one_plus_big: &[S], k: usize, p: usize) -> S {
    let mut acc = S::zero();
    for j in 0..=k {
        acc = acc + powers.get(k - j, p - 1).clone() * one_plus_big[j].clone();
    }
    acc
}

fn psi_powers<S: Scalar>(m: &Series<S>) -> PowerTable<S> {
    let mut powers = PowerTable::new(m.order());
    powers.push(S::one());
    for k in 1..=m.order() {
        powers.push(m.coeffs()[k].clone());
    }
    powers
}

/// `ᶜr_n = M_n − Σ_{p<n} ᶜr_p [z^{n−p}](1+m)^{p−1}(1+M)`.
pub fn cfree_cumulants_from_moments<S: Scalar>(
    big_m: &Series<S>,
    m: &Series<S>,
) -> Result<Series<S>, SeriesError> {
    check_vanishing(big_m)?;
    check_vanishing(m)?;
    if big_m.order() != m.order() {
        return Err(SeriesError::OrderMismatch { left: big_m.order(), right: m.order() });
    }
    let n_max = m.order();
    let powers = psi_powers(m);
    let one_plus: Vec<S> = big_m.add_constant(&S::one()).into_coeffs();
    let mut cr = Series::<S>::zero(n_max);
    for n in 1..=n_max {
        let mut acc = big_m.coeffs()[n].clone();
        for p in 1..n {
            acc = acc - cr.coeffs()[p].clone() * mixed_coeff(&powers, &one_plus, n - p, p);
        }
        cr.set_coeff(n, acc)?;
    }
    Ok(cr)
}

/// `M_n = Σ_{p≤n} ᶜr_p [z^{n−p}](1+m)^{p−1}(1+M)`.
pub fn moments_from_cfree_cumulants<S: Scalar>(
    cr: &Series<S>,
    m: &Series<S>,
) -> Result<Series<S>, SeriesError> {
    check_vanishing(cr)?;
    check_vanishing(m)?;
    if cr.order() != m.order() {
        return Err(SeriesError::OrderMismatch { left: cr.order(), right: m.order() });
    }
    let n_max = m.order();
    let powers = psi_powers(m);
    let mut one_plus: Vec<S> = vec![S::one()];
    for n in 1..=n_max {
        let mut acc = S::zero();
        for p in 1..=n {
            acc = acc + cr.coeffs()[p].clone() * mixed_coeff(&powers, &one_plus, n - p, p);
        }
        one_plus.push(acc);
    }
    one_plus[0] = S::zero();
    Series::from_coeffs(one_plus)
}

/// Moments and free cumulants of one variable under `ψ`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneStateData<S> {
    moments: Series<S>,
    cumulants: Series<S>,
}

impl<S: Scalar> OneStateData<S> {
    pub fn from_moments(moments: Series<S>) -> Result<Self, SeriesError> {
        let cumulants = free_cumulants_from_moments(&moments)?;
        Ok(OneStateData { moments, cumulants })
    }

    pub fn from_cumulants(cumulants: Series<S>) -> Result<Self, SeriesError> {
        let moments = moments_from_free_cumulants(&cumulants)?;
        Ok(OneStateData { moments, cumulants })
    }

    pub fn order(&self) -> usize {
        self.moments.order()
    }

    pub fn moments(&self) -> &Series<S> {
        &self.moments
    }

    pub fn cumulants(&self) -> &Series<S> {
        &self.cumulants
    }
}

/// A variable under both states: `ψ` data plus `φ`-moments and c-free cumulants.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoStateData<S> {
    psi: OneStateData<S>,
    phi_moments: Series<S>,
    cfree_cumulants: Series<S>,
}

impl<S: Scalar> TwoStateData<S> {
    pub fn from_phi_moments(phi_moments: Series<S>, psi: OneStateData<S>) -> Result<Self, SeriesError> {
        let cfree_cumulants = cfree_cumulants_from_moments(&phi_moments, psi.moments())?;
        Ok(TwoStateData { psi, phi_moments, cfree_cumulants })
    }

    pub fn from_cfree_cumulants(
        cfree_cumulants: Series<S>,
        psi: OneStateData<S>,
    ) -> Result<Self, SeriesError> {
        let phi_moments = moments_from_cfree_cumulants(&cfree_cumulants, psi.moments())?;
        Ok(TwoStateData { psi, phi_moments, cfree_cumulants })
    }

    pub fn order(&self) -> usize {
        self.psi.order()
    }

    pub fn psi(&self) -> &OneStateData<S> {
        &self.psi
    }

    pub fn phi_moments(&self) -> &Series<S> {
        &self.phi_moments
    }

    pub fn cfree_cumulants(&self) -> &Series<S> {
        &self.cfree_cumulants
    }
}

/// Letters of `word` inside `block`, if they are all the same letter.
fn block_letter(word: &[usize], block: &[usize]) -> Option<usize> {
    let first = word[block[0] - 1];
    block.iter().all(|&e| word[e - 1] == first).then_some(first)
}

fn check_word(p: &NCPartition, word: &[usize]) -> Result<(), CumulantError> {
    if word.len() != p.n() {
        return Err(CumulantError::WordLength { word: word.len(), n: p.n() });
    }
    Ok(())
}

/// `κ_π[a_1..a_n] = ∏_B R^{|B|}`, where `word[i]` indexes into `letters`
/// (free cumulant series). Blocks mixing letters contribute zero.
pub fn kappa<S: Scalar>(
    p: &NCPartition,
    word: &[usize],
    letters: &[&Series<S>],
) -> Result<S, CumulantError> {
    check_word(p, word)?;
    let mut acc = S::one();
    for b in p.blocks() {
        let Some(l) = block_letter(word, b) else { return Ok(S::zero()) };
        let r = letters.get(l).ok_or(CumulantError::UnknownLetter(l))?;
        acc = acc * r.coeff(b.len())?.clone();
    }
    Ok(acc)
}

/// `𝒦_π[a_1..a_n]`: exterior blocks take c-free cumulants, interior blocks
/// free cumulants. Blocks mixing letters contribute zero.
pub fn kappa_two_state<S: Scalar>(
    p: &NCPartition,
    word: &[usize],
    letters: &[&TwoStateData<S>],
) -> Result<S, CumulantError> {
    check_word(p, word)?;
    let mut acc = S::one();
    for (i, b) in p.blocks().iter().enumerate() {
        let Some(l) = block_letter(word, b) else { return Ok(S::zero()) };
        let data = letters.get(l).ok_or(CumulantError::UnknownLetter(l))?;
        let series = if p.is_interior(i) { data.psi().cumulants() } else { data.cfree_cumulants() };
        acc = acc * series.coeff(b.len())?.clone();
    }
    Ok(acc)
}

/// The alternating word `X, Y, X, Y, ...` of length `2n` (X = 0, Y = 1).
pub fn alternating_word(n: usize) -> Vec<usize> {
    (0..2 * n).map(|i| i % 2).collect()
}

/// `R^n_{XY} = Σ_{σ ∈ NC_0(2n)} κ_σ[X, Y, ..., X, Y]`.
pub fn product_psi_cumulants<S: Scalar>(
    r_x: &Series<S>,
    r_y: &Series<S>,
    n: usize,
) -> Result<S, CumulantError> {
    let word = alternating_word(n);
    let mut acc = S::zero();
    for sigma in enumerate_nc_0(2 * n)? {
        acc = acc + kappa(&sigma, &word, &[r_x, r_y])?;
    }
    Ok(acc)
}

/// `ᶜR^n_{XY} = Σ_{σ ∈ NC_0(2n)} 𝒦_σ[X, Y, ..., X, Y]`.
pub fn product_phi_cumulants<S: Scalar>(
    x: &TwoStateData<S>,
    y: &TwoStateData<S>,
    n: usize,
) -> Result<S, CumulantError> {
    let word = alternating_word(n);
    let mut acc = S::zero();
    for sigma in enumerate_nc_0(2 * n)? {
        acc = acc + kappa_two_state(&sigma, &word, &[x, y])?;
    }
    Ok(acc)
}

/// Two-state data of `XY` at the order of `x`, built only from the NC_0 sums.
pub fn product_data<S: Scalar>(
    x: &TwoStateData<S>,
    y: &TwoStateData<S>,
) -> Result<TwoStateData<S>, CumulantError> {
    let order = x.order();
    if y.order() != order {
        return Err(SeriesError::OrderMismatch { left: order, right: y.order() }.into());
    }
    let mut r = Series::zero(order);
    let mut cr = Series::zero(order);
    for n in 1..=order {
        r.set_coeff(n, product_psi_cumulants(x.psi().cumulants(), y.psi().cumulants(), n)?)?;
        cr.set_coeff(n, product_phi_cumulants(x, y, n)?)?;
    }
    let psi = OneStateData::from_cumulants(r)?;
    Ok(TwoStateData::from_cfree_cumulants(cr, psi)?)
}

/// The closed product formula for `(1/z)ᶜR_{XY}`:
/// `[(1/z)ᶜR_X ∘ ((1/α_1) R_X ⋆̌ R_Y)] · [(1/z)ᶜR_Y ∘ ((1/β_1) R_Y ⋆̌ R_X)]`.
///
/// Inputs of order `N` give a result of order `N − 1`, whose coefficient
/// `k` is `ᶜR^{k+1}_{XY}`.
pub fn th1_formula<S: Scalar>(
    x: &TwoStateData<S>,
    y: &TwoStateData<S>,
) -> Result<Series<S>, CumulantError> {
    let (r_x, r_y) = (x.psi().cumulants(), y.psi().cumulants());
    let alpha1 = r_x.coeff(1)?.clone();
    let beta1 = r_y.coeff(1)?.clone();
    if alpha1.is_zero() {
        return Err(CumulantError::VanishingFirstCumulant("X"));
    }
    if beta1.is_zero() {
        return Err(CumulantError::VanishingFirstCumulant("Y"));
    }
    let order = r_x.order();
    let half = |cr: &Series<S>, f: &Series<S>, g: &Series<S>, lead: &S| -> Result<Series<S>, CumulantError> {
        let inner = boxed_convolution_checked(f, g)?.scale(&(S::one() / lead.clone()));
        let outer = cr.div_z()?;
        Ok(outer.compose(&inner.truncate(order - 1)?)?)
    };
    let left = half(x.cfree_cumulants(), r_x, r_y, &alpha1)?;
    let right = half(y.cfree_cumulants(), r_y, r_x, &beta1)?;
    Ok(left.mul(&right)?)
}

/// `R^n` or `ᶜR^n` of a word, from a moment oracle, by the defining
/// first-block recurrences.
///
/// `moments(w, State::Psi)` must return `ψ` of the product of the letters
/// in `w` (and `φ` for `State::Phi`); the empty word has value one. Letters
/// are opaque, so a unit is simply a letter on which the oracle acts as one.
pub fn word_cumulant<S: Scalar>(
    moments: &dyn Fn(&[usize], State) -> S,
    word: &[usize],
    state: State,
) -> S {
    let mut memo: HashMap<(Vec<usize>, State), S> = HashMap::new();
    word_cumulant_memo(moments, word, state, &mut memo)
}

fn word_cumulant_memo<S: Scalar>(
    moments: &dyn Fn(&[usize], State) -> S,
    word: &[usize],
    state: State,
    memo: &mut HashMap<(Vec<usize>, State), S>,
) -> S {
    if let Some(v) = memo.get(&(word.to_vec(), state)) {
        return v.clone();
    }
    let n = word.len();
    if n == 0 {
        return S::zero();
    }
    let mut value = moments(word, state);
    // Proper index sets {0 = i_1 < ... < i_p} of positions, other than all of 0..n.
    for mask in 0u64..(1 << (n - 1)) {
        let idx: Vec<usize> =
            std::iter::once(0).chain((1..n).filter(|&k| mask >> (k - 1) & 1 == 1)).collect();
        if idx.len() == n {
            continue;
        }
        let sub: Vec<usize> = idx.iter().map(|&i| word[i]).collect();
        let mut term = word_cumulant_memo(moments, &sub, state, memo);
        if term.is_zero() {
            continue;
        }
        for w in idx.windows(2) {
            term = term * moments(&word[w[0] + 1..w[1]], State::Psi);
        }
        let last = *idx.last().unwrap();
        term = term * moments(&word[last + 1..], state);
        value = value - term;
    }
    memo.insert((word.to_vec(), state), value.clone());
    value
}
