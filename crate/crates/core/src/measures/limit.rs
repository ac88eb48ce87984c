use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::{
    boolean_convolve, center_array, cfree_power, generators::series_log, sigma_of_pair, Atom, CircleMeasure,
    MeasureError, MeasurePair,
};
use crate::series::scalar::{format_rational, rational_from_f64};
use crate::series::{Approx, Scalar};
use crate::transforms::b_series;

/// Slack allowed when checking that a distance sequence does not increase.
pub const MONOTONE_TOL: f64 = 1e-12;

/// Row `k = 1..n` of the array is `μ_{nk} = ν_{nk} = (1 − s/n) δ_1 + (s/n) δ_ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitConfig {
    pub s: f64,
    pub omega_turns: BigRational,
    pub n_list: Vec<usize>,
    /// Moment order; gaps are reported for `j = 0..order−1`.
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitRow {
    pub n: usize,
    pub j: usize,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitStep {
    pub n: usize,
    /// `|Σ_{(μ_n,ν_n),j} − B_{ρ_n,j}|` for `j = 0..order−1`.
    pub gaps: Vec<f64>,
    pub sup_gap: f64,
    pub gamma: [f64; 2],
    pub sigma_mass: f64,
    /// `∫ ζ^j dσ_n` for `j = 1, 2` (as far as the order allows).
    pub sigma_moments: Vec<[f64; 2]>,
    pub gamma_distance: f64,
    pub sigma_distances: Vec<f64>,
}

/// `(γ, σ)` read off `log B_{ρ_N}` for the largest `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FittedGenerator {
    pub gamma: [f64; 2],
    pub mass: f64,
    pub sigma_moments: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    pub s: f64,
    pub omega_turns: String,
    pub order: usize,
    pub steps: Vec<LimitStep>,
    pub fitted: FittedGenerator,
    pub gaps_strictly_decreasing: bool,
    pub final_sup_gap: f64,
    pub generator_monotone: bool,
}

impl LimitReport {
    pub fn rows(&self) -> Vec<LimitRow> {
        self.steps
            .iter()
            .flat_map(|st| st.gaps.iter().enumerate().map(move |(j, &gap)| LimitRow { n: st.n, j, gap }))
            .collect()
    }
}

fn pair(c: Approx) -> [f64; 2] {
    [c.re, c.im]
}

fn unpair(c: [f64; 2]) -> Approx {
    Approx::new(c[0], c[1])
}

fn row_measure(s: &BigRational, omega: &BigRational, n: usize) -> Result<CircleMeasure, MeasureError> {
    let eps = s.clone() / BigRational::from_integer((n as i64).into());
    CircleMeasure::atomic(vec![
        Atom::new(super::rational(0, 1), BigRational::one() - eps.clone()),
        Atom::new(omega.clone(), eps),
    ])
}

fn non_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] <= w[0] + MONOTONE_TOL)
}

pub fn limit_experiment(config: &LimitConfig) -> Result<LimitReport, MeasureError> {
    let order = config.order;
    if order == 0 || config.n_list.is_empty() || config.n_list.contains(&0) {
        return Err(MeasureError::Domain("need order ≥ 1 and a nonempty list of positive n".into()));
    }
    let s = rational_from_f64(config.s).ok_or_else(|| MeasureError::Domain(format!("s = {}", config.s)))?;
    let max_s = *config.n_list.iter().min().expect("nonempty") as f64;
    if !(0.0..=max_s).contains(&config.s) {
        return Err(MeasureError::Domain(format!("s must lie in [0, {max_s}]")));
    }
    let sigma_terms = (order - 1).min(2);
    let mut steps = Vec::with_capacity(config.n_list.len());
    let mut last_b = None;
    for &n in &config.n_list {
        let mu = row_measure(&s, &config.omega_turns, n)?;
        let pair_nk = MeasurePair::new(mu.clone(), mu.clone());
        let pair_n = cfree_power::<Approx>(&pair_nk, n, order)?;
        let mut rho = CircleMeasure::unit();
        for _ in 0..n {
            rho = boolean_convolve::<Approx>(&rho, &mu, order)?;
        }
        let sigma = sigma_of_pair::<Approx>(&pair_n, order)?;
        let b_rho = b_series(&rho.moment_series::<Approx>(order)?)?;
        let gaps: Vec<f64> = sigma.coeffs().iter().zip(b_rho.coeffs()).map(|(a, b)| (a - b).norm()).collect();
        let sup_gap = gaps.iter().copied().fold(0.0, f64::max);

        let row = center_array(&vec![mu; n], 0)?;
        let mut phase = 0.0;
        let mut mass = 0.0;
        let mut moments = vec![Approx::new(0.0, 0.0); sigma_terms];
        for (b, centered) in row.b.iter().zip(&row.centered) {
            phase += b.arg();
            let CircleMeasure::Atomic(atoms) = centered else { unreachable!("centering keeps atoms") };
            for a in atoms {
                let w = weight_f64(&a.weight);
                let zeta = a.point();
                phase += w * zeta.im;
                let damp = w * (1.0 - zeta.re);
                mass += damp;
                for (j, m) in moments.iter_mut().enumerate() {
                    *m += zeta.powu(j as u32 + 1) * damp;
                }
            }
        }
        steps.push(LimitStep {
            n,
            gaps,
            sup_gap,
            gamma: pair(Approx::from_polar(1.0, phase)),
            sigma_mass: mass,
            sigma_moments: moments.into_iter().map(pair).collect(),
            gamma_distance: 0.0,
            sigma_distances: Vec::new(),
        });
        last_b = Some(b_rho);
    }

    let log_b = series_log(&last_b.expect("nonempty list"))?;
    let l = log_b.coeffs();
    let fitted = FittedGenerator {
        gamma: pair(Approx::from_polar(1.0, l[0].im)),
        mass: -l[0].re,
        sigma_moments: (1..=sigma_terms).map(|k| pair(-l[k] / 2.0)).collect(),
    };
    for st in &mut steps {
        st.gamma_distance = (unpair(st.gamma) - unpair(fitted.gamma)).norm();
        st.sigma_distances =
            st.sigma_moments.iter().zip(&fitted.sigma_moments).map(|(a, b)| (unpair(*a) - unpair(*b)).norm()).collect();
    }
    let sups: Vec<f64> = steps.iter().map(|st| st.sup_gap).collect();
    let gaps_strictly_decreasing = sups.windows(2).all(|w| w[1] < w[0]);
    let mut generator_monotone = non_increasing(&steps.iter().map(|st| st.gamma_distance).collect::<Vec<_>>());
    for j in 0..sigma_terms {
        generator_monotone &= non_increasing(&steps.iter().map(|st| st.sigma_distances[j]).collect::<Vec<_>>());
    }
    Ok(LimitReport {
        s: config.s,
        omega_turns: format_rational(&config.omega_turns),
        order,
        final_sup_gap: *sups.last().expect("nonempty"),
        steps,
        fitted,
        gaps_strictly_decreasing,
        generator_monotone,
    })
}

fn weight_f64(w: &BigRational) -> f64 {
    Approx::from_rational(w, &BigRational::from_integer(0.into())).re
}
