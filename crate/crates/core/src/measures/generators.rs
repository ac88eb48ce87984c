use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Atom, CircleMeasure, MeasureError, MeasurePair};
use crate::series::{Approx, Scalar, Series};
use crate::transforms::{eta, moments_from_b};

/// An infinitely divisible generator `(γ, σ)`: `|γ| = 1` and `σ` a finite
/// positive atomic measure (weights need not sum to one).
#[derive(Clone, Debug, PartialEq)]
pub struct IdGenerator {
    pub gamma: Approx,
    pub sigma: Vec<Atom>,
}

const UNIT_TOL: f64 = 1e-9;

impl IdGenerator {
    pub fn new(gamma: Approx, sigma: Vec<Atom>) -> Result<Self, MeasureError> {
        if (gamma.norm() - 1.0).abs() > UNIT_TOL {
            return Err(MeasureError::Invalid(format!("|γ| = {} is not one", gamma.norm())));
        }
        if sigma.iter().any(|a| a.weight.is_negative()) {
            return Err(MeasureError::Invalid("σ has a negative weight".into()));
        }
        Ok(IdGenerator { gamma, sigma })
    }

    /// Total mass of `σ`.
    pub fn mass(&self) -> f64 {
        self.sigma.iter().map(|a| rat_f64(&a.weight)).sum()
    }

    /// `∫ ζ^k dσ(ζ)`.
    pub fn sigma_moment(&self, k: u32) -> Approx {
        self.sigma.iter().map(|a| a.point().powu(k) * rat_f64(&a.weight)).sum()
    }
}

fn rat_f64(r: &BigRational) -> f64 {
    Approx::from_rational(r, &BigRational::zero()).re
}

/// `∫ (1+ζz)/(1−ζz) dσ(ζ) = Σ_j w_j (1 + 2 Σ_{k≥1} ζ_j^k z^k)`.
fn kernel_series(sigma: &[Atom], order: usize) -> Series<Approx> {
    let mut coeffs = vec![Approx::zero(); order + 1];
    for a in sigma {
        let w = rat_f64(&a.weight);
        let zeta = a.point();
        coeffs[0] += w;
        let mut p = Approx::new(1.0, 0.0);
        for c in coeffs.iter_mut().skip(1) {
            p *= zeta;
            *c += 2.0 * w * p;
        }
    }
    Series::from_coeffs(coeffs).expect("nonempty")
}

/// `exp(f)` via `n g_n = Σ_{k=1}^n k f_k g_{n−k}`.
pub fn series_exp(f: &Series<Approx>) -> Series<Approx> {
    let c = f.coeffs();
    let mut g = vec![c[0].exp()];
    for n in 1..c.len() {
        let acc: Approx = (1..=n).map(|k| c[k] * g[n - k] * k as f64).sum();
        g.push(acc / n as f64);
    }
    Series::from_coeffs(g).expect("nonempty")
}

/// The principal logarithm. The constant term must avoid `(−∞, 0]`.
pub fn series_log(f: &Series<Approx>) -> Result<Series<Approx>, MeasureError> {
    let c = f.coeffs();
    let f0 = c[0];
    if f0.im == 0.0 && f0.re <= 0.0 {
        return Err(MeasureError::BranchCut(format!("{f0}")));
    }
    let mut l = vec![f0.ln()];
    for n in 1..c.len() {
        let tail: Approx = (1..n).map(|k| l[k] * c[n - k] * k as f64).sum();
        l.push((c[n] * n as f64 - tail) / (f0 * n as f64));
    }
    Ok(Series::from_coeffs(l).expect("nonempty"))
}

/// `f^t = exp(t log f)` on the principal branch.
pub fn series_powf(f: &Series<Approx>, t: f64) -> Result<Series<Approx>, MeasureError> {
    Ok(series_exp(&series_log(f)?.scale(&Approx::new(t, 0.0))))
}

/// `γ exp(sign · ∫ (1+ζz)/(1−ζz) dσ(ζ))` to order `order`; `sign` is `±1`.
pub fn herglotz_exp(g: &IdGenerator, sign: i32, order: usize) -> Result<Series<Approx>, MeasureError> {
    if sign != 1 && sign != -1 {
        return Err(MeasureError::Domain(format!("sign must be ±1, got {sign}")));
    }
    let u = kernel_series(&g.sigma, order).scale(&Approx::new(sign as f64, 0.0));
    Ok(series_exp(&u).scale(&g.gamma))
}

fn measure_from_moment_series(m: &Series<Approx>) -> CircleMeasure {
    CircleMeasure::from_scalars(&m.coeffs()[1..])
}

fn require_order(order: usize) -> Result<(), MeasureError> {
    if order == 0 {
        return Err(MeasureError::Domain("order must be at least 1".into()));
    }
    Ok(())
}

/// The `⊎`-infinitely divisible law with `B = γ exp(−∫ (1+ζz)/(1−ζz) dσ)`.
pub fn idiv_boolean_measure(g: &IdGenerator, order: usize) -> Result<CircleMeasure, MeasureError> {
    require_order(order)?;
    let b = herglotz_exp(g, -1, order - 1)?;
    Ok(measure_from_moment_series(&moments_from_b(&b)?))
}

/// `η^{⟨−1⟩}` of order `order` given `η^{⟨−1⟩}(z) / z`.
fn eta_from_inverse_over_z(f: &Series<Approx>) -> Result<Series<Approx>, MeasureError> {
    Ok(f.mul_z().invert_composition()?)
}

fn moments_from_eta(eta: &Series<Approx>) -> Result<Series<Approx>, MeasureError> {
    let one_minus = eta.neg().add_constant(&Approx::new(1.0, 0.0));
    Ok(eta.div(&one_minus)?)
}

/// The `⊠`-infinitely divisible law with
/// `η^{⟨−1⟩}(z) = γ z exp(∫ (1+ζz)/(1−ζz) dσ)`.
pub fn idiv_free_measure(g: &IdGenerator, order: usize) -> Result<CircleMeasure, MeasureError> {
    require_order(order)?;
    let eta = eta_from_inverse_over_z(&herglotz_exp(g, 1, order - 1)?)?;
    Ok(measure_from_moment_series(&moments_from_eta(&eta)?))
}

/// The pair `(μ, ν)` with `Σ_{(μ,ν)} = sigma`: `B_μ = Σ ∘ η_ν`.
/// `sigma` must have order `order − 1`.
pub fn pair_from_sigma<S: Scalar>(
    nu: &CircleMeasure,
    sigma: &Series<S>,
    order: usize,
) -> Result<MeasurePair, MeasureError> {
    require_order(order)?;
    let eta_nu = eta(&nu.moment_series::<S>(order)?)?;
    let b_mu = sigma.compose(&eta_nu.truncate(order - 1)?)?;
    let big_m = moments_from_b(&b_mu)?;
    Ok(MeasurePair::new(CircleMeasure::from_scalars(&big_m.coeffs()[1..]), nu.clone()))
}

/// `(γ^{1/n}, σ/n)` with the principal root.
pub fn root_generator(g: &IdGenerator, n: usize) -> Result<IdGenerator, MeasureError> {
    if n == 0 {
        return Err(MeasureError::Domain("root index must be positive".into()));
    }
    let k = BigRational::from_integer((n as i64).into());
    Ok(IdGenerator {
        gamma: g.gamma.powf(1.0 / n as f64),
        sigma: g.sigma.iter().map(|a| Atom::new(a.turns.clone(), a.weight.clone() / k.clone())).collect(),
    })
}

/// The `⊠`-semigroup through `(μ, ν)`, where `ν` has generator `gen_nu` and
/// `Σ_{(μ,ν)} = sigma_target` (order `order − 1`):
/// `η_{ν_t}^{⟨−1⟩}(z) = z γ'^t exp(t u(z))` and
/// `B_{μ_t} = (sigma_target ∘ η_{ν_t})^t`.
pub fn semigroup_pair(
    gen_nu: &IdGenerator,
    sigma_target: &Series<Approx>,
    t: f64,
    order: usize,
) -> Result<MeasurePair, MeasureError> {
    require_order(order)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(MeasureError::Domain(format!("t must be a finite nonnegative number, got {t}")));
    }
    if sigma_target.order() + 1 != order {
        return Err(MeasureError::Domain(format!(
            "Σ has order {}, expected {}",
            sigma_target.order(),
            order - 1
        )));
    }
    let s0 = *sigma_target.constant_term();
    if s0.norm() > 1.0 + UNIT_TOL {
        return Err(MeasureError::Domain(format!("|Σ(0)| = {} exceeds one", s0.norm())));
    }
    if t == 0.0 {
        return Ok(MeasurePair::unit());
    }
    let tt = Approx::new(t, 0.0);
    let log_gamma = gen_nu.gamma.ln();
    let exponent = kernel_series(&gen_nu.sigma, order - 1).add_constant(&log_gamma).scale(&tt);
    let eta_t = eta_from_inverse_over_z(&series_exp(&exponent))?;
    let m_nu = moments_from_eta(&eta_t)?;
    let composed = sigma_target.compose(&eta_t.truncate(order - 1)?)?;
    let b_mu = series_powf(&composed, t)?;
    let big_m = moments_from_b(&b_mu)?;
    Ok(MeasurePair::new(measure_from_moment_series(&big_m), measure_from_moment_series(&m_nu)))
}

#[cfg(test)]
mod tests {
    use super::super::{cfree_multiplicative_convolve, cfree_power, rational, sigma_of_pair};
    use super::*;
    use crate::transforms::b_series;

    fn c(re: f64, im: f64) -> Approx {
        Approx::new(re, im)
    }

    fn gen(gamma_turns: (i64, i64), atoms: &[((i64, i64), (i64, i64))]) -> IdGenerator {
        let gamma = Approx::unit_from_turns(&rational(gamma_turns.0, gamma_turns.1)).unwrap();
        let sigma = atoms.iter().map(|&((a, b), (p, q))| Atom::new(rational(a, b), rational(p, q))).collect();
        IdGenerator::new(gamma, sigma).unwrap()
    }

    fn moments(m: &CircleMeasure, n: usize) -> Vec<Approx> {
        m.moments_approx(n).unwrap()
    }

    fn close(a: &[Approx], b: &[Approx], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn exp_and_log_invert() {
        let f = Series::from_coeffs(vec![c(0.3, -0.2), c(1.0, 0.5), c(-0.7, 0.1), c(0.2, 0.2)]).unwrap();
        let e = series_exp(&f);
        assert!(series_log(&e).unwrap().close_to(&f, 1e-13));
        let z = Series::<Approx>::identity(5);
        let e = series_exp(&z);
        let want = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0];
        for (k, w) in want.iter().enumerate() {
            assert!((e.coeffs()[k] - c(*w, 0.0)).norm() < 1e-15);
        }
        let sq = series_powf(&e, 2.0).unwrap();
        assert!(sq.close_to(&series_exp(&z.scale(&c(2.0, 0.0))), 1e-13));
        let neg = Series::constant(c(-1.0, 0.0), 3);
        assert!(matches!(series_log(&neg), Err(MeasureError::BranchCut(_))));
        assert!(series_log(&Series::zero(3)).is_err());
    }

    #[test]
    fn herglotz_examples() {
        let g = gen((1, 3), &[]);
        let h = herglotz_exp(&g, -1, 4).unwrap();
        assert!(h.close_to(&Series::constant(g.gamma, 4), 1e-15));
        let s: f64 = 0.75;
        let g = gen((0, 1), &[((0, 1), (3, 4))]);
        let h = herglotz_exp(&g, -1, 4).unwrap();
        assert!((h.coeffs()[0] - c((-s).exp(), 0.0)).norm() < 1e-14);
        assert!((h.coeffs()[1] - c(-2.0 * s * (-s).exp(), 0.0)).norm() < 1e-14);
        let g = gen((1, 5), &[((1, 7), (1, 2)), ((2, 3), (1, 3))]);
        let prod = herglotz_exp(&g, 1, 6).unwrap().mul(&herglotz_exp(&g, -1, 6).unwrap()).unwrap();
        assert!(prod.close_to(&Series::constant(g.gamma * g.gamma, 6), 1e-13));
        assert!(herglotz_exp(&g, 2, 3).is_err());
    }

    #[test]
    fn idiv_measures_without_sigma_are_point_masses() {
        let g = gen((1, 5), &[]);
        let b = idiv_boolean_measure(&g, 5).unwrap();
        let point = CircleMeasure::point_mass(rational(1, 5));
        assert!(close(&moments(&b, 5), &moments(&point, 5), 1e-14));
        let f = idiv_free_measure(&g, 5).unwrap();
        let conj = CircleMeasure::point_mass(rational(-1, 5));
        assert!(close(&moments(&f, 5), &moments(&conj, 5), 1e-14));
        let g = gen((0, 1), &[((0, 1), (1, 2))]);
        let b = idiv_boolean_measure(&g, 3).unwrap();
        assert!((moments(&b, 1)[0] - c((-0.5f64).exp(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn idiv_moments_are_positive_definite() {
        let g = gen((1, 9), &[((1, 6), (1, 3)), ((5, 8), (1, 4))]);
        for m in [idiv_boolean_measure(&g, 8).unwrap(), idiv_free_measure(&g, 8).unwrap()] {
            let report = super::super::toeplitz_psd_check(&moments(&m, 8));
            assert!(report.is_psd(1e-9), "{report:?}");
        }
    }

    #[test]
    fn boolean_roots() {
        let g = gen((2, 7), &[((1, 6), (1, 3)), ((5, 8), (1, 4))]);
        let b = b_series(&idiv_boolean_measure(&g, 7).unwrap().moment_series::<Approx>(7).unwrap()).unwrap();
        for n in 1..=5 {
            let root = root_generator(&g, n).unwrap();
            let br = b_series(&idiv_boolean_measure(&root, 7).unwrap().moment_series::<Approx>(7).unwrap()).unwrap();
            assert!(br.pow(n).close_to(&b, 1e-10), "n = {n}");
        }
    }

    fn generator_pair(g_mu: &IdGenerator, g_nu: &IdGenerator, order: usize) -> MeasurePair {
        let nu = idiv_free_measure(g_nu, order).unwrap();
        pair_from_sigma(&nu, &herglotz_exp(g_mu, -1, order - 1).unwrap(), order).unwrap()
    }

    #[test]
    fn generator_pairs_have_roots() {
        let g_mu = gen((1, 8), &[((1, 4), (1, 2)), ((2, 3), (1, 5))]);
        let g_nu = gen((-1, 10), &[((1, 3), (1, 4))]);
        let pair = generator_pair(&g_mu, &g_nu, 6);
        let sigma = sigma_of_pair::<Approx>(&pair, 6).unwrap();
        assert!(sigma.close_to(&herglotz_exp(&g_mu, -1, 5).unwrap(), 1e-12));
        for n in 1..=5 {
            let root = generator_pair(&root_generator(&g_mu, n).unwrap(), &root_generator(&g_nu, n).unwrap(), 6);
            let back = cfree_power::<Approx>(&root, n, 6).unwrap();
            assert!(close(&moments(&back.mu, 6), &moments(&pair.mu, 6), 1e-9), "n = {n}");
            assert!(close(&moments(&back.nu, 6), &moments(&pair.nu, 6), 1e-9), "n = {n}");
        }
    }

    #[test]
    fn semigroup_law() {
        let g_mu = gen((1, 8), &[((1, 4), (1, 2)), ((2, 3), (1, 5))]);
        let g_nu = gen((-1, 10), &[((1, 3), (1, 4))]);
        let order = 8;
        let target = herglotz_exp(&g_mu, -1, order - 1).unwrap();
        assert_eq!(semigroup_pair(&g_nu, &target, 0.0, order).unwrap(), MeasurePair::unit());
        let one = semigroup_pair(&g_nu, &target, 1.0, order).unwrap();
        assert!(sigma_of_pair::<Approx>(&one, order).unwrap().close_to(&target, 1e-10));
        let ts = [0.25, 0.5, 1.0];
        for &s in &ts {
            for &t in &ts {
                let a = semigroup_pair(&g_nu, &target, s, order).unwrap();
                let b = semigroup_pair(&g_nu, &target, t, order).unwrap();
                let ab = cfree_multiplicative_convolve::<Approx>(&a, &b, order).unwrap();
                let st = semigroup_pair(&g_nu, &target, s + t, order).unwrap();
                assert!(close(&moments(&ab.mu, order), &moments(&st.mu, order), 1e-9), "{s} {t}");
                assert!(close(&moments(&ab.nu, order), &moments(&st.nu, order), 1e-9), "{s} {t}");
            }
        }
        let bad = Series::constant(c(-0.5, 0.0), order - 1);
        assert!(matches!(semigroup_pair(&g_nu, &bad, 0.5, order), Err(MeasureError::BranchCut(_))));
        assert!(semigroup_pair(&g_nu, &target, -1.0, order).is_err());
    }

    #[test]
    fn generator_validation() {
        assert!(IdGenerator::new(c(2.0, 0.0), vec![]).is_err());
        assert!(IdGenerator::new(c(1.0, 0.0), vec![Atom::new(rational(0, 1), rational(-1, 2))]).is_err());
        let g = gen((0, 1), &[((1, 4), (1, 2)), ((1, 2), (1, 4))]);
        assert!((g.mass() - 0.75).abs() < 1e-15);
        assert!((g.sigma_moment(1) - c(-0.25, 0.5)).norm() < 1e-15);
    }
}
