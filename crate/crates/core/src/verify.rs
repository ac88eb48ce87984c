//! Seeded verification suites. Every check compares a production route
//! against an independent one (brute-force enumeration, partition sums, or a
//! second transform route).

use std::collections::BTreeSet;
use std::fmt::{self, Display};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cumulants::{
    self, alternating_word, kappa, kappa_two_state, nc_sum, product_data, product_phi_cumulants,
    product_psi_cumulants, th1_formula, OneStateData, TwoStateData,
};
use crate::measures::{
    boolean_convolve, cfree_multiplicative_convolve, cfree_power, free_multiplicative_convolve, herglotz_exp,
    idiv_free_measure, pair_from_sigma, root_generator, semigroup_pair, sigma_of_pair, toeplitz_psd_check, Atom,
    CircleMeasure, IdGenerator, MeasurePair,
};
use crate::partitions::{brute, enumerate_nc, enumerate_nc_0, enumerate_nc_s, enumerate_ncl, group_nc_s_by_join};
use crate::random;
use crate::series::{boxed_convolution, boxed_convolution_checked, Approx, Exact, Scalar, Series};
use crate::transforms::{
    ct_transform, moments_from_t, moments_via_ncl, phi_moments_from_ct, sigma_routes, t_transform,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Partitions,
    Series,
    Cumulants,
    Transforms,
    Measures,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Partitions, Suite::Series, Suite::Cumulants, Suite::Transforms, Suite::Measures];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "partitions" => Suite::Partitions,
            "series" => Suite::Series,
            "cumulants" => Suite::Cumulants,
            "transforms" => Suite::Transforms,
            "measures" => Suite::Measures,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

impl Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Partitions => "partitions",
            Suite::Series => "series",
            Suite::Cumulants => "cumulants",
            Suite::Transforms => "transforms",
            Suite::Measures => "measures",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "ok  " } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

type Outcome = Result<String, String>;

fn run(name: &str, body: impl FnOnce() -> Outcome) -> Check {
    let (passed, detail) = match body() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check { name: name.to_string(), passed, detail }
}

fn err<E: Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub order: usize,
    pub seed: u64,
    pub cases: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { order: 5, seed: 7, cases: 25 }
    }
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Vec<Check> {
    let VerifyConfig { order, seed, cases } = *config;
    let mut rng = random::rng(seed ^ (suite as u64) << 32);
    let small = order.min(4);
    match suite {
        Suite::Partitions => vec![
            nc_counts(8),
            ncl_counts(order.clamp(1, 8)),
            small_class_counts(),
            kreweras_identities(7),
            join_matches_oracle(5),
        ],
        Suite::Series => vec![boxed_inverse_identity(&mut rng, cases, order.max(1)), boxed_associativity(&mut rng, cases, order.max(1))],
        Suite::Cumulants => vec![
            cumulant_round_trips(&mut rng, cases, order.max(1)),
            cumulant_recurrences_match_nc_sums(&mut rng, cases.min(10), order.clamp(1, 8)),
            product_law(&mut rng, cases, order.min(5)),
            fibre_decomposition(&mut rng, cases.min(10), small),
            closed_product_formula(&mut rng, cases, order.clamp(2, 5)),
        ],
        Suite::Transforms => vec![
            multiplicativity(&mut rng, cases, order.clamp(1, 5)),
            ncl_three_way(&mut rng, cases.min(10), order.clamp(1, 8)),
            ncl_witnesses(&mut rng),
            sigma_dual_route(&mut rng, cases, order.max(2)),
        ],
        Suite::Measures => vec![
            haar_absorption(&mut rng, cases, order.max(1)),
            generator_roots(&mut rng, 5, 6),
            semigroup_law(&mut rng, 8),
            pair_algebra(&mut rng, cases.min(10), 6),
            convolution_psd(&mut rng, cases, order.max(2), 1e-7),
        ],
    }
}

pub fn run_all(config: &VerifyConfig) -> Vec<(Suite, Vec<Check>)> {
    Suite::ALL.iter().map(|&s| (s, run_suite(s, config))).collect()
}

// ---------------------------------------------------------------- partitions

/// Catalan numbers by `C_{n+1} = Σ C_i C_{n−i}`.
pub fn catalan(n_max: usize) -> Vec<u64> {
    let mut c = vec![1u64];
    for n in 0..n_max {
        c.push((0..=n).map(|i| c[i] * c[n - i]).sum());
    }
    c
}

pub fn nc_counts(n_max: usize) -> Check {
    run(&format!("|NC(n)| is Catalan for n ≤ {n_max}"), || {
        let c = catalan(n_max);
        let mut counts = Vec::new();
        for n in 1..=n_max {
            let got = enumerate_nc(n).map_err(err)?.len() as u64;
            ensure(got == c[n], || format!("|NC({n})| = {got}, expected {}", c[n]))?;
            counts.push(got);
        }
        Ok(format!("{counts:?}"))
    })
}

pub fn ncl_counts(n_max: usize) -> Check {
    run(&format!("NCL(n) matches the block-family oracle for n ≤ {n_max}"), || {
        let mut counts = Vec::new();
        for n in 1..=n_max {
            let fast: BTreeSet<_> = enumerate_ncl(n).map_err(err)?.into_iter().collect();
            let slow: BTreeSet<_> = brute::ncl_partitions(n).into_iter().collect();
            ensure(fast == slow, || format!("n = {n}: {} vs oracle {}", fast.len(), slow.len()))?;
            for p in enumerate_nc(n).map_err(err)? {
                ensure(fast.contains(&p.as_linked()), || format!("{p} missing from NCL({n})"))?;
            }
            counts.push(fast.len());
        }
        Ok(format!("{counts:?}"))
    })
}

pub fn small_class_counts() -> Check {
    run("|NC_0(4)| = 2 and |NC_S(4)| = 3", || {
        let a = enumerate_nc_0(4).map_err(err)?.len();
        let b = enumerate_nc_s(4).map_err(err)?.len();
        ensure(a == 2 && b == 3, || format!("got {a} and {b}"))?;
        Ok(format!("{a}, {b}"))
    })
}

pub fn kreweras_identities(n_max: usize) -> Check {
    run(&format!("|π| + |Kr(π)| = n + 1 and Kr matches the oracle, n ≤ {n_max}"), || {
        let mut total = 0;
        for n in 1..=n_max {
            for p in enumerate_nc(n).map_err(err)? {
                let k = p.kreweras();
                ensure(p.len() + k.len() == n + 1, || format!("size identity fails at {p}"))?;
                ensure(k == brute::kreweras(&p), || format!("Kr({p}) = {k} disagrees with the oracle"))?;
                total += 1;
            }
        }
        Ok(format!("{total} partitions"))
    })
}

pub fn join_matches_oracle(n_max: usize) -> Check {
    run(&format!("join matches the least-upper-bound oracle, n ≤ {n_max}"), || {
        let mut total = 0;
        for n in 1..=n_max {
            let all = enumerate_nc(n).map_err(err)?;
            for p in &all {
                for q in &all {
                    let j = p.join(q).map_err(err)?;
                    ensure(j == brute::join(p, q), || format!("{p} ∨ {q} = {j} disagrees with the oracle"))?;
                    total += 1;
                }
            }
        }
        Ok(format!("{total} pairs"))
    })
}

// -------------------------------------------------------------------- series

pub fn boxed_inverse_identity(rng: &mut ChaCha8Rng, cases: usize, order: usize) -> Check {
    run(&format!("f^{{⟨−1⟩}} ∘ (f ⋆ g) = (1/α_1)(f ⋆̌ g), {cases} cases, order {order}"), || {
        for case in 0..cases {
            let f = random::invertible_series(rng, order);
            let g = random::vanishing_series(rng, order);
            let a1 = f.coeffs()[1].clone();
            let lhs = f.invert_composition().map_err(err)?.compose(&boxed_convolution(&f, &g).map_err(err)?).map_err(err)?;
            let rhs = boxed_convolution_checked(&f, &g).map_err(err)?.scale(&(Exact::from_i64(1) / a1));
            ensure(lhs == rhs, || format!("case {case} differs"))?;
        }
        Ok("exact equality".into())
    })
}

pub fn boxed_associativity(rng: &mut ChaCha8Rng, cases: usize, order: usize) -> Check {
    run(&format!("⋆ is associative and commutative, {cases} cases, order {order}"), || {
        for case in 0..cases {
            let [f, g, h] = [(); 3].map(|_| random::vanishing_series(rng, order));
            let fg = boxed_convolution(&f, &g).map_err(err)?;
            let gf = boxed_convolution(&g, &f).map_err(err)?;
            let left = boxed_convolution(&fg, &h).map_err(err)?;
            let right = boxed_convolution(&f, &boxed_convolution(&g, &h).map_err(err)?).map_err(err)?;
            ensure(fg == gf && left == right, || format!("case {case} differs"))?;
        }
        Ok("exact equality".into())
    })
}

// ----------------------------------------------------------------- cumulants

pub fn cumulant_round_trips(rng: &mut ChaCha8Rng, cases: usize, order: usize) -> Check {
    run(&format!("moment ↔ cumulant round trips in both states, {cases} cases, order {order}"), || {
        for case in 0..cases {
            let m = random::vanishing_series(rng, order);
            let big_m = random::vanishing_series(rng, order);
            let psi = OneStateData::from_moments(m.clone()).map_err(err)?;
            let back = cumulants::moments_from_free_cumulants(psi.cumulants()).map_err(err)?;
            ensure(back == m, || format!("ψ round trip fails in case {case}"))?;
            let two = TwoStateData::from_phi_moments(big_m.clone(), psi).map_err(err)?;
            let back = cumulants::moments_from_cfree_cumulants(two.cfree_cumulants(), &m).map_err(err)?;
            ensure(back == big_m, || format!("φ round trip fails in case {case}"))?;
            let r = random::vanishing_series(rng, order);
            let m = cumulants::moments_from_free_cumulants(&r).map_err(err)?;
            ensure(cumulants::free_cumulants_from_moments(&m).map_err(err)? == r, || format!("R round trip fails in case {case}"))?;
        }
        Ok("exact equality".into())
    })
}

pub fn cumulant_recurrences_match_nc_sums(rng: &mut ChaCha8Rng, cases: usize, order: usize) -> Check {
    run(&format!("cumulant recurrences agree with NC sums, {cases} cases, order {order}"), || {
        for case in 0..cases {
            let r = random::vanishing_series(rng, order);
            let cr = random::vanishing_series(rng, order);
            let m = cumulants::moments_from_free_cumulants(&r).map_err(err)?;
            ensure(m == nc_sum::moments_from_free_cumulants(&r).map_err(err)?, || format!("ψ side, case {case}"))?;
            let big_m = cumulants::moments_from_cfree_cumulants(&cr, &m).map_err(err)?;
            ensure(big_m == nc_sum::phi_moments_from_cumulants(&cr, &r).map_err(err)?, || format!("φ side, case {case}"))?;
        }
        Ok("exact equality".into())
    })
}

pub fn product_law(rng: &mut ChaCha8Rng, cases: usize, n_max: usize) -> Check {
    run(&format!("R_XY from NC_0 sums equals R_X ⋆ R_Y, {cases} cases, n ≤ {n_max}"), || {
        for case in 0..cases {
            let rx = random::vanishing_series(rng, n_max);
            let ry = random::vanishing_series(rng, n_max);
            let boxed = boxed_convolution(&rx, &ry).map_err(err)?;
            for n in 1..=n_max {
                let sum = product_psi_cumulants(&rx, &ry, n).map_err(err)?;
                ensure(sum == boxed.coeffs()[n], || format!("case {case}, n = {n}"))?;
            }
        }
        Ok("exact equality".into())
    })
}

pub fn fibre_decomposition(rng: &mut ChaCha8Rng, cases: usize, n_max: usize) -> Check {
    run(&format!("κ_π[XY, ...] is the sum over its NC_S fibre, {cases} cases, n ≤ {n_max}"), || {
        let fibres: Vec<_> = (1..=n_max).map(|n| group_nc_s_by_join(2 * n)).collect::<Result<_, _>>().map_err(err)?;
        for case in 0..cases {
            let x = random::two_state(rng, n_max);
            let y = random::two_state(rng, n_max);
            let xy = product_data(&x, &y).map_err(err)?;
            for n in 1..=n_max {
                let word = alternating_word(n);
                let ones = vec![0; n];
                for pi in enumerate_nc(n).map_err(err)? {
                    let mut psi = Exact::zero();
                    let mut phi = Exact::zero();
                    for sigma in &fibres[n - 1][&pi] {
                        psi += kappa(sigma, &word, &[x.psi().cumulants(), y.psi().cumulants()]).map_err(err)?;
                        phi += kappa_two_state(sigma, &word, &[&x, &y]).map_err(err)?;
                    }
                    let want_psi = kappa(&pi, &ones, &[xy.psi().cumulants()]).map_err(err)?;
                    let want_phi = kappa_two_state(&pi, &ones, &[&xy]).map_err(err)?;
                    ensure(psi == want_psi && phi == want_phi, || format!("case {case}, π = {pi}"))?;
                }
            }
        }
        Ok("exact equality".into())
    })
}

pub fn closed_product_formula(rng: &mut ChaCha8Rng, cases: usize, order: usize) -> Check {
    run(&format!("closed ᶜR_XY formula equals the NC_0 route, {cases} cases, to order {}", order - 1), || {
        for case in 0..cases {
            let x = random::two_state(rng, order);
            let y = random::two_state(rng, order);
            let f = th1_formula(&x, &y).map_err(err)?;
            for k in 0..order {
                let want = product_phi_cumulants(&x, &y, k + 1).map_err(err)?;
                ensure(f.coeffs()[k] == want, || format!("case {case}, coefficient {k}"))?;
            }
        }
        Ok("exact equality".into())
    })
}

// ---------------------------------------------------------------- transforms

pub fn multiplicativity(rng: &mut ChaCha8Rng, cases: usize, order: usize) -> Check {
    run(&format!("T_XY = T_X T_Y and ᶜT_XY = ᶜT_X ᶜT_Y, {cases} pairs, order {order}"), || {
        let t = |d: &TwoStateData<Exact>| t_transform(d.psi().moments());
        let ct = |d: &TwoStateData<Exact>| ct_transform(d.phi_moments(), d.psi().moments());
        for case in 0..cases {
            // T and ᶜT of order `order` need moments of order `order + 1`.
            let x = random::two_state(rng, order + 1);
            let y = random::two_state(rng, order + 1);
            let xy = product_data(&x, &y).map_err(err)?;
            let lhs = t(&xy).map_err(err)?;
            let rhs = t(&x).map_err(err)?.mul(&t(&y).map_err(err)?).map_err(err)?;
            ensure(lhs == rhs, || format!("T differs in case {case}"))?;
            let lhs = ct(&xy).map_err(err)?;
            let rhs = ct(&x).map_err(err)?.mul(&ct(&y).map_err(err)?).map_err(err)?;
            ensure(lhs == rhs, || format!("ᶜT differs in case {case}"))?;
        }
        Ok("exact equality".into())
    })
}

pub fn ncl_three_way(rng: &mut ChaCha8Rng, cases: usize, n_max: usize) -> Check {
    run(&format!("NCL sums, T inversion and T round trip agree, {cases} cases, n ≤ {n_max}"), || {
        for case in 0..cases {
            let mut t = random::unit_series(rng, n_max - 1);
            let m = moments_from_t(&t).map_err(err)?;
            ensure(t_transform(&m).map_err(err)? == t, || format!("T round trip fails in case {case}"))?;
            let ct = random::unit_series(rng, n_max - 1);
            let big_m = phi_moments_from_ct(&ct, &m).map_err(err)?;
            ensure(ct_transform(&big_m, &m).map_err(err)? == ct, || format!("ᶜT round trip fails in case {case}"))?;
            for n in 1..=n_max {
                let psi = moments_via_ncl(&t, None, n).map_err(err)?;
                ensure(psi == m.coeffs()[n], || format!("m_{n} differs in case {case}"))?;
                let phi = moments_via_ncl(&t, Some(&ct), n).map_err(err)?;
                ensure(phi == big_m.coeffs()[n], || format!("M_{n} differs in case {case}"))?;
            }
            t.set_coeff(0, Exact::zero()).map_err(err)?;
            ensure(moments_from_t(&t).is_err(), || "t_0 = 0 accepted".into())?;
        }
        Ok("exact equality".into())
    })
}

pub fn ncl_witnesses(rng: &mut ChaCha8Rng) -> Check {
    run("m_3 = t_0³ + 3t_0²t_1 + t_0t_1² + t_0²t_2 and M_2 = t_0 ᶜt_1 + ᶜt_0²", || {
        let t = random::unit_series(rng, 2);
        let ct = random::unit_series(rng, 2);
        let [t0, t1, t2] = [0, 1, 2].map(|k| t.coeffs()[k].clone());
        let (c0, c1) = (ct.coeffs()[0].clone(), ct.coeffs()[1].clone());
        let m3 = t0.clone() * t0.clone() * t0.clone()
            + Exact::from_i64(3) * t0.clone() * t0.clone() * t1.clone()
            + t0.clone() * t1.clone() * t1
            + t0.clone() * t0.clone() * t2;
        let big_m2 = t0 * c1 + c0.clone() * c0;
        ensure(moments_via_ncl(&t, None, 3).map_err(err)? == m3, || "m_3 (NCL)".into())?;
        ensure(moments_from_t(&t).map_err(err)?.coeffs()[3] == m3, || "m_3 (inversion)".into())?;
        ensure(moments_via_ncl(&t, Some(&ct), 2).map_err(err)? == big_m2, || "M_2 (NCL)".into())?;
        let m = moments_from_t(&t.truncate(1).map_err(err)?).map_err(err)?;
        ensure(phi_moments_from_ct(&ct.truncate(1).map_err(err)?, &m).map_err(err)?.coeffs()[2] == big_m2, || "M_2 (inversion)".into())?;
        Ok("exact equality".into())
    })
}

/// `λ = (3 + 4i)/5`, a unit with exact rational parts.
pub fn pythagorean_unit() -> Exact {
    Exact::new(BigRational::new(3.into(), 5.into()), BigRational::new(4.into(), 5.into()))
}

pub fn sigma_dual_route(rng: &mut ChaCha8Rng, cases: usize, order: usize) -> Check {
    run(&format!("Σ via ᶜT and via B ∘ η^{{⟨−1⟩}} agree exactly, {cases} cases, order {order}"), || {
        for case in 0..cases {
            let m = random::invertible_series(rng, order + 1);
            let big_m = random::vanishing_series(rng, order + 1);
            let routes = sigma_routes(&big_m, &m).map_err(err)?;
            ensure(routes.via_ct == routes.via_b, || format!("routes differ in case {case}"))?;
            ensure(routes.via_b.order() == order, || "wrong order".into())?;
            ensure(routes.via_b.coeffs()[0] == big_m.coeffs()[1], || format!("Σ(0) ≠ M_1 in case {case}"))?;
        }
        let lambda = pythagorean_unit();
        let mut p = Exact::from_i64(1);
        let mut coeffs = vec![Exact::zero()];
        for _ in 0..=order {
            p *= lambda.clone();
            coeffs.push(p.clone());
        }
        let point = Series::from_coeffs(coeffs).map_err(err)?;
        let m = random::invertible_series(rng, order + 1);
        let routes = sigma_routes(&point, &m).map_err(err)?;
        let constant = Series::constant(lambda, order);
        ensure(routes.via_b == constant && routes.via_ct == constant, || "Σ of δ_λ is not λ".into())?;
        Ok("exact equality".into())
    })
}

// ------------------------------------------------------------------ measures

fn quarter_turn_measure(rng: &mut ChaCha8Rng) -> CircleMeasure {
    let raw: Vec<i64> = (0..4).map(|_| rng.gen_range(0..=4)).collect();
    let total: i64 = raw.iter().sum::<i64>().max(1);
    let mut atoms: Vec<Atom> = raw
        .iter()
        .enumerate()
        .map(|(k, &w)| Atom::new(BigRational::new((k as i64).into(), 4.into()), BigRational::new(w.into(), total.into())))
        .collect();
    if raw.iter().all(|&w| w == 0) {
        atoms[0].weight = BigRational::from_integer(1.into());
    }
    CircleMeasure::atomic(atoms).expect("normalized")
}

pub fn haar_absorption(rng: &mut ChaCha8Rng, cases: usize, order: usize) -> Check {
    run(&format!("(μ_1, Haar) ⊠ (μ_2, Haar) has moments (c_1 c_2)^n exactly, {cases} cases"), || {
        for case in 0..cases {
            let mu1 = quarter_turn_measure(rng);
            let alpha = random::exact_scalar(rng) * Exact::new(BigRational::new(1.into(), 10.into()), BigRational::zero());
            let mu2 = CircleMeasure::poisson(alpha).map_err(err)?;
            let out = cfree_multiplicative_convolve::<Exact>(
                &MeasurePair::new(mu1.clone(), CircleMeasure::Haar),
                &MeasurePair::new(mu2.clone(), CircleMeasure::Haar),
                order,
            )
            .map_err(err)?;
            let c = mu1.moments::<Exact>(1).map_err(err)?[0].clone() * mu2.moments::<Exact>(1).map_err(err)?[0].clone();
            let mut p = Exact::from_i64(1);
            for (k, got) in out.mu.moments::<Exact>(order).map_err(err)?.into_iter().enumerate() {
                p *= c.clone();
                ensure(got == p, || format!("case {case}, moment {}", k + 1))?;
            }
            ensure(out.nu.is_haar_like(order).map_err(err)?, || format!("ν is not Haar in case {case}"))?;
        }
        Ok("exact equality".into())
    })
}

/// A generator with `γ` at a random rational angle and 1–3 atoms of mass ≤ 1/2.
pub fn random_generator(rng: &mut ChaCha8Rng) -> IdGenerator {
    let den = rng.gen_range(1..=12i64);
    let gamma = Approx::unit_from_turns(&BigRational::new(rng.gen_range(-den / 2..=den / 2).into(), den.into()))
        .expect("approx");
    let k = rng.gen_range(1..=3);
    let sigma = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=12i64);
            Atom::new(
                BigRational::new(rng.gen_range(0..d).into(), d.into()),
                BigRational::new(rng.gen_range(1..=5i64).into(), 10.into()),
            )
        })
        .collect();
    IdGenerator::new(gamma, sigma).expect("valid generator")
}

/// The pair with `ν = ν_⊠^{g_ν}` and `Σ = γ exp(−∫ (1+ζz)/(1−ζz) dσ)` for `g_μ`.
pub fn generator_pair(g_mu: &IdGenerator, g_nu: &IdGenerator, order: usize) -> Result<MeasurePair, String> {
    let nu = idiv_free_measure(g_nu, order).map_err(err)?;
    pair_from_sigma(&nu, &herglotz_exp(g_mu, -1, order - 1).map_err(err)?, order).map_err(err)
}

fn max_gap(a: &CircleMeasure, b: &CircleMeasure, order: usize) -> Result<f64, String> {
    let x = a.moments_approx(order).map_err(err)?;
    let y = b.moments_approx(order).map_err(err)?;
    Ok(x.iter().zip(&y).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max))
}

fn pair_gap(a: &MeasurePair, b: &MeasurePair, order: usize) -> Result<f64, String> {
    Ok(max_gap(&a.mu, &b.mu, order)?.max(max_gap(&a.nu, &b.nu, order)?))
}

pub fn generator_roots(rng: &mut ChaCha8Rng, n_max: usize, order: usize) -> Check {
    run(&format!("generator pairs have n-th roots, n ≤ {n_max}, order {order}, tol 1e-9"), || {
        let mut worst: f64 = 0.0;
        for _ in 0..3 {
            let (g_mu, g_nu) = (random_generator(rng), random_generator(rng));
            let pair = generator_pair(&g_mu, &g_nu, order)?;
            for n in 1..=n_max {
                let root_mu = root_generator(&g_mu, n).map_err(err)?;
                let root_nu = root_generator(&g_nu, n).map_err(err)?;
                let root = generator_pair(&root_mu, &root_nu, order)?;
                let back = cfree_power::<Approx>(&root, n, order).map_err(err)?;
                let gap = pair_gap(&back, &pair, order)?;
                worst = worst.max(gap);
                ensure(gap <= 1e-9, || format!("n = {n}: gap {gap:e}"))?;
            }
        }
        Ok(format!("max gap {worst:.2e}"))
    })
}

pub fn semigroup_law(rng: &mut ChaCha8Rng, order: usize) -> Check {
    run(&format!("(μ_s, ν_s) ⊠ (μ_t, ν_t) = (μ_{{s+t}}, ν_{{s+t}}), s, t ∈ {{¼, ½, 1}}, order {order}, tol 1e-9"), || {
        let (g_mu, g_nu) = (random_generator(rng), random_generator(rng));
        let target = herglotz_exp(&g_mu, -1, order - 1).map_err(err)?;
        let at = |t: f64| semigroup_pair(&g_nu, &target, t, order).map_err(err);
        ensure(at(0.0)? == MeasurePair::unit(), || "t = 0 is not (δ_1, δ_1)".into())?;
        let one = at(1.0)?;
        let sigma = sigma_of_pair::<Approx>(&one, order).map_err(err)?;
        ensure(sigma.close_to(&target, 1e-10), || format!("Σ at t = 1 off by {:e}", sigma.max_gap(&target)))?;
        let ts = [0.25, 0.5, 1.0];
        let mut worst: f64 = 0.0;
        for &s in &ts {
            for &t in &ts {
                let prod = cfree_multiplicative_convolve::<Approx>(&at(s)?, &at(t)?, order).map_err(err)?;
                let gap = pair_gap(&prod, &at(s + t)?, order)?;
                worst = worst.max(gap);
                ensure(gap <= 1e-9, || format!("s = {s}, t = {t}: gap {gap:e}"))?;
            }
        }
        Ok(format!("max gap {worst:.2e}"))
    })
}

fn random_pair(rng: &mut ChaCha8Rng) -> MeasurePair {
    MeasurePair::new(random::atomic_measure(rng), random::atomic_measure_nonzero_mean(rng))
}

pub fn pair_algebra(rng: &mut ChaCha8Rng, cases: usize, order: usize) -> Check {
    run(&format!("⊠ on pairs is commutative and associative, Σ(0) = M_1, {cases} cases, order {order}"), || {
        let conv = |a: &MeasurePair, b: &MeasurePair| cfree_multiplicative_convolve::<Approx>(a, b, order).map_err(err);
        let mut worst: f64 = 0.0;
        for case in 0..cases {
            let [a, b, c] = [(); 3].map(|_| random_pair(rng));
            let ab = conv(&a, &b)?;
            let gap = pair_gap(&ab, &conv(&b, &a)?, order)?.max(pair_gap(&conv(&ab, &c)?, &conv(&a, &conv(&b, &c)?)?, order)?);
            worst = worst.max(gap);
            ensure(gap <= 1e-9, || format!("case {case}: gap {gap:e}"))?;
            let sigma = sigma_of_pair::<Approx>(&ab, order).map_err(err)?;
            let s0 = sigma.coeffs()[0];
            ensure(s0.norm() <= 1.0 + 1e-12, || format!("|Σ(0)| = {} in case {case}", s0.norm()))?;
            let m1 = ab.mu.moments_approx(1).map_err(err)?[0];
            ensure((s0 - m1).norm() <= 1e-12, || format!("Σ(0) ≠ M_1 in case {case}"))?;
        }
        Ok(format!("max gap {worst:.2e}"))
    })
}

/// Runs every convolution on a seeded atomic corpus and gates each output.
pub fn convolution_psd(rng: &mut ChaCha8Rng, cases: usize, order: usize, tol: f64) -> Check {
    run(&format!("convolution outputs pass the Toeplitz gate at {tol:e}, {cases} cases, order {order}"), || {
        let mut worst = f64::INFINITY;
        let mut count = 0;
        for case in 0..cases {
            let (a, b) = (random_pair(rng), random_pair(rng));
            let outputs = [
                boolean_convolve::<Approx>(&a.mu, &b.mu, order).map_err(err)?,
                free_multiplicative_convolve::<Approx>(&a.nu, &b.nu, order).map_err(err)?,
            ];
            let pair = cfree_multiplicative_convolve::<Approx>(&a, &b, order).map_err(err)?;
            for m in outputs.iter().chain([&pair.mu, &pair.nu]) {
                let report = toeplitz_psd_check(&m.moments_approx(order).map_err(err)?);
                worst = worst.min(report.min_eigenvalue);
                count += 1;
                ensure(report.is_psd(tol), || format!("case {case}: min eigenvalue {:e}", report.min_eigenvalue))?;
            }
        }
        Ok(format!("{count} outputs, smallest eigenvalue {worst:.2e}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_numbers() {
        assert_eq!(catalan(8), vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]);
    }

    #[test]
    fn default_suites_pass() {
        let config = VerifyConfig { order: 4, seed: 3, cases: 3 };
        for (suite, checks) in run_all(&config) {
            for c in checks {
                assert!(c.passed, "{suite}: {c}");
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
