//! Seeded random inputs for the verification suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cumulants::{OneStateData, TwoStateData};
use crate::measures::{Atom, CircleMeasure};
use crate::series::{Exact, Series};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let num: i64 = rng.gen_range(-6..=6);
    let den: i64 = rng.gen_range(1..=5);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A complex rational with small numerators and denominators.
pub fn exact_scalar<R: Rng>(rng: &mut R) -> Exact {
    Exact::new(small_rational(rng), small_rational(rng))
}

pub fn nonzero_exact_scalar<R: Rng>(rng: &mut R) -> Exact {
    loop {
        let c = exact_scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// `c_1 z + ... + c_N z^N` with random coefficients.
pub fn vanishing_series<R: Rng>(rng: &mut R, order: usize) -> Series<Exact> {
    let mut cs = vec![Exact::zero()];
    cs.extend((0..order).map(|_| exact_scalar(rng)));
    Series::from_coeffs(cs).expect("nonempty")
}

/// Like [`vanishing_series`] with `c_1 != 0`.
pub fn invertible_series<R: Rng>(rng: &mut R, order: usize) -> Series<Exact> {
    let mut s = vanishing_series(rng, order);
    s.set_coeff(1, nonzero_exact_scalar(rng)).expect("order >= 1");
    s
}

/// A random series with nonzero constant term.
pub fn unit_series<R: Rng>(rng: &mut R, order: usize) -> Series<Exact> {
    let mut cs = vec![nonzero_exact_scalar(rng)];
    cs.extend((0..order).map(|_| exact_scalar(rng)));
    Series::from_coeffs(cs).expect("nonempty")
}

/// Random two-state data given by its cumulants, with `r_1 != 0`.
pub fn two_state<R: Rng>(rng: &mut R, order: usize) -> TwoStateData<Exact> {
    let psi = OneStateData::from_cumulants(invertible_series(rng, order)).expect("vanishing");
    TwoStateData::from_cfree_cumulants(vanishing_series(rng, order), psi).expect("vanishing")
}

/// A probability measure with 1 to 4 atoms at rational angles.
pub fn atomic_measure<R: Rng>(rng: &mut R) -> CircleMeasure {
    let k = rng.gen_range(1..=4);
    let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();
    let atoms = raw
        .iter()
        .map(|&w| {
            let den: i64 = rng.gen_range(1..=12);
            let num: i64 = rng.gen_range(0..den);
            Atom {
                turns: BigRational::new(BigInt::from(num), BigInt::from(den)),
                weight: BigRational::new(BigInt::from(w), BigInt::from(total)),
            }
        })
        .collect();
    CircleMeasure::atomic(atoms).expect("weights sum to one")
}

/// An atomic probability measure whose first moment is bounded away from zero.
pub fn atomic_measure_nonzero_mean<R: Rng>(rng: &mut R) -> CircleMeasure {
    loop {
        let m = atomic_measure(rng);
        let first = m.moments_approx(1).expect("atomic")[0];
        if first.norm() > 0.2 {
            return m;
        }
    }
}
