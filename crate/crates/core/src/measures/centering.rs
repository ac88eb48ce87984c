use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Atom, CircleMeasure, MeasureError};
use crate::series::scalar::reduce_turns;
use crate::series::{Approx, Scalar, Series};

/// Centering data for one row `μ_{n1}, ..., μ_{nk_n}` of an array.
#[derive(Clone, Debug, PartialEq)]
pub struct CenteredArrayRow {
    /// `arg b_{nk} / 2π`, exact.
    pub b_turns: Vec<BigRational>,
    pub b: Vec<Approx>,
    /// `dμ°(ζ) = dμ(bζ)`.
    pub centered: Vec<CircleMeasure>,
    pub h: Vec<Series<Approx>>,
}

/// Principal representative of `turns` in `(−1/2, 1/2]`.
fn principal_turns(turns: &BigRational) -> BigRational {
    let t = reduce_turns(turns);
    let half = BigRational::new(1.into(), 2.into());
    if t > half {
        t - BigRational::one()
    } else {
        t
    }
}

fn to_f64(r: &BigRational) -> f64 {
    Approx::from_rational(r, &BigRational::zero()).re
}

/// `|arg ζ| < 1`, i.e. `|2π t| < 1`. The boundary is irrational, so the
/// floating-point comparison is never ambiguous for rational `t`.
fn inside_unit_arc(t: &BigRational) -> bool {
    (2.0 * std::f64::consts::PI * to_f64(t)).abs() < 1.0
}

fn atoms_of(m: &CircleMeasure) -> Result<&[Atom], MeasureError> {
    match m {
        CircleMeasure::Atomic(atoms) => Ok(atoms),
        _ => Err(MeasureError::Domain("centering needs atomic measures".into())),
    }
}

/// `h(z) = −i ∫ Im ζ dμ° + ∫ (1+ζz)/(1−ζz) (1 − Re ζ) dμ°` to order `order`.
fn h_series(atoms: &[Atom], order: usize) -> Series<Approx> {
    let mut coeffs = vec![Approx::zero(); order + 1];
    for a in atoms {
        let w = to_f64(&a.weight);
        let zeta = a.point();
        let damp = w * (1.0 - zeta.re);
        coeffs[0] += Approx::new(0.0, -w * zeta.im) + damp;
        let mut p = Approx::new(1.0, 0.0);
        for c in coeffs.iter_mut().skip(1) {
            p *= zeta;
            *c += 2.0 * damp * p;
        }
    }
    Series::from_coeffs(coeffs).expect("nonempty")
}

pub fn center_array(row: &[CircleMeasure], order: usize) -> Result<CenteredArrayRow, MeasureError> {
    let mut out = CenteredArrayRow { b_turns: Vec::new(), b: Vec::new(), centered: Vec::new(), h: Vec::new() };
    for m in row {
        let atoms = atoms_of(m)?;
        let mut shift = BigRational::zero();
        for a in atoms {
            let t = principal_turns(&a.turns);
            if inside_unit_arc(&t) {
                shift += a.weight.clone() * t;
            }
        }
        let moved: Vec<Atom> = atoms.iter().map(|a| Atom::new(a.turns.clone() - shift.clone(), a.weight.clone())).collect();
        let centered = CircleMeasure::atomic(moved)?;
        let centered_atoms = atoms_of(&centered)?;
        out.h.push(h_series(centered_atoms, order));
        out.b.push(Approx::unit_from_turns(&shift).expect("approx units always exist"));
        out.b_turns.push(shift);
        out.centered.push(centered);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::rational;
    use super::*;

    #[test]
    fn unit_mass_is_fixed() {
        let r = center_array(&[CircleMeasure::unit()], 4).unwrap();
        assert_eq!(r.b_turns[0], BigRational::zero());
        assert_eq!(r.centered[0], CircleMeasure::unit());
        assert!(r.h[0].close_to(&Series::zero(4), 0.0));
    }

    #[test]
    fn small_rotation_is_removed() {
        let theta = rational(-1, 10);
        let r = center_array(&[CircleMeasure::point_mass(theta.clone())], 3).unwrap();
        assert_eq!(r.b_turns[0], theta);
        assert!((r.b[0] - Approx::from_polar(1.0, -0.2 * std::f64::consts::PI)).norm() < 1e-15);
        assert_eq!(r.centered[0], CircleMeasure::unit());
        let far = center_array(&[CircleMeasure::point_mass(rational(1, 2))], 3).unwrap();
        assert_eq!(far.b_turns[0], BigRational::zero());
    }

    #[test]
    fn quarter_turn_perturbation() {
        let eps = rational(1, 100);
        let mu = CircleMeasure::atomic(vec![
            Atom::new(rational(0, 1), BigRational::one() - eps.clone()),
            Atom::new(rational(1, 4), eps),
        ])
        .unwrap();
        let r = center_array(std::slice::from_ref(&mu), 3).unwrap();
        assert_eq!(r.centered[0], mu);
        assert!((r.h[0].coeffs()[0] - Approx::new(0.01, -0.01)).norm() < 1e-15);
        assert!((r.h[0].coeffs()[1] - Approx::new(0.0, 0.02)).norm() < 1e-15);
    }

    #[test]
    fn real_part_is_positive_off_the_unit_mass() {
        let mu = CircleMeasure::atomic(vec![
            Atom::new(rational(1, 20), rational(2, 3)),
            Atom::new(rational(7, 10), rational(1, 3)),
        ])
        .unwrap();
        let r = center_array(&[mu], 40).unwrap();
        let h = &r.h[0];
        for k in 0..16 {
            let z = Approx::from_polar(0.5, k as f64 * std::f64::consts::PI / 8.0);
            let mut p = Approx::new(1.0, 0.0);
            let mut v = Approx::zero();
            for c in h.coeffs() {
                v += c * p;
                p *= z;
            }
            assert!(v.re > 0.0);
        }
        assert!(center_array(&[CircleMeasure::Haar], 3).is_err());
    }
}
