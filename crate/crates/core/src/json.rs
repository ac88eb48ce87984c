//! JSON encodings for series, measures, pairs and generators.
//!
//! Scalars are written as `"p/q"` strings in exact mode and as numbers in
//! approx mode. On input a string is always read exactly; a number is read as
//! the exact binary value of the double wherever a rational is required.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::measures::{Atom, CircleMeasure, IdGenerator, MeasureError, MeasurePair, MomentValues};
use crate::series::scalar::{format_rational, parse_rational, rational_from_f64};
use crate::series::{Approx, Exact, Mode, Scalar, Series, SeriesError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumRepr {
    Text(String),
    Float(f64),
}

pub type ComplexRepr = [NumRepr; 2];

impl NumRepr {
    fn rational(&self) -> Result<BigRational, JsonError> {
        match self {
            NumRepr::Text(t) => parse_rational(t).ok_or_else(|| JsonError::Invalid(format!("not a rational: {t:?}"))),
            NumRepr::Float(v) => rational_from_f64(*v).ok_or_else(|| JsonError::Invalid(format!("not finite: {v}"))),
        }
    }

    fn float(&self) -> Result<f64, JsonError> {
        match self {
            NumRepr::Float(v) => Ok(*v),
            NumRepr::Text(_) => Ok(Approx::from_rational(&self.rational()?, &BigRational::from_integer(0.into())).re),
        }
    }
}

fn exact_repr(c: &Exact) -> ComplexRepr {
    [NumRepr::Text(format_rational(&c.re)), NumRepr::Text(format_rational(&c.im))]
}

fn approx_repr(c: &Approx) -> ComplexRepr {
    [NumRepr::Float(c.re), NumRepr::Float(c.im)]
}

fn scalar_repr<S: Scalar>(c: &S) -> ComplexRepr {
    match c.to_exact() {
        Some(e) if S::MODE == Mode::Exact => exact_repr(&e),
        _ => approx_repr(&c.to_c64()),
    }
}

fn read_exact(c: &ComplexRepr) -> Result<Exact, JsonError> {
    Ok(Exact::new(c[0].rational()?, c[1].rational()?))
}

fn read_approx(c: &ComplexRepr) -> Result<Approx, JsonError> {
    Ok(Approx::new(c[0].float()?, c[1].float()?))
}

fn is_textual(c: &ComplexRepr) -> bool {
    c.iter().all(|x| matches!(x, NumRepr::Text(_)))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesRepr {
    pub order: usize,
    pub mode: Mode,
    pub coeffs: Vec<ComplexRepr>,
}

/// A series in whichever mode the input asked for.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySeries {
    Exact(Series<Exact>),
    Approx(Series<Approx>),
}

impl AnySeries {
    pub fn to_approx(&self) -> Series<Approx> {
        match self {
            AnySeries::Exact(s) => s.to_approx(),
            AnySeries::Approx(s) => s.clone(),
        }
    }
}

pub fn series_repr<S: Scalar>(s: &Series<S>) -> SeriesRepr {
    SeriesRepr { order: s.order(), mode: S::MODE, coeffs: s.coeffs().iter().map(scalar_repr).collect() }
}

pub fn series_to_json<S: Scalar>(s: &Series<S>) -> String {
    serde_json::to_string_pretty(&series_repr(s)).expect("series always serialize")
}

pub fn series_from_json(text: &str) -> Result<AnySeries, JsonError> {
    let repr: SeriesRepr = serde_json::from_str(text)?;
    if repr.coeffs.len() != repr.order + 1 {
        return Err(JsonError::Invalid(format!("order {} needs {} coefficients", repr.order, repr.order + 1)));
    }
    Ok(match repr.mode {
        Mode::Exact => AnySeries::Exact(Series::from_coeffs(repr.coeffs.iter().map(read_exact).collect::<Result<_, _>>()?)?),
        Mode::Approx => {
            AnySeries::Approx(Series::from_coeffs(repr.coeffs.iter().map(read_approx).collect::<Result<_, _>>()?)?)
        }
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtomRepr {
    pub turns: NumRepr,
    pub weight: NumRepr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MeasureRepr {
    Atomic { atoms: Vec<AtomRepr> },
    Haar,
    Poisson { alpha: ComplexRepr },
    Moments { values: Vec<ComplexRepr> },
}

fn atom_repr(a: &Atom) -> AtomRepr {
    AtomRepr { turns: NumRepr::Text(format_rational(&a.turns)), weight: NumRepr::Text(format_rational(&a.weight)) }
}

fn read_atoms(atoms: &[AtomRepr]) -> Result<Vec<Atom>, JsonError> {
    atoms.iter().map(|a| Ok(Atom::new(a.turns.rational()?, a.weight.rational()?))).collect()
}

pub fn measure_repr(m: &CircleMeasure) -> MeasureRepr {
    match m {
        CircleMeasure::Atomic(atoms) => MeasureRepr::Atomic { atoms: atoms.iter().map(atom_repr).collect() },
        CircleMeasure::Haar => MeasureRepr::Haar,
        CircleMeasure::Poisson(alpha) => MeasureRepr::Poisson { alpha: exact_repr(alpha) },
        CircleMeasure::Moments(MomentValues::Exact(v)) => MeasureRepr::Moments { values: v.iter().map(exact_repr).collect() },
        CircleMeasure::Moments(MomentValues::Approx(v)) => {
            MeasureRepr::Moments { values: v.iter().map(approx_repr).collect() }
        }
    }
}

/// Moment lists given entirely as strings are stored exactly.
pub fn measure_from_repr(repr: &MeasureRepr) -> Result<CircleMeasure, JsonError> {
    let m = match repr {
        MeasureRepr::Atomic { atoms } => CircleMeasure::atomic(read_atoms(atoms)?)?,
        MeasureRepr::Haar => CircleMeasure::Haar,
        MeasureRepr::Poisson { alpha } => CircleMeasure::poisson(read_exact(alpha)?)?,
        MeasureRepr::Moments { values } if values.iter().all(is_textual) => {
            CircleMeasure::Moments(MomentValues::Exact(values.iter().map(read_exact).collect::<Result<_, _>>()?))
        }
        MeasureRepr::Moments { values } => {
            CircleMeasure::Moments(MomentValues::Approx(values.iter().map(read_approx).collect::<Result<_, _>>()?))
        }
    };
    m.validate()?;
    Ok(m)
}

pub fn measure_to_json(m: &CircleMeasure) -> String {
    serde_json::to_string_pretty(&measure_repr(m)).expect("measures always serialize")
}

pub fn measure_from_json(text: &str) -> Result<CircleMeasure, JsonError> {
    measure_from_repr(&serde_json::from_str(text)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairRepr {
    pub mu: MeasureRepr,
    pub nu: MeasureRepr,
}

pub fn pair_to_json(p: &MeasurePair) -> String {
    let repr = PairRepr { mu: measure_repr(&p.mu), nu: measure_repr(&p.nu) };
    serde_json::to_string_pretty(&repr).expect("pairs always serialize")
}

pub fn pair_from_json(text: &str) -> Result<MeasurePair, JsonError> {
    let repr: PairRepr = serde_json::from_str(text)?;
    Ok(MeasurePair::new(measure_from_repr(&repr.mu)?, measure_from_repr(&repr.nu)?))
}

/// `{"gamma": [re, im], "sigma": [{"turns", "weight"}, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorRepr {
    pub gamma: ComplexRepr,
    pub sigma: Vec<AtomRepr>,
}

pub fn generator_from_json(text: &str) -> Result<IdGenerator, JsonError> {
    let repr: GeneratorRepr = serde_json::from_str(text)?;
    Ok(IdGenerator::new(read_approx(&repr.gamma)?, read_atoms(&repr.sigma)?)?)
}

pub fn generator_to_json(g: &IdGenerator) -> String {
    let repr = GeneratorRepr { gamma: approx_repr(&g.gamma), sigma: g.sigma.iter().map(atom_repr).collect() };
    serde_json::to_string_pretty(&repr).expect("generators always serialize")
}

/// Atoms of a (not necessarily normalized) `σ`, as a bare list.
pub fn sigma_atoms_from_json(text: &str) -> Result<Vec<Atom>, JsonError> {
    let atoms: Vec<AtomRepr> = serde_json::from_str(text)?;
    read_atoms(&atoms)
}

/// Input of the `transform` command: `ψ`-moments and optional `φ`-moments,
/// `m_1, m_2, ...`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformInput {
    #[serde(default = "default_mode")]
    pub mode: Mode,
    pub psi: Vec<ComplexRepr>,
    #[serde(default)]
    pub phi: Option<Vec<ComplexRepr>>,
}

fn default_mode() -> Mode {
    Mode::Exact
}

impl TransformInput {
    /// `(m, M)` as series of order `order`; `M` defaults to `m`.
    pub fn series<S: Scalar>(&self, order: usize) -> Result<(Series<S>, Series<S>), JsonError> {
        let read = |values: &[ComplexRepr]| -> Result<Series<S>, JsonError> {
            if values.len() < order {
                return Err(JsonError::Invalid(format!("{} moments given, {order} needed", values.len())));
            }
            let mut coeffs = vec![S::zero()];
            for v in &values[..order] {
                coeffs.push(match S::MODE {
                    Mode::Exact => {
                        let e = read_exact(v)?;
                        S::from_rational(&e.re, &e.im)
                    }
                    Mode::Approx => S::from_approx(read_approx(v)?).expect("approx mode"),
                });
            }
            Ok(Series::from_coeffs(coeffs)?)
        };
        let m = read(&self.psi)?;
        let big_m = match &self.phi {
            Some(phi) => read(phi)?,
            None => m.clone(),
        };
        Ok((m, big_m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn series_round_trip() {
        let s = Series::from_coeffs(vec![Exact::new(q(1, 2), q(-3, 1)), Exact::new(q(0, 1), q(2, 7))]).unwrap();
        let text = series_to_json(&s);
        assert!(text.contains("\"1/2\""));
        assert_eq!(series_from_json(&text).unwrap(), AnySeries::Exact(s.clone()));
        let a = s.to_approx();
        assert_eq!(series_from_json(&series_to_json(&a)).unwrap(), AnySeries::Approx(a));
        assert!(series_from_json(r#"{"order": 2, "mode": "exact", "coeffs": [["1", "0"]]}"#).is_err());
    }

    #[test]
    fn measure_round_trips() {
        let measures = [
            CircleMeasure::atomic(vec![Atom::new(q(1, 3), q(1, 4)), Atom::new(q(0, 1), q(3, 4))]).unwrap(),
            CircleMeasure::Haar,
            CircleMeasure::poisson(Exact::new(q(1, 2), q(1, 5))).unwrap(),
            CircleMeasure::from_scalars(&[Exact::new(q(1, 2), q(0, 1))]),
            CircleMeasure::from_scalars(&[Approx::new(0.25, -0.5)]),
        ];
        for m in measures {
            assert_eq!(measure_from_json(&measure_to_json(&m)).unwrap(), m);
        }
        let from_numbers = measure_from_json(r#"{"type": "atomic", "atoms": [{"turns": 0.25, "weight": 1}]}"#).unwrap();
        assert_eq!(from_numbers, CircleMeasure::point_mass(q(1, 4)));
        assert!(measure_from_json(r#"{"type": "atomic", "atoms": [{"turns": 0, "weight": "1/2"}]}"#).is_err());
        assert!(measure_from_json(r#"{"type": "moments", "values": [[2.0, 0.0]]}"#).is_err());
    }

    #[test]
    fn pairs_and_generators() {
        let p = MeasurePair::new(CircleMeasure::point_mass(q(1, 4)), CircleMeasure::Haar);
        assert_eq!(pair_from_json(&pair_to_json(&p)).unwrap(), p);
        let g = generator_from_json(r#"{"gamma": [0, 1], "sigma": [{"turns": "1/3", "weight": "2"}]}"#).unwrap();
        assert_eq!(g.sigma, vec![Atom::new(q(1, 3), q(2, 1))]);
        assert_eq!(generator_from_json(&generator_to_json(&g)).unwrap(), g);
        assert!(generator_from_json(r#"{"gamma": [2, 0], "sigma": []}"#).is_err());
    }

    #[test]
    fn transform_input() {
        let input: TransformInput = serde_json::from_str(r#"{"psi": [["1/2", "0"], ["1/3", "1"]]}"#).unwrap();
        let (m, big_m) = input.series::<Exact>(2).unwrap();
        assert_eq!(m, big_m);
        assert_eq!(m.coeffs()[2], Exact::new(q(1, 3), q(1, 1)));
        assert!(input.series::<Exact>(3).is_err());
        let (m, _) = input.series::<Approx>(2).unwrap();
        assert_eq!(m.coeffs()[1], Approx::new(0.5, 0.0));
    }
}
