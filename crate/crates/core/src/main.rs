use std::error::Error;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cfree::json::{self, AnySeries, TransformInput};
use cfree::measures::{
    boolean_convolve, cfree_multiplicative_convolve, free_multiplicative_convolve, idiv_boolean_measure,
    idiv_free_measure, limit_experiment, semigroup_pair, CircleMeasure, IdGenerator, LimitConfig, MeasurePair,
};
use cfree::partitions::{enumerate_ncl, NcClass};
use cfree::series::scalar::parse_rational;
use cfree::series::{Approx, Exact, Mode, Scalar};
use cfree::transforms::{TransformBundle, TransformKind};
use cfree::verify::{run_suite, Suite, VerifyConfig};

type Result<T> = std::result::Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "cfree", version, about = "Conditionally free multiplicative convolution toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Nc,
    #[value(name = "nc_s")]
    NcS,
    #[value(name = "nc_0")]
    Nc0,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvolveKind {
    Boolean,
    Free,
    Cfree,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdivKind {
    Boolean,
    Free,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Approx,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate NC(n), NC_S(n) or NC_0(n).
    Nc {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "nc")]
        class: ClassArg,
        #[arg(long)]
        count_only: bool,
    },
    /// Enumerate non-crossing linked partitions.
    Ncl {
        #[arg(long)]
        n: usize,
        /// Print exterior/interior blocks and singly/doubly covered points.
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        count_only: bool,
    },
    /// Compute a transform of the moments in a JSON file.
    Transform {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        what: TransformKind,
        #[arg(long)]
        order: usize,
    },
    /// Convolve two measures (boolean, free) or two pairs (cfree).
    Convolve {
        #[arg(long, value_enum)]
        kind: ConvolveKind,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "approx")]
        mode: ModeArg,
    },
    /// Moments of an infinitely divisible law from its generator.
    Idiv {
        /// Angle of γ in turns, e.g. 1/8.
        #[arg(long)]
        gamma: String,
        /// JSON list of atoms [{"turns", "weight"}, ...].
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long, value_enum)]
        kind: IdivKind,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// The pair at time t of the semigroup through (μ, ν).
    Semigroup {
        /// Generator of ν as JSON {"gamma", "sigma"}.
        #[arg(long)]
        gen: PathBuf,
        /// Σ_{(μ,ν)} as series JSON; its order plus one is the moment order.
        #[arg(long)]
        sigma_target: PathBuf,
        #[arg(long)]
        t: f64,
    },
    /// Run the limit experiment and write the gap table as CSV.
    Limit {
        #[arg(long)]
        s: f64,
        /// Angle of ω in turns.
        #[arg(long)]
        omega: String,
        #[arg(long, value_delimiter = ',', default_value = "4,8,16,32")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[arg(long)]
        out: PathBuf,
        /// Where to write the JSON summary (stdout if absent).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Run the seeded verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        cases: usize,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn turns(text: &str) -> Result<num_rational::BigRational> {
    parse_rational(text).ok_or_else(|| format!("not a rational number of turns: {text:?}").into())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Nc { n, class, count_only } => {
            let class = match class {
                ClassArg::Nc => NcClass::Nc,
                ClassArg::NcS => NcClass::NcS,
                ClassArg::Nc0 => NcClass::Nc0,
            };
            let all = class.enumerate(n)?;
            if count_only {
                println!("{}", all.len());
            } else {
                for p in all {
                    println!("{p}");
                }
            }
        }
        Command::Ncl { n, classify, count_only } => {
            let all = enumerate_ncl(n)?;
            if count_only {
                println!("{}", all.len());
            } else {
                for p in all {
                    if classify {
                        println!("{p}\t{}", serde_json::to_string(&p.classify())?);
                    } else {
                        println!("{p}");
                    }
                }
            }
        }
        Command::Transform { input, what, order } => {
            let input: TransformInput = serde_json::from_str(&read(&input)?)?;
            let text = match input.mode {
                Mode::Exact => transform::<Exact>(&input, what, order)?,
                Mode::Approx => transform::<Approx>(&input, what, order)?,
            };
            println!("{text}");
        }
        Command::Convolve { kind, a, b, order, mode } => {
            let (a, b) = (read(&a)?, read(&b)?);
            let text = match mode {
                ModeArg::Exact => convolve::<Exact>(kind, &a, &b, order)?,
                ModeArg::Approx => convolve::<Approx>(kind, &a, &b, order)?,
            };
            println!("{text}");
        }
        Command::Idiv { gamma, sigma, kind, order } => {
            let gamma = Approx::unit_from_turns(&turns(&gamma)?).expect("approx units exist");
            let g = IdGenerator::new(gamma, json::sigma_atoms_from_json(&read(&sigma)?)?)?;
            let m = match kind {
                IdivKind::Boolean => idiv_boolean_measure(&g, order)?,
                IdivKind::Free => idiv_free_measure(&g, order)?,
            };
            println!("{}", json::measure_to_json(&m));
        }
        Command::Semigroup { gen, sigma_target, t } => {
            let g = json::generator_from_json(&read(&gen)?)?;
            let target = match json::series_from_json(&read(&sigma_target)?)? {
                AnySeries::Exact(s) => s.to_approx(),
                AnySeries::Approx(s) => s,
            };
            let pair = semigroup_pair(&g, &target, t, target.order() + 1)?;
            println!("{}", json::pair_to_json(&pair));
        }
        Command::Limit { s, omega, n_list, order, out, summary } => {
            let config = LimitConfig { s, omega_turns: turns(&omega)?, n_list, order };
            let report = limit_experiment(&config)?;
            let mut w = csv::Writer::from_path(&out)?;
            for row in report.rows() {
                w.serialize(row)?;
            }
            w.flush()?;
            let text = serde_json::to_string_pretty(&report)?;
            match summary {
                Some(path) => fs::write(path, text + "\n")?,
                None => println!("{text}"),
            }
        }
        Command::Verify { suite, order, seed, cases } => {
            let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse::<Suite>()?] };
            let config = VerifyConfig { order, seed, cases };
            let mut all_passed = true;
            for s in suites {
                println!("suite {s} (order {order}, seed {seed})");
                for check in run_suite(s, &config) {
                    all_passed &= check.passed;
                    println!("  {check}");
                }
            }
            println!("{}", if all_passed { "all checks passed" } else { "some checks FAILED" });
            return Ok(all_passed);
        }
    }
    Ok(true)
}

fn transform<S: Scalar>(input: &TransformInput, what: TransformKind, order: usize) -> Result<String> {
    let (m, big_m) = input.series::<S>(order)?;
    let bundle = TransformBundle::new(m, Some(big_m))?;
    Ok(json::series_to_json(bundle.get(what)?))
}

fn convolve<S: Scalar>(kind: ConvolveKind, a: &str, b: &str, order: usize) -> Result<String> {
    let measure = |text: &str| -> Result<CircleMeasure> { Ok(json::measure_from_json(text)?) };
    let pair = |text: &str| -> Result<MeasurePair> { Ok(json::pair_from_json(text)?) };
    Ok(match kind {
        ConvolveKind::Boolean => json::measure_to_json(&boolean_convolve::<S>(&measure(a)?, &measure(b)?, order)?),
        ConvolveKind::Free => {
            json::measure_to_json(&free_multiplicative_convolve::<S>(&measure(a)?, &measure(b)?, order)?)
        }
        ConvolveKind::Cfree => {
            json::pair_to_json(&cfree_multiplicative_convolve::<S>(&pair(a)?, &pair(b)?, order)?)
        }
    })
}
