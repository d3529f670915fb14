//! Command-line front end: JSON in, JSON verdicts out.
//!
//! Exit codes: 0 for a holding verdict or plain success, 1 for a violated
//! verdict, 2 for inconclusive or unsupported instances, 3 for input errors.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::builtins;
use crate::conditions::{
    certificate_1d, check_strong, check_support_strong, check_support_weak, check_weak,
    prop36_battery, reduce_general, DilationSpec, Status, Verdict,
};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, RatMatrix, Rational};
use crate::frames::{
    averaging_experiment, check_dual, check_parseval, frame_functional, t_alpha, GeneratorSet,
    StepFunction,
};
use crate::lattice::Lattice;
use crate::sigain::{behera_class, overlap_measure, oversample_crosscheck, si_gain_check, RegionSet};

#[derive(Parser)]
#[command(name = "framelat", version, about = "Exact lattice and wavelet-frame checks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Oversampling conditions on (dilation, lattice) pairs
    Cond {
        #[command(subcommand)]
        verb: CondVerb,
    },
    /// Parseval, duality and functional checks for step generators
    Frames {
        #[command(subcommand)]
        verb: FramesVerb,
    },
    /// Support overlaps and shift-invariance gain
    Sigain {
        #[command(subcommand)]
        verb: SigainVerb,
    },
}

#[derive(Args)]
struct DilLat {
    /// Numerator of a scalar dilation a = p/q
    #[arg(long)]
    p: Option<i64>,
    /// Denominator of a scalar dilation a = p/q
    #[arg(long, default_value_t = 1)]
    q: i64,
    /// JSON file with a dilation matrix {"rows":[["p/q",...],...]}
    #[arg(long, conflicts_with = "p")]
    dil: Option<PathBuf>,
    /// Shorthand for the 1-D lattice (1/lambda)Z
    #[arg(long)]
    lambda: Option<i64>,
    /// JSON file with a lattice {"dim":n,"basis":[["p/q",...],...]}
    #[arg(long, conflicts_with = "lambda")]
    lat: Option<PathBuf>,
}

impl DilLat {
    fn dilation(&self) -> Result<DilationSpec> {
        match (&self.p, &self.dil) {
            (Some(p), None) => DilationSpec::scalar(*p, self.q),
            (None, Some(path)) => DilationSpec::new(read_matrix(path)?),
            _ => Err(Error::Parse {
                path: String::new(),
                message: "need either --p or --dil".into(),
            }),
        }
    }

    fn lattice(&self) -> Result<Lattice> {
        match (&self.lambda, &self.lat) {
            (Some(l), None) => {
                if *l == 0 {
                    return Err(Error::BadIndex);
                }
                Lattice::line(Rational::new(1.into(), (*l).into()))
            }
            (None, Some(path)) => read_json(path),
            _ => Err(Error::Parse {
                path: String::new(),
                message: "need either --lambda or --lat".into(),
            }),
        }
    }
}

#[derive(Subcommand)]
enum CondVerb {
    /// Strong oversampling condition
    Strong {
        #[command(flatten)]
        pair: DilLat,
        #[arg(long, default_value_t = 8)]
        jmax: u32,
    },
    /// Weak oversampling condition
    Weak {
        #[command(flatten)]
        pair: DilLat,
        #[arg(long, default_value_t = 8)]
        jmax: u32,
    },
    /// Support-truncated strong condition at level j0
    Jstrong {
        #[command(flatten)]
        pair: DilLat,
        #[arg(long, default_value_t = 0)]
        j0: u32,
        #[arg(long, default_value_t = 8)]
        jmax: u32,
    },
    /// Support-truncated weak condition at level j0
    Jweak {
        #[command(flatten)]
        pair: DilLat,
        #[arg(long, default_value_t = 0)]
        j0: u32,
        #[arg(long, default_value_t = 8)]
        jmax: u32,
    },
    /// Six-way equivalence battery for integer dilations
    Prop36 {
        #[command(flatten)]
        pair: DilLat,
        #[arg(long, default_value_t = 6)]
        jmax: u32,
    },
    /// gcd certificate for scalar dilations p/q
    Cert1d {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        q: u64,
        #[arg(long)]
        lambda: u64,
    },
    /// Conjugate a general translation lattice back to the standard form
    Reduce {
        #[command(flatten)]
        pair: DilLat,
        /// JSON file with the translation lattice Gamma
        #[arg(long)]
        gamma: PathBuf,
    },
}

#[derive(Args)]
struct GenArg {
    /// Built-in generator name (fig1, shannon, journe)
    #[arg(long, name = "gen")]
    gen: Option<String>,
    /// JSON file with {"p":…,"q":…,"generators":[…]}
    #[arg(long, conflicts_with = "gen")]
    gen_file: Option<PathBuf>,
}

impl GenArg {
    fn load(&self) -> Result<GeneratorSet> {
        match (&self.gen, &self.gen_file) {
            (Some(name), None) => builtins::generator_by_name(name).ok_or_else(|| Error::Parse {
                path: name.clone(),
                message: "unknown built-in generator".into(),
            }),
            (None, Some(path)) => {
                let raw: GeneratorsJson = read_json(path)?;
                GeneratorSet::new(raw.generators, raw.p, raw.q)
            }
            _ => Err(Error::Parse {
                path: String::new(),
                message: "need either --gen or --gen-file".into(),
            }),
        }
    }
}

#[derive(Deserialize)]
struct GeneratorsJson {
    p: u64,
    q: u64,
    generators: Vec<StepFunction>,
}

#[derive(Subcommand)]
enum FramesVerb {
    /// Parseval check of the lambda-oversampled system
    Parseval {
        #[command(flatten)]
        gen: GenArg,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
    },
    /// Dual-frame check of two generator families
    Dual {
        #[command(flatten)]
        gen: GenArg,
        /// Built-in name of the candidate dual family
        #[arg(long)]
        with: Option<String>,
        /// JSON file with the candidate dual family
        #[arg(long, conflicts_with = "with")]
        with_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
    },
    /// One t function, exactly
    Talpha {
        #[command(flatten)]
        gen: GenArg,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        alpha: i64,
    },
    /// Frame functional N and its coefficient table
    Functional {
        #[command(flatten)]
        gen: GenArg,
        /// JSON file with the analyzed spectrum (a step function)
        #[arg(long)]
        f: PathBuf,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
    },
    /// Translational averaging convergence table
    Average {
        #[command(flatten)]
        gen: GenArg,
        /// JSON file with the analyzed spectrum (a step function)
        #[arg(long)]
        f: PathBuf,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        /// Comma-separated constellation depths
        #[arg(long, default_value = "2,4,6")]
        jmax: String,
        /// Comma-separated tolerances
        #[arg(long, default_value = "1e-2,1e-4,1e-6")]
        eps: String,
    },
}

#[derive(Args)]
struct RegionArg {
    /// Built-in region name (box-pair, fig1, shannon, journe)
    #[arg(long)]
    region: Option<String>,
    /// JSON file with {"dim":n,"boxes":[{"lo":[…],"hi":[…]},…]}
    #[arg(long, conflicts_with = "region")]
    region_file: Option<PathBuf>,
}

impl RegionArg {
    fn load(&self) -> Result<RegionSet> {
        match (&self.region, &self.region_file) {
            (Some(name), None) => builtins::region_by_name(name).ok_or_else(|| Error::Parse {
                path: name.clone(),
                message: "unknown built-in region".into(),
            }),
            (None, Some(path)) => read_json(path),
            _ => Err(Error::Parse {
                path: String::new(),
                message: "need either --region or --region-file".into(),
            }),
        }
    }
}

#[derive(Subcommand)]
enum SigainVerb {
    /// Exact overlap measure of a region with one integer translate
    Overlap {
        #[command(flatten)]
        region: RegionArg,
        /// Comma-separated rational shift vector
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// Lattice shift-invariance check of the region's translate span
    Gain {
        #[command(flatten)]
        region: RegionArg,
        #[arg(long)]
        lambda: Option<i64>,
        #[arg(long, conflicts_with = "lambda")]
        lat: Option<PathBuf>,
    },
    /// Invariance class of a support under an integer dilation
    Class {
        #[command(flatten)]
        region: RegionArg,
        /// Integer dilation factor
        #[arg(long)]
        p: i64,
        #[arg(long, default_value_t = 6)]
        rmax: u32,
    },
    /// Oversampled-Parseval battery against the support class
    Crosscheck {
        #[command(flatten)]
        gen: GenArg,
        #[arg(long, default_value_t = 3)]
        rmax: u32,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[derive(Deserialize)]
struct MatrixJson {
    rows: Vec<Vec<String>>,
}

fn read_matrix(path: &PathBuf) -> Result<RatMatrix> {
    let raw: MatrixJson = read_json(path)?;
    let mut rows = Vec::with_capacity(raw.rows.len());
    for r in &raw.rows {
        let mut row = Vec::with_capacity(r.len());
        for s in r {
            row.push(parse_rational(s)?);
        }
        rows.push(row);
    }
    Ok(RatMatrix::from_rows(rows))
}

fn parse_rational_vector(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|t| parse_rational(t.trim())).collect()
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim().parse().map_err(|_| Error::Parse {
                path: s.into(),
                message: "bad list entry".into(),
            })
        })
        .collect()
}

fn verdict_code(v: &Verdict) -> i32 {
    match v.status {
        Status::CertifiedHolds => 0,
        Status::HoldsUpTo(_) => 2,
        Status::Violated => 1,
    }
}

/// Runs one command; returns the report and the process exit code.
fn execute(cli: &Cli) -> Result<(serde_json::Value, i32)> {
    match &cli.command {
        Command::Cond { verb } => run_cond(verb),
        Command::Frames { verb } => run_frames(verb),
        Command::Sigain { verb } => run_sigain(verb),
    }
}

fn run_cond(verb: &CondVerb) -> Result<(serde_json::Value, i32)> {
    match verb {
        CondVerb::Strong { pair, jmax } => {
            let v = check_strong(&pair.dilation()?, &pair.lattice()?, *jmax)?;
            Ok((serde_json::to_value(&v).unwrap(), verdict_code(&v)))
        }
        CondVerb::Weak { pair, jmax } => {
            let v = check_weak(&pair.dilation()?, &pair.lattice()?, *jmax)?;
            Ok((serde_json::to_value(&v).unwrap(), verdict_code(&v)))
        }
        CondVerb::Jstrong { pair, j0, jmax } => {
            let v = check_support_strong(&pair.dilation()?, &pair.lattice()?, *j0, *jmax)?;
            Ok((serde_json::to_value(&v).unwrap(), verdict_code(&v)))
        }
        CondVerb::Jweak { pair, j0, jmax } => {
            let v = check_support_weak(&pair.dilation()?, &pair.lattice()?, *j0, *jmax)?;
            Ok((serde_json::to_value(&v).unwrap(), verdict_code(&v)))
        }
        CondVerb::Prop36 { pair, jmax } => {
            let r = prop36_battery(&pair.dilation()?, &pair.lattice()?, *jmax)?;
            let code = if r.all_true() {
                0
            } else if r.all_equal() {
                1
            } else {
                2
            };
            Ok((serde_json::to_value(&r).unwrap(), code))
        }
        CondVerb::Cert1d { p, q, lambda } => {
            let ok = certificate_1d(*p, *q, *lambda)?;
            Ok((json!(ok), if ok { 0 } else { 1 }))
        }
        CondVerb::Reduce { pair, gamma } => {
            let gamma: Lattice = read_json(gamma)?;
            let (dil, lat) = reduce_general(&pair.dilation()?, &gamma, &pair.lattice()?)?;
            let rows: Vec<Vec<String>> = (0..dil.n)
                .map(|i| (0..dil.n).map(|j| format_rational(&dil.a[(i, j)])).collect())
                .collect();
            Ok((
                json!({"dilation": {"rows": rows}, "lattice": serde_json::to_value(&lat).unwrap()}),
                0,
            ))
        }
    }
}

fn run_frames(verb: &FramesVerb) -> Result<(serde_json::Value, i32)> {
    match verb {
        FramesVerb::Parseval { gen, lambda } => {
            let v = check_parseval(&gen.load()?, *lambda)?;
            Ok((serde_json::to_value(&v).unwrap(), if v.holds() { 0 } else { 1 }))
        }
        FramesVerb::Dual { gen, with, with_file, lambda } => {
            let phi = GenArg { gen: with.clone(), gen_file: with_file.clone() }.load()?;
            let v = check_dual(&gen.load()?, &phi, *lambda)?;
            Ok((serde_json::to_value(&v).unwrap(), if v.holds() { 0 } else { 1 }))
        }
        FramesVerb::Talpha { gen, lambda, alpha } => {
            let t = t_alpha(&gen.load()?, &gen.load()?, *lambda, *alpha)?;
            Ok((
                json!({
                    "alpha": t.alpha,
                    "periodic": t.periodic,
                    "function": serde_json::to_value(&t.function).unwrap(),
                }),
                0,
            ))
        }
        FramesVerb::Functional { gen, f, lambda } => {
            let f: StepFunction = read_json(f)?;
            let rep = frame_functional(&f, &gen.load()?, *lambda)?;
            Ok((serde_json::to_value(&rep).unwrap(), 0))
        }
        FramesVerb::Average { gen, f, lambda, jmax, eps } => {
            let f: StepFunction = read_json(f)?;
            let js: Vec<u32> = parse_list(jmax)?;
            let es: Vec<f64> = parse_list(eps)?;
            let table = averaging_experiment(&f, &gen.load()?, *lambda, &js, &es)?;
            Ok((serde_json::to_value(&table).unwrap(), 0))
        }
    }
}

fn run_sigain(verb: &SigainVerb) -> Result<(serde_json::Value, i32)> {
    match verb {
        SigainVerb::Overlap { region, k } => {
            let r = region.load()?;
            let kv = parse_rational_vector(k)?;
            let m = overlap_measure(&r, &kv)?;
            Ok((json!({"measure": format_rational(&m)}), 0))
        }
        SigainVerb::Gain { region, lambda, lat } => {
            let r = region.load()?;
            let l = match (lambda, lat) {
                (Some(l), None) => Lattice::line(Rational::new(1.into(), (*l).into()))?,
                (None, Some(path)) => read_json(path)?,
                _ => {
                    return Err(Error::Parse {
                        path: String::new(),
                        message: "need either --lambda or --lat".into(),
                    })
                }
            };
            let v = si_gain_check(&r, &l)?;
            Ok((serde_json::to_value(&v).unwrap(), if v.holds { 0 } else { 1 }))
        }
        SigainVerb::Class { region, p, rmax } => {
            let r = region.load()?;
            let dil = DilationSpec::scalar(*p, 1)?;
            let c = behera_class(&r, &dil, *rmax)?;
            Ok((json!({"class": serde_json::to_value(&c).unwrap()}), 0))
        }
        SigainVerb::Crosscheck { gen, rmax } => {
            let rep = oversample_crosscheck(&gen.load()?, *rmax)?;
            Ok((
                serde_json::to_value(&rep).unwrap(),
                if rep.agreement { 0 } else { 1 },
            ))
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Unsupported(_) | Error::HypothesisUnverifiable => 2,
        _ => 3,
    }
}

/// Full entry point: parses arguments, runs, writes the report.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { 3 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, code)) => {
            let text = serde_json::to_string_pretty(&report).unwrap();
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text + "\n") {
                        eprintln!("{}: {e}", path.display());
                        return 3;
                    }
                }
                None => println!("{text}"),
            }
            code
        }
        Err(e) => {
            eprintln!("{e}");
            error_code(&e)
        }
    }
}
