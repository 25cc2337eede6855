//! Command-line surface: `enumerate`, `verify`, `chern` and `emit`.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::chern_calculus::{
    antican_cube_divisor_in_p2_bundle, antican_cube_p1_bundle_over_surface, antican_sq_dot_exceptional,
    blowup_exceptional_cube, conic_bundle_ksq_dot_pullback, genus_from_blowup, ky3, xi_square_on_curve, BlowupData,
    SurfaceBundleData,
};
use crate::enumerator::{enumerate_all_with, SolutionRecord, Strategy};
use crate::error::{Error, Result};
use crate::ray_constraints::RayType;
use crate::table_oracle::{self, diff, emit, Format, TableRow};

/// Environment variable overriding the ground-truth file.
pub const GROUND_TRUTH_ENV: &str = "FANO_GROUND_TRUTH";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fano", version, about = "Exact enumeration of Fano threefolds of Picard rank 2 and primitive Picard rank 3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve every case system and print the labelled records.
    Enumerate {
        #[arg(long)]
        rho: usize,
        /// Unordered ray-type pair such as `E1,C2` or `C1,E3E4`.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        primitive: bool,
        #[arg(long, default_value = "markdown")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the solvers on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Diff the computed table against the ground truth.
    Verify {
        #[arg(long)]
        rho: usize,
        /// Ground-truth JSON file; defaults to `FANO_GROUND_TRUTH`, then the embedded table.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Evaluate a closed-form intersection formula on integer arguments.
    Chern {
        formula: String,
        #[arg(allow_negative_numbers = true)]
        args: Vec<i64>,
    },
    /// Write the ground-truth or computed table.
    Emit {
        #[arg(long)]
        rho: usize,
        #[arg(long, default_value = "markdown")]
        format: Format,
        #[arg(long, value_enum, default_value_t = Source::Truth)]
        source: Source,
        #[arg(long)]
        primitive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        truth: Option<PathBuf>,
    },
}

/// Table source of `emit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Truth,
    Computed,
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn failure(code: i32, stderr: String) -> Self {
        Self { code, stdout: String::new(), stderr }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::failure(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

/// Runs a parsed command.
pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Enumerate { rho, pair, primitive, format, out, sequential } => {
            let strategy = if sequential { Strategy::Sequential } else { Strategy::default() };
            enumerate(rho, pair.as_deref(), primitive, strategy)
                .and_then(|records| emit(&records, format))
                .and_then(|bytes| deliver(bytes, out.as_deref()))
        }
        Command::Verify { rho, truth } => return verify(rho, truth.as_deref()),
        Command::Chern { formula, args } => chern(&formula, &args).map(|v| format!("{v}\n")),
        Command::Emit { rho, format, source, primitive, out, truth } => {
            emit_table(rho, format, source, primitive, truth.as_deref()).and_then(|bytes| deliver(bytes, out.as_deref()))
        }
    };
    match result {
        Ok(stdout) => Outcome::ok(stdout),
        Err(e) => Outcome::failure(EXIT_USAGE, format!("error: {e}\n")),
    }
}

fn deliver(bytes: Vec<u8>, out: Option<&Path>) -> Result<String> {
    match out {
        Some(path) => {
            std::fs::write(path, &bytes).map_err(|e| Error::Serialization(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string())),
    }
}

/// The full ground-truth table from `--truth`, `FANO_GROUND_TRUTH` or the
/// embedded data, in that order.
pub fn truth_rows(path: Option<&Path>, rho: usize, primitive_only: bool) -> Result<Vec<TableRow>> {
    let env = std::env::var_os(GROUND_TRUTH_ENV).map(PathBuf::from);
    match path.map(Path::to_path_buf).or(env) {
        Some(p) => table_oracle::select(&table_oracle::load_ground_truth(&p)?, rho, primitive_only),
        None => table_oracle::ground_truth(rho, primitive_only),
    }
}

/// Parses an unordered pair `A,B` of ray types.
pub fn parse_pair(s: &str) -> Result<[RayType; 2]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let mut pair = [a.parse()?, b.parse()?];
            pair.sort();
            Ok(pair)
        }
        _ => Err(Error::UnknownRayType(s.to_string())),
    }
}

fn enumerate(rho: usize, pair: Option<&str>, primitive: bool, strategy: Strategy) -> Result<Vec<SolutionRecord>> {
    let pair = pair.map(parse_pair).transpose()?;
    let truth = truth_rows(None, rho, false)?;
    let mut records = enumerate_all_with(rho, primitive, strategy, &truth)?;
    if let Some(pair) = pair {
        records.retain(|r| {
            let mut types = r.ray_types();
            types.sort();
            types == pair
        });
    }
    Ok(records)
}

fn verify(rho: usize, truth: Option<&Path>) -> Outcome {
    let primitive = rho == 3;
    let run = || -> Result<(usize, table_oracle::DiffReport)> {
        let rows = truth_rows(truth, rho, primitive)?;
        let computed = enumerate_all_with(rho, primitive, Strategy::default(), &rows)?;
        Ok((rows.len(), diff(&computed, &rows)))
    };
    match run() {
        Ok((n, report)) if report.is_empty() => {
            Outcome::ok(format!("rho={rho}: {n} rows reproduced, no differences\n"))
        }
        Ok((_, report)) => Outcome { code: EXIT_MISMATCH, stdout: report.to_string(), stderr: String::new() },
        Err(e) => Outcome::failure(EXIT_USAGE, format!("error: {e}\n")),
    }
}

fn emit_table(rho: usize, format: Format, source: Source, primitive: bool, truth: Option<&Path>) -> Result<Vec<u8>> {
    let primitive = primitive || rho == 3;
    match source {
        Source::Truth => emit(&truth_rows(truth, rho, primitive)?, format),
        Source::Computed => {
            let rows = truth_rows(truth, rho, false)?;
            emit(&enumerate_all_with(rho, primitive, Strategy::default(), &rows)?, format)
        }
    }
}

/// Names accepted by the `chern` subcommand with their argument lists.
pub const CHERN_FORMULAS: [(&str, &str); 8] = [
    ("antican-cube-p1-bundle", "c1_sq c2 ky_sq"),
    ("xi-square-on-curve", "deg_e"),
    ("antican-cube-divisor-in-p2-bundle", "c1_sq c2 c1_dot_f c1_dot_ky f_dot_ky ky_sq f_sq"),
    ("blowup-exceptional-cube", "deg_conormal"),
    ("antican-sq-dot-exceptional", "ky_dot_c genus"),
    ("conic-bundle-ksq-dot-pullback", "ks_dot_d delta_dot_d"),
    ("genus-from-blowup", "kx3 ky3 r deg_b"),
    ("ky3", "r l3"),
];

/// Evaluates a named formula.
pub fn chern(formula: &str, args: &[i64]) -> Result<i64> {
    let Some((_, params)) = CHERN_FORMULAS.iter().find(|(name, _)| *name == formula) else {
        let names: Vec<&str> = CHERN_FORMULAS.iter().map(|(n, _)| *n).collect();
        return Err(Error::Constraint(format!("unknown formula `{formula}` (expected one of {})", names.join(", "))));
    };
    let arity = params.split_whitespace().count();
    if args.len() != arity {
        return Err(Error::Constraint(format!("{formula} takes {arity} arguments: {params}")));
    }
    let a = args;
    match formula {
        "antican-cube-p1-bundle" => Ok(antican_cube_p1_bundle_over_surface(&SurfaceBundleData::rank2(a[0], a[1], a[2]))),
        "xi-square-on-curve" => Ok(xi_square_on_curve(a[0])),
        "antican-cube-divisor-in-p2-bundle" => {
            Ok(antican_cube_divisor_in_p2_bundle(&SurfaceBundleData::rank3([a[0], a[1], a[2], a[3], a[4], a[5], a[6]])))
        }
        "blowup-exceptional-cube" => Ok(blowup_exceptional_cube(&BlowupData { deg_conormal: a[0], ..BlowupData::default() })),
        "antican-sq-dot-exceptional" => {
            let data = BlowupData { ky_dot_c: a[0], genus: a[1], ..BlowupData::default() };
            data.validate()?;
            Ok(antican_sq_dot_exceptional(&data))
        }
        "conic-bundle-ksq-dot-pullback" => Ok(conic_bundle_ksq_dot_pullback(a[0], a[1])),
        "genus-from-blowup" => genus_from_blowup(a[0], a[1], a[2], a[3]),
        "ky3" => ky3(a[0], a[1]),
        _ => unreachable!("formula table and dispatch agree"),
    }
}
