//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{dual_vertices, facet_presentation, max_neighborliness_subquiver};
use crate::quiver::{CycleBasis, Quiver};
use crate::report::{certificate_report, ReportOptions};
use crate::sensing::{build_sensing_matrix, recovery_sweep, SweepOptions};
use crate::stability::{is_generic, perturb_to_generic, GenericityMode, Limits, PerturbOptions};
use crate::weight::{canonical_weight, rational_pair, Weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_GUARANTEE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "quiverpoly", version, about = "Dual flow polytopes of acyclic quivers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Seed permuting the spanning-tree growth order.
    #[arg(long, global = true)]
    pub tree_seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 24, value_parser = clap::value_parser!(u64).range(1..=30))]
    pub max_vertices: u64,
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u64).range(1..=128))]
    pub max_arrows: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certificate report: genericity, tightness, codimension, neighborliness.
    Report {
        /// Quiver file (edge list or JSON), `bipartite:p,q` or `multipartite:a,b,...`
        source: String,
    },
    /// Dual polytope vertices, one per arrow.
    Vertices {
        /// Quiver file (edge list or JSON), `bipartite:p,q` or `multipartite:a,b,...`
        source: String,
    },
    /// Facet inequalities `A x <= 1` of the translated flow polytope.
    Facets {
        /// Quiver file (edge list or JSON), `bipartite:p,q` or `multipartite:a,b,...`
        source: String,
    },
    /// Exact recovery sweep over every support of size at most k.
    Sense {
        /// Quiver file (edge list or JSON), `bipartite:p,q` or `multipartite:a,b,...`
        source: String,
        /// Largest support size; defaults to the certified neighborliness.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coefficient draws per support.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// A generic weight within l1 distance 1 of the canonical weight.
    Perturb {
        /// Quiver file (edge list or JSON), `bipartite:p,q` or `multipartite:a,b,...`
        source: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A parsed quiver source: a file path or a generator spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Source {
    pub label: String,
    pub quiver: Quiver,
    /// Side sizes when the spec was `bipartite:p,q`.
    pub bipartite: Option<(usize, usize)>,
}

impl Source {
    /// `bipartite:p,q`, `multipartite:a,b,...`, or a path to a text or JSON
    /// quiver file.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts = |list: &str| -> Result<Vec<usize>> {
            list.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&n| n > 0)
                        .ok_or_else(|| Error::Source(format!("bad part size {s:?} in {spec:?}")))
                })
                .collect()
        };
        if let Some(rest) = spec.strip_prefix("bipartite:") {
            let sides = parts(rest)?;
            let [p, q] = sides[..] else {
                return Err(Error::Source(format!("{spec:?} needs exactly two sides")));
            };
            return Ok(Source {
                label: spec.to_string(),
                quiver: Quiver::bipartite(p, q)?,
                bipartite: Some((p, q)),
            });
        }
        if let Some(rest) = spec.strip_prefix("multipartite:") {
            let sizes = parts(rest)?;
            let bipartite = match sizes[..] {
                [p, q] => Some((p, q)),
                _ => None,
            };
            return Ok(Source {
                label: spec.to_string(),
                quiver: Quiver::multipartite(&sizes)?,
                bipartite,
            });
        }
        let text = std::fs::read_to_string(spec)
            .map_err(|e| Error::Source(format!("cannot read {spec:?}: {e}")))?;
        Ok(Source {
            label: spec.to_string(),
            quiver: Quiver::parse_any(&text)?,
            bipartite: None,
        })
    }
}

/// Maps an error to the documented exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity { .. } | Error::PivotLimit(_) => EXIT_CAPACITY,
        Error::Integrity(_) | Error::NotFound(_) | Error::Refused(_) => EXIT_GUARANTEE,
        _ => EXIT_CONFIG,
    }
}

/// Output of one subcommand before encoding.
struct Rendered {
    json: String,
    csv: Option<String>,
    text: String,
    /// All asserted guarantees held.
    ok: bool,
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct PerturbOutput<'a> {
    canonical_weight: &'a Weight,
    theta: &'a Weight,
    perturbed: bool,
    #[serde(with = "rational_pair")]
    l1_distance: num_rational::BigRational,
    generic: bool,
}

fn execute(cli: &Cli) -> Result<Rendered> {
    let limits = Limits {
        max_vertices: cli.max_vertices as usize,
        max_arrows: cli.max_arrows as usize,
        ..Limits::default()
    };
    let (Command::Report { source }
    | Command::Vertices { source }
    | Command::Facets { source }
    | Command::Sense { source, .. }
    | Command::Perturb { source }) = &cli.command;
    let src = Source::parse(source)?;
    let q = &src.quiver;
    if q.vertex_count() > limits.max_vertices {
        return Err(Error::capacity("vertex count", limits.max_vertices as u128, q.vertex_count() as u128));
    }
    if q.arrow_count() > limits.max_arrows {
        return Err(Error::capacity("arrow count", limits.max_arrows as u128, q.arrow_count() as u128));
    }

    match &cli.command {
        Command::Report { .. } => {
            let opts = ReportOptions {
                limits,
                tree_seed: cli.tree_seed,
                perturb: PerturbOptions::default(),
            };
            let report = certificate_report(q, &src.label, src.bipartite, &opts)?;
            Ok(Rendered {
                json: to_json(&report)?,
                csv: None,
                text: report.to_string(),
                ok: report.guarantees_hold(),
            })
        }
        Command::Vertices { .. } => {
            let v = dual_vertices(q, &CycleBasis::new(q, cli.tree_seed)?)?;
            let csv = v.to_csv();
            Ok(Rendered {
                json: to_json(&v)?,
                text: format!("# {} points in dimension {}\n{csv}", v.len(), v.dimension),
                csv: Some(csv),
                ok: true,
            })
        }
        Command::Facets { .. } => {
            let f = facet_presentation(q, &CycleBasis::new(q, cli.tree_seed)?)?;
            let csv = f.to_csv();
            let note = if f.not_tight { " (not tight)" } else { "" };
            Ok(Rendered {
                json: to_json(&f)?,
                text: format!("# {} inequalities a.x <= 1{note}\n{csv}", f.matrix.len()),
                csv: Some(csv),
                ok: true,
            })
        }
        Command::Sense { k, seed, trials, .. } => {
            let basis = CycleBasis::new(q, cli.tree_seed)?;
            let a = build_sensing_matrix(q, &basis, &limits)?;
            let certified = max_neighborliness_subquiver(q, &canonical_weight(q), &limits)?.k_max;
            let k = k.unwrap_or(certified);
            let opts = SweepOptions {
                trials_per_support: *trials as usize,
                seed: *seed,
                ..SweepOptions::default()
            };
            let report = recovery_sweep(&a, k, &opts)?;
            let within_guarantee = k <= certified;
            let mut csv = String::from("support,trial,recovered,unique,pivots\n");
            for i in &report.instances {
                let support: Vec<String> = i.support.iter().map(usize::to_string).collect();
                writeln!(csv, "{},{},{},{},{}", support.join(" "), i.trial, i.recovered, i.unique, i.pivots).unwrap();
            }
            let text = format!(
                "{}x{} matrix, k = {k} (certified {certified}), {} instances, success rate {}\n",
                report.rows,
                report.columns,
                report.instances.len(),
                report.success_rate
            );
            Ok(Rendered {
                json: to_json(&report)?,
                csv: Some(csv),
                text,
                ok: !within_guarantee || report.successes == report.instances.len(),
            })
        }
        Command::Perturb { .. } => {
            let delta = canonical_weight(q);
            let theta = perturb_to_generic(q, &delta, &limits, &PerturbOptions::default())?;
            let generic = is_generic(q, &theta, GenericityMode::Exhaustive)?.generic;
            let out = PerturbOutput {
                canonical_weight: &delta,
                theta: &theta,
                perturbed: theta != delta,
                l1_distance: theta.l1_distance(&delta),
                generic,
            };
            let mut csv = String::from("vertex,canonical,theta\n");
            for (i, (d, t)) in delta.values().iter().zip(theta.values()).enumerate() {
                writeln!(csv, "{i},{d},{t}").unwrap();
            }
            Ok(Rendered {
                json: to_json(&out)?,
                csv: Some(csv),
                text: format!("canonical {delta}\ntheta     {theta}\ndistance  {}\n", out.l1_distance),
                ok: generic,
            })
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Errors are reported on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    if let Some(jobs) = cli.jobs {
        // Fails only if the pool was already built, e.g. by an earlier call
        // in the same process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global();
    }
    let result = execute(&cli).and_then(|r| {
        let body = match cli.format {
            Format::Json => r.json,
            Format::Text => r.text,
            Format::Csv => r.csv.ok_or_else(|| Error::Source("csv output is not available for this command".into()))?,
        };
        emit(&cli, &body)?;
        Ok(r.ok)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            eprintln!("quiverpoly: a guaranteed property failed");
            EXIT_GUARANTEE
        }
        Err(e) => {
            eprintln!("quiverpoly: {e}");
            exit_code(&e)
        }
    }
}
