//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use symlift_core::balanced::{
    coarsest_balanced_refinement, enumerate_balanced, first_violation, DEFAULT_MAX_N,
};
use symlift_core::dynamics::{
    embed, energy_drift, flow_invariance_deviation, integrate, is_gradient_numeric, is_hamiltonian_numeric,
    restrict_field, sample_points, scaling_check, FieldHandle, VerificationReport, DEFAULT_SEED,
};
use symlift_core::lift::{
    build_simple_symmetric_lift, build_symmetric_lift, symmetric_lift_k_vector, verify_lift, LiftDiscrepancy,
};
use symlift_core::quotient::{quotient, quotient_is_symmetric};
use symlift_core::{DiGraph, Partition};

use crate::dot::{to_dot, DotOptions};
use crate::io::{self, ReportFile};
use crate::parallel::enumerate_balanced_parallel;
use crate::{Error, Result};

/// Default tolerance of `verify-gradient` and `verify-hamiltonian`.
pub const JACOBIAN_TOL: f64 = 1e-6;
/// Default tolerance of `verify-invariance` and of `simulate` with a partition.
pub const INVARIANCE_TOL: f64 = 1e-9;
/// Default tolerance of `verify-scaling`.
pub const SCALING_TOL: f64 = 1e-12;
/// Default energy drift tolerance of `simulate` on Hamiltonian models.
pub const ENERGY_TOL: f64 = 1e-8;
/// Sample points drawn from `[-SAMPLE_RADIUS, SAMPLE_RADIUS]^N`.
pub const SAMPLE_RADIUS: f64 = 1.0;

#[derive(Debug, Parser)]
#[command(name = "symlift", version, about = "Balanced colorings, quotients, symmetric lifts and coupled cell dynamics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for sample points and random initial states.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Override the tolerance of the check being run.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Refuse to enumerate graphs with more vertices than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    pub max_vertices: usize,
    /// Also write a DOT rendering of the result here.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quotient graph of a balanced partition.
    Quotient { graph: PathBuf, partition: PathBuf },
    /// Exit 0 if the partition is balanced, 1 with an offending pair if not.
    CheckBalanced { graph: PathBuf, partition: PathBuf },
    /// All balanced partitions, one per line.
    Enumerate {
        graph: PathBuf,
        /// Split the search across threads (same output order).
        #[arg(long)]
        parallel: bool,
    },
    /// Coarsest balanced refinement of a partition (default: the valency classes).
    Refine { graph: PathBuf, partition: Option<PathBuf> },
    /// Minimal class sizes of a symmetric lift, if one exists.
    LiftFeasible { quotient: PathBuf },
    /// Build a symmetric lift.
    Lift {
        quotient: PathBuf,
        /// Class sizes, e.g. `--k 1,3,2`; defaults to the minimal ones.
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
    },
    /// Build a symmetric lift without multiple edges, `r` vertices per class.
    SimpleLift {
        quotient: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Check that a graph and partition fold onto a quotient.
    VerifyLift { graph: PathBuf, partition: PathBuf, quotient: PathBuf },
    /// DOT rendering, coloured by an optional partition.
    Dot {
        graph: PathBuf,
        partition: Option<PathBuf>,
        /// Draw opposite arc pairs as single `dir=both` edges.
        #[arg(long)]
        collapse: bool,
    },
    /// Integrate a model with RK4 and write the trajectory as CSV.
    Simulate {
        graph: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        x0: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long)]
        steps: usize,
        /// Report the within-class spread of this partition.
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Where to write the report JSON (default: stderr).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Jacobian symmetry test of a model's field, optionally restricted.
    VerifyGradient {
        graph: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Symplectic Jacobian symmetry test, optionally restricted.
    VerifyHamiltonian {
        graph: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Largest within-class spread along a trajectory started on the synchrony subspace.
    VerifyInvariance {
        graph: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        /// Initial state; default is a seeded random point of the subspace.
        #[arg(long)]
        x0: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 5000)]
        steps: usize,
    },
    /// Compare the model's function on the graph, restricted, with k times its quotient version.
    VerifyScaling {
        graph: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

/// Whether a command succeeded or its check failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

impl Outcome {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Success
        } else {
            Outcome::Failure
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Failure => 1,
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str) -> Result<()> {
        match &self.cli.out {
            Some(path) => io::write_text(path, text),
            None => Ok(self.out.write_all(text.as_bytes())?),
        }
    }

    fn note(&mut self, text: &str) -> Result<()> {
        Ok(writeln!(self.err, "{}", text)?)
    }

    fn dot(&self, g: &DiGraph, p: Option<&Partition>) -> Result<()> {
        if let Some(path) = &self.cli.dot {
            io::write_text(path, &to_dot(g, p, &DotOptions::default()))?;
        }
        Ok(())
    }

    fn report(&mut self, r: &VerificationReport) -> Result<Outcome> {
        let text = ReportFile::new(r, self.cli.seed).to_json();
        self.emit(&text)?;
        Ok(Outcome::from_pass(r.pass))
    }
}

/// Runs one parsed command. Input and IO problems come back as `Err`;
/// failed checks as `Ok(Outcome::Failure)`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome> {
    let mut ctx = Ctx { cli, out, err };
    match &cli.command {
        Command::Quotient { graph, partition } => cmd_quotient(&mut ctx, graph, partition),
        Command::CheckBalanced { graph, partition } => cmd_check_balanced(&mut ctx, graph, partition),
        Command::Enumerate { graph, parallel } => cmd_enumerate(&mut ctx, graph, *parallel),
        Command::Refine { graph, partition } => cmd_refine(&mut ctx, graph, partition.as_deref()),
        Command::LiftFeasible { quotient } => cmd_lift_feasible(&mut ctx, quotient),
        Command::Lift { quotient, k } => cmd_lift(&mut ctx, quotient, k.as_deref()),
        Command::SimpleLift { quotient, r } => {
            let q = io::read_graph(quotient)?;
            let w = build_simple_symmetric_lift(&q, *r)?;
            emit_lift(&mut ctx, &w.lift, &w.partition)
        }
        Command::VerifyLift { graph, partition, quotient } => cmd_verify_lift(&mut ctx, graph, partition, quotient),
        Command::Dot { graph, partition, collapse } => {
            let g = io::read_graph(graph)?;
            let p = partition.as_deref().map(|p| io::read_partition(p, Some(g.n()))).transpose()?;
            let text = to_dot(&g, p.as_ref(), &DotOptions { collapse_mutual: *collapse });
            ctx.emit(&text)?;
            Ok(Outcome::Success)
        }
        Command::Simulate { graph, spec, x0, dt, steps, partition, report } => {
            cmd_simulate(&mut ctx, graph, spec, x0, *dt, *steps, partition.as_deref(), report.as_deref())
        }
        Command::VerifyGradient { graph, spec, partition, samples } => {
            let f = model_field(graph, spec, partition.as_deref())?;
            let pts = sample_points(f.dim(), *samples, cli.seed, SAMPLE_RADIUS);
            let r = is_gradient_numeric(&f, &pts, cli.tol.unwrap_or(JACOBIAN_TOL))?;
            ctx.report(&r)
        }
        Command::VerifyHamiltonian { graph, spec, partition, samples } => {
            let f = model_field(graph, spec, partition.as_deref())?;
            let pts = sample_points(f.dim(), *samples, cli.seed, SAMPLE_RADIUS);
            let r = is_hamiltonian_numeric(&f, &pts, cli.tol.unwrap_or(JACOBIAN_TOL))?;
            ctx.report(&r)
        }
        Command::VerifyInvariance { graph, spec, partition, x0, dt, steps } => {
            let g = io::read_graph(graph)?;
            let f = io::read_model(spec)?.field(&g)?;
            let p = io::read_partition(partition, Some(g.n()))?;
            let x0 = match x0 {
                Some(path) => io::read_state(path)?,
                None => {
                    let small = f.layout().with_cells(p.num_classes());
                    let y = sample_points(small.len(), 1, cli.seed, SAMPLE_RADIUS).remove(0);
                    embed(&f.layout(), &p, &y)?
                }
            };
            let r = flow_invariance_deviation(&f, &p, &x0, *dt, *steps, cli.tol.unwrap_or(INVARIANCE_TOL))?;
            ctx.report(&r)
        }
        Command::VerifyScaling { graph, spec, partition, samples } => {
            let g = io::read_graph(graph)?;
            let model = io::read_model(spec)?;
            let spec = model
                .coupling()
                .ok_or_else(|| Error::Format("verify-scaling needs a gradient or hamiltonian model".into()))?;
            let p = io::read_partition(partition, Some(g.n()))?;
            let dim = spec.layout(p.num_classes()).len();
            let pts = sample_points(dim, *samples, cli.seed, SAMPLE_RADIUS);
            let r = scaling_check(&g, &p, spec, &pts, cli.tol.unwrap_or(SCALING_TOL))?;
            ctx.report(&r)
        }
    }
}

fn model_field(graph: &Path, spec: &Path, partition: Option<&Path>) -> Result<FieldHandle> {
    let g = io::read_graph(graph)?;
    let f = io::read_model(spec)?.field(&g)?;
    match partition {
        Some(path) => Ok(restrict_field(&f, &io::read_partition(path, Some(g.n()))?)?),
        None => Ok(f),
    }
}

fn cmd_quotient(ctx: &mut Ctx, graph: &Path, partition: &Path) -> Result<Outcome> {
    let g = io::read_graph(graph)?;
    let p = io::read_partition(partition, Some(g.n()))?;
    let q = quotient(&g, &p)?;
    ctx.emit(&io::graph_to_json(&q.quotient))?;
    ctx.dot(&q.quotient, None)?;
    let sizes: Vec<String> = q.class_sizes.iter().map(|k| k.to_string()).collect();
    ctx.note(&format!("classes: {} of sizes {}", q.class_sizes.len(), sizes.join(", ")))?;
    if g.is_symmetric() {
        let sym = quotient_is_symmetric(&g, &p)?;
        let verdict = match sym.witness {
            None => "symmetric quotient".to_string(),
            Some((i, j)) => format!("non-symmetric quotient: connected classes {} and {} differ in size", i + 1, j + 1),
        };
        ctx.note(&verdict)?;
    }
    Ok(Outcome::Success)
}

fn cmd_check_balanced(ctx: &mut Ctx, graph: &Path, partition: &Path) -> Result<Outcome> {
    let g = io::read_graph(graph)?;
    let p = io::read_partition(partition, Some(g.n()))?;
    ctx.dot(&g, Some(&p))?;
    match first_violation(&g, &p)? {
        None => {
            ctx.emit("balanced\n")?;
            Ok(Outcome::Success)
        }
        Some(v) => {
            ctx.emit(&format!(
                "not balanced: vertices {} and {} receive different edge counts from class {}\n",
                v.u + 1,
                v.v + 1,
                v.class + 1
            ))?;
            Ok(Outcome::Failure)
        }
    }
}

fn cmd_enumerate(ctx: &mut Ctx, graph: &Path, parallel: bool) -> Result<Outcome> {
    let g = io::read_graph(graph)?;
    let max = ctx.cli.max_vertices;
    let all = if parallel { enumerate_balanced_parallel(&g, max)? } else { enumerate_balanced(&g, max)? };
    let mut text = String::new();
    for p in &all {
        text.push_str(&io::partition_to_json(p));
        text.push('\n');
    }
    ctx.emit(&text)?;
    ctx.note(&format!("{} balanced partitions", all.len()))?;
    Ok(Outcome::Success)
}

fn cmd_refine(ctx: &mut Ctx, graph: &Path, partition: Option<&Path>) -> Result<Outcome> {
    let g = io::read_graph(graph)?;
    let seed = match partition {
        Some(path) => io::read_partition(path, Some(g.n()))?,
        None => g.valency_partition(),
    };
    let p = coarsest_balanced_refinement(&g, &seed)?;
    ctx.emit(&format!("{}\n", io::partition_to_json(&p)))?;
    ctx.dot(&g, Some(&p))?;
    Ok(Outcome::Success)
}

fn cmd_lift_feasible(ctx: &mut Ctx, path: &Path) -> Result<Outcome> {
    let q = io::read_graph(path)?;
    match symmetric_lift_k_vector(&q)? {
        Some(k) => {
            let list: Vec<String> = k.iter().map(|v| v.to_string()).collect();
            ctx.emit(&format!("k=({})\n", list.join(",")))?;
            ctx.note(&format!("smallest symmetric lift: {} vertices", k.iter().sum::<u64>()))?;
            Ok(Outcome::Success)
        }
        None => {
            ctx.emit("no symmetric lift\n")?;
            Ok(Outcome::Failure)
        }
    }
}

fn cmd_lift(ctx: &mut Ctx, path: &Path, k: Option<&[usize]>) -> Result<Outcome> {
    let q = io::read_graph(path)?;
    let k = match k {
        Some(k) => k.to_vec(),
        None => match symmetric_lift_k_vector(&q)? {
            Some(k) => k.into_iter().map(|v| v as usize).collect(),
            None => {
                ctx.emit("no symmetric lift\n")?;
                return Ok(Outcome::Failure);
            }
        },
    };
    let w = build_symmetric_lift(&q, &k)?;
    emit_lift(ctx, &w.lift, &w.partition)
}

fn emit_lift(ctx: &mut Ctx, lift: &DiGraph, p: &Partition) -> Result<Outcome> {
    ctx.emit(&io::graph_to_json(lift))?;
    ctx.dot(lift, Some(p))?;
    ctx.note(&format!("partition: {}", io::partition_to_json(p)))?;
    Ok(Outcome::Success)
}

fn cmd_verify_lift(ctx: &mut Ctx, graph: &Path, partition: &Path, quotient: &Path) -> Result<Outcome> {
    let g = io::read_graph(graph)?;
    let p = io::read_partition(partition, Some(g.n()))?;
    let q = io::read_graph(quotient)?;
    ctx.dot(&g, Some(&p))?;
    let report = verify_lift(&g, &p, &q);
    let line = match report.discrepancy {
        None => "lift verified".to_string(),
        Some(LiftDiscrepancy::SizeMismatch { graph_n, partition_n }) => {
            format!("mismatch: graph has {} vertices, partition covers {}", graph_n, partition_n)
        }
        Some(LiftDiscrepancy::ClassCount { expected, found }) => {
            format!("mismatch: quotient has {} vertices, partition has {} classes", expected, found)
        }
        Some(LiftDiscrepancy::Unbalanced(v)) => format!(
            "mismatch: vertices {} and {} receive different edge counts from class {}",
            v.u + 1,
            v.v + 1,
            v.class + 1
        ),
        Some(LiftDiscrepancy::Entry { i, j, expected, found }) => {
            format!("mismatch: quotient entry ({}, {}) is {}, expected {}", i + 1, j + 1, found, expected)
        }
    };
    ctx.emit(&format!("{}\n", line))?;
    Ok(Outcome::from_pass(report.ok))
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    ctx: &mut Ctx,
    graph: &Path,
    spec: &Path,
    x0: &Path,
    dt: f64,
    steps: usize,
    partition: Option<&Path>,
    report: Option<&Path>,
) -> Result<Outcome> {
    let g = io::read_graph(graph)?;
    let model = io::read_model(spec)?;
    let f = model.field(&g)?;
    let x0 = io::read_state(x0)?;
    let tr = integrate(&f, &x0, dt, steps)?;
    let mut csv = Vec::new();
    io::write_trajectory(&mut csv, &f.layout(), &tr)?;
    ctx.emit(std::str::from_utf8(&csv).expect("csv output is utf-8"))?;

    let r = match (partition, model.potential(&g)?) {
        (Some(path), _) => {
            let p = io::read_partition(path, Some(g.n()))?;
            flow_invariance_deviation(&f, &p, &x0, dt, steps, ctx.cli.tol.unwrap_or(INVARIANCE_TOL))?
        }
        (None, Some(h)) if f.layout().blocks == 2 => {
            energy_drift(|x| h.eval(x).expect("state length fixed"), &tr, ctx.cli.tol.unwrap_or(ENERGY_TOL))
        }
        _ => VerificationReport::new("finite", 0.0, 0.0, tr.states.len()),
    };
    let text = ReportFile::new(&r, ctx.cli.seed).to_json();
    match report {
        Some(path) => io::write_text(path, &text)?,
        None => ctx.err.write_all(text.as_bytes())?,
    }
    Ok(Outcome::from_pass(r.pass))
}

/// Parses `args`, runs, and returns the process exit code: 0 success,
/// 1 failed check, 2 bad input.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match run(&cli, out, err) {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            2
        }
    }
}
