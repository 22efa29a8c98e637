//! JSON and CSV formats. Vertices and cells are numbered from 1 in every
//! file; the core works 0-based.
//!
//! * graph: `{"n": 3, "edges": [[src, dst, mult], ...]}`
//! * partition: `[[1, 2], [3]]`
//! * state: `[0.1, -0.2, ...]`
//! * model: `{"kind": "gradient" | "hamiltonian" | "admissible" | "custom", ...}`
//!   with polynomials as `[[coeff, [exp, ...]], ...]`

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use symlift_core::dynamics::{
    admissible_field, custom_field, AdmissibleCoupling, CouplingKind, CouplingSpec, FieldHandle, Potential,
    StateLayout, Trajectory, VerificationReport, DEFAULT_MAX_DEGREE,
};
use symlift_core::poly::Poly;
use symlift_core::{DiGraph, Partition};

use crate::{Error, Result};

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.into(), source })
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|source| Error::Json { context: format!("malformed {}", what), source })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize, u32)>,
}

pub fn parse_graph(text: &str) -> Result<DiGraph> {
    let file: GraphFile = parse_json(text, "graph JSON")?;
    let mut edges = Vec::with_capacity(file.edges.len());
    for &(src, dst, mult) in &file.edges {
        if src == 0 || dst == 0 {
            return Err(Error::Format("graph JSON: vertices are numbered from 1".into()));
        }
        edges.push((src - 1, dst - 1, mult));
    }
    Ok(DiGraph::from_edges(file.n, &edges)?)
}

/// Canonical graph JSON: one edge per line, ordered by source then target.
pub fn graph_to_json(g: &DiGraph) -> String {
    let edges = g.to_edges();
    let mut s = format!("{{\n  \"n\": {},\n  \"edges\": [", g.n());
    for (i, (src, dst, mult)) in edges.iter().enumerate() {
        let sep = if i + 1 == edges.len() { "" } else { "," };
        write!(s, "\n    [{}, {}, {}]{}", src + 1, dst + 1, mult, sep).unwrap();
    }
    if !edges.is_empty() {
        s.push_str("\n  ");
    }
    s.push_str("]\n}\n");
    s
}

pub fn read_graph(path: &Path) -> Result<DiGraph> {
    parse_graph(&read_text(path)?).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Json { context, source } => Error::Json { context: format!("{}: {}", path.display(), context), source },
        Error::Format(msg) => Error::Format(format!("{}: {}", path.display(), msg)),
        e => e,
    }
}

/// Classes must cover `1..=n` exactly once; `n` defaults to the largest
/// vertex mentioned.
pub fn parse_partition(text: &str, n: Option<usize>) -> Result<Partition> {
    let classes: Vec<Vec<usize>> = parse_json(text, "partition JSON")?;
    if classes.iter().flatten().any(|&v| v == 0) {
        return Err(Error::Format("partition JSON: vertices are numbered from 1".into()));
    }
    let n = n.unwrap_or_else(|| classes.iter().flatten().copied().max().unwrap_or(0));
    let zero_based: Vec<Vec<usize>> = classes.iter().map(|c| c.iter().map(|v| v - 1).collect()).collect();
    Ok(Partition::from_classes(n, &zero_based)?)
}

/// `[[1, 2], [3]]` with classes ordered by smallest member.
pub fn partition_to_json(p: &Partition) -> String {
    let classes: Vec<Vec<usize>> = p.classes().iter().map(|c| c.iter().map(|v| v + 1).collect()).collect();
    let mut s = String::from("[");
    for (i, class) in classes.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let items: Vec<String> = class.iter().map(|v| v.to_string()).collect();
        write!(s, "[{}]", items.join(", ")).unwrap();
    }
    s.push(']');
    s
}

pub fn read_partition(path: &Path, n: Option<usize>) -> Result<Partition> {
    parse_partition(&read_text(path)?, n).map_err(|e| with_path(path, e))
}

pub fn read_state(path: &Path) -> Result<Vec<f64>> {
    parse_json(&read_text(path)?, "state JSON").map_err(|e| with_path(path, e))
}

type PolyTable = Vec<(f64, Vec<u32>)>;

fn table_to_poly(table: &PolyTable, nvars: usize, what: &str) -> Result<Poly> {
    if let Some((_, e)) = table.iter().find(|(_, e)| e.len() != nvars) {
        return Err(Error::Format(format!("{}: exponent list {:?} should have {} entries", what, e, nvars)));
    }
    Ok(Poly::new(nvars, table.clone())?)
}

fn yes() -> bool {
    true
}

fn one() -> usize {
    1
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ModelFile {
    Gradient(CouplingFile),
    Hamiltonian(CouplingFile),
    Admissible {
        #[serde(default = "one")]
        cell_dim: usize,
        #[serde(default)]
        internal: Vec<PolyTable>,
        #[serde(default)]
        pairwise: Vec<PolyTable>,
    },
    Custom {
        #[serde(default = "one")]
        cell_dim: usize,
        #[serde(default)]
        hamiltonian: bool,
        components: Vec<String>,
    },
}

#[derive(Deserialize)]
struct CouplingFile {
    #[serde(default = "one")]
    cell_dim: usize,
    #[serde(default)]
    alpha: PolyTable,
    #[serde(default)]
    beta: PolyTable,
    #[serde(default = "yes")]
    beta_symmetric: bool,
    #[serde(default)]
    max_degree: Option<u32>,
}

/// A vector field recipe read from a model file, not yet tied to a graph.
#[derive(Clone, Debug)]
pub enum Model {
    Coupling(CouplingSpec),
    Admissible(AdmissibleCoupling),
    Custom { cell_dim: usize, hamiltonian: bool, components: Vec<String> },
}

impl Model {
    /// The field on `g`; custom fields only take the cell count from `g`.
    pub fn field(&self, g: &DiGraph) -> Result<FieldHandle> {
        Ok(match self {
            Model::Coupling(spec) => Potential::new(g, spec)?.field(),
            Model::Admissible(c) => admissible_field(g, c)?,
            Model::Custom { cell_dim, hamiltonian, components } => {
                let layout = if *hamiltonian {
                    StateLayout::hamiltonian(g.n(), *cell_dim)
                } else {
                    StateLayout::plain(g.n(), *cell_dim)
                };
                custom_field(layout, components)?
            }
        })
    }

    /// The gradient or Hamiltonian function, when the model has one.
    pub fn potential(&self, g: &DiGraph) -> Result<Option<Potential>> {
        match self {
            Model::Coupling(spec) => Ok(Some(Potential::new(g, spec)?)),
            _ => Ok(None),
        }
    }

    pub fn coupling(&self) -> Option<&CouplingSpec> {
        match self {
            Model::Coupling(spec) => Some(spec),
            _ => None,
        }
    }
}

pub fn parse_model(text: &str) -> Result<Model> {
    let file: ModelFile = parse_json(text, "model JSON")?;
    Ok(match file {
        ModelFile::Gradient(c) => Model::Coupling(coupling(CouplingKind::Gradient, c)?),
        ModelFile::Hamiltonian(c) => Model::Coupling(coupling(CouplingKind::Hamiltonian, c)?),
        ModelFile::Admissible { cell_dim, internal, pairwise } => {
            let internal = padded(internal, cell_dim, cell_dim, "internal")?;
            let pairwise = padded(pairwise, cell_dim, 2 * cell_dim, "pairwise")?;
            Model::Admissible(AdmissibleCoupling::new(cell_dim, internal, pairwise)?)
        }
        ModelFile::Custom { cell_dim, hamiltonian, components } => Model::Custom { cell_dim, hamiltonian, components },
    })
}

/// One polynomial per cell coordinate; a missing list means all zero.
fn padded(tables: Vec<PolyTable>, cell_dim: usize, nvars: usize, what: &str) -> Result<Vec<Poly>> {
    if tables.is_empty() {
        return Ok(vec![Poly::zero(nvars); cell_dim]);
    }
    tables.iter().map(|t| table_to_poly(t, nvars, what)).collect()
}

fn coupling(kind: CouplingKind, c: CouplingFile) -> Result<CouplingSpec> {
    let blocks = if kind == CouplingKind::Gradient { 1 } else { 2 };
    let alpha = table_to_poly(&c.alpha, blocks * c.cell_dim, "alpha")?;
    let beta = table_to_poly(&c.beta, 2 * blocks * c.cell_dim, "beta")?;
    let cap = c.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    Ok(CouplingSpec::with_max_degree(kind, c.cell_dim, alpha, beta, c.beta_symmetric, cap)?)
}

pub fn read_model(path: &Path) -> Result<Model> {
    parse_model(&read_text(path)?).map_err(|e| with_path(path, e))
}

/// Report as written by the `verify-*` commands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub check: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
}

impl ReportFile {
    pub fn new(r: &VerificationReport, seed: u64) -> Self {
        ReportFile { check: r.check.clone(), deviation: r.deviation, tolerance: r.tolerance, pass: r.pass, seed }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain struct");
        s.push('\n');
        s
    }
}

/// Trajectory as CSV with a header `t,<var>,...`.
pub fn write_trajectory<W: Write>(out: W, layout: &StateLayout, tr: &Trajectory) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["t".to_string()];
    header.extend((0..layout.len()).map(|i| layout.var_name(i)));
    w.write_record(&header)?;
    for (t, x) in tr.times.iter().zip(&tr.states) {
        let mut row = vec![t.to_string()];
        row.extend(x.iter().map(|v| v.to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
