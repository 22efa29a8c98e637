use alloc::string::String;
use core::fmt;

/// Errors reported by the graph, lift and dynamics routines.
#[allow(missing_docs)]
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A graph must have at least one vertex.
    EmptyGraph,
    /// A vertex index (0-based) outside `0..n`.
    VertexOutOfRange { vertex: usize, n: usize },
    /// Edge multiplicities must be at least one.
    NonPositiveMultiplicity { src: usize, dst: usize },
    /// An adjacency matrix whose entry count is not `n * n`.
    MatrixShape { n: usize, len: usize },
    /// Partition and graph (or two partitions) disagree on the vertex count.
    SizeMismatch { expected: usize, found: usize },
    /// A class list that misses, repeats, or leaves empty some vertex class.
    InvalidPartition(String),
    /// The partition is not balanced; `u` and `v` share a class but receive
    /// different numbers of edges from class `class`.
    Unbalanced { u: usize, v: usize, class: usize },
    /// The operation needs a symmetric adjacency matrix.
    NotSymmetric,
    /// The operation needs a regular graph.
    NotRegular,
    /// The operation needs a connected graph.
    NotConnected,
    /// Exhaustive enumeration refused above the vertex guard.
    GuardExceeded { n: usize, max_n: usize },
    /// Class sizes violate `k_i q_ij = k_j q_ji` for the pair `(i, j)`.
    IncompatibleClassSizes { i: usize, j: usize },
    /// Class sizes must be positive and one per quotient vertex.
    InvalidClassSizes(String),
    /// A block cannot have the requested row and column sums.
    InconsistentMargins { rows: usize, cols: usize, row_sum: u32, col_sum: u32 },
    /// A simple lift with `r` vertices per class needs `r >= p`.
    MultiplierTooSmall { r: usize, p: u32 },
    /// Integer overflow while scaling class sizes.
    Overflow,
    /// Malformed polynomial or coupling description.
    InvalidCoupling(String),
    /// Expression parse failure at byte offset `pos`.
    Parse { pos: usize, msg: String },
    /// An expression refers to a variable that is not part of the state.
    UnknownVariable(String),
    /// State vector of the wrong length.
    StateLength { expected: usize, found: usize },
    /// Initial point not on the polydiagonal subspace.
    NotInPolydiagonal { u: usize, v: usize },
    /// Evaluation produced a non-finite value (`step` is the integration
    /// step, or the sample index for pointwise checks).
    Divergent { step: usize },
    /// Restriction to a polydiagonal failed: members of `class` disagree.
    RepresentativeMismatch { class: usize, deviation: f64 },
    /// Step size or step count out of range.
    InvalidStep(String),
}

/// Crate result alias.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Vertex and class numbers are shown 1-based, matching the file formats.
        match self {
            Error::EmptyGraph => write!(f, "graph must have at least one vertex"),
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {} out of range 1..={}", vertex + 1, n)
            }
            Error::NonPositiveMultiplicity { src, dst } => {
                write!(f, "edge {} -> {} has non-positive multiplicity", src + 1, dst + 1)
            }
            Error::MatrixShape { n, len } => {
                write!(f, "adjacency of {} entries does not fit {}x{}", len, n, n)
            }
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {} vertices, found {}", expected, found)
            }
            Error::InvalidPartition(msg) => write!(f, "invalid partition: {}", msg),
            Error::Unbalanced { u, v, class } => write!(
                f,
                "partition not balanced: vertices {} and {} receive different edge counts from class {}",
                u + 1,
                v + 1,
                class + 1
            ),
            Error::NotSymmetric => write!(f, "graph is not symmetric"),
            Error::NotRegular => write!(f, "graph is not regular"),
            Error::NotConnected => write!(f, "graph is not connected"),
            Error::GuardExceeded { n, max_n } => {
                write!(f, "{} vertices exceeds enumeration guard {}", n, max_n)
            }
            Error::IncompatibleClassSizes { i, j } => write!(
                f,
                "class sizes violate k_i q_ij = k_j q_ji for i={}, j={}",
                i + 1,
                j + 1
            ),
            Error::InvalidClassSizes(msg) => write!(f, "invalid class sizes: {}", msg),
            Error::InconsistentMargins { rows, cols, row_sum, col_sum } => write!(
                f,
                "no {}x{} block has row sum {} and column sum {}",
                rows, cols, row_sum, col_sum
            ),
            Error::MultiplierTooSmall { r, p } => write!(
                f,
                "simple lift needs at least {} vertices per class, got {}",
                p, r
            ),
            Error::Overflow => write!(f, "integer overflow while scaling class sizes"),
            Error::InvalidCoupling(msg) => write!(f, "invalid coupling: {}", msg),
            Error::Parse { pos, msg } => write!(f, "parse error at offset {}: {}", pos, msg),
            Error::UnknownVariable(name) => write!(f, "unknown variable '{}'", name),
            Error::StateLength { expected, found } => {
                write!(f, "state has length {}, expected {}", found, expected)
            }
            Error::NotInPolydiagonal { u, v } => write!(
                f,
                "initial state not synchronous: cells {} and {} differ",
                u + 1,
                v + 1
            ),
            Error::Divergent { step } => write!(f, "non-finite state at step {}", step),
            Error::RepresentativeMismatch { class, deviation } => write!(
                f,
                "members of class {} disagree by {:e}; partition not balanced for this field",
                class + 1,
                deviation
            ),
            Error::InvalidStep(msg) => write!(f, "invalid step: {}", msg),
        }
    }
}

impl core::error::Error for Error {}
