//! Balanced-partition enumeration split across threads.

use rayon::prelude::*;
use symlift_core::balanced::{enumerate_balanced_with_prefix, rgs_prefixes};
use symlift_core::{DiGraph, Error, Partition};

/// Length of the restricted-growth prefixes handed to workers.
const PREFIX_LEN: usize = 4;

/// Same output, in the same order, as
/// [`symlift_core::balanced::enumerate_balanced`], with the search split by
/// the classes of the first few vertices.
pub fn enumerate_balanced_parallel(g: &DiGraph, max_n: usize) -> Result<Vec<Partition>, Error> {
    if g.n() > max_n {
        return Err(Error::GuardExceeded { n: g.n(), max_n });
    }
    let prefixes = rgs_prefixes(PREFIX_LEN.min(g.n()));
    let chunks: Vec<Vec<Partition>> = prefixes
        .par_iter()
        .map(|p| enumerate_balanced_with_prefix(g, p, max_n))
        .collect::<Result<_, _>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use symlift_core::balanced::enumerate_balanced;

    #[test]
    fn matches_sequential() {
        let g = DiGraph::from_undirected(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert_eq!(enumerate_balanced_parallel(&g, 12).unwrap(), enumerate_balanced(&g, 12).unwrap());
        let tiny = DiGraph::from_rows(&[[1u32, 0], [0, 1]]).unwrap();
        assert_eq!(enumerate_balanced_parallel(&tiny, 12).unwrap(), enumerate_balanced(&tiny, 12).unwrap());
        assert!(enumerate_balanced_parallel(&g, 5).is_err());
    }
}
