//! A bound problem instance: graph, utilities, part count, size vector, and
//! an optional verified tree decomposition.

use crate::decomposition::{verify_decomposition, NiceTreeDecomposition};
use crate::error::Result;
use crate::graph::FriendshipGraph;
use crate::partition::SizeVector;
use crate::utility::UtilityProfile;

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: FriendshipGraph,
    pub profile: UtilityProfile,
    pub k: usize,
    pub sizes: SizeVector,
    pub decomposition: Option<NiceTreeDecomposition>,
}

impl Instance {
    /// Bundles the pieces, establishing all cross-invariants. When no size
    /// vector is given the balanced one for `(n, k)` is constructed; a given
    /// decomposition is verified.
    pub fn new(
        graph: FriendshipGraph,
        profile: UtilityProfile,
        k: usize,
        sizes: Option<SizeVector>,
        decomposition: Option<NiceTreeDecomposition>,
    ) -> Result<Self> {
        let sizes = match sizes {
            Some(sv) => {
                sv.check_n(graph.n())?;
                if sv.k() != k {
                    return Err(crate::error::Error::InvalidInstance(format!(
                        "size vector has {} entries but parts = {k}",
                        sv.k()
                    )));
                }
                sv
            }
            None => SizeVector::balanced(graph.n(), k)?,
        };
        if let Some(td) = &decomposition {
            verify_decomposition(&graph, td)?;
        }
        Ok(Self {
            graph,
            profile,
            k,
            sizes,
            decomposition,
        })
    }

    /// Binary-utility instance over the given graph with balanced sizes.
    pub fn binary(graph: FriendshipGraph, k: usize) -> Result<Self> {
        let profile = UtilityProfile::binary(&graph);
        Self::new(graph, profile, k, None, None)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Same instance with a different part count and balanced sizes.
    pub fn with_parts(&self, k: usize) -> Result<Self> {
        Self::new(
            self.graph.clone(),
            self.profile.clone(),
            k,
            None,
            self.decomposition.clone(),
        )
    }

    /// Same instance with an explicit size vector.
    pub fn with_sizes(&self, sizes: SizeVector) -> Result<Self> {
        Self::new(
            self.graph.clone(),
            self.profile.clone(),
            sizes.k(),
            Some(sizes),
            self.decomposition.clone(),
        )
    }
}
