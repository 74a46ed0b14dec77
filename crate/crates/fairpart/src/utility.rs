//! Additive utility profiles and the monotone set-valuation contract.

use crate::error::{Error, Result};
use crate::graph::{AgentId, FriendshipGraph};

/// Per-pair additive weights. `weight(a, b) > 0` exactly when `{a, b}` is an
/// edge of the friendship graph; everything else is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityProfile {
    // out[a] is sorted by friend id, aligned with the graph adjacency.
    out: Vec<Vec<(AgentId, u64)>>,
}

/// Classification flags derived from a profile; never stored as ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UtilityClass {
    pub binary: bool,
    pub symmetric: bool,
    pub objective: bool,
}

impl UtilityProfile {
    /// All edge weights one, in both directions.
    pub fn binary(graph: &FriendshipGraph) -> Self {
        let out = (0..graph.n())
            .map(|a| graph.friends(a).iter().map(|&b| (b, 1)).collect())
            .collect();
        Self { out }
    }

    /// Builds a profile from directed weights on the graph's edges. Every
    /// edge must receive a positive weight in both directions; weights on
    /// non-edges are impossible by construction.
    pub fn from_directed_weights(
        graph: &FriendshipGraph,
        weights: &[(AgentId, AgentId, u64)],
    ) -> Result<Self> {
        let mut out: Vec<Vec<(AgentId, u64)>> = (0..graph.n())
            .map(|a| graph.friends(a).iter().map(|&b| (b, 0)).collect())
            .collect();
        for &(a, b, w) in weights {
            if a >= graph.n() || b >= graph.n() || !graph.has_edge(a, b) {
                return Err(Error::InvalidInstance(format!(
                    "weight on a non-edge ({a}, {b})"
                )));
            }
            if w == 0 {
                return Err(Error::InvalidInstance(format!("zero weight on edge ({a}, {b})")));
            }
            let idx = out[a].binary_search_by_key(&b, |e| e.0).unwrap();
            out[a][idx].1 = w;
        }
        for (a, row) in out.iter().enumerate() {
            if let Some(&(b, _)) = row.iter().find(|&&(_, w)| w == 0) {
                return Err(Error::InvalidInstance(format!(
                    "zero weight on edge ({a}, {b})"
                )));
            }
        }
        Ok(Self { out })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    /// `u_a(b)`; zero for non-friends and for `a` itself.
    pub fn weight(&self, a: AgentId, b: AgentId) -> u64 {
        match self.out[a].binary_search_by_key(&b, |e| e.0) {
            Ok(i) => self.out[a][i].1,
            Err(_) => 0,
        }
    }

    /// Friend list of `a` with weights, sorted by friend id.
    pub fn weighted_friends(&self, a: AgentId) -> &[(AgentId, u64)] {
        &self.out[a]
    }

    /// `u_a(Fr(a))`, the total utility the agent can ever collect.
    pub fn total(&self, a: AgentId) -> u64 {
        self.out[a].iter().map(|&(_, w)| w).sum()
    }

    /// Additive utility of `a` for an arbitrary agent set; `a` contributes
    /// zero to itself.
    pub fn utility_of_set(&self, a: AgentId, set: &[AgentId]) -> u64 {
        // Iterate the smaller side.
        if set.len() < self.out[a].len() {
            set.iter().map(|&b| self.weight(a, b)).sum()
        } else {
            let sorted_guess = set.windows(2).all(|w| w[0] < w[1]);
            if sorted_guess {
                self.out[a]
                    .iter()
                    .filter(|&&(b, _)| set.binary_search(&b).is_ok())
                    .map(|&(_, w)| w)
                    .sum()
            } else {
                set.iter().map(|&b| self.weight(a, b)).sum()
            }
        }
    }

    /// Derives the {binary, symmetric, objective} flags from the definitions.
    pub fn classify(&self) -> UtilityClass {
        let binary = self.out.iter().all(|row| row.iter().all(|&(_, w)| w == 1));
        let symmetric = self
            .out
            .iter()
            .enumerate()
            .all(|(a, row)| row.iter().all(|&(b, w)| self.weight(b, a) == w));
        // Objective: toward each agent b, all friends of b assign the same weight.
        let objective = (0..self.n()).all(|b| {
            let mut incoming = self.out[b].iter().map(|&(a, _)| self.weight(a, b));
            match incoming.next() {
                None => true,
                Some(first) => incoming.all(|w| w == first),
            }
        });
        UtilityClass {
            binary,
            symmetric,
            objective,
        }
    }
}

/// Monotone set-valuation contract: `S ⊆ T` implies `value(a, S) <= value(a, T)`
/// and `value(a, ∅) = 0`. Restricted to singletons the additive adapter agrees
/// with the profile.
pub trait MonotoneValuation {
    /// Value agent `a` assigns to the set; the set need not be sorted.
    fn value(&self, a: AgentId, set: &[AgentId]) -> u64;

    /// The additive fast path, when this oracle is just an adapter over an
    /// additive profile.
    fn as_additive(&self) -> Option<&UtilityProfile> {
        None
    }
}

/// Adapter exposing an additive profile through the monotone contract.
pub struct AdditiveValuation<'a>(pub &'a UtilityProfile);

impl MonotoneValuation for AdditiveValuation<'_> {
    fn value(&self, a: AgentId, set: &[AgentId]) -> u64 {
        self.0.utility_of_set(a, set)
    }

    fn as_additive(&self) -> Option<&UtilityProfile> {
        Some(self.0)
    }
}
