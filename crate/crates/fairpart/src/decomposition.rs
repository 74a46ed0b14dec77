//! Nice tree decompositions: the rooted, empty-leaf/empty-root form with
//! introduce, forget, and join nodes that drives the dynamic program.

use crate::error::{Error, Result};
use crate::graph::{AgentId, FriendshipGraph};
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(AgentId),
    Forget(AgentId),
    Join,
}

#[derive(Debug, Clone)]
pub struct TdNode {
    pub kind: NodeKind,
    pub parent: Option<usize>,
    /// Bag contents, sorted ascending.
    pub bag: Vec<AgentId>,
}

#[derive(Debug, Clone)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<TdNode>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|x| x.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn children(&self, x: usize) -> Vec<usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, nd)| nd.parent == Some(x))
            .map(|(i, _)| i)
            .collect()
    }

    /// Post-order traversal from the root (children before parents).
    pub fn post_order(&self) -> Vec<usize> {
        let mut children = vec![Vec::new(); self.nodes.len()];
        for (i, nd) in self.nodes.iter().enumerate() {
            if let Some(p) = nd.parent {
                children[p].push(i);
            }
        }
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                order.push(x);
            } else {
                stack.push((x, true));
                for &c in children[x].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        order
    }
}

/// Verifies every decomposition invariant against the graph, naming the
/// violated clause: vertex cover, edge cover, connected occurrence subtrees,
/// empty root and leaf bags, and the per-kind shape constraints.
pub fn verify_decomposition(graph: &FriendshipGraph, td: &NiceTreeDecomposition) -> Result<()> {
    let n = graph.n();
    let m = td.nodes.len();
    if m == 0 {
        return Err(Error::InvalidDecomposition("no nodes".into()));
    }
    if td.root >= m {
        return Err(Error::InvalidDecomposition("root index out of range".into()));
    }
    if td.nodes[td.root].parent.is_some() {
        return Err(Error::InvalidDecomposition("root must have no parent".into()));
    }
    let mut children = vec![Vec::new(); m];
    for (i, nd) in td.nodes.iter().enumerate() {
        if i != td.root && nd.parent.is_none() {
            return Err(Error::InvalidDecomposition(format!(
                "node {i} has no parent but is not the root"
            )));
        }
        if let Some(p) = nd.parent {
            if p >= m {
                return Err(Error::InvalidDecomposition(format!(
                    "node {i} has out-of-range parent {p}"
                )));
            }
            children[p].push(i);
        }
        if nd.bag.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDecomposition(format!(
                "bag of node {i} is not sorted or has duplicates"
            )));
        }
        if nd.bag.iter().any(|&a| a >= n) {
            return Err(Error::InvalidDecomposition(format!(
                "bag of node {i} mentions an unknown agent"
            )));
        }
    }
    // Tree shape: every node reaches the root, no cycles.
    let order = td.post_order();
    if order.len() != m {
        return Err(Error::InvalidDecomposition(
            "nodes do not form a single tree under the root".into(),
        ));
    }

    // Root and leaf bags must be empty; per-kind shape constraints.
    if !td.nodes[td.root].bag.is_empty() {
        return Err(Error::InvalidDecomposition("root bag must be empty".into()));
    }
    for (i, nd) in td.nodes.iter().enumerate() {
        let ch = &children[i];
        match nd.kind {
            NodeKind::Leaf => {
                if !ch.is_empty() {
                    return Err(Error::InvalidDecomposition(format!(
                        "leaf node {i} has children"
                    )));
                }
                if !nd.bag.is_empty() {
                    return Err(Error::InvalidDecomposition(format!(
                        "leaf node {i} has a nonempty bag"
                    )));
                }
            }
            NodeKind::Introduce(a) => {
                if ch.len() != 1 {
                    return Err(Error::InvalidDecomposition(format!(
                        "introduce node {i} must have exactly one child"
                    )));
                }
                let cb = &td.nodes[ch[0]].bag;
                if cb.binary_search(&a).is_ok() || nd.bag.binary_search(&a).is_err() {
                    return Err(Error::InvalidDecomposition(format!(
                        "introduce node {i}: agent {a} must join the bag"
                    )));
                }
                let mut expect = cb.clone();
                expect.push(a);
                expect.sort_unstable();
                if expect != nd.bag {
                    return Err(Error::InvalidDecomposition(format!(
                        "introduce node {i}: bag is not child bag plus {a}"
                    )));
                }
            }
            NodeKind::Forget(a) => {
                if ch.len() != 1 {
                    return Err(Error::InvalidDecomposition(format!(
                        "forget node {i} must have exactly one child"
                    )));
                }
                let cb = &td.nodes[ch[0]].bag;
                if cb.binary_search(&a).is_err() || nd.bag.binary_search(&a).is_ok() {
                    return Err(Error::InvalidDecomposition(format!(
                        "forget node {i}: agent {a} must leave the bag"
                    )));
                }
                let expect: Vec<_> = cb.iter().copied().filter(|&x| x != a).collect();
                if expect != nd.bag {
                    return Err(Error::InvalidDecomposition(format!(
                        "forget node {i}: bag is not child bag minus {a}"
                    )));
                }
            }
            NodeKind::Join => {
                if ch.len() != 2 {
                    return Err(Error::InvalidDecomposition(format!(
                        "join node {i} must have exactly two children"
                    )));
                }
                if td.nodes[ch[0]].bag != nd.bag || td.nodes[ch[1]].bag != nd.bag {
                    return Err(Error::InvalidDecomposition(format!(
                        "join node {i}: both children must repeat the bag"
                    )));
                }
            }
        }
    }

    // Every agent occurs in at least one bag; every edge is covered.
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, nd) in td.nodes.iter().enumerate() {
        for &a in &nd.bag {
            occurs[a].push(i);
        }
    }
    if let Some(a) = (0..n).find(|&a| occurs[a].is_empty()) {
        return Err(Error::InvalidDecomposition(format!(
            "agent {a} appears in no bag"
        )));
    }
    for &(a, b) in graph.edges() {
        let covered = td
            .nodes
            .iter()
            .any(|nd| nd.bag.binary_search(&a).is_ok() && nd.bag.binary_search(&b).is_ok());
        if !covered {
            return Err(Error::InvalidDecomposition(format!(
                "edge ({a}, {b}) shares no bag"
            )));
        }
    }

    // Connectivity: the nodes holding each agent form a connected subtree.
    for a in 0..n {
        let set: HashSet<usize> = occurs[a].iter().copied().collect();
        let start = occurs[a][0];
        let mut seen = HashSet::new();
        seen.insert(start);
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            let mut nbrs = children[x].clone();
            if let Some(p) = td.nodes[x].parent {
                nbrs.push(p);
            }
            for y in nbrs {
                if set.contains(&y) && seen.insert(y) {
                    queue.push(y);
                }
            }
        }
        if seen.len() != set.len() {
            return Err(Error::InvalidDecomposition(format!(
                "occurrences of agent {a} are not connected"
            )));
        }
    }
    Ok(())
}
