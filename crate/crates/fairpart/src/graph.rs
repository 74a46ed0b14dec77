//! The friendship graph: an undirected simple graph over densely indexed agents.

use crate::error::{Error, Result};

/// Agents are indexed densely in `[0, n)`.
pub type AgentId = usize;

/// Undirected simple graph over `n` agents. Edges are the only carriers of
/// positive utility anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriendshipGraph {
    n: usize,
    adj: Vec<Vec<AgentId>>,
    edges: Vec<(AgentId, AgentId)>,
}

impl FriendshipGraph {
    /// Builds a graph, rejecting self-loops, duplicate edges, and endpoints
    /// outside `[0, n)`.
    pub fn new(n: usize, mut edges: Vec<(AgentId, AgentId)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("agent count must be at least 1".into()));
        }
        for e in edges.iter_mut() {
            if e.0 == e.1 {
                return Err(Error::InvalidInstance(format!("self-loop at agent {}", e.0)));
            }
            if e.0 >= n || e.1 >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({}, {}) has an endpoint outside [0, {n})",
                    e.0, e.1
                )));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            let d = edges.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
            return Err(Error::InvalidInstance(format!("duplicate edge ({}, {})", d.0, d.1)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        Ok(Self { n, adj, edges })
    }

    pub fn edgeless(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("edgeless graph is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(AgentId, AgentId)] {
        &self.edges
    }

    pub fn friends(&self, a: AgentId) -> &[AgentId] {
        &self.adj[a]
    }

    pub fn degree(&self, a: AgentId) -> usize {
        self.adj[a].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|a| self.degree(a)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: AgentId, b: AgentId) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Connected components as sorted agent lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<AgentId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &w in self.friends(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A forest has no cycles: every component spans exactly |comp| - 1 edges.
    pub fn is_forest(&self) -> bool {
        let comp_count = self.components().len();
        self.edges.len() + comp_count == self.n
    }

    /// A path: connected, max degree <= 2, and exactly two degree-1 endpoints
    /// (a single agent also counts).
    pub fn is_path(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        if self.components().len() != 1 || self.max_degree() > 2 {
            return false;
        }
        (0..self.n).filter(|&a| self.degree(a) == 1).count() == 2
    }

    /// Agents of a path in traversal order, starting from the smaller
    /// degree-1 endpoint. Errors when the graph is not a path.
    pub fn path_order(&self) -> Result<Vec<AgentId>> {
        if !self.is_path() {
            return Err(Error::NotPath);
        }
        if self.n == 1 {
            return Ok(vec![0]);
        }
        let start = (0..self.n).find(|&a| self.degree(a) == 1).unwrap();
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = self.friends(start)[0];
        while order.len() < self.n {
            order.push(cur);
            let next = self.friends(cur).iter().copied().find(|&x| x != prev);
            match next {
                Some(nx) => {
                    prev = cur;
                    cur = nx;
                }
                None => break,
            }
        }
        Ok(order)
    }
}
