//! MMS + EFX (hence EF1) construction on forests for monotone utilities.
//!
//! Roots are processed first, then the remaining agents in BFS order: each
//! agent receives an assignment vector for its children from the budget
//! vector, keeps its best child subset, and may swap itself into its
//! parent's part when that strictly improves its utility. Linear time on
//! the additive path.

use crate::error::{Error, Result};
use crate::graph::{AgentId, FriendshipGraph};
use crate::partition::{Partition, SizeVector};
use crate::utility::MonotoneValuation;

/// Remaining per-part capacities. Picking always returns a maximum-budget
/// part; ties rotate cyclically after the previously picked index, which on
/// a sorted balanced vector reproduces the moving-pointer device.
#[derive(Debug, Clone)]
pub struct BudgetVector {
    b: Vec<usize>,
    last: usize,
}

impl BudgetVector {
    pub fn new(sv: &SizeVector) -> Self {
        let b = sv.sizes().to_vec();
        let last = b.len() - 1;
        Self { b, last }
    }

    pub fn remaining(&self) -> &[usize] {
        &self.b
    }

    pub fn spread(&self) -> usize {
        let max = *self.b.iter().max().unwrap();
        let min = *self.b.iter().min().unwrap();
        max - min
    }

    pub fn all_zero(&self) -> bool {
        self.b.iter().all(|&x| x == 0)
    }

    /// Takes one unit from a maximum-budget part and returns its index.
    pub fn pick_max(&mut self) -> usize {
        let k = self.b.len();
        let max = *self.b.iter().max().unwrap();
        debug_assert!(max > 0, "budget exhausted");
        let mut idx = (self.last + 1) % k;
        while self.b[idx] != max {
            idx = (idx + 1) % k;
        }
        self.b[idx] -= 1;
        self.last = idx;
        idx
    }
}

#[derive(Debug, Clone, Default)]
pub struct ForestStats {
    /// Worst max-min budget spread observed after processing an agent.
    pub max_budget_spread: usize,
    /// Agents that swapped into their parent's part.
    pub moves: usize,
}

#[derive(Debug)]
pub struct ForestSolveOutput {
    pub partition: Partition,
    pub stats: ForestStats,
}

/// Returns a size-`size` subset of `candidates` maximizing the oracle value
/// of `subset ∪ anchored`. Additive profiles take the top-weighted agents;
/// general monotone oracles search all subsets (capped at 20 candidates).
pub fn select_best_subset<V: MonotoneValuation>(
    a: AgentId,
    candidates: &[AgentId],
    size: usize,
    anchored: Option<AgentId>,
    oracle: &V,
) -> Result<Vec<AgentId>> {
    if size > candidates.len() {
        return Err(Error::InvalidParameter(format!(
            "requested subset of size {size} from {} candidates",
            candidates.len()
        )));
    }
    if size == 0 {
        return Ok(Vec::new());
    }
    if let Some(profile) = oracle.as_additive() {
        // The anchor contributes a constant, so top-weight selection wins.
        let mut ranked = candidates.to_vec();
        ranked.sort_by(|&x, &y| {
            profile
                .weight(a, y)
                .cmp(&profile.weight(a, x))
                .then(x.cmp(&y))
        });
        let mut best = ranked[..size].to_vec();
        best.sort_unstable();
        return Ok(best);
    }
    if candidates.len() > 20 {
        return Err(Error::TooLarge(format!(
            "exhaustive subset search over {} children; only the additive \
             adapter is accepted beyond 20",
            candidates.len()
        )));
    }
    let mut best: Option<(u64, Vec<AgentId>)> = None;
    let mut chosen: Vec<AgentId> = Vec::with_capacity(size + 1);
    fn rec<V: MonotoneValuation>(
        a: AgentId,
        candidates: &[AgentId],
        size: usize,
        start: usize,
        anchored: Option<AgentId>,
        oracle: &V,
        chosen: &mut Vec<AgentId>,
        best: &mut Option<(u64, Vec<AgentId>)>,
    ) {
        if chosen.len() == size {
            let mut probe = chosen.clone();
            if let Some(p) = anchored {
                probe.push(p);
            }
            let val = oracle.value(a, &probe);
            if best.as_ref().map_or(true, |(bv, _)| val > *bv) {
                *best = Some((val, chosen.clone()));
            }
            return;
        }
        let need = size - chosen.len();
        let mut i = start;
        while candidates.len() - i >= need {
            chosen.push(candidates[i]);
            rec(a, candidates, size, i + 1, anchored, oracle, chosen, best);
            chosen.pop();
            i += 1;
        }
    }
    rec(a, candidates, size, 0, anchored, oracle, &mut chosen, &mut best);
    Ok(best.expect("size <= candidates").1)
}

/// Constructs a partition of a forest that is MMS and EFX (hence EF1) for
/// the given monotone utilities, matching the size vector exactly.
pub fn solve_forest<V: MonotoneValuation>(
    graph: &FriendshipGraph,
    oracle: &V,
    k: usize,
    sv: &SizeVector,
) -> Result<ForestSolveOutput> {
    if !graph.is_forest() {
        return Err(Error::NotForest);
    }
    let n = graph.n();
    sv.check_n(n)?;
    if sv.k() != k {
        return Err(Error::InvalidParameter(format!(
            "size vector has {} parts, expected {k}",
            sv.k()
        )));
    }
    let balanced_start = sv.is_balanced();

    // Root each tree at its smallest agent; BFS gives the processing order
    // with parents placed before children and children listed ascending.
    let mut parent: Vec<Option<AgentId>> = vec![None; n];
    let mut children: Vec<Vec<AgentId>> = vec![Vec::new(); n];
    let mut order: Vec<AgentId> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in graph.friends(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    children[v].push(w);
                    queue.push_back(w);
                }
            }
        }
    }

    let mut budget = BudgetVector::new(sv);
    let mut part_of: Vec<Option<usize>> = vec![None; n];
    let mut stats = ForestStats::default();

    for &a in &order {
        if part_of[a].is_none() {
            // Roots take a maximum-budget part.
            part_of[a] = Some(budget.pick_max());
        }
        let kids = &children[a];
        if kids.is_empty() {
            continue;
        }
        // Assignment vector for the children.
        let mut quota = vec![0usize; k];
        for _ in 0..kids.len() {
            quota[budget.pick_max()] += 1;
        }
        let own = part_of[a].unwrap();
        let s_set = select_best_subset(a, kids, quota[own], None, oracle)?;
        let mut placed: Vec<AgentId>;
        let mut quotas_left = quota.clone();
        match parent[a] {
            Some(p) if part_of[p].unwrap() != own && quota[part_of[p].unwrap()] >= 1 => {
                let tgt = part_of[p].unwrap();
                let s_prime = select_best_subset(a, kids, quota[tgt] - 1, Some(p), oracle)?;
                let mut probe = s_prime.clone();
                probe.push(p);
                if oracle.value(a, &probe) > oracle.value(a, &s_set) {
                    // Move a into the parent's part: that part absorbs a plus
                    // S', and the vacated part takes one extra child.
                    stats.moves += 1;
                    part_of[a] = Some(tgt);
                    for &c in &s_prime {
                        part_of[c] = Some(tgt);
                    }
                    quotas_left[tgt] = 0;
                    quotas_left[own] = quota[own] + 1;
                    placed = s_prime;
                } else {
                    for &c in &s_set {
                        part_of[c] = Some(own);
                    }
                    quotas_left[own] = 0;
                    placed = s_set;
                }
            }
            _ => {
                for &c in &s_set {
                    part_of[c] = Some(own);
                }
                quotas_left[own] = 0;
                placed = s_set;
            }
        }
        // Remaining children in ascending id order, parts in index order.
        placed.sort_unstable();
        let mut fill = 0usize;
        for &c in kids {
            if placed.binary_search(&c).is_ok() {
                continue;
            }
            while quotas_left[fill] == 0 {
                fill += 1;
            }
            part_of[c] = Some(fill);
            quotas_left[fill] -= 1;
        }

        if balanced_start {
            let spread = budget.spread();
            stats.max_budget_spread = stats.max_budget_spread.max(spread);
            assert!(
                spread <= 1,
                "budget balance invariant violated: spread {spread}"
            );
        }
    }

    assert!(budget.all_zero(), "terminal budget must be the zero vector");
    let part_of: Vec<usize> = part_of
        .into_iter()
        .map(|p| p.expect("every agent assigned"))
        .collect();
    let partition = Partition::new(part_of, k)?;
    Ok(ForestSolveOutput { partition, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::{check_partition, FairnessNotion, ShareTable};
    use crate::instance::Instance;
    use crate::partition::validate_partition;
    use crate::utility::{AdditiveValuation, UtilityProfile};

    #[test]
    fn budget_pointer_walks_balanced_vector() {
        let sv = SizeVector::new(vec![3, 3, 2, 2]).unwrap();
        let mut b = BudgetVector::new(&sv);
        let picks: Vec<usize> = (0..10).map(|_| b.pick_max()).collect();
        assert_eq!(picks, vec![0, 1, 2, 3, 0, 1, 2, 3, 0, 1]);
        assert!(b.all_zero());
    }

    #[test]
    fn budget_pick_stays_max_first_on_general_sizes() {
        let sv = SizeVector::new(vec![5, 2, 1]).unwrap();
        let mut b = BudgetVector::new(&sv);
        for _ in 0..8 {
            let before = b.remaining().to_vec();
            let max = *before.iter().max().unwrap();
            let idx = b.pick_max();
            assert_eq!(before[idx], max);
        }
        assert!(b.all_zero());
    }

    #[test]
    fn top_subset_selection() {
        let g = FriendshipGraph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let w = vec![
            (0, 1, 3),
            (1, 0, 3),
            (0, 2, 1),
            (2, 0, 1),
            (0, 3, 4),
            (3, 0, 4),
            (0, 4, 1),
            (4, 0, 1),
        ];
        let p = UtilityProfile::from_directed_weights(&g, &w).unwrap();
        let v = AdditiveValuation(&p);
        let best = select_best_subset(0, &[1, 2, 3, 4], 2, None, &v).unwrap();
        assert_eq!(best, vec![1, 3]);
        assert_eq!(select_best_subset(0, &[1, 2], 0, None, &v).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn anchored_selection_includes_anchor_value() {
        // Anchor weight 10; picking size 1 from weights {2, 5} takes the 5.
        let g = FriendshipGraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let w = vec![
            (0, 1, 10),
            (1, 0, 10),
            (0, 2, 2),
            (2, 0, 2),
            (0, 3, 5),
            (3, 0, 5),
        ];
        let p = UtilityProfile::from_directed_weights(&g, &w).unwrap();
        let v = AdditiveValuation(&p);
        let best = select_best_subset(0, &[2, 3], 1, Some(1), &v).unwrap();
        assert_eq!(best, vec![3]);
        assert_eq!(p.utility_of_set(0, &[3, 1]), 15);
    }

    #[test]
    fn single_edge_two_singletons() {
        let g = FriendshipGraph::new(2, vec![(0, 1)]).unwrap();
        let inst = Instance::binary(g, 2).unwrap();
        let v = AdditiveValuation(&inst.profile);
        let out = solve_forest(&inst.graph, &v, 2, &inst.sizes).unwrap();
        validate_partition(&out.partition, &inst.sizes).unwrap();
        assert_ne!(out.partition.part_of(0), out.partition.part_of(1));
    }

    #[test]
    fn star_center_keeps_enough_leaves() {
        let g = FriendshipGraph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let inst = Instance::binary(g, 2).unwrap();
        let v = AdditiveValuation(&inst.profile);
        let out = solve_forest(&inst.graph, &v, 2, &inst.sizes).unwrap();
        validate_partition(&out.partition, &inst.sizes).unwrap();
        let p = &out.partition;
        let center_part = p.part_of(0);
        let with_center = (1..5).filter(|&l| p.part_of(l) == center_part).count();
        assert!(with_center >= 2, "center must keep at least its MMS share");
        let shares =
            ShareTable::with_exact_mms(&inst.graph, &inst.profile, 2, &inst.sizes, 12).unwrap();
        for notion in [FairnessNotion::Mms, FairnessNotion::Efx, FairnessNotion::Ef1] {
            assert!(check_partition(&inst.graph, &inst.profile, p, notion, &shares)
                .unwrap()
                .pass());
        }
    }

    #[test]
    fn path3_output_is_efx_and_mms() {
        let g = FriendshipGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let inst = Instance::binary(g, 2).unwrap();
        let v = AdditiveValuation(&inst.profile);
        let out = solve_forest(&inst.graph, &v, 2, &inst.sizes).unwrap();
        let shares =
            ShareTable::with_exact_mms(&inst.graph, &inst.profile, 2, &inst.sizes, 12).unwrap();
        for notion in [FairnessNotion::Mms, FairnessNotion::Efx] {
            assert!(check_partition(&inst.graph, &inst.profile, &out.partition, notion, &shares)
                .unwrap()
                .pass());
        }
    }

    #[test]
    fn cycle_is_rejected() {
        let g = FriendshipGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = Instance::binary(g, 2).unwrap();
        let v = AdditiveValuation(&inst.profile);
        assert!(matches!(
            solve_forest(&inst.graph, &v, 2, &inst.sizes),
            Err(Error::NotForest)
        ));
    }

    /// A monotone, non-additive test double: the value of a set is capped.
    struct CappedValuation<'a> {
        profile: &'a UtilityProfile,
        cap: u64,
    }

    impl MonotoneValuation for CappedValuation<'_> {
        fn value(&self, a: AgentId, set: &[AgentId]) -> u64 {
            self.profile.utility_of_set(a, set).min(self.cap)
        }
    }

    // Definition-level EFX check under an arbitrary set valuation.
    fn efx_under<V: MonotoneValuation>(
        g: &FriendshipGraph,
        oracle: &V,
        p: &Partition,
    ) -> bool {
        let parts = p.parts();
        for a in 0..g.n() {
            let own = oracle.value(a, &parts[p.part_of(a)]);
            for b in 0..g.n() {
                if b == a || p.part_of(b) == p.part_of(a) {
                    continue;
                }
                let rest: Vec<AgentId> = parts[p.part_of(b)]
                    .iter()
                    .copied()
                    .filter(|&x| x != b)
                    .collect();
                for &c in rest.iter().filter(|&&c| g.has_edge(a, c)) {
                    let sans: Vec<AgentId> =
                        rest.iter().copied().filter(|&x| x != c).collect();
                    if own < oracle.value(a, &sans) {
                        return false;
                    }
                }
            }
        }
        true
    }

    // Exact MMS share under an arbitrary set valuation, by enumerating all
    // partitions, independent of the solver.
    fn mms_ok_under<V: MonotoneValuation>(
        g: &FriendshipGraph,
        oracle: &V,
        sv: &SizeVector,
        p: &Partition,
    ) -> bool {
        use std::ops::ControlFlow;
        let parts = p.parts();
        (0..g.n()).all(|a| {
            let mut share = 0u64;
            crate::oracle::visit_partitions(g.n(), sv, &mut |q| {
                let worst = q
                    .parts()
                    .iter()
                    .map(|part| oracle.value(a, part))
                    .min()
                    .unwrap();
                share = share.max(worst);
                ControlFlow::Continue(())
            });
            oracle.value(a, &parts[p.part_of(a)]) >= share
        })
    }

    #[test]
    fn monotone_oracle_output_is_efx_and_mms_under_the_oracle() {
        let g = FriendshipGraph::new(6, vec![(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let inst = Instance::binary(g, 3).unwrap();
        let capped = CappedValuation {
            profile: &inst.profile,
            cap: 2,
        };
        let out = solve_forest(&inst.graph, &capped, 3, &inst.sizes).unwrap();
        validate_partition(&out.partition, &inst.sizes).unwrap();
        assert!(efx_under(&inst.graph, &capped, &out.partition));
        assert!(mms_ok_under(&inst.graph, &capped, &inst.sizes, &out.partition));
    }
}
