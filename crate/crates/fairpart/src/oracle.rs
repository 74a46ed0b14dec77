//! Ground-truth brute force: enumerate every partition matching a size
//! vector (quotienting part-label symmetry among equal sizes), decide
//! fairness existence, and scan all six notions. Intentionally the slow
//! reference everything else is tested against.

use crate::audit::{check_partition, FairnessNotion, ShareTable};
use crate::error::{Error, Result};
use crate::graph::AgentId;
use crate::instance::Instance;
use crate::partition::{Partition, SizeVector};
use std::ops::ControlFlow;

/// Default enumeration cap; override with a flag or FAIRPART_ORACLE_LIMIT.
pub const DEFAULT_ORACLE_LIMIT: usize = 12;

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub found: Option<Partition>,
    /// Number of partitions the search actually visited.
    pub enumerated: u64,
}

/// Visits each set-partition into labeled-size groups exactly once up to
/// part-label symmetry among equal-size parts. Canonical representative:
/// among parts of equal size, minima increase left to right. Parts follow
/// the (non-increasing) size vector order.
pub fn visit_partitions<F>(n: usize, sv: &SizeVector, visitor: &mut F)
where
    F: FnMut(&Partition) -> ControlFlow<()>,
{
    debug_assert_eq!(sv.total(), n);
    let agents: Vec<AgentId> = (0..n).collect();
    let mut part_of = vec![0usize; n];
    let _ = fill_part(&agents, 0, None, sv, &mut part_of, visitor);
}

fn fill_part<F>(
    remaining: &[AgentId],
    part: usize,
    prev_min: Option<AgentId>,
    sv: &SizeVector,
    part_of: &mut [usize],
    visitor: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&Partition) -> ControlFlow<()>,
{
    let k = sv.k();
    if part == k {
        debug_assert!(remaining.is_empty());
        let p = Partition::new(part_of.to_vec(), k).expect("enumeration yields valid partitions");
        return visitor(&p);
    }
    let size = sv.sizes()[part];
    // Same size as the previous part: this part's minimum must exceed the
    // previous part's minimum, so agents at or below it are off limits here.
    let pool: Vec<AgentId> = match prev_min {
        Some(m) if part > 0 && sv.sizes()[part - 1] == size => {
            remaining.iter().copied().filter(|&a| a > m).collect()
        }
        _ => remaining.to_vec(),
    };
    if pool.len() < size {
        return ControlFlow::Continue(());
    }
    let mut chosen = Vec::with_capacity(size);
    choose_subset(&pool, remaining, size, 0, &mut chosen, part, sv, part_of, visitor)
}

#[allow(clippy::too_many_arguments)]
fn choose_subset<F>(
    pool: &[AgentId],
    remaining: &[AgentId],
    size: usize,
    start: usize,
    chosen: &mut Vec<AgentId>,
    part: usize,
    sv: &SizeVector,
    part_of: &mut [usize],
    visitor: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&Partition) -> ControlFlow<()>,
{
    if chosen.len() == size {
        for &a in chosen.iter() {
            part_of[a] = part;
        }
        let next_remaining: Vec<AgentId> = remaining
            .iter()
            .copied()
            .filter(|a| !chosen.contains(a))
            .collect();
        return fill_part(&next_remaining, part + 1, Some(chosen[0]), sv, part_of, visitor);
    }
    let need = size - chosen.len();
    let mut i = start;
    while pool.len() - i >= need {
        chosen.push(pool[i]);
        choose_subset(pool, remaining, size, i + 1, chosen, part, sv, part_of, visitor)?;
        chosen.pop();
        i += 1;
    }
    ControlFlow::Continue(())
}

/// Materializes the stream, guarded by the enumeration limit.
pub fn enumerate_partitions(n: usize, sv: &SizeVector, limit: usize) -> Result<Vec<Partition>> {
    check_limit(n, limit)?;
    sv.check_n(n)?;
    let mut out = Vec::new();
    visit_partitions(n, sv, &mut |p| {
        out.push(p.clone());
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Expected stream length: n! / (Π sizes!) / (Π multiplicity-of-each-size!).
pub fn partition_count(n: usize, sv: &SizeVector) -> u128 {
    let mut count: u128 = 1;
    // Multinomial coefficient built incrementally.
    let mut left = n;
    for &s in sv.sizes() {
        count *= binomial(left, s);
        left -= s;
    }
    let mut mult: u128 = 1;
    let mut run = 1u128;
    for w in sv.sizes().windows(2) {
        if w[0] == w[1] {
            run += 1;
            mult *= run;
        } else {
            run = 1;
        }
    }
    count / mult
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::TooLarge(format!(
            "oracle enumeration is capped at {limit} agents (n = {n})"
        )));
    }
    Ok(())
}

fn shares_for(inst: &Instance, notion: FairnessNotion, limit: usize) -> Result<ShareTable> {
    if notion == FairnessNotion::Mms {
        ShareTable::with_exact_mms(&inst.graph, &inst.profile, inst.k, &inst.sizes, limit)
    } else {
        Ok(ShareTable::prop_only(&inst.profile, inst.k))
    }
}

/// Sequential search: the first canonical partition passing the audit.
pub fn exists_fair_seq(
    inst: &Instance,
    notion: FairnessNotion,
    limit: usize,
) -> Result<OracleOutcome> {
    check_limit(inst.n(), limit)?;
    inst.sizes.check_n(inst.n())?;
    let shares = shares_for(inst, notion, limit)?;
    let mut found = None;
    let mut enumerated = 0u64;
    visit_partitions(inst.n(), &inst.sizes, &mut |p| {
        enumerated += 1;
        let rep = check_partition(&inst.graph, &inst.profile, p, notion, &shares)
            .expect("shares are prepared");
        if rep.pass() {
            found = Some(p.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(OracleOutcome { found, enumerated })
}

/// Parallel search sharded by the first part's contents. The result is the
/// canonically smallest witness, so it agrees with the sequential order.
#[cfg(feature = "parallel")]
pub fn exists_fair_par(
    inst: &Instance,
    notion: FairnessNotion,
    limit: usize,
) -> Result<OracleOutcome> {
    use rayon::prelude::*;
    use std::sync::atomic::{AtomicU64, Ordering};

    check_limit(inst.n(), limit)?;
    inst.sizes.check_n(inst.n())?;
    let n = inst.n();
    let sv = &inst.sizes;
    let shares = shares_for(inst, notion, limit)?;

    // Materialize the first part's candidate subsets; each is an independent
    // branch of the canonical enumeration.
    let first_size = sv.sizes()[0];
    let agents: Vec<AgentId> = (0..n).collect();
    let mut branches: Vec<Vec<AgentId>> = Vec::new();
    let mut chosen = Vec::new();
    collect_subsets(&agents, first_size, 0, &mut chosen, &mut branches);

    let enumerated = AtomicU64::new(0);
    let hit = branches
        .par_iter()
        .enumerate()
        .filter_map(|(ord, first)| {
            let mut part_of = vec![0usize; n];
            for &a in first {
                part_of[a] = 0;
            }
            let rest: Vec<AgentId> = agents
                .iter()
                .copied()
                .filter(|a| !first.contains(a))
                .collect();
            let mut local: Option<Partition> = None;
            let mut count = 0u64;
            let _ = fill_part(&rest, 1, Some(first[0]), sv, &mut part_of, &mut |p| {
                count += 1;
                let rep = check_partition(&inst.graph, &inst.profile, p, notion, &shares)
                    .expect("shares are prepared");
                if rep.pass() {
                    local = Some(p.clone());
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            enumerated.fetch_add(count, Ordering::Relaxed);
            local.map(|p| (ord, p))
        })
        .min_by_key(|(ord, _)| *ord);

    Ok(OracleOutcome {
        found: hit.map(|(_, p)| p),
        enumerated: enumerated.load(Ordering::Relaxed),
    })
}

#[cfg(feature = "parallel")]
fn collect_subsets(
    pool: &[AgentId],
    size: usize,
    start: usize,
    chosen: &mut Vec<AgentId>,
    out: &mut Vec<Vec<AgentId>>,
) {
    if chosen.len() == size {
        out.push(chosen.clone());
        return;
    }
    let need = size - chosen.len();
    let mut i = start;
    while pool.len() - i >= need {
        chosen.push(pool[i]);
        collect_subsets(pool, size, i + 1, chosen, out);
        chosen.pop();
        i += 1;
    }
}

/// Decides fair existence, using every core when the `parallel` feature is
/// enabled.
pub fn exists_fair(inst: &Instance, notion: FairnessNotion, limit: usize) -> Result<OracleOutcome> {
    #[cfg(feature = "parallel")]
    {
        exists_fair_par(inst, notion, limit)
    }
    #[cfg(not(feature = "parallel"))]
    {
        exists_fair_seq(inst, notion, limit)
    }
}

/// Existence answers for all six notions.
#[derive(Debug, Clone)]
pub struct TaxonomyScan {
    pub exists: Vec<(FairnessNotion, Option<Partition>)>,
}

impl TaxonomyScan {
    pub fn found(&self, notion: FairnessNotion) -> bool {
        self.exists
            .iter()
            .find(|(nt, _)| *nt == notion)
            .map(|(_, p)| p.is_some())
            .unwrap_or(false)
    }
}

pub fn taxonomy_scan(inst: &Instance, limit: usize) -> Result<TaxonomyScan> {
    let exists = FairnessNotion::ALL
        .iter()
        .map(|&nt| Ok((nt, exists_fair(inst, nt, limit)?.found)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TaxonomyScan { exists })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FriendshipGraph;

    #[test]
    fn enumeration_counts() {
        let cases = [
            (3, vec![2, 1], 3u128),
            (4, vec![2, 2], 3),
            (5, vec![3, 2], 10),
            (6, vec![2, 2, 2], 15),
            (7, vec![3, 2, 2], 105),
            (6, vec![3, 3], 10),
        ];
        for (n, sizes, want) in cases {
            let sv = SizeVector::new(sizes).unwrap();
            let got = enumerate_partitions(n, &sv, 12).unwrap();
            assert_eq!(got.len() as u128, want, "n={n} sv={:?}", sv.sizes());
            assert_eq!(partition_count(n, &sv), want);
        }
    }

    #[test]
    fn no_duplicates_up_to_labels() {
        use std::collections::HashSet;
        for (n, sizes) in [(6, vec![2, 2, 2]), (7, vec![3, 2, 2]), (6, vec![3, 3])] {
            let sv = SizeVector::new(sizes).unwrap();
            let all = enumerate_partitions(n, &sv, 12).unwrap();
            let canon: HashSet<Vec<Vec<AgentId>>> =
                all.iter().map(|p| p.canonical_parts()).collect();
            assert_eq!(canon.len(), all.len());
            for p in &all {
                crate::partition::validate_partition(p, &sv).unwrap();
            }
        }
    }

    #[test]
    fn path3_counterexamples() {
        let g = FriendshipGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let inst = Instance::binary(g, 2).unwrap();
        assert!(exists_fair(&inst, FairnessNotion::Ef, 12).unwrap().found.is_none());
        assert!(exists_fair(&inst, FairnessNotion::Prop, 12).unwrap().found.is_none());
        assert!(exists_fair(&inst, FairnessNotion::Efx0, 12).unwrap().found.is_some());
    }

    #[test]
    fn limit_is_enforced() {
        let g = FriendshipGraph::edgeless(13);
        let inst = Instance::binary(g, 2).unwrap();
        assert!(matches!(
            exists_fair(&inst, FairnessNotion::Ef, 12),
            Err(Error::TooLarge(_))
        ));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_agrees_with_sequential() {
        let g = FriendshipGraph::new(7, vec![(0, 2), (0, 3), (0, 4), (1, 3), (1, 4)]).unwrap();
        let inst = Instance::binary(g, 3).unwrap();
        for notion in FairnessNotion::ALL {
            let s = exists_fair_seq(&inst, notion, 12).unwrap();
            let p = exists_fair_par(&inst, notion, 12).unwrap();
            assert_eq!(s.found, p.found, "{notion}");
        }
    }
}
