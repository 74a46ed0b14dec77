//! Closed-form and linear-time decision procedures for degenerate classes:
//! more parts than the maximum degree, vertex cover number one, and binary
//! paths.

use crate::audit::FairnessNotion;
use crate::error::{Error, Result};
use crate::graph::AgentId;
use crate::instance::Instance;
use crate::partition::Partition;

/// When `k > Δ`, every agent's MMS share is zero, so any size-respecting
/// partition is MMS. Canonical choice: agents in id order filled part by
/// part.
pub fn mms_when_parts_exceed_degree(inst: &Instance) -> Result<Partition> {
    if inst.k <= inst.graph.max_degree() {
        return Err(Error::NotApplicable(format!(
            "k = {} does not exceed the maximum degree {}",
            inst.k,
            inst.graph.max_degree()
        )));
    }
    Ok(id_order_partition(inst, &(0..inst.n()).collect::<Vec<_>>()))
}

fn id_order_partition(inst: &Instance, order: &[AgentId]) -> Partition {
    let mut part_of = vec![0usize; inst.n()];
    let mut idx = 0;
    for (i, &s) in inst.sizes.sizes().iter().enumerate() {
        for _ in 0..s {
            part_of[order[idx]] = i;
            idx += 1;
        }
    }
    Partition::new(part_of, inst.k).expect("sizes cover all agents")
}

/// Star detection for vertex cover number one: at least one edge, and a
/// single agent covering all of them. Returns (center, leaves, isolated).
fn star_shape(inst: &Instance) -> Option<(AgentId, Vec<AgentId>, Vec<AgentId>)> {
    let g = &inst.graph;
    if g.edges().is_empty() {
        return None;
    }
    let (u, v) = g.edges()[0];
    let center = [u, v]
        .into_iter()
        .find(|&c| g.edges().iter().all(|&(a, b)| a == c || b == c))?;
    let leaves = g.friends(center).to_vec();
    let isolated = (0..g.n())
        .filter(|&a| a != center && g.degree(a) == 0)
        .collect();
    Some((center, leaves, isolated))
}

/// Decision procedure for vertex cover number 1 (a star plus isolated
/// agents).
///
/// EFX, EF1, and MMS partitions always exist: the center takes the most
/// valuable leaves its (largest) part can hold. EF, EFX0, and PROP exist
/// exactly when all leaves fit into the center's part; for EF and EFX0 the
/// rule is only applied when every part has size at least 3, and smaller
/// instances are refused so the caller can fall back to the oracle.
pub fn vc1_decide(inst: &Instance, notion: FairnessNotion) -> Result<Option<Partition>> {
    let (center, leaves, isolated) = star_shape(inst)
        .ok_or_else(|| Error::NotApplicable("vertex cover number is not 1".into()))?;
    let k = inst.k;
    let sizes = inst.sizes.sizes();
    if k == 1 {
        return Ok(Some(id_order_partition(inst, &(0..inst.n()).collect::<Vec<_>>())));
    }
    match notion {
        FairnessNotion::Efx | FairnessNotion::Ef1 | FairnessNotion::Mms => {
            // Center plus its (size-1) most valuable leaves, topped up with
            // isolated agents; everything else in ascending id order.
            let want = sizes[0] - 1;
            let mut ranked: Vec<AgentId> = leaves.clone();
            ranked.sort_by(|&x, &y| {
                inst.profile
                    .weight(center, y)
                    .cmp(&inst.profile.weight(center, x))
                    .then(x.cmp(&y))
            });
            let mut first: Vec<AgentId> = vec![center];
            let mut rest: Vec<AgentId> = Vec::new();
            for (i, &l) in ranked.iter().enumerate() {
                if i < want {
                    first.push(l);
                } else {
                    rest.push(l);
                }
            }
            let mut iso = isolated.clone();
            while first.len() < sizes[0] {
                first.push(iso.pop().expect("enough agents to fill the first part"));
            }
            rest.extend(iso);
            rest.sort_unstable();
            let order: Vec<AgentId> = first.into_iter().chain(rest).collect();
            Ok(Some(id_order_partition(inst, &order)))
        }
        FairnessNotion::Ef | FairnessNotion::Efx0 | FairnessNotion::Prop => {
            if matches!(notion, FairnessNotion::Ef | FairnessNotion::Efx0)
                && inst.sizes.min() < 3
            {
                return Err(Error::NotApplicable(
                    "EF/EFX0 decision on vc-1 graphs assumes every part size >= 3".into(),
                ));
            }
            if leaves.len() <= sizes[0] - 1 {
                // All leaves join the center.
                let mut first: Vec<AgentId> = vec![center];
                first.extend(leaves.iter().copied());
                let mut iso = isolated.clone();
                iso.sort_unstable();
                let mut iso_iter = iso.into_iter();
                while first.len() < sizes[0] {
                    first.push(iso_iter.next().expect("enough isolated agents"));
                }
                let order: Vec<AgentId> = first.into_iter().chain(iso_iter).collect();
                Ok(Some(id_order_partition(inst, &order)))
            } else {
                Ok(None)
            }
        }
    }
}

/// Linear-time decision on binary paths for EF, PROP, and EFX0, per the
/// contiguous-blocks argument. Balanced sizes only.
pub fn binary_path_decide(inst: &Instance, notion: FairnessNotion) -> Result<Option<Partition>> {
    if !inst.profile.classify().binary {
        return Err(Error::NotBinary);
    }
    if !inst.sizes.is_balanced() {
        return Err(Error::NotBalanced);
    }
    if !matches!(
        notion,
        FairnessNotion::Ef | FairnessNotion::Prop | FairnessNotion::Efx0
    ) {
        return Err(Error::NotApplicable(format!(
            "binary-path decision covers EF, PROP, and EFX0 only (asked for {notion})"
        )));
    }
    let order = inst.graph.path_order()?;
    let contiguous = || id_order_partition(inst, &order);
    let n = inst.n();
    let k = inst.k;
    let min = inst.sizes.min();
    match notion {
        FairnessNotion::Prop => {
            if n >= 2 && min == 1 {
                Ok(None)
            } else {
                Ok(Some(contiguous()))
            }
        }
        FairnessNotion::Ef => {
            if k == n || min >= 2 {
                Ok(Some(contiguous()))
            } else {
                Ok(None)
            }
        }
        FairnessNotion::Efx0 => Ok(Some(contiguous())),
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::{check_partition, ShareTable};
    use crate::graph::FriendshipGraph;
    use crate::partition::validate_partition;

    fn star(leaves: usize) -> FriendshipGraph {
        FriendshipGraph::new(leaves + 1, (1..=leaves).map(|l| (0, l)).collect()).unwrap()
    }

    fn path(n: usize) -> FriendshipGraph {
        FriendshipGraph::new(n, (0..n - 1).map(|i| (i, i + 1)).collect()).unwrap()
    }

    #[test]
    fn parts_exceed_degree_gives_mms() {
        // Star with k leaves and k parts: every MMS share is 0.
        let k = 3;
        let inst = Instance::binary(star(k), k).unwrap();
        let p = mms_when_parts_exceed_degree(&inst).unwrap();
        validate_partition(&p, &inst.sizes).unwrap();
        let shares =
            ShareTable::with_exact_mms(&inst.graph, &inst.profile, k, &inst.sizes, 12).unwrap();
        assert!(check_partition(&inst.graph, &inst.profile, &p, FairnessNotion::Mms, &shares)
            .unwrap()
            .pass());

        let inst = Instance::binary(path(3), 2).unwrap();
        assert!(matches!(
            mms_when_parts_exceed_degree(&inst),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn vc1_star_with_k_leaves_has_no_prop() {
        for k in 2..=4 {
            let inst = Instance::binary(star(k), k).unwrap();
            assert!(vc1_decide(&inst, FairnessNotion::Prop).unwrap().is_none());
        }
    }

    #[test]
    fn vc1_weighted_star_ef1_takes_most_valuable_leaves() {
        let g = star(4);
        let mut w = Vec::new();
        for leaf in 1..5 {
            w.push((0, leaf, leaf as u64));
            w.push((leaf, 0, leaf as u64));
        }
        let profile = crate::utility::UtilityProfile::from_directed_weights(&g, &w).unwrap();
        let inst = Instance::new(g, profile, 2, None, None).unwrap();
        let p = vc1_decide(&inst, FairnessNotion::Ef1).unwrap().unwrap();
        // Center's part is {center, leaf 4, leaf 3}.
        let parts = p.parts();
        assert_eq!(parts[p.part_of(0)], vec![0, 3, 4]);
        let shares =
            ShareTable::with_exact_mms(&inst.graph, &inst.profile, 2, &inst.sizes, 12).unwrap();
        for notion in [FairnessNotion::Ef1, FairnessNotion::Efx, FairnessNotion::Mms] {
            assert!(check_partition(&inst.graph, &inst.profile, &p, notion, &shares)
                .unwrap()
                .pass());
        }
    }

    #[test]
    fn vc1_refuses_small_parts_for_ef() {
        let inst = Instance::binary(star(3), 2).unwrap();
        assert!(matches!(
            vc1_decide(&inst, FairnessNotion::Ef),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn vc1_ef_found_when_leaves_fit() {
        // Star with 2 leaves plus 3 isolated agents, k = 2, sizes (3, 3).
        let g = FriendshipGraph::new(6, vec![(0, 1), (0, 2)]).unwrap();
        let inst = Instance::binary(g, 2).unwrap();
        let p = vc1_decide(&inst, FairnessNotion::Ef).unwrap().unwrap();
        validate_partition(&p, &inst.sizes).unwrap();
        let shares = ShareTable::prop_only(&inst.profile, 2);
        assert!(check_partition(&inst.graph, &inst.profile, &p, FairnessNotion::Ef, &shares)
            .unwrap()
            .pass());
    }

    #[test]
    fn binary_path_small_cases() {
        // n=6, k=3: EF found with contiguous pairs.
        let inst = Instance::binary(path(6), 3).unwrap();
        let p = binary_path_decide(&inst, FairnessNotion::Ef).unwrap().unwrap();
        validate_partition(&p, &inst.sizes).unwrap();
        let shares = ShareTable::prop_only(&inst.profile, 3);
        assert!(check_partition(&inst.graph, &inst.profile, &p, FairnessNotion::Ef, &shares)
            .unwrap()
            .pass());

        // n=3, k=2: EF none, PROP none, EFX0 found.
        let inst = Instance::binary(path(3), 2).unwrap();
        assert!(binary_path_decide(&inst, FairnessNotion::Ef).unwrap().is_none());
        assert!(binary_path_decide(&inst, FairnessNotion::Prop).unwrap().is_none());
        assert!(binary_path_decide(&inst, FairnessNotion::Efx0).unwrap().is_some());

        // n=4, k=4: EF found with singletons.
        let inst = Instance::binary(path(4), 4).unwrap();
        assert!(binary_path_decide(&inst, FairnessNotion::Ef).unwrap().is_some());
    }
}
