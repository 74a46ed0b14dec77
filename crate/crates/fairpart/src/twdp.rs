//! Exact existence decision for binary utilities by dynamic programming
//! over a nice tree decomposition.
//!
//! Each node stores the set of reachable signatures (P, f, c, s): the bag
//! assignment, promised future friends per (bag agent, part), forgotten
//! friends per (bag agent, part), and forgotten agents per part. Only true
//! entries are kept, and every entry carries a back-pointer for
//! reconstruction.

use crate::audit::{binary_fair_from_counts, binary_mms_share_for_sizes, FairnessNotion};
use crate::decomposition::{verify_decomposition, NiceTreeDecomposition, NodeKind, TdNode};
use crate::error::{Error, Result};
use crate::graph::{AgentId, FriendshipGraph};
use crate::instance::Instance;
use crate::partition::Partition;
use std::collections::BTreeMap;

/// DP table key. Vectors are aligned with the node's sorted bag; `f` and
/// `c` are row-major (bag agent, part).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DpSignature {
    pub p: Vec<u8>,
    pub f: Vec<u16>,
    pub c: Vec<u16>,
    pub s: Vec<u16>,
}

impl DpSignature {
    fn consistent(&self, bag_len: usize, k: usize) -> bool {
        self.p.len() == bag_len && self.f.len() == bag_len * k && self.c.len() == bag_len * k
    }
}

#[derive(Debug, Clone)]
enum Choice {
    Leaf,
    Introduce(DpSignature),
    Forget(DpSignature),
    Join(DpSignature, DpSignature),
}

#[derive(Debug, Clone)]
pub struct DpOptions {
    /// Abort when any node's live signature count exceeds this cap.
    pub signature_cap: usize,
}

impl Default for DpOptions {
    fn default() -> Self {
        Self {
            signature_cap: 5_000_000,
        }
    }
}

#[derive(Debug)]
pub struct DpRun {
    pub found: bool,
    /// Largest table observed at any single node.
    pub peak_signatures: usize,
    k: usize,
    n: usize,
    td: NiceTreeDecomposition,
    tables: Vec<BTreeMap<DpSignature, Choice>>,
    root_sig: DpSignature,
}

/// Builds a width-one nice tree decomposition of a forest with O(n) nodes:
/// per vertex an introduce chain over its children joined at bag {v}, and
/// per-tree tops merged under empty bags.
pub fn nice_decompose_forest(graph: &FriendshipGraph) -> Result<NiceTreeDecomposition> {
    if !graph.is_forest() {
        return Err(Error::NotForest);
    }
    let n = graph.n();
    let mut nodes: Vec<TdNode> = Vec::new();
    let mut push = |nodes: &mut Vec<TdNode>, kind: NodeKind, bag: Vec<AgentId>| -> usize {
        nodes.push(TdNode {
            kind,
            parent: None,
            bag,
        });
        nodes.len() - 1
    };
    fn link(nodes: &mut [TdNode], child: usize, parent: usize) {
        nodes[child].parent = Some(parent);
    }

    let mut tree_tops = Vec::new();
    for comp in graph.components() {
        let root = comp[0];
        // BFS rooted at the smallest agent of the component.
        let mut order = vec![root];
        let mut children: BTreeMap<AgentId, Vec<AgentId>> = BTreeMap::new();
        let mut seen: std::collections::HashSet<AgentId> = [root].into();
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in graph.friends(v) {
                if seen.insert(w) {
                    children.entry(v).or_default().push(w);
                    order.push(w);
                }
            }
        }
        let mut top: BTreeMap<AgentId, usize> = BTreeMap::new();
        for &v in order.iter().rev() {
            let leaf = push(&mut nodes, NodeKind::Leaf, vec![]);
            let mut cur = push(&mut nodes, NodeKind::Introduce(v), vec![v]);
            link(&mut nodes, leaf, cur);
            for &c in children.get(&v).map(|v| v.as_slice()).unwrap_or(&[]) {
                let sub = top[&c];
                let mut bag = vec![c, v];
                bag.sort_unstable();
                let intro = push(&mut nodes, NodeKind::Introduce(v), bag);
                link(&mut nodes, sub, intro);
                let forg = push(&mut nodes, NodeKind::Forget(c), vec![v]);
                link(&mut nodes, intro, forg);
                let join = push(&mut nodes, NodeKind::Join, vec![v]);
                link(&mut nodes, cur, join);
                link(&mut nodes, forg, join);
                cur = join;
            }
            top.insert(v, cur);
        }
        let tree_top = push(&mut nodes, NodeKind::Forget(root), vec![]);
        link(&mut nodes, top[&root], tree_top);
        tree_tops.push(tree_top);
    }
    let mut cur = tree_tops[0];
    for &t in &tree_tops[1..] {
        let join = push(&mut nodes, NodeKind::Join, vec![]);
        link(&mut nodes, cur, join);
        link(&mut nodes, t, join);
        cur = join;
    }
    let td = NiceTreeDecomposition { nodes, root: cur };
    debug_assert!(td.width() <= 1);
    debug_assert!(td.nodes.len() <= 6 * n.max(1));
    Ok(td)
}

/// Runs the leaf-to-root dynamic program and reports whether the size-vector
/// cell at the root is reachable. Binary utilities only; the decomposition
/// is verified first.
pub fn dp_exists(
    inst: &Instance,
    notion: FairnessNotion,
    td: &NiceTreeDecomposition,
    opts: &DpOptions,
) -> Result<DpRun> {
    if !inst.profile.classify().binary {
        return Err(Error::NotBinary);
    }
    verify_decomposition(&inst.graph, td)?;
    inst.sizes.check_n(inst.n())?;
    let k = inst.k;
    let n = inst.n();
    let sizes: Vec<usize> = inst.sizes.sizes().to_vec();
    let mms_shares: Vec<u64> = (0..n)
        .map(|a| binary_mms_share_for_sizes(inst.graph.degree(a), k, &inst.sizes))
        .collect();

    let order = td.post_order();
    let mut tables: Vec<BTreeMap<DpSignature, Choice>> = vec![BTreeMap::new(); td.nodes.len()];
    let mut peak = 0usize;

    for &x in &order {
        let node = &td.nodes[x];
        let bag = &node.bag;
        let children = td.children(x);
        let mut table: BTreeMap<DpSignature, Choice> = BTreeMap::new();
        match node.kind {
            NodeKind::Leaf => {
                table.insert(
                    DpSignature {
                        p: vec![],
                        f: vec![],
                        c: vec![],
                        s: vec![0; k],
                    },
                    Choice::Leaf,
                );
            }
            NodeKind::Introduce(a) => {
                let y = children[0];
                let cbag = &td.nodes[y].bag;
                let pa = bag.binary_search(&a).expect("introduced agent in bag");
                // Bag friends of a and off-bag degree.
                let friend_pos_parent: Vec<usize> = bag
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| inst.graph.has_edge(a, b))
                    .map(|(j, _)| j)
                    .collect();
                let friend_pos_child: Vec<usize> = cbag
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| inst.graph.has_edge(a, b))
                    .map(|(j, _)| j)
                    .collect();
                let d_off = inst
                    .graph
                    .friends(a)
                    .iter()
                    .filter(|&&b| bag.binary_search(&b).is_err())
                    .count();
                for (csig, _) in tables[y].iter() {
                    for part in 0..k {
                        // Every promised friend materializing here must have
                        // been promised by the child.
                        if friend_pos_child
                            .iter()
                            .any(|&j| csig.f[j * k + part] == 0)
                        {
                            continue;
                        }
                        // Bag + forgotten occupancy must fit the final size.
                        let mut bag_count = vec![0usize; k];
                        for (j, &pp) in csig.p.iter().enumerate() {
                            let _ = j;
                            bag_count[pp as usize] += 1;
                        }
                        bag_count[part] += 1;
                        if (0..k).any(|i| bag_count[i] + csig.s[i] as usize > sizes[i]) {
                            continue;
                        }
                        // Parent-side rows without a.
                        let mut base_p = Vec::with_capacity(bag.len());
                        let mut base_f = Vec::with_capacity(bag.len() * k);
                        let mut base_c = Vec::with_capacity(bag.len() * k);
                        let mut cj = 0usize;
                        let mut ok = true;
                        for j in 0..bag.len() {
                            if j == pa {
                                base_p.push(part as u8);
                                base_f.extend(std::iter::repeat(0u16).take(k));
                                base_c.extend(std::iter::repeat(0u16).take(k));
                                continue;
                            }
                            base_p.push(csig.p[cj]);
                            let is_friend = friend_pos_parent.contains(&j);
                            for i in 0..k {
                                let mut fv = csig.f[cj * k + i];
                                if is_friend && i == part {
                                    // One promise is fulfilled by a itself.
                                    if fv == 0 {
                                        ok = false;
                                        break;
                                    }
                                    fv -= 1;
                                }
                                base_f.push(fv);
                                base_c.push(csig.c[cj * k + i]);
                            }
                            if !ok {
                                break;
                            }
                            cj += 1;
                        }
                        if !ok {
                            continue;
                        }
                        // Friends of a already decided inside the bag.
                        let mut bag_friends = vec![0usize; k];
                        for &j in &friend_pos_parent {
                            if j == pa {
                                continue;
                            }
                            bag_friends[base_p[j] as usize] += 1;
                        }
                        // Capacity for a's future-friend promises.
                        let mut caps = vec![0usize; k];
                        let mut feasible = true;
                        for i in 0..k {
                            let limit = sizes[i] - usize::from(i == part);
                            if bag_friends[i] > limit {
                                feasible = false;
                                break;
                            }
                            caps[i] = limit - bag_friends[i];
                        }
                        if !feasible {
                            continue;
                        }
                        let deg = inst.graph.degree(a);
                        let share = mms_shares[a];
                        for_each_composition(d_off, &caps, &mut |row| {
                            let counts: Vec<usize> =
                                (0..k).map(|i| bag_friends[i] + row[i]).collect();
                            if !binary_fair_from_counts(
                                notion, part, &counts, &sizes, deg, k, share,
                            ) {
                                return;
                            }
                            let mut sig = DpSignature {
                                p: base_p.clone(),
                                f: base_f.clone(),
                                c: base_c.clone(),
                                s: csig.s.clone(),
                            };
                            for i in 0..k {
                                sig.f[pa * k + i] = row[i] as u16;
                            }
                            table
                                .entry(sig)
                                .or_insert_with(|| Choice::Introduce(csig.clone()));
                        });
                    }
                }
            }
            NodeKind::Forget(a) => {
                let y = children[0];
                let cbag = &td.nodes[y].bag;
                let pa = cbag.binary_search(&a).expect("forgotten agent in child bag");
                for (csig, _) in tables[y].iter() {
                    if (0..k).any(|i| csig.f[pa * k + i] != 0) {
                        continue;
                    }
                    let part = csig.p[pa] as usize;
                    let mut p = Vec::with_capacity(bag.len());
                    let mut f = Vec::with_capacity(bag.len() * k);
                    let mut c = Vec::with_capacity(bag.len() * k);
                    for j in 0..cbag.len() {
                        if j == pa {
                            continue;
                        }
                        p.push(csig.p[j]);
                        for i in 0..k {
                            f.push(csig.f[j * k + i]);
                            let mut cv = csig.c[j * k + i];
                            if i == part && inst.graph.has_edge(a, cbag[j]) {
                                cv += 1;
                            }
                            c.push(cv);
                        }
                    }
                    let mut s = csig.s.clone();
                    s[part] += 1;
                    // Occupancy guard.
                    let mut bag_count = vec![0usize; k];
                    for &pp in &p {
                        bag_count[pp as usize] += 1;
                    }
                    if (0..k).any(|i| bag_count[i] + s[i] as usize > sizes[i]) {
                        continue;
                    }
                    let sig = DpSignature { p, f, c, s };
                    table.entry(sig).or_insert_with(|| Choice::Forget(csig.clone()));
                }
            }
            NodeKind::Join => {
                let (y, z) = (children[0], children[1]);
                let mut by_p: BTreeMap<&[u8], Vec<&DpSignature>> = BTreeMap::new();
                for (zsig, _) in tables[z].iter() {
                    by_p.entry(&zsig.p).or_default().push(zsig);
                }
                for (ysig, _) in tables[y].iter() {
                    let Some(zs) = by_p.get(ysig.p.as_slice()) else {
                        continue;
                    };
                    'zloop: for &zsig in zs {
                        let len = ysig.f.len();
                        let mut f = Vec::with_capacity(len);
                        let mut c = Vec::with_capacity(len);
                        for t in 0..len {
                            // f = f_y - c_z = f_z - c_y, entrywise.
                            if ysig.f[t] < zsig.c[t] || zsig.f[t] < ysig.c[t] {
                                continue 'zloop;
                            }
                            let fy = ysig.f[t] - zsig.c[t];
                            let fz = zsig.f[t] - ysig.c[t];
                            if fy != fz {
                                continue 'zloop;
                            }
                            f.push(fy);
                            c.push(ysig.c[t] + zsig.c[t]);
                        }
                        let s: Vec<u16> = (0..k)
                            .map(|i| ysig.s[i] + zsig.s[i])
                            .collect();
                        let mut bag_count = vec![0usize; k];
                        for &pp in &ysig.p {
                            bag_count[pp as usize] += 1;
                        }
                        if (0..k).any(|i| bag_count[i] + s[i] as usize > sizes[i]) {
                            continue;
                        }
                        let sig = DpSignature {
                            p: ysig.p.clone(),
                            f,
                            c,
                            s,
                        };
                        table
                            .entry(sig)
                            .or_insert_with(|| Choice::Join(ysig.clone(), zsig.clone()));
                    }
                }
            }
        }
        if table.len() > opts.signature_cap {
            return Err(Error::ResourceCap(format!(
                "live signatures at a node reached {} (cap {})",
                table.len(),
                opts.signature_cap
            )));
        }
        peak = peak.max(table.len());
        debug_assert!(table.keys().all(|sig| sig.consistent(bag.len(), k)));
        tables[x] = table;
    }

    let root_sig = DpSignature {
        p: vec![],
        f: vec![],
        c: vec![],
        s: sizes.iter().map(|&x| x as u16).collect(),
    };
    let found = tables[td.root].contains_key(&root_sig);
    Ok(DpRun {
        found,
        peak_signatures: peak,
        k,
        n,
        td: td.clone(),
        tables,
        root_sig,
    })
}

fn for_each_composition(total: usize, caps: &[usize], f: &mut impl FnMut(&[usize])) {
    let mut row = vec![0usize; caps.len()];
    fn rec(
        total: usize,
        caps: &[usize],
        idx: usize,
        row: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if idx == caps.len() - 1 {
            if total <= caps[idx] {
                row[idx] = total;
                f(row);
            }
            return;
        }
        let tail: usize = caps[idx + 1..].iter().sum();
        let lo = total.saturating_sub(tail);
        let hi = total.min(caps[idx]);
        for v in lo..=hi {
            row[idx] = v;
            rec(total - v, caps, idx + 1, row, f);
        }
        if hi == usize::MAX {
            unreachable!();
        }
    }
    if caps.is_empty() {
        if total == 0 {
            f(&row);
        }
        return;
    }
    rec(total, caps, 0, &mut row, f);
}

/// Extracts a concrete partition by walking the stored back-pointers. Every
/// agent is forgotten exactly once, and the forget edge records its part.
pub fn reconstruct(run: &DpRun) -> Result<Partition> {
    if !run.found {
        return Err(Error::InvalidParameter(
            "reconstruct called without a found result".into(),
        ));
    }
    let mut part_of: Vec<Option<usize>> = vec![None; run.n];
    let mut stack: Vec<(usize, DpSignature)> = vec![(run.td.root, run.root_sig.clone())];
    while let Some((x, sig)) = stack.pop() {
        let choice = run.tables[x]
            .get(&sig)
            .expect("back-pointer chain is closed");
        let children = run.td.children(x);
        match (choice, run.td.nodes[x].kind) {
            (Choice::Leaf, _) => {}
            (Choice::Introduce(csig), NodeKind::Introduce(_)) => {
                stack.push((children[0], csig.clone()));
            }
            (Choice::Forget(csig), NodeKind::Forget(a)) => {
                let cbag = &run.td.nodes[children[0]].bag;
                let pa = cbag.binary_search(&a).unwrap();
                part_of[a] = Some(csig.p[pa] as usize);
                stack.push((children[0], csig.clone()));
            }
            (Choice::Join(ysig, zsig), NodeKind::Join) => {
                stack.push((children[0], ysig.clone()));
                stack.push((children[1], zsig.clone()));
            }
            _ => unreachable!("choice kind matches node kind"),
        }
    }
    let part_of: Vec<usize> = part_of
        .into_iter()
        .map(|p| p.expect("every agent forgotten once"))
        .collect();
    Ok(Partition::new(part_of, run.k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::{check_partition, ShareTable};
    use crate::partition::validate_partition;

    fn path(n: usize) -> FriendshipGraph {
        FriendshipGraph::new(n, (0..n - 1).map(|i| (i, i + 1)).collect()).unwrap()
    }

    #[test]
    fn forest_decomposition_is_nice_and_narrow() {
        for g in [
            FriendshipGraph::new(2, vec![(0, 1)]).unwrap(),
            path(3),
            FriendshipGraph::new(4, vec![(0, 1), (2, 3)]).unwrap(),
            FriendshipGraph::new(7, vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap(),
            FriendshipGraph::edgeless(3),
        ] {
            let td = nice_decompose_forest(&g).unwrap();
            verify_decomposition(&g, &td).unwrap();
            assert!(td.width() <= 1);
        }
    }

    #[test]
    fn path3_dp_matches_known_answers() {
        let inst = Instance::binary(path(3), 2).unwrap();
        let td = nice_decompose_forest(&inst.graph).unwrap();
        let opts = DpOptions::default();
        assert!(!dp_exists(&inst, FairnessNotion::Ef, &td, &opts).unwrap().found);
        assert!(!dp_exists(&inst, FairnessNotion::Prop, &td, &opts).unwrap().found);
        let run = dp_exists(&inst, FairnessNotion::Efx0, &td, &opts).unwrap();
        assert!(run.found);
        let p = reconstruct(&run).unwrap();
        validate_partition(&p, &inst.sizes).unwrap();
        let shares = ShareTable::prop_only(&inst.profile, 2);
        assert!(check_partition(&inst.graph, &inst.profile, &p, FairnessNotion::Efx0, &shares)
            .unwrap()
            .pass());
    }

    #[test]
    fn path6_k3_ef_found_and_reconstructs() {
        let inst = Instance::binary(path(6), 3).unwrap();
        let td = nice_decompose_forest(&inst.graph).unwrap();
        let run = dp_exists(&inst, FairnessNotion::Ef, &td, &DpOptions::default()).unwrap();
        assert!(run.found);
        let p = reconstruct(&run).unwrap();
        validate_partition(&p, &inst.sizes).unwrap();
        let shares = ShareTable::prop_only(&inst.profile, 3);
        assert!(check_partition(&inst.graph, &inst.profile, &p, FairnessNotion::Ef, &shares)
            .unwrap()
            .pass());
    }

    #[test]
    fn star_prop_is_infeasible() {
        let g = FriendshipGraph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let inst = Instance::binary(g, 2).unwrap();
        let td = nice_decompose_forest(&inst.graph).unwrap();
        assert!(!dp_exists(&inst, FairnessNotion::Prop, &td, &DpOptions::default())
            .unwrap()
            .found);
    }

    #[test]
    fn weighted_profile_rejected() {
        let g = FriendshipGraph::new(2, vec![(0, 1)]).unwrap();
        let profile =
            crate::utility::UtilityProfile::from_directed_weights(&g, &[(0, 1, 2), (1, 0, 2)])
                .unwrap();
        let inst = Instance::new(g, profile, 2, None, None).unwrap();
        let td = nice_decompose_forest(&inst.graph).unwrap();
        assert!(matches!(
            dp_exists(&inst, FairnessNotion::Ef, &td, &DpOptions::default()),
            Err(Error::NotBinary)
        ));
    }
}
