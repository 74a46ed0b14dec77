//! The six fairness predicates, share computations, and whole-partition
//! audits for additive utilities.
//!
//! All comparisons run in integer arithmetic; PROP never materializes the
//! fraction `u_a(Fr(a))/k` and instead tests `k * u_a(π(a)) >= u_a(Fr(a))`.

use crate::error::{Error, Result};
use crate::graph::{AgentId, FriendshipGraph};
use crate::partition::{Partition, SizeVector};
use crate::utility::UtilityProfile;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FairnessNotion {
    Ef,
    Efx0,
    Efx,
    Ef1,
    Prop,
    Mms,
}

impl FairnessNotion {
    pub const ALL: [FairnessNotion; 6] = [
        FairnessNotion::Ef,
        FairnessNotion::Efx0,
        FairnessNotion::Efx,
        FairnessNotion::Ef1,
        FairnessNotion::Prop,
        FairnessNotion::Mms,
    ];

    pub fn is_envy_based(self) -> bool {
        !matches!(self, FairnessNotion::Prop | FairnessNotion::Mms)
    }
}

impl fmt::Display for FairnessNotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FairnessNotion::Ef => "EF",
            FairnessNotion::Efx0 => "EFX0",
            FairnessNotion::Efx => "EFX",
            FairnessNotion::Ef1 => "EF1",
            FairnessNotion::Prop => "PROP",
            FairnessNotion::Mms => "MMS",
        };
        f.write_str(s)
    }
}

impl FromStr for FairnessNotion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "EF" => Ok(FairnessNotion::Ef),
            "EFX0" | "EFX_0" => Ok(FairnessNotion::Efx0),
            "EFX" => Ok(FairnessNotion::Efx),
            "EF1" => Ok(FairnessNotion::Ef1),
            "PROP" => Ok(FairnessNotion::Prop),
            "MMS" => Ok(FairnessNotion::Mms),
            other => Err(Error::InvalidParameter(format!(
                "unknown fairness notion '{other}'"
            ))),
        }
    }
}

/// Per-agent share thresholds. PROP shares are exact rationals kept as
/// `(numerator, k)`; MMS shares are integers and may be absent when nobody
/// computed them yet.
#[derive(Debug, Clone)]
pub struct ShareTable {
    pub k: usize,
    pub prop_num: Vec<u64>,
    pub mms: Option<Vec<u64>>,
}

impl ShareTable {
    pub fn prop_only(profile: &UtilityProfile, k: usize) -> Self {
        let prop_num = (0..profile.n()).map(|a| profile.total(a)).collect();
        Self {
            k,
            prop_num,
            mms: None,
        }
    }

    /// Exact MMS shares by enumeration; exponential, guarded by `limit`.
    pub fn with_exact_mms(
        graph: &FriendshipGraph,
        profile: &UtilityProfile,
        k: usize,
        sv: &SizeVector,
        limit: usize,
    ) -> Result<Self> {
        let mut st = Self::prop_only(profile, k);
        let mms = (0..graph.n())
            .map(|a| mms_share_exact(graph, profile, a, k, sv, limit))
            .collect::<Result<Vec<_>>>()?;
        st.mms = Some(mms);
        Ok(st)
    }

    /// Closed-form MMS shares for binary utilities under any size vector.
    pub fn with_binary_mms(
        graph: &FriendshipGraph,
        profile: &UtilityProfile,
        k: usize,
        sv: &SizeVector,
    ) -> Result<Self> {
        if !profile.classify().binary {
            return Err(Error::NotBinary);
        }
        let mut st = Self::prop_only(profile, k);
        let mms = (0..graph.n())
            .map(|a| binary_mms_share_for_sizes(graph.degree(a), k, sv))
            .collect();
        st.mms = Some(mms);
        Ok(st)
    }
}

/// `PROP-share(a)` as the exact pair `(u_a(Fr(a)), k)`.
pub fn prop_share(profile: &UtilityProfile, a: AgentId, k: usize) -> (u64, u64) {
    (profile.total(a), k as u64)
}

/// Binary-utility MMS share under balanced sizes: `⌊deg(a)/k⌋`.
/// Rejected when the profile is not binary or the sizes are not balanced.
pub fn mms_share_binary(
    graph: &FriendshipGraph,
    profile: &UtilityProfile,
    a: AgentId,
    k: usize,
    sv: &SizeVector,
) -> Result<u64> {
    if !profile.classify().binary {
        return Err(Error::NotBinary);
    }
    if !sv.is_balanced() {
        return Err(Error::NotBalanced);
    }
    Ok((graph.degree(a) / k) as u64)
}

/// Binary MMS share for an arbitrary size vector. Pigeonhole bounds the
/// share by `⌊deg/k⌋`; small parts bound how many friends every part can
/// hold, and the agent's own part loses one slot. With balanced sizes this
/// collapses to `⌊deg/k⌋`.
pub(crate) fn binary_mms_share_for_sizes(deg: usize, k: usize, sv: &SizeVector) -> u64 {
    let by_pigeonhole = deg / k;
    let by_smallest = sv.min();
    let by_own = sv.max().saturating_sub(1);
    by_pigeonhole.min(by_smallest).min(by_own) as u64
}

/// Exact `MMS-share(a)`: the maximin over all partitions matching `sv`,
/// computed by enumerating distributions of `Fr(a)` into parts. Non-friends
/// are interchangeable fillers, so only friend placements and the agent's own
/// slot are branched on.
pub fn mms_share_exact(
    graph: &FriendshipGraph,
    profile: &UtilityProfile,
    a: AgentId,
    k: usize,
    sv: &SizeVector,
    limit: usize,
) -> Result<u64> {
    let n = graph.n();
    if n > limit {
        return Err(Error::TooLarge(format!(
            "exact MMS enumeration is capped at {limit} agents (n = {n}); \
             use mms_share_binary for binary utilities or raise the limit"
        )));
    }
    sv.check_n(n)?;
    if sv.k() != k {
        return Err(Error::InvalidParameter(format!(
            "size vector has {} parts, expected {k}",
            sv.k()
        )));
    }
    let friends: Vec<(AgentId, u64)> = profile.weighted_friends(a).to_vec();
    let mut best = 0u64;
    // Place the agent itself in each structurally distinct part size.
    let mut tried_sizes = Vec::new();
    for own in 0..k {
        if tried_sizes.contains(&sv.sizes()[own]) {
            continue;
        }
        tried_sizes.push(sv.sizes()[own]);
        let mut caps: Vec<usize> = sv.sizes().to_vec();
        caps[own] -= 1;
        let mut sums = vec![0u64; k];
        distribute_friends(&friends, 0, &mut caps, &mut sums, &mut best);
    }
    Ok(best)
}

fn distribute_friends(
    friends: &[(AgentId, u64)],
    idx: usize,
    caps: &mut [usize],
    sums: &mut [u64],
    best: &mut u64,
) {
    if idx == friends.len() {
        let score = sums.iter().copied().min().unwrap_or(0);
        if score > *best {
            *best = score;
        }
        return;
    }
    // Remaining weight cannot lift a part above what is already possible;
    // cheap bound: if even placing everything remaining into the current
    // minimum cannot beat `best`, prune.
    let remaining: u64 = friends[idx..].iter().map(|&(_, w)| w).sum();
    let reachable_min = sums
        .iter()
        .map(|&s| s.saturating_add(remaining))
        .min()
        .unwrap_or(0);
    if reachable_min <= *best {
        return;
    }
    let w = friends[idx].1;
    for i in 0..caps.len() {
        if caps[i] == 0 {
            continue;
        }
        // Symmetry: identical (cap, sum) parts are interchangeable.
        if (0..i).any(|j| caps[j] == caps[i] && sums[j] == sums[i]) {
            continue;
        }
        caps[i] -= 1;
        sums[i] += w;
        distribute_friends(friends, idx + 1, caps, sums, best);
        caps[i] += 1;
        sums[i] -= w;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `a` envies `envied`; for EFX-style notions `removal` is the agent
    /// whose removal still leaves envy, for EF1 the best removal that is
    /// still not enough.
    Envy {
        envied: AgentId,
        removal: Option<AgentId>,
    },
    /// Share comparison that failed: `utility < share_num / share_den`.
    Share {
        share_num: u64,
        share_den: u64,
        utility: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Per-agent verdicts for one notion. A partition passes the notion iff
/// every agent passes.
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub notion: FairnessNotion,
    pub verdicts: Vec<Verdict>,
}

impl AuditReport {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed())
    }

    pub fn first_failure(&self) -> Option<(AgentId, &Witness)> {
        self.verdicts.iter().enumerate().find_map(|(a, v)| match v {
            Verdict::Fail(w) => Some((a, w)),
            Verdict::Pass => None,
        })
    }
}

/// Direct, definition-faithful check of the envy condition for one ordered
/// pair. Returns `None` when `a` has no (unfixable) envy towards `b`;
/// otherwise the witness. Pairs in the same part pass trivially.
pub fn envious(
    graph: &FriendshipGraph,
    profile: &UtilityProfile,
    p: &Partition,
    a: AgentId,
    b: AgentId,
    notion: FairnessNotion,
) -> Option<Witness> {
    debug_assert!(notion.is_envy_based());
    if a == b || p.part_of(a) == p.part_of(b) {
        return None;
    }
    let own: u64 = profile
        .weighted_friends(a)
        .iter()
        .filter(|&&(f, _)| p.part_of(f) == p.part_of(a))
        .map(|&(_, w)| w)
        .sum();
    let target = p.part_of(b);
    let members: Vec<AgentId> = (0..p.n())
        .filter(|&x| p.part_of(x) == target && x != b)
        .collect();
    let total: u64 = members.iter().map(|&c| profile.weight(a, c)).sum();
    let fail = |removal: Option<AgentId>| Some(Witness::Envy { envied: b, removal });
    match notion {
        FairnessNotion::Ef => {
            if own >= total {
                None
            } else {
                fail(None)
            }
        }
        FairnessNotion::Efx0 => {
            // Removal of any agent, friend or not, must eliminate the envy.
            members
                .iter()
                .find(|&&c| own < total - profile.weight(a, c))
                .and_then(|&c| fail(Some(c)))
        }
        FairnessNotion::Efx => {
            // Removal of any friend must eliminate the envy; vacuous when the
            // target part holds no friends of `a` besides possibly `b`.
            members
                .iter()
                .filter(|&&c| profile.weight(a, c) > 0)
                .find(|&&c| own < total - profile.weight(a, c))
                .and_then(|&c| fail(Some(c)))
        }
        FairnessNotion::Ef1 => {
            if members.is_empty() {
                return None;
            }
            let best = members
                .iter()
                .map(|&c| profile.weight(a, c))
                .max()
                .unwrap_or(0);
            if own >= total - best {
                None
            } else {
                // Report the strongest removal that still fails.
                let c = members
                    .iter()
                    .copied()
                    .find(|&c| profile.weight(a, c) == best)
                    .unwrap();
                fail(Some(c))
            }
        }
        _ => unreachable!(),
    }
}

// Per-(agent, part) aggregates of the agent's friends in the part.
// min2 is only meaningful when cnt >= 2.
#[derive(Clone, Copy)]
struct PartView {
    total: u64,
    cnt: usize,
    min1: u64,
    min2: u64,
    max1: u64,
}

impl Default for PartView {
    fn default() -> Self {
        Self {
            total: 0,
            cnt: 0,
            min1: u64::MAX,
            min2: u64::MAX,
            max1: 0,
        }
    }
}

impl PartView {
    fn push(&mut self, w: u64) {
        self.total += w;
        self.cnt += 1;
        if w < self.min1 {
            self.min2 = self.min1;
            self.min1 = w;
        } else if w < self.min2 {
            self.min2 = w;
        }
        if w > self.max1 {
            self.max1 = w;
        }
    }
}

/// Audits the whole partition for one notion. Envy notions run in
/// `O(Σ deg)` via per-part aggregates, falling back to pairwise checks only
/// to extract the lexicographically smallest witness on failure. Share
/// notions compare against the table in exact integer arithmetic.
pub fn check_partition(
    graph: &FriendshipGraph,
    profile: &UtilityProfile,
    p: &Partition,
    notion: FairnessNotion,
    shares: &ShareTable,
) -> Result<AuditReport> {
    let n = graph.n();
    let k = p.k();
    let part_sizes = p.part_sizes();
    let mut verdicts = Vec::with_capacity(n);

    match notion {
        FairnessNotion::Prop => {
            for a in 0..n {
                let own = utility_in_own_part(profile, p, a);
                let total = shares.prop_num[a];
                if own.checked_mul(shares.k as u64).expect("utility overflow") >= total {
                    verdicts.push(Verdict::Pass);
                } else {
                    verdicts.push(Verdict::Fail(Witness::Share {
                        share_num: total,
                        share_den: shares.k as u64,
                        utility: own,
                    }));
                }
            }
        }
        FairnessNotion::Mms => {
            let mms = shares.mms.as_ref().ok_or(Error::MissingMmsShares)?;
            for a in 0..n {
                let own = utility_in_own_part(profile, p, a);
                if own >= mms[a] {
                    verdicts.push(Verdict::Pass);
                } else {
                    verdicts.push(Verdict::Fail(Witness::Share {
                        share_num: mms[a],
                        share_den: 1,
                        utility: own,
                    }));
                }
            }
        }
        _ => {
            for a in 0..n {
                let mut views = vec![PartView::default(); k];
                for &(f, w) in profile.weighted_friends(a) {
                    views[p.part_of(f)].push(w);
                }
                let own_part = p.part_of(a);
                let own = views[own_part].total;
                let mut ok = true;
                for i in 0..k {
                    if i == own_part {
                        continue;
                    }
                    let v = &views[i];
                    if v.total == 0 {
                        continue;
                    }
                    // Number of members of part i that are not friends of a.
                    let nf = part_sizes[i] - v.cnt;
                    let worst = match notion {
                        FairnessNotion::Ef => {
                            if nf >= 1 {
                                v.total
                            } else {
                                v.total - v.min1
                            }
                        }
                        FairnessNotion::Efx0 => {
                            if part_sizes[i] == 1 {
                                continue;
                            }
                            match nf {
                                // All members are friends: drop the two cheapest.
                                0 => v.total - v.min1 - v.min2,
                                // The single non-friend absorbs one of (b, c).
                                1 => v.total - v.min1,
                                _ => v.total,
                            }
                        }
                        FairnessNotion::Efx => {
                            if nf >= 1 {
                                // Replace a non-friend, remove the cheapest friend.
                                v.total - v.min1
                            } else if v.cnt >= 2 {
                                v.total - v.min1 - v.min2
                            } else {
                                continue;
                            }
                        }
                        FairnessNotion::Ef1 => {
                            if part_sizes[i] == 1 {
                                continue;
                            }
                            if nf >= 1 {
                                v.total - v.max1
                            } else if v.cnt >= 2 {
                                // Replace the cheapest friend; the best removal
                                // left behind is the heaviest one.
                                v.total - v.min1 - v.max1
                            } else {
                                continue;
                            }
                        }
                        _ => unreachable!(),
                    };
                    if worst > own {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    verdicts.push(Verdict::Pass);
                } else {
                    // Extract the smallest violating pair via the direct check.
                    let w = (0..n)
                        .filter(|&b| b != a && p.part_of(b) != own_part)
                        .find_map(|b| envious(graph, profile, p, a, b, notion))
                        .expect("aggregate failure must have a pairwise witness");
                    verdicts.push(Verdict::Fail(w));
                }
            }
        }
    }
    Ok(AuditReport { notion, verdicts })
}

pub(crate) fn utility_in_own_part(profile: &UtilityProfile, p: &Partition, a: AgentId) -> u64 {
    let own = p.part_of(a);
    profile
        .weighted_friends(a)
        .iter()
        .filter(|&&(f, _)| p.part_of(f) == own)
        .map(|&(_, w)| w)
        .sum()
}

/// Binary-utility fairness of one agent, expressed purely through per-part
/// friend counts and final part sizes. `counts[i]` is the number of the
/// agent's friends that end up in part `i`; the agent sits in `own_part`.
/// This is the φ-fair gate shared by the treewidth and vertex-cover solvers.
pub(crate) fn binary_fair_from_counts(
    notion: FairnessNotion,
    own_part: usize,
    counts: &[usize],
    sizes: &[usize],
    deg: usize,
    k: usize,
    mms_share: u64,
) -> bool {
    let own = counts[own_part];
    match notion {
        FairnessNotion::Prop => (own * k) >= deg,
        FairnessNotion::Mms => own as u64 >= mms_share,
        _ => {
            for i in 0..counts.len() {
                if i == own_part {
                    continue;
                }
                let t = counts[i];
                if t == 0 {
                    continue;
                }
                let nf = sizes[i] - t;
                let required = match notion {
                    FairnessNotion::Ef => {
                        if nf >= 1 {
                            t
                        } else {
                            t - 1
                        }
                    }
                    FairnessNotion::Efx0 => {
                        if sizes[i] == 1 {
                            continue;
                        }
                        match nf {
                            0 => t.saturating_sub(2),
                            1 => t - 1,
                            _ => t,
                        }
                    }
                    FairnessNotion::Efx | FairnessNotion::Ef1 => {
                        if nf >= 1 {
                            t - 1
                        } else if t >= 2 {
                            t - 2
                        } else {
                            continue;
                        }
                    }
                    _ => unreachable!(),
                };
                if own < required {
                    return false;
                }
            }
            true
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Instance;

    fn path3() -> Instance {
        let g = FriendshipGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        Instance::binary(g, 2).unwrap()
    }

    /// Fig-style 7-agent instance: edges {02, 03, 04, 13, 14}, binary, k = 3.
    pub(crate) fn prop_not_ef_base() -> Instance {
        let g = FriendshipGraph::new(7, vec![(0, 2), (0, 3), (0, 4), (1, 3), (1, 4)]).unwrap();
        Instance::binary(g, 3).unwrap()
    }

    #[test]
    fn path3_middle_agent_envies_under_ef_but_not_efx0() {
        let inst = path3();
        // Smaller part holds the degree-two agent 1.
        let p = Partition::new(vec![1, 0, 1], 2).unwrap();
        assert!(envious(&inst.graph, &inst.profile, &p, 1, 0, FairnessNotion::Ef).is_some());
        assert!(envious(&inst.graph, &inst.profile, &p, 1, 0, FairnessNotion::Efx0).is_none());
    }

    #[test]
    fn prop_share_examples() {
        let inst = path3();
        assert_eq!(prop_share(&inst.profile, 1, 2), (2, 2));
        let lonely = Instance::binary(FriendshipGraph::edgeless(4), 2).unwrap();
        assert_eq!(prop_share(&lonely.profile, 0, 2), (0, 2));
        // Complete graph on 2k agents: share (2k-1)/k.
        let kk = 2;
        let mut edges = Vec::new();
        for a in 0..2 * kk {
            for b in (a + 1)..2 * kk {
                edges.push((a, b));
            }
        }
        let inst = Instance::binary(FriendshipGraph::new(2 * kk, edges).unwrap(), kk).unwrap();
        assert_eq!(prop_share(&inst.profile, 0, kk), (2 * kk as u64 - 1, kk as u64));
    }

    #[test]
    fn binary_mms_closed_form() {
        // deg 5, k 2 -> 2; deg k-1 -> 0.
        let g = FriendshipGraph::new(6, vec![(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let inst = Instance::binary(g, 2).unwrap();
        assert_eq!(
            mms_share_binary(&inst.graph, &inst.profile, 0, 2, &inst.sizes).unwrap(),
            2
        );
        let g = FriendshipGraph::new(4, vec![(0, 1)]).unwrap();
        let inst = Instance::binary(g, 2).unwrap();
        assert_eq!(
            mms_share_binary(&inst.graph, &inst.profile, 0, 2, &inst.sizes).unwrap(),
            0
        );
    }

    #[test]
    fn binary_mms_rejects_weighted_or_unbalanced() {
        let g = FriendshipGraph::new(2, vec![(0, 1)]).unwrap();
        let p = UtilityProfile::from_directed_weights(&g, &[(0, 1, 2), (1, 0, 2)]).unwrap();
        let sv = SizeVector::balanced(2, 2).unwrap();
        assert!(matches!(
            mms_share_binary(&g, &p, 0, 2, &sv),
            Err(Error::NotBinary)
        ));
        let g = FriendshipGraph::new(4, vec![(0, 1)]).unwrap();
        let p = UtilityProfile::binary(&g);
        let sv = SizeVector::new(vec![3, 1]).unwrap();
        assert!(matches!(
            mms_share_binary(&g, &p, 0, 2, &sv),
            Err(Error::NotBalanced)
        ));
    }

    #[test]
    fn exact_mms_on_weighted_star() {
        // Star with leaf weights 1, 2, 3, 4 seen from the center; k = 2,
        // sizes (3, 2): the center can guarantee 5 by taking {1, 4} | {2, 3}.
        let g = FriendshipGraph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let mut w = Vec::new();
        for leaf in 1..5 {
            w.push((0, leaf, leaf as u64));
            w.push((leaf, 0, leaf as u64));
        }
        let p = UtilityProfile::from_directed_weights(&g, &w).unwrap();
        let sv = SizeVector::new(vec![3, 2]).unwrap();
        assert_eq!(mms_share_exact(&g, &p, 0, 2, &sv, 12).unwrap(), 5);
    }

    #[test]
    fn exact_mms_zero_when_degree_below_k() {
        let g = FriendshipGraph::new(5, vec![(0, 1)]).unwrap();
        let p = UtilityProfile::binary(&g);
        let sv = SizeVector::balanced(5, 2).unwrap();
        assert_eq!(mms_share_exact(&g, &p, 0, 2, &sv, 12).unwrap(), 0);
    }

    #[test]
    fn exact_mms_too_large_points_at_alternatives() {
        let g = FriendshipGraph::edgeless(20);
        let p = UtilityProfile::binary(&g);
        let sv = SizeVector::balanced(20, 2).unwrap();
        let err = mms_share_exact(&g, &p, 0, 2, &sv, 12).unwrap_err();
        assert!(format!("{err}").contains("mms_share_binary"));
    }

    #[test]
    fn fig1_partition_is_prop_but_not_ef() {
        let inst = prop_not_ef_base();
        let p = Partition::new(vec![0, 1, 0, 1, 1, 2, 2], 3).unwrap();
        let shares = ShareTable::prop_only(&inst.profile, 3);
        let prop = check_partition(&inst.graph, &inst.profile, &p, FairnessNotion::Prop, &shares)
            .unwrap();
        assert!(prop.pass());
        let ef =
            check_partition(&inst.graph, &inst.profile, &p, FairnessNotion::Ef, &shares).unwrap();
        assert!(!ef.pass());
        let (agent, w) = ef.first_failure().unwrap();
        assert_eq!(agent, 0);
        assert_eq!(
            w,
            &Witness::Envy {
                envied: 1,
                removal: None
            }
        );
    }

    #[test]
    fn singletons_on_edgeless_graph_pass_everything() {
        let g = FriendshipGraph::edgeless(3);
        let inst = Instance::binary(g, 3).unwrap();
        let p = Partition::new(vec![0, 1, 2], 3).unwrap();
        let shares = ShareTable::with_exact_mms(&inst.graph, &inst.profile, 3, &inst.sizes, 12)
            .unwrap();
        for notion in FairnessNotion::ALL {
            let rep =
                check_partition(&inst.graph, &inst.profile, &p, notion, &shares).unwrap();
            assert!(rep.pass(), "{notion} should pass");
        }
    }

    #[test]
    fn mms_without_shares_errors() {
        let inst = path3();
        let p = Partition::new(vec![0, 0, 1], 2).unwrap();
        let shares = ShareTable::prop_only(&inst.profile, 2);
        assert!(matches!(
            check_partition(&inst.graph, &inst.profile, &p, FairnessNotion::Mms, &shares),
            Err(Error::MissingMmsShares)
        ));
    }
}
