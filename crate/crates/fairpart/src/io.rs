//! Line-oriented text formats: instance files, partition files, audit
//! reports, and the expectation sidecars emitted by the generators.
//!
//! Instance grammar:
//! ```text
//! fairpart v1
//! agents <n>
//! parts <k>
//! sizes <n_1> ... <n_k>          (optional)
//! edge <a> <b> <w_ab> [<w_ba>]   (w_ba omitted means symmetric)
//! td {
//!   node <id> kind <leaf|introduce A|forget A|join> parent <id|none> bag <a...>
//! }
//! ```

use crate::audit::{AuditReport, FairnessNotion, Verdict, Witness};
use crate::decomposition::{NiceTreeDecomposition, NodeKind, TdNode};
use crate::error::{Error, Result};
use crate::graph::{AgentId, FriendshipGraph};
use crate::instance::Instance;
use crate::partition::{Partition, SizeVector};
use crate::utility::UtilityProfile;
use std::collections::HashMap;
use std::fmt::Write as _;

const INSTANCE_HEADER: &str = "fairpart v1";
const PARTITION_HEADER: &str = "fairpart-partition v1";
const EXPECT_HEADER: &str = "fairpart-expect v1";

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: line + 1,
        msg: msg.into(),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| perr(line, format!("expected {what}, got '{tok}'")))
}

fn parse_u64(tok: &str, line: usize, what: &str) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| perr(line, format!("expected {what}, got '{tok}'")))
}

/// Parses an instance file, establishing every type invariant.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let lines: Vec<&str> = text.lines().collect();
    let mut idx = 0;
    let mut next = |idx: &mut usize| -> Option<(usize, Vec<&str>)> {
        while *idx < lines.len() {
            let i = *idx;
            *idx += 1;
            let t = lines[i].trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((i, t.split_whitespace().collect()));
        }
        None
    };

    let (hline, head) = next(&mut idx).ok_or_else(|| perr(0, "empty file"))?;
    if head.join(" ") != INSTANCE_HEADER {
        return Err(perr(hline, format!("expected header '{INSTANCE_HEADER}'")));
    }

    let mut n: Option<usize> = None;
    let mut k: Option<usize> = None;
    let mut sizes: Option<Vec<usize>> = None;
    let mut edges: Vec<(AgentId, AgentId)> = Vec::new();
    let mut weights: Vec<(AgentId, AgentId, u64)> = Vec::new();
    let mut td: Option<NiceTreeDecomposition> = None;

    while let Some((ln, toks)) = next(&mut idx) {
        match toks[0] {
            "agents" => {
                if toks.len() != 2 {
                    return Err(perr(ln, "usage: agents <n>"));
                }
                n = Some(parse_usize(toks[1], ln, "agent count")?);
            }
            "parts" => {
                if toks.len() != 2 {
                    return Err(perr(ln, "usage: parts <k>"));
                }
                k = Some(parse_usize(toks[1], ln, "part count")?);
            }
            "sizes" => {
                let v = toks[1..]
                    .iter()
                    .map(|t| parse_usize(t, ln, "part size"))
                    .collect::<Result<Vec<_>>>()?;
                if v.is_empty() {
                    return Err(perr(ln, "usage: sizes <n_1> ... <n_k>"));
                }
                sizes = Some(v);
            }
            "edge" => {
                if toks.len() != 4 && toks.len() != 5 {
                    return Err(perr(ln, "usage: edge <a> <b> <w_ab> [<w_ba>]"));
                }
                let a = parse_usize(toks[1], ln, "agent id")?;
                let b = parse_usize(toks[2], ln, "agent id")?;
                let wab = parse_u64(toks[3], ln, "weight")?;
                let wba = if toks.len() == 5 {
                    parse_u64(toks[4], ln, "weight")?
                } else {
                    wab
                };
                edges.push((a, b));
                weights.push((a, b, wab));
                weights.push((b, a, wba));
            }
            "td" => {
                if toks != ["td", "{"] {
                    return Err(perr(ln, "usage: td {"));
                }
                let mut nodes: Vec<(usize, TdNode)> = Vec::new();
                loop {
                    let (ln2, t2) =
                        next(&mut idx).ok_or_else(|| perr(ln, "unterminated td block"))?;
                    if t2 == ["}"] {
                        break;
                    }
                    // node <id> kind <...> parent <id|none> bag <a...>
                    if t2[0] != "node" || t2.len() < 6 {
                        return Err(perr(ln2, "usage: node <id> kind <kind> parent <p> bag <a...>"));
                    }
                    let id = parse_usize(t2[1], ln2, "node id")?;
                    if t2[2] != "kind" {
                        return Err(perr(ln2, "expected 'kind'"));
                    }
                    let (kind, rest) = match t2[3] {
                        "leaf" => (NodeKind::Leaf, &t2[4..]),
                        "join" => (NodeKind::Join, &t2[4..]),
                        "introduce" => (
                            NodeKind::Introduce(parse_usize(
                                t2.get(4).ok_or_else(|| perr(ln2, "introduce needs an agent"))?,
                                ln2,
                                "agent id",
                            )?),
                            &t2[5..],
                        ),
                        "forget" => (
                            NodeKind::Forget(parse_usize(
                                t2.get(4).ok_or_else(|| perr(ln2, "forget needs an agent"))?,
                                ln2,
                                "agent id",
                            )?),
                            &t2[5..],
                        ),
                        other => return Err(perr(ln2, format!("unknown node kind '{other}'"))),
                    };
                    if rest.first() != Some(&"parent") || rest.len() < 2 {
                        return Err(perr(ln2, "expected 'parent <id|none>'"));
                    }
                    let parent = if rest[1] == "none" {
                        None
                    } else {
                        Some(parse_usize(rest[1], ln2, "parent id")?)
                    };
                    if rest.get(2) != Some(&"bag") {
                        return Err(perr(ln2, "expected 'bag <a...>'"));
                    }
                    let mut bag = rest[3..]
                        .iter()
                        .map(|t| parse_usize(t, ln2, "agent id"))
                        .collect::<Result<Vec<_>>>()?;
                    bag.sort_unstable();
                    nodes.push((id, TdNode { kind, parent, bag }));
                }
                nodes.sort_by_key(|(id, _)| *id);
                for (want, (id, _)) in nodes.iter().enumerate() {
                    if *id != want {
                        return Err(perr(ln, "td node ids must be 0..count, each exactly once"));
                    }
                }
                let plain: Vec<TdNode> = nodes.into_iter().map(|(_, nd)| nd).collect();
                let root = plain
                    .iter()
                    .position(|nd| nd.parent.is_none())
                    .ok_or_else(|| perr(ln, "td block has no root (parent none)"))?;
                td = Some(NiceTreeDecomposition { nodes: plain, root });
            }
            other => return Err(perr(ln, format!("unknown directive '{other}'"))),
        }
    }

    let n = n.ok_or_else(|| perr(lines.len(), "missing 'agents' line"))?;
    let k = k.ok_or_else(|| perr(lines.len(), "missing 'parts' line"))?;
    let graph = FriendshipGraph::new(n, edges)?;
    let profile = UtilityProfile::from_directed_weights(&graph, &weights)?;
    let sv = sizes.map(SizeVector::new).transpose()?;
    Instance::new(graph, profile, k, sv, td)
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{INSTANCE_HEADER}");
    let _ = writeln!(s, "agents {}", inst.n());
    let _ = writeln!(s, "parts {}", inst.k);
    let sizes = inst
        .sizes
        .sizes()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(s, "sizes {sizes}");
    for &(a, b) in inst.graph.edges() {
        let wab = inst.profile.weight(a, b);
        let wba = inst.profile.weight(b, a);
        if wab == wba {
            let _ = writeln!(s, "edge {a} {b} {wab}");
        } else {
            let _ = writeln!(s, "edge {a} {b} {wab} {wba}");
        }
    }
    if let Some(td) = &inst.decomposition {
        let _ = writeln!(s, "td {{");
        for (i, nd) in td.nodes.iter().enumerate() {
            let kind = match nd.kind {
                NodeKind::Leaf => "leaf".to_string(),
                NodeKind::Join => "join".to_string(),
                NodeKind::Introduce(a) => format!("introduce {a}"),
                NodeKind::Forget(a) => format!("forget {a}"),
            };
            let parent = match nd.parent {
                Some(p) => p.to_string(),
                None => "none".to_string(),
            };
            let bag = nd
                .bag
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(s, "node {i} kind {kind} parent {parent} bag {bag}");
        }
        let _ = writeln!(s, "}}");
    }
    s
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut k: Option<usize> = None;
    let mut assignments: HashMap<AgentId, usize> = HashMap::new();
    let mut saw_header = false;
    for (ln, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if !saw_header {
            if t != PARTITION_HEADER {
                return Err(perr(ln, format!("expected header '{PARTITION_HEADER}'")));
            }
            saw_header = true;
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        match toks[0] {
            "parts" => {
                if toks.len() != 2 {
                    return Err(perr(ln, "usage: parts <k>"));
                }
                k = Some(parse_usize(toks[1], ln, "part count")?);
            }
            "part" => {
                if toks.len() < 3 {
                    return Err(perr(ln, "usage: part <i> <a...>"));
                }
                let i = parse_usize(toks[1], ln, "part index")?;
                for t in &toks[2..] {
                    let a = parse_usize(t, ln, "agent id")?;
                    if assignments.insert(a, i).is_some() {
                        return Err(perr(ln, format!("agent {a} assigned twice")));
                    }
                }
            }
            other => return Err(perr(ln, format!("unknown directive '{other}'"))),
        }
    }
    let k = k.ok_or(Error::InvalidPartition("missing 'parts' line".into()))?;
    let n = assignments.len();
    let mut part_of = vec![usize::MAX; n];
    for (a, p) in assignments {
        if a >= n {
            return Err(Error::InvalidPartition(format!(
                "agent ids must be dense in [0, {n}), got {a}"
            )));
        }
        part_of[a] = p;
    }
    Partition::new(part_of, k)
}

pub fn serialize_partition(p: &Partition) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{PARTITION_HEADER}");
    let _ = writeln!(s, "parts {}", p.k());
    for (i, part) in p.parts().iter().enumerate() {
        let members = part
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(s, "part {i} {members}");
    }
    s
}

/// One line per (agent, notion): `agent <a> <NOTION> <pass|fail> [witness ...]`.
pub fn serialize_report(report: &AuditReport) -> String {
    let mut s = String::new();
    for (a, v) in report.verdicts.iter().enumerate() {
        let _ = write!(s, "agent {a} {} ", report.notion);
        match v {
            Verdict::Pass => {
                let _ = writeln!(s, "pass");
            }
            Verdict::Fail(w) => {
                let _ = write!(s, "fail ");
                match w {
                    Witness::Envy { envied, removal } => match removal {
                        Some(c) => {
                            let _ = writeln!(s, "envies {envied} remove {c}");
                        }
                        None => {
                            let _ = writeln!(s, "envies {envied}");
                        }
                    },
                    Witness::Share {
                        share_num,
                        share_den,
                        utility,
                    } => {
                        let _ = writeln!(s, "share {share_num}/{share_den} utility {utility}");
                    }
                }
            }
        }
    }
    s
}

/// Expected fairness profile emitted next to generated instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    /// A fair partition for the notion exists / does not exist.
    Exists(FairnessNotion, bool),
    /// The bundled partition passes / fails the audit for the notion.
    Audit(FairnessNotion, bool),
    /// The star center's MMS-share meets the equitable-partition threshold.
    CenterShare { sigma: u64, meets: bool },
    /// The originating packing instance is solvable.
    Packing(bool),
}

pub fn serialize_expectations(exps: &[Expectation]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{EXPECT_HEADER}");
    for e in exps {
        match e {
            Expectation::Exists(nt, yes) => {
                let _ = writeln!(s, "exists {nt} {}", if *yes { "yes" } else { "no" });
            }
            Expectation::Audit(nt, pass) => {
                let _ = writeln!(s, "audit {nt} {}", if *pass { "pass" } else { "fail" });
            }
            Expectation::CenterShare { sigma, meets } => {
                let _ = writeln!(s, "center-share sigma {sigma} {}", if *meets { "yes" } else { "no" });
            }
            Expectation::Packing(yes) => {
                let _ = writeln!(s, "packing {}", if *yes { "yes" } else { "no" });
            }
        }
    }
    s
}

pub fn parse_expectations(text: &str) -> Result<Vec<Expectation>> {
    let mut out = Vec::new();
    let mut saw_header = false;
    for (ln, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if !saw_header {
            if t != EXPECT_HEADER {
                return Err(perr(ln, format!("expected header '{EXPECT_HEADER}'")));
            }
            saw_header = true;
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        let yesno = |tok: &str| -> Result<bool> {
            match tok {
                "yes" | "pass" => Ok(true),
                "no" | "fail" => Ok(false),
                _ => Err(perr(ln, format!("expected yes/no, got '{tok}'"))),
            }
        };
        match toks[0] {
            "exists" if toks.len() == 3 => {
                out.push(Expectation::Exists(toks[1].parse()?, yesno(toks[2])?));
            }
            "audit" if toks.len() == 3 => {
                out.push(Expectation::Audit(toks[1].parse()?, yesno(toks[2])?));
            }
            "center-share" if toks.len() == 4 && toks[1] == "sigma" => {
                out.push(Expectation::CenterShare {
                    sigma: parse_u64(toks[2], ln, "sigma")?,
                    meets: yesno(toks[3])?,
                });
            }
            "packing" if toks.len() == 2 => {
                out.push(Expectation::Packing(yesno(toks[1])?));
            }
            other => return Err(perr(ln, format!("unknown expectation '{other}'"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_path3_balanced_sizes() {
        let text = "fairpart v1\nagents 3\nparts 2\nedge 0 1 1\nedge 1 2 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.k, 2);
        assert_eq!(inst.sizes.sizes(), &[2, 1]);
        assert!(inst.profile.classify().binary);
    }

    #[test]
    fn zero_weight_on_edge_named() {
        let text = "fairpart v1\nagents 2\nparts 2\nedge 0 1 0\n";
        let err = parse_instance(text).unwrap_err();
        assert!(format!("{err}").contains("zero weight on edge"));
    }

    #[test]
    fn sizes_must_sum() {
        let text = "fairpart v1\nagents 3\nparts 2\nsizes 2 2\nedge 0 1 1\n";
        let err = parse_instance(text).unwrap_err();
        assert!(format!("{err}").contains("sum"));
    }

    #[test]
    fn instance_round_trip() {
        let text = "fairpart v1\nagents 4\nparts 2\nedge 0 1 3 5\nedge 2 3 2\n";
        let inst = parse_instance(text).unwrap();
        let re = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(inst.graph, re.graph);
        assert_eq!(inst.profile, re.profile);
        assert_eq!(inst.sizes, re.sizes);
        assert_eq!(inst.k, re.k);
    }

    #[test]
    fn partition_round_trip() {
        let p = Partition::new(vec![0, 1, 0, 1], 2).unwrap();
        let re = parse_partition(&serialize_partition(&p)).unwrap();
        assert_eq!(p, re);
    }
}
