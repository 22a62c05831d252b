//! Bad 5-edges, bad and gross separators, star decompositions and the
//! cross-eyed diagram twist.
//!
//! A head of the edge `{x,y}` is a maximal irreducible simplex `A = {a,b,c}`
//! of type G_3 containing it. Its eyes `a,b` commute and its bad focus `c` is
//! the middle of the 3-5 chain.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::chordal::{close_separator_of, is_chordal};
use crate::diagram::{ComponentMode, PDiagram};
use crate::error::{Error, Result};
use crate::spherical::{classify_irreducible_of, FiniteType};
use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Head {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Head {
    fn set(self) -> VertexSet {
        VertexSet::singleton(self.a).with(self.b).with(self.c)
    }

    fn eyes(self) -> VertexSet {
        VertexSet::singleton(self.a).with(self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Arm {
    pub head: Head,
    pub members: VertexSet,
    pub components: Vec<VertexSet>,
    pub foci: VertexSet,
}

fn is_g_type(t: Option<FiniteType>) -> bool {
    matches!(t, Some(FiniteType::G3 | FiniteType::G4))
}

/// Every irreducible simplex properly containing `{x,y}` is of type G_3 or G_4.
pub(crate) fn is_candidate_bad_edge(d: &PDiagram, x: usize, y: usize) -> bool {
    if x == y || d.m(x, y) != Some(5) {
        return false;
    }
    let start = VertexSet::singleton(x).with(y);
    let mut seen: BTreeSet<VertexSet> = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(set) = stack.pop() {
        let touching = set.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(d.c_neighbors(v)));
        for w in d.common_neighbors(set).intersection(touching) {
            let bigger = set.with(w);
            if !seen.insert(bigger) {
                continue;
            }
            if !is_g_type(classify_irreducible_of(d, bigger).ok().flatten()) {
                return false;
            }
            stack.push(bigger);
        }
    }
    true
}

pub(crate) fn candidate_bad_edges_of(d: &PDiagram) -> Vec<(usize, usize)> {
    d.edges().filter(|&(x, y, m)| m == 5 && is_candidate_bad_edge(d, x, y)).map(|(x, y, _)| (x, y)).collect()
}

/// Qualifying 5-edges as name pairs, sorted.
pub fn candidate_bad_edges(d: &PDiagram) -> Vec<(String, String)> {
    candidate_bad_edges_of(d).into_iter().map(|(x, y)| (d.name(x).to_owned(), d.name(y).to_owned())).collect()
}

pub(crate) fn heads_of(d: &PDiagram, x: usize, y: usize) -> Vec<Head> {
    let edge = VertexSet::singleton(x).with(y);
    let mut heads = Vec::new();
    for v in d.common_neighbors(edge) {
        let set = edge.with(v);
        if classify_irreducible_of(d, set).ok().flatten() != Some(FiniteType::G3) {
            continue;
        }
        let maximal = d.common_neighbors(set).iter().all(|w| set.iter().all(|s| d.m(s, w) == Some(2)));
        if !maximal {
            continue;
        }
        let (a, b, c) = if d.m(x, y) == Some(5) && d.m(v, x) == Some(3) { (v, y, x) } else { (v, x, y) };
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        heads.push(Head { a, b, c });
    }
    heads.sort();
    heads
}

/// Two distinct qualifying 5-edges whose heads share a vertex.
pub fn has_shared_head_vertex(d: &PDiagram) -> bool {
    let spans: Vec<VertexSet> = candidate_bad_edges_of(d)
        .into_iter()
        .map(|(x, y)| heads_of(d, x, y).into_iter().fold(VertexSet::EMPTY, |acc, h| acc.union(h.set())))
        .collect();
    spans.iter().enumerate().any(|(i, s)| spans[i + 1..].iter().any(|t| !s.is_disjoint(*t)))
}

fn require_bad_edge(d: &PDiagram, x: usize, y: usize) -> Result<()> {
    if !is_candidate_bad_edge(d, x, y) {
        return Err(Error::NotABadEdge(d.name(x).to_owned(), d.name(y).to_owned()));
    }
    if !is_chordal(d) {
        return Err(Error::NotChordal);
    }
    Ok(())
}

/// Components `K` of `G - members` away from `c` that every member touches.
fn focus_components(d: &PDiagram, members: VertexSet, c: usize) -> Vec<VertexSet> {
    d.components_of(d.all().difference(members), ComponentMode::P)
        .into_iter()
        .filter(|k| !k.contains(c) && members.iter().all(|s| !d.neighbors(s).is_disjoint(*k)))
        .collect()
}

pub(crate) fn bad_separators_of(d: &PDiagram, x: usize, y: usize) -> Result<Vec<Arm>> {
    require_bad_edge(d, x, y)?;
    let mut arms = Vec::new();
    for head in heads_of(d, x, y) {
        let a_set = head.set();
        let perp = d.perp_of(a_set);
        let gross = head.eyes().union(perp);
        let mut found: BTreeSet<VertexSet> = BTreeSet::new();
        for w in d.all().difference(a_set.union(perp)) {
            if !d.is_simplex(head.eyes().with(w)) {
                continue;
            }
            let members = close_separator_of(d, head.c, w)
                .map_err(|e| Error::InvariantViolation(format!("bad focus adjacent to a candidate focus: {e}")))?;
            if !head.eyes().is_subset(members) || !members.is_subset(gross) {
                return Err(Error::InvariantViolation(format!(
                    "separator {:?} not between the eyes and the gross separator",
                    d.names_of(members)
                )));
            }
            found.insert(members);
        }
        for members in found {
            let components = focus_components(d, members, head.c);
            let foci = components.iter().fold(VertexSet::EMPTY, |acc, k| acc.union(*k));
            arms.push(Arm { head, members, components, foci });
        }
    }
    arms.sort_by(|p, q| (p.head, d.names_of(p.members)).cmp(&(q.head, d.names_of(q.members))));
    Ok(arms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadSeparator {
    pub members: Vec<String>,
    pub head: Vec<String>,
    pub eyes: [String; 2],
    pub bad_focus: String,
    pub foci: Vec<String>,
    pub focus_components: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrossSeparator {
    pub members: Vec<String>,
    pub head: Vec<String>,
    pub eyes: [String; 2],
    pub bad_focus: String,
    pub foci: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarArm {
    pub separator: Vec<String>,
    pub foci: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarDecomposition {
    pub center: Vec<String>,
    pub arms: Vec<StarArm>,
}

fn edge_indices(d: &PDiagram, x: &str, y: &str) -> Result<(usize, usize)> {
    Ok((d.index_of(x)?, d.index_of(y)?))
}

fn eye_names(d: &PDiagram, h: Head) -> [String; 2] {
    [d.name(h.a).to_owned(), d.name(h.b).to_owned()]
}

pub fn bad_separators(d: &PDiagram, x: &str, y: &str) -> Result<Vec<BadSeparator>> {
    let (x, y) = edge_indices(d, x, y)?;
    Ok(bad_separators_of(d, x, y)?
        .into_iter()
        .map(|arm| BadSeparator {
            members: d.names_of(arm.members),
            head: d.names_of(arm.head.set()),
            eyes: eye_names(d, arm.head),
            bad_focus: d.name(arm.head.c).to_owned(),
            foci: d.names_of(arm.foci),
            focus_components: arm.components.iter().map(|&k| d.names_of(k)).collect(),
        })
        .collect())
}

/// `(head, D, foci)` for every head with a nonempty focus set.
pub(crate) fn gross_separators_of(d: &PDiagram, x: usize, y: usize) -> Result<Vec<(Head, VertexSet, VertexSet)>> {
    require_bad_edge(d, x, y)?;
    let mut out = Vec::new();
    for head in heads_of(d, x, y) {
        let members = head.eyes().union(d.perp_of(head.set()));
        let (na, nb) = (d.neighbors(head.a), d.neighbors(head.b));
        let foci = d
            .components_of(d.all().difference(members), ComponentMode::P)
            .into_iter()
            .filter(|k| !k.contains(head.c) && !na.is_disjoint(*k) && !nb.is_disjoint(*k))
            .fold(VertexSet::EMPTY, |acc, k| acc.union(k));
        if !foci.is_empty() {
            out.push((head, members, foci));
        }
    }
    Ok(out)
}

pub fn gross_separators(d: &PDiagram, x: &str, y: &str) -> Result<Vec<GrossSeparator>> {
    let (x, y) = edge_indices(d, x, y)?;
    Ok(gross_separators_of(d, x, y)?
        .into_iter()
        .map(|(head, members, foci)| GrossSeparator {
            members: d.names_of(members),
            head: d.names_of(head.set()),
            eyes: eye_names(d, head),
            bad_focus: d.name(head.c).to_owned(),
            foci: d.names_of(foci),
        })
        .collect())
}

/// The induced diagram on `keep`.
pub(crate) fn induced(d: &PDiagram, keep: VertexSet) -> PDiagram {
    let names = d.names_of(keep);
    let edges: Vec<(String, String, u32)> = d
        .edges()
        .filter(|&(i, j, _)| keep.contains(i) && keep.contains(j))
        .map(|(i, j, m)| (d.name(i).to_owned(), d.name(j).to_owned(), m))
        .collect();
    PDiagram::new_internal(&names, &edges).expect("induced diagram is well formed")
}

pub(crate) fn star_decomposition_of(d: &PDiagram, x: usize, y: usize) -> Result<(VertexSet, Vec<Arm>)> {
    let arms = bad_separators_of(d, x, y)?;
    let mut covered = VertexSet::EMPTY;
    for arm in &arms {
        if !arm.foci.is_disjoint(covered) {
            // Arms whose foci coincide are the same arm seen from another head.
            if arms.iter().any(|o| o.foci == arm.foci && o.members == arm.members && o.head != arm.head) {
                continue;
            }
            return Err(Error::InvariantViolation("focus sets of distinct arms overlap".into()));
        }
        let reach = arm.foci.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(d.neighbors(v)));
        if !reach.is_disjoint(covered) {
            return Err(Error::InvariantViolation("focus sets of distinct arms are adjacent".into()));
        }
        covered = covered.union(arm.foci);
    }
    let center = d.all().difference(covered);
    if !center.contains(x) || !center.contains(y) {
        return Err(Error::InvariantViolation("the bad edge left the center".into()));
    }
    let sub = induced(d, center);
    let (sx, sy) = (sub.index_of(d.name(x))?, sub.index_of(d.name(y))?);
    if !bad_separators_of(&sub, sx, sy)?.is_empty() {
        return Err(Error::InvariantViolation("the center still has a bad separator".into()));
    }
    Ok((center, arms))
}

pub fn star_decomposition(d: &PDiagram, x: &str, y: &str) -> Result<StarDecomposition> {
    let (x, y) = edge_indices(d, x, y)?;
    let (center, arms) = star_decomposition_of(d, x, y)?;
    Ok(StarDecomposition {
        center: d.names_of(center),
        arms: arms.iter().map(|a| StarArm { separator: d.names_of(a.members), foci: d.names_of(a.foci) }).collect(),
    })
}

pub(crate) fn cross_eyed_twist_of(d: &PDiagram, x: usize, y: usize) -> Result<PDiagram> {
    let (_, arms) = star_decomposition_of(d, x, y)?;
    if arms.is_empty() {
        return Err(Error::NoBadSeparators(d.name(x).to_owned(), d.name(y).to_owned()));
    }
    let mut out = d.clone();
    let mut done: Vec<(usize, usize, VertexSet)> = Vec::new();
    for arm in &arms {
        let key = (arm.head.a, arm.head.b, arm.foci);
        if done.contains(&key) {
            continue;
        }
        done.push(key);
        let (a, b, foci) = key;
        let cur = out.clone();
        out = cur.map_labels(|i, j, m| {
            let (s, t) = if foci.contains(j) { (i, j) } else if foci.contains(i) { (j, i) } else { return m };
            if s == a {
                cur.m(b, t)
            } else if s == b {
                cur.m(a, t)
            } else {
                m
            }
        });
    }
    if out.label_multiset() != d.label_multiset() || !is_chordal(&out) {
        return Err(Error::InvariantViolation("cross-eyed twist broke a diagram invariant".into()));
    }
    Ok(out)
}

/// Swaps the eyes on every edge running into each arm's foci.
pub fn cross_eyed_twist(d: &PDiagram, x: &str, y: &str) -> Result<PDiagram> {
    let (x, y) = edge_indices(d, x, y)?;
    cross_eyed_twist_of(d, x, y)
}
