//! Chordality with witnesses, and minimal `(c,f)`-separators.
//!
//! All graphs here are the underlying graph of the P-diagram: one edge per
//! finite label.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::diagram::{ComponentMode, PDiagram};
use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// Outcome of a chordality test, with a certificate either way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordalityWitness {
    pub chordal: bool,
    /// Perfect elimination ordering (generator names) when chordal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peo: Option<Vec<String>>,
    /// A chordless cycle of length at least four when not chordal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chordless_cycle: Option<Vec<String>>,
}

/// Maximum cardinality search; the reverse visit order is a PEO iff the graph is chordal.
fn mcs_order(d: &PDiagram) -> Vec<usize> {
    let n = d.len();
    let mut weight = vec![0usize; n];
    let mut numbered = VertexSet::EMPTY;
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = d
            .all()
            .difference(numbered)
            .iter()
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unnumbered vertex remains");
        numbered.insert(v);
        visit.push(v);
        for w in d.neighbors(v).difference(numbered) {
            weight[w] += 1;
        }
    }
    visit.reverse();
    visit
}

/// Checks that every vertex's later neighbors form a clique.
pub(crate) fn is_peo(d: &PDiagram, order: &[usize]) -> bool {
    let mut pos = vec![0usize; d.len()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    order.iter().all(|&v| {
        let later: VertexSet = d.neighbors(v).iter().filter(|&w| pos[w] > pos[v]).collect();
        d.is_simplex(later)
    })
}

fn shortest_path_within(d: &PDiagram, allowed: VertexSet, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; d.len()];
    let mut seen = VertexSet::singleton(from);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in d.neighbors(v).intersection(allowed).difference(seen) {
            seen.insert(w);
            prev[w] = v;
            queue.push_back(w);
        }
    }
    None
}

/// Finds a chordless cycle of length ≥ 4, if one exists.
fn chordless_cycle(d: &PDiagram) -> Option<Vec<usize>> {
    for v in 0..d.len() {
        let nv = d.neighbors(v);
        for x in nv {
            for y in nv.iter().filter(|&y| y > x && !d.adjacent(x, y)) {
                let allowed = d.all().difference(nv.with(v)).with(x).with(y);
                if let Some(path) = shortest_path_within(d, allowed, x, y) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

pub(crate) fn is_chordal(d: &PDiagram) -> bool {
    is_peo(d, &mcs_order(d))
}

pub fn chordality(d: &PDiagram) -> ChordalityWitness {
    let order = mcs_order(d);
    if is_peo(d, &order) {
        ChordalityWitness {
            chordal: true,
            peo: Some(order.iter().map(|&v| d.name(v).to_owned()).collect()),
            chordless_cycle: None,
        }
    } else {
        let cycle = chordless_cycle(d).expect("a graph without a PEO has a chordless cycle");
        ChordalityWitness {
            chordal: false,
            peo: None,
            chordless_cycle: Some(cycle.iter().map(|&v| d.name(v).to_owned()).collect()),
        }
    }
}

/// Component of `G - removed` containing `v`.
pub(crate) fn component_containing(d: &PDiagram, removed: VertexSet, v: usize) -> VertexSet {
    d.components_of(d.all().difference(removed), ComponentMode::P)
        .into_iter()
        .find(|c| c.contains(v))
        .unwrap_or(VertexSet::EMPTY)
}

pub(crate) fn neighborhood(d: &PDiagram, set: VertexSet) -> VertexSet {
    set.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(d.neighbors(v))).difference(set)
}

fn check_pair(d: &PDiagram, c: usize, f: usize) -> Result<()> {
    if c == f {
        return Err(Error::SamePair(d.name(c).to_owned()));
    }
    if d.adjacent(c, f) {
        return Err(Error::AdjacentPair(d.name(c).to_owned(), d.name(f).to_owned()));
    }
    Ok(())
}

/// `B` separates `c` from `f`, and every member of `B` has a neighbor in both
/// the component of `c` and the component of `f`.
pub fn is_minimal_separator_of(d: &PDiagram, b: VertexSet, c: usize, f: usize) -> bool {
    if b.contains(c) || b.contains(f) {
        return false;
    }
    let kc = component_containing(d, b, c);
    if kc.contains(f) {
        return false;
    }
    let kf = component_containing(d, b, f);
    b.iter().all(|x| {
        let nx = d.neighbors(x);
        !nx.is_disjoint(kc) && !nx.is_disjoint(kf)
    })
}

pub fn is_minimal_separator<S: AsRef<str>>(d: &PDiagram, b: &[S], c: &str, f: &str) -> Result<bool> {
    let set = d.set(b)?;
    Ok(is_minimal_separator_of(d, set, d.index_of(c)?, d.index_of(f)?))
}

/// Every minimal separator of the graph. Seeds are the neighborhoods of the
/// components of `G - N[v]`; each separator `S` then generates the
/// neighborhoods of the components of `G - (S ∪ N(x))` for `x ∈ S`.
pub(crate) fn all_minimal_separators(d: &PDiagram) -> BTreeSet<VertexSet> {
    let close_sets = |removed: VertexSet| -> Vec<VertexSet> {
        d.components_of(d.all().difference(removed), ComponentMode::P)
            .into_iter()
            .map(|comp| neighborhood(d, comp))
            .filter(|s| !s.is_empty())
            .collect()
    };
    let mut found: BTreeSet<VertexSet> = BTreeSet::new();
    let mut queue: Vec<VertexSet> = Vec::new();
    for v in 0..d.len() {
        for s in close_sets(d.neighbors(v).with(v)) {
            if found.insert(s) {
                queue.push(s);
            }
        }
    }
    while let Some(s) = queue.pop() {
        for x in s {
            for t in close_sets(s.union(d.neighbors(x))) {
                if found.insert(t) {
                    queue.push(t);
                }
            }
        }
    }
    found
}

/// All inclusion-minimal `(c,f)`-separators, in ascending bit order.
pub fn minimal_separators_between_of(d: &PDiagram, c: usize, f: usize) -> Result<Vec<VertexSet>> {
    check_pair(d, c, f)?;
    if !component_containing(d, VertexSet::EMPTY, c).contains(f) {
        return Ok(vec![VertexSet::EMPTY]);
    }
    Ok(all_minimal_separators(d)
        .into_iter()
        .filter(|&s| is_minimal_separator_of(d, s, c, f))
        .collect())
}

/// Name-level query; each separator is sorted, and the list is sorted.
pub fn minimal_separators_between(d: &PDiagram, c: &str, f: &str) -> Result<Vec<Vec<String>>> {
    let seps = minimal_separators_between_of(d, d.index_of(c)?, d.index_of(f)?)?;
    let mut out: Vec<Vec<String>> = seps.into_iter().map(|s| d.names_of(s)).collect();
    out.sort();
    Ok(out)
}

/// The unique minimal `(c,f)`-separator contained in `N(c)`.
pub fn close_separator_of(d: &PDiagram, c: usize, f: usize) -> Result<VertexSet> {
    check_pair(d, c, f)?;
    let nc = d.neighbors(c);
    let kf = component_containing(d, nc.with(c), f);
    Ok(nc.iter().filter(|&x| !d.neighbors(x).is_disjoint(kf)).collect())
}

pub fn close_separator(d: &PDiagram, c: &str, f: &str) -> Result<Vec<String>> {
    Ok(d.names_of(close_separator_of(d, d.index_of(c)?, d.index_of(f)?)?))
}
