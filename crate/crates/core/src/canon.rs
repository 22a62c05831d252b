//! Canonical forms of labeled diagrams.
//!
//! The form is the lexicographically smallest upper-triangle label encoding
//! over the leaves of an individualization/refinement search tree. The tree
//! depends only on labels, never on names, so the minimum is a complete
//! invariant. Children that differ by a transposition of twin generators are
//! skipped, which keeps complete and star-like diagrams cheap.

use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::PDiagram;

/// Deterministic encoding of a diagram up to renaming.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

fn encode(d: &PDiagram, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(4 + 4 * n * n.saturating_sub(1) / 2);
    out.extend_from_slice(&(n as u32).to_be_bytes());
    for (p, &i) in order.iter().enumerate() {
        for &j in &order[p + 1..] {
            out.extend_from_slice(&d.m(i, j).unwrap_or(0).to_be_bytes());
        }
    }
    out
}

type Partition = Vec<Vec<usize>>;

fn refine(d: &PDiagram, mut cells: Partition) -> Partition {
    let n = d.len();
    loop {
        let mut cell_of = vec![0usize; n];
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let signature = |v: usize| -> Vec<(usize, u32)> {
            let mut sig: Vec<(usize, u32)> =
                d.neighbors(v).iter().map(|w| (cell_of[w], d.m(v, w).unwrap_or(0))).collect();
            sig.sort_unstable();
            sig
        };
        let mut next: Partition = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(usize, u32)>, usize)> = cell.iter().map(|&v| (signature(v), v)).collect();
            keyed.sort();
            let mut start = 0;
            for k in 1..=keyed.len() {
                if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                    next.push(keyed[start..k].iter().map(|(_, v)| *v).collect());
                    start = k;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn twin_classes(d: &PDiagram) -> Vec<usize> {
    let n = d.len();
    let mut class = vec![usize::MAX; n];
    for u in 0..n {
        if class[u] != usize::MAX {
            continue;
        }
        class[u] = u;
        for v in (u + 1)..n {
            if class[v] == usize::MAX && (0..n).all(|w| w == u || w == v || d.m(u, w) == d.m(v, w)) {
                class[v] = u;
            }
        }
    }
    class
}

struct Search<'a> {
    d: &'a PDiagram,
    twins: Vec<usize>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl Search<'_> {
    fn visit(&mut self, cells: Partition) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = encode(self.d, &order);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[t] {
            if tried.contains(&self.twins[v]) {
                continue;
            }
            tried.push(self.twins[v]);
            let mut child: Partition = Vec::with_capacity(cells.len() + 1);
            child.extend(cells[..t].iter().cloned());
            child.push(vec![v]);
            child.push(cells[t].iter().copied().filter(|&w| w != v).collect());
            child.extend(cells[t + 1..].iter().cloned());
            let refined = refine(self.d, child);
            self.visit(refined);
        }
    }
}

/// Canonical form plus one canonical ordering: `order[k]` is the generator
/// index placed at position `k`.
pub fn canonical_labeling(d: &PDiagram) -> (CanonicalForm, Vec<usize>) {
    if d.is_empty() {
        return (CanonicalForm(encode(d, &[])), Vec::new());
    }
    let mut search = Search { d, twins: twin_classes(d), best: None };
    let start = refine(d, vec![(0..d.len()).collect()]);
    search.visit(start);
    let (code, order) = search.best.expect("search reaches a leaf");
    (CanonicalForm(code), order)
}

pub fn canonical_form(d: &PDiagram) -> CanonicalForm {
    canonical_labeling(d).0
}

/// A label-preserving bijection from `d1`'s generators onto `d2`'s, if any.
pub fn isomorphism(d1: &PDiagram, d2: &PDiagram) -> Option<BTreeMap<String, String>> {
    if d1.len() != d2.len() || d1.label_multiset() != d2.label_multiset() {
        return None;
    }
    let (c1, o1) = canonical_labeling(d1);
    let (c2, o2) = canonical_labeling(d2);
    (c1 == c2).then(|| o1.iter().zip(&o2).map(|(&i, &j)| (d1.name(i).to_owned(), d2.name(j).to_owned())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn path(a: &str, b: &str, m: u32) -> PDiagram {
        PDiagram::new(&[a, b], &[(a, b, m)]).unwrap()
    }

    #[test]
    fn relabeling_invariance_on_pair() {
        let d = fixtures::pair_left();
        let map: BTreeMap<String, String> =
            [("a", "x"), ("b", "y"), ("c", "z"), ("d", "w")].iter().map(|(s, t)| (s.to_string(), t.to_string())).collect();
        assert_eq!(canonical_form(&d.renamed_by(&map).unwrap()), canonical_form(&d));
    }

    #[test]
    fn distinguishes_counterexample_pair() {
        assert_ne!(canonical_form(&fixtures::pair_left()), canonical_form(&fixtures::pair_right()));
        assert!(isomorphism(&fixtures::pair_left(), &fixtures::pair_right()).is_none());
    }

    #[test]
    fn dihedral_paths_agree() {
        assert_eq!(canonical_form(&path("a", "b", 3)), canonical_form(&path("x", "y", 3)));
        assert_ne!(canonical_form(&path("a", "b", 3)), canonical_form(&path("a", "b", 4)));
    }

    #[test]
    fn isomorphism_is_label_preserving() {
        let d = fixtures::four_forms();
        let names: Vec<String> = d.names().iter().rev().map(|n| format!("{n}'")).collect();
        let r = d.renamed(&names).unwrap();
        let map = isomorphism(&d, &r).unwrap();
        assert_eq!(d.renamed_by(&map).unwrap(), r);
    }

    #[test]
    fn symmetric_complete_diagram_is_fast() {
        let names: Vec<String> = (0..16).map(|i| format!("v{i:02}")).collect();
        let mut edges = Vec::new();
        for i in 0..16 {
            for j in (i + 1)..16 {
                edges.push((names[i].clone(), names[j].clone(), 3));
            }
        }
        let d = PDiagram::new(&names, &edges).unwrap();
        let (_, order) = canonical_labeling(&d);
        assert_eq!(order.len(), 16);
    }
}
