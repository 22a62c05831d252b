//! Labeled presentation diagrams (P-diagrams) and their structural queries.
//!
//! A [`PDiagram`] stores a Coxeter matrix over named generators. Generators
//! are kept in lexicographic order, so two diagrams compare equal exactly when
//! they have the same names and the same labels. Only finite labels are
//! stored; an absent pair means `m(s,t) = ∞`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// Character reserved for generator names produced by blow-ups.
pub const RESERVED_CHAR: char = '$';

/// Generators supported per diagram (one bit per generator in a [`VertexSet`]).
pub const MAX_GENERATORS: usize = 64;

/// Validated generator name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GeneratorName(String);

impl GeneratorName {
    /// Parses a user-supplied name. `$` is rejected.
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        check_name(&name, false).map_err(|message| Error::MalformedInput { line: 0, message })?;
        Ok(GeneratorName(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for GeneratorName {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        GeneratorName::new(s)
    }
}

impl From<GeneratorName> for String {
    fn from(n: GeneratorName) -> String {
        n.0
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn check_name(name: &str, allow_reserved: bool) -> std::result::Result<(), String> {
    if name.is_empty() {
        return Err("empty generator name".into());
    }
    if let Some(c) = name.chars().find(|c| c.is_whitespace() || c.is_control()) {
        return Err(format!("generator name {name:?} contains {c:?}"));
    }
    if name.contains('#') || name.contains(',') {
        return Err(format!("generator name {name:?} contains a reserved punctuation character"));
    }
    if !allow_reserved && name.contains(RESERVED_CHAR) {
        return Err(format!("generator name {name:?} contains the reserved character `$`"));
    }
    Ok(())
}

/// The order `m(s,t)` of a product of two distinct generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterLabel {
    Finite(u32),
    Infinite,
}

impl CoxeterLabel {
    pub fn finite(self) -> Option<u32> {
        match self {
            CoxeterLabel::Finite(m) => Some(m),
            CoxeterLabel::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, CoxeterLabel::Finite(_))
    }
}

impl From<Option<u32>> for CoxeterLabel {
    fn from(m: Option<u32>) -> Self {
        m.map_or(CoxeterLabel::Infinite, CoxeterLabel::Finite)
    }
}

impl fmt::Display for CoxeterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterLabel::Finite(m) => write!(f, "{m}"),
            CoxeterLabel::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for CoxeterLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CoxeterLabel::Finite(m) => s.serialize_u32(*m),
            CoxeterLabel::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Which edges count when splitting a subset into components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentMode {
    /// Every finite label (free-product factors).
    P,
    /// Only labels greater than 2 (direct-product factors).
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplexStatus {
    NotSimplex,
    Simplex,
    MaximalSimplex,
}

/// A Coxeter system given by its presentation diagram.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PDiagram {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    // row-major n*n, 0 = infinite (the diagonal is always 0)
    labels: Vec<u32>,
}

impl PDiagram {
    /// Builds a diagram from user-supplied names and finite edges.
    pub fn new<N, E>(generators: &[N], edges: &[(E, E, u32)]) -> Result<Self>
    where
        N: AsRef<str>,
        E: AsRef<str>,
    {
        Self::build(generators, edges, false)
    }

    /// Like [`PDiagram::new`], but accepts names containing `$`.
    pub(crate) fn new_internal<N, E>(generators: &[N], edges: &[(E, E, u32)]) -> Result<Self>
    where
        N: AsRef<str>,
        E: AsRef<str>,
    {
        Self::build(generators, edges, true)
    }

    fn build<N, E>(generators: &[N], edges: &[(E, E, u32)], allow_reserved: bool) -> Result<Self>
    where
        N: AsRef<str>,
        E: AsRef<str>,
    {
        let malformed = |message: String| Error::MalformedInput { line: 0, message };
        if generators.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(generators.len()));
        }
        let mut names: Vec<String> = Vec::with_capacity(generators.len());
        for g in generators {
            check_name(g.as_ref(), allow_reserved).map_err(malformed)?;
            names.push(g.as_ref().to_owned());
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(malformed(format!("duplicate generator `{}`", w[0])));
        }
        let index: BTreeMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let n = names.len();
        let mut labels = vec![0u32; n * n];
        for (s, t, m) in edges {
            let (s, t) = (s.as_ref(), t.as_ref());
            let i = *index.get(s).ok_or_else(|| Error::UnknownGenerator(s.to_owned()))?;
            let j = *index.get(t).ok_or_else(|| Error::UnknownGenerator(t.to_owned()))?;
            if i == j {
                return Err(Error::SamePair(s.to_owned()));
            }
            if *m < 2 {
                return Err(malformed(format!("label {m} on `{s}`-`{t}` is below 2")));
            }
            if labels[i * n + j] != 0 {
                return Err(malformed(format!("duplicate edge `{s}`-`{t}`")));
            }
            labels[i * n + j] = *m;
            labels[j * n + i] = *m;
        }
        Ok(PDiagram { names, index, labels })
    }

    /// Number of generators (the rank).
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Generator names in lexicographic order; position = index.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownGenerator(name.to_owned()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Resolves names to a vertex set.
    pub fn set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    /// Names of a vertex set, in lexicographic order.
    pub fn names_of(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    /// `m(i,j)` for indices, `None` when infinite. The diagonal reads as `None`.
    #[inline]
    pub fn m(&self, i: usize, j: usize) -> Option<u32> {
        match self.labels[i * self.len() + j] {
            0 => None,
            m => Some(m),
        }
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.labels[i * self.len() + j] != 0
    }

    pub fn label(&self, s: &str, t: &str) -> Result<CoxeterLabel> {
        let i = self.index_of(s)?;
        let j = self.index_of(t)?;
        if i == j {
            return Err(Error::SamePair(s.to_owned()));
        }
        Ok(self.m(i, j).into())
    }

    /// Finite-label neighbors of `i`.
    pub fn neighbors(&self, i: usize) -> VertexSet {
        (0..self.len()).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Neighbors of `i` in the C-diagram (labels above 2).
    pub fn c_neighbors(&self, i: usize) -> VertexSet {
        (0..self.len()).filter(|&j| self.m(i, j).is_some_and(|m| m > 2)).collect()
    }

    /// Edges `(i, j, m)` with `i < j`, ordered by `(i, j)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| ((i + 1)..n).filter_map(move |j| self.m(i, j).map(|m| (i, j, m))))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Sorted multiset of finite labels.
    pub fn label_multiset(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.edges().map(|(_, _, m)| m).collect();
        v.sort_unstable();
        v
    }

    /// Connected components of the subdiagram induced by `subset`, each
    /// listed by smallest index first.
    pub fn components_of(&self, subset: VertexSet, mode: ComponentMode) -> Vec<VertexSet> {
        let mut remaining = subset;
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while let Some(v) = frontier.first() {
                frontier.remove(v);
                let nbrs = match mode {
                    ComponentMode::P => self.neighbors(v),
                    ComponentMode::C => self.c_neighbors(v),
                };
                let fresh = nbrs.intersection(subset).difference(comp);
                comp = comp.union(fresh);
                frontier = frontier.union(fresh);
            }
            remaining = remaining.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Name-level component query.
    pub fn components<S: AsRef<str>>(&self, subset: &[S], mode: ComponentMode) -> Result<Vec<Vec<String>>> {
        let set = self.set(subset)?;
        let mut comps: Vec<Vec<String>> =
            self.components_of(set, mode).into_iter().map(|c| self.names_of(c)).collect();
        comps.sort();
        Ok(comps)
    }

    pub fn is_simplex(&self, set: VertexSet) -> bool {
        let idx: Vec<usize> = set.iter().collect();
        idx.iter().enumerate().all(|(k, &i)| idx[k + 1..].iter().all(|&j| self.adjacent(i, j)))
    }

    /// Vertices outside `set` adjacent to every member of `set`.
    pub fn common_neighbors(&self, set: VertexSet) -> VertexSet {
        set.iter()
            .fold(self.all(), |acc, i| acc.intersection(self.neighbors(i)))
            .difference(set)
    }

    pub fn simplex_status_of(&self, set: VertexSet) -> SimplexStatus {
        if !self.is_simplex(set) {
            SimplexStatus::NotSimplex
        } else if self.common_neighbors(set).is_empty() {
            SimplexStatus::MaximalSimplex
        } else {
            SimplexStatus::Simplex
        }
    }

    pub fn simplex_status<S: AsRef<str>>(&self, subset: &[S]) -> Result<SimplexStatus> {
        Ok(self.simplex_status_of(self.set(subset)?))
    }

    /// `A^⊥`: generators outside `A` with label 2 to every member of `A`.
    pub fn perp_of(&self, a: VertexSet) -> VertexSet {
        self.all()
            .difference(a)
            .iter()
            .filter(|&s| a.iter().all(|t| self.m(s, t) == Some(2)))
            .collect()
    }

    pub fn perp<S: AsRef<str>>(&self, subset: &[S]) -> Result<Vec<String>> {
        Ok(self.names_of(self.perp_of(self.set(subset)?)))
    }

    /// A diagram on the same generators with every label recomputed by `f`.
    /// `f` sees each unordered pair once, as `(i, j)` with `i < j`.
    pub(crate) fn map_labels(&self, mut f: impl FnMut(usize, usize, Option<u32>) -> Option<u32>) -> PDiagram {
        let n = self.len();
        let mut labels = vec![0u32; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let m = f(i, j, self.m(i, j)).unwrap_or(0);
                debug_assert!(m == 0 || m >= 2);
                labels[i * n + j] = m;
                labels[j * n + i] = m;
            }
        }
        PDiagram { names: self.names.clone(), index: self.index.clone(), labels }
    }

    /// Renames generators; `rename[i]` is the new name of generator `i`.
    /// Generated (`$`) names are allowed.
    pub fn renamed(&self, rename: &[String]) -> Result<PDiagram> {
        if rename.len() != self.len() {
            return Err(Error::InvalidMove("renaming has wrong length".into()));
        }
        let edges: Vec<(&str, &str, u32)> =
            self.edges().map(|(i, j, m)| (rename[i].as_str(), rename[j].as_str(), m)).collect();
        PDiagram::new_internal(rename, &edges)
    }

    /// Applies a name-to-name bijection.
    pub fn renamed_by(&self, map: &BTreeMap<String, String>) -> Result<PDiagram> {
        let rename: Vec<String> = self
            .names
            .iter()
            .map(|n| map.get(n).cloned().ok_or_else(|| Error::UnknownGenerator(n.clone())))
            .collect::<Result<_>>()?;
        self.renamed(&rename)
    }

    /// Edges as name triples with `s < t`, sorted.
    pub fn named_edges(&self) -> Vec<(String, String, u32)> {
        self.edges().map(|(i, j, m)| (self.names[i].clone(), self.names[j].clone(), m)).collect()
    }
}

impl fmt::Debug for PDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PDiagram {{ gens: {:?}, edges: [", self.names)?;
        for (k, (i, j, m)) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}-{}:{}", self.names[i], self.names[j], m)?;
        }
        f.write_str("] }")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn labels_on_fixtures() {
        let f3 = fixtures::pair_left();
        assert_eq!(f3.label("b", "c").unwrap(), CoxeterLabel::Finite(5));
        assert_eq!(f3.label("c", "d").unwrap(), CoxeterLabel::Infinite);
        assert_eq!(fixtures::star().label("a", "b").unwrap(), CoxeterLabel::Finite(2));
        assert_eq!(f3.label("a", "a"), Err(Error::SamePair("a".into())));
        assert!(matches!(f3.label("a", "zz"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(PDiagram::new(&["a", "a"], &[] as &[(&str, &str, u32)]), Err(Error::MalformedInput { .. })));
        assert!(matches!(PDiagram::new(&["a", "b"], &[("a", "b", 1)]), Err(Error::MalformedInput { .. })));
        assert!(matches!(
            PDiagram::new(&["a", "b"], &[("a", "b", 3), ("b", "a", 3)]),
            Err(Error::MalformedInput { .. })
        ));
        assert!(matches!(PDiagram::new(&["a$d"], &[] as &[(&str, &str, u32)]), Err(Error::MalformedInput { .. })));
        assert!(matches!(PDiagram::new(&["a"], &[("a", "q", 3)]), Err(Error::UnknownGenerator(_))));
        assert!(PDiagram::new_internal(&["a$d"], &[] as &[(&str, &str, u32)]).is_ok());
    }

    #[test]
    fn components_both_modes() {
        let f3 = fixtures::pair_left();
        assert_eq!(f3.components(&["a", "b", "c"], ComponentMode::C).unwrap(), vec![vec!["a", "b", "c"]]);
        let f1 = fixtures::star();
        assert_eq!(
            f1.components(&["a", "b", "c", "d"], ComponentMode::C).unwrap(),
            vec![vec!["a".to_string(), "b".into(), "c".into()], vec!["d".to_string()]]
        );
        assert!(f1.components(&[] as &[&str], ComponentMode::P).unwrap().is_empty());
        assert_eq!(f1.components(&["c", "f"], ComponentMode::P).unwrap().len(), 2);
    }

    #[test]
    fn simplex_status_examples() {
        let f3 = fixtures::pair_left();
        assert_eq!(f3.simplex_status(&["a", "b", "c"]).unwrap(), SimplexStatus::MaximalSimplex);
        assert_eq!(f3.simplex_status(&["c", "d"]).unwrap(), SimplexStatus::NotSimplex);
        assert_eq!(fixtures::star().simplex_status(&["a", "b", "c", "d"]).unwrap(), SimplexStatus::MaximalSimplex);
        assert_eq!(f3.simplex_status(&["a"]).unwrap(), SimplexStatus::Simplex);
        assert_eq!(f3.simplex_status(&[] as &[&str]).unwrap(), SimplexStatus::Simplex);
    }

    #[test]
    fn perp_examples() {
        assert_eq!(fixtures::star().perp(&["a", "b", "c"]).unwrap(), vec!["d"]);
        assert!(fixtures::pair_left().perp(&["a", "b", "c"]).unwrap().is_empty());
        assert_eq!(fixtures::pair_left().perp(&[] as &[&str]).unwrap().len(), 4);
    }
}
