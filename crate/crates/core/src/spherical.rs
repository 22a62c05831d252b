//! Finite irreducible types, longest-element conjugation, and bases.
//!
//! Type names follow Coxeter's convention, which swaps B and C relative to
//! Bourbaki:
//!
//! | here      | Bourbaki | C-diagram                                  |
//! |-----------|----------|--------------------------------------------|
//! | `A_n`     | A_n      | path, all labels 3                         |
//! | `B_n`     | D_n      | Y shape with two arms of length one        |
//! | `C_n`     | B_n      | path, labels 3 except a 4 at one end       |
//! | `D2(k)`   | I_2(k)   | one edge labeled k (k ≥ 5)                 |
//! | `E_6..8`  | E_6..8   | Y shape with arms (1,2,2), (1,2,3), (1,2,4)|
//! | `F_4`     | F_4      | path 3,4,3                                 |
//! | `G_3`     | H_3      | path 3,5                                   |
//! | `G_4`     | H_4      | path 3,3,5                                 |
//!
//! `B_3`, `D2(3)` and `D2(4)` are reported as `A_3`, `A_2` and `C_2`.

use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::diagram::{ComponentMode, PDiagram};
use crate::error::{Error, Result};
use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteType {
    A(usize),
    B(usize),
    C(usize),
    D2(u32),
    E6,
    E7,
    E8,
    F4,
    G3,
    G4,
}

impl FiniteType {
    pub fn rank(self) -> usize {
        match self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::C(n) => n,
            FiniteType::D2(_) => 2,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 | FiniteType::G4 => 4,
            FiniteType::G3 => 3,
        }
    }

    /// Order of the group, saturating at `u128::MAX`.
    pub fn group_order(self) -> u128 {
        fn factorial(n: usize) -> u128 {
            (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
        }
        fn pow2(n: usize) -> u128 {
            if n >= 128 {
                u128::MAX
            } else {
                1u128 << n
            }
        }
        match self {
            FiniteType::A(n) => factorial(n + 1),
            FiniteType::B(n) => pow2(n - 1).saturating_mul(factorial(n)),
            FiniteType::C(n) => pow2(n).saturating_mul(factorial(n)),
            FiniteType::D2(k) => 2 * u128::from(k),
            FiniteType::E6 => 51_840,
            FiniteType::E7 => 2_903_040,
            FiniteType::E8 => 696_729_600,
            FiniteType::F4 => 1_152,
            FiniteType::G3 => 120,
            FiniteType::G4 => 14_400,
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A_{n}"),
            FiniteType::B(n) => write!(f, "B_{n}"),
            FiniteType::C(n) => write!(f, "C_{n}"),
            FiniteType::D2(k) => write!(f, "D2({k})"),
            FiniteType::E6 => f.write_str("E_6"),
            FiniteType::E7 => f.write_str("E_7"),
            FiniteType::E8 => f.write_str("E_8"),
            FiniteType::F4 => f.write_str("F_4"),
            FiniteType::G3 => f.write_str("G_3"),
            FiniteType::G4 => f.write_str("G_4"),
        }
    }
}

impl Serialize for FiniteType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A recognized irreducible spherical subset together with the vertex layout
/// needed to read off its diagram symmetries.
#[derive(Clone, Debug)]
pub(crate) enum Shape {
    /// Path in C-diagram order.
    Path(FiniteType, Vec<usize>),
    /// Arms listed shortest first, each from the branch outward.
    Fork(FiniteType, Vec<Vec<usize>>),
}

impl Shape {
    pub(crate) fn finite_type(&self) -> FiniteType {
        match self {
            Shape::Path(t, _) | Shape::Fork(t, _) => *t,
        }
    }
}

fn classify_path(labels: &[u32]) -> Option<FiniteType> {
    let n = labels.len() + 1;
    let matches = |pattern: &[u32]| labels == pattern || labels.iter().rev().eq(pattern.iter());
    if n == 2 {
        return Some(match labels[0] {
            3 => FiniteType::A(2),
            4 => FiniteType::C(2),
            k => FiniteType::D2(k),
        });
    }
    if labels.iter().all(|&m| m == 3) {
        return Some(FiniteType::A(n));
    }
    let mut c_pattern = vec![3u32; n - 1];
    c_pattern[n - 2] = 4;
    if matches(&c_pattern) {
        return Some(FiniteType::C(n));
    }
    match n {
        3 if matches(&[3, 5]) => Some(FiniteType::G3),
        4 if matches(&[3, 4, 3]) => Some(FiniteType::F4),
        4 if matches(&[3, 3, 5]) => Some(FiniteType::G4),
        _ => None,
    }
}

/// Structural recognition of a C-connected subset. `None` means not spherical.
pub(crate) fn shape_of(d: &PDiagram, set: VertexSet) -> Result<Option<Shape>> {
    if set.is_empty() || d.components_of(set, ComponentMode::C).len() != 1 {
        return Err(Error::NotIrreducible);
    }
    if !d.is_simplex(set) {
        return Ok(None);
    }
    let n = set.len();
    if n == 1 {
        return Ok(Some(Shape::Path(FiniteType::A(1), vec![set.first().unwrap()])));
    }
    let nbrs = |v: usize| d.c_neighbors(v).intersection(set);
    let c_edges: usize = set.iter().map(|v| nbrs(v).len()).sum::<usize>() / 2;
    if c_edges != n - 1 {
        return Ok(None);
    }
    let degree = |v: usize| nbrs(v).len();
    let label = |u: usize, v: usize| d.m(u, v).expect("simplex");
    let walk = |from: usize, first: usize| -> Vec<usize> {
        let mut arm = vec![first];
        let (mut prev, mut cur) = (from, first);
        while let Some(next) = nbrs(cur).without(prev).first() {
            arm.push(next);
            prev = cur;
            cur = next;
        }
        arm
    };
    let branch: Vec<usize> = set.iter().filter(|&v| degree(v) >= 3).collect();
    if branch.is_empty() {
        let start = set.iter().find(|&v| degree(v) == 1).expect("a path has an endpoint");
        let mut order = vec![start];
        order.extend(walk(start, nbrs(start).first().unwrap()));
        let labels: Vec<u32> = order.windows(2).map(|w| label(w[0], w[1])).collect();
        return Ok(classify_path(&labels).map(|t| Shape::Path(t, order)));
    }
    if branch.len() > 1 || degree(branch[0]) != 3 {
        return Ok(None);
    }
    let center = branch[0];
    let mut arms: Vec<Vec<usize>> = nbrs(center).iter().map(|first| walk(center, first)).collect();
    arms.sort_by_key(|a| a.len());
    if set.iter().flat_map(|u| nbrs(u).iter().map(move |v| (u, v))).any(|(u, v)| label(u, v) != 3) {
        return Ok(None);
    }
    let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
    let t = match lens[..] {
        [1, 1, _] => FiniteType::B(n),
        [1, 2, 2] => FiniteType::E6,
        [1, 2, 3] => FiniteType::E7,
        [1, 2, 4] => FiniteType::E8,
        _ => return Ok(None),
    };
    Ok(Some(Shape::Fork(t, arms)))
}

/// Type of an irreducible subset, or `None` when it generates an infinite group.
pub fn classify_irreducible_of(d: &PDiagram, set: VertexSet) -> Result<Option<FiniteType>> {
    Ok(shape_of(d, set)?.map(|s| s.finite_type()))
}

pub fn classify_irreducible<S: AsRef<str>>(d: &PDiagram, subset: &[S]) -> Result<Option<FiniteType>> {
    classify_irreducible_of(d, d.set(subset)?)
}

pub fn is_spherical_of(d: &PDiagram, set: VertexSet) -> bool {
    d.is_simplex(set)
        && d.components_of(set, ComponentMode::C)
            .into_iter()
            .all(|c| matches!(shape_of(d, c), Ok(Some(_))))
}

pub fn is_spherical<S: AsRef<str>>(d: &PDiagram, subset: &[S]) -> Result<bool> {
    Ok(is_spherical_of(d, d.set(subset)?))
}

/// `s ↦ ℓsℓ⁻¹` on one irreducible spherical component, as `(from, to)` pairs
/// for the generators it moves.
pub(crate) fn component_conjugation(shape: &Shape) -> Vec<(usize, usize)> {
    match shape {
        Shape::Path(FiniteType::A(n), order) if *n >= 2 => {
            order.iter().zip(order.iter().rev()).map(|(&s, &t)| (s, t)).filter(|(s, t)| s != t).collect()
        }
        Shape::Path(FiniteType::D2(k), order) if k % 2 == 1 => vec![(order[0], order[1]), (order[1], order[0])],
        Shape::Fork(FiniteType::B(n), arms) if n % 2 == 1 => {
            let (s, t) = (arms[0][0], arms[1][0]);
            vec![(s, t), (t, s)]
        }
        Shape::Fork(FiniteType::E6, arms) => arms[1]
            .iter()
            .zip(&arms[2])
            .flat_map(|(&s, &t)| [(s, t), (t, s)])
            .collect(),
        _ => Vec::new(),
    }
}

/// Conjugation by the longest element of `⟨set⟩` as a permutation of all
/// generator indices (identity outside `set`).
pub fn longest_conjugation_of(d: &PDiagram, set: VertexSet) -> Result<Vec<usize>> {
    if !d.is_simplex(set) {
        return Err(Error::NotSpherical);
    }
    let mut perm: Vec<usize> = (0..d.len()).collect();
    for comp in d.components_of(set, ComponentMode::C) {
        let shape = shape_of(d, comp)?.ok_or(Error::NotSpherical)?;
        for (s, t) in component_conjugation(&shape) {
            perm[s] = t;
        }
    }
    Ok(perm)
}

/// Name-level longest conjugation: pairs `(s, ℓsℓ⁻¹)` for every `s` in the subset.
pub fn longest_conjugation<S: AsRef<str>>(d: &PDiagram, subset: &[S]) -> Result<Vec<(String, String)>> {
    let set = d.set(subset)?;
    let perm = longest_conjugation_of(d, set)?;
    Ok(set.iter().map(|s| (d.name(s).to_owned(), d.name(perm[s]).to_owned())).collect())
}

/// A maximal irreducible spherical subset of size at least two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Base {
    pub members: Vec<String>,
    #[serde(rename = "type")]
    pub finite_type: FiniteType,
}

impl Base {
    pub fn set(&self, d: &PDiagram) -> Result<VertexSet> {
        d.set(&self.members)
    }
}

fn spherical_extensions(d: &PDiagram, set: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
    let touching = set.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(d.c_neighbors(v)));
    d.common_neighbors(set)
        .intersection(touching)
        .iter()
        .map(move |v| set.with(v))
        .filter(move |&s| matches!(shape_of(d, s), Ok(Some(_))))
}

/// Bases as vertex sets, sorted by member names.
pub(crate) fn base_sets(d: &PDiagram) -> Vec<(VertexSet, FiniteType)> {
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut stack: Vec<VertexSet> = Vec::new();
    for (i, j, m) in d.edges() {
        if m > 2 {
            let s = VertexSet::singleton(i).with(j);
            if seen.insert(s) {
                stack.push(s);
            }
        }
    }
    let mut maximal = Vec::new();
    while let Some(s) = stack.pop() {
        let mut extended = false;
        for t in spherical_extensions(d, s) {
            extended = true;
            if seen.insert(t) {
                stack.push(t);
            }
        }
        if !extended {
            let t = classify_irreducible_of(d, s).ok().flatten().expect("grown sets are spherical");
            maximal.push((s, t));
        }
    }
    maximal.sort_by_key(|(s, _)| d.names_of(*s));
    maximal
}

pub fn bases(d: &PDiagram) -> Vec<Base> {
    base_sets(d)
        .into_iter()
        .map(|(s, t)| Base { members: d.names_of(s), finite_type: t })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn chain(labels: &[u32]) -> PDiagram {
        let names: Vec<String> = (0..=labels.len()).map(|i| format!("s{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..names.len() {
            for j in (i + 1)..names.len() {
                let m = if j == i + 1 { labels[i] } else { 2 };
                edges.push((names[i].clone(), names[j].clone(), m));
            }
        }
        PDiagram::new(&names, &edges).unwrap()
    }

    fn whole(d: &PDiagram) -> Option<FiniteType> {
        classify_irreducible_of(d, d.all()).unwrap()
    }

    #[test]
    fn catalog_paths() {
        assert_eq!(whole(&chain(&[3, 5])), Some(FiniteType::G3));
        assert_eq!(whole(&chain(&[5, 3])), Some(FiniteType::G3));
        assert_eq!(whole(&chain(&[7])), Some(FiniteType::D2(7)));
        assert_eq!(whole(&chain(&[3])), Some(FiniteType::A(2)));
        assert_eq!(whole(&chain(&[4])), Some(FiniteType::C(2)));
        assert_eq!(whole(&chain(&[3, 3, 4])), Some(FiniteType::C(4)));
        assert_eq!(whole(&chain(&[3, 4, 3])), Some(FiniteType::F4));
        assert_eq!(whole(&chain(&[5, 3, 3])), Some(FiniteType::G4));
        assert_eq!(whole(&chain(&[3, 5, 3])), None);
        assert_eq!(whole(&chain(&[4, 4])), None);
        assert_eq!(whole(&chain(&[3, 6])), None);
    }

    #[test]
    fn affine_triangle_is_not_spherical() {
        let d = PDiagram::new(&["a", "b", "c"], &[("a", "b", 3), ("b", "c", 3), ("a", "c", 3)]).unwrap();
        assert_eq!(whole(&d), None);
    }

    #[test]
    fn not_irreducible_error() {
        let d = fixtures::star();
        assert_eq!(classify_irreducible(&d, &["a", "d"]), Err(Error::NotIrreducible));
        assert!(matches!(classify_irreducible(&d, &["a", "zz"]), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn spherical_examples() {
        let f3 = fixtures::pair_left();
        assert!(is_spherical(&f3, &["a", "b", "c"]).unwrap());
        assert!(is_spherical(&f3, &[] as &[&str]).unwrap());
        assert!(!is_spherical(&f3, &["c", "d"]).unwrap());
    }

    #[test]
    fn longest_conjugation_examples() {
        let a2 = chain(&[3]);
        assert_eq!(longest_conjugation_of(&a2, a2.all()).unwrap(), vec![1, 0]);
        let c2 = chain(&[4]);
        assert_eq!(longest_conjugation_of(&c2, c2.all()).unwrap(), vec![0, 1]);
        let single = PDiagram::new(&["s"], &[] as &[(&str, &str, u32)]).unwrap();
        assert_eq!(longest_conjugation_of(&single, single.all()).unwrap(), vec![0]);
        let f3 = fixtures::pair_left();
        assert_eq!(longest_conjugation(&f3, &["c", "d"]), Err(Error::NotSpherical));
    }

    #[test]
    fn bases_examples() {
        let f3 = bases(&fixtures::pair_left());
        assert_eq!(
            f3,
            vec![
                Base { members: vec!["a".into(), "b".into(), "c".into()], finite_type: FiniteType::G3 },
                Base { members: vec!["a".into(), "d".into()], finite_type: FiniteType::A(2) },
            ]
        );
        let six = chain(&[6]);
        assert_eq!(bases(&six)[0].finite_type, FiniteType::D2(6));
        let single = PDiagram::new(&["s"], &[] as &[(&str, &str, u32)]).unwrap();
        assert!(bases(&single).is_empty());
    }

    #[test]
    fn group_orders() {
        assert_eq!(FiniteType::C(3).group_order(), 48);
        assert_eq!(FiniteType::B(4).group_order(), 192);
        assert_eq!(FiniteType::A(3).group_order(), 24);
        assert_eq!(FiniteType::D2(6).group_order(), 12);
    }
}
