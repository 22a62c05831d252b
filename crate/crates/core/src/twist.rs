//! Elementary diagram twists and twist orbits.
//!
//! A twist is given by a separation `(side1, core, side2)` and a spherical
//! block `bullet ⊆ core` whose longest element `ℓ` conjugates `side2`. On the
//! diagram, every edge from `side2 - core` into the core is re-attached
//! through the involution `s ↦ ℓsℓ⁻¹`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle;
use crate::canon::{canonical_form, CanonicalForm};
use crate::chordal::is_chordal;
use crate::diagram::{ComponentMode, PDiagram};
use crate::error::{Error, Result};
use crate::spherical::{component_conjugation, shape_of};
use crate::vset::VertexSet;

/// `(side1, core, side2)` with no finite label between the two open sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Separation {
    pub side1: VertexSet,
    pub core: VertexSet,
    pub side2: VertexSet,
}

impl Separation {
    /// Builds the separation whose second side is `side2` and checks it.
    pub fn new(d: &PDiagram, core: VertexSet, side2: VertexSet) -> Result<Self> {
        if !core.is_subset(side2) {
            return Err(Error::InvalidMove("core is not contained in side2".into()));
        }
        let open2 = side2.difference(core);
        let side1 = d.all().difference(open2);
        let open1 = side1.difference(core);
        if open1.is_empty() || open2.is_empty() {
            return Err(Error::InvalidMove("both sides must extend beyond the core".into()));
        }
        if open1.iter().any(|s| !d.neighbors(s).is_disjoint(open2)) {
            return Err(Error::InvalidMove("an edge joins the two sides".into()));
        }
        Ok(Separation { side1, core, side2 })
    }
}

/// An elementary twist on a specific diagram (indices refer to that diagram).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistMove {
    pub separation: Separation,
    pub bullet: VertexSet,
    /// Conjugation by the longest element of `⟨bullet⟩`, as a permutation of
    /// all generator indices (identity off the bullet).
    pub pi: Vec<usize>,
}

impl TwistMove {
    /// Validates `bullet` against `separation` and derives `pi`.
    pub fn new(d: &PDiagram, separation: Separation, bullet: VertexSet) -> Result<Self> {
        let core = separation.core;
        if bullet.is_empty() || !bullet.is_subset(core) {
            return Err(Error::InvalidMove("bullet must be a nonempty subset of the core".into()));
        }
        let comps = d.components_of(core, ComponentMode::C);
        if comps.iter().any(|c| !c.is_disjoint(bullet) && !c.is_subset(bullet)) {
            return Err(Error::InvalidMove("bullet is not a union of core components".into()));
        }
        let rest = core.difference(bullet);
        if bullet.iter().any(|s| rest.iter().any(|t| d.m(s, t) != Some(2))) {
            return Err(Error::InvalidMove("bullet does not commute with the rest of the core".into()));
        }
        if !d.is_simplex(bullet) {
            return Err(Error::InvalidMove("bullet is not spherical".into()));
        }
        let mut pi: Vec<usize> = (0..d.len()).collect();
        for comp in d.components_of(bullet, ComponentMode::C) {
            let shape = shape_of(d, comp)?.ok_or_else(|| Error::InvalidMove("bullet is not spherical".into()))?;
            for (s, t) in component_conjugation(&shape) {
                pi[s] = t;
            }
        }
        if pi.iter().enumerate().all(|(i, &p)| i == p) {
            return Err(Error::InvalidMove("longest element acts trivially on the core".into()));
        }
        Ok(TwistMove { separation, bullet, pi })
    }

    pub fn record(&self, d: &PDiagram) -> MoveRecord {
        MoveRecord::Elementary {
            core: d.names_of(self.separation.core),
            bullet: d.names_of(self.bullet),
            side2: d.names_of(self.separation.side2),
        }
    }

    /// Pairs `(s, π(s))` for the generators π moves, by name.
    pub fn pi_pairs(&self, d: &PDiagram) -> Vec<(String, String)> {
        self.bullet
            .iter()
            .filter(|&s| self.pi[s] != s)
            .map(|s| (d.name(s).to_owned(), d.name(self.pi[s]).to_owned()))
            .collect()
    }
}

/// Re-attaches `side2 - core` through `pi`. The move is revalidated first.
pub fn apply_twist(d: &PDiagram, mv: &TwistMove) -> Result<PDiagram> {
    let sep = Separation::new(d, mv.separation.core, mv.separation.side2)?;
    if sep != mv.separation || TwistMove::new(d, sep, mv.bullet)?.pi != mv.pi {
        return Err(Error::InvalidMove("move does not match this diagram".into()));
    }
    let core = sep.core;
    let open2 = sep.side2.difference(core);
    Ok(d.map_labels(|i, j, m| {
        let (s0, t) = if core.contains(i) && open2.contains(j) {
            (i, j)
        } else if core.contains(j) && open2.contains(i) {
            (j, i)
        } else {
            return m;
        };
        d.m(mv.pi[s0], t)
    }))
}

/// Every elementary twist with a nontrivial effect. Components of the core
/// whose longest element acts trivially are left out of the bullet, since
/// they do not change the move's effect.
pub fn enumerate_twist_moves(d: &PDiagram) -> Vec<TwistMove> {
    let n = d.len();
    if n < 4 {
        return Vec::new();
    }
    let mut moves = Vec::new();
    let full = d.all().bits();
    let mut cores: Vec<VertexSet> = Vec::new();
    let mut sub = full;
    while sub != 0 {
        let core = VertexSet::from_bits(sub);
        if core.len() >= 2 && core.len() <= n - 2 {
            cores.push(core);
        }
        sub = (sub - 1) & full;
    }
    cores.sort();
    for core in cores {
        if !core.iter().any(|v| !d.c_neighbors(v).is_disjoint(core)) {
            continue;
        }
        let nontrivial: Vec<VertexSet> = d
            .components_of(core, ComponentMode::C)
            .into_iter()
            .filter(|&c| matches!(shape_of(d, c), Ok(Some(ref s)) if !component_conjugation(s).is_empty()))
            .collect();
        if nontrivial.is_empty() {
            continue;
        }
        let pieces = d.components_of(d.all().difference(core), ComponentMode::P);
        if pieces.len() < 2 {
            continue;
        }
        let mut bullets: Vec<VertexSet> = Vec::new();
        for pick in 1u64..(1u64 << nontrivial.len()) {
            let bullet: VertexSet = nontrivial
                .iter()
                .enumerate()
                .filter(|(k, _)| pick >> k & 1 == 1)
                .fold(VertexSet::EMPTY, |acc, (_, c)| acc.union(*c));
            bullets.push(bullet);
        }
        let r = pieces.len();
        for pick in 1u64..((1u64 << r) - 1) {
            let open2 = pieces
                .iter()
                .enumerate()
                .filter(|(k, _)| pick >> k & 1 == 1)
                .fold(VertexSet::EMPTY, |acc, (_, p)| acc.union(*p));
            let Ok(sep) = Separation::new(d, core, open2.union(core)) else { continue };
            for &bullet in &bullets {
                if let Ok(mv) = TwistMove::new(d, sep, bullet) {
                    moves.push(mv);
                }
            }
        }
    }
    moves
}

/// A replayable, name-based move description.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoveRecord {
    Elementary { core: Vec<String>, bullet: Vec<String>, side2: Vec<String> },
    CrossEyed { edge: [String; 2] },
}

impl MoveRecord {
    pub fn apply(&self, d: &PDiagram) -> Result<PDiagram> {
        match self {
            MoveRecord::Elementary { core, bullet, side2 } => {
                let sep = Separation::new(d, d.set(core)?, d.set(side2)?)?;
                let mv = TwistMove::new(d, sep, d.set(bullet)?)?;
                apply_twist(d, &mv)
            }
            MoveRecord::CrossEyed { edge } => angle::cross_eyed_twist(d, &edge[0], &edge[1]),
        }
    }

    /// The same move with generator names mapped through `rename`.
    pub fn renamed(&self, rename: &dyn Fn(&str) -> String) -> MoveRecord {
        let map = |v: &[String]| {
            let mut out: Vec<String> = v.iter().map(|s| rename(s)).collect();
            out.sort();
            out
        };
        match self {
            MoveRecord::Elementary { core, bullet, side2 } => {
                MoveRecord::Elementary { core: map(core), bullet: map(bullet), side2: map(side2) }
            }
            MoveRecord::CrossEyed { edge } => {
                let mut e = [rename(&edge[0]), rename(&edge[1])];
                e.sort();
                MoveRecord::CrossEyed { edge: e }
            }
        }
    }
}

/// All single-move successors of `d`: elementary twists, then (optionally)
/// cross-eyed twists for every qualifying 5-edge that has bad separators.
pub fn successors(d: &PDiagram, use_cross_eyed: bool) -> Result<Vec<(MoveRecord, PDiagram)>> {
    let mut out = Vec::new();
    for mv in enumerate_twist_moves(d) {
        let next = apply_twist(d, &mv)?;
        out.push((mv.record(d), next));
    }
    if use_cross_eyed {
        for (x, y) in angle::candidate_bad_edges_of(d) {
            match angle::cross_eyed_twist_of(d, x, y) {
                Ok(next) => {
                    let mut edge = [d.name(x).to_owned(), d.name(y).to_owned()];
                    edge.sort();
                    out.push((MoveRecord::CrossEyed { edge }, next));
                }
                Err(Error::NoBadSeparators(..)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitOptions {
    pub use_cross_eyed: bool,
    pub max_size: usize,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions { use_cross_eyed: true, max_size: 1_000_000 }
    }
}

/// One orbit member: the diagram reached by replaying `path` from the seed.
#[derive(Clone, Debug)]
pub struct OrbitEntry {
    pub form: CanonicalForm,
    pub diagram: PDiagram,
    pub path: Vec<MoveRecord>,
}

/// Canonical forms reachable from a seed, in BFS discovery order. Each entry
/// keeps one shortest witness path.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub entries: Vec<OrbitEntry>,
    index: HashMap<CanonicalForm, usize>,
    /// Set when `max_size` cut the search short.
    pub truncated: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, form: &CanonicalForm) -> Option<&OrbitEntry> {
        self.index.get(form).map(|&i| &self.entries[i])
    }

    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.index.contains_key(form)
    }

    /// Errors with `OrbitTruncated` if the orbit is partial.
    pub fn complete(self, limit: usize) -> Result<Orbit> {
        if self.truncated {
            Err(Error::OrbitTruncated { limit })
        } else {
            Ok(self)
        }
    }
}

/// Level-synchronous BFS. Successors of a level are computed in parallel and
/// merged in frontier order, so the result does not depend on scheduling.
pub(crate) struct Explorer {
    opts: OrbitOptions,
    pub orbit: Orbit,
    frontier: Vec<usize>,
}

impl Explorer {
    pub fn new(seed: &PDiagram, opts: OrbitOptions) -> Result<Self> {
        if opts.use_cross_eyed && !is_chordal(seed) {
            return Err(Error::NotChordal);
        }
        let form = canonical_form(seed);
        let orbit = Orbit {
            entries: vec![OrbitEntry { form: form.clone(), diagram: seed.clone(), path: Vec::new() }],
            index: HashMap::from([(form, 0)]),
            truncated: false,
        };
        Ok(Explorer { opts, orbit, frontier: vec![0] })
    }

    pub fn frontier_len(&self) -> usize {
        self.frontier.len()
    }

    pub fn is_done(&self) -> bool {
        self.frontier.is_empty() || self.orbit.truncated
    }

    /// Expands one level and returns the indices of the new entries. Stops
    /// early once `target` is discovered.
    pub fn step(&mut self, target: Option<&CanonicalForm>) -> Result<Vec<usize>> {
        if self.is_done() {
            return Ok(Vec::new());
        }
        let entries = &self.orbit.entries;
        let use_cross_eyed = self.opts.use_cross_eyed;
        let expanded: Vec<Vec<(MoveRecord, PDiagram, CanonicalForm)>> = self
            .frontier
            .par_iter()
            .map(|&i| {
                successors(&entries[i].diagram, use_cross_eyed).map(|succ| {
                    succ.into_iter()
                        .map(|(rec, next)| {
                            let form = canonical_form(&next);
                            (rec, next, form)
                        })
                        .collect()
                })
            })
            .collect::<Result<_>>()?;
        let orbit = &mut self.orbit;
        let mut added = Vec::new();
        for (&parent, succ) in self.frontier.iter().zip(expanded) {
            for (rec, diagram, form) in succ {
                if orbit.index.contains_key(&form) {
                    continue;
                }
                if orbit.entries.len() >= self.opts.max_size {
                    orbit.truncated = true;
                    self.frontier = Vec::new();
                    return Ok(added);
                }
                let mut path = orbit.entries[parent].path.clone();
                path.push(rec);
                orbit.index.insert(form.clone(), orbit.entries.len());
                added.push(orbit.entries.len());
                let hit = target == Some(&form);
                orbit.entries.push(OrbitEntry { form, diagram, path });
                if hit {
                    self.frontier = Vec::new();
                    return Ok(added);
                }
            }
        }
        self.frontier = added.clone();
        Ok(added)
    }
}

/// Closure of `canonical_form(d)` under twist moves.
pub fn twist_orbit(d: &PDiagram, opts: OrbitOptions) -> Result<Orbit> {
    let mut ex = Explorer::new(d, opts)?;
    while !ex.is_done() {
        ex.step(None)?;
    }
    Ok(ex.orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Core {s,t} with m(s,t)=3 separating u from v.
    fn four_vertex() -> PDiagram {
        PDiagram::new(
            &["s", "t", "u", "v"],
            &[("s", "t", 3), ("u", "s", 3), ("u", "t", 2), ("v", "s", 2), ("v", "t", 4)],
        )
        .unwrap()
    }

    #[test]
    fn pair_left_has_no_elementary_twists() {
        assert!(enumerate_twist_moves(&fixtures::pair_left()).is_empty());
    }

    #[test]
    fn four_vertex_instance_has_two_moves() {
        let d = four_vertex();
        let moves = enumerate_twist_moves(&d);
        assert_eq!(moves.len(), 2);
        for mv in &moves {
            assert_eq!(mv.separation.core, d.set(&["s", "t"]).unwrap());
            assert_eq!(mv.pi_pairs(&d), vec![("s".into(), "t".into()), ("t".into(), "s".into())]);
        }
    }

    #[test]
    fn applying_the_twist_on_v() {
        let d = four_vertex();
        let sep = Separation::new(&d, d.set(&["s", "t"]).unwrap(), d.set(&["s", "t", "v"]).unwrap()).unwrap();
        let mv = TwistMove::new(&d, sep, sep.core).unwrap();
        let e = apply_twist(&d, &mv).unwrap();
        assert_eq!(e.label("v", "s").unwrap().finite(), Some(4));
        assert_eq!(e.label("v", "t").unwrap().finite(), Some(2));
        assert_eq!(e.label("u", "s").unwrap().finite(), Some(3));
        assert_eq!(e.label("u", "t").unwrap().finite(), Some(2));
        assert_eq!(apply_twist(&e, &mv).unwrap(), d);
    }

    #[test]
    fn complete_diagram_has_no_moves() {
        let names = ["a", "b", "c", "d", "e"];
        let mut edges = Vec::new();
        for i in 0..5 {
            for j in (i + 1)..5 {
                edges.push((names[i], names[j], 3));
            }
        }
        assert!(enumerate_twist_moves(&PDiagram::new(&names, &edges).unwrap()).is_empty());
    }

    #[test]
    fn trivial_bullet_is_rejected() {
        let d = four_vertex();
        let sep = Separation::new(&d, d.set(&["s", "t"]).unwrap(), d.set(&["s", "t", "v"]).unwrap()).unwrap();
        let d4 = d.map_labels(|_, _, m| m.map(|m| if m == 3 { 4 } else { m }));
        assert!(matches!(TwistMove::new(&d4, sep, sep.core), Err(Error::InvalidMove(_))));
    }

    #[test]
    fn invalid_separation_is_rejected() {
        let d = four_vertex();
        assert!(Separation::new(&d, d.set(&["s"]).unwrap(), d.set(&["s", "v"]).unwrap()).is_err());
    }

    #[test]
    fn move_record_round_trip() {
        let d = four_vertex();
        let mv = &enumerate_twist_moves(&d)[0];
        let rec = mv.record(&d);
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"kind\":\"elementary\""));
        let back: MoveRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.apply(&d).unwrap(), apply_twist(&d, mv).unwrap());
    }

    #[test]
    fn pair_orbits() {
        let d = fixtures::pair_left();
        let off = twist_orbit(&d, OrbitOptions { use_cross_eyed: false, ..Default::default() }).unwrap();
        assert_eq!(off.len(), 1);
        let on = twist_orbit(&d, OrbitOptions::default()).unwrap();
        assert_eq!(on.len(), 2);
        assert!(on.contains(&canonical_form(&fixtures::pair_right())));
    }

    #[test]
    fn orbit_truncation_is_flagged() {
        let d = fixtures::four_forms();
        let o = twist_orbit(&d, OrbitOptions { use_cross_eyed: true, max_size: 2 }).unwrap();
        assert!(o.truncated);
        assert!(matches!(o.complete(2), Err(Error::OrbitTruncated { limit: 2 })));
    }
}
