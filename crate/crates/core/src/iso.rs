//! Isomorphism decision for chordal Coxeter groups, with replayable
//! certificates.
//!
//! Both diagrams are expanded; the groups are isomorphic exactly when the
//! expanded diagrams lie in one orbit of elementary and cross-eyed twists.
//! `NotIsomorphic` therefore relies on that characterization being complete
//! for chordal inputs; `Isomorphic` is always backed by a checked certificate.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::canon::{canonical_form, isomorphism, CanonicalForm};
use crate::chordal::is_chordal;
use crate::diagram::PDiagram;
use crate::error::{Error, Result};
use crate::expansion::{expand, BlowupPlan};
use crate::twist::{twist_orbit, Explorer, MoveRecord, OrbitOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Isomorphic,
    NotIsomorphic,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub blowups1: Vec<BlowupPlan>,
    pub blowups2: Vec<BlowupPlan>,
    pub moves: Vec<MoveRecord>,
    /// From the generators of the twisted expanded diagram 1 onto those of
    /// expanded diagram 2.
    pub bijection: BTreeMap<String, String>,
}

impl Certificate {
    /// Expands `d1`, applies the moves, renames, and compares with the
    /// expansion of `d2`.
    pub fn replay(&self, d1: &PDiagram, d2: &PDiagram) -> Result<()> {
        let (e1, log1) = expand(d1);
        let (e2, log2) = expand(d2);
        if log1 != self.blowups1 || log2 != self.blowups2 {
            return Err(Error::InvariantViolation("blow-up logs do not match".into()));
        }
        let mut cur = e1;
        for mv in &self.moves {
            cur = mv.apply(&cur)?;
        }
        if cur.renamed_by(&self.bijection)? != e2 {
            return Err(Error::InvariantViolation("replayed diagram differs from the target".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub result: VerdictKind,
    pub certificate: Option<Certificate>,
    pub reason: String,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Verdict", 6)?;
        st.serialize_field("verdict", &self.result)?;
        st.serialize_field("reason", &self.reason)?;
        let c = self.certificate.as_ref();
        st.serialize_field("blowups1", &c.map(|c| &c.blowups1))?;
        st.serialize_field("blowups2", &c.map(|c| &c.blowups2))?;
        st.serialize_field("moves", &c.map(|c| &c.moves))?;
        st.serialize_field("bijection", &c.map(|c| &c.bijection))?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Per-direction cap on discovered canonical forms.
    pub max_size: usize,
    /// Frontier size at which the search turns bidirectional.
    pub bidirectional_threshold: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { max_size: 1_000_000, bidirectional_threshold: 10_000 }
    }
}

fn verdict(result: VerdictKind, reason: impl Into<String>) -> Verdict {
    Verdict { result, certificate: None, reason: reason.into() }
}

/// Moves from `e1` to a diagram isomorphic to `e2`, or `None` if the orbits
/// are disjoint. `Err(OrbitTruncated)` when a cap was hit first.
fn connect(e1: &PDiagram, e2: &PDiagram, opts: DecideOptions) -> Result<Option<Vec<MoveRecord>>> {
    let orbit_opts = OrbitOptions { use_cross_eyed: true, max_size: opts.max_size };
    let target = canonical_form(e2);
    let mut forward = Explorer::new(e1, orbit_opts)?;
    loop {
        if let Some(entry) = forward.orbit.get(&target) {
            return Ok(Some(entry.path.clone()));
        }
        if forward.is_done() {
            return if forward.orbit.truncated { Err(Error::OrbitTruncated { limit: opts.max_size }) } else { Ok(None) };
        }
        if forward.frontier_len() > opts.bidirectional_threshold {
            break;
        }
        forward.step(Some(&target))?;
    }

    let mut backward = Explorer::new(e2, orbit_opts)?;
    loop {
        let fwd_open = !forward.is_done();
        let bwd_open = !backward.is_done();
        if !fwd_open && !bwd_open {
            let truncated = forward.orbit.truncated || backward.orbit.truncated;
            return if truncated { Err(Error::OrbitTruncated { limit: opts.max_size }) } else { Ok(None) };
        }
        let step_forward = fwd_open && (!bwd_open || forward.frontier_len() <= backward.frontier_len());
        let (side, other) = if step_forward { (&mut forward, &backward) } else { (&mut backward, &forward) };
        let added = side.step(None)?;
        let hit = added.iter().find_map(|&i| {
            let entry = &side.orbit.entries[i];
            other.orbit.get(&entry.form).map(|o| (entry.clone(), o.clone()))
        });
        if let Some((s, o)) = hit {
            let (f, b) = if step_forward { (s, o) } else { (o, s) };
            return Ok(Some(join_paths(&f.diagram, f.path, &b.diagram, &b.path)?));
        }
    }
}

/// Forward path to `x1`, then the backward path from `x2` undone in reverse,
/// transported onto `x1`'s generator names. Every move is its own inverse.
fn join_paths(x1: &PDiagram, mut path: Vec<MoveRecord>, x2: &PDiagram, back: &[MoveRecord]) -> Result<Vec<MoveRecord>> {
    let phi = isomorphism(x2, x1).ok_or_else(|| Error::InvariantViolation("meeting forms disagree".into()))?;
    let rename = |s: &str| phi.get(s).cloned().unwrap_or_else(|| s.to_owned());
    for mv in back.iter().rev() {
        path.push(mv.renamed(&rename));
    }
    Ok(path)
}

pub fn decide_isomorphic(d1: &PDiagram, d2: &PDiagram, opts: DecideOptions) -> Verdict {
    for (k, d) in [(1, d1), (2, d2)] {
        if !is_chordal(d) {
            return verdict(VerdictKind::Unsupported, format!("diagram {k} is not chordal"));
        }
    }
    let (e1, blowups1) = expand(d1);
    let (e2, blowups2) = expand(d2);
    if e1.len() != e2.len() {
        return verdict(VerdictKind::NotIsomorphic, "expanded diagrams have different numbers of generators");
    }
    if e1.label_multiset() != e2.label_multiset() {
        return verdict(VerdictKind::NotIsomorphic, "expanded diagrams have different label multisets");
    }
    let moves = match connect(&e1, &e2, opts) {
        Ok(Some(moves)) => moves,
        Ok(None) => {
            return verdict(
                VerdictKind::NotIsomorphic,
                "expanded diagram 2 is not in the twist orbit of expanded diagram 1; \
                 for chordal groups this orbit is the complete isomorphism invariant",
            )
        }
        Err(e) => return verdict(VerdictKind::Unsupported, e.to_string()),
    };
    let mut cur = e1;
    for mv in &moves {
        match mv.apply(&cur) {
            Ok(next) => cur = next,
            Err(e) => return verdict(VerdictKind::Unsupported, format!("witness failed to replay: {e}")),
        }
    }
    let Some(bijection) = isomorphism(&cur, &e2) else {
        return verdict(VerdictKind::Unsupported, "witness ends at a non-isomorphic diagram");
    };
    let certificate = Certificate { blowups1, blowups2, moves, bijection };
    if let Err(e) = certificate.replay(d1, d2) {
        return verdict(VerdictKind::Unsupported, format!("certificate failed to replay: {e}"));
    }
    let reason = format!("connected by {} twist move(s) after expansion", certificate.moves.len());
    Verdict { result: VerdictKind::Isomorphic, certificate: Some(certificate), reason }
}

/// One representative per canonical form in the twist orbit of the expansion.
pub fn enumerate_iso_classes(d: &PDiagram) -> Result<Vec<PDiagram>> {
    enumerate_iso_classes_with(d, OrbitOptions::default().max_size)
}

pub fn enumerate_iso_classes_with(d: &PDiagram, max_size: usize) -> Result<Vec<PDiagram>> {
    if !is_chordal(d) {
        return Err(Error::NotChordal);
    }
    let (e, _) = expand(d);
    let orbit = twist_orbit(&e, OrbitOptions { use_cross_eyed: true, max_size })?.complete(max_size)?;
    Ok(orbit.entries.into_iter().map(|entry| entry.diagram).collect())
}

/// Canonical forms of the iso classes, sorted.
pub fn iso_class_forms(d: &PDiagram) -> Result<Vec<CanonicalForm>> {
    let mut forms: Vec<CanonicalForm> = enumerate_iso_classes(d)?.iter().map(canonical_form).collect();
    forms.sort();
    Ok(forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pair_is_isomorphic_by_one_cross_eyed_move() {
        let v = decide_isomorphic(&fixtures::pair_left(), &fixtures::pair_right(), DecideOptions::default());
        assert_eq!(v.result, VerdictKind::Isomorphic);
        let c = v.certificate.unwrap();
        assert_eq!(c.moves, vec![MoveRecord::CrossEyed { edge: ["b".into(), "c".into()] }]);
        c.replay(&fixtures::pair_left(), &fixtures::pair_right()).unwrap();
    }

    #[test]
    fn label_change_is_not_isomorphic() {
        let d = fixtures::pair_left();
        let seven = d.map_labels(|_, _, m| m.map(|m| if m == 5 { 7 } else { m }));
        assert_eq!(decide_isomorphic(&d, &seven, DecideOptions::default()).result, VerdictKind::NotIsomorphic);
    }

    #[test]
    fn reflexive() {
        for (_, d) in fixtures::all() {
            let v = decide_isomorphic(&d, &d, DecideOptions::default());
            assert_eq!(v.result, VerdictKind::Isomorphic);
            assert!(v.certificate.unwrap().moves.is_empty());
        }
    }

    #[test]
    fn non_chordal_is_unsupported() {
        let c4 = PDiagram::new(&["a", "b", "c", "d"], &[("a", "b", 3), ("b", "c", 3), ("c", "d", 3), ("a", "d", 3)])
            .unwrap();
        assert_eq!(decide_isomorphic(&c4, &c4, DecideOptions::default()).result, VerdictKind::Unsupported);
    }

    #[test]
    fn bidirectional_search_agrees() {
        let opts = DecideOptions { bidirectional_threshold: 0, ..Default::default() };
        let v = decide_isomorphic(&fixtures::pair_left(), &fixtures::pair_right(), opts);
        assert_eq!(v.result, VerdictKind::Isomorphic);
        let d = fixtures::four_forms();
        let classes = enumerate_iso_classes(&d).unwrap();
        for other in &classes {
            let v = decide_isomorphic(&d, other, opts);
            assert_eq!(v.result, VerdictKind::Isomorphic);
            v.certificate.unwrap().replay(&d, other).unwrap();
        }
    }

    #[test]
    fn iso_class_counts() {
        assert_eq!(enumerate_iso_classes(&fixtures::four_forms()).unwrap().len(), 4);
        assert_eq!(enumerate_iso_classes(&fixtures::pair_left()).unwrap().len(), 2);
        let k3 = PDiagram::new(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3), ("b", "c", 3)]).unwrap();
        assert_eq!(enumerate_iso_classes(&k3).unwrap().len(), 1);
    }

    #[test]
    fn verdict_json_schema() {
        let v = decide_isomorphic(&fixtures::pair_left(), &fixtures::pair_right(), DecideOptions::default());
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["verdict"], "isomorphic");
        assert_eq!(j["moves"][0]["kind"], "cross_eyed");
        assert_eq!(j["bijection"].as_object().unwrap().len(), 4);
    }
}
