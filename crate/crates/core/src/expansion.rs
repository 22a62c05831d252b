//! Blow-ups along bases and expanded diagrams.
//!
//! A base of type C_{2q+1} (`a -4- b -3- c -3- ...`) or D_2(4q+2) whose
//! generator `a` only sees commuting outside neighbors is rewritten with the
//! new generators `d = aba` and `z = w_0`, raising the rank by one.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::diagram::{PDiagram, RESERVED_CHAR};
use crate::error::{Error, Result};
use crate::spherical::{base_sets, shape_of, Base, FiniteType, Shape};
use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowupKind {
    COdd,
    D2,
}

impl fmt::Display for BlowupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlowupKind::COdd => "C_odd",
            BlowupKind::D2 => "D2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupPlan {
    pub base: Base,
    pub kind: BlowupKind,
    pub role_a: String,
    pub role_b: String,
    pub role_c: Option<String>,
    pub q: u32,
    pub fresh_d: String,
    pub fresh_z: String,
}

impl Serialize for BlowupPlan {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BlowupPlan", 9)?;
        st.serialize_field("kind", "blowup")?;
        st.serialize_field("base", &self.base.members)?;
        st.serialize_field("type", &self.kind.to_string())?;
        st.serialize_field("a", &self.role_a)?;
        st.serialize_field("b", &self.role_b)?;
        st.serialize_field("c", &self.role_c)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("d", &self.fresh_d)?;
        st.serialize_field("z", &self.fresh_z)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eligibility {
    Eligible(BlowupPlan),
    Ineligible(String),
}

fn fresh_names(a: &str) -> (String, String) {
    (format!("{a}{RESERVED_CHAR}d"), format!("{a}{RESERVED_CHAR}z"))
}

/// Every outside generator with a finite label to `a` commutes with all of `base`.
fn neighbor_condition(d: &PDiagram, base: VertexSet, a: usize) -> Option<String> {
    for s in d.neighbors(a).difference(base) {
        if let Some(t) = base.iter().find(|&t| d.m(s, t) != Some(2)) {
            return Some(format!("`{}` sees `{}` but does not commute with `{}`", d.name(s), d.name(a), d.name(t)));
        }
    }
    None
}

fn make_plan(d: &PDiagram, base: &Base, kind: BlowupKind, a: usize, b: usize, c: Option<usize>, q: u32) -> BlowupPlan {
    let (fresh_d, fresh_z) = fresh_names(d.name(a));
    BlowupPlan {
        base: base.clone(),
        kind,
        role_a: d.name(a).to_owned(),
        role_b: d.name(b).to_owned(),
        role_c: c.map(|c| d.name(c).to_owned()),
        q,
        fresh_d,
        fresh_z,
    }
}

fn eligibility_of(d: &PDiagram, base: &Base, set: VertexSet) -> Result<Eligibility> {
    let shape = shape_of(d, set)?.ok_or(Error::NotABase)?;
    let ineligible = |why: String| Ok(Eligibility::Ineligible(why));
    match (shape.finite_type(), &shape) {
        (FiniteType::C(n), Shape::Path(_, order)) if n % 2 == 1 => {
            let order: Vec<usize> =
                if d.m(order[0], order[1]) == Some(4) { order.clone() } else { order.iter().rev().copied().collect() };
            let (a, b, c) = (order[0], order[1], order[2]);
            match neighbor_condition(d, set, a) {
                Some(why) => ineligible(why),
                None => Ok(Eligibility::Eligible(make_plan(d, base, BlowupKind::COdd, a, b, Some(c), (n as u32 - 1) / 2))),
            }
        }
        (FiniteType::D2(k), Shape::Path(_, order)) if k % 4 == 2 && k >= 6 => {
            let mut ends = [order[0], order[1]];
            ends.sort_by_key(|&v| d.name(v).to_owned());
            let mut last = String::new();
            for (a, b) in [(ends[0], ends[1]), (ends[1], ends[0])] {
                match neighbor_condition(d, set, a) {
                    None => return Ok(Eligibility::Eligible(make_plan(d, base, BlowupKind::D2, a, b, None, (k - 2) / 4))),
                    Some(why) => last = why,
                }
            }
            ineligible(last)
        }
        (t, _) => ineligible(format!("wrong type {t}")),
    }
}

/// A plan when the base satisfies either blow-up hypothesis.
pub fn blowup_eligibility(d: &PDiagram, base: &Base) -> Result<Eligibility> {
    let set = base.set(d).map_err(|_| Error::NotABase)?;
    if !base_sets(d).iter().any(|&(s, t)| s == set && t == base.finite_type) {
        return Err(Error::NotABase);
    }
    eligibility_of(d, base, set)
}

pub fn blow_up(d: &PDiagram, plan: &BlowupPlan) -> Result<PDiagram> {
    let invalid = |why: &str| Error::InvalidPlan(why.to_owned());
    match blowup_eligibility(d, &plan.base) {
        Ok(Eligibility::Eligible(p)) if p == *plan => {}
        Ok(Eligibility::Eligible(_)) => return Err(invalid("roles do not match the base")),
        Ok(Eligibility::Ineligible(why)) => return Err(Error::InvalidPlan(why)),
        Err(e) => return Err(Error::InvalidPlan(e.to_string())),
    }
    if d.contains(&plan.fresh_d) || d.contains(&plan.fresh_z) {
        return Err(invalid("fresh generator names are taken"));
    }
    let base = plan.base.set(d)?;
    let a = d.index_of(&plan.role_a)?;
    let b = d.index_of(&plan.role_b)?;
    let (fd, fz) = (plan.fresh_d.as_str(), plan.fresh_z.as_str());

    let mut names: Vec<String> = d.names().iter().filter(|n| **n != plan.role_a).cloned().collect();
    names.push(fd.to_owned());
    names.push(fz.to_owned());
    let mut edges: Vec<(String, String, u32)> = d
        .edges()
        .filter(|&(i, j, _)| i != a && j != a)
        .map(|(i, j, m)| (d.name(i).to_owned(), d.name(j).to_owned(), m))
        .collect();
    let mut add = |s: &str, t: &str, m: u32| edges.push((s.to_owned(), t.to_owned(), m));
    for t in base.without(a) {
        let name = d.name(t);
        let label_d = match plan.kind {
            BlowupKind::COdd if t == b => 2,
            BlowupKind::COdd if Some(name) == plan.role_c.as_deref() => 3,
            BlowupKind::COdd => 2,
            BlowupKind::D2 => 2 * plan.q + 1,
        };
        add(fd, name, label_d);
        add(fz, name, 2);
    }
    add(fz, fd, 2);
    for s in d.neighbors(a).difference(base) {
        add(d.name(s), fd, 2);
        add(d.name(s), fz, 2);
    }
    PDiagram::new_internal(&names, &edges)
}

/// Blows up the lexicographically smallest eligible base until none is left.
pub fn expand(d: &PDiagram) -> (PDiagram, Vec<BlowupPlan>) {
    let mut cur = d.clone();
    let mut log = Vec::new();
    loop {
        let plan = base_sets(&cur).into_iter().find_map(|(set, t)| {
            let base = Base { members: cur.names_of(set), finite_type: t };
            match eligibility_of(&cur, &base, set) {
                Ok(Eligibility::Eligible(p)) => Some(p),
                _ => None,
            }
        });
        let Some(plan) = plan else { return (cur, log) };
        cur = blow_up(&cur, &plan).expect("eligible plans apply");
        log.push(plan);
    }
}

/// Sum of the orders of the basic subgroups.
pub fn basic_order_sum(d: &PDiagram) -> u128 {
    base_sets(d).iter().map(|(_, t)| t.group_order()).fold(0u128, u128::saturating_add)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::spherical::bases;

    fn c3() -> PDiagram {
        PDiagram::new(&["a", "b", "c"], &[("a", "b", 4), ("b", "c", 3), ("a", "c", 2)]).unwrap()
    }

    fn d2(k: u32) -> PDiagram {
        PDiagram::new(&["a", "b"], &[("a", "b", k)]).unwrap()
    }

    fn plan_for(d: &PDiagram) -> BlowupPlan {
        match blowup_eligibility(d, &bases(d)[0]).unwrap() {
            Eligibility::Eligible(p) => p,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn c3_plan_and_blow_up() {
        let d = c3();
        let p = plan_for(&d);
        assert_eq!((p.kind, p.q, p.role_a.as_str(), p.role_b.as_str()), (BlowupKind::COdd, 1, "a", "b"));
        assert_eq!(p.role_c.as_deref(), Some("c"));
        let e = blow_up(&d, &p).unwrap();
        assert_eq!(e.names(), &["a$d", "a$z", "b", "c"]);
        assert_eq!(e.label("b", "c").unwrap().finite(), Some(3));
        assert_eq!(e.label("a$d", "c").unwrap().finite(), Some(3));
        assert_eq!(e.label("a$d", "b").unwrap().finite(), Some(2));
        for t in ["a$d", "b", "c"] {
            assert_eq!(e.label("a$z", t).unwrap().finite(), Some(2));
        }
        let bs = bases(&e);
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].finite_type, FiniteType::A(3));
    }

    #[test]
    fn d2_plan_and_blow_up() {
        let d = d2(6);
        let p = plan_for(&d);
        assert_eq!((p.kind, p.q), (BlowupKind::D2, 1));
        let e = blow_up(&d, &p).unwrap();
        assert_eq!(e.names(), &["a$d", "a$z", "b"]);
        assert_eq!(e.label("a$d", "b").unwrap().finite(), Some(3));
        assert_eq!(e.label("a$z", "b").unwrap().finite(), Some(2));
        assert_eq!(e.label("a$z", "a$d").unwrap().finite(), Some(2));
    }

    #[test]
    fn ineligible_types() {
        let d = fixtures::pair_left();
        for base in bases(&d) {
            assert!(matches!(blowup_eligibility(&d, &base).unwrap(), Eligibility::Ineligible(_)));
        }
        assert!(matches!(blowup_eligibility(&d2(10), &bases(&d2(10))[0]).unwrap(), Eligibility::Eligible(_)));
        assert!(matches!(blowup_eligibility(&d2(8), &bases(&d2(8))[0]).unwrap(), Eligibility::Ineligible(_)));
    }

    #[test]
    fn not_a_base() {
        let d = c3();
        let base = Base { members: vec!["a".into(), "b".into()], finite_type: FiniteType::C(2) };
        assert_eq!(blowup_eligibility(&d, &base), Err(Error::NotABase));
    }

    #[test]
    fn hypothesis_violation_is_invalid_plan() {
        let d = c3();
        let p = plan_for(&d);
        let with_s =
            PDiagram::new(&["a", "b", "c", "s"], &[("a", "b", 4), ("b", "c", 3), ("a", "c", 2), ("s", "a", 3)]).unwrap();
        assert!(matches!(blow_up(&with_s, &p), Err(Error::InvalidPlan(_))));
    }

    #[test]
    fn d2_tries_both_endpoints() {
        let d = PDiagram::new(&["a", "b", "s"], &[("a", "b", 6), ("s", "a", 3)]).unwrap();
        let p = plan_for(&d);
        assert_eq!(p.role_a, "b");
    }

    #[test]
    fn expand_examples() {
        let (e, log) = expand(&fixtures::pair_left());
        assert_eq!((e, log.len()), (fixtures::pair_left(), 0));
        let (e, log) = expand(&d2(6));
        assert_eq!((e.len(), log.len()), (3, 1));
        let (e, log) = expand(&c3());
        assert_eq!((e.len(), log.len()), (4, 1));
        assert!(expand(&e).1.is_empty());
    }

    #[test]
    fn log_json_shape() {
        let p = plan_for(&c3());
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["kind"], "blowup");
        assert_eq!(v["type"], "C_odd");
        assert_eq!(v["d"], "a$d");
        assert_eq!(v["z"], "a$z");
        assert_eq!(v["base"], serde_json::json!(["a", "b", "c"]));
    }
}
