//! Numeric checks in the standard reflection representation.
//!
//! `σ_s(x) = x - 2B(e_s, x) e_s` with `B(e_s, e_t) = -cos(π/m(s,t))`, and
//! `-1` for infinite labels. Orders are measured by repeated multiplication
//! up to a bound and are never claimed to be infinite.

use std::f64::consts::PI;

use serde::{Serialize, Serializer};

use crate::diagram::{CoxeterLabel, PDiagram};
use crate::error::{Error, Result};
use crate::expansion::{blow_up, BlowupPlan};
use crate::vset::VertexSet;

pub const TOLERANCE: f64 = 1e-9;
pub const ORDER_BOUND: u32 = 200;

/// Dense square matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.data[i * n + k];
                if x == 0.0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += x * other.data[k * n + j];
                }
            }
        }
        Matrix { n, data }
    }

    pub fn distance_to_identity(&self) -> f64 {
        let n = self.n;
        (0..n * n)
            .map(|k| (self.data[k] - if k % (n + 1) == 0 { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max)
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ReflectionRep {
    names: Vec<String>,
    form: Matrix,
    generators: Vec<Matrix>,
}

pub fn build_rep(d: &PDiagram) -> ReflectionRep {
    let n = d.len();
    let mut form = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                form.data[i * n + j] = match d.m(i, j) {
                    Some(m) => -(PI / f64::from(m)).cos(),
                    None => -1.0,
                };
            }
        }
    }
    let generators = (0..n)
        .map(|s| {
            let mut g = Matrix::identity(n);
            for j in 0..n {
                g.data[s * n + j] -= 2.0 * form.get(s, j);
            }
            g
        })
        .collect();
    ReflectionRep { names: d.names().to_vec(), form, generators }
}

impl ReflectionRep {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn generator(&self, name: &str) -> Result<&Matrix> {
        let i = self.index_of(name)?;
        Ok(&self.generators[i])
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).map_err(|_| Error::UnknownGenerator(name.to_owned()))
    }

    /// Product of the generator matrices, left to right.
    pub fn word_matrix<S: AsRef<str>>(&self, word: &[S]) -> Result<Matrix> {
        let mut m = Matrix::identity(self.dim());
        for s in word {
            m = m.mul(self.generator(s.as_ref())?);
        }
        Ok(m)
    }

    /// `gᵀ B g = B` within tolerance.
    pub fn preserves_form(&self, g: &Matrix) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let v: f64 = (0..n).map(|k| (0..n).map(|l| g.get(k, i) * self.form.get(k, l) * g.get(l, j)).sum::<f64>()).sum();
                (v - self.form.get(i, j)).abs() < TOLERANCE
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasuredOrder {
    Finite(u32),
    ExceedsBound(u32),
}

impl Serialize for MeasuredOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MeasuredOrder::Finite(k) => s.serialize_u32(*k),
            MeasuredOrder::ExceedsBound(b) => s.collect_str(&format_args!(">{b}")),
        }
    }
}

/// Smallest `k ≤ bound` with `m^k ≈ I`.
pub fn matrix_order(m: &Matrix, bound: u32) -> MeasuredOrder {
    let mut power = m.clone();
    for k in 1..=bound {
        if power.distance_to_identity() < TOLERANCE {
            return MeasuredOrder::Finite(k);
        }
        if power.max_abs() > 1e12 {
            break;
        }
        power = power.mul(m);
    }
    MeasuredOrder::ExceedsBound(bound)
}

/// Order of `w1·w2` in the representation.
pub fn word_order<S: AsRef<str>, T: AsRef<str>>(rep: &ReflectionRep, w1: &[S], w2: &[T]) -> Result<MeasuredOrder> {
    let m = rep.word_matrix(w1)?.mul(&rep.word_matrix(w2)?);
    Ok(matrix_order(&m, ORDER_BOUND))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WordOrderReport {
    pub w1: Vec<String>,
    pub w2: Vec<String>,
    pub measured: MeasuredOrder,
    pub claimed: CoxeterLabel,
    pub pass: bool,
}

impl WordOrderReport {
    pub fn check<S: AsRef<str>, T: AsRef<str>>(rep: &ReflectionRep, w1: &[S], w2: &[T], claimed: CoxeterLabel) -> Result<Self> {
        let measured = word_order(rep, w1, w2)?;
        let pass = match (claimed, measured) {
            (CoxeterLabel::Finite(m), MeasuredOrder::Finite(k)) => m == k,
            (CoxeterLabel::Infinite, MeasuredOrder::ExceedsBound(_)) => true,
            _ => false,
        };
        Ok(WordOrderReport {
            w1: w1.iter().map(|s| s.as_ref().to_owned()).collect(),
            w2: w2.iter().map(|s| s.as_ref().to_owned()).collect(),
            measured,
            claimed,
            pass,
        })
    }
}

fn is_positive_root(v: &[f64]) -> bool {
    v.iter().all(|&x| x > -TOLERANCE) && v.iter().any(|&x| x > TOLERANCE)
}

/// A reduced word for the longest element of `⟨set⟩`: keep appending a
/// generator `s` while `w(α_s)` is a positive root.
pub fn longest_word(rep: &ReflectionRep, set: VertexSet) -> Vec<String> {
    let mut word = Vec::new();
    let mut w = Matrix::identity(rep.dim());
    let limit = 1 + rep.dim() * rep.dim() * 64;
    while word.len() < limit {
        let Some(s) = set.iter().find(|&s| is_positive_root(&w.column(s))) else { break };
        w = w.mul(&rep.generators[s]);
        word.push(rep.names[s].clone());
    }
    word
}

/// Word-order checks for every label the blow-up claims, measured in the
/// representation of the input diagram. The longest word is also checked to
/// be an involution.
pub fn verify_blowup(d: &PDiagram, plan: &BlowupPlan) -> Result<Vec<WordOrderReport>> {
    let out = blow_up(d, plan)?;
    let rep = build_rep(d);
    let base = plan.base.set(d)?;
    let a = plan.role_a.clone();
    let d_word = vec![a.clone(), plan.role_b.clone(), a.clone()];
    let z_word = longest_word(&rep, base);
    let word_for = |name: &str| -> Vec<String> {
        if name == plan.fresh_d {
            d_word.clone()
        } else if name == plan.fresh_z {
            z_word.clone()
        } else {
            vec![name.to_owned()]
        }
    };
    let a_idx = d.index_of(&a)?;
    let mut pairs: Vec<(String, String)> = Vec::new();
    let new_base: Vec<String> =
        d.names_of(base.without(a_idx)).into_iter().chain([plan.fresh_d.clone()]).collect();
    for t in &new_base {
        if *t != plan.fresh_d {
            pairs.push((plan.fresh_d.clone(), t.clone()));
        }
        pairs.push((plan.fresh_z.clone(), t.clone()));
    }
    for s in d.names_of(d.neighbors(a_idx).difference(base)) {
        pairs.push((s.clone(), plan.fresh_d.clone()));
        pairs.push((s, plan.fresh_z.clone()));
    }
    let mut reports = Vec::with_capacity(pairs.len() + 1);
    reports.push(WordOrderReport::check(&rep, &z_word, &z_word, CoxeterLabel::Finite(1))?);
    for (s, t) in pairs {
        let claimed = out.label(&s, &t)?;
        reports.push(WordOrderReport::check(&rep, &word_for(&s), &word_for(&t), claimed)?);
    }
    Ok(reports)
}
