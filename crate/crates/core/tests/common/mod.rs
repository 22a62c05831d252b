#![allow(dead_code)]

use coxtwist::PDiagram;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("g{i}")).collect()
}

/// Builds a chordal diagram by repeatedly adding a vertex joined to a random
/// clique of the current graph (so each new vertex is simplicial). A `None`
/// label choice leaves the vertex with no edge to that clique member.
pub fn random_chordal(rng: &mut StdRng, n: usize, labels: &[u32], planted: Option<&[(usize, usize, u32)]>) -> PDiagram {
    let mut adj = vec![vec![0u32; n]; n];
    let mut start = 1;
    if let Some(seed) = planted {
        for &(i, j, m) in seed {
            adj[i][j] = m;
            adj[j][i] = m;
        }
        start = seed.iter().map(|&(i, j, _)| i.max(j) + 1).max().unwrap_or(1);
    }
    for v in start..n {
        if rng.gen_bool(0.1) {
            continue;
        }
        let anchor = rng.gen_range(0..v);
        let mut clique = vec![anchor];
        let mut others: Vec<usize> = (0..v).filter(|&u| u != anchor && adj[anchor][u] != 0).collect();
        others.shuffle(rng);
        for u in others {
            if rng.gen_bool(0.6) && clique.iter().all(|&w| adj[w][u] != 0) {
                clique.push(u);
            }
        }
        for u in clique {
            let m = *labels.choose(rng).unwrap();
            adj[u][v] = m;
            adj[v][u] = m;
        }
    }
    let names = names(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if adj[i][j] != 0 {
                edges.push((names[i].clone(), names[j].clone(), adj[i][j]));
            }
        }
    }
    PDiagram::new(&names, &edges).unwrap()
}

/// A G_3 triangle on g0,g1,g2 (g1 the middle) that later vertices attach to.
pub const G3_SEED: [(usize, usize, u32); 3] = [(0, 1, 3), (1, 2, 5), (0, 2, 2)];

/// Mix of plain random chordal diagrams and ones grown from a G_3 triangle,
/// so that bad 5-edges appear regularly.
pub fn random_move_diagram(seed: u64) -> PDiagram {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(3..=8);
    let labels: &[u32] = if rng.gen_bool(0.5) { &[2, 2, 2, 3, 3, 5] } else { &[2, 3, 4, 5, 6] };
    let planted = rng.gen_bool(0.5).then_some(&G3_SEED[..]);
    random_chordal(&mut rng, n, labels, planted)
}

/// Arbitrary (not necessarily chordal) diagram with labels from `labels`,
/// where 0 stands for an infinite label.
pub fn random_any(rng: &mut StdRng, n: usize, labels: &[u32]) -> PDiagram {
    let names = names(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = *labels.choose(rng).unwrap();
            if m != 0 {
                edges.push((names[i].clone(), names[j].clone(), m));
            }
        }
    }
    PDiagram::new(&names, &edges).unwrap()
}

pub fn random_renaming(rng: &mut StdRng, d: &PDiagram) -> PDiagram {
    let mut fresh: Vec<String> = (0..d.len()).map(|i| format!("r{i}_{}", rng.gen_range(0..1000))).collect();
    fresh.shuffle(rng);
    d.renamed(&fresh).unwrap()
}

pub fn is_chordal(d: &PDiagram) -> bool {
    coxtwist::chordality(d).chordal
}

/// Random chordal diagrams with labels in {2,3,4,6}, often grown from a
/// C_3 chain or a D_2(6) edge so that eligible bases are common.
pub fn blowup_candidate(seed: u64) -> PDiagram {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(2..=6);
    let c3 = [(0, 1, 4), (1, 2, 3), (0, 2, 2)];
    let d6 = [(0, 1, 6)];
    let planted: Option<&[(usize, usize, u32)]> = match rng.gen_range(0..3) {
        0 if n >= 3 => Some(&c3),
        1 => Some(&d6),
        _ => None,
    };
    random_chordal(&mut rng, n, &[2, 2, 3, 4, 6], planted)
}
