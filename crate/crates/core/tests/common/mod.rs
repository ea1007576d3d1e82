//! Naive reference implementations over dense boolean matrices, shared by
//! the integration tests. Nothing here calls into the library's algorithms.

#![allow(dead_code)]

use movlab::{generate, GeneratorConfig, Model, Tournament};

pub type Matrix = Vec<Vec<bool>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sol {
    Co,
    Tc,
    Uc,
    Kings(usize),
    Ba,
}

pub fn outdeg(m: &Matrix, x: usize) -> usize {
    m[x].iter().filter(|&&b| b).count()
}

/// Shortest-path distances by repeated relaxation.
pub fn distances(m: &Matrix, x: usize) -> Vec<usize> {
    let n = m.len();
    let mut d = vec![usize::MAX; n];
    d[x] = 0;
    for _ in 0..n {
        for u in 0..n {
            if d[u] == usize::MAX {
                continue;
            }
            for v in 0..n {
                if m[u][v] && d[u] + 1 < d[v] {
                    d[v] = d[u] + 1;
                }
            }
        }
    }
    d
}

pub fn reaches_all_within(m: &Matrix, x: usize, k: usize) -> bool {
    distances(m, x).iter().all(|&d| d <= k)
}

fn covered(m: &Matrix, x: usize) -> bool {
    let n = m.len();
    (0..n).any(|y| y != x && m[y][x] && (0..n).all(|z| !m[x][z] || m[y][z]))
}

fn transitive_subset(m: &Matrix, set: &[usize]) -> bool {
    for &a in set {
        for &b in set {
            for &c in set {
                if a != b && b != c && a != c && m[a][b] && m[b][c] && !m[a][c] {
                    return false;
                }
            }
        }
    }
    true
}

/// Banks membership straight from the definition: `x` tops some
/// inclusion-maximal transitive subset.
fn banks(m: &Matrix, x: usize) -> bool {
    let n = m.len();
    let subsets: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|mask| mask >> x & 1 == 1)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.iter().any(|s| {
        s.iter().all(|&v| v == x || m[x][v])
            && transitive_subset(m, s)
            && (0..n).filter(|v| !s.contains(v)).all(|v| {
                let mut bigger = s.clone();
                bigger.push(v);
                !transitive_subset(m, &bigger)
            })
    })
}

pub fn member(m: &Matrix, s: Sol, x: usize) -> bool {
    let n = m.len();
    match s {
        Sol::Co => {
            let best = (0..n).map(|a| outdeg(m, a)).max().unwrap();
            outdeg(m, x) == best
        }
        Sol::Tc => reaches_all_within(m, x, n),
        Sol::Uc => !covered(m, x),
        Sol::Kings(k) => reaches_all_within(m, x, k),
        Sol::Ba => banks(m, x),
    }
}

pub fn edges(m: &Matrix) -> Vec<(usize, usize)> {
    let n = m.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if m[i][j] {
                out.push((i, j));
            }
        }
    }
    out
}

/// Signed margin by trying all reversal sets in order of size. `None` when
/// nothing flips membership.
pub fn oracle_mov(m: &Matrix, s: Sol, x: usize) -> Option<i64> {
    let es = edges(m);
    let before = member(m, s, x);
    for size in 1..=es.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut w = m.clone();
            for &i in &idx {
                let (a, b) = es[i];
                w[a][b] = false;
                w[b][a] = true;
            }
            if member(&w, s, x) != before {
                let v = size as i64;
                return Some(if before { v } else { -v });
            }
            // next combination
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] < es.len() - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    idx.clear();
                }
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    None
}

/// Every labelled tournament on `n` alternatives, in a fixed order.
pub fn all_tournaments(n: usize) -> Vec<Matrix> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let mut m = vec![vec![false; n]; n];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    m[i][j] = true;
                } else {
                    m[j][i] = true;
                }
            }
            m
        })
        .collect()
}

pub fn uniform(n: usize, seed: u64) -> Tournament {
    generate(&GeneratorConfig::new(Model::Uniform, n, seed)).unwrap()
}

pub fn noisy(n: usize, p: f64, seed: u64) -> Tournament {
    let mut cfg = GeneratorConfig::new(Model::CondorcetNoise, n, seed);
    cfg.p = p;
    generate(&cfg).unwrap()
}

pub fn to_tournament(m: &Matrix) -> Tournament {
    Tournament::from_matrix(m.len(), m).unwrap()
}
