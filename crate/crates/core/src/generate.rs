//! Seeded random test data: monomial matrices, commuting families and
//! monomial representations of finite groups.
//!
//! All weights are small integers so that results can be checked exactly.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::{Matrix, MonomialMatrix, WeightedGraph};
use crate::representations::{FiniteGroup, Representation};
use crate::semiring::{Scalar, SemiringId};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn int(rng: &mut TestRng, lo: i64, hi: i64) -> Scalar {
    Scalar::Finite(rng.gen_range(lo..=hi) as f64)
}

fn permutation(rng: &mut TestRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Monomial matrix with a uniform permutation and weights in `[lo, hi]`.
pub fn random_monomial(rng: &mut TestRng, s: SemiringId, n: usize, lo: i64, hi: i64) -> MonomialMatrix {
    let weights = (0..n).map(|_| int(rng, lo, hi)).collect();
    MonomialMatrix::new(s, permutation(rng, n), weights).expect("valid by construction")
}

/// Dense matrix whose entries are `Bottom` with probability `sparsity`,
/// otherwise integers in `[lo, hi]`.
pub fn random_matrix(rng: &mut TestRng, s: SemiringId, n: usize, sparsity: f64, lo: i64, hi: i64) -> Matrix {
    let entries = (0..n * n)
        .map(|_| {
            if rng.gen_bool(sparsity) {
                Scalar::Bottom
            } else {
                int(rng, lo, hi)
            }
        })
        .collect();
    Matrix::new(s, n, n, entries).expect("valid by construction")
}

/// Like [`random_matrix`] but with a planted Hamiltonian cycle, so the
/// result is irreducible.
pub fn random_irreducible(rng: &mut TestRng, n: usize, sparsity: f64, lo: i64, hi: i64) -> Matrix {
    let s = SemiringId::MaxPlus;
    let base = random_matrix(rng, s, n, sparsity, lo, hi);
    let order = permutation(rng, n);
    let mut rows: Vec<Vec<Scalar>> = (0..n).map(|i| base.row(i).to_vec()).collect();
    for k in 0..n {
        let (u, v) = (order[k], order[(k + 1) % n]);
        if rows[u][v].is_bottom() {
            rows[u][v] = int(rng, lo, hi);
        }
    }
    Matrix::from_rows(s, &rows).expect("valid by construction")
}

/// Random digraph on `n` nodes with integer weights in `[lo, hi]`, each arc
/// present with probability `density`.
pub fn random_graph(rng: &mut TestRng, n: usize, density: f64, lo: i64, hi: i64) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                edges.push((u, v, int(rng, lo, hi)));
            }
        }
    }
    WeightedGraph::new(n, edges).expect("valid by construction")
}

/// Random digraph without negative cycles: nonnegative arc weights adjusted
/// by a potential, `w(u,v) = c + p(u) − p(v)` with `c ≥ 0`.
pub fn random_graph_no_negative_cycle(rng: &mut TestRng, n: usize, density: f64) -> WeightedGraph {
    let potential: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                let c = rng.gen_range(0..=10);
                edges.push((u, v, Scalar::Finite((c + potential[u] - potential[v]) as f64)));
            }
        }
    }
    WeightedGraph::new(n, edges).expect("valid by construction")
}

/// A random graph from [`random_graph_no_negative_cycle`] with one extra
/// cycle of total weight at most −1 through node 0.
pub fn random_graph_negative_cycle(rng: &mut TestRng, n: usize, density: f64) -> WeightedGraph {
    let base = random_graph_no_negative_cycle(rng, n, density);
    let len = rng.gen_range(2..=n.clamp(2, 5));
    let mut nodes = vec![0];
    let mut rest: Vec<usize> = (1..n).collect();
    rest.shuffle(rng);
    nodes.extend(rest.into_iter().take(len - 1));
    let mut edges: Vec<(usize, usize, Scalar)> = base
        .edges()
        .iter()
        .filter(|&&(u, v, _)| {
            !(0..nodes.len()).any(|k| u == nodes[k] && v == nodes[(k + 1) % nodes.len()])
        })
        .copied()
        .collect();
    let total = -rng.gen_range(1..=10);
    for k in 0..nodes.len() {
        let w = if k == 0 { total } else { 0 };
        edges.push((nodes[k], nodes[(k + 1) % nodes.len()], Scalar::Finite(w as f64)));
    }
    WeightedGraph::new(n, edges).expect("valid by construction")
}

/// `size` pairwise commuting monomial matrices of dimension `n`: each is a
/// power of a common seed times a diagonal constant on the seed's cycles, and
/// the whole family is then conjugated by one random monomial matrix.
pub fn random_commuting_family(rng: &mut TestRng, n: usize, size: usize) -> Vec<MonomialMatrix> {
    let s = SemiringId::MaxPlus;
    let seed = random_monomial(rng, s, n, -5, 5);
    let cycles = seed.cycles();
    let conj = random_monomial(rng, s, n, -5, 5);
    let conj_inv = conj.inverse().expect("semifield");
    (0..size)
        .map(|_| {
            let mut twist = vec![Scalar::Bottom; n];
            for cycle in &cycles {
                let c = int(rng, -5, 5);
                for &i in cycle {
                    twist[i] = c;
                }
            }
            let d = MonomialMatrix::diagonal(s, twist).expect("finite weights");
            let member = seed.pow(rng.gen_range(0..=3)).mul(&d).expect("same shape");
            conj_inv.mul(&member).and_then(|m| m.mul(&conj)).expect("same shape")
        })
        .collect()
}

/// Coordinate permutation images of the left action of `g` on the left cosets
/// of `subgroup`, with coset labels shuffled.
fn coset_action(rng: &mut TestRng, g: &FiniteGroup, subgroup: &[usize]) -> Vec<Vec<usize>> {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] == usize::MAX {
            for &h in subgroup {
                coset_of[g.mul(x, h)] = reps.len();
            }
            reps.push(x);
        }
    }
    let labels = permutation(rng, reps.len());
    // (π(a) x)_i = x_{a⁻¹·i}, so the image of `a` reads coordinate a⁻¹·i
    (0..g.order())
        .map(|a| {
            let inv = g.inverse(a);
            let mut perm = vec![0; reps.len()];
            for (c, &r) in reps.iter().enumerate() {
                perm[labels[c]] = labels[coset_of[g.mul(inv, r)]];
            }
            perm
        })
        .collect()
}

/// A random monomial representation of `g` over max-plus: the action on the
/// cosets of a random cyclic subgroup (sometimes a direct sum of two such),
/// conjugated by a random integer diagonal matrix.
pub fn random_representation(rng: &mut TestRng, g: Arc<FiniteGroup>) -> Result<Representation> {
    let s = SemiringId::MaxPlus;
    let blocks = if rng.gen_bool(0.3) { 2 } else { 1 };
    let mut perms: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    for _ in 0..blocks {
        let h = rng.gen_range(0..g.order());
        let subgroup = g.subgroup_generated(&[h]);
        let action = coset_action(rng, &g, &subgroup);
        for (p, block) in perms.iter_mut().zip(action) {
            let offset = p.len();
            p.extend(block.into_iter().map(|j| j + offset));
        }
    }
    let n = perms[0].len();
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
    let images = perms
        .into_iter()
        .map(|perm| {
            let weights = (0..n)
                .map(|i| Scalar::Finite((d[perm[i]] - d[i]) as f64))
                .collect();
            MonomialMatrix::new(s, perm, weights)
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(g, images)
}
