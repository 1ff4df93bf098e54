//! Independent reference implementations used by the integration and
//! acceptance tests. Everything here works on plain integers or exact
//! fractions and does not call into the library's algorithms.
#![allow(dead_code)]

use idempotent::linalg::{Matrix, MonomialMatrix, Vector};
use idempotent::semiring::Scalar;

/// Classical Bellman–Ford on integer weights. `Err(())` when a negative
/// cycle is reachable from `source`.
pub fn bellman_ford(n: usize, edges: &[(usize, usize, i64)], source: usize) -> Result<Vec<Option<i64>>, ()> {
    let mut dist: Vec<Option<i64>> = vec![None; n];
    dist[source] = Some(0);
    for _ in 0..n - 1 {
        let mut changed = false;
        for &(u, v, w) in edges {
            if let Some(du) = dist[u] {
                if dist[v].is_none_or(|dv| du + w < dv) {
                    dist[v] = Some(du + w);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for &(u, v, w) in edges {
        if let Some(du) = dist[u] {
            if dist[v].is_none_or(|dv| du + w < dv) {
                return Err(());
            }
        }
    }
    Ok(dist)
}

pub fn int_edges(g: &idempotent::linalg::WeightedGraph) -> Vec<(usize, usize, i64)> {
    g.edges()
        .iter()
        .map(|&(u, v, w)| (u, v, w.unwrap_finite() as i64))
        .collect()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm_upto(n: usize) -> i64 {
    (1..=n as i128).fold(1i128, |acc, k| acc / gcd(acc, k) * k) as i64
}

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    pub num: i128,
    pub den: i128,
}

impl Frac {
    pub fn new(num: i128, den: i128) -> Frac {
        let g = gcd(num, den).max(1) * den.signum();
        Frac {
            num: num / g,
            den: den / g,
        }
    }

    pub fn int(v: i128) -> Frac {
        Frac { num: v, den: 1 }
    }

    pub fn add(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    pub fn sub(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, o: &Frac) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Frac {
    fn cmp(&self, o: &Frac) -> std::cmp::Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

fn int_entry(a: &Matrix, i: usize, j: usize) -> Option<i64> {
    a.get(i, j).value().map(|v| v as i64)
}

/// Maximum cycle mean by enumerating every simple cycle with a DFS that
/// starts each cycle at its smallest node.
pub fn max_simple_cycle_mean(a: &Matrix) -> Option<Frac> {
    let n = a.rows();
    let mut best: Option<Frac> = None;
    fn dfs(
        a: &Matrix,
        start: usize,
        u: usize,
        weight: i64,
        len: i64,
        on_path: &mut Vec<bool>,
        best: &mut Option<Frac>,
    ) {
        for v in start..a.rows() {
            let Some(w) = int_entry(a, u, v) else { continue };
            if v == start {
                let mean = Frac::new((weight + w) as i128, (len + 1) as i128);
                if best.is_none_or(|b| mean > b) {
                    *best = Some(mean);
                }
            } else if !on_path[v] {
                on_path[v] = true;
                dfs(a, start, v, weight + w, len + 1, on_path, best);
                on_path[v] = false;
            }
        }
    }
    for start in 0..n {
        let mut on_path = vec![false; n];
        on_path[start] = true;
        dfs(a, start, start, 0, 0, &mut on_path, &mut best);
    }
    best
}

/// Rounds `q·x` to an integer, insisting that it is one up to 1e-6.
pub fn scaled_int(x: f64, q: i64) -> Option<i64> {
    let y = x * q as f64;
    let r = y.round();
    ((y - r).abs() < 1e-6).then_some(r as i64)
}

/// Checks `A ⊙ v = λ ⊙ v` in exact integer arithmetic after multiplying all
/// of `v` and `λ` by `q` and every entry of `A` by `q` as well.
pub fn exact_eigen_relation(a: &Matrix, lambda: Scalar, v: &Vector, q: i64) -> bool {
    let Some(l) = lambda.value().and_then(|l| scaled_int(l, q)) else {
        return false;
    };
    let vs: Option<Vec<Option<i64>>> = v
        .entries()
        .iter()
        .map(|x| match x.value() {
            None => Some(None),
            Some(x) => scaled_int(x, q).map(Some),
        })
        .collect();
    let Some(vs) = vs else { return false };
    if vs.iter().all(Option::is_none) {
        return false;
    }
    (0..a.rows()).all(|i| {
        let lhs = (0..a.cols())
            .filter_map(|j| Some(int_entry(a, i, j)? * q + vs[j]?))
            .max();
        let rhs = vs[i].map(|vi| l + vi);
        lhs == rhs
    })
}

pub fn exact_monomial_relation(m: &MonomialMatrix, lambda: Scalar, v: &Vector, q: i64) -> bool {
    exact_eigen_relation(&m.to_matrix(), lambda, v, q)
}

/// Upper concave envelope of integer samples (index, value) at every index
/// of `0..len`, by brute force over all chords. `None` outside the support.
pub fn concave_envelope(samples: &[Option<i64>]) -> Vec<Option<Frac>> {
    let pts: Vec<(i128, i128)> = samples
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i as i128, v as i128)))
        .collect();
    (0..samples.len() as i128)
        .map(|i| {
            let mut best: Option<Frac> = None;
            for &(a, fa) in &pts {
                for &(b, fb) in &pts {
                    let value = if a == i && b == i {
                        Frac::int(fa)
                    } else if a < i && i < b {
                        Frac::new(fa * (b - i) + fb * (i - a), b - a)
                    } else {
                        continue;
                    };
                    if best.is_none_or(|c| value > c) {
                        best = Some(value);
                    }
                }
            }
            best
        })
        .collect()
}

/// `out[k] = max_{i+j=k} (a_i + b_j)` by a double loop.
pub fn brute_sup_convolution(a: &[Option<i64>], b: &[Option<i64>]) -> Vec<Option<i64>> {
    let mut out = vec![None; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if let (Some(x), Some(y)) = (x, y) {
                let s = x + y;
                if out[i + j].is_none_or(|o| s > o) {
                    out[i + j] = Some(s);
                }
            }
        }
    }
    out
}

/// Existence of a joint eigenvector for a family of integer monomial
/// matrices, decided exactly: candidate supports are the orbits of the
/// permutations; on each orbit the eigenvalues are forced by the cycles
/// through a base point and the coordinates by propagation, all in exact
/// fractions. Returns the coordinates found on the first consistent orbit.
pub fn joint_eigen_candidate(family: &[MonomialMatrix]) -> Option<Vec<Option<Frac>>> {
    let n = family[0].dim();
    let w = |m: &MonomialMatrix, i: usize| m.weights()[i].unwrap_finite() as i128;
    let mut visited = vec![false; n];
    for base in 0..n {
        if visited[base] {
            continue;
        }
        let mut orbit = vec![base];
        visited[base] = true;
        let mut k = 0;
        while k < orbit.len() {
            for m in family {
                let j = m.perm()[orbit[k]];
                if !visited[j] {
                    visited[j] = true;
                    orbit.push(j);
                }
            }
            k += 1;
        }
        let lambdas: Vec<Frac> = family
            .iter()
            .map(|m| {
                let (mut i, mut total, mut len) = (base, 0i128, 0i128);
                loop {
                    total += w(m, i);
                    len += 1;
                    i = m.perm()[i];
                    if i == base {
                        return Frac::new(total, len);
                    }
                }
            })
            .collect();
        let mut v: Vec<Option<Frac>> = vec![None; n];
        v[base] = Some(Frac::int(0));
        let mut stack = vec![base];
        let mut consistent = true;
        'prop: while let Some(i) = stack.pop() {
            for (m, &l) in family.iter().zip(&lambdas) {
                // (M v)_i = w_i + v_{p(i)} must equal l + v_i
                let j = m.perm()[i];
                let vj = l.add(v[i].unwrap()).sub(Frac::int(w(m, i)));
                match v[j] {
                    None => {
                        v[j] = Some(vj);
                        stack.push(j);
                    }
                    Some(existing) if existing != vj => {
                        consistent = false;
                        break 'prop;
                    }
                    _ => {}
                }
            }
        }
        if consistent {
            return Some(v);
        }
    }
    None
}
