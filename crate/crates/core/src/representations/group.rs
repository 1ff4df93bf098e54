use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A finite group given by its Cayley table: `table[i][j]` is the index of
/// `gᵢ·gⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

/// `Γ₁ = G`, `Γᵢ₊₁ = [G, Γᵢ]`, listed until the series stabilizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerCentralSeries {
    /// Sorted element indices of each term.
    pub subgroups: Vec<Vec<usize>>,
    pub nilpotent: bool,
    /// Nilpotency class (number of strict steps to `{e}`); `None` otherwise.
    pub class: Option<usize>,
}

/// Checks the group axioms exhaustively and returns the group.
pub fn validate_group(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup(format!("row {i} has {} entries", row.len())));
        }
        if let Some(&x) = row.iter().find(|&&x| x >= n) {
            return Err(Error::NotAGroup(format!("entry {x} out of range")));
        }
    }
    for i in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for j in 0..n {
            if std::mem::replace(&mut row_seen[table[i][j]], true) {
                return Err(Error::NotAGroup(format!("row {i} repeats {} (not a Latin square)", table[i][j])));
            }
            if std::mem::replace(&mut col_seen[table[j][i]], true) {
                return Err(Error::NotAGroup(format!("column {i} repeats {} (not a Latin square)", table[j][i])));
            }
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|j| table[e][j] == j && table[j][e] == j))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                }
            }
        }
    }
    let inverses = (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("{a} has no inverse")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteGroup {
        table,
        identity,
        inverses,
    })
}

impl FiniteGroup {
    /// Like [`validate_group`], additionally checking the stated identity.
    pub fn with_identity(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let g = validate_group(table)?;
        if g.identity != identity {
            return Err(Error::NotAGroup(format!(
                "stated identity {identity}, actual identity {}",
                g.identity
            )));
        }
        Ok(g)
    }

    /// Closes `generators` under `mul`; the identity gets index 0 and the
    /// remaining elements are numbered in breadth-first discovery order.
    pub fn generate<T, F>(identity: T, generators: &[T], mul: F) -> Self
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut next = 0;
        while next < elements.len() {
            for g in generators {
                let x = mul(&elements[next], g);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elements.len());
                    elements.push(x);
                }
            }
            next += 1;
        }
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&mul(a, b)]).collect())
            .collect();
        validate_group(table).expect("closure of a finite set under an associative law")
    }

    /// Cyclic group `Cₙ`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        validate_group(table).expect("cyclic table")
    }

    /// Symmetric group on `n` letters, as permutations composed right to left.
    pub fn symmetric(n: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        let mut gens = Vec::new();
        if n > 1 {
            let mut t = id.clone();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        FiniteGroup::generate(id, &gens, compose)
    }

    /// Dihedral group of order `2n`: symmetries of the regular `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        let rotation = (0..n).map(|i| (i + 1) % n).collect();
        let reflection = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::generate(id, &[rotation, reflection], compose)
    }

    /// Quaternion group `Q₈ = {±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        fn hamilton(a: &[i8; 4], b: &[i8; 4]) -> [i8; 4] {
            [
                a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
            ]
        }
        FiniteGroup::generate([1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], hamilton)
    }

    /// Heisenberg group of unitriangular 3×3 matrices mod `p` (order `p³`).
    pub fn heisenberg(p: u32) -> Self {
        let mul = move |x: &[u32; 3], y: &[u32; 3]| {
            [
                (x[0] + y[0]) % p,
                (x[1] + y[1]) % p,
                (x[2] + y[2] + x[0] * y[1]) % p,
            ]
        };
        FiniteGroup::generate([0, 0, 0], &[[1 % p, 0, 0], [0, 1 % p, 0]], mul)
    }

    /// Builder by name: `c<n>`, `s<n>`, `d<n>`, `q8`, `heis<p>`.
    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim().to_ascii_lowercase();
        let num = |prefix: &str| -> Option<usize> {
            name.strip_prefix(prefix)
                .and_then(|rest| rest.parse::<usize>().ok())
                .filter(|&n| n >= 1)
        };
        if name == "q8" {
            return Ok(FiniteGroup::quaternion());
        }
        if let Some(p) = num("heis") {
            return Ok(FiniteGroup::heisenberg(p as u32));
        }
        if let Some(n) = num("c") {
            return Ok(FiniteGroup::cyclic(n));
        }
        if let Some(n) = num("s").filter(|&n| n <= 6) {
            return Ok(FiniteGroup::symmetric(n));
        }
        if let Some(n) = num("d").filter(|&n| n >= 2) {
            return Ok(FiniteGroup::dihedral(n));
        }
        Err(Error::Parse(format!("unknown group builder {name:?}")))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ai_bi = self.mul(self.inverse(a), self.inverse(b));
        self.mul(self.mul(ai_bi, a), b)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements commuting with everything, ascending.
    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n)
            .filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[self.identity] = true;
        let mut elements = vec![self.identity];
        let mut next = 0;
        while next < elements.len() {
            for &g in gens {
                let x = self.mul(elements[next], g);
                if !member[x] {
                    member[x] = true;
                    elements.push(x);
                }
            }
            next += 1;
        }
        elements.sort_unstable();
        elements
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

#[allow(clippy::ptr_arg)] // passed where `Fn(&Vec<usize>, &Vec<usize>)` is expected
fn compose(a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

/// Computes the lower central series until it stabilizes.
pub fn lower_central_series(g: &FiniteGroup) -> LowerCentralSeries {
    let all: Vec<usize> = (0..g.order()).collect();
    let mut subgroups = vec![all];
    loop {
        let last = subgroups.last().expect("nonempty");
        let mut commutators: Vec<usize> = Vec::new();
        for a in 0..g.order() {
            for &b in last {
                commutators.push(g.commutator(a, b));
            }
        }
        commutators.sort_unstable();
        commutators.dedup();
        let next = g.subgroup_generated(&commutators);
        if &next == last {
            break;
        }
        subgroups.push(next);
    }
    let nilpotent = subgroups.last().is_some_and(|s| s.len() == 1);
    let class = nilpotent.then(|| subgroups.len() - 1);
    LowerCentralSeries {
        subgroups,
        nilpotent,
        class,
    }
}
