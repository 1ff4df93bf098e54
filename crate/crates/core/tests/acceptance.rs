//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Every random instance is drawn from a fixed seed.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use common::{
    bellman_ford, brute_sup_convolution, concave_envelope, exact_eigen_relation,
    exact_monomial_relation, int_edges, joint_eigen_candidate, lcm_upto, max_simple_cycle_mean,
};
use idempotent::cli::random_quadratic;
use idempotent::dequantization::{
    default_grid, dequantization_experiment, superposition_experiment, ActionField,
    HamiltonianSpec,
};
use idempotent::generate::{self, TestRng};
use idempotent::linalg::{
    closure_star, graph_to_matrix, shortest_paths, solve_bellman, ClosureMethod, Matrix,
    SolveMethod, Vector,
};
use idempotent::representations::{
    character_check, joint_eigenvector_finite, joint_eigenvector_nilpotent, orbit_sum,
    FiniteGroup,
};
use idempotent::semiring::{deq_add, DeqParams, Scalar, SemiringId};
use idempotent::spectral::{
    eigen_monomial, eigenvector_irreducible, joint_eigenvector_commuting, max_cycle_mean,
};
use idempotent::transforms::{convolve_grid, legendre, legendre_involution, Grid, SampledFunction};
use idempotent::Error;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent <= limit, || format!("took {spent:.2?}, limit {limit:?}"))
}

fn random_scalar(rng: &mut TestRng, s: SemiringId) -> Scalar {
    if rng.gen_bool(0.1) {
        return s.zero();
    }
    match s {
        SemiringId::Boolean => Scalar::Finite(1.0),
        SemiringId::IntMaxPlus => Scalar::Finite(rng.gen_range(-1_000_000i64..=1_000_000) as f64),
        SemiringId::MaxMin if rng.gen_bool(0.1) => s.one(),
        _ => Scalar::Finite(rng.gen_range(-1e3..1e3)),
    }
}

fn semiring_laws() -> Outcome {
    let start = Instant::now();
    let mut rng = generate::rng(1);
    for s in SemiringId::ALL {
        let eq = |a: Scalar, b: Scalar| if s.is_exact() { a == b } else { s.approx_eq(a, b) };
        for _ in 0..10_000 {
            let (a, b, c) = (random_scalar(&mut rng, s), random_scalar(&mut rng, s), random_scalar(&mut rng, s));
            let laws = [
                ("⊕ associative", eq(s.add(s.add(a, b), c), s.add(a, s.add(b, c)))),
                ("⊙ associative", eq(s.mul(s.mul(a, b), c), s.mul(a, s.mul(b, c)))),
                ("⊕ commutative", eq(s.add(a, b), s.add(b, a))),
                ("⊙ commutative", eq(s.mul(a, b), s.mul(b, a))),
                ("⊕ idempotent", eq(s.add(a, a), a)),
                ("left distributive", eq(s.mul(a, s.add(b, c)), s.add(s.mul(a, b), s.mul(a, c)))),
                ("right distributive", eq(s.mul(s.add(a, b), c), s.add(s.mul(a, c), s.mul(b, c)))),
                ("𝟘 neutral", eq(s.add(a, s.zero()), a)),
                ("𝟙 neutral", eq(s.mul(a, s.one()), a)),
                ("𝟘 absorbing", eq(s.mul(a, s.zero()), s.zero())),
            ];
            for (name, ok) in laws {
                ensure(ok, || format!("{s}: {name} fails on {a:?}, {b:?}, {c:?}"))?;
            }
        }
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!("5 semirings × 10⁴ triples in {:.2?}", start.elapsed()))
}

fn dist_matches(d: &Vector, oracle: &[Option<i64>]) -> bool {
    d.entries()
        .iter()
        .zip(oracle)
        .all(|(x, o)| x.value() == o.map(|o| o as f64))
}

/// Stable instances of the shortest-path criterion, shared with the
/// closure fixed-point criterion.
fn path_instances() -> Vec<idempotent::linalg::WeightedGraph> {
    let mut rng = generate::rng(2);
    (0..200)
        .map(|_| {
            let n = rng.gen_range(2..=50);
            let density = rng.gen_range(0.02..0.3);
            generate::random_graph_no_negative_cycle(&mut rng, n, density)
        })
        .collect()
}

fn shortest_path_oracle() -> Outcome {
    let start = Instant::now();
    let s = SemiringId::MinPlus;
    let mut compared = 0usize;
    for (k, g) in path_instances().iter().enumerate() {
        let n = g.node_count();
        let edges = int_edges(g);
        let a = graph_to_matrix(g, s).map_err(|e| e.to_string())?;
        let identity = Matrix::identity(s, n);
        let h = a.transpose();
        let stars = [
            closure_star(&a, ClosureMethod::Iterate).map_err(|e| format!("graph {k}: {e}"))?,
            closure_star(&a, ClosureMethod::GaussJordan).map_err(|e| format!("graph {k}: {e}"))?,
        ];
        // column s of the solution of X = Aᵀ ⊙ X ⊕ I holds the distances from s
        let solved: Vec<Matrix> = [SolveMethod::Jacobi, SolveMethod::GaussSeidel]
            .into_iter()
            .map(|m| solve_bellman(&h, &identity, m).map(|r| r.solution.transpose()))
            .collect::<Result<_, _>>()
            .map_err(|e| format!("graph {k}: {e}"))?;
        for source in 0..n {
            let oracle = bellman_ford(n, &edges, source).map_err(|_| format!("graph {k} has a negative cycle"))?;
            let direct = shortest_paths(g, source).map_err(|e| e.to_string())?;
            ensure(dist_matches(&direct, &oracle), || format!("graph {k}, source {source}: shortest_paths"))?;
            for (name, m) in [("star/iterate", &stars[0]), ("star/gauss-jordan", &stars[1]), ("jacobi", &solved[0]), ("gauss-seidel", &solved[1])] {
                let row = Vector::new(s, m.row(source).to_vec()).map_err(|e| e.to_string())?;
                ensure(dist_matches(&row, &oracle), || format!("graph {k}, source {source}: {name}"))?;
            }
            compared += 1;
        }
    }
    let mut rng = generate::rng(20);
    for k in 0..50 {
        let n = rng.gen_range(2..=50);
        let density = rng.gen_range(0.02..0.3);
        let g = generate::random_graph_negative_cycle(&mut rng, n, density);
        ensure(bellman_ford(n, &int_edges(&g), 0).is_err(), || format!("planted cycle {k} not negative"))?;
        let a = graph_to_matrix(&g, s).map_err(|e| e.to_string())?;
        let identity = Matrix::identity(s, n);
        let results = [
            closure_star(&a, ClosureMethod::Iterate).err(),
            closure_star(&a, ClosureMethod::GaussJordan).err(),
            solve_bellman(&a.transpose(), &identity, SolveMethod::Jacobi).err(),
            solve_bellman(&a.transpose(), &identity, SolveMethod::GaussSeidel).err(),
            shortest_paths(&g, 0).err(),
        ];
        for (i, r) in results.into_iter().enumerate() {
            ensure(r == Some(Error::NonStable), || format!("negative-cycle graph {k}, method {i}: {r:?}"))?;
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("{compared} source rows × 5 methods agree; 50/50 NonStable in {:.2?}", start.elapsed()))
}

fn closure_fixed_point() -> Outcome {
    let s = SemiringId::MinPlus;
    let graphs = path_instances();
    for (k, g) in graphs.iter().enumerate() {
        let a = graph_to_matrix(g, s).map_err(|e| e.to_string())?;
        let identity = Matrix::identity(s, g.node_count());
        for method in [ClosureMethod::Iterate, ClosureMethod::GaussJordan] {
            let star = closure_star(&a, method).map_err(|e| e.to_string())?;
            let rhs = identity.add(&a.mul(&star).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(rhs == star, || format!("graph {k}: A* ≠ I ⊕ A A* ({method:?})"))?;
        }
    }
    Ok(format!("{} instances, both closure methods, exact", graphs.len()))
}

fn dequantization_bound() -> Outcome {
    let mut rng = generate::rng(4);
    let ladder = [1.0, 0.1, 0.01, 0.001];
    let params: Vec<DeqParams> = ladder.iter().map(|&h| DeqParams::new(h).unwrap()).collect();
    for _ in 0..10_000 {
        let (u, v): (f64, f64) = if rng.gen_bool(0.1) {
            let u = rng.gen_range(-100.0..100.0);
            (u, u)
        } else {
            (rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0))
        };
        let mut previous = f64::INFINITY;
        for (&h, &p) in ladder.iter().zip(&params) {
            let gap = deq_add(u, v, p) - u.max(v);
            ensure(gap >= 0.0 && gap <= h * std::f64::consts::LN_2 + 1e-12, || {
                format!("u = {u}, v = {v}, h = {h}: gap {gap}")
            })?;
            ensure(gap <= previous, || format!("u = {u}, v = {v}: gap grows at h = {h}"))?;
            previous = gap;
        }
    }
    Ok("10⁴ pairs × 4 values of h".into())
}

fn int_samples(rng: &mut TestRng, len: usize) -> Vec<Option<i64>> {
    let mut v: Vec<Option<i64>> = (0..len)
        .map(|_| (!rng.gen_bool(0.15)).then(|| rng.gen_range(-30..=30)))
        .collect();
    if v.iter().all(Option::is_none) {
        v[0] = Some(0);
    }
    v
}

fn to_function(origin: i64, samples: &[Option<i64>]) -> SampledFunction {
    let grid = Grid::new(origin as f64, 1.0, samples.len()).unwrap();
    let values = samples
        .iter()
        .map(|v| v.map_or(Scalar::Bottom, |v| Scalar::Finite(v as f64)))
        .collect();
    SampledFunction::new(SemiringId::MaxPlus, grid, values).unwrap()
}

fn convolution_theorem() -> Outcome {
    let mut rng = generate::rng(5);
    let xis = Grid::from_range(-8.0, 8.0, 65).unwrap();
    for k in 0..100 {
        let (la, lb) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let (a, b) = (int_samples(&mut rng, la), int_samples(&mut rng, lb));
        let (oa, ob) = (rng.gen_range(-5..=5), rng.gen_range(-5..=5));
        let (phi, psi) = (to_function(oa, &a), to_function(ob, &b));
        let conv = convolve_grid(&phi, &psi).map_err(|e| e.to_string())?;
        let brute = brute_sup_convolution(&a, &b);
        ensure(conv == to_function(conv.grid.origin as i64, &brute), || format!("pair {k}: convolution ≠ brute force"))?;
        let lhs = legendre(&conv, &xis).map_err(|e| e.to_string())?;
        let (ta, tb) = (legendre(&phi, &xis).unwrap(), legendre(&psi, &xis).unwrap());
        for i in 0..xis.count {
            let rhs = SemiringId::MaxPlus.mul(ta.values[i], tb.values[i]);
            ensure(lhs.values[i] == rhs, || format!("pair {k}, ξ = {}: {:?} ≠ {rhs:?}", xis.point(i), lhs.values[i]))?;
        }
        for (samples, f) in [(&a, &phi), (&b, &psi)] {
            let env = legendre_involution(f).map_err(|e| e.to_string())?;
            let oracle = concave_envelope(samples);
            for (i, (got, want)) in env.values.iter().zip(&oracle).enumerate() {
                ensure(got.value() == want.map(|w| w.to_f64()), || {
                    format!("pair {k}, index {i}: envelope {got:?} ≠ {want:?}")
                })?;
            }
        }
    }
    Ok("100 pairs: transform of ⊛ is pointwise ⊙; double transform = concave envelope".into())
}

fn spectral_oracle() -> Outcome {
    let mut rng = generate::rng(6);
    let mut cyclic = 0;
    let mut attempts = 0;
    while cyclic < 100 {
        attempts += 1;
        let n = rng.gen_range(1..=8);
        let sparsity = rng.gen_range(0.2..0.8);
        let a = generate::random_matrix(&mut rng, SemiringId::MaxPlus, n, sparsity, -20, 20);
        let oracle = max_simple_cycle_mean(&a);
        match (max_cycle_mean(&a), oracle) {
            (Ok(l), Some(o)) => {
                ensure(l == Scalar::Finite(o.to_f64()), || format!("matrix {attempts}: Karp {l:?}, cycles {o:?}"))?;
                cyclic += 1;
            }
            (Err(Error::NoCycle), None) => {}
            (got, want) => return Err(format!("matrix {attempts}: {got:?} vs {want:?}")),
        }
    }
    for k in 0..100 {
        let n = rng.gen_range(1..=8);
        let sparsity = rng.gen_range(0.2..0.9);
        let a = generate::random_irreducible(&mut rng, n, sparsity, -20, 20);
        let pair = eigenvector_irreducible(&a).map_err(|e| format!("irreducible {k}: {e}"))?;
        ensure(exact_eigen_relation(&a, pair.eigenvalue, &pair.eigenvector, lcm_upto(n)), || {
            format!("irreducible {k}: A v ≠ λ v for {pair:?}")
        })?;
    }
    for k in 0..100 {
        let n = rng.gen_range(1..=10);
        let m = generate::random_monomial(&mut rng, SemiringId::MaxPlus, n, -20, 20);
        let pairs = eigen_monomial(&m).map_err(|e| e.to_string())?;
        let cycles = m.cycles();
        ensure(pairs.len() == cycles.len(), || format!("monomial {k}: one pair per cycle"))?;
        for (pair, cycle) in pairs.iter().zip(&cycles) {
            let mut support = pair.eigenvector.support();
            support.sort();
            let mut expected = cycle.clone();
            expected.sort();
            ensure(support == expected, || format!("monomial {k}: support {support:?} vs cycle {cycle:?}"))?;
            ensure(exact_monomial_relation(&m, pair.eigenvalue, &pair.eigenvector, lcm_upto(n)), || {
                format!("monomial {k}: M v ≠ λ v")
            })?;
        }
    }
    Ok(format!("100 cycle means (of {attempts} draws), 100 irreducible eigenpairs, 100 monomial decompositions"))
}

fn finite_group_fixed_vectors() -> Outcome {
    let start = Instant::now();
    let mut rng = generate::rng(7);
    let s = SemiringId::MaxPlus;
    for name in ["c6", "s3", "d4", "q8"] {
        let g = Arc::new(FiniteGroup::from_name(name).unwrap());
        for k in 0..50 {
            let pi = generate::random_representation(&mut rng, g.clone()).map_err(|e| e.to_string())?;
            pi.validate().map_err(|e| format!("{name} #{k}: {e}"))?;
            let mut x: Vec<Scalar> = (0..pi.dim())
                .map(|_| if rng.gen_bool(0.3) { Scalar::Bottom } else { Scalar::Finite(rng.gen_range(-9..=9) as f64) })
                .collect();
            let anchor = rng.gen_range(0..x.len());
            x[anchor] = Scalar::Finite(0.0);
            let x = Vector::new(s, x).unwrap();
            let a = orbit_sum(&pi, &x).map_err(|e| format!("{name} #{k}: {e}"))?;
            for (e, m) in pi.images().iter().enumerate() {
                ensure(m.apply(&a).unwrap() == a, || format!("{name} #{k}: π({e}) a ≠ a"))?;
            }
            ensure(orbit_sum(&pi, &a).unwrap() == a, || format!("{name} #{k}: orbit sum not idempotent"))?;
            let (v, lambda) = joint_eigenvector_finite(&pi).map_err(|e| e.to_string())?;
            ensure(lambda.values.iter().all(|&l| l == s.one()), || format!("{name} #{k}: λ ≢ 𝟙"))?;
            ensure(pi.images().iter().all(|m| m.apply(&v).unwrap() == v), || format!("{name} #{k}: not fixed"))?;
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("4 groups × 50 representations in {:.2?}", start.elapsed()))
}

fn commuting_joint_eigenvectors() -> Outcome {
    let mut rng = generate::rng(8);
    for k in 0..100 {
        let n = rng.gen_range(1..=6);
        let size = rng.gen_range(2..=3);
        let family = generate::random_commuting_family(&mut rng, n, size);
        let oracle = joint_eigen_candidate(&family);
        let dense: Vec<Matrix> = family.iter().map(|m| m.to_matrix()).collect();
        match (joint_eigenvector_commuting(&dense), oracle) {
            (Ok(report), Some(_)) => {
                for (m, &l) in family.iter().zip(&report.eigenvalues) {
                    ensure(exact_monomial_relation(m, l, &report.eigenvector, lcm_upto(n)), || {
                        format!("family {k}: relation fails for {report:?}")
                    })?;
                }
            }
            (got, want) => return Err(format!("family {k}: algorithm {got:?}, oracle {want:?}")),
        }
    }
    Ok("100 families: found, verified exactly, existence matches the oracle".into())
}

fn nilpotent_joint_eigenvectors() -> Outcome {
    let mut rng = generate::rng(9);
    for name in ["c4", "q8", "d4", "heis3"] {
        let g = Arc::new(FiniteGroup::from_name(name).unwrap());
        for k in 0..20 {
            let pi = generate::random_representation(&mut rng, g.clone()).map_err(|e| e.to_string())?;
            let (v, lambda) = joint_eigenvector_nilpotent(&pi).map_err(|e| format!("{name} #{k}: {e}"))?;
            ensure(!v.is_zero(), || format!("{name} #{k}: zero vector"))?;
            for (e, m) in pi.images().iter().enumerate() {
                ensure(m.apply(&v).unwrap() == v.scale(lambda.values[e]), || {
                    format!("{name} #{k}: relation fails at element {e}")
                })?;
            }
            ensure(character_check(&lambda), || format!("{name} #{k}: not a character"))?;
        }
    }
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let pi = generate::random_representation(&mut rng, s3).map_err(|e| e.to_string())?;
    let got = joint_eigenvector_nilpotent(&pi);
    ensure(got == Err(Error::NotNilpotent), || format!("S3 gave {got:?}"))?;
    Ok("4 groups × 20 representations exact; S3 → NotNilpotent".into())
}

fn superposition() -> Outcome {
    let start = Instant::now();
    let grid = default_grid();
    let spec = HamiltonianSpec::free(1.0, &grid).unwrap();
    let mut rng = generate::rng(10);
    let mut worst = 0.0f64;
    for k in 0..10 {
        let (s1, s2) = (random_quadratic(&mut rng, grid), random_quadratic(&mut rng, grid));
        let (l1, l2) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let gap = superposition_experiment(&s1, &s2, l1, l2, &spec, 0.2, 1.0).map_err(|e| e.to_string())?;
        ensure(gap <= 1e-9, || format!("pair {k}: discrepancy {gap:e}"))?;
        worst = worst.max(gap);
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("max discrepancy {worst:.2e} in {:.2?}", start.elapsed()))
}

fn vanishing_viscosity() -> Outcome {
    let start = Instant::now();
    let grid = default_grid();
    let spec = HamiltonianSpec::free(1.0, &grid).unwrap();
    let s0 = ActionField::sample(grid, |x| x * x);
    let table = dequantization_experiment(&s0, &spec, &[0.8, 0.4, 0.2, 0.1], 1.0).map_err(|e| e.to_string())?;
    for w in table.windows(2) {
        ensure(w[1].1 < w[0].1, || format!("error does not decrease: {table:?}"))?;
    }
    let ratios: Vec<f64> = table.iter().map(|&(h, e)| e / h).collect();
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    ensure(hi <= 4.0 * lo, || format!("error/h outside a factor-4 band: {ratios:?}"))?;
    within(Duration::from_secs(60), start)?;
    let shown: Vec<String> = table.iter().map(|(h, e)| format!("{h}:{e:.4}")).collect();
    Ok(format!("errors {} ; error/h in [{lo:.3}, {hi:.3}] ; {:.2?}", shown.join(" "), start.elapsed()))
}

fn residuation() -> Outcome {
    let mut rng = generate::rng(12);
    for s in [SemiringId::MaxPlus, SemiringId::IntMaxPlus] {
        for k in 0..10_000 {
            let n = rng.gen_range(1..=8);
            let x: Vec<Scalar> = (0..n).map(|_| Scalar::Finite(rng.gen_range(-50..=50) as f64)).collect();
            let mut y: Vec<Scalar> = (0..n)
                .map(|_| if rng.gen_bool(0.2) { Scalar::Bottom } else { Scalar::Finite(rng.gen_range(-50..=50) as f64) })
                .collect();
            if s == SemiringId::MaxPlus {
                for v in y.iter_mut().filter(|v| !v.is_bottom()) {
                    *v = Scalar::Finite(v.unwrap_finite() + rng.gen_range(0.0..1.0));
                }
            }
            let (x, y) = (Vector::new(s, x).unwrap(), Vector::new(s, y).unwrap());
            let r = x.residual(&y).map_err(|e| format!("{s} #{k}: {e}"))?;
            ensure(y.leq(&x.scale(r)), || format!("{s} #{k}: x*(y) ⊙ x does not dominate y"))?;
            if s == SemiringId::IntMaxPlus && !y.is_zero() {
                let smaller = Scalar::Finite(r.unwrap_finite() - 1.0);
                ensure(!y.leq(&x.scale(smaller)), || format!("#{k}: x*(y) − 1 still dominates"))?;
            }
        }
    }
    Ok("10⁴ pairs over maxplus and intmaxplus".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("semiring laws", semiring_laws),
        ("shortest paths vs Bellman–Ford", shortest_path_oracle),
        ("closure fixed point", closure_fixed_point),
        ("dequantized addition bound", dequantization_bound),
        ("convolution theorem and envelope", convolution_theorem),
        ("spectral oracle", spectral_oracle),
        ("finite-group fixed vectors", finite_group_fixed_vectors),
        ("commuting joint eigenvectors", commuting_joint_eigenvectors),
        ("nilpotent joint eigenvectors", nilpotent_joint_eigenvectors),
        ("superposition principle", superposition),
        ("vanishing viscosity", vanishing_viscosity),
        ("residuation", residuation),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
