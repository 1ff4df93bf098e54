//! The `idem` command line.
//!
//! Exit status is 0 on success, 2 for usage and input errors (message on the
//! error stream) and 3 for mathematical failures, whose error name is the
//! first line of the output.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::Rng;

use crate::dequantization::{
    dequantization_experiment, dequantization_profile, grid_with_step, superposition_experiment,
    ActionField, HamiltonianSpec,
};
use crate::error::{Error, Result};
use crate::generate;
use crate::io;
use crate::linalg::{
    closure_star, path_weights, solve_bellman, ClosureMethod, Matrix, MonomialMatrix, SolveMethod,
    Vector,
};
use crate::representations::{
    joint_eigenvector_nilpotent, lower_central_series, orbit_sum, FiniteGroup, Representation,
};
use crate::semiring::{format_real, Scalar, SemiringId};
use crate::spectral::{
    eigen_monomial, eigenvector_irreducible, joint_eigenvector_commuting, EigenPair,
};
use crate::transforms::{
    convolve_grid, idempotent_integral, integral_wrt_measure, legendre, legendre_involution, Grid,
    SampledFunction,
};

#[derive(Debug, Parser)]
#[command(name = "idem", version, about = "Idempotent (tropical) mathematics toolkit")]
struct Cli {
    /// Write results to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for generated test data.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Path weights from a source node (shortest paths over minplus).
    Paths {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "minplus")]
        semiring: SemiringId,
        #[arg(long, default_value_t = 0)]
        source: usize,
        #[arg(long, default_value = "jacobi")]
        method: SolveMethod,
    },
    /// Closure A* = I ⊕ A ⊕ A² ⊕ …
    Star {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "minplus")]
        semiring: SemiringId,
        #[arg(long, default_value = "iterate")]
        method: ClosureMethod,
    },
    /// Least solution of X = H ⊙ X ⊕ F (F defaults to the identity).
    Solve {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        rhs: Option<PathBuf>,
        #[arg(long, default_value = "minplus")]
        semiring: SemiringId,
        #[arg(long, default_value = "jacobi")]
        method: SolveMethod,
    },
    /// Max-plus eigenpairs of an irreducible or invertible matrix.
    Eigen {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Joint eigenvector of commuting invertible max-plus matrices.
    JointEigen {
        #[arg(long, required = true)]
        matrix: Vec<PathBuf>,
    },
    /// Check that a representation is a homomorphism.
    RepCheck(RepSource),
    /// Orbit sum ⊕_g π(g)x, a vector fixed by the representation.
    OrbitSum {
        #[command(flatten)]
        rep: RepSource,
        /// Seed vector x (defaults to the all-𝟙 vector).
        #[arg(long)]
        vector: Option<String>,
    },
    /// Joint eigenvector and character of a nilpotent-group representation.
    NilpotentEigen(RepSource),
    /// Idempotent integral ⊕_x φ(x), optionally against a density ψ.
    Integral {
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        measure: Option<PathBuf>,
        #[arg(long, default_value = "maxplus")]
        semiring: SemiringId,
    },
    /// Sup- (or inf-) convolution of two sampled functions.
    Convolve {
        #[arg(long, num_args = 1, required = true)]
        function: Vec<PathBuf>,
        #[arg(long, default_value = "maxplus")]
        semiring: SemiringId,
    },
    /// Legendre transform sup_x(ξx + φ(x)) on a ξ grid.
    Legendre {
        #[arg(long)]
        function: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1.0)]
        xi_min: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        xi_max: f64,
        #[arg(long, default_value_t = 21)]
        xi_steps: usize,
        /// Print the double transform (upper concave envelope) instead.
        #[arg(long)]
        involution: bool,
    },
    /// Vanishing-viscosity table: heat solution vs Hopf–Lax for each h.
    Dequantize {
        #[command(flatten)]
        physics: Physics,
        /// Comma-separated h ladder.
        #[arg(long, default_value = "0.8,0.4,0.2,0.1")]
        h: String,
        /// Initial action S₀ as a function CSV (defaults to x² on the grid).
        #[arg(long)]
        function: Option<PathBuf>,
        /// Also write the per-point CSV "x,S_h,S_hopf_lax" for the last h.
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// Superposition principle: evolve-then-superpose vs superpose-then-evolve.
    Superpose {
        #[command(flatten)]
        physics: Physics,
        #[arg(long, default_value_t = 0.2)]
        h: f64,
        /// Number of random quadratic pairs.
        #[arg(long, default_value_t = 10)]
        pairs: usize,
    },
}

#[derive(Debug, Args)]
struct RepSource {
    /// Representation file.
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Group builder name or group file; with no --rep a random
    /// representation is generated from --seed.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Debug, Args)]
struct Physics {
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 0.01, value_parser = grid_step)]
    dx: f64,
}

fn grid_step(text: &str) -> std::result::Result<f64, String> {
    let dx: f64 = text.parse().map_err(|e| format!("{e}"))?;
    if dx > 0.0 && dx <= 4.0 {
        Ok(dx)
    } else {
        Err(format!("grid step must lie in (0, 4], got {dx}"))
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(Error::from),
    });
    match result {
        Ok(()) => 0,
        Err(e) if e.is_math() => {
            let _ = writeln!(out, "{}", e.name());
            let _ = writeln!(err, "error: {e}");
            3
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Paths {
            graph,
            semiring,
            source,
            method,
        } => {
            let g = io::parse_graph(&io::read_file(graph)?, *semiring)?;
            let d = path_weights(&g, *semiring, *source, *method)?;
            let mut out = String::from("node,dist\n");
            for (i, &v) in d.entries().iter().enumerate() {
                out.push_str(&format!("{i},{}\n", semiring.format_scalar(v)));
            }
            Ok(out)
        }
        Command::Star {
            matrix,
            semiring,
            method,
        } => {
            let a = io::parse_matrix(&io::read_file(matrix)?, *semiring)?;
            Ok(io::write_matrix(&closure_star(&a, *method)?))
        }
        Command::Solve {
            matrix,
            rhs,
            semiring,
            method,
        } => {
            let h = io::parse_matrix(&io::read_file(matrix)?, *semiring)?;
            let f = match rhs {
                Some(path) => io::parse_matrix(&io::read_file(path)?, *semiring)?,
                None => Matrix::identity(*semiring, h.rows()),
            };
            Ok(io::write_matrix(&solve_bellman(&h, &f, *method)?.solution))
        }
        Command::Eigen { matrix } => {
            let a = io::parse_matrix(&io::read_file(matrix)?, SemiringId::MaxPlus)?;
            let pairs = match MonomialMatrix::from_matrix(&a) {
                Ok(m) => eigen_monomial(&m)?,
                Err(_) => vec![eigenvector_irreducible(&a)?],
            };
            Ok(format_eigenpairs(&pairs))
        }
        Command::JointEigen { matrix } => {
            let ms = matrix
                .iter()
                .map(|p| io::parse_matrix(&io::read_file(p)?, SemiringId::MaxPlus))
                .collect::<Result<Vec<_>>>()?;
            let report = joint_eigenvector_commuting(&ms)?;
            Ok(format_joint(&report.eigenvector, &report.eigenvalues))
        }
        Command::RepCheck(source) => {
            let pi = load_representation(source, cli.seed)?;
            let series = lower_central_series(pi.group());
            let mut out = String::from("property,value\n");
            out.push_str(&format!("order,{}\ndim,{}\n", pi.group().order(), pi.dim()));
            out.push_str(&format!("nilpotent,{}\n", series.nilpotent));
            match pi.validate() {
                Ok(()) => out.push_str("valid,true\n"),
                Err(e) => out.push_str(&format!("valid,false\nreason,{e}\n")),
            }
            Ok(out)
        }
        Command::OrbitSum { rep, vector } => {
            let pi = load_representation(rep, cli.seed)?;
            pi.validate()?;
            let s = pi.semiring();
            let x = match vector {
                Some(text) => Vector::new(s, io::parse_vector(text, s)?)?,
                None => Vector::ones(s, pi.dim()),
            };
            let a = orbit_sum(&pi, &x)?;
            let mut out = String::from("index,value\n");
            for (i, &v) in a.entries().iter().enumerate() {
                out.push_str(&format!("{i},{}\n", s.format_scalar(v)));
            }
            Ok(out)
        }
        Command::NilpotentEigen(source) => {
            let pi = load_representation(source, cli.seed)?;
            pi.validate()?;
            let (v, lambda) = joint_eigenvector_nilpotent(&pi)?;
            Ok(format_joint(&v, &lambda.values))
        }
        Command::Integral {
            function,
            measure,
            semiring,
        } => {
            let phi = io::parse_function(&io::read_file(function)?, *semiring)?;
            let value = match measure {
                Some(path) => {
                    let psi = io::parse_function(&io::read_file(path)?, *semiring)?;
                    integral_wrt_measure(&phi, &psi)?
                }
                None => idempotent_integral(&phi),
            };
            Ok(format!("integral\n{}\n", semiring.format_scalar(value)))
        }
        Command::Convolve { function, semiring } => {
            if function.len() != 2 {
                return Err(Error::Parse("convolve needs exactly two --function files".into()));
            }
            let phi = io::parse_function(&io::read_file(&function[0])?, *semiring)?;
            let psi = io::parse_function(&io::read_file(&function[1])?, *semiring)?;
            Ok(io::write_function(&convolve_grid(&phi, &psi)?))
        }
        Command::Legendre {
            function,
            xi_min,
            xi_max,
            xi_steps,
            involution,
        } => {
            let phi = io::parse_function(&io::read_file(function)?, SemiringId::MaxPlus)?;
            if *involution {
                return Ok(io::write_function(&legendre_involution(&phi)?));
            }
            let xis = Grid::from_range(*xi_min, *xi_max, *xi_steps)
                .map_err(|e| Error::Parse(e.to_string()))?;
            Ok(io::write_function_with_header(&legendre(&phi, &xis)?, "xi"))
        }
        Command::Dequantize {
            physics,
            h,
            function,
            profile,
        } => {
            let hs = h
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("invalid h value {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let (s0, spec) = match function {
                Some(path) => {
                    let f = io::parse_function(&io::read_file(path)?, SemiringId::MinPlus)?;
                    action_from_function(&f, physics.mass)?
                }
                None => {
                    let grid = grid_with_step(physics.dx);
                    (ActionField::sample(grid, |x| x * x), HamiltonianSpec::free(physics.mass, &grid)?)
                }
            };
            let table = dequantization_experiment(&s0, &spec, &hs, physics.t)?;
            if let (Some(path), Some(&h_last)) = (profile, hs.last()) {
                let mut csv = String::from("x,S_h,S_hopf_lax\n");
                for (x, a, b) in dequantization_profile(&s0, &spec, h_last, physics.t)? {
                    csv.push_str(&format!("{},{},{}\n", format_real(x), format_real(a), format_real(b)));
                }
                std::fs::write(path, csv).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            let mut out = String::from("h,sup_error\n");
            for (h, e) in table {
                out.push_str(&format!("{},{}\n", format_real(h), format_real(e)));
            }
            Ok(out)
        }
        Command::Superpose { physics, h, pairs } => {
            let grid = grid_with_step(physics.dx);
            let spec = HamiltonianSpec::free(physics.mass, &grid)?;
            let mut rng = generate::rng(cli.seed);
            let mut out = String::from("pair,discrepancy\n");
            for k in 0..*pairs {
                let (s1, s2) = (random_quadratic(&mut rng, grid), random_quadratic(&mut rng, grid));
                let (l1, l2) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let gap = superposition_experiment(&s1, &s2, l1, l2, &spec, *h, physics.t)?;
                out.push_str(&format!("{k},{}\n", format_real(gap)));
            }
            Ok(out)
        }
    }
}

/// `a(x − b)² + c` with `a ∈ [0.5, 2]`, `b, c ∈ [−1, 1]`.
pub fn random_quadratic(rng: &mut generate::TestRng, grid: Grid) -> ActionField {
    let a = rng.gen_range(0.5..2.0);
    let b = rng.gen_range(-1.0..1.0);
    let c = rng.gen_range(-1.0..1.0);
    ActionField::sample(grid, move |x| a * (x - b) * (x - b) + c)
}

fn action_from_function(f: &SampledFunction, mass: f64) -> Result<(ActionField, HamiltonianSpec)> {
    let values = f
        .values
        .iter()
        .map(|v| v.value().ok_or_else(|| Error::Parse("initial action must be finite".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((ActionField::new(f.grid, values)?, HamiltonianSpec::free(mass, &f.grid)?))
}

fn load_representation(source: &RepSource, seed: u64) -> Result<Representation> {
    match (&source.rep, &source.group) {
        (Some(path), _) => io::read_representation(path),
        (None, Some(group)) => {
            let g: FiniteGroup = io::load_group(group, Some(Path::new(".")))?;
            generate::random_representation(&mut generate::rng(seed), Arc::new(g))
        }
        (None, None) => Err(Error::Parse("give --rep or --group".into())),
    }
}

fn format_vector(v: &Vector) -> String {
    let s = v.semiring();
    let tokens: Vec<String> = v.entries().iter().map(|&x| s.format_scalar(x)).collect();
    tokens.join(" ")
}

fn format_eigenpairs(pairs: &[EigenPair]) -> String {
    let mut out = String::from("lambda,v\n");
    for p in pairs {
        let s = p.eigenvector.semiring();
        out.push_str(&format!("{},{}\n", s.format_scalar(p.eigenvalue), format_vector(&p.eigenvector)));
    }
    out
}

fn format_joint(v: &Vector, eigenvalues: &[Scalar]) -> String {
    let s = v.semiring();
    let mut out = String::from("kind,index,value\n");
    for (i, &x) in v.entries().iter().enumerate() {
        out.push_str(&format!("vector,{i},{}\n", s.format_scalar(x)));
    }
    for (i, &l) in eigenvalues.iter().enumerate() {
        out.push_str(&format!("eigenvalue,{i},{}\n", s.format_scalar(l)));
    }
    out
}
