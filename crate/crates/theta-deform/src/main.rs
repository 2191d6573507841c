//! Command-line workbench over the library: instance validation,
//! deformed products, equivariance and isomorphism evidence, K-theory
//! ranks, projection residuals, and instance generation.
//!
//! Exit codes: `0` success, `1` assertion failure (a checked identity
//! does not hold or a computation fails), `2` usage or validation
//! error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use theta_deform::crossed::{commuting_deformation_compare, DEFAULT_COMPARE_CAP};
use theta_deform::equiv_k::{strata_report, RankMethod, DEFAULT_SUBDIVISION_BUDGET};
use theta_deform::error::Error;
use theta_deform::instance::{
    generate_sphere_instance, generate_torus_instance, Instance, DEFAULT_TORUS_RESOLUTION,
};
use theta_deform::projections::{projection_residuals, BumpSpec};
use theta_deform::symmetry::{check_compatibility, equivariance_residual};
use theta_deform::theta_sphere::relation_report;
use theta_deform::weight_algebra::{
    deformed_product, phase_exponent, phase_factor, AlgebraElement, DeformationForm, Weight,
};

/// Residual bound for the projection identity checks.
const PROJECTION_TOLERANCE: f64 = 1e-12;

// Shadows `std::println!` below this point: a consumer closing the pipe
// early (`... | head`) is a normal way to stop reading, not an error.
macro_rules! println {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "theta-deform",
    version,
    about = "Workbench for deformed torus algebras with cyclic symmetry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Exact,
    Modular,
}

impl From<MethodArg> for RankMethod {
    fn from(m: MethodArg) -> RankMethod {
        match m {
            MethodArg::Exact => RankMethod::Exact,
            MethodArg::Modular => RankMethod::Modular,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check that an instance's symmetry preserves its deformation form
    CheckCompat { file: PathBuf },

    /// Multiply two weight characters under the standard rank-2 form
    Product {
        /// First weight, comma-separated integers (e.g. --p 1,0)
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        p: Vec<i64>,
        /// Second weight, comma-separated integers
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        q: Vec<i64>,
        #[arg(long)]
        theta: f64,
    },

    /// Equivariance of the deformed product under an instance's symmetry
    Equivariance {
        file: PathBuf,
        /// Random element pairs tested per group element
        #[arg(long, default_value_t = 5)]
        samples: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },

    /// Compare deform-then-extend with extend-then-deform for an
    /// instance's commuting translation action
    CrossedIso {
        file: PathBuf,
        /// Weight box bound for the exhaustive basis comparison
        #[arg(long, default_value_t = 2)]
        box_bound: i64,
    },

    /// Equivariant K-theory ranks of an instance's triangulation
    Ktheory {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Modular)]
        method: MethodArg,
        /// Emit the machine-readable report instead of a table
        #[arg(long)]
        json: bool,
    },

    /// Residuals and trace of the bump-function projection
    Projection {
        #[arg(long)]
        theta_prime: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
    },

    /// Generator relations of the deformed 4-sphere
    SphereRelations {
        #[arg(long)]
        theta: f64,
    },

    /// Generate a standard instance file
    Gen {
        #[command(subcommand)]
        target: GenTarget,
    },
}

#[derive(Subcommand)]
enum GenTarget {
    /// Lattice torus with a builtin symmetry of order 2, 3, 4 or 6
    Torus {
        #[arg(long)]
        order: u32,
        /// Lattice resolution (vertices per side)
        #[arg(long, default_value_t = DEFAULT_TORUS_RESOLUTION)]
        n: usize,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-polytope 4-sphere with the axis-negating involution
    Sphere {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidParameter(_)
                | Error::UnsupportedOrder(_)
                | Error::Validation { .. }
                | Error::DimensionMismatch { .. }
                | Error::Io(_)
                | Error::Json(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(command: Command) -> theta_deform::Result<ExitCode> {
    match command {
        Command::CheckCompat { file } => check_compat(&file),
        Command::Product { p, q, theta } => product(&p, &q, theta),
        Command::Equivariance {
            file,
            samples,
            seed,
        } => equivariance(&file, samples, seed),
        Command::CrossedIso { file, box_bound } => crossed_iso(&file, box_bound),
        Command::Ktheory { file, method, json } => ktheory(&file, method.into(), json),
        Command::Projection {
            theta_prime,
            eps,
            grid,
        } => projection(theta_prime, eps, grid),
        Command::SphereRelations { theta } => sphere_relations(theta),
        Command::Gen { target } => gen(target),
    }
}

fn check_compat(file: &PathBuf) -> theta_deform::Result<ExitCode> {
    let inst = Instance::load(file)?.validate()?;
    let report = check_compatibility(&inst.action, &inst.deformation)?;
    println!("instance:               {}", inst.name);
    println!("preserves form:         {}", report.preserves_form);
    println!("orientation preserving: {}", report.orientation_preserving);
    println!("order satisfied:        {}", report.order_satisfied);
    println!("determinant:            {}", report.determinant);
    if report.is_compatible() {
        println!("compatible: yes");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("compatible: NO");
        Ok(ExitCode::from(1))
    }
}

fn product(p: &[i64], q: &[i64], theta: f64) -> theta_deform::Result<ExitCode> {
    if p.len() != 2 || q.len() != 2 {
        return Err(Error::InvalidParameter(format!(
            "weights must have two components (got {} and {})",
            p.len(),
            q.len()
        )));
    }
    let d = DeformationForm::standard(theta);
    let p = Weight::new(p.to_vec());
    let q = Weight::new(q.to_vec());
    let m = phase_exponent(&d, &p, &q)?;
    let phase = phase_factor(theta, m);
    let prod = deformed_product(
        &d,
        &AlgebraElement::character(p.clone()),
        &AlgebraElement::character(q.clone()),
    )?;
    println!("p:              {:?}", p.0);
    println!("q:              {:?}", q.0);
    println!("phase exponent: {m}");
    println!("phase:          {:+.16} {:+.16}i", phase.re, phase.im);
    for (w, c) in prod.terms() {
        println!(
            "product term:   weight {:?}, coefficient {:+.16} {:+.16}i",
            w.0, c.re, c.im
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn random_element(
    rng: &mut ChaCha8Rng,
    rank: usize,
    box_bound: i64,
    terms: usize,
) -> AlgebraElement {
    AlgebraElement::from_terms((0..terms).map(|_| {
        let w = Weight::new(
            (0..rank)
                .map(|_| rng.random_range(-box_bound..=box_bound))
                .collect(),
        );
        let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        (w, c)
    }))
}

fn equivariance(file: &PathBuf, samples: u32, seed: u64) -> theta_deform::Result<ExitCode> {
    let inst = Instance::load(file)?.validate()?;
    let compat = check_compatibility(&inst.action, &inst.deformation)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = inst.deformation.rank();
    println!("instance: {}", inst.name);
    println!("compatible: {}", compat.is_compatible());
    let mut worst = 0.0f64;
    for g in inst.action.elements().skip(1) {
        let mut g_worst = 0.0f64;
        let mut mismatches = 0usize;
        for _ in 0..samples {
            let a = random_element(&mut rng, rank, 3, 4);
            let b = random_element(&mut rng, rank, 3, 4);
            let report = equivariance_residual(
                &inst.action,
                g,
                &inst.deformation,
                &a,
                &b,
                !compat.is_compatible(),
            )?;
            g_worst = g_worst.max(report.residual);
            mismatches += report.mismatches.len();
        }
        println!(
            "g^{}: max residual {:e} over {} samples ({} exponent mismatches)",
            g.0, g_worst, samples, mismatches
        );
        worst = worst.max(g_worst);
    }
    if worst == 0.0 {
        println!("equivariance: exact");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("equivariance: VIOLATED (max residual {worst:e})");
        Ok(ExitCode::from(1))
    }
}

fn crossed_iso(file: &PathBuf, box_bound: i64) -> theta_deform::Result<ExitCode> {
    let inst = Instance::load(file)?.validate()?;
    let translation = inst.translation.ok_or_else(|| {
        Error::validation(
            "translation",
            "instance has no translation section; crossed-iso needs one",
        )
    })?;
    let report = commuting_deformation_compare(
        &translation,
        &inst.deformation,
        box_bound,
        DEFAULT_COMPARE_CAP,
    )?;
    println!("instance:       {}", inst.name);
    println!("group order:    {}", report.order);
    println!("weight box:     {}", report.box_bound);
    println!("pairs checked:  {}", report.pairs_checked);
    println!("max difference: {:e}", report.max_difference);
    if report.max_difference == 0.0 {
        println!("isomorphism evidence: the two constructions agree exactly");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("isomorphism evidence: FAILED");
        Ok(ExitCode::from(1))
    }
}

fn ktheory(file: &PathBuf, method: RankMethod, json: bool) -> theta_deform::Result<ExitCode> {
    let inst = Instance::load(file)?.validate()?;
    let geometry = inst.geometry.ok_or_else(|| {
        Error::validation(
            "complex",
            "instance has no complex section; ktheory needs one",
        )
    })?;
    let report = strata_report(&geometry.gcomplex, method, DEFAULT_SUBDIVISION_BUDGET)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("instance: {}", inst.name);
        println!("method:   {method:?}");
        println!(
            "{:>4}  {:>10}  {:>18}  {:>4}  {:>4}",
            "g", "fixed_size", "betti", "even", "odd"
        );
        for s in &report.strata {
            println!(
                "{:>4}  {:>10}  {:>18}  {:>4}  {:>4}",
                s.g,
                s.fixed_size,
                format!("{:?}", s.betti),
                s.even,
                s.odd
            );
        }
        println!("k0_rank: {}", report.k0_rank);
        println!("k1_rank: {}", report.k1_rank);
    }
    Ok(ExitCode::SUCCESS)
}

fn projection(theta_prime: f64, eps: f64, grid: usize) -> theta_deform::Result<ExitCode> {
    let spec = BumpSpec::new(theta_prime, eps, grid)?;
    let report = projection_residuals(&spec)?;
    println!("theta':              {theta_prime}");
    println!("ramp width:          {eps}");
    println!("grid:                {}", report.grid_size);
    println!("orthogonality cond.: {:e}", report.cond_orthogonality);
    println!("partition cond.:     {:e}", report.cond_partition);
    println!("square cond.:        {:e}", report.cond_square);
    println!("trace:               {:.16}", report.trace);
    let worst = report
        .cond_orthogonality
        .max(report.cond_partition)
        .max(report.cond_square);
    if worst <= PROJECTION_TOLERANCE {
        println!("projection identity: holds (residuals <= {PROJECTION_TOLERANCE:e})");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("projection identity: FAILED");
        Ok(ExitCode::from(1))
    }
}

fn sphere_relations(theta: f64) -> theta_deform::Result<ExitCode> {
    let d = DeformationForm::standard(theta);
    let report = relation_report(&d)?;
    println!("theta: {theta}");
    println!(
        "two-generator relation: z1 x z2 = exp(2 pi i theta r) z2 x z1 with r = {}",
        report.lambda_exponent
    );
    println!("x5 central:             {}", report.x5_is_central);
    println!("radius residual:        {:e}", report.radius_residual);
    println!("{:>5} {:>5}  {:>7} {:>7}", "left", "right", "m", "ratio");
    for c in &report.commutations {
        println!(
            "{:>5} {:>5}  {:>7} {:>7}",
            c.left, c.right, c.phase_exponent, c.ratio_exponent
        );
    }
    let ok = report.lambda_exponent == -2 && report.x5_is_central && report.radius_residual == 0.0;
    if ok {
        println!("relations: hold");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("relations: FAILED");
        Ok(ExitCode::from(1))
    }
}

fn gen(target: GenTarget) -> theta_deform::Result<ExitCode> {
    let (instance, out) = match target {
        GenTarget::Torus { order, n, out } => (generate_torus_instance(order, n)?, out),
        GenTarget::Sphere { out } => (generate_sphere_instance(), out),
    };
    match out {
        Some(path) => {
            instance.save(&path)?;
            println!("wrote {}", path.display());
        }
        None => println!("{}", instance.to_json_string()?),
    }
    Ok(ExitCode::SUCCESS)
}
