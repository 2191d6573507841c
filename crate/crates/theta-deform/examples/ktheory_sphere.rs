//! Equivariant K-theory of the 4-sphere with the axis-negating
//! involution, including the regularization step the computation needs.
//!
//! The cross-polytope triangulation is *not* regular for the involution:
//! two edges can have the same vertex-orbit image without being related
//! by the group, so the naive quotient would collapse the sphere.  One
//! barycentric subdivision repairs this, after which the fixed
//! subcomplex is an honest 2-sphere and the quotient a rational homology
//! 4-sphere, giving ranks (4, 0).
//!
//! Run with: `cargo run --example ktheory_sphere`

use theta_deform::equiv_k::{
    betti_numbers_checked, fixed_subcomplex, make_regular, quotient_complex, regularity_check,
    strata_report, RankMethod, DEFAULT_SUBDIVISION_BUDGET,
};
use theta_deform::instance::generate_sphere_instance;

fn main() -> theta_deform::Result<()> {
    let instance = generate_sphere_instance();
    let geometry = instance
        .validate()?
        .geometry
        .expect("sphere instance carries a complex");
    let g = geometry.gcomplex;

    println!(
        "cross-polytope 4-sphere: f-vector {:?}",
        g.complex.f_vector()
    );
    let check = regularity_check(&g);
    println!("regular as given: {}", check.is_regular);
    if let Some(witness) = &check.witness {
        println!("  witness: {witness}");
    }

    let regular = make_regular(&g, DEFAULT_SUBDIVISION_BUDGET)?;
    println!(
        "after {} subdivision(s): f-vector {:?}",
        regular.regularity_level,
        regular.complex.f_vector()
    );

    let fixed = fixed_subcomplex(&regular, 1)?;
    println!(
        "fixed subcomplex of the involution: f-vector {:?}, Betti {:?}",
        fixed.f_vector(),
        betti_numbers_checked(&fixed)?
    );

    let quotient = quotient_complex(&regular)?;
    println!(
        "orbit space: f-vector {:?}, Betti {:?}",
        quotient.f_vector(),
        theta_deform::equiv_k::betti_numbers(&quotient, RankMethod::Modular)?
    );

    let report = strata_report(&g, RankMethod::Modular, DEFAULT_SUBDIVISION_BUDGET)?;
    println!("\nstrata:");
    for s in &report.strata {
        println!(
            "  g = {}: fixed size {}, betti {:?} -> even {}, odd {}",
            s.g, s.fixed_size, s.betti, s.even, s.odd
        );
    }
    println!("ranks: ({}, {})", report.k0_rank, report.k1_rank);
    Ok(())
}
