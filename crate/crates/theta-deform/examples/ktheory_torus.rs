//! Equivariant K-theory ranks of the torus with each builtin symmetry,
//! computed stratum by stratum from an equivariant triangulation.
//!
//! For each group element the fixed subcomplex is quotiented by the
//! full group and its Betti numbers are split into even and odd sums;
//! the totals over all elements are the two K-theory ranks.
//!
//! Run with: `cargo run --example ktheory_torus`

use theta_deform::equiv_k::{strata_report, RankMethod, DEFAULT_SUBDIVISION_BUDGET};
use theta_deform::instance::generate_torus_instance;

fn main() -> theta_deform::Result<()> {
    for order in [2u32, 3, 4, 6] {
        let instance = generate_torus_instance(order, 6)?;
        let geometry = instance
            .validate()?
            .geometry
            .expect("torus instances carry a complex");
        let report = strata_report(
            &geometry.gcomplex,
            RankMethod::Modular,
            DEFAULT_SUBDIVISION_BUDGET,
        )?;

        println!("torus with the order-{order} symmetry:");
        println!(
            "  {:>3} {:>12} {:>16} {:>5} {:>4}",
            "g", "fixed size", "betti", "even", "odd"
        );
        for s in &report.strata {
            println!(
                "  {:>3} {:>12} {:>16} {:>5} {:>4}",
                s.g,
                s.fixed_size,
                format!("{:?}", s.betti),
                s.even,
                s.odd
            );
        }
        println!("  ranks: ({}, {})\n", report.k0_rank, report.k1_rank);
    }
    Ok(())
}
