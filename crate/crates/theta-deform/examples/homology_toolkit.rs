//! The simplicial homology toolkit underneath the K-theory pipeline:
//! boundary matrices, exact Smith normal form, fast modular ranks, and
//! barycentric subdivision.
//!
//! Run with: `cargo run --example homology_toolkit`

use theta_deform::equiv_k::homology::{
    betti_numbers, boundary_matrix, matrix_rank, smith_invariant_factors, SparseBoundary,
};
use theta_deform::equiv_k::{RankMethod, SimplicialComplex};

fn main() -> theta_deform::Result<()> {
    // the octahedron: a 2-sphere on 6 vertices
    let mut faces = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                faces.push(vec![a, 2 + b, 4 + c]);
            }
        }
    }
    let sphere = SimplicialComplex::from_maximal(6, &faces)?;
    println!("octahedron: f-vector {:?}", sphere.f_vector());

    let d1 = boundary_matrix(&sphere, 1);
    let d2 = boundary_matrix(&sphere, 2);
    println!(
        "boundary ranks: d1 is {}x{} with rank {}, d2 is {}x{} with rank {}",
        d1.rows,
        d1.cols,
        matrix_rank(&d1, RankMethod::Exact),
        d2.rows,
        d2.cols,
        matrix_rank(&d2, RankMethod::Exact),
    );
    println!(
        "Betti numbers, exact:   {:?}",
        betti_numbers(&sphere, RankMethod::Exact)?
    );
    println!(
        "Betti numbers, modular: {:?}",
        betti_numbers(&sphere, RankMethod::Modular)?
    );

    // subdivision refines the complex but not its homology
    let (subdivided, _) = sphere.barycentric_subdivide();
    println!(
        "\nafter barycentric subdivision: f-vector {:?}, Betti {:?}",
        subdivided.f_vector(),
        betti_numbers(&subdivided, RankMethod::Modular)?
    );

    // Smith normal form sees torsion that ranks alone cannot
    let m = SparseBoundary {
        rows: 2,
        cols: 2,
        columns: vec![vec![(0, 2), (1, 6)], vec![(0, 4), (1, 8)]],
    };
    println!(
        "\ninvariant factors of [[2,4],[6,8]]: {:?}",
        smith_invariant_factors(&m)
    );
    Ok(())
}
