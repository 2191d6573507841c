//! The deformed 4-sphere: polynomial generators `z1, z1b, z2, z2b, x5`
//! whose products pick up phases from their torus weights.
//!
//! The two complex generators satisfy `z1 x z2 = exp(-4 pi i theta)
//! z2 x z1`; `x5` and the radius element `z1 z1b + z2 z2b + x5^2` are
//! central; the order-2 flip swapping each generator with its conjugate
//! is an algebra automorphism.
//!
//! Run with: `cargo run --example deformed_sphere`

use num::complex::Complex64;

use theta_deform::symmetry::GroupElement;
use theta_deform::theta_sphere::{
    radius_element, relation_report, sphere_action, sphere_l1_norm, sphere_product, sphere_star,
    SphereElement, SphereMonomial,
};
use theta_deform::weight_algebra::DeformationForm;

fn main() -> theta_deform::Result<()> {
    let theta = 0.2;
    let d = DeformationForm::standard(theta);

    let report = relation_report(&d)?;
    println!(
        "z1 x z2 = exp(2 pi i theta r) z2 x z1 with r = {}",
        report.lambda_exponent
    );
    println!("x5 central: {}", report.x5_is_central);
    println!(
        "radius element central: residual {:e}",
        report.radius_residual
    );

    println!(
        "\ncommutation exponents (m: phase of left x right; r: ratio to the flipped product):"
    );
    for c in report.commutations.iter().filter(|c| c.phase_exponent != 0) {
        println!(
            "  {} x {}: m = {:+}, r = {:+}",
            c.left, c.right, c.phase_exponent, c.ratio_exponent
        );
    }

    // the sphere relation z1 z1b + z2 z2b + x5^2 = 1 is NOT imposed:
    // the radius is an honest central element of the coordinate algebra
    let r = radius_element();
    let r2 = sphere_product(&d, &r, &r)?;
    println!(
        "\nradius element: {} terms; radius^2: {} terms",
        r.len(),
        r2.len()
    );
    for (m, c) in r2.terms() {
        println!(
            "  exponents {:?}: {:+.3} {:+.3}i",
            m.exponents(),
            c.re,
            c.im
        );
    }

    // the flip exchanges each z with its conjugate without touching
    // coefficients; the adjoint does both
    let w = SphereElement::from_terms(vec![
        (
            SphereMonomial::new([2, 0, 1, 0, 0]),
            Complex64::new(0.3, -0.8),
        ),
        (
            SphereMonomial::new([0, 0, 0, 1, 2]),
            Complex64::new(-0.1, 0.45),
        ),
    ]);
    let flipped = sphere_action(GroupElement(1), &w);
    let adjoint = sphere_star(&w);
    println!("\nprobe w, its flip, and its adjoint:");
    for (label, e) in [("w", &w), ("flip(w)", &flipped), ("w*", &adjoint)] {
        println!("  {label}:");
        for (m, c) in e.terms() {
            println!(
                "    exponents {:?}: {:+.3} {:+.3}i",
                m.exponents(),
                c.re,
                c.im
            );
        }
    }

    // the flip is an automorphism: flip(u x v) = flip(u) x flip(v)
    let u = SphereElement::generator(0);
    let lhs = sphere_action(GroupElement(1), &sphere_product(&d, &u, &w)?);
    let rhs = sphere_product(&d, &sphere_action(GroupElement(1), &u), &flipped)?;
    println!(
        "\nflip equivariance: l1(flip(u x w) - flip(u) x flip(w)) = {:e}",
        sphere_l1_norm(&lhs.sub(&rhs))
    );
    Ok(())
}
