//! Lattice symmetries compatible with the deformation form, and why
//! compatibility matters: compatible symmetries commute with the
//! deformed product exactly, incompatible ones visibly do not.
//!
//! Run with: `cargo run --example symmetry_equivariance`

use num::complex::Complex64;

use theta_deform::intmat::IntMat;
use theta_deform::symmetry::{
    check_compatibility, equivariance_residual, torus_fixed_points, CyclicAction, GroupElement,
};
use theta_deform::weight_algebra::{AlgebraElement, DeformationForm, Weight};

fn probe_pair() -> (AlgebraElement, AlgebraElement) {
    let a = AlgebraElement::from_terms(vec![
        (Weight::new(vec![1, 0]), Complex64::new(0.7, -0.2)),
        (Weight::new(vec![-1, 2]), Complex64::new(0.1, 0.4)),
        (Weight::new(vec![0, 1]), Complex64::new(-0.3, 0.9)),
    ]);
    let b = AlgebraElement::from_terms(vec![
        (Weight::new(vec![2, 1]), Complex64::new(-0.5, 0.6)),
        (Weight::new(vec![0, -1]), Complex64::new(0.8, 0.3)),
    ]);
    (a, b)
}

fn main() -> theta_deform::Result<()> {
    let d = DeformationForm::standard(0.25);
    let (a, b) = probe_pair();

    for order in [2u32, 3, 4, 6] {
        let action = CyclicAction::builtin(order)?;
        let report = check_compatibility(&action, &d)?;
        println!(
            "order {order}: preserves form {}, det {}, order satisfied {}",
            report.preserves_form, report.determinant, report.order_satisfied
        );

        for g in action.elements().skip(1) {
            let eq = equivariance_residual(&action, g, &d, &a, &b, false)?;
            println!(
                "  g^{}: equivariance residual {:e} ({} exponent mismatches)",
                g.0,
                eq.residual,
                eq.mismatches.len()
            );
        }

        // isolated fixed points of the generator on the torus
        let fixed = torus_fixed_points(&action, GroupElement(1))?;
        let rendered: Vec<String> = fixed
            .iter()
            .map(|p| {
                let coords: Vec<String> = p.iter().map(|r| r.to_string()).collect();
                format!("({})", coords.join(", "))
            })
            .collect();
        println!(
            "  generator fixes {} torus points: {}",
            fixed.len(),
            rendered.join(" ")
        );
    }

    // negative control: the axis swap preserves the lattice but reverses
    // orientation (det = -1), so it cannot commute with the deformation
    let swap = CyclicAction::new(2, IntMat::from_rows(&[vec![0, 1], vec![1, 0]])?)?;
    let report = check_compatibility(&swap, &d)?;
    println!(
        "\naxis swap: preserves form {}, det {} -> compatible {}",
        report.preserves_form,
        report.determinant,
        report.is_compatible()
    );
    let eq = equivariance_residual(&swap, GroupElement(1), &d, &a, &b, true)?;
    println!(
        "axis swap equivariance residual {:.6} with {} exponent mismatches, e.g. {:?}",
        eq.residual,
        eq.mismatches.len(),
        eq.mismatches.first()
    );
    Ok(())
}
