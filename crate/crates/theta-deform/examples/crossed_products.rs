//! The crossed product of the deformed torus algebra by a lattice
//! symmetry, and the evidence that deformation commutes with taking
//! crossed products when the symmetry is a plain translation.
//!
//! Elements are combinations of `e_p u_{g^k}`; the product twists the
//! right factor's weight by the symmetry before applying the phase law.
//!
//! Run with: `cargo run --example crossed_products`

use theta_deform::crossed::{
    commuting_deformation_compare, crossed_product, crossed_star, crossed_trace, CrossedElement,
    TranslationAction, DEFAULT_COMPARE_CAP,
};
use theta_deform::symmetry::CyclicAction;
use theta_deform::weight_algebra::{DeformationForm, Weight};

fn main() -> theta_deform::Result<()> {
    let theta = 0.25;
    let d = DeformationForm::standard(theta);
    let action = CyclicAction::builtin(2)?;

    // (e_{(1,0)} u_g) x (e_{(0,1)} u_g): the symmetry flips the second
    // weight before the phases combine, and the group parts multiply
    let x = CrossedElement::basis(2, 1, Weight::new(vec![1, 0]));
    let y = CrossedElement::basis(2, 1, Weight::new(vec![0, 1]));
    let xy = crossed_product(&action, &d, &x, &y)?;
    println!("(e_(1,0) u) x (e_(0,1) u):");
    for ((k, w), c) in xy.terms() {
        println!("  u^{k}, weight {:?}: {:+.6} {:+.6}i", w.0, c.re, c.im);
    }

    // the adjoint inverts the group part and transports the weight
    let xs = crossed_star(&action, &x)?;
    println!("\nadjoint of e_(1,0) u:");
    for ((k, w), c) in xs.terms() {
        println!("  u^{k}, weight {:?}: {:+.6} {:+.6}i", w.0, c.re, c.im);
    }

    // the canonical trace picks out the coefficient of e_0 u^0
    let sq = crossed_product(&action, &d, &x, &xs)?;
    let tr = crossed_trace(&sq);
    println!("\ntrace(x x x*) = {:+.3} {:+.3}i", tr.re, tr.im);

    // a translation by (1/2, 1/2) generates an order-2 symmetry that
    // commutes with the torus action; deforming before or after taking
    // the crossed product then gives the same algebra, coefficient by
    // coefficient
    println!("\ndeform-then-extend vs extend-then-deform (commuting case):");
    let t = TranslationAction::new(
        vec![num::Rational64::new(1, 2), num::Rational64::new(1, 2)],
        2,
    )?;
    for theta in [0.0, 0.1, 1.0 / 3.0] {
        let d = DeformationForm::standard(theta);
        let cmp = commuting_deformation_compare(&t, &d, 2, DEFAULT_COMPARE_CAP)?;
        println!(
            "  theta = {theta:<20}: {} basis pairs, max coefficient difference {:e}",
            cmp.pairs_checked, cmp.max_difference
        );
    }

    // sanity: the unit is neutral
    let unit = CrossedElement::unit(2, 2);
    let back = crossed_product(&action, &d, &unit, &x)?;
    println!(
        "\nunit is neutral: l1(1 x x - x) = {:e}",
        theta_deform::crossed::crossed_l1_norm(&back.sub(&x)?)
    );
    Ok(())
}
