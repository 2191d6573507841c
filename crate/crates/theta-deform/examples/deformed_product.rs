//! The deformed product on weight characters, and the oscillatory
//! integral it summarizes.
//!
//! Homogeneous elements `e_p` multiply with a pure phase,
//! `e_p x e_q = exp(-2 pi i theta m) e_{p+q}` with the integer exponent
//! `m = p^T J0 q`.  The phase law is cross-checked against a regulated
//! Gaussian integral, extrapolated to the singular limit.
//!
//! Run with: `cargo run --example deformed_product`

use num::complex::Complex64;

use theta_deform::weight_algebra::{
    deformed_product, l1_norm, oscillatory_check, phase_exponent, phase_factor, star, trace,
    AlgebraElement, DeformationForm, Weight, DEFAULT_SCHEDULE,
};

fn main() -> theta_deform::Result<()> {
    let theta = 0.25;
    let d = DeformationForm::standard(theta);

    // the commutation relation of the two standard generators
    let u = Weight::new(vec![1, 0]);
    let v = Weight::new(vec![0, 1]);
    let m_uv = phase_exponent(&d, &u, &v)?;
    let m_vu = phase_exponent(&d, &v, &u)?;
    println!("theta = {theta}");
    println!("exponent of U x V: {m_uv}, of V x U: {m_vu}");
    println!(
        "V x U = exp(2 pi i {}) U x V  (the quantum torus relation with theta' = 2 theta)",
        theta * (m_uv - m_vu) as f64
    );

    // multiply two small combinations and take trace and adjoint
    let a = AlgebraElement::from_terms(vec![
        (u.clone(), Complex64::new(1.0, 0.0)),
        (v.clone(), Complex64::new(0.0, 0.5)),
    ]);
    let b = AlgebraElement::from_terms(vec![
        (u.neg(), Complex64::new(0.25, -0.75)),
        (Weight::zero(2), Complex64::new(-1.0, 0.0)),
    ]);
    let ab = deformed_product(&d, &a, &b)?;
    println!(
        "\na has {} terms, b has {} terms, a x b has {} terms",
        a.len(),
        b.len(),
        ab.len()
    );
    for (w, c) in ab.terms() {
        println!("  weight {:?}: {:+.6} {:+.6}i", w.0, c.re, c.im);
    }
    println!(
        "trace(a x b)  = {:+.6} {:+.6}i",
        trace(&ab).re,
        trace(&ab).im
    );

    // the adjoint reverses products exactly
    let lhs = star(&ab);
    let rhs = deformed_product(&d, &star(&b), &star(&a))?;
    println!(
        "l1((a x b)* - b* x a*) = {:e}  (exact zero)",
        l1_norm(&lhs.sub(&rhs))
    );

    // the integral behind the phase: regulated Gaussian pairing,
    // extrapolated in the regulator, against the closed-form phase
    println!("\noscillatory integral vs phase law:");
    for (p, q) in [(vec![1, 0], vec![0, 1]), (vec![2, -1], vec![1, 1])] {
        let p = Weight::new(p);
        let q = Weight::new(q);
        let numeric = oscillatory_check(&d, &p, &q, &DEFAULT_SCHEDULE)?;
        let closed = phase_factor(theta, phase_exponent(&d, &p, &q)?);
        println!(
            "  p = {:?}, q = {:?}: integral {:+.9} {:+.9}i, phase {:+.9} {:+.9}i, |diff| = {:.2e}",
            p.0,
            q.0,
            numeric.re,
            numeric.im,
            closed.re,
            closed.im,
            (numeric - closed).norm()
        );
    }
    Ok(())
}
