//! A self-adjoint idempotent in the quantum torus, built from bump
//! functions, with trace equal to the rotation parameter.
//!
//! The element is `g(U) W + f(U) + g(. + theta')(U) W^{-1}` where `W`
//! shifts the variable of any `h(U)` by `-theta'`.  Idempotence reduces
//! to three pointwise function identities; the plateau/ramp choice of
//! `f` makes all three vanish identically, and the trace is the exact
//! integral of `f`.
//!
//! Run with: `cargo run --example projection`

use theta_deform::projections::{assemble_projection, bump_pair, projection_residuals, BumpSpec};

fn main() -> theta_deform::Result<()> {
    for (theta_prime, eps) in [(0.3, 0.1), (std::f64::consts::SQRT_2 - 1.0, 0.05)] {
        let spec = BumpSpec::new(theta_prime, eps, 100_000)?;
        let report = projection_residuals(&spec)?;
        println!("theta' = {theta_prime}, ramp width = {eps}:");
        println!("  W^2 component residual:  {:e}", report.cond_orthogonality);
        println!("  W component residual:    {:e}", report.cond_partition);
        println!("  scalar component residual: {:e}", report.cond_square);
        println!("  trace = {} (target {theta_prime})", report.trace);

        let p = assemble_projection(spec);
        println!("  self-adjoint: {}", p.is_self_adjoint());
        println!();
    }

    // the two bump functions at a glance: f ramps up over [0, eps],
    // holds at 1 until theta', ramps down over [theta', theta' + eps];
    // g = sqrt(f - f^2) lives on the down-ramp only
    let spec = BumpSpec::new(0.3, 0.1, 100_000)?;
    let (f, g) = bump_pair(&spec);
    println!("f and g sampled around the plateau (theta' = 0.3, eps = 0.1):");
    println!("{:>6}  {:>8}  {:>8}", "t", "f(t)", "g(t)");
    for i in 0..10 {
        let t = i as f64 * 0.05;
        println!("{t:>6.2}  {:>8.5}  {:>8.5}", f(t), g(t));
    }
    Ok(())
}
