//! Smooth projections in the quantum torus built from bump functions.
//!
//! In the rank-2 algebra with generators `U` (weight `(1,0)`) and `V`
//! (weight `(0,1)`) satisfying `V x U = exp(2 pi i theta') U x V`,
//! `theta' = 2 theta`, a one-variable function of `U` obeys the shift
//! calculus `W h(U) = h(. - theta')(U) W` for the auxiliary unitary
//! `W = V^{-1}` of weight `(0,-1)`.  The classical projection
//!
//! ```text
//! p = g(U) W + f(U) + (g(U) W)*
//! ```
//!
//! is idempotent and self-adjoint exactly when the pair `(f, g)`
//! satisfies three one-variable identities:
//!
//! ```text
//! g(t) g(t - theta')                    = 0      (W^2 component)
//! g(t) (f(t) + f(t - theta') - 1)      = 0      (W component)
//! f - f^2 - g^2 - g(. + theta')^2      = 0      (identity component)
//! ```
//!
//! The shipped construction — `f` a piecewise-linear plateau ramping up
//! on `[0, eps]`, flat at 1 until `theta'`, ramping down on
//! `[theta', theta' + eps]`, and `g = sqrt(f - f^2)` on the down-ramp —
//! satisfies all three identically, which [`projection_residuals`]
//! confirms on a dense grid.  The trace of `p` is the integral of `f`,
//! whose piecewise-linear closed form telescopes to exactly `theta'`.
//!
//! Elements are kept symbolic: each `W^k` component is a base shape with
//! a time reflection and a shift by integer steps of `theta'`, a family
//! closed under the involution and under the order-2 weight flip.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Grids coarser than this are refused as meaningless for residual checks.
pub const MIN_GRID: usize = 1000;

/// Parameters of the bump construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BumpSpec {
    theta_prime: f64,
    ramp_width: f64,
    grid_size: usize,
}

impl BumpSpec {
    /// Requires `0 < ramp_width < theta_prime < 1/2`,
    /// `2 theta_prime + ramp_width < 1`, and a grid of at least
    /// [`MIN_GRID`] points.
    pub fn new(theta_prime: f64, ramp_width: f64, grid_size: usize) -> Result<Self> {
        if !(theta_prime.is_finite() && ramp_width.is_finite()) {
            return Err(Error::invalid("parameters must be finite"));
        }
        if !(0.0 < theta_prime && theta_prime < 0.5) {
            return Err(Error::invalid(format!(
                "theta_prime = {theta_prime} must lie in (0, 1/2)"
            )));
        }
        if !(0.0 < ramp_width && ramp_width < theta_prime) {
            return Err(Error::invalid(format!(
                "ramp_width = {ramp_width} must lie in (0, theta_prime)"
            )));
        }
        if 2.0 * theta_prime + ramp_width >= 1.0 {
            return Err(Error::invalid(format!(
                "2*theta_prime + ramp_width = {} must be below 1",
                2.0 * theta_prime + ramp_width
            )));
        }
        if grid_size < MIN_GRID {
            return Err(Error::invalid(format!(
                "grid_size = {grid_size} is below the minimum of {MIN_GRID}"
            )));
        }
        Ok(BumpSpec {
            theta_prime,
            ramp_width,
            grid_size,
        })
    }

    pub fn theta_prime(&self) -> f64 {
        self.theta_prime
    }

    pub fn ramp_width(&self) -> f64 {
        self.ramp_width
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }
}

/// The primitive one-variable shapes appearing in projection components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseShape {
    Zero,
    One,
    /// The plateau bump `f`: linear `0 -> 1` on `[0, eps]`, `1` on
    /// `[eps, theta']`, linear `1 -> 0` on `[theta', theta' + eps]`.
    Plateau,
    /// `g = sqrt(f - f^2)` restricted to the down-ramp
    /// `[theta', theta' + eps]`.
    SqrtOverlap,
}

/// `value(t) = base(time_sign * t + step_shift * theta')`, evaluated on
/// the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolicFunction {
    pub base: BaseShape,
    pub time_sign: i8,
    pub step_shift: i32,
}

impl SymbolicFunction {
    pub fn plain(base: BaseShape) -> Self {
        SymbolicFunction {
            base,
            time_sign: 1,
            step_shift: 0,
        }
    }

    pub fn eval(&self, spec: &BumpSpec, t: f64) -> f64 {
        let arg = f64::from(self.time_sign) * t + f64::from(self.step_shift) * spec.theta_prime;
        match self.base {
            BaseShape::Zero => 0.0,
            BaseShape::One => 1.0,
            BaseShape::Plateau => plateau(spec, arg),
            BaseShape::SqrtOverlap => sqrt_overlap(spec, arg),
        }
    }

    /// `t -> value(t + k * theta')`.
    pub fn shifted(&self, k: i32) -> Self {
        SymbolicFunction {
            base: self.base,
            time_sign: self.time_sign,
            step_shift: self.step_shift + i32::from(self.time_sign) * k,
        }
    }

    /// `t -> value(-t)`.
    pub fn reflected(&self) -> Self {
        SymbolicFunction {
            base: self.base,
            time_sign: -self.time_sign,
            step_shift: self.step_shift,
        }
    }

    /// Structural equality, ignoring parameters that cannot change a
    /// constant shape.
    pub fn equivalent(&self, other: &Self) -> bool {
        if self.base != other.base {
            return false;
        }
        matches!(self.base, BaseShape::Zero | BaseShape::One)
            || (self.time_sign == other.time_sign && self.step_shift == other.step_shift)
    }

    /// Exact integral over one period; invariant under shift and
    /// reflection.
    pub fn integral(&self, spec: &BumpSpec) -> f64 {
        match self.base {
            BaseShape::Zero => 0.0,
            BaseShape::One => 1.0,
            // two half-ramps of area eps/2 plus the plateau of length
            // theta' - eps telescope to exactly theta'
            BaseShape::Plateau => spec.theta_prime,
            // eps * integral of sqrt(s(1-s)) = eps * pi / 8
            BaseShape::SqrtOverlap => spec.ramp_width * PI / 8.0,
        }
    }
}

/// The plateau bump on the circle.
fn plateau(spec: &BumpSpec, t: f64) -> f64 {
    let x = t.rem_euclid(1.0);
    let tp = spec.theta_prime;
    let eps = spec.ramp_width;
    if x < eps {
        x / eps
    } else if x <= tp {
        1.0
    } else if x < tp + eps {
        1.0 - (x - tp) / eps
    } else {
        0.0
    }
}

/// `sqrt(f - f^2)` on the down-ramp window, zero elsewhere.
fn sqrt_overlap(spec: &BumpSpec, t: f64) -> f64 {
    let x = t.rem_euclid(1.0);
    let tp = spec.theta_prime;
    let eps = spec.ramp_width;
    if (tp..=tp + eps).contains(&x) {
        let f = plateau(spec, x);
        (f - f * f).max(0.0).sqrt()
    } else {
        0.0
    }
}

/// The two bump functions of the construction, evaluable anywhere on the
/// circle.
pub fn bump_pair(spec: &BumpSpec) -> (impl Fn(f64) -> f64 + '_, impl Fn(f64) -> f64 + '_) {
    (
        move |t: f64| plateau(spec, t),
        move |t: f64| sqrt_overlap(spec, t),
    )
}

/// A symbolic element `sum_k  h_k(U) W^k` with `W` the weight-`(0,-1)`
/// unitary; zero components are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionElement {
    spec: BumpSpec,
    components: BTreeMap<i32, SymbolicFunction>,
}

impl ProjectionElement {
    pub fn from_components(
        spec: BumpSpec,
        components: impl IntoIterator<Item = (i32, SymbolicFunction)>,
    ) -> Self {
        ProjectionElement {
            spec,
            components: components
                .into_iter()
                .filter(|(_, h)| h.base != BaseShape::Zero)
                .collect(),
        }
    }

    pub fn spec(&self) -> &BumpSpec {
        &self.spec
    }

    pub fn component(&self, k: i32) -> SymbolicFunction {
        self.components
            .get(&k)
            .copied()
            .unwrap_or(SymbolicFunction::plain(BaseShape::Zero))
    }

    pub fn components(&self) -> impl Iterator<Item = (&i32, &SymbolicFunction)> {
        self.components.iter()
    }

    /// Structural self-adjointness: the involution sends the `W^k`
    /// component `h_k` to the `W^{-k}` component
    /// `t -> conj(h_k(t + k theta'))`, so a real-shaped element is
    /// self-adjoint iff `h_{-k} = h_k(. + k theta')` for every `k`.
    pub fn is_self_adjoint(&self) -> bool {
        let ks: Vec<i32> = self.components.keys().flat_map(|k| [*k, -*k]).collect();
        ks.iter()
            .all(|&k| self.component(-k).equivalent(&self.component(k).shifted(k)))
    }

    /// Image under the order-2 weight flip `e_p -> e_{-p}`, which sends
    /// `U, W` to their inverses: `h_k(U) W^k -> h_k(-.)(U) W^{-k}`.
    pub fn reflect(&self) -> Self {
        ProjectionElement {
            spec: self.spec,
            components: self
                .components
                .iter()
                .map(|(k, h)| (-k, h.reflected()))
                .collect(),
        }
    }

    /// The canonical trace: the integral of the `W^0` component.
    pub fn trace(&self) -> f64 {
        self.component(0).integral(&self.spec)
    }
}

/// The assembled projection `g(U) W + f(U) + g(. + theta')(U) W^{-1}`,
/// the normal form of `g(U) W + f(U) + (g(U) W)*`.
pub fn assemble_projection(spec: BumpSpec) -> ProjectionElement {
    ProjectionElement::from_components(
        spec,
        vec![
            (1, SymbolicFunction::plain(BaseShape::SqrtOverlap)),
            (0, SymbolicFunction::plain(BaseShape::Plateau)),
            (
                -1,
                SymbolicFunction::plain(BaseShape::SqrtOverlap).shifted(1),
            ),
        ],
    )
}

/// Grid maxima of the three one-variable identities certifying
/// `p x p = p`, plus the closed-form trace.
#[derive(Clone, Copy, Debug)]
pub struct ProjectionReport {
    /// `max |g(t) g(t - theta')|` — the `W^2` component of `p^2`.
    pub cond_orthogonality: f64,
    /// `max |g(t) (f(t) + f(t - theta') - 1)|` — the `W` component of
    /// `p^2 - p`.
    pub cond_partition: f64,
    /// `max |f - f^2 - g^2 - g(. + theta')^2|` — the identity component
    /// of `p^2 - p`.
    pub cond_square: f64,
    /// `integral of f = theta'`, by the closed form.
    pub trace: f64,
    pub grid_size: usize,
}

/// Evaluate the three residuals on a uniform grid.
pub fn projection_residuals(spec: &BumpSpec) -> Result<ProjectionReport> {
    let (f, g) = bump_pair(spec);
    let tp = spec.theta_prime;
    let n = spec.grid_size;
    let mut c1 = 0.0f64;
    let mut c2 = 0.0f64;
    let mut c3 = 0.0f64;
    for i in 0..n {
        let t = i as f64 / n as f64;
        let gt = g(t);
        c1 = c1.max((gt * g(t - tp)).abs());
        c2 = c2.max((gt * (f(t) + f(t - tp) - 1.0)).abs());
        let ft = f(t);
        let gs = g(t + tp);
        c3 = c3.max((ft - ft * ft - gt * gt - gs * gs).abs());
    }
    Ok(ProjectionReport {
        cond_orthogonality: c1,
        cond_partition: c2,
        cond_square: c3,
        trace: assemble_projection(*spec).trace(),
        grid_size: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(tp: f64, eps: f64, grid: usize) -> BumpSpec {
        BumpSpec::new(tp, eps, grid).unwrap()
    }

    #[test]
    fn bump_spec_validation() {
        assert!(BumpSpec::new(0.3, 0.1, 100_000).is_ok());
        // ramp wider than the plateau parameter
        assert!(BumpSpec::new(0.1, 0.3, 100_000).is_err());
        // wrap-around: 2*0.45 + 0.2 >= 1
        assert!(BumpSpec::new(0.45, 0.2, 100_000).is_err());
        assert!(BumpSpec::new(0.55, 0.1, 100_000).is_err());
        assert!(BumpSpec::new(-0.3, 0.1, 100_000).is_err());
        // too coarse
        assert!(BumpSpec::new(0.3, 0.1, 999).is_err());
    }

    #[test]
    fn bump_pair_shapes() {
        let s = spec(0.3, 0.1, 100_000);
        let (f, g) = bump_pair(&s);
        assert_eq!(f(0.15), 1.0); // plateau midpoint
        assert_eq!(f(0.0), 0.0);
        assert_eq!(f(0.05), 0.5); // mid-ramp
        assert!((f(0.35) - 0.5).abs() < 1e-14); // mid down-ramp
        assert_eq!(f(0.75), 0.0);
        // g vanishes on [0, theta']
        for t in [0.0, 0.1, 0.2, 0.299, 0.45, 0.9] {
            if (0.3..=0.4).contains(&t) {
                continue;
            }
            assert_eq!(g(t), 0.0, "t = {t}");
        }
        // g peaks mid-window at 1/2
        assert!((g(0.35) - 0.5).abs() < 1e-12);
        // periodicity
        assert_eq!(f(1.15), f(0.15));
        assert_eq!(g(-0.65), g(0.35));
    }

    #[test]
    fn plateau_integral_matches_closed_form() {
        let s = spec(0.3, 0.1, 100_000);
        let (f, g) = bump_pair(&s);
        let n = 1_000_000usize;
        let riemann_f: f64 = (0..n).map(|i| f(i as f64 / n as f64)).sum::<f64>() / n as f64;
        assert!((riemann_f - 0.3).abs() < 1e-6, "{riemann_f}");
        let riemann_g: f64 = (0..n).map(|i| g(i as f64 / n as f64)).sum::<f64>() / n as f64;
        let closed = SymbolicFunction::plain(BaseShape::SqrtOverlap).integral(&s);
        assert!((riemann_g - closed).abs() < 1e-6, "{riemann_g} vs {closed}");
    }

    #[test]
    fn assembled_projection_structure() {
        let s = spec(0.3, 0.1, 100_000);
        let p = assemble_projection(s);
        assert_eq!(p.components().count(), 3);
        assert_eq!(p.component(0).base, BaseShape::Plateau);
        assert_eq!(p.component(1).base, BaseShape::SqrtOverlap);
        assert_eq!(
            p.component(-1),
            SymbolicFunction {
                base: BaseShape::SqrtOverlap,
                time_sign: 1,
                step_shift: 1,
            }
        );
        // the W component is supported on the down-ramp window
        for t in [0.0, 0.2, 0.5, 0.9] {
            assert_eq!(p.component(1).eval(&s, t), 0.0);
        }
        assert!(p.component(1).eval(&s, 0.35) > 0.4);
        // the W^{-1} component lives one step earlier
        assert!(p.component(-1).eval(&s, 0.05) > 0.4);
        assert_eq!(p.trace(), 0.3);
    }

    #[test]
    fn self_adjointness_is_structural() {
        let s = spec(0.3, 0.1, 100_000);
        let p = assemble_projection(s);
        assert!(p.is_self_adjoint());

        // dropping the shift breaks it
        let broken = ProjectionElement::from_components(
            s,
            vec![
                (1, SymbolicFunction::plain(BaseShape::SqrtOverlap)),
                (0, SymbolicFunction::plain(BaseShape::Plateau)),
                (-1, SymbolicFunction::plain(BaseShape::SqrtOverlap)),
            ],
        );
        assert!(!broken.is_self_adjoint());
    }

    #[test]
    fn reflection_is_involutive_and_preserves_self_adjointness() {
        let s = spec(0.3, 0.1, 100_000);
        let p = assemble_projection(s);
        let q = p.reflect();
        assert!(q.is_self_adjoint());
        assert_eq!(q.reflect(), p);
        assert_eq!(q.trace(), p.trace());
        // the reflected W component picks up the mirrored support
        assert!(q.component(-1).eval(&s, 1.0 - 0.35) > 0.4);
    }

    #[test]
    fn degenerate_constant_cases() {
        let s = spec(0.3, 0.1, 100_000);
        let unit = ProjectionElement::from_components(
            s,
            vec![
                (1, SymbolicFunction::plain(BaseShape::Zero)),
                (0, SymbolicFunction::plain(BaseShape::One)),
                (-1, SymbolicFunction::plain(BaseShape::Zero)),
            ],
        );
        assert_eq!(unit.components().count(), 1);
        assert!(unit.is_self_adjoint());
        assert_eq!(unit.trace(), 1.0);

        let zero = ProjectionElement::from_components(s, vec![]);
        assert!(zero.is_self_adjoint());
        assert_eq!(zero.trace(), 0.0);
    }

    #[test]
    fn residuals_for_the_pinned_cases() {
        let cases = [(0.3, 0.1), (std::f64::consts::SQRT_2 - 1.0, 0.05)];
        for (tp, eps) in cases {
            let s = spec(tp, eps, 100_000);
            let rep = projection_residuals(&s).unwrap();
            assert!(rep.cond_orthogonality <= 1e-12, "{rep:?}");
            assert!(rep.cond_partition <= 1e-12, "{rep:?}");
            assert!(rep.cond_square <= 1e-12, "{rep:?}");
            assert_eq!(rep.trace, tp);
        }
    }

    #[test]
    fn residuals_for_random_specs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..20 {
            let tp: f64 = rng.random_range(0.05..0.45);
            let hi = (tp * 0.9).min((1.0 - 2.0 * tp) * 0.9);
            let eps: f64 = rng.random_range((0.1 * hi)..hi);
            let s = spec(tp, eps, 20_000);
            let rep = projection_residuals(&s).unwrap();
            assert!(
                rep.cond_orthogonality <= 1e-12
                    && rep.cond_partition <= 1e-12
                    && rep.cond_square <= 1e-12,
                "sample {i}: {rep:?}"
            );
        }
        // one dense grid
        let rep = projection_residuals(&spec(0.27, 0.08, 1_000_000)).unwrap();
        assert!(rep.cond_square <= 1e-12, "{rep:?}");
    }
}
