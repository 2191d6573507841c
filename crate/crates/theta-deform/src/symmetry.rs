//! Finite cyclic symmetries of the deformed torus algebra.
//!
//! A cyclic group of order `i` acts on the torus through an integer matrix
//! `rho` of finite order; the induced map on characters sends `e_p` to
//! `e_{(rho^{-1})^T p}`.  The action commutes with the deformed product
//! precisely when `rho` preserves the skew form (`rho^T J0 rho = J0`) and
//! the orientation (`det rho = +1`); both conditions, along with
//! `rho^i = I`, are checked in exact integer arithmetic.
//!
//! Lattice symmetries of finite order on the 2-torus exist only for
//! orders 2, 3, 4 and 6 (the crystallographic restriction);
//! [`builtin_generator`] returns one standard representative per order.

use crate::error::{Error, Result};
use crate::intmat::{smith_with_transforms, IntMat};
use crate::weight_algebra::{
    deformed_product, l1_norm, phase_exponent, AlgebraElement, DeformationForm, PhaseExponent,
    Weight,
};
use num::rational::Rational64;
use num::Zero;

/// An element of the cyclic group `Z/order`, stored as a reduced exponent
/// of the chosen generator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement(pub u32);

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement(0)
    }

    pub fn reduced(exponent: u32, order: u32) -> Self {
        GroupElement(exponent % order)
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    pub fn compose(self, other: GroupElement, order: u32) -> GroupElement {
        GroupElement((self.0 + other.0) % order)
    }

    pub fn inverse(self, order: u32) -> GroupElement {
        GroupElement((order - self.0 % order) % order)
    }
}

/// A cyclic group acting on the torus lattice through a generator matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicAction {
    order: u32,
    generator: IntMat,
}

impl CyclicAction {
    /// Requires `generator^order = I`; smaller true orders are permitted
    /// (the action is then not faithful).
    pub fn new(order: u32, generator: IntMat) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("group order must be positive"));
        }
        if !generator.is_square() {
            return Err(Error::invalid("generator matrix must be square"));
        }
        if !generator.pow(order)?.is_identity() {
            return Err(Error::invalid(format!(
                "generator does not satisfy rho^{order} = I"
            )));
        }
        Ok(CyclicAction { order, generator })
    }

    /// The standard order-`i` lattice rotation, `i` in {2, 3, 4, 6}.
    pub fn builtin(i: u32) -> Result<Self> {
        CyclicAction::new(i, builtin_generator(i)?)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn generator(&self) -> &IntMat {
        &self.generator
    }

    pub fn rank(&self) -> usize {
        self.generator.rows()
    }

    /// True when no smaller positive power of the generator is the identity.
    pub fn is_faithful(&self) -> Result<bool> {
        for k in 1..self.order {
            if self.generator.pow(k)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `rho(g)` as an explicit matrix.
    pub fn point_matrix(&self, g: GroupElement) -> Result<IntMat> {
        self.generator.pow(g.0 % self.order)
    }

    /// The matrix `(rho(g)^{-1})^T` implementing `g` on weights.
    pub fn weight_matrix(&self, g: GroupElement) -> Result<IntMat> {
        Ok(self.point_matrix(g)?.inverse()?.transpose())
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement)
    }
}

/// One standard generator per crystallographic order.
pub fn builtin_generator(i: u32) -> Result<IntMat> {
    let rows: &[Vec<i64>] = match i {
        2 => &[vec![-1, 0], vec![0, -1]],
        3 => &[vec![-1, -1], vec![1, 0]],
        4 => &[vec![0, -1], vec![1, 0]],
        6 => &[vec![0, -1], vec![1, 1]],
        _ => return Err(Error::UnsupportedOrder(i)),
    };
    IntMat::from_rows(rows)
}

/// Exact compatibility diagnostics between an action and a form.
#[derive(Clone, Debug)]
pub struct CompatibilityReport {
    /// `rho^T J0 rho = J0`, checked in integer arithmetic.
    pub preserves_form: bool,
    /// `det rho = +1`.
    pub orientation_preserving: bool,
    /// `rho^order = I`.
    pub order_satisfied: bool,
    pub determinant: i64,
}

impl CompatibilityReport {
    pub fn is_compatible(&self) -> bool {
        self.preserves_form && self.orientation_preserving && self.order_satisfied
    }
}

pub fn check_compatibility(
    action: &CyclicAction,
    d: &DeformationForm,
) -> Result<CompatibilityReport> {
    let rho = action.generator();
    if rho.rows() != d.rank() {
        return Err(Error::DimensionMismatch {
            expected: d.rank(),
            got: rho.rows(),
            context: "action rank vs form rank",
        });
    }
    let conj = rho.transpose().mul(d.j0())?.mul(rho)?;
    let det = rho.det()?;
    Ok(CompatibilityReport {
        preserves_form: conj == *d.j0(),
        orientation_preserving: det == 1,
        order_satisfied: rho.pow(action.order())?.is_identity(),
        determinant: det,
    })
}

/// Image of a weight under `g`: `p -> (rho(g)^{-1})^T p`.
pub fn weight_action(action: &CyclicAction, g: GroupElement, p: &Weight) -> Result<Weight> {
    Ok(Weight::new(action.weight_matrix(g)?.apply(&p.0)?))
}

/// Apply `g` to an element termwise.  Coefficients are untouched, so the
/// trace and l1 norm are preserved exactly.
pub fn act(action: &CyclicAction, g: GroupElement, a: &AlgebraElement) -> Result<AlgebraElement> {
    let w = action.weight_matrix(g)?;
    Ok(a.map_weights(|p| Weight::new(w.apply(&p.0).expect("rank checked"))))
}

/// A pair of weights whose phase exponents disagree under the action,
/// witnessing an equivariance failure.
#[derive(Clone, Debug)]
pub struct ExponentMismatch {
    pub p: Weight,
    pub q: Weight,
    pub original: PhaseExponent,
    pub transported: PhaseExponent,
}

#[derive(Clone, Debug)]
pub struct EquivarianceReport {
    /// `l1(g(a x b) - g(a) x g(b))`; exactly zero for compatible actions.
    pub residual: f64,
    pub mismatches: Vec<ExponentMismatch>,
}

/// Compare `g(a x b)` with `g(a) x g(b)`.
///
/// For an action passing [`check_compatibility`] the two sides agree
/// bitwise and the report is empty.  Incompatible actions are rejected
/// unless `allow_incompatible` is set (negative tests).
pub fn equivariance_residual(
    action: &CyclicAction,
    g: GroupElement,
    d: &DeformationForm,
    a: &AlgebraElement,
    b: &AlgebraElement,
    allow_incompatible: bool,
) -> Result<EquivarianceReport> {
    if !allow_incompatible && !check_compatibility(action, d)?.is_compatible() {
        return Err(Error::invalid(
            "action is not compatible with the form; pass allow_incompatible for negative tests",
        ));
    }
    let transported_product = act(action, g, &deformed_product(d, a, b)?)?;
    let product_of_transported = deformed_product(d, &act(action, g, a)?, &act(action, g, b)?)?;
    let residual = l1_norm(&transported_product.sub(&product_of_transported));

    let wmat = action.weight_matrix(g)?;
    let mut mismatches = Vec::new();
    for (p, _) in a.terms() {
        for (q, _) in b.terms() {
            let original = phase_exponent(d, p, q)?;
            let sp = Weight::new(wmat.apply(&p.0)?);
            let sq = Weight::new(wmat.apply(&q.0)?);
            let transported = phase_exponent(d, &sp, &sq)?;
            if original != transported {
                mismatches.push(ExponentMismatch {
                    p: p.clone(),
                    q: q.clone(),
                    original,
                    transported,
                });
            }
        }
    }
    Ok(EquivarianceReport {
        residual,
        mismatches,
    })
}

/// Solutions of `rho(g) x = x` on the torus `R^n / Z^n`, as exact
/// rationals in `[0, 1)^n`, sorted lexicographically.
///
/// The congruence `(rho(g) - I) x = 0 mod Z^n` is solved through the
/// Smith decomposition `U (rho - I) V = S`: with `y = V^{-1} x` it
/// decouples into `s_i y_i in Z`, giving exactly `|det(rho(g) - I)|`
/// solutions.  Errors when `rho(g) - I` is singular (`g` acts with
/// non-isolated fixed points; in particular `g = e`).
pub fn torus_fixed_points(action: &CyclicAction, g: GroupElement) -> Result<Vec<Vec<Rational64>>> {
    let n = action.rank();
    let m = action.point_matrix(g)?.sub(&IntMat::identity(n))?;
    let det = m.det()?;
    if det == 0 {
        return Err(Error::Singular(
            "rho(g) - I is singular: fixed points are not isolated".into(),
        ));
    }
    let dec = smith_with_transforms(&m);
    let diag = dec.diagonal();
    let v = dec.v;

    let mut points = Vec::with_capacity(det.unsigned_abs() as usize);
    let mut counters = vec![0i64; n];
    loop {
        // x = V y with y_i = counters[i] / diag[i], reduced into [0,1)
        let point: Vec<Rational64> = (0..n)
            .map(|i| {
                let mut acc = Rational64::zero();
                for (j, &k) in counters.iter().enumerate() {
                    acc += Rational64::new(v[(i, j)] * k, diag[j]);
                }
                fract(acc)
            })
            .collect();
        points.push(point);

        // odometer over the box prod [0, diag[i])
        let mut idx = 0;
        loop {
            if idx == n {
                let mut sorted = points;
                sorted.sort();
                debug_assert_eq!(sorted.len(), det.unsigned_abs() as usize);
                return Ok(sorted);
            }
            counters[idx] += 1;
            if counters[idx] < diag[idx] {
                break;
            }
            counters[idx] = 0;
            idx += 1;
        }
    }
}

/// Reduce a rational into `[0, 1)`.
pub fn fract(r: Rational64) -> Rational64 {
    r - r.floor()
}
