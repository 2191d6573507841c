//! Crossed products of the deformed torus algebra by finite cyclic groups.
//!
//! Elements are finite sums `c · e_p u_g` indexed by (group exponent,
//! weight) pairs, multiplied by `(a u_g)(b u_h) = (a x beta_g(b)) u_{gh}`
//! where `x` is the deformed product and `beta` the chosen group action.
//!
//! Two actions appear: lattice-matrix actions ([`CyclicAction`]) relabel
//! weights, and torus translations ([`TranslationAction`]) multiply each
//! character by a unit scalar while leaving weights alone.  Because
//! translations commute with the weight grading, the deformation can be
//! applied before or after forming the translation crossed product; the
//! two constructions are compared term by term by
//! [`commuting_deformation_compare`].
//!
//! Scalar factors in every product routine are applied in one pinned
//! order — coefficient product, then translation scalar, then deformation
//! phase — and sums are accumulated in coefficient-bit order.  Together
//! with exact integer/rational bookkeeping for all exponents this makes
//! the structural identities in this module hold bitwise, not just up to
//! rounding.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num::complex::Complex64;
use num::rational::Rational64;
use num::Zero;

use crate::error::{Error, Result};
use crate::symmetry::{fract, CyclicAction, GroupElement};
use crate::weight_algebra::{
    accumulate_into, phase_exponent, phase_factor, sum_moduli, AlgebraElement, DeformationForm,
    Weight,
};

/// Cap on the number of basis pairs [`commuting_deformation_compare`] will
/// examine unless the caller raises it.
pub const DEFAULT_COMPARE_CAP: usize = 4_000_000;

/// Finite linear combination of `e_p u_g`, in canonical form: group
/// exponents reduced mod the order, no coefficients below the canonical
/// threshold, all weights of one rank.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossedElement {
    rank: usize,
    order: u32,
    terms: BTreeMap<(u32, Weight), Complex64>,
}

impl CrossedElement {
    pub fn zero(rank: usize, order: u32) -> Self {
        CrossedElement {
            rank,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// The single term `e_p u_{g^k}`.
    pub fn basis(order: u32, k: u32, p: Weight) -> Self {
        let rank = p.dim();
        CrossedElement::from_terms(rank, order, vec![(k, p, Complex64::new(1.0, 0.0))])
            .expect("basis term is well-formed")
    }

    /// The multiplicative unit `e_0 u_e`.
    pub fn unit(rank: usize, order: u32) -> Self {
        CrossedElement::basis(order, 0, Weight::zero(rank))
    }

    pub fn from_terms(
        rank: usize,
        order: u32,
        terms: impl IntoIterator<Item = (u32, Weight, Complex64)>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("group order must be positive"));
        }
        let mut out = CrossedElement::zero(rank, order);
        for (k, p, c) in terms {
            if p.dim() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: p.dim(),
                    context: "crossed term weight rank",
                });
            }
            *out.terms
                .entry((k % order, p))
                .or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        out.canonicalize();
        Ok(out)
    }

    /// Embed a torus element in the group-identity component.
    pub fn from_torus(a: &AlgebraElement, rank: usize, order: u32) -> Result<Self> {
        CrossedElement::from_terms(rank, order, a.terms().map(|(p, c)| (0u32, p.clone(), *c)))
    }

    /// The torus element sitting in the `u_{g^k}` component.
    pub fn component(&self, k: u32) -> AlgebraElement {
        let k = k % self.order;
        AlgebraElement::from_terms(
            self.terms
                .iter()
                .filter(|((g, _), _)| *g == k)
                .map(|((_, p), c)| (p.clone(), *c)),
        )
    }

    fn canonicalize(&mut self) {
        self.terms
            .retain(|_, c| c.norm() >= crate::weight_algebra::CANONICAL_EPS);
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, k: u32, p: &Weight) -> Complex64 {
        self.terms
            .get(&(k % self.order, p.clone()))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, Weight), &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|x| *x *= c);
        out.canonicalize();
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        CrossedElement::from_terms(
            self.rank,
            self.order,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|((k, p), c)| (*k, p.clone(), *c)),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: other.rank,
                context: "crossed element ranks",
            });
        }
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                expected: self.order as usize,
                got: other.order as usize,
                context: "crossed element group orders",
            });
        }
        Ok(())
    }

    fn check_action(&self, act: &CyclicAction) -> Result<()> {
        if self.order != act.order() || self.rank != act.rank() {
            return Err(Error::DimensionMismatch {
                expected: act.rank(),
                got: self.rank,
                context: "crossed element vs action shape",
            });
        }
        Ok(())
    }
}

/// Sum of coefficient moduli, accumulated in a fixed order.
pub fn crossed_l1_norm(x: &CrossedElement) -> f64 {
    sum_moduli(x.terms.values())
}

/// Crossed-product multiplication for a lattice-matrix action:
/// `(e_p u_{g^k})(e_q u_{g^l}) = phase * e_{p + s_k(q)} u_{g^{k+l}}`
/// with `s_k` the weight action of `g^k` and the phase taken from the
/// deformed product of `e_p` and `e_{s_k(q)}`.
pub fn crossed_product(
    act: &CyclicAction,
    d: &DeformationForm,
    x: &CrossedElement,
    y: &CrossedElement,
) -> Result<CrossedElement> {
    x.check_shape(y)?;
    x.check_action(act)?;
    d.check_rank(x.rank)?;
    let weight_mats: Vec<_> = (0..act.order())
        .map(|k| act.weight_matrix(GroupElement(k)))
        .collect::<Result<_>>()?;

    let mut contributions = Vec::with_capacity(x.len() * y.len());
    for ((k, p), cx) in x.terms() {
        for ((l, q), cy) in y.terms() {
            let sq = Weight::new(weight_mats[*k as usize].apply(&q.0)?);
            let m = phase_exponent(d, p, &sq)?;
            let key = ((k + l) % act.order(), p.add(&sq));
            contributions.push((key, (cx * cy) * phase_factor(d.theta(), m)));
        }
    }
    Ok(CrossedElement {
        rank: x.rank,
        order: x.order,
        terms: accumulate_into(contributions),
    })
}

/// Involution `(a u_g)* = beta_{g^{-1}}(a*) u_{g^{-1}}`: each term
/// `c e_p u_{g^k}` maps to `conj(c) e_{-s_{-k}(p)} u_{g^{-k}}`.
pub fn crossed_star(act: &CyclicAction, x: &CrossedElement) -> Result<CrossedElement> {
    x.check_action(act)?;
    let mut terms = BTreeMap::new();
    for ((k, p), c) in x.terms() {
        let kinv = GroupElement(*k).inverse(act.order());
        let sp = Weight::new(act.weight_matrix(kinv)?.apply(&p.0)?);
        terms.insert((kinv.0, sp.neg()), c.conj());
    }
    Ok(CrossedElement {
        rank: x.rank,
        order: x.order,
        terms,
    })
}

/// Canonical trace: the coefficient of `e_0 u_e`, with no averaging
/// factor, so the group-identity embedding is trace-compatible with the
/// torus algebra.
pub fn crossed_trace(x: &CrossedElement) -> Complex64 {
    x.coeff(0, &Weight::zero(x.rank))
}

/// A torus translation of finite order: the shift vector `t` satisfies
/// `order * t` integral, and the induced action multiplies `e_q u_*` by
/// `exp(2 pi i q.(k t))` without moving the weight.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslationAction {
    shift: Vec<Rational64>,
    order: u32,
}

impl TranslationAction {
    /// Shift components are reduced into `[0, 1)`; each must have
    /// denominator dividing `order`.
    pub fn new(shift: Vec<Rational64>, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("group order must be positive"));
        }
        let shift: Vec<Rational64> = shift.into_iter().map(fract).collect();
        for t in &shift {
            if !(t * Rational64::from_integer(order as i64)).is_integer() {
                return Err(Error::invalid(format!(
                    "shift component {t} does not have order dividing {order}"
                )));
            }
        }
        Ok(TranslationAction { shift, order })
    }

    pub fn rank(&self) -> usize {
        self.shift.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn shift(&self) -> &[Rational64] {
        &self.shift
    }

    /// The exact angle (in turns) by which `g^k` scales `e_q`.
    pub fn angle_turns(&self, k: u32, q: &Weight) -> Result<Rational64> {
        if q.dim() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: q.dim(),
                context: "weight vs translation shift",
            });
        }
        let mut acc = Rational64::zero();
        for (qi, ti) in q.0.iter().zip(&self.shift) {
            acc += Rational64::from_integer(qi * (k % self.order) as i64) * ti;
        }
        Ok(fract(acc))
    }

    /// The unit scalar `exp(2 pi i q.(k t))`.
    pub fn scalar(&self, k: u32, q: &Weight) -> Result<Complex64> {
        Ok(unit_phase(self.angle_turns(k, q)?))
    }

    /// Apply `g^k`: scale each coefficient, leave weights alone.
    pub fn translate(&self, k: u32, a: &AlgebraElement) -> Result<AlgebraElement> {
        let mut terms = Vec::with_capacity(a.len());
        for (q, c) in a.terms() {
            terms.push((q.clone(), c * self.scalar(k, q)?));
        }
        Ok(AlgebraElement::from_terms(terms))
    }
}

/// `exp(2 pi i turns)` with quarter-turn angles returned exactly.
pub fn unit_phase(turns: Rational64) -> Complex64 {
    let t = fract(turns);
    match (*t.numer(), *t.denom()) {
        (0, _) => Complex64::new(1.0, 0.0),
        (1, 4) => Complex64::new(0.0, 1.0),
        (1, 2) => Complex64::new(-1.0, 0.0),
        (3, 4) => Complex64::new(0.0, -1.0),
        (n, d) => Complex64::from_polar(1.0, TAU * (n as f64) / (d as f64)),
    }
}

/// Crossed product over a translation action, with the torus factors
/// multiplied by the deformed product: each basis pair contributes
/// `((cx * cy) * T) * P` at `(k + l, p + q)`, where `T` is the
/// translation scalar of `g^k` on `e_q` and `P` the deformation phase of
/// the pair `(p, q)` — the product in "deform first, then take the
/// crossed product".
pub fn crossed_product_translation(
    act: &TranslationAction,
    d: &DeformationForm,
    x: &CrossedElement,
    y: &CrossedElement,
) -> Result<CrossedElement> {
    translation_product_impl(act, d, x, y, true)
}

/// The same underlying algebra built in the other order — the crossed
/// product of the undeformed torus by the translation, deformed through
/// the lifted weight grading (a crossed term `e_q u_*` keeps the weight
/// `q`).  Each basis pair contributes the undeformed crossed coefficient
/// `(cx * cy) * T` multiplied by the grading phase `P` of `(p, q)`.
pub fn deformed_product_of_crossed(
    act: &TranslationAction,
    d: &DeformationForm,
    x: &CrossedElement,
    y: &CrossedElement,
) -> Result<CrossedElement> {
    translation_product_impl(act, d, x, y, false)
}

fn translation_product_impl(
    act: &TranslationAction,
    d: &DeformationForm,
    x: &CrossedElement,
    y: &CrossedElement,
    deform_inside: bool,
) -> Result<CrossedElement> {
    x.check_shape(y)?;
    if x.order != act.order() || x.rank != act.rank() {
        return Err(Error::DimensionMismatch {
            expected: act.rank(),
            got: x.rank,
            context: "crossed element vs translation shape",
        });
    }
    d.check_rank(x.rank)?;

    let mut contributions = Vec::with_capacity(x.len() * y.len());
    for ((k, p), cx) in x.terms() {
        for ((l, q), cy) in y.terms() {
            let key = ((k + l) % act.order(), p.add(q));
            let value = if deform_inside {
                // beta_k(e_q) = T e_q carries the unchanged weight q into
                // the deformed product with e_p
                let translated = act.scalar(*k, q)?;
                let m = phase_exponent(d, p, q)?;
                ((cx * cy) * translated) * phase_factor(d.theta(), m)
            } else {
                // undeformed crossed coefficient first, then the grading
                // phase of the lifted weights
                let undeformed = (cx * cy) * act.scalar(*k, q)?;
                undeformed * phase_factor(d.theta(), phase_exponent(d, p, q)?)
            };
            contributions.push((key, value));
        }
    }
    Ok(CrossedElement {
        rank: x.rank,
        order: x.order,
        terms: accumulate_into(contributions),
    })
}

/// Term-by-term comparison of the two translation crossed products.
#[derive(Clone, Debug)]
pub struct CommutingComparison {
    pub order: u32,
    pub box_bound: i64,
    pub pairs_checked: usize,
    /// Largest coefficient difference over all basis pairs; the two
    /// constructions are contracted to agree exactly.
    pub max_difference: f64,
}

/// Multiply every pair of basis elements `e_p u_{g^k}`, `e_q u_{g^l}`
/// with `|p|, |q| <= box_bound` (sup norm) both ways and report the
/// largest coefficient difference, which is exactly zero: the
/// translation scalar and the deformation phase are attached to the same
/// term keys by both constructions, in the same order.
pub fn commuting_deformation_compare(
    act: &TranslationAction,
    d: &DeformationForm,
    box_bound: i64,
    cap: usize,
) -> Result<CommutingComparison> {
    if box_bound < 0 {
        return Err(Error::invalid("box bound must be non-negative"));
    }
    d.check_rank(act.rank())?;
    let n = act.rank();
    let side = (2 * box_bound + 1) as usize;
    let weights_in_box = side.pow(n as u32);
    let basis_count = weights_in_box * act.order() as usize;
    let pair_count = basis_count * basis_count;
    if pair_count > cap {
        return Err(Error::ResourceLimit(format!(
            "{pair_count} basis pairs exceed the cap of {cap}"
        )));
    }

    let mut weights = Vec::with_capacity(weights_in_box);
    let mut counters = vec![-box_bound; n];
    'outer: loop {
        weights.push(Weight::new(counters.clone()));
        for c in counters.iter_mut() {
            *c += 1;
            if *c <= box_bound {
                continue 'outer;
            }
            *c = -box_bound;
        }
        break;
    }

    let mut max_difference = 0.0f64;
    let mut pairs_checked = 0usize;
    for k in 0..act.order() {
        for p in &weights {
            let x = CrossedElement::basis(act.order(), k, p.clone());
            for l in 0..act.order() {
                for q in &weights {
                    let y = CrossedElement::basis(act.order(), l, q.clone());
                    let inside = crossed_product_translation(act, d, &x, &y)?;
                    let outside = deformed_product_of_crossed(act, d, &x, &y)?;
                    let diff = crossed_l1_norm(&inside.sub(&outside)?);
                    max_difference = max_difference.max(diff);
                    pairs_checked += 1;
                }
            }
        }
    }
    Ok(CommutingComparison {
        order: act.order(),
        box_bound,
        pairs_checked,
        max_difference,
    })
}
