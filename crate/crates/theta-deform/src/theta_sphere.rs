//! A deformed 4-sphere as a weight-graded monomial algebra.
//!
//! The coordinate functions are grouped into two complex generators
//! `z1 = x1 + i x2`, `z2 = x3 + i x4` and the real generator `x5`.  A
//! 2-torus rotates the two complex planes, giving `z1`, `z2` the weights
//! `(1,0)` and `(0,1)`; monomials in the five generators are then weight
//! vectors and the deformed product multiplies the ordinary commutative
//! monomial product by the rank-2 phase law: for monomials of weights
//! `p`, `q` the product picks up `exp(-2 pi i theta p^T J0 q)`.
//!
//! The sphere relation `z1 z1b + z2 z2b + x5^2 = 1` is *not* quotiented
//! out: elements live in the free weighted-commutative monomial basis,
//! and the radius element is exactly central (its terms all have weight
//! zero), which is what makes relation checks on representatives sound.
//!
//! The order-2 reflection `(x1, -x2, x3, -x4, x5)` conjugates both
//! complex generators; on monomials it swaps the exponents of `z` and
//! `zb` pairs.  It negates weights, and since the phase exponent is
//! invariant under negating both arguments it is an automorphism of the
//! deformed product with exactly zero equivariance residual.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::symmetry::GroupElement;
use crate::weight_algebra::{
    accumulate_into, phase_exponent, phase_factor, sum_moduli, DeformationForm, Weight,
    CANONICAL_EPS,
};

/// Display names of the five generators, in exponent order.
pub const GENERATOR_NAMES: [&str; 5] = ["z1", "z1b", "z2", "z2b", "x5"];

/// A commutative monomial `z1^a0 z1b^a1 z2^a2 z2b^a3 x5^a4`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SphereMonomial {
    exponents: [u32; 5],
}

impl SphereMonomial {
    pub fn new(exponents: [u32; 5]) -> Self {
        SphereMonomial { exponents }
    }

    pub fn one() -> Self {
        SphereMonomial::new([0; 5])
    }

    /// The `i`-th generator, in the order of [`GENERATOR_NAMES`].
    pub fn generator(i: usize) -> Self {
        let mut e = [0; 5];
        e[i] = 1;
        SphereMonomial::new(e)
    }

    pub fn exponents(&self) -> [u32; 5] {
        self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut e = [0u32; 5];
        for (out, (&x, &y)) in e
            .iter_mut()
            .zip(self.exponents.iter().zip(&other.exponents))
        {
            *out = x
                .checked_add(y)
                .ok_or_else(|| Error::invalid("monomial exponent overflow"))?;
        }
        Ok(SphereMonomial::new(e))
    }

    /// Torus weight `(a0 - a1, a2 - a3)`.
    pub fn weight(&self) -> Weight {
        let [a0, a1, a2, a3, _] = self.exponents;
        Weight::new(vec![
            i64::from(a0) - i64::from(a1),
            i64::from(a2) - i64::from(a3),
        ])
    }

    /// The reflection image: swap each `z` exponent with its conjugate's.
    pub fn reflected(&self) -> Self {
        let [a0, a1, a2, a3, a4] = self.exponents;
        SphereMonomial::new([a1, a0, a3, a2, a4])
    }
}

impl fmt::Display for SphereMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, &e) in GENERATOR_NAMES.iter().zip(&self.exponents) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Finite linear combination of monomials, in canonical form.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SphereElement {
    terms: BTreeMap<SphereMonomial, Complex64>,
}

impl SphereElement {
    pub fn zero() -> Self {
        SphereElement::default()
    }

    pub fn monomial(m: SphereMonomial) -> Self {
        SphereElement::from_terms(vec![(m, Complex64::new(1.0, 0.0))])
    }

    pub fn generator(i: usize) -> Self {
        SphereElement::monomial(SphereMonomial::generator(i))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (SphereMonomial, Complex64)>) -> Self {
        let mut out = SphereElement::default();
        for (m, c) in terms {
            *out.terms.entry(m).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        out.terms.retain(|_, c| c.norm() >= CANONICAL_EPS);
        out
    }

    pub fn coeff(&self, m: &SphereMonomial) -> Complex64 {
        self.terms
            .get(m)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SphereMonomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        SphereElement::from_terms(self.terms.iter().map(|(m, x)| (*m, c * x)))
    }

    pub fn add(&self, other: &Self) -> Self {
        SphereElement::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(m, c)| (*m, *c)),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }
}

/// `z1 z1b + z2 z2b + x5^2`, the element the sphere relation sets to 1.
pub fn radius_element() -> SphereElement {
    SphereElement::from_terms(vec![
        (
            SphereMonomial::new([1, 1, 0, 0, 0]),
            Complex64::new(1.0, 0.0),
        ),
        (
            SphereMonomial::new([0, 0, 1, 1, 0]),
            Complex64::new(1.0, 0.0),
        ),
        (
            SphereMonomial::new([0, 0, 0, 0, 2]),
            Complex64::new(1.0, 0.0),
        ),
    ])
}

pub fn sphere_l1_norm(u: &SphereElement) -> f64 {
    sum_moduli(u.terms.values())
}

/// Deformed product: commutative monomial product times the rank-2 phase
/// of the factor weights, with the usual pinned scalar order and
/// bit-ordered accumulation.
pub fn sphere_product(
    d: &DeformationForm,
    u: &SphereElement,
    v: &SphereElement,
) -> Result<SphereElement> {
    d.check_rank(2)?;
    let mut contributions = Vec::with_capacity(u.len() * v.len());
    for (mu, cu) in u.terms() {
        for (mv, cv) in v.terms() {
            let m = phase_exponent(d, &mu.weight(), &mv.weight())?;
            contributions.push((mu.mul(mv)?, (cu * cv) * phase_factor(d.theta(), m)));
        }
    }
    Ok(SphereElement {
        terms: accumulate_into(contributions),
    })
}

/// Involution: swap each `z` with its conjugate and conjugate the
/// coefficients (negating every weight, matching the torus convention).
pub fn sphere_star(u: &SphereElement) -> SphereElement {
    SphereElement::from_terms(u.terms().map(|(m, c)| (m.reflected(), c.conj())))
}

/// The order-2 reflection `(x1, -x2, x3, -x4, x5)`, linear on
/// coefficients: swap each `z` exponent pair, leave coefficients alone.
pub fn sphere_action(g: GroupElement, u: &SphereElement) -> SphereElement {
    if g.0.is_multiple_of(2) {
        return u.clone();
    }
    SphereElement::from_terms(u.terms().map(|(m, c)| (m.reflected(), *c)))
}

/// One ordered generator pair's commutation data: the phase exponent `m`
/// of the pair's weights and the ratio exponent `r = -2m`, meaning
/// `g x h = exp(2 pi i theta r) h x g`.
#[derive(Clone, Debug)]
pub struct GeneratorCommutation {
    pub left: &'static str,
    pub right: &'static str,
    pub phase_exponent: i64,
    pub ratio_exponent: i64,
}

/// Commutation table of the five generators plus centrality checks.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub theta: f64,
    pub commutations: Vec<GeneratorCommutation>,
    /// Ratio exponent of the pair `(z1, z2)`; the deformation parameter
    /// `lambda = exp(2 pi i theta r)` of the two-generator relation.
    pub lambda_exponent: i64,
    pub x5_is_central: bool,
    /// `l1(R x w - w x R)` for a dense probe `w`; exactly zero because
    /// every term of the radius element has weight zero.
    pub radius_residual: f64,
}

/// Compute the full generator commutation table for a rank-2 form.
pub fn relation_report(d: &DeformationForm) -> Result<RelationReport> {
    d.check_rank(2)?;
    let mut commutations = Vec::with_capacity(25);
    let mut x5_exact = true;
    for (i, left) in GENERATOR_NAMES.iter().enumerate() {
        for (j, right) in GENERATOR_NAMES.iter().enumerate() {
            let p = SphereMonomial::generator(i).weight();
            let q = SphereMonomial::generator(j).weight();
            let m = phase_exponent(d, &p, &q)?;
            commutations.push(GeneratorCommutation {
                left,
                right,
                phase_exponent: m,
                ratio_exponent: -2 * m,
            });
            if (i == 4 || j == 4) && m != 0 {
                x5_exact = false;
            }
        }
    }
    let lambda_exponent = commutations
        .iter()
        .find(|c| c.left == "z1" && c.right == "z2")
        .map(|c| c.ratio_exponent)
        .unwrap_or(0);

    let probe = dense_probe();
    let r = radius_element();
    let radius_residual =
        sphere_l1_norm(&sphere_product(d, &r, &probe)?.sub(&sphere_product(d, &probe, &r)?));
    let x5 = SphereElement::generator(4);
    let x5_residual =
        sphere_l1_norm(&sphere_product(d, &x5, &probe)?.sub(&sphere_product(d, &probe, &x5)?));

    Ok(RelationReport {
        theta: d.theta(),
        commutations,
        lambda_exponent,
        x5_is_central: x5_exact && x5_residual == 0.0,
        radius_residual,
    })
}

/// A fixed element touching every generator with generic coefficients.
fn dense_probe() -> SphereElement {
    SphereElement::from_terms(vec![
        (
            SphereMonomial::new([1, 0, 0, 0, 0]),
            Complex64::new(0.61, 0.24),
        ),
        (
            SphereMonomial::new([0, 1, 0, 0, 0]),
            Complex64::new(-0.37, 0.52),
        ),
        (
            SphereMonomial::new([0, 0, 1, 0, 0]),
            Complex64::new(0.18, -0.73),
        ),
        (
            SphereMonomial::new([0, 0, 0, 1, 0]),
            Complex64::new(0.84, 0.09),
        ),
        (
            SphereMonomial::new([0, 0, 0, 0, 1]),
            Complex64::new(-0.29, -0.41),
        ),
        (
            SphereMonomial::new([2, 0, 1, 0, 1]),
            Complex64::new(0.13, 0.77),
        ),
        (
            SphereMonomial::new([0, 1, 0, 2, 0]),
            Complex64::new(0.46, -0.17),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mono(e: [u32; 5]) -> SphereMonomial {
        SphereMonomial::new(e)
    }

    fn monomials_of_degree_at_most(max: u32) -> Vec<SphereMonomial> {
        let mut out = Vec::new();
        let m = max;
        for a0 in 0..=m {
            for a1 in 0..=(m - a0) {
                for a2 in 0..=(m - a0 - a1) {
                    for a3 in 0..=(m - a0 - a1 - a2) {
                        for a4 in 0..=(m - a0 - a1 - a2 - a3) {
                            out.push(mono([a0, a1, a2, a3, a4]));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn monomial_weight_examples() {
        assert_eq!(mono([1, 0, 0, 0, 0]).weight(), Weight::new(vec![1, 0]));
        assert_eq!(mono([0, 0, 0, 1, 0]).weight(), Weight::new(vec![0, -1]));
        assert_eq!(mono([1, 1, 0, 0, 1]).weight(), Weight::new(vec![0, 0]));
    }

    #[test]
    fn weight_is_multiplicative() {
        for a in monomials_of_degree_at_most(2) {
            for b in monomials_of_degree_at_most(2) {
                assert_eq!(a.mul(&b).unwrap().weight(), a.weight().add(&b.weight()));
            }
        }
    }

    #[test]
    fn product_examples() {
        let theta = 0.2;
        let d = DeformationForm::standard(theta);
        let z1 = SphereElement::generator(0);
        let z1b = SphereElement::generator(1);
        let z2 = SphereElement::generator(2);

        let p = sphere_product(&d, &z1, &z2).unwrap();
        assert_eq!(p.len(), 1);
        let expected = Complex64::from_polar(1.0, -std::f64::consts::TAU * theta);
        assert!((p.coeff(&mono([1, 0, 1, 0, 0])) - expected).norm() < 1e-15);

        let q = sphere_product(&d, &z1, &z1b).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q.coeff(&mono([1, 1, 0, 0, 0])), c(1.0, 0.0));
    }

    #[test]
    fn commutation_ratio_of_the_complex_generators() {
        let theta = 0.2;
        let d = DeformationForm::standard(theta);
        let z1 = SphereElement::generator(0);
        let z2 = SphereElement::generator(2);
        let ab = sphere_product(&d, &z1, &z2).unwrap();
        let ba = sphere_product(&d, &z2, &z1).unwrap();
        let key = mono([1, 0, 1, 0, 0]);
        let ratio = ab.coeff(&key) / ba.coeff(&key);
        let expected = Complex64::from_polar(1.0, -2.0 * std::f64::consts::TAU * theta);
        assert!((ratio - expected).norm() < 1e-14, "ratio {ratio}");
    }

    #[test]
    fn radius_element_is_exactly_central() {
        let d = DeformationForm::standard(0.2);
        let r = radius_element();
        let w = dense_probe();
        let rw = sphere_product(&d, &r, &w).unwrap();
        let wr = sphere_product(&d, &w, &r).unwrap();
        assert_eq!(rw, wr);
        assert_eq!(sphere_l1_norm(&rw.sub(&wr)), 0.0);
    }

    #[test]
    fn no_quotient_by_the_sphere_relation() {
        let d = DeformationForm::standard(0.2);
        let r = radius_element();
        let rr = sphere_product(&d, &r, &r).unwrap();
        assert_eq!(rr.len(), 6);
        assert_eq!(rr.coeff(&mono([1, 1, 1, 1, 0])), c(2.0, 0.0));
        assert_eq!(rr.coeff(&mono([2, 2, 0, 0, 0])), c(1.0, 0.0));
    }

    #[test]
    fn theta_zero_is_the_commutative_product() {
        let d = DeformationForm::standard(0.0);
        let u = dense_probe();
        let v = SphereElement::from_terms(vec![
            (mono([1, 0, 0, 1, 0]), c(0.9, -0.2)),
            (mono([0, 0, 0, 0, 3]), c(-0.5, 0.6)),
        ]);
        let uv = sphere_product(&d, &u, &v).unwrap();
        let vu = sphere_product(&d, &v, &u).unwrap();
        assert_eq!(uv, vu);
        // a spot check of plain coefficient multiplication
        let key = mono([1, 0, 0, 0, 3]);
        let expected = c(0.61, 0.24) * c(-0.5, 0.6);
        assert_eq!(uv.coeff(&key), expected);
    }

    #[test]
    fn relation_report_table() {
        let d = DeformationForm::standard(0.2);
        let rep = relation_report(&d).unwrap();
        assert_eq!(rep.commutations.len(), 25);
        let find = |l: &str, r: &str| {
            rep.commutations
                .iter()
                .find(|c| c.left == l && c.right == r)
                .unwrap()
        };
        assert_eq!(find("z1", "z2").ratio_exponent, -2);
        assert_eq!(find("z2", "z1").ratio_exponent, 2);
        assert_eq!(find("z1", "x5").ratio_exponent, 0);
        assert_eq!(find("z1", "z1b").ratio_exponent, 0);
        assert_eq!(find("z1", "z2b").ratio_exponent, 2);
        assert_eq!(rep.lambda_exponent, -2);
        assert!(rep.x5_is_central);
        assert_eq!(rep.radius_residual, 0.0);
    }

    #[test]
    fn reflection_is_involutive_and_exactly_equivariant() {
        let d = DeformationForm::standard(0.37);
        let g = GroupElement(1);
        let u = dense_probe();
        let v = SphereElement::from_terms(vec![
            (mono([0, 2, 1, 0, 0]), c(0.3, 0.8)),
            (mono([1, 0, 0, 0, 2]), c(-0.6, 0.1)),
        ]);
        assert_eq!(sphere_action(g, &sphere_action(g, &u)), u);
        assert_eq!(sphere_action(GroupElement(0), &u), u);

        let lhs = sphere_action(g, &sphere_product(&d, &u, &v).unwrap());
        let rhs = sphere_product(&d, &sphere_action(g, &u), &sphere_action(g, &v)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(sphere_l1_norm(&lhs.sub(&rhs)), 0.0);
    }

    #[test]
    fn reflection_sends_z_to_conjugate() {
        let z1 = SphereElement::generator(0);
        let z1b = SphereElement::generator(1);
        assert_eq!(sphere_action(GroupElement(1), &z1), z1b);
        let x5cubed = SphereElement::monomial(mono([0, 0, 0, 0, 3]));
        assert_eq!(sphere_action(GroupElement(1), &x5cubed), x5cubed);
    }

    #[test]
    fn star_is_involutive_antimultiplicative_and_matches_weights() {
        let d = DeformationForm::standard(0.23);
        let u = dense_probe();
        let v = SphereElement::from_terms(vec![
            (mono([1, 0, 2, 0, 0]), c(0.25, -0.85)),
            (mono([0, 1, 0, 0, 1]), c(0.64, 0.31)),
        ]);
        assert_eq!(sphere_star(&sphere_star(&u)), u);
        let lhs = sphere_star(&sphere_product(&d, &u, &v).unwrap());
        let rhs = sphere_product(&d, &sphere_star(&v), &sphere_star(&u)).unwrap();
        assert_eq!(lhs, rhs);
        // the induced weight map matches the torus involution: p -> -p
        for m in monomials_of_degree_at_most(3) {
            assert_eq!(m.reflected().weight(), m.weight().neg());
        }
    }

    #[test]
    fn associativity_exponent_identity_low_degree() {
        let d = DeformationForm::standard(1.0);
        let monos = monomials_of_degree_at_most(2);
        for a in &monos {
            for b in &monos {
                for c in &monos {
                    let (p, q, r) = (a.weight(), b.weight(), c.weight());
                    let left = phase_exponent(&d, &p, &q).unwrap()
                        + phase_exponent(&d, &p.add(&q), &r).unwrap();
                    let right = phase_exponent(&d, &q, &r).unwrap()
                        + phase_exponent(&d, &p, &q.add(&r)).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn associativity_on_elements_within_float_noise() {
        let d = DeformationForm::standard(0.37);
        // exhaustive monomial triples of total degree at most 4
        let total = 4u32;
        {
            for a in monomials_of_degree_at_most(total) {
                for b in monomials_of_degree_at_most(total - a.degree()) {
                    for cc in monomials_of_degree_at_most(total - a.degree() - b.degree()) {
                        let (ea, eb, ec) = (
                            SphereElement::monomial(a),
                            SphereElement::monomial(b),
                            SphereElement::monomial(cc),
                        );
                        let left = sphere_product(&d, &sphere_product(&d, &ea, &eb).unwrap(), &ec)
                            .unwrap();
                        let right = sphere_product(&d, &ea, &sphere_product(&d, &eb, &ec).unwrap())
                            .unwrap();
                        assert!(sphere_l1_norm(&left.sub(&right)) < 1e-12);
                    }
                }
            }
        }
    }
}
