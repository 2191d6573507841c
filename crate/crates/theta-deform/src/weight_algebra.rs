//! Weight-graded function algebra on the n-torus and its deformed product.
//!
//! The undeformed object is the algebra of trigonometric polynomials on
//! `T^n = R^n / Z^n`, spanned by characters `e_p(x) = exp(2*pi*i p.x)` for
//! integer weight vectors `p`.  Averaging translates of two functions
//! against the oscillatory kernel `exp(2*pi*i u.v)`, with the translation
//! of the first factor twisted by a skew matrix `J = theta * J0`, deforms
//! pointwise multiplication into a noncommutative product.  On characters
//! the average collapses to a pure phase:
//!
//! ```text
//! e_p x e_q = exp(-2*pi*i * theta * (p^T J0 q)) * e_{p+q}
//! ```
//!
//! The integer exponent `m = p^T J0 q` is the only place noncommutativity
//! enters, so this module keeps `m` in exact integer arithmetic
//! ([`phase_exponent`], [`character_product`]) and only converts to a
//! floating-point phase at the last step.  Algebraic identities
//! (associativity, star anti-multiplicativity, trace symmetry,
//! equivariance) then reduce to integer identities on exponents and are
//! tested exactly, immune to float rounding.
//!
//! [`oscillatory_check`] is the independent numerical route: it evaluates
//! the defining double integral with a Gaussian regulator in closed form
//! and extrapolates the regulator away, recovering the phase law to
//! quadrature accuracy without ever touching `phase_exponent`.

use crate::error::{Error, Result};
use crate::intmat::IntMat;
use num::complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

/// Coefficients with modulus below this are dropped by canonicalization.
pub const CANONICAL_EPS: f64 = 1e-15;

/// Ratio between the conventional quantum-torus parameter and `theta`:
/// with `U = e_(1,0)` and `V = e_(0,1)` the standard form gives
/// `V x U = exp(2*pi*i * THETA_PRIME_FACTOR * theta) U x V`.
pub const THETA_PRIME_FACTOR: f64 = 2.0;

/// Exact integer phase exponent `m = p^T J0 q`.
pub type PhaseExponent = i64;

/// Integer weight vector indexing a character `e_p` on the torus.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Weight(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("weight overflow"))
                .collect(),
        )
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The deformation data: a rank, an integer skew-symmetric matrix `J0`,
/// and a real parameter `theta`, together encoding `J = theta * J0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationForm {
    rank: usize,
    j0: IntMat,
    theta: f64,
}

impl DeformationForm {
    pub fn new(j0: IntMat, theta: f64) -> Result<Self> {
        if !j0.is_square() {
            return Err(Error::invalid("J0 must be square"));
        }
        if !j0.is_skew_symmetric() {
            return Err(Error::invalid("J0 must be skew-symmetric"));
        }
        if !theta.is_finite() {
            return Err(Error::invalid("theta must be finite"));
        }
        Ok(DeformationForm {
            rank: j0.rows(),
            j0,
            theta,
        })
    }

    /// Rank 2 with the standard symplectic `J0 = [[0,1],[-1,0]]`.
    pub fn standard(theta: f64) -> Self {
        let j0 = IntMat::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        DeformationForm::new(j0, theta).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn j0(&self) -> &IntMat {
        &self.j0
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        DeformationForm::new(self.j0.clone(), theta)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if rank != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: rank,
                context: "deformation form rank",
            });
        }
        Ok(())
    }

    fn check_dim(&self, w: &Weight, context: &'static str) -> Result<()> {
        if w.dim() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: w.dim(),
                context,
            });
        }
        Ok(())
    }
}

/// `m = p^T J0 q`, exactly.
pub fn phase_exponent(d: &DeformationForm, p: &Weight, q: &Weight) -> Result<PhaseExponent> {
    d.check_dim(p, "phase_exponent p")?;
    d.check_dim(q, "phase_exponent q")?;
    let j0q = d.j0.apply(&q.0)?;
    let mut acc: i128 = 0;
    for (a, b) in p.0.iter().zip(&j0q) {
        acc += i128::from(*a) * i128::from(*b);
    }
    i64::try_from(acc).map_err(|_| Error::invalid("phase exponent overflow"))
}

/// The unit-modulus factor `exp(-2*pi*i * theta * m)`.
pub fn phase_factor(theta: f64, m: PhaseExponent) -> Complex64 {
    Complex64::from_polar(1.0, -TAU * theta * m as f64)
}

/// Structure constants on characters: `e_p x e_q = phase * e_{p+q}` with
/// the phase reported as its exact integer exponent.
pub fn character_product(
    d: &DeformationForm,
    p: &Weight,
    q: &Weight,
) -> Result<(Weight, PhaseExponent)> {
    Ok((p.add(q), phase_exponent(d, p, q)?))
}

/// Finite linear combination of characters, stored weight-by-weight.
///
/// Canonical form: weights sorted (the map is ordered) and coefficients
/// of modulus below [`CANONICAL_EPS`] removed.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Weight, Complex64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    /// The single character `e_p`.
    pub fn character(p: Weight) -> Self {
        AlgebraElement::from_terms(vec![(p, Complex64::new(1.0, 0.0))])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Weight, Complex64)>) -> Self {
        let mut out = AlgebraElement::default();
        for (w, c) in terms {
            *out.terms.entry(w).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        out.canonicalize();
        out
    }

    fn canonicalize(&mut self) {
        self.terms.retain(|_, c| c.norm() >= CANONICAL_EPS);
    }

    pub fn coeff(&self, w: &Weight) -> Complex64 {
        self.terms
            .get(w)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &Complex64)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        AlgebraElement::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), c * x)))
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(w, c)| (w.clone(), *c)),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Relabel every weight through `f`, keeping coefficients untouched.
    pub fn map_weights(&self, mut f: impl FnMut(&Weight) -> Weight) -> Self {
        let mut out = AlgebraElement::default();
        for (w, c) in &self.terms {
            let target = f(w);
            assert!(
                !out.terms.contains_key(&target),
                "weight relabeling must be injective on the support"
            );
            out.terms.insert(target, *c);
        }
        out
    }
}

/// Sum contributions grouped by output key, adding each group in the
/// order of the coefficient bit patterns.  The result depends only on the
/// multiset of contributions per key, so two computations producing the
/// same terms in different orders (e.g. before and after a symmetry
/// relabeling) sum to bitwise-identical maps.  Coefficients of modulus
/// below [`CANONICAL_EPS`] are dropped from the result.
pub(crate) fn accumulate_into<K: Ord>(
    mut contributions: Vec<(K, Complex64)>,
) -> BTreeMap<K, Complex64> {
    contributions
        .sort_by(|(ka, ca), (kb, cb)| ka.cmp(kb).then_with(|| key_bits(ca).cmp(&key_bits(cb))));
    let mut out: BTreeMap<K, Complex64> = BTreeMap::new();
    for (k, c) in contributions {
        *out.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
    out.retain(|_, c| c.norm() >= CANONICAL_EPS);
    out
}

fn accumulate(contributions: Vec<(Weight, Complex64)>) -> AlgebraElement {
    AlgebraElement {
        terms: accumulate_into(contributions),
    }
}

pub(crate) fn key_bits(c: &Complex64) -> (u64, u64) {
    (c.re.to_bits(), c.im.to_bits())
}

/// Sum of the moduli of a collection of coefficients, added in bit-pattern
/// order so the total is independent of iteration order.
pub(crate) fn sum_moduli<'a>(values: impl Iterator<Item = &'a Complex64>) -> f64 {
    let mut mods: Vec<f64> = values.map(|c| c.norm()).collect();
    mods.sort_by_key(|x| x.to_bits());
    // `+ 0.0` normalizes the empty sum, whose IEEE identity is -0.0
    mods.iter().sum::<f64>() + 0.0
}

/// Deformed product of two elements, bilinear extension of
/// [`character_product`].
pub fn deformed_product(
    d: &DeformationForm,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> Result<AlgebraElement> {
    let mut contributions = Vec::with_capacity(a.len() * b.len());
    for (p, ca) in a.terms() {
        for (q, cb) in b.terms() {
            let (w, m) = character_product(d, p, q)?;
            contributions.push((w, (ca * cb) * phase_factor(d.theta, m)));
        }
    }
    Ok(accumulate(contributions))
}

/// Involution `a*`: conjugate coefficients and negate weights, so that
/// `e_p* = e_{-p}`.
pub fn star(a: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::from_terms(a.terms().map(|(w, c)| (w.neg(), c.conj())))
}

/// The canonical trace: the coefficient of the zero weight.
pub fn trace(a: &AlgebraElement) -> Complex64 {
    a.terms()
        .find(|(w, _)| w.is_zero())
        .map_or(Complex64::new(0.0, 0.0), |(_, c)| *c)
}

/// Sum of coefficient moduli; an order-independent upper bound for the
/// operator norm.
pub fn l1_norm(a: &AlgebraElement) -> f64 {
    sum_moduli(a.terms().map(|(_, c)| c))
}

/// Closed-form value of the regulated product integral
///
/// ```text
/// I(eps) = iint exp(2*pi*i (p.Ju + q.v + u.v)) exp(-eps(|u|^2+|v|^2)) du dv
/// ```
///
/// Both integrals are Gaussian for `eps > 0`; completing the square gives
///
/// ```text
/// I(eps) = (pi^2/(eps^2+pi^2))^(n/2)
///          * exp(-pi^2 eps (|a|^2+|b|^2) / (eps^2+pi^2))
///          * exp(-2*pi^3*i (a.b) / (eps^2+pi^2))
/// ```
///
/// with `a = J^T p` and `b = q`.  As `eps -> 0` this tends to
/// `exp(-2*pi*i a.b) = exp(-2*pi*i theta p^T J0 q)`.
pub fn regulated_product_integral(
    d: &DeformationForm,
    p: &Weight,
    q: &Weight,
    eps: f64,
) -> Result<Complex64> {
    d.check_dim(p, "regulated integral p")?;
    d.check_dim(q, "regulated integral q")?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::invalid("regulator eps must be positive"));
    }
    let (a, b) = twisted_vectors(d, p, q)?;
    let n = d.rank as f64;
    let denom = eps * eps + PI * PI;
    let prefactor = (PI * PI / denom).powf(n / 2.0);
    let amp = (-PI * PI * eps * (norm2(&a) + norm2(&b)) / denom).exp();
    let phase = -2.0 * PI.powi(3) * dot(&a, &b) / denom;
    Ok(prefactor * amp * Complex64::from_polar(1.0, phase))
}

/// The same regulated integral evaluated by brute-force Gauss-Legendre
/// quadrature on `[-L, L]^2` per coordinate pair, `L = 6/sqrt(eps)`.
/// Slow; exists to validate the closed form numerically.
pub fn regulated_product_quadrature(
    d: &DeformationForm,
    p: &Weight,
    q: &Weight,
    eps: f64,
    points_per_axis: usize,
) -> Result<Complex64> {
    d.check_dim(p, "regulated quadrature p")?;
    d.check_dim(q, "regulated quadrature q")?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::invalid("regulator eps must be positive"));
    }
    if points_per_axis < 2 {
        return Err(Error::invalid("need at least 2 quadrature points per axis"));
    }
    let (a, b) = twisted_vectors(d, p, q)?;
    let half_width = 6.0 / eps.sqrt();
    let (nodes, weights) = gauss_legendre(points_per_axis, half_width);
    // The kernel couples u_i only to v_i, so the 2n-dimensional integral
    // factors into n two-dimensional ones.
    let mut total = Complex64::new(1.0, 0.0);
    for i in 0..d.rank {
        let mut plane = Complex64::new(0.0, 0.0);
        for (u, wu) in nodes.iter().zip(&weights) {
            let mut inner = Complex64::new(0.0, 0.0);
            for (v, wv) in nodes.iter().zip(&weights) {
                let phase = TAU * (a[i] * u + b[i] * v + u * v);
                let damp = (-eps * (u * u + v * v)).exp();
                inner += wv * damp * Complex64::from_polar(1.0, phase);
            }
            plane += wu * inner;
        }
        total *= plane;
    }
    Ok(total)
}

fn twisted_vectors(d: &DeformationForm, p: &Weight, q: &Weight) -> Result<(Vec<f64>, Vec<f64>)> {
    // a = J^T p = theta * J0^T p
    let jt_p = d.j0.transpose().apply(&p.0)?;
    let a: Vec<f64> = jt_p.iter().map(|&x| d.theta * x as f64).collect();
    let b: Vec<f64> = q.0.iter().map(|&x| x as f64).collect();
    Ok((a, b))
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gauss-Legendre nodes and weights rescaled to `[-half_width, half_width]`.
fn gauss_legendre(n: usize, half_width: f64) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        // Newton iteration from the Chebyshev-like initial guess.
        let mut x = (PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x * half_width;
        nodes[n - 1 - k] = x * half_width;
        weights[k] = w * half_width;
        weights[n - 1 - k] = w * half_width;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Evaluate the regulated integral along a decreasing schedule of
/// regulators and extrapolate to `eps = 0` by Neville's algorithm.
///
/// The schedule must be strictly decreasing, positive, and have at least
/// three entries.  If the residuals between successive extrapolation
/// stages grow at the end of the table, the sequence of estimates is
/// returned inside [`Error::NumericalFailure`].
pub fn oscillatory_check(
    d: &DeformationForm,
    p: &Weight,
    q: &Weight,
    schedule: &[f64],
) -> Result<Complex64> {
    if schedule.len() < 3 {
        return Err(Error::invalid("schedule needs at least 3 regulators"));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) || schedule.iter().any(|&e| e <= 0.0) {
        return Err(Error::invalid(
            "schedule must be strictly decreasing and positive",
        ));
    }
    let values: Vec<Complex64> = schedule
        .iter()
        .map(|&eps| regulated_product_integral(d, p, q, eps))
        .collect::<Result<_>>()?;

    // Neville table in the variable eps, evaluated at 0.  diag[k] is the
    // degree-k extrapolation through the first k+1 schedule points.
    let mut column = values.clone();
    let mut diag = vec![column[0]];
    for level in 1..schedule.len() {
        for i in 0..(schedule.len() - level) {
            let xi = schedule[i];
            let xj = schedule[i + level];
            // P(0) for the polynomial through points i..=i+level
            column[i] = (column[i + 1] * xi - column[i] * xj) / (xi - xj);
        }
        diag.push(column[0]);
    }

    let resid: Vec<f64> = diag.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    if let [.., prev, last] = resid.as_slice() {
        if *last > *prev && *last > 1e-12 {
            return Err(Error::NumericalFailure { estimates: diag });
        }
    }
    Ok(*diag.last().unwrap())
}

/// The default regulator schedule for [`oscillatory_check`].
pub const DEFAULT_SCHEDULE: [f64; 4] = [0.1, 0.05, 0.025, 0.0125];
