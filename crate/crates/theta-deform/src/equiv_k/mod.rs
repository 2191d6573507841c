//! Equivariant K-theory ranks of a space with a finite cyclic action,
//! computed stratum by stratum.
//!
//! For a finite cyclic group acting simplicially, the rationalized
//! equivariant K-theory splits as a sum over group elements `g` of the
//! ordinary cohomology of the quotients `X^g / G` of the fixed-point
//! sets.  The pipeline is:
//!
//! 1. subdivide until the action is regular ([`complex::make_regular`]),
//!    so fixed sets and quotients are honest subcomplexes and complexes;
//! 2. for each power `g^k`, extract the fixed subcomplex and quotient it
//!    by the full group;
//! 3. take Betti numbers of each quotient and total the even and odd
//!    parts.

pub mod complex;
pub mod homology;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use complex::{
    fixed_subcomplex, make_regular, quotient_complex, regularity_check, GComplex, RegularityReport,
    SimplicialAction, SimplicialComplex, DEFAULT_SUBDIVISION_BUDGET,
};
pub use homology::{
    betti_numbers, betti_numbers_checked, k_ranks, BettiVector, RankMethod, MODULAR_PRIME,
};

/// One group element's contribution to the equivariant K-theory ranks.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StratumReport {
    /// Power of the generator labelling the stratum (`0` = identity).
    pub g: u32,
    /// Total number of simplices in the fixed subcomplex of this power.
    pub fixed_size: usize,
    /// Betti numbers of the quotient of the fixed set by the full group.
    pub betti: Vec<usize>,
    /// Sum of even-index Betti numbers.
    pub even: usize,
    /// Sum of odd-index Betti numbers.
    pub odd: usize,
}

/// Equivariant K-theory ranks with the per-stratum breakdown.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StrataReport {
    pub k0_rank: usize,
    pub k1_rank: usize,
    pub strata: Vec<StratumReport>,
}

/// Full stratified computation.  Subdivides up to `budget` times to
/// reach regularity, then assembles one stratum per group element.
pub fn strata_report(g: &GComplex, method: RankMethod, budget: u32) -> Result<StrataReport> {
    let regular = make_regular(g, budget)?;
    let order = regular.action.order();
    let mut strata = Vec::with_capacity(order as usize);
    let mut k0 = 0usize;
    let mut k1 = 0usize;
    for k in 0..order {
        let fixed = fixed_subcomplex(&regular, k)?;
        let fixed_size = fixed.total_simplices();
        let sub = GComplex::new(fixed, regular.action.clone())?;
        let quotient = quotient_complex(&sub)?;
        let betti = betti_numbers(&quotient, method)?;
        let (even, odd) = k_ranks(&betti);
        k0 += even;
        k1 += odd;
        strata.push(StratumReport {
            g: k,
            fixed_size,
            betti,
            even,
            odd,
        });
    }
    Ok(StrataReport {
        k0_rank: k0,
        k1_rank: k1,
        strata,
    })
}

/// Just the pair of K-theory ranks, with the default subdivision budget.
pub fn equivariant_k_ranks(g: &GComplex, method: RankMethod) -> Result<(usize, usize)> {
    let report = strata_report(g, method, DEFAULT_SUBDIVISION_BUDGET)?;
    Ok((report.k0_rank, report.k1_rank))
}
