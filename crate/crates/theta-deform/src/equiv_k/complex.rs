//! Finite simplicial complexes with simplicial cyclic group actions:
//! validation, barycentric subdivision, fixed subcomplexes, quotients,
//! and the regularity condition that makes vertex-orbit quotients
//! topologically correct.
//!
//! Regularity here is the strong, quotient-correct condition, checked in
//! two parts:
//!
//! 1. *no collapsed simplices*: a vertex and its image under a
//!    non-trivial group element never lie in a common simplex unless
//!    they are equal;
//! 2. *orbit-separated buckets*: two simplices whose vertex-orbit images
//!    coincide must lie in one orbit of the action.
//!
//! Part 1 alone (the textbook "weak" condition) is not sufficient: the
//! boundary of the 5-dimensional cross-polytope with the reflection
//! negating two axes satisfies part 1, yet the simplices `{e2, e4}` and
//! `{e2, -e4}` have the same vertex-orbit image without being related by
//! the group, and the naive vertex-orbit quotient would collapse the
//! orbit sphere to a contractible complex.  One barycentric subdivision
//! repairs this, which is why [`make_regular`] subdivides until both
//! parts hold.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A finite simplicial complex: simplices stored per dimension as
/// lexicographically sorted ascending vertex lists, closed under taking
/// faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// Build from a set of generating simplices, adding all faces.
    pub fn from_maximal(vertex_count: usize, maximal: &[Vec<u32>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        for simplex in maximal {
            if simplex.is_empty() {
                return Err(Error::invalid("empty simplex"));
            }
            let mut sorted = simplex.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != simplex.len() {
                return Err(Error::invalid(format!(
                    "simplex {simplex:?} repeats a vertex"
                )));
            }
            if let Some(&v) = sorted.last() {
                if v as usize >= vertex_count {
                    return Err(Error::invalid(format!(
                        "vertex {v} out of range (vertex_count {vertex_count})"
                    )));
                }
            }
            // every nonempty subset is a face
            let n = sorted.len();
            for mask in 1u32..(1 << n) {
                let face: Vec<u32> = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| sorted[i])
                    .collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(face);
            }
        }
        let out = SimplicialComplex {
            vertex_count,
            simplices: by_dim
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        };
        out.validate()?;
        Ok(out)
    }

    /// Build from an already face-closed family; validated.
    pub fn from_all(
        vertex_count: usize,
        simplices: impl IntoIterator<Item = Vec<u32>>,
    ) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        for s in simplices {
            if s.is_empty() {
                return Err(Error::invalid("empty simplex"));
            }
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            by_dim[d].insert(s);
        }
        let out = SimplicialComplex {
            vertex_count,
            simplices: by_dim
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        };
        out.validate()?;
        Ok(out)
    }

    /// Check sortedness, vertex ranges, and closure under faces.
    pub fn validate(&self) -> Result<()> {
        for (d, list) in self.simplices.iter().enumerate() {
            let mut prev: Option<&Vec<u32>> = None;
            for s in list {
                if s.len() != d + 1 {
                    return Err(Error::Integrity(format!(
                        "simplex {s:?} stored in dimension {d}"
                    )));
                }
                if !s.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::Integrity(format!(
                        "simplex {s:?} is not strictly ascending"
                    )));
                }
                if let Some(&v) = s.last() {
                    if v as usize >= self.vertex_count {
                        return Err(Error::Integrity(format!("vertex {v} out of range")));
                    }
                }
                if let Some(p) = prev {
                    if p >= s {
                        return Err(Error::Integrity("simplices out of order".into()));
                    }
                }
                prev = Some(s);
                if d > 0 {
                    for i in 0..s.len() {
                        let mut face = s.clone();
                        face.remove(i);
                        if self.index_of(&face).is_none() {
                            return Err(Error::Integrity(format!(
                                "face {face:?} of {s:?} is missing"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Vec<u32>] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len()).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(|s| s.len()).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, s)| {
                if d % 2 == 0 {
                    s.len() as i64
                } else {
                    -(s.len() as i64)
                }
            })
            .sum()
    }

    /// Position of a (sorted) simplex inside its dimension's list.
    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let d = simplex.len().checked_sub(1)?;
        self.simplices
            .get(d)?
            .binary_search_by(|s| s.as_slice().cmp(simplex))
            .ok()
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        self.index_of(simplex).is_some()
    }

    /// The full subcomplex on the vertices satisfying `keep`.
    pub fn full_subcomplex(&self, keep: impl Fn(u32) -> bool) -> SimplicialComplex {
        let mut by_dim = Vec::new();
        for list in &self.simplices {
            let filtered: Vec<Vec<u32>> = list
                .iter()
                .filter(|s| s.iter().all(|&v| keep(v)))
                .cloned()
                .collect();
            by_dim.push(filtered);
        }
        while by_dim.last().is_some_and(|l: &Vec<Vec<u32>>| l.is_empty()) {
            by_dim.pop();
        }
        SimplicialComplex {
            vertex_count: self.vertex_count,
            simplices: by_dim,
        }
    }

    /// Standard barycentric subdivision.
    ///
    /// Vertex ids: original vertices keep their ids (serving as their own
    /// barycenters); barycenters of higher simplices follow, ordered by
    /// dimension and then lexicographically by the subdivided simplex.
    /// The simplices of the subdivision are the strict face chains, whose
    /// barycenter ids are automatically ascending.  Returns the new
    /// complex and the simplex-to-barycenter map.
    pub fn barycentric_subdivide(&self) -> (SimplicialComplex, BTreeMap<Vec<u32>, u32>) {
        let mut barycenter: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        let mut next = self.vertex_count as u32;
        for (d, list) in self.simplices.iter().enumerate() {
            for s in list {
                if d == 0 {
                    barycenter.insert(s.clone(), s[0]);
                } else {
                    barycenter.insert(s.clone(), next);
                    next += 1;
                }
            }
        }

        // chains_at[d][i]: all strict chains of faces ending at simplex i
        // of dimension d, as ascending barycenter-id lists
        let mut chains_at: Vec<Vec<Vec<Vec<u32>>>> = Vec::with_capacity(self.simplices.len());
        let mut all: Vec<Vec<u32>> = Vec::new();
        for list in &self.simplices {
            let mut this_dim = Vec::with_capacity(list.len());
            for s in list {
                let b = barycenter[s];
                let mut chains = vec![vec![b]];
                let n = s.len();
                for mask in 1u32..(1 << n) {
                    if mask == (1 << n) - 1 {
                        continue; // proper faces only
                    }
                    let face: Vec<u32> = (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| s[i])
                        .collect();
                    let fd = face.len() - 1;
                    let fi = self.simplices[fd]
                        .binary_search_by(|x| x.as_slice().cmp(&face))
                        .expect("faces are present");
                    let face_chains: &Vec<Vec<u32>> = &chains_at[fd][fi];
                    for c in face_chains {
                        let mut chain = c.clone();
                        chain.push(b);
                        chains.push(chain);
                    }
                }
                all.extend(chains.iter().cloned());
                this_dim.push(chains);
            }
            chains_at.push(this_dim);
        }

        let complex = SimplicialComplex::from_all(next as usize, all)
            .expect("subdivision produces a valid complex");
        (complex, barycenter)
    }
}

/// A cyclic group acting by a generator vertex permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialAction {
    order: u32,
    perm: Vec<u32>,
}

impl SimplicialAction {
    /// Requires a bijection whose `order`-th power is the identity.
    pub fn new(order: u32, perm: Vec<u32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("group order must be positive"));
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &v in &perm {
            if v as usize >= n || seen[v as usize] {
                return Err(Error::invalid("vertex permutation is not a bijection"));
            }
            seen[v as usize] = true;
        }
        // compose `order` times without modular reduction: `power`
        // reduces exponents and would trivially pass this check
        let mut table: Vec<u32> = (0..n as u32).collect();
        for _ in 0..order {
            table = table.iter().map(|&v| perm[v as usize]).collect();
        }
        if table != (0..n as u32).collect::<Vec<u32>>() {
            return Err(Error::invalid(format!(
                "vertex permutation does not satisfy perm^{order} = id"
            )));
        }
        Ok(SimplicialAction { order, perm })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    /// The permutation of `g^k`, as a lookup table.
    pub fn power(&self, k: u32) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.perm.len() as u32).collect();
        for _ in 0..(k % self.order.max(1)) {
            out = out.iter().map(|&v| self.perm[v as usize]).collect();
        }
        out
    }

    /// True when no smaller positive power is the identity.
    pub fn is_faithful(&self) -> bool {
        (1..self.order).all(|k| self.power(k) != (0..self.perm.len() as u32).collect::<Vec<u32>>())
    }

    /// Image of a sorted simplex: sorted image vertex list.
    pub fn map_simplex(&self, table: &[u32], s: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = s.iter().map(|&v| table[v as usize]).collect();
        out.sort_unstable();
        out
    }

    /// Every power of the generator must map simplices to simplices.
    pub fn validate_on(&self, complex: &SimplicialComplex) -> Result<()> {
        if self.perm.len() != complex.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: complex.vertex_count(),
                got: self.perm.len(),
                context: "vertex permutation length",
            });
        }
        let d = match complex.dim() {
            Some(d) => d,
            None => return Ok(()),
        };
        for dim in 0..=d {
            for s in complex.simplices(dim) {
                let image = self.map_simplex(&self.perm, s);
                if image.len() != s.len() || !complex.contains(&image) {
                    return Err(Error::invalid(format!(
                        "permutation does not act simplicially: {s:?} -> {image:?}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A complex together with a validated action and the number of
/// subdivisions applied so far.
#[derive(Clone, Debug)]
pub struct GComplex {
    pub complex: SimplicialComplex,
    pub action: SimplicialAction,
    pub regularity_level: u32,
}

impl GComplex {
    pub fn new(complex: SimplicialComplex, action: SimplicialAction) -> Result<Self> {
        action.validate_on(&complex)?;
        Ok(GComplex {
            complex,
            action,
            regularity_level: 0,
        })
    }

    /// Barycentric subdivision with the induced action on barycenters.
    pub fn subdivide(&self) -> Result<GComplex> {
        let (complex, barycenter) = self.complex.barycentric_subdivide();
        let mut perm = vec![0u32; complex.vertex_count()];
        for (s, &b) in &barycenter {
            let image = self.action.map_simplex(self.action.perm(), s);
            perm[b as usize] = barycenter[&image];
        }
        let action = SimplicialAction::new(self.action.order(), perm)?;
        action.validate_on(&complex)?;
        Ok(GComplex {
            complex,
            action,
            regularity_level: self.regularity_level + 1,
        })
    }
}

/// Outcome of the two-part regularity check.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub is_regular: bool,
    /// Human-readable description of the first violation found.
    pub witness: Option<String>,
}

/// Check both regularity conditions; see the module docs.
pub fn regularity_check(g: &GComplex) -> RegularityReport {
    let complex = &g.complex;
    let order = g.action.order();
    let top = match complex.dim() {
        Some(d) => d,
        None => {
            return RegularityReport {
                is_regular: true,
                witness: None,
            }
        }
    };

    // part 1: v and g^k v in a common simplex forces g^k v = v
    for k in 1..order {
        let table = g.action.power(k);
        for d in 0..=top {
            for s in complex.simplices(d) {
                for &v in s {
                    let w = table[v as usize];
                    if w != v && s.binary_search(&w).is_ok() {
                        return RegularityReport {
                            is_regular: false,
                            witness: Some(format!(
                                "vertex {v} and its image {w} under power {k} share simplex {s:?}"
                            )),
                        };
                    }
                }
            }
        }
    }

    // part 2: simplices with equal vertex-orbit images lie in one orbit
    let orbit_rep = vertex_orbit_reps(&g.action);
    let tables: Vec<Vec<u32>> = (0..order).map(|k| g.action.power(k)).collect();
    for d in 0..=top {
        let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        for (i, s) in complex.simplices(d).iter().enumerate() {
            let mut key: Vec<u32> = s.iter().map(|&v| orbit_rep[v as usize]).collect();
            key.sort_unstable();
            key.dedup();
            buckets.entry(key).or_default().push(i);
        }
        for members in buckets.values() {
            if members.len() < 2 {
                continue;
            }
            let first = &complex.simplices(d)[members[0]];
            let orbit: BTreeSet<Vec<u32>> = tables
                .iter()
                .map(|t| g.action.map_simplex(t, first))
                .collect();
            for &i in &members[1..] {
                let s = &complex.simplices(d)[i];
                if !orbit.contains(s) {
                    return RegularityReport {
                        is_regular: false,
                        witness: Some(format!(
                            "simplices {first:?} and {s:?} have the same orbit image \
                             but are not related by the action"
                        )),
                    };
                }
            }
        }
    }

    RegularityReport {
        is_regular: true,
        witness: None,
    }
}

/// Smallest vertex in each vertex's orbit under the full cyclic group.
fn vertex_orbit_reps(action: &SimplicialAction) -> Vec<u32> {
    let n = action.perm().len();
    let mut rep: Vec<u32> = (0..n as u32).collect();
    for v in 0..n as u32 {
        let mut m = v;
        let mut w = action.perm()[v as usize];
        while w != v {
            m = m.min(w);
            w = action.perm()[w as usize];
        }
        rep[v as usize] = m;
    }
    rep
}

/// Default subdivision budget of [`make_regular`]; two barycentric
/// subdivisions suffice for any simplicial action of a finite group.
pub const DEFAULT_SUBDIVISION_BUDGET: u32 = 2;

/// Subdivide until [`regularity_check`] passes, at most `max_subdiv`
/// extra levels.
pub fn make_regular(g: &GComplex, max_subdiv: u32) -> Result<GComplex> {
    let mut current = g.clone();
    for _ in 0..=max_subdiv {
        if regularity_check(&current).is_regular {
            return Ok(current);
        }
        current = current.subdivide()?;
    }
    let report = regularity_check(&current);
    if report.is_regular {
        return Ok(current);
    }
    Err(Error::NotRegular {
        witness: report.witness.unwrap_or_else(|| "unknown".into()),
    })
}

/// The full subcomplex of vertices fixed by `g^k`.  Under regularity
/// this triangulates the geometric fixed set.
pub fn fixed_subcomplex(g: &GComplex, k: u32) -> Result<SimplicialComplex> {
    let report = regularity_check(g);
    if !report.is_regular {
        return Err(Error::NotRegular {
            witness: report.witness.unwrap_or_else(|| "unknown".into()),
        });
    }
    let table = g.action.power(k);
    Ok(g.complex.full_subcomplex(|v| table[v as usize] == v))
}

/// Quotient by the full cyclic group: vertices become vertex orbits,
/// simplices their orbit images.  Requires regularity, which guarantees
/// no simplex collapses and orbit images do not spuriously merge.
pub fn quotient_complex(g: &GComplex) -> Result<SimplicialComplex> {
    let report = regularity_check(g);
    if !report.is_regular {
        return Err(Error::NotRegular {
            witness: report.witness.unwrap_or_else(|| "unknown".into()),
        });
    }
    let orbit_rep = vertex_orbit_reps(&g.action);

    // compact ids for the orbit representatives that actually occur
    let mut reps: Vec<u32> = g
        .complex
        .simplices(0)
        .iter()
        .map(|s| orbit_rep[s[0] as usize])
        .collect();
    reps.sort_unstable();
    reps.dedup();
    let compact: HashMap<u32, u32> = reps
        .iter()
        .enumerate()
        .map(|(i, &r)| (r, i as u32))
        .collect();

    let mut simplices: BTreeSet<Vec<u32>> = BTreeSet::new();
    if let Some(top) = g.complex.dim() {
        for d in 0..=top {
            for s in g.complex.simplices(d) {
                let mut image: Vec<u32> =
                    s.iter().map(|&v| compact[&orbit_rep[v as usize]]).collect();
                image.sort_unstable();
                image.dedup();
                if image.len() != s.len() {
                    return Err(Error::Integrity(format!(
                        "regular action collapsed simplex {s:?}"
                    )));
                }
                simplices.insert(image);
            }
        }
    }
    SimplicialComplex::from_all(reps.len(), simplices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> SimplicialComplex {
        SimplicialComplex::from_maximal(2, &[vec![0, 1]]).unwrap()
    }

    fn triangle_boundary() -> SimplicialComplex {
        SimplicialComplex::from_maximal(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    pub(crate) fn octahedron() -> SimplicialComplex {
        // vertices 0/1, 2/3, 4/5 are antipodal pairs on three axes
        let mut faces = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    faces.push(vec![a, 2 + b, 4 + c]);
                }
            }
        }
        SimplicialComplex::from_maximal(6, &faces).unwrap()
    }

    #[test]
    fn closure_and_validation() {
        let k = SimplicialComplex::from_maximal(3, &[vec![2, 0, 1]]).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        assert!(k.contains(&[0, 2]));
        assert!(SimplicialComplex::from_maximal(2, &[vec![0, 0]]).is_err());
        assert!(SimplicialComplex::from_maximal(2, &[vec![0, 5]]).is_err());
        // missing face rejected
        assert!(SimplicialComplex::from_all(3, vec![vec![0, 1, 2], vec![0, 1]]).is_err());
    }

    #[test]
    fn subdivision_of_an_interval() {
        let (sd, bary) = interval().barycentric_subdivide();
        assert_eq!(sd.f_vector(), vec![3, 2]);
        assert_eq!(bary[&vec![0, 1]], 2);
        assert!(sd.contains(&[0, 2]));
        assert!(sd.contains(&[1, 2]));
        assert!(!sd.contains(&[0, 1]));
    }

    #[test]
    fn subdivision_preserves_euler_characteristic() {
        for k in [triangle_boundary(), octahedron()] {
            let chi = k.euler_characteristic();
            let (sd, _) = k.barycentric_subdivide();
            assert_eq!(sd.euler_characteristic(), chi);
            sd.validate().unwrap();
        }
    }

    #[test]
    fn action_validation() {
        let k = triangle_boundary();
        let rot = SimplicialAction::new(3, vec![1, 2, 0]).unwrap();
        assert!(rot.validate_on(&k).is_ok());
        assert!(rot.is_faithful());
        assert!(SimplicialAction::new(2, vec![1, 2, 0]).is_err()); // wrong order
        assert!(SimplicialAction::new(3, vec![1, 1, 0]).is_err()); // not a bijection

        // a permutation that is a bijection but not simplicial
        let path = SimplicialComplex::from_maximal(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let swap_ends = SimplicialAction::new(2, vec![2, 1, 0]).unwrap();
        assert!(swap_ends.validate_on(&path).is_ok()); // maps edges to edges
        let bad = SimplicialAction::new(2, vec![1, 0, 2]).unwrap();
        assert!(bad.validate_on(&path).is_err()); // {1,2} -> {0,2} missing
    }

    #[test]
    fn rotation_of_triangle_fails_weak_regularity() {
        let g = GComplex::new(
            triangle_boundary(),
            SimplicialAction::new(3, vec![1, 2, 0]).unwrap(),
        )
        .unwrap();
        let rep = regularity_check(&g);
        assert!(!rep.is_regular);
        assert!(rep.witness.unwrap().contains("share simplex"));

        let fixed = make_regular(&g, 2).unwrap();
        assert!(fixed.regularity_level >= 1);
        assert!(regularity_check(&fixed).is_regular);
    }

    #[test]
    fn trivial_action_is_regular_and_quotient_is_isomorphic() {
        let k = octahedron();
        let g = GComplex::new(
            k.clone(),
            SimplicialAction::new(1, (0..6).collect()).unwrap(),
        )
        .unwrap();
        assert!(regularity_check(&g).is_regular);
        let q = quotient_complex(&g).unwrap();
        assert_eq!(q.f_vector(), k.f_vector());
    }

    #[test]
    fn antipodal_octahedron_quotient() {
        // the antipodal map on S^2 is free, so no vertex ever shares a
        // simplex with its image — yet all 8 faces have the same
        // vertex-orbit image while the orbit of a face has size 2, so
        // the naive vertex-orbit quotient would collapse the projective
        // plane to a single triangle; the orbit-separation condition
        // catches exactly this
        let k = octahedron();
        let antipodal = SimplicialAction::new(2, vec![1, 0, 3, 2, 5, 4]).unwrap();
        let g = GComplex::new(k, antipodal).unwrap();
        let rep = regularity_check(&g);
        assert!(!rep.is_regular);
        assert!(rep.witness.unwrap().contains("not related"));

        let regular = make_regular(&g, 2).unwrap();
        let q = quotient_complex(&regular).unwrap();
        q.validate().unwrap();
        // the quotient of a sphere by a free involution: chi = 1
        assert_eq!(q.euler_characteristic(), 1);
    }

    #[test]
    fn fixed_subcomplex_of_reflection() {
        // reflect the octahedron through the plane of axes 0/1 and 4/5
        let k = octahedron();
        let refl = SimplicialAction::new(2, vec![0, 1, 3, 2, 4, 5]).unwrap();
        let g = GComplex::new(k, refl).unwrap();
        // vertices 2,3 swap and lie in common triangles with nothing: they
        // never share a simplex with each other (antipode-free faces)
        assert!(regularity_check(&g).is_regular);
        let fixed = fixed_subcomplex(&g, 1).unwrap();
        // the fixed square 0,1,4,5: a circle of 4 edges
        assert_eq!(fixed.f_vector(), vec![4, 4]);
        let whole = fixed_subcomplex(&g, 0).unwrap();
        assert_eq!(whole.f_vector(), g.complex.f_vector());
    }

    #[test]
    fn induced_action_keeps_order() {
        let k = octahedron();
        let antipodal = SimplicialAction::new(2, vec![1, 0, 3, 2, 5, 4]).unwrap();
        let g = GComplex::new(k, antipodal).unwrap();
        let sd = g.subdivide().unwrap();
        assert_eq!(sd.action.order(), 2);
        assert!(sd.action.is_faithful());
        assert_eq!(sd.regularity_level, 1);
        sd.complex.validate().unwrap();
    }
}
