//! Property-based and cross-module invariants: Smith normal form under
//! unimodular operations, homology integrity on random complexes, the
//! fixed-point/determinant count, and losslessness of the shipped
//! instance files.

use num::BigInt;
use num::Rational64;
use proptest::collection::{btree_set, vec as pvec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use theta_deform::crossed::{
    commuting_deformation_compare, TranslationAction, DEFAULT_COMPARE_CAP,
};
use theta_deform::equiv_k::homology::{boundary_matrix, smith_invariant_factors, SparseBoundary};
use theta_deform::equiv_k::{
    betti_numbers_checked, equivariant_k_ranks, fixed_subcomplex, k_ranks, make_regular,
    strata_report, GComplex, RankMethod, SimplicialAction, SimplicialComplex,
    DEFAULT_SUBDIVISION_BUDGET,
};
use theta_deform::instance::{generate_sphere_instance, generate_torus_instance, Instance};
use theta_deform::intmat::IntMat;
use theta_deform::symmetry::CyclicAction;
use theta_deform::weight_algebra::{phase_exponent, DeformationForm, Weight};

// ---------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------

fn dense_to_sparse(dense: &[Vec<i64>]) -> SparseBoundary {
    let rows = dense.len();
    let cols = dense.first().map_or(0, Vec::len);
    let columns = (0..cols)
        .map(|j| {
            (0..rows)
                .filter(|&i| dense[i][j] != 0)
                .map(|i| (i, dense[i][j]))
                .collect()
        })
        .collect();
    SparseBoundary {
        rows,
        cols,
        columns,
    }
}

fn factors_of(dense: &[Vec<i64>]) -> Vec<BigInt> {
    smith_invariant_factors(&dense_to_sparse(dense))
}

/// Apply one random unimodular row/column operation in place.  Additions
/// are skipped when they would overflow the guard bound, which keeps the
/// entries well inside `i64` without disturbing determinism.
fn random_unimodular_op(rng: &mut ChaCha8Rng, m: &mut [Vec<i64>]) {
    const GUARD: i64 = 1 << 40;
    let rows = m.len();
    let cols = m[0].len();
    match rng.random_range(0..6u32) {
        0 if rows >= 2 => {
            let i = rng.random_range(0..rows);
            let j = rng.random_range(0..rows);
            m.swap(i, j);
        }
        1 if cols >= 2 => {
            let i = rng.random_range(0..cols);
            let j = rng.random_range(0..cols);
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
        2 => {
            let i = rng.random_range(0..rows);
            for x in &mut m[i] {
                *x = -*x;
            }
        }
        3 => {
            let j = rng.random_range(0..cols);
            for row in m.iter_mut() {
                row[j] = -row[j];
            }
        }
        4 if rows >= 2 => {
            let i = rng.random_range(0..rows);
            let j = rng.random_range(0..rows);
            if i != j {
                let c = *[-2i64, -1, 1, 2].get(rng.random_range(0..4)).unwrap();
                let add: Vec<i64> = m[j].iter().map(|&x| c * x).collect();
                if m[i].iter().zip(&add).all(|(&a, &b)| (a + b).abs() < GUARD) {
                    for (a, b) in m[i].iter_mut().zip(&add) {
                        *a += b;
                    }
                }
            }
        }
        5 if cols >= 2 => {
            let i = rng.random_range(0..cols);
            let j = rng.random_range(0..cols);
            if i != j {
                let c = *[-2i64, -1, 1, 2].get(rng.random_range(0..4)).unwrap();
                if m.iter().all(|row| (row[i] + c * row[j]).abs() < GUARD) {
                    for row in m.iter_mut() {
                        row[i] += c * row[j];
                    }
                }
            }
        }
        _ => {}
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The invariant factors do not change under row/column operations
    /// with determinant +-1.
    #[test]
    fn smith_factors_invariant_under_unimodular_ops(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in pvec(-9i64..=9, 16),
        seed in any::<u64>(),
    ) {
        let mut m: Vec<Vec<i64>> =
            (0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect();
        let before = factors_of(&m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            random_unimodular_op(&mut rng, &mut m);
        }
        prop_assert_eq!(before, factors_of(&m));
    }
}

#[test]
fn smith_factors_pinned_examples() {
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let identity: Vec<Vec<i64>> = (0..3)
        .map(|i| (0..3).map(|j| i64::from(i == j)).collect())
        .collect();
    assert_eq!(factors_of(&identity), big(&[1, 1, 1]));
    assert_eq!(factors_of(&[vec![0, 0, 0], vec![0, 0, 0]]), big(&[]));
    assert_eq!(factors_of(&[vec![2, 4], vec![6, 8]]), big(&[2, 4]));
}

// ---------------------------------------------------------------------
// Homology integrity on random complexes
// ---------------------------------------------------------------------

fn boundary_squared_is_zero(complex: &SimplicialComplex) -> bool {
    let top = match complex.dim() {
        Some(d) => d,
        None => return true,
    };
    for k in 1..=top {
        let low = boundary_matrix(complex, k - 1);
        let high = boundary_matrix(complex, k);
        for col in &high.columns {
            let mut acc = vec![0i64; low.rows.max(1)];
            for &(face, s) in col {
                for &(sub, t) in &low.columns[face] {
                    acc[sub] += s * t;
                }
            }
            if acc.iter().any(|&x| x != 0) {
                return false;
            }
        }
    }
    true
}

fn random_complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=7).prop_flat_map(|n| {
        let max_size = n.min(4);
        pvec(btree_set(0..n as u32, 1..=max_size), 1..=6).prop_map(move |sets| {
            let maximal: Vec<Vec<u32>> =
                sets.into_iter().map(|s| s.into_iter().collect()).collect();
            SimplicialComplex::from_maximal(n, &maximal).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// On arbitrary small complexes: the boundary of a boundary
    /// vanishes, the two rank methods agree, the Euler characteristic
    /// equals the alternating Betti sum, and one barycentric
    /// subdivision changes no Betti number.
    #[test]
    fn random_complex_homology_integrity(complex in random_complex_strategy()) {
        prop_assert!(boundary_squared_is_zero(&complex));
        let betti = betti_numbers_checked(&complex).unwrap();
        let chi: i64 = betti
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        prop_assert_eq!(chi, complex.euler_characteristic());
        let (subdivided, _) = complex.barycentric_subdivide();
        prop_assert_eq!(&betti, &betti_numbers_checked(&subdivided).unwrap());
    }

    /// The integer identity behind associativity of the twisted
    /// product, for arbitrary weights and any skew form.
    #[test]
    fn phase_exponent_cocycle_identity(
        p in pvec(-1000i64..=1000, 2),
        q in pvec(-1000i64..=1000, 2),
        r in pvec(-1000i64..=1000, 2),
        theta in 0.0f64..1.0,
    ) {
        let d = DeformationForm::standard(theta);
        let (p, q, r) = (Weight::new(p), Weight::new(q), Weight::new(r));
        let lhs = phase_exponent(&d, &p, &q).unwrap() + phase_exponent(&d, &p.add(&q), &r).unwrap();
        let rhs = phase_exponent(&d, &q, &r).unwrap() + phase_exponent(&d, &p, &q.add(&r)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Extending by a translation commutes with deforming, for every
    /// shift the cyclic group actually admits.
    #[test]
    fn translation_extension_commutes_with_deformation(
        order in 1u32..=4,
        a in 0u32..4,
        b in 0u32..4,
        theta in 0.0f64..1.0,
    ) {
        let shift = vec![
            Rational64::new(i64::from(a % order), i64::from(order)),
            Rational64::new(i64::from(b % order), i64::from(order)),
        ];
        let translation = TranslationAction::new(shift, order).unwrap();
        let d = DeformationForm::standard(theta);
        let cmp = commuting_deformation_compare(&translation, &d, 1, DEFAULT_COMPARE_CAP).unwrap();
        prop_assert_eq!(cmp.max_difference, 0.0);
    }
}

// ---------------------------------------------------------------------
// Equivariant ranks: degenerate and cross-module checks
// ---------------------------------------------------------------------

fn octahedron() -> SimplicialComplex {
    let faces: Vec<Vec<u32>> = vec![
        vec![0, 2, 4],
        vec![0, 2, 5],
        vec![0, 3, 4],
        vec![0, 3, 5],
        vec![1, 2, 4],
        vec![1, 2, 5],
        vec![1, 3, 4],
        vec![1, 3, 5],
    ];
    SimplicialComplex::from_maximal(6, &faces).unwrap()
}

#[test]
fn trivial_group_gives_plain_ranks() {
    for complex in [octahedron(), shipped_gcomplex("torus_z2.json").complex] {
        let betti = betti_numbers_checked(&complex).unwrap();
        let identity =
            SimplicialAction::new(1, (0..complex.vertex_count() as u32).collect()).unwrap();
        let g = GComplex::new(complex, identity).unwrap();
        assert_eq!(
            equivariant_k_ranks(&g, RankMethod::Exact).unwrap(),
            k_ranks(&betti)
        );
    }
}

fn shipped_gcomplex(name: &str) -> GComplex {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances")
        .join(name);
    Instance::load(path)
        .and_then(|i| i.validate())
        .unwrap_or_else(|e| panic!("shipped instance {name} must validate: {e}"))
        .geometry
        .unwrap()
        .gcomplex
}

/// For an isolated-fixed-point power `g^k`, the fixed subcomplex is a
/// disjoint set of points whose size the lattice determinant predicts.
#[test]
fn fixed_component_count_matches_determinant() {
    for order in [2u32, 3, 4, 6] {
        let regular = make_regular(
            &shipped_gcomplex(&format!("torus_z{order}.json")),
            DEFAULT_SUBDIVISION_BUDGET,
        )
        .unwrap();
        let action = CyclicAction::builtin(order).unwrap();
        for k in 1..order {
            let rho = action.generator().pow(k).unwrap();
            let det = rho.sub(&IntMat::identity(2)).unwrap().det().unwrap();
            if det == 0 {
                continue;
            }
            let fixed = fixed_subcomplex(&regular, k).unwrap();
            let betti = betti_numbers_checked(&fixed).unwrap();
            assert_eq!(
                betti,
                vec![det.unsigned_abs() as usize],
                "order {order}, power {k}"
            );
        }
    }
}

/// Full stratified reports agree between the regular level and one
/// extra barycentric subdivision (sizes aside).
#[test]
fn strata_reports_survive_extra_subdivision() {
    let regular = make_regular(
        &shipped_gcomplex("torus_z3.json"),
        DEFAULT_SUBDIVISION_BUDGET,
    )
    .unwrap();
    let finer = regular.subdivide().unwrap();
    let base = strata_report(&regular, RankMethod::Modular, 0).unwrap();
    let refined = strata_report(&finer, RankMethod::Modular, 0).unwrap();
    assert_eq!(
        (base.k0_rank, base.k1_rank),
        (refined.k0_rank, refined.k1_rank)
    );
    for (b, f) in base.strata.iter().zip(&refined.strata) {
        assert_eq!(b.g, f.g);
        assert_eq!(b.betti, f.betti);
        assert_eq!((b.even, b.odd), (f.even, f.odd));
    }
}

// ---------------------------------------------------------------------
// Shipped instance files
// ---------------------------------------------------------------------

#[test]
fn shipped_instances_validate_and_match_generators() {
    let cases: Vec<(&str, Instance)> = vec![
        ("torus_z2.json", generate_torus_instance(2, 6).unwrap()),
        ("torus_z3.json", generate_torus_instance(3, 6).unwrap()),
        ("torus_z4.json", generate_torus_instance(4, 6).unwrap()),
        ("torus_z6.json", generate_torus_instance(6, 6).unwrap()),
        ("sphere_z2.json", generate_sphere_instance()),
    ];
    for (name, fresh) in cases {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../instances")
            .join(name);
        let loaded = Instance::load(&path).unwrap();
        loaded.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(loaded, fresh, "{name} differs from its generator");

        // byte-lossless round trip through the serializer
        let text = loaded.to_json_string().unwrap();
        let reparsed = Instance::from_json_str(&text).unwrap();
        assert_eq!(loaded, reparsed, "{name} round trip");
        assert_eq!(text, reparsed.to_json_string().unwrap(), "{name} stability");
    }
}
