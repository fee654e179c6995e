//! The acceptance gate: one test per criterion, each printing a single
//! PASS line once its assertions hold. Tolerances are pinned here and
//! intentionally not shared with library defaults.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyframe::combinatorics::{cayley_constant, spanning_tree_count};
use polyframe::frame::{cauchy_binet, frame_operator, Frame};
use polyframe::geometry::{dot, norm, scale, sub};
use polyframe::inequality::{catalog_for, evaluate, Check, LpVariant, Tolerances};
use polyframe::polytope::{Family, InscribedPolytope};
use polyframe::report::campaign_csv;
use polyframe::search::{
    falsification_campaign, sample_polytope, tightness_search, verify_known_tight_configs,
    FrameKind,
};
use polyframe::zform::{z_form, z_matrix, z_spectral_properties};

fn tols() -> Tolerances {
    Tolerances { tol: 1e-9, eq_tol: 1e-7 }
}

#[test]
fn criterion_1_cauchy_binet_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE);
    let mut checked = 0;
    while checked < 1000 {
        let d = rng.gen_range(2..=5);
        let n = rng.gen_range(d..=10);
        let vectors: Vec<Vec<f64>> =
            (0..n).map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let Ok(frame) = Frame::new(vectors) else { continue };
        let det = frame_operator(&frame).unwrap().determinant;
        let cb = cauchy_binet(&frame).unwrap();
        assert!(
            (cb - det).abs() <= 1e-9 * det.max(1.0),
            "d={d} n={n}: cauchy-binet {cb} vs det {det}"
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("criterion 1 PASS: Cauchy-Binet agrees with det(S) on 1000 frames in {elapsed:?}");
}

const EQUALITY_CHECKS: [Check; 6] = [
    Check::VertexSimplex,
    Check::VolumeBound,
    Check::EdgeSimplex,
    Check::Isoperimetric,
    Check::NormalSimplexVertex,
    Check::NormalEdge,
];

fn perturb_one_vertex(p: &InscribedPolytope, radians: f64) -> InscribedPolytope {
    let v0 = &p.vertices()[0];
    let v1 = &p.vertices()[1];
    let tangent = sub(v1, &scale(v0, dot(v0, v1)));
    let tangent = scale(&tangent, 1.0 / norm(&tangent));
    let moved: Vec<f64> = v0
        .iter()
        .zip(&tangent)
        .map(|(a, t)| radians.cos() * a + radians.sin() * t)
        .collect();
    let mut vertices = p.vertices().to_vec();
    vertices[0] = moved;
    InscribedPolytope::simplex(vertices).unwrap()
}

#[test]
fn criterion_2_regular_simplex_equalities() {
    for d in 2..=6 {
        let regular = InscribedPolytope::regular_simplex(d).unwrap();
        let perturbed = perturb_one_vertex(&regular, 0.1);
        for check in EQUALITY_CHECKS {
            let at_regular = evaluate(check, &regular, tols()).unwrap();
            assert!(
                at_regular.equality,
                "{} d={d}: relative gap {} on the regular simplex",
                at_regular.id, at_regular.relative_gap
            );
            let off = evaluate(check, &perturbed, tols()).unwrap();
            assert!(
                off.holds && off.relative_gap > 1e-4,
                "{} d={d}: perturbed relative gap {}",
                off.id,
                off.relative_gap
            );
        }
    }
    println!("criterion 2 PASS: six equality cases at d=2..6, strict after a 0.1-radian kick");
}

#[test]
fn criterion_3_identity_suite() {
    for d in [2, 3, 4] {
        for seed in 0..500 {
            let p = sample_polytope(Family::Simplex, d, seed).unwrap();
            let local = evaluate(Check::LocalNormalIdentity, &p, tols()).unwrap();
            assert!(local.holds, "d={d} seed={seed}: local normal gap {}", local.relative_gap);
            let hull = evaluate(Check::NormalSimplexVolume, &p, tols()).unwrap();
            assert!(hull.holds, "d={d} seed={seed}: hull volume gap {}", hull.relative_gap);
            if d == 3 {
                let cone = evaluate(Check::NormalConeVolume, &p, tols()).unwrap();
                assert!(cone.holds, "seed={seed}: cone gap {}", cone.relative_gap);
            }
        }
    }
    println!("criterion 3 PASS: normal identities on 500 simplices per d=2..4 at 1e-8");
}

#[test]
fn criterion_4_z_form_cross_check() {
    for (family, dim, scale) in [
        (Family::Quadrilateral, 2, 16.0),
        (Family::PyramidQuad, 3, 900.0),
        (Family::BipyramidTri, 3, 900.0),
    ] {
        for seed in 0..1000 {
            let p = sample_polytope(family, dim, seed).unwrap();
            let form = z_form(&p).unwrap();
            assert_eq!(form.scale, scale);
            let predicted = scale * form.value;
            assert!(
                (form.edge_det - predicted).abs() <= 1e-8 * form.edge_det.abs().max(1e-12),
                "{} seed={seed}: det {} vs scale*form {}",
                family.name(),
                form.edge_det,
                predicted
            );
        }
    }
    println!("criterion 4 PASS: det S_E = scale * <ZT,T> on 1000 instances per family");
}

#[test]
fn criterion_5_combinatorial_constants() {
    let start = Instant::now();
    for d in 2..=5 {
        let expected = (d as u64 + 1).pow(d as u32 - 1);
        assert_eq!(cayley_constant(d, 0).unwrap(), expected, "d={d}");
    }
    for d in 2..=8usize {
        let n = d + 2;
        let expected = 2 * (n as i128).pow(n as u32 - 3);
        assert_eq!(spanning_tree_count(n, true).unwrap(), expected, "d={d}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("criterion 5 PASS: Cayley constants d=2..5 and tree counts d=2..8 in {elapsed:?}");
}

#[test]
fn criterion_6_tight_configurations() {
    let reports = verify_known_tight_configs().unwrap();
    assert_eq!(reports.len(), 5);
    for r in &reports {
        assert!(r.deviation <= 1e-9, "{}: deviation {}", r.name, r.deviation);
    }

    let vertex = tightness_search(Family::PyramidQuad, FrameKind::Vertex, 0).unwrap();
    assert!((vertex.params[0].abs() - 1.0 / 6.0_f64.sqrt()).abs() < 1e-6);
    let aug = tightness_search(Family::PyramidQuad, FrameKind::AugmentedEdge, 0).unwrap();
    assert!((aug.params[0] + 3.0 / 7.0).abs() < 1e-6);
    let edge = tightness_search(Family::PyramidQuad, FrameKind::Edge, 0).unwrap();
    assert!((edge.params[0] + 0.2).abs() < 1e-6);
    let bipyr = tightness_search(Family::BipyramidTri, FrameKind::AugmentedEdge, 1).unwrap();
    assert!((bipyr.params[1] - 3.0_f64.sqrt() / 2.0).abs() < 1e-6);
    let plain =
        tightness_search(Family::BipyramidTri, FrameKind::AugmentedEdgeNoSynthetic, 1).unwrap();
    assert!((1.0 / plain.params[1] - 2.0 / 5.0_f64.sqrt()).abs() < 1e-6);
    for r in [&vertex, &aug, &edge, &bipyr, &plain] {
        assert!(r.value <= 1e-9, "{:?}: {}", r.frame_kind, r.value);
    }
    println!("criterion 6 PASS: five tight configurations verified and recovered by search");
}

#[test]
fn criterion_7_falsification_campaigns() {
    let campaigns: [(Family, usize); 6] = [
        (Family::Simplex, 2),
        (Family::Simplex, 3),
        (Family::Simplex, 4),
        (Family::Quadrilateral, 2),
        (Family::PyramidQuad, 3),
        (Family::BipyramidTri, 3),
    ];
    for (family, dim) in campaigns {
        let checks: Vec<Check> =
            catalog_for(family).into_iter().filter(|c| c.asserted()).collect();
        let campaign = falsification_campaign(&checks, family, dim, 10_000, 0, tols()).unwrap();
        for result in &campaign.results {
            assert_eq!(
                result.violations, 0,
                "{} on {} d={dim}: min relative gap {}",
                result.id,
                family.name(),
                result.min_relative_gap
            );
        }
    }

    let regular = InscribedPolytope::regular_simplex(2).unwrap();
    let stated = evaluate(
        Check::LpInterp { p: 1.0, variant: LpVariant::AsStated },
        &regular,
        tols(),
    )
    .unwrap();
    assert!(!stated.holds, "the printed p=1 bound should fail on the regular triangle");
    let derived = evaluate(
        Check::LpInterp { p: 1.0, variant: LpVariant::Derived },
        &regular,
        tols(),
    )
    .unwrap();
    assert!(derived.holds && derived.equality);
    println!(
        "criterion 7 PASS: 10^4-sample campaigns clean; printed p=1 bound fails on the regular \
         triangle while the derived variant is tight there"
    );
}

#[test]
fn criterion_8_z_spectral_properties() {
    for family in [Family::Quadrilateral, Family::PyramidQuad, Family::BipyramidTri] {
        let z = z_matrix(family).unwrap();
        let report = z_spectral_properties(&z).unwrap();
        assert!(report.all_pass(), "{}: {report:?}", family.name());
    }
    let quad = z_spectral_properties(&z_matrix(Family::Quadrilateral).unwrap()).unwrap();
    let expected = [0.0, 2.0, 2.0, 4.0];
    for (got, want) in quad.eigenvalues.iter().zip(expected) {
        assert!((got - want).abs() <= 1e-10, "{:?}", quad.eigenvalues);
    }
    println!("criterion 8 PASS: Z-matrix properties hold; cycle spectrum is 0,2,2,4");
}

#[test]
fn criterion_9_campaign_determinism_across_pools() {
    let checks = catalog_for(Family::BipyramidTri);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            falsification_campaign(&checks, Family::BipyramidTri, 3, 2000, 13, tols()).unwrap()
        })
    };
    let single = campaign_csv(&run(1).rows);
    let multi = campaign_csv(&run(4).rows);
    let again = campaign_csv(&run(4).rows);
    assert_eq!(single, multi);
    assert_eq!(multi, again);
    println!("criterion 9 PASS: identical CSV bytes from 1-thread and 4-thread pools");
}
