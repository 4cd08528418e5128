use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankrange::closed_form::{classify, region_contains, Shape};
use rankrange::compare::{compare_engines, compare_with_sweep};
use rankrange::geometry::{hausdorff_distance, ConvexRegion, Point, RegionKind};
use rankrange::linalg::{direct_sum, jordan_block, Complex, ComplexMatrix, JordanScalarModel, MatrixForm};
use rankrange::oracles::{normal_boundary_distance, normal_range_oracle, odd_jordan_witness, verify_witness};
use rankrange::sampler::{
    member, outer_region, sample_support, Membership, MembershipOracle, RefineOptions, SpectralSweep,
};

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn model(n: usize, m: usize, alpha: Complex, beta: Complex) -> JordanScalarModel {
    JordanScalarModel::new(n, m, alpha, beta).unwrap()
}

#[test]
fn engines_agree_on_a_small_grid() {
    let betas = [c(0.0, 0.0), c(0.3, 0.0), c(1.0, 0.0), c(0.0, 1.2), c(1.0, -2.0) / 5f64.sqrt()];
    for n in [2, 3, 4, 5] {
        for m in [0, 1, 3] {
            for beta in betas {
                let model = model(n, m, c(0.0, 0.0), beta);
                let sweep = SpectralSweep::new(&model.materialize(MatrixForm::Original), 1800).unwrap();
                for k in 1..=n + m {
                    let pair = compare_with_sweep(&model, &sweep, k, Some(&RefineOptions::default())).unwrap();
                    let cmp = &pair.comparison;
                    assert!(cmp.agrees(4e-3, 1e-6), "n={n} m={m} k={k} beta={beta}: {cmp:?}");
                    assert!(cmp.support_discrepancy < 1e-9, "n={n} m={m} k={k} beta={beta}: {cmp:?}");
                }
            }
        }
    }
}

#[test]
fn shifted_and_rotated_model() {
    let model = model(5, 5, c(-1.0, -1.0), c(1.0, -2.0));
    for k in 1..=4 {
        // segments need the refined grid to pin their endpoints
        let cmp = compare_engines(&model, k, 3600, Some(&RefineOptions::default())).unwrap().comparison;
        assert!(cmp.agrees(2e-3, 1e-6), "k={k}: {cmp:?}");
    }
}

#[test]
fn named_empty_and_point_ranges() {
    let cases = [
        (4, 2, 3, c(1.0, 0.0), RegionKind::Empty),
        (8, 4, 5, c(1.0, 0.0), RegionKind::Empty),
        (3, 2, 4, c(0.0, 0.0), RegionKind::Point),
        (5, 1, 4, c(0.0, 0.0), RegionKind::Point),
        (5, 1, 5, c(0.0, 0.0), RegionKind::Empty),
    ];
    for (n, m, k, beta, kind) in cases {
        let cmp = compare_engines(&model(n, m, c(0.0, 0.0), beta), k, 3600, None).unwrap().comparison;
        assert_eq!(cmp.closed_kind, kind, "n={n} m={m} k={k}");
        assert_eq!(cmp.sampled_kind, kind, "n={n} m={m} k={k}");
    }
}

#[test]
fn point_cases_contain_beta() {
    for n in 2..=6 {
        for m in 1..=3 {
            for beta in [c(0.4, 0.0), c(-0.5, 0.7)] {
                let model = model(n, m, c(0.0, 0.0), beta);
                for k in 1..=n + m {
                    let desc = classify(&model, k).unwrap();
                    if let Shape::Point { .. } = desc.shape {
                        assert_eq!(desc.case, 6);
                        assert!(region_contains(&desc, beta));
                        let verdict = member(&model.materialize(MatrixForm::Original), k, beta, 720).unwrap();
                        assert_ne!(verdict, Membership::Outside, "n={n} m={m} k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn witnesses_certify_sampled_points() {
    for ell in 1..=3 {
        for m in 0..=2 {
            let n = 2 * ell + 1;
            let t = direct_sum(&jordan_block(n, c(0.0, 0.0)).unwrap(), &ComplexMatrix::zeros(m, m)).unwrap();
            let k = ell + 1 + m;
            let w = verify_witness(&t, &odd_jordan_witness(ell, m), c(0.0, 0.0), k).unwrap();
            assert!(w.accepted && w.residual == 0.0);
            let sampled = outer_region(&sample_support(&t, k, 720).unwrap()).unwrap();
            assert_eq!(sampled.kind(), RegionKind::Point);
            assert!(sampled.vertices()[0].distance(Point::new(0.0, 0.0)) < 1e-9);
            let beyond = outer_region(&sample_support(&t, k + 1, 720).unwrap()).unwrap();
            assert!(beyond.is_empty());
        }
    }
}

#[test]
fn sampler_matches_normal_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for _ in 0..4 {
        let size = rng.gen_range(3..=6);
        let eigs: Vec<Complex> = (0..size).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let t = ComplexMatrix::diagonal(&eigs);
        for k in 1..=2 {
            let oracle = MembershipOracle::new(&t, k, 720, None).unwrap();
            for i in 0..15 {
                for j in 0..15 {
                    let probe = c(-1.0 + 2.0 * i as f64 / 14.0, -1.0 + 2.0 * j as f64 / 14.0);
                    if normal_boundary_distance(&eigs, k, probe).unwrap() < 1e-6 {
                        continue;
                    }
                    let expected = normal_range_oracle(&eigs, k, probe).unwrap();
                    let got = oracle.member(probe).unwrap();
                    let expected = if expected { Membership::Inside } else { Membership::Outside };
                    assert_eq!(got, expected, "eigs={eigs:?} k={k} probe={probe}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn figure_disk_cone_shape() {
    // Lambda_2(J_5(0) ⊕ I_4) is the hull of the disk of radius 1/2 and the point 1
    let desc = classify(&model(5, 4, c(0.0, 0.0), c(1.0, 0.0)), 2).unwrap();
    let region = rankrange::closed_form::discretize(&desc, 4096).unwrap();
    let mut pts: Vec<Point> = (0..4096)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / 4096.0;
            Point::new(0.5 * t.cos(), 0.5 * t.sin())
        })
        .collect();
    pts.push(Point::new(1.0, 0.0));
    let hull = ConvexRegion::hull(&pts, 1e-12);
    assert!(hausdorff_distance(&region, &hull).unwrap() < 1e-6);
}
