use cactus_core::cones::{
    cube_lattice_point, delta1_classes, find_delta1, lambda_bound, min_coeff, min_coeff_lattice, ConeSpec,
};
use cactus_core::sample;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn min_coeff_sign_matches_generators(seed in any::<u64>(), v in prop::collection::vec(-9i64..=9, 4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = rng.gen_range(1..=4);
        let cone = sample::simplicial_cone(rho, &mut rng, 4);
        let v = &v[..rho];
        let all_nonneg = cone.dual_generators().iter().all(|g| g.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() >= 0);
        let all_pos = cone.dual_generators().iter().all(|g| g.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() > 0);
        let m = min_coeff_lattice(&cone, v);
        prop_assert_eq!(!m.is_negative(), all_nonneg);
        prop_assert_eq!(m.is_positive(), all_pos);
    }

    #[test]
    fn delta1_classes_are_nef(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = rng.gen_range(1..=4);
        let cone = sample::simplicial_cone(rho, &mut rng, 3);
        let d0 = sample::ample_class(&cone, &mut rng, 3);
        let r = rng.gen_range(1..=3);
        let d = 2 * r + rng.gen_range(0..=3);
        let delta = sample::nef_class(&cone, &mut rng, 6);
        let lambda = lambda_bound(&cone, &d0, r, d).unwrap() + rng.gen_range(0..=3);
        let delta1 = find_delta1(&cone, &d0, &delta, lambda, d, r, None).unwrap();
        for class in delta1_classes(&d0, &delta, &delta1, lambda, d, r) {
            prop_assert!(!min_coeff(&cone, &class.iter().map(|&x| rat(x)).collect::<Vec<_>>()).is_negative());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cube_points_lie_in_the_target(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = rng.gen_range(1..=4);
        let cone = sample::simplicial_cone(rho, &mut rng, 3);
        let dpp: Vec<BigRational> = (0..rho).map(|_| BigRational::new(BigInt::from(rng.gen_range(-20..=20)), BigInt::from(rng.gen_range(1..=6)))).collect();
        // a large multiple of H clears every vertex
        let scale = rat(rng.gen_range(3..=9) * 8);
        let dp: Vec<BigRational> = (0..rho).map(|i| &dpp[i] + &scale * rat(cone.h()[i])).collect();
        if let Ok(x) = cube_lattice_point(&cone, &dp, &dpp) {
            let x: Vec<BigRational> = x.iter().map(|&v| rat(v)).collect();
            let up: Vec<_> = (0..rho).map(|i| &dp[i] - &x[i]).collect();
            let down: Vec<_> = (0..rho).map(|i| &x[i] - &dpp[i]).collect();
            prop_assert!(cone.contains(&up) && cone.contains(&down));
        } else {
            // only allowed when some vertex really fails
            let fails = (0..1u64 << rho).any(|m| {
                let shifted: Vec<_> = (0..rho).map(|i| &dp[i] - &dpp[i] + rat(if m >> i & 1 == 1 { 1 } else { -1 })).collect();
                !cone.contains(&shifted)
            });
            prop_assert!(fails);
        }
    }
}

/// On the ray, the feasible integers for the three classes form
/// `[⌈((λ+1)/(2d−r) − 1)D₀ + Δ/(2d−r)⌉, ⌊((λ−1)/d − 1)D₀ + Δ/d⌋]`.
#[test]
fn ray_interval_matches_closed_form() {
    let ray = ConeSpec::new(1, vec![vec![1]], vec![1], None).unwrap();
    for r in 1..=3usize {
        for d in 2 * r..=2 * r + 2 {
            for d0 in 1..=3i64 {
                let bound = lambda_bound(&ray, &[d0], r, d).unwrap();
                for lambda in bound - 3..=bound + 5 {
                    for delta in 0..=12i64 {
                        let (di, ri) = (d as i64, r as i64);
                        let lo = (BigRational::new(BigInt::from((lambda + 1) * d0 + delta), BigInt::from(2 * di - ri)) - rat(d0)).ceil();
                        let hi = (BigRational::new(BigInt::from((lambda - 1) * d0 + delta), BigInt::from(di)) - rat(d0)).floor();
                        let scan: Vec<i64> = (-50..=50)
                            .filter(|&x| delta1_classes(&[d0], &[delta], &[x], lambda, d, r).iter().all(|c| c[0] >= 0))
                            .collect();
                        let closed: Vec<i64> = (-50..=50)
                            .filter(|&x| rat(x) >= lo && rat(x) <= hi && x >= 0)
                            .collect();
                        assert_eq!(scan, closed, "r={r} d={d} D0={d0} lambda={lambda} Delta={delta}");
                        if lambda >= bound {
                            let x = find_delta1(&ray, &[d0], &[delta], lambda, d, r, None).unwrap();
                            assert!(scan.contains(&x[0]));
                        }
                    }
                }
            }
        }
    }
}
