mod common;

use cactus_core::apolarity::{apolar_hilbert, contract, Functional};
use cactus_core::catalecticant::{cat_rank, valid_windows};
use cactus_core::exactalg::{Field, Matrix};
use cactus_core::model::{BigradedModel, Bidegree, RingElement};
use cactus_core::reconstruct::{decompose, find_plateau, verify_certificate, TheoremParams};
use cactus_core::sample;
use cactus_core::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params() -> TheoremParams {
    TheoremParams::new(2, 1, 5, 3).unwrap()
}

#[test]
fn every_low_rank_functional_is_decomposed() {
    let params = params();
    for q in [3u64, 5] {
        let model = params.model(Field::prime(q).unwrap());
        let mut locus = 0;
        for p in common::all_functionals(model, params.bidegree()) {
            let rank = cat_rank(&p, &params.designated_window()).unwrap();
            match decompose(&p, &params) {
                Ok(cert) => {
                    assert!(rank <= params.r);
                    assert!(verify_certificate(&p, &cert, &params));
                    assert_eq!((cert.k0, cert.r0, cert.degree()), (params.k, rank, rank));
                    locus += 1;
                }
                Err(Error::NotInRankLocus { rank: reported, .. }) => {
                    assert!(rank > params.r);
                    assert_eq!(reported, rank);
                }
                Err(e) => panic!("{:?}: {e}", p.coeffs),
            }
        }
        assert!(locus > 0);
    }
}

#[test]
fn plateau_stays_in_range() {
    for (r, d, k) in [(1, 4, 2), (2, 5, 2), (2, 6, 3), (3, 6, 3)] {
        let params = TheoremParams::new(r, 1, d, k).unwrap();
        let model = params.model(common::f3());
        for p in common::all_functionals(model, params.bidegree()).into_iter().step_by(7) {
            if let Ok(pl) = find_plateau(&p, &params) {
                assert!(params.k <= pl.k0 && pl.k0 < params.d);
                assert_eq!(pl.k0, params.k);
            }
        }
    }
}

/// Functionals annihilated by a random form `g`: a basis of the kernel of `p ↦ g ⌟ p`.
fn annihilated_by(g: &RingElement, model: BigradedModel, b: Bidegree) -> Vec<Vec<cactus_core::Scalar>> {
    let n = model.piece_dim(b);
    let columns: Vec<Vec<_>> = (0..n)
        .map(|i| {
            let mut e = vec![model.field.zero(); n];
            e[i] = model.field.one();
            contract(g, &Functional::new(model, b, e).unwrap()).unwrap().coeffs
        })
        .collect();
    let rows = model.piece_dim(b - g.bidegree);
    Matrix::from_columns(model.field, rows, &columns).unwrap().rank_kernel().1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn certificates_bound_every_window(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = params();
        for field in [Field::Rationals, Field::prime(7).unwrap()] {
            let model = params.model(field);
            let deg = rng.gen_range(1..=2);
            let g = loop {
                let g = sample::element(&model, Bidegree::new(deg, 0), &mut rng, 3);
                if !g.is_zero() {
                    break g;
                }
            };
            let kernel = annihilated_by(&g, model, params.bidegree());
            let mut coeffs = vec![field.zero(); model.piece_dim(params.bidegree())];
            for v in &kernel {
                let s = sample::scalar(field, &mut rng, 4);
                for (c, x) in coeffs.iter_mut().zip(v) {
                    *c = &*c + &(&s * x);
                }
            }
            let p = Functional::new(model, params.bidegree(), coeffs).unwrap();
            if p.is_zero() {
                continue;
            }
            let cert = decompose(&p, &params).unwrap();
            prop_assert!(verify_certificate(&p, &cert, &params));
            prop_assert!(cert.degree() <= deg as usize);
            for w in valid_windows(params.bidegree()) {
                prop_assert!(cat_rank(&p, &w).unwrap() <= cert.degree());
            }
        }
    }
}

#[test]
fn binary_profiles_are_monotone_after_the_bound() {
    for deg in 1..=8i64 {
        let model = BigradedModel::single_projective(1, common::f3());
        for p in common::all_functionals(model, Bidegree::new(deg, 0)) {
            let profile = apolar_hilbert(&p).unwrap();
            let h: Vec<usize> = (0..=deg).map(|i| profile.get(Bidegree::new(i, 0))).collect();
            for r in 0..=deg as usize {
                if h[r] <= r {
                    assert!(h[r..].windows(2).all(|w| w[0] >= w[1]), "{:?} from {r}: {h:?}", p.coeffs);
                }
            }
        }
    }
}
