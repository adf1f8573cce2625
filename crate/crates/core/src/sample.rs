//! Random inputs for property suites, benchmarks and `--samples` runs.

use rand::Rng;

use crate::apolarity::Functional;
use crate::cones::ConeSpec;
use crate::exactalg::{Field, Scalar};
use crate::model::{BigradedModel, Bidegree, RingElement};
use crate::oracle::{normalize_point, Point};

/// Uniform over `𝔽_p`, or an integer in `[−bound, bound]` over ℚ.
pub fn scalar<R: Rng + ?Sized>(field: Field, rng: &mut R, bound: i64) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-bound..=bound)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn vector<R: Rng + ?Sized>(field: Field, len: usize, rng: &mut R, bound: i64) -> Vec<Scalar> {
    (0..len).map(|_| scalar(field, rng, bound)).collect()
}

fn nonzero_vector<R: Rng + ?Sized>(field: Field, len: usize, rng: &mut R, bound: i64) -> Vec<Scalar> {
    loop {
        let v = vector(field, len, rng, bound);
        if v.iter().any(|s| !s.is_zero()) {
            return v;
        }
    }
}

/// A nonzero functional of bidegree `b` (the piece must be nonzero).
pub fn functional<R: Rng + ?Sized>(model: &BigradedModel, b: Bidegree, rng: &mut R, bound: i64) -> Functional {
    let v = nonzero_vector(model.field, model.piece_dim(b), rng, bound);
    Functional::new(*model, b, v).expect("coefficients fit the piece")
}

pub fn element<R: Rng + ?Sized>(model: &BigradedModel, b: Bidegree, rng: &mut R, bound: i64) -> RingElement {
    let v = vector(model.field, model.piece_dim(b), rng, bound);
    RingElement::new(*model, b, v).expect("coefficients fit the piece")
}

pub fn point<R: Rng + ?Sized>(model: &BigradedModel, rng: &mut R, bound: i64) -> Point {
    model.blocks().iter().map(|&n| nonzero_vector(model.field, n, rng, bound)).collect()
}

/// `count` points whose projections to each factor are pairwise distinct.
/// Returns `None` when the field is too small to find them within a few thousand tries.
pub fn injective_points<R: Rng + ?Sized>(model: &BigradedModel, count: usize, rng: &mut R, bound: i64) -> Option<Vec<Point>> {
    let mut points: Vec<Point> = Vec::with_capacity(count);
    let mut tries = 0;
    while points.len() < count {
        tries += 1;
        if tries > 5000 {
            return None;
        }
        let p = normalize_point(&point(model, rng, bound));
        let clash = points.iter().any(|q| q.iter().zip(&p).any(|(a, b)| a == b));
        if !clash {
            points.push(p);
        }
    }
    Some(points)
}

/// A simplicial cone in `ℤ^ρ`: random `H`, then `ρ` independent covectors positive on it.
pub fn simplicial_cone<R: Rng + ?Sized>(rho: usize, rng: &mut R, bound: i64) -> ConeSpec {
    let h: Vec<i64> = loop {
        let h: Vec<i64> = (0..rho).map(|_| rng.gen_range(-bound..=bound)).collect();
        if h.iter().any(|&x| x != 0) {
            break h;
        }
    };
    loop {
        let mut gens = Vec::with_capacity(rho);
        while gens.len() < rho {
            let g: Vec<i64> = (0..rho).map(|_| rng.gen_range(-bound..=bound)).collect();
            if g.iter().zip(&h).map(|(a, b)| a * b).sum::<i64>() > 0 {
                gens.push(g);
            }
        }
        if let Ok(cone) = ConeSpec::new(rho, gens, h.clone(), None) {
            return cone;
        }
    }
}

fn class_where<R: Rng + ?Sized>(cone: &ConeSpec, rng: &mut R, bound: i64, accept: impl Fn(&[i64]) -> bool) -> Vec<i64> {
    for _ in 0..10_000 {
        let v: Vec<i64> = (0..cone.rho()).map(|_| rng.gen_range(-bound..=bound)).collect();
        if accept(&v) {
            return v;
        }
    }
    cone.h().to_vec()
}

/// A lattice vector strictly inside `cone`; falls back to `H` for very thin cones.
pub fn ample_class<R: Rng + ?Sized>(cone: &ConeSpec, rng: &mut R, bound: i64) -> Vec<i64> {
    class_where(cone, rng, bound, |v| {
        cone.dual_generators().iter().all(|g| g.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() > 0)
    })
}

/// A lattice vector in `cone`, possibly on the boundary.
pub fn nef_class<R: Rng + ?Sized>(cone: &ConeSpec, rng: &mut R, bound: i64) -> Vec<i64> {
    class_where(cone, rng, bound, |v| cone.contains_lattice(v))
}
