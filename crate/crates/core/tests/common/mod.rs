#![allow(dead_code)]

use cactus_core::apolarity::Functional;
use cactus_core::exactalg::Field;
use cactus_core::model::{BigradedModel, Bidegree};
use cactus_core::oracle::ProjectivePoints;

/// The built-in models exercised by the property suites.
pub fn models(field: Field) -> Vec<BigradedModel> {
    vec![
        BigradedModel::ambient_product(1, 1, field),
        BigradedModel::ambient_product(2, 1, field),
        BigradedModel::single_projective(1, field),
        BigradedModel::single_projective(2, field),
        BigradedModel::twisted_binary(1, field),
        BigradedModel::twisted_binary(2, field),
    ]
}

pub fn f3() -> Field {
    Field::prime(3).unwrap()
}

/// Every functional of `P(piece b)` over a prime field, one per projective class.
pub fn all_functionals(model: BigradedModel, b: Bidegree) -> Vec<Functional> {
    let pts = ProjectivePoints::new(model.field, model.piece_dim(b)).unwrap();
    pts.iter().map(|v| Functional::new(model, b, v).unwrap()).collect()
}

/// Every point of the model over a prime field, as normalized blocks.
pub fn all_points(model: &BigradedModel) -> Vec<Vec<Vec<cactus_core::Scalar>>> {
    let mut out: Vec<Vec<Vec<cactus_core::Scalar>>> = vec![vec![]];
    for n in model.blocks() {
        let block: Vec<_> = ProjectivePoints::new(model.field, n).unwrap().iter().collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                block.iter().map(move |b| {
                    let mut p = prefix.clone();
                    p.push(b.clone());
                    p
                })
            })
            .collect();
    }
    out
}
