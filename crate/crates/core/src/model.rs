//! Computable presentations of bigraded double section rings.
//!
//! Three geometries are built in: a product of two projective spaces with
//! its bihomogeneous coordinate ring, a single projective space, and the
//! projective line with `L₁ = O(1)`, `L₂ = O(c)` realized directly by binary
//! forms of degree `i + c·j`. Graded pieces carry monomial bases in
//! descending lexicographic order of exponent vectors, α-block before β-block,
//! so `α₀^n` is always the first basis element.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Scalar};

/// An exponent vector over all ring variables, blocks concatenated.
pub type Monomial = Vec<u32>;

/// A bidegree `(i, j)`; negative components index zero pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub i: i64,
    pub j: i64,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { i: 0, j: 0 };

    pub const fn new(i: i64, j: i64) -> Self {
        Bidegree { i, j }
    }

    /// Componentwise `self ≤ other`.
    pub fn le(self, other: Bidegree) -> bool {
        self.i <= other.i && self.j <= other.j
    }

    pub fn is_nonnegative(self) -> bool {
        self.i >= 0 && self.j >= 0
    }

    /// All bidegrees `b` with `(0,0) ≤ b ≤ self`, lexicographic.
    pub fn box_below(self) -> impl Iterator<Item = Bidegree> {
        (0..=self.i.max(-1)).flat_map(move |i| (0..=self.j.max(-1)).map(move |j| Bidegree::new(i, j)))
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.i + o.i, self.j + o.j)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.i - o.i, self.j - o.j)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl FromStr for Bidegree {
    type Err = Error;

    /// `i,j`, optionally parenthesised.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::Parse { line: 0, message: format!("bad bidegree {s:?}; expected i,j") };
        let (a, b) = t.split_once(',').ok_or_else(bad)?;
        Ok(Bidegree::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
    }
}

/// The geometry behind a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// `P^{n1} × P^{n2}` with variables `α₀..α_{n1}, β₀..β_{n2}`.
    AmbientProduct { n1: u32, n2: u32 },
    /// `P^n`; only pieces `(i, 0)` are nonzero.
    SingleProjective { n: u32 },
    /// `P¹` with `L₁ = O(1)`, `L₂ = O(c)`; piece `(i,j)` is binary forms of degree `i + c·j`.
    TwistedBinary { c: u32 },
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::AmbientProduct { n1, n2 } => write!(f, "ambient-product:n1={n1},n2={n2}"),
            ModelKind::SingleProjective { n } => write!(f, "single-projective:n={n}"),
            ModelKind::TwistedBinary { c } => write!(f, "twisted-binary:c={c}"),
        }
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse { line: 0, message: format!("bad model descriptor {s:?}: {m}") };
        let (name, params) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let mut values = std::collections::BTreeMap::new();
        for kv in params.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let v: u32 = v.trim().parse().map_err(|_| bad("parameter is not a count"))?;
            values.insert(k.trim().to_string(), v);
        }
        let mut take = |k: &str| values.remove(k).ok_or_else(|| bad(&format!("missing {k}")));
        let kind = match name {
            "ambient-product" => ModelKind::AmbientProduct { n1: take("n1")?, n2: take("n2")? },
            "single-projective" => ModelKind::SingleProjective { n: take("n")? },
            "twisted-binary" => ModelKind::TwistedBinary { c: take("c")? },
            _ => return Err(bad("unknown model")),
        };
        if let Some(k) = values.keys().next() {
            return Err(bad(&format!("unknown parameter {k}")));
        }
        Ok(kind)
    }
}

/// A built-in double section ring over a fixed base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BigradedModel {
    pub kind: ModelKind,
    pub field: Field,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, t| acc * (n - t) / (t + 1))
}

/// Number of exponent vectors of total degree `n` in `parts` variables.
fn count_compositions(n: u32, parts: usize) -> usize {
    if parts == 0 {
        return usize::from(n == 0);
    }
    binomial(n as u64 + parts as u64 - 1, parts as u64 - 1) as usize
}

/// Exponent vectors of total degree `n` in `parts` variables, descending lex.
fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::with_capacity(count_compositions(n, parts));
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Position of `e` in the descending-lex enumeration of its degree.
fn composition_rank(e: &[u32]) -> usize {
    let mut remaining: u32 = e.iter().sum();
    let mut rank = 0;
    for t in 0..e.len().saturating_sub(1) {
        let tail = e.len() - t - 1;
        for v in (e[t] + 1)..=remaining {
            rank += count_compositions(remaining - v, tail);
        }
        remaining -= e[t];
    }
    rank
}

impl BigradedModel {
    pub fn new(kind: ModelKind, field: Field) -> Self {
        BigradedModel { kind, field }
    }

    pub fn ambient_product(n1: u32, n2: u32, field: Field) -> Self {
        Self::new(ModelKind::AmbientProduct { n1, n2 }, field)
    }

    pub fn single_projective(n: u32, field: Field) -> Self {
        Self::new(ModelKind::SingleProjective { n }, field)
    }

    pub fn twisted_binary(c: u32, field: Field) -> Self {
        Self::new(ModelKind::TwistedBinary { c }, field)
    }

    /// Sizes of the variable blocks; also the coordinate counts of points.
    pub fn blocks(&self) -> Vec<usize> {
        match self.kind {
            ModelKind::AmbientProduct { n1, n2 } => vec![n1 as usize + 1, n2 as usize + 1],
            ModelKind::SingleProjective { n } => vec![n as usize + 1],
            ModelKind::TwistedBinary { .. } => vec![2],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.blocks().iter().sum()
    }

    fn is_zero_piece(&self, b: Bidegree) -> bool {
        !b.is_nonnegative() || matches!(self.kind, ModelKind::SingleProjective { .. } if b.j != 0)
    }

    /// Degree of piece `(i,j)` of the binary model.
    fn binary_degree(c: u32, b: Bidegree) -> u32 {
        (b.i + c as i64 * b.j) as u32
    }

    pub fn piece_dim(&self, b: Bidegree) -> usize {
        if self.is_zero_piece(b) {
            return 0;
        }
        match self.kind {
            ModelKind::AmbientProduct { n1, n2 } => {
                count_compositions(b.i as u32, n1 as usize + 1) * count_compositions(b.j as u32, n2 as usize + 1)
            }
            ModelKind::SingleProjective { n } => count_compositions(b.i as u32, n as usize + 1),
            ModelKind::TwistedBinary { c } => Self::binary_degree(c, b) as usize + 1,
        }
    }

    /// Monomial basis of piece `b`, descending lexicographic.
    pub fn basis(&self, b: Bidegree) -> Vec<Monomial> {
        if self.is_zero_piece(b) {
            return Vec::new();
        }
        match self.kind {
            ModelKind::AmbientProduct { n1, n2 } => {
                let alphas = compositions(b.i as u32, n1 as usize + 1);
                let betas = compositions(b.j as u32, n2 as usize + 1);
                alphas
                    .iter()
                    .flat_map(|a| betas.iter().map(move |bb| [a.as_slice(), bb.as_slice()].concat()))
                    .collect()
            }
            ModelKind::SingleProjective { n } => compositions(b.i as u32, n as usize + 1),
            ModelKind::TwistedBinary { c } => compositions(Self::binary_degree(c, b), 2),
        }
    }

    /// Index of `m` in `basis(b)`, or `None` when `m` is not a monomial of that piece.
    pub fn piece_index(&self, b: Bidegree, m: &[u32]) -> Option<usize> {
        if self.is_zero_piece(b) || m.len() != self.num_vars() {
            return None;
        }
        match self.kind {
            ModelKind::AmbientProduct { n1, n2 } => {
                let (a, bb) = m.split_at(n1 as usize + 1);
                if a.iter().sum::<u32>() as i64 != b.i || bb.iter().sum::<u32>() as i64 != b.j {
                    return None;
                }
                Some(composition_rank(a) * count_compositions(b.j as u32, n2 as usize + 1) + composition_rank(bb))
            }
            ModelKind::SingleProjective { .. } => {
                (m.iter().sum::<u32>() as i64 == b.i).then(|| composition_rank(m))
            }
            ModelKind::TwistedBinary { c } => {
                (m.iter().sum::<u32>() == Self::binary_degree(c, b)).then(|| composition_rank(m))
            }
        }
    }

    pub fn check_field(&self, f: Field) -> Result<()> {
        if f != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for BigradedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.kind, self.field)
    }
}

/// A homogeneous element of one graded piece, in the monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    pub model: BigradedModel,
    pub bidegree: Bidegree,
    pub coeffs: Vec<Scalar>,
}

impl RingElement {
    pub fn new(model: BigradedModel, bidegree: Bidegree, coeffs: Vec<Scalar>) -> Result<Self> {
        let dim = model.piece_dim(bidegree);
        if coeffs.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for piece {bidegree} of dimension {dim}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| c.field() != model.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(RingElement { model, bidegree, coeffs })
    }

    pub fn zero(model: BigradedModel, bidegree: Bidegree) -> Self {
        RingElement { model, bidegree, coeffs: vec![model.field.zero(); model.piece_dim(bidegree)] }
    }

    /// A single monomial with coefficient one.
    pub fn monomial(model: BigradedModel, bidegree: Bidegree, exponents: &[u32]) -> Result<Self> {
        Self::from_terms(model, bidegree, &[(exponents.to_vec(), model.field.one())])
    }

    pub fn from_terms(model: BigradedModel, bidegree: Bidegree, terms: &[(Monomial, Scalar)]) -> Result<Self> {
        let mut e = Self::zero(model, bidegree);
        for (m, c) in terms {
            model.check_field(c.field())?;
            let idx = model.piece_index(bidegree, m).ok_or_else(|| {
                Error::DimensionMismatch(format!("monomial {m:?} is not in piece {bidegree}"))
            })?;
            e.coeffs[idx] = &e.coeffs[idx] + c;
        }
        Ok(e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Nonzero terms paired with their monomials.
    pub fn terms(&self) -> Vec<(Monomial, Scalar)> {
        self.model
            .basis(self.bidegree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> RingElement {
        RingElement { coeffs: self.coeffs.iter().map(|c| c * s).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        if self.model != other.model {
            return Err(Error::ModelMismatch);
        }
        if self.bidegree != other.bidegree {
            return Err(Error::DimensionMismatch("adding elements of different bidegrees".into()));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(RingElement { coeffs, ..self.clone() })
    }

    /// Evaluates at a point given by one coordinate block per factor.
    pub fn evaluate(&self, point: &[Vec<Scalar>]) -> Result<Scalar> {
        let coords: Vec<Scalar> = point.concat();
        if coords.len() != self.model.num_vars() {
            return Err(Error::DimensionMismatch("point has wrong number of coordinates".into()));
        }
        let mut acc = self.model.field.zero();
        for (m, c) in self.terms() {
            let mut v = c;
            for (x, &e) in coords.iter().zip(&m) {
                for _ in 0..e {
                    v = &v * x;
                }
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }
}

fn add_exponents(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Product of two homogeneous elements; bidegrees add.
pub fn multiply(f: &RingElement, g: &RingElement) -> Result<RingElement> {
    if f.model != g.model {
        return Err(Error::ModelMismatch);
    }
    let model = f.model;
    let target = f.bidegree + g.bidegree;
    let mut out = RingElement::zero(model, target);
    if out.coeffs.is_empty() {
        return Ok(out);
    }
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            let idx = model
                .piece_index(target, &add_exponents(&mf, &mg))
                .expect("product monomial lies in the sum piece");
            out.coeffs[idx] = &out.coeffs[idx] + &(&cf * &cg);
        }
    }
    Ok(out)
}

/// Matrix of `piece a ⊗ piece b → piece (a+b)`; column `u·dim(b) + v` is
/// the product of the `u`-th basis element of `a` with the `v`-th of `b`.
pub fn multiplication_map(model: &BigradedModel, a: Bidegree, b: Bidegree) -> Matrix {
    let target = a + b;
    let basis_a = model.basis(a);
    let basis_b = model.basis(b);
    let rows = model.piece_dim(target);
    let mut m = Matrix::zeros(rows, basis_a.len() * basis_b.len(), model.field);
    for (u, ma) in basis_a.iter().enumerate() {
        for (v, mb) in basis_b.iter().enumerate() {
            if let Some(r) = model.piece_index(target, &add_exponents(ma, mb)) {
                m.set(r, u * basis_b.len() + v, model.field.one());
            }
        }
    }
    m
}

/// Which generating direction a stepwise multiplication map uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// `S_{(i−1,j)} ⊗ S_{(1,0)} → S_{(i,j)}`
    Alpha,
    /// `S_{(i,j−1)} ⊗ S_{(0,1)} → S_{(i,j)}`
    Beta,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFailure {
    pub target: Bidegree,
    pub step: Step,
    pub rank: usize,
    pub target_dim: usize,
}

/// Outcome of checking surjectivity of the stepwise multiplication maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublyStandardReport {
    pub window: Bidegree,
    pub maps_checked: usize,
    pub failures: Vec<StepFailure>,
}

impl DoublyStandardReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that both stepwise multiplication maps are surjective onto every
/// piece `(i,j) ≤ window`.
pub fn check_doubly_standard(model: &BigradedModel, window: Bidegree) -> DoublyStandardReport {
    let mut failures = Vec::new();
    let mut maps_checked = 0;
    for target in window.box_below() {
        let steps = [(Step::Alpha, Bidegree::new(1, 0)), (Step::Beta, Bidegree::new(0, 1))];
        for (step, unit) in steps {
            let source = target - unit;
            if !source.is_nonnegative() {
                continue;
            }
            maps_checked += 1;
            let rank = multiplication_map(model, source, unit).rank();
            let target_dim = model.piece_dim(target);
            if rank != target_dim {
                failures.push(StepFailure { target, step, rank, target_dim });
            }
        }
    }
    DoublyStandardReport { window, maps_checked, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn piece_dimensions() {
        assert_eq!(BigradedModel::ambient_product(1, 1, q()).piece_dim(Bidegree::new(1, 1)), 4);
        assert_eq!(BigradedModel::twisted_binary(1, q()).piece_dim(Bidegree::new(5, 1)), 7);
        assert_eq!(BigradedModel::single_projective(2, q()).piece_dim(Bidegree::new(3, 0)), 10);
        assert_eq!(BigradedModel::single_projective(2, q()).piece_dim(Bidegree::new(3, 1)), 0);
        assert_eq!(BigradedModel::twisted_binary(1, q()).piece_dim(Bidegree::new(-1, 2)), 0);
        for m in [
            BigradedModel::ambient_product(2, 1, q()),
            BigradedModel::single_projective(3, q()),
            BigradedModel::twisted_binary(2, q()),
        ] {
            assert_eq!(m.piece_dim(Bidegree::ZERO), 1);
        }
    }

    #[test]
    fn basis_order_is_descending_lex() {
        let m = BigradedModel::ambient_product(1, 1, q());
        assert_eq!(
            m.basis(Bidegree::new(1, 1)),
            vec![vec![1, 0, 1, 0], vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![0, 1, 0, 1]]
        );
        let b = BigradedModel::twisted_binary(1, q());
        assert_eq!(b.basis(Bidegree::new(1, 1)), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn piece_index_matches_basis_position() {
        let models = [
            BigradedModel::ambient_product(2, 1, q()),
            BigradedModel::single_projective(3, q()),
            BigradedModel::twisted_binary(2, q()),
        ];
        for m in models {
            for b in Bidegree::new(3, 2).box_below() {
                for (k, mono) in m.basis(b).iter().enumerate() {
                    assert_eq!(m.piece_index(b, mono), Some(k));
                }
                assert_eq!(m.basis(b).len(), m.piece_dim(b));
            }
        }
    }

    #[test]
    fn products() {
        let m = BigradedModel::ambient_product(1, 1, q());
        let a0 = RingElement::monomial(m, Bidegree::new(1, 0), &[1, 0, 0, 0]).unwrap();
        let b0 = RingElement::monomial(m, Bidegree::new(0, 1), &[0, 0, 1, 0]).unwrap();
        let p = multiply(&a0, &b0).unwrap();
        assert_eq!(p.bidegree, Bidegree::new(1, 1));
        assert_eq!(p.terms(), vec![(vec![1, 0, 1, 0], q().one())]);

        for c in [0, 1, 3] {
            let t = BigradedModel::twisted_binary(c, q());
            let one = q().one();
            let minus = q().from_i64(-1);
            let deg1 = Bidegree::new(1, 0);
            let plus = RingElement::from_terms(t, deg1, &[(vec![1, 0], one.clone()), (vec![0, 1], one.clone())]).unwrap();
            let diff = RingElement::from_terms(t, deg1, &[(vec![1, 0], one.clone()), (vec![0, 1], minus.clone())]).unwrap();
            let prod = multiply(&plus, &diff).unwrap();
            let expect = RingElement::from_terms(t, Bidegree::new(2, 0), &[(vec![2, 0], one), (vec![0, 2], minus)]).unwrap();
            assert_eq!(prod, expect);
        }

        let t = BigradedModel::twisted_binary(1, q());
        let s2 = RingElement::monomial(t, Bidegree::new(2, 0), &[2, 0]).unwrap();
        let s = RingElement::monomial(t, Bidegree::new(0, 1), &[1, 0]).unwrap();
        let p = multiply(&s2, &s).unwrap();
        assert_eq!(p.bidegree, Bidegree::new(2, 1));
        assert_eq!(p.terms(), vec![(vec![3, 0], q().one())]);

        let other = BigradedModel::twisted_binary(2, q());
        let x = RingElement::monomial(other, Bidegree::new(1, 0), &[1, 0]).unwrap();
        assert_eq!(multiply(&s, &x), Err(Error::ModelMismatch));
    }

    #[test]
    fn multiplication_map_ranks() {
        let t = BigradedModel::twisted_binary(1, q());
        assert_eq!(multiplication_map(&t, Bidegree::new(2, 0), Bidegree::new(0, 1)).rank(), 4);
        let a = BigradedModel::ambient_product(1, 1, q());
        assert_eq!(multiplication_map(&a, Bidegree::new(1, 0), Bidegree::new(0, 1)).rank(), 4);
        for m in [a, t, BigradedModel::single_projective(2, q())] {
            let b = Bidegree::new(2, 0);
            assert_eq!(multiplication_map(&m, Bidegree::ZERO, b).rank(), m.piece_dim(b));
        }
    }

    #[test]
    fn doubly_standard_reports() {
        let t = BigradedModel::twisted_binary(1, q());
        assert!(check_doubly_standard(&t, Bidegree::new(4, 2)).is_ok());
        let a = BigradedModel::ambient_product(2, 1, q());
        assert!(check_doubly_standard(&a, Bidegree::new(3, 3)).is_ok());
        let r = check_doubly_standard(&a, Bidegree::ZERO);
        assert!(r.is_ok());
        assert_eq!(r.maps_checked, 0);
    }

    #[test]
    fn descriptors_round_trip() {
        for s in ["ambient-product:n1=1,n2=2", "single-projective:n=2", "twisted-binary:c=1"] {
            let k: ModelKind = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        assert!("twisted-binary:c=1,d=2".parse::<ModelKind>().is_err());
        assert!("twisted-binary".parse::<ModelKind>().is_err());
        assert!("torus:n=1".parse::<ModelKind>().is_err());
    }
}
