//! The contraction pairing between a model's ring and its divided-power dual.
//!
//! A functional on piece `(d,e)` is a coefficient vector in the dual monomial
//! basis `x^(a) y^(b)`. A monomial `α^u β^v` acts by the coefficient-free
//! exponent shift `x^(a) ↦ x^(a−u)` (zero when some exponent would go
//! negative), which is valid in every characteristic.

use crate::error::{Error, Result};
use crate::exactalg::{row_reduced_basis, Field, Matrix, Scalar};
use crate::model::{multiply, BigradedModel, Bidegree, Monomial, RingElement};

/// A vector in the dual of one graded piece, i.e. a point of `P(H⁰(d,e)*)`
/// once it is nonzero. Rescaling is never normalized away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    pub model: BigradedModel,
    pub bidegree: Bidegree,
    pub coeffs: Vec<Scalar>,
}

impl Functional {
    pub fn new(model: BigradedModel, bidegree: Bidegree, coeffs: Vec<Scalar>) -> Result<Self> {
        let e = RingElement::new(model, bidegree, coeffs)?;
        Ok(Functional { model: e.model, bidegree: e.bidegree, coeffs: e.coeffs })
    }

    pub fn zero(model: BigradedModel, bidegree: Bidegree) -> Self {
        Functional { model, bidegree, coeffs: vec![model.field.zero(); model.piece_dim(bidegree)] }
    }

    pub fn from_terms(model: BigradedModel, bidegree: Bidegree, terms: &[(Monomial, Scalar)]) -> Result<Self> {
        let e = RingElement::from_terms(model, bidegree, terms)?;
        Ok(Functional { model, bidegree, coeffs: e.coeffs })
    }

    /// `x^(m)` with coefficient one.
    pub fn monomial(model: BigradedModel, bidegree: Bidegree, exponents: &[u32]) -> Result<Self> {
        Self::from_terms(model, bidegree, &[(exponents.to_vec(), model.field.one())])
    }

    pub fn field(&self) -> Field {
        self.model.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn terms(&self) -> Vec<(Monomial, Scalar)> {
        self.model
            .basis(self.bidegree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> Functional {
        Functional { coeffs: self.coeffs.iter().map(|c| c * s).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Functional) -> Result<Functional> {
        if self.model != other.model {
            return Err(Error::ModelMismatch);
        }
        if self.bidegree != other.bidegree {
            return Err(Error::DimensionMismatch("adding functionals of different bidegrees".into()));
        }
        Ok(Functional {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    /// Errors unless this is a projective point.
    pub fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::NotAProjectivePoint);
        }
        Ok(())
    }
}

fn shift(n: &[u32], u: &[u32]) -> Option<Monomial> {
    n.iter().zip(u).map(|(a, b)| a.checked_sub(*b)).collect()
}

/// `θ ⌟ p`, a functional on piece `(d−i, e−j)`.
pub fn contract(theta: &RingElement, p: &Functional) -> Result<Functional> {
    if theta.model != p.model {
        return Err(Error::ModelMismatch);
    }
    let b = theta.bidegree;
    if !b.is_nonnegative() || !b.le(p.bidegree) {
        return Err(Error::ContractionOutOfWindow);
    }
    let target = p.bidegree - b;
    let mut out = Functional::zero(p.model, target);
    let theta_terms = theta.terms();
    for (n, pn) in p.terms() {
        for (u, tu) in &theta_terms {
            if let Some(rest) = shift(&n, u) {
                let idx = p.model.piece_index(target, &rest).expect("shifted monomial lies in the target piece");
                out.coeffs[idx] = &out.coeffs[idx] + &(tu * &pn);
            }
        }
    }
    Ok(out)
}

/// A linear subspace of a graded piece (or of its dual; both share the
/// monomial index set), stored as a reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub model: BigradedModel,
    pub bidegree: Bidegree,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn span(model: BigradedModel, bidegree: Bidegree, vectors: &[Vec<Scalar>]) -> Result<Self> {
        if vectors.iter().flatten().any(|s| s.field() != model.field) {
            return Err(Error::FieldMismatch);
        }
        let basis = row_reduced_basis(model.field, model.piece_dim(bidegree), vectors)?;
        Ok(Subspace { model, bidegree, basis })
    }

    pub fn zero(model: BigradedModel, bidegree: Bidegree) -> Self {
        Subspace { model, bidegree, basis: Vec::new() }
    }

    pub fn full(model: BigradedModel, bidegree: Bidegree) -> Self {
        let n = model.piece_dim(bidegree);
        let basis = Matrix::identity(n, model.field);
        Subspace { model, bidegree, basis: (0..n).map(|r| basis.row(r).to_vec()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.model.piece_dim(self.bidegree)
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Basis vectors as ring elements of the piece.
    pub fn elements(&self) -> Vec<RingElement> {
        self.basis
            .iter()
            .map(|v| RingElement { model: self.model, bidegree: self.bidegree, coeffs: v.clone() })
            .collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch("vector outside the ambient piece".into()));
        }
        if self.basis.is_empty() {
            return Ok(v.iter().all(Scalar::is_zero));
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Ok(Matrix::from_rows(self.model.field, rows)?.rank() == self.basis.len())
    }
}

/// Matrix of `Θ ↦ Θ ⌟ p` on piece `b`: column `u` holds the contraction of
/// the `u`-th basis monomial, written in the basis of piece `(d,e) − b`.
pub fn contraction_matrix(p: &Functional, b: Bidegree) -> Matrix {
    let target = p.bidegree - b;
    let model = p.model;
    let source = model.basis(b);
    let mut m = Matrix::zeros(model.piece_dim(target), source.len(), model.field);
    if !b.is_nonnegative() || !b.le(p.bidegree) {
        return m;
    }
    let terms = p.terms();
    for (col, u) in source.iter().enumerate() {
        for (n, pn) in &terms {
            if let Some(rest) = shift(n, u) {
                let row = model.piece_index(target, &rest).expect("shifted monomial lies in the target piece");
                let v = m.get(row, col) + pn;
                m.set(row, col, v);
            }
        }
    }
    m
}

/// `Ann(p)` in piece `b`. Outside the window of `p` every element annihilates.
pub fn annihilator_piece(p: &Functional, b: Bidegree) -> Result<Subspace> {
    if !b.is_nonnegative() {
        return Ok(Subspace::zero(p.model, b));
    }
    if !b.le(p.bidegree) {
        return Ok(Subspace::full(p.model, b));
    }
    let (_, kernel) = contraction_matrix(p, b).rank_kernel();
    Subspace::span(p.model, b, &kernel)
}

/// Dimensions of the apolar algebra `Apolar(p)_{i,j}` for `0 ≤ i ≤ d`, `0 ≤ j ≤ e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApolarProfile {
    pub window: Bidegree,
    table: Vec<usize>,
}

impl ApolarProfile {
    fn width(&self) -> usize {
        self.window.j as usize + 1
    }

    /// Entry at `b`; zero outside the window.
    pub fn get(&self, b: Bidegree) -> usize {
        if !b.is_nonnegative() || !b.le(self.window) {
            return 0;
        }
        self.table[b.i as usize * self.width() + b.j as usize]
    }

    /// Entries in lexicographic order of bidegree.
    pub fn entries(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.window.box_below().map(|b| (b, self.get(b)))
    }

    /// `dim Apolar_{i,j} = dim Apolar_{d−i,e−j}` across the window.
    pub fn is_symmetric(&self) -> bool {
        self.entries().all(|(b, v)| v == self.get(self.window - b))
    }

    /// Every in-window entry is at least one.
    pub fn nonvanishing_in_window(&self) -> bool {
        self.entries().all(|(_, v)| v >= 1)
    }
}

pub fn apolar_hilbert(p: &Functional) -> Result<ApolarProfile> {
    p.require_nonzero()?;
    let table = p.bidegree.box_below().map(|b| contraction_matrix(p, b).rank()).collect();
    Ok(ApolarProfile { window: p.bidegree, table })
}

/// Whether every element of `ideal_piece` (a subspace of piece `(d,e)`)
/// annihilates `p`; by apolarity this decides `p ∈ P(I_{d,e}^⊥)`, and
/// `p ∈ ⟨R⟩` when the ideal is the saturated ideal of `R`.
pub fn span_membership(p: &Functional, ideal_piece: &Subspace) -> Result<bool> {
    if ideal_piece.model != p.model {
        return Err(Error::ModelMismatch);
    }
    if ideal_piece.bidegree != p.bidegree {
        return Err(Error::DimensionMismatch(format!(
            "ideal piece at {} against functional at {}",
            ideal_piece.bidegree, p.bidegree
        )));
    }
    let field = p.field();
    Ok(ideal_piece.basis().iter().all(|theta| {
        theta
            .iter()
            .zip(&p.coeffs)
            .fold(field.zero(), |acc, (a, b)| &acc + &(a * b))
            .is_zero()
    }))
}

/// The degree-`target` piece of the ideal generated by `gens`.
pub fn ideal_piece(model: BigradedModel, gens: &[RingElement], target: Bidegree) -> Result<Subspace> {
    let mut vectors = Vec::new();
    for g in gens {
        if g.model != model {
            return Err(Error::ModelMismatch);
        }
        let cofactor = target - g.bidegree;
        for m in model.basis(cofactor) {
            let h = RingElement::monomial(model, cofactor, &m)?;
            vectors.push(multiply(g, &h)?.coeffs);
        }
    }
    Subspace::span(model, target, &vectors)
}

/// Checks a point given as one coordinate block per factor of the model.
pub fn validate_point(model: &BigradedModel, point: &[Vec<Scalar>]) -> Result<()> {
    let blocks = model.blocks();
    if point.len() != blocks.len() || point.iter().zip(&blocks).any(|(p, &n)| p.len() != n) {
        return Err(Error::DimensionMismatch(format!("point blocks must have sizes {blocks:?}")));
    }
    if point.iter().flatten().any(|s| s.field() != model.field) {
        return Err(Error::FieldMismatch);
    }
    if point.iter().any(|block| block.iter().all(Scalar::is_zero)) {
        return Err(Error::ZeroInput("point has an all-zero coordinate block".into()));
    }
    Ok(())
}

/// The evaluation vector `ν_b(pt)`: its coefficient at `x^(m)` is `m(pt)`.
pub fn veronese_functional(model: &BigradedModel, point: &[Vec<Scalar>], b: Bidegree) -> Result<Functional> {
    validate_point(model, point)?;
    let coords: Vec<Scalar> = point.concat();
    let coeffs = model
        .basis(b)
        .iter()
        .map(|m| {
            let mut v = model.field.one();
            for (x, &e) in coords.iter().zip(m) {
                for _ in 0..e {
                    v = &v * x;
                }
            }
            v
        })
        .collect();
    Functional::new(*model, b, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn sum(a: &Functional, b: &Functional) -> Functional {
        a.add(b).unwrap()
    }

    #[test]
    fn shift_rule() {
        let m = BigradedModel::single_projective(1, q());
        let a0 = RingElement::monomial(m, Bidegree::new(1, 0), &[1, 0]).unwrap();
        let a1 = RingElement::monomial(m, Bidegree::new(1, 0), &[0, 1]).unwrap();
        let p = Functional::monomial(m, Bidegree::new(3, 0), &[2, 1]).unwrap();
        let expect = Functional::monomial(m, Bidegree::new(2, 0), &[1, 1]).unwrap();
        assert_eq!(contract(&a0, &p).unwrap(), expect);

        let x0sq = Functional::monomial(m, Bidegree::new(2, 0), &[2, 0]).unwrap();
        assert!(contract(&a1, &x0sq).unwrap().is_zero());
    }

    #[test]
    fn bilinear_contraction_to_scalar() {
        let m = BigradedModel::ambient_product(1, 1, q());
        let b11 = Bidegree::new(1, 1);
        let p = sum(
            &Functional::monomial(m, b11, &[1, 0, 1, 0]).unwrap(),
            &Functional::monomial(m, b11, &[0, 1, 0, 1]).unwrap(),
        );
        let theta = RingElement::monomial(m, b11, &[1, 0, 1, 0]).unwrap();
        let r = contract(&theta, &p).unwrap();
        assert_eq!(r.bidegree, Bidegree::ZERO);
        assert_eq!(r.coeffs, vec![q().one()]);
    }

    #[test]
    fn contraction_outside_window_is_an_error() {
        let m = BigradedModel::twisted_binary(1, q());
        let p = Functional::monomial(m, Bidegree::new(5, 1), &[6, 0]).unwrap();
        let theta = RingElement::monomial(m, Bidegree::new(6, 0), &[6, 0]).unwrap();
        assert_eq!(contract(&theta, &p), Err(Error::ContractionOutOfWindow));
    }

    #[test]
    fn annihilator_pieces() {
        let t = BigradedModel::twisted_binary(1, q());
        let p = Functional::monomial(t, Bidegree::new(5, 1), &[6, 0]).unwrap();
        let ann = annihilator_piece(&p, Bidegree::new(1, 0)).unwrap();
        assert_eq!(ann.basis(), &[vec![q().zero(), q().one()]]);

        let s = BigradedModel::single_projective(1, q());
        let cubic = Functional::monomial(s, Bidegree::new(3, 0), &[2, 1]).unwrap();
        let ann2 = annihilator_piece(&cubic, Bidegree::new(2, 0)).unwrap();
        assert_eq!(ann2.basis(), &[vec![q().zero(), q().zero(), q().one()]]);
        assert_eq!(ann2.ambient_dim() - ann2.dim(), 2);

        let a = BigradedModel::ambient_product(1, 1, q());
        let seg = Functional::monomial(a, Bidegree::new(1, 1), &[1, 0, 1, 0]).unwrap();
        let ann3 = annihilator_piece(&seg, Bidegree::new(1, 0)).unwrap();
        assert_eq!(ann3.basis(), &[vec![q().zero(), q().one()]]);

        // out of window: full; negative: empty
        assert_eq!(annihilator_piece(&seg, Bidegree::new(2, 0)).unwrap().dim(), 3);
        assert_eq!(annihilator_piece(&seg, Bidegree::new(-1, 0)).unwrap().dim(), 0);
    }

    #[test]
    fn profiles() {
        let s = BigradedModel::single_projective(1, q());
        let b3 = Bidegree::new(3, 0);
        let p = Functional::monomial(s, b3, &[3, 0]).unwrap();
        let prof = apolar_hilbert(&p).unwrap();
        assert_eq!(prof.entries().map(|(_, v)| v).collect::<Vec<_>>(), vec![1, 1, 1, 1]);

        let p = Functional::monomial(s, b3, &[2, 1]).unwrap();
        let prof = apolar_hilbert(&p).unwrap();
        assert_eq!(prof.entries().map(|(_, v)| v).collect::<Vec<_>>(), vec![1, 2, 2, 1]);

        let a = BigradedModel::ambient_product(1, 1, q());
        let b11 = Bidegree::new(1, 1);
        let p = sum(
            &Functional::monomial(a, b11, &[1, 0, 1, 0]).unwrap(),
            &Functional::monomial(a, b11, &[0, 1, 0, 1]).unwrap(),
        );
        let prof = apolar_hilbert(&p).unwrap();
        assert_eq!(prof.get(Bidegree::new(0, 0)), 1);
        assert_eq!(prof.get(Bidegree::new(1, 0)), 2);
        assert_eq!(prof.get(Bidegree::new(0, 1)), 2);
        assert_eq!(prof.get(Bidegree::new(1, 1)), 1);
        assert!(prof.is_symmetric() && prof.nonvanishing_in_window());

        assert_eq!(apolar_hilbert(&Functional::zero(a, b11)), Err(Error::NotAProjectivePoint));
    }

    #[test]
    fn span_criterion() {
        let t = BigradedModel::twisted_binary(1, q());
        let top = Bidegree::new(5, 1);
        let p = sum(
            &Functional::monomial(t, top, &[6, 0]).unwrap(),
            &Functional::monomial(t, top, &[0, 6]).unwrap(),
        );
        let g = RingElement::monomial(t, Bidegree::new(2, 0), &[1, 1]).unwrap();
        let ideal = ideal_piece(t, &[g], top).unwrap();
        assert_eq!(ideal.dim(), 5);
        assert!(span_membership(&p, &ideal).unwrap());

        let p2 = Functional::monomial(t, top, &[5, 1]).unwrap();
        assert!(!span_membership(&p2, &ideal).unwrap());
        assert!(span_membership(&p2, &Subspace::zero(t, top)).unwrap());

        let wrong = Subspace::zero(t, Bidegree::new(4, 1));
        assert!(span_membership(&p2, &wrong).is_err());
    }

    #[test]
    fn evaluation_vectors() {
        let a = BigradedModel::ambient_product(1, 1, q());
        let pt = vec![vec![q().one(), q().zero()], vec![q().one(), q().zero()]];
        let b = Bidegree::new(2, 3);
        assert_eq!(
            veronese_functional(&a, &pt, b).unwrap(),
            Functional::monomial(a, b, &[2, 0, 3, 0]).unwrap()
        );

        let s = BigradedModel::single_projective(1, q());
        let nu = veronese_functional(&s, &[vec![q().one(), q().one()]], Bidegree::new(2, 0)).unwrap();
        assert_eq!(nu.coeffs, vec![q().one(); 3]);

        // (α0 + α1) ⌟ ν3([1:2]) = 3 · ν2([1:2])
        let pt = vec![vec![q().one(), q().from_i64(2)]];
        let nu3 = veronese_functional(&s, &pt, Bidegree::new(3, 0)).unwrap();
        let theta = RingElement::new(s, Bidegree::new(1, 0), vec![q().one(), q().one()]).unwrap();
        let lhs = contract(&theta, &nu3).unwrap();
        let rhs = veronese_functional(&s, &pt, Bidegree::new(2, 0)).unwrap().scale(&q().from_i64(3));
        assert_eq!(lhs, rhs);

        assert!(veronese_functional(&s, &[vec![q().zero(), q().zero()]], Bidegree::new(1, 0)).is_err());
    }
}
