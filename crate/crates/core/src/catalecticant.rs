//! Catalecticant matrices `M_{A,B}(p)` of splitting windows and the rank
//! loci they cut out.
//!
//! The matrix is built from multiplication of basis monomials followed by
//! evaluation against `p`; it never goes through the contraction code, so
//! comparing its rank with the apolar Hilbert function is a genuine
//! cross-check.

use crate::error::{Error, Result};
use crate::exactalg::Matrix;
use crate::model::{multiplication_map, BigradedModel, Bidegree};
use crate::apolarity::Functional;

/// A splitting `(d,e) = a + b` with `a ∉ {(0,0), (d,e)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingWindow {
    pub a: Bidegree,
    pub b: Bidegree,
}

impl SplittingWindow {
    pub fn new(a: Bidegree, b: Bidegree) -> Result<Self> {
        let total = a + b;
        if !a.is_nonnegative() || !b.is_nonnegative() {
            return Err(Error::InvalidWindow(format!("{a}|{b} has a negative component")));
        }
        if a == Bidegree::ZERO || b == Bidegree::ZERO {
            return Err(Error::InvalidWindow(format!("{a}|{b} is degenerate for total {total}")));
        }
        Ok(SplittingWindow { a, b })
    }

    /// The window whose first factor is `a`, for a functional of bidegree `total`.
    pub fn for_total(a: Bidegree, total: Bidegree) -> Result<Self> {
        Self::new(a, total - a)
    }

    pub fn total(&self) -> Bidegree {
        self.a + self.b
    }

    pub fn transpose(&self) -> SplittingWindow {
        SplittingWindow { a: self.b, b: self.a }
    }
}

impl std::fmt::Display for SplittingWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}|{}", self.a, self.b)
    }
}

/// All valid windows for a total bidegree, lexicographic in `a`.
pub fn valid_windows(total: Bidegree) -> Vec<SplittingWindow> {
    total.box_below().filter_map(|a| SplittingWindow::for_total(a, total).ok()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalecticantMatrix {
    pub window: SplittingWindow,
    /// Rows indexed by the basis of piece `a`, columns by the basis of piece `b`.
    pub matrix: Matrix,
}

fn check_window(p: &Functional, w: &SplittingWindow) -> Result<()> {
    if w.total() != p.bidegree {
        return Err(Error::InvalidWindow(format!("{w} does not split {}", p.bidegree)));
    }
    Ok(())
}

/// Entry `(u,v)` is `(basis_u · basis_v) ⌟ p`: the product of the two basis
/// sections, read off against `p` through the multiplication map.
pub fn cat_matrix(p: &Functional, w: &SplittingWindow) -> Result<CatalecticantMatrix> {
    check_window(p, w)?;
    let model = p.model;
    let mult = multiplication_map(&model, w.a, w.b);
    let rows = model.piece_dim(w.a);
    let cols = model.piece_dim(w.b);
    let mut m = Matrix::zeros(rows, cols, model.field);
    for u in 0..rows {
        for v in 0..cols {
            let column = u * cols + v;
            let mut acc = model.field.zero();
            for (r, pr) in p.coeffs.iter().enumerate() {
                let e = mult.get(r, column);
                if !e.is_zero() && !pr.is_zero() {
                    acc = &acc + &(e * pr);
                }
            }
            m.set(u, v, acc);
        }
    }
    Ok(CatalecticantMatrix { window: *w, matrix: m })
}

pub fn cat_rank(p: &Functional, w: &SplittingWindow) -> Result<usize> {
    Ok(cat_matrix(p, w)?.matrix.rank())
}

/// `rk M(p) ≤ r`, i.e. every `(r+1)×(r+1)` minor vanishes at `p`. Minors are
/// never expanded; the rank is computed exactly instead.
pub fn rank_locus_member(p: &Functional, r: usize, w: &SplittingWindow) -> Result<bool> {
    Ok(cat_rank(p, w)? <= r)
}

/// Largest catalecticant rank over all windows and the lex-least window attaining it.
pub fn max_cat_rank(p: &Functional) -> Result<(usize, SplittingWindow)> {
    p.require_nonzero()?;
    let mut best: Option<(usize, SplittingWindow)> = None;
    for w in valid_windows(p.bidegree) {
        let r = cat_rank(p, &w)?;
        if best.is_none_or(|(b, _)| r > b) {
            best = Some((r, w));
        }
    }
    best.ok_or_else(|| Error::InvalidWindow(format!("no valid splitting window for {}", p.bidegree)))
}

/// Whether the entries of the window's matrix span the whole target piece
/// (the products `a_u · b_v` generate `S_{a+b}`).
pub fn check_unit_generation(model: &BigradedModel, w: &SplittingWindow) -> bool {
    multiplication_map(model, w.a, w.b).rank() == model.piece_dim(w.total())
}

/// Balanced splitting degree `⌊d/2⌋`, clamped into `[r, d−r]`.
pub fn default_k(d: usize, r: usize) -> usize {
    (d / 2).clamp(r, d.saturating_sub(r).max(r))
}
