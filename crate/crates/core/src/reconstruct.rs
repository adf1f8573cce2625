//! Constructive cactus membership on the twisted binary model.
//!
//! Given `p` of bidegree `(d,1)` on `P¹` with `L₁ = O(1)`, `L₂ = O(c)` whose
//! designated catalecticant `(k,0)|(d−k,1)` has rank at most `r`, recover a
//! divisor `R = {g = 0}` of degree at most `r` with `p ∈ ⟨R⟩`:
//!
//! 1. walk the `(∗,0)` line of the apolar Hilbert function from `k` and take
//!    the first plateau `k₀` (`h(k₀) = h(k₀+1) = r₀`);
//! 2. collect the annihilator pieces `Ann(p)_{(i,0)}`, `i ≤ k₀`;
//! 3. saturate. In `𝕜[s,t]` the saturation of that ideal is principal,
//!    generated by the gcd of the generators;
//! 4. check `g ⌟ p = 0`, which places `p` in the span of `R`.

use std::fmt;

use crate::apolarity::{annihilator_piece, contract, contraction_matrix, Functional};
use crate::catalecticant::{cat_rank, SplittingWindow};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Scalar};
use crate::model::{BigradedModel, Bidegree, ModelKind, RingElement};

/// `(r, c, d, k)` with `r ≤ k ≤ d−r`, `k ≥ 1` and `d − r ≥ c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TheoremParams {
    pub r: usize,
    pub c: usize,
    pub d: usize,
    pub k: usize,
}

impl TheoremParams {
    pub fn new(r: usize, c: usize, d: usize, k: usize) -> Result<Self> {
        let params = TheoremParams { r, c, d, k };
        params.validate()?;
        Ok(params)
    }

    /// Uses the balanced `k = ⌊d/2⌋` clamped into `[r, d−r]`.
    pub fn with_default_k(r: usize, c: usize, d: usize) -> Result<Self> {
        Self::new(r, c, d, crate::catalecticant::default_k(d, r))
    }

    pub fn validate(&self) -> Result<()> {
        let TheoremParams { r, c, d, k } = *self;
        if d < r || !(r <= k && k <= d - r) {
            return Err(Error::HypothesesViolated(format!("need r <= k <= d-r, got r={r} k={k} d={d}")));
        }
        if k == 0 {
            return Err(Error::HypothesesViolated("k must be positive".into()));
        }
        if d - r < c {
            return Err(Error::HypothesesViolated(format!("need d-r >= c, got d-r={} c={c}", d - r)));
        }
        Ok(())
    }

    pub fn model(&self, field: Field) -> BigradedModel {
        BigradedModel::twisted_binary(self.c as u32, field)
    }

    /// Bidegree `(d, 1)` of the functionals the theorem speaks about.
    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.d as i64, 1)
    }

    /// `A = L₁^k`, `B = L₁^{d−k} ⊗ L₂`.
    pub fn designated_window(&self) -> SplittingWindow {
        SplittingWindow::new(Bidegree::new(self.k as i64, 0), Bidegree::new((self.d - self.k) as i64, 1))
            .expect("validated parameters give a proper window")
    }

    fn check_functional(&self, p: &Functional) -> Result<()> {
        self.validate()?;
        if p.model.kind != (ModelKind::TwistedBinary { c: self.c as u32 }) {
            return Err(Error::HypothesesViolated(format!(
                "expected twisted-binary:c={}, got {}",
                self.c, p.model.kind
            )));
        }
        if p.bidegree != self.bidegree() {
            return Err(Error::HypothesesViolated(format!(
                "functional has bidegree {}, expected {}",
                p.bidegree,
                self.bidegree()
            )));
        }
        p.require_nonzero()
    }
}

impl fmt::Display for TheoremParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} c={} d={} k={}", self.r, self.c, self.d, self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plateau {
    pub k0: usize,
    pub r0: usize,
    /// `dim Apolar(p)_{(i,0)}` for `i = 0..=d`.
    pub line: Vec<usize>,
}

/// The first plateau of the `(∗,0)` apolar Hilbert function at or after `k`.
pub fn find_plateau(p: &Functional, params: &TheoremParams) -> Result<Plateau> {
    params.check_functional(p)?;
    let rank = cat_rank(p, &params.designated_window())?;
    if rank > params.r {
        return Err(Error::NotInRankLocus { rank, r: params.r });
    }
    let TheoremParams { k, d, .. } = *params;
    let line: Vec<usize> = (0..=d)
        .map(|i| contraction_matrix(p, Bidegree::new(i as i64, 0)).rank())
        .collect();
    if line[k] != rank {
        return Err(Error::HypothesesViolated(format!(
            "apolar dimension {} at ({k},0) differs from catalecticant rank {rank}",
            line[k]
        )));
    }
    if let Some(i) = (k..d).find(|&i| line[i] < line[i + 1]) {
        return Err(Error::HypothesesViolated(format!("(*,0) profile increases at {i}: {line:?}")));
    }
    let k0 = (k..d)
        .find(|&i| line[i] == line[i + 1] && line[i] >= 1)
        .ok_or_else(|| Error::HypothesesViolated(format!("no plateau in [{k}, {}]: {line:?}", d - 1)))?;
    Ok(Plateau { k0, r0: line[k0], line })
}

/// Bases of `Ann(p)_{(i,0)}` for `1 ≤ i ≤ k0`, concatenated.
pub fn truncated_ideal(p: &Functional, k0: usize) -> Result<Vec<RingElement>> {
    let mut gens = Vec::new();
    for i in 1..=k0 {
        gens.extend(annihilator_piece(p, Bidegree::new(i as i64, 0))?.elements());
    }
    Ok(gens)
}

/// Univariate helpers on `t`-coefficient vectors (index = power of `t`),
/// obtained from binary forms by setting `s = 1`.
mod univariate {
    use crate::exactalg::{Field, Scalar};

    pub fn trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
        while p.last().is_some_and(Scalar::is_zero) {
            p.pop();
        }
        p
    }

    fn rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut r = a.to_vec();
        let lead_inv = b.last().expect("nonzero divisor").inv().expect("trimmed");
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let factor = r.last().expect("nonempty") * &lead_inv;
            for (i, bc) in b.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&factor * bc);
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    /// Monic gcd; both inputs nonzero and trimmed.
    pub fn gcd(field: Field, a: Vec<Scalar>, b: Vec<Scalar>) -> Vec<Scalar> {
        let (mut x, mut y) = (a, b);
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        let inv = x.last().map(|l| l.inv().expect("trimmed")).unwrap_or_else(|| field.one());
        x.iter().map(|c| c * &inv).collect()
    }
}

/// Generator of the saturation of the ideal spanned by binary forms: their
/// gcd, scaled so its first nonzero coefficient in the monomial basis is one.
pub fn saturate_binary(gens: &[RingElement]) -> Result<RingElement> {
    let nonzero: Vec<&RingElement> = gens.iter().filter(|g| !g.is_zero()).collect();
    let first = nonzero.first().ok_or_else(|| Error::ZeroInput("no nonzero generator".into()))?;
    let model = first.model;
    if model.num_vars() != 2 {
        return Err(Error::ModelMismatch);
    }
    if nonzero.iter().any(|g| g.model != model) {
        return Err(Error::ModelMismatch);
    }
    let field = model.field;
    // a form of degree n with coefficient vector c factors as s^(n - deg u) * U(s,t), u(t) = Σ c_a t^a
    let mut s_power = usize::MAX;
    let mut common: Option<Vec<Scalar>> = None;
    for g in nonzero {
        let n = g.coeffs.len() - 1;
        let u = univariate::trim(g.coeffs.clone());
        s_power = s_power.min(n + 1 - u.len());
        common = Some(match common {
            None => normalize_monic(u),
            Some(acc) => univariate::gcd(field, acc, u),
        });
    }
    let u = common.expect("at least one generator");
    let degree = s_power + u.len() - 1;
    let mut coeffs = u;
    coeffs.resize(degree + 1, field.zero());
    let lead = coeffs.iter().find(|c| !c.is_zero()).expect("nonzero").inv().expect("nonzero");
    let coeffs = coeffs.iter().map(|c| c * &lead).collect();
    let target = Bidegree::new(degree as i64, 0);
    let model = match model.kind {
        ModelKind::TwistedBinary { .. } | ModelKind::SingleProjective { .. } => model,
        ModelKind::AmbientProduct { .. } => return Err(Error::ModelMismatch),
    };
    RingElement::new(model, target, coeffs)
}

fn normalize_monic(u: Vec<Scalar>) -> Vec<Scalar> {
    let inv = u.last().expect("trimmed nonzero").inv().expect("nonzero");
    u.iter().map(|c| c * &inv).collect()
}

/// Degree of a binary form stored as a coefficient vector.
fn binary_degree(g: &RingElement) -> usize {
    g.coeffs.len().saturating_sub(1)
}

/// A constructive proof that `p` lies in the span of a degree-`r0` divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub field: Field,
    pub params: TheoremParams,
    /// The divisor `R = {g = 0}`, a binary form of degree `r0`.
    pub g: RingElement,
    pub k0: usize,
    pub r0: usize,
    pub span_ok: bool,
}

impl DecompositionCertificate {
    pub fn degree(&self) -> usize {
        binary_degree(&self.g)
    }
}

/// Recovers a witness divisor for `p`, or reports that `p` is outside the rank locus.
pub fn decompose(p: &Functional, params: &TheoremParams) -> Result<DecompositionCertificate> {
    let plateau = find_plateau(p, params)?;
    let gens = truncated_ideal(p, plateau.k0)?;
    let g = saturate_binary(&gens).map_err(|e| Error::HypothesesViolated(format!("saturation failed: {e}")))?;
    let rank = plateau.line[params.k];
    if binary_degree(&g) != plateau.r0 {
        return Err(Error::HypothesesViolated(format!(
            "saturation has degree {} but the plateau value is {}",
            binary_degree(&g),
            plateau.r0
        )));
    }
    if plateau.k0 != params.k || plateau.r0 != rank {
        return Err(Error::HypothesesViolated(format!(
            "plateau (k0={}, r0={}) should sit at (k={}, rank={rank})",
            plateau.k0, plateau.r0, params.k
        )));
    }
    let span_ok = contract(&g, p)?.is_zero();
    if !span_ok {
        return Err(Error::VerificationFailed("g does not annihilate p".into()));
    }
    Ok(DecompositionCertificate { field: p.field(), params: *params, g, k0: plateau.k0, r0: plateau.r0, span_ok })
}

/// Checks `g ≠ 0`, `deg g ≤ r` and `g ⌟ p = 0` without consulting how the
/// certificate was produced.
pub fn verify_certificate(p: &Functional, cert: &DecompositionCertificate, params: &TheoremParams) -> bool {
    let g = &cert.g;
    if g.is_zero() || g.model != p.model || binary_degree(g) > params.r {
        return false;
    }
    matches!(contract(g, p), Ok(rest) if rest.is_zero())
}
