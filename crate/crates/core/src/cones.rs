//! Polyhedral nef cones in `N¹(X) ≅ ℤ^ρ` and the lattice arguments that turn
//! a sufficiently ample class `D` into a splitting `D = d·D₁ + D₂`.
//!
//! A cone `σ` is given by finitely many integer covectors `φ` generating its
//! dual; `D ∈ σ` iff `φ(D) ≥ 0` for all of them. Everything is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::catalecticant::default_k;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Scalar};

/// Vertex sweeps enumerate `2^ρ` points.
pub const MAX_RHO: usize = 20;

pub type LatticeVector = Vec<i64>;
pub type RationalVector = Vec<BigRational>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_rational(v: &[i64]) -> RationalVector {
    v.iter().map(|&x| rat(x)).collect()
}

fn dot(phi: &[i64], v: &[BigRational]) -> BigRational {
    phi.iter().zip(v).map(|(&a, x)| rat(a) * x).sum()
}

fn idot(phi: &[i64], v: &[i64]) -> i128 {
    phi.iter().zip(v).map(|(&a, &x)| a as i128 * x as i128).sum()
}

/// `a·x + b·y` componentwise.
fn combine(a: &BigRational, x: &[BigRational], b: &BigRational, y: &[BigRational]) -> RationalVector {
    x.iter().zip(y).map(|(xi, yi)| a * xi + b * yi).collect()
}

fn lattice_combine(a: i64, x: &[i64], b: i64, y: &[i64]) -> LatticeVector {
    x.iter().zip(y).map(|(xi, yi)| a * xi + b * yi).collect()
}

fn rank_of(rows: &[Vec<i64>], cols: usize) -> usize {
    let f = Field::Rationals;
    let entries = rows.iter().flatten().map(|&x| f.from_i64(x)).collect();
    Matrix::new(rows.len(), cols, f, entries).map_or(0, |m| m.rank())
}

/// A closed, pointed, full-dimensional rational polyhedral cone with an
/// interior reference class `H` and a lattice basis used for cube vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSpec {
    rho: usize,
    dual_generators: Vec<Vec<i64>>,
    h: Vec<i64>,
    basis: Vec<Vec<i64>>,
}

impl ConeSpec {
    /// `basis` defaults to the standard one.
    pub fn new(
        rho: usize,
        dual_generators: Vec<Vec<i64>>,
        h: Vec<i64>,
        basis: Option<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        if rho == 0 || rho > MAX_RHO {
            return Err(Error::InvalidCone(format!("rho must lie in 1..={MAX_RHO}, got {rho}")));
        }
        if let Some(g) = dual_generators.iter().find(|g| g.len() != rho) {
            return Err(Error::InvalidCone(format!("dual generator {g:?} does not have length {rho}")));
        }
        if rank_of(&dual_generators, rho) != rho {
            return Err(Error::InvalidCone("dual generators do not span the dual space".into()));
        }
        if h.len() != rho {
            return Err(Error::InvalidCone(format!("H has length {}, expected {rho}", h.len())));
        }
        if let Some(g) = dual_generators.iter().find(|g| idot(g, &h) <= 0) {
            return Err(Error::InvalidCone(format!("H is not positive on dual generator {g:?}")));
        }
        let basis = basis.unwrap_or_else(|| standard_basis(rho));
        check_basis(&basis, rho)?;
        Ok(ConeSpec { rho, dual_generators, h, basis })
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn dual_generators(&self) -> &[Vec<i64>] {
        &self.dual_generators
    }

    pub fn h(&self) -> &[i64] {
        &self.h
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    fn check_len(&self, v: usize) -> Result<()> {
        if v != self.rho {
            return Err(Error::DimensionMismatch(format!("class of length {v} in rank {} lattice", self.rho)));
        }
        Ok(())
    }

    pub fn contains(&self, d: &[BigRational]) -> bool {
        !min_coeff(self, d).is_negative()
    }

    pub fn contains_lattice(&self, d: &[i64]) -> bool {
        self.dual_generators.iter().all(|g| idot(g, d) >= 0)
    }
}

fn standard_basis(rho: usize) -> Vec<Vec<i64>> {
    (0..rho).map(|i| (0..rho).map(|j| i64::from(i == j)).collect()).collect()
}

fn check_basis(basis: &[Vec<i64>], rho: usize) -> Result<()> {
    if basis.len() != rho || basis.iter().any(|b| b.len() != rho) {
        return Err(Error::InvalidCone(format!("basis must consist of {rho} vectors of length {rho}")));
    }
    if rank_of(basis, rho) != rho {
        return Err(Error::InvalidCone("basis vectors are linearly dependent".into()));
    }
    Ok(())
}

/// `min_{φ} φ(D)/φ(H)` over the dual generators; `≥ 0` iff `D ∈ σ`, `> 0` iff `D` is interior.
pub fn min_coeff(cone: &ConeSpec, d: &[BigRational]) -> BigRational {
    cone.dual_generators
        .iter()
        .map(|g| dot(g, d) / rat(idot(g, &cone.h) as i64))
        .min()
        .expect("cone has dual generators")
}

pub fn min_coeff_lattice(cone: &ConeSpec, d: &[i64]) -> BigRational {
    min_coeff(cone, &to_rational(d))
}

/// The `2^ρ` vertices `±b₁ ± … ± b_ρ`; bit `i` of the index selects `+b_i`.
fn vertex(basis: &[Vec<i64>], mask: u64) -> LatticeVector {
    let rho = basis.len();
    let mut v = vec![0i64; rho];
    for (i, b) in basis.iter().enumerate() {
        let sign = if mask >> i & 1 == 1 { 1 } else { -1 };
        for (vk, bk) in v.iter_mut().zip(b) {
            *vk += sign * bk;
        }
    }
    v
}

fn vertices(basis: &[Vec<i64>]) -> impl Iterator<Item = LatticeVector> + '_ {
    (0..1u64 << basis.len()).map(move |mask| vertex(basis, mask))
}

/// Nearest integer with exact halves rounded down.
fn round_half_down(x: &BigRational) -> BigInt {
    (x - BigRational::new(BigInt::one(), BigInt::from(2))).ceil().to_integer()
}

fn coordinates(basis: &[Vec<i64>], v: &[BigRational]) -> Result<RationalVector> {
    let f = Field::Rationals;
    let rho = basis.len();
    let columns: Vec<Vec<Scalar>> = basis.iter().map(|b| b.iter().map(|&x| f.from_i64(x)).collect()).collect();
    let m = Matrix::from_columns(f, rho, &columns)?;
    let rhs: Vec<Scalar> = v.iter().map(|x| Scalar::Rational(x.clone())).collect();
    let t = m.solve(&rhs)?.ok_or_else(|| Error::InvalidCone("basis does not span".into()))?;
    Ok(t.into_iter().map(|s| s.as_rational().expect("rational").clone()).collect())
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::VerificationFailed(format!("{x} does not fit in 64 bits")))
}

/// A lattice point of `(D′ − σ) ∩ (D″ + σ)` from the cube lemma, using the cone's basis.
pub fn cube_lattice_point(cone: &ConeSpec, dp: &[BigRational], dpp: &[BigRational]) -> Result<LatticeVector> {
    cube_lattice_point_in(cone, &cone.basis, dp, dpp)
}

/// Same, with the cube spanned by `basis`; the result lies in the lattice it generates.
///
/// Requires `D′ − D″ + v ∈ σ` at every vertex `v` of the cube `C = Σ [−1,1]·bᵢ`.
/// Then `½(D′+D″) + ½C` lies in the target set, and rounding the midpoint's
/// coordinates lands in that half-cube.
pub fn cube_lattice_point_in(
    cone: &ConeSpec,
    basis: &[Vec<i64>],
    dp: &[BigRational],
    dpp: &[BigRational],
) -> Result<LatticeVector> {
    cone.check_len(dp.len())?;
    cone.check_len(dpp.len())?;
    check_basis(basis, cone.rho)?;
    let one = BigRational::one();
    let gap = combine(&one, dp, &-one.clone(), dpp);
    for v in vertices(basis) {
        let shifted: RationalVector = gap.iter().zip(&v).map(|(g, &x)| g + rat(x)).collect();
        if !cone.contains(&shifted) {
            return Err(Error::CubePrecondition { vertex: v });
        }
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mid = combine(&half, dp, &half, dpp);
    let t = coordinates(basis, &mid)?;
    let rounded: Vec<i64> = t.iter().map(|x| to_i64(&round_half_down(x))).collect::<Result<_>>()?;
    let mut point = vec![0i64; cone.rho];
    for (c, b) in rounded.iter().zip(basis) {
        for (pk, bk) in point.iter_mut().zip(b) {
            *pk += c * bk;
        }
    }
    let p = to_rational(&point);
    if !cone.contains(&combine(&one, dp, &-one.clone(), &p)) || !cone.contains(&combine(&one, &p, &-one.clone(), dpp)) {
        return Err(Error::VerificationFailed(format!("rounded point {point:?} left the target set")));
    }
    Ok(point)
}

fn check_degrees(r: usize, d: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::HypothesesViolated("r must be positive".into()));
    }
    if d < 2 * r {
        return Err(Error::HypothesesViolated(format!("need d >= 2r, got d={d} r={r}")));
    }
    Ok(())
}

/// Smallest integer `λ` with `λ ≥ 2d−r−1` and, at every cube vertex `v`,
/// `λ ≥ (3d−r)/(d−r) − d(2d−r)·minD[v] / ((d−r)·minD[D₀])`.
pub fn lambda_bound(cone: &ConeSpec, d0: &[i64], r: usize, d: usize) -> Result<i64> {
    lambda_bound_in(cone, &cone.basis, d0, r, d)
}

pub fn lambda_bound_in(cone: &ConeSpec, basis: &[Vec<i64>], d0: &[i64], r: usize, d: usize) -> Result<i64> {
    cone.check_len(d0.len())?;
    check_basis(basis, cone.rho)?;
    check_degrees(r, d)?;
    let m0 = min_coeff_lattice(cone, d0);
    if !m0.is_positive() {
        return Err(Error::NotAmple);
    }
    let (d, r) = (d as i64, r as i64);
    let constant = BigRational::new(BigInt::from(3 * d - r), BigInt::from(d - r));
    let slope = BigRational::new(BigInt::from(d * (2 * d - r)), BigInt::from(d - r)) / &m0;
    let mut bound = rat(2 * d - r - 1);
    for v in vertices(basis) {
        let candidate = &constant - &slope * min_coeff_lattice(cone, &v);
        if candidate > bound {
            bound = candidate;
        }
    }
    to_i64(&bound.ceil().to_integer())
}

/// The three classes that must be nef for `Δ₁` to work:
/// `Δ₁`, `(λ−d−1)D₀ + Δ − dΔ₁` and `(2d−r−λ−1)D₀ − Δ + (2d−r)Δ₁`.
pub fn delta1_classes(d0: &[i64], delta: &[i64], delta1: &[i64], lambda: i64, d: usize, r: usize) -> [LatticeVector; 3] {
    let (d, r) = (d as i64, r as i64);
    let second: LatticeVector = (0..d0.len())
        .map(|i| (lambda - d - 1) * d0[i] + delta[i] - d * delta1[i])
        .collect();
    let third: LatticeVector = (0..d0.len())
        .map(|i| (2 * d - r - lambda - 1) * d0[i] - delta[i] + (2 * d - r) * delta1[i])
        .collect();
    [delta1.to_vec(), second, third]
}

/// An integer `Δ₁` making all of [`delta1_classes`] nef, found by the cube lemma
/// between `((λ−1)/d − 1)D₀ + Δ/d` and `((λ+1)/(2d−r) − 1)D₀ + Δ/(2d−r)`.
pub fn find_delta1(
    cone: &ConeSpec,
    d0: &[i64],
    delta: &[i64],
    lambda: i64,
    d: usize,
    r: usize,
    sublattice: Option<&[Vec<i64>]>,
) -> Result<LatticeVector> {
    cone.check_len(d0.len())?;
    cone.check_len(delta.len())?;
    check_degrees(r, d)?;
    if !cone.contains_lattice(delta) {
        return Err(Error::HypothesesViolated(format!("Delta {delta:?} is not in the cone")));
    }
    let basis = sublattice.unwrap_or(&cone.basis);
    let (di, ri) = (d as i64, r as i64);
    let (dr0, dr) = (to_rational(d0), to_rational(delta));
    let upper = combine(
        &(BigRational::new(BigInt::from(lambda - 1), BigInt::from(di)) - BigRational::one()),
        &dr0,
        &BigRational::new(BigInt::one(), BigInt::from(di)),
        &dr,
    );
    let lower = combine(
        &(BigRational::new(BigInt::from(lambda + 1), BigInt::from(2 * di - ri)) - BigRational::one()),
        &dr0,
        &BigRational::new(BigInt::one(), BigInt::from(2 * di - ri)),
        &dr,
    );
    let delta1 = cube_lattice_point_in(cone, basis, &upper, &lower)?;
    for class in delta1_classes(d0, delta, &delta1, lambda, d, r) {
        if !cone.contains_lattice(&class) {
            return Err(Error::VerificationFailed(format!("class {class:?} is not nef for Delta1 = {delta1:?}")));
        }
    }
    Ok(delta1)
}

/// `D = d·D₁ + D₂` with `D₁, D₂, (d−r)D₁ − D₂ ∈ D₀ + σ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplittingPlan {
    pub d: usize,
    pub k: usize,
    pub d1: LatticeVector,
    pub d2: LatticeVector,
    pub lambda: i64,
    pub delta1: LatticeVector,
}

impl std::fmt::Display for SplittingPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "d {}", self.d)?;
        writeln!(f, "k {}", self.k)?;
        writeln!(f, "lambda {}", self.lambda)?;
        writeln!(f, "D1 {}", show(&self.d1))?;
        writeln!(f, "D2 {}", show(&self.d2))?;
        write!(f, "Delta1 {}", show(&self.delta1))
    }
}

/// Splitting with the minimal `d = 2r`.
pub fn synthesize_splitting(cone: &ConeSpec, d0: &[i64], class: &[i64], r: usize) -> Result<SplittingPlan> {
    synthesize_splitting_with(cone, d0, class, r, 2 * r)
}

pub fn synthesize_splitting_with(cone: &ConeSpec, d0: &[i64], class: &[i64], r: usize, d: usize) -> Result<SplittingPlan> {
    cone.check_len(class.len())?;
    let lambda = lambda_bound(cone, d0, r, d)?;
    let delta = lattice_combine(1, class, -lambda, d0);
    if !cone.contains_lattice(&delta) {
        return Err(Error::NotSufficientlyAmple(format!(
            "minD[D - {lambda}*D0] = {} < 0",
            min_coeff_lattice(cone, &delta)
        )));
    }
    let delta1 = find_delta1(cone, d0, &delta, lambda, d, r, None)?;
    let d1 = lattice_combine(1, d0, 1, &delta1);
    let d2 = lattice_combine(1, class, -(d as i64), &d1);
    let plan = SplittingPlan { d, k: default_k(d, r), d1, d2, lambda, delta1 };
    if !verify_splitting(cone, d0, class, r, &plan) {
        return Err(Error::VerificationFailed(format!("synthesized plan fails its own check: {plan:?}")));
    }
    Ok(plan)
}

/// `d ≥ 2r`, `r ≤ k ≤ d−r`, `D = d·D₁ + D₂`, and `D₁ − D₀`, `D₂ − D₀`,
/// `(d−r)D₁ − D₂ − D₀` all in `σ`.
pub fn verify_splitting(cone: &ConeSpec, d0: &[i64], class: &[i64], r: usize, plan: &SplittingPlan) -> bool {
    let rho = cone.rho;
    if [d0.len(), class.len(), plan.d1.len(), plan.d2.len()].iter().any(|&l| l != rho) {
        return false;
    }
    if r == 0 || plan.d < 2 * r || plan.k < r || plan.k > plan.d - r {
        return false;
    }
    let d = plan.d as i128;
    let r = r as i128;
    let exact = (0..rho).all(|i| d * plan.d1[i] as i128 + plan.d2[i] as i128 == class[i] as i128);
    if !exact {
        return false;
    }
    let in_cone = |v: Vec<i128>| cone.dual_generators.iter().all(|g| g.iter().zip(&v).map(|(&a, x)| a as i128 * x).sum::<i128>() >= 0);
    let d1: Vec<i128> = (0..rho).map(|i| plan.d1[i] as i128 - d0[i] as i128).collect();
    let d2: Vec<i128> = (0..rho).map(|i| plan.d2[i] as i128 - d0[i] as i128).collect();
    let third: Vec<i128> = (0..rho)
        .map(|i| (d - r) * plan.d1[i] as i128 - plan.d2[i] as i128 - d0[i] as i128)
        .collect();
    in_cone(d1) && in_cone(d2) && in_cone(third)
}
