//! Brute-force ground truth at desk scale.
//!
//! Nothing here goes through the plateau/saturation code. Binary cactus
//! membership is decided by Hankel kernels written directly from coefficient
//! indices, and Hilbert functions of point sets by ranks of evaluation vectors.

use std::fmt;
use std::time::{Duration, Instant};

use crate::apolarity::{validate_point, veronese_functional, Functional, Subspace};
use crate::catalecticant::rank_locus_member;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Scalar};
use crate::model::{BigradedModel, Bidegree, ModelKind, RingElement};
use crate::reconstruct::{decompose, verify_certificate, TheoremParams};

/// A point of a model: one coordinate vector per variable block.
pub type Point = Vec<Vec<Scalar>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessKind {
    ReducedPoints(Vec<Point>),
    /// The divisor `{g = 0}` on `P¹`.
    BinaryDivisor(RingElement),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeWitness {
    pub kind: WitnessKind,
    pub degree: usize,
}

fn binary_coefficients(p: &Functional) -> Result<&[Scalar]> {
    match p.model.kind {
        ModelKind::TwistedBinary { .. } | ModelKind::SingleProjective { n: 1 } => Ok(&p.coeffs),
        _ => Err(Error::ModelMismatch),
    }
}

/// Smallest-degree `g` of degree at most `r` with `g ⌟ p = 0`, if any.
///
/// With `D = deg p` and `p = Σ p_a x₀^(D−a) x₁^(a)`, contraction by a form of
/// degree `e` is the Hankel matrix `H[m][u] = p_{m+u}`; its kernel vectors are
/// the coefficient vectors of annihilating forms in the basis `α₀^(e−u) α₁^u`.
pub fn cactus_member_binary(p: &Functional, r: usize) -> Result<Option<SchemeWitness>> {
    let coeffs = binary_coefficients(p)?;
    let field = p.field();
    let top = coeffs.len() - 1;
    for e in 0..=r {
        let g = if e > top {
            let mut v = vec![field.zero(); e + 1];
            v[0] = field.one();
            v
        } else {
            let rows = top - e + 1;
            let entries = (0..rows).flat_map(|m| (0..=e).map(move |u| coeffs[m + u].clone())).collect();
            let (_, kernel) = Matrix::new(rows, e + 1, field, entries)?.rank_kernel();
            match kernel.into_iter().next() {
                Some(v) => normalized(v),
                None => continue,
            }
        };
        let g = RingElement::new(p.model, Bidegree::new(e as i64, 0), g)?;
        return Ok(Some(SchemeWitness { kind: WitnessKind::BinaryDivisor(g), degree: e }));
    }
    Ok(None)
}

fn normalized(v: Vec<Scalar>) -> Vec<Scalar> {
    match v.iter().find(|c| !c.is_zero()).and_then(Scalar::inv) {
        Some(inv) => v.iter().map(|c| c * &inv).collect(),
        None => v,
    }
}

/// `⟨ν_b(R)⟩` inside the dual of piece `b`.
pub fn span_of_points(model: &BigradedModel, points: &[Point], b: Bidegree) -> Result<Subspace> {
    let vectors = points
        .iter()
        .map(|pt| veronese_functional(model, pt, b).map(|f| f.coeffs))
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(*model, b, &vectors)
}

/// Each block scaled so its first nonzero coordinate is one.
pub fn normalize_point(point: &[Vec<Scalar>]) -> Point {
    point.iter().map(|block| normalized(block.clone())).collect()
}

/// Normalized projective representatives of `P^{n−1}(𝔽_q)`.
///
/// Points are grouped by the position `l` of their leading one; block `l`
/// holds `q^{n−1−l}` points, ordered lexicographically in the trailing
/// coordinates.
#[derive(Debug, Clone, Copy)]
pub struct ProjectivePoints {
    field: Field,
    q: u64,
    n: usize,
}

impl ProjectivePoints {
    pub fn new(field: Field, n: usize) -> Result<Self> {
        let q = field
            .order()
            .ok_or_else(|| Error::InvalidField("enumeration needs a finite field".into()))?;
        if n == 0 {
            return Err(Error::DimensionMismatch("projective space of an empty vector space".into()));
        }
        Ok(ProjectivePoints { field, q, n })
    }

    /// `(q^n − 1)/(q − 1)`, or `None` on overflow.
    pub fn count(&self) -> Option<u64> {
        let mut total: u64 = 0;
        let mut power: u64 = 1;
        for _ in 0..self.n {
            total = total.checked_add(power)?;
            power = power.checked_mul(self.q)?;
        }
        Some(total)
    }

    pub fn nth(&self, mut idx: u64) -> Option<Vec<Scalar>> {
        for lead in 0..self.n {
            let block = self.q.checked_pow((self.n - 1 - lead) as u32)?;
            if idx >= block {
                idx -= block;
                continue;
            }
            let mut v = vec![self.field.zero(); self.n];
            v[lead] = self.field.one();
            for pos in (lead + 1..self.n).rev() {
                v[pos] = self.field.from_i64((idx % self.q) as i64);
                idx /= self.q;
            }
            return Some(v);
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        (0..self.count().unwrap_or(0)).map(|i| self.nth(i).expect("index below count"))
    }
}

/// Outcome of the three membership tests at one functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Verdicts {
    pub rank_locus: bool,
    pub decomposed: bool,
    pub oracle: bool,
}

impl Verdicts {
    pub fn agree(&self) -> bool {
        self.rank_locus == self.decomposed && self.decomposed == self.oracle
    }
}

/// Runs the rank test, the constructive decomposition (with its certificate
/// re-checked) and the Hankel oracle on one functional.
pub fn verdicts(p: &Functional, params: &TheoremParams) -> Result<Verdicts> {
    let rank_locus = rank_locus_member(p, params.r, &params.designated_window())?;
    let decomposed = match decompose(p, params) {
        Ok(cert) => verify_certificate(p, &cert, params),
        Err(_) => false,
    };
    let oracle = cactus_member_binary(p, params.r)?.is_some();
    Ok(Verdicts { rank_locus, decomposed, oracle })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub index: u64,
    pub coeffs: Vec<Scalar>,
    pub verdicts: Verdicts,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub params: TheoremParams,
    pub field: Field,
    pub total: u64,
    pub all_true: u64,
    pub all_false: u64,
    pub disagreements: u64,
    pub first_disagreement: Option<Disagreement>,
    /// Enumeration indices with designated rank at most `r`, ascending.
    pub locus_indices: Vec<u64>,
    pub runtime: Duration,
}

impl EquivalenceReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements == 0
    }

    /// Number of functionals in the rank locus.
    pub fn locus(&self) -> u64 {
        self.locus_indices.len() as u64
    }

    /// The report without the runtime line, which is the only nondeterministic field.
    pub fn counts(&self) -> String {
        let mut s = format!(
            "field {}\nparams {}\npoints {}\nrank_locus {}\nall_true {}\nall_false {}\ndisagreements {}\n",
            self.field,
            self.params,
            self.total,
            self.locus(),
            self.all_true,
            self.all_false,
            self.disagreements
        );
        match &self.first_disagreement {
            None => s.push_str("first_disagreement none\n"),
            Some(d) => {
                let coeffs: Vec<String> = d.coeffs.iter().map(Scalar::to_string).collect();
                s.push_str(&format!(
                    "first_disagreement {} [{}] rank_locus={} decomposed={} oracle={}\n",
                    d.index,
                    coeffs.join(" "),
                    d.verdicts.rank_locus,
                    d.verdicts.decomposed,
                    d.verdicts.oracle
                ));
            }
        }
        s
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}runtime_ms {}", self.counts(), self.runtime.as_millis())
    }
}

#[derive(Default)]
struct Tally {
    all_true: u64,
    all_false: u64,
    disagreements: u64,
    first: Option<Disagreement>,
    locus: Vec<u64>,
}

fn sweep_range(
    points: &ProjectivePoints,
    model: BigradedModel,
    params: &TheoremParams,
    range: std::ops::Range<u64>,
) -> Result<Tally> {
    let mut tally = Tally::default();
    for idx in range {
        let coeffs = points.nth(idx).expect("index below count");
        let p = Functional::new(model, params.bidegree(), coeffs)?;
        let v = verdicts(&p, params)?;
        if v.rank_locus {
            tally.locus.push(idx);
        }
        if !v.agree() {
            tally.disagreements += 1;
            if tally.first.is_none() {
                tally.first = Some(Disagreement { index: idx, coeffs: p.coeffs, verdicts: v });
            }
        } else if v.rank_locus {
            tally.all_true += 1;
        } else {
            tally.all_false += 1;
        }
    }
    Ok(tally)
}

/// Checks rank locus ⇔ decomposition ⇔ cactus membership at every point of
/// `P(piece (d,1)*)` over `field`, splitting the index range over `jobs` threads.
pub fn exhaustive_equivalence(params: &TheoremParams, field: Field, budget: u64, jobs: usize) -> Result<EquivalenceReport> {
    params.validate()?;
    let model = params.model(field);
    let dim = model.piece_dim(params.bidegree());
    let points = ProjectivePoints::new(field, dim)?;
    let total = points.count().unwrap_or(u64::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded { required: total, budget });
    }
    let start = Instant::now();
    let jobs = jobs.max(1) as u64;
    let chunk = total.div_ceil(jobs).max(1);
    let tallies: Vec<Result<Tally>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let range = (w * chunk).min(total)..((w + 1) * chunk).min(total);
                let points = &points;
                scope.spawn(move || sweep_range(points, model, params, range))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let mut report = EquivalenceReport {
        params: *params,
        field,
        total,
        all_true: 0,
        all_false: 0,
        disagreements: 0,
        first_disagreement: None,
        locus_indices: Vec::new(),
        runtime: Duration::ZERO,
    };
    for t in tallies {
        let t = t?;
        report.all_true += t.all_true;
        report.all_false += t.all_false;
        report.disagreements += t.disagreements;
        report.locus_indices.extend(t.locus);
        if report.first_disagreement.is_none() {
            report.first_disagreement = t.first;
        }
    }
    report.runtime = start.elapsed();
    Ok(report)
}

/// `dim (S/J_R)_{(i,j)}` for `(i,j) ≤ window`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    pub window: Bidegree,
    table: Vec<usize>,
}

impl HilbertTable {
    pub fn get(&self, b: Bidegree) -> usize {
        if !b.is_nonnegative() || !b.le(self.window) {
            return 0;
        }
        self.table[b.i as usize * (self.window.j as usize + 1) + b.j as usize]
    }

    pub fn entries(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.window.box_below().map(|b| (b, self.get(b)))
    }
}

impl fmt::Display for HilbertTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..=self.window.i {
            let row: Vec<String> = (0..=self.window.j).map(|j| self.get(Bidegree::new(i, j)).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertViolation {
    ExceedsDegree { at: Bidegree, value: usize },
    NotStabilized { at: Bidegree, value: usize },
    NotMonotone { at: Bidegree, next: Bidegree },
    Persistence { from: Bidegree, at: Bidegree },
}

impl fmt::Display for HilbertViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HilbertViolation::ExceedsDegree { at, value } => write!(f, "h{at} = {value} exceeds the degree"),
            HilbertViolation::NotStabilized { at, value } => write!(f, "h{at} = {value} below the degree"),
            HilbertViolation::NotMonotone { at, next } => write!(f, "h{at} > h{next}"),
            HilbertViolation::Persistence { from, at } => write!(f, "plateau at {from} broken at {at}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertReport {
    pub table: HilbertTable,
    pub degree: usize,
    pub violations: Vec<HilbertViolation>,
    /// Empty point set: the table follows the unit-ideal convention and no property is checked.
    pub degenerate: bool,
}

impl HilbertReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn distinct_points(model: &BigradedModel, points: &[Point]) -> Result<Vec<Point>> {
    let mut seen: Vec<Point> = Vec::new();
    for pt in points {
        validate_point(model, pt)?;
        let n = normalize_point(pt);
        if !seen.contains(&n) {
            seen.push(n);
        }
    }
    Ok(seen)
}

/// Hilbert function of a reduced point set from span dimensions, with the
/// bound by the degree, stabilization once `i + j ≥ deg − 1`, monotonicity in
/// both directions, and persistence along `i` checked over the window.
pub fn hilbert_properties_check(model: &BigradedModel, points: &[Point], window: Bidegree) -> Result<HilbertReport> {
    if !window.is_nonnegative() {
        return Err(Error::InvalidWindow(format!("window {window} has a negative component")));
    }
    let pts = distinct_points(model, points)?;
    let degree = pts.len();
    let values: Vec<usize> = window
        .box_below()
        .map(|b| {
            if pts.is_empty() {
                Ok(usize::from(b == Bidegree::ZERO))
            } else {
                span_of_points(model, &pts, b).map(|s| s.dim())
            }
        })
        .collect::<Result<_>>()?;
    let table = HilbertTable { window, table: values };
    if pts.is_empty() {
        return Ok(HilbertReport { table, degree, violations: Vec::new(), degenerate: true });
    }
    let rows = match model.kind {
        ModelKind::SingleProjective { .. } => 0,
        _ => window.j,
    };
    let h = |i: i64, j: i64| table.get(Bidegree::new(i, j));
    let mut violations = Vec::new();
    for i in 0..=window.i {
        for j in 0..=rows {
            let at = Bidegree::new(i, j);
            let value = h(i, j);
            if value > degree {
                violations.push(HilbertViolation::ExceedsDegree { at, value });
            }
            if i + j + 1 >= degree as i64 && value != degree {
                violations.push(HilbertViolation::NotStabilized { at, value });
            }
            if i < window.i && value > h(i + 1, j) {
                violations.push(HilbertViolation::NotMonotone { at, next: Bidegree::new(i + 1, j) });
            }
            if j < rows && value > h(i, j + 1) {
                violations.push(HilbertViolation::NotMonotone { at, next: Bidegree::new(i, j + 1) });
            }
            if i < window.i && value == h(i + 1, j) {
                if let Some(k) = (i + 2..=window.i).find(|&k| h(k, j) != value) {
                    violations.push(HilbertViolation::Persistence { from: at, at: Bidegree::new(k, j) });
                }
            }
        }
    }
    Ok(HilbertReport { table, degree, violations, degenerate: false })
}
