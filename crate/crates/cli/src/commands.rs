use std::fmt::Write as _;
use std::path::Path;

use cactus_core::apolarity::apolar_hilbert;
use cactus_core::catalecticant::{cat_rank, max_cat_rank, SplittingWindow};
use cactus_core::cones::{lambda_bound, synthesize_splitting_with};
use cactus_core::formats::{emit_certificate, parse_certificate, parse_cone, parse_functional, parse_points};
use cactus_core::oracle::{exhaustive_equivalence, hilbert_properties_check, HilbertReport};
use cactus_core::reconstruct::{decompose, verify_certificate, TheoremParams};
use cactus_core::{sample, BigradedModel, Bidegree, Error, Functional, ModelKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Command, FunctionalArgs, ModelArgs};

pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, stderr: String::new(), code: 0 }
    }

    fn negative(stdout: String) -> Self {
        Output { stdout, stderr: String::new(), code: 1 }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Mathematical negatives exit 1; everything else is an input problem.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotInRankLocus { .. }
            | Error::NotSufficientlyAmple(_)
            | Error::NotAmple
            | Error::CubePrecondition { .. }
            | Error::VerificationFailed(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<Output, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn model_of(args: &ModelArgs) -> BigradedModel {
    BigradedModel::new(args.model, args.field)
}

fn read_functional(path: &Path, model: BigradedModel, bidegree: Option<Bidegree>) -> Result<Functional, Failure> {
    parse_functional(&read(path)?, model, bidegree).map_err(|e| in_file(path, e))
}

fn load(args: &FunctionalArgs) -> Result<Functional, Failure> {
    read_functional(&args.functional, model_of(&args.model), args.bidegree)
}

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Rank { input, window, r } => rank(&input, window, r),
        Command::Hilbert { input } => hilbert(&input),
        Command::Decompose { model, functional, r, c, d, k } => {
            let params = theorem_params(&model, r, c, d, k)?;
            let p = read_functional(&functional, model_of(&model), Some(params.bidegree()))?;
            match decompose(&p, &params) {
                Ok(cert) => Ok(Output::ok(emit_certificate(&cert))),
                Err(e @ Error::NotInRankLocus { .. }) => Ok(Output::negative(format!("{e}\n"))),
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify { model, functional, certificate } => {
            let path = &certificate;
            let cert = parse_certificate(&read(path)?).map_err(|e| in_file(path, e))?;
            if cert.field != model.field {
                return Err(usage(format!("certificate is over {}, --field is {}", cert.field, model.field)));
            }
            let expected = ModelKind::TwistedBinary { c: cert.params.c as u32 };
            if model.model != expected {
                return Err(usage(format!("certificate needs --model {expected}")));
            }
            let p = read_functional(&functional, model_of(&model), Some(cert.params.bidegree()))?;
            if verify_certificate(&p, &cert, &cert.params) {
                Ok(Output::ok("valid\n".into()))
            } else {
                Ok(Output::negative("invalid\n".into()))
            }
        }
        Command::ConeSplit { cone, r, d, class } => cone_split(&cone, r, d, class.as_deref()),
        Command::Sweep { field, r, c, d, k, budget, jobs } => {
            let params = match k {
                Some(k) => TheoremParams::new(r, c, d, k),
                None => TheoremParams::with_default_k(r, c, d),
            }?;
            let report = exhaustive_equivalence(&params, field, budget, jobs)?;
            let out = Output {
                stdout: report.counts(),
                stderr: format!("runtime_ms {}\n", report.runtime.as_millis()),
                code: if report.is_clean() { 0 } else { 1 },
            };
            Ok(out)
        }
        Command::CheckProps { model, points, samples, r, seed, window } => {
            check_props(&model, points.as_deref(), samples, r, seed, window)
        }
    }
}

fn rank(input: &FunctionalArgs, window: Option<Bidegree>, bound: Option<usize>) -> Outcome {
    let p = load(input)?;
    let (value, w) = match window {
        Some(a) => {
            let w = SplittingWindow::for_total(a, p.bidegree)?;
            (cat_rank(&p, &w)?, w)
        }
        None => max_cat_rank(&p)?,
    };
    let text = format!("rank {value}\nwindow {w}\n");
    match bound {
        Some(r) if value > r => Ok(Output::negative(format!("{text}not in rank locus: rank {value} exceeds {r}\n"))),
        _ => Ok(Output::ok(text)),
    }
}

fn hilbert(input: &FunctionalArgs) -> Outcome {
    let p = load(input)?;
    let profile = apolar_hilbert(&p)?;
    let mut s = format!("bidegree {}\n", p.bidegree);
    for i in 0..=p.bidegree.i {
        let row: Vec<String> = (0..=p.bidegree.j).map(|j| profile.get(Bidegree::new(i, j)).to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    let _ = writeln!(s, "symmetric {}", profile.is_symmetric());
    Ok(Output::ok(s))
}

fn theorem_params(model: &ModelArgs, r: usize, c: Option<usize>, d: usize, k: Option<usize>) -> Result<TheoremParams, Failure> {
    let ModelKind::TwistedBinary { c: model_c } = model.model else {
        return Err(usage("decompose needs --model twisted-binary:c=C"));
    };
    let c = c.unwrap_or(model_c as usize);
    if c != model_c as usize {
        return Err(usage(format!("--c {c} disagrees with the model's c={model_c}")));
    }
    Ok(match k {
        Some(k) => TheoremParams::new(r, c, d, k),
        None => TheoremParams::with_default_k(r, c, d),
    }?)
}

fn parse_class(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("--class: not an integer: {t:?}"))))
        .collect()
}

fn cone_split(path: &Path, r: usize, d: Option<usize>, class: Option<&str>) -> Outcome {
    let file = parse_cone(&read(path)?).map_err(|e| in_file(path, e))?;
    let d = d.unwrap_or(2 * r);
    let class = match class {
        Some(s) => parse_class(s)?,
        None => {
            let lambda = lambda_bound(&file.cone, &file.d0, r, d)?;
            file.d0.iter().map(|x| lambda * x).collect()
        }
    };
    if class.len() != file.cone.rho() {
        return Err(usage(format!("--class has {} entries, the lattice has rank {}", class.len(), file.cone.rho())));
    }
    match synthesize_splitting_with(&file.cone, &file.d0, &class, r, d) {
        Ok(plan) => Ok(Output::ok(format!("{plan}\n"))),
        Err(e @ Error::NotSufficientlyAmple(_)) => Ok(Output::negative(format!("{e}\n"))),
        Err(e) => Err(e.into()),
    }
}

fn render(report: &HilbertReport) -> String {
    let mut s = format!("degree {}\n{}", report.degree, report.table);
    if report.degenerate {
        s.push_str("degenerate empty point set\n");
    }
    for v in &report.violations {
        let _ = writeln!(s, "violation {v}");
    }
    let _ = writeln!(s, "ok {}", report.is_ok());
    s
}

fn check_props(
    model: &ModelArgs,
    points: Option<&Path>,
    samples: Option<usize>,
    r: usize,
    seed: u64,
    window: Bidegree,
) -> Outcome {
    let m = model_of(model);
    if let Some(path) = points {
        let pts = parse_points(&read(path)?, &m).map_err(|e| in_file(path, e))?;
        let report = hilbert_properties_check(&m, &pts, window)?;
        let text = render(&report);
        return Ok(if report.is_ok() { Output::ok(text) } else { Output::negative(text) });
    }
    let Some(n) = samples else {
        return Err(usage("check-props needs --points or --samples"));
    };
    if r == 0 {
        return Err(usage("--r must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut s = String::new();
    for i in 0..n {
        let count = rng.gen_range(1..=r);
        let pts = sample::injective_points(&m, count, &mut rng, 8)
            .ok_or_else(|| usage(format!("cannot place {count} points with distinct projections over {}", m.field)))?;
        let report = hilbert_properties_check(&m, &pts, window)?;
        if !report.is_ok() {
            failures += 1;
            let _ = writeln!(s, "sample {i} ({count} points) fails:");
            s.push_str(&render(&report));
        }
    }
    let _ = writeln!(s, "samples {n}\nfailures {failures}");
    Ok(if failures == 0 { Output::ok(s) } else { Output::negative(s) })
}
