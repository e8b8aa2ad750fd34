//! Lie-algebra and matrix-algebra closure of a model, decided exactly, plus a
//! numerical check of multiplicative closure through `log(e^{Q₁t₁} e^{Q₂t₂})`.

mod numeric;

pub use numeric::{expm, logm, max_abs, norm1, sqrtm};

use std::fmt;
use std::ops::{Mul, Sub};

use log::debug;
use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, SquareMatrix};
use crate::modelgen::ModelSubspace;

/// `AB - BA`.
pub fn commutator<T>(a: &SquareMatrix<T>, b: &SquareMatrix<T>) -> Result<SquareMatrix<T>>
where
    T: Clone + Zero + Mul<Output = T> + Sub<Output = T>,
{
    if a.n() != b.n() {
        return Err(Error::OrderMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    Ok(&(a * b) - &(b * a))
}

/// A generator pair whose bracket (or product) leaves the span. Indices refer
/// to [`ModelSubspace::basis`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub matrix: IntMatrix,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosureCheck {
    pub closed: bool,
    pub witness: Option<Witness>,
}

impl ClosureCheck {
    fn from_witness(witness: Option<Witness>) -> Self {
        ClosureCheck {
            closed: witness.is_none(),
            witness,
        }
    }
}

/// Every bracket of two generators lies in the span.
pub fn check_lie_closed(m: &ModelSubspace) -> ClosureCheck {
    let b = m.basis();
    let witness = (0..b.len())
        .flat_map(|i| (i + 1..b.len()).map(move |j| (i, j)))
        .find_map(|(i, j)| {
            let c = commutator(&b[i], &b[j]).expect("generators share an order");
            m.contains_int(&c).is_none().then_some(Witness { i, j, matrix: c })
        });
    ClosureCheck::from_witness(witness)
}

/// Every ordered product of two generators lies in the span. Mixed products
/// `L_iL_j` (`i ≠ j`) are tested before squares, so a reported witness is
/// mixed whenever one exists.
pub fn check_algebra_closed(m: &ModelSubspace) -> ClosureCheck {
    let b = m.basis();
    let n = b.len();
    let mixed = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
    let witness = mixed
        .chain((0..n).map(|i| (i, i)))
        .find_map(|(i, j)| {
            let p = &b[i] * &b[j];
            m.contains_int(&p).is_none().then_some(Witness { i, j, matrix: p })
        });
    ClosureCheck::from_witness(witness)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Too many trials had to be discarded because the logarithm did not converge.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Sampling regime for [`verify_multiplicative_closure_with`].
#[derive(Clone, Copy, Debug)]
pub struct TrialSettings {
    pub trials: usize,
    pub tolerance: f64,
    pub seed: u64,
    /// Times are drawn from `(0, t_max]`.
    pub t_max: f64,
    /// Resamples allowed per trial when the logarithm fails.
    pub retries: usize,
}

impl TrialSettings {
    pub fn new(trials: usize, tolerance: f64, seed: u64) -> Self {
        TrialSettings {
            trials,
            tolerance,
            seed,
            t_max: 1.0,
            retries: 8,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub lie_closed: bool,
    pub lie_witness: Option<Witness>,
    pub algebra_closed: bool,
    pub algebra_witness: Option<Witness>,
    pub numeric_trials: usize,
    pub discarded_trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub verdict: Verdict,
}

pub fn verify_multiplicative_closure(m: &ModelSubspace, trials: usize, tol: f64, seed: u64) -> Result<ClosureReport> {
    verify_multiplicative_closure_with(m, TrialSettings::new(trials, tol, seed))
}

/// For each trial, draws `Q₁, Q₂` as combinations of the generators with
/// coefficients in `(0, 1]` and times in `(0, t_max]`, forms
/// `X = log(e^{Q₁t₁} e^{Q₂t₂})`, and measures the max-abs distance from `X` to
/// its least-squares projection on the span.
pub fn verify_multiplicative_closure_with(m: &ModelSubspace, settings: TrialSettings) -> Result<ClosureReport> {
    if m.dim() == 0 {
        return Err(Error::Degenerate("closure trials need a model of dimension at least 1".into()));
    }
    let lie = check_lie_closed(m);
    let alg = check_algebra_closed(m);
    let generators: Vec<DMatrix<f64>> = m.basis().iter().map(IntMatrix::to_f64).collect();
    let projector = SpanProjector::new(m);

    let outcomes: Vec<Option<f64>> = (0..settings.trials)
        .into_par_iter()
        .map(|trial| run_trial(&generators, &projector, &settings, trial as u64))
        .collect();

    let discarded = outcomes.iter().filter(|o| o.is_none()).count();
    let max_residual = outcomes.iter().flatten().fold(0.0, |a: f64, &b| a.max(b));
    let verdict = if max_residual >= settings.tolerance {
        Verdict::Fail
    } else if discarded > 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    debug!(
        "closure trials: {} run, {discarded} discarded, max residual {max_residual:.3e}",
        settings.trials
    );
    Ok(ClosureReport {
        lie_closed: lie.closed,
        lie_witness: lie.witness,
        algebra_closed: alg.closed,
        algebra_witness: alg.witness,
        numeric_trials: settings.trials,
        discarded_trials: discarded,
        max_residual,
        tolerance: settings.tolerance,
        seed: settings.seed,
        verdict,
    })
}

/// Residual of one trial, or `None` when every attempt hit a logarithm failure.
fn run_trial(gens: &[DMatrix<f64>], projector: &SpanProjector, s: &TrialSettings, trial: u64) -> Option<f64> {
    let n = gens[0].nrows();
    for attempt in 0..=s.retries as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        rng.set_stream(trial * (s.retries as u64 + 1) + attempt);
        let mut sample = || {
            gens.iter().fold(DMatrix::<f64>::zeros(n, n), |acc, g| {
                acc + g * (1.0 - rng.gen::<f64>())
            })
        };
        let q1 = sample();
        let q2 = sample();
        let t1 = s.t_max * (1.0 - rng.gen::<f64>());
        let t2 = s.t_max * (1.0 - rng.gen::<f64>());
        let product = expm(&q1, t1) * expm(&q2, t2);
        match logm(&product) {
            Ok(x) => return Some(projector.residual(&x)),
            Err(e) => debug!("trial {trial} attempt {attempt}: {e}"),
        }
    }
    None
}

/// Orthogonal projection onto a span, via a thin QR of its RREF rows.
struct SpanProjector {
    q: DMatrix<f64>,
}

impl SpanProjector {
    fn new(m: &ModelSubspace) -> Self {
        let k2 = m.order() * m.order();
        let rows = m.rref().rows();
        let basis = DMatrix::<f64>::from_fn(k2, rows.len(), |r, c| {
            let v = &rows[c][r];
            num_traits::ToPrimitive::to_f64(v).expect("finite rational")
        });
        SpanProjector { q: basis.qr().q() }
    }

    fn residual(&self, x: &DMatrix<f64>) -> f64 {
        // row-major vectorization, matching the RREF layout
        let v = DVector::<f64>::from_iterator(x.len(), x.transpose().iter().copied());
        let proj = &self.q * (self.q.transpose() * &v);
        (v - proj).iter().fold(0.0, |a: f64, b| a.max(b.abs()))
    }
}
