//! Log-space expectation formulas for the chain-counting variable and
//! Monte Carlo estimators validating them.
//!
//! All closed forms work in logarithms (natural internally, base `n` at
//! the interface) so that genus sweeps never overflow. The chain count
//! factorizes into a clique-embedding term and a per-pattern probability;
//! both are exposed, together with the lower-bound chain used to show the
//! count diverges, and a Taylor comparison for its tail summand.

use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::model::{
    check_conditions, sample_complex_rng, sandwich_probability, ConditionReport, ModelParams,
};
use crate::numeric::{binomial_f64, ln_binomial, ln_factorial, pairwise_sum};
use crate::pattern::{count_pattern_occurrences, PatternPair};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Expected number of ordered embeddings of a complete graph on `m`
/// vertices, as a base-`n` logarithm:
/// `log_n [ C(n, m) * m! * prod_i p_i^e_i ]`.
///
/// With `face_count_exponents` unset the exponents are `e_i = C(m-1, i)`
/// as printed in the source estimate; set, they are `e_i = C(m, i+1)`, the
/// number of `i`-faces of an `m`-clique. The two disagree (the printed
/// form undercounts), so both modes exist and reports carry both.
///
/// Returns `-inf` when `m > n` (no embeddings weighted by the vanishing
/// binomial); `m` above the ambient set is a hard argument error.
pub fn log_expected_clique_embeddings(
    params: &ModelParams,
    m: usize,
    face_count_exponents: bool,
) -> Result<f64, Error> {
    if m < 1 {
        return Err(Error::InvalidParams("clique embeddings need m >= 1".into()));
    }
    if m > params.ambient() {
        return Err(Error::InvalidParams(format!(
            "clique size {m} exceeds the ambient set of {} vertices",
            params.ambient()
        )));
    }
    let m64 = m as u64;
    let mut ln_value = ln_binomial(params.n(), m64) + ln_factorial(m64);
    for i in 0..=params.r() {
        let exponent = if face_count_exponents {
            binomial_f64(m64, i as u64 + 1)
        } else {
            binomial_f64(m64 - 1, i as u64)
        };
        if exponent > 0.0 {
            ln_value += exponent * params.level(i).ln_p;
        }
    }
    Ok(ln_value / params.ln_n())
}

/// Base-`n` log-probability of one pattern occurrence at genus `g`:
/// `(2g+4) log_n p_0 + (2g^2+3g+1) log_n p_1 + (2g+2) log_n (1 - p_1)`.
///
/// Agrees with [`crate::model::sandwich_probability`] applied to
/// [`crate::pattern::build_pattern`]'s pair. `p_1 = 1` yields `-inf`.
pub fn log_pattern_probability(params: &ModelParams, g: u32) -> Result<f64, Error> {
    if g < 1 {
        return Err(Error::GenusTooSmall(g));
    }
    if params.r() < 1 {
        return Err(Error::InvalidParams(
            "the pattern probability needs a level-1 probability (r >= 1)".into(),
        ));
    }
    let gf = g as f64;
    let ln = (2.0 * gf + 4.0) * params.level(0).ln_p
        + (2.0 * gf * gf + 3.0 * gf + 1.0) * params.level(1).ln_p
        + (2.0 * gf + 2.0) * params.level(1).ln_q;
    Ok(ln / params.ln_n())
}

/// Everything the chain-count estimate of one parameter point consists of.
/// All logarithms are base `n`.
#[derive(Clone, Debug, Serialize)]
pub struct ExpectationReport {
    pub g: u32,
    pub n: u64,
    pub r: usize,
    /// Exponent snapshot (derived from probabilities when not given).
    pub alpha: Vec<f64>,
    /// Embedding term with the exponents as printed, `C(4g+1, i)`.
    pub log_n_clique_term: f64,
    /// Embedding term with clique face-count exponents `C(4g+2, i+1)`.
    pub log_n_clique_term_alt: f64,
    /// Per-occurrence pattern probability.
    pub log_n_pattern_term: f64,
    /// The `(2g+2) log_n (1 - p_1)` tail inside the pattern term.
    pub log_n_tail_term: f64,
    /// `log_n_clique_term + log_n_pattern_term`.
    pub log_n_e_ch: f64,
    /// The explicit lower-bound chain for the same quantity.
    pub lower_bound: f64,
    /// True when `4g + 2 > n`, which zeroes the embedding count and sends
    /// the clique term to `-inf`.
    pub clique_infeasible: bool,
    pub conditions: ConditionReport,
}

/// Evaluates the chain-count expectation estimate at `params`, which must
/// carry the canonical dimension cap `r = 3g - 3` (hence `g >= 2`).
///
/// The lower bound replaces `log_n [C(n,m) m!]` by `m log_n(n/m)`, the
/// clique exponent sum by 1, and the pattern vertex exponent `2g+4` by
/// `4g+2`; it is a true lower bound whenever `m <= n` and the exponent sum
/// is at most 1.
pub fn log_expected_ch(params: &ModelParams) -> Result<ExpectationReport, Error> {
    let g = params.g();
    if g < 2 {
        return Err(Error::InvalidParams(
            "the chain-count estimate needs genus at least 2".into(),
        ));
    }
    let expected_r = 3 * g as usize - 3;
    if params.r() != expected_r {
        return Err(Error::InvalidParams(format!(
            "the chain-count estimate requires r = 3g - 3 = {expected_r}, got {}",
            params.r()
        )));
    }
    let m = 4 * g as usize + 2;
    let gf = g as f64;
    let ln_n = params.ln_n();

    let log_n_clique_term = log_expected_clique_embeddings(params, m, false)?;
    let log_n_clique_term_alt = log_expected_clique_embeddings(params, m, true)?;
    let log_n_pattern_term = log_pattern_probability(params, g)?;
    let log_n_tail_term = (2.0 * gf + 2.0) * params.level(1).ln_q / ln_n;

    let a0 = params.alpha_at(0);
    let a1 = params.alpha_at(1);
    let mf = m as f64;
    let lower_bound = mf * (1.0 - mf.ln() / ln_n) - 1.0 - a0 * mf
        - a1 * (2.0 * gf * gf + 3.0 * gf + 1.0)
        + log_n_tail_term;

    Ok(ExpectationReport {
        g,
        n: params.n(),
        r: params.r(),
        alpha: (0..=params.r()).map(|i| params.alpha_at(i)).collect(),
        log_n_clique_term,
        log_n_clique_term_alt,
        log_n_pattern_term,
        log_n_tail_term,
        log_n_e_ch: log_n_clique_term + log_n_pattern_term,
        lower_bound,
        clique_infeasible: m as u64 > params.n(),
        conditions: check_conditions(params),
    })
}

/// Closed form versus truncated series for the tail summand
/// `(2g+2) log_n (1 - n^{-alpha1})`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TailComparison {
    /// `(2g+2) ln_1p(-z) / ln n` with `z = n^{-alpha1}`.
    pub closed_form: f64,
    /// `-(2g+2) sum_{i>=1} z^i / i / ln n`, truncated at machine precision.
    pub series: f64,
    pub difference: f64,
    /// Series terms consumed before truncation.
    pub terms: u64,
}

/// Evaluates both forms of the tail summand. Requires `0 < n^{-alpha1} < 1`.
pub fn taylor_tail(alpha1: f64, g: u32, n: u64) -> Result<TailComparison, Error> {
    let ln_n = (n.max(1) as f64).ln();
    let z = (-alpha1 * ln_n).exp();
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::TailOutOfDomain { z });
    }
    let weight = 2.0 * g as f64 + 2.0;
    let closed_form = weight * (-z).ln_1p() / ln_n;

    let mut sum = 0.0f64;
    let mut power = z;
    let mut terms = 0u64;
    const MAX_TERMS: u64 = 10_000_000;
    loop {
        terms += 1;
        let term = power / terms as f64;
        sum += term;
        power *= z;
        if term <= f64::EPSILON * sum || terms >= MAX_TERMS {
            break;
        }
    }
    let series = -weight * sum / ln_n;
    Ok(TailComparison { closed_form, series, difference: closed_form - series, terms })
}

/// What a Monte Carlo run evaluates on each sampled complex.
#[derive(Clone, Debug)]
pub enum McEvent {
    /// Indicator of `a <= Y <= b` for the carried pattern pair.
    Sandwich { pair: PatternPair },
    /// Labeled pattern-occurrence count at genus `g`.
    PatternCount { g: u32 },
    /// Number of `m`-vertex subsets spanning a complete skeleton up to the
    /// model cap.
    CliqueCount { m: usize },
}

/// Outcome of a Monte Carlo run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct McEstimate {
    pub trials: u64,
    pub mean: f64,
    /// Unbiased sample variance (zero for a single trial).
    pub variance: f64,
    /// `sqrt(variance / trials)`.
    pub stderr: f64,
    pub seed: u64,
}

fn clique_count(y: &SimplicialComplex, m: usize) -> f64 {
    let present = y.vertex_list();
    if present.len() < m {
        return 0.0;
    }
    let top = m.saturating_sub(1).min(y.cap());
    let mut count = 0u64;
    'subsets: for subset in present.iter().copied().combinations(m) {
        for d in 1..=top {
            for face in subset.iter().copied().combinations(d + 1) {
                if !y.contains(&face) {
                    continue 'subsets;
                }
            }
        }
        count += 1;
    }
    count as f64
}

fn evaluate(event: &McEvent, y: &SimplicialComplex) -> Result<f64, Error> {
    match event {
        McEvent::Sandwich { pair } => {
            let hit = pair.a.is_subcomplex_of(y) && y.is_subcomplex_of(&pair.b);
            Ok(if hit { 1.0 } else { 0.0 })
        }
        McEvent::PatternCount { g } => {
            let m = 2 * *g as usize + 4;
            Ok(count_pattern_occurrences(y, *g, m)?.labelings as f64)
        }
        McEvent::CliqueCount { m } => Ok(clique_count(y, *m)),
    }
}

/// Exact expectation of the value averaged by [`mc_estimate`], for
/// comparator printing and calibration checks.
///
/// Sandwich: `exp` of the sandwich log-probability. Pattern count: ordered
/// placements times the per-placement probability,
/// `N!/(N-m)! * p_0^m * p_1^{f_1(A)} * q_1^{e_1(B)}` with `m = 2g+4`.
/// Clique count: `C(N, m)` times the probability that all faces of an
/// `m`-clique up to the model cap appear, exponents `C(m, i+1)`.
pub fn event_expectation(event: &McEvent, params: &ModelParams) -> Result<f64, Error> {
    match event {
        McEvent::Sandwich { pair } => Ok(sandwich_probability(&pair.a, &pair.b, params)?.exp()),
        McEvent::PatternCount { g } => {
            if *g < 1 {
                return Err(Error::GenusTooSmall(*g));
            }
            if params.r() < 1 {
                return Err(Error::InvalidParams(
                    "the pattern count needs a level-1 probability (r >= 1)".into(),
                ));
            }
            let m = 2 * u64::from(*g) + 4;
            let ambient = params.ambient() as u64;
            if m > ambient {
                return Ok(0.0);
            }
            let gf = f64::from(*g);
            let ln = ln_factorial(ambient) - ln_factorial(ambient - m)
                + m as f64 * params.level(0).ln_p
                + (2.0 * gf * gf + 3.0 * gf + 1.0) * params.level(1).ln_p
                + (2.0 * gf + 2.0) * params.level(1).ln_q;
            Ok(ln.exp())
        }
        McEvent::CliqueCount { m } => {
            if *m < 1 || *m > params.ambient() {
                return Err(Error::InvalidParams(format!(
                    "clique count size {m} must lie in 1..={}",
                    params.ambient()
                )));
            }
            let m64 = *m as u64;
            let mut ln = ln_binomial(params.ambient() as u64, m64);
            for i in 0..=params.r().min(m - 1) {
                ln += binomial_f64(m64, i as u64 + 1) * params.level(i).ln_p;
            }
            Ok(ln.exp())
        }
    }
}

/// Samples `trials` independent complexes and averages the event value.
///
/// Trial `t` draws from stream `t + 1` of a generator seeded with `seed`,
/// so results are independent of thread scheduling and reproducible.
pub fn mc_estimate(
    event: &McEvent,
    params: &ModelParams,
    trials: u64,
    seed: u64,
) -> Result<McEstimate, Error> {
    if trials < 1 {
        return Err(Error::InvalidParams("at least one trial is required".into()));
    }
    match event {
        McEvent::Sandwich { pair } => {
            if pair.a.ambient() != params.ambient() {
                return Err(Error::AmbientMismatch {
                    left: pair.a.ambient(),
                    right: params.ambient(),
                });
            }
        }
        McEvent::PatternCount { g } => {
            if *g < 1 {
                return Err(Error::GenusTooSmall(*g));
            }
        }
        McEvent::CliqueCount { m } => {
            if *m < 1 || *m > params.ambient() {
                return Err(Error::InvalidParams(format!(
                    "clique count size {m} must lie in 1..={}",
                    params.ambient()
                )));
            }
        }
    }

    let values: Result<Vec<f64>, Error> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial + 1);
            let y = sample_complex_rng(params, &mut rng);
            evaluate(event, &y)
        })
        .collect();
    let values = values?;

    let mean = pairwise_sum(&values) / trials as f64;
    let variance = if trials > 1 {
        let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
        pairwise_sum(&sq) / (trials - 1) as f64
    } else {
        0.0
    };
    Ok(McEstimate {
        trials,
        mean,
        variance,
        stderr: (variance / trials as f64).sqrt(),
        seed,
    })
}
