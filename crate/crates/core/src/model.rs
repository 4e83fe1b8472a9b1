//! The multiparametric random complex model.
//!
//! A sample is built level by level on `ambient` labeled vertices: each
//! vertex survives with probability `p_0`, and an `i`-simplex whose whole
//! boundary survived is kept with probability `p_i`, independently. The
//! probabilities are usually given through exponents `alpha` with
//! `p_i = n^(-alpha_i)` for the scale parameter `n`.

use crate::complex::{ComplexBuilder, SimplicialComplex};
use crate::error::Error;
use crate::numeric::binomial_f64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;

/// Per-dimension probability with precomputed logs.
///
/// `ln_q` is the log of the complement, evaluated in a form that stays
/// accurate when `p` is close to 0 or to 1.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Level {
    pub p: f64,
    pub ln_p: f64,
    pub ln_q: f64,
}

impl Level {
    fn from_alpha(alpha: f64, ln_n: f64) -> Level {
        let ln_p = -alpha * ln_n;
        Level {
            p: ln_p.exp(),
            ln_p,
            ln_q: (-ln_p.exp_m1()).ln(),
        }
    }

    fn from_prob(p: f64) -> Level {
        Level {
            p,
            ln_p: p.ln(),
            ln_q: (-p).ln_1p(),
        }
    }
}

/// Immutable parameter set for the model.
#[derive(Clone, Debug, Serialize)]
pub struct ModelParams {
    g: u32,
    n: u64,
    ambient: usize,
    r: usize,
    levels: Vec<Level>,
    alpha: Option<Vec<f64>>,
}

/// Builder for [`ModelParams`]. Defaults: `n = 2^g`, `ambient = n`,
/// `r = 3g - 3`. Exactly one of `alpha` or `probs` must be supplied.
pub struct ModelParamsBuilder {
    g: u32,
    n: Option<u64>,
    ambient: Option<usize>,
    r: Option<usize>,
    alpha: Option<Vec<f64>>,
    probs: Option<Vec<f64>>,
}

impl ModelParamsBuilder {
    pub fn n(mut self, n: u64) -> Self {
        self.n = Some(n);
        self
    }

    pub fn ambient(mut self, ambient: usize) -> Self {
        self.ambient = Some(ambient);
        self
    }

    pub fn r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    pub fn alpha(mut self, alpha: Vec<f64>) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn probs(mut self, probs: Vec<f64>) -> Self {
        self.probs = Some(probs);
        self
    }

    pub fn build(self) -> Result<ModelParams, Error> {
        let g = self.g;
        if g < 1 {
            return Err(Error::GenusTooSmall(g));
        }
        let n = match self.n {
            Some(n) => n,
            None => {
                if g >= 63 {
                    return Err(Error::InvalidParams(format!(
                        "default scale 2^{g} overflows; pass n explicitly"
                    )));
                }
                1u64 << g
            }
        };
        if n < 2 {
            return Err(Error::InvalidParams(format!("scale n must be at least 2, got {n}")));
        }
        let ambient = match self.ambient {
            Some(a) => a,
            None => usize::try_from(n).map_err(|_| {
                Error::InvalidParams(format!("scale {n} too large for a default ambient set"))
            })?,
        };
        let r = self.r.unwrap_or((3 * g as usize).saturating_sub(3));
        if ambient == 0 || r + 1 > ambient {
            return Err(Error::InvalidParams(format!(
                "dimension cap r = {r} needs at least r + 1 = {} ambient vertices, got {ambient}",
                r + 1
            )));
        }
        let ln_n = (n as f64).ln();
        let (levels, alpha) = match (self.alpha, self.probs) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidParams(
                    "give either alpha exponents or explicit probabilities, not both".into(),
                ))
            }
            (None, None) => {
                return Err(Error::InvalidParams(
                    "alpha exponents or explicit probabilities are required".into(),
                ))
            }
            (Some(alpha), None) => {
                if alpha.len() != r + 1 {
                    return Err(Error::InvalidParams(format!(
                        "alpha needs r + 1 = {} entries, got {}",
                        r + 1,
                        alpha.len()
                    )));
                }
                if let Some(bad) = alpha.iter().find(|a| !a.is_finite() || **a < 0.0) {
                    return Err(Error::InvalidParams(format!(
                        "alpha entries must be non-negative and finite, got {bad}"
                    )));
                }
                let levels = alpha.iter().map(|&a| Level::from_alpha(a, ln_n)).collect();
                (levels, Some(alpha))
            }
            (None, Some(probs)) => {
                if probs.len() != r + 1 {
                    return Err(Error::InvalidParams(format!(
                        "p needs r + 1 = {} entries, got {}",
                        r + 1,
                        probs.len()
                    )));
                }
                if let Some(bad) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                    return Err(Error::InvalidParams(format!(
                        "probabilities must lie in [0, 1], got {bad}"
                    )));
                }
                (probs.iter().map(|&p| Level::from_prob(p)).collect(), None)
            }
        };
        Ok(ModelParams { g, n, ambient, r, levels, alpha })
    }
}

impl ModelParams {
    pub fn builder(g: u32) -> ModelParamsBuilder {
        ModelParamsBuilder {
            g,
            n: None,
            ambient: None,
            r: None,
            alpha: None,
            probs: None,
        }
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn ln_n(&self) -> f64 {
        (self.n as f64).ln()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn level(&self, dim: usize) -> Level {
        self.levels[dim]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Exponents, if the parameters were built from them.
    pub fn alpha(&self) -> Option<&[f64]> {
        self.alpha.as_deref()
    }

    /// Exponent of level `dim`: the stored value, or `-ln p / ln n` when the
    /// parameters were given as raw probabilities.
    pub fn alpha_at(&self, dim: usize) -> f64 {
        match &self.alpha {
            Some(a) => a[dim],
            None => -self.levels[dim].ln_p / self.ln_n(),
        }
    }
}

/// `psi_k(alpha) = sum_i C(k, i) * alpha_i`, with `C(k, i) = 0` for `i > k`.
/// Nondecreasing in `k` for non-negative exponent vectors.
pub fn psi(k: usize, alpha: &[f64]) -> f64 {
    alpha
        .iter()
        .enumerate()
        .map(|(i, &a)| binomial_f64(k as u64, i as u64) * a)
        .sum()
}

/// Named parameter-domain flags plus the psi ladder.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    /// `psi_0 .. psi_{r+1}`.
    pub psi: Vec<f64>,
    /// The unique `k <= r` with `psi_k < 1 < psi_{k+1}`, when it exists.
    pub critical_dimension: Option<usize>,
    /// Strict variant: `a0 + 3 a1 + 2 a2 > 1`, `a2 > 0`, `0 < a0 + a1 < 1`.
    pub hyperbolic_gt: bool,
    /// Reversed variant: `a0 + 3 a1 + 2 a2 < 1` and `a0 + a1 < 1`.
    pub hyperbolic_lt: bool,
    /// `a1 < 1/g^2`, `a0 < (g^2 - 1)/g^2`, `a2 > (1 - 2 g^2)/g^2`.
    pub technical: bool,
}

/// Evaluates the named parameter conditions. Exponents above the stored
/// vector (and `a1`, `a2` when `r < 2`) count as zero.
pub fn check_conditions(params: &ModelParams) -> ConditionReport {
    let alpha: Vec<f64> = (0..=params.r()).map(|i| params.alpha_at(i)).collect();
    let psi_ladder: Vec<f64> = (0..=params.r() + 1).map(|k| psi(k, &alpha)).collect();
    let critical_dimension =
        (0..=params.r()).find(|&k| psi_ladder[k] < 1.0 && 1.0 < psi_ladder[k + 1]);
    let a0 = alpha[0];
    let a1 = alpha.get(1).copied().unwrap_or(0.0);
    let a2 = alpha.get(2).copied().unwrap_or(0.0);
    let combo = a0 + 3.0 * a1 + 2.0 * a2;
    let gsq = (params.g() as f64) * (params.g() as f64);
    ConditionReport {
        psi: psi_ladder,
        critical_dimension,
        hyperbolic_gt: combo > 1.0 && a2 > 0.0 && 0.0 < a0 + a1 && a0 + a1 < 1.0,
        hyperbolic_lt: combo < 1.0 && a0 + a1 < 1.0,
        technical: a1 < 1.0 / gsq
            && a0 < (gsq - 1.0) / gsq
            && a2 > (1.0 - 2.0 * gsq) / gsq,
    }
}

/// Draws one complex. Identical seeds give identical complexes.
pub fn sample_complex(params: &ModelParams, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_complex_rng(params, &mut rng)
}

/// Sampler core, generic over the RNG so that Monte Carlo drivers can hand
/// out one independent stream per trial.
pub(crate) fn sample_complex_rng<R: Rng>(params: &ModelParams, rng: &mut R) -> SimplicialComplex {
    let ambient = params.ambient();
    let r = params.r();
    let mut builder = ComplexBuilder::new(ambient, r);

    let p0 = params.level(0).p;
    let mut present: Vec<usize> = Vec::new();
    for v in 0..ambient {
        if rng.random::<f64>() < p0 {
            present.push(v);
            builder.insert_sorted(vec![v]);
        }
    }

    // Candidates of each dimension extend the previous level by one vertex
    // above the face maximum, drawn in canonical order so that a seed fixes
    // the outcome.
    let mut prev: Vec<Vec<usize>> = present.iter().map(|&v| vec![v]).collect();
    let mut prev_set: HashSet<Vec<usize>> = prev.iter().cloned().collect();
    for d in 1..=r {
        let p = params.level(d).p;
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for f in &prev {
            let max = *f.last().unwrap();
            let start = present.partition_point(|&v| v <= max);
            for &v in &present[start..] {
                let mut cand = f.clone();
                cand.push(v);
                let boundary_ok = d == 1
                    || (0..cand.len() - 1).all(|skip| {
                        let facet: Vec<usize> = cand
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != skip)
                            .map(|(_, &x)| x)
                            .collect();
                        prev_set.contains(&facet)
                    });
                if boundary_ok {
                    candidates.push(cand);
                }
            }
        }
        candidates.sort_unstable();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for cand in candidates {
            if rng.random::<f64>() < p {
                builder.insert_sorted(cand.clone());
                kept.push(cand);
            }
        }
        if kept.is_empty() {
            break;
        }
        prev_set = kept.iter().cloned().collect();
        prev = kept;
    }
    builder.seal()
}

/// Log-probability (natural log) of the event `A <= Y <= B` under the model:
/// the sum of `ln p_dim` over faces of `A` plus `ln q_dim` over exterior
/// faces of `B` of dimension at most `r`.
///
/// Preconditions are validated: `A` and `B` share an ambient set, `A` is a
/// subcomplex of `B` with no face above the model cap, and every exterior
/// face of `B` of dimension `<= r` has its boundary inside `A` (otherwise the
/// product formula does not describe the event).
pub fn sandwich_probability(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    params: &ModelParams,
) -> Result<f64, Error> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch { left: a.ambient(), right: b.ambient() });
    }
    let r = params.r();
    if let Some(face) = a.first_face_outside(b) {
        return Err(Error::NotASubcomplex { face });
    }
    if let Some(d) = a.dim() {
        if d > r {
            let face = a.faces_sorted(d).into_iter().next().unwrap();
            return Err(Error::InnerAboveModelCap { face, cap: r });
        }
    }

    let mut exterior_counts = vec![0usize; r + 1];
    for (d, count) in exterior_counts.iter_mut().enumerate() {
        let ext = b.exterior_faces_unbounded(d);
        if d > 0 {
            for face in &ext {
                if let Some(facet) = face.facets().find(|fc| !a.contains_simplex(fc)) {
                    let _ = facet;
                    return Err(Error::ExteriorBoundaryEscapes { face: face.clone() });
                }
            }
        }
        *count = ext.len();
    }

    let mut log_prob = 0.0f64;
    let f = a.f_vector();
    for (d, &count) in f.iter().enumerate().take(r + 1) {
        if count > 0 {
            log_prob += count as f64 * params.level(d).ln_p;
        }
    }
    for (d, &count) in exterior_counts.iter().enumerate() {
        if count > 0 {
            log_prob += count as f64 * params.level(d).ln_q;
        }
    }
    Ok(log_prob)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{ComplexBuilder, Simplex};
    use approx::assert_relative_eq;

    fn params_probs(g: u32, ambient: usize, r: usize, probs: Vec<f64>) -> ModelParams {
        ModelParams::builder(g).n(1 << g).ambient(ambient).r(r).probs(probs).build().unwrap()
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(0, &[0.5, 0.3]), 0.5);
        assert_eq!(psi(1, &[0.5, 0.3]), 0.8);
        assert_relative_eq!(psi(2, &[0.1, 0.2, 0.3]), 0.8, max_relative = 1e-15);
        assert_eq!(psi(5, &[0.0, 0.0, 0.0]), 0.0);
    }

    #[test]
    fn psi_is_monotone_in_k() {
        let alpha = [0.3, 0.05, 0.01, 0.2];
        let values: Vec<f64> = (0..12).map(|k| psi(k, &alpha)).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn builder_defaults() {
        let p = ModelParams::builder(3).alpha(vec![0.0; 7]).build().unwrap();
        assert_eq!(p.n(), 8);
        assert_eq!(p.ambient(), 8);
        assert_eq!(p.r(), 6);
        assert_eq!(p.levels().len(), 7);
        assert_eq!(p.level(0).p, 1.0);
        assert_eq!(p.level(0).ln_q, f64::NEG_INFINITY);
    }

    #[test]
    fn builder_validation() {
        assert!(matches!(
            ModelParams::builder(0).alpha(vec![0.5]).build(),
            Err(Error::GenusTooSmall(0))
        ));
        assert!(ModelParams::builder(1).r(1).ambient(4).alpha(vec![0.5]).build().is_err());
        assert!(ModelParams::builder(1).r(0).ambient(4).alpha(vec![-0.5]).build().is_err());
        assert!(ModelParams::builder(1).r(0).ambient(4).probs(vec![1.5]).build().is_err());
        assert!(ModelParams::builder(1)
            .r(0)
            .ambient(4)
            .alpha(vec![0.5])
            .probs(vec![0.5])
            .build()
            .is_err());
        assert!(ModelParams::builder(1).r(0).ambient(4).build().is_err());
        assert!(ModelParams::builder(1).n(1).r(0).ambient(4).alpha(vec![0.5]).build().is_err());
        assert!(ModelParams::builder(2).r(9).ambient(5).alpha(vec![0.0; 10]).build().is_err());
    }

    #[test]
    fn levels_from_alpha_are_stable() {
        let p = ModelParams::builder(1).n(2).ambient(6).r(1).alpha(vec![1.0, 1.0]).build().unwrap();
        assert_relative_eq!(p.level(0).p, 0.5, max_relative = 1e-15);
        assert_relative_eq!(p.level(1).ln_q, 0.5f64.ln(), max_relative = 1e-15);
        // tiny alpha keeps q accurate through expm1
        let tiny = ModelParams::builder(1).n(2).ambient(6).r(0).alpha(vec![1e-12]).build().unwrap();
        let expected = -(-1e-12f64 * 2f64.ln()).exp_m1();
        assert_relative_eq!(tiny.level(0).ln_q, expected.ln(), max_relative = 1e-10);
        // alpha_at inverts the probability form
        let q = params_probs(2, 8, 1, vec![0.25, 0.5]);
        assert_relative_eq!(q.alpha_at(0), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn conditions_technical_example() {
        let mut alpha = vec![0.0; 7];
        alpha[0] = 0.8;
        alpha[1] = 0.1;
        let p = ModelParams::builder(3).alpha(alpha).build().unwrap();
        let report = check_conditions(&p);
        assert!(report.technical);
        assert!(!report.hyperbolic_gt);
        assert!(!report.hyperbolic_lt);
    }

    #[test]
    fn conditions_both_variants() {
        let gt = ModelParams::builder(2)
            .ambient(8)
            .r(3)
            .alpha(vec![0.5, 0.2, 0.1, 0.0])
            .build()
            .unwrap();
        let report = check_conditions(&gt);
        assert!(report.hyperbolic_gt);
        assert!(!report.hyperbolic_lt);

        let lt = ModelParams::builder(2)
            .ambient(8)
            .r(3)
            .alpha(vec![0.3, 0.1, 0.05, 0.0])
            .build()
            .unwrap();
        let report = check_conditions(&lt);
        assert!(!report.hyperbolic_gt);
        assert!(report.hyperbolic_lt);
    }

    #[test]
    fn critical_dimension_search() {
        let p = ModelParams::builder(2)
            .ambient(8)
            .r(3)
            .alpha(vec![0.3, 0.3, 0.0, 0.0])
            .build()
            .unwrap();
        let report = check_conditions(&p);
        assert_eq!(report.psi.len(), 5);
        assert_eq!(report.critical_dimension, Some(2));

        let zero = ModelParams::builder(2).ambient(8).r(3).alpha(vec![0.0; 4]).build().unwrap();
        assert_eq!(check_conditions(&zero).critical_dimension, None);
    }

    #[test]
    fn sampling_extremes() {
        let empty = params_probs(1, 5, 1, vec![0.0, 0.0]);
        assert_eq!(sample_complex(&empty, 1).total_faces(), 0);

        let full = params_probs(1, 5, 2, vec![1.0, 1.0, 1.0]);
        assert_eq!(sample_complex(&full, 1), SimplicialComplex::full_skeleton(5, 2));
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let p = params_probs(1, 10, 2, vec![0.8, 0.5, 0.3]);
        let a = sample_complex(&p, 42);
        let b = sample_complex(&p, 42);
        let c = sample_complex(&p, 43);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_faces_have_boundaries() {
        let p = params_probs(1, 12, 3, vec![0.7, 0.6, 0.5, 0.4]);
        for seed in 0..20 {
            let y = sample_complex(&p, seed);
            for d in 1..=3 {
                for face in y.faces(d) {
                    assert!(face.facets().all(|f| y.contains(f.vertices())));
                }
            }
        }
    }

    #[test]
    fn small_sample_distribution_matches_model_law() {
        // ambient {0, 1}, r = 1: five possible complexes with closed-form
        // probabilities; check empirical frequencies at 4 sigma.
        let p0 = 0.7;
        let p1 = 0.4;
        let p = params_probs(1, 2, 1, vec![p0, p1]);
        let trials = 40_000usize;
        let mut counts = [0usize; 5];
        for seed in 0..trials as u64 {
            let y = sample_complex(&p, seed);
            let idx = match (y.vertex_present(0), y.vertex_present(1), y.contains(&[0, 1])) {
                (false, false, _) => 0,
                (true, false, _) => 1,
                (false, true, _) => 2,
                (true, true, false) => 3,
                (true, true, true) => 4,
            };
            counts[idx] += 1;
        }
        let q0 = 1.0 - p0;
        let expected = [
            q0 * q0,
            p0 * q0,
            q0 * p0,
            p0 * p0 * (1.0 - p1),
            p0 * p0 * p1,
        ];
        for (i, &e) in expected.iter().enumerate() {
            let freq = counts[i] as f64 / trials as f64;
            let sigma = (e * (1.0 - e) / trials as f64).sqrt();
            assert!(
                (freq - e).abs() <= 4.0 * sigma,
                "state {i}: freq {freq}, expected {e}, sigma {sigma}"
            );
        }
    }

    #[test]
    fn sandwich_of_empty_pair() {
        let p = params_probs(1, 6, 1, vec![0.9, 0.5]);
        let a = SimplicialComplex::empty(6, 1);
        let b = SimplicialComplex::empty(6, 1);
        let lp = sandwich_probability(&a, &b, &p).unwrap();
        assert_relative_eq!(lp, 6.0 * 0.1f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn sandwich_against_full_skeleton_counts_only_faces() {
        let p = params_probs(1, 4, 2, vec![0.9, 0.5, 0.25]);
        let mut builder = ComplexBuilder::new(4, 2);
        builder.add_face(&[0, 1, 2]).unwrap();
        let a = builder.seal();
        let b = SimplicialComplex::full_skeleton(4, 2);
        let lp = sandwich_probability(&a, &b, &p).unwrap();
        let expected = 3.0 * 0.9f64.ln() + 3.0 * 0.5f64.ln() + 0.25f64.ln();
        assert_relative_eq!(lp, expected, max_relative = 1e-12);
    }

    #[test]
    fn sandwich_validates_structure() {
        let p = params_probs(1, 3, 1, vec![0.9, 0.5]);
        let mut b1 = ComplexBuilder::new(3, 1);
        b1.add_face(&[0, 1]).unwrap();
        let a = b1.seal();
        let empty = SimplicialComplex::empty(3, 1);
        assert_eq!(
            sandwich_probability(&a, &empty, &p),
            Err(Error::NotASubcomplex { face: Simplex::new(vec![0]) })
        );

        let other = SimplicialComplex::empty(4, 1);
        assert!(matches!(
            sandwich_probability(&a, &other, &p),
            Err(Error::AmbientMismatch { .. })
        ));

        // B = path 0-1, 1-2 has exterior edge {0,2}; A lacking vertex 2
        // breaks the boundary condition.
        let mut b2 = ComplexBuilder::new(3, 1);
        b2.add_face(&[0, 1]).unwrap();
        b2.add_face(&[1, 2]).unwrap();
        let b = b2.seal();
        let mut b3 = ComplexBuilder::new(3, 1);
        b3.add_face(&[0]).unwrap();
        b3.add_face(&[1]).unwrap();
        let a_small = b3.seal();
        assert_eq!(
            sandwich_probability(&a_small, &b, &p),
            Err(Error::ExteriorBoundaryEscapes { face: Simplex::new(vec![0, 2]) })
        );

        // with vertex 2 in A the same pair is fine
        let mut b4 = ComplexBuilder::new(3, 1);
        for v in 0..3 {
            b4.add_face(&[v]).unwrap();
        }
        let a_ok = b4.seal();
        let lp = sandwich_probability(&a_ok, &b, &p).unwrap();
        assert_relative_eq!(lp, 3.0 * 0.9f64.ln() + 0.5f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn sandwich_rejects_inner_above_cap() {
        let p = params_probs(1, 4, 1, vec![0.9, 0.5]);
        let mut b = ComplexBuilder::new(4, 2);
        b.add_face(&[0, 1, 2]).unwrap();
        let tri = b.seal();
        let full = SimplicialComplex::full_skeleton(4, 2);
        assert!(matches!(
            sandwich_probability(&tri, &full, &p),
            Err(Error::InnerAboveModelCap { .. })
        ));
    }

    #[test]
    fn sandwich_counts_exterior_above_inner_cap() {
        // B is a hollow triangle stored as a graph (cap 1); in a model with
        // r = 2 its missing 2-face still contributes a q_2 factor.
        let p = params_probs(1, 3, 2, vec![0.9, 0.5, 0.25]);
        let mut builder = ComplexBuilder::new(3, 1);
        builder.add_face(&[0, 1]).unwrap();
        builder.add_face(&[1, 2]).unwrap();
        builder.add_face(&[0, 2]).unwrap();
        let b = builder.seal();
        let lp = sandwich_probability(&b, &b, &p).unwrap();
        let expected = 3.0 * 0.9f64.ln() + 3.0 * 0.5f64.ln() + 0.75f64.ln();
        assert_relative_eq!(lp, expected, max_relative = 1e-12);
    }

    #[test]
    fn sandwich_hits_negative_infinity_honestly() {
        // q_1 = 0 with a nonzero exterior edge count
        let p = params_probs(1, 3, 1, vec![0.9, 1.0]);
        let mut builder = ComplexBuilder::new(3, 1);
        builder.add_face(&[0, 1]).unwrap();
        builder.add_face(&[1, 2]).unwrap();
        let b = builder.seal();
        let lp = sandwich_probability(&b, &b, &p).unwrap();
        assert_eq!(lp, f64::NEG_INFINITY);
    }
}
