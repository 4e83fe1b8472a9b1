//! Log-space combinatorial helpers shared by the model and expectation code.

/// Natural log of `m!`, by direct summation. Intended for small `m`
/// (face counts of patterns, clique sizes), not astronomical arguments.
pub fn ln_factorial(m: u64) -> f64 {
    (2..=m).map(|k| (k as f64).ln()).sum()
}

/// Natural log of the binomial coefficient `C(n, m)`.
///
/// Returns `-inf` when `m > n` (the coefficient is zero). Computed as a sum
/// of `ln((n - m + j) / j)` terms, which stays accurate for `n >> m` where a
/// log-gamma difference would cancel.
pub fn ln_binomial(n: u64, m: u64) -> f64 {
    if m > n {
        return f64::NEG_INFINITY;
    }
    let m = m.min(n - m);
    (1..=m)
        .map(|j| ((n - m + j) as f64).ln() - (j as f64).ln())
        .sum()
}

/// `C(k, i)` as a float, with the usual convention that the value is zero
/// for `i > k`. Exact until the intermediate product exceeds 2^53.
pub fn binomial_f64(k: u64, i: u64) -> f64 {
    if i > k {
        return 0.0;
    }
    let i = i.min(k - i);
    let mut acc = 1.0f64;
    for j in 1..=i {
        acc = acc * ((k - i + j) as f64) / (j as f64);
    }
    acc
}

/// Pairwise (cascade) summation. Order-stable and considerably more accurate
/// than a running sum for long Monte Carlo value vectors.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}
