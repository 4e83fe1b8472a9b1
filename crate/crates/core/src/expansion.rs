//! Rigid expansions on the 1-skeleton of a complex.
//!
//! A vertex set `A` determines the vertex `v` when `v` is the only common
//! neighbor of every member of `A`. One expansion step adds every vertex
//! outside the current set `Y` determined by some subset of `Y`; iterating
//! reaches a fixpoint, and `Y` seeds the complex when that fixpoint is the
//! whole vertex set.
//!
//! The step is computed without subset search. For `v` outside `Y`, let
//! `A_v = Y ∩ adj(v)`. If any `A ⊆ Y` determines `v` then `A ⊆ A_v`, so the
//! common neighborhood of `A_v` is squeezed between `{v}` and the one of
//! `A`; hence `v` gets added exactly when `A_v` is nonempty and its common
//! neighborhood is `{v}`. `A_v` is recorded as the witness.

use crate::complex::SimplicialComplex;
use crate::error::Error;
use serde::Serialize;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// Determining sets found in one expansion stage, keyed by added vertex.
pub type Witnesses = BTreeMap<usize, BTreeSet<usize>>;

/// The full history of an iterated expansion.
///
/// `stages[0]` is the starting set; each later stage is the expansion of its
/// predecessor. Iteration stops when a stage equals its predecessor or
/// reaches the whole vertex set; `truncated` flags an abort at `max_stages`
/// steps instead. `witnesses[k]` explains the vertices added in
/// `stages[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionTrace {
    pub stages: Vec<BTreeSet<usize>>,
    pub witnesses: Vec<Witnesses>,
    pub truncated: bool,
}

impl ExpansionTrace {
    /// The last computed stage.
    pub fn final_stage(&self) -> &BTreeSet<usize> {
        self.stages.last().expect("a trace has at least one stage")
    }
}

fn adjacency_table(gamma: &SimplicialComplex) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); gamma.ambient()];
    for e in gamma.faces(1) {
        let vs = e.vertices();
        adj[vs[0]].insert(vs[1]);
        adj[vs[1]].insert(vs[0]);
    }
    adj
}

fn check_present(gamma: &SimplicialComplex, set: &BTreeSet<usize>) -> Result<(), Error> {
    match set.iter().find(|&&v| !gamma.vertex_present(v)) {
        Some(&vertex) => Err(Error::ExpansionStartNotPresent { vertex }),
        None => Ok(()),
    }
}

fn common_neighborhood(adj: &[BTreeSet<usize>], set: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut iter = set.iter();
    let first = iter.next().expect("caller checks nonemptiness");
    let mut out = adj[*first].clone();
    for &w in iter {
        out = out.intersection(&adj[w]).copied().collect();
        if out.is_empty() {
            break;
        }
    }
    out
}

/// The vertex determined by `A`, if the common neighborhood of `A` in the
/// 1-skeleton of `gamma` is a singleton.
///
/// `A` must be a nonempty set of vertices of `gamma`: the common
/// neighborhood of an empty family would be the whole vertex set, which
/// pins down nothing. Since adjacency is irreflexive the result is never a
/// member of `A` itself.
pub fn uniquely_determined(
    gamma: &SimplicialComplex,
    a: &BTreeSet<usize>,
) -> Result<Option<usize>, Error> {
    if a.is_empty() {
        return Err(Error::EmptyDeterminingSet);
    }
    if let Some(&vertex) = a.iter().find(|&&v| !gamma.vertex_present(v)) {
        return Err(Error::VertexNotFound { vertex });
    }
    let adj = adjacency_table(gamma);
    let common = common_neighborhood(&adj, a);
    if common.len() == 1 {
        Ok(common.into_iter().next())
    } else {
        Ok(None)
    }
}

/// One expansion stage: `Y` together with every vertex determined by a
/// subset of `Y`, plus one witness per addition.
pub fn expand_once(
    gamma: &SimplicialComplex,
    y: &BTreeSet<usize>,
) -> Result<(BTreeSet<usize>, Witnesses), Error> {
    check_present(gamma, y)?;
    let adj = adjacency_table(gamma);
    let mut next = y.clone();
    let mut witnesses = Witnesses::new();
    for v in gamma.vertex_list() {
        if y.contains(&v) {
            continue;
        }
        let a_v: BTreeSet<usize> = adj[v].intersection(y).copied().collect();
        if a_v.is_empty() {
            continue;
        }
        let common = common_neighborhood(&adj, &a_v);
        if common.len() == 1 && common.contains(&v) {
            next.insert(v);
            witnesses.insert(v, a_v);
        }
    }
    Ok((next, witnesses))
}

/// Iterates [`expand_once`] from `y`, recording every stage.
///
/// Stops as soon as a stage covers all vertices of `gamma` or repeats its
/// predecessor; gives up after `max_stages` applications and flags the
/// trace as truncated. The trace never holds more than
/// `|V(gamma)| - |y| + 1` stages.
pub fn expand_to_fixpoint(
    gamma: &SimplicialComplex,
    y: &BTreeSet<usize>,
    max_stages: usize,
) -> Result<ExpansionTrace, Error> {
    if max_stages < 1 {
        return Err(Error::InvalidParams("max_stages must be at least 1".into()));
    }
    check_present(gamma, y)?;
    let full: BTreeSet<usize> = gamma.vertex_list().into_iter().collect();
    let mut stages = vec![y.clone()];
    let mut witnesses = Vec::new();
    let mut truncated = false;
    while *stages.last().unwrap() != full {
        if witnesses.len() == max_stages {
            truncated = true;
            break;
        }
        let (next, w) = expand_once(gamma, stages.last().unwrap())?;
        let repeat = next == *stages.last().unwrap();
        stages.push(next);
        witnesses.push(w);
        if repeat {
            break;
        }
    }
    Ok(ExpansionTrace { stages, witnesses, truncated })
}

/// Whether iterated expansions from `y` exhaust the vertex set of `gamma`.
pub fn is_seed(gamma: &SimplicialComplex, y: &BTreeSet<usize>) -> Result<bool, Error> {
    let trace = expand_to_fixpoint(gamma, y, gamma.ambient() + 1)?;
    let full: BTreeSet<usize> = gamma.vertex_list().into_iter().collect();
    Ok(!trace.truncated && *trace.final_stage() == full)
}
