//! The seed pattern pair and the combinatorial intersection predicates.
//!
//! For genus `g` the pattern lives on `2g + 4` labeled vertices: a polygon
//! ring `v_0 .. v_{2g+1}` (ids `0 .. 2g+1`) plus two apex vertices `w_0`
//! (id `2g+2`) and `w_1` (id `2g+3`). The lower graph `A` joins ring
//! vertices at circular distance above 1 and each apex to the ring
//! positions of its parity; the upper bound `B` is the flag complex over
//! `A` plus the apex-apex edge and the mixed-parity apex edges. The ring
//! sides themselves stay outside both, which is what makes the pair a
//! sandwich event with a nontrivial complement part.
//!
//! The predicates mirror a curve-complex dictionary: two vertices
//! "intersect zero times" when joined, and "intersect once" when a
//! five-vertex star configuration plus an exchange through a
//! top-dimensional simplex witnesses it. A closed chain is a cyclic
//! sequence pairwise intersecting once consecutively and zero otherwise.

use crate::complex::{flag_completion, ComplexBuilder, Simplex, SimplicialComplex};
use crate::error::Error;
use itertools::Itertools;
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

/// The five-vertex configuration used by [`intersection_one`] clause 1.
///
/// A simple graph on the abstract labels `1..=5`. The shipped default is
/// the pentagon `1-3-5-2-4-1`; the true configuration is an assumption and
/// can be overridden from the parameter file, so every consumer takes it
/// explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarPattern {
    edges: BTreeSet<(u8, u8)>,
}

impl StarPattern {
    pub fn new(edges: &[(u8, u8)]) -> Result<StarPattern, Error> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::IdenticalVertices);
            }
            if !(1..=5).contains(&u) || !(1..=5).contains(&v) {
                return Err(Error::InvalidParams(format!(
                    "star pattern vertices are labeled 1..=5, got {u}-{v}"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(StarPattern { edges: set })
    }

    pub fn has_edge(&self, u: u8, v: u8) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        self.edges.iter().copied()
    }
}

impl Default for StarPattern {
    fn default() -> StarPattern {
        StarPattern::new(&[(1, 3), (3, 5), (5, 2), (2, 4), (4, 1)]).unwrap()
    }
}

impl fmt::Display for StarPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (u, v) in &self.edges {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for StarPattern {
    type Err = Error;

    /// Parses an edge list like `1-3,3-5,5-2,2-4,4-1`.
    fn from_str(s: &str) -> Result<StarPattern, Error> {
        let mut edges = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (u, v) = part.split_once('-').ok_or_else(|| {
                Error::Parse(format!("star pattern edge {part:?} is not of the form u-v"))
            })?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad star pattern vertex {t:?}")))
            };
            edges.push((parse(u)?, parse(v)?));
        }
        StarPattern::new(&edges)
    }
}

/// The genus-`g` pattern: lower graph `a`, upper flag complex `b`, on a
/// shared ambient set of `2g + 4` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternPair {
    pub g: u32,
    pub a: SimplicialComplex,
    pub b: SimplicialComplex,
}

impl PatternPair {
    /// Ring length `2g + 2`.
    pub fn ring_len(&self) -> usize {
        2 * self.g as usize + 2
    }

    pub fn w0(&self) -> usize {
        self.ring_len()
    }

    pub fn w1(&self) -> usize {
        self.ring_len() + 1
    }
}

/// Builds the pattern pair for genus `g >= 1`.
///
/// `b` is flag-completed without a dimension cut (its top dimension is
/// `g + 2`, attained by the two alternating half-rings joined to both
/// apexes), so the pair is usable under any model dimension cap.
pub fn build_pattern(g: u32) -> Result<PatternPair, Error> {
    if g < 1 {
        return Err(Error::GenusTooSmall(g));
    }
    let ring = 2 * g as usize + 2;
    let n = ring + 2;
    let (w0, w1) = (ring, ring + 1);

    let mut a = ComplexBuilder::new(n, 1);
    let mut b = ComplexBuilder::new(n, 1);
    for v in 0..n {
        a.add_face(&[v])?;
        b.add_face(&[v])?;
    }
    for i in 0..ring {
        for j in i + 1..ring {
            if (j - i).min(ring - (j - i)) > 1 {
                a.add_face(&[i, j])?;
                b.add_face(&[i, j])?;
            }
        }
    }
    for j in 0..ring {
        let same_parity = if j % 2 == 0 { w0 } else { w1 };
        let other = if j % 2 == 0 { w1 } else { w0 };
        a.add_face(&[j, same_parity])?;
        b.add_face(&[j, same_parity])?;
        b.add_face(&[j, other])?;
    }
    b.add_face(&[w0, w1])?;

    let b = flag_completion(&b.seal(), n - 1);
    Ok(PatternPair { g, a: a.seal(), b })
}

fn require_present(gamma: &SimplicialComplex, v: usize) -> Result<(), Error> {
    if gamma.vertex_present(v) {
        Ok(())
    } else {
        Err(Error::VertexNotFound { vertex: v })
    }
}

/// Whether `u` and `v` span an edge. The name follows the geometric
/// dictionary: joined vertices stand for curves that can be realized
/// disjointly.
pub fn intersection_zero(gamma: &SimplicialComplex, u: usize, v: usize) -> Result<bool, Error> {
    if u == v {
        return Err(Error::IdenticalVertices);
    }
    require_present(gamma, u)?;
    require_present(gamma, v)?;
    Ok(gamma.contains(&[u, v]))
}

/// `sigma` with `v` swapped out for `w`, as a sorted vertex list.
fn swapped(sigma: &[usize], v: usize, w: usize) -> Vec<usize> {
    let mut out: Vec<usize> = sigma.iter().copied().filter(|&x| x != v).collect();
    out.push(w);
    out.sort_unstable();
    out
}

fn require_top_dimensional(gamma: &SimplicialComplex, sigma: &Simplex) -> Result<usize, Error> {
    let top = gamma
        .dim()
        .ok_or_else(|| Error::InvalidParams("the complex has no faces at all".into()))?;
    if sigma.dim() != top || !gamma.contains(sigma.vertices()) {
        return Err(Error::InvalidParams(format!(
            "simplex {sigma} is not a top-dimensional face (top dimension is {top})"
        )));
    }
    Ok(top)
}

/// Whether `v` inside the top-dimensional `sigma` can be exchanged with the
/// outside vertex `w`: the swap must again be a face.
pub fn exchangeable(
    gamma: &SimplicialComplex,
    v: usize,
    w: usize,
    sigma: &Simplex,
) -> Result<bool, Error> {
    require_top_dimensional(gamma, sigma)?;
    if !sigma.vertices().contains(&v) {
        return Err(Error::InvalidParams(format!("vertex {v} does not lie in {sigma}")));
    }
    if sigma.vertices().contains(&w) {
        return Err(Error::InvalidParams(format!("vertex {w} already lies in {sigma}")));
    }
    Ok(gamma.contains(&swapped(sigma.vertices(), v, w)))
}

/// Exchange partners of each vertex of `sigma`: outside vertices whose swap
/// stays a face.
fn exchange_partners(gamma: &SimplicialComplex, sigma: &[usize]) -> Vec<Vec<usize>> {
    let present = gamma.vertex_list();
    sigma
        .iter()
        .map(|&u| {
            present
                .iter()
                .copied()
                .filter(|w| !sigma.contains(w))
                .filter(|&w| gamma.contains(&swapped(sigma, u, w)))
                .collect()
        })
        .collect()
}

/// The adjacency graph of a top-dimensional simplex: its vertices, with
/// `u1, u2` joined when exchange partners `w1 != w2` exist whose pair is
/// not a face of `gamma`.
///
/// Returned as a 1-dimensional complex on the ambient set of `gamma`, with
/// exactly `sigma`'s vertices present.
pub fn adjacency_graph(
    gamma: &SimplicialComplex,
    sigma: &Simplex,
) -> Result<SimplicialComplex, Error> {
    require_top_dimensional(gamma, sigma)?;
    let sv = sigma.vertices();
    let partners = exchange_partners(gamma, sv);
    let mut out = ComplexBuilder::new(gamma.ambient(), 1);
    for &u in sv {
        out.add_face(&[u])?;
    }
    for i in 0..sv.len() {
        for j in i + 1..sv.len() {
            let joined = partners[i].iter().any(|&w1| {
                partners[j]
                    .iter()
                    .any(|&w2| w1 != w2 && !gamma.contains(&[w1, w2]))
            });
            if joined {
                out.add_face(&[sv[i], sv[j]])?;
            }
        }
    }
    Ok(out.seal())
}

/// Whether `v1` is a leaf of the adjacency graph of `sigma` whose unique
/// neighbor is `v2`.
pub fn separates_torus(
    gamma: &SimplicialComplex,
    sigma: &Simplex,
    v1: usize,
    v2: usize,
) -> Result<bool, Error> {
    if v1 == v2 {
        return Err(Error::IdenticalVertices);
    }
    for v in [v1, v2] {
        if !sigma.vertices().contains(&v) {
            return Err(Error::InvalidParams(format!("vertex {v} does not lie in {sigma}")));
        }
    }
    let graph = adjacency_graph(gamma, sigma)?;
    let neighbors = graph.adj(v1)?;
    Ok(neighbors.len() == 1 && neighbors.contains(&v2))
}

/// Clause 1 of [`intersection_one`]: the pairs among the five chosen
/// vertices are edges exactly where the star pattern prescribes one.
fn star_configuration_matches(
    gamma: &SimplicialComplex,
    five: &[usize; 5],
    star: &StarPattern,
) -> bool {
    for i in 0..5 {
        for j in i + 1..5 {
            let here = gamma.contains(&[five[i], five[j]]);
            if here != star.has_edge(i as u8 + 1, j as u8 + 1) {
                return false;
            }
        }
    }
    true
}

/// Whether `v1` and `v2` "intersect once": some distinct `v3, v4, v5` and
/// top-dimensional `sigma` satisfy, together,
///
/// 1. the five vertices induce exactly the configured star pattern,
/// 2. `v1, v4` lie in `sigma`,
/// 3. `v1` is a leaf of the adjacency graph of `sigma` with unique
///    neighbor `v4`,
/// 4. `v1` can be exchanged with `v2` through `sigma`.
///
/// The definition is asymmetric in `(v1, v2)`; see [`is_closed_chain`] for
/// how chains symmetrize it.
pub fn intersection_one(
    gamma: &SimplicialComplex,
    v1: usize,
    v2: usize,
    star: &StarPattern,
) -> Result<bool, Error> {
    if v1 == v2 {
        return Err(Error::IdenticalVertices);
    }
    require_present(gamma, v1)?;
    require_present(gamma, v2)?;
    let Some(top) = gamma.dim() else {
        return Ok(false);
    };
    let present = gamma.vertex_list();
    for sigma in gamma.faces_sorted(top) {
        let sv = sigma.vertices();
        // clause 2 for v1, and the exchange precondition v2 outside sigma
        if !sv.contains(&v1) || sv.contains(&v2) {
            continue;
        }
        // clause 4
        if !gamma.contains(&swapped(sv, v1, v2)) {
            continue;
        }
        // clause 3 pins v4 down as the unique adjacency neighbor of v1
        let graph = adjacency_graph(gamma, &sigma)?;
        let neighbors = graph.adj(v1)?;
        if neighbors.len() != 1 {
            continue;
        }
        let v4 = *neighbors.iter().next().unwrap();
        for &v3 in &present {
            if v3 == v1 || v3 == v2 || v3 == v4 {
                continue;
            }
            for &v5 in &present {
                if v5 == v1 || v5 == v2 || v5 == v3 || v5 == v4 {
                    continue;
                }
                if star_configuration_matches(gamma, &[v1, v2, v3, v4, v5], star) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Whether the cyclic sequence `seq` forms a closed chain: vertices at
/// circular distance 1 intersect once (in at least one direction — the
/// underlying predicate is asymmetric), all other pairs intersect zero.
pub fn is_closed_chain(
    gamma: &SimplicialComplex,
    seq: &[usize],
    star: &StarPattern,
) -> Result<bool, Error> {
    if seq.len() < 3 {
        return Err(Error::InvalidParams(format!(
            "a closed chain needs at least 3 vertices, got {}",
            seq.len()
        )));
    }
    let distinct: HashSet<usize> = seq.iter().copied().collect();
    if distinct.len() != seq.len() {
        return Err(Error::RepeatedVertices);
    }
    for &v in seq {
        require_present(gamma, v)?;
    }
    let k = seq.len();
    for i in 0..k {
        for j in i + 1..k {
            let d = (j - i).min(k - (j - i));
            if d == 1 {
                if !intersection_one(gamma, seq[i], seq[j], star)?
                    && !intersection_one(gamma, seq[j], seq[i], star)?
                {
                    return Ok(false);
                }
            } else if !intersection_zero(gamma, seq[i], seq[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Occurrence counts returned by [`count_pattern_occurrences`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PatternCounts {
    /// Vertex subsets of size `2g + 4` admitting at least one valid
    /// labeling.
    pub subsets: u64,
    /// Valid labelings summed over all subsets (the ordered count).
    pub labelings: u64,
    /// Subsets from `subsets` that additionally lie inside some clique of
    /// the requested size in the 1-skeleton. A valid labeling forces the
    /// ring sides of its subset to be non-edges, so this is zero unless the
    /// pattern degenerates; it is kept because the two counting readings
    /// differ in the source definitions.
    pub subsets_inside_clique: u64,
}

fn edge_matrix(graph: &SimplicialComplex, m: usize) -> Vec<Vec<bool>> {
    let mut mat = vec![vec![false; m]; m];
    for e in graph.faces(1) {
        let vs = e.vertices();
        mat[vs[0]][vs[1]] = true;
        mat[vs[1]][vs[0]] = true;
    }
    mat
}

fn count_labelings(
    t: &[usize],
    a_edge: &[Vec<bool>],
    b_edge: &[Vec<bool>],
    yadj: &[HashSet<usize>],
) -> u64 {
    fn rec(
        i: usize,
        t: &[usize],
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        a_edge: &[Vec<bool>],
        b_edge: &[Vec<bool>],
        yadj: &[HashSet<usize>],
    ) -> u64 {
        if i == t.len() {
            return 1;
        }
        let mut total = 0;
        for pos in 0..t.len() {
            if used[pos] {
                continue;
            }
            let target = t[pos];
            let ok = (0..i).all(|j| {
                let other = t[phi[j]];
                let joined = yadj[other].contains(&target);
                if a_edge[j][i] {
                    joined
                } else if !b_edge[j][i] {
                    !joined
                } else {
                    true
                }
            });
            if ok {
                phi.push(pos);
                used[pos] = true;
                total += rec(i + 1, t, phi, used, a_edge, b_edge, yadj);
                used[pos] = false;
                phi.pop();
            }
        }
        total
    }
    let mut phi = Vec::with_capacity(t.len());
    let mut used = vec![false; t.len()];
    rec(0, t, &mut phi, &mut used, a_edge, b_edge, yadj)
}

fn lies_in_clique(
    t: &[usize],
    clique_size: usize,
    yadj: &[HashSet<usize>],
    present: &[usize],
) -> bool {
    let pairwise = t
        .iter()
        .enumerate()
        .all(|(i, &u)| t[i + 1..].iter().all(|v| yadj[u].contains(v)));
    if !pairwise {
        return false;
    }
    let need = clique_size - t.len();
    if need == 0 {
        return true;
    }
    let candidates: Vec<usize> = present
        .iter()
        .copied()
        .filter(|v| !t.contains(v) && t.iter().all(|&u| yadj[u].contains(v)))
        .collect();
    fn extend(candidates: &[usize], need: usize, yadj: &[HashSet<usize>]) -> bool {
        if need == 0 {
            return true;
        }
        if candidates.len() < need {
            return false;
        }
        for (i, &c) in candidates.iter().enumerate() {
            let rest: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|v| yadj[c].contains(v))
                .collect();
            if extend(&rest, need - 1, yadj) {
                return true;
            }
        }
        false
    }
    extend(&candidates, need, yadj)
}

/// Counts embeddings of the genus-`g` pattern into `y`: subsets `T` of
/// `2g + 4` present vertices together with bijective labelings sending
/// every `a`-edge onto an edge of `y` and every non-`b`-pair onto a
/// non-edge (pairs of `b \ a` are unconstrained).
///
/// `clique_size >= 2g + 4` selects the side count of subsets lying inside
/// a clique of that size.
pub fn count_pattern_occurrences(
    y: &SimplicialComplex,
    g: u32,
    clique_size: usize,
) -> Result<PatternCounts, Error> {
    let pat = build_pattern(g)?;
    let m = 2 * g as usize + 4;
    if clique_size < m {
        return Err(Error::CliqueSizeTooSmall { clique_size, needed: m });
    }
    let a_edge = edge_matrix(&pat.a, m);
    let b_edge = edge_matrix(&pat.b, m);
    let mut yadj: Vec<HashSet<usize>> = vec![HashSet::new(); y.ambient()];
    for e in y.faces(1) {
        let vs = e.vertices();
        yadj[vs[0]].insert(vs[1]);
        yadj[vs[1]].insert(vs[0]);
    }
    let present = y.vertex_list();
    let mut counts = PatternCounts { subsets: 0, labelings: 0, subsets_inside_clique: 0 };
    for t in present.iter().copied().combinations(m) {
        let lab = count_labelings(&t, &a_edge, &b_edge, &yadj);
        if lab > 0 {
            counts.subsets += 1;
            counts.labelings += lab;
            if lies_in_clique(&t, clique_size, &yadj, &present) {
                counts.subsets_inside_clique += 1;
            }
        }
    }
    Ok(counts)
}
