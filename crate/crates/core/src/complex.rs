//! Finite simplicial complexes on a labeled ambient vertex set.
//!
//! A complex lives on the ambient set `{0, .., ambient-1}` and carries a
//! dimension cap `cap`: no face may have dimension above it. Faces are
//! stored per dimension as hash sets of canonical (sorted) vertex lists, and
//! every complex is downward closed by construction. Complexes are immutable
//! once sealed; use [`ComplexBuilder`] to assemble one.

use crate::error::Error;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

/// A single face: a strictly sorted, duplicate-free list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds a simplex from vertex ids in any order.
    ///
    /// Panics on repeated vertices or an empty list; those are programmer
    /// errors at this level (user input is validated by the parsers).
    pub fn new(vertices: impl Into<Vec<usize>>) -> Self {
        let mut v = vertices.into();
        v.sort_unstable();
        assert!(!v.is_empty(), "a simplex needs at least one vertex");
        assert!(v.windows(2).all(|w| w[0] < w[1]), "repeated vertex in simplex");
        Simplex(v)
    }

    pub(crate) fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!v.is_empty());
        Simplex(v)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Dimension: one less than the vertex count.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// All codimension-one faces, i.e. the simplex with one vertex removed.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |skip| {
            let mut v = Vec::with_capacity(self.0.len() - 1);
            v.extend(self.0.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x));
            Simplex(v)
        })
    }

    fn bitmask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }

    fn from_bitmask(mut mask: u64) -> Self {
        let mut v = Vec::with_capacity(mask.count_ones() as usize);
        while mask != 0 {
            let b = mask.trailing_zeros() as usize;
            v.push(b);
            mask &= mask - 1;
        }
        Simplex(v)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// An immutable simplicial complex. See the module docs for conventions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    ambient: usize,
    cap: usize,
    faces: Vec<HashSet<Simplex>>,
}

impl SimplicialComplex {
    /// The complex with no faces at all.
    pub fn empty(ambient: usize, cap: usize) -> Self {
        SimplicialComplex {
            ambient,
            cap,
            faces: vec![HashSet::new(); cap + 1],
        }
    }

    /// The full `cap`-skeleton on the ambient set: every subset of size
    /// `<= cap + 1` is a face.
    pub fn full_skeleton(ambient: usize, cap: usize) -> Self {
        let mut builder = ComplexBuilder::new(ambient, cap);
        let top = cap.min(ambient.saturating_sub(1));
        let mut stack: Vec<Vec<usize>> = (0..ambient).map(|v| vec![v]).collect();
        for face in &stack {
            builder.insert_sorted(face.clone());
        }
        for _ in 0..top {
            let mut next = Vec::new();
            for face in &stack {
                let last = *face.last().unwrap();
                for v in last + 1..ambient {
                    let mut bigger = face.clone();
                    bigger.push(v);
                    builder.insert_sorted(bigger.clone());
                    next.push(bigger);
                }
            }
            stack = next;
        }
        builder.seal()
    }

    /// Size of the ambient vertex set.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension cap the complex was built with.
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Largest dimension with at least one face, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        (0..=self.cap).rev().find(|&d| !self.faces[d].is_empty())
    }

    /// Face counts per dimension; entry `i` counts `i`-faces. The vector
    /// always has length `cap + 1`, trailing zeros included.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|s| s.len()).collect()
    }

    /// Number of faces across all dimensions.
    pub fn total_faces(&self) -> usize {
        self.faces.iter().map(|s| s.len()).sum()
    }

    /// Membership test; the query may be in any vertex order.
    pub fn contains(&self, vertices: &[usize]) -> bool {
        if vertices.is_empty() || vertices.len() > self.cap + 1 {
            return false;
        }
        let mut v = vertices.to_vec();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        self.faces[v.len() - 1].contains(&Simplex(v))
    }

    pub(crate) fn contains_simplex(&self, s: &Simplex) -> bool {
        s.dim() <= self.cap && self.faces[s.dim()].contains(s)
    }

    /// Iterates over the faces of one dimension in unspecified order.
    pub fn faces(&self, dim: usize) -> impl Iterator<Item = &Simplex> {
        self.faces.get(dim).into_iter().flatten()
    }

    /// Faces of one dimension in canonical (lexicographic) order.
    pub fn faces_sorted(&self, dim: usize) -> Vec<Simplex> {
        let mut v: Vec<Simplex> = self.faces(dim).cloned().collect();
        v.sort_unstable();
        v
    }

    /// Present vertices (ids whose singleton is a face), ascending.
    pub fn vertex_list(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.faces[0].iter().map(|s| s.0[0]).collect();
        v.sort_unstable();
        v
    }

    pub fn vertex_present(&self, v: usize) -> bool {
        v < self.ambient && self.faces[0].contains(&Simplex(vec![v]))
    }

    /// Neighbors of `v` in the 1-skeleton.
    ///
    /// Errors when `v` is not a face of the complex.
    pub fn adj(&self, v: usize) -> Result<BTreeSet<usize>, Error> {
        if !self.vertex_present(v) {
            return Err(Error::VertexNotFound { vertex: v });
        }
        let mut out = BTreeSet::new();
        if self.cap >= 1 {
            for e in &self.faces[1] {
                if e.0[0] == v {
                    out.insert(e.0[1]);
                } else if e.0[1] == v {
                    out.insert(e.0[0]);
                }
            }
        }
        Ok(out)
    }

    /// Adjacency bitmasks of the 1-skeleton when the ambient set fits in a
    /// machine word.
    pub(crate) fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.ambient > 64 {
            return None;
        }
        let mut masks = vec![0u64; self.ambient];
        if self.cap >= 1 {
            for e in &self.faces[1] {
                masks[e.0[0]] |= 1 << e.0[1];
                masks[e.0[1]] |= 1 << e.0[0];
            }
        }
        Some(masks)
    }

    /// Exterior faces of one dimension: `dim`-simplices of the ambient
    /// simplex that are not faces but whose whole boundary is. Every vertex
    /// has an empty boundary, so exterior 0-faces are exactly the absent
    /// vertices. Results come back in canonical order.
    pub fn exterior_faces(&self, dim: usize) -> Result<Vec<Simplex>, Error> {
        if dim > self.cap {
            return Err(Error::DimensionOutOfRange { dim, cap: self.cap });
        }
        Ok(self.exterior_faces_unbounded(dim))
    }

    /// Exterior faces with `dim` allowed past the storage cap. A complex
    /// stores nothing above its cap, but simplices missing just above the
    /// top stored level still count as exterior; event probabilities need
    /// them when the model dimension exceeds the cap.
    pub(crate) fn exterior_faces_unbounded(&self, dim: usize) -> Vec<Simplex> {
        if dim == 0 {
            return (0..self.ambient)
                .filter(|&v| !self.vertex_present(v))
                .map(|v| Simplex(vec![v]))
                .collect();
        }
        if self.faces.get(dim - 1).map_or(true, |s| s.is_empty()) {
            return Vec::new();
        }
        let mut out = if let Some(masks) = self.adjacency_masks() {
            self.exterior_faces_masked(dim, &masks)
        } else {
            self.exterior_faces_generic(dim)
        };
        out.sort_unstable();
        out
    }

    fn exterior_faces_masked(&self, dim: usize, adj: &[u64]) -> Vec<Simplex> {
        let below: HashSet<u64> = self.faces[dim - 1].iter().map(|s| s.bitmask()).collect();
        let at: HashSet<u64> = self
            .faces
            .get(dim)
            .map(|set| set.iter().map(|s| s.bitmask()).collect())
            .unwrap_or_default();
        let mut out = Vec::new();
        for f in &self.faces[dim - 1] {
            let fmask = f.bitmask();
            let max = *f.0.last().unwrap();
            for v in max + 1..self.ambient {
                // In a downward-closed complex every pair inside an exterior
                // face of dimension >= 2 must already be an edge, so the
                // adjacency filter is sound. For dim == 1 it is the edge test
                // itself, with presence checked separately.
                if dim >= 2 {
                    if adj[v] & fmask != fmask {
                        continue;
                    }
                } else if !self.vertex_present(v) {
                    continue;
                }
                let cand = fmask | (1 << v);
                if at.contains(&cand) {
                    continue;
                }
                let mut rest = cand;
                let mut boundary_ok = true;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    if !below.contains(&(cand ^ bit)) {
                        boundary_ok = false;
                        break;
                    }
                    rest &= rest - 1;
                }
                if boundary_ok {
                    out.push(Simplex::from_bitmask(cand));
                }
            }
        }
        out
    }

    fn exterior_faces_generic(&self, dim: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        let present: Vec<usize> = self.vertex_list();
        for f in &self.faces[dim - 1] {
            let max = *f.0.last().unwrap();
            for &v in present.iter().filter(|&&v| v > max) {
                let mut cand = f.0.clone();
                cand.push(v);
                let cand = Simplex(cand);
                if self.faces.get(dim).is_some_and(|set| set.contains(&cand)) {
                    continue;
                }
                if cand.facets().all(|fc| self.faces[dim - 1].contains(&fc)) {
                    out.push(cand);
                }
            }
        }
        out
    }

    /// The subcomplex induced on the vertex set `keep`: all faces whose
    /// vertices lie inside it. Ambient set and cap are preserved.
    pub fn induced_subcomplex(&self, keep: &BTreeSet<usize>) -> Result<SimplicialComplex, Error> {
        if let Some(&v) = keep.iter().find(|&&v| v >= self.ambient) {
            return Err(Error::VertexOutOfRange { vertex: v, ambient: self.ambient });
        }
        let faces = self
            .faces
            .iter()
            .map(|set| {
                set.iter()
                    .filter(|s| s.0.iter().all(|v| keep.contains(v)))
                    .cloned()
                    .collect()
            })
            .collect();
        Ok(SimplicialComplex { ambient: self.ambient, cap: self.cap, faces })
    }

    /// Face-wise containment. Ambient sets are not compared.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.first_face_outside(other).is_none()
    }

    /// First face (canonical order) missing from `other`, if any.
    pub fn first_face_outside(&self, other: &SimplicialComplex) -> Option<Simplex> {
        for d in 0..=self.cap {
            if self.faces[d].is_empty() {
                continue;
            }
            if d > other.cap {
                return self.faces_sorted(d).into_iter().next();
            }
            let mut missing: Vec<&Simplex> =
                self.faces[d].iter().filter(|s| !other.faces[d].contains(*s)).collect();
            if !missing.is_empty() {
                missing.sort_unstable();
                return Some(missing[0].clone());
            }
        }
        None
    }

    /// Serializes to the plain text format: a `N r` header line followed by
    /// one face per line (sorted vertex ids, dimension-ascending order).
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.ambient, self.cap);
        for d in 0..=self.cap {
            for face in self.faces_sorted(d) {
                out.push_str(&face.to_string());
                out.push('\n');
            }
        }
        out
    }

    /// Parses the text format. Blank lines and `#` comments are skipped, and
    /// missing subfaces are filled in (the builder closes faces downward).
    pub fn from_text(text: &str) -> Result<SimplicialComplex, Error> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
        let mut parts = header.split_whitespace();
        let ambient: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header: {header:?}")))?;
        let cap: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header: {header:?}")))?;
        if parts.next().is_some() {
            return Err(Error::Parse(format!("bad header: {header:?}")));
        }
        let mut builder = ComplexBuilder::new(ambient, cap);
        for line in lines {
            let mut vertices = Vec::new();
            for tok in line.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex id {tok:?}")))?;
                vertices.push(v);
            }
            let sorted = {
                let mut v = vertices.clone();
                v.sort_unstable();
                if v.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::RepeatedVertices);
                }
                v
            };
            builder.add_face(&sorted)?;
        }
        Ok(builder.seal())
    }
}

/// Accumulates faces (closing them downward) and seals into an immutable
/// complex.
#[derive(Debug, Clone)]
pub struct ComplexBuilder {
    ambient: usize,
    cap: usize,
    faces: Vec<HashSet<Simplex>>,
}

impl ComplexBuilder {
    pub fn new(ambient: usize, cap: usize) -> Self {
        ComplexBuilder {
            ambient,
            cap,
            faces: vec![HashSet::new(); cap + 1],
        }
    }

    /// Adds a face together with all of its subfaces. Vertex order is
    /// irrelevant; ids must fit the ambient set and the dimension cap.
    pub fn add_face(&mut self, vertices: &[usize]) -> Result<&mut Self, Error> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        if v.is_empty() {
            return Err(Error::Parse("empty face line".into()));
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertices);
        }
        if let Some(&bad) = v.iter().find(|&&x| x >= self.ambient) {
            return Err(Error::VertexOutOfRange { vertex: bad, ambient: self.ambient });
        }
        if v.len() > self.cap + 1 {
            return Err(Error::FaceAboveCap { face: Simplex(v), cap: self.cap });
        }
        self.insert_closed(Simplex(v));
        Ok(self)
    }

    fn insert_closed(&mut self, s: Simplex) {
        if self.faces[s.dim()].contains(&s) {
            return;
        }
        if s.dim() > 0 {
            for facet in s.facets() {
                self.insert_closed(facet);
            }
        }
        self.faces[s.dim()].insert(s);
    }

    /// Fast path for callers that guarantee sorted input and insert faces
    /// bottom-up (their boundary is already in).
    pub(crate) fn insert_sorted(&mut self, v: Vec<usize>) {
        debug_assert!(v.len() <= self.cap + 1);
        debug_assert!(v.iter().all(|&x| x < self.ambient));
        self.faces[v.len() - 1].insert(Simplex::from_sorted(v));
    }

    /// Finishes construction. Downward closure is verified in debug builds;
    /// `add_face` maintains it, `insert_sorted` callers promise it.
    pub fn seal(self) -> SimplicialComplex {
        let complex = SimplicialComplex {
            ambient: self.ambient,
            cap: self.cap,
            faces: self.faces,
        };
        debug_assert!(verify_closure(&complex), "builder produced a non-closed complex");
        complex
    }
}

fn verify_closure(k: &SimplicialComplex) -> bool {
    for d in 1..=k.cap {
        for face in k.faces(d) {
            if !face.facets().all(|f| k.faces[d - 1].contains(&f)) {
                return false;
            }
        }
    }
    true
}

/// Flag completion of a graph: every clique of the 1-skeleton of size
/// `<= cap + 1` becomes a face. The input must have faces in dimensions 0
/// and 1 only.
pub fn flag_completion(graph: &SimplicialComplex, cap: usize) -> SimplicialComplex {
    assert!(
        graph.dim().unwrap_or(0) <= 1,
        "flag completion takes a graph, got a complex of dimension {:?}",
        graph.dim()
    );
    let mut builder = ComplexBuilder::new(graph.ambient(), cap);
    for v in graph.vertex_list() {
        builder.insert_sorted(vec![v]);
    }
    if cap == 0 {
        return builder.seal();
    }
    if let Some(adj) = graph.adjacency_masks() {
        // Level expansion over cliques: extend each clique by a vertex above
        // its maximum that is adjacent to all current members.
        let mut level: Vec<(Vec<usize>, u64)> =
            graph.vertex_list().into_iter().map(|v| (vec![v], adj[v])).collect();
        for d in 1..=cap {
            let mut next = Vec::new();
            for (face, common) in &level {
                let max = *face.last().unwrap();
                let mut ext = if max + 1 >= 64 { 0 } else { (common >> (max + 1)) << (max + 1) };
                while ext != 0 {
                    let v = ext.trailing_zeros() as usize;
                    ext &= ext - 1;
                    let mut bigger = face.clone();
                    bigger.push(v);
                    builder.insert_sorted(bigger.clone());
                    if d < cap {
                        next.push((bigger, common & adj[v]));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
    } else {
        let present = graph.vertex_list();
        let adj: Vec<BTreeSet<usize>> = (0..graph.ambient())
            .map(|v| if graph.vertex_present(v) { graph.adj(v).unwrap() } else { BTreeSet::new() })
            .collect();
        let mut level: Vec<Vec<usize>> = present.iter().map(|&v| vec![v]).collect();
        for d in 1..=cap {
            let mut next = Vec::new();
            for face in &level {
                let max = *face.last().unwrap();
                for &v in adj[max].iter().filter(|&&v| v > max) {
                    if face.iter().all(|&u| adj[u].contains(&v)) {
                        let mut bigger = face.clone();
                        bigger.push(v);
                        builder.insert_sorted(bigger.clone());
                        if d < cap {
                            next.push(bigger);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
    }
    builder.seal()
}
