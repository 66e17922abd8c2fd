//! Commuting graphs of matrix semirings over finite semirings: vertex
//! enumeration, materialized or implicit adjacency, BFS distances,
//! components, exact diameters, and scan-based distance-lower-bound
//! certificates.
//!
//! Vertex identity is the base-k row-major integer code of a matrix, so all
//! orderings below are the lexicographic entry order. Parallel passes
//! partition index ranges and fold results in ascending order; output never
//! depends on the worker count.

use std::sync::Arc;

use rayon::prelude::*;

use crate::centralizer::{center_codes, checked_space, commutes_entries, parallel_filter_codes};
use crate::error::Error;
use crate::matrix::{decode_entries, BitMatrix, FinMatrix};
use crate::semiring::{ElementId, SemiringTable};
use crate::Result;

/// Resource limits for graph construction and exhaustive scans.
#[derive(Debug, Clone)]
pub struct GraphBudget {
    pub max_materialized_vertices: usize,
    pub memory_cap_bytes: u64,
    pub allow_large: bool,
    pub max_enumeration: u64,
}

/// Adjacency footprints above this require [`GraphBudget::allow_large`].
pub const LARGE_ADJACENCY_BYTES: u64 = 256 * 1024 * 1024;

impl Default for GraphBudget {
    fn default() -> Self {
        GraphBudget {
            max_materialized_vertices: 1 << 20,
            memory_cap_bytes: 1024 * 1024 * 1024,
            allow_large: false,
            max_enumeration: 1 << 24,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildMode {
    Materialized,
    Implicit,
}

/// Decoded entry cache plus an optional word-packed form for Boolean tables.
enum VertexKernel {
    /// One 64-bit matrix word per vertex (structurally Boolean tables, n <= 8).
    Bits(Vec<u64>),
    /// Flat row-major entries, n*n bytes per vertex.
    Table(Vec<ElementId>),
}

enum AdjacencyStore {
    Materialized { rows: Vec<u64>, words: usize },
    Implicit,
}

/// Path length or unreachability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// A distance or diameter value with the vertex pair realizing it and, when
/// finite, a shortest path between them (as vertex codes).
#[derive(Debug, Clone)]
pub struct DistanceResult {
    pub value: Distance,
    pub endpoints: (u64, u64),
    pub witness_path: Option<Vec<u64>>,
}

/// Evidence from a neighborhood-disjointness scan: if `holds`, every path
/// between the endpoints has length at least 4.
#[derive(Debug, Clone)]
pub struct GeFourCertificate {
    pub holds: bool,
    pub neighborhood_a: u64,
    pub neighborhood_b: u64,
    pub cross_pairs_checked: u64,
    pub scanned: u64,
    /// On failure: a shared neighbor `(c, c)` or a commuting cross pair `(u, v)`.
    pub counterexample: Option<(u64, u64)>,
}

pub struct CommutingGraph {
    semiring: Arc<SemiringTable>,
    n: usize,
    codes: Vec<u64>,
    center: Vec<u64>,
    kernel: VertexKernel,
    adjacency: AdjacencyStore,
}

fn is_boolean_table(t: &SemiringTable) -> bool {
    t.order() == 2 && t.add_table() == [0, 1, 1, 1] && t.mul_table() == [0, 0, 0, 1]
}

impl CommutingGraph {
    /// Commuting graph of all of M_n(S) minus its center.
    pub fn build(
        semiring: Arc<SemiringTable>,
        n: usize,
        mode: BuildMode,
        budget: &GraphBudget,
    ) -> Result<CommutingGraph> {
        let space = checked_space(&semiring, n, budget.max_enumeration)?;
        let center = center_codes(&semiring, n, budget.max_enumeration)?;
        let mut codes = Vec::with_capacity(space as usize - center.len());
        let mut excluded = center.iter().copied().peekable();
        for code in 0..space {
            if excluded.peek() == Some(&code) {
                excluded.next();
            } else {
                codes.push(code);
            }
        }
        Self::assemble(semiring, n, codes, center, mode, budget)
    }

    /// Commuting graph of a subset T of M_n(S); vertices are the members of
    /// T that fail to commute with some other member.
    pub fn from_ground_set(
        semiring: Arc<SemiringTable>,
        n: usize,
        ground: &[u64],
        mode: BuildMode,
        budget: &GraphBudget,
    ) -> Result<CommutingGraph> {
        let space = checked_space(&semiring, n, budget.max_enumeration)?;
        let mut sorted = ground.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.last().is_some_and(|&c| c >= space) {
            return Err(Error::Domain(format!(
                "ground set contains code {} outside the {} matrices of the space",
                sorted.last().unwrap(),
                space
            )));
        }
        let nn = n * n;
        let k = semiring.order();
        let mut cache = vec![0 as ElementId; sorted.len() * nn];
        for (chunk, &code) in cache.chunks_mut(nn).zip(&sorted) {
            decode_entries(k, code, chunk);
        }
        let table = &*semiring;
        let central: Vec<u64> = sorted
            .iter()
            .enumerate()
            .filter(|&(i, _)| {
                (0..sorted.len()).all(|j| {
                    commutes_entries(table, n, &cache[i * nn..i * nn + nn], &cache[j * nn..j * nn + nn])
                })
            })
            .map(|(_, &c)| c)
            .collect();
        let codes: Vec<u64> = sorted
            .iter()
            .copied()
            .filter(|c| central.binary_search(c).is_err())
            .collect();
        Self::assemble(semiring, n, codes, central, mode, budget)
    }

    fn assemble(
        semiring: Arc<SemiringTable>,
        n: usize,
        codes: Vec<u64>,
        center: Vec<u64>,
        mode: BuildMode,
        budget: &GraphBudget,
    ) -> Result<CommutingGraph> {
        let v = codes.len();
        let k = semiring.order();
        let nn = n * n;
        let kernel = if is_boolean_table(&semiring) && n <= 8 {
            let words = codes
                .iter()
                .map(|&c| BitMatrix::from_code(n, c).expect("code in range").bits())
                .collect();
            VertexKernel::Bits(words)
        } else {
            let mut cache = vec![0 as ElementId; v * nn];
            for (chunk, &code) in cache.chunks_mut(nn).zip(&codes) {
                decode_entries(k, code, chunk);
            }
            VertexKernel::Table(cache)
        };
        let mut graph = CommutingGraph {
            semiring,
            n,
            codes,
            center,
            kernel,
            adjacency: AdjacencyStore::Implicit,
        };
        if mode == BuildMode::Materialized {
            if v > budget.max_materialized_vertices {
                return Err(Error::Budget(format!(
                    "{v} vertices exceed the materialized cap {}; use implicit mode",
                    budget.max_materialized_vertices
                )));
            }
            let words = v.div_ceil(64);
            let bytes = v as u64 * words as u64 * 8;
            if bytes > budget.memory_cap_bytes {
                return Err(Error::Budget(format!(
                    "materialized adjacency needs {bytes} bytes, over the memory cap {}; use implicit mode",
                    budget.memory_cap_bytes
                )));
            }
            if bytes > LARGE_ADJACENCY_BYTES && !budget.allow_large {
                return Err(Error::Budget(format!(
                    "materialized adjacency needs {bytes} bytes; pass the large-graph opt-in or use implicit mode"
                )));
            }
            graph.materialize(words);
        }
        Ok(graph)
    }

    fn materialize(&mut self, words: usize) {
        let v = self.codes.len();
        let mut rows = vec![0u64; v * words];
        if v == 0 {
            self.adjacency = AdjacencyStore::Materialized { rows, words };
            return;
        }
        rows.par_chunks_mut(words)
            .enumerate()
            .for_each(|(i, row)| {
                for j in (i + 1)..v {
                    if self.commute_by_index(i, j) {
                        row[j / 64] |= 1u64 << (j % 64);
                    }
                }
            });
        // Mirror the strict upper triangle.
        for i in 0..v {
            for w in 0..words {
                let mut bits = rows[i * words + w];
                while bits != 0 {
                    let j = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if j > i {
                        rows[j * words + i / 64] |= 1u64 << (i % 64);
                    }
                }
            }
        }
        self.adjacency = AdjacencyStore::Materialized { rows, words };
    }

    #[inline]
    fn commute_by_index(&self, i: usize, j: usize) -> bool {
        match &self.kernel {
            VertexKernel::Bits(v) => {
                BitMatrix::new(self.n, v[i]).expect("cached word").commutes(
                    BitMatrix::new(self.n, v[j]).expect("cached word"),
                )
            }
            VertexKernel::Table(cache) => {
                let nn = self.n * self.n;
                commutes_entries(
                    &self.semiring,
                    self.n,
                    &cache[i * nn..i * nn + nn],
                    &cache[j * nn..j * nn + nn],
                )
            }
        }
    }

    pub fn semiring(&self) -> &Arc<SemiringTable> {
        &self.semiring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.codes.len()
    }

    /// Vertex codes in ascending order.
    pub fn vertex_codes(&self) -> &[u64] {
        &self.codes
    }

    /// Codes of the excluded central matrices, ascending.
    pub fn center_codes(&self) -> &[u64] {
        &self.center
    }

    pub fn is_materialized(&self) -> bool {
        matches!(self.adjacency, AdjacencyStore::Materialized { .. })
    }

    pub fn vertex_matrix(&self, index: usize) -> FinMatrix {
        FinMatrix::from_code(self.semiring.clone(), self.n, self.codes[index])
            .expect("vertex code in range")
    }

    fn index_of_code(&self, code: u64) -> Option<usize> {
        self.codes.binary_search(&code).ok()
    }

    fn require_vertex(&self, m: &FinMatrix) -> Result<usize> {
        if !Arc::ptr_eq(m.semiring(), &self.semiring)
            && (m.semiring().order() != self.semiring.order()
                || m.semiring().add_table() != self.semiring.add_table()
                || m.semiring().mul_table() != self.semiring.mul_table())
        {
            return Err(Error::Mismatch(format!(
                "matrix over {} does not belong to the graph over {}",
                m.semiring().name(),
                self.semiring.name()
            )));
        }
        if m.n() != self.n {
            return Err(Error::Mismatch(format!(
                "matrix dimension {} does not match graph dimension {}",
                m.n(),
                self.n
            )));
        }
        let code = m.code();
        self.index_of_code(code).ok_or_else(|| {
            Error::Domain(format!(
                "matrix with code {code} is central (or outside the ground set) and not a vertex"
            ))
        })
    }

    /// Adjacent vertex indices of vertex `index`, ascending. Works in both
    /// modes; implicit mode scans the vertex list.
    pub fn neighbor_indices(&self, index: usize) -> Vec<usize> {
        match &self.adjacency {
            AdjacencyStore::Materialized { rows, words } => {
                let mut out = Vec::new();
                for w in 0..*words {
                    let mut bits = rows[index * words + w];
                    while bits != 0 {
                        let j = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        out.push(j);
                    }
                }
                out
            }
            AdjacencyStore::Implicit => (0..self.codes.len())
                .filter(|&j| j != index && self.commute_by_index(index, j))
                .collect(),
        }
    }

    /// Neighbor codes of the vertex holding `m`, ascending.
    pub fn neighbors(&self, m: &FinMatrix) -> Result<Vec<u64>> {
        let i = self.require_vertex(m)?;
        Ok(self
            .neighbor_indices(i)
            .into_iter()
            .map(|j| self.codes[j])
            .collect())
    }

    /// Undirected edges as positional index pairs (i, j) with i < j,
    /// lexicographically ascending. Materialized graphs only.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>> {
        let AdjacencyStore::Materialized { rows, words } = &self.adjacency else {
            return Err(Error::Domain(
                "edge listing requires a materialized graph".into(),
            ));
        };
        let mut out = Vec::new();
        for i in 0..self.codes.len() {
            for w in 0..*words {
                let mut bits = rows[i * words + w];
                while bits != 0 {
                    let j = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if j > i {
                        out.push((i, j));
                    }
                }
            }
        }
        Ok(out)
    }

    /// BFS distance with a shortest witness path; deterministic via
    /// ascending neighbor order.
    pub fn distance(&self, a: &FinMatrix, b: &FinMatrix) -> Result<DistanceResult> {
        let s = self.require_vertex(a)?;
        let t = self.require_vertex(b)?;
        let (ca, cb) = (self.codes[s], self.codes[t]);
        if s == t {
            return Ok(DistanceResult {
                value: Distance::Finite(0),
                endpoints: (ca, cb),
                witness_path: Some(vec![ca]),
            });
        }
        const UNSEEN: u32 = u32::MAX;
        let v = self.codes.len();
        let mut parent = vec![UNSEEN; v];
        parent[s] = s as u32;
        let mut frontier = vec![s];
        while !frontier.is_empty() && parent[t] == UNSEEN {
            let mut next = Vec::new();
            for &u in &frontier {
                for j in self.neighbor_indices(u) {
                    if parent[j] == UNSEEN {
                        parent[j] = u as u32;
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        if parent[t] == UNSEEN {
            return Ok(DistanceResult {
                value: Distance::Infinite,
                endpoints: (ca, cb),
                witness_path: None,
            });
        }
        let mut path = vec![t];
        let mut cur = t;
        while cur != s {
            cur = parent[cur] as usize;
            path.push(cur);
        }
        path.reverse();
        Ok(DistanceResult {
            value: Distance::Finite((path.len() - 1) as u32),
            endpoints: (ca, cb),
            witness_path: Some(path.into_iter().map(|i| self.codes[i]).collect()),
        })
    }

    /// Per-source farthest reach by bitset BFS: Ok((ecc, least farthest
    /// target)) or Err(least unreachable target).
    fn eccentricity(&self, rows: &[u64], words: usize, source: usize) -> std::result::Result<(u32, usize), usize> {
        let v = self.codes.len();
        let mut visited = vec![0u64; words];
        let mut frontier = vec![0u64; words];
        let mut next = vec![0u64; words];
        visited[source / 64] |= 1u64 << (source % 64);
        frontier[source / 64] |= 1u64 << (source % 64);
        let mut seen = 1usize;
        let mut depth = 0u32;
        let mut last_frontier = frontier.clone();
        loop {
            next.iter_mut().for_each(|w| *w = 0);
            for w in 0..words {
                let mut bits = frontier[w];
                while bits != 0 {
                    let u = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let row = &rows[u * words..u * words + words];
                    for (nw, &rw) in next.iter_mut().zip(row) {
                        *nw |= rw;
                    }
                }
            }
            let mut grew = false;
            for w in 0..words {
                next[w] &= !visited[w];
                if next[w] != 0 {
                    grew = true;
                    visited[w] |= next[w];
                    seen += next[w].count_ones() as usize;
                }
            }
            if !grew {
                break;
            }
            depth += 1;
            std::mem::swap(&mut frontier, &mut next);
            last_frontier.copy_from_slice(&frontier);
        }
        if seen < v {
            let miss = (0..words)
                .find_map(|w| {
                    let mut free = !visited[w];
                    if w == words - 1 && v % 64 != 0 {
                        free &= (1u64 << (v % 64)) - 1;
                    }
                    (free != 0).then(|| w * 64 + free.trailing_zeros() as usize)
                })
                .expect("some vertex unvisited");
            return Err(miss);
        }
        let far = (0..words)
            .find_map(|w| {
                let bits = last_frontier[w];
                (bits != 0).then(|| w * 64 + bits.trailing_zeros() as usize)
            })
            .expect("last frontier nonempty");
        Ok((depth, far))
    }

    /// Exact diameter by BFS from every source, with the lexicographically
    /// least realizing pair and a witness path (finite case). Disconnected
    /// graphs report an unreachable pair.
    pub fn diameter(&self) -> Result<DistanceResult> {
        let v = self.codes.len();
        if v < 2 {
            return Err(Error::Domain(format!(
                "the graph has {v} vertex(es); diameter is undefined"
            )));
        }
        let AdjacencyStore::Materialized { rows, words } = &self.adjacency else {
            return Err(Error::Domain(
                "diameter requires a materialized graph".into(),
            ));
        };
        let words = *words;
        let per_source: Vec<std::result::Result<(u32, usize), usize>> = (0..v)
            .into_par_iter()
            .map(|s| self.eccentricity(rows, words, s))
            .collect();
        let mut best: Option<(u32, usize, usize)> = None;
        for (s, r) in per_source.iter().enumerate() {
            match r {
                Err(miss) => {
                    let (a, b) = (self.codes[s], self.codes[*miss]);
                    return Ok(DistanceResult {
                        value: Distance::Infinite,
                        endpoints: (a.min(b), a.max(b)),
                        witness_path: None,
                    });
                }
                Ok((ecc, far)) => {
                    if best.is_none_or(|(e, _, _)| *ecc > e) {
                        best = Some((*ecc, s, *far));
                    }
                }
            }
        }
        let (_, s, t) = best.expect("at least two vertices");
        self.distance(&self.vertex_matrix(s), &self.vertex_matrix(t))
    }

    /// Connected components as lists of vertex codes; components ordered by
    /// least member, members ascending. Materialized graphs only.
    pub fn components(&self) -> Result<Vec<Vec<u64>>> {
        if !self.is_materialized() {
            return Err(Error::Domain(
                "component listing requires a materialized graph".into(),
            ));
        }
        let v = self.codes.len();
        let mut comp = vec![usize::MAX; v];
        let mut out: Vec<Vec<u64>> = Vec::new();
        for start in 0..v {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut frontier = vec![start];
            while let Some(u) = frontier.pop() {
                for j in self.neighbor_indices(u) {
                    if comp[j] == usize::MAX {
                        comp[j] = id;
                        members.push(j);
                        frontier.push(j);
                    }
                }
            }
            members.sort_unstable();
            out.push(members.into_iter().map(|i| self.codes[i]).collect());
        }
        Ok(out)
    }
}

/// Scan-based certificate that d(a, b) >= 4: the open neighborhoods in
/// Gamma(M_n(S)) are disjoint and no cross pair commutes. Never materializes
/// adjacency; memory stays linear in the neighborhood sizes.
pub fn certify_distance_ge4(
    semiring: &Arc<SemiringTable>,
    n: usize,
    a: &FinMatrix,
    b: &FinMatrix,
    budget: &GraphBudget,
) -> Result<GeFourCertificate> {
    let space = checked_space(semiring, n, budget.max_enumeration)?;
    for (label, m) in [("first", a), ("second", b)] {
        if m.n() != n || m.semiring().order() != semiring.order() {
            return Err(Error::Mismatch(format!(
                "{label} endpoint does not live in the requested matrix space"
            )));
        }
    }
    if a == b {
        return Err(Error::Domain(
            "endpoints are equal; a distance certificate needs distinct vertices".into(),
        ));
    }
    let center = center_codes(semiring, n, budget.max_enumeration)?;
    for (label, m) in [("first", a), ("second", b)] {
        if center.binary_search(&m.code()).is_ok() {
            return Err(Error::Domain(format!(
                "{label} endpoint is central and not a vertex"
            )));
        }
    }
    if a.commutes(b)? {
        return Err(Error::Domain(
            "endpoints are adjacent; the distance is 1 and no >=4 certificate exists".into(),
        ));
    }
    let table = &**semiring;
    let k = table.order();
    let neighborhood = |m: &FinMatrix| -> Vec<u64> {
        let target = m.entries();
        let own = m.code();
        parallel_filter_codes(space, k, n, |code, entries| {
            code != own
                && commutes_entries(table, n, target, entries)
                && center.binary_search(&code).is_err()
        })
    };
    let na = neighborhood(a);
    let nb = neighborhood(b);
    let mut cert = GeFourCertificate {
        holds: true,
        neighborhood_a: na.len() as u64,
        neighborhood_b: nb.len() as u64,
        cross_pairs_checked: 0,
        scanned: 2 * space,
        counterexample: None,
    };
    let mut ib = nb.iter().peekable();
    for &u in &na {
        while ib.peek().is_some_and(|&&x| x < u) {
            ib.next();
        }
        if ib.peek() == Some(&&u) {
            cert.holds = false;
            cert.counterexample = Some((u, u));
            return Ok(cert);
        }
    }
    let use_bits = is_boolean_table(table) && n <= 8;
    let nn = n * n;
    let mut cache_a: Vec<ElementId> = Vec::new();
    let mut bits_a: Vec<u64> = Vec::new();
    if use_bits {
        bits_a = na
            .iter()
            .map(|&c| BitMatrix::from_code(n, c).expect("code in range").bits())
            .collect();
    } else {
        cache_a = vec![0; na.len() * nn];
        for (chunk, &code) in cache_a.chunks_mut(nn).zip(&na) {
            decode_entries(k, code, chunk);
        }
    }
    let per_v: Vec<Option<usize>> = nb
        .par_iter()
        .map(|&vcode| {
            if use_bits {
                let vb = BitMatrix::from_code(n, vcode).expect("code in range");
                bits_a.iter().position(|&ub| {
                    BitMatrix::new(n, ub).expect("cached word").commutes(vb)
                })
            } else {
                let mut ve = vec![0 as ElementId; nn];
                decode_entries(k, vcode, &mut ve);
                (0..na.len()).find(|&ui| {
                    commutes_entries(table, n, &cache_a[ui * nn..ui * nn + nn], &ve)
                })
            }
        })
        .collect();
    cert.cross_pairs_checked = per_v
        .iter()
        .map(|hit| hit.map_or(na.len(), |ui| ui + 1) as u64)
        .sum();
    for (vi, hit) in per_v.iter().enumerate() {
        if let Some(ui) = hit {
            cert.holds = false;
            cert.counterexample = Some((na[*ui], nb[vi]));
            break;
        }
    }
    Ok(cert)
}
