//! Bicoloured labelled multigraphs.
//!
//! A graph here is the combinatorial presentation of a closed 2-stratifold:
//! white vertices are surface pieces (carrying a genus, negative for
//! non-orientable), black vertices are singular circles, and an edge with
//! label `m` records a boundary circle attached by a degree-`m` covering of
//! its singular circle. Edges additionally carry a sign; only the product of
//! signs around a cycle is meaningful (it is the ℤ₂ holonomy of the gluing).
//!
//! Graphs are immutable after construction. [`GraphBuilder`] validates the
//! structural invariants (bipartite by construction, connected, every black
//! vertex has incident label sum ≥ 3, labels ≥ 1, ids unique per colour
//! class) and fixes a canonical vertex/edge order, so every downstream
//! operation is deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Index of a white vertex in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhiteId(pub usize);

/// Index of a black vertex in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlackId(pub usize);

/// Index of an edge in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

/// Either endpoint colour of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexRef {
    White(WhiteId),
    Black(BlackId),
}

impl VertexRef {
    pub fn is_white(&self) -> bool {
        matches!(self, VertexRef::White(_))
    }
    pub fn is_black(&self) -> bool {
        matches!(self, VertexRef::Black(_))
    }
}

/// Edge sign; the per-cycle product of signs is the gluing holonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn product(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub white: WhiteId,
    pub black: BlackId,
    pub label: u32,
    pub sign: Sign,
}

/// Structural validation errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate {colour} vertex id `{id}`")]
    DuplicateId { colour: &'static str, id: String },
    #[error("edge endpoint `{id}` is not a {expected} vertex")]
    NonBipartite { id: String, expected: &'static str },
    #[error("unknown vertex `{id}` referenced by an edge")]
    UnknownVertex { id: String },
    #[error("edge {white}-{black} has non-positive label")]
    NonPositiveLabel { white: String, black: String },
    #[error("black vertex `{id}` has incident label sum {sum} < 3")]
    BlackDegreeSumBelow3 { id: String, sum: u64 },
    #[error("graph is not connected (or is empty)")]
    Disconnected,
}

/// Error for [`LabelledGraph::cycle`] on graphs not homotopy equivalent to a circle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph has first Betti number {betti1}, not 1")]
pub struct NotCircleHomotopy {
    pub betti1: usize,
}

fn shortlex(a: &str, b: &str) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Builder for [`LabelledGraph`]. Vertices and edges may be added in any
/// order; `build` validates and canonicalizes.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    whites: Vec<(String, i64)>,
    blacks: Vec<String>,
    edges: Vec<(String, String, u32, Sign)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn white(&mut self, id: impl Into<String>, genus: i64) -> &mut Self {
        self.whites.push((id.into(), genus));
        self
    }

    pub fn black(&mut self, id: impl Into<String>) -> &mut Self {
        self.blacks.push(id.into());
        self
    }

    pub fn edge(&mut self, white: impl Into<String>, black: impl Into<String>, label: u32) -> &mut Self {
        self.edge_signed(white, black, label, Sign::Plus)
    }

    pub fn edge_signed(
        &mut self,
        white: impl Into<String>,
        black: impl Into<String>,
        label: u32,
        sign: Sign,
    ) -> &mut Self {
        self.edges.push((white.into(), black.into(), label, sign));
        self
    }

    pub fn build(&self) -> Result<LabelledGraph, Vec<GraphError>> {
        let mut errors = Vec::new();

        let mut whites = self.whites.clone();
        whites.sort_by(|a, b| shortlex(&a.0, &b.0));
        let mut blacks = self.blacks.clone();
        blacks.sort_by(|a, b| shortlex(a, b));

        let mut white_index: BTreeMap<String, WhiteId> = BTreeMap::new();
        for (i, (name, _)) in whites.iter().enumerate() {
            if white_index.insert(name.clone(), WhiteId(i)).is_some() {
                errors.push(GraphError::DuplicateId { colour: "white", id: name.clone() });
            }
        }
        let mut black_index: BTreeMap<String, BlackId> = BTreeMap::new();
        for (i, name) in blacks.iter().enumerate() {
            if black_index.insert(name.clone(), BlackId(i)).is_some() {
                errors.push(GraphError::DuplicateId { colour: "black", id: name.clone() });
            }
        }

        let mut edges: Vec<Edge> = Vec::new();
        for (w, b, label, sign) in &self.edges {
            let white = match white_index.get(w) {
                Some(id) => *id,
                None => {
                    if black_index.contains_key(w) {
                        errors.push(GraphError::NonBipartite { id: w.clone(), expected: "white" });
                    } else {
                        errors.push(GraphError::UnknownVertex { id: w.clone() });
                    }
                    continue;
                }
            };
            let black = match black_index.get(b) {
                Some(id) => *id,
                None => {
                    if white_index.contains_key(b) {
                        errors.push(GraphError::NonBipartite { id: b.clone(), expected: "black" });
                    } else {
                        errors.push(GraphError::UnknownVertex { id: b.clone() });
                    }
                    continue;
                }
            };
            if *label == 0 {
                errors.push(GraphError::NonPositiveLabel { white: w.clone(), black: b.clone() });
                continue;
            }
            edges.push(Edge { white, black, label: *label, sign: *sign });
        }

        edges.sort_by(|a, b| {
            (a.white, a.black, a.label, a.sign).cmp(&(b.white, b.black, b.label, b.sign))
        });

        // Label sum ≥ 3 at every black vertex (≥ 3 sheets meet every singular point).
        let mut sums = vec![0u64; blacks.len()];
        for e in &edges {
            sums[e.black.0] += e.label as u64;
        }
        for (i, sum) in sums.iter().enumerate() {
            if *sum < 3 {
                errors.push(GraphError::BlackDegreeSumBelow3 { id: blacks[i].clone(), sum: *sum });
            }
        }

        if !errors.is_empty() {
            return Err(errors);
        }

        let graph = LabelledGraph::assemble(whites, blacks, edges);
        if !graph.is_connected() {
            return Err(vec![GraphError::Disconnected]);
        }
        Ok(graph)
    }
}

/// Immutable bicoloured labelled multigraph in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    white_names: Vec<String>,
    genera: Vec<i64>,
    black_names: Vec<String>,
    edges: Vec<Edge>,
    white_adj: Vec<Vec<EdgeId>>,
    black_adj: Vec<Vec<EdgeId>>,
}

impl LabelledGraph {
    fn assemble(whites: Vec<(String, i64)>, blacks: Vec<String>, edges: Vec<Edge>) -> Self {
        let mut white_adj = vec![Vec::new(); whites.len()];
        let mut black_adj = vec![Vec::new(); blacks.len()];
        for (i, e) in edges.iter().enumerate() {
            white_adj[e.white.0].push(EdgeId(i));
            black_adj[e.black.0].push(EdgeId(i));
        }
        let (white_names, genera) = whites.into_iter().unzip();
        LabelledGraph { white_names, genera, black_names: blacks, edges, white_adj, black_adj }
    }

    /// Convenience constructor for tests and examples.
    pub fn single_white(id: impl Into<String>, genus: i64) -> Self {
        let mut b = GraphBuilder::new();
        b.white(id, genus);
        b.build().expect("single white vertex is always valid")
    }

    pub fn white_count(&self) -> usize {
        self.white_names.len()
    }

    pub fn black_count(&self) -> usize {
        self.black_names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.white_count() + self.black_count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn whites(&self) -> impl Iterator<Item = WhiteId> {
        (0..self.white_count()).map(WhiteId)
    }

    pub fn blacks(&self) -> impl Iterator<Item = BlackId> {
        (0..self.black_count()).map(BlackId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn white_name(&self, w: WhiteId) -> &str {
        &self.white_names[w.0]
    }

    pub fn black_name(&self, b: BlackId) -> &str {
        &self.black_names[b.0]
    }

    pub fn vertex_name(&self, v: VertexRef) -> &str {
        match v {
            VertexRef::White(w) => self.white_name(w),
            VertexRef::Black(b) => self.black_name(b),
        }
    }

    pub fn genus(&self, w: WhiteId) -> i64 {
        self.genera[w.0]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn white_edges(&self, w: WhiteId) -> &[EdgeId] {
        &self.white_adj[w.0]
    }

    pub fn black_edges(&self, b: BlackId) -> &[EdgeId] {
        &self.black_adj[b.0]
    }

    pub fn incident_edges(&self, v: VertexRef) -> &[EdgeId] {
        match v {
            VertexRef::White(w) => self.white_edges(w),
            VertexRef::Black(b) => self.black_edges(b),
        }
    }

    pub fn degree(&self, v: VertexRef) -> usize {
        self.incident_edges(v).len()
    }

    /// Multiset of labels at a black vertex, sorted ascending.
    pub fn black_labels(&self, b: BlackId) -> Vec<u32> {
        let mut labels: Vec<u32> = self.black_edges(b).iter().map(|e| self.edge(*e).label).collect();
        labels.sort_unstable();
        labels
    }

    /// The endpoint of `e` other than `v`.
    pub fn other_endpoint(&self, e: EdgeId, v: VertexRef) -> VertexRef {
        let edge = self.edge(e);
        match v {
            VertexRef::White(w) => {
                debug_assert_eq!(edge.white, w);
                VertexRef::Black(edge.black)
            }
            VertexRef::Black(b) => {
                debug_assert_eq!(edge.black, b);
                VertexRef::White(edge.white)
            }
        }
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexRef, VertexRef) {
        let edge = self.edge(e);
        (VertexRef::White(edge.white), VertexRef::Black(edge.black))
    }

    fn vertex_ix(&self, v: VertexRef) -> usize {
        match v {
            VertexRef::White(w) => w.0,
            VertexRef::Black(b) => self.white_count() + b.0,
        }
    }

    fn vertex_from_ix(&self, ix: usize) -> VertexRef {
        if ix < self.white_count() {
            VertexRef::White(WhiteId(ix))
        } else {
            VertexRef::Black(BlackId(ix - self.white_count()))
        }
    }

    pub fn all_vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        (0..self.vertex_count()).map(|ix| self.vertex_from_ix(ix))
    }

    fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return false;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(self.vertex_from_ix(0));
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &e in self.incident_edges(v) {
                let u = self.other_endpoint(e, v);
                let ix = self.vertex_ix(u);
                if !seen[ix] {
                    seen[ix] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.vertex_count()
    }

    pub fn betti1(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// True iff every black vertex has incident label multiset
    /// {1,1,1}, {1,2} or {3}: exactly three sheets at every singular point.
    pub fn is_trivalent(&self) -> bool {
        self.blacks().all(|b| {
            let labels = self.black_labels(b);
            labels == [1, 1, 1] || labels == [1, 2] || labels == [3]
        })
    }

    /// Canonical spanning tree: BFS from the first white vertex (or first
    /// black if there are none), visiting edges in canonical order. Returns
    /// one flag per edge: true = tree edge.
    pub fn spanning_tree(&self) -> Vec<bool> {
        self.spanning_tree_with_order(|edges| edges.to_vec())
    }

    /// Spanning tree with an arbitrary (but caller-fixed) per-vertex edge
    /// visiting order; used to check that results do not depend on the tree.
    pub fn spanning_tree_with_order(
        &self,
        reorder: impl Fn(&[EdgeId]) -> Vec<EdgeId>,
    ) -> Vec<bool> {
        let mut in_tree = vec![false; self.edge_count()];
        if self.vertex_count() == 0 {
            return in_tree;
        }
        let root = self.vertex_from_ix(0);
        let mut seen = vec![false; self.vertex_count()];
        seen[self.vertex_ix(root)] = true;
        let mut queue = VecDeque::new();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for e in reorder(self.incident_edges(v)) {
                let u = self.other_endpoint(e, v);
                let ix = self.vertex_ix(u);
                if !seen[ix] {
                    seen[ix] = true;
                    in_tree[e.0] = true;
                    queue.push_back(u);
                }
            }
        }
        in_tree
    }

    /// Edges not in the canonical spanning tree; there are exactly betti1 of them.
    pub fn chords(&self) -> Vec<EdgeId> {
        let tree = self.spanning_tree();
        self.edge_ids().filter(|e| !tree[e.0]).collect()
    }

    /// Product of signs along the unique tree path between two vertices,
    /// times the chord sign: the holonomy of the chord's fundamental cycle.
    pub fn cycle_holonomy(&self, chord: EdgeId, tree: &[bool]) -> Sign {
        let (w, b) = self.endpoints(chord);
        let mut sign = self.edge(chord).sign;
        for e in self.tree_path(w, b, tree) {
            sign = sign.product(self.edge(e).sign);
        }
        sign
    }

    /// Edges of the unique path between two vertices inside a spanning tree.
    pub fn tree_path(&self, from: VertexRef, to: VertexRef, tree: &[bool]) -> Vec<EdgeId> {
        // BFS restricted to tree edges.
        let mut prev: Vec<Option<(VertexRef, EdgeId)>> = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        seen[self.vertex_ix(from)] = true;
        let mut queue = VecDeque::new();
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &e in self.incident_edges(v) {
                if !tree[e.0] {
                    continue;
                }
                let u = self.other_endpoint(e, v);
                let ix = self.vertex_ix(u);
                if !seen[ix] {
                    seen[ix] = true;
                    prev[ix] = Some((v, e));
                    queue.push_back(u);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, e) = prev[self.vertex_ix(cur)].expect("tree connects all vertices");
            path.push(e);
            cur = p;
        }
        path.reverse();
        path
    }

    /// The unique simple cycle of a graph with betti1 = 1, as an ordered,
    /// oriented edge walk. Starts at the cycle vertex with the least id
    /// (shortlex on names, whites before blacks on equal names) and proceeds
    /// along the smaller of its two cycle edges.
    pub fn cycle(&self) -> Result<Cycle, NotCircleHomotopy> {
        if self.betti1() != 1 {
            return Err(NotCircleHomotopy { betti1: self.betti1() });
        }
        let tree = self.spanning_tree();
        let chord = self
            .edge_ids()
            .find(|e| !tree[e.0])
            .expect("betti1 = 1 graph has exactly one chord");
        let (w, b) = self.endpoints(chord);
        // Cycle = chord + tree path from b back to w around.
        let mut edges = vec![chord];
        edges.extend(self.tree_path(b, w, &tree));
        // Walk vertices: chord goes w -> b, then the path b -> ... -> w.
        let mut vertices = vec![w];
        let mut cur = w;
        for &e in &edges {
            cur = self.other_endpoint(e, cur);
            vertices.push(cur);
        }
        debug_assert_eq!(vertices.last(), Some(&w));
        vertices.pop();
        Cycle::canonicalize(self, edges, vertices)
    }

    fn vertex_order_key(&self, v: VertexRef) -> (usize, &str, u8) {
        let name = self.vertex_name(v);
        (name.len(), name, if v.is_white() { 0 } else { 1 })
    }

    /// Minimal edge count between `x` and a target set, counting neither the
    /// target itself nor `x` when `x` is an edge: a vertex in the target, or
    /// an edge incident to a target vertex, has distance 0.
    pub fn distance(&self, x: Locus, target: &[Locus]) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        let mut target_edges: HashSet<EdgeId> = HashSet::new();
        for t in target {
            match t {
                Locus::Vertex(v) => {
                    let ix = self.vertex_ix(*v);
                    if dist[ix] != 0 {
                        dist[ix] = 0;
                        queue.push_back(*v);
                    }
                }
                Locus::Edge(e) => {
                    target_edges.insert(*e);
                    let (a, b) = self.endpoints(*e);
                    for v in [a, b] {
                        let ix = self.vertex_ix(v);
                        if dist[ix] != 0 {
                            dist[ix] = 0;
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[self.vertex_ix(v)];
            for &e in self.incident_edges(v) {
                let u = self.other_endpoint(e, v);
                let ix = self.vertex_ix(u);
                if dist[ix] == usize::MAX {
                    dist[ix] = d + 1;
                    queue.push_back(u);
                }
            }
        }
        match x {
            Locus::Vertex(v) => {
                let d = dist[self.vertex_ix(v)];
                (d != usize::MAX).then_some(d)
            }
            Locus::Edge(e) => {
                if target_edges.contains(&e) {
                    return Some(0);
                }
                let (a, b) = self.endpoints(e);
                let d = dist[self.vertex_ix(a)].min(dist[self.vertex_ix(b)]);
                (d != usize::MAX).then_some(d)
            }
        }
    }

    /// Structural queries consumed by the reduction and classification passes.
    pub fn structure(&self) -> StructureReport {
        let betti1 = self.betti1();
        let cycle = if betti1 == 1 { Some(self.cycle().expect("betti1 is 1")) } else { None };
        let black_branch_vertices =
            self.blacks().filter(|b| self.black_edges(*b).len() > 2).collect();
        let white_branch_vertices =
            self.whites().filter(|w| self.white_edges(*w).len() > 2).collect();
        let terminal_vertices =
            self.all_vertices().filter(|v| self.degree(*v) == 1).collect();
        StructureReport {
            betti1,
            is_tree: betti1 == 0,
            cycle,
            black_branch_vertices,
            white_branch_vertices,
            terminal_vertices,
            trivalent: self.is_trivalent(),
        }
    }

    /// Connected components of the vertex-deleted subgraph, as vertex sets of
    /// this graph (deterministic order).
    pub fn component_vertex_sets(&self, removed: &[VertexRef]) -> Vec<Vec<VertexRef>> {
        let removed: HashSet<usize> = removed.iter().map(|v| self.vertex_ix(*v)).collect();
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for start_ix in 0..self.vertex_count() {
            if removed.contains(&start_ix) || seen[start_ix] {
                continue;
            }
            seen[start_ix] = true;
            let mut members = vec![self.vertex_from_ix(start_ix)];
            let mut queue = VecDeque::new();
            queue.push_back(self.vertex_from_ix(start_ix));
            while let Some(v) = queue.pop_front() {
                for &e in self.incident_edges(v) {
                    let u = self.other_endpoint(e, v);
                    let ix = self.vertex_ix(u);
                    if !removed.contains(&ix) && !seen[ix] {
                        seen[ix] = true;
                        members.push(u);
                        queue.push_back(u);
                    }
                }
            }
            out.push(members);
        }
        out
    }

    /// The subgraph induced on `vertices`, rebuilt as a standalone graph.
    /// Whites that lose edges keep their genus (the lost boundary circles
    /// are capped by disks). Black vertices must keep all their edges, so
    /// the cut may only run through white vertices or removed stars.
    pub fn induced_subgraph(&self, vertices: &[VertexRef]) -> LabelledGraph {
        let keep: HashSet<VertexRef> = vertices.iter().copied().collect();
        let mut builder = GraphBuilder::new();
        for w in self.whites() {
            if keep.contains(&VertexRef::White(w)) {
                builder.white(self.white_name(w), self.genus(w));
            }
        }
        for b in self.blacks() {
            if keep.contains(&VertexRef::Black(b)) {
                builder.black(self.black_name(b));
            }
        }
        for e in &self.edges {
            if keep.contains(&VertexRef::White(e.white)) && keep.contains(&VertexRef::Black(e.black)) {
                builder.edge_signed(
                    self.white_name(e.white),
                    self.black_name(e.black),
                    e.label,
                    e.sign,
                );
            }
        }
        builder.build().expect("induced subgraph of a valid graph stays valid")
    }

    /// Vertex-deleted subgraph split into standalone connected components.
    pub fn components_without(&self, removed: &[VertexRef]) -> Vec<LabelledGraph> {
        self.component_vertex_sets(removed)
            .into_iter()
            .map(|set| self.induced_subgraph(&set))
            .collect()
    }

    /// Rebuild this graph with the given vertices removed; the remainder must
    /// stay connected (callers remove hanging material only).
    pub fn without_vertices(&self, removed: &[VertexRef]) -> LabelledGraph {
        let mut comps = self.components_without(removed);
        assert_eq!(comps.len(), 1, "removal must keep the graph connected");
        comps.pop().unwrap()
    }
}

/// Vertex-or-edge argument for [`LabelledGraph::distance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locus {
    Vertex(VertexRef),
    Edge(EdgeId),
}

/// The unique simple cycle of a betti1 = 1 graph, oriented and rooted
/// deterministically. `edges[i]` joins `vertices[i]` to `vertices[i+1 mod n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexRef>,
}

impl Cycle {
    fn canonicalize(
        g: &LabelledGraph,
        edges: Vec<EdgeId>,
        vertices: Vec<VertexRef>,
    ) -> Result<Cycle, NotCircleHomotopy> {
        let n = edges.len();
        debug_assert_eq!(vertices.len(), n);
        // Rotate to the least vertex.
        let start = (0..n)
            .min_by(|&i, &j| g.vertex_order_key(vertices[i]).cmp(&g.vertex_order_key(vertices[j])))
            .expect("cycle is nonempty");
        let rot = |k: usize| (start + k) % n;
        let vertices_f: Vec<VertexRef> = (0..n).map(|k| vertices[rot(k)]).collect();
        let edges_f: Vec<EdgeId> = (0..n).map(|k| edges[rot(k)]).collect();
        // The reversed orientation keeps the start vertex, walks the other way.
        let vertices_r: Vec<VertexRef> = std::iter::once(vertices_f[0])
            .chain(vertices_f[1..].iter().rev().copied())
            .collect();
        let edges_r: Vec<EdgeId> = edges_f.iter().rev().copied().collect();
        if edges_f <= edges_r {
            Ok(Cycle { edges: edges_f, vertices: vertices_f })
        } else {
            Ok(Cycle { edges: edges_r, vertices: vertices_r })
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexRef) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// Product of edge signs around the cycle: the gluing holonomy κ([C]).
    pub fn holonomy(&self, g: &LabelledGraph) -> Sign {
        self.edges.iter().fold(Sign::Plus, |acc, e| acc.product(g.edge(*e).sign))
    }
}

/// Structural facts about a validated graph.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub betti1: usize,
    pub is_tree: bool,
    pub cycle: Option<Cycle>,
    pub black_branch_vertices: Vec<BlackId>,
    pub white_branch_vertices: Vec<WhiteId>,
    pub terminal_vertices: Vec<VertexRef>,
    pub trivalent: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating_cycle_graph() -> LabelledGraph {
        // w0-b0-w1-b1-w2-b2 closed up, labels 1,2,1,2,1,2.
        let mut g = GraphBuilder::new();
        for i in 0..3 {
            g.white(format!("w{i}"), 0);
            g.black(format!("b{i}"));
        }
        g.edge("w0", "b0", 1);
        g.edge("w1", "b0", 2);
        g.edge("w1", "b1", 1);
        g.edge("w2", "b1", 2);
        g.edge("w2", "b2", 1);
        g.edge("w0", "b2", 2);
        g.build().unwrap()
    }

    #[test]
    fn single_white_is_valid_tree() {
        let g = LabelledGraph::single_white("w0", 0);
        let s = g.structure();
        assert_eq!(s.betti1, 0);
        assert!(s.is_tree);
        assert!(s.cycle.is_none());
        assert!(s.terminal_vertices.is_empty());
    }

    #[test]
    fn black_label_sum_below_three_rejected() {
        let mut b = GraphBuilder::new();
        b.white("w0", 0).black("b0").edge("w0", "b0", 2);
        let errs = b.build().unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, GraphError::BlackDegreeSumBelow3 { sum: 2, .. })));
    }

    #[test]
    fn six_edge_alternating_cycle_validates() {
        let g = alternating_cycle_graph();
        let s = g.structure();
        assert_eq!(s.betti1, 1);
        assert!(s.trivalent);
        assert_eq!(s.cycle.as_ref().unwrap().len(), 6);
    }

    #[test]
    fn disconnected_rejected() {
        let mut b = GraphBuilder::new();
        b.white("w0", 0).white("w1", 0).black("b0").edge("w0", "b0", 3);
        let errs = b.build().unwrap_err();
        assert_eq!(errs, vec![GraphError::Disconnected]);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let mut b = GraphBuilder::new();
        b.white("w0", 0).white("w0", 1).black("b0").edge("w0", "b0", 3);
        let errs = b.build().unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, GraphError::DuplicateId { .. })));
    }

    #[test]
    fn trivalence_by_label_multiset() {
        // {1,1,1} at b0 in the alternating cycle? No: b0 has {1,2}. Build all three shapes.
        let mut b = GraphBuilder::new();
        b.white("w0", 0).white("w1", 0).white("w2", 0).black("b0");
        b.edge("w0", "b0", 1).edge("w1", "b0", 1).edge("w2", "b0", 1);
        assert!(b.build().unwrap().is_trivalent());

        let mut b = GraphBuilder::new();
        b.white("w0", 0).black("b0").edge("w0", "b0", 3);
        assert!(b.build().unwrap().is_trivalent());

        let mut b = GraphBuilder::new();
        b.white("w0", 0).white("w1", 0).black("b0");
        b.edge("w0", "b0", 2).edge("w1", "b0", 2);
        assert!(!b.build().unwrap().is_trivalent());
    }

    #[test]
    fn cycle_error_on_tree() {
        let mut b = GraphBuilder::new();
        b.white("w0", 0).white("w1", 0).black("b0");
        b.edge("w0", "b0", 2).edge("w1", "b0", 3);
        let g = b.build().unwrap();
        assert_eq!(g.cycle().unwrap_err(), NotCircleHomotopy { betti1: 0 });
    }

    #[test]
    fn cycle_of_two_parallel_edges() {
        let mut b = GraphBuilder::new();
        b.white("w0", 0).black("b0");
        b.edge("w0", "b0", 1).edge("w0", "b0", 2);
        let g = b.build().unwrap();
        let c = g.cycle().unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn deleting_any_cycle_edge_yields_tree() {
        let g = alternating_cycle_graph();
        let c = g.cycle().unwrap();
        for &e in &c.edges {
            // Rebuild without edge e; betti1 must drop to 0.
            let mut b = GraphBuilder::new();
            for w in g.whites() {
                b.white(g.white_name(w), g.genus(w));
            }
            for bl in g.blacks() {
                b.black(g.black_name(bl));
            }
            for other in g.edge_ids().filter(|x| *x != e) {
                let edge = g.edge(other);
                b.edge_signed(
                    g.white_name(edge.white),
                    g.black_name(edge.black),
                    // Padding labels so black sums stay legal after deletion.
                    edge.label + 3,
                    edge.sign,
                );
            }
            let g2 = b.build().unwrap();
            assert_eq!(g2.betti1(), 0);
        }
    }

    #[test]
    fn distance_conventions() {
        // b0 adjacent to terminal w1: distance(b0, {w1}) = 1.
        let mut b = GraphBuilder::new();
        b.white("w0", 0).white("w1", 0).black("b0");
        b.edge("w0", "b0", 2).edge("w1", "b0", 1);
        let g = b.build().unwrap();
        let w1 = VertexRef::White(WhiteId(1));
        let b0 = VertexRef::Black(BlackId(0));
        assert_eq!(g.distance(Locus::Vertex(b0), &[Locus::Vertex(w1)]), Some(1));
        // An edge incident to a target vertex has distance 0.
        let e0 = EdgeId(0);
        assert_eq!(g.distance(Locus::Edge(e0), &[Locus::Vertex(b0)]), Some(0));
    }

    #[test]
    fn echinus_arm_distance_pattern() {
        // Cycle b0=w0 (two parallel edges), arm b0 -1- a0 -1- a1(black) -2- a2.
        // Labels at distances 0,1,2 along the arm read 1,1,2.
        let mut b = GraphBuilder::new();
        b.white("w0", 0).white("a0", 0).white("a2", 0);
        b.black("b0").black("a1");
        b.edge("w0", "b0", 1);
        b.edge("w0", "b0", 1);
        b.edge("a0", "b0", 1);
        b.edge("a0", "a1", 1);
        b.edge("a2", "a1", 2);
        let g = b.build().unwrap();
        let cyc = g.cycle().unwrap();
        let target: Vec<Locus> = cyc.vertices.iter().map(|v| Locus::Vertex(*v)).collect();
        // Find edges by label/endpoint.
        let label2 = g.edge_ids().find(|e| g.edge(*e).label == 2).unwrap();
        assert_eq!(g.distance(Locus::Edge(label2), &target), Some(2));
    }
}
