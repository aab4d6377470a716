//! Simple undirected graphs, the generator families used throughout the crate,
//! and the Cartesian product with provenance-tagged edges.

use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
}

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Edges are stored normalized as `(min, max)` pairs in lexicographic order;
/// the position of an edge in that order is its *edge index*, which the rest
/// of the crate relies on (incidence indexing, subdivision vertices).
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    edge_idx: HashMap<(usize, usize), usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}
impl Eq for Graph {}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut seen = HashSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            norm.push(e);
        }
        norm.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        let mut edge_idx = HashMap::with_capacity(norm.len());
        for (i, &(u, v)) in norm.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            edge_idx.insert((u, v), i);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
            edge_idx,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as normalized `(min, max)` pairs in edge-index order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut it = self.adj.iter().map(Vec::len);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edge_idx.contains_key(&(u.min(v), u.max(v)))
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_idx.get(&(u.min(v), u.max(v))).copied()
    }

    /// BFS distances from `from`; `None` for unreachable vertices.
    pub fn distances(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dist[v].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.distances(0).iter().all(Option::is_some)
    }

    /// Vertices in BFS order starting at 0; further components are entered at
    /// their smallest vertex. This is the canonical search order for the
    /// backtracking code in the crate.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n);
        let mut seen = vec![false; self.n];
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }

    /// Subgraph induced by `verts` (which must be distinct and in range);
    /// new vertex `i` corresponds to `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> Result<Graph, GraphError> {
        let mut back = HashMap::new();
        for (i, &v) in verts.iter().enumerate() {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { v, n: self.n });
            }
            if back.insert(v, i).is_some() {
                return Err(GraphError::BadParams(format!(
                    "repeated vertex {v} in induced set"
                )));
            }
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if let (Some(&a), Some(&b)) = (back.get(&u), back.get(&v)) {
                edges.push((a, b));
            }
        }
        Graph::new(verts.len(), &edges)
    }
}

// ---------------------------------------------------------------------------
// Generator families
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Cycle on `n >= 3` vertices.
    Cycle(usize),
    /// Path on `n >= 1` vertices.
    Path(usize),
    /// Complete graph on `n >= 1` vertices.
    Complete(usize),
    /// Complete bipartite graph with parts of size `a, b >= 1`.
    CompleteBipartite(usize, usize),
    /// Hypercube of dimension `d >= 0`; vertex ids are coordinate bit masks,
    /// coordinate `i` living at bit `i`.
    Hypercube(usize),
    /// Complete graph on `2n` vertices minus the perfect matching
    /// `{i, i+n}` for `0 <= i < n`.
    CompleteMinusMatching(usize),
}

pub fn gen_family(family: Family) -> Result<Graph, GraphError> {
    match family {
        Family::Cycle(n) => {
            if n < 3 {
                return Err(GraphError::BadParams(format!(
                    "cycle needs n >= 3, got {n}"
                )));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::new(n, &edges)
        }
        Family::Path(n) => {
            if n < 1 {
                return Err(GraphError::BadParams("path needs n >= 1".into()));
            }
            let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            Graph::new(n, &edges)
        }
        Family::Complete(n) => {
            if n < 1 {
                return Err(GraphError::BadParams("complete graph needs n >= 1".into()));
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            Graph::new(n, &edges)
        }
        Family::CompleteBipartite(a, b) => {
            if a < 1 || b < 1 {
                return Err(GraphError::BadParams(format!(
                    "complete bipartite graph needs both parts nonempty, got {a}, {b}"
                )));
            }
            let mut edges = Vec::new();
            for u in 0..a {
                for v in 0..b {
                    edges.push((u, a + v));
                }
            }
            Graph::new(a + b, &edges)
        }
        Family::Hypercube(d) => {
            if d > 20 {
                return Err(GraphError::BadParams(format!(
                    "hypercube dimension {d} too large"
                )));
            }
            let n = 1usize << d;
            let mut edges = Vec::new();
            for v in 0..n {
                for i in 0..d {
                    let w = v ^ (1 << i);
                    if v < w {
                        edges.push((v, w));
                    }
                }
            }
            Graph::new(n, &edges)
        }
        Family::CompleteMinusMatching(half) => {
            if half < 1 {
                return Err(GraphError::BadParams("matching size must be >= 1".into()));
            }
            let n = 2 * half;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if v != u + half {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, &edges)
        }
    }
}

pub fn cycle(n: usize) -> Graph {
    gen_family(Family::Cycle(n)).unwrap()
}

pub fn path(n: usize) -> Graph {
    gen_family(Family::Path(n)).unwrap()
}

pub fn complete(n: usize) -> Graph {
    gen_family(Family::Complete(n)).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    gen_family(Family::CompleteBipartite(a, b)).unwrap()
}

pub fn hypercube(d: usize) -> Graph {
    gen_family(Family::Hypercube(d)).unwrap()
}

pub fn complete_minus_matching(half: usize) -> Graph {
    gen_family(Family::CompleteMinusMatching(half)).unwrap()
}

// ---------------------------------------------------------------------------
// Derived graphs
// ---------------------------------------------------------------------------

/// The square of `g`: same vertices, an edge wherever `g` has distance 1 or 2.
pub fn square(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for u in 0..g.n() {
        let mut reach: HashSet<usize> = g.neighbors(u).iter().copied().collect();
        for &v in g.neighbors(u) {
            reach.extend(g.neighbors(v).iter().copied());
        }
        for w in reach {
            if u < w {
                edges.push((u, w));
            }
        }
    }
    Graph::new(g.n(), &edges).expect("square of a valid graph is valid")
}

/// The subdivision of `g`: every edge `e = (u, v)` with index `i` is replaced
/// by the path `u - (n + i) - v`.
pub fn subdivision(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.m());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, n + i));
        edges.push((v, n + i));
    }
    Graph::new(n + g.m(), &edges).expect("subdivision of a valid graph is valid")
}

/// Which factor a Cartesian product edge came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeTag {
    /// Edge within a copy of the first factor (second coordinate fixed).
    G,
    /// Edge within a copy of the second factor (first coordinate fixed).
    H,
}

/// Cartesian product of two graphs, with the coordinate map and per-edge
/// provenance kept alongside the plain graph.
///
/// The pair `(u, v)` (u in G, v in H) is vertex `u * h_size + v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    pub graph: Graph,
    g_size: usize,
    h_size: usize,
    edge_tags: Vec<EdgeTag>,
}

impl ProductGraph {
    pub fn g_size(&self) -> usize {
        self.g_size
    }

    pub fn h_size(&self) -> usize {
        self.h_size
    }

    pub fn vertex_id(&self, u: usize, v: usize) -> usize {
        u * self.h_size + v
    }

    /// `(u, v)` coordinates of a product vertex.
    pub fn coords(&self, id: usize) -> (usize, usize) {
        (id / self.h_size, id % self.h_size)
    }

    /// Tag of the edge with the given edge index in `self.graph`.
    pub fn edge_tag(&self, edge_index: usize) -> EdgeTag {
        self.edge_tags[edge_index]
    }

    /// Vertex ids of the copy of G through H-vertex `v` (ascending in G).
    pub fn g_fiber(&self, v: usize) -> Vec<usize> {
        (0..self.g_size).map(|u| self.vertex_id(u, v)).collect()
    }

    /// Vertex ids of the copy of H through G-vertex `u` (ascending in H).
    pub fn h_fiber(&self, u: usize) -> Vec<usize> {
        (0..self.h_size).map(|v| self.vertex_id(u, v)).collect()
    }
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> ProductGraph {
    let hs = h.n();
    let n = g.n() * hs;
    let mut tagged = Vec::with_capacity(g.m() * hs + h.m() * g.n());
    for &(u, up) in g.edges() {
        for v in 0..hs {
            tagged.push(((u * hs + v, up * hs + v), EdgeTag::G));
        }
    }
    for &(v, vp) in h.edges() {
        for u in 0..g.n() {
            tagged.push(((u * hs + v, u * hs + vp), EdgeTag::H));
        }
    }
    // Edge indices in Graph follow sorted order, so sort tags along.
    tagged.sort_unstable_by_key(|&(e, _)| e);
    let edges: Vec<_> = tagged.iter().map(|&(e, _)| e).collect();
    let edge_tags: Vec<_> = tagged.iter().map(|&(_, t)| t).collect();
    let graph = Graph::new(n, &edges).expect("product of valid graphs is valid");
    ProductGraph {
        graph,
        g_size: g.n(),
        h_size: hs,
        edge_tags,
    }
}

// ---------------------------------------------------------------------------
// Brute-force isomorphism (small graphs only)
// ---------------------------------------------------------------------------

/// Backtracking isomorphism search. Exponential in the worst case; intended
/// for the small instances used in tests (roughly n <= 10, or larger when the
/// graphs are symmetric enough to admit many isomorphisms).
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.m() != b.m() {
        return None;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    // Assign images of a's vertices in an order that keeps each new vertex
    // attached to as many already-mapped ones as possible.
    let order = {
        let mut order: Vec<usize> = Vec::with_capacity(a.n());
        let mut placed = vec![false; a.n()];
        for _ in 0..a.n() {
            let pick = (0..a.n())
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let attached = a.neighbors(v).iter().filter(|&&w| placed[w]).count();
                    (attached, a.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[pick] = true;
            order.push(pick);
        }
        order
    };
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    fn go(
        a: &Graph,
        b: &Graph,
        order: &[usize],
        pos: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        'cand: for t in 0..b.n() {
            if used[t] || b.degree(t) != a.degree(v) {
                continue;
            }
            for &w in &order[..pos] {
                if a.has_edge(v, w) != b.has_edge(t, map[w]) {
                    continue 'cand;
                }
            }
            map[v] = t;
            used[t] = true;
            if go(a, b, order, pos + 1, map, used) {
                return true;
            }
            used[t] = false;
            map[v] = usize::MAX;
        }
        false
    }
    if go(a, b, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_degrees() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn isolated_vertex_graph() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn constructor_rejects_self_loop() {
        assert_eq!(Graph::new(3, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
    }

    #[test]
    fn constructor_rejects_duplicates_in_both_orientations() {
        assert_eq!(
            Graph::new(3, &[(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn constructor_rejects_out_of_range() {
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { v: 2, n: 2 })
        );
    }

    #[test]
    fn hypercube_three_is_cubic() {
        let q3 = hypercube(3);
        assert_eq!(q3.n(), 8);
        assert_eq!(q3.m(), 12);
        assert_eq!(q3.regular_degree(), Some(3));
        assert!(q3.is_connected());
    }

    #[test]
    fn complete_minus_matching_two_is_a_four_cycle() {
        let g = complete_minus_matching(2);
        assert_eq!((g.n(), g.m()), (4, 4));
        assert!(is_isomorphic(&g, &cycle(4)));
        // The matching {i, i+2} is exactly what is missing.
        assert!(!g.has_edge(0, 2));
        assert!(!g.has_edge(1, 3));
    }

    #[test]
    fn complete_bipartite_counts() {
        let g = complete_bipartite(3, 3);
        assert_eq!((g.n(), g.m()), (6, 9));
        assert_eq!(g.regular_degree(), Some(3));
    }

    #[test]
    fn cycle_needs_three_vertices() {
        assert!(matches!(
            gen_family(Family::Cycle(2)),
            Err(GraphError::BadParams(_))
        ));
    }

    #[test]
    fn product_c4_k2_is_q3() {
        let p = cartesian_product(&cycle(4), &path(2));
        assert_eq!((p.graph.n(), p.graph.m()), (8, 12));
        assert_eq!(p.graph.regular_degree(), Some(3));
        assert!(is_isomorphic(&p.graph, &hypercube(3)));
    }

    #[test]
    fn product_k2_k2_is_c4() {
        let p = cartesian_product(&path(2), &path(2));
        assert!(is_isomorphic(&p.graph, &cycle(4)));
    }

    #[test]
    fn product_coordinates_and_tags() {
        let g = cycle(4);
        let h = cycle(5);
        let p = cartesian_product(&g, &h);
        assert_eq!((p.graph.n(), p.graph.m()), (20, 40));
        assert_eq!(p.graph.regular_degree(), Some(4));
        for id in 0..p.graph.n() {
            let (u, v) = p.coords(id);
            assert_eq!(p.vertex_id(u, v), id);
        }
        for (i, &(a, b)) in p.graph.edges().iter().enumerate() {
            let (ua, va) = p.coords(a);
            let (ub, vb) = p.coords(b);
            match p.edge_tag(i) {
                EdgeTag::G => {
                    assert_eq!(va, vb);
                    assert!(g.has_edge(ua, ub));
                }
                EdgeTag::H => {
                    assert_eq!(ua, ub);
                    assert!(h.has_edge(va, vb));
                }
            }
        }
    }

    #[test]
    fn product_fibers_induce_factors() {
        let g = cycle(5);
        let h = path(3);
        let p = cartesian_product(&g, &h);
        for v in 0..h.n() {
            let fiber = p.graph.induced(&p.g_fiber(v)).unwrap();
            assert_eq!(fiber, g);
        }
        for u in 0..g.n() {
            let fiber = p.graph.induced(&p.h_fiber(u)).unwrap();
            assert_eq!(fiber, h);
        }
    }

    #[test]
    fn hypercube_splits_as_product_with_k2() {
        // With the id convention (u, v) -> u * h_size + v the product
        // Q_{d-1} x K_2 is Q_d on the nose, not just up to isomorphism.
        for d in 1..=6 {
            let p = cartesian_product(&hypercube(d - 1), &path(2));
            assert_eq!(p.graph, hypercube(d));
        }
        assert!(is_isomorphic(
            &cartesian_product(&hypercube(3), &path(2)).graph,
            &hypercube(4)
        ));
    }

    #[test]
    fn square_of_path_and_cycles() {
        assert!(is_isomorphic(&square(&path(3)), &complete(3)));
        assert!(is_isomorphic(&square(&cycle(5)), &complete(5)));
        let c7sq = square(&cycle(7));
        assert_eq!(c7sq.regular_degree(), Some(4));
        assert_eq!(c7sq.m(), 14);
    }

    #[test]
    fn square_matches_distance_definition() {
        // Independent check straight from the definition.
        for g in [cycle(6), path(5), complete_bipartite(2, 3), hypercube(3)] {
            let sq = square(&g);
            for u in 0..g.n() {
                let dist = g.distances(u);
                for (v, d) in dist.iter().enumerate() {
                    let expect = matches!(d, Some(1) | Some(2));
                    assert_eq!(sq.has_edge(u, v), expect, "u={u} v={v}");
                }
            }
        }
    }

    #[test]
    fn subdivision_examples() {
        assert!(is_isomorphic(&subdivision(&path(2)), &path(3)));
        assert!(is_isomorphic(&subdivision(&cycle(3)), &cycle(6)));
        let sk4 = subdivision(&complete(4));
        assert_eq!((sk4.n(), sk4.m()), (10, 12));
        // Subdivisions are bipartite: original vertices on one side.
        for &(u, v) in sk4.edges() {
            assert!((u < 4) != (v < 4));
        }
    }

    #[test]
    fn product_is_symmetric_up_to_isomorphism() {
        let pairs = [
            (cycle(3), path(3)),
            (path(2), cycle(4)),
            (complete(3), path(2)),
        ];
        for (g, h) in pairs {
            let gh = cartesian_product(&g, &h).graph;
            let hg = cartesian_product(&h, &g).graph;
            assert!(is_isomorphic(&gh, &hg));
        }
    }

    #[test]
    fn induced_subgraph_checks_arguments() {
        let g = cycle(4);
        assert!(matches!(g.induced(&[0, 0]), Err(GraphError::BadParams(_))));
        assert!(matches!(
            g.induced(&[0, 7]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        let sub = g.induced(&[0, 1, 2]).unwrap();
        assert_eq!(sub, path(3));
    }

    #[test]
    fn isomorphism_respects_structure() {
        assert!(!is_isomorphic(&cycle(6), &complete_bipartite(3, 3)));
        assert!(is_isomorphic(&complete_bipartite(2, 2), &cycle(4)));
        let map = find_isomorphism(&cycle(5), &cycle(5)).unwrap();
        let g = cycle(5);
        for &(u, v) in g.edges() {
            assert!(g.has_edge(map[u], map[v]));
        }
    }
}
