//! Locally injective homomorphisms and the coloring constructions built on
//! them: the permutable and sub-permutable tests against complete graphs minus
//! a perfect matching, adjustable colorings from homomorphisms into a looped
//! complete graph, and pullbacks of incidence colorings along locally
//! injective maps.

use std::collections::BTreeSet;

use crate::graph::{complete, complete_minus_matching, Graph, GraphError};
use crate::incidence::{incidence_at, incidence_index, Incidence, IncidenceColoring};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum HomError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("no valid target: maximum degree {delta} is odd, and complete graphs minus a perfect matching have even order")]
    NoTarget { delta: usize },
    #[error("not a valid locally injective homomorphism: {0}")]
    InvalidHomomorphism(String),
    #[error("source edge ({0}, {1}) maps to a non-edge of the coloring's host")]
    EdgeNotInTarget(usize, usize),
}

/// A homomorphism target: a simple graph plus an optional set of looped
/// vertices. A loop lets two adjacent source vertices share that image; it
/// does not interact with local injectivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetGraph {
    base: Graph,
    loops: BTreeSet<usize>,
}

impl TargetGraph {
    pub fn new(base: Graph, loops: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        let loops: BTreeSet<usize> = loops.into_iter().collect();
        if let Some(&v) = loops.iter().find(|&&v| v >= base.n()) {
            return Err(GraphError::VertexOutOfRange { v, n: base.n() });
        }
        Ok(TargetGraph { base, loops })
    }

    pub fn simple(base: Graph) -> Self {
        TargetGraph {
            base,
            loops: BTreeSet::new(),
        }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.loops.iter().copied()
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Adjacency for image purposes: a loop makes a vertex its own neighbor.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        if a == b {
            self.loops.contains(&a)
        } else {
            self.base.has_edge(a, b)
        }
    }
}

/// K_{2*half} minus the perfect matching {i, i + half}.
pub fn complete_minus_matching_target(half: usize) -> TargetGraph {
    TargetGraph::simple(complete_minus_matching(half))
}

/// The complete graph of order n with a loop at vertex 0.
pub fn looped_complete(n: usize) -> TargetGraph {
    TargetGraph::new(complete(n), [0]).unwrap()
}

/// The matched partner of vertex i under the fixed matching {i, i + half} of
/// K_{2*half} minus a perfect matching.
pub fn bar(half: usize, i: usize) -> usize {
    (i + half) % (2 * half)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

impl Homomorphism {
    /// Full validation: right length, images in range, every source edge maps
    /// to a target edge (or a loop), and the map is injective on each open
    /// neighborhood.
    pub fn check(&self, source: &Graph, target: &TargetGraph) -> Result<(), HomError> {
        if self.map.len() != source.n() {
            return Err(HomError::InvalidHomomorphism(format!(
                "map has {} entries for a source on {} vertices",
                self.map.len(),
                source.n()
            )));
        }
        if let Some((v, &img)) = self
            .map
            .iter()
            .enumerate()
            .find(|&(_, &img)| img >= target.n())
        {
            return Err(HomError::InvalidHomomorphism(format!(
                "vertex {v} maps to {img}, outside the target of order {}",
                target.n()
            )));
        }
        for &(u, v) in source.edges() {
            if !target.adjacent(self.map[u], self.map[v]) {
                return Err(HomError::InvalidHomomorphism(format!(
                    "edge ({u}, {v}) maps to the non-adjacent pair ({}, {})",
                    self.map[u], self.map[v]
                )));
            }
        }
        for v in 0..source.n() {
            let nb = source.neighbors(v);
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    if self.map[nb[i]] == self.map[nb[j]] {
                        return Err(HomError::InvalidHomomorphism(format!(
                            "not locally injective: neighbors {} and {} of {v} share image {}",
                            nb[i], nb[j], self.map[nb[i]]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// For each vertex, the other vertices with which it shares a neighbor. Two
/// such vertices must receive distinct images under any locally injective map.
fn common_neighbor_pairs(g: &Graph) -> Vec<Vec<usize>> {
    let mut pairs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.n()];
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                pairs[nb[i]].insert(nb[j]);
                pairs[nb[j]].insert(nb[i]);
            }
        }
    }
    pairs.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Backtracking search; `pins` fixes the images of the first one or two
/// vertices in the search order and is only sound for targets whose
/// automorphisms act transitively on vertices and arcs.
fn search_hom(source: &Graph, target: &TargetGraph, pins: usize) -> Option<Homomorphism> {
    let n = source.n();
    let t = target.n();
    if n == 0 {
        return Some(Homomorphism { map: Vec::new() });
    }
    if t == 0 {
        return None;
    }
    let order = source.bfs_order();
    let li_pairs = common_neighbor_pairs(source);
    let mut map = vec![usize::MAX; n];

    fn feasible(
        source: &Graph,
        target: &TargetGraph,
        li_pairs: &[Vec<usize>],
        map: &[usize],
        v: usize,
        c: usize,
    ) -> bool {
        for &w in source.neighbors(v) {
            if map[w] != usize::MAX && !target.adjacent(c, map[w]) {
                return false;
            }
        }
        li_pairs[v].iter().all(|&u| map[u] != c)
    }

    fn rec(
        source: &Graph,
        target: &TargetGraph,
        order: &[usize],
        li_pairs: &[Vec<usize>],
        map: &mut [usize],
        pos: usize,
        pins: usize,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let candidates: std::ops::Range<usize> = match pos {
            0 if pins >= 1 => 0..1,
            1 if pins >= 2 && source.has_edge(order[0], order[1]) => 1..2,
            _ => 0..target.n(),
        };
        for c in candidates {
            if feasible(source, target, li_pairs, map, v, c) {
                map[v] = c;
                if rec(source, target, order, li_pairs, map, pos + 1, pins) {
                    return true;
                }
                map[v] = usize::MAX;
            }
        }
        false
    }

    rec(source, target, &order, &li_pairs, &mut map, 0, pins).then_some(Homomorphism { map })
}

/// Exhaustive search for a locally injective homomorphism. Vertices are
/// assigned in BFS order from vertex 0 and images are tried in ascending
/// order, so the first certificate is deterministic.
pub fn find_loc_inj_hom(source: &Graph, target: &TargetGraph) -> Option<Homomorphism> {
    search_hom(source, target, 0)
}

/// Pinned variant for complete-minus-matching targets. Those targets are
/// vertex- and arc-transitive, so fixing the first image to 0 (and the second
/// to 1 when the first two search vertices are adjacent) changes neither the
/// outcome nor the first certificate, only the work done to find it.
fn search_hom_to_k_minus(source: &Graph, half: usize) -> Option<Homomorphism> {
    let target = complete_minus_matching_target(half);
    search_hom(source, &target, 2)
}

/// Does a connected 2d-regular graph admit a locally injective homomorphism
/// to K_{2d+2} minus a perfect matching? Returns the first certificate.
pub fn is_2_permutable(g: &Graph) -> Result<Option<Homomorphism>, HomError> {
    if !g.is_connected() {
        return Err(HomError::NotApplicable("graph is not connected".into()));
    }
    let d = match g.regular_degree() {
        None => {
            return Err(HomError::NotApplicable("graph is not regular".into()));
        }
        Some(d) => d,
    };
    if d % 2 != 0 {
        return Err(HomError::NotApplicable(format!(
            "graph is {d}-regular, which is odd"
        )));
    }
    Ok(search_hom_to_k_minus(g, d / 2 + 1))
}

/// Relaxation dropping regularity and connectivity: the target becomes
/// K_{Delta+2} minus a perfect matching, which only exists for even Delta.
pub fn is_sub_2_permutable(g: &Graph) -> Result<Option<Homomorphism>, HomError> {
    let delta = g.max_degree();
    if !delta.is_multiple_of(2) {
        return Err(HomError::NoTarget { delta });
    }
    Ok(search_hom_to_k_minus(g, delta / 2 + 1))
}

/// Coloring from a homomorphism h into K_{Delta+2} minus a perfect matching:
/// the incidence (u, uw) takes color h(w). The incoming spectrum of each u is
/// then the singleton {h(u)}, and the partner bar(h(u)) misses u entirely, so
/// the result is a (Delta+2, 1)-coloring with a known absent color per vertex.
pub fn permutable_coloring(g: &Graph, h: &Homomorphism) -> Result<IncidenceColoring, HomError> {
    let delta = g.max_degree();
    if !delta.is_multiple_of(2) {
        return Err(HomError::InvalidHomomorphism(format!(
            "no complete-minus-matching target of order {} exists",
            delta + 2
        )));
    }
    let target = complete_minus_matching_target(delta / 2 + 1);
    h.check(g, &target)?;
    let colors: Vec<usize> = (0..2 * g.m())
        .map(|i| h.map[incidence_at(g, i).w])
        .collect();
    let coloring = IncidenceColoring::new(g.clone(), delta + 2, colors)
        .expect("images lie within the palette");
    debug_assert!(crate::incidence::verify_kp(&coloring, 1));
    Ok(coloring)
}

/// Coloring from a homomorphism h into the complete graph of order Delta+1
/// with a loop at vertex 0. Incidences pointing at a vertex with nonzero
/// image j get color j - 1. The preimage of the loop vertex induces a graph
/// of maximum degree one (local injectivity), and those incidences get one of
/// the two spare colors {Delta, Delta+1} via a greedy proper 2-coloring by
/// ascending vertex id. The spare colors never meet in an outgoing spectrum,
/// so the result is adjustable with free pair {Delta, Delta+1}.
pub fn adjustable_from_loop_hom(
    g: &Graph,
    h: &Homomorphism,
) -> Result<IncidenceColoring, HomError> {
    let delta = g.max_degree();
    let target = looped_complete(delta + 1);
    h.check(g, &target)?;

    let mut d = vec![usize::MAX; g.n()];
    for u in 0..g.n() {
        if h.map[u] != 0 {
            continue;
        }
        let partner = g
            .neighbors(u)
            .iter()
            .find(|&&w| h.map[w] == 0 && d[w] != usize::MAX)
            .map(|&w| d[w]);
        d[u] = match partner {
            Some(c) => delta + (delta + 1) - c,
            None => delta,
        };
    }

    let colors: Vec<usize> = (0..2 * g.m())
        .map(|i| {
            let w = incidence_at(g, i).w;
            if h.map[w] > 0 {
                h.map[w] - 1
            } else {
                d[w]
            }
        })
        .collect();
    let coloring = IncidenceColoring::new(g.clone(), delta + 2, colors)
        .expect("colors lie within the palette");
    debug_assert!(crate::incidence::verify_kp(&coloring, 1));
    debug_assert!(crate::incidence::free_color_pairs(&coloring).contains(&(delta, delta + 1)));
    Ok(coloring)
}

/// Pull a valid coloring of the target back along a locally injective
/// homomorphism: the incidence (v, vu) takes the color of (h(v), h(v)h(u)).
/// Validity carries over with the same palette.
pub fn pullback_coloring(
    g: &Graph,
    h: &Homomorphism,
    c_target: &IncidenceColoring,
) -> Result<IncidenceColoring, HomError> {
    let host = c_target.host();
    if h.map.len() != g.n() || h.map.iter().any(|&img| img >= host.n()) {
        return Err(HomError::InvalidHomomorphism(format!(
            "map must send {} source vertices into a host of order {}",
            g.n(),
            host.n()
        )));
    }
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if h.map[nb[i]] == h.map[nb[j]] {
                    return Err(HomError::InvalidHomomorphism(format!(
                        "not locally injective: neighbors {} and {} of {v} share image {}",
                        nb[i], nb[j], h.map[nb[i]]
                    )));
                }
            }
        }
    }
    for &(u, v) in g.edges() {
        if !host.has_edge(h.map[u], h.map[v]) {
            return Err(HomError::EdgeNotInTarget(u, v));
        }
    }
    let colors: Vec<usize> = (0..2 * g.m())
        .map(|i| {
            let inc = incidence_at(g, i);
            let timg = Incidence {
                v: h.map[inc.v],
                w: h.map[inc.w],
            };
            let tidx = incidence_index(host, timg).expect("edge images exist in the host");
            c_target.colors()[tidx]
        })
        .collect();
    let coloring = IncidenceColoring::new(g.clone(), c_target.palette_size(), colors)
        .expect("palette is shared with the target coloring");
    debug_assert!(crate::incidence::verify_coloring(&coloring).is_valid());
    Ok(coloring)
}
