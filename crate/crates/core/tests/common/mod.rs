//! Shared helpers for the integration suites. The decoders and validity
//! checkers here are written independently of the library code paths they
//! exercise, so agreement between the two is meaningful.

#![allow(dead_code)]
// index loops below mirror matrix definitions; iterator forms read worse
#![allow(clippy::needless_range_loop)]

use icg::graph::{Graph, GraphError};
use icg::incidence::{Incidence, IncidenceColoring};

/// Reference graph6 decoder working by direct bit-index arithmetic: the bit
/// for pair (i, j), i < j, sits at position j*(j-1)/2 + i of the stream,
/// most significant bit of each data byte first.
pub fn decode_g6_reference(line: &str) -> (usize, Vec<Vec<bool>>) {
    let bytes = line.trim().as_bytes();
    assert!(!bytes.is_empty(), "empty graph6 line");
    assert_ne!(bytes[0], b'~', "reference decoder handles short form only");
    let n = (bytes[0] - 63) as usize;
    let data = &bytes[1..];
    let mut adj = vec![vec![false; n]; n];
    for j in 1..n {
        for i in 0..j {
            let p = j * (j - 1) / 2 + i;
            let byte = (data[p / 6] - 63) as usize;
            if byte >> (5 - p % 6) & 1 == 1 {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    (n, adj)
}

pub fn graph_from_matrix(adj: &[Vec<bool>]) -> Graph {
    let n = adj.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if adj[i][j] {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// The textbook adjacency definition, case by case: two distinct incidences
/// (v, e) and (u, f) interfere when v = u, or e = f, or the edge uv is one
/// of e, f. Incidence (v, w) stands for vertex v on edge {v, w}.
pub fn reference_incidences_adjacent(a: Incidence, b: Incidence) -> bool {
    if a == b {
        return false;
    }
    let ea = (a.v.min(a.w), a.v.max(a.w));
    let eb = (b.v.min(b.w), b.v.max(b.w));
    let joining = (a.v.min(b.v), a.v.max(b.v));
    a.v == b.v || ea == eb || joining == ea || joining == eb
}

/// Quadratic validity check against the reference adjacency definition.
pub fn reference_coloring_valid(c: &IncidenceColoring) -> bool {
    let g = c.host();
    let incs: Vec<Incidence> = icg::incidence::enumerate_incidences(g);
    for (i, &a) in incs.iter().enumerate() {
        for &b in &incs[i + 1..] {
            if reference_incidences_adjacent(a, b)
                && c.color_of(a).unwrap() == c.color_of(b).unwrap()
            {
                return false;
            }
        }
    }
    true
}

/// Strong edge coloring validity: edges that share an endpoint, or whose
/// endpoints are joined by an edge, must differ. Colors are indexed by the
/// graph's edge order.
pub fn strong_edge_coloring_valid(g: &Graph, colors: &[usize]) -> bool {
    let edges = g.edges();
    assert_eq!(colors.len(), edges.len());
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            let touching = a == c || a == d || b == c || b == d;
            let near = g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d);
            if (touching || near) && colors[i] == colors[j] {
                return false;
            }
        }
    }
    true
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

pub fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_index(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for shorter in permutations(n - 1) {
        for slot in 0..n {
            let mut p = shorter.clone();
            p.insert(slot, n - 1);
            out.push(p);
        }
    }
    out
}

fn relabel_mask(n: usize, mask: u32, perm: &[usize]) -> u32 {
    let mut out = 0u32;
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_index(i, j) & 1 == 1 {
                let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                out |= 1 << pair_index(a, b);
            }
        }
    }
    out
}

/// One representative per isomorphism class of connected graphs on 1..=max_n
/// vertices, deduplicated by the minimum edge-mask over all relabelings.
pub fn connected_classes_up_to(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= 7, "exhaustive relabeling is exponential");
    let mut reps = Vec::new();
    for n in 1..=max_n {
        let perms = permutations(n);
        let pairs = n * (n - 1) / 2;
        let mut seen = std::collections::HashSet::new();
        for mask in 0..1u32 << pairs {
            let g = graph_from_mask(n, mask);
            if !g.is_connected() {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| relabel_mask(n, mask, p))
                .min()
                .unwrap();
            if seen.insert(canon) {
                reps.push(graph_from_mask(n, canon));
            }
        }
    }
    reps
}

/// One representative per isomorphism class of connected cubic graphs on n
/// vertices, by backtracking over the pair list with degree bounds, then
/// isomorphism-testing against the representatives found so far.
pub fn connected_cubic_classes(n: usize) -> Vec<Graph> {
    let mut reps: Vec<Graph> = Vec::new();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    // rem[k][v]: pairs at index >= k that involve v, for the pigeonhole prune
    let mut rem = vec![vec![0usize; n]; pairs.len() + 1];
    for k in (0..pairs.len()).rev() {
        for v in 0..n {
            rem[k][v] = rem[k + 1][v] + usize::from(pairs[k].0 == v || pairs[k].1 == v);
        }
    }
    let mut deg = vec![0usize; n];
    let mut chosen = Vec::new();
    fn rec(
        k: usize,
        pairs: &[(usize, usize)],
        rem: &[Vec<usize>],
        deg: &mut [usize],
        chosen: &mut Vec<(usize, usize)>,
        n: usize,
        reps: &mut Vec<Graph>,
    ) {
        if deg.iter().enumerate().any(|(v, &d)| d + rem[k][v] < 3) {
            return;
        }
        if k == pairs.len() {
            let g = Graph::new(n, chosen).unwrap();
            if g.is_connected() && !reps.iter().any(|r| icg::graph::is_isomorphic(r, &g)) {
                reps.push(g);
            }
            return;
        }
        let (a, b) = pairs[k];
        if deg[a] < 3 && deg[b] < 3 {
            deg[a] += 1;
            deg[b] += 1;
            chosen.push((a, b));
            rec(k + 1, pairs, rem, deg, chosen, n, reps);
            chosen.pop();
            deg[a] -= 1;
            deg[b] -= 1;
        }
        rec(k + 1, pairs, rem, deg, chosen, n, reps);
    }
    rec(0, &pairs, &rem, &mut deg, &mut chosen, n, &mut reps);
    reps
}

pub fn corpus_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join("quartic12_connected.g6")
}

pub fn load_corpus() -> String {
    std::fs::read_to_string(corpus_path()).expect("corpus file present")
}

/// Build a graph, panicking with the error message on invalid input.
pub fn must(g: Result<Graph, GraphError>) -> Graph {
    g.unwrap()
}
