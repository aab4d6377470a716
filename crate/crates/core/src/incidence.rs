//! Incidences, adjacency between incidences, incidence colorings and the
//! checks the rest of the crate is built on.
//!
//! An incidence of a graph is a pair (v, e) of a vertex and an edge containing
//! it; we store it as `(v, w)` where `w` is the other endpoint of `e`. Two
//! distinct incidences (v, e) and (u, f) are adjacent when v = u, or e = f, or
//! the edge vu exists and is one of e, f. In the `(v, w)` encoding that
//! collapses to the closed form used by `incidences_adjacent`.

use crate::graph::Graph;
use std::collections::BTreeSet;
use thiserror::Error;

/// The incidence `(v, vw)`: vertex `v` paired with its edge towards `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Incidence {
    pub v: usize,
    pub w: usize,
}

impl Incidence {
    pub fn new(v: usize, w: usize) -> Incidence {
        Incidence { v, w }
    }
}

impl std::fmt::Display for Incidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}{})", self.v, self.v, self.w)
    }
}

/// All 2m incidences, ordered by edge index and, within an edge, by endpoint.
pub fn enumerate_incidences(g: &Graph) -> Vec<Incidence> {
    let mut out = Vec::with_capacity(2 * g.m());
    for &(u, v) in g.edges() {
        out.push(Incidence::new(u, v));
        out.push(Incidence::new(v, u));
    }
    out
}

/// Index of an incidence in `enumerate_incidences` order.
pub fn incidence_index(g: &Graph, inc: Incidence) -> Option<usize> {
    let e = g.edge_index(inc.v, inc.w)?;
    Some(2 * e + usize::from(inc.v > inc.w))
}

/// Inverse of `incidence_index`.
pub fn incidence_at(g: &Graph, idx: usize) -> Incidence {
    let (u, v) = g.edges()[idx / 2];
    if idx.is_multiple_of(2) {
        Incidence::new(u, v)
    } else {
        Incidence::new(v, u)
    }
}

/// Adjacency of incidences in closed form: distinct `a`, `b` are adjacent
/// exactly when `a.v = b.v`, `b.v = a.w`, or `a.v = b.w`.
pub fn incidences_adjacent(a: Incidence, b: Incidence) -> bool {
    a != b && (a.v == b.v || b.v == a.w || a.v == b.w)
}

/// Indices of all incidences adjacent to the one at `idx`, sorted.
///
/// For `(v, w)` these are the other incidences at source v, everything
/// pointing at v, and everything leaving w.
pub fn adjacent_incidence_indices(g: &Graph, idx: usize) -> Vec<usize> {
    let a = incidence_at(g, idx);
    let mut out = Vec::new();
    for &x in g.neighbors(a.v) {
        if x != a.w {
            out.push(incidence_index(g, Incidence::new(a.v, x)).unwrap());
        }
        out.push(incidence_index(g, Incidence::new(x, a.v)).unwrap());
    }
    for &x in g.neighbors(a.w) {
        if x != a.v {
            out.push(incidence_index(g, Incidence::new(a.w, x)).unwrap());
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Conflict lists for all incidences of `g`; position i lists the incidence
/// indices adjacent to incidence i. This is the constraint graph the exact
/// solvers color.
pub fn incidence_conflicts(g: &Graph) -> Vec<Vec<u32>> {
    (0..2 * g.m())
        .map(|i| {
            adjacent_incidence_indices(g, i)
                .into_iter()
                .map(|x| x as u32)
                .collect()
        })
        .collect()
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ColoringError {
    #[error("expected {expected} colors (one per incidence), got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("color {color} out of range for palette of size {palette}")]
    ColorOutOfRange { color: usize, palette: usize },
    #[error("({v}, {w}) is not an incidence of the host graph")]
    NotAnIncidence { v: usize, w: usize },
    #[error("incidence ({v}, {w}) listed more than once")]
    DuplicateIncidence { v: usize, w: usize },
}

/// A total assignment of palette colors to the incidences of a host graph.
///
/// Totality and color range are enforced at construction; *validity* (no two
/// adjacent incidences sharing a color) is not, so candidate colorings can be
/// represented and then checked with [`verify_coloring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceColoring {
    host: Graph,
    palette: usize,
    colors: Vec<usize>,
}

impl IncidenceColoring {
    pub fn new(host: Graph, palette: usize, colors: Vec<usize>) -> Result<Self, ColoringError> {
        if colors.len() != 2 * host.m() {
            return Err(ColoringError::WrongLength {
                expected: 2 * host.m(),
                got: colors.len(),
            });
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= palette) {
            return Err(ColoringError::ColorOutOfRange { color: c, palette });
        }
        Ok(IncidenceColoring {
            host,
            palette,
            colors,
        })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn palette_size(&self) -> usize {
        self.palette
    }

    /// Colors in `enumerate_incidences` order.
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color_at(&self, idx: usize) -> usize {
        self.colors[idx]
    }

    pub fn color_of(&self, inc: Incidence) -> Option<usize> {
        incidence_index(&self.host, inc).map(|i| self.colors[i])
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// The lexicographically first (by incidence index pair) conflicting pair.
    Violation(Incidence, Incidence),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Check that no two adjacent incidences share a color. On failure reports
/// the first conflict in lexicographic incidence-index order.
pub fn verify_coloring(c: &IncidenceColoring) -> Verdict {
    let g = c.host();
    for i in 0..c.colors.len() {
        let mut best: Option<usize> = None;
        for j in adjacent_incidence_indices(g, i) {
            if j > i && c.colors[j] == c.colors[i] {
                best = Some(best.map_or(j, |b| b.min(j)));
                break; // adjacent indices are sorted, the first hit is minimal
            }
        }
        if let Some(j) = best {
            return Verdict::Violation(incidence_at(g, i), incidence_at(g, j));
        }
    }
    Verdict::Valid
}

/// The color spectrum of a vertex: `s0` collects the colors of incidences
/// leaving v, `s1` the colors of incidences pointing at v from its neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub s0: BTreeSet<usize>,
    pub s1: BTreeSet<usize>,
}

impl Spectrum {
    pub fn union(&self) -> BTreeSet<usize> {
        self.s0.union(&self.s1).copied().collect()
    }
}

pub fn spectrum(c: &IncidenceColoring, v: usize) -> Spectrum {
    let g = c.host();
    let mut s0 = BTreeSet::new();
    let mut s1 = BTreeSet::new();
    for &w in g.neighbors(v) {
        s0.insert(c.color_of(Incidence::new(v, w)).unwrap());
        s1.insert(c.color_of(Incidence::new(w, v)).unwrap());
    }
    Spectrum { s0, s1 }
}

/// Valid, and every vertex sees at most `p` distinct incoming colors.
pub fn verify_kp(c: &IncidenceColoring, p: usize) -> bool {
    verify_coloring(c).is_valid() && (0..c.host().n()).all(|v| spectrum(c, v).s1.len() <= p)
}

/// True when every vertex's incoming incidences all carry one color.
pub fn incoming_constancy(c: &IncidenceColoring) -> bool {
    (0..c.host().n()).all(|v| spectrum(c, v).s1.len() <= 1)
}

/// Unordered palette color pairs `{x, y}` such that no vertex has both x and
/// y in its outgoing spectrum. Returned as `(x, y)` with `x < y`.
pub fn free_color_pairs(c: &IncidenceColoring) -> BTreeSet<(usize, usize)> {
    let spectra: Vec<BTreeSet<usize>> = (0..c.host().n()).map(|v| spectrum(c, v).s0).collect();
    let mut out = BTreeSet::new();
    for x in 0..c.palette_size() {
        for y in x + 1..c.palette_size() {
            if spectra
                .iter()
                .all(|s0| !(s0.contains(&x) && s0.contains(&y)))
            {
                out.insert((x, y));
            }
        }
    }
    out
}

/// Every vertex of `g` is in `set` or adjacent to a member of `set`.
///
/// Panics if `set` contains an out-of-range vertex.
pub fn is_dominating_set(g: &Graph, set: &[usize]) -> bool {
    let mut covered = vec![false; g.n()];
    for &v in set {
        assert!(v < g.n(), "vertex {v} out of range");
        covered[v] = true;
        for &w in g.neighbors(v) {
            covered[w] = true;
        }
    }
    covered.iter().all(|&x| x)
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PartitionError {
    #[error("not a partition of the vertex set: {0}")]
    NotAPartition(String),
}

/// Check that `parts` is a partition of V(g) into dominating sets.
pub fn dominating_partition_check(g: &Graph, parts: &[Vec<usize>]) -> Result<bool, PartitionError> {
    let mut seen = vec![false; g.n()];
    for part in parts {
        for &v in part {
            if v >= g.n() {
                return Err(PartitionError::NotAPartition(format!(
                    "vertex {v} out of range"
                )));
            }
            if seen[v] {
                return Err(PartitionError::NotAPartition(format!(
                    "vertex {v} appears twice"
                )));
            }
            seen[v] = true;
        }
    }
    if let Some(v) = seen.iter().position(|&x| !x) {
        return Err(PartitionError::NotAPartition(format!("vertex {v} missing")));
    }
    Ok(parts.iter().all(|part| is_dominating_set(g, part)))
}
