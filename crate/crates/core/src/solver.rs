//! Exact solvers: incidence chromatic number (plain and with bounded incoming
//! spectra), ordinary chromatic number, adjustable-coloring search, dominating
//! partitions, and a strong edge coloring solver kept deliberately separate so
//! it can serve as an independent cross-check of the incidence route.
//!
//! The shared engine is branch and bound over a fixed most-constrained-first
//! item order with forward checking. Symmetry is broken by only allowing a new
//! color once all smaller colors have appeared, so node counts are
//! deterministic for a given input.

use crate::graph::Graph;
use crate::incidence::{incidence_at, incidence_conflicts, IncidenceColoring};
use thiserror::Error;

/// Hard engine limit: colors are tracked in 64-bit masks.
pub const MAX_PALETTE: usize = 64;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SolveError {
    #[error("no coloring within the bound of {bound} colors")]
    ExceedsBound { bound: usize },
    #[error("palettes larger than {MAX_PALETTE} colors are not supported")]
    PaletteTooLarge,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult<W> {
    pub optimum: usize,
    pub witness: W,
    /// Total branch nodes committed across the whole solve. Deterministic:
    /// solving the same instance twice explores the same tree.
    pub nodes_explored: u64,
}

// ---------------------------------------------------------------------------
// Shared k-colorability engine
// ---------------------------------------------------------------------------

/// Assignment order: start at the item with the most conflicts, then always
/// take the item with the most already-ordered neighbors. Ties fall back to
/// conflict degree, then index, so the order is a pure function of the input.
fn assignment_order(adj: &[Vec<u32>]) -> Vec<u32> {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut attached = vec![0usize; n];
    for _ in 0..n {
        let pick = (0..n)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| (attached[i], adj[i].len(), std::cmp::Reverse(i)))
            .unwrap();
        placed[pick] = true;
        order.push(pick as u32);
        for &j in &adj[pick] {
            attached[j as usize] += 1;
        }
    }
    order
}

/// Optional side constraints threaded through the engine.
struct Extra<'a> {
    /// `(group per item, group count, p)`: items of one group may carry at
    /// most `p` distinct colors between them. Used for bounded incoming
    /// spectra, where the group of an incidence is the vertex it points at.
    s1_limit: Option<(&'a [usize], usize, usize)>,
    /// `(group per item, group count, x, y)`: colors `x` and `y` must never
    /// both appear within one group. Used for the adjustable-coloring search,
    /// where the group of an incidence is its source vertex.
    free_pair: Option<(&'a [usize], usize, usize, usize)>,
}

impl Extra<'_> {
    const NONE: Extra<'static> = Extra {
        s1_limit: None,
        free_pair: None,
    };
}

struct EngineState<'a> {
    adj: &'a [Vec<u32>],
    order: &'a [u32],
    k: usize,
    colors: Vec<usize>,
    assigned: Vec<bool>,
    /// Per item: how many assigned neighbors carry each color, the mask of
    /// colors with nonzero count, and the number of such colors.
    block_cnt: Vec<Vec<u16>>,
    block_mask: Vec<u64>,
    blocked_n: Vec<usize>,
    s1: Option<S1State<'a>>,
    fp: Option<FpState<'a>>,
    nodes: u64,
}

struct S1State<'a> {
    group: &'a [usize],
    p: usize,
    cnt: Vec<Vec<u16>>,
    mask: Vec<u64>,
    distinct: Vec<usize>,
}

struct FpState<'a> {
    group: &'a [usize],
    x: usize,
    y: usize,
    has_x: Vec<bool>,
    has_y: Vec<bool>,
}

impl EngineState<'_> {
    /// `max_used_low` is the largest already-used color subject to the
    /// ascending-introduction rule (all colors in plain mode, only the colors
    /// below the free pair when a free pair is active).
    fn run(&mut self, pos: usize, max_used_low: isize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let item = self.order[pos] as usize;
        let low_limit = match &self.fp {
            Some(fp) => fp.x,
            None => self.k,
        };
        let reach = (max_used_low + 2).min(low_limit as isize).max(0) as usize;
        let mut allowed = if reach >= 64 {
            !0u64
        } else {
            (1u64 << reach) - 1
        };
        if let Some(fp) = &self.fp {
            if fp.x < self.k {
                allowed |= 1 << fp.x;
            }
            if fp.y < self.k {
                allowed |= 1 << fp.y;
            }
        }
        allowed &= !self.block_mask[item];
        while allowed != 0 {
            let c = allowed.trailing_zeros() as usize;
            allowed &= allowed - 1;
            if let Some(s1) = &self.s1 {
                let gr = s1.group[item];
                if s1.mask[gr] & (1 << c) == 0 && s1.distinct[gr] == s1.p {
                    continue;
                }
            }
            if let Some(fp) = &self.fp {
                let gr = fp.group[item];
                if (c == fp.x && fp.has_y[gr]) || (c == fp.y && fp.has_x[gr]) {
                    continue;
                }
            }
            self.nodes += 1;
            self.colors[item] = c;
            self.assigned[item] = true;
            if let Some(s1) = &mut self.s1 {
                let gr = s1.group[item];
                s1.cnt[gr][c] += 1;
                if s1.cnt[gr][c] == 1 {
                    s1.mask[gr] |= 1 << c;
                    s1.distinct[gr] += 1;
                }
            }
            if let Some(fp) = &mut self.fp {
                let gr = fp.group[item];
                if c == fp.x {
                    fp.has_x[gr] = true;
                } else if c == fp.y {
                    fp.has_y[gr] = true;
                }
            }
            let mut dead = false;
            for &j in &self.adj[item] {
                let j = j as usize;
                self.block_cnt[j][c] += 1;
                if self.block_cnt[j][c] == 1 {
                    self.block_mask[j] |= 1 << c;
                    self.blocked_n[j] += 1;
                }
                if !self.assigned[j] && self.blocked_n[j] == self.k {
                    dead = true;
                }
            }
            let next_low = if c < low_limit {
                max_used_low.max(c as isize)
            } else {
                max_used_low
            };
            if !dead && self.run(pos + 1, next_low) {
                return true;
            }
            for &j in &self.adj[item] {
                let j = j as usize;
                self.block_cnt[j][c] -= 1;
                if self.block_cnt[j][c] == 0 {
                    self.block_mask[j] &= !(1 << c);
                    self.blocked_n[j] -= 1;
                }
            }
            if let Some(s1) = &mut self.s1 {
                let gr = s1.group[item];
                s1.cnt[gr][c] -= 1;
                if s1.cnt[gr][c] == 0 {
                    s1.mask[gr] &= !(1 << c);
                    s1.distinct[gr] -= 1;
                }
            }
            if let Some(fp) = &mut self.fp {
                let gr = fp.group[item];
                if c == fp.x {
                    fp.has_x[gr] = false;
                } else if c == fp.y {
                    fp.has_y[gr] = false;
                }
            }
            self.assigned[item] = false;
            self.colors[item] = usize::MAX;
        }
        false
    }
}

/// Search for a proper coloring of the conflict structure with exactly `k`
/// colors available. Returns the item colors on success and adds the explored
/// node count to `nodes`.
fn search_fixed_k(
    adj: &[Vec<u32>],
    k: usize,
    extra: Extra<'_>,
    nodes: &mut u64,
) -> Option<Vec<usize>> {
    debug_assert!(k <= MAX_PALETTE);
    let n = adj.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let order = assignment_order(adj);
    let mut st = EngineState {
        adj,
        order: &order,
        k,
        colors: vec![usize::MAX; n],
        assigned: vec![false; n],
        block_cnt: vec![vec![0; k]; n],
        block_mask: vec![0; n],
        blocked_n: vec![0; n],
        s1: extra.s1_limit.map(|(group, groups, p)| S1State {
            group,
            p,
            cnt: vec![vec![0; k]; groups],
            mask: vec![0; groups],
            distinct: vec![0; groups],
        }),
        fp: extra.free_pair.map(|(group, groups, x, y)| FpState {
            group,
            x,
            y,
            has_x: vec![false; groups],
            has_y: vec![false; groups],
        }),
        nodes: 0,
    };
    let found = st.run(0, -1);
    *nodes += st.nodes;
    found.then_some(st.colors)
}

/// Deterministic greedy clique, used as a lower bound for palette searches.
fn greedy_clique(adj: &[Vec<u32>]) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    let is_adj = |a: usize, b: usize| adj[a].binary_search(&(b as u32)).is_ok();
    let start = (0..n)
        .max_by_key(|&i| (adj[i].len(), std::cmp::Reverse(i)))
        .unwrap();
    let mut clique = vec![start];
    let mut cands: Vec<usize> = adj[start].iter().map(|&x| x as usize).collect();
    cands.sort_by_key(|&i| (std::cmp::Reverse(adj[i].len()), i));
    for c in cands {
        if clique.iter().all(|&q| is_adj(q, c)) {
            clique.push(c);
        }
    }
    clique.len()
}

// ---------------------------------------------------------------------------
// Incidence chromatic numbers
// ---------------------------------------------------------------------------

fn empty_coloring(g: &Graph) -> IncidenceColoring {
    IncidenceColoring::new(g.clone(), 0, Vec::new()).expect("empty coloring is well formed")
}

fn coloring_from(g: &Graph, k: usize, colors: Vec<usize>) -> IncidenceColoring {
    IncidenceColoring::new(g.clone(), k, colors).expect("engine output is total and in range")
}

/// The incidence chromatic number, found by exhausting palette sizes upward
/// from the clique bound Delta + 1 (the incidences at a maximum-degree vertex
/// plus one incoming all need distinct colors).
pub fn chi_i(
    g: &Graph,
    max_colors: Option<usize>,
) -> Result<SolveResult<IncidenceColoring>, SolveError> {
    if g.m() == 0 {
        return Ok(SolveResult {
            optimum: 0,
            witness: empty_coloring(g),
            nodes_explored: 0,
        });
    }
    let delta = g.max_degree();
    let bound = max_colors.unwrap_or(2 * delta);
    if bound > MAX_PALETTE {
        return Err(SolveError::PaletteTooLarge);
    }
    let adj = incidence_conflicts(g);
    let mut nodes = 0;
    for k in delta + 1..=bound {
        if let Some(colors) = search_fixed_k(&adj, k, Extra::NONE, &mut nodes) {
            return Ok(SolveResult {
                optimum: k,
                witness: coloring_from(g, k, colors),
                nodes_explored: nodes,
            });
        }
    }
    Err(SolveError::ExceedsBound { bound })
}

/// The least k admitting a (k, p)-incidence coloring: valid, and every vertex
/// sees at most p distinct incoming colors. The default cap is Delta^2 + 1,
/// which covers even the strictest case p = 1 via the square of the graph.
pub fn chi_ip(
    g: &Graph,
    p: usize,
    max_colors: Option<usize>,
) -> Result<SolveResult<IncidenceColoring>, SolveError> {
    if p == 0 {
        return Err(SolveError::InvalidParameter("p must be at least 1".into()));
    }
    if g.m() == 0 {
        return Ok(SolveResult {
            optimum: 0,
            witness: empty_coloring(g),
            nodes_explored: 0,
        });
    }
    let delta = g.max_degree();
    let bound = max_colors.unwrap_or(delta * delta + 1);
    if bound > MAX_PALETTE {
        return Err(SolveError::PaletteTooLarge);
    }
    let adj = incidence_conflicts(g);
    let group: Vec<usize> = (0..2 * g.m()).map(|i| incidence_at(g, i).w).collect();
    let mut nodes = 0;
    for k in delta + 1..=bound {
        let extra = Extra {
            s1_limit: Some((&group, g.n(), p)),
            free_pair: None,
        };
        if let Some(colors) = search_fixed_k(&adj, k, extra, &mut nodes) {
            return Ok(SolveResult {
                optimum: k,
                witness: coloring_from(g, k, colors),
                nodes_explored: nodes,
            });
        }
    }
    Err(SolveError::ExceedsBound { bound })
}

/// Ordinary (vertex) chromatic number with witness.
pub fn chromatic_number(
    g: &Graph,
    max_colors: Option<usize>,
) -> Result<SolveResult<Vec<usize>>, SolveError> {
    if g.n() == 0 {
        return Ok(SolveResult {
            optimum: 0,
            witness: Vec::new(),
            nodes_explored: 0,
        });
    }
    let adj: Vec<Vec<u32>> = (0..g.n())
        .map(|v| g.neighbors(v).iter().map(|&x| x as u32).collect())
        .collect();
    let bound = max_colors.unwrap_or(g.n());
    let mut nodes = 0;
    for k in greedy_clique(&adj).max(1)..=bound {
        if k > MAX_PALETTE {
            return Err(SolveError::PaletteTooLarge);
        }
        if let Some(colors) = search_fixed_k(&adj, k, Extra::NONE, &mut nodes) {
            return Ok(SolveResult {
                optimum: k,
                witness: colors,
                nodes_explored: nodes,
            });
        }
    }
    Err(SolveError::ExceedsBound { bound })
}

/// Search for a (Delta + 2)-coloring in which the last two palette colors
/// never meet in any outgoing spectrum. Fixing the searched pair to
/// {Delta, Delta + 1} loses no generality (palettes are permutable), it just
/// avoids re-running the search per candidate pair.
pub fn exists_adjustable(g: &Graph) -> Option<IncidenceColoring> {
    let k = g.max_degree() + 2;
    if k > MAX_PALETTE {
        return None;
    }
    if g.m() == 0 {
        return Some(IncidenceColoring::new(g.clone(), k, Vec::new()).unwrap());
    }
    let adj = incidence_conflicts(g);
    let group: Vec<usize> = (0..2 * g.m()).map(|i| incidence_at(g, i).v).collect();
    let extra = Extra {
        s1_limit: None,
        free_pair: Some((&group, g.n(), k - 2, k - 1)),
    };
    let mut nodes = 0;
    search_fixed_k(&adj, k, extra, &mut nodes).map(|colors| coloring_from(g, k, colors))
}

// ---------------------------------------------------------------------------
// Dominating partitions
// ---------------------------------------------------------------------------

/// Exhaustive search for a partition of V into `classes` dominating sets.
///
/// The pruning rule: a class can only dominate v if it appears in N[v], so at
/// every point each vertex needs `classes - (distinct classes in N[v])` of its
/// still-unassigned closed neighbors. For an n-regular graph with
/// `classes = n + 1` this is the pigeonhole fact that each N[v] must meet
/// every class exactly once; for other inputs it is simply a sound cut.
pub fn dominating_partition(g: &Graph, classes: usize) -> Option<Vec<Vec<usize>>> {
    if classes == 0 {
        return if g.n() == 0 { Some(Vec::new()) } else { None };
    }
    let n = g.n();
    let mut cnt = vec![vec![0u16; classes]; n];
    let mut distinct = vec![0usize; n];
    let mut unassigned: Vec<usize> = (0..n).map(|v| g.degree(v) + 1).collect();
    let mut class_of = vec![usize::MAX; n];

    // Feasibility from the start: N[v] must be able to meet every class.
    if unassigned.iter().any(|&u| u < classes) {
        return None;
    }

    fn closed<'a>(g: &'a Graph, v: usize) -> impl Iterator<Item = usize> + 'a {
        std::iter::once(v).chain(g.neighbors(v).iter().copied())
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Graph,
        classes: usize,
        v: usize,
        used: usize,
        cnt: &mut [Vec<u16>],
        distinct: &mut [usize],
        unassigned: &mut [usize],
        class_of: &mut [usize],
    ) -> bool {
        if v == g.n() {
            return true;
        }
        // Introduce classes in ascending order: class `used` is the first
        // fresh one worth trying.
        for c in 0..classes.min(used + 1) {
            let mut dead = false;
            for u in closed(g, v) {
                unassigned[u] -= 1;
                cnt[u][c] += 1;
                if cnt[u][c] == 1 {
                    distinct[u] += 1;
                }
                if distinct[u] + unassigned[u] < classes {
                    dead = true;
                }
            }
            class_of[v] = c;
            if !dead
                && rec(
                    g,
                    classes,
                    v + 1,
                    used.max(c + 1),
                    cnt,
                    distinct,
                    unassigned,
                    class_of,
                )
            {
                return true;
            }
            class_of[v] = usize::MAX;
            for u in closed(g, v) {
                unassigned[u] += 1;
                cnt[u][c] -= 1;
                if cnt[u][c] == 0 {
                    distinct[u] -= 1;
                }
            }
        }
        false
    }

    if !rec(
        g,
        classes,
        0,
        0,
        &mut cnt,
        &mut distinct,
        &mut unassigned,
        &mut class_of,
    ) {
        return None;
    }
    let mut parts = vec![Vec::new(); classes];
    for (v, &c) in class_of.iter().enumerate() {
        parts[c].push(v);
    }
    debug_assert_eq!(
        crate::incidence::dominating_partition_check(g, &parts),
        Ok(true)
    );
    Some(parts)
}

// ---------------------------------------------------------------------------
// Strong edge coloring (independent oracle path)
// ---------------------------------------------------------------------------

/// Exact strong chromatic index: a proper coloring of the edges such that
/// edges at distance at most two differ.
///
/// Implemented as its own DSATUR-style exact search over edges rather than on
/// top of the incidence engine, so the identity "incidence chromatic number =
/// strong chromatic index of the subdivision" is checked by two genuinely
/// different code paths.
pub fn strong_edge_chromatic_index(g: &Graph) -> Result<SolveResult<Vec<usize>>, SolveError> {
    let m = g.m();
    if m == 0 {
        return Ok(SolveResult {
            optimum: 0,
            witness: Vec::new(),
            nodes_explored: 0,
        });
    }
    let edges = g.edges();
    let mut conf: Vec<Vec<u32>> = vec![Vec::new(); m];
    for i in 0..m {
        let (a, b) = edges[i];
        for j in i + 1..m {
            let (c, d) = edges[j];
            let touching = a == c || a == d || b == c || b == d;
            let near = g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d);
            if touching || near {
                conf[i].push(j as u32);
                conf[j].push(i as u32);
            }
        }
    }

    struct Dsatur<'a> {
        conf: &'a [Vec<u32>],
        k: usize,
        colors: Vec<usize>,
        seen_mask: Vec<u64>,
        nodes: u64,
    }
    impl Dsatur<'_> {
        fn go(&mut self, assigned: usize, max_used: isize) -> bool {
            if assigned == self.conf.len() {
                return true;
            }
            // Most saturated first; break ties on conflict degree, then index.
            let pick = (0..self.conf.len())
                .filter(|&i| self.colors[i] == usize::MAX)
                .max_by_key(|&i| {
                    (
                        self.seen_mask[i].count_ones(),
                        self.conf[i].len(),
                        std::cmp::Reverse(i),
                    )
                })
                .unwrap();
            let top = ((max_used + 2) as usize).min(self.k);
            for c in 0..top {
                if self.seen_mask[pick] & (1 << c) != 0 {
                    continue;
                }
                self.nodes += 1;
                self.colors[pick] = c;
                let mut undo = Vec::new();
                for &j in &self.conf[pick] {
                    let j = j as usize;
                    if self.seen_mask[j] & (1 << c) == 0 {
                        self.seen_mask[j] |= 1 << c;
                        undo.push(j);
                    }
                }
                if self.go(assigned + 1, max_used.max(c as isize)) {
                    return true;
                }
                for j in undo {
                    self.seen_mask[j] &= !(1 << c);
                }
                self.colors[pick] = usize::MAX;
            }
            false
        }
    }

    // `seen_mask` over-counts removals when two conflicting neighbors share a
    // color, which proper coloring forbids between *adjacent* items but not
    // between two different neighbors of `pick`; hence the undo list instead
    // of blind clearing.
    let mut nodes = 0;
    for k in greedy_clique(&conf).max(1)..=m {
        if k > MAX_PALETTE {
            return Err(SolveError::PaletteTooLarge);
        }
        let mut st = Dsatur {
            conf: &conf,
            k,
            colors: vec![usize::MAX; m],
            seen_mask: vec![0; m],
            nodes: 0,
        };
        let found = st.go(0, -1);
        nodes += st.nodes;
        if found {
            return Ok(SolveResult {
                optimum: k,
                witness: st.colors,
                nodes_explored: nodes,
            });
        }
    }
    unreachable!("m distinct colors always suffice")
}
