//! Constructive colorings: syndrome colorings of hypercubes, the offset-based
//! product construction for factors of a regular supergraph, prisms over
//! permutable graphs, and the permutable-times-adjustable product. Every
//! construction re-verifies its output before returning it; at these sizes the
//! check is cheap insurance against transcription mistakes.

use std::collections::BTreeSet;

use crate::graph::{cartesian_product, hypercube, path, Graph};
use crate::hom::{bar, permutable_coloring, HomError, Homomorphism};
use crate::incidence::{
    free_color_pairs, incidence_at, verify_coloring, Incidence, IncidenceColoring,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ConstructionError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a fixed-point-free involution: {0}")]
    NotInvolution(String),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("internal error: {0}")]
    Internal(String),
}

fn pre(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::PreconditionFailed(msg.into())
}

/// Final gate of every construction: the output must pass the verifier.
fn verified(c: IncidenceColoring) -> Result<IncidenceColoring, ConstructionError> {
    if verify_coloring(&c).is_valid() {
        Ok(c)
    } else {
        Err(ConstructionError::Internal(
            "constructed coloring failed verification".into(),
        ))
    }
}

/// Recolor by a fixed-point-free involution of the palette. Palette
/// permutations preserve validity, and involutions are their own inverse, so
/// applying the same map twice gives back the original coloring.
pub fn bar_coloring(
    c: &IncidenceColoring,
    bar: &[usize],
) -> Result<IncidenceColoring, ConstructionError> {
    let k = c.palette_size();
    if bar.len() != k {
        return Err(ConstructionError::NotInvolution(format!(
            "map has {} entries for a palette of {k}",
            bar.len()
        )));
    }
    for (i, &j) in bar.iter().enumerate() {
        if j >= k {
            return Err(ConstructionError::NotInvolution(format!(
                "{i} maps to {j}, beyond the palette"
            )));
        }
        if j == i {
            return Err(ConstructionError::NotInvolution(format!(
                "{i} is a fixed point"
            )));
        }
        if bar[j] != i {
            return Err(ConstructionError::NotInvolution(format!(
                "{i} -> {j} -> {} is not an involution",
                bar[j]
            )));
        }
    }
    let colors = c.colors().iter().map(|&x| bar[x]).collect();
    verified(
        IncidenceColoring::new(c.host().clone(), k, colors).expect("permutation stays in range"),
    )
}

/// The syndrome of a hypercube vertex: XOR of (i+1) over its set bits i. For
/// Q_{2^m - 1} the syndromes take all values 0..2^m, the fibers are the
/// Hamming code and its cosets, and each closed neighborhood meets every
/// fiber exactly once.
pub fn hamming_syndrome(x: usize) -> usize {
    let mut s = 0;
    let mut rest = x;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        s ^= i + 1;
    }
    s
}

/// Optimal (n+1)-coloring of Q_n for n = 2^m - 1: the incidence (v, vu) takes
/// the syndrome of u. All incidences pointing at u share the color
/// syndrome(u), and neighbors of a fixed vertex have pairwise distinct
/// syndromes, so the coloring is valid with constant incoming spectra.
pub fn hamming_coloring(m: u32) -> IncidenceColoring {
    let n = (1usize << m) - 1;
    let g = hypercube(n);
    let colors = (0..2 * g.m())
        .map(|i| hamming_syndrome(incidence_at(&g, i).w))
        .collect();
    let c = IncidenceColoring::new(g, n + 1, colors).expect("syndromes lie in 0..n+1");
    debug_assert!(verify_coloring(&c).is_valid());
    c
}

/// Offset product construction. Inputs: an optimal coloring `c` of `g` on
/// Delta(G)+1 colors, a regular graph `h_prime` with an optimal full-spectrum
/// coloring `d_prime`, and an embedding selecting an induced subgraph H of
/// `h_prime`. Produces a coloring of the Cartesian product of `g` and H with
/// palette Delta(product)+2.
///
/// The H-incidences take their colors from `d_prime` (restricted through the
/// embedding) shifted up by the offset t = Delta(G)+Delta(H)-Delta(H')+1. The
/// G-incidences keep their color from `c` unless it lies in the overlap
/// C = {t..=Delta(G)}, in which case it is rerouted, per H-coordinate v,
/// through an injection of C into the colors missing from v's restricted
/// spectrum. The injection is fixed as the order-preserving map onto the |C|
/// smallest missing colors. Either way a G-incidence never receives a color
/// present in its coordinate's restricted spectrum, which is what makes the
/// two incidence families compatible.
pub fn product_coloring_delta1(
    g: &Graph,
    c: &IncidenceColoring,
    h_prime: &Graph,
    d_prime: &IncidenceColoring,
    embedding: &[usize],
) -> Result<IncidenceColoring, ConstructionError> {
    let dg = g.max_degree();
    if c.host() != g {
        return Err(pre("c must color the first factor"));
    }
    if !verify_coloring(c).is_valid() {
        return Err(pre("c is not a valid incidence coloring"));
    }
    if c.palette_size() != dg + 1 {
        return Err(pre(format!(
            "c must be optimal with palette {} (has {})",
            dg + 1,
            c.palette_size()
        )));
    }
    let dhp = h_prime.max_degree();
    if h_prime.regular_degree() != Some(dhp) {
        return Err(pre("the supergraph of the second factor must be regular"));
    }
    if d_prime.host() != h_prime {
        return Err(pre(
            "d_prime must color the supergraph of the second factor",
        ));
    }
    if !verify_coloring(d_prime).is_valid() {
        return Err(pre("d_prime is not a valid incidence coloring"));
    }
    if d_prime.palette_size() != dhp + 1 {
        return Err(pre(format!(
            "d_prime must be optimal with palette {} (has {})",
            dhp + 1,
            d_prime.palette_size()
        )));
    }
    for v in 0..h_prime.n() {
        if crate::incidence::spectrum(d_prime, v).union().len() != dhp + 1 {
            return Err(pre(format!(
                "d_prime must have a full spectrum at every vertex (vertex {v})"
            )));
        }
    }
    let h = h_prime.induced(embedding).map_err(|e| {
        pre(format!(
            "embedding does not select an induced subgraph: {e}"
        ))
    })?;
    let dh = h.max_degree();
    if dg + 1 + dh < dhp {
        return Err(pre(format!(
            "degree inequality violated: Delta(G)+1 = {} < Delta(H')-Delta(H) = {}",
            dg + 1,
            dhp - dh
        )));
    }
    let t = dg + dh + 1 - dhp;
    let palette = dg + dh + 2;

    // Restriction of d_prime to H, already shifted into {t..=Delta(H')+t}.
    let d_col = |a: usize, b: usize| {
        d_prime
            .color_of(Incidence {
                v: embedding[a],
                w: embedding[b],
            })
            .expect("embedded edges exist in the supergraph")
            + t
    };
    let mut spectra: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); h.n()];
    for &(a, b) in h.edges() {
        spectra[a].insert(d_col(a, b));
        spectra[a].insert(d_col(b, a));
        spectra[b].insert(d_col(b, a));
        spectra[b].insert(d_col(a, b));
    }
    // Per H-vertex: order-preserving injection of the overlap {t..=dg} onto
    // the smallest colors of B = {t..=dhp+t} missing from the spectrum.
    let overlap = if t <= dg { dg - t + 1 } else { 0 };
    let mut reroute: Vec<Vec<usize>> = Vec::with_capacity(h.n());
    for (v, spec) in spectra.iter().enumerate() {
        let missing: Vec<usize> = (t..=dhp + t).filter(|col| !spec.contains(col)).collect();
        if missing.len() < overlap {
            return Err(ConstructionError::Internal(format!(
                "vertex {v} has only {} missing colors for an overlap of {overlap}",
                missing.len()
            )));
        }
        reroute.push(missing[..overlap].to_vec());
    }

    let prod = cartesian_product(g, &h);
    let colors: Vec<usize> = (0..2 * prod.graph.m())
        .map(|idx| {
            let inc = incidence_at(&prod.graph, idx);
            let (ua, va) = prod.coords(inc.v);
            let (ub, vb) = prod.coords(inc.w);
            if ua == ub {
                d_col(va, vb)
            } else {
                let base = c.color_of(Incidence { v: ua, w: ub }).expect("G-edge");
                let out = if (t..=dg).contains(&base) {
                    reroute[va][base - t]
                } else {
                    base
                };
                debug_assert!(!spectra[va].contains(&out));
                out
            }
        })
        .collect();
    verified(IncidenceColoring::new(prod.graph, palette, colors).expect("colors fit the palette"))
}

/// Coloring of Q_n via the decomposition n = (2^m - 1) + k with the largest
/// possible m. For k = 0 this is the syndrome coloring with n+1 colors;
/// otherwise Q_n is split as the product of Q_{2^m-1} and Q_k, the latter
/// embedded as a subcube of Q_{2^m-1} (vertices 0..2^k), and the offset
/// product construction gives n+2 colors.
pub fn hypercube_coloring(n: usize) -> IncidenceColoring {
    let m = usize::BITS - (n + 1).leading_zeros() - 1;
    let k = n - ((1 << m) - 1);
    if k == 0 {
        return hamming_coloring(m);
    }
    let big = hypercube((1 << m) - 1);
    let ham = hamming_coloring(m);
    let embedding: Vec<usize> = (0..1usize << k).collect();
    let c = product_coloring_delta1(&big, &ham, &big, &ham, &embedding)
        .expect("the hypercube decomposition satisfies every precondition");
    debug_assert_eq!(c.host(), &hypercube(n));
    c
}

/// Prism coloring of G x K2 from a permutable certificate: one fiber gets the
/// homomorphism-derived coloring c, the other its bar-image, and the rung
/// incidence at (v, 0) takes bar(class(v)) while the one at (v, 1) takes
/// class(v). Uses Delta(G)+2 colors, which is Delta(prism)+1.
pub fn prism_coloring(g: &Graph, h: &Homomorphism) -> Result<IncidenceColoring, ConstructionError> {
    let c = permutable_coloring(g, h)?;
    let k = c.palette_size();
    let half = k / 2;
    let bar_map: Vec<usize> = (0..k).map(|i| bar(half, i)).collect();
    let c_bar = bar_coloring(&c, &bar_map)?;
    let prod = cartesian_product(g, &path(2));
    let colors: Vec<usize> = (0..2 * prod.graph.m())
        .map(|idx| {
            let inc = incidence_at(&prod.graph, idx);
            let (ua, ja) = prod.coords(inc.v);
            let (ub, jb) = prod.coords(inc.w);
            if ja == jb {
                let base = Incidence { v: ua, w: ub };
                if ja == 0 {
                    c.color_of(base).expect("G-edge")
                } else {
                    c_bar.color_of(base).expect("G-edge")
                }
            } else if ja == 0 {
                bar(half, h.map[ua])
            } else {
                h.map[ua]
            }
        })
        .collect();
    verified(IncidenceColoring::new(prod.graph, k, colors).expect("colors fit the palette"))
}

/// Product of a (sub-)permutable graph G and a graph H carrying an adjustable
/// coloring d. The palette of d is relabeled so that its free pair lands on
/// the two colors shared with the G-side palette: after moving the free pair
/// to the front of d's own palette (remaining colors keep their order) and
/// shifting by Delta(G), the free colors are x = Delta(G) and y = Delta(G)+1.
///
/// Each G-fiber at H-coordinate v is colored by c when y is absent from v's
/// outgoing d-spectrum and by bar(c) otherwise; H-incidences keep their
/// d-color except that x is replaced by the color missing at u under c and y
/// by the one missing under bar(c). Total palette Delta(product)+2.
pub fn peradj_coloring(
    g: &Graph,
    h_g: &Homomorphism,
    h: &Graph,
    d: &IncidenceColoring,
) -> Result<IncidenceColoring, ConstructionError> {
    let c = permutable_coloring(g, h_g)?;
    let dg = g.max_degree();
    let half = (dg + 2) / 2;
    if d.host() != h {
        return Err(pre("d must color the second factor"));
    }
    if !verify_coloring(d).is_valid() {
        return Err(pre("d is not a valid incidence coloring"));
    }
    let dh = h.max_degree();
    if d.palette_size() != dh + 2 {
        return Err(pre(format!(
            "d must use palette {} (has {})",
            dh + 2,
            d.palette_size()
        )));
    }
    let pairs = free_color_pairs(d);
    let Some(&(fa, fb)) = pairs.first() else {
        return Err(pre("d is not adjustable: no free color pair"));
    };
    // Relabel d: free pair to {0, 1}, the rest ascending; then shift by dg.
    let mut perm = vec![usize::MAX; d.palette_size()];
    perm[fa] = 0;
    perm[fb] = 1;
    let mut next = 2;
    for (col, image) in perm.iter_mut().enumerate() {
        if col != fa && col != fb {
            *image = next;
            next += 1;
        }
    }
    let x = dg;
    let y = dg + 1;
    let d_col = |inc: Incidence| perm[d.color_of(inc).expect("H-edge")] + dg;
    let fiber_barred: Vec<bool> = (0..h.n())
        .map(|v| {
            h.neighbors(v)
                .iter()
                .any(|&w| d_col(Incidence { v, w }) == y)
        })
        .collect();
    let bar_map: Vec<usize> = (0..dg + 2).map(|i| bar(half, i)).collect();
    let c_bar = bar_coloring(&c, &bar_map)?;

    let prod = cartesian_product(g, h);
    let palette = dg + dh + 2;
    let colors: Vec<usize> = (0..2 * prod.graph.m())
        .map(|idx| {
            let inc = incidence_at(&prod.graph, idx);
            let (ua, va) = prod.coords(inc.v);
            let (ub, vb) = prod.coords(inc.w);
            if va == vb {
                let base = Incidence { v: ua, w: ub };
                if fiber_barred[va] {
                    c_bar.color_of(base).expect("G-edge")
                } else {
                    c.color_of(base).expect("G-edge")
                }
            } else {
                let dc = d_col(Incidence { v: va, w: vb });
                if dc == x {
                    bar(half, h_g.map[ua])
                } else if dc == y {
                    h_g.map[ua]
                } else {
                    dc
                }
            }
        })
        .collect();
    verified(IncidenceColoring::new(prod.graph, palette, colors).expect("colors fit the palette"))
}
