//! JSON wire formats for graphs, colorings, homomorphisms, and partitions.
//!
//! Everything is 0-based on the wire by default. The `one_based`/`zero_based`
//! transforms implement the presentation-only `--one-based` flag: vertex ids
//! and color labels shift by one, while counts (`n`, `palette`) do not.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError};
use crate::incidence::{incidence_at, incidence_index, Incidence, IncidenceColoring};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        Graph::new(self.n, &self.edges)
    }

    pub fn one_based(mut self) -> Self {
        for e in &mut self.edges {
            e.0 += 1;
            e.1 += 1;
        }
        self
    }

    pub fn zero_based(mut self) -> Result<Self, String> {
        for e in &mut self.edges {
            e.0 = dec(e.0)?;
            e.1 = dec(e.1)?;
        }
        Ok(self)
    }
}

fn dec(x: usize) -> Result<usize, String> {
    x.checked_sub(1)
        .ok_or_else(|| "one-based input contains a zero".to_string())
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ColorEntryJson {
    pub v: usize,
    pub w: usize,
    pub c: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ColoringJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub palette: usize,
    pub colors: Vec<ColorEntryJson>,
}

impl ColoringJson {
    pub fn from_coloring(c: &IncidenceColoring) -> Self {
        let g = c.host();
        let colors = (0..2 * g.m())
            .map(|i| {
                let inc = incidence_at(g, i);
                ColorEntryJson {
                    v: inc.v,
                    w: inc.w,
                    c: c.colors()[i],
                }
            })
            .collect();
        ColoringJson {
            n: g.n(),
            edges: g.edges().to_vec(),
            palette: c.palette_size(),
            colors,
        }
    }

    pub fn to_coloring(&self) -> Result<IncidenceColoring, String> {
        let g = Graph::new(self.n, &self.edges).map_err(|e| e.to_string())?;
        let mut colors = vec![usize::MAX; 2 * g.m()];
        for entry in &self.colors {
            let idx = incidence_index(
                &g,
                Incidence {
                    v: entry.v,
                    w: entry.w,
                },
            )
            .ok_or_else(|| {
                format!(
                    "({}, {}) is not an incidence of the graph",
                    entry.v, entry.w
                )
            })?;
            if colors[idx] != usize::MAX {
                return Err(format!(
                    "incidence ({}, {}) is colored twice",
                    entry.v, entry.w
                ));
            }
            colors[idx] = entry.c;
        }
        if let Some(missing) = colors.iter().position(|&c| c == usize::MAX) {
            let inc = incidence_at(&g, missing);
            return Err(format!("incidence ({}, {}) has no color", inc.v, inc.w));
        }
        IncidenceColoring::new(g, self.palette, colors).map_err(|e| e.to_string())
    }

    pub fn one_based(mut self) -> Self {
        for e in &mut self.edges {
            e.0 += 1;
            e.1 += 1;
        }
        for entry in &mut self.colors {
            entry.v += 1;
            entry.w += 1;
            entry.c += 1;
        }
        self
    }

    pub fn zero_based(mut self) -> Result<Self, String> {
        for e in &mut self.edges {
            e.0 = dec(e.0)?;
            e.1 = dec(e.1)?;
        }
        for entry in &mut self.colors {
            entry.v = dec(entry.v)?;
            entry.w = dec(entry.w)?;
            entry.c = dec(entry.c)?;
        }
        Ok(self)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct HomJson {
    pub map: Vec<usize>,
}

impl HomJson {
    pub fn one_based(mut self) -> Self {
        for x in &mut self.map {
            *x += 1;
        }
        self
    }

    pub fn zero_based(mut self) -> Result<Self, String> {
        for x in &mut self.map {
            *x = dec(*x)?;
        }
        Ok(self)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PartitionJson {
    pub classes: Vec<Vec<usize>>,
}

impl PartitionJson {
    pub fn one_based(mut self) -> Self {
        for class in &mut self.classes {
            for v in class {
                *v += 1;
            }
        }
        self
    }
}

/// Witness for vertex coloring solves: one color per vertex.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct VertexColoringJson {
    pub n: usize,
    pub colors: Vec<usize>,
}

impl VertexColoringJson {
    pub fn one_based(mut self) -> Self {
        for c in &mut self.colors {
            *c += 1;
        }
        self
    }
}
