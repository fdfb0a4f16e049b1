//! The quiver data model: a directed multigraph with a canonical arrow order.
//!
//! Vertices are `0..vertex_count`. Arrows are addressed by their position in
//! the arrow list, and that index is the coordinate space used everywhere else
//! in the crate (circulations, subquiver masks, vertex matrices).

mod cycles;
mod graph;
mod io;

pub use cycles::CycleBasis;
pub use graph::{edge_connectivity, validate, Diagnostics};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single arrow `tail -> head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

impl From<(usize, usize)> for Arrow {
    fn from((tail, head): (usize, usize)) -> Self {
        Arrow { tail, head }
    }
}

impl From<Arrow> for (usize, usize) {
    fn from(a: Arrow) -> Self {
        (a.tail, a.head)
    }
}

/// A finite quiver. Multi-arrows and loops are allowed by the type; acyclicity
/// and connectivity are checked by the operations that need them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuiverRepr", into = "QuiverRepr")]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverRepr {
    vertices: usize,
    arrows: Vec<Arrow>,
}

impl TryFrom<QuiverRepr> for Quiver {
    type Error = Error;

    fn try_from(r: QuiverRepr) -> Result<Self> {
        Quiver::new(r.vertices, r.arrows)
    }
}

impl From<Quiver> for QuiverRepr {
    fn from(q: Quiver) -> Self {
        QuiverRepr {
            vertices: q.vertex_count,
            arrows: q.arrows,
        }
    }
}

impl Quiver {
    pub fn new<I, A>(vertex_count: usize, arrows: I) -> Result<Self>
    where
        I: IntoIterator<Item = A>,
        A: Into<Arrow>,
    {
        if vertex_count == 0 {
            return Err(Error::Dimension {
                expected: 1,
                found: 0,
            });
        }
        let arrows: Vec<Arrow> = arrows.into_iter().map(Into::into).collect();
        for (i, a) in arrows.iter().enumerate() {
            for v in [a.tail, a.head] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        arrow: i,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, index: usize) -> Arrow {
        self.arrows[index]
    }

    /// `|Q1| - |Q0| + 1`, the dimension of the circulation space of a
    /// connected quiver. Negative for forests with several components.
    pub fn cycle_rank(&self) -> isize {
        self.arrows.len() as isize - self.vertex_count as isize + 1
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.tail == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.head == v).count()
    }

    /// The complete bipartite quiver `Q_{p,q}`: left vertices `0..p`, right
    /// vertices `p..p+q`, one arrow `i -> p+j` per pair, in row-major order.
    pub fn bipartite(p: usize, q: usize) -> Result<Self> {
        Self::multipartite(&[p, q])
    }

    /// Complete multipartite quiver. Parts occupy consecutive vertex ranges and
    /// every edge is oriented from the lower-indexed part to the higher one.
    /// Arrows are ordered by tail, then head.
    pub fn multipartite(parts: &[usize]) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::Dimension {
                expected: 2,
                found: parts.len(),
            });
        }
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::Source(format!("part {pos} is empty")));
        }
        let mut offsets = Vec::with_capacity(parts.len());
        let mut total = 0;
        for &p in parts {
            offsets.push(total);
            total += p;
        }
        let mut arrows = Vec::new();
        for (pi, &p) in parts.iter().enumerate() {
            for i in 0..p {
                let tail = offsets[pi] + i;
                for (pj, &q) in parts.iter().enumerate().skip(pi + 1) {
                    for j in 0..q {
                        arrows.push(Arrow {
                            tail,
                            head: offsets[pj] + j,
                        });
                    }
                }
            }
        }
        Quiver::new(total, arrows)
    }

    /// Directed path `0 -> 1 -> ... -> n-1`.
    pub fn path(n: usize) -> Result<Self> {
        Quiver::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Arrows whose tail is `v`, as indices.
    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.tail == v)
            .map(|(i, _)| i)
    }

    /// Arrows with one endpoint in `vertices` and the other outside, split by
    /// orientation: `(leaving, entering)`.
    pub fn boundary(&self, in_set: impl Fn(usize) -> bool) -> (Vec<usize>, Vec<usize>) {
        let mut leaving = Vec::new();
        let mut entering = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            match (in_set(a.tail), in_set(a.head)) {
                (true, false) => leaving.push(i),
                (false, true) => entering.push(i),
                _ => {}
            }
        }
        (leaving, entering)
    }
}
