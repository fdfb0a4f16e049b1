use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Quiver;
use crate::error::{Error, Result};
use crate::weight::Circulation;

/// A spanning tree together with the fundamental circulations of the arrows
/// outside it.
///
/// For each non-tree arrow `b_i` the circulation `f_{b_i}` walks the unique
/// cycle in `T ∪ {b_i}`, starting along `b_i` itself, and records `+1` for
/// arrows traversed forward and `-1` for arrows traversed backward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleBasis {
    tree_arrows: Vec<usize>,
    non_tree_arrows: Vec<usize>,
    circulations: Vec<Circulation>,
}

impl CycleBasis {
    /// Grows a spanning tree from vertex 0, always adding the first arrow (in
    /// priority order) that reaches a new vertex. Priority order is the arrow
    /// index order, or a permutation of it drawn from `tree_seed`.
    pub fn new(q: &Quiver, tree_seed: Option<u64>) -> Result<Self> {
        let n = q.vertex_count();
        let m = q.arrow_count();
        let mut order: Vec<usize> = (0..m).collect();
        if let Some(seed) = tree_seed {
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }

        let mut in_tree = vec![false; n];
        let mut is_tree_arrow = vec![false; m];
        // (parent vertex, connecting arrow)
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![0usize; n];
        in_tree[0] = true;
        for _ in 1..n {
            let next = order.iter().copied().find(|&i| {
                let a = q.arrow(i);
                in_tree[a.tail] != in_tree[a.head]
            });
            let Some(i) = next else {
                return Err(Error::Disconnected);
            };
            let a = q.arrow(i);
            let (old, new) = if in_tree[a.tail] {
                (a.tail, a.head)
            } else {
                (a.head, a.tail)
            };
            in_tree[new] = true;
            is_tree_arrow[i] = true;
            parent[new] = Some((old, i));
            depth[new] = depth[old] + 1;
        }

        let tree_arrows: Vec<usize> = (0..m).filter(|&i| is_tree_arrow[i]).collect();
        let non_tree_arrows: Vec<usize> = (0..m).filter(|&i| !is_tree_arrow[i]).collect();
        let mut circulations = Vec::with_capacity(non_tree_arrows.len());
        for &b in &non_tree_arrows {
            let mut f = vec![0i64; m];
            f[b] = 1;
            let arrow = q.arrow(b);
            // Close the cycle by walking the tree from head(b) back to tail(b).
            let (mut u, mut v) = (arrow.head, arrow.tail);
            while u != v {
                if depth[u] >= depth[v] {
                    let (p, e) = parent[u].expect("non-root vertex has a parent");
                    f[e] = if q.arrow(e).tail == u { 1 } else { -1 };
                    u = p;
                } else {
                    let (p, e) = parent[v].expect("non-root vertex has a parent");
                    f[e] = if q.arrow(e).tail == p { 1 } else { -1 };
                    v = p;
                }
            }
            circulations.push(Circulation::new(q, f)?);
        }
        Ok(CycleBasis {
            tree_arrows,
            non_tree_arrows,
            circulations,
        })
    }

    /// Number of fundamental circulations, `|Q1| - |Q0| + 1`.
    pub fn dimension(&self) -> usize {
        self.non_tree_arrows.len()
    }

    pub fn tree_arrows(&self) -> &[usize] {
        &self.tree_arrows
    }

    pub fn non_tree_arrows(&self) -> &[usize] {
        &self.non_tree_arrows
    }

    pub fn circulations(&self) -> &[Circulation] {
        &self.circulations
    }

    /// `f_{b_i}(arrow)`.
    pub fn coefficient(&self, i: usize, arrow: usize) -> i64 {
        self.circulations[i].get(arrow)
    }

    /// The coordinates `(f_{b_1}(a), ..., f_{b_d}(a))` of `ev_a` in the dual basis.
    pub fn evaluation_row(&self, arrow: usize) -> Vec<i64> {
        self.circulations.iter().map(|f| f.get(arrow)).collect()
    }
}
