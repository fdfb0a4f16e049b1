use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Connectivity of the underlying undirected graph.
    pub connected: bool,
    /// No directed cycles; a loop counts as a cycle.
    pub acyclic: bool,
}

pub fn validate(q: &Quiver) -> Diagnostics {
    Diagnostics {
        connected: is_connected(q),
        acyclic: is_acyclic(q),
    }
}

fn is_connected(q: &Quiver) -> bool {
    let n = q.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for a in q.arrows() {
        adj[a.tail].push(a.head);
        adj[a.head].push(a.tail);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

// Kahn's algorithm.
fn is_acyclic(q: &Quiver) -> bool {
    let n = q.vertex_count();
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for a in q.arrows() {
        indeg[a.head] += 1;
        out[a.tail].push(a.head);
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop_front() {
        removed += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    removed == n
}

/// Edge connectivity of the underlying undirected multigraph.
///
/// Each arrow is an undirected edge of capacity one (parallel arrows add up,
/// loops are ignored). The answer is the minimum over `t != 0` of the max flow
/// from vertex 0 to `t`. Disconnected graphs and single vertices give 0.
pub fn edge_connectivity(q: &Quiver) -> usize {
    let n = q.vertex_count();
    if n < 2 || !is_connected(q) {
        return 0;
    }
    let mut cap = vec![vec![0i64; n]; n];
    for a in q.arrows() {
        if a.tail != a.head {
            cap[a.tail][a.head] += 1;
            cap[a.head][a.tail] += 1;
        }
    }
    (1..n)
        .map(|t| max_flow(&cap, 0, t))
        .min()
        .unwrap_or(0) as usize
}

// Edmonds-Karp on a dense capacity matrix.
fn max_flow(cap: &[Vec<i64>], s: usize, t: usize) -> i64 {
    let n = cap.len();
    let mut residual = cap.to_vec();
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for w in 0..n {
                if parent[w] == usize::MAX && residual[v][w] > 0 {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if parent[t] == usize::MAX {
            return flow;
        }
        let mut bottleneck = i64::MAX;
        let mut v = t;
        while v != s {
            let u = parent[v];
            bottleneck = bottleneck.min(residual[u][v]);
            v = u;
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            residual[u][v] -= bottleneck;
            residual[v][u] += bottleneck;
            v = u;
        }
        flow += bottleneck;
    }
}
