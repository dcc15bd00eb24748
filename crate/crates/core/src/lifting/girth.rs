use std::collections::VecDeque;

use super::{to_tanner, SparseParityCheck, TannerGraph};
use crate::protograph::IntMatrix;

/// Length of the shortest cycle of `g`, or `None` when the graph is a forest.
///
/// Runs a breadth-first search from every variable node; every cycle passes
/// through a variable node, and a search rooted on a shortest cycle closes
/// it at exactly its length. Searches stop expanding once they cannot beat
/// the best cycle found so far.
pub fn girth(g: &TannerGraph) -> Option<usize> {
    let n = g.num_variables();
    let total = n + g.num_checks();
    // node ids: variables 0..n, checks n..n+m
    let neighbours = |u: usize, out: &mut Vec<usize>| {
        out.clear();
        if u < n {
            out.extend(g.variable_edges(u).iter().map(|&e| n + g.edge_check(e)));
        } else {
            out.extend(g.check_edges(u - n).map(|e| g.edge_variable(e)));
        }
    };
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    let mut adj = Vec::new();
    for root in 0..n {
        for &u in &touched {
            dist[u] = usize::MAX;
            parent[u] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * (dist[u] + 1) > best {
                break;
            }
            neighbours(u, &mut adj);
            for &w in &adj {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    if len < best {
                        best = len;
                        if best == 4 {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        if best == 4 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Girth of the protograph read as a multigraph: parallel edges close a
/// cycle of length two.
pub fn base_girth(base: &IntMatrix) -> Option<usize> {
    let mut rows = Vec::with_capacity(base.rows());
    for r in 0..base.rows() {
        let row = base.row(r);
        if row.iter().any(|&w| w >= 2) {
            return Some(2);
        }
        rows.push(
            row.iter()
                .enumerate()
                .filter(|(_, &w)| w > 0)
                .map(|(c, _)| c)
                .collect(),
        );
    }
    let h = SparseParityCheck::from_rows(base.cols(), rows).ok()?;
    girth(&to_tanner(&h).ok()?)
}
