#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use scldpc::lifting::{lift, to_tanner, ChainLayout, LiftSpec, SparseParityCheck, TannerGraph};
use scldpc::protograph::{
    couple_and_terminate, edge_spread, BaseMatrix, SpreadRule, TerminatedBaseMatrix,
};

pub fn chain(b: &[Vec<i64>], ms: usize, length: usize) -> TerminatedBaseMatrix {
    let base = BaseMatrix::new(b).unwrap();
    couple_and_terminate(
        &edge_spread(&base, ms, SpreadRule::Uniform).unwrap(),
        length,
    )
    .unwrap()
}

pub struct LiftedChain {
    pub h: SparseParityCheck,
    pub graph: TannerGraph,
    pub layout: ChainLayout,
}

/// The (3,6) chain with `ms = 2`, uniformly spread and lifted by random
/// permutations.
pub fn sc36(length: usize, m: usize, seed: u64) -> LiftedChain {
    let t = chain(&[vec![3, 3]], 2, length);
    let h = lift(t.rendered(), &LiftSpec::permutation(m, seed)).unwrap();
    LiftedChain {
        graph: to_tanner(&h).unwrap(),
        layout: ChainLayout::from_terminated(&t, m),
        h,
    }
}

/// Girth by deleting each edge in turn and measuring the shortest
/// remaining path between its endpoints.
pub fn girth_by_edge_removal(h: &SparseParityCheck) -> Option<usize> {
    let n = h.n();
    let total = n + h.m();
    let mut adj = vec![Vec::new(); total];
    for (i, j) in h.edges() {
        adj[j].push(n + i);
        adj[n + i].push(j);
    }
    let mut best: Option<usize> = None;
    for (i, j) in h.edges() {
        let (src, dst) = (j, n + i);
        let mut dist = vec![usize::MAX; total];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            if u == dst {
                break;
            }
            for &w in &adj[u] {
                if (u == src && w == dst) || (u == dst && w == src) {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist[dst] != usize::MAX {
            let len = dist[dst] + 1;
            best = Some(best.map_or(len, |b| b.min(len)));
        }
    }
    best
}

/// Minimum distance by meet-in-the-middle over all `2^n` words: split the
/// positions in two halves and pair left and right words with equal partial
/// syndromes.
pub fn min_distance_mitm(h: &SparseParityCheck) -> Option<usize> {
    let n = h.n();
    assert!(n <= 32 && h.m() <= 128);
    let left = n / 2;
    let col_syndrome: Vec<u128> = (0..n)
        .map(|j| h.col(j).iter().fold(0u128, |acc, &i| acc | 1 << i))
        .collect();
    let syndrome = |word: u64, offset: usize, len: usize| -> u128 {
        (0..len)
            .filter(|&k| word >> k & 1 == 1)
            .fold(0, |acc, k| acc ^ col_syndrome[offset + k])
    };
    // lightest right half for every reachable syndrome, and the lightest
    // nonzero right half with zero syndrome
    let right = n - left;
    let mut lightest: HashMap<u128, usize> = HashMap::new();
    let mut zero_nonzero: Option<usize> = None;
    for word in 0u64..1 << right {
        let s = syndrome(word, left, right);
        let w = word.count_ones() as usize;
        let e = lightest.entry(s).or_insert(w);
        *e = (*e).min(w);
        if s == 0 && word != 0 {
            zero_nonzero = Some(zero_nonzero.map_or(w, |z| z.min(w)));
        }
    }
    let mut best = zero_nonzero;
    for word in 1u64..1 << left {
        if let Some(&w_right) = lightest.get(&syndrome(word, 0, left)) {
            let w = word.count_ones() as usize + w_right;
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    best
}
