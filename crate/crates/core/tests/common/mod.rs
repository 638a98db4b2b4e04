//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's own search or distance code.
#![allow(dead_code)]

use greedy_order::{Graph, SetFunction, SubmodularProblem};

/// All-pairs hop distances by Floyd–Warshall over `has_edge`.
pub fn floyd(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        for (v, cell) in row.iter_mut().enumerate() {
            if u == v {
                *cell = Some(0);
            } else if g.has_edge(u, v) {
                *cell = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Time of visiting `sequence` in order, hop by hop.
pub fn sequence_time(d: &[Vec<Option<usize>>], sequence: &[usize]) -> usize {
    sequence
        .windows(2)
        .map(|w| d[w[0]][w[1]].expect("strongly connected"))
        .sum()
}

/// (min, max) time over every ordering, by full enumeration.
pub fn brute_extremes(g: &Graph) -> (usize, usize) {
    let d = floyd(g);
    permutations(g.n())
        .iter()
        .map(|p| sequence_time(&d, p))
        .fold((usize::MAX, 0), |(lo, hi), t| (lo.min(t), hi.max(t)))
}

/// Best joint value by walking the full profile space, reading the
/// objective only through `SetFunction::value`.
pub fn brute_opt<F: SetFunction>(p: &SubmodularProblem<F>) -> f64 {
    fn rec<F: SetFunction>(
        p: &SubmodularProblem<F>,
        agent: usize,
        acc: greedy_order::ElementSet,
    ) -> f64 {
        if agent == p.agent_count() {
            return p.objective().value(acc);
        }
        p.actions(agent)
            .iter()
            .map(|&a| rec(p, agent + 1, acc.union(a)))
            .fold(f64::NEG_INFINITY, f64::max)
    }
    rec(p, 0, greedy_order::ElementSet::EMPTY)
}
