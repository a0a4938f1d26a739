//! Maximal clique enumeration over bitset adjacency.
//!
//! Bron–Kerbosch with Tomita pivoting. Above [`DEGENERACY_THRESHOLD`]
//! vertices the outer level follows a degeneracy ordering, which bounds the
//! size of every candidate set by the graph's degeneracy.

use crate::sets::IndexSet;

pub const DEGENERACY_THRESHOLD: usize = 256;

/// `adjacency[v]` must not contain `v`. Every vertex appears in at least one
/// returned clique; isolated vertices come back as singletons. Output order
/// is unspecified.
pub fn maximal_cliques(adjacency: &[IndexSet]) -> Vec<IndexSet> {
    let n = adjacency.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut r = Vec::new();
    if n <= DEGENERACY_THRESHOLD {
        expand(
            adjacency,
            &mut r,
            IndexSet::full(n),
            IndexSet::with_capacity(n),
            &mut out,
        );
        return out;
    }
    let order = degeneracy_order(adjacency);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in &order {
        let (mut later, mut earlier) = (IndexSet::with_capacity(n), IndexSet::with_capacity(n));
        for u in &adjacency[v] {
            if position[u] > position[v] {
                later.insert(u);
            } else {
                earlier.insert(u);
            }
        }
        r.push(v);
        expand(adjacency, &mut r, later, earlier, &mut out);
        r.pop();
    }
    out
}

fn expand(
    adjacency: &[IndexSet],
    r: &mut Vec<usize>,
    mut p: IndexSet,
    mut x: IndexSet,
    out: &mut Vec<IndexSet>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.iter().copied().collect());
        }
        return;
    }
    // pivot: vertex of P ∪ X with the most neighbours in P
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (adjacency[u].intersection(&p).len(), std::cmp::Reverse(u)))
        .expect("P is nonempty");
    let candidates = p.difference(&adjacency[pivot]);
    for v in &candidates {
        r.push(v);
        expand(
            adjacency,
            r,
            p.intersection(&adjacency[v]),
            x.intersection(&adjacency[v]),
            out,
        );
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Repeatedly removes a vertex of minimum remaining degree (lowest index on ties).
pub fn degeneracy_order(adjacency: &[IndexSet]) -> Vec<usize> {
    let n = adjacency.len();
    let mut degree: Vec<usize> = adjacency.iter().map(IndexSet::len).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| degree[v])
            .expect("a vertex remains");
        removed[v] = true;
        order.push(v);
        for u in &adjacency[v] {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<IndexSet> {
        let mut adj = vec![IndexSet::with_capacity(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    fn sorted(mut cliques: Vec<IndexSet>) -> Vec<Vec<usize>> {
        cliques.sort();
        cliques.iter().map(IndexSet::to_vec).collect()
    }

    #[test]
    fn small_graph() {
        // 0-1-2 triangle, 2-3, isolated 4
        let adj = graph(5, &[(0, 1), (0, 2), (1, 2), (2, 3)]);
        assert_eq!(
            sorted(maximal_cliques(&adj)),
            vec![vec![0, 1, 2], vec![2, 3], vec![4]]
        );
    }

    #[test]
    fn degeneracy_path_matches_plain_path() {
        // disjoint triangles plus a chord, above the threshold
        let n = DEGENERACY_THRESHOLD + 30;
        let mut edges = Vec::new();
        for base in (0..n - 2).step_by(3) {
            edges.extend([(base, base + 1), (base + 1, base + 2), (base, base + 2)]);
        }
        edges.push((0, 3));
        let adj = graph(n, &edges);
        let got = sorted(maximal_cliques(&adj));
        let mut r = Vec::new();
        let mut plain = Vec::new();
        expand(&adj, &mut r, IndexSet::full(n), IndexSet::new(), &mut plain);
        assert_eq!(got, sorted(plain));
        assert!(got.contains(&vec![0, 3]));
    }

    #[test]
    fn degeneracy_order_is_permutation() {
        let adj = graph(4, &[(0, 1), (1, 2), (1, 3), (2, 3)]);
        let mut order = degeneracy_order(&adj);
        assert_eq!(order[0], 0);
        order.sort();
        assert_eq!(order, vec![0, 1, 2, 3]);
    }
}
