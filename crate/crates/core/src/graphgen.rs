//! Canonical forms and exhaustive generation of small graphs up to isomorphism.
//!
//! The canonical form is the graph6 string of a relabelling whose upper-triangle
//! adjacency bits (column order, as graph6 stores them) are lexicographically minimal
//! among the relabellings reached by an individualise-and-refine search. Refinement and
//! branching only use label-free information, so two graphs get the same form exactly
//! when they are isomorphic.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::GenError;
use crate::graph::UndirectedGraph;

pub const MAX_CANON_NODES: usize = 10;
pub const MAX_TREE_NODES: usize = 10;
pub const MAX_CONNECTED_NODES: usize = 8;
pub const MAX_TRIANGLE_FREE_NODES: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Partition = Vec<Vec<usize>>;

/// Splits cells by neighbour counts into every cell until stable.
fn refine(adj: &[u16], mut cells: Partition) -> Partition {
    loop {
        let masks: Vec<u16> = cells.iter().map(|c| c.iter().fold(0u16, |m, &v| m | 1 << v)).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (adj[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let changed = next.len() != cells.len();
        cells = next;
        if !changed {
            return cells;
        }
    }
}

/// Upper-triangle bits in graph6 column order, first bit most significant.
fn encode(adj: &[u16], order: &[usize]) -> u64 {
    let n = order.len();
    let mut key = 0u64;
    for j in 1..n {
        for i in 0..j {
            key = key << 1 | (adj[order[i]] >> order[j] & 1) as u64;
        }
    }
    key
}

fn search(adj: &[u16], cells: Partition, best: &mut Option<(u64, Vec<usize>)>) {
    let cells = refine(adj, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let key = encode(adj, &order);
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            *best = Some((key, order));
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        // Twins (equal neighbourhoods apart from each other) give identical subtrees.
        let twin = tried.iter().any(|&u| adj[u] & !(1 << v) == adj[v] & !(1 << u));
        if twin {
            continue;
        }
        tried.push(v);
        let mut next = cells[..target].to_vec();
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(adj, next, best);
    }
}

fn masks_of(g: &UndirectedGraph) -> Vec<u16> {
    let mut adj = vec![0u16; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Canonical form and the vertex order realising it (`order[i]` becomes vertex `i`).
pub fn canonical_labeling(g: &UndirectedGraph) -> Result<(CanonicalForm, Vec<usize>), GenError> {
    let n = g.n();
    if n > MAX_CANON_NODES {
        return Err(GenError::TooLarge { what: "canonical_form", n, max: MAX_CANON_NODES });
    }
    let adj = masks_of(g);
    let mut best = None;
    search(&adj, vec![(0..n).collect()], &mut best);
    let (_, order) = best.unwrap_or_default();
    let canon = relabel_by_order(g, &order);
    Ok((CanonicalForm(canon.to_graph6()), order))
}

fn relabel_by_order(g: &UndirectedGraph, order: &[usize]) -> UndirectedGraph {
    let mut perm = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    g.relabel(&perm).expect("order is a permutation")
}

pub fn canonical_form(g: &UndirectedGraph) -> Result<CanonicalForm, GenError> {
    Ok(canonical_labeling(g)?.0)
}

/// The graph relabelled into canonical order; its graph6 string is its canonical form.
pub fn canonical_graph(g: &UndirectedGraph) -> Result<UndirectedGraph, GenError> {
    let (_, order) = canonical_labeling(g)?;
    Ok(relabel_by_order(g, &order))
}

fn check_range(what: &'static str, p: usize, max: usize) -> Result<(), GenError> {
    if p == 0 {
        return Err(GenError::Empty);
    }
    if p > max {
        return Err(GenError::TooLarge { what, n: p, max });
    }
    Ok(())
}

/// Canonicalises candidates in parallel, keeps one per form, ordered by form.
fn dedup(candidates: Vec<UndirectedGraph>) -> Vec<UndirectedGraph> {
    let forms: Vec<(CanonicalForm, UndirectedGraph)> = candidates
        .into_par_iter()
        .map(|g| {
            let c = canonical_graph(&g).expect("size checked by caller");
            (CanonicalForm(c.to_graph6()), c)
        })
        .collect();
    let unique: BTreeMap<CanonicalForm, UndirectedGraph> = forms.into_iter().collect();
    unique.into_values().collect()
}

fn with_new_vertex(g: &UndirectedGraph, nbrs: impl Iterator<Item = usize>) -> UndirectedGraph {
    let n = g.n();
    UndirectedGraph::new(n + 1, g.edges().iter().copied().chain(nbrs.map(|u| (u, n)))).expect("valid extension")
}

/// One representative per isomorphism class of trees on `p` nodes, canonically labelled,
/// sorted by canonical form.
pub fn all_trees(p: usize) -> Result<Vec<UndirectedGraph>, GenError> {
    check_range("all_trees", p, MAX_TREE_NODES)?;
    let mut level = vec![UndirectedGraph::empty(1)];
    for _ in 2..=p {
        let candidates = level.iter().flat_map(|t| (0..t.n()).map(move |v| with_new_vertex(t, std::iter::once(v)))).collect();
        level = dedup(candidates);
    }
    Ok(level)
}

/// One representative per isomorphism class of connected graphs on `p` nodes (triangle-free
/// only, if requested), canonically labelled and sorted by canonical form.
///
/// Every connected graph has a vertex whose removal leaves it connected, so extending each
/// graph on `p - 1` nodes by a vertex with a nonempty neighbourhood reaches every class.
pub fn all_connected_graphs(p: usize, triangle_free: bool) -> Result<Vec<UndirectedGraph>, GenError> {
    let max = if triangle_free { MAX_TRIANGLE_FREE_NODES } else { MAX_CONNECTED_NODES };
    check_range("all_connected_graphs", p, max)?;
    let mut level = vec![UndirectedGraph::empty(1)];
    for n in 1..p {
        let candidates: Vec<UndirectedGraph> = level
            .iter()
            .flat_map(|g| {
                let adj = masks_of(g);
                (1u32..1 << n)
                    .filter(move |&s| !triangle_free || (0..n).all(|u| s >> u & 1 == 0 || adj[u] as u32 & s == 0))
                    .map(move |s| with_new_vertex(g, (0..n).filter(move |&u| s >> u & 1 == 1)))
            })
            .collect();
        level = dedup(candidates);
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{rngs::StdRng, SeedableRng};

    fn g(n: usize, e: &[(usize, usize)]) -> UndirectedGraph {
        UndirectedGraph::new(n, e.iter().copied()).unwrap()
    }

    /// Oracle: minimum over every permutation, no pruning.
    fn naive_form(h: &UndirectedGraph) -> u64 {
        let n = h.n();
        let adj = masks_of(h);
        let mut order: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        fn rec(k: usize, order: &mut Vec<usize>, adj: &[u16], best: &mut u64) {
            if k == order.len() {
                *best = (*best).min(encode(adj, order));
                return;
            }
            for i in k..order.len() {
                order.swap(k, i);
                rec(k + 1, order, adj, best);
                order.swap(k, i);
            }
        }
        rec(0, &mut order, &adj, &mut best);
        best
    }

    fn labelled_graphs(n: usize) -> Vec<UndirectedGraph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0..1u32 << pairs.len())
            .map(|s| UndirectedGraph::new(n, pairs.iter().enumerate().filter(|(b, _)| s >> b & 1 == 1).map(|(_, &e)| e)).unwrap())
            .collect()
    }

    #[test]
    fn canonical_examples() {
        let a = g(3, &[(0, 1), (1, 2)]);
        let b = g(3, &[(1, 0), (0, 2)]);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let i4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let s3 = g(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_ne!(canonical_form(&i4).unwrap(), canonical_form(&s3).unwrap());
        let paw = g(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_ne!(canonical_form(&paw).unwrap(), canonical_form(&c4).unwrap());
        assert!(matches!(canonical_form(&UndirectedGraph::empty(11)), Err(GenError::TooLarge { .. })));
    }

    #[test]
    fn canonical_graph_is_fixed_point() {
        let h = g(6, &[(0, 3), (3, 5), (5, 1), (1, 2), (2, 4), (0, 4), (1, 4)]);
        let c = canonical_graph(&h).unwrap();
        assert_eq!(canonical_form(&c).unwrap().as_str(), c.to_graph6());
        assert_eq!(canonical_form(&h).unwrap().as_str(), c.to_graph6());
    }

    #[test]
    fn equality_relation_matches_naive_oracle() {
        for n in 1..=5 {
            let graphs = labelled_graphs(n);
            let mut fast: BTreeMap<CanonicalForm, u64> = BTreeMap::new();
            for h in &graphs {
                let naive = naive_form(h);
                let form = canonical_form(h).unwrap();
                assert_eq!(*fast.entry(form).or_insert(naive), naive, "n={n} {h}");
            }
            let distinct: std::collections::BTreeSet<u64> = graphs.iter().map(naive_form).collect();
            assert_eq!(fast.len(), distinct.len(), "n={n}");
        }
    }

    #[test]
    fn isomorphism_class_counts() {
        for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)] {
            let forms: std::collections::BTreeSet<CanonicalForm> =
                labelled_graphs(n).iter().map(|h| canonical_form(h).unwrap()).collect();
            assert_eq!(forms.len(), expected, "n={n}");
        }
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        let k10 = UndirectedGraph::new(10, (0..10).flat_map(|j| (0..j).map(move |i| (i, j)))).unwrap();
        assert_eq!(canonical_graph(&k10).unwrap(), k10);
        let empty = UndirectedGraph::empty(10);
        assert_eq!(canonical_graph(&empty).unwrap(), empty);
        let petersen = g(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        );
        let mut rng = StdRng::seed_from_u64(7);
        let form = canonical_form(&petersen).unwrap();
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..10).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&petersen.relabel(&perm).unwrap()).unwrap(), form);
        }
    }

    #[test]
    fn tree_counts() {
        let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (p, &count) in (1..=10).zip(&expected) {
            let trees = all_trees(p).unwrap();
            assert_eq!(trees.len(), count, "p={p}");
            assert!(trees.iter().all(|t| t.is_tree()));
        }
        assert!(matches!(all_trees(0), Err(GenError::Empty)));
        assert!(matches!(all_trees(11), Err(GenError::TooLarge { .. })));
    }

    #[test]
    fn connected_counts() {
        let expected = [1, 1, 2, 6, 21, 112, 853];
        for (p, &count) in (1..=7).zip(&expected) {
            let graphs = all_connected_graphs(p, false).unwrap();
            assert_eq!(graphs.len(), count, "p={p}");
            assert!(graphs.iter().all(|h| h.is_connected() && h.n() == p));
        }
        assert!(all_connected_graphs(9, false).is_err());
    }

    #[test]
    fn triangle_free_counts() {
        let expected = [1, 1, 1, 3, 6, 19, 59, 267];
        for (p, &count) in (1..=8).zip(&expected) {
            let graphs = all_connected_graphs(p, true).unwrap();
            assert_eq!(graphs.len(), count, "p={p}");
            assert!(graphs.iter().all(|h| h.is_connected() && h.is_triangle_free()));
        }
        assert!(all_connected_graphs(10, true).is_err());
    }

    #[test]
    fn triangle_free_p5_matches_brute_force() {
        let mut seen = std::collections::BTreeSet::new();
        for h in labelled_graphs(5) {
            if h.is_connected() && h.is_triangle_free() {
                seen.insert(naive_form(&h));
            }
        }
        let generated: std::collections::BTreeSet<u64> =
            all_connected_graphs(5, true).unwrap().iter().map(naive_form).collect();
        assert_eq!(generated, seen);
        let four: Vec<String> = all_connected_graphs(4, true).unwrap().iter().map(|h| h.to_graph6()).collect();
        assert_eq!(four.len(), 3);
    }

    #[test]
    fn output_is_sorted_by_form() {
        let graphs = all_connected_graphs(5, false).unwrap();
        let forms: Vec<String> = graphs.iter().map(|h| h.to_graph6()).collect();
        let mut sorted = forms.clone();
        sorted.sort();
        assert_eq!(forms, sorted);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn form_is_permutation_invariant(n in 1usize..=7, bits in any::<u32>(), seed in any::<u64>()) {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let h = UndirectedGraph::new(n, pairs.iter().enumerate().filter(|(b, _)| bits >> (b % 32) & 1 == 1).map(|(_, &e)| e)).unwrap();
            let form = canonical_form(&h).unwrap();
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..8 {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                prop_assert_eq!(&canonical_form(&h.relabel(&perm).unwrap()).unwrap(), &form);
            }
        }
    }
}
