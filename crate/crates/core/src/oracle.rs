//! Ground truth by exhaustion: every acyclic orientation of a skeleton is visited,
//! and orientations are grouped into Markov equivalence classes by their immorality
//! set (two DAGs on one skeleton are equivalent exactly when their immoralities agree).
//!
//! An orientation is a bit vector over the skeleton's edge list: bit `e` clear means
//! edge `(u, v)` (with `u < v`) points `u -> v`, set means `v -> u`. Orientations are
//! produced in ascending bit-vector order by a depth-first walk that assigns the
//! highest-index edge first and prunes any prefix that already closes a directed cycle.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::OracleError;
use crate::graph::UndirectedGraph;
use crate::poly::{Polynomial, SizeSpectrum};

pub const DEFAULT_EDGE_CAP: usize = 30;

/// Orientations are split into `2^SPLIT_BITS` contiguous ranges for parallel grouping.
const SPLIT_BITS: usize = 6;
const PARALLEL_MIN_EDGES: usize = 14;

/// An acyclic orientation of a skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dag<'g> {
    skeleton: &'g UndirectedGraph,
    bits: u64,
}

/// An induced `i -> head <- k` with `i` and `k` non-adjacent; `tails.0 < tails.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Immorality {
    pub head: usize,
    pub tails: (usize, usize),
}

impl std::fmt::Display for Immorality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}->{}<-{}", self.tails.0, self.head, self.tails.1)
    }
}

fn arc_of(edge: (usize, usize), reversed: bool) -> (usize, usize) {
    if reversed {
        (edge.1, edge.0)
    } else {
        edge
    }
}

fn check_size(g: &UndirectedGraph) -> Result<(), OracleError> {
    if g.n() > 64 {
        return Err(OracleError::TooManyVertices { n: g.n() });
    }
    Ok(())
}

impl<'g> Dag<'g> {
    /// Fails if `bits` names edges the skeleton lacks or the orientation has a cycle.
    pub fn new(skeleton: &'g UndirectedGraph, bits: u64) -> Result<Self, OracleError> {
        check_size(skeleton)?;
        let e = skeleton.edge_count();
        if e < 64 && bits >> e != 0 {
            return Err(OracleError::BitsOutOfRange { edges: e });
        }
        let dag = Dag { skeleton, bits };
        if !dag.is_acyclic() {
            return Err(OracleError::Cyclic { bits });
        }
        Ok(dag)
    }

    pub fn skeleton(&self) -> &'g UndirectedGraph {
        self.skeleton
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Arc `(tail, head)` for edge index `e`.
    pub fn arc(&self, e: usize) -> (usize, usize) {
        arc_of(self.skeleton.edges()[e], self.bits >> e & 1 == 1)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.skeleton.edge_count()).map(move |e| self.arc(e))
    }

    /// Parent bitmask per vertex.
    fn parent_masks(&self) -> Vec<u64> {
        let mut pa = vec![0u64; self.skeleton.n()];
        for (t, h) in self.arcs() {
            pa[h] |= 1 << t;
        }
        pa
    }

    pub fn parents(&self, v: usize) -> Vec<usize> {
        let mask = self.parent_masks()[v];
        (0..self.skeleton.n()).filter(|&u| mask >> u & 1 == 1).collect()
    }

    fn is_acyclic(&self) -> bool {
        let n = self.skeleton.n();
        let pa = self.parent_masks();
        let mut placed = 0u64;
        for _ in 0..n {
            match (0..n).find(|&v| placed >> v & 1 == 0 && pa[v] & !placed == 0) {
                Some(v) => placed |= 1 << v,
                None => return false,
            }
        }
        true
    }

    /// All immoralities, sorted by head then tails.
    pub fn immoralities(&self) -> Vec<Immorality> {
        let n = self.skeleton.n();
        let adj = self.skeleton.adjacency_matrix();
        let pa = self.parent_masks();
        let mut out = Vec::new();
        for (head, &mask) in pa.iter().enumerate() {
            let parents: Vec<usize> = (0..n).filter(|&u| mask >> u & 1 == 1).collect();
            for (a, &i) in parents.iter().enumerate() {
                for &k in &parents[a + 1..] {
                    if !adj[i * n + k] {
                        out.push(Immorality { head, tails: (i, k) });
                    }
                }
            }
        }
        out
    }

    /// The same skeleton with edge `e` reversed, if that is still acyclic.
    pub fn flipped(&self, e: usize) -> Option<Dag<'g>> {
        Dag::new(self.skeleton, self.bits ^ (1 << e)).ok()
    }
}

pub fn immoralities_of(d: &Dag<'_>) -> Vec<Immorality> {
    d.immoralities()
}

/// Incremental DFS over edge directions, visiting only acyclic orientations.
#[derive(Clone, Debug)]
struct Walker {
    n: usize,
    edges: Vec<(usize, usize)>,
    free: usize,
    bits: u64,
    /// Transitive-closure masks, one block of `n` words per depth.
    reach: Vec<u64>,
    choice: Vec<u8>,
    depth: usize,
    done: bool,
}

/// Adds `t -> h` to the closure, or returns false if it would close a cycle.
fn add_arc(reach: &mut [u64], t: usize, h: usize) -> bool {
    if t == h || reach[h] >> t & 1 == 1 {
        return false;
    }
    let add = reach[h] | 1 << h;
    for (w, r) in reach.iter_mut().enumerate() {
        if w == t || *r >> t & 1 == 1 {
            *r |= add;
        }
    }
    true
}

impl Walker {
    /// Walks orientations whose top `edges.len() - free` bits equal those of `prefix`.
    fn new(g: &UndirectedGraph, free: usize, prefix: u64) -> Self {
        let n = g.n();
        let edges = g.edges().to_vec();
        let mut reach = vec![0u64; n * (free + 1)];
        let mut done = false;
        for (e, &edge) in edges.iter().enumerate().skip(free) {
            let (t, h) = arc_of(edge, prefix >> e & 1 == 1);
            if !add_arc(&mut reach[..n], t, h) {
                done = true;
                break;
            }
        }
        let fixed_mask = if free >= 64 { 0 } else { !0u64 << free };
        Walker { n, edges, free, bits: prefix & fixed_mask, reach, choice: vec![0; free], depth: 0, done }
    }
}

impl Iterator for Walker {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let n = self.n;
        loop {
            if self.done {
                return None;
            }
            if self.depth == self.free {
                let out = self.bits;
                if self.free == 0 {
                    self.done = true;
                } else {
                    self.depth -= 1;
                }
                return Some(out);
            }
            let d = self.depth;
            let c = self.choice[d];
            if c >= 2 {
                self.choice[d] = 0;
                if d == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                continue;
            }
            self.choice[d] = c + 1;
            let e = self.free - 1 - d;
            let (t, h) = arc_of(self.edges[e], c == 1);
            let (cur, next) = self.reach.split_at_mut((d + 1) * n);
            let next = &mut next[..n];
            next.copy_from_slice(&cur[d * n..]);
            if !add_arc(next, t, h) {
                continue;
            }
            self.bits = (self.bits & !(1 << e)) | (c as u64) << e;
            self.depth += 1;
        }
    }
}

/// Stream of acyclic orientations in ascending bit-vector order.
pub struct AcyclicOrientations<'g> {
    graph: &'g UndirectedGraph,
    walker: Walker,
}

impl<'g> Iterator for AcyclicOrientations<'g> {
    type Item = Dag<'g>;

    fn next(&mut self) -> Option<Dag<'g>> {
        self.walker.next().map(|bits| Dag { skeleton: self.graph, bits })
    }
}

/// Configured enumeration: edge cap and whether to split work across threads.
#[derive(Clone, Copy, Debug)]
pub struct Enumerator {
    pub edge_cap: usize,
    pub parallel: bool,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator { edge_cap: DEFAULT_EDGE_CAP, parallel: true }
    }
}

/// A potential immorality `tail_a -> head <- tail_b` and the edge bits that realise it.
#[derive(Clone, Copy, Debug)]
struct Site {
    imm: Immorality,
    mask: u64,
    want: u64,
}

fn sites_of(g: &UndirectedGraph) -> Vec<Site> {
    let adj = g.adjacency();
    let mut sites = Vec::new();
    let into = |t: usize, h: usize| {
        let e = g.edge_index(t, h).expect("site edge exists");
        // Bit clear means low -> high.
        (1u64 << e, if t < h { 0 } else { 1u64 << e })
    };
    for (head, nbrs) in adj.iter().enumerate() {
        for (a, &i) in nbrs.iter().enumerate() {
            for &k in &nbrs[a + 1..] {
                if g.has_edge(i, k) {
                    continue;
                }
                let (m1, w1) = into(i, head);
                let (m2, w2) = into(k, head);
                sites.push(Site { imm: Immorality { head, tails: (i, k) }, mask: m1 | m2, want: w1 | w2 });
            }
        }
    }
    sites
}

#[derive(Clone, Copy, Debug)]
struct ClassAcc {
    count: u64,
    all_set: u64,
    any_set: u64,
    first: u64,
}

impl ClassAcc {
    fn new(bits: u64) -> Self {
        ClassAcc { count: 1, all_set: bits, any_set: bits, first: bits }
    }

    fn push(&mut self, bits: u64) {
        self.count += 1;
        self.all_set &= bits;
        self.any_set |= bits;
        self.first = self.first.min(bits);
    }

    fn merge(&mut self, other: &ClassAcc) {
        self.count += other.count;
        self.all_set &= other.all_set;
        self.any_set |= other.any_set;
        self.first = self.first.min(other.first);
    }
}

type ClassMap = HashMap<Vec<u64>, ClassAcc>;

fn group_range(g: &UndirectedGraph, sites: &[Site], free: usize, prefix: u64) -> (ClassMap, u64) {
    let words = sites.len().div_ceil(64).max(1);
    let mut map: ClassMap = HashMap::new();
    let mut key = vec![0u64; words];
    let mut total = 0;
    for bits in Walker::new(g, free, prefix) {
        total += 1;
        key.iter_mut().for_each(|w| *w = 0);
        for (s, site) in sites.iter().enumerate() {
            if bits & site.mask == site.want {
                key[s / 64] |= 1 << (s % 64);
            }
        }
        match map.get_mut(key.as_slice()) {
            Some(acc) => acc.push(bits),
            None => {
                map.insert(key.clone(), ClassAcc::new(bits));
            }
        }
    }
    (map, total)
}

/// Status of one skeleton edge in an essential graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeStatus {
    Directed { tail: usize, head: usize },
    Undirected,
}

/// Arrows shared by every member of a class; all other edges undirected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialGraph<'g> {
    skeleton: &'g UndirectedGraph,
    status: Vec<EdgeStatus>,
}

fn components_over(n: usize, edges: impl Iterator<Item = (usize, usize)>, keep_singletons: bool) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut touched = vec![false; n];
    for (u, v) in edges {
        touched[u] = true;
        touched[v] = true;
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, &hit) in touched.iter().enumerate() {
        if hit || keep_singletons {
            let r = find(&mut parent, v);
            groups[r].push(v);
        }
    }
    groups.into_iter().filter(|c| !c.is_empty()).collect()
}

impl<'g> EssentialGraph<'g> {
    fn from_masks(skeleton: &'g UndirectedGraph, all_set: u64, any_set: u64) -> Self {
        let status = skeleton
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &edge)| {
                let (a, b) = (all_set >> e & 1, any_set >> e & 1);
                if a == b {
                    let (tail, head) = arc_of(edge, a == 1);
                    EdgeStatus::Directed { tail, head }
                } else {
                    EdgeStatus::Undirected
                }
            })
            .collect();
        EssentialGraph { skeleton, status }
    }

    /// Essential graph of an explicit member list, which must form a single class.
    pub fn from_members(members: &[Dag<'g>]) -> Result<Self, OracleError> {
        let first = members.first().ok_or(OracleError::NoMembers)?;
        let imm = first.immoralities();
        let mut all_set = first.bits;
        let mut any_set = first.bits;
        for m in &members[1..] {
            if m.skeleton != first.skeleton || m.immoralities() != imm {
                return Err(OracleError::NotOneClass);
            }
            all_set &= m.bits;
            any_set |= m.bits;
        }
        Ok(EssentialGraph::from_masks(first.skeleton, all_set, any_set))
    }

    pub fn skeleton(&self) -> &'g UndirectedGraph {
        self.skeleton
    }

    pub fn status(&self) -> &[EdgeStatus] {
        &self.status
    }

    pub fn directed_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.status.iter().filter_map(|s| match *s {
            EdgeStatus::Directed { tail, head } => Some((tail, head)),
            EdgeStatus::Undirected => None,
        })
    }

    pub fn undirected_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.skeleton
            .edges()
            .iter()
            .zip(&self.status)
            .filter(|(_, s)| **s == EdgeStatus::Undirected)
            .map(|(&e, _)| e)
    }

    /// Connected components of the undirected part with at least two vertices.
    pub fn chain_components(&self) -> Vec<Vec<usize>> {
        components_over(self.skeleton.n(), self.undirected_edges(), false)
    }

    /// Components of the undirected part over all vertices, singletons included.
    pub fn all_chain_components(&self) -> Vec<Vec<usize>> {
        components_over(self.skeleton.n(), self.undirected_edges(), true)
    }

    /// Connected components of the directed part (vertices with at least one arrow).
    pub fn directed_components(&self) -> Vec<Vec<usize>> {
        components_over(self.skeleton.n(), self.directed_edges(), false)
    }
}

pub fn essential_graph<'g>(members: &[Dag<'g>]) -> Result<EssentialGraph<'g>, OracleError> {
    EssentialGraph::from_members(members)
}

/// One Markov equivalence class.
#[derive(Clone, Debug)]
pub struct Mec<'g> {
    pub immoralities: Vec<Immorality>,
    pub size: u64,
    /// The member with the smallest orientation bit vector.
    pub representative: Dag<'g>,
    pub essential: EssentialGraph<'g>,
}

/// All classes on one skeleton, ordered by immorality set.
#[derive(Clone, Debug)]
pub struct MecSet<'g> {
    graph: &'g UndirectedGraph,
    classes: Vec<Mec<'g>>,
    orientations: u64,
}

impl<'g> MecSet<'g> {
    pub fn graph(&self) -> &'g UndirectedGraph {
        self.graph
    }

    pub fn classes(&self) -> &[Mec<'g>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn orientation_count(&self) -> u64 {
        self.orientations
    }

    /// `M(G;x)`: coefficient `k` counts classes with exactly `k` immoralities.
    pub fn polynomial(&self) -> Polynomial {
        let max = self.classes.iter().map(|c| c.immoralities.len()).max().unwrap_or(0);
        let mut counts = vec![0u64; max + 1];
        for c in &self.classes {
            counts[c.immoralities.len()] += 1;
        }
        Polynomial::from_u64s(&counts)
    }

    pub fn immorality_number(&self) -> usize {
        self.classes.iter().map(|c| c.immoralities.len()).max().unwrap_or(0)
    }

    pub fn size_spectrum(&self) -> SizeSpectrum {
        let mut s = SizeSpectrum::new();
        for c in &self.classes {
            s.add(c.size, 1u32);
        }
        s
    }

    /// Index of the class containing `dag`.
    pub fn class_of(&self, dag: &Dag<'_>) -> Option<usize> {
        let imm = dag.immoralities();
        self.classes.binary_search_by(|c| c.immoralities.cmp(&imm)).ok()
    }

    /// Every member of class `idx`, by re-walking the orientations.
    pub fn members(&self, idx: usize) -> Vec<Dag<'g>> {
        let target = &self.classes[idx].immoralities;
        AcyclicOrientations { graph: self.graph, walker: Walker::new(self.graph, self.graph.edge_count(), 0) }
            .filter(|d| &d.immoralities() == target)
            .collect()
    }
}

impl Enumerator {
    pub fn with_cap(edge_cap: usize) -> Self {
        Enumerator { edge_cap, ..Enumerator::default() }
    }

    pub fn sequential(self) -> Self {
        Enumerator { parallel: false, ..self }
    }

    fn check(&self, g: &UndirectedGraph) -> Result<(), OracleError> {
        check_size(g)?;
        let cap = self.edge_cap.min(63);
        if g.edge_count() > cap {
            return Err(OracleError::EdgeCapExceeded { edges: g.edge_count(), cap });
        }
        Ok(())
    }

    pub fn orientations<'g>(&self, g: &'g UndirectedGraph) -> Result<AcyclicOrientations<'g>, OracleError> {
        self.check(g)?;
        Ok(AcyclicOrientations { graph: g, walker: Walker::new(g, g.edge_count(), 0) })
    }

    pub fn enumerate<'g>(&self, g: &'g UndirectedGraph) -> Result<MecSet<'g>, OracleError> {
        self.check(g)?;
        let e = g.edge_count();
        let sites = sites_of(g);
        let (map, total) = if self.parallel && e >= PARALLEL_MIN_EDGES {
            let free = e - SPLIT_BITS;
            let parts: Vec<(ClassMap, u64)> = (0..1u64 << SPLIT_BITS)
                .into_par_iter()
                .map(|i| group_range(g, &sites, free, i << free))
                .collect();
            let mut merged: ClassMap = HashMap::new();
            let mut total = 0;
            for (part, count) in parts {
                total += count;
                for (key, acc) in part {
                    merged.entry(key).and_modify(|a| a.merge(&acc)).or_insert(acc);
                }
            }
            (merged, total)
        } else {
            group_range(g, &sites, e, 0)
        };
        let mut classes: Vec<Mec<'g>> = map
            .into_iter()
            .map(|(key, acc)| {
                let immoralities = sites
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| key[s / 64] >> (s % 64) & 1 == 1)
                    .map(|(_, site)| site.imm)
                    .collect();
                Mec {
                    immoralities,
                    size: acc.count,
                    representative: Dag { skeleton: g, bits: acc.first },
                    essential: EssentialGraph::from_masks(g, acc.all_set, acc.any_set),
                }
            })
            .collect();
        classes.sort_by(|a, b| a.immoralities.cmp(&b.immoralities));
        Ok(MecSet { graph: g, classes, orientations: total })
    }
}

pub fn acyclic_orientations(g: &UndirectedGraph) -> Result<AcyclicOrientations<'_>, OracleError> {
    Enumerator::default().orientations(g)
}

pub fn enumerate_mecs(g: &UndirectedGraph) -> Result<MecSet<'_>, OracleError> {
    Enumerator::default().enumerate(g)
}

pub fn mec_polynomial(g: &UndirectedGraph) -> Result<Polynomial, OracleError> {
    Ok(enumerate_mecs(g)?.polynomial())
}

pub fn immorality_number(g: &UndirectedGraph) -> Result<usize, OracleError> {
    Ok(enumerate_mecs(g)?.immorality_number())
}

pub fn size_spectrum(g: &UndirectedGraph) -> Result<SizeSpectrum, OracleError> {
    Ok(enumerate_mecs(g)?.size_spectrum())
}

/// Per-component enumeration of a possibly disconnected skeleton; classes of the whole
/// graph are products of per-component classes.
#[derive(Clone, Debug)]
pub struct ComponentwiseSummary {
    pub components: Vec<Vec<usize>>,
    pub polynomial: Polynomial,
    pub spectrum: SizeSpectrum,
    pub orientations: u128,
}

pub fn enumerate_componentwise(g: &UndirectedGraph, en: &Enumerator) -> Result<ComponentwiseSummary, OracleError> {
    let components = g.components();
    let mut polynomial = Polynomial::one();
    let mut spectrum = SizeSpectrum::new();
    spectrum.add(1, 1u32);
    let mut orientations: u128 = 1;
    for comp in &components {
        let sub = g.induced_subgraph(comp);
        let set = en.enumerate(&sub)?;
        polynomial = &polynomial * &set.polynomial();
        spectrum = spectrum.product(&set.size_spectrum());
        orientations *= set.orientation_count() as u128;
    }
    Ok(ComponentwiseSummary { components, polynomial, spectrum, orientations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn g(n: usize, e: &[(usize, usize)]) -> UndirectedGraph {
        UndirectedGraph::new(n, e.iter().copied()).unwrap()
    }

    fn path(p: usize) -> UndirectedGraph {
        g(p, &(0..p - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    fn cycle(p: usize) -> UndirectedGraph {
        let mut e: Vec<_> = (0..p - 1).map(|i| (i, i + 1)).collect();
        e.push((0, p - 1));
        g(p, &e)
    }

    fn star(p: usize) -> UndirectedGraph {
        g(p + 1, &(1..=p).map(|i| (0, i)).collect::<Vec<_>>())
    }

    /// Oracle: filter all 2^|E| vectors with a from-scratch acyclicity check.
    fn brute_acyclic(g: &UndirectedGraph) -> Vec<u64> {
        (0..1u64 << g.edge_count()).filter(|&b| Dag::new(g, b).is_ok()).collect()
    }

    #[test]
    fn orientation_counts() {
        assert_eq!(acyclic_orientations(&path(2)).unwrap().count(), 2);
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(acyclic_orientations(&k3).unwrap().count(), 6);
        assert_eq!(acyclic_orientations(&cycle(4)).unwrap().count(), 14);
        assert_eq!(acyclic_orientations(&UndirectedGraph::empty(3)).unwrap().count(), 1);
    }

    #[test]
    fn walker_matches_filtered_bit_vectors() {
        let graphs = [
            cycle(5),
            g(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 4), (1, 4), (2, 4)]),
            g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            g(6, &[(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5), (3, 4)]),
        ];
        for h in &graphs {
            let walked: Vec<u64> = acyclic_orientations(h).unwrap().map(|d| d.bits()).collect();
            assert_eq!(walked, brute_acyclic(h), "{h}");
        }
    }

    #[test]
    fn prefix_ranges_partition_the_walk() {
        let h = g(6, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 5)]);
        let e = h.edge_count();
        let whole: Vec<u64> = Walker::new(&h, e, 0).collect();
        let split: Vec<u64> = (0..8u64).flat_map(|i| Walker::new(&h, e - 3, i << (e - 3))).collect();
        assert_eq!(whole, split);
    }

    #[test]
    fn cap_is_enforced() {
        let h = cycle(12);
        assert_eq!(
            Enumerator::with_cap(10).enumerate(&h).unwrap_err(),
            OracleError::EdgeCapExceeded { edges: 12, cap: 10 }
        );
        assert!(Enumerator::with_cap(10).orientations(&h).is_err());
    }

    #[test]
    fn dag_construction_rejects_cycles() {
        let c3 = cycle(3);
        // edges (0,1),(0,2),(1,2): 0->1, 2->0, 1->2 is a directed triangle.
        assert_eq!(Dag::new(&c3, 0b010), Err(OracleError::Cyclic { bits: 0b010 }));
        assert!(Dag::new(&c3, 0b000).is_ok());
        assert_eq!(Dag::new(&c3, 0b1000), Err(OracleError::BitsOutOfRange { edges: 3 }));
    }

    #[test]
    fn immorality_examples() {
        let p3 = path(3);
        // 0 -> 1 <- 2: edge (0,1) clear, edge (1,2) set.
        let v = Dag::new(&p3, 0b10).unwrap();
        assert_eq!(immoralities_of(&v), vec![Immorality { head: 1, tails: (0, 2) }]);
        let chain = Dag::new(&p3, 0b00).unwrap();
        assert!(chain.immoralities().is_empty());
        let s3 = star(3);
        let inward = Dag::new(&s3, 0b111).unwrap();
        assert_eq!(inward.immoralities().len(), 3);
    }

    #[test]
    fn class_counts() {
        let p3 = path(3);
        let i3 = enumerate_mecs(&p3).unwrap();
        let sizes: Vec<(usize, u64)> = i3.classes().iter().map(|c| (c.immoralities.len(), c.size)).collect();
        assert_eq!(sizes, vec![(0, 3), (1, 1)]);
        assert_eq!(enumerate_mecs(&path(5)).unwrap().class_count(), 5);
        assert_eq!(enumerate_mecs(&cycle(4)).unwrap().class_count(), 6);
    }

    #[test]
    fn polynomials_and_spectra() {
        assert_eq!(mec_polynomial(&path(5)).unwrap(), Polynomial::from_u64s(&[1, 3, 1]));
        assert_eq!(mec_polynomial(&star(3)).unwrap(), Polynomial::from_u64s(&[1, 3, 0, 1]));
        let k23 = g(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(immorality_number(&k23).unwrap(), 6);
        assert_eq!(size_spectrum(&path(4)).unwrap().to_string(), "{2:2, 4:1}");
        assert_eq!(size_spectrum(&star(3)).unwrap().to_string(), "{1:4, 4:1}");
        assert_eq!(size_spectrum(&cycle(4)).unwrap().to_string(), "{1:2, 3:4}");
    }

    #[test]
    fn essential_graph_examples() {
        let p3 = path(3);
        let v = Dag::new(&p3, 0b10).unwrap();
        let eg = essential_graph(&[v]).unwrap();
        assert_eq!(eg.undirected_edges().count(), 0);
        assert!(eg.chain_components().is_empty());
        assert_eq!(eg.directed_components(), vec![vec![0, 1, 2]]);

        let set = enumerate_mecs(&p3).unwrap();
        let none = &set.classes()[0];
        assert!(none.immoralities.is_empty());
        assert_eq!(none.essential.directed_edges().count(), 0);
        assert_eq!(none.essential.chain_components(), vec![vec![0, 1, 2]]);
        assert!(none.essential.directed_components().is_empty());

        // 0 -> 1 <- 2 with 2 - 3 free on the 4-path.
        let p4 = path(4);
        let a = Dag::new(&p4, 0b010).unwrap();
        let b = Dag::new(&p4, 0b110).unwrap();
        let eg = essential_graph(&[a, b]).unwrap();
        assert_eq!(
            eg.status(),
            &[
                EdgeStatus::Directed { tail: 0, head: 1 },
                EdgeStatus::Directed { tail: 2, head: 1 },
                EdgeStatus::Undirected
            ]
        );
        assert_eq!(eg.chain_components(), vec![vec![2, 3]]);
        assert_eq!(eg.directed_components(), vec![vec![0, 1, 2]]);
        assert_eq!(eg.all_chain_components(), vec![vec![0], vec![1], vec![2, 3]]);
    }

    #[test]
    fn essential_graph_errors() {
        assert_eq!(essential_graph(&[]).unwrap_err(), OracleError::NoMembers);
        let p3 = path(3);
        let a = Dag::new(&p3, 0b10).unwrap();
        let b = Dag::new(&p3, 0b00).unwrap();
        assert_eq!(essential_graph(&[a, b]).unwrap_err(), OracleError::NotOneClass);
    }

    #[test]
    fn mask_route_matches_member_route() {
        let h = g(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5)]);
        let set = enumerate_mecs(&h).unwrap();
        for (i, class) in set.classes().iter().enumerate() {
            let members = set.members(i);
            assert_eq!(members.len() as u64, class.size);
            assert_eq!(members[0], class.representative);
            assert_eq!(EssentialGraph::from_members(&members).unwrap(), class.essential);
            assert_eq!(set.class_of(&members[members.len() - 1]), Some(i));
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let h = g(
            9,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 5), (4, 6), (5, 6), (6, 7), (7, 8), (1, 8), (2, 7), (3, 8), (5, 7)],
        );
        let par = Enumerator::default().enumerate(&h).unwrap();
        let seq = Enumerator::default().sequential().enumerate(&h).unwrap();
        assert_eq!(par.orientation_count(), seq.orientation_count());
        assert_eq!(par.classes().len(), seq.classes().len());
        for (a, b) in par.classes().iter().zip(seq.classes()) {
            assert_eq!(a.immoralities, b.immoralities);
            assert_eq!(a.size, b.size);
            assert_eq!(a.representative, b.representative);
            assert_eq!(a.essential, b.essential);
        }
    }

    #[test]
    fn componentwise_product_matches_direct() {
        let h = g(7, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (3, 6)]);
        let summary = enumerate_componentwise(&h, &Enumerator::default()).unwrap();
        let direct = enumerate_mecs(&h).unwrap();
        assert_eq!(summary.components.len(), 2);
        assert_eq!(summary.polynomial, direct.polynomial());
        assert_eq!(summary.spectrum, direct.size_spectrum());
        assert_eq!(summary.orientations, direct.orientation_count() as u128);
        assert_eq!(summary.polynomial.eval_at_one(), BigUint::from(2u32 * 6));
    }
}
