//! Bounds on the number of classes on a tree and on class sizes read off an essential graph.
//!
//! Upper bounds of the form `((p - m) / ell)^ell` are never evaluated as rationals;
//! `size <= ((p - m)/ell)^ell` is checked as `size * ell^ell <= (p - m)^ell`.

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::BoundsError;
use crate::families::FamilySpec;
use crate::graph::UndirectedGraph;
use crate::graphgen::all_trees;
use crate::oracle::{EssentialGraph, Mec};
use crate::poly::fibonacci_number;

pub const MAX_SWEEP_NODES: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperBound {
    Exact(BigUint),
    /// `(num / den)^exp`.
    RationalPower { num: BigUint, den: BigUint, exp: u32 },
}

impl UpperBound {
    /// `(numerator side, observed side)` of the cross-multiplied comparison.
    pub fn cross_terms(&self, observed: &BigUint) -> (BigUint, BigUint) {
        match self {
            UpperBound::Exact(u) => (u.clone(), observed.clone()),
            UpperBound::RationalPower { num, den, exp } => (num.pow(*exp), observed * den.pow(*exp)),
        }
    }

    pub fn admits(&self, observed: &BigUint) -> bool {
        let (bound, scaled) = self.cross_terms(observed);
        scaled <= bound
    }

    pub fn attained_by(&self, observed: &BigUint) -> bool {
        let (bound, scaled) = self.cross_terms(observed);
        scaled == bound
    }
}

impl std::fmt::Display for UpperBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UpperBound::Exact(u) => write!(f, "{u}"),
            UpperBound::RationalPower { num, den, exp } => write!(f, "({num}/{den})^{exp}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub lower: BigUint,
    pub upper: UpperBound,
    pub observed: BigUint,
    pub holds: bool,
    pub tight_lower: bool,
    pub tight_upper: bool,
}

impl BoundReport {
    pub fn new(lower: BigUint, upper: UpperBound, observed: BigUint) -> Self {
        let holds = lower <= observed && upper.admits(&observed);
        let tight_lower = lower == observed;
        let tight_upper = upper.attained_by(&observed);
        BoundReport { lower, upper, observed, holds, tight_lower, tight_upper }
    }
}

/// `(F_{p-1}, 2^{p-1} - p + 1)`: the path and star class counts.
pub fn tree_count_bounds(p: usize) -> Result<(BigUint, BigUint), BoundsError> {
    if p == 0 {
        return Err(BoundsError::OutOfRange { p, max: usize::MAX });
    }
    let upper = (BigUint::one() << (p - 1)) + 1u32 - BigUint::from(p);
    Ok((fibonacci_number(p - 1), upper))
}

/// Class count report for one tree.
pub fn tree_count_report(tree: &UndirectedGraph, observed: BigUint) -> Result<BoundReport, BoundsError> {
    if !tree.is_tree() {
        return Err(BoundsError::NotATree);
    }
    let (lower, upper) = tree_count_bounds(tree.n())?;
    Ok(BoundReport::new(lower, UpperBound::Exact(upper), observed))
}

/// Chain-component structure of a tree class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentStats {
    pub p: usize,
    /// Nontrivial chain components.
    pub ell: usize,
    /// Directed components.
    pub m: usize,
    /// Product of chain-component orders.
    pub product: BigUint,
}

pub fn component_stats(eg: &EssentialGraph<'_>) -> Result<ComponentStats, BoundsError> {
    if !eg.skeleton().is_tree() {
        return Err(BoundsError::NotATree);
    }
    let chains = eg.chain_components();
    Ok(ComponentStats {
        p: eg.skeleton().n(),
        ell: chains.len(),
        m: eg.directed_components().len(),
        product: chains.iter().map(|c| BigUint::from(c.len())).product(),
    })
}

/// `2^ell <= size <= ((p - m)/ell)^ell`, with the size taken as the product of chain-component
/// orders. Classes without chain components have size 1 and are reported as trivially tight.
pub fn mec_size_bounds(eg: &EssentialGraph<'_>) -> Result<BoundReport, BoundsError> {
    let s = component_stats(eg)?;
    if s.ell == 0 {
        return Ok(BoundReport::new(BigUint::one(), UpperBound::Exact(BigUint::one()), BigUint::one()));
    }
    let upper = UpperBound::RationalPower {
        num: BigUint::from(s.p - s.m),
        den: BigUint::from(s.ell),
        exp: s.ell as u32,
    };
    Ok(BoundReport::new(BigUint::one() << s.ell, upper, s.product))
}

/// `m <= size <= p - 2m` for classes with exactly one chain component; `None` otherwise.
pub fn single_component_bounds(eg: &EssentialGraph<'_>, size: u64) -> Result<Option<BoundReport>, BoundsError> {
    let s = component_stats(eg)?;
    if s.ell != 1 {
        return Ok(None);
    }
    let upper = BigUint::from(s.p.saturating_sub(2 * s.m));
    let mut report = BoundReport::new(BigUint::from(s.m), UpperBound::Exact(upper), BigUint::from(size));
    if 2 * s.m > s.p {
        report.holds = false;
    }
    Ok(Some(report))
}

/// Serialised immorality set, `head:tail-tail;...`, or `none`.
pub fn class_key(mec: &Mec<'_>) -> String {
    if mec.immoralities.is_empty() {
        return "none".into();
    }
    mec.immoralities
        .iter()
        .map(|i| format!("{}:{}-{}", i.head, i.tails.0, i.tails.1))
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Clone, Debug)]
pub struct TreeCountRow {
    pub tree_id: String,
    pub is_path: bool,
    pub is_star: bool,
    pub report: BoundReport,
}

#[derive(Clone, Debug)]
pub struct ClassBoundRow {
    pub tree_id: String,
    pub class_key: String,
    pub stats: ComponentStats,
    pub size: u64,
    pub size_report: BoundReport,
    pub single_component: Option<BoundReport>,
}

impl ClassBoundRow {
    /// Class size equals the product of chain-component orders.
    pub fn product_matches(&self) -> bool {
        self.stats.product == BigUint::from(self.size)
    }

    pub const CSV_HEADER: [&'static str; 12] = [
        "tree_id",
        "p",
        "ell",
        "m",
        "class_key",
        "observed",
        "lower",
        "upper_num",
        "upper_check",
        "holds",
        "tight_lower",
        "tight_upper",
    ];

    /// `upper_num` is the bound side and `upper_check` the scaled observed side of the
    /// cross-multiplied comparison.
    pub fn csv_fields(&self) -> [String; 12] {
        let r = &self.size_report;
        let (upper_num, upper_check) = r.upper.cross_terms(&r.observed);
        [
            self.tree_id.clone(),
            self.stats.p.to_string(),
            self.stats.ell.to_string(),
            self.stats.m.to_string(),
            self.class_key.clone(),
            r.observed.to_string(),
            r.lower.to_string(),
            upper_num.to_string(),
            upper_check.to_string(),
            r.holds.to_string(),
            r.tight_lower.to_string(),
            r.tight_upper.to_string(),
        ]
    }
}

#[derive(Clone, Debug, Default)]
pub struct TreeSweep {
    pub p: usize,
    pub counts: Vec<TreeCountRow>,
    pub classes: Vec<ClassBoundRow>,
}

impl TreeSweep {
    /// Count bounds hold, with the lower bound attained exactly by the path and the upper
    /// bound exactly by the star.
    pub fn count_bounds_hold(&self) -> bool {
        self.counts
            .iter()
            .all(|r| r.report.holds && r.report.tight_lower == r.is_path && r.report.tight_upper == r.is_star)
    }

    pub fn product_formula_holds(&self) -> bool {
        self.classes.iter().all(ClassBoundRow::product_matches)
    }

    pub fn size_bounds_hold(&self) -> bool {
        self.classes.iter().all(|r| r.size_report.holds)
    }

    pub fn single_component_bounds_hold(&self) -> bool {
        self.classes.iter().filter_map(|r| r.single_component.as_ref()).all(|r| r.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.count_bounds_hold() && self.product_formula_holds() && self.size_bounds_hold() && self.single_component_bounds_hold()
    }
}

fn sweep_one(tree: &UndirectedGraph) -> Result<(TreeCountRow, Vec<ClassBoundRow>), BoundsError> {
    let p = tree.n();
    let tree_id = tree.to_graph6();
    let degrees = tree.degrees();
    let max_deg = degrees.iter().copied().max().unwrap_or(0);
    let set = crate::oracle::Enumerator::default().sequential().enumerate(tree)?;
    let count = TreeCountRow {
        tree_id: tree_id.clone(),
        is_path: max_deg <= 2,
        is_star: p <= 2 || max_deg == p - 1,
        report: tree_count_report(tree, BigUint::from(set.class_count()))?,
    };
    let mut rows = Vec::with_capacity(set.class_count());
    for mec in set.classes() {
        rows.push(ClassBoundRow {
            tree_id: tree_id.clone(),
            class_key: class_key(mec),
            stats: component_stats(&mec.essential)?,
            size: mec.size,
            size_report: mec_size_bounds(&mec.essential)?,
            single_component: single_component_bounds(&mec.essential, mec.size)?,
        });
    }
    Ok((count, rows))
}

/// Every bound over every non-isomorphic tree on `p` nodes and every class on it.
pub fn sweep_tree_bounds(p: usize) -> Result<TreeSweep, BoundsError> {
    if p == 0 || p > MAX_SWEEP_NODES {
        return Err(BoundsError::OutOfRange { p, max: MAX_SWEEP_NODES });
    }
    let trees = all_trees(p).map_err(|_| BoundsError::OutOfRange { p, max: MAX_SWEEP_NODES })?;
    let parts: Vec<_> = trees.par_iter().map(sweep_one).collect::<Result<_, _>>()?;
    let mut sweep = TreeSweep { p, ..TreeSweep::default() };
    for (count, rows) in parts {
        sweep.counts.push(count);
        sweep.classes.extend(rows);
    }
    Ok(sweep)
}

/// A tree and one member DAG of the class attaining the size upper bound: `ell` legs of
/// `s` nodes around a center, every leg edge pointing toward the center. The center's
/// in-arrows are essential, each leg is one chain component, and the class has size `s^ell`.
#[derive(Clone, Debug)]
pub struct TightConfiguration {
    pub graph: UndirectedGraph,
    pub member_bits: u64,
    pub expected_size: BigUint,
}

pub fn tight_star_configuration(ell: usize, s: usize) -> Result<TightConfiguration, BoundsError> {
    if ell < 2 || s < 2 {
        return Err(BoundsError::Configuration(format!("need ell >= 2 legs of s >= 2 nodes, got ell={ell}, s={s}")));
    }
    let graph = FamilySpec::Spider(vec![s; ell]).build().map_err(|e| BoundsError::Configuration(e.to_string()))?;
    if graph.edge_count() > 63 {
        return Err(BoundsError::Configuration(format!("{} edges exceed one orientation word", graph.edge_count())));
    }
    let e = graph.edge_count();
    // Spider edges run (closer to center, further); reversing all of them points inward.
    let member_bits = (1u64 << e) - 1;
    let expected_size = BigUint::from(s).pow(ell as u32);
    Ok(TightConfiguration { graph, member_bits, expected_size })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_mecs, Dag};

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn path(p: usize) -> UndirectedGraph {
        UndirectedGraph::new(p, (1..p).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn count_bound_examples() {
        assert_eq!(tree_count_bounds(5).unwrap(), (big(5), big(12)));
        assert_eq!(tree_count_bounds(3).unwrap(), (big(2), big(2)));
        assert_eq!(tree_count_bounds(10).unwrap(), (big(55), big(503)));
        assert_eq!(tree_count_bounds(1).unwrap(), (big(1), big(1)));
    }

    #[test]
    fn size_bound_on_path_class() {
        let p4 = path(4);
        let set = enumerate_mecs(&p4).unwrap();
        // 0 -> 1 <- 2 - 3: one chain component {2,3}, one directed component {0,1,2}.
        let dag = Dag::new(&p4, 0b010).unwrap();
        let idx = set.class_of(&dag).unwrap();
        let r = mec_size_bounds(&set.classes()[idx].essential).unwrap();
        assert_eq!(r.lower, big(2));
        assert_eq!(r.observed, big(2));
        assert_eq!(r.upper, UpperBound::RationalPower { num: big(3), den: big(1), exp: 1 });
        assert!(r.holds && r.tight_lower && !r.tight_upper);
    }

    #[test]
    fn singleton_class_is_trivial() {
        let p3 = path(3);
        let set = enumerate_mecs(&p3).unwrap();
        let v = set.classes().iter().find(|c| c.size == 1).unwrap();
        let r = mec_size_bounds(&v.essential).unwrap();
        assert_eq!(r.observed, big(1));
        assert!(r.holds && r.tight_lower && r.tight_upper);
        assert_eq!(class_key(v), "1:0-2");
    }

    #[test]
    fn non_tree_rejected() {
        let c4 = UndirectedGraph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let set = enumerate_mecs(&c4).unwrap();
        assert_eq!(mec_size_bounds(&set.classes()[0].essential), Err(BoundsError::NotATree));
    }

    #[test]
    fn tight_configuration_attains_upper_bound() {
        for (ell, s) in [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3)] {
            let cfg = tight_star_configuration(ell, s).unwrap();
            let set = enumerate_mecs(&cfg.graph).unwrap();
            let dag = Dag::new(&cfg.graph, cfg.member_bits).unwrap();
            let class = &set.classes()[set.class_of(&dag).unwrap()];
            assert_eq!(BigUint::from(class.size), cfg.expected_size);
            let r = mec_size_bounds(&class.essential).unwrap();
            assert!(r.holds && r.tight_upper, "ell={ell} s={s}: {r:?}");
            let stats = component_stats(&class.essential).unwrap();
            assert_eq!((stats.ell, stats.m), (ell, 1));
        }
        assert!(tight_star_configuration(1, 3).is_err());
        // Legs of one node are trivial chain components.
        assert!(tight_star_configuration(3, 1).is_err());
    }

    #[test]
    fn sweep_small() {
        let s5 = sweep_tree_bounds(5).unwrap();
        assert_eq!(s5.counts.len(), 3);
        assert!(s5.all_hold());
        assert_eq!(s5.counts.iter().filter(|r| r.report.tight_lower).count(), 1);
        assert_eq!(s5.counts.iter().filter(|r| r.report.tight_upper).count(), 1);
        let s6 = sweep_tree_bounds(6).unwrap();
        assert!(s6.single_component_bounds_hold());
        assert!(s6.classes.iter().any(|r| r.single_component.is_some()));
        assert!(sweep_tree_bounds(10).is_err());
    }

    #[test]
    fn csv_row_shape() {
        let s = sweep_tree_bounds(4).unwrap();
        let row = s.classes[0].csv_fields();
        assert_eq!(row.len(), ClassBoundRow::CSV_HEADER.len());
        assert_eq!(row[1], "4");
    }
}
