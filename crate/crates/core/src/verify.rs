//! Formula-versus-enumeration checks, identity checks and bound sweeps, each reported as
//! a named pass/fail outcome.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bounds::{mec_size_bounds, sweep_tree_bounds, tight_star_configuration};
use crate::combi::lucas_triangle_coefficient;
use crate::families::{
    binary_tree_ratio_check, caterpillar_count, caterpillar_counts_by_recursion, path_size_spectrum, ratio_to_f64,
    uniform_spider_count, FamilySpec,
};
use crate::oracle::{Dag, Enumerator};
use crate::poly::{fibonacci_number, lucas_polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome { name: name.into(), passed, detail: detail.into() }
    }
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{tag} {}", self.name)
        } else {
            write!(f, "{tag} {}: {}", self.name, self.detail)
        }
    }
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}

/// Largest instance of each family compared against enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyScope {
    pub path: usize,
    pub cycle: usize,
    pub star: usize,
    pub bistar_sum: usize,
    pub spider_nodes: usize,
    pub caterpillar: usize,
    pub k2p: usize,
    pub binary_tree: usize,
}

impl FamilyScope {
    pub const FULL: FamilyScope = FamilyScope {
        path: 12,
        cycle: 12,
        star: 8,
        bistar_sum: 9,
        spider_nodes: 10,
        caterpillar: 12,
        k2p: 5,
        binary_tree: 4,
    };

    /// The full scope with every node-count limit capped at `p`.
    pub fn up_to(p: usize) -> FamilyScope {
        let f = FamilyScope::FULL;
        FamilyScope {
            path: f.path.min(p),
            cycle: f.cycle.min(p),
            star: f.star.min(p.saturating_sub(1)),
            bistar_sum: f.bistar_sum.min(p.saturating_sub(2)),
            spider_nodes: f.spider_nodes.min(p),
            caterpillar: f.caterpillar.min(p),
            k2p: f.k2p.min(p.saturating_sub(2)),
            binary_tree: f.binary_tree.min(usize::BITS as usize - (p + 1).leading_zeros() as usize - 1).max(1),
        }
    }

    /// Every family instance in scope.
    pub fn instances(&self) -> Vec<FamilySpec> {
        let mut out = Vec::new();
        out.extend((1..=self.path).map(FamilySpec::Path));
        out.extend((3..=self.cycle).map(FamilySpec::Cycle));
        out.extend((0..=self.star).map(FamilySpec::Star));
        for p in 1..self.bistar_sum {
            for q in 1..=self.bistar_sum - p {
                out.push(FamilySpec::Bistar(p, q));
            }
        }
        for n in 2..=self.spider_nodes {
            for parts in 1..n {
                for legs in descending_partitions(n - 1, parts) {
                    out.push(FamilySpec::Spider(legs));
                }
            }
        }
        out.extend((1..=self.caterpillar).map(FamilySpec::Caterpillar));
        out.extend((1..=self.k2p).map(FamilySpec::K2p));
        out.extend((1..=self.binary_tree).map(FamilySpec::BinaryTree));
        out.extend((1..=self.binary_tree).map(FamilySpec::AdditiveTree));
        out
    }
}

/// Partitions of `n` into exactly `parts` parts, as descending part lists.
fn descending_partitions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, parts: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (1..=cap.min(n)).rev() {
            if n - v < parts - 1 {
                continue;
            }
            cur.push(v);
            rec(n - v, parts - 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, parts, n, &mut Vec::new(), &mut out);
    out
}

/// Formula polynomial, count, spectrum and immorality number against enumeration.
pub fn check_family(spec: &FamilySpec, en: &Enumerator) -> CheckOutcome {
    let name = format!("oracle {spec}");
    let run = || -> Result<Vec<String>, String> {
        let g = spec.build().map_err(|e| e.to_string())?;
        let set = en.enumerate(&g).map_err(|e| e.to_string())?;
        let mut mismatches = Vec::new();
        let mut compared = 0;
        if let Some(poly) = spec.formula_polynomial().map_err(|e| e.to_string())? {
            compared += 1;
            if poly != set.polynomial() {
                mismatches.push(format!("polynomial {poly} vs {}", set.polynomial()));
            }
        }
        if let Some(count) = spec.formula_count().map_err(|e| e.to_string())? {
            compared += 1;
            if count != BigUint::from(set.class_count()) {
                mismatches.push(format!("count {count} vs {}", set.class_count()));
            }
        }
        if let Some(spectrum) = spec.formula_spectrum().map_err(|e| e.to_string())? {
            compared += 1;
            if spectrum != set.size_spectrum() {
                mismatches.push(format!("spectrum {spectrum} vs {}", set.size_spectrum()));
            }
        }
        if let Some(m) = spec.formula_immorality_number().map_err(|e| e.to_string())? {
            compared += 1;
            if m != set.immorality_number() {
                mismatches.push(format!("immorality number {m} vs {}", set.immorality_number()));
            }
        }
        if let FamilySpec::Spider(legs) = spec {
            if legs.len() >= 2 && legs.iter().all(|&l| l == legs[0]) {
                compared += 1;
                let c = uniform_spider_count(legs.len(), legs[0]).map_err(|e| e.to_string())?;
                if c != BigUint::from(set.class_count()) {
                    mismatches.push(format!("uniform spider count {c} vs {}", set.class_count()));
                }
            }
        }
        if compared == 0 {
            mismatches.push("no formula to compare".into());
        }
        Ok(mismatches)
    };
    match run() {
        Ok(m) if m.is_empty() => CheckOutcome::new(name, true, ""),
        Ok(m) => CheckOutcome::new(name, false, m.join("; ")),
        Err(e) => CheckOutcome::new(name, false, e),
    }
}

/// Every in-scope family instance, in instance order.
pub fn family_checks(scope: &FamilyScope) -> Vec<CheckOutcome> {
    let en = Enumerator::default().sequential();
    // Cycles below 4 have no formula; the 3-cycle is a triangle.
    let instances: Vec<FamilySpec> =
        scope.instances().into_iter().filter(|s| !matches!(s, FamilySpec::Cycle(3))).collect();
    instances.par_iter().map(|s| check_family(s, &en)).collect()
}

fn count_of(spec: FamilySpec) -> Option<BigUint> {
    spec.formula_count().ok().flatten()
}

/// Identities between families and between the count recursions.
pub fn identity_checks() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for m in 1..=8 {
        let spider = count_of(FamilySpec::Spider(vec![m, m]));
        out.push(CheckOutcome::new(
            format!("spider ({m},{m}) count equals F_{}", 2 * m),
            spider == Some(fibonacci_number(2 * m)),
            "",
        ));
    }
    out.push(CheckOutcome::new(
        "bistar (1,1) equals path 4",
        FamilySpec::Bistar(1, 1).formula_polynomial().ok() == FamilySpec::Path(4).formula_polynomial().ok(),
        "",
    ));
    for k in 1..=8 {
        out.push(CheckOutcome::new(
            format!("spider 1^{k} equals star {k}"),
            FamilySpec::Spider(vec![1; k]).formula_polynomial().ok() == FamilySpec::Star(k).formula_polynomial().ok(),
            "",
        ));
    }
    let rec = caterpillar_counts_by_recursion(20);
    for p in 7..=20 {
        let direct = caterpillar_count(p).ok();
        let ok = rec.as_ref().ok().map(|r| r[p].clone()) == direct;
        out.push(CheckOutcome::new(format!("caterpillar count recursion p={p}"), ok, ""));
    }
    for p in 1..=14 {
        let ok = path_size_spectrum(p)
            .map(|s| s.total_count() == fibonacci_number(p - 1) && s.total_members() == BigUint::from(1u32) << (p - 1))
            .unwrap_or(false);
        out.push(CheckOutcome::new(format!("path size counts sum p={p}"), ok, ""));
    }
    out
}

/// `1 < A_k/T_k < 4` and `Z_k < T_k` for `2 <= k <= k_max`; ratio in `(1.5, 2.5)` from `k = 8`.
pub fn binary_tree_checks(k_max: usize) -> Vec<CheckOutcome> {
    (2..=k_max)
        .map(|k| match binary_tree_ratio_check(k) {
            Ok(r) => {
                let approx = ratio_to_f64(&r.ratio);
                let loose = k < 8 || (approx > 1.5 && approx < 2.5);
                let ok = r.within_bounds && r.z_below_t == Some(true) && loose;
                CheckOutcome::new(format!("binary tree ratio k={k}"), ok, format!("A/T ~ {approx:.6}"))
            }
            Err(e) => CheckOutcome::new(format!("binary tree ratio k={k}"), false, e.to_string()),
        })
        .collect()
}

/// Partition sum against the direct coefficient, and the Pascal-style recursion.
pub fn lucas_triangle_checks(p_max: usize) -> Vec<CheckOutcome> {
    (2..=p_max.max(2))
        .map(|p| {
            let direct = lucas_polynomial(p);
            let mut bad = Vec::new();
            for k in 0..=p / 2 {
                let c = lucas_triangle_coefficient(p, k);
                if c != direct.coeff(k) {
                    bad.push(format!("k={k} direct"));
                }
                let left = if k >= 1 { lucas_triangle_coefficient(p - 2, k - 1) } else { BigUint::default() };
                if c != left + lucas_triangle_coefficient(p - 1, k) {
                    bad.push(format!("k={k} recursion"));
                }
            }
            CheckOutcome::new(format!("lucas triangle p={p}"), bad.is_empty(), bad.join(", "))
        })
        .collect()
}

/// Count bounds, class size bounds and the product formula over all trees up to `p_max`,
/// plus the tight star configurations.
pub fn bounds_checks(p_max: usize) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for p in 1..=p_max {
        match sweep_tree_bounds(p) {
            Ok(s) => {
                let n = s.classes.len();
                out.push(CheckOutcome::new(
                    format!("tree count bounds p={p}"),
                    s.count_bounds_hold(),
                    format!("{} trees, tight lower only at the path, tight upper only at the star", s.counts.len()),
                ));
                out.push(CheckOutcome::new(format!("chain component product p={p}"), s.product_formula_holds(), format!("{n} classes")));
                out.push(CheckOutcome::new(format!("class size bounds p={p}"), s.size_bounds_hold(), format!("{n} classes")));
                let single = s.classes.iter().filter(|r| r.single_component.is_some()).count();
                out.push(CheckOutcome::new(
                    format!("single chain component bounds p={p}"),
                    s.single_component_bounds_hold(),
                    format!("{single} classes"),
                ));
            }
            Err(e) => out.push(CheckOutcome::new(format!("tree sweep p={p}"), false, e.to_string())),
        }
    }
    for (ell, s) in [(2, 2), (3, 2), (2, 3), (4, 2)] {
        let name = format!("tight size configuration ell={ell} s={s}");
        let outcome = (|| -> Result<bool, String> {
            let cfg = tight_star_configuration(ell, s).map_err(|e| e.to_string())?;
            let set = Enumerator::default().enumerate(&cfg.graph).map_err(|e| e.to_string())?;
            let dag = Dag::new(&cfg.graph, cfg.member_bits).map_err(|e| e.to_string())?;
            let idx = set.class_of(&dag).ok_or("member not found")?;
            let r = mec_size_bounds(&set.classes()[idx].essential).map_err(|e| e.to_string())?;
            Ok(r.holds && r.tight_upper && r.observed == cfg.expected_size)
        })();
        match outcome {
            Ok(ok) => out.push(CheckOutcome::new(name, ok, "")),
            Err(e) => out.push(CheckOutcome::new(name, false, e)),
        }
    }
    out
}
