//! Per-graph class statistics over every connected graph of a given order, and the
//! check that `M(G;x)` separates non-isomorphic graphs.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{UpperBound, BoundReport};
use crate::error::{GenError, GraphError, OracleError};
use crate::graph::{Clustering, UndirectedGraph};
use crate::graphgen::all_connected_graphs;
use crate::oracle::{Enumerator, MecSet};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurveyError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Classes sharing an immorality ratio and a size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RatioRow {
    /// Immoralities over induced 3-paths; `None` when the graph has no induced 3-path.
    pub ratio: Option<Ratio<u64>>,
    pub size: u64,
    pub classes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyRecord {
    pub canonical_id: String,
    pub p: usize,
    pub edge_count: usize,
    pub max_degree: usize,
    pub avg_degree: Ratio<u64>,
    pub clustering: Clustering,
    pub triangle_free: bool,
    pub induced_3paths: u64,
    pub mec_count: u64,
    pub avg_class_size: Ratio<u64>,
    pub max_class_size: u64,
    pub immorality_ratio_rows: Vec<RatioRow>,
    pub orientations: u64,
    /// Classes whose size falls outside `[2^ell, ((p - m)/ell)^ell]`; the bound is only
    /// established for trees, so this is an observation, not an assertion.
    pub size_bound_exceptions: u64,
    pub polynomial: Polynomial,
}

/// Positional decimal with 12 significant digits.
fn decimal(r: Ratio<u64>) -> String {
    let v = *r.numer() as f64 / *r.denom() as f64;
    if v == 0.0 {
        return "0".to_string();
    }
    // Round in scientific form first so the exponent reflects any carry.
    let sci = format!("{v:.11e}");
    let exp: i32 = sci.split_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    let places = (11 - exp).max(0) as usize;
    format!("{v:.places$}")
}

fn exact(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl SurveyRecord {
    pub const CSV_HEADER: [&'static str; 18] = [
        "canonical_id",
        "p",
        "edge_count",
        "max_degree",
        "avg_degree",
        "avg_degree_decimal",
        "clustering_coefficient",
        "clustering_coefficient_decimal",
        "triangle_free",
        "induced_3paths",
        "mec_count",
        "avg_class_size",
        "avg_class_size_decimal",
        "max_class_size",
        "immorality_ratio_rows",
        "orientations",
        "size_bound_exceptions",
        "polynomial",
    ];

    pub fn from_classes(g: &UndirectedGraph, set: &MecSet<'_>) -> Result<Self, SurveyError> {
        let (max_degree, avg_degree) = g.degree_stats()?;
        let induced_3paths = g.count_induced_3paths();
        let mec_count = set.class_count() as u64;
        let mut rows: BTreeMap<(Option<Ratio<u64>>, u64), u64> = BTreeMap::new();
        let mut size_bound_exceptions = 0;
        for mec in set.classes() {
            let ratio = (induced_3paths > 0).then(|| Ratio::new(mec.immoralities.len() as u64, induced_3paths));
            *rows.entry((ratio, mec.size)).or_default() += 1;
            let ell = mec.essential.chain_components().len();
            if ell > 0 {
                let m = mec.essential.directed_components().len();
                let upper = UpperBound::RationalPower {
                    num: (g.n() - m).into(),
                    den: ell.into(),
                    exp: ell as u32,
                };
                if !BoundReport::new(num_bigint::BigUint::from(1u32) << ell, upper, mec.size.into()).holds {
                    size_bound_exceptions += 1;
                }
            }
        }
        Ok(SurveyRecord {
            canonical_id: g.to_graph6(),
            p: g.n(),
            edge_count: g.edge_count(),
            max_degree,
            avg_degree,
            clustering: g.clustering_coefficient(),
            triangle_free: g.is_triangle_free(),
            induced_3paths,
            mec_count,
            avg_class_size: Ratio::new(set.orientation_count(), mec_count.max(1)),
            max_class_size: set.classes().iter().map(|c| c.size).max().unwrap_or(0),
            immorality_ratio_rows: rows
                .into_iter()
                .map(|((ratio, size), classes)| RatioRow { ratio, size, classes })
                .collect(),
            orientations: set.orientation_count(),
            size_bound_exceptions,
            polynomial: set.polynomial(),
        })
    }

    pub fn from_graph(g: &UndirectedGraph, en: &Enumerator) -> Result<Self, SurveyError> {
        let set = en.enumerate(g)?;
        Self::from_classes(g, &set)
    }

    /// Ratio rows as `num/den:size:classes` joined by `;`.
    pub fn ratio_rows_field(&self) -> String {
        self.immorality_ratio_rows
            .iter()
            .map(|r| {
                let ratio = r.ratio.map_or_else(|| "undefined".to_string(), exact);
                format!("{ratio}:{}:{}", r.size, r.classes)
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn csv_fields(&self) -> Vec<String> {
        let (clustering, clustering_decimal) = match self.clustering {
            Clustering::Defined(r) => (exact(r), decimal(r)),
            Clustering::Undefined => ("undefined".to_string(), decimal(Ratio::from_integer(0))),
        };
        vec![
            self.canonical_id.clone(),
            self.p.to_string(),
            self.edge_count.to_string(),
            self.max_degree.to_string(),
            exact(self.avg_degree),
            decimal(self.avg_degree),
            clustering,
            clustering_decimal,
            self.triangle_free.to_string(),
            self.induced_3paths.to_string(),
            self.mec_count.to_string(),
            exact(self.avg_class_size),
            decimal(self.avg_class_size),
            self.max_class_size.to_string(),
            self.ratio_rows_field(),
            self.orientations.to_string(),
            self.size_bound_exceptions.to_string(),
            self.polynomial.to_string(),
        ]
    }

    /// `avg_class_size * mec_count == orientations`.
    pub fn is_consistent(&self) -> bool {
        self.mec_count >= 1
            && self.avg_class_size * Ratio::from_integer(self.mec_count) == Ratio::from_integer(self.orientations)
            && self.avg_class_size.to_f64().is_some()
    }
}

/// One record per isomorphism class of connected graphs on `p` nodes, ordered by canonical id.
pub fn survey(p: usize, triangle_free: bool) -> Result<Vec<SurveyRecord>, SurveyError> {
    let graphs = all_connected_graphs(p, triangle_free)?;
    let en = Enumerator::default().sequential();
    graphs.par_iter().map(|g| SurveyRecord::from_graph(g, &en)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub p: usize,
    pub triangle_free: bool,
    pub graphs: usize,
    pub distinct_polynomials: usize,
    /// Polynomials shared by two or more non-isomorphic graphs, with their canonical ids.
    pub collisions: Vec<(Polynomial, Vec<String>)>,
}

pub fn invariant_check(p: usize, triangle_free: bool) -> Result<InvariantReport, SurveyError> {
    let graphs = all_connected_graphs(p, triangle_free)?;
    let en = Enumerator::default().sequential();
    let polys: Vec<(String, Polynomial)> = graphs
        .par_iter()
        .map(|g| Ok((g.to_graph6(), en.enumerate(g)?.polynomial())))
        .collect::<Result<_, OracleError>>()?;
    let mut groups: BTreeMap<Vec<num_bigint::BigUint>, (Polynomial, Vec<String>)> = BTreeMap::new();
    for (id, poly) in polys {
        groups.entry(poly.coeffs().to_vec()).or_insert_with(|| (poly, Vec::new())).1.push(id);
    }
    let distinct_polynomials = groups.len();
    let collisions = groups.into_values().filter(|(_, ids)| ids.len() > 1).collect();
    Ok(InvariantReport { p, triangle_free, graphs: graphs.len(), distinct_polynomials, collisions })
}
