//! Markov equivalence classes on small skeleta: exhaustive enumeration, closed forms
//! for structured families, tree size bounds and graph-generation utilities.

pub mod bounds;
pub mod combi;
pub mod error;
pub mod families;
pub mod graph;
pub mod graphgen;
pub mod oracle;
pub mod poly;
pub mod survey;
pub mod verify;

pub use error::{BoundsError, FamilyError, GenError, GraphError, OracleError, PolyError};
pub use families::FamilySpec;
pub use graph::{Clustering, UndirectedGraph};
pub use oracle::{enumerate_mecs, Dag, EdgeStatus, Enumerator, EssentialGraph, Immorality, Mec, MecSet};
pub use poly::{Polynomial, SizeSpectrum};
