//! Rank invariant and line-fibered persistence diagrams of one-critical
//! multi-parameter filtrations, computed from the critical values of a
//! consistent discrete gradient vector field.
//!
//! The pipeline:
//!
//! 1. [`OneCriticalFiltration`] holds a simplicial complex with a monotone
//!    grade function (parsed from `.ocf` text).
//! 2. [`dgvf::build_consistent_dgvf`] pairs simplices of equal grade; the
//!    unpaired (critical) cells give the critical values `C`.
//! 3. [`MorseRank`] closes `C` under least upper bounds and evaluates the rank
//!    invariant only at closure values.
//! 4. [`fiber::fiber_diagram`] turns ranks at the critical values pushed onto a
//!    positive-slope [`Line`] into that line's persistence diagram, and
//!    [`fiber::transfer`] moves diagrams between equivalent lines.
//! 5. [`QueryCache`] answers arbitrary line queries by transfer from one
//!    representative per equivalence class; [`service`] exposes it over HTTP.
//!
//! [`homology`] computes everything again by plain linear algebra and is used
//! to check the fast paths.
//!
//! ```
//! use std::collections::BTreeSet;
//! use mpfiber::{dgvf, fiber, fixtures, homology, MorseRank};
//!
//! let f = fixtures::f1();
//! let v = dgvf::build_consistent_dgvf(&f);
//! let engine = MorseRank::new(f, v).unwrap();
//! let line = fixtures::f1_line();
//! let degrees = BTreeSet::from([0]);
//! let dgm = fiber::fiber_diagram(&engine, &line, &degrees).unwrap();
//! let oracle = homology::line_persistence_reduction(engine.filtration(), &line, &degrees).unwrap();
//! assert_eq!(dgm, oracle);
//! ```

pub mod cache;
pub mod cli;
pub mod dgvf;
pub mod diagram;
pub mod error;
pub mod fiber;
pub mod filtration;
pub mod fixtures;
pub mod grade;
pub mod homology;
pub mod json;
pub mod line;
pub mod random;
pub mod rank;
pub mod service;
pub mod simplex;

pub use cache::QueryCache;
pub use dgvf::GradientVectorField;
pub use diagram::{Death, DiagramPoint, FiberDiagram};
pub use error::{Error, Result};
pub use filtration::{Complex, OneCriticalFiltration};
pub use grade::Grade;
pub use line::Line;
pub use rank::MorseRank;
pub use simplex::Simplex;
