//! Exact computations around a non-split extension of modules for finite
//! subgroups of `SL_n` in positive characteristic.
//!
//! Layers, bottom up: finite fields ([`gf`]), dense linear algebra
//! ([`linalg`]), polynomials ([`poly`]), matrix groups ([`grp`]), modules
//! ([`rep`]), first cohomology ([`coh`]) and the construction pipeline
//! ([`build`]). [`report`] serializes a pipeline run and [`verify`] re-checks
//! a report using only the field and matrix layers.

pub mod build;
pub mod coh;
pub mod error;
pub mod gf;
pub mod grp;
pub mod job;
pub mod linalg;
pub mod poly;
pub mod rep;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{Field, FieldElement, FieldSpec};
pub use grp::MatrixGroup;
pub use job::{GroupRecipe, JobSpec};
pub use linalg::Matrix;
pub use rep::GModule;
pub use report::Report;
