//! Exact computer algebra for matrix factorizations and Cohen-Macaulay
//! modules over hypersurface surface singularities.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`]: exact arithmetic and linear algebra,
//! * [`mf`]: matrix factorizations and their elementary operations,
//! * [`catalog`]: explicit families of factorizations,
//! * [`normal_form`]: canonical forms of gluing matrices over A∞ and D∞,
//! * [`ext`]: stable Hom and Ext dimensions,
//! * [`resolution`]: dual graphs, fundamental cycles, presentations,
//! * [`groups`]: finite subgroups of GL₂ over cyclotomic fields,
//! * [`formats`] and [`singular`]: file formats and script export.

pub mod arith;
pub mod catalog;
pub mod ext;
pub mod formats;
pub mod groups;
pub mod mf;
pub mod normal_form;
pub mod resolution;
pub mod singular;
