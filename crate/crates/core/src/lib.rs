//! Exact scalar computations for simple-current extensions of vertex operator
//! algebras beyond the semi-simple setting.
//!
//! Everything here is bookkeeping with exact rational numbers and roots of
//! unity: no floating point appears anywhere. The crate models the scalar
//! shadow of a braided tensor category — conformal weights, twists, quantum
//! dimensions, braiding signs and monodromy phases — which is enough to
//! answer two questions by pure arithmetic:
//!
//! * Is the extension `V ⊕ J ⊕ J² ⊕ …` along a simple current `J` a vertex
//!   operator algebra or a superalgebra, and with which grading?
//!   (See [`extension`].)
//! * Which modules lift to the extension, and what do the induced modules
//!   look like? A module lifts precisely when its monodromy phase
//!   `h_{J⊠X} − h_J − h_X` is an integer. (See [`lifting`].)
//!
//! The [`library`] module provides the standard building blocks (triplet
//! algebras, Virasoro minimal models, affine sl₂, rank-one lattices) and the
//! composite families built from them, together with the published lift
//! lists so that derived and published data can be compared. The
//! [`cocycle`] module is a small lab for normalized abelian 3-cocycles on
//! finite abelian groups, the skeletal datum behind the extension theorems.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the companion `sce`
//! crate carries IO, the JSON schemas and the command line interface.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod cocycle;
pub mod extension;
pub mod library;
pub mod lifting;
pub mod model;
pub mod phase;
pub mod rational;
pub mod validate;

pub use extension::{ExtensionReport, ParityClass};
pub use model::{FusionModel, IndecomposableModule, LoewyDiagram, SimpleCurrent};
pub use phase::{Phase, Sign};
pub use rational::Rational;
