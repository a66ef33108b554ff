//! Exact Schubert calculus on cominuscule homogeneous varieties `G/P`.
//!
//! Start from [`space_named`] (or [`space`]), which builds the Schubert basis
//! of a catalog entry once per process, then use the free functions of the
//! [`chow`], [`incidence`], [`chains`] and [`bounds`] modules on it.
//!
//! ```
//! use comin_core::{chains, space_named};
//!
//! let gr = space_named("Gr(2,4)").unwrap();
//! assert_eq!(chains::delta_i(&gr, 2).unwrap(), 2u32.into());
//! ```

pub mod bounds;
pub mod catalog;
pub mod chains;
pub mod chow;
pub mod error;
pub mod incidence;
pub mod poset;
pub mod root_data;
pub mod space;

pub use bounds::{char_bound, char_bound_with, BoundComponents, BoundOptions, BoundReport};
pub use catalog::{
    all_spaces, describe, describe_str, vmrt_tower, Family, RootType, SpaceDescriptor, SpaceSpec,
    VmrtDescriptor, VmrtKind,
};
pub use chains::{delta_i, delta_i_naive, extend_chain, multinomial, ChainTensor};
pub use chow::{chevalley_h, degree, lr_coefficients, multiply, ChowElement};
pub use error::{Error, Result};
pub use incidence::{cone_class, incidence_matrix, quantum_chevalley_q_part, IncidenceMatrix};
pub use poset::{minuscule_poset, MinusculePoset, SchubertClass};
pub use root_data::{build_root_system, index_of, pairing, Root, RootSystem, TypeLabel, Weight};
pub use space::{space, space_named, OrbitPoint, Space};
