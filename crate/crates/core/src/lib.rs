//! Homology of skeleta attached to reflexive, facet-simplicial lattice
//! polytopes.
//!
//! A polytope is cut into its faces; each face `F` carries a finite group
//! of components times a torus, and inclusions of faces give attaching
//! maps. From these the crate builds a bigraded chain complex whose
//! homology (the E² page) is reported over ℚ or ℤ.
//!
//! ```
//! use skeleta::{homology::{build_complex, homology_q}, polytope::LatticePolytope};
//!
//! let p = LatticePolytope::new(vec![vec![2, -1], vec![-1, 2], vec![-1, -1]]).unwrap();
//! let report = homology_q(&build_complex(&p).unwrap()).unwrap();
//! assert_eq!(report.betti, Some(vec![1, 10]));
//! ```

pub mod cli;
pub mod error;
pub mod exactla;
pub mod homology;
pub mod oracles;
pub mod polytope;
pub mod skeleton;

pub use error::{Error, Result};
pub use homology::{build_complex, homology_q, homology_z, HomologyReport, Ring};
pub use polytope::{enumerate_faces, polar_dual, LatticePolytope};
pub use skeleton::Skeleton;
