//! Exact combinatorial models of the pair-of-pants and its phase tropical
//! counterpart: the label poset of pairs (cyclic partition, support set),
//! chord nets and alcoves on the argument torus, exact polygon points,
//! coherent subdivisions with dual tropical hypersurfaces, and finite
//! abelian covers glued over a triangulated Newton polytope.
//!
//! All arithmetic is exact: angles are rational multiples of pi, moduli and
//! polygon edges are rational, lattice data is integral. No floating point
//! enters any predicate.

pub mod qnum;
pub mod subset;
pub mod linalg;
pub mod intmat;
pub mod polyhedra;

pub mod poset;
pub mod simplicial;
pub mod cyclic;
pub mod nets;
pub mod coamoeba;
pub mod pants;
pub mod tropical;
pub mod phasetrop;
pub mod assembly;
pub mod export;
pub mod verify;

pub use qnum::Q;
pub use subset::Mask;
