//! SU(2) spin networks on trivalent graphs, computed three ways.
//!
//! A spin network is a trivalent multigraph whose edges carry nonnegative
//! integer *colors* (twice the spin of an irreducible SU(2) representation)
//! and whose vertices satisfy the Clebsch-Gordan admissibility conditions.
//! This crate realizes the three standard pictures of such an object:
//!
//! * **Combinatorial** ([`topology`], [`coloring`]): trivalent graphs with
//!   loops and open ends, graph surgeries (doubling, connected sum,
//!   multivalent reduction, vertex excision), admissible colorings, level-k
//!   enumeration, and the closed-form Verlinde count the enumeration must
//!   reproduce.
//! * **Analytic** ([`su2rep`]): spin-network states as functions on
//!   `SU(2)^E`, built from irreducible representation matrices and Wigner
//!   intertwiner tensors, with vertex gauge invariance and Monte Carlo
//!   Peter-Weyl orthogonality checks.
//! * **Geometric** ([`moduli`], [`abelian`]): moment-map coordinates on the
//!   moduli of flat connections, the moment polytope, Bohr-Sommerfeld point
//!   enumeration, fiber/stabilizer classification, the unitary Schottky
//!   chart, and the full U(1) analogue where every count collapses to `k^g`.
//!
//! The built-in [`corpus`] supplies the reference graphs (theta, dumbbell,
//! and two genus-3 graphs) used throughout the test suites and by the
//! `spinnet` command-line tool.


pub mod abelian;
pub mod coloring;
pub mod su2rep;
pub mod corpus;
pub mod moduli;


pub mod topology;


pub use topology::{EdgeId, Graph, Marking, Orientation, VertexId};
pub use coloring::{Coloring, SpinNetwork};
