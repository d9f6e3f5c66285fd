//! Exact, exhaustively verified computations with finite commutative rings,
//! finite categories, and the reconstruction pipelines built on top of them.
//!
//! The crate is organized around a handful of engines:
//!
//! * [`ring`] — finite commutative unital rings given by explicit operation
//!   tables: construction, homomorphism search, ideals and quotients, tensor
//!   and fiber products, and enumeration up to isomorphism.
//! * [`cat`] — a generic finite-category engine: categorical predicates
//!   decided by exhaustive search, limits and colimits certified against
//!   their universal properties, functors and natural transformations.
//! * [`algcat`] — truncated categories of algebras over a finite base ring
//!   and their affine opposites, where points of a spectrum can be read off
//!   as simple subobjects.
//! * [`cogroup`] — group objects among augmented algebras, their
//!   classification by square-zero extensions, and the equivalence with the
//!   module category.
//! * [`endo`] — the ring of natural endomorphism families acting on module
//!   parts over a base, together with its identification with the base ring.
//! * [`recon`] — end-to-end recovery of a base ring from an abstract
//!   category, and certification that category equivalences come from unique
//!   ring isomorphisms.
//! * [`top`] — finite topological spaces and the Sierpiński-space
//!   reconstruction of the topology functor.
//!
//! All values are immutable after construction and all operations are pure,
//! so independent searches run in parallel when the `parallel` feature
//! (enabled by default) is active. Disabling it yields a dependency-free
//! sequential build with identical results.

pub mod algcat;
pub mod cat;
pub mod cogroup;
pub mod endo;
pub mod error;
pub mod io;
pub mod module;
pub mod par;
pub mod recon;
pub mod ring;
pub mod snf;
pub mod top;

pub use error::{Error, Falsification};
pub use ring::{FinRing, Ideal, RingHom};
