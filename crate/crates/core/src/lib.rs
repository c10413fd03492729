//! Partial monoids and partial rings over finite carriers.
//!
//! The crate covers the additive theory (validation, homomorphisms,
//! products, Hom-objects, quotients by additive relations, associative
//! closure, tensor products, congruences), the commutative algebra of
//! partial rings (ideals, primes, radicals, localization), prime spectra
//! with their structure sheaf, finitely presented partial rings evaluated
//! through a homomorphism solver, the point groups of `G_a`, `G_m`, `GL_n`,
//! and point counts of projective space over finite partial fields.

pub mod builtins;
pub mod closure;
pub mod congruence;
pub mod corpus;
pub mod doc;
pub mod error;
pub mod groups;
pub mod ideal;
pub mod localize;
pub mod matrix;
pub mod morphism;
pub mod poly;
pub mod presentation;
pub mod projective;
pub mod relation;
pub mod sheaf;
pub mod spectrum;
pub mod structure;
pub mod tensor;
pub mod words;

/// Index of an element in a carrier. Names live in the owning structure.
pub type Elem = usize;

pub use error::{Error, Result, StructureError};
pub use morphism::{HomKind, Homomorphism};
pub use structure::{Level, PartialMagma, PartialRing, ValidationReport};

/// Caps shared by the constructions that can blow up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Elements a saturation (associative closure, tensor) may create.
    pub max_elems: usize,
    /// Words a single word-problem search may visit.
    pub max_states: usize,
    /// Search nodes the presentation solver may visit.
    pub max_solver_nodes: u64,
    /// Upper bound on `|B|^|A|` for exhaustive map searches.
    pub max_maps: u128,
    /// Re-validate derived structures after construction.
    pub revalidate: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_elems: 512,
            max_states: 100_000,
            max_solver_nodes: 200_000_000,
            max_maps: morphism::DEFAULT_MAP_LIMIT,
            revalidate: cfg!(debug_assertions),
        }
    }
}
