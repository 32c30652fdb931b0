//! Finite bounded lattices and idempotent nullnorms on them.
//!
//! The crate builds lattices from Hasse diagrams, materializes the explicit
//! idempotent nullnorm constructions for a zero element `a` with exactly two
//! incomparable elements, decides when such a nullnorm exists, and checks all
//! of it against an exhaustive enumeration of candidate operation tables.
//!
//! ```
//! use latnull_core::{decide_existence, fixtures, load_document, ZeroPoint};
//!
//! let (doc, lattice) = load_document(fixtures::M3).unwrap();
//! let a = ZeroPoint::from_label(&lattice, doc.zero.as_deref().unwrap()).unwrap();
//! let verdict = decide_existence(&lattice, a).unwrap();
//! assert!(verdict.exists);
//! assert_eq!(verdict.holding(), ["iii", "iv"]);
//! ```

pub mod axioms;
pub mod characterization;
pub mod constructions;
pub mod fixtures;
pub mod io;
pub mod lattice;

use thiserror::Error;

pub use axioms::{
    axiom_reports, check_associative, check_commutative, check_idempotent, check_monotone,
    check_zero_element, is_idempotent_nullnorm, Axiom, AxiomReport, OpTable, Witness,
};
pub use characterization::{
    candidate_completions, check_comparable_corollary, check_ia_lemma, check_pro_special,
    classify_uniqueness, decide_existence, enumerate_idempotent_nullnorms,
    enumerate_idempotent_nullnorms_with, CharacterizationError, Condition, Execution,
    ExistenceVerdict, SearchSpace, UniquenessClass, UniquenessKind,
};
pub use constructions::{
    applicable_variants, build_skeleton, construct_variant, fill_variant, ConstructionError,
    IaPair, PairTerms, PartialOpTable, Variant,
};
pub use io::{
    emit_dot, emit_lattice_file, emit_op_table_csv, emit_partial_table_csv, parse_lattice_file,
    parse_op_table_csv, LatticeDocument, ParseError, TableCsvError,
};
pub use lattice::{random_bounded_lattice, CoverSpec, ElementId, Lattice, LatticeError, ZeroPoint};

/// Either stage of reading a `.lat` file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Parses `.lat` text and validates the lattice it describes.
pub fn load_document(text: &str) -> Result<(LatticeDocument, Lattice), LoadError> {
    let doc = parse_lattice_file(text)?;
    let lattice = Lattice::from_covers(&doc.spec)?;
    Ok((doc, lattice))
}
