//! Ext groups between simple outer functors αS_ν, αS_λ.
//!
//! Everything here runs on two tables: multiplicities (input) and Ext
//! dimensions (output). Off-row groups Ext^k with 2 ≤ k < |λ| − |ν| are
//! never computed; a concentrated [`ExtTable`] reads them as zero, and every
//! result built on that reading is conditional on it.

mod a2;
mod complex;
mod ext2;
mod invert;
mod recursion;
mod support;
mod table;

pub use a2::{expected_ext0, expected_ext1, verify_a2_vanishing, A2Check, A2Outcome, A2Report, Obligation};
pub use complex::{
    blame_set, build_row_complex, forced_top, solve_acyclic, ContradictionReport, RowComplex, Solution, Term, TermInput,
};
pub use ext2::{assemble_equivariant, compute_ext2_table, diagonal_birep, ext1_from_mult, Ext2};
pub use invert::{compare_tables, invert_for_multiplicities};
pub use recursion::{require_coverage, run_koszul_recursion, Mode, RecursionOutcome};
pub use support::{e1_support, CellKind, E1Support};
pub use table::{
    forced_value, load_ext_file, parse_ext_text, Derivation, ExtEntry, ExtKey, ExtLookup, ExtStatus, ExtTable,
};
