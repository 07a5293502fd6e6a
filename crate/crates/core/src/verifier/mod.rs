//! Brute-force verification of explicit codes.
//!
//! A set `S` of `s` columns is `s_L`-bad when the Boolean sum of its columns
//! covers at least `L` columns outside `S`. Any `L` covered columns serve as
//! the witness `Λ`, so testing a subset is a single pass over the other
//! columns. Subsets are enumerated in lexicographic order of their sorted
//! (zero-based) indices.

mod bad;
mod code;
mod format;

pub use bad::{
    bad_subset_witness, count_bad, count_bad_sampled, count_bad_with_budget, is_bad_subset, is_ld_code, n_choose_k,
    BadCountReport, BadWitness, DEFAULT_SUBSET_BUDGET,
};
pub use code::{covers, BinaryCode, CodeFile, Column};
pub use format::{parse_code, parse_code_json, parse_code_text, write_code_json, write_code_text};
