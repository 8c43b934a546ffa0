//! The formula language over `a||b`, its proof system and the validity
//! decision procedure.

mod formula;
mod parser;
mod proof;
mod semantics;

pub use formula::Formula;
pub use parser::{parse_formula, tokenize, Token};
pub use proof::{abs_value_script, check_proof, is_tautology, Justification, ProofLine, ProofScript};
pub use semantics::{decide, eval_formula, Assignment, Verdict};
