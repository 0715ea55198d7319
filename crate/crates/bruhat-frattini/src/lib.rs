//! Local Bruhat–Tits combinatorics of quasi-split simply connected groups
//! over local fields of odd residue characteristic: root systems and their
//! δ-scaled duals, sets of values of root groups, the fundamental alcove,
//! Frattini level data of a pro-p Sylow subgroup and the minimal number of
//! topological generators `d(P)`.  The rank-one commutator identities these
//! rest on are checked by exact truncated Laurent-series arithmetic in
//! [`matrix_verify`].

pub mod apartment;
pub mod cli;
pub mod error;
pub mod frac;
pub mod frattini;
pub mod local_field;
pub mod matrix_verify;
pub mod root_system;
pub mod valued_datum;

pub use error::{Error, Result};
pub use frac::Q;
