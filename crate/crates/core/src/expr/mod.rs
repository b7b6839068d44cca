//! The map expression grammar and canonical printing.
//!
//! ```text
//! expr  = term (("+" | "-") term)*
//! term  = unary (("*" | "/") unary)*
//! unary = "-" unary | power
//! power = atom ("^" INT)?
//! atom  = INT | "z" | "T" | "(" expr ")"
//! ```
//!
//! Whitespace is ignored. Literals are reduced into the chosen base field.

mod parse;
mod print;

pub use parse::{
    parse_class, parse_field, parse_map, parse_mobius, parse_point, parse_poly, parse_rational, parse_residue,
    parse_residue_poly, parse_scalar, MAX_DEGREE, MAX_EXPONENT, MAX_INPUT_LEN, MAX_NESTING,
};
pub use print::{format_fraction, format_kpoly, format_residue_fraction, format_residue_poly, format_valued};
