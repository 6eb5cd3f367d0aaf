//! Laurent polynomials, the Kauffman bracket, the Jones polynomial and the
//! knot table used to name resolutions.

pub mod poly;
pub mod state_sum;
pub mod table;

pub use poly::LaurentPolynomial;
pub use state_sum::{jones, jones_from_bracket, kauffman_bracket, loop_value, BracketError};
pub use table::{standard_sources, Classification, KnotName, KnotTable, TableEntry, TableError, CONWAY_NOTATIONS};
