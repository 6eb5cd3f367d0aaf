//! Invariants of pseudoknots.
//!
//! * [`diagram`]: PD codes, Gauss diagrams, chord diagrams.
//! * [`invariant`]: the decorated chord diagram invariant of a Gauss diagram.
//! * [`bracket`]: Kauffman bracket, Jones polynomial and the knot table.
//! * [`wereset`]: the signed weighted resolution set.
//! * [`moves`]: Reidemeister-type rewrites, shadow flypes and generators.

pub mod bracket;
pub mod diagram;
pub mod invariant;
pub mod moves;
pub mod wereset;

pub use bracket::{jones, kauffman_bracket, Classification, KnotName, KnotTable, LaurentPolynomial};
pub use diagram::{
    parse_gauss, parse_pd, CanonicalForm, DecoratedChordDiagram, DiagramError, PseudoGaussDiagram, PseudoPD,
    ResolvedPD, Sign,
};
pub use invariant::{compute_i, i_equal};
pub use wereset::{wereset, wereset_equal, WereSet};
