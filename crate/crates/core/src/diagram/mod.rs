//! Pseudodiagrams, Gauss diagrams and decorated chord diagrams.

pub mod build;
pub mod chord;
pub mod error;
pub mod gauss;
pub mod pd;
pub mod sign;

pub use chord::{CanonicalForm, DecoratedChordDiagram};
pub use error::DiagramError;
pub use gauss::{parse_gauss, End, PseudoGaussDiagram, Role, Token};
pub use pd::{parse_pd, Passage, PseudoPD, ResolvedPD, Vertex, VertexKind};
pub use sign::Sign;
