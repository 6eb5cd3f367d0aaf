//! Inputs shared by the benchmarks in `benches/`.

use pseudoknot::diagram::build::four_plat;
use pseudoknot::moves::{p1, scramble, scramble_bases};
use pseudoknot::{PseudoGaussDiagram, PseudoPD, ResolvedPD};

/// Alternating 4-plat with the given twist regions.
pub fn alternating(terms: &[u32]) -> ResolvedPD {
    ResolvedPD::try_from(four_plat(terms, false).expect("4-plat closes to a knot")).expect("no precrossings")
}

pub fn smallest_shadow() -> PseudoPD {
    p1()
}

/// A base pseudoknot after `steps` seeded moves.
pub fn scrambled(steps: usize) -> PseudoGaussDiagram {
    scramble(&scramble_bases(1, 1)[0], 42, steps)
}
