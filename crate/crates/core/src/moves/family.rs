//! Named counterexample pairs and random corpora.
//!
//! The smallest pair comes from the shadow of the 4-plat `2 1 1 1 2`, which
//! resolves to 7_7 when made alternating. The precrossing right after the
//! first twist region is flyped across the tangle formed by the middle three
//! twist regions and the last one. Widening the outer twist regions to `m`
//! and `n` crossings gives the infinite family.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::build::{braid_closure, four_plat, Cross};
use crate::diagram::{DiagramError, PseudoGaussDiagram, PseudoPD};

use super::flype::{find_flype_sites, shadow_flype_pd, FlypeError, FlypeSite};
use super::gauss_moves::{enumerate_sites, MoveKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("m and n must be even and at least 2, got m = {m}, n = {n}")]
    Parity { m: u32, n: u32 },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Flype(#[from] FlypeError),
}

/// A pair of shadows related by one shadow flype.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlypePair {
    pub first: PseudoPD,
    pub second: PseudoPD,
    pub site: FlypeSite,
}

fn family_site(m: u32, n: u32) -> FlypeSite {
    FlypeSite { crossing: m + 1, slot: 1, tangle: (m + 2..=m + 3 + n).collect() }
}

/// Member `(m, n)` of the infinite family; `(2, 2)` is the smallest pair.
pub fn family(m: u32, n: u32) -> Result<FlypePair, FamilyError> {
    if m < 2 || n < 2 || m % 2 == 1 || n % 2 == 1 {
        return Err(FamilyError::Parity { m, n });
    }
    let first = four_plat(&[m, 1, 1, 1, n], true)?;
    let site = family_site(m, n);
    let second = shadow_flype_pd(&first, &site)?;
    Ok(FlypePair { first, second, site })
}

/// The seven-precrossing shadow of the smallest pair.
pub fn p1() -> PseudoPD {
    four_plat(&[2, 1, 1, 1, 2], true).expect("fixed 4-plat is a knot")
}

/// The flype site relating [`p1`] to [`p2`].
pub fn p1_flype_site() -> FlypeSite {
    family_site(2, 2)
}

/// The flype of [`p1`] with the same were-set and a different invariant.
pub fn p2() -> PseudoPD {
    shadow_flype_pd(&p1(), &p1_flype_site()).expect("fixed site is valid")
}

/// Random shadow with at most `max_precrossings` precrossings and at least
/// one flype site: a 4-plat with random twist regions or a three-strand
/// braid closure.
pub fn random_shadow_with_sites<R: Rng>(rng: &mut R, max_precrossings: usize) -> (PseudoPD, Vec<FlypeSite>) {
    assert!(max_precrossings >= 3, "no shadow with a flype site has fewer than 3 precrossings");
    loop {
        let d = if rng.gen_bool(0.5) {
            let len = [1usize, 3, 5][rng.gen_range(0..3)];
            let terms: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=3)).collect();
            four_plat(&terms, true)
        } else {
            let len = rng.gen_range(3..=max_precrossings);
            let word: Vec<(usize, Cross)> = (0..len).map(|_| (rng.gen_range(0..2), Cross::Pre)).collect();
            braid_closure(3, &word)
        };
        let Ok(d) = d else { continue };
        if d.precrossing_count() > max_precrossings {
            continue;
        }
        match find_flype_sites(&d) {
            Ok(sites) if !sites.is_empty() => return (d, sites),
            _ => continue,
        }
    }
}

/// `count` base pseudoknots for move scrambling, deterministic in `seed`.
/// Each is a three-strand braid closure mixing classical crossings and
/// precrossings that already has a triangle or bigon move site.
pub fn scramble_bases(count: usize, seed: u64) -> Vec<PseudoGaussDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        // A closure on three strands is a knot only for even word length.
        let len = 2 * rng.gen_range(2..=4);
        let word: Vec<(usize, Cross)> = (0..len)
            .map(|_| {
                let c = [Cross::Positive, Cross::Negative, Cross::Pre][rng.gen_range(0..3)];
                (rng.gen_range(0..2), c)
            })
            .collect();
        let Ok(d) = braid_closure(3, &word) else { continue };
        let g = d.to_gauss();
        let rich = enumerate_sites(&g).iter().any(|s| matches!(s.kind(), MoveKind::R3 | MoveKind::PR2 | MoveKind::PR3));
        if d.precrossing_count() > 0 && rich && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}
