//! Flypes seen on chord diagrams.
//!
//! A flype leaves the tangle's chords in place and moves each endpoint of
//! the flype chord `c` across the arc of the circle that runs through the
//! tangle next to it. With `A` the arc next to one endpoint and `B` the arc
//! next to the other:
//!
//! ```text
//! Type I :  c A .. c B   ->   A c .. B c
//! Type II:  c A .. B c   ->   A c .. c B
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DecoratedChordDiagram, PseudoPD};

use super::flype::{check_site, FlypeError, FlypeSite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlypeType {
    I,
    II,
}

/// Flype chord and arc lengths. `A` follows `end` counterclockwise when
/// `forward` is set and precedes it otherwise; the variant places `B` on the
/// same (Type I) or the opposite (Type II) side of the partner endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChordFlypeSite {
    pub end: usize,
    pub arc: usize,
    pub partner_arc: usize,
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordFlypeError {
    #[error("position {0} is out of range")]
    Position(usize),
    #[error("the two arcs overlap each other or the flype chord")]
    Overlap,
    #[error("chord at position {0} leaves the flype region")]
    Open(usize),
}

fn arc_positions(n: usize, from: usize, len: usize, forward: bool) -> Vec<usize> {
    (1..=len).map(|k| if forward { (from + k) % n } else { (from + n - k) % n }).collect()
}

pub fn chord_flype(
    c: &DecoratedChordDiagram,
    site: ChordFlypeSite,
    variant: FlypeType,
) -> Result<DecoratedChordDiagram, ChordFlypeError> {
    let n = c.positions();
    if site.end >= n {
        return Err(ChordFlypeError::Position(site.end));
    }
    let p = site.end;
    let q = c.partner(p);
    let partner_forward = match variant {
        FlypeType::I => site.forward,
        FlypeType::II => !site.forward,
    };
    let a = arc_positions(n, p, site.arc, site.forward);
    let b = arc_positions(n, q, site.partner_arc, partner_forward);
    let region: BTreeSet<usize> = a.iter().chain(&b).copied().collect();
    if region.len() != a.len() + b.len() || region.contains(&p) || region.contains(&q) {
        return Err(ChordFlypeError::Overlap);
    }
    if let Some(&x) = region.iter().find(|&&x| !region.contains(&c.partner(x))) {
        return Err(ChordFlypeError::Open(x));
    }
    // Take each endpoint with a non-empty arc off the circle and put it
    // back just beyond the far end of that arc.
    let mut order: Vec<usize> = (0..n).filter(|&x| !(x == p && !a.is_empty() || x == q && !b.is_empty())).collect();
    for (arc, which, forward) in [(&a, p, site.forward), (&b, q, partner_forward)] {
        if let Some(&far) = arc.last() {
            let at = order.iter().position(|&y| y == far).expect("arc positions stay on the circle");
            order.insert(if forward { at + 1 } else { at }, which);
        }
    }
    let mut new_pos = vec![0; n];
    for (k, &x) in order.iter().enumerate() {
        new_pos[x] = k;
    }
    let chords: Vec<(usize, usize, i64)> =
        c.chords().into_iter().map(|(x, y, d)| (new_pos[x], new_pos[y], d)).collect();
    Ok(DecoratedChordDiagram::from_chords(n, &chords).expect("positions are permuted"))
}

/// The chord-level site corresponding to a planar flype site, in positions
/// of `d.to_gauss()`.
///
/// When the tangle's strand from `c` returns straight to `c`, both endpoints
/// of `c` flank that one arc and neither template applies as stated. On the
/// sphere the flype then agrees with the flype of the complementary tangle,
/// whose arcs are the ones used.
pub fn chord_site_of(d: &PseudoPD, site: &FlypeSite) -> Result<(ChordFlypeSite, FlypeType), FlypeError> {
    check_site(d, site)?;
    let g = d.to_gauss();
    let tokens = g.tokens();
    let n = tokens.len();
    let in_t = |k: usize| site.tangle.contains(&tokens[k % n].id());
    let ends: Vec<usize> = (0..n).filter(|&k| tokens[k].id() == site.crossing).collect();
    let run = |from: usize, forward: bool| -> usize {
        let step = |k: usize| if forward { (from + k) % n } else { (from + n - k) % n };
        (1..n).take_while(|&k| in_t(step(k))).count()
    };
    let (p, q) = (ends[0], ends[1]);
    let (fp, fq) = (in_t(p + 1), in_t(q + 1));
    let (ap, aq) = (run(p, fp), run(q, fq));
    let same_arc = fp && !fq && (p + ap + 1) % n == q || !fp && fq && (q + aq + 1) % n == p;
    if same_arc {
        let complement = FlypeSite {
            crossing: site.crossing,
            slot: (site.slot + 2) % 4,
            tangle: d
                .vertices()
                .iter()
                .map(|v| v.id)
                .filter(|id| *id != site.crossing && !site.tangle.contains(id))
                .collect(),
        };
        if complement.tangle.is_empty() {
            return Err(FlypeError::Site("the flype only moves the crossing along one arc".into()));
        }
        return chord_site_of(d, &complement);
    }
    let variant = if fp == fq { FlypeType::I } else { FlypeType::II };
    Ok((ChordFlypeSite { end: p, arc: ap, partner_arc: aq, forward: fp }, variant))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::four_plat;
    use crate::moves::{find_flype_sites, p1, p1_flype_site, p2, shadow_flype_pd};

    #[test]
    fn empty_arcs_change_nothing() {
        let c = DecoratedChordDiagram::from_chords(6, &[(0, 3, 0), (1, 4, 0), (2, 5, 0)]).unwrap();
        let site = ChordFlypeSite { end: 0, arc: 0, partner_arc: 0, forward: true };
        for t in [FlypeType::I, FlypeType::II] {
            assert_eq!(chord_flype(&c, site, t).unwrap().canonical_form(), c.canonical_form());
        }
    }

    #[test]
    fn single_hops() {
        // c A .. B c with one chord joining A and B.
        let c = DecoratedChordDiagram::from_chords(4, &[(0, 3, 0), (1, 2, 5)]).unwrap();
        let site = ChordFlypeSite { end: 0, arc: 1, partner_arc: 1, forward: true };
        let out = chord_flype(&c, site, FlypeType::II).unwrap();
        assert_eq!(out.chords(), vec![(0, 3, 5), (1, 2, 0)]);
        assert_eq!(chord_flype(&c, site, FlypeType::I), Err(ChordFlypeError::Overlap));
    }

    #[test]
    fn open_region_rejected() {
        let c = DecoratedChordDiagram::from_chords(6, &[(0, 3, 0), (1, 4, 0), (2, 5, 0)]).unwrap();
        let site = ChordFlypeSite { end: 0, arc: 1, partner_arc: 0, forward: true };
        assert_eq!(chord_flype(&c, site, FlypeType::I), Err(ChordFlypeError::Open(1)));
    }

    #[test]
    fn agrees_with_planar_flypes() {
        for terms in [&[2, 1, 1, 1, 2][..], &[3, 1, 2], &[2, 2, 1, 1, 2], &[4, 1, 1, 1, 2]] {
            let d = four_plat(terms, true).unwrap();
            for s in find_flype_sites(&d).unwrap() {
                let (cs, t) = chord_site_of(&d, &s).unwrap();
                let predicted = chord_flype(&d.to_gauss().prechord_diagram(), cs, t).unwrap();
                let actual = shadow_flype_pd(&d, &s).unwrap().to_gauss().prechord_diagram();
                assert_eq!(predicted.canonical_form(), actual.canonical_form(), "{terms:?} {s:?}");
            }
        }
    }

    #[test]
    fn named_pair_is_type_two() {
        let (site, variant) = chord_site_of(&p1(), &p1_flype_site()).unwrap();
        assert_eq!(variant, FlypeType::II);
        let predicted = chord_flype(&p1().to_gauss().prechord_diagram(), site, variant).unwrap();
        assert_eq!(predicted.canonical_form(), p2().to_gauss().prechord_diagram().canonical_form());
    }
}
