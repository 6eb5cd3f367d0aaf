//! Integer-decorated chord diagrams and their rotation-canonical encoding.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::error::DiagramError;

/// Chords on a counterclockwise-oriented circle with `2m` endpoint
/// positions. Each position knows its partner and the decoration of its
/// chord.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ChordRepr", into = "ChordRepr")]
pub struct DecoratedChordDiagram {
    partner: Vec<usize>,
    decoration: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct ChordRepr {
    chords: Vec<(usize, usize, i64)>,
}

impl TryFrom<ChordRepr> for DecoratedChordDiagram {
    type Error = DiagramError;

    fn try_from(r: ChordRepr) -> Result<Self, DiagramError> {
        DecoratedChordDiagram::from_chords(2 * r.chords.len(), &r.chords)
    }
}

impl From<DecoratedChordDiagram> for ChordRepr {
    fn from(c: DecoratedChordDiagram) -> ChordRepr {
        ChordRepr { chords: c.chords() }
    }
}

impl DecoratedChordDiagram {
    pub fn empty() -> DecoratedChordDiagram {
        DecoratedChordDiagram { partner: Vec::new(), decoration: Vec::new() }
    }

    pub fn from_chords(
        positions: usize,
        chords: &[(usize, usize, i64)],
    ) -> Result<DecoratedChordDiagram, DiagramError> {
        let mut partner = vec![usize::MAX; positions];
        let mut decoration = vec![0; positions];
        for &(a, b, d) in chords {
            if a >= positions || b >= positions || a == b {
                return Err(DiagramError::Matching(format!("bad chord ({a}, {b})")));
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(DiagramError::Matching(format!("position reused by chord ({a}, {b})")));
            }
            partner[a] = b;
            partner[b] = a;
            decoration[a] = d;
            decoration[b] = d;
        }
        if let Some(p) = partner.iter().position(|&q| q == usize::MAX) {
            return Err(DiagramError::Matching(format!("position {p} has no chord")));
        }
        Ok(DecoratedChordDiagram { partner, decoration })
    }

    pub fn positions(&self) -> usize {
        self.partner.len()
    }

    pub fn chord_count(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    pub fn decoration(&self, p: usize) -> i64 {
        self.decoration[p]
    }

    /// Chords as `(a, b, decoration)` with `a < b`, sorted by `a`.
    pub fn chords(&self) -> Vec<(usize, usize, i64)> {
        (0..self.partner.len())
            .filter(|&p| p < self.partner[p])
            .map(|p| (p, self.partner[p], self.decoration[p]))
            .collect()
    }

    /// Whether the chords through positions `p` and `q` cross.
    pub fn interleaved(&self, p: usize, q: usize) -> bool {
        let (a, b) = ordered(p, self.partner[p]);
        let inside = |x: usize| a < x && x < b;
        let (c, d) = (q, self.partner[q]);
        inside(c) != inside(d)
    }

    /// Number of chords crossing the chord through `p`.
    pub fn crossings_of(&self, p: usize) -> usize {
        let (a, b) = ordered(p, self.partner[p]);
        (a + 1..b).filter(|&x| !(a < self.partner[x] && self.partner[x] < b)).count()
    }

    /// True iff every chord crosses an even number of chords, a necessary
    /// condition for coming from a classical (planar) diagram.
    pub fn evenness_check(&self) -> bool {
        (0..self.partner.len()).all(|p| self.crossings_of(p).is_multiple_of(2))
    }

    /// Same diagram with every position shifted forward by `k`.
    pub fn rotate(&self, k: usize) -> DecoratedChordDiagram {
        let n = self.partner.len();
        if n == 0 {
            return self.clone();
        }
        let mut partner = vec![0; n];
        let mut decoration = vec![0; n];
        for p in 0..n {
            partner[(p + k) % n] = (self.partner[p] + k) % n;
            decoration[(p + k) % n] = self.decoration[p];
        }
        DecoratedChordDiagram { partner, decoration }
    }

    /// Mirror image: the circle read clockwise.
    pub fn reflect(&self) -> DecoratedChordDiagram {
        let n = self.partner.len();
        let flip = |p: usize| (n - p) % n;
        let mut partner = vec![0; n];
        let mut decoration = vec![0; n];
        for p in 0..n {
            partner[flip(p)] = flip(self.partner[p]);
            decoration[flip(p)] = self.decoration[p];
        }
        DecoratedChordDiagram { partner, decoration }
    }

    /// Per-position `(counterclockwise offset to partner, decoration)`.
    fn offset_sequence(&self) -> Vec<(usize, i64)> {
        let n = self.partner.len();
        (0..n).map(|p| ((self.partner[p] + n - p) % n, self.decoration[p])).collect()
    }

    /// Least rotation of the offset sequence, encoded as bytes. Equal iff the
    /// diagrams agree up to rotation. Reflections are not identified.
    pub fn canonical_form(&self) -> CanonicalForm {
        let seq = self.offset_sequence();
        let start = least_rotation(&seq);
        let n = seq.len();
        let mut bytes = Vec::with_capacity(4 + 12 * n);
        bytes.extend_from_slice(&(self.chord_count() as u32).to_be_bytes());
        for i in 0..n {
            let (off, dec) = seq[(start + i) % n];
            bytes.extend_from_slice(&(off as u32).to_be_bytes());
            bytes.extend_from_slice(&dec.to_be_bytes());
        }
        CanonicalForm(bytes)
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Start index of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &s[i % n];
    let mut failure: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let mut i = failure[j - k - 1];
        while i != -1 && at(j) != at(k + i as usize + 1) {
            if at(j) < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = failure[i as usize];
        }
        if i == -1 && at(j) != at(k) {
            if at(j) < at(k) {
                k = j;
            }
            failure[j - k] = -1;
        } else {
            failure[j - k] = i + 1;
        }
    }
    k % n
}

/// Rotation-invariant byte encoding of a decorated chord diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_least_rotation<T: Ord + Clone>(s: &[T]) -> Vec<T> {
        let n = s.len();
        (0..n.max(1)).map(|r| (0..n).map(|i| s[(i + r) % n].clone()).collect::<Vec<_>>()).min().unwrap()
    }

    #[test]
    fn booth_matches_brute_force() {
        let cases: Vec<Vec<u8>> = vec![
            vec![],
            vec![1],
            vec![2, 1, 2, 1],
            vec![3, 3, 1, 3, 3, 1, 3],
            vec![0, 0, 0],
            vec![5, 1, 4, 1, 4, 1, 3],
            b"bbaabaabaab".to_vec(),
        ];
        for s in cases {
            let k = least_rotation(&s);
            let got: Vec<u8> = (0..s.len()).map(|i| s[(i + k) % s.len()]).collect();
            assert_eq!(got, brute_least_rotation(&s), "{s:?}");
        }
    }

    #[test]
    fn rotation_invariance() {
        let c = DecoratedChordDiagram::from_chords(6, &[(0, 3, 0), (1, 4, 0), (2, 5, 0)]).unwrap();
        for k in 0..6 {
            assert_eq!(c.rotate(k).canonical_form(), c.canonical_form());
        }
    }

    #[test]
    fn crossing_vs_nested() {
        let crossing = DecoratedChordDiagram::from_chords(4, &[(0, 2, 0), (1, 3, 0)]).unwrap();
        let nested = DecoratedChordDiagram::from_chords(4, &[(0, 3, 0), (1, 2, 0)]).unwrap();
        assert_ne!(crossing.canonical_form(), nested.canonical_form());
        assert!(!crossing.evenness_check());
        assert!(nested.evenness_check());
    }

    #[test]
    fn decorations_matter() {
        let a = DecoratedChordDiagram::from_chords(6, &[(0, 2, 1), (1, 3, 0), (4, 5, 0)]).unwrap();
        let b = DecoratedChordDiagram::from_chords(6, &[(0, 2, 0), (1, 3, 1), (4, 5, 0)]).unwrap();
        assert_ne!(a.canonical_form(), b.canonical_form());
        // Two parallel chords: swapping decorations is a half turn.
        let c = DecoratedChordDiagram::from_chords(4, &[(0, 3, 1), (1, 2, 0)]).unwrap();
        let d = DecoratedChordDiagram::from_chords(4, &[(0, 3, 0), (1, 2, 1)]).unwrap();
        assert_eq!(c.canonical_form(), d.canonical_form());
    }

    #[test]
    fn reflection_is_an_involution() {
        let c = DecoratedChordDiagram::from_chords(6, &[(0, 2, 1), (1, 4, -2), (3, 5, 0)]).unwrap();
        assert_eq!(c.reflect().reflect(), c);
        assert_eq!(c.reflect().chord_count(), 3);
    }

    #[test]
    fn empty_diagram() {
        let e = DecoratedChordDiagram::empty();
        assert_eq!(e.canonical_form().to_hex(), "00000000");
        assert!(e.evenness_check());
    }

    #[test]
    fn matching_is_validated() {
        assert!(DecoratedChordDiagram::from_chords(4, &[(0, 1, 0)]).is_err());
        assert!(DecoratedChordDiagram::from_chords(4, &[(0, 1, 0), (1, 2, 0)]).is_err());
        assert!(DecoratedChordDiagram::from_chords(2, &[(0, 0, 0)]).is_err());
    }

    #[test]
    fn trefoil_chords_each_meet_two() {
        let c = DecoratedChordDiagram::from_chords(6, &[(0, 3, 0), (1, 4, 0), (2, 5, 0)]).unwrap();
        assert!((0..6).all(|p| c.crossings_of(p) == 2));
        assert!(c.evenness_check());
    }
}
