//! Reidemeister and pseudo-Reidemeister rewrites on Gauss diagrams.
//!
//! Positions are indices into the token sequence; a gap `g` is the slot in
//! front of token `g` (`g == len` is the same slot as `0`). A segment is a
//! pair of cyclically consecutive positions.
//!
//! * R1, PR1: a chord with adjacent endpoints.
//! * R2: two classical chords of opposite sign whose over-passages are
//!   adjacent and whose under-passages are adjacent.
//! * R3, PR3: three strand segments `A = [x, y]`, `B = [x, z]`, `C = [y, z]`
//!   exchange the order of their two passages. Over-passages must not form
//!   a cycle, and classical signs must all follow the same one of the two
//!   braid-like sign patterns (`sign(x) = +` iff `A` is over `B`, and so
//!   on, or all the opposite). For PR3 exactly one of the three crossings is
//!   a precrossing and the strand not passing through it lies over both
//!   other crossings or under both.
//! * PR2: a classical crossing and a precrossing adjacent along both strands
//!   trade places, twisting the rigid vertex; the classical crossing keeps
//!   its sign while its over and under passages swap.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramError, End, PseudoGaussDiagram, Role, Sign, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1,
    R2,
    R3,
    PR1,
    PR2,
    PR3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move")]
pub enum MoveSite {
    R1Insert { gap: usize, sign: Sign, over_first: bool },
    R1Remove { id: u32 },
    R2Insert { over_gap: usize, under_gap: usize, sign: Sign, reversed: bool },
    R2Remove { first: u32, second: u32 },
    R3 { start: usize },
    PR1Insert { gap: usize, head_first: bool },
    PR1Remove { id: u32 },
    PR2 { classical: u32, pre: u32 },
    PR3 { start: usize },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Insert { .. } | MoveSite::R1Remove { .. } => MoveKind::R1,
            MoveSite::R2Insert { .. } | MoveSite::R2Remove { .. } => MoveKind::R2,
            MoveSite::R3 { .. } => MoveKind::R3,
            MoveSite::PR1Insert { .. } | MoveSite::PR1Remove { .. } => MoveKind::PR1,
            MoveSite::PR2 { .. } => MoveKind::PR2,
            MoveSite::PR3 { .. } => MoveKind::PR3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("pattern mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn mismatch<T>(msg: impl Into<String>) -> Result<T, MoveError> {
    Err(MoveError::Mismatch(msg.into()))
}

fn adjacent(n: usize, i: usize, j: usize) -> bool {
    n > 1 && ((i + 1) % n == j || (j + 1) % n == i)
}

fn next_id(g: &PseudoGaussDiagram) -> u32 {
    g.tokens().iter().map(Token::id).max().unwrap_or(0) + 1
}

fn is_over(t: Token) -> bool {
    matches!(t, Token::Classical { role: Role::Over, .. })
}

fn is_positive(t: Token) -> bool {
    t.sign() == Some(Sign::Positive)
}

/// Positions of a triangle site starting at segment `A = [start, start + 1]`.
struct Triangle {
    a: (usize, usize),
    b: (usize, usize),
    c: (usize, usize),
    pres: usize,
}

fn triangle(g: &PseudoGaussDiagram, start: usize) -> Result<Triangle, MoveError> {
    let t = g.tokens();
    let n = t.len();
    if n < 6 || start >= n {
        return mismatch("no room for three segments");
    }
    let pos = g.positions();
    let other = |p: usize| {
        let (i, j) = pos[&t[p].id()];
        if i == p {
            j
        } else {
            i
        }
    };
    let a = (start, (start + 1) % n);
    let (x, y) = (t[a.0].id(), t[a.1].id());
    if x == y {
        return mismatch("segment A passes one crossing twice");
    }
    let b = (other(a.0), (other(a.0) + 1) % n);
    let c = (other(a.1), (other(a.1) + 1) % n);
    let z = t[b.1].id();
    if z == x || z == y || t[c.1].id() != z {
        return mismatch("segments do not close up into a triangle");
    }
    let mut all = [a.0, a.1, b.0, b.1, c.0, c.1];
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return mismatch("segments overlap");
    }
    let pres = [a.0, a.1, b.1].iter().filter(|&&p| t[p].is_pre()).count();
    Ok(Triangle { a, b, c, pres })
}

/// Checks heights, sign pattern and (for one precrossing) extremeness.
fn triangle_valid(g: &PseudoGaussDiagram, tri: &Triangle) -> bool {
    let t = g.tokens();
    let (tx, ty, tz) = (t[tri.a.0], t[tri.a.1], t[tri.b.1]);
    let (a_b, a_c, b_c) = (is_over(tx), is_over(ty), is_over(tz));
    // Sign pattern agreement of each classical crossing.
    let rules: Vec<bool> = [(tx, a_b), (ty, a_c), (tz, b_c)]
        .iter()
        .filter(|(tok, _)| !tok.is_pre())
        .map(|&(tok, over)| is_positive(tok) == over)
        .collect();
    if rules.windows(2).any(|w| w[0] != w[1]) {
        return false;
    }
    match (tx.is_pre(), ty.is_pre(), tz.is_pre()) {
        (false, false, false) => !(a_b && b_c && !a_c) && !(!a_b && !b_c && a_c),
        // The third strand (C, B, A respectively) is over or under both.
        (true, false, false) => a_c == b_c,
        (false, true, false) => a_b != b_c,
        (false, false, true) => a_b == a_c,
        _ => false,
    }
}

/// Finds the two segments joining classical `b` and precrossing `p`.
fn bigon(g: &PseudoGaussDiagram, b: u32, p: u32) -> Result<[(usize, usize); 2], MoveError> {
    let t = g.tokens();
    let n = t.len();
    let pos = g.positions();
    let (Some(&(b1, b2)), Some(&(p1, p2))) = (pos.get(&b), pos.get(&p)) else {
        return mismatch("unknown crossing id");
    };
    if t[b1].is_pre() || !t[p1].is_pre() {
        return mismatch("PR2 needs a classical crossing and a precrossing");
    }
    for (q1, q2) in [(p1, p2), (p2, p1)] {
        if adjacent(n, b1, q1) && adjacent(n, b2, q2) {
            return Ok([(b1, q1), (b2, q2)]);
        }
    }
    mismatch("the crossings do not bound a bigon")
}

pub fn apply_move(g: &PseudoGaussDiagram, site: &MoveSite) -> Result<PseudoGaussDiagram, MoveError> {
    let t = g.tokens();
    let n = t.len();
    let mut out: Vec<Token> = t.to_vec();
    let check_gap = |gap: usize| if gap > n { mismatch(format!("gap {gap} out of range")) } else { Ok(()) };
    match *site {
        MoveSite::R1Insert { gap, sign, over_first } => {
            check_gap(gap)?;
            let id = next_id(g);
            let (r1, r2) = if over_first { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
            out.splice(gap..gap, [Token::Classical { id, role: r1, sign }, Token::Classical { id, role: r2, sign }]);
        }
        MoveSite::PR1Insert { gap, head_first } => {
            check_gap(gap)?;
            let id = next_id(g);
            let (e1, e2) = if head_first { (End::Head, End::Tail) } else { (End::Tail, End::Head) };
            out.splice(gap..gap, [Token::Pre { id, end: e1 }, Token::Pre { id, end: e2 }]);
        }
        MoveSite::R1Remove { id } | MoveSite::PR1Remove { id } => {
            let want_pre = matches!(site, MoveSite::PR1Remove { .. });
            let Some(&(i, j)) = g.positions().get(&id) else {
                return mismatch(format!("no crossing {id}"));
            };
            if t[i].is_pre() != want_pre {
                return mismatch(format!("crossing {id} has the wrong type"));
            }
            if !adjacent(n, i, j) {
                return mismatch(format!("endpoints of {id} are not adjacent"));
            }
            out.retain(|tok| tok.id() != id);
        }
        MoveSite::R2Insert { over_gap, under_gap, sign, reversed } => {
            check_gap(over_gap)?;
            check_gap(under_gap)?;
            let a = next_id(g);
            let b = a + 1;
            let tok = |id, role, sign| Token::Classical { id, role, sign };
            let over = [tok(a, Role::Over, sign), tok(b, Role::Over, sign.flip())];
            let mut under = [tok(a, Role::Under, sign), tok(b, Role::Under, sign.flip())];
            if reversed {
                under.swap(0, 1);
            }
            if over_gap == under_gap {
                out.splice(over_gap..over_gap, over.into_iter().chain(under));
            } else if over_gap > under_gap {
                out.splice(over_gap..over_gap, over);
                out.splice(under_gap..under_gap, under);
            } else {
                out.splice(under_gap..under_gap, under);
                out.splice(over_gap..over_gap, over);
            }
        }
        MoveSite::R2Remove { first, second } => {
            let pos = g.positions();
            let (Some(&(a1, a2)), Some(&(b1, b2))) = (pos.get(&first), pos.get(&second)) else {
                return mismatch("unknown crossing id");
            };
            if first == second || t[a1].is_pre() || t[b1].is_pre() || t[a1].sign() == t[b1].sign() {
                return mismatch("R2 needs two classical crossings of opposite sign");
            }
            let (ao, au) = if is_over(t[a1]) { (a1, a2) } else { (a2, a1) };
            let (bo, bu) = if is_over(t[b1]) { (b1, b2) } else { (b2, b1) };
            if !adjacent(n, ao, bo) || !adjacent(n, au, bu) {
                return mismatch("passages are not adjacent in pairs");
            }
            out.retain(|tok| tok.id() != first && tok.id() != second);
        }
        MoveSite::R3 { start } | MoveSite::PR3 { start } => {
            let tri = triangle(g, start)?;
            let want = if matches!(site, MoveSite::R3 { .. }) { 0 } else { 1 };
            if tri.pres != want {
                return mismatch("wrong number of precrossings in the triangle");
            }
            if !triangle_valid(g, &tri) {
                return mismatch("heights or signs do not allow the move");
            }
            for (p, q) in [tri.a, tri.b, tri.c] {
                out.swap(p, q);
            }
        }
        MoveSite::PR2 { classical, pre } => {
            for (p, q) in bigon(g, classical, pre)? {
                out.swap(p, q);
            }
            for tok in &mut out {
                if let Token::Classical { id, role, .. } = tok {
                    if *id == classical {
                        *role = role.other();
                    }
                }
            }
        }
    }
    Ok(PseudoGaussDiagram::new(out)?)
}

/// Every removal, R3, PR2 and PR3 site of `g`. Insertions apply anywhere
/// and are not listed.
pub fn enumerate_sites(g: &PseudoGaussDiagram) -> Vec<MoveSite> {
    let t = g.tokens();
    let n = t.len();
    let pos = g.positions();
    let mut ids: Vec<u32> = pos.keys().copied().collect();
    ids.sort_unstable();
    let mut sites = Vec::new();
    for &id in &ids {
        let (i, j) = pos[&id];
        if adjacent(n, i, j) {
            sites.push(if t[i].is_pre() { MoveSite::PR1Remove { id } } else { MoveSite::R1Remove { id } });
        }
    }
    for &a in &ids {
        for &b in &ids {
            if a < b {
                let s = MoveSite::R2Remove { first: a, second: b };
                if apply_move(g, &s).is_ok() {
                    sites.push(s);
                }
            }
            if !t[pos[&a].0].is_pre() && t[pos[&b].0].is_pre() && bigon(g, a, b).is_ok() {
                sites.push(MoveSite::PR2 { classical: a, pre: b });
            }
        }
    }
    for start in 0..n {
        if let Ok(tri) = triangle(g, start) {
            if triangle_valid(g, &tri) {
                match tri.pres {
                    0 => sites.push(MoveSite::R3 { start }),
                    1 => sites.push(MoveSite::PR3 { start }),
                    _ => {}
                }
            }
        }
    }
    sites
}

/// Record of a scramble run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scramble {
    pub diagram: PseudoGaussDiagram,
    pub applied: Vec<MoveSite>,
}

impl Scramble {
    pub fn kinds(&self) -> BTreeMap<MoveKind, usize> {
        let mut m = BTreeMap::new();
        for s in &self.applied {
            *m.entry(s.kind()).or_insert(0) += 1;
        }
        m
    }
}

/// Default share of insertions among scramble steps.
pub const INSERT_BIAS: f64 = 0.7;

/// `steps` pseudorandom moves, deterministic in `seed`.
pub fn scramble(g: &PseudoGaussDiagram, seed: u64, steps: usize) -> PseudoGaussDiagram {
    scramble_with(g, seed, steps, INSERT_BIAS).diagram
}

/// Like [`scramble`] with an explicit insertion probability, keeping the
/// list of applied moves. Other steps pick a move kind uniformly among
/// those with a site, then a site of that kind.
pub fn scramble_with(g: &PseudoGaussDiagram, seed: u64, steps: usize, insert_bias: f64) -> Scramble {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = g.clone();
    let mut applied = Vec::with_capacity(steps);
    for _ in 0..steps {
        let sites = enumerate_sites(&cur);
        let site = if sites.is_empty() || rng.gen_bool(insert_bias.clamp(0.0, 1.0)) {
            random_insertion(&cur, &mut rng)
        } else {
            let mut by_kind: BTreeMap<MoveKind, Vec<MoveSite>> = BTreeMap::new();
            for s in sites {
                by_kind.entry(s.kind()).or_default().push(s);
            }
            let kinds: Vec<&Vec<MoveSite>> = by_kind.values().collect();
            *kinds[rng.gen_range(0..kinds.len())].choose(&mut rng).expect("non-empty group")
        };
        cur = apply_move(&cur, &site).expect("sites are generated valid");
        applied.push(site);
    }
    Scramble { diagram: cur, applied }
}

fn random_insertion(g: &PseudoGaussDiagram, rng: &mut ChaCha8Rng) -> MoveSite {
    let n = g.len();
    let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
    match rng.gen_range(0..3) {
        0 => MoveSite::R1Insert { gap: rng.gen_range(0..=n), sign, over_first: rng.gen_bool(0.5) },
        1 => MoveSite::PR1Insert { gap: rng.gen_range(0..=n), head_first: rng.gen_bool(0.5) },
        _ => {
            let (over_gap, under_gap) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
            // Stacked on one gap the pair must nest to stay planar.
            let reversed = over_gap == under_gap || rng.gen_bool(0.5);
            MoveSite::R2Insert { over_gap, under_gap, sign, reversed }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::{compute_i, i_equal};
    use crate::parse_gauss;

    fn g(s: &str) -> PseudoGaussDiagram {
        parse_gauss(s).unwrap()
    }

    #[test]
    fn r1_round_trip() {
        let d = g("Ph1,Pt2,Ph3,Pt1,Ph2,Pt3");
        let ins = apply_move(&d, &MoveSite::R1Insert { gap: 2, sign: Sign::Negative, over_first: false }).unwrap();
        assert_eq!(ins.to_string(), "Ph1,Pt2,U4-,O4-,Ph3,Pt1,Ph2,Pt3");
        assert_eq!(apply_move(&ins, &MoveSite::R1Remove { id: 4 }).unwrap(), d);
        assert!(apply_move(&ins, &MoveSite::PR1Remove { id: 4 }).is_err());
    }

    #[test]
    fn pr1_insert_leaves_invariant() {
        let d = g("Ph1,Pt2,Ph3,Pt1,Ph2,Pt3");
        let ins = apply_move(&d, &MoveSite::PR1Insert { gap: 4, head_first: true }).unwrap();
        assert!(i_equal(&compute_i(&d), &compute_i(&ins)));
    }

    #[test]
    fn r2_over_a_prechord_cancels() {
        let d = g("Ph1,Pt2,Ph3,Pt1,Ph2,Pt3");
        let ins =
            apply_move(&d, &MoveSite::R2Insert { over_gap: 1, under_gap: 4, sign: Sign::Positive, reversed: true })
                .unwrap();
        assert_eq!(ins.to_string(), "Ph1,O4+,O5-,Pt2,Ph3,Pt1,U5-,U4+,Ph2,Pt3");
        assert!(i_equal(&compute_i(&d), &compute_i(&ins)));
        assert_eq!(apply_move(&ins, &MoveSite::R2Remove { first: 4, second: 5 }).unwrap(), d);
    }

    #[test]
    fn r2_needs_opposite_signs() {
        let d = g("O1+,O2+,U1+,U2+");
        assert!(apply_move(&d, &MoveSite::R2Remove { first: 1, second: 2 }).is_err());
    }

    #[test]
    fn braid_relation_is_an_r3() {
        // Closure of s1 s2 s1 with positive crossings, as traversed.
        let d = g("O1+,O2+,U3+,U1+,O3+,U2+");
        let sites = enumerate_sites(&d);
        let r3: Vec<_> = sites.iter().filter(|s| s.kind() == MoveKind::R3).collect();
        assert!(!r3.is_empty());
        let moved = apply_move(&d, r3[0]).unwrap();
        // The move is undone by a site of the same kind.
        let back = enumerate_sites(&moved)
            .into_iter()
            .filter(|s| s.kind() == MoveKind::R3)
            .any(|s| apply_move(&moved, &s).unwrap() == d);
        assert!(back);
    }

    #[test]
    fn cyclic_heights_rejected() {
        // A over B, B over C, C over A.
        let d = g("O1+,U2+,U1+,O3+,O2+,U3+");
        assert!(apply_move(&d, &MoveSite::R3 { start: 0 }).is_err());
        // The same word has a second, acyclic triangle.
        assert_eq!(enumerate_sites(&d), vec![MoveSite::R3 { start: 3 }]);
    }

    #[test]
    fn pr2_twists_a_bigon() {
        let d = g("O1+,Ph2,Pt3,U1+,Pt2,Ph3");
        let site = MoveSite::PR2 { classical: 1, pre: 2 };
        assert!(enumerate_sites(&d).contains(&site));
        let e = apply_move(&d, &site).unwrap();
        assert_eq!(e.to_string(), "Ph2,U1+,Pt3,Pt2,O1+,Ph3");
        assert!(i_equal(&compute_i(&d), &compute_i(&e)));
    }

    #[test]
    fn scramble_is_deterministic() {
        let d = g("Ph1,Pt2,Ph3,Pt1,Ph2,Pt3");
        assert_eq!(scramble(&d, 7, 0), d);
        assert_eq!(scramble(&d, 7, 25), scramble(&d, 7, 25));
        let s = scramble_with(&d, 7, 25, INSERT_BIAS);
        assert_eq!(s.applied.len(), 25);
        assert!(i_equal(&compute_i(&d), &compute_i(&s.diagram)));
    }
}
