//! Planar-diagram codes for pseudodiagrams.
//!
//! A vertex lists its four edge labels counterclockwise. The first label is
//! the incoming edge of "strand one" (slots 0 and 2); the other strand uses
//! slots 1 and 3. For a classical vertex strand one is the under-strand, so
//! the over-strand runs 3 -> 1 for a positive crossing and 1 -> 3 for a
//! negative one:
//!
//! ```text
//!     c   b
//!      \ /
//!       /      X(a, b, c, d), under-strand a -> c
//!      / \
//!     d   a
//! ```
//!
//! Precrossings carry no sign. Their positive resolution is whichever choice
//! of over-strand produces a crossing of sign +1.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::error::DiagramError;
use super::gauss::{End, PseudoGaussDiagram, Role, Token};
use super::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VertexKind {
    Classical { sign: Sign },
    Precrossing,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    #[serde(flatten)]
    pub kind: VertexKind,
    pub edges: [u32; 4],
}

impl Vertex {
    pub fn classical(id: u32, sign: Sign, edges: [u32; 4]) -> Vertex {
        Vertex { id, kind: VertexKind::Classical { sign }, edges }
    }

    pub fn precrossing(id: u32, edges: [u32; 4]) -> Vertex {
        Vertex { id, kind: VertexKind::Precrossing, edges }
    }

    pub fn is_precrossing(&self) -> bool {
        matches!(self.kind, VertexKind::Precrossing)
    }

    pub fn sign(&self) -> Option<Sign> {
        match self.kind {
            VertexKind::Classical { sign } => Some(sign),
            VertexKind::Precrossing => None,
        }
    }
}

/// A validated single-component planar diagram with classical crossings and
/// precrossings. Edge labels are normalized to `1..=2n` in traversal order:
/// edge `k` leads into the `k`-th strand passage.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PdRepr", into = "PdRepr")]
pub struct PseudoPD {
    vertices: Vec<Vertex>,
    /// Slot (1 or 3) through which strand two enters each vertex.
    strand_two_in: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct PdRepr {
    vertices: Vec<Vertex>,
}

impl TryFrom<PdRepr> for PseudoPD {
    type Error = DiagramError;

    fn try_from(r: PdRepr) -> Result<Self, DiagramError> {
        PseudoPD::from_vertices(r.vertices)
    }
}

impl From<PseudoPD> for PdRepr {
    fn from(d: PseudoPD) -> PdRepr {
        PdRepr { vertices: d.vertices }
    }
}

/// One passage of the traversal through a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub vertex: usize,
    pub entry_slot: u8,
}

impl PseudoPD {
    /// The crossingless unknot.
    pub fn unknot() -> PseudoPD {
        PseudoPD { vertices: Vec::new(), strand_two_in: Vec::new() }
    }

    /// Validates the vertex list and renumbers its edges along the traversal.
    pub fn from_vertices(vertices: Vec<Vertex>) -> Result<PseudoPD, DiagramError> {
        let mut ids = HashSet::new();
        for v in &vertices {
            if !ids.insert(v.id) {
                return Err(DiagramError::DuplicateVertex(v.id));
            }
        }
        if vertices.is_empty() {
            return Ok(PseudoPD::unknot());
        }

        let mut slots: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (vi, v) in vertices.iter().enumerate() {
            for (s, &e) in v.edges.iter().enumerate() {
                slots.entry(e).or_default().push(4 * vi + s);
            }
        }
        for (&label, darts) in &slots {
            if darts.len() != 2 {
                return Err(DiagramError::EdgeMultiplicity { label, count: darts.len() });
            }
        }
        let mut partner = vec![0usize; 4 * vertices.len()];
        for darts in slots.values() {
            partner[darts[0]] = darts[1];
            partner[darts[1]] = darts[0];
        }

        let passages = trace(&partner, 0);
        let total = 2 * vertices.len();
        if passages.len() != total {
            return Err(DiagramError::MultiComponent { visited: passages.len(), total });
        }

        let mut strand_two_in = vec![0u8; vertices.len()];
        let mut strand_one_seen = vec![false; vertices.len()];
        for p in &passages {
            match p.entry_slot {
                0 => strand_one_seen[p.vertex] = true,
                1 | 3 => strand_two_in[p.vertex] = p.entry_slot,
                _ => return Err(DiagramError::Orientation { id: vertices[p.vertex].id }),
            }
        }
        for (vi, v) in vertices.iter().enumerate() {
            if !strand_one_seen[vi] {
                return Err(DiagramError::Orientation { id: v.id });
            }
            if let VertexKind::Classical { sign } = v.kind {
                if sign != sign_from_strand_two(strand_two_in[vi]) {
                    return Err(DiagramError::SignMismatch { id: v.id, stored: sign.value() });
                }
            }
        }

        let faces = count_faces(&partner);
        if faces != vertices.len() + 2 {
            return Err(DiagramError::NonPlanar { faces, vertices: vertices.len() });
        }

        // Relabel: the edge entering passage k becomes k + 1, counting from
        // the passage entered by the smallest original label.
        let first = (0..passages.len())
            .min_by_key(|&k| vertices[passages[k].vertex].edges[passages[k].entry_slot as usize])
            .unwrap_or(0);
        let passages: Vec<Passage> = passages[first..].iter().chain(&passages[..first]).copied().collect();
        let mut relabel: HashMap<u32, u32> = HashMap::new();
        for (k, p) in passages.iter().enumerate() {
            let old = vertices[p.vertex].edges[p.entry_slot as usize];
            relabel.insert(old, k as u32 + 1);
        }
        let vertices = vertices.into_iter().map(|v| Vertex { edges: v.edges.map(|e| relabel[&e]), ..v }).collect();
        Ok(PseudoPD { vertices, strand_two_in })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn crossing_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Ids of the precrossings in ascending order.
    pub fn precrossing_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.vertices.iter().filter(|v| v.is_precrossing()).map(|v| v.id).collect();
        ids.sort_unstable();
        ids
    }

    pub fn precrossing_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_precrossing()).count()
    }

    pub fn is_shadow(&self) -> bool {
        self.vertices.iter().all(Vertex::is_precrossing)
    }

    pub fn vertex_index(&self, id: u32) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Partner dart (`4 * vertex + slot`) across each edge.
    pub(crate) fn dart_partner(&self) -> Vec<usize> {
        let mut first: HashMap<u32, usize> = HashMap::new();
        let mut partner = vec![0usize; 4 * self.vertices.len()];
        for (vi, v) in self.vertices.iter().enumerate() {
            for (s, &e) in v.edges.iter().enumerate() {
                let d = 4 * vi + s;
                if let Some(o) = first.remove(&e) {
                    partner[d] = o;
                    partner[o] = d;
                } else {
                    first.insert(e, d);
                }
            }
        }
        partner
    }

    /// Passages in traversal order, starting where edge 1 enters.
    pub fn traversal(&self) -> Vec<Passage> {
        if self.vertices.is_empty() {
            return Vec::new();
        }
        let start = self
            .vertices
            .iter()
            .enumerate()
            .find_map(|(vi, v)| {
                [0u8, self.strand_two_in[vi]]
                    .into_iter()
                    .find(|&s| v.edges[s as usize] == 1)
                    .map(|s| 4 * vi + s as usize)
            })
            .expect("normalized diagram has an entry labelled 1");
        trace(&self.dart_partner(), start)
    }

    /// Whether the passage through `vertex` entering at `entry_slot` is the
    /// under-strand of the positive resolution.
    fn positive_under(&self, vertex: usize, entry_slot: u8) -> bool {
        let strand_one_under = self.strand_two_in[vertex] == 3;
        (entry_slot == 0) == strand_one_under
    }

    /// Gauss diagram in traversal order. Classical arrows point from the
    /// over-passage to the under-passage; precrossing arrows point the way
    /// the positive resolution's arrow would.
    pub fn to_gauss(&self) -> PseudoGaussDiagram {
        let tokens = self
            .traversal()
            .into_iter()
            .map(|p| {
                let v = &self.vertices[p.vertex];
                match v.kind {
                    VertexKind::Classical { sign } => {
                        let role = if p.entry_slot == 0 { Role::Under } else { Role::Over };
                        Token::Classical { id: v.id, role, sign }
                    }
                    VertexKind::Precrossing => {
                        let end = if self.positive_under(p.vertex, p.entry_slot) { End::Head } else { End::Tail };
                        Token::Pre { id: v.id, end }
                    }
                }
            })
            .collect();
        PseudoGaussDiagram::from_tokens_unchecked(tokens)
    }

    /// Replaces every precrossing by the classical crossing of the chosen sign.
    pub fn resolve(&self, choice: &BTreeMap<u32, Sign>) -> Result<ResolvedPD, DiagramError> {
        let ids = self.precrossing_ids();
        if choice.len() != ids.len() || ids.iter().any(|id| !choice.contains_key(id)) {
            return Err(DiagramError::Choice(format!(
                "expected signs for precrossings {ids:?}, got {:?}",
                choice.keys().collect::<Vec<_>>()
            )));
        }
        Ok(self.resolve_with(|id| choice[&id]))
    }

    /// Resolution by bit mask over [`PseudoPD::precrossing_ids`]: bit `j` set
    /// resolves the `j`-th precrossing positively.
    pub fn resolve_mask(&self, mask: u64) -> ResolvedPD {
        let ids = self.precrossing_ids();
        let pos: HashMap<u32, usize> = ids.iter().enumerate().map(|(j, &id)| (id, j)).collect();
        self.resolve_with(|id| if mask >> pos[&id] & 1 == 1 { Sign::Positive } else { Sign::Negative })
    }

    fn resolve_with(&self, choose: impl Fn(u32) -> Sign) -> ResolvedPD {
        let mut out = self.clone();
        for (vi, v) in out.vertices.iter_mut().enumerate() {
            if v.is_precrossing() {
                let target = choose(v.id);
                set_sign(v, &mut out.strand_two_in[vi], target);
            }
        }
        ResolvedPD(out)
    }

    /// Flips every classical crossing; precrossings are their own mirror.
    pub fn mirror(&self) -> PseudoPD {
        let mut out = self.clone();
        for (vi, v) in out.vertices.iter_mut().enumerate() {
            if let VertexKind::Classical { sign } = v.kind {
                set_sign(v, &mut out.strand_two_in[vi], sign.flip());
            }
        }
        out
    }

    /// Replaces every classical crossing by a precrossing.
    pub fn shadow(&self) -> PseudoPD {
        let mut out = self.clone();
        for v in &mut out.vertices {
            v.kind = VertexKind::Precrossing;
        }
        out
    }

    /// Comparison key that ignores vertex ids, the traversal start and
    /// direction, and which strand of a precrossing is listed first.
    pub fn canonical_key(&self) -> Vec<[u32; 5]> {
        let n2 = 2 * self.vertices.len() as u32;
        let mut best: Option<Vec<[u32; 5]>> = None;
        for reversed in [false, true] {
            for shift in 0..n2 {
                let relabel = |e: u32| {
                    let e = if reversed { n2 + 1 - e } else { e };
                    (e - 1 + n2 - shift) % n2 + 1
                };
                let flip = if reversed { 2 } else { 0 };
                let mut key: Vec<[u32; 5]> = self
                    .vertices
                    .iter()
                    .enumerate()
                    .map(|(vi, v)| {
                        let e = v.edges.map(relabel);
                        let from = |s: usize| [e[s % 4], e[(s + 1) % 4], e[(s + 2) % 4], e[(s + 3) % 4]];
                        match v.kind {
                            VertexKind::Classical { sign } => {
                                let t = from(flip);
                                [if sign == Sign::Positive { 1 } else { 2 }, t[0], t[1], t[2], t[3]]
                            }
                            VertexKind::Precrossing => {
                                let s = self.strand_two_in[vi] as usize;
                                let t = from(flip).min(from(s + flip));
                                [0, t[0], t[1], t[2], t[3]]
                            }
                        }
                    })
                    .collect();
                key.sort_unstable();
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.unwrap_or_default()
    }
}

fn sign_from_strand_two(slot: u8) -> Sign {
    if slot == 3 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Makes `v` classical with sign `target`, rotating its slots if the
/// under-strand has to change.
fn set_sign(v: &mut Vertex, strand_two_in: &mut u8, target: Sign) {
    if sign_from_strand_two(*strand_two_in) != target {
        let s = *strand_two_in as usize;
        v.edges = [v.edges[s], v.edges[(s + 1) % 4], v.edges[(s + 2) % 4], v.edges[(s + 3) % 4]];
        *strand_two_in = 4 - *strand_two_in;
    }
    v.kind = VertexKind::Classical { sign: target };
}

/// Follows strands from `start` (a dart entered by the traversal) until the
/// walk closes.
fn trace(partner: &[usize], start: usize) -> Vec<Passage> {
    let mut out = Vec::new();
    let mut d = start;
    loop {
        out.push(Passage { vertex: d / 4, entry_slot: (d % 4) as u8 });
        let exit = d - d % 4 + (d % 4 + 2) % 4;
        d = partner[exit];
        if d == start || out.len() > partner.len() {
            break;
        }
    }
    out
}

fn count_faces(partner: &[usize]) -> usize {
    let mut seen = vec![false; partner.len()];
    let mut faces = 0;
    for d0 in 0..partner.len() {
        if seen[d0] {
            continue;
        }
        faces += 1;
        let mut d = d0;
        while !seen[d] {
            seen[d] = true;
            let o = partner[d];
            d = o - o % 4 + (o % 4 + 1) % 4;
        }
    }
    faces
}

/// A diagram without precrossings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PseudoPD", into = "PseudoPD")]
pub struct ResolvedPD(PseudoPD);

impl TryFrom<PseudoPD> for ResolvedPD {
    type Error = DiagramError;

    fn try_from(d: PseudoPD) -> Result<Self, DiagramError> {
        match d.vertices.iter().find(|v| v.is_precrossing()) {
            Some(v) => Err(DiagramError::Choice(format!("precrossing {} is unresolved", v.id))),
            None => Ok(ResolvedPD(d)),
        }
    }
}

impl From<ResolvedPD> for PseudoPD {
    fn from(r: ResolvedPD) -> PseudoPD {
        r.0
    }
}

impl ResolvedPD {
    pub fn unknot() -> ResolvedPD {
        ResolvedPD(PseudoPD::unknot())
    }

    pub fn diagram(&self) -> &PseudoPD {
        &self.0
    }

    pub fn into_diagram(self) -> PseudoPD {
        self.0
    }

    pub fn writhe(&self) -> i64 {
        self.0.vertices.iter().filter_map(Vertex::sign).map(Sign::value).sum()
    }

    pub fn mirror(&self) -> ResolvedPD {
        ResolvedPD(self.0.mirror())
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.0.vertices.iter().filter_map(Vertex::sign).collect()
    }
}

impl std::str::FromStr for PseudoPD {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, DiagramError> {
        parse_pd(s)
    }
}

/// Parses whitespace-separated `X+(a,b,c,d)`, `X-(a,b,c,d)` and `P(a,b,c,d)`
/// terms. Vertex ids are the 1-based term positions.
pub fn parse_pd(text: &str) -> Result<PseudoPD, DiagramError> {
    let mut vertices = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let syntax = |pos: usize, msg: &str| DiagramError::Syntax { pos, msg: msg.to_string() };
    let pos_of = |i: usize| bytes.get(i).map_or(text.len(), |&(p, _)| p);
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let kind = match c {
            'P' => {
                i += 1;
                VertexKind::Precrossing
            }
            'X' => {
                let sign = bytes
                    .get(i + 1)
                    .and_then(|&(_, c)| Sign::from_char(c))
                    .ok_or_else(|| syntax(pos_of(i + 1), "expected '+' or '-' after 'X'"))?;
                i += 2;
                VertexKind::Classical { sign }
            }
            _ => return Err(syntax(pos, "expected a term starting with 'X' or 'P'")),
        };
        if bytes.get(i).map(|&(_, c)| c) != Some('(') {
            return Err(syntax(pos_of(i), "expected '('"));
        }
        i += 1;
        let mut edges = [0u32; 4];
        for (k, slot) in edges.iter_mut().enumerate() {
            while bytes.get(i).is_some_and(|&(_, c)| c == ' ') {
                i += 1;
            }
            let start = i;
            while bytes.get(i).is_some_and(|&(_, c)| c.is_ascii_digit()) {
                i += 1;
            }
            if start == i {
                return Err(syntax(pos_of(i), "expected an edge label"));
            }
            let digits: String = bytes[start..i].iter().map(|&(_, c)| c).collect();
            *slot = digits.parse().map_err(|_| syntax(pos_of(start), "edge label out of range"))?;
            while bytes.get(i).is_some_and(|&(_, c)| c == ' ') {
                i += 1;
            }
            let want = if k == 3 { ')' } else { ',' };
            if bytes.get(i).map(|&(_, c)| c) != Some(want) {
                return Err(syntax(pos_of(i), &format!("expected '{want}'")));
            }
            i += 1;
        }
        let id = vertices.len() as u32 + 1;
        vertices.push(Vertex { id, kind, edges });
    }
    PseudoPD::from_vertices(vertices)
}

impl fmt::Display for PseudoPD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.vertices.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match v.kind {
                VertexKind::Classical { sign } => write!(f, "X{sign}")?,
                VertexKind::Precrossing => f.write_str("P")?,
            }
            let [a, b, c, d] = v.edges;
            write!(f, "({a},{b},{c},{d})")?;
        }
        Ok(())
    }
}

impl fmt::Display for ResolvedPD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A rotation system with arbitrary edge keys, used to assemble diagrams
/// before orientation and labels are known.
#[derive(Clone, Debug)]
pub(crate) struct RawVertex {
    pub id: u32,
    pub kind: RawKind,
    /// Edge keys counterclockwise; each key occurs exactly twice overall.
    pub edges: [usize; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum RawKind {
    Precrossing,
    /// Under-strand occupies slots `under_parity` and `under_parity + 2`.
    Classical {
        under_parity: u8,
    },
}

impl PseudoPD {
    pub(crate) fn to_raw(&self) -> Vec<RawVertex> {
        self.vertices
            .iter()
            .map(|v| RawVertex {
                id: v.id,
                kind: match v.kind {
                    VertexKind::Classical { .. } => RawKind::Classical { under_parity: 0 },
                    VertexKind::Precrossing => RawKind::Precrossing,
                },
                edges: v.edges.map(|e| e as usize),
            })
            .collect()
    }

    /// Orients a raw rotation system, derives signs from the under-strands and
    /// validates the result. Crossing signs do not depend on the orientation
    /// chosen for a knot, so the traversal may start anywhere.
    pub(crate) fn from_raw(raw: &[RawVertex]) -> Result<PseudoPD, DiagramError> {
        PseudoPD::from_raw_oriented(raw, 0)
    }

    /// Like [`PseudoPD::from_raw`], orienting the knot so that the strand
    /// enters through dart `start` (`4 * vertex + slot`).
    pub(crate) fn from_raw_oriented(raw: &[RawVertex], start: usize) -> Result<PseudoPD, DiagramError> {
        if raw.is_empty() {
            return Ok(PseudoPD::unknot());
        }
        let mut slots: HashMap<usize, Vec<usize>> = HashMap::new();
        for (vi, v) in raw.iter().enumerate() {
            for (s, &e) in v.edges.iter().enumerate() {
                slots.entry(e).or_default().push(4 * vi + s);
            }
        }
        let mut partner = vec![0usize; 4 * raw.len()];
        for (&e, darts) in &slots {
            if darts.len() != 2 {
                return Err(DiagramError::EdgeMultiplicity { label: e as u32, count: darts.len() });
            }
            partner[darts[0]] = darts[1];
            partner[darts[1]] = darts[0];
        }
        let passages = trace(&partner, start);
        if passages.len() != 2 * raw.len() {
            return Err(DiagramError::MultiComponent { visited: passages.len(), total: 2 * raw.len() });
        }
        let mut entries: Vec<Vec<u8>> = vec![Vec::new(); raw.len()];
        let mut label: HashMap<usize, u32> = HashMap::new();
        for (k, p) in passages.iter().enumerate() {
            entries[p.vertex].push(p.entry_slot);
            label.insert(raw[p.vertex].edges[p.entry_slot as usize], k as u32 + 1);
        }
        let mut vertices = Vec::with_capacity(raw.len());
        for (vi, v) in raw.iter().enumerate() {
            let (first, second) = (entries[vi][0], entries[vi][1]);
            if first % 2 == second % 2 {
                return Err(DiagramError::Orientation { id: v.id });
            }
            let (start, kind) = match v.kind {
                RawKind::Precrossing => (first, VertexKind::Precrossing),
                RawKind::Classical { under_parity } => {
                    let (under, over) = if first % 2 == under_parity { (first, second) } else { (second, first) };
                    let sign = if (over + 4 - under) % 4 == 3 { Sign::Positive } else { Sign::Negative };
                    (under, VertexKind::Classical { sign })
                }
            };
            let s = start as usize;
            let edges = [0, 1, 2, 3].map(|k| label[&v.edges[(s + k) % 4]]);
            vertices.push(Vertex { id: v.id, kind, edges });
        }
        PseudoPD::from_vertices(vertices)
    }
}
