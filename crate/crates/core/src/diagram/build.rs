//! Assembling diagrams from braid words and plats.
//!
//! Strands run upward. A generator on positions `(i, i + 1)` creates a vertex
//! whose slots are, counterclockwise, SW, SE, NE, NW; SW and SE attach to the
//! strands below, NW and NE to the strands above.

use super::error::DiagramError;
use super::pd::{PseudoPD, RawKind, RawVertex};

/// What to put at a braid generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cross {
    /// The strand coming from the lower left passes over.
    Positive,
    /// The strand coming from the lower left passes under.
    Negative,
    Pre,
}

#[derive(Clone, Copy, Debug)]
enum Node {
    Dart(usize, usize),
    Aux(usize),
}

/// Incremental planar construction. Wires join nodes; auxiliary nodes are
/// contracted away when the diagram is finished.
#[derive(Debug, Default)]
pub struct PlanarBuilder {
    kinds: Vec<RawKind>,
    links: Vec<(Node, Node)>,
    aux: usize,
    /// Open strand ends, left to right.
    top: Vec<Node>,
    bottom: Vec<Node>,
}

impl PlanarBuilder {
    /// `strands` open strands with free bottom ends (for braid closure).
    pub fn braid(strands: usize) -> PlanarBuilder {
        let mut b = PlanarBuilder::default();
        for _ in 0..strands {
            let n = b.fresh();
            b.top.push(n);
            b.bottom.push(n);
        }
        b
    }

    /// `pairs` cups, joining positions `(2k, 2k + 1)` at the bottom.
    pub fn plat(pairs: usize) -> PlanarBuilder {
        let mut b = PlanarBuilder::default();
        for _ in 0..pairs {
            let (l, r) = (b.fresh(), b.fresh());
            b.links.push((l, r));
            b.top.push(l);
            b.top.push(r);
        }
        b
    }

    fn fresh(&mut self) -> Node {
        self.aux += 1;
        Node::Aux(self.aux - 1)
    }

    pub fn strands(&self) -> usize {
        self.top.len()
    }

    /// Adds a generator on positions `(i, i + 1)`.
    pub fn cross(&mut self, i: usize, c: Cross) -> &mut Self {
        assert!(i + 1 < self.top.len(), "generator {i} out of range");
        let v = self.kinds.len();
        self.kinds.push(match c {
            Cross::Pre => RawKind::Precrossing,
            // SW-NE (slots 0, 2) over means the under-strand sits on slots 1, 3.
            Cross::Positive => RawKind::Classical { under_parity: 1 },
            Cross::Negative => RawKind::Classical { under_parity: 0 },
        });
        self.links.push((self.top[i], Node::Dart(v, 0)));
        self.links.push((self.top[i + 1], Node::Dart(v, 1)));
        self.top[i] = Node::Dart(v, 3);
        self.top[i + 1] = Node::Dart(v, 2);
        self
    }

    /// Caps positions `(2k, 2k + 1)` and builds the plat closure.
    pub fn finish_plat(mut self) -> Result<PseudoPD, DiagramError> {
        assert!(self.bottom.is_empty() && self.top.len().is_multiple_of(2));
        for k in 0..self.top.len() / 2 {
            self.links.push((self.top[2 * k], self.top[2 * k + 1]));
        }
        self.into_pd()
    }

    /// Joins each top end to the bottom end below it.
    pub fn finish_braid(mut self) -> Result<PseudoPD, DiagramError> {
        assert_eq!(self.top.len(), self.bottom.len());
        for k in 0..self.top.len() {
            self.links.push((self.top[k], self.bottom[k]));
        }
        self.into_pd()
    }

    fn into_pd(self) -> Result<PseudoPD, DiagramError> {
        let nv = self.kinds.len();
        let index = |n: Node| match n {
            Node::Dart(v, s) => 4 * v + s,
            Node::Aux(a) => 4 * nv + a,
        };
        let total = 4 * nv + self.aux;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
        for &(a, b) in &self.links {
            let (a, b) = (index(a), index(b));
            adj[a].push(b);
            adj[b].push(a);
        }
        // Crossingless closed loops would be extra components.
        let mut reached = vec![false; total];
        let mut edge_of = vec![usize::MAX; 4 * nv];
        let mut next_edge = 0;
        for d in 0..4 * nv {
            if edge_of[d] != usize::MAX {
                continue;
            }
            let (mut prev, mut cur) = (d, adj[d][0]);
            reached[d] = true;
            while cur >= 4 * nv {
                reached[cur] = true;
                let nxt = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = nxt;
            }
            reached[cur] = true;
            edge_of[d] = next_edge;
            edge_of[cur] = next_edge;
            next_edge += 1;
        }
        if nv == 0 {
            return if single_loop(&adj) {
                Ok(PseudoPD::unknot())
            } else {
                Err(DiagramError::MultiComponent { visited: 1, total: 2 })
            };
        }
        if reached.iter().any(|r| !r) {
            return Err(DiagramError::MultiComponent { visited: 2 * nv, total: 2 * nv + 1 });
        }
        let raw: Vec<RawVertex> = (0..nv)
            .map(|v| RawVertex {
                id: v as u32 + 1,
                kind: self.kinds[v],
                edges: [0, 1, 2, 3].map(|s| edge_of[4 * v + s]),
            })
            .collect();
        PseudoPD::from_raw(&raw)
    }
}

fn single_loop(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        if !std::mem::replace(&mut seen[x], true) {
            stack.extend(adj[x].iter().copied());
        }
    }
    seen.iter().all(|&s| s)
}

/// Closure of a braid word given as `(generator, crossing)` pairs.
pub fn braid_closure(strands: usize, word: &[(usize, Cross)]) -> Result<PseudoPD, DiagramError> {
    let mut b = PlanarBuilder::braid(strands);
    for &(i, c) in word {
        b.cross(i, c);
    }
    b.finish_braid()
}

/// Alternating 4-plat of the rational knot with continued fraction
/// `terms` (odd length, all terms positive). With `shadow` every crossing is
/// a precrossing.
pub fn four_plat(terms: &[u32], shadow: bool) -> Result<PseudoPD, DiagramError> {
    assert!(terms.len() % 2 == 1, "four_plat needs an odd number of terms");
    let mut b = PlanarBuilder::plat(2);
    for (k, &a) in terms.iter().enumerate() {
        let (gen, cross) = if k % 2 == 0 { (1, Cross::Positive) } else { (0, Cross::Negative) };
        for _ in 0..a {
            b.cross(gen, if shadow { Cross::Pre } else { cross });
        }
    }
    b.finish_plat()
}

/// Odd-length continued fraction of a Conway notation: an even-length
/// notation `(.., a)` is rewritten as `(.., a - 1, 1)`.
pub fn odd_terms(conway: &[u32]) -> Vec<u32> {
    let mut t = conway.to_vec();
    if t.len().is_multiple_of(2) {
        let last = t.pop().expect("non-empty notation");
        if last > 1 {
            t.push(last - 1);
            t.push(1);
        } else {
            // (.., b, 1) has the same fraction as (.., b + 1).
            let b = t.pop().expect("even length >= 2");
            t.push(b + 1);
        }
    }
    t
}
