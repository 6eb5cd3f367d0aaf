//! Kauffman bracket by merging smoothing states crossing by crossing, and the
//! Jones polynomial derived from it.
//!
//! After some crossings have been smoothed, what matters for the rest of the
//! sum is only how the half-open edges are joined by arcs, plus a polynomial
//! weight. States with the same joining are merged, so the work grows with
//! the width of the frontier rather than with `2^n`.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::poly::LaurentPolynomial;
use crate::diagram::ResolvedPD;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("Jones exponent A^{0} is not a multiple of 4")]
    FractionalExponent(i32),
}

/// `-A^2 - A^-2`, the value of a closed loop.
pub fn loop_value() -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(2, -1), (-2, -1)])
}

/// Sorted pairs of open edge ends joined by a partial path.
type Frontier = Vec<(u32, u32)>;

/// Kauffman bracket in the variable `A`, normalized so that the
/// crossingless unknot has bracket 1.
///
/// At `X(a, b, c, d)` (under-strand `a -> c`) the A-smoothing joins `a`
/// with `b` and `c` with `d`; the B-smoothing joins `a` with `d` and `b`
/// with `c`.
pub fn kauffman_bracket(d: &ResolvedPD) -> LaurentPolynomial {
    let verts = d.diagram().vertices();
    if verts.is_empty() {
        return LaurentPolynomial::one();
    }
    let delta = loop_value();
    let delta_pows = [LaurentPolynomial::one(), delta.clone(), &delta * &delta];
    let mut states: HashMap<Frontier, LaurentPolynomial> = HashMap::new();
    states.insert(Vec::new(), LaurentPolynomial::one());

    for vi in processing_order(d) {
        let [a, b, c, e] = verts[vi].edges;
        let smoothings = [([(a, b), (c, e)], 1), ([(a, e), (b, c)], -1)];
        let mut next: HashMap<Frontier, LaurentPolynomial> = HashMap::with_capacity(2 * states.len());
        for (frontier, weight) in &states {
            for (arcs, exp) in &smoothings {
                let mut f: HashMap<u32, u32> = frontier.iter().flat_map(|&(x, y)| [(x, y), (y, x)]).collect();
                let closed: usize = arcs.iter().map(|&(p, q)| join(&mut f, p, q)).sum();
                let w = &weight.shift(*exp) * &delta_pows[closed];
                *next.entry(to_frontier(&f)).or_default() += &w;
            }
        }
        next.retain(|_, w| !w.is_zero());
        states = next;
    }

    let total = states.remove(&Vec::new()).unwrap_or_default();
    debug_assert!(states.is_empty(), "every edge is closed once all vertices are smoothed");
    // Every state ends with at least one closed loop; the bracket counts
    // loops minus one.
    total.div_exact(&delta).expect("every state closes at least one loop")
}

/// Adds an arc between edge ends `p` and `q`; returns 1 if it closes a loop.
fn join(f: &mut HashMap<u32, u32>, p: u32, q: u32) -> usize {
    if p == q {
        // Both ends of one edge at this vertex.
        return 1;
    }
    if f.get(&p) == Some(&q) {
        f.remove(&p);
        f.remove(&q);
        return 1;
    }
    let mut far_end = |x: u32| match f.remove(&x) {
        Some(y) => {
            f.remove(&y);
            y
        }
        None => x,
    };
    let (ep, eq) = (far_end(p), far_end(q));
    f.insert(ep, eq);
    f.insert(eq, ep);
    0
}

fn to_frontier(f: &HashMap<u32, u32>) -> Frontier {
    let mut v: Frontier = f.iter().filter(|(a, b)| a < b).map(|(&a, &b)| (a, b)).collect();
    v.sort_unstable();
    v
}

/// Greedy order: repeatedly take the vertex sharing the most edges with the
/// vertices already processed, which keeps the frontier narrow.
fn processing_order(d: &ResolvedPD) -> Vec<usize> {
    let verts = d.diagram().vertices();
    let mut done = vec![false; verts.len()];
    let mut seen: HashSet<u32> = HashSet::new();
    let mut order = Vec::with_capacity(verts.len());
    for _ in 0..verts.len() {
        let best = (0..verts.len())
            .filter(|&v| !done[v])
            .max_by_key(|&v| {
                let shared = verts[v].edges.iter().filter(|e| seen.contains(e)).count();
                (shared, std::cmp::Reverse(v))
            })
            .expect("some vertex remains");
        done[best] = true;
        seen.extend(verts[best].edges);
        order.push(best);
    }
    order
}

/// `(-A^3)^(-w) <D>` with `A = t^(-1/4)`.
pub fn jones(d: &ResolvedPD) -> Result<LaurentPolynomial, BracketError> {
    jones_from_bracket(&kauffman_bracket(d), d.writhe())
}

/// Normalizes a bracket with the writhe and substitutes `A = t^(-1/4)`.
pub fn jones_from_bracket(bracket: &LaurentPolynomial, writhe: i64) -> Result<LaurentPolynomial, BracketError> {
    let w = writhe as i32;
    let mut f = bracket.shift(-3 * w);
    if w % 2 != 0 {
        f = -&f;
    }
    if let Some(bad) = f.terms().map(|(e, _)| e).find(|e| e % 4 != 0) {
        return Err(BracketError::FractionalExponent(bad));
    }
    Ok(f.divide_exponents(-4).expect("exponents checked above"))
}
