//! The decorated chord diagram invariant of a pseudoknot Gauss diagram.
//!
//! Precrossing arrows become undirected prechords, each decorated with the
//! signed count of classical arrows crossing it. Classical arrows are then
//! dropped, and undecorated prechords whose endpoints are neighbours are
//! deleted.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{DecoratedChordDiagram, PseudoGaussDiagram, Token};

/// How the final deletion step is applied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Deletion {
    /// Repeat until no deletable prechord remains.
    #[default]
    Fixpoint,
    /// Delete the prechords deletable in the input, once.
    SinglePass,
}

/// The invariant with fixpoint deletion.
pub fn compute_i(g: &PseudoGaussDiagram) -> DecoratedChordDiagram {
    compute_i_with(g, Deletion::Fixpoint)
}

pub fn compute_i_with(g: &PseudoGaussDiagram, mode: Deletion) -> DecoratedChordDiagram {
    let tokens = g.tokens();
    let n = tokens.len();
    let mut ends: HashMap<u32, Vec<usize>> = HashMap::new();
    for (p, t) in tokens.iter().enumerate() {
        ends.entry(t.id()).or_default().push(p);
    }
    let classical: Vec<(usize, usize, i64)> = tokens
        .iter()
        .enumerate()
        .filter_map(|(p, t)| match t {
            Token::Classical { id, sign, .. } if ends[id][0] == p => Some((p, ends[id][1], sign.value())),
            _ => None,
        })
        .collect();

    // Prechord endpoints in circle order, with the decoration of each chord.
    let mut decoration: HashMap<u32, i64> = HashMap::new();
    let mut order: Vec<u32> = Vec::new();
    for t in tokens {
        if let Token::Pre { id, .. } = *t {
            order.push(id);
            decoration.entry(id).or_insert_with(|| {
                let (a, b) = (ends[&id][0], ends[&id][1]);
                let inside = |x: usize| a < x && x < b;
                classical.iter().filter(|&&(x, y, _)| inside(x) != inside(y)).map(|&(_, _, s)| s).sum()
            });
        }
    }
    debug_assert!(order.len() <= n);

    loop {
        let m = order.len();
        let doomed: Vec<u32> = (0..m)
            .filter(|&k| order[k] == order[(k + 1) % m] && decoration[&order[k]] == 0)
            .map(|k| order[k])
            .collect();
        if doomed.is_empty() {
            break;
        }
        order.retain(|id| !doomed.contains(id));
        if mode == Deletion::SinglePass {
            break;
        }
    }

    let mut first: HashMap<u32, usize> = HashMap::new();
    let mut chords = Vec::with_capacity(order.len() / 2);
    for (p, id) in order.iter().enumerate() {
        if let Some(a) = first.insert(*id, p) {
            chords.push((a, p, decoration[id]));
        }
    }
    DecoratedChordDiagram::from_chords(order.len(), &chords).expect("surviving prechords form a matching")
}

/// Equality of invariant values up to rotation of the circle.
pub fn i_equal(a: &DecoratedChordDiagram, b: &DecoratedChordDiagram) -> bool {
    a.canonical_form() == b.canonical_form()
}
