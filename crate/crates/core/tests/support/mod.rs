//! Shared oracles and generators for the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use pseudoknot::diagram::build::{braid_closure, Cross};
use pseudoknot::{LaurentPolynomial, PseudoPD, ResolvedPD};

/// Bracket by summing all `2^n` states, counting loops with union-find.
pub fn naive_bracket(r: &ResolvedPD) -> LaurentPolynomial {
    let verts = r.diagram().vertices();
    let n = verts.len();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    let delta = LaurentPolynomial::monomial(-1, 2) + LaurentPolynomial::monomial(-1, -2);
    let edges = 2 * n + 1;
    let mut total = LaurentPolynomial::zero();
    for state in 0u64..1 << n {
        let mut parent: Vec<usize> = (0..edges).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut union = |a: u32, b: u32| {
            let (x, y) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            parent[x] = y;
        };
        let mut a_count = 0i32;
        for (k, v) in verts.iter().enumerate() {
            let [a, b, c, d] = v.edges;
            if state >> k & 1 == 0 {
                a_count += 1;
                union(a, b);
                union(c, d);
            } else {
                union(a, d);
                union(b, c);
            }
        }
        let loops = (1..edges).filter(|&e| find(&mut parent, e) == e).count();
        let b_count = n as i32 - a_count;
        total = total + LaurentPolynomial::monomial(1, a_count - b_count) * delta.pow(loops as u32 - 1);
    }
    total
}

pub type Word = Vec<(usize, Cross)>;

fn cycles(strands: usize, word: &[(usize, Cross)]) -> Vec<usize> {
    let mut arr: Vec<usize> = (0..strands).collect();
    for &(i, _) in word {
        arr.swap(i, i + 1);
    }
    // Label each position with the smallest position of its cycle.
    let mut label = vec![usize::MAX; strands];
    for s in 0..strands {
        let mut p = s;
        while label[p] == usize::MAX {
            label[p] = s;
            p = arr[p];
        }
    }
    label
}

/// Appends generators until the closure is a knot.
pub fn knotify(strands: usize, mut word: Word, sign: Cross) -> Word {
    loop {
        let label = cycles(strands, &word);
        match (0..strands - 1).find(|&i| label[i] != label[i + 1]) {
            Some(i) => word.push((i, sign)),
            None => return word,
        }
    }
}

pub fn closure(strands: usize, word: &[(usize, Cross)]) -> PseudoPD {
    braid_closure(strands, word).expect("knotified word closes to a knot")
}

pub fn resolved(strands: usize, word: &[(usize, Cross)]) -> ResolvedPD {
    ResolvedPD::try_from(closure(strands, word)).expect("word has no precrossings")
}

fn cross_strategy(with_pre: bool) -> BoxedStrategy<Cross> {
    if with_pre {
        prop_oneof![Just(Cross::Positive), Just(Cross::Negative), Just(Cross::Pre)].boxed()
    } else {
        prop_oneof![Just(Cross::Positive), Just(Cross::Negative)].boxed()
    }
}

/// Knotted braid words on 2 to 4 strands with at most `max_len` letters
/// before the knotting suffix.
pub fn braid_knot(max_len: usize, with_pre: bool) -> impl Strategy<Value = (usize, Word)> {
    (2usize..=4).prop_flat_map(move |strands| {
        let letter = (0..strands - 1, cross_strategy(with_pre));
        (Just(strands), prop::collection::vec(letter, 1..=max_len), cross_strategy(with_pre))
            .prop_map(|(s, w, c)| (s, knotify(s, w, c)))
    })
}

pub fn flip(c: Cross) -> Cross {
    match c {
        Cross::Positive => Cross::Negative,
        Cross::Negative => Cross::Positive,
        Cross::Pre => Cross::Pre,
    }
}
