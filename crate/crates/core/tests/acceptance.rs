//! Acceptance checks, one PASS/FAIL line per criterion.

mod support;

use std::collections::{BTreeMap, BTreeSet};

use pseudoknot::diagram::build::{four_plat, Cross};
use pseudoknot::moves::{
    family, p1, p2, random_shadow_with_sites, scramble_bases, scramble_with, shadow_flype_pd, MoveKind, INSERT_BIAS,
};
use pseudoknot::{
    compute_i, i_equal, jones, kauffman_bracket, parse_pd, wereset, wereset_equal, KnotName, KnotTable, PseudoPD,
    WereSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{flip, knotify, naive_bracket, resolved};

type Outcome = Result<String, String>;

fn ws(d: &PseudoPD, table: &KnotTable) -> WereSet {
    wereset(d, table, 4).expect("shadow is enumerable")
}

fn counts(w: &WereSet) -> BTreeMap<String, u64> {
    w.known().map(|(k, n)| (k.to_string(), n)).collect()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1(table: &KnotTable) -> Outcome {
    let expected: BTreeMap<String, u64> = [
        ("0_1", 72),
        ("-3_1", 10),
        ("3_1", 10),
        ("4_1", 20),
        ("-5_1", 1),
        ("-5_2", 2),
        ("5_1", 1),
        ("5_2", 2),
        ("6_2", 2),
        ("6_1", 2),
        ("-6_1", 2),
        ("-6_2", 2),
        ("-7_7", 1),
        ("7_7", 1),
    ]
    .into_iter()
    .map(|(k, n)| (k.to_string(), n))
    .collect();
    for (name, d) in [("P1", p1()), ("P2", p2())] {
        let w = ws(&d, table);
        ensure(
            w.total() == 128 && w.unknown().count() == 0,
            format!("{name}: {} resolutions, unknown present", w.total()),
        )?;
        ensure(counts(&w) == expected, format!("{name}: got {}", w.brace_notation()))?;
    }
    Ok(format!("P1 and P2 both give {}", ws(&p1(), table).brace_notation()))
}

fn criterion_2(table: &KnotTable) -> Outcome {
    let (i1, i2) = (compute_i(&p1().to_gauss()), compute_i(&p2().to_gauss()));
    ensure(!i_equal(&i1, &i2), "invariants agree")?;
    ensure(!i_equal(&i1.reflect(), &i2), "invariants agree up to reflection")?;
    ensure(wereset_equal(&ws(&p1(), table), &ws(&p2(), table)), "were-sets differ")?;
    Ok(format!("I(P1) = {:?}, I(P2) = {:?}, were-sets equal", i1.chords(), i2.chords()))
}

fn criterion_3(table: &KnotTable) -> Outcome {
    for (m, n) in [(2, 2), (2, 4), (4, 2), (4, 4)] {
        let f = family(m, n).map_err(|e| e.to_string())?;
        ensure(wereset_equal(&ws(&f.first, table), &ws(&f.second, table)), format!("family({m},{n}) differs"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    let mut shadows = 0;
    while checked < 24 {
        let (d, sites) = random_shadow_with_sites(&mut rng, 10);
        shadows += 1;
        let before = ws(&d, table);
        for _ in 0..2 {
            let s = &sites[rng.gen_range(0..sites.len())];
            let after = ws(&shadow_flype_pd(&d, s).map_err(|e| e.to_string())?, table);
            ensure(wereset_equal(&before, &after), format!("site {s:?} on {d:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("4 family pairs and {checked} random sites on {shadows} shadows"))
}

fn criterion_4() -> Outcome {
    let bases = scramble_bases(10, 1);
    let mut kinds: BTreeMap<MoveKind, usize> = BTreeMap::new();
    let mut runs = 0;
    for (b, g) in bases.iter().enumerate() {
        let before = compute_i(g);
        for k in 0..10u64 {
            let s = scramble_with(g, 1000 * b as u64 + k, 40, INSERT_BIAS);
            ensure(i_equal(&before, &compute_i(&s.diagram)), format!("base {g}, moves {:?}", s.applied))?;
            for (kind, n) in s.kinds() {
                *kinds.entry(kind).or_default() += n;
            }
            runs += 1;
        }
    }
    ensure(kinds.len() == 6, format!("only {kinds:?} occurred"))?;
    Ok(format!("{runs} scrambles of 40 moves on {} bases, moves {kinds:?}", bases.len()))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sign = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { Cross::Positive } else { Cross::Negative };
    let mut compared = 0;
    for _ in 0..150 {
        let s = rng.gen_range(2..=4);
        let len = rng.gen_range(1..=6);
        let w: Vec<_> = (0..len).map(|_| (rng.gen_range(0..s - 1), sign(&mut rng))).collect();
        let c = sign(&mut rng);
        let w = knotify(s, w, c);
        if w.len() > 8 {
            continue;
        }
        let r = resolved(s, &w);
        ensure(kauffman_bracket(&r) == naive_bracket(&r), format!("bracket mismatch on {w:?}"))?;
        compared += 1;
        let j = jones(&r).map_err(|e| e.to_string())?;
        ensure(jones(&r.mirror()).map_err(|e| e.to_string())? == j.reciprocal(), format!("mirror on {w:?}"))?;
        // R1: stabilize.
        let mut v = w.clone();
        v.push((s - 1, sign(&mut rng)));
        ensure(jones(&resolved(s + 1, &v)).unwrap() == j, format!("R1 on {w:?}"))?;
        // R2: cancelling pair.
        let k = rng.gen_range(0..=w.len());
        let (i, c) = (rng.gen_range(0..s - 1), sign(&mut rng));
        let mut v = w.clone();
        v.splice(k..k, [(i, c), (i, flip(c))]);
        ensure(jones(&resolved(s, &v)).unwrap() == j, format!("R2 on {w:?}"))?;
        // R3: braid relation, knotted by a shared suffix.
        if s >= 3 {
            let c = sign(&mut rng);
            let mut a = w.clone();
            a.splice(k..k, [(0, c), (1, c), (0, c)]);
            let a = knotify(s, a, c);
            let mut b = w.clone();
            b.splice(k..k, [(1, c), (0, c), (1, c)]);
            b.extend_from_slice(&a[w.len() + 3..]);
            ensure(jones(&resolved(s, &a)).unwrap() == jones(&resolved(s, &b)).unwrap(), format!("R3 on {w:?}"))?;
        }
    }
    for mask in 0..128 {
        let r = p1().resolve_mask(mask);
        ensure(kauffman_bracket(&r) == naive_bracket(&r), format!("bracket mismatch on P1 resolution {mask}"))?;
    }
    Ok(format!("{compared} braid closures and 128 resolutions of P1 match the state sum"))
}

fn criterion_6(table: &KnotTable) -> Outcome {
    let mut shadows = vec![p1(), p2(), four_plat(&[3], true).unwrap(), parse_pd("P(1,2,2,1)").unwrap()];
    for (m, n) in [(2, 4), (4, 2)] {
        let f = family(m, n).map_err(|e| e.to_string())?;
        shadows.extend([f.first, f.second]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    shadows.extend((0..10).map(|_| random_shadow_with_sites(&mut rng, 9).0));
    for d in &shadows {
        ensure(ws(d, table).is_mirror_symmetric(table), format!("asymmetric were-set for {d:?}"))?;
    }
    Ok(format!("{} shadows have mirror-symmetric were-sets", shadows.len()))
}

fn criterion_7(table: &KnotTable) -> Outcome {
    let t = ws(&four_plat(&[3], true).unwrap(), table);
    let expected: BTreeMap<String, u64> = [("0_1", 6), ("3_1", 1), ("-3_1", 1)].map(|(k, n)| (k.to_string(), n)).into();
    ensure(t.total() == 8 && counts(&t) == expected, format!("trefoil shadow gives {}", t.brace_notation()))?;
    let k = ws(&parse_pd("P(1,2,2,1)").unwrap(), table);
    ensure(k.probability(KnotName::UNKNOT) == 1.into() && k.counts().len() == 1, "kink is not trivial")?;
    Ok(format!("trefoil shadow {}, kink {}", t.brace_notation(), k.brace_notation()))
}

fn criterion_8(table: &KnotTable) -> Outcome {
    ensure(table.len() == 27, format!("{} entries", table.len()))?;
    ensure(*table == KnotTable::standard(), "bundled table differs from the recomputed one")?;
    let polys: BTreeSet<String> = table.entries().iter().map(|e| e.jones.to_compact()).collect();
    ensure(polys.len() == 27, "repeated polynomials")?;
    for e in table.entries() {
        let mirror = if e.amphichiral { e.name } else { e.name.mirrored() };
        let m = table.get(mirror).ok_or(format!("no mirror for {}", e.name))?;
        ensure(m.jones == e.jones.reciprocal(), format!("mirror mismatch at {}", e.name))?;
        ensure(e.amphichiral == (e.jones == e.jones.reciprocal()), format!("amphichirality of {}", e.name))?;
    }
    let amph: Vec<String> = table.entries().iter().filter(|e| e.amphichiral).map(|e| e.name.to_string()).collect();
    Ok(format!("27 distinct entries, amphichiral {}", amph.join(" ")))
}

fn main() {
    let table = KnotTable::bundled();
    let results: Vec<Outcome> = vec![
        criterion_1(&table),
        criterion_2(&table),
        criterion_3(&table),
        criterion_4(),
        criterion_5(),
        criterion_6(&table),
        criterion_7(&table),
        criterion_8(&table),
    ];
    let mut failed = 0;
    for (k, r) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("PASS criterion {}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {msg}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
