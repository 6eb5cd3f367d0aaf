//! Signed weighted resolution sets: every resolution of a pseudodiagram,
//! classified, with exact probabilities.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bracket::{BracketError, Classification, KnotName, KnotTable, LaurentPolynomial};
use crate::diagram::PseudoPD;

/// Largest number of precrossings accepted for exhaustive enumeration.
pub const MAX_PRECROSSINGS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WereSetError {
    #[error("{0} precrossings exceed the enumeration limit of {MAX_PRECROSSINGS}")]
    TooManyPrecrossings(usize),
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error("failed to start worker pool: {0}")]
    Pool(String),
}

/// Resolution counts per knot type out of `2^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WereSet {
    precrossings: u32,
    counts: BTreeMap<Classification, u64>,
}

impl WereSet {
    pub fn precrossings(&self) -> u32 {
        self.precrossings
    }

    pub fn total(&self) -> u64 {
        1u64 << self.precrossings
    }

    /// Known knot types with their counts, in table order.
    pub fn known(&self) -> impl Iterator<Item = (KnotName, u64)> + '_ {
        self.counts.iter().filter_map(|(c, &n)| match c {
            Classification::Known(k) => Some((*k, n)),
            Classification::Unknown(_) => None,
        })
    }

    /// Resolutions outside the table, grouped by Jones polynomial.
    pub fn unknown(&self) -> impl Iterator<Item = (&LaurentPolynomial, u64)> + '_ {
        self.counts.iter().filter_map(|(c, &n)| match c {
            Classification::Unknown(p) => Some((p, n)),
            Classification::Known(_) => None,
        })
    }

    pub fn count(&self, name: KnotName) -> u64 {
        self.counts.get(&Classification::Known(name)).copied().unwrap_or(0)
    }

    pub fn probability(&self, name: KnotName) -> Ratio<u64> {
        Ratio::new(self.count(name), self.total())
    }

    pub fn counts(&self) -> &BTreeMap<Classification, u64> {
        &self.counts
    }

    /// `{{0_1,72},{-3_1,10},...}` with unknown buckets appended as
    /// `{?<jones>,count}`.
    pub fn brace_notation(&self) -> String {
        let mut parts: Vec<String> = self.known().map(|(k, n)| format!("{{{k},{n}}}")).collect();
        parts.extend(self.unknown().map(|(p, n)| format!("{{?{},{n}}}", p.display("t"))));
        format!("{{{}}}", parts.join(","))
    }

    /// Whether `p_K = p_{-K}` for every `K`, amphichiral names being their
    /// own mirror and unknown buckets pairing with the reciprocal polynomial.
    pub fn is_mirror_symmetric(&self, table: &KnotTable) -> bool {
        let known = self.known().all(|(k, n)| {
            let amphichiral = table.get(k).is_some_and(|e| e.amphichiral);
            amphichiral || self.count(k.mirrored()) == n
        });
        let unknown =
            self.unknown().all(|(p, n)| self.counts.get(&Classification::Unknown(p.reciprocal())) == Some(&n));
        known && unknown
    }
}

/// Equality of were-sets as name-to-probability maps.
pub fn wereset_equal(a: &WereSet, b: &WereSet) -> bool {
    let probs = |w: &WereSet| -> BTreeMap<Classification, Ratio<u64>> {
        w.counts.iter().map(|(c, &n)| (c.clone(), Ratio::new(n, w.total()))).collect()
    };
    probs(a) == probs(b)
}

/// Enumerates all `2^k` resolutions with `workers` threads.
pub fn wereset(d: &PseudoPD, table: &KnotTable, workers: usize) -> Result<WereSet, WereSetError> {
    let k = d.precrossing_count();
    if k > MAX_PRECROSSINGS {
        return Err(WereSetError::TooManyPrecrossings(k));
    }
    if workers == 0 {
        return Err(WereSetError::NoWorkers);
    }
    let total = 1u64 << k;
    let classify_range = |lo: u64, hi: u64| -> Result<BTreeMap<Classification, u64>, WereSetError> {
        let mut m = BTreeMap::new();
        for mask in lo..hi {
            *m.entry(table.classify(&d.resolve_mask(mask))?).or_insert(0) += 1;
        }
        Ok(m)
    };
    let counts = if workers == 1 || total < 64 {
        classify_range(0, total)?
    } else {
        let chunk = total.div_ceil(4 * workers as u64).max(1);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| WereSetError::Pool(e.to_string()))?;
        let parts: Vec<_> = pool.install(|| {
            (0..total.div_ceil(chunk))
                .into_par_iter()
                .map(|c| classify_range(c * chunk, ((c + 1) * chunk).min(total)))
                .collect::<Result<Vec<_>, _>>()
        })?;
        let mut m = BTreeMap::new();
        for part in parts {
            for (c, n) in part {
                *m.entry(c).or_insert(0) += n;
            }
        }
        m
    };
    debug_assert_eq!(counts.values().sum::<u64>(), total);
    Ok(WereSet { precrossings: k as u32, counts })
}

impl fmt::Display for WereSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, n) in self.known() {
            writeln!(f, "{k}\t{n}/{}\t{}", self.total(), Ratio::new(n, self.total()))?;
        }
        for (p, n) in self.unknown() {
            writeln!(f, "?{}\t{n}/{}\t{}", p.display("t"), self.total(), Ratio::new(n, self.total()))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct EntryRepr {
    knot: String,
    count: u64,
    probability: String,
}

#[derive(Serialize)]
struct UnknownRepr {
    jones: String,
    count: u64,
    probability: String,
}

#[derive(Serialize)]
struct WereSetRepr {
    precrossings: u32,
    total: u64,
    entries: Vec<EntryRepr>,
    unknown: Vec<UnknownRepr>,
}

impl Serialize for WereSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let prob = |n: u64| {
            let r = Ratio::new(n, self.total());
            format!("{}/{}", r.numer(), r.denom())
        };
        WereSetRepr {
            precrossings: self.precrossings,
            total: self.total(),
            entries: self
                .known()
                .map(|(k, n)| EntryRepr { knot: k.to_string(), count: n, probability: prob(n) })
                .collect(),
            unknown: self
                .unknown()
                .map(|(p, n)| UnknownRepr { jones: p.to_compact(), count: n, probability: prob(n) })
                .collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::four_plat;
    use crate::parse_pd;

    fn name(s: &str) -> KnotName {
        s.parse().unwrap()
    }

    #[test]
    fn kink_shadow_is_unknotted() {
        let t = KnotTable::standard();
        let w = wereset(&parse_pd("P(1,2,2,1)").unwrap(), &t, 1).unwrap();
        assert_eq!(w.total(), 2);
        assert_eq!(w.brace_notation(), "{{0_1,2}}");
        assert_eq!(w.probability(KnotName::UNKNOT), Ratio::new(1, 1));
    }

    #[test]
    fn trefoil_shadow() {
        let t = KnotTable::standard();
        let w = wereset(&four_plat(&[3], true).unwrap(), &t, 1).unwrap();
        assert_eq!(w.brace_notation(), "{{0_1,6},{-3_1,1},{3_1,1}}");
        assert_eq!(w.probability(name("3_1")), Ratio::new(1, 8));
        assert!(w.is_mirror_symmetric(&t));
    }

    #[test]
    fn workers_do_not_change_the_result() {
        let t = KnotTable::standard();
        let d = four_plat(&[2, 1, 1, 1, 2], true).unwrap();
        let one = wereset(&d, &t, 1).unwrap();
        let many = wereset(&d, &t, 8).unwrap();
        assert_eq!(one, many);
        assert_eq!(one.brace_notation(), many.brace_notation());
    }

    #[test]
    fn json_shape() {
        let t = KnotTable::standard();
        let w = wereset(&four_plat(&[3], true).unwrap(), &t, 1).unwrap();
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["precrossings"], 3);
        assert_eq!(v["total"], 8);
        assert_eq!(v["entries"][0]["knot"], "0_1");
        assert_eq!(v["entries"][0]["probability"], "3/4");
        assert!(v["unknown"].as_array().unwrap().is_empty());
    }

    #[test]
    fn zero_workers_rejected() {
        let t = KnotTable::standard();
        assert_eq!(wereset(&PseudoPD::unknot(), &t, 0), Err(WereSetError::NoWorkers));
    }

    #[test]
    fn asymmetric_sets_are_detected() {
        let t = KnotTable::standard();
        let d = parse_pd("X+(1,1,2,2)").unwrap();
        let w = wereset(&d, &t, 1).unwrap();
        assert!(w.is_mirror_symmetric(&t));
        let tref = crate::diagram::build::braid_closure(2, &[(0, crate::diagram::build::Cross::Positive); 3]).unwrap();
        assert!(!wereset(&tref, &t, 1).unwrap().is_mirror_symmetric(&t));
    }
}
