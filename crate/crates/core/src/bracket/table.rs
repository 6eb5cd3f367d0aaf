//! Knot names, the Jones-polynomial knot table and classification.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::poly::LaurentPolynomial;
use super::state_sum::{jones, BracketError};
use crate::diagram::build::{four_plat, odd_terms};
use crate::diagram::ResolvedPD;

/// A prime knot `c_i` in Rolfsen numbering, possibly mirrored. The unknot is
/// `0_1`. Mirrors of amphichiral knots are never constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct KnotName {
    pub crossings: u32,
    pub index: u32,
    pub mirror: bool,
}

impl KnotName {
    pub const UNKNOT: KnotName = KnotName { crossings: 0, index: 1, mirror: false };

    pub fn new(crossings: u32, index: u32) -> KnotName {
        KnotName { crossings, index, mirror: false }
    }

    pub fn mirrored(self) -> KnotName {
        KnotName { mirror: !self.mirror, ..self }
    }

    /// The name without chirality sign.
    pub fn base(self) -> KnotName {
        KnotName { mirror: false, ..self }
    }
}

impl Ord for KnotName {
    /// Crossing number, then index, then chirality with the mirror first.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.crossings, self.index, !self.mirror).cmp(&(other.crossings, other.index, !other.mirror))
    }
}

impl PartialOrd for KnotName {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KnotName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.mirror { "-" } else { "" };
        write!(f, "{sign}{}_{}", self.crossings, self.index)
    }
}

impl FromStr for KnotName {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, TableError> {
        let bad = || TableError::Name(s.to_string());
        let (mirror, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let (c, i) = rest.split_once('_').ok_or_else(bad)?;
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits(c) || !digits(i) {
            return Err(bad());
        }
        let name = KnotName { crossings: c.parse().map_err(|_| bad())?, index: i.parse().map_err(|_| bad())?, mirror };
        if name.crossings == 0 && (name.index != 1 || mirror) {
            return Err(bad());
        }
        Ok(name)
    }
}

impl From<KnotName> for String {
    fn from(n: KnotName) -> String {
        n.to_string()
    }
}

impl TryFrom<String> for KnotName {
    type Error = TableError;

    fn try_from(s: String) -> Result<Self, TableError> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("knot table source is empty")]
    Empty,
    #[error("invalid knot name {0:?}")]
    Name(String),
    #[error("{a} and {b} have the same Jones polynomial")]
    DuplicateJones { a: KnotName, b: KnotName },
    #[error("{0} has no mirror entry with the reciprocal Jones polynomial")]
    MirrorMismatch(KnotName),
    #[error("{0} is marked amphichiral but its Jones polynomial is not symmetric")]
    NotAmphichiral(KnotName),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Bracket(#[from] BracketError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub name: KnotName,
    pub crossing_number: u32,
    pub amphichiral: bool,
    pub jones: LaurentPolynomial,
}

/// Result of looking a resolution up in the table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Classification {
    Known(KnotName),
    Unknown(LaurentPolynomial),
}

/// Knot types identified by Jones polynomial, mirrors kept apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotTable {
    entries: Vec<TableEntry>,
    index: HashMap<LaurentPolynomial, usize>,
}

/// Conway notations of the prime knots through seven crossings. All of
/// them are two-bridge, so each has an alternating 4-plat diagram.
pub const CONWAY_NOTATIONS: [((u32, u32), &[u32]); 14] = [
    ((3, 1), &[3]),
    ((4, 1), &[2, 2]),
    ((5, 1), &[5]),
    ((5, 2), &[3, 2]),
    ((6, 1), &[4, 2]),
    ((6, 2), &[3, 1, 2]),
    ((6, 3), &[2, 1, 1, 2]),
    ((7, 1), &[7]),
    ((7, 2), &[5, 2]),
    ((7, 3), &[4, 3]),
    ((7, 4), &[3, 1, 3]),
    ((7, 5), &[3, 2, 2]),
    ((7, 6), &[2, 2, 1, 2]),
    ((7, 7), &[2, 1, 1, 1, 2]),
];

/// Reference diagrams: the unknot and one alternating diagram of each
/// prime knot through seven crossings.
const BUNDLED: &str = include_str!("../../data/knot_table.txt");

pub fn standard_sources() -> Vec<(KnotName, ResolvedPD)> {
    let mut out = vec![(KnotName::UNKNOT, ResolvedPD::unknot())];
    for ((c, i), notation) in CONWAY_NOTATIONS {
        let d = four_plat(&odd_terms(notation), false).expect("4-plats of knots are single-component");
        out.push((KnotName::new(c, i), ResolvedPD::try_from(d).expect("built without precrossings")));
    }
    out
}

/// Which of `p` and its reciprocal gets the unsigned name: the one whose
/// degrees lean negative, with ties broken by the term list.
fn is_unsigned_representative(p: &LaurentPolynomial) -> bool {
    let r = p.reciprocal();
    let lean = |q: &LaurentPolynomial| q.min_degree().unwrap_or(0) + q.max_degree().unwrap_or(0);
    match lean(p).cmp(&lean(&r)) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => p.terms().collect::<Vec<_>>() <= r.terms().collect::<Vec<_>>(),
    }
}

impl KnotTable {
    /// Computes every source's Jones polynomial and adds mirror entries for
    /// chiral knots. Crossing numbers are taken from the names.
    pub fn build(sources: &[(KnotName, ResolvedPD)]) -> Result<KnotTable, TableError> {
        if sources.is_empty() {
            return Err(TableError::Empty);
        }
        let mut entries = Vec::new();
        for (name, diagram) in sources {
            let j = jones(diagram)?;
            let r = j.reciprocal();
            let base = name.base();
            if j == r {
                entries.push(TableEntry { name: base, crossing_number: base.crossings, amphichiral: true, jones: j });
                continue;
            }
            let (plain, mirror) = if is_unsigned_representative(&j) { (j, r) } else { (r, j) };
            for (n, p) in [(base, plain), (base.mirrored(), mirror)] {
                entries.push(TableEntry { name: n, crossing_number: base.crossings, amphichiral: false, jones: p });
            }
        }
        KnotTable::from_entries(entries)
    }

    /// The table shipped with the crate, parsed from its text form.
    pub fn bundled() -> KnotTable {
        KnotTable::from_text(BUNDLED).expect("bundled table is valid")
    }

    /// The table of [`standard_sources`], recomputed from diagrams.
    pub fn standard() -> KnotTable {
        KnotTable::build(&standard_sources()).expect("standard sources satisfy the table invariants")
    }

    /// Sorts entries and checks distinctness and mirror consistency.
    pub fn from_entries(mut entries: Vec<TableEntry>) -> Result<KnotTable, TableError> {
        if entries.is_empty() {
            return Err(TableError::Empty);
        }
        entries.sort_by_key(|e| e.name);
        let mut index = HashMap::new();
        for (k, e) in entries.iter().enumerate() {
            if let Some(prev) = index.insert(e.jones.clone(), k) {
                return Err(TableError::DuplicateJones { a: entries[prev].name, b: e.name });
            }
        }
        let by_name: HashMap<KnotName, &TableEntry> = entries.iter().map(|e| (e.name, e)).collect();
        for e in &entries {
            if e.amphichiral {
                if e.jones != e.jones.reciprocal() || e.name.mirror {
                    return Err(TableError::NotAmphichiral(e.name));
                }
            } else {
                let ok =
                    by_name.get(&e.name.mirrored()).is_some_and(|m| !m.amphichiral && m.jones == e.jones.reciprocal());
                if !ok {
                    return Err(TableError::MirrorMismatch(e.name));
                }
            }
        }
        Ok(KnotTable { entries, index })
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: KnotName) -> Option<&TableEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn lookup(&self, jones: &LaurentPolynomial) -> Classification {
        match self.index.get(jones) {
            Some(&k) => Classification::Known(self.entries[k].name),
            None => Classification::Unknown(jones.clone()),
        }
    }

    pub fn classify(&self, d: &ResolvedPD) -> Result<Classification, BracketError> {
        Ok(self.lookup(&jones(d)?))
    }

    /// One line per entry, blank and `#` lines ignored on input: `name crossing_number amphichiral exp:coeff,...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{} {} {} {}\n", e.name, e.crossing_number, e.amphichiral, e.jones.to_compact()));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<KnotTable, TableError> {
        let mut entries = Vec::new();
        for (k, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| TableError::Parse { line: k + 1, msg: msg.to_string() };
            let fields: Vec<&str> = line.split(' ').collect();
            let [name, cn, amph, poly] = fields[..] else {
                return Err(err("expected 4 space-separated fields"));
            };
            let name: KnotName = name.parse().map_err(|_| err("invalid knot name"))?;
            let crossing_number: u32 = cn.parse().map_err(|_| err("invalid crossing number"))?;
            let amphichiral = match amph {
                "true" => true,
                "false" => false,
                _ => return Err(err("amphichiral must be true or false")),
            };
            let jones = LaurentPolynomial::from_compact(poly).ok_or_else(|| err("invalid polynomial"))?;
            entries.push(TableEntry { name, crossing_number, amphichiral, jones });
        }
        KnotTable::from_entries(entries)
    }
}
