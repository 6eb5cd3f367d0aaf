//! Gauss diagrams of (possibly virtual) pseudoknots.
//!
//! Text form: comma-separated tokens `O<id><sign>`, `U<id><sign>` for the
//! over- and under-passage of a classical crossing and `Ph<id>`, `Pt<id>`
//! for the head and tail of a precrossing arrow. Arrows run from the
//! over-passage (tail) to the under-passage (head).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::chord::DecoratedChordDiagram;
use super::error::DiagramError;
use super::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn other(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Head,
    Tail,
}

impl End {
    pub fn other(self) -> End {
        match self {
            End::Head => End::Tail,
            End::Tail => End::Head,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Token {
    Classical { id: u32, role: Role, sign: Sign },
    Pre { id: u32, end: End },
}

impl Token {
    pub fn id(&self) -> u32 {
        match *self {
            Token::Classical { id, .. } | Token::Pre { id, .. } => id,
        }
    }

    pub fn is_pre(&self) -> bool {
        matches!(self, Token::Pre { .. })
    }

    pub fn sign(&self) -> Option<Sign> {
        match *self {
            Token::Classical { sign, .. } => Some(sign),
            Token::Pre { .. } => None,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Token::Classical { id, role: Role::Over, sign } => write!(f, "O{id}{sign}"),
            Token::Classical { id, role: Role::Under, sign } => write!(f, "U{id}{sign}"),
            Token::Pre { id, end: End::Head } => write!(f, "Ph{id}"),
            Token::Pre { id, end: End::Tail } => write!(f, "Pt{id}"),
        }
    }
}

/// Cyclic sequence of crossing passages along the core circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GaussRepr", into = "GaussRepr")]
pub struct PseudoGaussDiagram {
    tokens: Vec<Token>,
}

#[derive(Serialize, Deserialize)]
struct GaussRepr {
    tokens: Vec<Token>,
}

impl TryFrom<GaussRepr> for PseudoGaussDiagram {
    type Error = DiagramError;

    fn try_from(r: GaussRepr) -> Result<Self, DiagramError> {
        PseudoGaussDiagram::new(r.tokens)
    }
}

impl From<PseudoGaussDiagram> for GaussRepr {
    fn from(g: PseudoGaussDiagram) -> GaussRepr {
        GaussRepr { tokens: g.tokens }
    }
}

impl PseudoGaussDiagram {
    pub fn new(tokens: Vec<Token>) -> Result<PseudoGaussDiagram, DiagramError> {
        let mut seen: BTreeMap<u32, Vec<Token>> = BTreeMap::new();
        for t in &tokens {
            seen.entry(t.id()).or_default().push(*t);
        }
        for (&id, ts) in &seen {
            if ts.len() != 2 {
                return Err(DiagramError::IdMultiplicity { id, count: ts.len() });
            }
            let ok = match (ts[0], ts[1]) {
                (Token::Classical { role: r1, sign: s1, .. }, Token::Classical { role: r2, sign: s2, .. }) => {
                    r1 != r2 && s1 == s2
                }
                (Token::Pre { end: e1, .. }, Token::Pre { end: e2, .. }) => e1 != e2,
                _ => false,
            };
            if !ok {
                return Err(DiagramError::TokenMismatch { id });
            }
        }
        Ok(PseudoGaussDiagram { tokens })
    }

    pub(crate) fn from_tokens_unchecked(tokens: Vec<Token>) -> PseudoGaussDiagram {
        debug_assert!(PseudoGaussDiagram::new(tokens.clone()).is_ok());
        PseudoGaussDiagram { tokens }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn precrossing_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.tokens.iter().filter(|t| t.is_pre()).map(Token::id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub fn crossing_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.tokens.iter().map(Token::id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Both token positions of every crossing id, in increasing order.
    pub fn positions(&self) -> HashMap<u32, (usize, usize)> {
        let mut first: HashMap<u32, usize> = HashMap::new();
        let mut out = HashMap::new();
        for (i, t) in self.tokens.iter().enumerate() {
            match first.remove(&t.id()) {
                Some(j) => {
                    out.insert(t.id(), (j, i));
                }
                None => {
                    first.insert(t.id(), i);
                }
            }
        }
        out
    }

    /// Resolves precrossings: `+` keeps the arrow and gives sign +1, `-`
    /// reverses it and gives sign -1.
    pub fn resolve(&self, choice: &BTreeMap<u32, Sign>) -> Result<PseudoGaussDiagram, DiagramError> {
        let ids = self.precrossing_ids();
        if choice.len() != ids.len() || ids.iter().any(|id| !choice.contains_key(id)) {
            return Err(DiagramError::Choice(format!(
                "expected signs for precrossings {ids:?}, got {:?}",
                choice.keys().collect::<Vec<_>>()
            )));
        }
        let tokens = self
            .tokens
            .iter()
            .map(|&t| match t {
                Token::Pre { id, end } => {
                    let sign = choice[&id];
                    let head = (end == End::Head) == (sign == Sign::Positive);
                    let role = if head { Role::Under } else { Role::Over };
                    Token::Classical { id, role, sign }
                }
                classical => classical,
            })
            .collect();
        Ok(PseudoGaussDiagram { tokens })
    }

    /// Reverses the arrow of precrossing `id`.
    pub fn flip_precrossing(&self, id: u32) -> PseudoGaussDiagram {
        let tokens = self
            .tokens
            .iter()
            .map(|&t| match t {
                Token::Pre { id: i, end } if i == id => Token::Pre { id, end: end.other() },
                other => other,
            })
            .collect();
        PseudoGaussDiagram { tokens }
    }

    /// Equality as cyclic sequences.
    pub fn cyclic_eq(&self, other: &PseudoGaussDiagram) -> bool {
        let n = self.tokens.len();
        if n != other.tokens.len() {
            return false;
        }
        n == 0 || (0..n).any(|r| (0..n).all(|i| self.tokens[(i + r) % n] == other.tokens[i]))
    }

    /// All crossings as undecorated chords.
    pub fn chord_diagram(&self) -> DecoratedChordDiagram {
        let pos = self.positions();
        let mut chords: Vec<(usize, usize, i64)> = pos.values().map(|&(a, b)| (a, b, 0)).collect();
        chords.sort_unstable();
        DecoratedChordDiagram::from_chords(self.tokens.len(), &chords).expect("token positions form a perfect matching")
    }

    /// Chord diagram of the precrossings only (classical passages dropped).
    pub fn prechord_diagram(&self) -> DecoratedChordDiagram {
        let kept: Vec<Token> = self.tokens.iter().copied().filter(Token::is_pre).collect();
        PseudoGaussDiagram { tokens: kept }.chord_diagram()
    }
}

impl fmt::Display for PseudoGaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PseudoGaussDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, DiagramError> {
        parse_gauss(s)
    }
}

/// Parses the extended Gauss code. An empty (or blank) string is the
/// crossingless diagram.
pub fn parse_gauss(text: &str) -> Result<PseudoGaussDiagram, DiagramError> {
    let mut tokens = Vec::new();
    if text.trim().is_empty() {
        return Ok(PseudoGaussDiagram { tokens });
    }
    let mut offset = 0;
    for raw in text.split(',') {
        let lead = raw.len() - raw.trim_start().len();
        let pos = offset + lead;
        offset += raw.len() + 1;
        let tok = raw.trim();
        let err = |msg: &str| DiagramError::Syntax { pos, msg: format!("{msg} in token {tok:?}") };
        let (kind, rest) = if let Some(r) = tok.strip_prefix("Ph") {
            ('h', r)
        } else if let Some(r) = tok.strip_prefix("Pt") {
            ('t', r)
        } else if let Some(r) = tok.strip_prefix('O') {
            ('O', r)
        } else if let Some(r) = tok.strip_prefix('U') {
            ('U', r)
        } else {
            return Err(err("expected O, U, Ph or Pt"));
        };
        let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(err("expected a crossing id"));
        }
        let id: u32 = digits.parse().map_err(|_| err("crossing id out of range"))?;
        let tail = &rest[digits.len()..];
        let token = match kind {
            'h' | 't' => {
                if !tail.is_empty() {
                    return Err(err("unexpected trailing characters"));
                }
                Token::Pre { id, end: if kind == 'h' { End::Head } else { End::Tail } }
            }
            _ => {
                let mut cs = tail.chars();
                let sign = cs.next().and_then(Sign::from_char).ok_or_else(|| err("expected a sign"))?;
                if cs.next().is_some() {
                    return Err(err("unexpected trailing characters"));
                }
                let role = if kind == 'O' { Role::Over } else { Role::Under };
                Token::Classical { id, role, sign }
            }
        };
        tokens.push(token);
    }
    PseudoGaussDiagram::new(tokens)
}
