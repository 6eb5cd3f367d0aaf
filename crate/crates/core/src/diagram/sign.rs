use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

/// Crossing sign (handedness) of a classical crossing, or the sign chosen
/// when a precrossing is resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    /// Accepts `+`, `-` and the typographic minus `−`.
    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Positive),
            '-' | '−' => Some(Sign::Negative),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self.flip()
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value() as i8
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> Result<Sign, String> {
        match v {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}
