//! Reading diagrams from files or standard input.

use std::fs;
use std::io::Read;
use std::path::Path;

use clap::ValueEnum;
use pseudoknot::{parse_gauss, parse_pd, PseudoGaussDiagram, PseudoPD};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Pd,
    Gauss,
}

pub enum Diagram {
    Pd(PseudoPD),
    Gauss(PseudoGaussDiagram),
}

/// PD terms start with `X` or `P(`; Gauss tokens with `O`, `U`, `Ph`, `Pt`.
/// Blank input is the trivial Gauss diagram.
pub fn detect(text: &str) -> Result<InputFormat, CliError> {
    let t = text.trim_start();
    if t.is_empty() || t.starts_with(['O', 'U']) || t.starts_with("Ph") || t.starts_with("Pt") {
        Ok(InputFormat::Gauss)
    } else if t.starts_with('X') || t.starts_with('P') {
        Ok(InputFormat::Pd)
    } else {
        Err(CliError::User(format!("cannot tell the input format from {:?}", t.chars().take(8).collect::<String>())))
    }
}

impl Diagram {
    /// Reads `path`, or standard input for `-`.
    pub fn load(path: &Path, format: InputFormat) -> Result<Diagram, CliError> {
        let text = if path == Path::new("-") {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::User(format!("stdin: {e}")))?;
            s
        } else {
            fs::read_to_string(path).map_err(|e| CliError::User(format!("{}: {e}", path.display())))?
        };
        let format = match format {
            InputFormat::Auto => detect(&text)?,
            f => f,
        };
        let parse_err = |e: pseudoknot::DiagramError| CliError::User(format!("{}: {e}", path.display()));
        match format {
            InputFormat::Gauss => parse_gauss(text.trim()).map(Diagram::Gauss).map_err(parse_err),
            _ => parse_pd(text.trim()).map(Diagram::Pd).map_err(parse_err),
        }
    }

    pub fn to_gauss(&self) -> PseudoGaussDiagram {
        match self {
            Diagram::Pd(d) => d.to_gauss(),
            Diagram::Gauss(g) => g.clone(),
        }
    }

    pub fn precrossing_ids(&self) -> Vec<u32> {
        match self {
            Diagram::Pd(d) => d.precrossing_ids(),
            Diagram::Gauss(g) => g.precrossing_ids(),
        }
    }

    pub fn format_name(&self) -> &'static str {
        match self {
            Diagram::Pd(_) => "pd",
            Diagram::Gauss(_) => "gauss",
        }
    }

    /// Commands that need planar structure reject Gauss input.
    pub fn require_pd(self, command: &str) -> Result<PseudoPD, CliError> {
        match self {
            Diagram::Pd(d) => Ok(d),
            Diagram::Gauss(_) => Err(CliError::User(format!("{command} needs a PD code, got a Gauss diagram"))),
        }
    }
}
