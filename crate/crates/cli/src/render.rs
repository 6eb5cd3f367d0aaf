//! Deterministic SVG drawings of Gauss and chord diagrams.
//!
//! The core circle is traversed counterclockwise starting at the top.
//! Classical arrows run from the over-passage to the under-passage and carry
//! their sign; precrossing chords are bold.

use std::fmt::Write;

use pseudoknot::diagram::{End, Role, Token};
use pseudoknot::{DecoratedChordDiagram, PseudoGaussDiagram};

const SIZE: f64 = 400.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 150.0;

fn point(k: usize, n: usize, r: f64) -> (f64, f64) {
    let theta = std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * k as f64 / n as f64;
    (CENTER + r * theta.cos(), CENTER - r * theta.sin())
}

fn header() -> String {
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    s.push_str(concat!(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="8" markerHeight="8" "#,
        r#"orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#,
        "\n"
    ));
    writeln!(
        s,
        r#"<circle cx="{CENTER:.2}" cy="{CENTER:.2}" r="{RADIUS:.2}" fill="none" stroke="black" stroke-width="1.5"/>"#
    )
    .unwrap();
    // Orientation tick at the top, pointing counterclockwise (to the left).
    let (x, y) = (CENTER, CENTER - RADIUS);
    writeln!(
        s,
        r#"<path d="M{:.2},{:.2} L{:.2},{:.2}" stroke="black" marker-end="url(#arrow)"/>"#,
        x + 6.0,
        y,
        x - 6.0,
        y
    )
    .unwrap();
    s
}

fn chord(s: &mut String, from: (f64, f64), to: (f64, f64), width: f64, arrow: bool) {
    let marker = if arrow { r#" marker-end="url(#arrow)""# } else { "" };
    writeln!(
        s,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="{width}"{marker}/>"#,
        from.0, from.1, to.0, to.1
    )
    .unwrap();
}

fn label(s: &mut String, at: (f64, f64), text: &str) {
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{text}</text>"#, at.0, at.1 + 4.0)
        .unwrap();
}

fn midpoint(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
}

pub fn gauss_svg(g: &PseudoGaussDiagram) -> String {
    let mut s = header();
    let t = g.tokens();
    let n = t.len();
    let mut pos = g.positions().into_iter().collect::<Vec<_>>();
    pos.sort_unstable();
    for (id, (i, j)) in pos {
        // Arrows start at the over-passage or at the tail.
        let starts_at_i = matches!(t[i], Token::Classical { role: Role::Over, .. } | Token::Pre { end: End::Tail, .. });
        let (a, b) = if starts_at_i { (i, j) } else { (j, i) };
        let (pa, pb) = (point(a, n, RADIUS), point(b, n, RADIUS));
        match t[i].sign() {
            Some(sign) => {
                chord(&mut s, pa, pb, 1.5, true);
                label(&mut s, midpoint(pa, pb), &sign.to_string());
            }
            None => chord(&mut s, pa, pb, 4.0, true),
        }
        for k in [i, j] {
            label(&mut s, point(k, n, RADIUS + 16.0), &id.to_string());
        }
    }
    s.push_str("</svg>\n");
    s
}

pub fn chord_svg(c: &DecoratedChordDiagram) -> String {
    let mut s = header();
    let n = c.positions();
    for (a, b, d) in c.chords() {
        let (pa, pb) = (point(a, n, RADIUS), point(b, n, RADIUS));
        chord(&mut s, pa, pb, 4.0, false);
        label(&mut s, midpoint(pa, pb), &d.to_string());
    }
    s.push_str("</svg>\n");
    s
}
