//! Shadow flypes on planar diagrams.
//!
//! A site is a precrossing `c` and a set `T` of precrossings such that two
//! adjacent edges of `c` run into `T` and exactly two further edges leave
//! `T`. The flype turns `T` over (a reflection in the plane, so its internal
//! rotation order reverses) and moves `c` to the other side of `T`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::pd::{RawKind, RawVertex};
use crate::diagram::{DiagramError, PseudoPD};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlypeSite {
    /// Id of the precrossing moved across the tangle.
    pub crossing: u32,
    /// Slot of `crossing` whose edge, together with the next slot
    /// counterclockwise, runs into the tangle.
    pub slot: u8,
    /// Vertex ids of the tangle.
    pub tangle: BTreeSet<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlypeError {
    #[error("vertex {0} does not exist")]
    NoVertex(u32),
    #[error("vertex {0} is not a precrossing")]
    NotPrecrossing(u32),
    #[error("slot {0} is out of range")]
    BadSlot(u8),
    #[error("the tangle must not contain the flype crossing")]
    CrossingInTangle,
    #[error("invalid flype site: {0}")]
    Site(String),
    #[error("flype result is invalid: {0}")]
    Result(#[from] DiagramError),
    #[error("{0} vertices are too many for exhaustive site search")]
    TooLarge(usize),
}

/// The four edges joining a tangle to the rest, by dart.
struct Boundary {
    c: usize,
    /// Dart `4 * vertex + slot` on each side of each boundary edge.
    x_t: usize,
    y_t: usize,
    f_t: usize,
    g_t: usize,
    x_out: usize,
    y_out: usize,
    f_out: usize,
    g_out: usize,
}

fn partner_map(raw: &[RawVertex]) -> Vec<usize> {
    let mut first: HashMap<usize, usize> = HashMap::new();
    let mut partner = vec![0; 4 * raw.len()];
    for (vi, v) in raw.iter().enumerate() {
        for (s, &e) in v.edges.iter().enumerate() {
            let d = 4 * vi + s;
            if let Some(o) = first.remove(&e) {
                partner[d] = o;
                partner[o] = d;
            } else {
                first.insert(e, d);
            }
        }
    }
    partner
}

fn boundary(raw: &[RawVertex], partner: &[usize], site: &FlypeSite) -> Result<Boundary, FlypeError> {
    let index: HashMap<u32, usize> = raw.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
    let c = *index.get(&site.crossing).ok_or(FlypeError::NoVertex(site.crossing))?;
    if site.slot > 3 {
        return Err(FlypeError::BadSlot(site.slot));
    }
    if site.tangle.contains(&site.crossing) {
        return Err(FlypeError::CrossingInTangle);
    }
    let mut in_t = vec![false; raw.len()];
    for id in &site.tangle {
        let v = *index.get(id).ok_or(FlypeError::NoVertex(*id))?;
        in_t[v] = true;
    }
    for (vi, v) in raw.iter().enumerate() {
        if (in_t[vi] || vi == c) && v.kind != RawKind::Precrossing {
            return Err(FlypeError::NotPrecrossing(v.id));
        }
    }
    let bad = |m: &str| Err(FlypeError::Site(m.to_string()));
    let i = site.slot as usize;
    let dart = |s: usize| 4 * c + (i + s) % 4;
    let (x_t, y_t) = (partner[dart(0)], partner[dart(1)]);
    let (x_out, y_out) = (partner[dart(2)], partner[dart(3)]);
    if !in_t[x_t / 4] || !in_t[y_t / 4] {
        return bad("the two chosen edges must run into the tangle");
    }
    if x_out / 4 == c || y_out / 4 == c || in_t[x_out / 4] || in_t[y_out / 4] {
        return bad("the outer edges of the crossing must lead outside the tangle");
    }
    let legs: Vec<usize> = (0..partner.len()).filter(|&d| in_t[d / 4] && !in_t[partner[d] / 4]).collect();
    if legs.len() != 4 {
        return bad("the tangle must have exactly four boundary edges");
    }
    // Walk around the tangle boundary, counterclockwise from x.
    let mut order = vec![x_t];
    let mut d = x_t;
    for _ in 0..partner.len() + 4 {
        d = d - d % 4 + (d % 4 + 1) % 4;
        if in_t[partner[d] / 4] {
            d = partner[d];
            continue;
        }
        if d == x_t {
            break;
        }
        order.push(d);
    }
    if order.len() != 4 || order[3] != y_t {
        return bad("the boundary edges are not met in the order x, f, g, y");
    }
    let (f_t, g_t) = (order[1], order[2]);
    let (f_out, g_out) = (partner[f_t], partner[g_t]);
    if f_out / 4 == c || g_out / 4 == c {
        return bad("the far boundary edges must not return to the crossing");
    }
    Ok(Boundary { c, x_t, y_t, f_t, g_t, x_out, y_out, f_out, g_out })
}

/// Applies the flype. An empty tangle leaves the diagram unchanged.
pub fn shadow_flype_pd(d: &PseudoPD, site: &FlypeSite) -> Result<PseudoPD, FlypeError> {
    if site.tangle.is_empty() {
        let id = site.crossing;
        return match d.vertex_index(id).map(|v| d.vertices()[v].is_precrossing()) {
            Some(true) => Ok(d.clone()),
            Some(false) => Err(FlypeError::NotPrecrossing(id)),
            None => Err(FlypeError::NoVertex(id)),
        };
    }
    let raw = d.to_raw();
    let partner = partner_map(&raw);
    let b = boundary(&raw, &partner, site)?;

    // Rebuild with fresh edge keys: one per dart pair.
    let mut link: HashMap<usize, usize> = HashMap::new();
    let mut join = |a: usize, z: usize| {
        link.insert(a, z);
        link.insert(z, a);
    };
    let c_new = 4 * b.c;
    for (dd, &o) in partner.iter().enumerate() {
        let touches = |x: usize| x / 4 == b.c || x == b.f_t || x == b.g_t;
        if !touches(dd) && !touches(o) {
            join(dd, o);
        }
    }
    join(b.x_out, b.x_t);
    join(b.y_out, b.y_t);
    // c' counterclockwise: g_out, f_t, g_t, f_out.
    join(c_new, b.g_out);
    join(c_new + 1, b.f_t);
    join(c_new + 2, b.g_t);
    join(c_new + 3, b.f_out);

    let in_t = |vi: usize| site.tangle.contains(&raw[vi].id);
    let mut key: HashMap<usize, usize> = HashMap::new();
    let mut next = 0;
    let mut out = Vec::with_capacity(raw.len());
    for (vi, v) in raw.iter().enumerate() {
        let mut edges = [0usize; 4];
        for (s, e) in edges.iter_mut().enumerate() {
            let dd = 4 * vi + s;
            *e = match key.get(&dd) {
                Some(&k) => k,
                None => {
                    key.insert(link[&dd], next);
                    next += 1;
                    next - 1
                }
            };
        }
        if in_t(vi) {
            edges = [edges[0], edges[3], edges[2], edges[1]];
        }
        out.push(RawVertex { id: v.id, kind: v.kind, edges });
    }
    // Slot 0 of every vertex other than the flype crossing keeps its
    // direction, so starting there preserves the orientation of the knot.
    let start = (0..raw.len()).find(|&v| v != b.c).map_or(0, |v| 4 * v);
    Ok(PseudoPD::from_raw_oriented(&out, start)?)
}

/// Checks a site without building the result.
pub fn check_site(d: &PseudoPD, site: &FlypeSite) -> Result<(), FlypeError> {
    let raw = d.to_raw();
    boundary(&raw, &partner_map(&raw), site).map(|_| ())
}

/// Every valid site with a non-empty tangle, by exhaustive search over
/// tangles. Limited to diagrams of at most 20 vertices.
pub fn find_flype_sites(d: &PseudoPD) -> Result<Vec<FlypeSite>, FlypeError> {
    let n = d.crossing_count();
    if n > 20 {
        return Err(FlypeError::TooLarge(n));
    }
    let raw = d.to_raw();
    let partner = partner_map(&raw);
    let mut sites = Vec::new();
    for c in 0..n {
        if raw[c].kind != RawKind::Precrossing {
            continue;
        }
        let others: Vec<usize> = (0..n).filter(|&v| v != c).collect();
        for slot in 0..4u8 {
            for mask in 1u64..1 << others.len() {
                let tangle: BTreeSet<u32> =
                    others.iter().enumerate().filter(|&(j, _)| mask >> j & 1 == 1).map(|(_, &v)| raw[v].id).collect();
                let site = FlypeSite { crossing: raw[c].id, slot, tangle };
                if boundary(&raw, &partner, &site).is_ok() && shadow_flype_pd(d, &site).is_ok() {
                    sites.push(site);
                }
            }
        }
    }
    Ok(sites)
}
