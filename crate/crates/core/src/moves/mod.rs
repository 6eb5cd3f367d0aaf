//! Rewrites of diagrams: Reidemeister-type moves on Gauss diagrams and
//! shadow flypes on planar and chord diagrams.

pub mod chord_flype;
pub mod family;
pub mod flype;
pub mod gauss_moves;

pub use chord_flype::{chord_flype, chord_site_of, ChordFlypeError, ChordFlypeSite, FlypeType};
pub use family::{family, p1, p1_flype_site, p2, random_shadow_with_sites, scramble_bases, FamilyError, FlypePair};
pub use flype::{check_site, find_flype_sites, shadow_flype_pd, FlypeError, FlypeSite};
pub use gauss_moves::{
    apply_move, enumerate_sites, scramble, scramble_with, MoveError, MoveKind, MoveSite, Scramble, INSERT_BIAS,
};
