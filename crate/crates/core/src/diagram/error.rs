use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("edge label {label} appears {count} times (expected 2)")]
    EdgeMultiplicity { label: u32, count: usize },

    #[error("crossing id {id} appears {count} times (expected 2)")]
    IdMultiplicity { id: u32, count: usize },

    #[error("duplicate vertex id {0}")]
    DuplicateVertex(u32),

    #[error("diagram has more than one component ({visited} of {total} strand passages reached from the start)")]
    MultiComponent { visited: usize, total: usize },

    #[error("vertex {id}: first edge label is not an incoming edge of the traversal")]
    Orientation { id: u32 },

    #[error("vertex {id}: stored sign {stored} disagrees with the strand orientation")]
    SignMismatch { id: u32, stored: i64 },

    #[error("crossing {id}: tokens carry mismatched roles or signs")]
    TokenMismatch { id: u32 },

    #[error("diagram is not planar ({faces} faces for {vertices} vertices)")]
    NonPlanar { faces: usize, vertices: usize },

    #[error("resolution does not match the precrossings: {0}")]
    Choice(String),

    #[error("chord endpoints do not form a perfect matching: {0}")]
    Matching(String),
}
