//! Monochromatic fan extraction and verification for 2-colorings of complete graphs.
//!
//! A [`Coloring`] of `K_N` stores black and white neighborhoods as bitsets.
//! [`extract_fan`] walks the case analysis that bounds the fan Ramsey number
//! by `31n/6 + 15` and returns a [`FanCertificate`] that [`verify_fan`] checks
//! without any knowledge of how it was produced.

pub mod bitset;
pub mod coloring;
pub mod covering;
pub mod extractor;
pub mod format;
pub mod matching;
pub mod oracle;
pub mod rng;
pub mod structure;

pub use bitset::VertexSet;
pub use coloring::{context_of, theorem_order, Color, Coloring, ColoringError, Context};
pub use covering::{build_sc, check_cover_invariants, compute_cover, CoverRecord, ScRecord};
pub use extractor::{extract_fan, ExtractError, ExtractionTrace, Mode};
pub use matching::{DeficiencyCertificate, Matching};
pub use structure::{find_clique, find_mono_fan, verify_fan, CliqueWitness, FanCertificate, StructureWitness};
