pub mod bitset;
pub mod certificate;
pub mod codes;
pub mod construction;
pub mod error;
pub mod exact_cover;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod poly;
pub mod recipe;
pub mod regularity;
pub mod reproduce;
pub mod spectral;
pub mod switching;

pub use error::{Error, Result};
pub use graph::Graph;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/construction.md")]
    mod construction {}
    #[doc = include_str!("../../../book/src/switching.md")]
    mod switching {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/isomorphism.md")]
    mod isomorphism {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/reproducing.md")]
    mod reproducing {}
}
