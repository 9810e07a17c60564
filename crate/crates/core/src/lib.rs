//! Exact computation in self-similar groups of rooted tree automorphisms,
//! with the Basilica group as the main worked instance.

pub mod basilica;
pub mod checks;
pub mod element;
pub mod error;
pub mod expr;
pub mod heisenberg;
pub mod maximal;
pub mod norm;
pub mod perm;
pub mod permgrp;
pub mod portrait;
pub mod system;
pub mod vertex;
pub mod word;

pub use basilica::{AbImage, BPrimeCoords};
pub use element::Element;
pub use error::{Error, Result};
pub use expr::Expr;
pub use heisenberg::HeisenbergElement;
pub use perm::Permutation;
pub use permgrp::SubgroupHandle;
pub use portrait::Portrait;
pub use system::GeneratorSystem;
pub use vertex::Vertex;
pub use word::{free_reduce, Letter, Word};

pub const ENGINE_VERSION: &str = concat!("wreath-core ", env!("CARGO_PKG_VERSION"));
