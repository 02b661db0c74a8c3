//! Exact Agol cycles for the pseudo-Anosov families `Φ_p` on the twice-punctured
//! torus and `φ_p` on the five-punctured sphere.

pub mod cfrac;
pub mod cli;
pub mod cycles;
pub mod error;
pub mod matrices;
pub mod quad;
pub mod tracksim;
pub mod words;

pub use cycles::{CycleDescriptor, SplitWord, Step, Surface};
pub use error::{Error, Result};
pub use quad::QuadExt;
pub use words::{Block, ParamWord};
