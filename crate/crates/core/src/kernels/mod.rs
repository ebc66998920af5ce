//! Integer lattices, γ-coordinates, abelian kernel images of block
//! extensions, and the faithfulness chain for `F_2/P_4`.

pub mod faithful;
pub mod gamma;
pub mod lattice;
pub mod orbit;

pub use faithful::*;
pub use gamma::*;
pub use lattice::*;
pub use orbit::*;

use thiserror::Error;

use crate::reps::RepError;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("not of the gamma shape: {0}")]
    GammaShape(String),
    #[error("not a block extension: {0}")]
    NotBlockExtension(String),
    #[error("relator {0} is not in the kernel")]
    NotInKernel(String),
    #[error("block entries are not cyclotomic integers")]
    NonIntegral,
    #[error("orbit lattice did not saturate within {0} rounds")]
    NoFixedPoint(usize),
    #[error("presentation: {0}")]
    Presentation(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}
