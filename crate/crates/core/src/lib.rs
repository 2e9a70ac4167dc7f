//! Abelian vortices on flat tori and the Kähler quantization of their moduli
//! spaces.

pub mod geometry;
pub mod hilbert;
pub mod modulimetric;
pub mod obstruct;
pub mod symcoh;
pub mod vortexpde;
pub mod zetadet;

pub use geometry::{GeometryError, GreenFunction, ScalarField, Spectral, TorusSpec};
pub use hilbert::{DimensionReport, HilbertError};
pub use modulimetric::{MetricSample, ModuliError, ModuliTangent, Route};
pub use obstruct::{ChernPair, ObstructError, ObstructionReport};
pub use symcoh::{H2Class, SymcohError};
pub use vortexpde::{DivisorSpec, QuantizationSpec, VortexError, VortexSolution};
pub use zetadet::{ZetaError, ZetaResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
