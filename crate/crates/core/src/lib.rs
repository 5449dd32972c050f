//! Exact linear-algebra toolkit for classifying finite matrix groups:
//! number-field arithmetic, representation decomposition, invariant forms,
//! Hodge-theoretic shape checks, and elliptic-fibration bookkeeping.

pub mod error;
pub mod factor;
pub mod fibration;
pub mod field;
pub mod fixtures;
pub mod forms;
pub mod hodge;
pub mod isotypic;
pub mod matrix;
pub mod poly;
pub mod rep;

pub use error::{Error, Result};
pub use fibration::{
    CompactClass, CoverReport, FibrationDescriptor, KodairaType, SL2ZElement,
};
pub use field::{FieldElement, NumberField, Sign, Q};
pub use forms::{FormSpace, TrichotomyComponent, TrichotomyReport, TypeLabel};
pub use hodge::{HodgeDatum, IsotrivialClassification, PolarizedHodgeRep};
pub use isotypic::{IsotypicComponent, IsotypicDecomposition};
pub use matrix::{MatrixNF, RowSpan};
pub use poly::Poly;
pub use rep::{GroupData, IntertwinerSpace, Representation};
