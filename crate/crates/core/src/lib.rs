pub mod algebra;
pub mod catalog;
pub mod cstruct;
pub mod error;
pub mod forms;
pub mod hypercomplex;
pub mod lattices;
pub mod matrix;
pub mod pipeline;
pub mod poly;
pub mod scalar;
pub mod sections;
pub mod subspace;
