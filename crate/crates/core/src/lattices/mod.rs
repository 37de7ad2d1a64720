//! Lattices in almost nilpotent groups and their certificates.

mod certificate;
mod exp;
mod time;

pub use certificate::{
    format_matrix, hyperbolic_conjugator, verify_certificate, CertificateReport, CheckLine, ColumnSpec,
    Conjugator, Generator, LatticeCertificate,
};
pub use exp::{
    exp_exact, parse_monomial, to_integer_matrix, unit_pivot_inverse, DerivationPart, Exact, PartShape,
    Plane, StructuredDerivation, UnitSpec,
};
pub use time::{unit_time, TimeValue};
