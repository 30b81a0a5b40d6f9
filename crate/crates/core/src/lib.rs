//! Standard bases, Hilbert–Samuel data and free resolutions for ideals and
//! submodules of formal power series rings K[[x_1, ..., x_n]] under a local
//! degree ordering.
//!
//! Everything is generic over [`Field`]; the aliases below fix the two
//! coefficient fields shipped with the crate.
//!
//! ```
//! use hironaka::{standard_basis, PrimeField, SeriesVec};
//!
//! let f = PrimeField::new(32003).unwrap();
//! let cusp = SeriesVec::monomial(vec![2, 0], f.from_i64(1)).add(&SeriesVec::monomial(vec![0, 3], f.from_i64(1)));
//! let xy = SeriesVec::monomial(vec![1, 1], f.from_i64(1));
//! let sb = standard_basis(&[cusp, xy]).unwrap();
//! assert_eq!(sb.elements.len(), 3); // x^2 + y^3, xy, y^4
//! ```

pub mod coeff;
pub mod division;
pub mod error;
pub mod hilbert;
mod homogenized;
pub mod resolution;
pub mod ringprops;
pub mod series;
pub mod stdbasis;

pub use coeff::{ArithError, Field, FieldKind, PrimeField, Rational, Zp};
pub use division::{
    has_standard_representation, has_standard_representation_with, lead_normal_form, lead_remainder, weak_normal_form, weak_normal_form_with, DivisionOptions,
    DivisionResult, StandardRepresentation,
};
pub use error::{Error, Result};
pub use hilbert::{hs_function, hs_polynomial, krull_dimension, HilbertData};
pub use resolution::{
    build_resolution, minimal_generators, minimalize, schreyer_resolution, syzygies, BettiTable, FreeResolution,
    ModuleMatrix,
};
pub use ringprops::{
    candidate_mu0, compare_truncation, empirical_mu0, flatness_check, ring_report, truncate_ideal, FlatnessReport,
    MapSpec, RingReport, TruncationLab, TruncationReport,
};
pub use series::{s_series, Alpha, Exponent, Initial, SSeries, SeriesVec};
pub use stdbasis::{diagram_of, is_member, is_standard_basis, standard_basis, Diagram, StdBasis};

pub type QSeries = SeriesVec<Rational>;
pub type ZpSeries = SeriesVec<Zp>;
pub type QStdBasis = StdBasis<Rational>;
pub type ZpStdBasis = StdBasis<Zp>;
pub type QResolution = FreeResolution<Rational>;
pub type ZpResolution = FreeResolution<Zp>;
