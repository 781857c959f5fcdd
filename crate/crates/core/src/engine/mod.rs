//! Summation engines: finite Euler–Maclaurin and Boole forms with their
//! remainder integrals, and factorial-series evaluation with adaptive
//! truncation.

pub mod functions;
pub mod quadrature;
pub mod summation;
pub mod truncation;
pub mod weniger;

pub use functions::{Log, Power, SmoothFunction};
pub use quadrature::{integrate, GaussLegendre};
pub use summation::{boole_at_integer, boole_finite, euler_maclaurin_finite};
pub use truncation::{
    adaptive_truncate, adaptive_truncate_from, FactorialSeriesTerm, FormulaResult, Status, TruncationMode,
    TruncationPolicy,
};
pub use weniger::{
    evaluate_series, weniger_transform, Coefficient, CoefficientSeries, DenominatorShift, FactorialSeries, FnSeries,
    SeriesPart,
};
