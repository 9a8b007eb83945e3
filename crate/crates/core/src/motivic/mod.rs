//! Laurent classes in `L`, rational series in `T`, and nearby cycles.

mod expr;
mod gclass;
mod nearby;
mod series;

pub use expr::{evaluate, parse, Expr, Value};
pub use gclass::GClass;
pub use nearby::{component_euler_sum, nearby_cycles, ClassData, MotivicError};
pub use series::{normalize_dr, Generator, RationalSeries, SeriesError, Term, DEFAULT_MAX_D, MAX_EXTRACT_FACTORS};
