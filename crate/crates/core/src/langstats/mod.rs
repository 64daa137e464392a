//! Growth series, linear recurrences and growth rates of regular languages.

mod poly;
mod roots;
mod series;

pub use poly::IntPolynomial;
pub use roots::{growth_rate, GrowthRate};
pub use series::{recurrence_from_series, series_from_automaton, RationalSeriesForm, Recurrence};
