//! Contracting geodesics in Cayley graphs of right-angled Artin groups, the
//! cone-type automata recognising them, and the growth of their languages.

pub mod automata;
pub mod cayley;
pub mod cones;
pub mod contraction;
pub mod error;
pub mod group;
pub mod langstats;
pub mod reference;

pub use automata::{Automaton, AutomatonBuilder, CountSequence};
pub use cones::{
    build_cone_automaton, k_tail, local_contracting_type, ConeAutomaton, ConeDiagnostics,
};
pub use contraction::{ContractionChecker, Horizon, Verdict, Witness};
pub use error::{Error, Result};
pub use group::{Letter, NormalForm, Presentation, Word};
pub use langstats::{
    growth_rate, series_from_automaton, GrowthRate, IntPolynomial, RationalSeriesForm,
};
