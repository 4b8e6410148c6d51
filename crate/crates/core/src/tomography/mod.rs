//! Measurement planning, shot sampling and Pauli expectation estimation.

mod counts;
mod expectations;
mod label;
mod plan;
mod sampling;

pub use counts::{bits_to_index, index_to_bits};
pub use counts::{CountTable, FrequencyTable, OutcomeTable};
pub use expectations::{exact_expectations, ExpectationSet, PairValues, EXACT_SLACK};
pub use label::{MeasurementSetting, PauliLabel, PauliMode, FULL_PAIR_LABELS, REAL_PAIR_LABELS};
pub use plan::{all_pairs, plan_settings, TomographyPlan};
pub use sampling::{
    expectations_from_counts, sample_counts, sample_plan, MeasurableState, DEFAULT_SHOTS,
};
