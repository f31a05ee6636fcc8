//! Sublinear-time randomized approximation for bin packing.
//!
//! The crate is organised bottom-up:
//!
//! * [`instance`], [`bins`], [`partition`], [`rank`], [`chernoff`] and
//!   [`params`] hold the shared domain types.
//! * [`sampling`] has the seeded generator, the interval estimator and the
//!   reservoir.
//! * [`oracle`] gives exact and greedy reference packers.
//! * [`crucial`], [`lp`] and [`configlp`] build the large-item packing.
//! * [`offline`], [`streaming`] and [`sliding`] are the composed schemes.
//! * [`generate`], [`materialize`] and [`experiment`] back the CLI.

pub mod bins;
pub mod chernoff;
pub mod configlp;
pub mod crucial;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod instance;
pub mod lp;
pub mod materialize;
pub mod offline;
pub mod oracle;
pub mod params;
pub mod partition;
pub mod rank;
pub mod sampling;
pub mod streaming;
pub mod scalar;
pub mod sliding;

pub use bins::{BinKind, BinSpec};
pub use error::{Error, Result};
pub use generate::{generate, Family, GeneratorSpec};
pub use instance::{Instance, ItemProbe};
pub use materialize::{materialize, Materialized};
pub use offline::{approximate_bin_packing, approximate_bin_packing_with, ApproxResult, Branch, PackingTemplate};
pub use oracle::{exact_opt, first_fit, first_fit_decreasing, size_lower_bound, PackingAssignment};
pub use params::{derive_params, derive_params_with, ParamLedger, ScaledConstants};
pub use partition::Partition;
pub use rank::{rank, rank_delta, RankInterval};
pub use sampling::{approximate_intervals, uniform_sample, EstimatorReport, Reservoir, Rng};
pub use scalar::Scalar;
pub use sliding::{WindowAnswer, WindowState};
pub use streaming::{StreamAnswer, StreamState};
