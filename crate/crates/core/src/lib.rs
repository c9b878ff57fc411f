pub mod casimir;
pub mod config;
pub mod error;
pub mod gauge;
pub mod gauge_numeric;
pub mod hyper;
pub mod jet;
pub mod radial;
pub mod report;
pub mod spectrum;
pub mod suites;
pub mod symmetry;
pub mod topology;
pub mod transforms;
pub mod units;

pub use error::CoreError;
pub use units::Units;
