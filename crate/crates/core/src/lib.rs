//! Deterministic step traces for Vedic mental-arithmetic methods and their
//! schoolbook counterparts.
//!
//! Every method produces a [`MethodRun`]: ordered steps that write into a
//! write-once grid, the elementary calculations behind each step, and
//! operation counts. The [`engine`] wraps runs into replayable [`Trace`]s and
//! pairs the two families for comparison.

pub mod canonical;
pub mod engine;
pub mod numeral;
pub mod render;
pub mod run;
pub mod trace;
pub mod traditional;
pub mod vedic;

pub use engine::{
    build_comparison, build_trace, describe_method, list_methods, validate, ApplicabilityReport,
    BuildOptions, ComparisonReport, EngineError, Family, MethodDescriptor, Operation, Warning,
};
pub use numeral::{parse_operand, DigitString, ExactValue, ParseError};
pub use run::{MethodError, MethodRun};
pub use trace::{replay, LatentDisplay, Metrics, Pane, Trace};
