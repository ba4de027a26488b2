//! Discrete-time agent-based simulator for end-user network switching and
//! multihoming across several mobile network operators.
//!
//! Every second the model moves users (Levy walk), recomputes link budgets,
//! lets each active user pick the base station(s) with the best estimated
//! throughput, splits each cell's carrier between its users and feeds the
//! resulting throughput into a session-level QoE model.
//!
//! The crate is organised by subsystem:
//!
//! - [`scenario`]: geometry, operators, base stations, populations, config loading
//! - [`radio`]: path loss, shadowing, SINR and truncated-Shannon throughput
//! - [`access`]: ER/TE bandwidth allocation and sequential BS selection
//! - [`mobility`]: Levy-walk movement
//! - [`behavior`]: activity/session state machine and throughput-to-MOS mapping
//! - [`engine`]: the per-second loop and seed replications
//! - [`metrics`]: per-user summaries, cross-seed confidence intervals, output tables

pub mod access;
pub mod behavior;
pub mod engine;
mod error;
pub mod metrics;
pub mod mobility;
pub mod radio;
pub mod rng;
pub mod scenario;
#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use scenario::{ScenarioConfig, Scheme, UserType};
