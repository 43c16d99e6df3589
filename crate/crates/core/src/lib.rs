//! Secrecy-rate beamforming for a directional-modulation link aided by a
//! UAV-mounted intelligent reflecting surface (IRS).
//!
//! Alice (multi-antenna) sends a confidential message to single-antenna
//! Bob while single-antenna Eve listens; both receive a direct LoS path and
//! a path reflected by the IRS. The crate builds the channels
//! ([`channel`]), evaluates secrecy rates ([`metrics`]), implements the
//! Max-SR-SLNR and MRT-NSP-PA beamformers ([`beamformers`]), brute-force
//! verifiers ([`oracle`]) and the sweep harness ([`experiment`]).

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beamformers;
pub mod channel;
pub mod error;
pub mod experiment;
pub mod linalg;
pub mod metrics;
pub mod oracle;

pub use error::{Error, Result};
