//! Numeric fused-head (NFH) identification and resolution over pre-parsed
//! English text.
//!
//! A numeric fused head is a noun phrase whose head noun is missing and
//! fused with a visible number (the *anchor*): "I'm **42**, Cercie" (an age),
//! "It's worth about **two million**" (a currency amount), "three at the
//! most" (referring back to *months*). This crate identifies such anchors in
//! parsed text and resolves each one either to a token in the surrounding
//! context (a *Reference* head) or to one of six implicit categories
//! (YEAR, AGE, CURRENCY, PEOPLE, TIME, OTHER).
//!
//! The pipeline has two stages, each with two interchangeable engines:
//!
//! * **Identification** — [`identify::rules`] walks constituency trees for
//!   noun-less number phrases, applies dependency-based filters and a small
//!   registry of textual patterns; [`identify::linear`] is a trained linear
//!   classifier over hashed feature templates.
//! * **Resolution** — [`resolve::deterministic`] handles four high-coverage
//!   patterns (*no one*, *you two*, partitives, copulars);
//!   [`resolve::neural`] scores every context token plus the six implicit
//!   classes with a char-LSTM + BiLSTM encoder and an MLP, trained with Adam
//!   on cross-entropy.
//!
//! [`corpus`] holds the data model and file formats, [`eval`] the metrics,
//! baselines and corpus statistics, and [`cli`] the batch front end behind
//! the `nfh` binary. Each major capability has a runnable program under
//! `examples/`.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod identify;
pub mod parallel;
pub mod resolve;
pub mod rng;

pub use error::NfhError;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, NfhError>;
