//! Obstructions to knot concordance and rational concordance.
//!
//! Classical invariants from Seifert matrices (Alexander polynomial,
//! Levine–Tristram signatures), Fox–Milnor factorization tests, cable
//! transforms, Legendrian front invariants with the slice-Bennequin bound,
//! and first homology of framed-link surgery presentations.

#![allow(clippy::needless_range_loop)]

pub mod cabling;
pub mod catalog;
pub mod cyclotomic;
pub mod error;
pub mod factor;
pub mod laurent;
pub mod legendrian;
pub mod matrix;
pub mod poly;
pub mod realroots;
pub mod seifert;
mod serde_int;
pub mod surgery;

pub use error::{Error, Result};
pub use laurent::{fox_milnor_pairing, Factorization, FoxMilnor, LaurentPoly, PairingViolation};
pub use seifert::{RootOfUnity, SeifertMatrix, SignatureFunction};
