//! Tonal ambiguity of pitch-class sets in any equal division of the octave.
//!
//! The crate measures how many transpositions (candidate tonics) of a set
//! remain compatible with an observed combination of pitch classes, turns
//! that count into bits of information, and aggregates it over subsets, over
//! melodic draws with repetition, and across families of scales.
//!
//! ```
//! use tonal_ambiguity::{measure, pcset::parse_pcset};
//!
//! let major = parse_pcset("024579E", 12).unwrap();
//! let fourth = parse_pcset("05", 12).unwrap();
//! assert_eq!(measure::tonal_ambiguity(&major, &fourth).unwrap(), 6);
//! assert_eq!(measure::self_information(&major, &fourth).unwrap().bits, 1.0);
//! ```

pub mod error;
pub mod family;
pub mod measure;
pub mod output;
pub mod pcset;
pub mod tables;
pub mod temporal;

pub use error::{Error, Result};
pub use pcset::{Combination, PitchClassSet};
