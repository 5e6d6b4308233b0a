//! Combinatorics of Thompson's monoid `F⁺` and the hybrid monoid `H⁺`:
//! presentations, normal forms by rewriting, word reversing, Garside elements
//! and their simple divisors, and the maps relating `H⁺` to `F⁺`.

pub mod error;
pub mod garside;
pub mod morphisms;
pub mod presentation;
pub mod reversing;
pub mod rewrite;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use words::{MonoidId, Word};
