//! Desk-scale computational geometric group theory: marked groups and word
//! metrics, Cayley balls, translation-like actions audited as cocycles,
//! regular maps built from actions, and separation-profile lower bounds.

pub mod cayley;
pub mod cli;
pub mod error;
pub mod groups;
pub mod regmap;
pub mod separation;
pub mod tla;

pub use error::{Error, Result};
pub use groups::{make_group, Element, GeneratorSymbol, GroupKind, MarkedGroup};
