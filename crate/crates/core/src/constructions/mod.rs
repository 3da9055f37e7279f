//! Explicit birational constructions and closed-form counts.

pub mod bundle;
pub mod formulas;
pub mod isotropy;
pub mod projection;
