pub mod battery;
pub mod collection;
pub mod dihedral;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod laurent;
pub mod moves;
pub mod ncpoly;
pub mod oracle;
pub mod positivity;
pub mod reduction3;
pub mod separation;
pub mod subset;
pub mod transitivity;
pub mod wiring;
