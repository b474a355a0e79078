//! Back-and-forth constructions of bijective homomorphisms that are not
//! isomorphisms on countable partial orders.

pub mod certificate;
pub mod condensation;
pub mod element;
pub mod engine;
pub mod enumeration;
pub mod error;
pub mod oracle;
pub mod order;
pub mod strategies;
pub mod structures;
pub mod verify;
