//! Bruhat order on flag-variety orbit sets from simple relations.

pub mod par;
pub mod root_datum;
pub mod weyl;
pub mod parabolic;
pub mod orbit_poset;
pub mod kgb;
pub mod kgp;
pub mod cli;
