//! Finite combinatorics of monomorphic structures: decompositions into
//! monomorphic parts, chainability, indicative groups of bichains,
//! stabilizer duality, and a small algebra of countable linear orders.

pub mod bichain;
pub mod canon;
pub mod decomp;
pub mod permgrp;
pub mod relcore;
pub mod symchain;
