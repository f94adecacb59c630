//! hecke-forge: exact-arithmetic machinery for Weyl-group coset
//! combinatorics, Satake/Hecke eigenvalue identities, parahoric invariants
//! and Taylor-Wiles projectors, Frobenius splittings, deformation-dimension
//! bookkeeping and congruence modules, cross-checked against brute-force
//! oracles.

pub mod adequacy;
pub mod congruence;
pub mod defledger;
pub mod galsplit;
pub mod guards;
pub mod laurent;
pub mod mat;
pub mod oracle;
pub mod parahoric;
pub mod poly;
pub mod ring;
pub mod satake;
pub mod weyl;
