pub mod arith;
pub mod lattice;
pub mod nf;
pub mod local;
pub mod symbols;
pub mod prime_search;
pub mod chatelet;
pub mod brauer;
pub mod poly;
pub mod elliptic;
pub mod fibration;
pub mod pipeline;
