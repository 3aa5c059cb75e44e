//! Generator presentations of invariant rings of finite p-groups over
//! finite fields of characteristic p, with brute-force verification.

pub mod cli;
pub mod construct;
pub mod gf;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod poly;
