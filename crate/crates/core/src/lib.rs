//! Twisted Reed–Solomon codes, the McEliece variant built on them, and a
//! polynomial-time key-recovery attack against it.

pub mod attack;
pub mod cryptosystem;
pub mod field;
pub mod linalg;
pub mod rs;
pub mod trs;
