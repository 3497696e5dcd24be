//! Special non-crossing partitions and the sequences they are in bijection
//! with.
//!
//! A partition of `[2n+1]` into `n+1` blocks is *special* when it is
//! non-crossing and no block holds two consecutive integers. Both the
//! special partitions of `[2n+1]` and the sequences `s_1 .. s_n` with
//! `1 <= s_i <= i` (plus a look-back condition) are counted by the Catalan
//! number `C_n`; [`bijection`] maps between the two explicitly.
//!
//! ```
//! use puttenham::{bijection, Partition};
//!
//! let p: Partition = "1,13|2,4,6,12|3|5|7,11|8,10|9".parse().unwrap();
//! let s = bijection::forward(&p).unwrap();
//! assert_eq!(s.to_string(), "1 2 3 1 1 6");
//! assert_eq!(bijection::inverse(&s).unwrap(), p);
//! ```

pub mod bijection;
pub mod claims;
pub mod error;
pub mod oracles;
pub mod partition;
pub mod registry;
pub mod render;
pub mod sequence;

pub use bijection::{forward, inverse, inverse_trace, Bijection, ConstructionTrace, DiffSeq};
pub use error::{Error, Result};
pub use partition::{Arc, ArcDiagram, Partition, PieceList};
pub use sequence::{generate_all, validate_sequence, CatSeq, GoverningState};
