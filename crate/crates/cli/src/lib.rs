//! Command-line plumbing around `particover-core`: result records, the
//! on-disk cache, certificate sidecars, and the table of published values.

pub mod cache;
pub mod certfile;
pub mod compute;
pub mod record;
pub mod table;
