//! Sequences, prefixes, pairing and the fueled machine model.

pub mod descriptor;
pub mod family;
pub mod machine;
pub mod oracle;
pub mod pairing;

/// Entries of names and indices into them.
pub type Nat = u64;

pub use descriptor::Descriptor;
pub use family::{tupled, Family};
pub use machine::{
    binary_part, bit_flip, compose, compose_all, constant, delay, diagonal, head_parity, head_swap,
    identity, is_prefix, pair_env_first, pair_with_second, pairing, run_on_oracle, split,
    successor, Env, IndexMap, Machine, Prefix, PrefixMachine, Reindex,
};
pub use oracle::{
    column, interleave, project, row, split as split_name, tuple_rows, tuple_rows_vec,
    EventuallyPeriodic, Oracle, Sequence,
};
pub use pairing::{pair, pair_nested, unpair, unpair_nested};
