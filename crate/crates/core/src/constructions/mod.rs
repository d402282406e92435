//! Explicit extremal constructions for short and long natural paths.

pub mod bias;
pub mod blowup;
pub mod fractional;
pub mod packing;
pub mod transversal;

pub use bias::{h_count, has_reflection_pair, is_biased, is_m_biased, typical_split, CountMode, Side, TypicalSplit};
pub use blowup::interval_blowup;
pub use fractional::{
    flower_generator, flower_packing, flower_packing_with, fractional_transversal_weights,
    fractional_transversal_weights_with, Divisibility,
};
pub use packing::{canonical_partition, core_partition, decode_generator, generate_packing, PackedCopy, PackingFamily};
pub use transversal::{biased_transversal, short_path_params, short_path_value, verify_transversal, BiasedTransversal};
