//! Closed and overt subsets of Cantor space, the decomposition of jump-one
//! open sets into closed pieces, overt images, and the space `E0`.

pub mod closed;
pub mod e0;
pub mod fixtures;
pub mod overt;
pub mod sigma2;
pub mod words;

pub use closed::{brute_force_empty, cover_position, is_empty_machine, ClosedCantorSet};
pub use e0::{e0_equal_jump, e0_equal_machine, E0Point};
pub use overt::{
    brute_force_hits, image_of_baire_map, image_of_baire_map_with, overt_image_inverse,
    OvertCantorSet,
};
pub use sigma2::{
    finitely_many_ones_chi, jump_overt_cantor, stable_bottom_window, stage_fuel,
    Sigma2Decomposition, DEFAULT_MAX_DEPTH,
};
pub use words::{decode_code, format_stream, format_word, parse_stream, word_code, Word};
