//! The limit jump `'`, its finite iterates and ω level, and the
//! finite-mindchange representation `∇`.

pub mod lift;
pub mod nabla;
pub mod name;
pub mod witness;

pub use lift::{
    family_shuffle, family_unshuffle, inject_into_jump, jump_lift, jump_lift_n, not_into_jump,
    pointwise_limit, product_shuffle,
};
pub use nabla::{
    nabla_decode, nabla_encode, nabla_lift, nabla_logic, nabla_to_jump_pair, GuessTrajectory,
    NablaLogic, NablaName,
};
pub use name::{
    decode_level_name, encode_level_name, JumpName, TowerLevel, TowerName, MAX_TOWER_LEVEL,
};
pub use witness::{jump_pair_to_nabla, mindchange_bound};

use crate::kernel::{Nat, Oracle};

/// `𝒞(ℕ, X)' ≅ 𝒞(ℕ, X')`: split a jump name of a family into the family of
/// jump names, `s_n(<m, i>) = q(<<n, m>, i>)`.
pub fn shuffle_jump_product(q: &JumpName) -> impl Fn(Nat) -> JumpName + Send + Sync {
    let tupled = family_unshuffle(1).apply(&q.base);
    move |n| JumpName::new(crate::kernel::row(&tupled, n))
}

/// Inverse of [`shuffle_jump_product`], from the tupled family of jump names.
pub fn unshuffle_jump_product(family: &Oracle) -> JumpName {
    JumpName::new(family_shuffle(1).apply(family))
}
