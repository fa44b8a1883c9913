//! Finite-field tower `F_p ⊂ F_q ⊂ F_{q^m1}, F_{q^m2}`.

mod field;
mod poly;
mod tower;

pub use field::{Elem, Field, Op};
pub use poly::{find_irreducible, is_irreducible};
pub use tower::{FieldDescriptor, FieldTower};

pub(crate) use field::{big_pow, gcd_u64};
