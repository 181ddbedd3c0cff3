//! Exact arithmetic in `Z[√−d]` and, for `d ≡ 3 (mod 4)`, in `Z[(1+√−d)/2]`.

mod elem;
mod enumerate;
mod ring;

pub use elem::{ring_arithmetic, QuadElem, RingOp};
pub use enumerate::{enumerate_norm, units, UnitGroup};
pub use ring::{RingDesc, RingKind};
