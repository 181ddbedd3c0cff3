use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_square_free, Int};
use crate::error::{usage, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingKind {
    /// `Z[η]` with `η = √−d`.
    Order,
    /// The full ring of integers. Carries the basis `ω = (1+η)/2` only when `d ≡ 3 (mod 4)`.
    Maximal,
}

/// Which quadratic ring an element or ideal lives in.
///
/// For `d ≡ 1, 2 (mod 4)` the order is already maximal; asking for the maximal ring
/// returns the same descriptor with `kind == Order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingDesc {
    d: u64,
    kind: RingKind,
}

impl RingDesc {
    pub fn new(d: u64, kind: RingKind) -> Result<Self> {
        if d == 0 {
            return usage("d must be positive");
        }
        if !is_square_free(d) {
            return usage(format!("d = {d} is not square-free"));
        }
        let kind = if d % 4 == 3 { kind } else { RingKind::Order };
        Ok(RingDesc { d, kind })
    }

    pub fn order(d: u64) -> Result<Self> {
        Self::new(d, RingKind::Order)
    }

    pub fn maximal(d: u64) -> Result<Self> {
        Self::new(d, RingKind::Maximal)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// True when the basis element is `ω = (1+η)/2`.
    pub fn uses_omega(&self) -> bool {
        self.kind == RingKind::Maximal
    }

    /// True when this ring is integrally closed.
    pub fn is_maximal(&self) -> bool {
        self.uses_omega() || self.d % 4 != 3
    }

    /// True for a non-maximal order `Z[√−d]`, `d ≡ 3 (mod 4)`.
    pub fn is_proper_order(&self) -> bool {
        !self.is_maximal()
    }

    pub fn theta_symbol(&self) -> &'static str {
        if self.uses_omega() {
            "ω"
        } else {
            "η"
        }
    }

    pub fn disc(&self) -> i64 {
        let d = self.d as i64;
        if self.uses_omega() {
            -d
        } else {
            -4 * d
        }
    }

    /// `(p, q)` with `θ² = p + q·θ`.
    pub fn theta_square(&self) -> (Int, Int) {
        if self.uses_omega() {
            (-Int::from((1 + self.d) / 4), Int::from(1))
        } else {
            (-Int::from(self.d), Int::from(0))
        }
    }

    /// Trace of the basis element θ.
    pub fn theta_trace(&self) -> Int {
        self.theta_square().1
    }

    pub fn order_ring(&self) -> RingDesc {
        RingDesc {
            d: self.d,
            kind: RingKind::Order,
        }
    }

    pub fn maximal_ring(&self) -> RingDesc {
        RingDesc::new(self.d, RingKind::Maximal).expect("d already validated")
    }
}

impl fmt::Display for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.uses_omega() {
            write!(f, "Z[(1+√-{})/2]", self.d)
        } else {
            write!(f, "Z[√-{}]", self.d)
        }
    }
}
