use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::RingDesc;
use crate::arith::{exact_div, Int};
use crate::error::{usage, Error, Result};

/// An element `x + y·θ` of a quadratic ring, with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    ring: RingDesc,
    x: Int,
    y: Int,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl QuadElem {
    pub fn new(ring: RingDesc, x: impl Into<Int>, y: impl Into<Int>) -> Self {
        QuadElem {
            ring,
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn from_int(ring: RingDesc, n: impl Into<Int>) -> Self {
        Self::new(ring, n, 0)
    }

    pub fn zero(ring: RingDesc) -> Self {
        Self::new(ring, 0, 0)
    }

    pub fn one(ring: RingDesc) -> Self {
        Self::new(ring, 1, 0)
    }

    pub fn theta(ring: RingDesc) -> Self {
        Self::new(ring, 0, 1)
    }

    pub fn ring(&self) -> RingDesc {
        self.ring
    }

    pub fn x(&self) -> &Int {
        &self.x
    }

    pub fn y(&self) -> &Int {
        &self.y
    }

    pub fn coords(&self) -> [Int; 2] {
        [self.x.clone(), self.y.clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    fn check_ring(&self, other: &QuadElem) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &QuadElem) -> Result<QuadElem> {
        self.check_ring(other)?;
        Ok(QuadElem::new(
            self.ring,
            &self.x + &other.x,
            &self.y + &other.y,
        ))
    }

    pub fn try_sub(&self, other: &QuadElem) -> Result<QuadElem> {
        self.check_ring(other)?;
        Ok(QuadElem::new(
            self.ring,
            &self.x - &other.x,
            &self.y - &other.y,
        ))
    }

    pub fn try_mul(&self, other: &QuadElem) -> Result<QuadElem> {
        self.check_ring(other)?;
        let (p, q) = self.ring.theta_square();
        let yy = &self.y * &other.y;
        let x = &self.x * &other.x + &yy * p;
        let y = &self.x * &other.y + &other.x * &self.y + yy * q;
        Ok(QuadElem::new(self.ring, x, y))
    }

    pub fn scale(&self, k: &Int) -> QuadElem {
        QuadElem::new(self.ring, &self.x * k, &self.y * k)
    }

    pub fn square(&self) -> QuadElem {
        self * self
    }

    /// Complex conjugate; fixes the rationals and sends `√−d` to `−√−d`.
    pub fn conj(&self) -> QuadElem {
        let q = self.ring.theta_trace();
        QuadElem::new(self.ring, &self.x + &self.y * q, -&self.y)
    }

    /// `N(x + yθ) = x² + q·xy − p·y²` for `θ² = p + qθ`; never negative.
    pub fn norm(&self) -> Int {
        let (p, q) = self.ring.theta_square();
        &self.x * &self.x + q * &self.x * &self.y - p * &self.y * &self.y
    }

    pub fn trace(&self) -> Int {
        Int::from(2) * &self.x + self.ring.theta_trace() * &self.y
    }

    /// Exact quotient `z / b` when it exists in the ring.
    pub fn divides(b: &QuadElem, z: &QuadElem) -> Result<Option<QuadElem>> {
        b.check_ring(z)?;
        if b.is_zero() {
            return usage("division by zero element");
        }
        let n = b.norm();
        let num = z * &b.conj();
        match (exact_div(&num.x, &n), exact_div(&num.y, &n)) {
            (Some(x), Some(y)) => Ok(Some(QuadElem::new(z.ring, x, y))),
            _ => Ok(None),
        }
    }

    /// Rewrites the element in another basis of the same quadratic field.
    ///
    /// Order → maximal always succeeds; maximal → order succeeds only when the
    /// element lies in `Z[η]`.
    pub fn convert(&self, target: RingDesc) -> Result<Option<QuadElem>> {
        if self.ring.d() != target.d() {
            return usage(format!(
                "cannot convert between d = {} and d = {}",
                self.ring.d(),
                target.d()
            ));
        }
        if self.ring == target {
            return Ok(Some(self.clone()));
        }
        if target.uses_omega() {
            // η = 2ω − 1
            let x = &self.x - &self.y;
            let y = Int::from(2) * &self.y;
            Ok(Some(QuadElem::new(target, x, y)))
        } else {
            // x + yω = (x + y/2) + (y/2)η
            if self.y.is_odd() {
                return Ok(None);
            }
            let h = &self.y / 2;
            Ok(Some(QuadElem::new(target, &self.x + &h, h)))
        }
    }

    /// Coordinates in the `{1, η}` basis scaled by 2; always integral.
    pub fn eta_coords_doubled(&self) -> [Int; 2] {
        if self.ring.uses_omega() {
            [Int::from(2) * &self.x + &self.y, self.y.clone()]
        } else {
            [Int::from(2) * &self.x, Int::from(2) * &self.y]
        }
    }

    /// Matrix of `w ↦ w·self` acting on coordinate rows: rows are the
    /// coordinates of `1·self` and `θ·self`.
    pub fn mul_matrix(&self) -> [[Int; 2]; 2] {
        let t = &QuadElem::theta(self.ring) * self;
        [self.coords(), t.coords()]
    }

    /// Canonical order: lexicographic on `(y, x)`.
    pub fn canonical_cmp(&self, other: &QuadElem) -> Ordering {
        (&self.y, &self.x).cmp(&(&other.y, &other.x))
    }

    /// Representative of `{z, −z}` with `y > 0`, or `y = 0` and `x > 0`.
    pub fn is_positive_half(&self) -> bool {
        self.y.is_positive() || (self.y.is_zero() && self.x.is_positive())
    }

    /// Parses the canonical text form produced by `Display`, e.g. `2-3·η`.
    pub fn parse(ring: RingDesc, s: &str) -> Result<QuadElem> {
        let bad = || Error::Parse(format!("malformed element {s:?}"));
        let s = s.trim();
        let body = s
            .strip_suffix(ring.theta_symbol())
            .and_then(|r| r.strip_suffix('·'))
            .ok_or_else(bad)?;
        // split at the sign separating x and y (skip a leading sign on x)
        let idx = body
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .ok_or_else(bad)?;
        let (xs, ys) = body.split_at(idx);
        let x: Int = xs.parse().map_err(|_| bad())?;
        let y: Int = ys.trim_start_matches('+').parse().map_err(|_| bad())?;
        Ok(QuadElem::new(ring, x, y))
    }
}

pub fn ring_arithmetic(op: RingOp, u: &QuadElem, v: &QuadElem) -> Result<QuadElem> {
    match op {
        RingOp::Add => u.try_add(v),
        RingOp::Sub => u.try_sub(v),
        RingOp::Mul => u.try_mul(v),
        RingOp::Neg => {
            u.check_ring(v)?;
            Ok(-u)
        }
    }
}

impl serde::Serialize for QuadElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.y.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}·{}",
            self.x,
            sign,
            self.y.abs(),
            self.ring.theta_symbol()
        )
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &QuadElem) -> QuadElem {
                self.$try(rhs).expect("ring mismatch in element arithmetic")
            }
        }
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: QuadElem) -> QuadElem {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::new(self.ring, -&self.x, -&self.y)
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}
