use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::elem::QuadElem;
use super::ring::RingDesc;
use crate::arith::{exact_sqrt, Int};

/// All elements of norm `n`, sorted by `(y, x)`.
///
/// Completing the square, `4N = (2x + qy)² + |disc|·y²`, so `|y| ≤ √(4n/|disc|)`
/// and each `y` contributes at most two values of `x`.
pub fn enumerate_norm(ring: RingDesc, n: &Int) -> Vec<QuadElem> {
    if n.is_negative() {
        return Vec::new();
    }
    if n.is_zero() {
        return vec![QuadElem::zero(ring)];
    }
    let disc = Int::from(-ring.disc());
    let q = ring.theta_trace();
    let four_n = Int::from(4) * n;
    let ymax = (&four_n / &disc).sqrt();
    let mut out = Vec::new();
    let mut y = -ymax.clone();
    while y <= ymax {
        let rest = &four_n - &disc * &y * &y;
        if let Some(s) = exact_sqrt(&rest) {
            let qy = &q * &y;
            let mut xs: Vec<Int> = Vec::with_capacity(2);
            for t in [-s.clone(), s.clone()] {
                let num = t - &qy;
                if num.is_even() {
                    let x = num / 2;
                    if !xs.contains(&x) {
                        xs.push(x);
                    }
                }
            }
            xs.sort();
            out.extend(xs.into_iter().map(|x| QuadElem::new(ring, x, y.clone())));
        }
        y += 1;
    }
    out
}

/// The finite unit group of an imaginary quadratic ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    pub ring: RingDesc,
    pub units: Vec<QuadElem>,
}

impl UnitGroup {
    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn contains(&self, u: &QuadElem) -> bool {
        self.units.contains(u)
    }

    /// Checks closure under products and inverses by table.
    pub fn is_group(&self) -> bool {
        let closed = self
            .units
            .iter()
            .all(|u| self.units.iter().all(|v| self.contains(&(u * v))));
        let inverses = self
            .units
            .iter()
            .all(|u| self.units.iter().any(|v| (u * v).is_one()));
        closed && inverses
    }
}

pub fn units(ring: RingDesc) -> UnitGroup {
    UnitGroup {
        ring,
        units: enumerate_norm(ring, &Int::from(1)),
    }
}
