//! Nonzero ideals of a quadratic ring as HNF lattices `{a, b + c·θ}`.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::Int;
use crate::error::{usage, Error, Result};
use crate::lattice::{self, Hnf, LatInt};
use crate::quad::{enumerate_norm, QuadElem, RingDesc};

/// A nonzero ideal with Z-basis `{a·1, b + c·θ}` in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealLat {
    ring: RingDesc,
    hnf: Hnf<Int>,
}

/// `θ`-closure of an HNF lattice given `θ² = p + q·θ`; this is what makes a
/// lattice an ideal.
pub fn closed_under_theta<T: LatInt>(h: &Hnf<T>, p: &T, q: &T) -> bool {
    // θ·a = (0, a);  θ·(b + cθ) = (c·p, b + c·q)
    let t1 = [T::zero(), h.a.clone()];
    let t2 = [
        h.c.clone() * p.clone(),
        h.b.clone() + h.c.clone() * q.clone(),
    ];
    h.contains(&t1) && h.contains(&t2)
}

impl IdealLat {
    pub fn from_hnf(ring: RingDesc, a: Int, b: Int, c: Int) -> Result<IdealLat> {
        if a <= Int::zero() || c <= Int::zero() || b < Int::zero() || b >= a {
            return usage(format!("({a}, {b}, {c}) is not in Hermite normal form"));
        }
        let hnf = Hnf { a, b, c };
        let (p, q) = ring.theta_square();
        if !closed_under_theta(&hnf, &p, &q) {
            return usage(format!(
                "[{}, {}+{}·θ] is not an ideal",
                hnf.a, hnf.b, hnf.c
            ));
        }
        Ok(IdealLat { ring, hnf })
    }

    fn from_vectors(ring: RingDesc, vectors: &[[Int; 2]]) -> Result<IdealLat> {
        let hnf = lattice::hnf(vectors).ok_or(Error::ZeroIdeal)?;
        Ok(IdealLat { ring, hnf })
    }

    /// The ideal generated by `gens`: HNF of `{g, θ·g}`.
    pub fn from_generators(ring: RingDesc, gens: &[QuadElem]) -> Result<IdealLat> {
        let theta = QuadElem::theta(ring);
        let mut v = Vec::with_capacity(2 * gens.len());
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            v.push(g.coords());
            v.push((&theta * g).coords());
        }
        Self::from_vectors(ring, &v)
    }

    pub fn principal(z: &QuadElem) -> Result<IdealLat> {
        Self::from_generators(z.ring(), std::slice::from_ref(z))
    }

    pub fn whole(ring: RingDesc) -> IdealLat {
        IdealLat {
            ring,
            hnf: Hnf {
                a: Int::one(),
                b: Int::zero(),
                c: Int::one(),
            },
        }
    }

    pub fn ring(&self) -> RingDesc {
        self.ring
    }

    pub fn a(&self) -> &Int {
        &self.hnf.a
    }

    pub fn b(&self) -> &Int {
        &self.hnf.b
    }

    pub fn c(&self) -> &Int {
        &self.hnf.c
    }

    pub fn hnf(&self) -> &Hnf<Int> {
        &self.hnf
    }

    /// Index `[ring : I] = a·c`.
    pub fn norm(&self) -> Int {
        self.hnf.index()
    }

    pub fn basis(&self) -> [QuadElem; 2] {
        [
            QuadElem::from_int(self.ring, self.hnf.a.clone()),
            QuadElem::new(self.ring, self.hnf.b.clone(), self.hnf.c.clone()),
        ]
    }

    pub fn is_whole(&self) -> bool {
        self.hnf.is_unimodular()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_whole()
    }

    pub fn contains(&self, z: &QuadElem) -> bool {
        assert_eq!(z.ring(), self.ring, "membership test across rings");
        self.hnf.contains(&z.coords())
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &IdealLat) -> bool {
        assert_eq!(other.ring, self.ring, "containment test across rings");
        self.hnf.contains_lattice(&other.hnf)
    }

    fn same_ring(&self, other: &IdealLat) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &IdealLat) -> Result<IdealLat> {
        self.same_ring(other)?;
        Ok(IdealLat {
            ring: self.ring,
            hnf: lattice::sum(&self.hnf, &other.hnf),
        })
    }

    pub fn mul(&self, other: &IdealLat) -> Result<IdealLat> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(4);
        for u in self.basis() {
            for v in other.basis() {
                gens.push(&u * &v);
            }
        }
        Self::from_generators(self.ring, &gens)
    }

    pub fn mul_elem(&self, z: &QuadElem) -> Result<IdealLat> {
        let gens: Vec<QuadElem> = self.basis().iter().map(|g| g * z).collect();
        Self::from_generators(self.ring, &gens)
    }

    pub fn pow(&self, e: u32) -> IdealLat {
        let mut acc = IdealLat::whole(self.ring);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn intersect(&self, other: &IdealLat) -> Result<IdealLat> {
        self.same_ring(other)?;
        Ok(IdealLat {
            ring: self.ring,
            hnf: lattice::intersect(&self.hnf, &other.hnf),
        })
    }

    /// `{x ∈ ring : x·g ∈ I}`
    fn quotient_by_elem(&self, g: &QuadElem) -> Hnf<Int> {
        lattice::preimage(&g.mul_matrix(), &self.hnf).expect("nonzero multiplier")
    }

    /// `(I : J) = {x ∈ ring : x·J ⊆ I}`
    pub fn colon(&self, other: &IdealLat) -> Result<IdealLat> {
        self.same_ring(other)?;
        let [g1, g2] = other.basis();
        let hnf = lattice::intersect(&self.quotient_by_elem(&g1), &self.quotient_by_elem(&g2));
        Ok(IdealLat {
            ring: self.ring,
            hnf,
        })
    }

    /// `(ring : I)` as a fractional ideal. Uses `a ∈ I`, so
    /// `(ring : I) = (1/a)·(aO : I)`.
    pub fn colon_ring_over(&self) -> FracIdeal {
        let a = QuadElem::from_int(self.ring, self.hnf.a.clone());
        let num = IdealLat::principal(&a)
            .expect("a > 0")
            .colon(self)
            .expect("same ring");
        FracIdeal::new(num, self.hnf.a.clone())
    }

    pub fn is_invertible(&self) -> bool {
        self.colon_ring_over().mul_ideal(self).is_whole()
    }

    pub fn conj(&self) -> IdealLat {
        let gens: Vec<QuadElem> = self.basis().iter().map(|g| g.conj()).collect();
        Self::from_generators(self.ring, &gens).expect("nonzero")
    }

    /// `I·D` for an ideal of `Z[η]`; identity when the order is maximal.
    pub fn extend(&self) -> IdealLat {
        let target = self.ring.maximal_ring();
        if target == self.ring {
            return self.clone();
        }
        let gens: Vec<QuadElem> = self
            .basis()
            .iter()
            .map(|g| {
                g.convert(target)
                    .expect("same d")
                    .expect("order embeds in D")
            })
            .collect();
        Self::from_generators(target, &gens).expect("nonzero")
    }

    /// `J ∩ Z[η]` for an ideal of the maximal ring; identity otherwise.
    ///
    /// Both lattices are compared in `{1, η}` coordinates scaled by 2, where
    /// `Z[η]` is `2Z²`.
    pub fn contract(&self) -> IdealLat {
        let target = self.ring.order_ring();
        if target == self.ring {
            return self.clone();
        }
        let scaled: Vec<[Int; 2]> = self
            .basis()
            .iter()
            .map(|g| g.eta_coords_doubled())
            .collect();
        let j = lattice::hnf(&scaled).expect("full rank");
        let two = Int::from(2);
        let order = Hnf {
            a: two.clone(),
            b: Int::zero(),
            c: two.clone(),
        };
        let m = lattice::intersect(&j, &order);
        IdealLat {
            ring: target,
            hnf: Hnf {
                a: m.a / &two,
                b: m.b / &two,
                c: m.c / &two,
            },
        }
    }

    /// Nonzero elements of the ideal in order of increasing norm, then `(y, x)`.
    pub fn elements(&self) -> IdealElements<'_> {
        IdealElements {
            ideal: self,
            k: Int::zero(),
            buf: VecDeque::new(),
        }
    }

    /// Parses `[a, b+c·t]`.
    pub fn parse(ring: RingDesc, s: &str) -> Result<IdealLat> {
        let bad = || Error::Parse(format!("malformed ideal {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (a, rest) = inner.split_once(", ").ok_or_else(bad)?;
        let a: Int = a.parse().map_err(|_| bad())?;
        let g = QuadElem::parse(ring, rest)?;
        IdealLat::from_hnf(ring, a, g.x().clone(), g.y().clone())
    }
}

impl fmt::Display for IdealLat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}+{}·{}]",
            self.hnf.a,
            self.hnf.b,
            self.hnf.c,
            self.ring.theta_symbol()
        )
    }
}

impl serde::Serialize for IdealLat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub struct IdealElements<'a> {
    ideal: &'a IdealLat,
    k: Int,
    buf: VecDeque<QuadElem>,
}

impl Iterator for IdealElements<'_> {
    type Item = QuadElem;

    fn next(&mut self) -> Option<QuadElem> {
        // norms of elements of I are multiples of N(I)
        let n = self.ideal.norm();
        while self.buf.is_empty() {
            self.k += 1;
            let fiber = enumerate_norm(self.ideal.ring, &(&n * &self.k));
            self.buf
                .extend(fiber.into_iter().filter(|z| self.ideal.contains(z)));
        }
        self.buf.pop_front()
    }
}

/// A fractional ideal `(1/den)·num`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FracIdeal {
    num: IdealLat,
    den: Int,
}

impl FracIdeal {
    pub fn new(num: IdealLat, den: Int) -> FracIdeal {
        assert!(den > Int::zero(), "denominator must be positive");
        let g = den.gcd(&num.hnf.a).gcd(&num.hnf.b).gcd(&num.hnf.c);
        if g.is_one() {
            return FracIdeal { num, den };
        }
        let hnf = Hnf {
            a: &num.hnf.a / &g,
            b: &num.hnf.b / &g,
            c: &num.hnf.c / &g,
        };
        FracIdeal {
            num: IdealLat {
                ring: num.ring,
                hnf,
            },
            den: den / g,
        }
    }

    pub fn num(&self) -> &IdealLat {
        &self.num
    }

    pub fn den(&self) -> &Int {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_whole(&self) -> bool {
        self.is_integral() && self.num.is_whole()
    }

    pub fn mul_ideal(&self, i: &IdealLat) -> FracIdeal {
        FracIdeal::new(self.num.mul(i).expect("same ring"), self.den.clone())
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "(1/{})·{}", self.den, self.num)
        }
    }
}

impl serde::Serialize for FracIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All ideals of norm exactly `n`, sorted by `(a, b, c)`.
///
/// Walks HNF triples `a·c = n`, `c | a`, `0 ≤ b < a`, `c | b`, keeping the
/// θ-closed ones; complete and duplicate-free by HNF uniqueness.
pub fn ideals_of_norm(ring: RingDesc, n: u64) -> Vec<IdealLat> {
    let (p, q) = ring.theta_square();
    let p = p.to_i128().expect("small d");
    let q = q.to_i128().expect("small d");
    let n = n as i128;
    let mut out = Vec::new();
    let mut c: i128 = 1;
    while c * c <= n {
        if n % (c * c) == 0 {
            let a = n / c;
            let mut b = 0;
            while b < a {
                let h = Hnf { a, b, c };
                if closed_under_theta(&h, &p, &q) {
                    out.push(IdealLat {
                        ring,
                        hnf: Hnf {
                            a: a.into(),
                            b: b.into(),
                            c: c.into(),
                        },
                    });
                }
                b += c;
            }
        }
        c += 1;
    }
    out.sort_by(|x, y| (&x.hnf.a, &x.hnf.b, &x.hnf.c).cmp(&(&y.hnf.a, &y.hnf.b, &y.hnf.c)));
    out
}

/// All ideals of norm at most `max_norm`, in `(norm, a, b, c)` order.
pub fn enumerate_ideals(ring: RingDesc, max_norm: u64) -> Vec<IdealLat> {
    (1..=max_norm)
        .flat_map(|n| ideals_of_norm(ring, n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(d: u64) -> RingDesc {
        RingDesc::order(d).unwrap()
    }

    fn e(r: RingDesc, x: i64, y: i64) -> QuadElem {
        QuadElem::new(r, x, y)
    }

    fn gen(r: RingDesc, gs: &[(i64, i64)]) -> IdealLat {
        let g: Vec<QuadElem> = gs.iter().map(|&(x, y)| e(r, x, y)).collect();
        IdealLat::from_generators(r, &g).unwrap()
    }

    fn triple(i: &IdealLat) -> (i64, i64, i64) {
        (
            i.a().to_i64().unwrap(),
            i.b().to_i64().unwrap(),
            i.c().to_i64().unwrap(),
        )
    }

    #[test]
    fn from_generators_examples() {
        let p = gen(o(11), &[(3, 0), (1, 1)]);
        assert_eq!(triple(&p), (3, 1, 1));
        assert_eq!(p.norm(), Int::from(3));
        let w = gen(o(5), &[(1, 0)]);
        assert!(w.is_whole());
        let f = gen(o(3), &[(2, 0), (1, 1)]);
        assert_eq!(triple(&f), (2, 1, 1));
        assert_eq!(f.to_string(), "[2, 1+1·η]");
    }

    #[test]
    fn zero_generators_rejected() {
        let r = o(3);
        assert_eq!(
            IdealLat::from_generators(r, &[QuadElem::zero(r)]),
            Err(Error::ZeroIdeal)
        );
    }

    #[test]
    fn membership_examples() {
        let r = o(3);
        let f = gen(r, &[(2, 0), (1, 1)]);
        assert!(f.contains(&e(r, 1, 1)));
        assert!(!f.contains(&e(r, 1, 0)));
        let p = gen(o(11), &[(3, 0), (1, 1)]);
        assert!(p.contains(&e(o(11), 2, 2)));
    }

    #[test]
    fn conductor_square() {
        let r = o(3);
        let f = gen(r, &[(2, 0), (1, 1)]);
        let f2 = f.mul(&f).unwrap();
        assert_eq!(triple(&f2), (4, 2, 2));
        assert_eq!(f2, f.mul_elem(&e(r, 2, 0)).unwrap());
    }

    #[test]
    fn sum_of_conjugate_primes_is_whole() {
        let r = o(11);
        let p = gen(r, &[(3, 0), (1, 1)]);
        let pb = gen(r, &[(3, 0), (1, -1)]);
        assert!(p.sum(&pb).unwrap().is_whole());
        assert_eq!(p.intersect(&pb).unwrap(), gen(r, &[(3, 0)]));
        assert_eq!(p.mul(&pb).unwrap(), gen(r, &[(3, 0)]));
    }

    #[test]
    fn identities_with_whole_ring() {
        let r = o(7);
        let i = gen(r, &[(11, 0), (2, 1)]);
        let w = IdealLat::whole(r);
        assert_eq!(i.mul(&w).unwrap(), i);
        assert_eq!(i.intersect(&w).unwrap(), i);
        assert_eq!(i.colon(&w).unwrap(), i);
    }

    #[test]
    fn intersection_by_scan() {
        let r = o(3);
        let two = gen(r, &[(2, 0)]);
        let opn = gen(r, &[(1, 1)]);
        let i = two.intersect(&opn).unwrap();
        for x in -10..=10 {
            for y in -10..=10 {
                let z = e(r, x, y);
                let expect = QuadElem::divides(&e(r, 2, 0), &z).unwrap().is_some()
                    && QuadElem::divides(&e(r, 1, 1), &z).unwrap().is_some();
                assert_eq!(i.contains(&z), expect, "{z}");
            }
        }
    }

    #[test]
    fn colon_examples() {
        let r = o(3);
        let f = gen(r, &[(2, 0), (1, 1)]);
        let two = gen(r, &[(2, 0)]);
        assert_eq!(two.colon(&f).unwrap(), f);
        // (O : f) = (1/2)·f, which as a set is D
        let inv = f.colon_ring_over();
        assert_eq!(inv.den(), &Int::from(2));
        assert_eq!(inv.num(), &f);
        assert_eq!(inv.mul_ideal(&f).to_string(), f.to_string());
    }

    #[test]
    fn invertibility_examples() {
        let r = o(3);
        let f = gen(r, &[(2, 0), (1, 1)]);
        assert!(!f.is_invertible());
        assert!(gen(o(11), &[(3, 0), (1, 1)]).is_invertible());
        assert!(gen(r, &[(5, 2)]).is_invertible());
        assert!(IdealLat::whole(r).is_invertible());
    }

    #[test]
    fn extension_and_contraction() {
        let r = o(3);
        let d = RingDesc::maximal(3).unwrap();
        let f = gen(r, &[(2, 0), (1, 1)]);
        let two_d = IdealLat::principal(&QuadElem::from_int(d, 2)).unwrap();
        assert_eq!(f.extend(), two_d);
        assert_eq!(two_d.contract(), f);
        let p = gen(r, &[(7, 0), (2, 1)]);
        assert_eq!(p.extend().contract(), p);
        // Z[√−2] is maximal: both maps are the identity
        let q = gen(o(2), &[(3, 0), (1, 1)]);
        assert_eq!(q.extend(), q);
        assert_eq!(q.contract(), q);
    }

    #[test]
    fn parse_round_trip() {
        let d = RingDesc::maximal(7).unwrap();
        let i = IdealLat::from_generators(d, &[QuadElem::new(d, 1, 1)]).unwrap();
        assert_eq!(IdealLat::parse(d, &i.to_string()).unwrap(), i);
        assert!(IdealLat::parse(o(3), "[4, 1+1·η]").is_ok());
        assert!(IdealLat::parse(o(3), "[4, 2+1·η]").is_err());
        assert!(IdealLat::parse(o(3), "4, 1+1·η").is_err());
    }

    #[test]
    fn norm_four_ideals_of_z_sqrt_minus_three() {
        let v: Vec<(i64, i64, i64)> = ideals_of_norm(o(3), 4).iter().map(triple).collect();
        assert_eq!(v, vec![(2, 0, 2), (4, 1, 1), (4, 3, 1)]);
    }

    #[test]
    fn elements_in_norm_order() {
        let r = o(11);
        let p = gen(r, &[(3, 0), (1, 1)]);
        let first: Vec<String> = p.elements().take(3).map(|z| z.to_string()).collect();
        assert_eq!(first, ["-3+0·η", "3+0·η", "-1-1·η"]);
    }
}
