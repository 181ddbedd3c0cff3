//! Conductor, prime ideals, primary decomposition and the primary-chain check.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{factorize, is_prime_u64, primes_up_to, Int};
use crate::error::{consistency, usage, Error, Result};
use crate::ideal::{closed_under_theta, ideals_of_norm, IdealLat};
use crate::lattice::{self, Hnf};
use crate::princ::{is_principal, split_comaximal};
use crate::quad::{QuadElem, RingDesc};

/// `(O : D)`: `⟨2, 1+η⟩` for a proper order, the whole ring otherwise.
pub fn conductor(ring: RingDesc) -> IdealLat {
    if ring.is_maximal() {
        return IdealLat::whole(ring);
    }
    let gens = [QuadElem::from_int(ring, 2), QuadElem::new(ring, 1, 1)];
    IdealLat::from_generators(ring, &gens).expect("nonzero generators")
}

/// The conductor computed as `{x ∈ O : x·ω ∈ O}` directly, i.e. the
/// preimage of `2O` under multiplication by `2ω = 1 + η`.
pub fn conductor_by_colon(ring: RingDesc) -> IdealLat {
    if ring.is_maximal() {
        return IdealLat::whole(ring);
    }
    let two_omega = QuadElem::new(ring, 1, 1);
    let two = Hnf {
        a: Int::from(2),
        b: Int::zero(),
        c: Int::from(2),
    };
    let h = lattice::preimage(&two_omega.mul_matrix(), &two).expect("injective");
    IdealLat::from_hnf(ring, h.a, h.b, h.c).expect("preimage of an ideal is an ideal")
}

/// Comaximal with the conductor.
pub fn is_regular(i: &IdealLat) -> bool {
    i.sum(&conductor(i.ring())).expect("same ring").is_whole()
}

/// The rational prime under a prime ideal: the smallest prime factor of its norm.
pub fn rational_prime_below(p: &IdealLat) -> Option<u64> {
    factorize(&p.norm()).first().and_then(|(q, _)| q.to_u64())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// Prime ideals containing the rational prime `p`.
///
/// Scans the `p + 1` index-`p` lattices between `pO` and `O` for θ-closure;
/// when none survives, `pO` itself is prime.
pub fn primes_above(ring: RingDesc, p: u64) -> Vec<IdealLat> {
    let (tp, tq) = ring.theta_square();
    let tp = tp.to_i128().expect("small d");
    let tq = tq.to_i128().expect("small d");
    let pp = p as i128;
    let mut out = Vec::new();
    let col = Hnf {
        a: 1i128,
        b: 0,
        c: pp,
    };
    if closed_under_theta(&col, &tp, &tq) {
        out.push(IdealLat::from_hnf(ring, Int::one(), Int::zero(), Int::from(p)).expect("closed"));
    }
    for b in 0..pp {
        let h = Hnf { a: pp, b, c: 1 };
        if closed_under_theta(&h, &tp, &tq) {
            out.push(
                IdealLat::from_hnf(ring, Int::from(p), Int::from(b), Int::one()).expect("closed"),
            );
        }
    }
    if out.is_empty() {
        out.push(IdealLat::principal(&QuadElem::from_int(ring, p)).expect("p > 0"));
    }
    out
}

pub fn splitting(ring: RingDesc, p: u64) -> Splitting {
    let ps = primes_above(ring, p);
    match ps.len() {
        2 => Splitting::Split,
        _ if ps[0].norm() == Int::from(p) => Splitting::Ramified,
        _ => Splitting::Inert,
    }
}

/// Whether `θ² − qθ − p'` (the minimal polynomial of θ) has no root mod `p`,
/// i.e. whether `O/pO` is a field. Brute force over residues.
pub fn residue_ring_is_field(ring: RingDesc, p: u64) -> bool {
    let (tp, tq) = ring.theta_square();
    let p = Int::from(p);
    let mut r = Int::zero();
    while r < p {
        let v = &r * &r - &tq * &r - &tp;
        if v.is_multiple_of(&p) {
            return false;
        }
        r += 1;
    }
    true
}

fn require_proper(i: &IdealLat) -> Result<()> {
    if i.is_whole() {
        usage("operation needs a proper ideal (norm > 1)")
    } else {
        Ok(())
    }
}

/// Prime ideals containing `I`, ordered by rational prime then HNF.
pub fn primes_containing(i: &IdealLat) -> Vec<IdealLat> {
    let mut out = Vec::new();
    for (p, _) in factorize(&i.norm()) {
        let p = p.to_u64().expect("norm fits u64");
        out.extend(
            primes_above(i.ring(), p)
                .into_iter()
                .filter(|q| q.contains_ideal(i)),
        );
    }
    out
}

pub fn is_prime(i: &IdealLat) -> Result<bool> {
    require_proper(i)?;
    let n = i.norm();
    let f = factorize(&n);
    if f.len() != 1 {
        return Ok(false);
    }
    let (p, e) = &f[0];
    match e {
        1 => Ok(true),
        2 => {
            let pu = p.to_u64().expect("norm fits u64");
            let po = IdealLat::principal(&QuadElem::from_int(i.ring(), p.clone()))?;
            Ok(*i == po && residue_ring_is_field(i.ring(), pu))
        }
        _ => Ok(false),
    }
}

pub fn is_primary(i: &IdealLat) -> Result<bool> {
    require_proper(i)?;
    Ok(primes_containing(i).len() == 1)
}

pub fn radical(i: &IdealLat) -> Result<IdealLat> {
    require_proper(i)?;
    let ps = primes_containing(i);
    let mut it = ps.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::Consistency("proper ideal with no prime above it".into()))?;
    it.try_fold(first, |acc, q| acc.intersect(&q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimaryComponent {
    pub primary: IdealLat,
    pub radical: IdealLat,
    pub regular: bool,
    /// `e` with `primary = radical^e`, present exactly for regular components.
    pub exponent: Option<u32>,
}

const SATURATION_CAP: usize = 64;

/// Exponent `e` with `P^e = Q`, if `Q` is a power of `P`.
pub fn power_exponent(p: &IdealLat, q: &IdealLat) -> Option<u32> {
    let np = p.norm();
    let mut nq = q.norm();
    let mut e = 0u32;
    while nq > Int::one() {
        let (quo, rem) = nq.div_rem(&np);
        if !rem.is_zero() {
            return None;
        }
        nq = quo;
        e += 1;
    }
    (p.pow(e) == *q).then_some(e)
}

pub fn primary_decomposition(i: &IdealLat) -> Result<Vec<PrimaryComponent>> {
    primary_decomposition_shifted(i, &Int::zero())
}

/// Primary decomposition where each saturation element `s` is replaced by
/// `s + shift·N(I)`; every choice must give the same components.
pub fn primary_decomposition_shifted(i: &IdealLat, shift: &Int) -> Result<Vec<PrimaryComponent>> {
    require_proper(i)?;
    let primes = primes_containing(i);
    let ring = i.ring();
    let mut comps = Vec::with_capacity(primes.len());
    for (k, p) in primes.iter().enumerate() {
        let q = if primes.len() == 1 {
            i.clone()
        } else {
            let mut others = IdealLat::whole(ring);
            for (j, pj) in primes.iter().enumerate() {
                if j != k {
                    others = others.intersect(pj)?;
                }
            }
            // s ∈ ∩_{j≠k} P_j and s − 1 ∈ P_k
            let s = split_comaximal(&others, p)?;
            let s = &s + &QuadElem::from_int(ring, shift * i.norm());
            let so = IdealLat::principal(&s)?;
            let mut cur = i.clone();
            let mut steps = 0;
            loop {
                let next = cur.colon(&so)?;
                if next == cur {
                    break cur;
                }
                cur = next;
                steps += 1;
                if steps > SATURATION_CAP {
                    return consistency(format!("saturation of {i} did not stabilize"));
                }
            }
        };
        let regular = is_regular(p);
        let exponent = if regular {
            match power_exponent(p, &q) {
                Some(e) => Some(e),
                None => return consistency(format!("regular component {q} is not a power of {p}")),
            }
        } else {
            None
        };
        comps.push(PrimaryComponent {
            primary: q,
            radical: p.clone(),
            regular,
            exponent,
        });
    }

    let mut prod = IdealLat::whole(ring);
    for c in &comps {
        prod = prod.mul(&c.primary)?;
    }
    if prod != *i {
        return consistency(format!("primary components of {i} multiply to {prod}"));
    }
    for (a, ca) in comps.iter().enumerate() {
        for cb in &comps[a + 1..] {
            if !ca.primary.sum(&cb.primary)?.is_whole() {
                return consistency("primary components are not comaximal");
            }
        }
    }
    Ok(comps)
}

/// The `P`-primary ideals up to a norm bound and whether they form a chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub prime: IdealLat,
    pub regular: bool,
    pub norm_bound: u64,
    pub ideals: Vec<IdealLat>,
    pub is_chain: bool,
    pub incomparable: Option<(IdealLat, IdealLat)>,
    /// `P`-exponent of each listed ideal when `P` is regular.
    pub exponents: Option<Vec<Option<u32>>>,
    /// `is_chain == regular`.
    pub consistent: bool,
}

pub fn primary_chain_check(p: &IdealLat, norm_bound: u64) -> Result<ChainReport> {
    if p.is_whole() || !is_prime(p)? {
        return Err(Error::NotPrime);
    }
    let ring = p.ring();
    let rational = rational_prime_below(p).expect("prime ideal has prime norm power");
    let mut ideals = Vec::new();
    let mut n = rational;
    while n <= norm_bound {
        for cand in ideals_of_norm(ring, n) {
            if primes_containing(&cand) == std::slice::from_ref(p) {
                ideals.push(cand);
            }
        }
        n = match n.checked_mul(rational) {
            Some(m) => m,
            None => break,
        };
    }
    let mut incomparable = None;
    'outer: for (i, a) in ideals.iter().enumerate() {
        for b in &ideals[i + 1..] {
            if !a.contains_ideal(b) && !b.contains_ideal(a) {
                incomparable = Some((a.clone(), b.clone()));
                break 'outer;
            }
        }
    }
    let regular = is_regular(p);
    let exponents = regular.then(|| ideals.iter().map(|q| power_exponent(p, q)).collect());
    let is_chain = incomparable.is_none();
    Ok(ChainReport {
        prime: p.clone(),
        regular,
        norm_bound,
        ideals,
        is_chain,
        incomparable,
        exponents,
        consistent: is_chain == regular,
    })
}

/// Rational primes that must be checked to decide whether the maximal order
/// is a PID. Uses `π > 3`, so the list covers the Minkowski bound
/// `(2/π)·√|disc|`.
pub fn class_group_prime_bound(ring: RingDesc) -> Vec<u64> {
    let disc = ring.disc().unsigned_abs();
    primes_up_to(disc)
        .into_iter()
        .filter(|&p| 9 * p * p <= 4 * disc)
        .collect()
}

/// First non-principal prime of the maximal order below the class-group bound.
pub fn nonprincipal_small_prime(d: u64) -> Result<Option<IdealLat>> {
    let ring = RingDesc::maximal(d)?;
    for p in class_group_prime_bound(ring) {
        for q in primes_above(ring, p) {
            if is_principal(&q).is_none() {
                return Ok(Some(q));
            }
        }
    }
    Ok(None)
}

pub fn is_pid_maximal(d: u64) -> Result<bool> {
    Ok(nonprincipal_small_prime(d)?.is_none())
}

/// First non-principal prime of the maximal order above an odd prime `p`
/// not dividing the conductor, scanning `p` upward to `p_max`.
pub fn nonprincipal_odd_prime(d: u64, p_max: u64) -> Result<Option<IdealLat>> {
    let ring = RingDesc::maximal(d)?;
    for p in primes_up_to(p_max).into_iter().filter(|&p| p != 2) {
        debug_assert!(is_prime_u64(p));
        for q in primes_above(ring, p) {
            if is_principal(&q).is_none() {
                return Ok(Some(q));
            }
        }
    }
    Ok(None)
}
