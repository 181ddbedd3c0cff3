use num_integer::Integer;
use serde::Serialize;

use crate::arith::{is_prime_u64, primes_up_to, Int};
use crate::error::{consistency, usage, Error, Result};
use crate::factor::{is_regular, primes_above, splitting, Splitting};
use crate::ideal::IdealLat;
use crate::quad::{enumerate_norm, QuadElem, RingDesc};

use super::pairs::{is_principal, pair_for_regular_prime, PairWitness};

/// A regular prime that is not principal, with the pair that generates it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeWitness {
    pub rational_prime: u64,
    pub ideal: IdealLat,
    pub pair: PairWitness,
    pub b_choice: QuadElem,
    pub regular: bool,
    /// Number of ring elements of norm `N(P)`; none of them lies in `P`.
    pub fiber_size: usize,
}

/// Builds and checks the witness for a prime `P` lying over `p`.
pub fn prime_witness(p: u64, ideal: &IdealLat) -> Result<PrimeWitness> {
    let fiber = enumerate_norm(ideal.ring(), &ideal.norm());
    if fiber.iter().any(|z| ideal.contains(z)) {
        return consistency(format!("{ideal} is principal"));
    }
    let (pair, b_choice) = pair_for_regular_prime(ideal)?;
    Ok(PrimeWitness {
        rational_prime: p,
        ideal: ideal.clone(),
        pair,
        b_choice,
        regular: is_regular(ideal),
        fiber_size: fiber.len(),
    })
}

/// Smallest odd prime `p` dividing `1 + d` with `p ≠ 1 + d`.
pub fn odd_prime_divisor(d: u64) -> Option<u64> {
    let n = d + 1;
    (3..n)
        .step_by(2)
        .find(|&p| n.is_multiple_of(p) && is_prime_u64(p))
}

/// The non-principal regular prime `⟨p, 1 + η⟩` of `Z[√−d]`.
pub fn nonprincipal_witness(d: u64) -> Result<PrimeWitness> {
    let ring = RingDesc::order(d)?;
    let p = odd_prime_divisor(d).ok_or(Error::NoOddPrimeDivisor(d))?;
    let ideal = IdealLat::from_generators(
        ring,
        &[QuadElem::from_int(ring, p), QuadElem::new(ring, 1, 1)],
    )?;
    if ideal.norm() != Int::from(p) {
        return consistency(format!("⟨{p}, 1+η⟩ has norm {}", ideal.norm()));
    }
    if !is_regular(&ideal) {
        return consistency(format!("⟨{p}, 1+η⟩ is not regular"));
    }
    prime_witness(p, &ideal)
}

/// Units of `Z[ω]`, `d = 3`, in the order they are tried: `1, −1, ω, 1 − ω, −1 + ω, −ω`.
fn eisenstein_units(ring: RingDesc) -> [QuadElem; 6] {
    [(1, 0), (-1, 0), (0, 1), (1, -1), (-1, 1), (0, -1)].map(|(x, y)| QuadElem::new(ring, x, y))
}

fn check_eisenstein(z: &QuadElem) -> Result<RingDesc> {
    let ring = z.ring();
    if ring.d() != 3 || !ring.uses_omega() {
        return usage("unit normalization works in Z[(1+√-3)/2]");
    }
    Ok(ring.order_ring())
}

/// First unit `u` with `z·u ∈ Z[√−3]`, and `z·u` written in that order.
pub fn unit_normalize(z: &QuadElem) -> Result<(QuadElem, QuadElem)> {
    let order = check_eisenstein(z)?;
    for u in eisenstein_units(z.ring()) {
        if let Some(zu) = (z * &u).convert(order)? {
            return Ok((u, zu));
        }
    }
    consistency(format!("no unit moves {z} into the order"))
}

/// All units `u` with `z·u ∈ Z[√−3]`.
pub fn working_units(z: &QuadElem) -> Result<Vec<QuadElem>> {
    let order = check_eisenstein(z)?;
    let mut out = Vec::new();
    for u in eisenstein_units(z.ring()) {
        if (z * &u).convert(order)?.is_some() {
            out.push(u);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub p: u64,
    pub splitting: Splitting,
    pub primes: Vec<IdealLat>,
    pub generators: Vec<QuadElem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub d: u64,
    pub p_max: u64,
    pub entries: Vec<ScanEntry>,
    /// Elements of the maximal order with odd prime norm whose parity was checked.
    pub parity_checked: usize,
}

/// Every prime of `Z[√−d]`, `d ∈ {3, 7}`, above an odd prime `p ≤ p_max` is
/// principal; for `d = 7` every `α = (a + bη)/2` of odd prime norm has `a`, `b` even.
pub fn odd_prime_principality_scan(d: u64, p_max: u64) -> Result<ScanReport> {
    if d != 3 && d != 7 {
        return usage("the odd-prime scan applies to d = 3 and d = 7");
    }
    let ring = RingDesc::order(d)?;
    let max = RingDesc::maximal(d)?;
    let mut entries = Vec::new();
    let mut parity_checked = 0;
    for p in primes_up_to(p_max).into_iter().filter(|&p| p != 2) {
        let primes = primes_above(ring, p);
        let mut generators = Vec::with_capacity(primes.len());
        for q in &primes {
            match is_principal(q) {
                Some(g) => generators.push(g),
                None => return consistency(format!("{q} above {p} is not principal")),
            }
        }
        if d == 7 {
            for alpha in enumerate_norm(max, &Int::from(p)) {
                // ω-coordinate y equals b in α = (a + bη)/2, and a = 2x + y
                if alpha.y().is_odd() {
                    return consistency(format!("{alpha} has norm {p} with odd η-coordinates"));
                }
                parity_checked += 1;
            }
        }
        entries.push(ScanEntry {
            p,
            splitting: splitting(ring, p),
            primes,
            generators,
        });
    }
    Ok(ScanReport {
        d,
        p_max,
        entries,
        parity_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3() -> RingDesc {
        RingDesc::maximal(3).unwrap()
    }

    #[test]
    fn unit_normalize_examples() {
        let r = m3();
        let o = r.order_ring();
        let (u, zu) = unit_normalize(&QuadElem::new(r, 0, 1)).unwrap();
        assert_eq!((u, zu), (QuadElem::new(r, 1, -1), QuadElem::one(o)));
        // (3 + η)/2 = 1 + ω
        let (u, zu) = unit_normalize(&QuadElem::new(r, 1, 1)).unwrap();
        assert_eq!((u, zu), (QuadElem::new(r, 0, 1), QuadElem::theta(o)));
        let (u, zu) = unit_normalize(&QuadElem::from_int(r, 2)).unwrap();
        assert_eq!((u, zu), (QuadElem::one(r), QuadElem::from_int(o, 2)));
        assert!(unit_normalize(&QuadElem::new(o, 1, 1)).is_err());
    }

    #[test]
    fn witness_primes() {
        for (d, p) in [(11, 3), (19, 5), (43, 11), (67, 17), (163, 41)] {
            let w = nonprincipal_witness(d).unwrap();
            assert_eq!(w.rational_prime, p);
            assert_eq!(w.ideal.norm(), Int::from(p));
            assert!(w.pair.verify() && w.regular);
            assert_eq!(w.pair.ideal(), w.ideal);
        }
        assert_eq!(nonprincipal_witness(7), Err(Error::NoOddPrimeDivisor(7)));
        assert_eq!(nonprincipal_witness(3), Err(Error::NoOddPrimeDivisor(3)));
    }

    #[test]
    fn scan_examples() {
        let s3 = odd_prime_principality_scan(3, 7).unwrap();
        let e: Vec<_> = s3.entries.iter().map(|e| (e.p, e.splitting)).collect();
        assert_eq!(
            e,
            [
                (3, Splitting::Ramified),
                (5, Splitting::Inert),
                (7, Splitting::Split)
            ]
        );
        let gens: Vec<String> = s3.entries[2]
            .generators
            .iter()
            .map(|g| g.to_string())
            .collect();
        assert_eq!(gens, ["2+1·η", "-2+1·η"]);
        assert_eq!(s3.entries[0].generators[0].to_string(), "0+1·η");
        let s7 = odd_prime_principality_scan(7, 3).unwrap();
        assert_eq!(s7.entries[0].splitting, Splitting::Inert);
        assert_eq!(s7.entries[0].generators[0].to_string(), "3+0·η");
        assert!(odd_prime_principality_scan(11, 10).is_err());
    }
}
