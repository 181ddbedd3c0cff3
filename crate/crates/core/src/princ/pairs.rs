use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Int;
use crate::error::{consistency, usage, Error, Result};
use crate::factor::{is_prime, is_regular, primary_decomposition};
use crate::ideal::IdealLat;
use crate::lattice;
use crate::quad::{enumerate_norm, QuadElem};

/// Default number of candidate generators tried before giving up.
pub const DEFAULT_SEARCH_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `a(1 − a) = cofactor·b`
    Left,
    /// `b(1 − b) = cofactor·a`
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PairWitness {
    pub a: QuadElem,
    pub b: QuadElem,
    pub cofactor: QuadElem,
    pub side: Side,
}

impl PairWitness {
    /// Recomputes the defining identity.
    pub fn verify(&self) -> bool {
        let one = QuadElem::one(self.a.ring());
        match self.side {
            Side::Left => &self.a * &(&one - &self.a) == &self.cofactor * &self.b,
            Side::Right => &self.b * &(&one - &self.b) == &self.cofactor * &self.a,
        }
    }

    /// A trace-1, determinant-0 matrix having `(a, b)` as a row.
    pub fn idempotent_matrix(&self) -> [[QuadElem; 2]; 2] {
        let one = QuadElem::one(self.a.ring());
        match self.side {
            Side::Left => [
                [self.a.clone(), self.b.clone()],
                [self.cofactor.clone(), &one - &self.a],
            ],
            Side::Right => [
                [&one - &self.b, self.cofactor.clone()],
                [self.a.clone(), self.b.clone()],
            ],
        }
    }

    pub fn ideal(&self) -> IdealLat {
        IdealLat::from_generators(self.a.ring(), &[self.a.clone(), self.b.clone()])
            .expect("a pair is never (0, 0)")
    }
}

pub fn is_idempotent_pair(a: &QuadElem, b: &QuadElem) -> Result<Option<PairWitness>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    if a.is_zero() && b.is_zero() {
        return usage("idempotent pair test needs a nonzero element");
    }
    let ring = a.ring();
    let one = QuadElem::one(ring);
    let zero = QuadElem::zero(ring);
    let witness = |cofactor, side| PairWitness {
        a: a.clone(),
        b: b.clone(),
        cofactor,
        side,
    };

    let left = if b.is_zero() {
        (a.is_zero() || a.is_one()).then(|| zero.clone())
    } else {
        QuadElem::divides(b, &(a * &(&one - a)))?
    };
    if let Some(c) = left {
        return Ok(Some(witness(c, Side::Left)));
    }
    let right = if a.is_zero() {
        (b.is_zero() || b.is_one()).then(|| zero.clone())
    } else {
        QuadElem::divides(a, &(b * &(&one - b)))?
    };
    Ok(right.map(|c| witness(c, Side::Right)))
}

/// A generator of `I`, if principal: the first element of norm `N(I)` in
/// `(y, x)` order that lies in `I` and has `y > 0`, or `y = 0` and `x > 0`.
pub fn is_principal(i: &IdealLat) -> Option<QuadElem> {
    enumerate_norm(i.ring(), &i.norm())
        .into_iter()
        .filter(QuadElem::is_positive_half)
        .find(|z| i.contains(z))
}

pub fn is_irreducible(z: &QuadElem) -> Result<bool> {
    if z.is_zero() || z.is_unit() {
        return usage("irreducibility is defined for nonzero non-units");
    }
    let n = z.norm();
    let mut m = Int::from(2);
    while m < n {
        if (&n % &m).is_zero() {
            for w in enumerate_norm(z.ring(), &m) {
                if QuadElem::divides(&w, z)?.is_some() {
                    return Ok(false);
                }
            }
        }
        m += 1;
    }
    Ok(true)
}

/// `a ∈ I` with `a − 1 ∈ J`, from an exact solve of `1` against the stacked
/// bases of `I` and `J`.
pub fn split_comaximal(i: &IdealLat, j: &IdealLat) -> Result<QuadElem> {
    if i.ring() != j.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = i.ring();
    let bi = i.basis();
    let bj = j.basis();
    let rows = [
        bi[0].coords(),
        bi[1].coords(),
        bj[0].coords(),
        bj[1].coords(),
    ];
    let k = lattice::solve(&rows, &[Int::one(), Int::zero()]).ok_or(Error::NotComaximal)?;
    let a = &bi[0].scale(&k[0]) + &bi[1].scale(&k[1]);
    let one = QuadElem::one(ring);
    if !i.contains(&a) || !j.contains(&(&a - &one)) {
        return consistency(format!("split of {i} and {j} failed membership"));
    }
    Ok(a)
}

/// `(λ, μ)` with `target = λ·u + μ·v`, when it exists.
fn solve_combination(
    target: &QuadElem,
    u: &QuadElem,
    v: &QuadElem,
) -> Option<(QuadElem, QuadElem)> {
    let ring = target.ring();
    let theta = QuadElem::theta(ring);
    let rows = [
        u.coords(),
        (&theta * u).coords(),
        v.coords(),
        (&theta * v).coords(),
    ];
    let k = lattice::solve(&rows, &target.coords())?;
    let lambda = QuadElem::new(ring, k[0].clone(), k[1].clone());
    let mu = QuadElem::new(ring, k[2].clone(), k[3].clone());
    Some((lambda, mu))
}

/// An idempotent pair generating `I`, built from `a ∈ I` and `b` with
/// `⟨a², b⟩ = I`. Absent exactly when `I` is not invertible.
pub fn pair_for_ideal(i: &IdealLat, search_cap: usize) -> Result<Option<PairWitness>> {
    let ring = i.ring();
    if i.is_whole() {
        let w = PairWitness {
            a: QuadElem::zero(ring),
            b: QuadElem::one(ring),
            cofactor: QuadElem::zero(ring),
            side: Side::Left,
        };
        return Ok(Some(w));
    }
    if !i.is_invertible() {
        return Ok(None);
    }
    let a = i.elements().next().expect("nonzero ideal has elements");
    let a2 = a.square();
    let candidates = std::iter::once(QuadElem::zero(ring)).chain(i.elements());
    for b in candidates.take(search_cap) {
        if IdealLat::from_generators(ring, &[a2.clone(), b.clone()])? != *i {
            continue;
        }
        let (lambda, mu) = solve_combination(&a, &a2, &b)
            .ok_or_else(|| Error::Consistency(format!("{a} is not in ⟨{a2}, {b}⟩")))?;
        let w = PairWitness {
            a: &lambda * &a,
            b,
            cofactor: &lambda * &mu,
            side: Side::Left,
        };
        if !w.verify() || w.ideal() != *i {
            return consistency(format!("constructed pair for {i} does not verify"));
        }
        return Ok(Some(w));
    }
    Err(Error::SearchExhausted(search_cap))
}

/// An idempotent pair `(a, b)` with `⟨a, b⟩ = P` for a regular prime `P`.
///
/// `b` is the first element of `P \ P²` with `bO` regular; `a` splits `P`
/// against the remaining primary components of `bO`.
pub fn pair_for_regular_prime(p: &IdealLat) -> Result<(PairWitness, QuadElem)> {
    if p.is_whole() || !is_prime(p)? {
        return Err(Error::NotPrime);
    }
    if !is_regular(p) {
        return Err(Error::NotRegular);
    }
    let ring = p.ring();
    let p2 = p.mul(p)?;
    for b in p.elements().take(DEFAULT_SEARCH_CAP) {
        if p2.contains(&b) {
            continue;
        }
        let bo = IdealLat::principal(&b)?;
        if !is_regular(&bo) {
            continue;
        }
        let mut j = IdealLat::whole(ring);
        for comp in primary_decomposition(&bo)? {
            if comp.radical != *p {
                j = j.mul(&comp.primary)?;
            }
        }
        let a = split_comaximal(p, &j)?;
        let w = is_idempotent_pair(&a, &b)?
            .ok_or_else(|| Error::Consistency(format!("({a}, {b}) is not an idempotent pair")))?;
        if w.ideal() != *p {
            return consistency(format!("⟨{a}, {b}⟩ differs from {p}"));
        }
        return Ok((w, b));
    }
    Err(Error::SearchExhausted(DEFAULT_SEARCH_CAP))
}

/// Brute-force search for an idempotent pair generating `I` among its first
/// `cap` elements (and zero).
pub fn search_generating_pair(i: &IdealLat, cap: usize) -> Result<Option<PairWitness>> {
    let ring = i.ring();
    let elems: Vec<QuadElem> = std::iter::once(QuadElem::zero(ring))
        .chain(i.elements())
        .take(cap)
        .collect();
    for a in &elems {
        for b in &elems {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            if let Some(w) = is_idempotent_pair(a, b)? {
                if w.ideal() == *i {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// Brute-force search for `a, b` with `I = ⟨a, b⟩ = ⟨a², b⟩` among the first
/// `cap` elements of `I` (and zero for `b`).
pub fn search_square_generation(i: &IdealLat, cap: usize) -> Result<Option<(QuadElem, QuadElem)>> {
    let ring = i.ring();
    let elems: Vec<QuadElem> = i.elements().take(cap).collect();
    let bs: Vec<QuadElem> = std::iter::once(QuadElem::zero(ring))
        .chain(elems.iter().cloned())
        .collect();
    for a in &elems {
        let a2 = a.square();
        for b in &bs {
            if IdealLat::from_generators(ring, &[a2.clone(), b.clone()])? == *i
                && IdealLat::from_generators(ring, &[a.clone(), b.clone()])? == *i
            {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// An ideal `J` among `candidates` with `I + J = O` and `IJ` principal.
pub fn comaximal_principal_partner<'a>(
    i: &IdealLat,
    candidates: impl IntoIterator<Item = &'a IdealLat>,
) -> Result<Option<IdealLat>> {
    for j in candidates {
        if i.sum(j)?.is_whole() && is_principal(&i.mul(j)?).is_some() {
            return Ok(Some(j.clone()));
        }
    }
    Ok(None)
}

/// `⟨a, b⟩·⟨a − 1, b⟩ = bO`
pub fn pair_product_identity(w: &PairWitness) -> Result<bool> {
    let ring = w.a.ring();
    let a1 = &w.a - &QuadElem::one(ring);
    if w.b.is_zero() {
        // ⟨a⟩⟨a − 1⟩ = 0 only for a ∈ {0, 1}; both sides degenerate
        return Ok(w.a.is_zero() || w.a.is_one());
    }
    let lhs = IdealLat::from_generators(ring, &[w.a.clone(), w.b.clone()])?
        .mul(&IdealLat::from_generators(ring, &[a1, w.b.clone()])?)?;
    Ok(lhs == IdealLat::principal(&w.b)?)
}
