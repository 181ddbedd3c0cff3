//! Certificates: canonical JSON records of a run, and an independent replay
//! check that only uses element and ideal arithmetic.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, to_u64, Int};
use crate::error::{Error, Result};
use crate::ideal::IdealLat;
use crate::princ::{PairWitness, Side};
use crate::quad::{enumerate_norm, QuadElem, RingDesc, RingKind};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub a: String,
    pub b: String,
    pub cofactor: String,
    pub side: Side,
}

impl From<&PairWitness> for PairRecord {
    fn from(w: &PairWitness) -> Self {
        PairRecord {
            a: w.a.to_string(),
            b: w.b.to_string(),
            cofactor: w.cofactor.to_string(),
            side: w.side,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// `gO` equals the ideal.
    Generator {
        generator: String,
    },
    /// No element of norm `norm` lies in the ideal, and `norm` is the ideal's norm.
    EmptyFiber {
        norm: String,
    },
    /// The ideal has prime norm.
    PrimeNorm {
        norm: String,
    },
    /// The ideal is comaximal with `⟨2, 1 + η⟩` (or the order is maximal).
    Regular,
    NotInvertible,
    /// `I² = factor·I`
    SquareIsMultiple {
        factor: String,
    },
    /// `⟨a, b⟩·⟨a − 1, b⟩ = bO` for the attached pair.
    ProductIdentity,
    /// `value² < bound²` with `bound = 1 + d`, and `value` divides `bound`.
    Inequality {
        value: String,
        bound: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub ring: RingKind,
    pub ideal: String,
    pub pair: Option<PairRecord>,
    pub evidence: Vec<Evidence>,
}

impl WitnessRecord {
    pub fn new(ideal: &IdealLat, pair: Option<&PairWitness>, evidence: Vec<Evidence>) -> Self {
        WitnessRecord {
            ring: ideal.ring().kind(),
            ideal: ideal.to_string(),
            pair: pair.map(PairRecord::from),
            evidence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: String,
    pub d: u64,
    pub command: String,
    pub verdict: serde_json::Value,
    pub witnesses: Vec<WitnessRecord>,
    pub bounds: BTreeMap<String, u64>,
    pub self_check: bool,
}

impl Certificate {
    /// Assembles a certificate and replays it; `self_check` is set only after
    /// the replay succeeds.
    pub fn build(
        d: u64,
        command: impl Into<String>,
        verdict: &impl Serialize,
        witnesses: Vec<WitnessRecord>,
        bounds: BTreeMap<String, u64>,
    ) -> Result<Certificate> {
        let verdict =
            serde_json::to_value(verdict).map_err(|e| Error::Consistency(e.to_string()))?;
        let mut cert = Certificate {
            schema_version: SCHEMA_VERSION.to_string(),
            d,
            command: command.into(),
            verdict,
            witnesses,
            bounds,
            self_check: false,
        };
        verify_certificate(&cert)?;
        cert.self_check = true;
        Ok(cert)
    }

    /// Canonical JSON: keys sorted at every level, two-space indentation,
    /// trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("certificate serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn fail<T>(w: &WitnessRecord, what: &str) -> Result<T> {
    Err(Error::Consistency(format!("witness {}: {what}", w.ideal)))
}

fn parse_int(s: &str) -> Result<Int> {
    s.parse()
        .map_err(|_| Error::Parse(format!("malformed integer {s:?}")))
}

fn check_pair(
    ring: RingDesc,
    ideal: &IdealLat,
    p: &PairRecord,
) -> Result<(QuadElem, QuadElem, bool)> {
    let a = QuadElem::parse(ring, &p.a)?;
    let b = QuadElem::parse(ring, &p.b)?;
    let c = QuadElem::parse(ring, &p.cofactor)?;
    let one = QuadElem::one(ring);
    let identity = match p.side {
        Side::Left => &a * &(&one - &a) == &c * &b,
        Side::Right => &b * &(&one - &b) == &c * &a,
    };
    let generated = IdealLat::from_generators(ring, &[a.clone(), b.clone()])?;
    Ok((a, b, identity && generated == *ideal))
}

/// Replays every witness of a certificate from scratch.
pub fn verify_certificate(cert: &Certificate) -> Result<()> {
    if cert.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "unknown schema version {}",
            cert.schema_version
        )));
    }
    for w in &cert.witnesses {
        let ring = RingDesc::new(cert.d, w.ring)?;
        let ideal = IdealLat::parse(ring, &w.ideal)?;
        let pair = match &w.pair {
            Some(p) => {
                let (a, b, ok) = check_pair(ring, &ideal, p)?;
                if !ok {
                    return fail(w, "pair identity or generated ideal does not match");
                }
                Some((a, b))
            }
            None => None,
        };
        for e in &w.evidence {
            let ok = match e {
                Evidence::Generator { generator } => {
                    let g = QuadElem::parse(ring, generator)?;
                    !g.is_zero() && IdealLat::principal(&g)? == ideal
                }
                Evidence::EmptyFiber { norm } => {
                    let n = parse_int(norm)?;
                    n == ideal.norm() && enumerate_norm(ring, &n).iter().all(|z| !ideal.contains(z))
                }
                Evidence::PrimeNorm { norm } => {
                    let n = parse_int(norm)?;
                    n == ideal.norm() && to_u64(&n).is_some_and(is_prime_u64)
                }
                Evidence::Regular => {
                    if ring.is_maximal() {
                        true
                    } else {
                        let f = IdealLat::from_generators(
                            ring,
                            &[QuadElem::from_int(ring, 2), QuadElem::new(ring, 1, 1)],
                        )?;
                        ideal.sum(&f)?.is_whole()
                    }
                }
                Evidence::NotInvertible => !ideal.colon_ring_over().mul_ideal(&ideal).is_whole(),
                Evidence::SquareIsMultiple { factor } => {
                    let k = QuadElem::from_int(ring, parse_int(factor)?);
                    ideal.mul(&ideal)? == ideal.mul_elem(&k)?
                }
                Evidence::ProductIdentity => match &pair {
                    Some((a, b)) if !b.is_zero() => {
                        let a1 = a - &QuadElem::one(ring);
                        let lhs = IdealLat::from_generators(ring, &[a.clone(), b.clone()])?
                            .mul(&IdealLat::from_generators(ring, &[a1, b.clone()])?)?;
                        lhs == IdealLat::principal(b)?
                    }
                    _ => false,
                },
                Evidence::Inequality { value, bound } => {
                    let v = parse_int(value)?;
                    let b = parse_int(bound)?;
                    b == Int::from(cert.d) + Int::one()
                        && !v.is_zero()
                        && (&b % &v).is_zero()
                        && &v * &v < &b * &b
                }
            };
            if !ok {
                return fail(w, &format!("evidence {e:?} does not replay"));
            }
        }
    }
    Ok(())
}
