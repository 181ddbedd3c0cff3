//! Runs each analysis end to end and packages the result as a certificate.
//! Shared by the command-line front end and the acceptance tests.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime_u64, primes_up_to, Int};
use crate::cert::{Certificate, Evidence, WitnessRecord};
use crate::error::{consistency, usage, Error, Result};
use crate::factor::{
    conductor, conductor_by_colon, is_regular, primary_chain_check, primes_above, ChainReport,
};
use crate::ideal::{enumerate_ideals, FracIdeal, IdealLat};
use crate::princ::{
    classify, comaximal_principal_partner, is_irreducible, is_principal,
    odd_prime_principality_scan, pair_for_ideal, pair_product_identity, search_generating_pair,
    search_square_generation, unit_normalize, working_units, PairWitness, PrincVerdict, Route,
    SearchBounds, Status, VerdictWitness, DEFAULT_SEARCH_CAP,
};
use crate::quad::{QuadElem, RingDesc};

/// Candidate elements tried by the brute-force pair search.
const PAIR_SEARCH_CAP: usize = 20;
/// Candidate elements tried by the `⟨a, b⟩ = ⟨a², b⟩` search.
const SQUARE_SEARCH_CAP: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckId {
    PairEquivalence,
    PrimaryChain,
    NonprincipalIdeal,
    UnitNormalize,
    OddPrimes,
    InvertiblePrincipal,
    Conductor,
}

impl CheckId {
    pub const ALL: [CheckId; 7] = [
        CheckId::PairEquivalence,
        CheckId::PrimaryChain,
        CheckId::NonprincipalIdeal,
        CheckId::UnitNormalize,
        CheckId::OddPrimes,
        CheckId::InvertiblePrincipal,
        CheckId::Conductor,
    ];

    /// Short identifier accepted on the command line.
    pub fn id(self) -> &'static str {
        match self {
            CheckId::PairEquivalence => "thm1.3",
            CheckId::PrimaryChain => "lem2.3",
            CheckId::NonprincipalIdeal => "prop3.1",
            CheckId::UnitNormalize => "lem4.1",
            CheckId::OddPrimes => "thm4.2",
            CheckId::InvertiblePrincipal => "prop4.5",
            CheckId::Conductor => "conductor",
        }
    }

    /// Descriptive name, also accepted on the command line.
    pub fn name(self) -> &'static str {
        match self {
            CheckId::PairEquivalence => "pair-equivalence",
            CheckId::PrimaryChain => "primary-chain",
            CheckId::NonprincipalIdeal => "nonprincipal-ideal",
            CheckId::UnitNormalize => "unit-normalize",
            CheckId::OddPrimes => "odd-primes",
            CheckId::InvertiblePrincipal => "invertible-principal",
            CheckId::Conductor => "conductor",
        }
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckId> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.id() == s || c.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub coord_bound: u64,
    /// Falls back to a per-check default when absent.
    pub norm_bound: Option<u64>,
    pub p_max: u64,
    pub box_bound: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            coord_bound: 25,
            norm_bound: None,
            p_max: 500,
            box_bound: 50,
        }
    }
}

impl Options {
    pub fn search_bounds(&self) -> SearchBounds {
        SearchBounds {
            coord_bound: self.coord_bound,
            norm_bound: self.norm_bound.unwrap_or(2000),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Completed,
    /// A check found an instance contradicting what was expected for this `d`
    /// (never a contradiction of a theorem).
    Counterexample(String),
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub certificate: Certificate,
    pub outcome: Outcome,
}

fn completed(certificate: Certificate) -> RunResult {
    RunResult {
        certificate,
        outcome: Outcome::Completed,
    }
}

fn bounds_map(entries: &[(&str, u64)]) -> BTreeMap<String, u64> {
    entries.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn order(d: u64) -> Result<RingDesc> {
    RingDesc::order(d)
}

/// Evidence that a witness ideal has no generator, plus whatever else holds.
pub fn verdict_witness_record(d: u64, w: &VerdictWitness) -> WitnessRecord {
    let n = w.ideal.norm();
    let mut ev = vec![Evidence::EmptyFiber {
        norm: n.to_string(),
    }];
    if n.to_u64().is_some_and(is_prime_u64) {
        ev.push(Evidence::PrimeNorm {
            norm: n.to_string(),
        });
    }
    if is_regular(&w.ideal) {
        ev.push(Evidence::Regular);
    }
    ev.push(Evidence::ProductIdentity);
    if w.route == Route::OddDivisor {
        ev.push(Evidence::Inequality {
            value: n.to_string(),
            bound: (d + 1).to_string(),
        });
    }
    WitnessRecord::new(&w.ideal, Some(&w.pair), ev)
}

pub fn classify_certificate(d: u64, bounds: SearchBounds) -> Result<Certificate> {
    let v = classify(d, bounds)?;
    certificate_for_verdict(&v, "classify")
}

pub fn certificate_for_verdict(v: &PrincVerdict, command: &str) -> Result<Certificate> {
    let witnesses = v
        .witness
        .iter()
        .map(|w| verdict_witness_record(v.d, w))
        .collect();
    let b = v.search_bounds;
    Certificate::build(
        v.d,
        command,
        v,
        witnesses,
        bounds_map(&[("coord_bound", b.coord_bound), ("norm_bound", b.norm_bound)]),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub d: u64,
    pub status: Status,
    pub witness: Option<IdealLat>,
    pub rational_prime: Option<u64>,
}

impl SummaryRow {
    pub fn from_certificate(cert: &Certificate) -> Result<SummaryRow> {
        let v: serde_json::Value = cert.verdict.clone();
        let status = match v.get("status").and_then(|s| s.as_str()) {
            Some("PID") => Status::PID,
            Some("PrincProperOrder") => Status::PrincProperOrder,
            Some("NotPrinc") => Status::NotPrinc,
            Some("Undetermined") => Status::Undetermined,
            _ => return consistency("certificate has no verdict status"),
        };
        let ring = order(cert.d)?;
        let w = v.get("witness").filter(|w| !w.is_null());
        let witness = match w.and_then(|w| w.get("ideal")).and_then(|s| s.as_str()) {
            Some(s) => Some(IdealLat::parse(ring, s)?),
            None => None,
        };
        let rational_prime = w
            .and_then(|w| w.get("rational_prime"))
            .and_then(|p| p.as_u64());
        Ok(SummaryRow {
            d: cert.d,
            status,
            witness,
            rational_prime,
        })
    }
}

pub fn summary_json(rows: &[SummaryRow]) -> String {
    let v = serde_json::to_value(rows).expect("summary serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

/// Parses `1,2,3` into square-free values; empty lists are a usage error.
pub fn parse_d_list(s: &str) -> Result<Vec<u64>> {
    let ds: Vec<u64> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Usage(format!("bad d {t:?}"))))
        .collect::<Result<_>>()?;
    if ds.is_empty() {
        return usage("empty d list");
    }
    for &d in &ds {
        order(d)?;
    }
    Ok(ds)
}

/// One certificate per `d`, computed concurrently, returned in input order.
pub fn sweep_certificates(ds: &[u64], bounds: SearchBounds) -> Result<Vec<Certificate>> {
    ds.par_iter()
        .map(|&d| classify_certificate(d, bounds))
        .collect()
}

pub fn run_check(id: CheckId, d: u64, opts: &Options) -> Result<RunResult> {
    order(d)?;
    match id {
        CheckId::Conductor => check_conductor(d),
        CheckId::PairEquivalence => check_pair_equivalence(d, opts.norm_bound.unwrap_or(60)),
        CheckId::PrimaryChain => check_primary_chain(d, opts.norm_bound.unwrap_or(50)),
        CheckId::NonprincipalIdeal => check_nonprincipal_ideal(d),
        CheckId::UnitNormalize => check_unit_normalize(d, opts.box_bound),
        CheckId::OddPrimes => check_odd_primes(d, opts.p_max),
        CheckId::InvertiblePrincipal => {
            check_invertible_principal(d, opts.norm_bound.unwrap_or(2000))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConductorReport {
    pub d: u64,
    pub proper_order: bool,
    pub conductor: IdealLat,
    pub norm: String,
    pub matches_colon: bool,
    pub square: IdealLat,
    pub square_is_twice: bool,
    pub generator: Option<QuadElem>,
    pub invertible: bool,
    pub colon_ring: FracIdeal,
    pub colon_times_conductor: FracIdeal,
    pub colon_times_conductor_is_conductor: bool,
}

pub fn conductor_report(d: u64) -> Result<ConductorReport> {
    let ring = order(d)?;
    let f = conductor(ring);
    let square = f.mul(&f)?;
    let colon_ring = f.colon_ring_over();
    let colon_times_conductor = colon_ring.mul_ideal(&f);
    Ok(ConductorReport {
        d,
        proper_order: ring.is_proper_order(),
        norm: f.norm().to_string(),
        matches_colon: f == conductor_by_colon(ring),
        square_is_twice: square == f.mul_elem(&QuadElem::from_int(ring, 2))?,
        generator: is_principal(&f),
        invertible: f.is_invertible(),
        colon_times_conductor_is_conductor: colon_times_conductor
            == FracIdeal::new(f.clone(), Int::from(1)),
        conductor: f,
        square,
        colon_ring,
        colon_times_conductor,
    })
}

fn check_conductor(d: u64) -> Result<RunResult> {
    let r = conductor_report(d)?;
    if !r.matches_colon {
        return consistency("conductor differs from its colon description");
    }
    let mut witnesses = Vec::new();
    if r.proper_order {
        if !r.square_is_twice
            || r.generator.is_some()
            || r.invertible
            || !r.colon_times_conductor_is_conductor
        {
            return consistency(format!("conductor facts fail for d = {d}"));
        }
        witnesses.push(WitnessRecord::new(
            &r.conductor,
            None,
            vec![
                Evidence::EmptyFiber {
                    norm: r.norm.clone(),
                },
                Evidence::NotInvertible,
                Evidence::SquareIsMultiple { factor: "2".into() },
            ],
        ));
    }
    Ok(completed(Certificate::build(
        d,
        "check conductor",
        &r,
        witnesses,
        BTreeMap::new(),
    )?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceInstance {
    pub ideal: IdealLat,
    pub invertible: bool,
    /// Constructed from `⟨a², b⟩ = I`.
    pub pair: Option<PairWitness>,
    /// Brute-force pair among small elements.
    pub searched_pair: Option<PairWitness>,
    pub square_generation: Option<(QuadElem, QuadElem)>,
    pub partner: Option<IdealLat>,
    pub product_identity: Option<bool>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub d: u64,
    pub norm_bound: u64,
    pub pair_search_cap: usize,
    pub square_search_cap: usize,
    pub instances: Vec<EquivalenceInstance>,
    pub all_agree: bool,
}

pub fn pair_equivalence_report(d: u64, norm_bound: u64) -> Result<EquivalenceReport> {
    let ring = order(d)?;
    let ideals = enumerate_ideals(ring, norm_bound);
    let instances = ideals
        .par_iter()
        .map(|i| {
            let invertible = i.is_invertible();
            let pair = pair_for_ideal(i, DEFAULT_SEARCH_CAP)?;
            let searched_pair = search_generating_pair(i, PAIR_SEARCH_CAP)?;
            let square_generation = search_square_generation(i, SQUARE_SEARCH_CAP)?;
            let partner = comaximal_principal_partner(i, &ideals)?;
            let product_identity = match &pair {
                Some(w) => Some(pair_product_identity(w)?),
                None => None,
            };
            let pair_generated = pair.is_some() || searched_pair.is_some();
            let agree = pair_generated == invertible
                && square_generation.is_some() == invertible
                && partner.is_some() == invertible
                && product_identity != Some(false);
            Ok(EquivalenceInstance {
                ideal: i.clone(),
                invertible,
                pair,
                searched_pair,
                square_generation,
                partner,
                product_identity,
                agree,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_agree = instances.iter().all(|x| x.agree);
    Ok(EquivalenceReport {
        d,
        norm_bound,
        pair_search_cap: PAIR_SEARCH_CAP,
        square_search_cap: SQUARE_SEARCH_CAP,
        instances,
        all_agree,
    })
}

fn check_pair_equivalence(d: u64, norm_bound: u64) -> Result<RunResult> {
    let r = pair_equivalence_report(d, norm_bound)?;
    if let Some(bad) = r.instances.iter().find(|x| !x.agree) {
        return consistency(format!(
            "pair-generation criteria disagree on {}",
            bad.ideal
        ));
    }
    let witnesses = r
        .instances
        .iter()
        .map(|x| match &x.pair {
            Some(w) => WitnessRecord::new(&x.ideal, Some(w), vec![Evidence::ProductIdentity]),
            None => WitnessRecord::new(&x.ideal, None, vec![Evidence::NotInvertible]),
        })
        .collect();
    let cert = Certificate::build(
        d,
        "check pair-equivalence",
        &r,
        witnesses,
        bounds_map(&[("norm_bound", norm_bound)]),
    )?;
    Ok(completed(cert))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimaryChainReport {
    pub d: u64,
    pub prime_norm_bound: u64,
    pub chains: Vec<ChainReport>,
}

/// Chain reports for every prime of norm at most `bound`, each examined up to
/// the fourth power of its norm.
pub fn primary_chain_report(d: u64, bound: u64) -> Result<PrimaryChainReport> {
    let ring = order(d)?;
    let primes: Vec<IdealLat> = primes_up_to(bound)
        .into_iter()
        .flat_map(|p| primes_above(ring, p))
        .filter(|q| q.norm() <= Int::from(bound))
        .collect();
    let chains = primes
        .par_iter()
        .map(|q| {
            let n = q.norm().to_u64().expect("small norm");
            primary_chain_check(q, n.pow(4))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PrimaryChainReport {
        d,
        prime_norm_bound: bound,
        chains,
    })
}

fn check_primary_chain(d: u64, bound: u64) -> Result<RunResult> {
    let r = primary_chain_report(d, bound)?;
    for c in &r.chains {
        if !c.consistent {
            return consistency(format!(
                "chain property of {} disagrees with regularity",
                c.prime
            ));
        }
        if c.regular && c.ideals != (1..=4).map(|e| c.prime.pow(e)).collect::<Vec<_>>() {
            return consistency(format!(
                "primary ideals of {} are not its first four powers",
                c.prime
            ));
        }
    }
    let cert = Certificate::build(
        d,
        "check primary-chain",
        &r,
        Vec::new(),
        bounds_map(&[("norm_bound", bound)]),
    )?;
    Ok(completed(cert))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonprincipalInstance {
    pub a: u64,
    pub ideal: IdealLat,
    pub proper: bool,
    pub generator: Option<QuadElem>,
    pub inequality: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonprincipalReport {
    pub d: u64,
    pub one_plus_eta_irreducible: bool,
    pub instances: Vec<NonprincipalInstance>,
}

/// `1 + η` is irreducible, and `⟨1 + η, a⟩` is proper and non-principal for
/// every `a` properly dividing `1 + d`.
pub fn nonprincipal_ideal_report(d: u64) -> Result<NonprincipalReport> {
    let ring = order(d)?;
    let one_eta = QuadElem::new(ring, 1, 1);
    let n = d + 1;
    let mut instances = Vec::new();
    for a in (2..n).filter(|a| n.is_multiple_of(*a)) {
        let ideal =
            IdealLat::from_generators(ring, &[one_eta.clone(), QuadElem::from_int(ring, a)])?;
        instances.push(NonprincipalInstance {
            a,
            proper: ideal.is_proper(),
            generator: is_principal(&ideal),
            inequality: Int::from(a) * Int::from(a) < Int::from(n) * Int::from(n),
            ideal,
        });
    }
    Ok(NonprincipalReport {
        d,
        one_plus_eta_irreducible: is_irreducible(&one_eta)?,
        instances,
    })
}

fn check_nonprincipal_ideal(d: u64) -> Result<RunResult> {
    let r = nonprincipal_ideal_report(d)?;
    if !r.one_plus_eta_irreducible {
        return consistency("1+η factors");
    }
    let mut witnesses = Vec::new();
    for x in &r.instances {
        if !x.proper || x.generator.is_some() || !x.inequality {
            return consistency(format!(
                "⟨1+η, {}⟩ is not a proper non-principal ideal",
                x.a
            ));
        }
        witnesses.push(WitnessRecord::new(
            &x.ideal,
            None,
            vec![
                Evidence::EmptyFiber {
                    norm: x.ideal.norm().to_string(),
                },
                Evidence::Inequality {
                    value: x.a.to_string(),
                    bound: (d + 1).to_string(),
                },
            ],
        ));
    }
    Ok(completed(Certificate::build(
        d,
        "check nonprincipal-ideal",
        &r,
        witnesses,
        BTreeMap::new(),
    )?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizeEntry {
    pub z: QuadElem,
    pub u: QuadElem,
    pub zu: QuadElem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitNormalizeReport {
    pub box_bound: u64,
    pub checked: usize,
    /// Elements outside `Z[√−3]`; each is moved in by exactly two units, neither `±1`.
    pub outside_order: usize,
    pub entries: Vec<NormalizeEntry>,
}

/// Every `z = (x + yη)/2` with `x ≡ y (mod 2)` and `|x|, |y| ≤ box_bound`.
pub fn unit_normalize_report(box_bound: u64) -> Result<UnitNormalizeReport> {
    let ring = RingDesc::maximal(3)?;
    let order = ring.order_ring();
    let b = box_bound as i64;
    let mut entries = Vec::new();
    let mut outside = 0;
    for y in -b..=b {
        for x in -b..=b {
            if (x - y).is_odd() {
                continue;
            }
            // (x + yη)/2 = (x − y)/2 + y·ω
            let z = QuadElem::new(ring, (x - y) / 2, y);
            let (u, zu) = unit_normalize(&z)?;
            if (&z * &u).convert(order)? != Some(zu.clone()) {
                return consistency(format!("{z}·{u} is not {zu}"));
            }
            if z.convert(order)?.is_none() {
                outside += 1;
                let us = working_units(&z)?;
                if us.len() != 2 || us.iter().any(|u| u.y().is_zero()) {
                    return consistency(format!(
                        "{z} is moved into the order by {} units",
                        us.len()
                    ));
                }
            }
            entries.push(NormalizeEntry { z, u, zu });
        }
    }
    Ok(UnitNormalizeReport {
        box_bound,
        checked: entries.len(),
        outside_order: outside,
        entries,
    })
}

fn check_unit_normalize(d: u64, box_bound: u64) -> Result<RunResult> {
    if d != 3 {
        return usage("unit normalization applies to d = 3 only");
    }
    let r = unit_normalize_report(box_bound)?;
    let cert = Certificate::build(
        d,
        "check unit-normalize",
        &r,
        Vec::new(),
        bounds_map(&[("box", box_bound)]),
    )?;
    Ok(completed(cert))
}

fn check_odd_primes(d: u64, p_max: u64) -> Result<RunResult> {
    let r = odd_prime_principality_scan(d, p_max)?;
    let witnesses = r
        .entries
        .iter()
        .flat_map(|e| e.primes.iter().zip(&e.generators))
        .map(|(q, g)| {
            WitnessRecord::new(
                q,
                None,
                vec![Evidence::Generator {
                    generator: g.to_string(),
                }],
            )
        })
        .collect();
    let cert = Certificate::build(
        d,
        "check odd-primes",
        &r,
        witnesses,
        bounds_map(&[("pmax", p_max)]),
    )?;
    Ok(completed(cert))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvertibleEntry {
    pub ideal: IdealLat,
    pub generator: Option<QuadElem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvertibleReport {
    pub d: u64,
    pub norm_bound: u64,
    pub ideals_checked: usize,
    pub entries: Vec<InvertibleEntry>,
    pub nonprincipal: usize,
}

pub fn invertible_principal_report(
    d: u64,
    norm_bound: u64,
) -> Result<(InvertibleReport, Vec<PairWitness>)> {
    let ring = order(d)?;
    let ideals = enumerate_ideals(ring, norm_bound);
    let entries: Vec<InvertibleEntry> = ideals
        .par_iter()
        .filter(|i| i.is_invertible())
        .map(|i| InvertibleEntry {
            ideal: i.clone(),
            generator: is_principal(i),
        })
        .collect();
    let mut pairs = Vec::new();
    for e in entries.iter().filter(|e| e.generator.is_none()) {
        let w = pair_for_ideal(&e.ideal, DEFAULT_SEARCH_CAP)?.ok_or_else(|| {
            Error::Consistency(format!("{} is invertible but has no pair", e.ideal))
        })?;
        pairs.push(w);
    }
    let report = InvertibleReport {
        d,
        norm_bound,
        ideals_checked: ideals.len(),
        nonprincipal: pairs.len(),
        entries,
    };
    Ok((report, pairs))
}

fn check_invertible_principal(d: u64, norm_bound: u64) -> Result<RunResult> {
    let (r, pairs) = invertible_principal_report(d, norm_bound)?;
    let mut witnesses = Vec::new();
    let mut pairs = pairs.iter();
    for e in &r.entries {
        let rec = match &e.generator {
            Some(g) => WitnessRecord::new(
                &e.ideal,
                None,
                vec![Evidence::Generator {
                    generator: g.to_string(),
                }],
            ),
            None => WitnessRecord::new(
                &e.ideal,
                pairs.next(),
                vec![
                    Evidence::EmptyFiber {
                        norm: e.ideal.norm().to_string(),
                    },
                    Evidence::ProductIdentity,
                ],
            ),
        };
        witnesses.push(rec);
    }
    let cert = Certificate::build(
        d,
        "check invertible-principal",
        &r,
        witnesses,
        bounds_map(&[("norm_bound", norm_bound)]),
    )?;
    let outcome = match (r.nonprincipal, d) {
        (0, _) => Outcome::Completed,
        (_, 3 | 7) => {
            return consistency(format!(
                "{} invertible ideals are not principal",
                r.nonprincipal
            ))
        }
        (n, _) => Outcome::Counterexample(format!(
            "{n} invertible ideals of norm ≤ {norm_bound} are not principal"
        )),
    };
    Ok(RunResult {
        certificate: cert,
        outcome,
    })
}

/// A few lines describing a certificate for terminal output.
pub fn render_human(cert: &Certificate) -> String {
    let mut s = String::new();
    let _ = write!(s, "{} d={}", cert.command, cert.d);
    let v = &cert.verdict;
    if let Some(st) = v.get("status").and_then(|x| x.as_str()) {
        let _ = write!(s, ": {st}");
    }
    s.push('\n');
    if let Some(w) = v.get("witness").filter(|w| !w.is_null()) {
        let text = |x: &serde_json::Value| {
            x.as_str()
                .map(str::to_string)
                .unwrap_or_else(|| x.to_string())
        };
        let field = |k: &str| w.get(k).map(text).unwrap_or_default();
        let pair = w
            .get("pair")
            .map(|p| format!("({}, {})", text(&p["a"]), text(&p["b"])))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "  witness {} via {} generated by {}",
            field("ideal"),
            field("route"),
            pair
        );
    }
    if !cert.bounds.is_empty() {
        let b: Vec<String> = cert
            .bounds
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(s, "  bounds {}", b.join(" "));
    }
    let _ = writeln!(
        s,
        "  witnesses {}  self_check {}",
        cert.witnesses.len(),
        cert.self_check
    );
    s
}
