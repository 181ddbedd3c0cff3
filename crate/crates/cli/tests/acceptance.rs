//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each, and
//! exits nonzero if any failed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use quadprinc::arith::{is_square_free, Int};
use quadprinc::cert::{verify_certificate, Certificate};
use quadprinc::factor::{conductor, is_pid_maximal, is_regular, primary_chain_check, primes_above};
use quadprinc::princ::{princ_sweep, unit_normalize, SearchBounds, Side, Status};
use quadprinc::quad::{enumerate_norm, QuadElem, RingDesc};
use quadprinc::report::{
    classify_certificate, conductor_report, pair_equivalence_report, primary_chain_report,
    run_check, sweep_certificates, unit_normalize_report, CheckId, Options,
};
use quadprinc::IdealLat;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn o(d: u64) -> RingDesc {
    RingDesc::order(d).unwrap()
}

fn gen(r: RingDesc, gs: &[(i64, i64)]) -> IdealLat {
    let g: Vec<QuadElem> = gs.iter().map(|&(x, y)| QuadElem::new(r, x, y)).collect();
    IdealLat::from_generators(r, &g).unwrap()
}

const TABLE: [(u64, Status); 9] = [
    (1, Status::PID),
    (2, Status::PID),
    (3, Status::PrincProperOrder),
    (7, Status::PrincProperOrder),
    (11, Status::NotPrinc),
    (19, Status::NotPrinc),
    (43, Status::NotPrinc),
    (67, Status::NotPrinc),
    (163, Status::NotPrinc),
];

fn status_of(c: &Certificate) -> String {
    c.verdict["status"].as_str().unwrap_or("?").to_string()
}

fn classification_table() -> Outcome {
    let start = Instant::now();
    let ds: Vec<u64> = TABLE.iter().map(|t| t.0).collect();
    let certs = sweep_certificates(&ds, SearchBounds::default()).map_err(|e| e.to_string())?;
    for ((d, want), c) in TABLE.iter().zip(&certs) {
        let got = status_of(c);
        ensure(got == format!("{want:?}"), || {
            format!("d={d}: {got}, expected {want:?}")
        })?;
    }
    within(Duration::from_secs(60), start)?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let status = Command::new(env!("CARGO_BIN_EXE_quadprinc"))
        .args(["sweep", "1,2,3,7,11,19,43,67,163", "--out"])
        .arg(dir.path())
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.code() == Some(0), || {
        format!("cli sweep exit {status:?}")
    })?;
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    let cli: Vec<&str> = summary
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["status"].as_str().unwrap())
        .collect();
    let want: Vec<String> = TABLE.iter().map(|t| format!("{:?}", t.1)).collect();
    ensure(cli == want, || format!("cli summary {cli:?}"))?;
    Ok(format!("9 verdicts match in {:?}", start.elapsed()))
}

/// Replays a witness using only element and ideal arithmetic.
fn replay(d: u64, c: &Certificate) -> Result<(), String> {
    let ring = o(d);
    let w = &c.witnesses[0];
    let ideal = IdealLat::parse(ring, &w.ideal).map_err(|e| e.to_string())?;
    let p = w.pair.as_ref().ok_or("no pair")?;
    let a = QuadElem::parse(ring, &p.a).unwrap();
    let b = QuadElem::parse(ring, &p.b).unwrap();
    let cof = QuadElem::parse(ring, &p.cofactor).unwrap();
    let one = QuadElem::one(ring);
    let identity = match p.side {
        Side::Left => &a * &(&one - &a) == &cof * &b,
        Side::Right => &b * &(&one - &b) == &cof * &a,
    };
    ensure(identity, || "pair identity fails".into())?;
    ensure(
        IdealLat::from_generators(ring, &[a, b]).unwrap() == ideal,
        || "pair ideal differs".into(),
    )?;
    let fiber = enumerate_norm(ring, &ideal.norm());
    ensure(fiber.iter().all(|z| !ideal.contains(z)), || {
        "generator fiber not empty".into()
    })
}

fn odd_divisor_witnesses() -> Outcome {
    for (d, p) in [(11u64, 3u64), (19, 5), (43, 11), (67, 17), (163, 41)] {
        let start = Instant::now();
        let c = classify_certificate(d, SearchBounds::default()).map_err(|e| e.to_string())?;
        ensure(c.self_check, || format!("d={d}: self_check false"))?;
        let w = &c.verdict["witness"];
        ensure(w["rational_prime"].as_u64() == Some(p), || {
            format!("d={d}: prime {}", w["rational_prime"])
        })?;
        let ideal = IdealLat::parse(o(d), w["ideal"].as_str().unwrap()).unwrap();
        ensure(ideal.norm() == Int::from(p) && is_regular(&ideal), || {
            format!("d={d}: {ideal}")
        })?;
        replay(d, &c)?;
        verify_certificate(&Certificate::from_json(&c.to_canonical_json()).unwrap())
            .map_err(|e| e.to_string())?;
        within(Duration::from_secs(1), start)?;
    }
    Ok("p = 3, 5, 11, 17, 41 with replayed pairs".into())
}

fn small_order_sweeps() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for d in [3, 7] {
        let v = princ_sweep(
            d,
            SearchBounds {
                coord_bound: 25,
                norm_bound: 2000,
            },
        )
        .map_err(|e| e.to_string())?;
        ensure(
            v.status == Status::PrincProperOrder && v.witness.is_none(),
            || format!("d={d}: {:?}", v.status),
        )?;
        let s = v.sweep.unwrap();
        ensure(s.pairs_checked == 51u64.pow(4), || {
            format!("d={d}: grid size {}", s.pairs_checked)
        })?;
        notes.push(format!(
            "d={d}: {} pair ideals, {} regular, {} invertible",
            s.pair_ideals, s.regular_ideals, s.invertible_ideals
        ));
    }
    within(Duration::from_secs(120), start)?;
    Ok(notes.join("; "))
}

fn odd_prime_principality() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for d in [3, 7] {
        let r = run_check(CheckId::OddPrimes, d, &Options::default()).map_err(|e| e.to_string())?;
        let v = &r.certificate.verdict;
        for e in v["entries"].as_array().unwrap() {
            let primes = e["primes"].as_array().unwrap();
            let gens = e["generators"].as_array().unwrap();
            ensure(primes.len() == gens.len(), || {
                format!("d={d}: missing generator at {}", e["p"])
            })?;
            for (q, g) in primes.iter().zip(gens) {
                let q = IdealLat::parse(o(d), q.as_str().unwrap()).unwrap();
                let g = QuadElem::parse(o(d), g.as_str().unwrap()).unwrap();
                ensure(IdealLat::principal(&g).unwrap() == q, || {
                    format!("{g} does not generate {q}")
                })?;
                total += 1;
            }
        }
        if d == 7 {
            ensure(v["parity_checked"].as_u64().unwrap_or(0) > 0, || {
                "no parity instances".into()
            })?;
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("{total} primes principal"))
}

fn unit_normalization() -> Outcome {
    let start = Instant::now();
    let r = unit_normalize_report(100).map_err(|e| e.to_string())?;
    ensure(r.checked == 101 * 101 + 100 * 100, || {
        format!("checked {}", r.checked)
    })?;
    let m = RingDesc::maximal(3).unwrap();
    let (u, zu) = unit_normalize(&QuadElem::new(m, 0, 1)).unwrap();
    ensure(u == QuadElem::new(m, 1, -1) && zu.is_one(), || {
        "ω example".into()
    })?;
    within(Duration::from_secs(5), start)?;
    Ok(format!(
        "{} elements, {} outside Z[√-3]",
        r.checked, r.outside_order
    ))
}

fn conductor_facts() -> Outcome {
    for d in [3, 7, 11] {
        let r = conductor_report(d).map_err(|e| e.to_string())?;
        ensure(r.conductor == gen(o(d), &[(2, 0), (1, 1)]), || {
            format!("d={d}: f = {}", r.conductor)
        })?;
        ensure(r.square_is_twice, || format!("d={d}: f² ≠ 2f"))?;
        ensure(r.generator.is_none(), || format!("d={d}: f principal"))?;
        ensure(!r.invertible, || format!("d={d}: f invertible"))?;
        ensure(r.colon_times_conductor_is_conductor, || {
            format!("d={d}: (O:f)f ≠ f")
        })?;
    }
    Ok("d = 3, 7, 11".into())
}

fn primary_chains() -> Outcome {
    let r3 = o(3);
    let rep = primary_chain_check(&conductor(r3), 16).map_err(|e| e.to_string())?;
    ensure(!rep.is_chain, || "f-primary ideals form a chain".into())?;
    let pair = rep.incomparable.clone().ok_or("no incomparable pair")?;
    ensure(pair == (gen(r3, &[(2, 0)]), gen(r3, &[(1, 1)])), || {
        format!("witnesses {} {}", pair.0, pair.1)
    })?;
    let mut regular = 0;
    for d in [3, 11] {
        let r = primary_chain_report(d, 50).map_err(|e| e.to_string())?;
        for c in r.chains.iter().filter(|c| c.regular) {
            let powers: Vec<IdealLat> = (1..=4).map(|e| c.prime.pow(e)).collect();
            ensure(c.ideals == powers, || {
                format!("d={d}: {} chain {:?}", c.prime, c.ideals)
            })?;
            regular += 1;
        }
        let expected: usize = quadprinc::arith::primes_up_to(50)
            .into_iter()
            .flat_map(|p| primes_above(o(d), p))
            .filter(|q| q.norm() <= Int::from(50) && is_regular(q))
            .count();
        ensure(
            r.chains.iter().filter(|c| c.regular).count() == expected,
            || "missing primes".into(),
        )?;
    }
    Ok(format!(
        "f not a chain; {regular} regular primes give P..P⁴"
    ))
}

fn pair_equivalence() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for d in [3, 11] {
        let r = pair_equivalence_report(d, 60).map_err(|e| e.to_string())?;
        for x in &r.instances {
            let pair_generated = x.pair.is_some() || x.searched_pair.is_some();
            let preds = [
                pair_generated,
                x.square_generation.is_some(),
                x.partner.is_some(),
                x.invertible,
            ];
            ensure(preds.iter().all(|&p| p == preds[0]), || {
                format!("d={d}: {} gives {preds:?}", x.ideal)
            })?;
            if x.pair.is_some() {
                ensure(x.product_identity == Some(true), || {
                    format!("d={d}: identity fails at {}", x.ideal)
                })?;
            }
            n += 1;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{n} ideals, four predicates agree"))
}

fn pid_list() -> Outcome {
    let start = Instant::now();
    let pids: Vec<u64> = (1..=200)
        .filter(|&d| is_square_free(d) && is_pid_maximal(d).unwrap())
        .collect();
    ensure(pids == [1, 2, 3, 7, 11, 19, 43, 67, 163], || {
        format!("got {pids:?}")
    })?;
    within(Duration::from_secs(30), start)?;
    Ok(format!("{pids:?}"))
}

/// Every artifact produced by criteria 1 through 9, serialized.
fn artifacts() -> Vec<String> {
    let mut out: Vec<String> = sweep_certificates(&TABLE.map(|t| t.0), SearchBounds::default())
        .unwrap()
        .iter()
        .map(Certificate::to_canonical_json)
        .collect();
    let opts = Options {
        box_bound: 100,
        ..Options::default()
    };
    let checks = [
        (CheckId::OddPrimes, 3),
        (CheckId::OddPrimes, 7),
        (CheckId::UnitNormalize, 3),
        (CheckId::Conductor, 3),
        (CheckId::Conductor, 7),
        (CheckId::Conductor, 11),
        (CheckId::PrimaryChain, 3),
        (CheckId::PrimaryChain, 11),
        (CheckId::PairEquivalence, 3),
        (CheckId::PairEquivalence, 11),
        (CheckId::InvertiblePrincipal, 3),
        (CheckId::InvertiblePrincipal, 7),
    ];
    for (id, d) in checks {
        out.push(
            run_check(id, d, &opts)
                .unwrap()
                .certificate
                .to_canonical_json(),
        );
    }
    for d in [3, 7] {
        let v = princ_sweep(d, SearchBounds::default()).unwrap();
        out.push(serde_json::to_string(&v).unwrap());
    }
    let pids: Vec<u64> = (1..=200)
        .filter(|&d| is_square_free(d) && is_pid_maximal(d).unwrap())
        .collect();
    out.push(format!("{pids:?}"));
    out
}

fn determinism() -> Outcome {
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let parallel = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = parallel.install(artifacts);
    let b = parallel.install(artifacts);
    let c = serial.install(artifacts);
    ensure(a == b, || "two parallel runs differ".into())?;
    ensure(a == c, || "serial and parallel runs differ".into())?;
    Ok(format!(
        "{} artifacts byte-identical across 3 runs",
        a.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("classification table", classification_table),
        ("odd-divisor witnesses replay", odd_divisor_witnesses),
        ("d = 3, 7 bounded sweeps", small_order_sweeps),
        ("odd primes principal in d = 3, 7", odd_prime_principality),
        ("unit normalization box 100", unit_normalization),
        ("conductor facts", conductor_facts),
        ("primary chains", primary_chains),
        ("pair-generation equivalence", pair_equivalence),
        ("PID list up to 200", pid_list),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let t = start.elapsed();
        match r {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
