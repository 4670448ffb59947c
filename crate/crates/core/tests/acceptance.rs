//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigUint;

use kax_core::kcalc::{
    axes_relative_k, integral_k_finite_field, relative_k, relative_k_with_bound, table,
    Conventions, FactorKind, GroupExpr, Order, P2OddConvention, RingSpec, Variant,
};
use kax_core::numtheory::divisors;
use kax_core::oracles::{check_counts, check_dual_numbers, check_k1, check_witt, Budget, Report};
use kax_core::tbounds::{m_prime_bound, t_od};
use kax_core::witt::big_witt_order;
use kax_core::words::count_aperiodic;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fq(q: u64) -> RingSpec {
    RingSpec::finite_field(q).unwrap()
}

fn from_report(report: Report) -> Outcome {
    let failures: Vec<String> = report.failures().map(|e| e.to_string()).collect();
    if failures.is_empty() {
        Ok(format!("{} checks", report.entries.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn word_counts() -> Outcome {
    let budget = Budget {
        words: 4u64.pow(12),
        ..Budget::default()
    };
    let mut report = check_counts(12, 4, &budget);
    report.entries.retain(|e| e.check == "counts");
    from_report(report)
}

fn partition_identity() -> Outcome {
    for m in 1..=12u64 {
        for d in 1..=4u64 {
            let mut total = BigUint::from(0u32);
            for s in divisors(m).map_err(|e| e.to_string())? {
                total += count_aperiodic(s, d).map_err(|e| e.to_string())? * s;
            }
            ensure(total == BigUint::from(d).pow(m as u32), || {
                format!("m={m} d={d}: {total}")
            })?;
        }
    }
    Ok("48 cells".into())
}

fn witt_arithmetic() -> Outcome {
    from_report(check_witt(&[2, 3, 5], 3, 2, 500, &Budget::default()))
}

fn degree_one_oracle() -> Outcome {
    from_report(check_k1(&[2, 3, 4, 5, 9], 3, &Budget::default()))
}

fn dual_order_law() -> Outcome {
    for p in [2u64, 3, 5] {
        for i in 1..=5u32 {
            let order = relative_k(&fq(p), 1, 2 * i as i64 - 1)
                .map_err(|e| e.to_string())?
                .order();
            let want = BigUint::from(p).pow(i);
            ensure(order == Order::Finite(want.clone()), || {
                format!("p={p} i={i}: order {order}")
            })?;
            let ratio = big_witt_order(2 * i as u64, p, 1).unwrap()
                / big_witt_order(i as u64, p, 1).unwrap();
            ensure(ratio == want, || {
                format!("p={p} i={i}: big Witt ratio {ratio}")
            })?;
        }
    }
    from_report(check_dual_numbers(&[2, 3, 5], 5)).map(|_| "15 cells".into())
}

fn structural_vanishing() -> Outcome {
    let rings: Vec<RingSpec> = [
        "Fq:2",
        "Fq:3",
        "Fq:4",
        "Fq:5",
        "Fq:9",
        "perfect:k:3",
        "perfectoid:R:2",
        "zpcycl:5",
    ]
    .iter()
    .map(|r| r.parse().unwrap())
    .collect();
    let mut checked = 0;
    for ring in &rings {
        for d in 1..=4 {
            for n in -10..=0 {
                let g = relative_k(ring, d, n).map_err(|e| e.to_string())?;
                ensure(g.is_trivial(), || {
                    format!("{ring} d={d} degree {n}: {}", g.to_text())
                })?;
                checked += 1;
            }
        }
        for n in 0..=60 {
            if n % 2 == 0 {
                let g = relative_k(ring, 1, n).map_err(|e| e.to_string())?;
                ensure(g.is_trivial(), || {
                    format!("{ring} d=1 degree {n}: {}", g.to_text())
                })?;
            }
            let g = axes_relative_k(ring, 1, n).map_err(|e| e.to_string())?;
            ensure(g.is_trivial(), || {
                format!("axes {ring} d=1 degree {n}: {}", g.to_text())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} groups"))
}

fn finiteness() -> Outcome {
    let mut checked = 0;
    for p in [2u64, 3, 5] {
        for d in 1..=3 {
            for n in 0..=20 {
                for p2_odd in [P2OddConvention::Collapsed, P2OddConvention::NuIndexed] {
                    let conv = Conventions {
                        p2_odd,
                        ..Default::default()
                    };
                    let bound = m_prime_bound(p, n);
                    let a = relative_k_with_bound(&fq(p), d, n, conv, bound)
                        .map_err(|e| e.to_string())?;
                    let b = relative_k_with_bound(&fq(p), d, n, conv, 2 * bound.max(1))
                        .map_err(|e| e.to_string())?;
                    ensure(a == b, || {
                        format!("p={p} d={d} degree {n}: {} vs {}", a.to_text(), b.to_text())
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} groups"))
}

fn t_od_sum() -> Outcome {
    for p in [3u64, 5, 7] {
        for r in 0..=50i64 {
            let total: u64 = (1..=(2 * r + 1) as u64)
                .filter(|m| m % 2 == 1 && m % p != 0)
                .map(|m| t_od(p, r, m) as u64)
                .sum();
            ensure(total == r as u64 + 1, || {
                format!("p={p} r={r}: sum {total}")
            })?;
        }
    }
    Ok("153 cells".into())
}

fn run_bin(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_kax"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "kax {}: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let invocations: [&[&str]; 6] = [
        &[
            "compute", "--p", "3", "--d", "3", "--degree", "17", "--ring", "Fq:9", "--format",
            "json",
        ],
        &[
            "compute",
            "--p",
            "2",
            "--d",
            "2",
            "--degree",
            "12",
            "--ring",
            "Fq:4",
            "--integral",
        ],
        &[
            "compute",
            "--p",
            "5",
            "--d",
            "3",
            "--degree",
            "9",
            "--variant",
            "axes",
            "--format",
            "latex",
        ],
        &[
            "table",
            "--p",
            "3",
            "--d",
            "2",
            "--max-degree",
            "24",
            "--ring",
            "Fq:3",
            "--format",
            "json",
        ],
        &[
            "table",
            "--p",
            "2",
            "--d",
            "3",
            "--max-degree",
            "20",
            "--ring",
            "Fq:2",
            "--variant",
            "integral",
        ],
        &[
            "table",
            "--d",
            "2",
            "--max-degree",
            "15",
            "--ring",
            "perfect:k:5",
            "--variant",
            "axes",
            "--format",
            "json",
        ],
    ];
    for args in invocations {
        let first = run_bin(args)?;
        for _ in 0..3 {
            ensure(run_bin(args)? == first, || {
                format!("kax {} is not reproducible", args.join(" "))
            })?;
        }
    }

    let json = String::from_utf8(run_bin(invocations[0])?).map_err(|e| e.to_string())?;
    let parsed = GroupExpr::from_json(&json).map_err(|e| e.to_string())?;
    let direct = relative_k(&fq(9), 3, 17).map_err(|e| e.to_string())?;
    ensure(parsed == direct, || {
        "compute JSON does not parse back to the computed group".into()
    })?;
    ensure(format!("{}\n", parsed.to_json()) == json, || {
        "compute JSON re-renders differently".into()
    })?;

    let mut groups = 0;
    for ring in [
        "Fq:2",
        "Fq:3",
        "Fq:4",
        "Fq:9",
        "perfect:k:3",
        "perfectoid:R:2",
        "zpcycl:5",
    ] {
        let ring: RingSpec = ring.parse().unwrap();
        for variant in [
            Variant::Square,
            Variant::Axes,
            Variant::Dual,
            Variant::Integral,
        ] {
            if variant == Variant::Integral && ring.is_symbolic() {
                continue;
            }
            for p2_odd in [P2OddConvention::Collapsed, P2OddConvention::NuIndexed] {
                let conv = Conventions {
                    p2_odd,
                    ..Default::default()
                };
                let rows = table(&ring, 3, 20, variant, conv).map_err(|e| e.to_string())?;
                let back = GroupExpr::list_from_json(&GroupExpr::list_to_json(&rows))
                    .map_err(|e| e.to_string())?;
                ensure(back == rows, || {
                    format!("JSON round trip fails for {ring} {}", variant.as_str())
                })?;
                groups += rows.len();
            }
        }
    }
    Ok(format!("6 invocations x4, {groups} groups round-tripped"))
}

fn integral_k0_and_no_w0() -> Outcome {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 25] {
        for d in 1..=4 {
            let g = integral_k_finite_field(q, d, 0).map_err(|e| e.to_string())?;
            let is_z = g.factors.len() == 1
                && g.factors[0].kind == FactorKind::Free { rank: 1 }
                && g.factors[0].multiplicity == BigUint::from(1u32);
            ensure(is_z && g.to_text() == "Z", || {
                format!("K_0 over F_{q}, d={d}: {}", g.to_text())
            })?;
        }
    }
    let mut factors = 0;
    for ring in ["Fq:2", "Fq:3", "Fq:5", "Fq:8", "perfect:k:7", "zpcycl:3"] {
        let ring: RingSpec = ring.parse().unwrap();
        for variant in [Variant::Square, Variant::Axes, Variant::Dual] {
            for p2_odd in [P2OddConvention::Collapsed, P2OddConvention::NuIndexed] {
                let conv = Conventions {
                    p2_odd,
                    ..Default::default()
                };
                for g in table(&ring, 4, 40, variant, conv).map_err(|e| e.to_string())? {
                    for f in &g.factors {
                        if let FactorKind::Witt { length, .. } = f.kind {
                            ensure(length >= 1, || format!("W_0 in {ring} degree {}", g.degree))?;
                        }
                        factors += 1;
                    }
                    ensure(
                        !g.to_text().contains("W_0") && !g.to_json().contains("\"length\": 0"),
                        || format!("W_0 rendered for {ring} degree {}", g.degree),
                    )?;
                }
            }
        }
    }
    Ok(format!(
        "K_0 = Z on 32 cells; {factors} factors, none of length 0"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "word counts equal enumeration (s <= 12, d <= 4)",
            word_counts,
        ),
        (
            "partition identity sum s|omega_{s,d}| = d^m (m <= 12, d <= 4)",
            partition_identity,
        ),
        (
            "Witt ring axioms, ghost identities, Z/p^n isomorphism",
            witt_arithmetic,
        ),
        (
            "degree-1 groups match enumerated unit groups 1 + m",
            degree_one_oracle,
        ),
        (
            "dual numbers: order p^i in degree 2i-1 = big Witt quotient",
            dual_order_law,
        ),
        (
            "vanishing in degree <= 0, even degrees at d = 1, axes at d = 1",
            structural_vanishing,
        ),
        (
            "doubling the m' bound changes nothing (degree <= 20)",
            finiteness,
        ),
        ("sum of t_od over odd m' prime to p is r + 1", t_od_sum),
        ("byte-identical reruns and lossless JSON", determinism),
        ("integral K_0 = Z; no W_0 factors", integral_k0_and_no_w0),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} [{detail}; {secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
