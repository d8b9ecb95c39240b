//! Named verification suites.
//!
//! Each suite runs a family of checks with default sweep ranges matching
//! the project's acceptance bar; flags narrow or extend them. Reports come
//! back sorted so output is deterministic and diffable.

use crate::arith::{is_prime, Rational};
use crate::bernoulli::{carlitz_check, cohen_check, kummer_check, von_staudt_clausen_check};
use crate::chromatic::{
    bq_sum, height_sum, limit_convergence_check, section7_bridge_check, section7_height_polynomial,
    section7_profile,
};
use crate::groups::{
    brown_quillen_sum_finite, brown_rank1_identity, catalog, gen_tuples_bruteforce, group_by_name,
    hall_gen_count, height_stabilization_check, theorem_b_sides, tuple_class_sum, AbelianPType,
    FiniteGroup,
};
use crate::moduli::{
    chi_q, family_depth, genus_one_family, genus_zero_family, prop61_sum, prop61_terms,
    thm611_case, thm611_sum, Prop61Case, Prop61Term,
};
use crate::report::{sort_reports, CheckReport};
use crate::CheckOutcome;
use num_bigint::BigInt;
use std::time::Instant;
use thiserror::Error;

pub const SUITE_NAMES: &[&str] = &[
    "finite-groups",
    "hall",
    "bernoulli",
    "prop61",
    "thm611",
    "chi-q",
    "section7",
    "all",
];

/// Regression values for `χ_ℚ(Γ_u)`, frozen from the enumeration itself and
/// cross-checked against an independent implementation of the same sum.
pub const FROZEN_CHI_Q: &[(u32, i64)] = &[
    (2, 1),
    (3, 3),
    (4, 2),
    (5, 3),
    (6, 4),
    (7, 1),
    (8, -6),
    (9, 45),
    (10, -86),
    (11, 173),
    (12, -100),
];

#[derive(Debug, Default, Clone)]
pub struct SuiteOptions {
    pub p: Option<u64>,
    pub n: Option<u32>,
    pub u: Option<u32>,
    pub u_max: Option<u32>,
    pub group: Option<String>,
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?} (expected one of {SUITE_NAMES:?})")]
    UnknownSuite(String),
    #[error("{0}")]
    BadParams(String),
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Vec<CheckReport>, SuiteError> {
    let mut reports = match name {
        "finite-groups" => suite_finite_groups(opts)?,
        "hall" => suite_hall(opts)?,
        "bernoulli" => suite_bernoulli(opts)?,
        "prop61" => suite_prop61(opts)?,
        "thm611" => suite_thm611(opts)?,
        "chi-q" => suite_chi_q(opts)?,
        "section7" => suite_section7(opts)?,
        "all" => {
            let mut all = Vec::new();
            for suite in SUITE_NAMES.iter().filter(|&&s| s != "all") {
                all.extend(run_suite(suite, opts)?);
            }
            all
        }
        other => return Err(SuiteError::UnknownSuite(other.into())),
    };
    sort_reports(&mut reports);
    Ok(reports)
}

fn timed(f: impl FnOnce() -> CheckReport) -> CheckReport {
    let start = Instant::now();
    let report = f();
    let elapsed = start.elapsed();
    report.with_elapsed(elapsed)
}

fn kv(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn primes_or(opt: Option<u64>, default: &[u64], min: u64) -> Result<Vec<u64>, SuiteError> {
    let ps = match opt {
        Some(p) => vec![p],
        None => default.to_vec(),
    };
    for &p in &ps {
        if !is_prime(p) || p < min {
            return Err(SuiteError::BadParams(format!(
                "p = {p} must be a prime >= {min}"
            )));
        }
    }
    Ok(ps)
}

fn groups_for(opts: &SuiteOptions) -> Result<Vec<FiniteGroup>, SuiteError> {
    match &opts.group {
        Some(name) => Ok(vec![
            group_by_name(name).map_err(|e| SuiteError::BadParams(e.to_string()))?
        ]),
        None => Ok(catalog()),
    }
}

fn outcome_report(
    check_id: &str,
    params: Vec<(String, String)>,
    outcome: CheckOutcome,
) -> CheckReport {
    match outcome {
        CheckOutcome::Holds { witness } => CheckReport::pass(check_id, params, Some(witness)),
        CheckOutcome::Fails { witness } => CheckReport::fail(check_id, params, witness),
        CheckOutcome::HypothesesNotMet { reason } => CheckReport::skipped(check_id, params, reason),
    }
}

/// Tuple class sums, the height-n identity, Frobenius divisibility, the
/// Brown-Quillen sum, its stabilization and the rank-1 identity, over the
/// group catalog.
fn suite_finite_groups(opts: &SuiteOptions) -> Result<Vec<CheckReport>, SuiteError> {
    let groups = groups_for(opts)?;
    let ps = primes_or(opts.p, &[2, 3, 5], 2)?;
    let ns = match opts.n {
        Some(n) if (1..=3).contains(&n) => vec![n],
        Some(n) => return Err(SuiteError::BadParams(format!("n = {n} out of range 1..=3"))),
        None => vec![1, 2, 3],
    };
    let mut reports = Vec::new();
    for g in &groups {
        let order = g.order() as u64;
        for d in (1..=order).filter(|d| order.is_multiple_of(*d)) {
            reports.push(timed(|| {
                let count = crate::groups::frobenius_count(g, d);
                CheckReport::pass(
                    "frobenius",
                    kv(&[("group", g.name().into()), ("d", d.to_string())]),
                    Some(Rational::integer(i64::try_from(count).unwrap())),
                )
            }));
        }
        for &p in &ps {
            for &n in &ns {
                let params = kv(&[
                    ("group", g.name().into()),
                    ("p", p.to_string()),
                    ("n", n.to_string()),
                ]);
                reports.push(timed(|| {
                    let value = tuple_class_sum(g, p, n);
                    CheckReport::from_bool(
                        "tuple-sum",
                        params.clone(),
                        value.is_p_integral(p),
                        value,
                    )
                }));
                let params_b = kv(&[
                    ("group", g.name().into()),
                    ("p", p.to_string()),
                    ("n", n.to_string()),
                ]);
                reports.push(timed(|| {
                    let sides = theorem_b_sides(g, p, n);
                    let ok =
                        sides.hall_side == sides.tuple_side && sides.hall_side.is_p_integral(p);
                    CheckReport::from_bool("theorem-b", params_b, ok, sides.hall_side)
                }));
            }
            let params = kv(&[("group", g.name().into()), ("p", p.to_string())]);
            reports.push(timed(|| {
                let sum = brown_quillen_sum_finite(g, p);
                CheckReport::from_bool("brown-quillen", params.clone(), sum.is_p_integral(p), sum)
            }));
            let params_s = kv(&[("group", g.name().into()), ("p", p.to_string())]);
            reports.push(timed(|| {
                let ok = height_stabilization_check(g, p);
                CheckReport::from_bool(
                    "height-stabilization",
                    params_s,
                    ok,
                    brown_quillen_sum_finite(g, p),
                )
            }));
            let params_r = kv(&[("group", g.name().into()), ("p", p.to_string())]);
            reports.push(timed(|| {
                outcome_report("brown-rank1", params_r, brown_rank1_identity(g, p))
            }));
        }
    }
    Ok(reports)
}

/// Hall's closed generating-tuple count against brute-force enumeration for
/// every abelian p-type of order ≤ p⁴.
fn suite_hall(opts: &SuiteOptions) -> Result<Vec<CheckReport>, SuiteError> {
    let ps = primes_or(opts.p, &[2, 3], 2)?;
    let ns = match opts.n {
        Some(n) if (1..=3).contains(&n) => vec![n],
        Some(n) => return Err(SuiteError::BadParams(format!("n = {n} out of range 1..=3"))),
        None => vec![1, 2, 3],
    };
    let partitions: &[&[u32]] = &[
        &[],
        &[1],
        &[2],
        &[1, 1],
        &[3],
        &[2, 1],
        &[1, 1, 1],
        &[4],
        &[3, 1],
        &[2, 2],
        &[2, 1, 1],
        &[1, 1, 1, 1],
    ];
    let mut reports = Vec::new();
    for &p in &ps {
        for parts in partitions {
            let t = AbelianPType::new(p, parts.to_vec());
            for &n in &ns {
                let params = kv(&[
                    ("p", p.to_string()),
                    ("type", t.to_string()),
                    ("n", n.to_string()),
                ]);
                reports.push(timed(|| {
                    let closed = hall_gen_count(&t, n);
                    match gen_tuples_bruteforce(&t, n) {
                        Ok(brute) => CheckReport::from_bool(
                            "hall-oracle",
                            params.clone(),
                            closed == BigInt::from(brute),
                            Rational::integer(closed),
                        ),
                        Err(e) => {
                            CheckReport::skipped("hall-oracle", params.clone(), e.to_string())
                        }
                    }
                }));
            }
        }
    }
    Ok(reports)
}

/// Von Staudt-Clausen plus the Kummer / Carlitz / Cohen sweeps.
fn suite_bernoulli(opts: &SuiteOptions) -> Result<Vec<CheckReport>, SuiteError> {
    let mut reports = Vec::new();
    let u_max = opts.u_max.unwrap_or(100);
    for two_u in (2..=2 * u_max).step_by(2) {
        reports.push(timed(|| {
            let mut sum = crate::bernoulli::bernoulli(two_u);
            for p in crate::bernoulli::vsc_primes(two_u) {
                sum = sum + Rational::new(1, i64::try_from(p).unwrap());
            }
            CheckReport::from_bool(
                "von-staudt-clausen",
                kv(&[("two_u", two_u.to_string())]),
                von_staudt_clausen_check(two_u),
                sum,
            )
        }));
    }
    let ps = primes_or(opts.p, &[5, 7], 5)?;
    for &p in &ps {
        for r in 1..=2u32 {
            for x in 1..=6u64 {
                let params = kv(&[
                    ("p", p.to_string()),
                    ("r", r.to_string()),
                    ("x", x.to_string()),
                ]);
                reports.push(timed(|| {
                    outcome_report("kummer", params, kummer_check(p, r, x))
                }));
            }
        }
        for r in 0..=2u32 {
            for x in 1..=6u64 {
                let params = kv(&[
                    ("p", p.to_string()),
                    ("r", r.to_string()),
                    ("x", x.to_string()),
                ]);
                reports.push(timed(|| {
                    outcome_report("carlitz", params, carlitz_check(p, r, x))
                }));
            }
        }
        for r in 1..=2u32 {
            for k in 1..=6u64 {
                let params = kv(&[
                    ("p", p.to_string()),
                    ("r", r.to_string()),
                    ("k", k.to_string()),
                ]);
                reports.push(timed(|| {
                    outcome_report("cohen", params, cohen_check(p, r, k))
                }));
            }
        }
    }
    Ok(reports)
}

/// Height-1 congruence sweep plus the per-term and grouped integrality
/// statements behind it.
fn suite_prop61(opts: &SuiteOptions) -> Result<Vec<CheckReport>, SuiteError> {
    let ps = primes_or(opts.p, &[5, 7], 5)?;
    let us: Vec<u32> = match opts.u {
        Some(u) if u >= 2 => vec![u],
        Some(u) => return Err(SuiteError::BadParams(format!("u = {u} must be >= 2"))),
        None => (2..=opts.u_max.unwrap_or(12)).collect(),
    };
    let family_us: Vec<u32> = match opts.u {
        Some(u) => vec![u],
        None => (2..=opts.u_max.unwrap_or(12).max(20)).collect(),
    };
    let mut reports = Vec::new();
    for &p in &ps {
        for &u in &us {
            let params = kv(&[("p", p.to_string()), ("u", u.to_string())]);
            reports.push(timed(|| {
                let sum = prop61_sum(u, p);
                CheckReport::from_bool("prop61", params, sum.is_p_integral(p), sum)
            }));
        }
        for &u in &family_us {
            let terms = prop61_terms(u, p);
            let params = kv(&[("p", p.to_string()), ("u", u.to_string())]);
            reports.push(timed(|| {
                // individually p-integral families (the V0X3Plus tag needs
                // m >= 2; at m = 1 that term belongs to the grouped family)
                let tagged: Vec<&Prop61Term> = terms
                    .iter()
                    .filter(|t| match t.case {
                        Prop61Case::VGe2M1
                        | Prop61Case::VGe2MGe2
                        | Prop61Case::V1Other
                        | Prop61Case::V0X2Other => true,
                        Prop61Case::V0X3Plus => t.m >= 2,
                        _ => false,
                    })
                    .collect();
                let ok = tagged.iter().all(|t| t.value.is_p_integral(p));
                let witness = tagged
                    .iter()
                    .fold(Rational::zero(), |acc, t| acc + &t.value);
                CheckReport::from_bool("prop61-terms", params, ok, witness)
            }));

            let params_g1 = kv(&[("p", p.to_string()), ("u", u.to_string())]);
            reports.push(timed(|| {
                if (2 * u64::from(u) - 2) % (p - 1) != 0 {
                    return CheckReport::skipped(
                        "prop61-genus1-family",
                        params_g1,
                        "(p-1) does not divide 2u-2",
                    );
                }
                let members = genus_one_family(&terms);
                let r = family_depth(2 * u64::from(u) - 2, p);
                let mut ms: Vec<u32> = members.iter().map(|t| t.m).collect();
                ms.sort_unstable();
                assert_eq!(
                    ms,
                    (1..=r + 1).collect::<Vec<_>>(),
                    "genus-1 family m-range at u={u}, p={p}"
                );
                let sum: Rational = members.iter().map(|t| t.value.clone()).sum();
                CheckReport::from_bool("prop61-genus1-family", params_g1, sum.is_p_integral(p), sum)
            }));

            let params_g0 = kv(&[("p", p.to_string()), ("u", u.to_string())]);
            reports.push(timed(|| {
                if (2 * u64::from(u)) % (p - 1) != 0 {
                    return CheckReport::skipped(
                        "prop61-genus0-family",
                        params_g0,
                        "(p-1) does not divide 2u",
                    );
                }
                let members = genus_zero_family(&terms);
                let r = family_depth(2 * u64::from(u), p);
                let mut ms: Vec<u32> = members.iter().map(|t| t.m).collect();
                ms.sort_unstable();
                assert_eq!(
                    ms,
                    (1..=r + 1).collect::<Vec<_>>(),
                    "genus-0 family m-range at u={u}, p={p}"
                );
                let s1 = i64::try_from(2 * u64::from(u) / (p - 1) + 2).unwrap();
                let target = Rational::new(1, i64::try_from(p).unwrap() * s1 * (s1 - 2));
                let sum: Rational = members.iter().map(|t| t.value.clone()).sum();
                let defect = sum - target;
                CheckReport::from_bool(
                    "prop61-genus0-family",
                    params_g0,
                    defect.is_p_integral(p),
                    defect,
                )
            }));
        }
    }
    Ok(reports)
}

/// The four-case congruence family over `2 ≤ u ≤ u_max`.
fn suite_thm611(opts: &SuiteOptions) -> Result<Vec<CheckReport>, SuiteError> {
    let ps = primes_or(opts.p, &[5, 7, 11, 13], 5)?;
    let us: Vec<u32> = match opts.u {
        Some(u) if u >= 2 => vec![u],
        Some(u) => return Err(SuiteError::BadParams(format!("u = {u} must be >= 2"))),
        None => (2..=opts.u_max.unwrap_or(80)).collect(),
    };
    let mut reports = Vec::new();
    for &p in &ps {
        for &u in &us {
            let params = kv(&[
                ("p", p.to_string()),
                ("u", u.to_string()),
                ("case", thm611_case(u, p).to_string()),
            ]);
            reports.push(timed(|| {
                let sum = thm611_sum(u, p);
                CheckReport::from_bool("thm611", params, sum.is_p_integral(p), sum)
            }));
        }
    }
    Ok(reports)
}

/// Integrality (and frozen regression values) of the full Euler
/// characteristic sum.
fn suite_chi_q(opts: &SuiteOptions) -> Result<Vec<CheckReport>, SuiteError> {
    let us: Vec<u32> = match opts.u {
        Some(u) if u >= 2 => vec![u],
        Some(u) => return Err(SuiteError::BadParams(format!("u = {u} must be >= 2"))),
        None => (2..=opts.u_max.unwrap_or(8)).collect(),
    };
    let mut reports = Vec::new();
    for u in us {
        let params = kv(&[("u", u.to_string())]);
        reports.push(timed(|| {
            let value = chi_q(u);
            let ok = match FROZEN_CHI_Q.iter().find(|(fu, _)| *fu == u) {
                Some((_, frozen)) => value == BigInt::from(*frozen),
                None => true, // integrality was asserted inside chi_q
            };
            CheckReport::from_bool("chi-q", params, ok, Rational::integer(value))
        }));
    }
    Ok(reports)
}

/// The genus-(p-1)(p-2)/2 worked example: height sums, the Brown-Quillen
/// limit, convergence rate, and the von Staudt-Clausen bridge.
fn suite_section7(opts: &SuiteOptions) -> Result<Vec<CheckReport>, SuiteError> {
    let ps = primes_or(opts.p, &[5, 7], 5)?;
    let mut reports = Vec::new();
    for &p in &ps {
        let n_max = opts.n.unwrap_or(if p == 5 { 6 } else { 4 });
        let profile = section7_profile(p);
        for n in 1..=n_max {
            let params = kv(&[("p", p.to_string()), ("n", n.to_string())]);
            reports.push(timed(|| {
                let sum = height_sum(&profile, n);
                let ok = sum == section7_height_polynomial(p, n) && sum.is_p_integral(p);
                CheckReport::from_bool("section7-height", params, ok, sum)
            }));
        }
        let params = kv(&[("p", p.to_string())]);
        reports.push(timed(|| {
            let sum = bq_sum(&profile);
            CheckReport::from_bool("section7-bq", params, sum.is_p_integral(p), sum)
        }));
        let params_c = kv(&[("p", p.to_string())]);
        reports.push(timed(|| {
            let ok = limit_convergence_check(&profile, n_max.max(2));
            let gap = height_sum(&profile, n_max.max(2)) - bq_sum(&profile);
            CheckReport::from_bool("section7-convergence", params_c, ok, gap)
        }));
        let params_b = kv(&[("p", p.to_string())]);
        reports.push(timed(|| {
            let v = u32::try_from((p - 1) / 2).unwrap();
            let p_i = i64::try_from(p).unwrap();
            let defect =
                -crate::moduli::chi_orb_closed(v) - Rational::new(1, p_i * (p_i - 1) * (p_i - 3));
            CheckReport::from_bool(
                "section7-bridge",
                params_b,
                section7_bridge_check(p),
                defect,
            )
        }));
    }
    Ok(reports)
}
