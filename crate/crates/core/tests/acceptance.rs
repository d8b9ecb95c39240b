//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! All arithmetic is exact, so every check is exact equality or exact
//! p-integrality; there are no tolerances to tune.

use chromcong_core::arith::Valuation;
use chromcong_core::bernoulli::{carlitz_check, cohen_check, kummer_check};
use chromcong_core::chromatic::{
    bq_sum, height_sum, limit_convergence_check, section7_bridge_check, section7_check,
    section7_profile,
};
use chromcong_core::groups::{
    brown_quillen_sum_finite, catalog, frobenius_count, gen_tuples_bruteforce, group_by_name,
    hall_gen_count, height_stabilization_check, theorem_b_finite_check, tuple_class_sum,
};
use chromcong_core::moduli::{
    chi_q, count_residue_tuples, family_depth, genus_one_family, genus_zero_family,
    n_closed_prime_power, n_closed_prime_power_uncorrected, prop61_check, prop61_sum, prop61_terms,
    thm611_check, thm611_sum, Prop61Case,
};
use chromcong_core::suites::FROZEN_CHI_Q;
use chromcong_core::{bernoulli, congruent_mod_pr, AbelianPType, Rational};
use num_bigint::BigInt;

fn pass(id: u32, name: &str) {
    println!("ACCEPTANCE {id:02} {name}: PASS");
}

#[test]
fn criterion_01_commuting_pair_ratio_of_s3() {
    let s3 = group_by_name("S3").unwrap();
    let value = tuple_class_sum(&s3, 2, 2);
    assert_eq!(value, Rational::new(5, 3));
    // the numerator need not be divisible by p: the valuation is exactly 0
    assert_eq!(value.valuation(2), Valuation::Finite(0));
    assert!(value.is_p_integral(2));
    pass(1, "commuting pair ratio of S3 is exactly 5/3 with v_2 = 0");
}

#[test]
fn criterion_02_frobenius_divisibility() {
    for g in catalog() {
        assert!(g.order() <= 48);
        let order = g.order() as u64;
        for d in (1..=order).filter(|d| order.is_multiple_of(*d)) {
            let count = frobenius_count(&g, d); // divisibility asserted inside
            assert_eq!(count % d, 0, "{}: d = {d}", g.name());
        }
    }
    pass(2, "Frobenius divisibility over the whole catalog");
}

#[test]
fn criterion_03_tuple_class_sums_are_p_integral() {
    for g in catalog() {
        for p in [2u64, 3, 5] {
            for n in 1..=3u32 {
                let value = tuple_class_sum(&g, p, n);
                assert!(
                    value.is_p_integral(p),
                    "{} at p={p}, n={n}: {value}",
                    g.name()
                );
            }
        }
    }
    pass(
        3,
        "tuple class sums p-integral on catalog x {2,3,5} x {1,2,3}",
    );
}

#[test]
fn criterion_04_hall_count_equals_bruteforce() {
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
    for p in [2u64, 3] {
        for parts in partitions {
            let t = AbelianPType::new(p, parts.to_vec());
            for n in 1..=3u32 {
                let brute = gen_tuples_bruteforce(&t, n).expect("within scale bound");
                assert_eq!(
                    hall_gen_count(&t, n),
                    BigInt::from(brute),
                    "type {parts:?} at p={p}, n={n}"
                );
            }
        }
    }
    assert_eq!(
        gen_tuples_bruteforce(&AbelianPType::new(3, vec![1, 1]), 2).unwrap(),
        48
    );
    pass(
        4,
        "Hall's closed count equals brute force on all types of order <= p^4",
    );
}

#[test]
fn criterion_05_generating_tuple_identity() {
    for g in catalog() {
        for p in [2u64, 3, 5] {
            for n in 1..=3u32 {
                assert!(
                    theorem_b_finite_check(&g, p, n),
                    "{} at p={p}, n={n}",
                    g.name()
                );
            }
        }
    }
    pass(
        5,
        "subgroup-class sum equals tuple sum and is p-integral on the catalog",
    );
}

#[test]
fn criterion_06_brown_quillen_and_stabilization() {
    for g in catalog() {
        for p in [2u64, 3, 5] {
            let bq = brown_quillen_sum_finite(&g, p); // p-integrality asserted inside
            assert!(bq.is_p_integral(p));
            assert!(height_stabilization_check(&g, p), "{} at p={p}", g.name());
        }
    }
    assert_eq!(
        brown_quillen_sum_finite(&group_by_name("C5").unwrap(), 5),
        Rational::zero()
    );
    assert_eq!(
        brown_quillen_sum_finite(&group_by_name("C3").unwrap(), 3),
        Rational::zero()
    );
    assert_eq!(
        brown_quillen_sum_finite(&group_by_name("S3").unwrap(), 3),
        Rational::zero()
    );
    pass(
        6,
        "Brown-Quillen sums p-integral and height sums stabilize on the catalog",
    );
}

#[test]
fn criterion_07_residue_count_closed_form_oracle() {
    for p in [2u64, 3, 5] {
        for m in 1..=3u32 {
            for s in 0..=5u32 {
                // all multisets of s exponents below m
                let mut pattern = vec![0u32; s as usize];
                loop {
                    if pattern.is_sorted() {
                        let ls: Vec<u64> = pattern.iter().map(|&mi| p.pow(mi)).collect();
                        assert_eq!(
                            n_closed_prime_power(p, m, &pattern),
                            count_residue_tuples(p.pow(m), &ls),
                            "p={p}, m={m}, pattern={pattern:?}"
                        );
                    }
                    let mut pos = 0;
                    loop {
                        if pos == pattern.len() {
                            break;
                        }
                        pattern[pos] += 1;
                        if pattern[pos] < m {
                            break;
                        }
                        pattern[pos] = 0;
                        pos += 1;
                    }
                    if pos == pattern.len() {
                        break;
                    }
                }
            }
        }
    }
    // The pre-correction exponent convention fails the oracle already at
    // mu_p = 1: N(25; 1, 5, 5) must vanish.
    assert_eq!(count_residue_tuples(25, &[1, 5, 5]), BigInt::ZERO);
    assert_eq!(n_closed_prime_power(5, 2, &[0, 1, 1]), BigInt::ZERO);
    assert_eq!(
        n_closed_prime_power_uncorrected(5, 2, &[0, 1, 1]),
        Rational::integer(16)
    );
    pass(
        7,
        "closed residue-count formula matches enumeration; uncorrected variant fails",
    );
}

#[test]
fn criterion_08_euler_characteristics_are_integers() {
    for &(u, frozen) in FROZEN_CHI_Q {
        let value = chi_q(u); // integrality asserted inside
        assert_eq!(value, BigInt::from(frozen), "chi_q({u})");
    }
    pass(
        8,
        "chi_Q integral for genus 2..=8 with frozen regression values",
    );
}

#[test]
fn criterion_09_height_one_congruence() {
    for p in [5u64, 7] {
        for u in 2..=12u32 {
            assert!(prop61_check(u, p), "u={u}, p={p}");
        }
    }
    assert_eq!(prop61_sum(2, 5), Rational::new(19, 48));
    pass(
        9,
        "height-1 congruence for p in {5,7}, u <= 12 with witness 19/48",
    );
}

#[test]
fn criterion_10_zeta_congruence_sweep() {
    for p in [5u64, 7, 11, 13] {
        for u in 2..=80u32 {
            assert!(thm611_check(u, p), "u={u}, p={p}");
        }
    }
    assert_eq!(thm611_sum(6, 5), Rational::new(79, 6552));
    pass(
        10,
        "four-case zeta congruence for p in {5,7,11,13}, u <= 80",
    );
}

#[test]
fn criterion_11_classical_congruence_recovery() {
    // Kummer at (5,1,4): both sides are 3 mod 5
    assert!(kummer_check(5, 1, 4).holds());
    for two_n in [22u32, 6] {
        let side = bernoulli(two_n) / Rational::integer(i64::from(two_n));
        assert!(congruent_mod_pr(&side, &Rational::integer(3), 5, 1));
    }
    // Carlitz at (5,0,1): B_4 + 1/5 = 1/6 and 1/6 = 1 in Q/Z_(5)
    let carlitz_value = bernoulli(4) + Rational::new(1, 5);
    assert_eq!(carlitz_value, Rational::new(1, 6));
    assert!(congruent_mod_pr(&carlitz_value, &Rational::one(), 5, 0));
    assert!(carlitz_check(5, 0, 1).holds());
    // Cohen at (5,1,1): witness difference 1975/16380 with v_5 = 1
    let out = cohen_check(5, 1, 1);
    assert!(out.holds());
    assert_eq!(out.witness().unwrap(), &Rational::new(1975, 16380));
    assert_eq!(out.witness().unwrap().valuation(5), Valuation::Finite(1));
    // sweeps: r <= 2, parameter <= 6, every applicable instance holds
    for p in [5u64, 7] {
        for r in 1..=2u32 {
            for x in 1..=6u64 {
                let out = kummer_check(p, r, x);
                assert!(
                    !out.is_applicable() || out.holds(),
                    "kummer p={p}, r={r}, x={x}"
                );
            }
            for k in 1..=6u64 {
                let out = cohen_check(p, r, k);
                assert!(
                    !out.is_applicable() || out.holds(),
                    "cohen p={p}, r={r}, k={k}"
                );
            }
        }
        for r in 0..=2u32 {
            for x in 1..=6u64 {
                let out = carlitz_check(p, r, x);
                assert!(
                    !out.is_applicable() || out.holds(),
                    "carlitz p={p}, r={r}, x={x}"
                );
            }
        }
    }
    pass(
        11,
        "Kummer, Carlitz and Cohen congruences recovered with exact witnesses",
    );
}

#[test]
fn criterion_12_per_term_and_grouped_integrality() {
    for p in [5u64, 7] {
        for u in 2..=20u32 {
            let terms = prop61_terms(u, p);
            for t in &terms {
                let individually_integral = match t.case {
                    Prop61Case::VGe2M1
                    | Prop61Case::VGe2MGe2
                    | Prop61Case::V1Other
                    | Prop61Case::V0X2Other => true,
                    Prop61Case::V0X3Plus => t.m >= 2,
                    _ => false,
                };
                if individually_integral {
                    assert!(
                        t.value.is_p_integral(p),
                        "term {} at u={u}, p={p} tagged {} is not p-integral",
                        t.datum,
                        t.case
                    );
                }
            }
            if (2 * u64::from(u) - 2) % (p - 1) == 0 {
                let members = genus_one_family(&terms);
                let r = family_depth(2 * u64::from(u) - 2, p);
                assert_eq!(
                    members.len() as u32,
                    r + 1,
                    "genus-1 family size at u={u}, p={p}"
                );
                let sum: Rational = members.iter().map(|t| t.value.clone()).sum();
                assert!(
                    sum.is_p_integral(p),
                    "genus-1 family sum at u={u}, p={p}: {sum}"
                );
            }
            if (2 * u64::from(u)) % (p - 1) == 0 {
                let members = genus_zero_family(&terms);
                let r = family_depth(2 * u64::from(u), p);
                assert_eq!(
                    members.len() as u32,
                    r + 1,
                    "genus-0 family size at u={u}, p={p}"
                );
                let s1 = i64::try_from(2 * u64::from(u) / (p - 1) + 2).unwrap();
                let target = Rational::new(1, i64::try_from(p).unwrap() * s1 * (s1 - 2));
                let sum: Rational = members.iter().map(|t| t.value.clone()).sum();
                assert!(
                    (sum.clone() - &target).is_p_integral(p),
                    "genus-0 family sum at u={u}, p={p}: {sum} vs {target}"
                );
            }
        }
    }
    pass(
        12,
        "per-term and grouped branch-term integrality for p in {5,7}, u <= 20",
    );
}

#[test]
fn criterion_13_genus_family_example() {
    assert!(section7_check(5, 6));
    assert!(section7_check(7, 4));
    let profile = section7_profile(5);
    assert_eq!(height_sum(&profile, 1), Rational::new(79, 6552));
    assert!(bq_sum(&profile).is_p_integral(5));
    assert!(limit_convergence_check(&profile, 6));
    // bridge at p = 5: zeta(-3)/2 = 1/240 agrees with 1/40 modulo Z_(5)
    assert!(section7_bridge_check(5));
    assert!(congruent_mod_pr(
        &Rational::new(1, 240),
        &Rational::new(1, 40),
        5,
        0
    ));
    pass(13, "worked genus-(p-1)(p-2)/2 example at p = 5 and p = 7");
}
