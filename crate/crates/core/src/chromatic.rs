//! The height-n congruence engine over abstract subgroup profiles.
//!
//! Infinite groups enter only as profiles: a list of conjugacy classes of
//! finite abelian p-subgroups, each carrying its isomorphism type and the
//! exact value `χ_orb(N(H))`. That is precisely the data the height-n sum
//! and its p-adic limit consume. Finite groups bridge in through
//! [`profile_from_finite_group`], where `χ_orb(N(H)) = 1/|N(H)|`.

use crate::arith::{is_prime, Rational, Valuation};
use crate::groups::{abelian_p_subgroup_classes, hall_gen_count, AbelianPType, FiniteGroup};
use crate::moduli::chi_orb_closed;
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("invalid profile: {0}")]
    Invalid(String),
    #[error("profile parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// One conjugacy class of finite abelian p-subgroups together with the
/// orbifold Euler characteristic of its normalizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClassRecord {
    pub ptype: AbelianPType,
    pub chi_orb_normalizer: Rational,
}

/// Conjugacy-class data for one group at one prime. Exactly one record has
/// the trivial type; its `chi_orb_normalizer` is `χ_orb(G)` itself.
/// Distinct classes may share an isomorphism type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupProfile {
    p: u64,
    records: Vec<SubgroupClassRecord>,
}

impl GroupProfile {
    pub fn new(p: u64, records: Vec<SubgroupClassRecord>) -> Result<Self, ProfileError> {
        if !is_prime(p) {
            return Err(ProfileError::Invalid(format!("p = {p} is not prime")));
        }
        let trivial = records.iter().filter(|r| r.ptype.is_trivial()).count();
        if trivial != 1 {
            return Err(ProfileError::Invalid(format!(
                "expected exactly one trivial-type record, found {trivial}"
            )));
        }
        if let Some(bad) = records.iter().find(|r| r.ptype.p() != p) {
            return Err(ProfileError::Invalid(format!(
                "record type {} is not a {p}-group type",
                bad.ptype
            )));
        }
        Ok(GroupProfile { p, records })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn records(&self) -> &[SubgroupClassRecord] {
        &self.records
    }

    pub fn chi_orb_group(&self) -> &Rational {
        &self
            .records
            .iter()
            .find(|r| r.ptype.is_trivial())
            .expect("validated on construction")
            .chi_orb_normalizer
    }

    /// Plain-text interchange format, one record per line:
    /// `p=<prime> type=<comma-separated cyclic orders or "1"> chi_N=<num>/<den>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "p={} type={} chi_N={}/{}\n",
                self.p,
                r.ptype,
                r.chi_orb_normalizer.numer(),
                r.chi_orb_normalizer.denom()
            ));
        }
        out
    }
}

impl fmt::Display for GroupProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl FromStr for GroupProfile {
    type Err = ProfileError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut p: Option<u64> = None;
        let mut records = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| ProfileError::Parse {
                line: idx + 1,
                message,
            };
            let mut fields = line.split_whitespace();
            let p_field = fields
                .next()
                .and_then(|f| f.strip_prefix("p="))
                .ok_or_else(|| err("expected p=<prime>".into()))?;
            let type_field = fields
                .next()
                .and_then(|f| f.strip_prefix("type="))
                .ok_or_else(|| err("expected type=<orders>".into()))?;
            let chi_field = fields
                .next()
                .and_then(|f| f.strip_prefix("chi_N="))
                .ok_or_else(|| err("expected chi_N=<num>/<den>".into()))?;
            if fields.next().is_some() {
                return Err(err("trailing fields".into()));
            }
            let line_p: u64 = p_field
                .parse()
                .map_err(|_| err(format!("bad prime {p_field:?}")))?;
            if !is_prime(line_p) {
                return Err(err(format!("p = {line_p} is not prime")));
            }
            match p {
                None => p = Some(line_p),
                Some(existing) if existing != line_p => {
                    return Err(err(format!("mixed primes {existing} and {line_p}")));
                }
                _ => {}
            }
            let ptype = parse_type(line_p, type_field).map_err(err)?;
            if !chi_field.contains('/') {
                return Err(err(format!("chi_N must be <num>/<den>, got {chi_field:?}")));
            }
            let chi: Rational = chi_field.parse().map_err(err)?;
            records.push(SubgroupClassRecord {
                ptype,
                chi_orb_normalizer: chi,
            });
        }
        let p = p.ok_or(ProfileError::Invalid("empty profile".into()))?;
        GroupProfile::new(p, records)
    }
}

/// Type field: "1" is the trivial subgroup; otherwise the cyclic factor
/// orders `p^{λ₁},…` comma-separated (e.g. `25,5` for λ = (2,1) at p = 5).
fn parse_type(p: u64, field: &str) -> Result<AbelianPType, String> {
    if field == "1" {
        return Ok(AbelianPType::trivial(p));
    }
    let mut lambdas = Vec::new();
    for part in field.split(',') {
        let order: u64 = part
            .parse()
            .map_err(|_| format!("bad cyclic order {part:?}"))?;
        let mut rest = order;
        let mut lambda = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            lambda += 1;
        }
        if rest != 1 || lambda == 0 {
            return Err(format!("{order} is not a positive power of p = {p}"));
        }
        lambdas.push(lambda);
    }
    Ok(AbelianPType::new(p, lambdas))
}

/// The height-n sum `Σ χ_orb(N(H)) · |Gen_n(H)|` over the profile's
/// records, with `|Gen_n(H)|` from Hall's formula. Records needing more
/// than `n` generators contribute 0.
pub fn height_sum(profile: &GroupProfile, n: u32) -> Rational {
    assert!(n >= 1);
    profile
        .records()
        .iter()
        .map(|r| &r.chi_orb_normalizer * &Rational::integer(hall_gen_count(&r.ptype, n)))
        .sum()
}

/// The Brown-Quillen sum `Σ (-1)^{r(E)} p^{C(r(E),2)} χ_orb(N(E))` over the
/// elementary abelian records (trivial subgroup included).
pub fn bq_sum(profile: &GroupProfile) -> Rational {
    profile
        .records()
        .iter()
        .filter(|r| r.ptype.is_elementary())
        .map(|r| {
            let rank = r.ptype.rank();
            let weight = BigInt::from(profile.p()).pow(rank * rank.saturating_sub(1) / 2)
                * if rank % 2 == 0 { 1 } else { -1 };
            Rational::integer(weight) * r.chi_orb_normalizer.clone()
        })
        .sum()
}

/// Verifies that the height-n sums converge p-adically to the Brown-Quillen
/// sum at the rate the exponent bookkeeping predicts:
/// `v_p(a_n - a_∞) ≥ n + c₀` for `1 ≤ n ≤ n_max`, where `c₀` ranges over
/// the non-surviving `(H, i)` pairs (those with `A > B` or `i < B`) of
/// `v_p(χ_orb(N(H))) + C(i,2)`. Vacuously true when no such pair exists.
pub fn limit_convergence_check(profile: &GroupProfile, n_max: u32) -> bool {
    assert!(n_max >= 2);
    let p = profile.p();
    let mut c0: Option<i64> = None;
    for r in profile.records() {
        let chi_val = match r.chi_orb_normalizer.valuation(p) {
            Valuation::Finite(v) => v,
            Valuation::Infinite => continue, // zero record contributes nothing
        };
        let a = i64::from(r.ptype.exponent_sum());
        let b = i64::from(r.ptype.rank());
        for i in 0..=b {
            if a > b || i < b {
                let candidate = chi_val + i * (i - 1) / 2;
                c0 = Some(c0.map_or(candidate, |c| c.min(candidate)));
            }
        }
    }
    let Some(c0) = c0 else {
        return true;
    };
    let a_inf = bq_sum(profile);
    (1..=n_max).all(|n| {
        let gap = height_sum(profile, n) - &a_inf;
        gap.valuation(p).at_least(i64::from(n) + c0)
    })
}

/// Profile of a finite group at `p`: one record per conjugacy class of
/// abelian p-subgroups generated by at most 3 elements (the catalog cap),
/// with `χ_orb(N(H)) = 1/|N(H)|`.
pub fn profile_from_finite_group(g: &FiniteGroup, p: u64) -> GroupProfile {
    let records = abelian_p_subgroup_classes(g, p, 3)
        .into_iter()
        .map(|class| SubgroupClassRecord {
            ptype: class.ptype,
            chi_orb_normalizer: Rational::new(1, class.normalizer_order),
        })
        .collect();
    GroupProfile::new(p, records).expect("class data always yields a valid profile")
}

/// The genus-`(p-1)(p-2)/2` mapping class group profile for `p ≥ 5`:
///
/// * the trivial record carries `χ_orb(Γ_u) = ζ(1-2u)/(2-2u)`;
/// * one aggregate cyclic record whose weighted contribution reproduces the
///   order-p class sum `(1/(p-1))·Σ_[g] χ_orb(C⟨g⟩)
///   = (1/(p-1))·(-(1/p)·ζ(1-2v)/(2-2v) + (p-1)²/(2u·p·(2u+2p-2)))`
///   with `v = (p-1)/2` (the individual cyclic classes are not known
///   separately, only this sum);
/// * one rank-2 record for the unique `ℤ/p × ℤ/p` class, whose normalizer
///   has order `6p²`.
pub fn section7_profile(p: u64) -> GroupProfile {
    assert!(is_prime(p) && p >= 5, "p = {p} must be a prime >= 5");
    let u = section7_genus(p);
    let v = u32::try_from((p - 1) / 2).unwrap();
    let p_i = i64::try_from(p).unwrap();
    let two_u = 2 * i64::from(u);
    let cyclic_aggregate = Rational::new(1, p_i - 1)
        * (Rational::new(-1, p_i) * chi_orb_closed(v)
            + Rational::new((p_i - 1) * (p_i - 1), two_u * p_i * (two_u + 2 * p_i - 2)));
    let records = vec![
        SubgroupClassRecord {
            ptype: AbelianPType::trivial(p),
            chi_orb_normalizer: chi_orb_closed(u),
        },
        SubgroupClassRecord {
            ptype: AbelianPType::new(p, vec![1]),
            chi_orb_normalizer: cyclic_aggregate,
        },
        SubgroupClassRecord {
            ptype: AbelianPType::new(p, vec![1, 1]),
            chi_orb_normalizer: Rational::new(1, 6 * p_i * p_i),
        },
    ];
    GroupProfile::new(p, records).expect("section-7 profile is valid")
}

/// `u = (p-1)(p-2)/2`, the minimal genus carrying a rank-2 elementary
/// abelian p-subgroup.
pub fn section7_genus(p: u64) -> u32 {
    u32::try_from((p - 1) * (p - 2) / 2).expect("genus out of range")
}

/// The von Staudt-Clausen bridge between the height-1 and Brown-Quillen
/// forms: `ζ(1-2v)/(2v-2) ≡ 1/(p(p-1)(p-3)) (mod ℤ₍ₚ₎)` at `v = (p-1)/2`.
pub fn section7_bridge_check(p: u64) -> bool {
    assert!(is_prime(p) && p >= 5);
    let v = u32::try_from((p - 1) / 2).unwrap();
    let p_i = i64::try_from(p).unwrap();
    // ζ(1-2v)/(2v-2) = -χ_orb(Γ_v)
    let lhs = -chi_orb_closed(v);
    let rhs = Rational::new(1, p_i * (p_i - 1) * (p_i - 3));
    (lhs - rhs).is_p_integral(p)
}

/// Height-n coefficients of the section-7 profile, written as the explicit
/// polynomials in `p^n`: the cyclic aggregate is weighted by `p^n - 1` and
/// the rank-2 class by `p^{2n} - (1+p)p^n + p`.
pub fn section7_height_polynomial(p: u64, n: u32) -> Rational {
    let profile = section7_profile(p);
    let pn = BigInt::from(p).pow(n);
    let records = profile.records();
    let chi_triv = &records[0].chi_orb_normalizer;
    let chi_cyc = &records[1].chi_orb_normalizer;
    let chi_rank2 = &records[2].chi_orb_normalizer;
    let cyc_coeff = Rational::integer(&pn - 1);
    let rank2_coeff = Rational::integer(&pn * &pn - (BigInt::from(p) + 1) * &pn + BigInt::from(p));
    chi_triv.clone() + cyc_coeff * chi_cyc.clone() + rank2_coeff * chi_rank2.clone()
}

/// Full section-7 verification at heights `1..=n_max`:
/// (a) each height sum matches the displayed coefficient polynomials and is
/// p-integral, (b) the Brown-Quillen sum is p-integral, (c) the p-adic
/// convergence check passes, (d) the von Staudt-Clausen bridge holds.
pub fn section7_check(p: u64, n_max: u32) -> bool {
    let profile = section7_profile(p);
    let heights_ok = (1..=n_max).all(|n| {
        let sum = height_sum(&profile, n);
        sum == section7_height_polynomial(p, n) && sum.is_p_integral(p)
    });
    heights_ok
        && bq_sum(&profile).is_p_integral(p)
        && limit_convergence_check(&profile, n_max.max(2))
        && section7_bridge_check(p)
}
