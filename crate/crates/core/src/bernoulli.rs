//! Exact Bernoulli numbers, special zeta values and classical congruence
//! checkers.
//!
//! Values follow the convention `B₁ = -1/2`; together with `B₀ = 1` and
//! `Bₘ = 0` for odd `m ≥ 3` this pins every entry of the cache to the
//! defining recurrence `Σ_{j=0}^{m} C(m+1, j)·B_j = 0` (`m ≥ 1`). The cache
//! itself is filled through the Seidel triangle for tangent numbers, which
//! needs only big-integer additions and stays usable for the large indices
//! the Kummer/Carlitz/Cohen sweeps reach; the recurrence is enforced as a
//! test oracle on a long prefix.

use crate::arith::{is_prime, Rational};
use crate::CheckOutcome;
use num_bigint::BigInt;
use num_traits::One;
use std::sync::{Mutex, OnceLock};

/// Dense table of Bernoulli numbers `B_0 ..= high-water mark`.
pub struct BernoulliCache {
    table: Vec<Rational>,
    // last computed row of the Seidel zigzag triangle and its index
    seidel_row: Vec<BigInt>,
    seidel_n: usize,
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            table: vec![Rational::one()],
            seidel_row: vec![BigInt::one()],
            seidel_n: 0,
        }
    }

    pub fn high_water_mark(&self) -> usize {
        self.table.len() - 1
    }

    /// `B_m`, extending the table as needed. The table only ever grows.
    pub fn get(&mut self, m: usize) -> Rational {
        while self.table.len() <= m {
            let idx = self.table.len();
            let value = if idx == 1 {
                Rational::new(-1, 2)
            } else if idx % 2 == 1 {
                Rational::zero()
            } else {
                self.even_entry(idx / 2)
            };
            self.table.push(value);
        }
        self.table[m].clone()
    }

    /// `B_{2j} = (-1)^{j-1} · 2j · T_j / (2^{2j}(2^{2j} - 1))` where `T_j`
    /// is the j-th tangent number, read off the zigzag triangle.
    fn even_entry(&mut self, j: usize) -> Rational {
        self.advance_seidel_to(2 * j - 1);
        let tangent = self.seidel_row[2 * j - 1].clone();
        let numer = BigInt::from(2 * j as u64) * tangent * if j % 2 == 1 { 1 } else { -1 };
        let pow4 = BigInt::from(2).pow(2 * j as u32);
        let denom = &pow4 * (&pow4 - 1);
        Rational::new(numer, denom)
    }

    // Seidel-Entringer rows: E(n,0) = 0, E(n,k) = E(n,k-1) + E(n-1,n-k);
    // the zigzag number A_n = E(n,n) and T_j = A_{2j-1}.
    fn advance_seidel_to(&mut self, n: usize) {
        while self.seidel_n < n {
            let prev = &self.seidel_row;
            let next_n = self.seidel_n + 1;
            let mut row = Vec::with_capacity(next_n + 1);
            row.push(BigInt::ZERO);
            for k in 1..=next_n {
                let e = &row[k - 1] + &prev[next_n - k];
                row.push(e);
            }
            self.seidel_row = row;
            self.seidel_n = next_n;
        }
    }
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

static CACHE: OnceLock<Mutex<BernoulliCache>> = OnceLock::new();

/// `B_m` from the shared process-wide cache.
pub fn bernoulli(m: u32) -> Rational {
    CACHE
        .get_or_init(|| Mutex::new(BernoulliCache::new()))
        .lock()
        .expect("bernoulli cache poisoned")
        .get(m as usize)
}

/// `ζ(1-2u) = -B_{2u}/(2u)` for `u ≥ 1`.
pub fn zeta_neg(u: u32) -> Rational {
    assert!(u >= 1, "zeta_neg requires u >= 1");
    -bernoulli(2 * u) / Rational::integer(2 * i64::from(u))
}

/// Von Staudt-Clausen: `B_{2u} + Σ_{(p-1) | 2u} 1/p` is an integer.
pub fn von_staudt_clausen_check(two_u: u32) -> bool {
    assert!(
        two_u >= 2 && two_u.is_multiple_of(2),
        "von Staudt-Clausen needs an even index >= 2"
    );
    let mut sum = bernoulli(two_u);
    for p in vsc_primes(two_u) {
        sum = sum + Rational::new(1, i64::try_from(p).unwrap());
    }
    sum.is_integer()
}

/// Primes `p` with `(p-1) | 2u`.
pub fn vsc_primes(two_u: u32) -> Vec<u64> {
    let mut primes: Vec<u64> = (1..=u64::from(two_u))
        .filter(|d| u64::from(two_u) % d == 0)
        .map(|d| d + 1)
        .filter(|&p| is_prime(p))
        .collect();
    primes.sort_unstable();
    primes
}

/// Kummer's congruence: `B_{2u}/2u ≡ B_{2v}/2v (mod p^r ℤ₍ₚ₎)` for
/// `2u = p^r x + 2`, `2v = p^{r-1} x + 2`, provided `(p-1) ∤ 2u`.
/// The witness is the exact difference of the two sides.
pub fn kummer_check(p: u64, r: u32, x: u64) -> CheckOutcome {
    if let Some(reason) = require_odd_prime_ge5(p) {
        return reason;
    }
    if r < 1 {
        return not_met("r >= 1 required");
    }
    if x < 1 {
        return not_met("x >= 1 required");
    }
    if !x.is_multiple_of(2) {
        return not_met("x must be even so that 2u and 2v are even");
    }
    let (two_u, two_v) = match (scaled_index(p, r, x, 2), scaled_index(p, r - 1, x, 2)) {
        (Some(a), Some(b)) => (a, b),
        _ => return not_met("parameters out of range"),
    };
    if u64::from(two_u) % (p - 1) == 0 {
        return not_met("(p-1) | 2u: Kummer's hypothesis fails");
    }
    let witness = bernoulli_over_index(two_u) - bernoulli_over_index(two_v);
    CheckOutcome::from_bool(witness.valuation(p).at_least(i64::from(r)), witness)
}

/// Carlitz's congruence: `B_{2u} + 1/p ≡ 1 (mod p^r ℤ₍ₚ₎)` for
/// `2u = x p^r (p-1)`, provided `p ∤ 2u - 2`.
/// The witness is `B_{2u} + 1/p - 1`.
pub fn carlitz_check(p: u64, r: u32, x: u64) -> CheckOutcome {
    if let Some(reason) = require_odd_prime_ge5(p) {
        return reason;
    }
    if x < 1 {
        return not_met("x >= 1 required");
    }
    let two_u = match scaled_index(p, r, x * (p - 1), 0) {
        Some(a) => a,
        None => return not_met("parameters out of range"),
    };
    if u64::from(two_u - 2) % p == 0 {
        return not_met("p | 2u-2: Carlitz's hypothesis fails");
    }
    let witness = bernoulli(two_u) + Rational::new(1, i64::try_from(p).unwrap()) - Rational::one();
    CheckOutcome::from_bool(witness.valuation(p).at_least(i64::from(r)), witness)
}

/// Cohen's congruence:
/// `B_{2u}/2u - B_{2v}/2v ≡ (1/2u - 1/2v)(1 - 1/p) (mod p^r ℤ₍ₚ₎)` for
/// `u = p^r((p-1)k/2 - 1) + 1` and `v = p^{r-1}((p-1)k/2 - 1) + 1`.
/// The witness is the exact difference of the two sides.
pub fn cohen_check(p: u64, r: u32, k: u64) -> CheckOutcome {
    if let Some(reason) = require_odd_prime_ge5(p) {
        return reason;
    }
    if r < 1 {
        return not_met("r >= 1 required");
    }
    if k < 1 {
        return not_met("k >= 1 required");
    }
    let x = (p - 1) / 2 * k - 1;
    let (u, v) = match (scaled_index(p, r, x, 1), scaled_index(p, r - 1, x, 1)) {
        (Some(a), Some(b)) => (a, b),
        _ => return not_met("parameters out of range"),
    };
    let lhs = bernoulli_over_index(2 * u) - bernoulli_over_index(2 * v);
    let rhs = (Rational::new(1, 2 * i64::from(u)) - Rational::new(1, 2 * i64::from(v)))
        * (Rational::one() - Rational::new(1, i64::try_from(p).unwrap()));
    let witness = lhs - rhs;
    CheckOutcome::from_bool(witness.valuation(p).at_least(i64::from(r)), witness)
}

fn bernoulli_over_index(two_u: u32) -> Rational {
    bernoulli(two_u) / Rational::integer(i64::from(two_u))
}

/// `p^r * x + offset` as a u32 Bernoulli index, or None on overflow.
fn scaled_index(p: u64, r: u32, x: u64, offset: u64) -> Option<u32> {
    let pr = p.checked_pow(r)?;
    let n = pr.checked_mul(x)?.checked_add(offset)?;
    u32::try_from(n).ok()
}

fn require_odd_prime_ge5(p: u64) -> Option<CheckOutcome> {
    if !is_prime(p) || p < 5 {
        Some(CheckOutcome::HypothesesNotMet {
            reason: format!("p = {p} must be a prime >= 5"),
        })
    } else {
        None
    }
}

fn not_met(reason: &str) -> CheckOutcome {
    CheckOutcome::HypothesesNotMet {
        reason: reason.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Valuation;

    #[test]
    fn small_values() {
        let expect = [
            (0u32, (1i64, 1i64)),
            (1, (-1, 2)),
            (2, (1, 6)),
            (4, (-1, 30)),
            (6, (1, 42)),
            (8, (-1, 30)),
            (10, (5, 66)),
            (12, (-691, 2730)),
            (14, (7, 6)),
            (16, (-3617, 510)),
            (18, (43867, 798)),
            (20, (-174611, 330)),
            (22, (854513, 138)),
            (24, (-236364091, 2730)),
        ];
        for (m, (n, d)) in expect {
            assert_eq!(bernoulli(m), Rational::new(n, d), "B_{m}");
        }
        for m in (3..40).step_by(2) {
            assert!(bernoulli(m).is_zero(), "B_{m} should vanish");
        }
    }

    #[test]
    fn defining_recurrence_holds() {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
        let mut cache = BernoulliCache::new();
        for m in 1usize..=100 {
            let mut sum = Rational::zero();
            for j in 0..=m {
                let c = num_integer::binomial(BigInt::from(m + 1), BigInt::from(j));
                sum = sum + Rational::integer(c) * cache.get(j);
            }
            assert!(sum.is_zero(), "recurrence fails at m = {m}");
        }
        assert_eq!(cache.high_water_mark(), 100);
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_neg(1), Rational::new(-1, 12));
        assert_eq!(zeta_neg(2), Rational::new(1, 120));
        assert_eq!(zeta_neg(6), Rational::new(691, 32760));
    }

    #[test]
    #[should_panic(expected = "u >= 1")]
    fn zeta_rejects_zero() {
        zeta_neg(0);
    }

    #[test]
    fn von_staudt_clausen_small() {
        // 1/6 + 1/2 + 1/3 = 1, -1/30 + 1/2 + 1/3 + 1/5 = 1
        assert!(von_staudt_clausen_check(2));
        assert!(von_staudt_clausen_check(4));
        assert_eq!(vsc_primes(12), vec![2, 3, 5, 7, 13]);
        assert!(von_staudt_clausen_check(12));
    }

    #[test]
    fn von_staudt_clausen_denominators_to_200() {
        for two_u in (2..=200u32).step_by(2) {
            assert!(von_staudt_clausen_check(two_u), "vSC fails at 2u = {two_u}");
            let denom: BigInt = vsc_primes(two_u)
                .iter()
                .fold(BigInt::one(), |acc, &p| acc * BigInt::from(p));
            assert_eq!(
                bernoulli(two_u).denom(),
                &denom,
                "denominator of B_{two_u} is not the von Staudt-Clausen product"
            );
        }
    }

    #[test]
    fn kummer_examples() {
        // 2u = 22, 2v = 6; both sides are 3 mod 5
        let out = kummer_check(5, 1, 4);
        assert_eq!(
            out,
            CheckOutcome::Holds {
                witness: Rational::new(407830, 1449)
            }
        );
        let side = bernoulli_over_index(6);
        assert!(crate::congruent_mod_pr(&side, &Rational::integer(3), 5, 1));
        assert!(kummer_check(7, 1, 2).holds());
        // (p-1) | 2u = 12 is a hypothesis failure, not a congruence failure
        assert!(!kummer_check(5, 1, 2).is_applicable());
        assert!(!kummer_check(5, 1, 3).is_applicable()); // odd x
        assert!(!kummer_check(4, 1, 2).is_applicable()); // composite p
    }

    #[test]
    fn carlitz_examples() {
        // 2u = 4: B_4 + 1/5 = 1/6 and 1/6 - 1 = -5/6 has v_5 = 1 >= r = 0
        let out = carlitz_check(5, 0, 1);
        assert_eq!(
            out,
            CheckOutcome::Holds {
                witness: Rational::new(-5, 6)
            }
        );
        // 2u = 20: exact witness and v_5 = 2 >= 1
        let out = carlitz_check(5, 1, 1);
        assert_eq!(
            out,
            CheckOutcome::Holds {
                witness: Rational::new(-34975, 66)
            }
        );
        assert!(carlitz_check(7, 0, 2).holds());
        // p | 2u - 2 fails the hypothesis: x = 3, r = 0, p = 5 gives 2u = 12
        assert!(!carlitz_check(5, 0, 3).is_applicable());
    }

    #[test]
    fn cohen_examples() {
        // u = 6, v = 2: difference 395/3276 (= 1975/16380) with v_5 = 1
        let out = cohen_check(5, 1, 1);
        assert_eq!(
            out,
            CheckOutcome::Holds {
                witness: Rational::new(395, 3276)
            }
        );
        assert_eq!(out.witness().unwrap().valuation(5), Valuation::Finite(1));
        assert!(cohen_check(5, 1, 2).holds()); // u = 16, v = 4
        assert!(cohen_check(7, 1, 1).holds()); // u = 15, v = 3
    }

    #[test]
    fn p_integrality_of_chi_numerators() {
        // B_{2u}/(2u(2u-2)) is p-integral whenever (p-1) is not a divisor of 2u
        // and p is not a divisor of 2u-2.
        for p in [5u64, 7, 11, 13] {
            for two_u in (4..=160u32).step_by(2) {
                if u64::from(two_u) % (p - 1) == 0 || u64::from(two_u - 2) % p == 0 {
                    continue;
                }
                let q =
                    bernoulli(two_u) / Rational::integer(i64::from(two_u) * i64::from(two_u - 2));
                assert!(q.is_p_integral(p), "failed at 2u = {two_u}, p = {p}");
            }
        }
    }
}
