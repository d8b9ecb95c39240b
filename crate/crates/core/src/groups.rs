//! Finite-group oracle layer.
//!
//! Groups are small (order ≤ 256) multiplication tables, validated on
//! construction. Everything here is brute force on purpose: commuting
//! p-power tuples, conjugation orbits, centralizers and subgroup closures
//! are enumerated directly so they can serve as independent oracles for the
//! closed formulas in the rest of the crate.

use crate::arith::{is_prime, qbinom, Rational};
use crate::CheckOutcome;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

/// Enumeration scale bound: every paper-level claim is already exercised
/// below this order.
pub const MAX_GROUP_ORDER: usize = 256;

/// Enumeration bound for [`gen_tuples_bruteforce`]: |H|^n may not exceed this.
pub const MAX_BRUTEFORCE_TUPLES: u128 = 100_000_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group order {0} exceeds the oracle bound {MAX_GROUP_ORDER}")]
    OrderTooLarge(usize),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid group descriptor: {0}")]
    InvalidSpec(String),
    #[error("enumeration bound exceeded: |H|^n = {0} > {MAX_BRUTEFORCE_TUPLES}")]
    ScaleBoundExceeded(u128),
}

/// A finite group presented by its full multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    identity: u16,
    element_orders: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates the group axioms (closure, identity, inverses,
    /// associativity) and precomputes inverses and element orders.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<u16>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::NotAGroup("empty carrier".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::OrderTooLarge(order));
        }
        if table.len() != order * order {
            return Err(GroupError::NotAGroup("table size mismatch".into()));
        }
        if table.iter().any(|&x| usize::from(x) >= order) {
            return Err(GroupError::NotAGroup("table entry out of range".into()));
        }
        let at = |a: usize, b: usize| usize::from(table[a * order + b]);
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| GroupError::NotAGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv as u16);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut group = FiniteGroup {
            name: name.into(),
            order,
            table,
            inverse,
            identity: identity as u16,
            element_orders: Vec::new(),
            labels,
        };
        group.element_orders = (0..order as u16).map(|a| group.compute_order(a)).collect();
        Ok(group)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u16 {
        self.identity
    }

    pub fn label(&self, a: u16) -> String {
        match &self.labels {
            Some(ls) => ls[usize::from(a)].clone(),
            None => a.to_string(),
        }
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[usize::from(a) * self.order + usize::from(b)]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inverse[usize::from(a)]
    }

    pub fn pow(&self, a: u16, mut k: u64) -> u16 {
        let mut base = a;
        let mut acc = self.identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn order_of(&self, a: u16) -> u32 {
        self.element_orders[usize::from(a)]
    }

    fn compute_order(&self, a: u16) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `x a x⁻¹`.
    #[inline]
    pub fn conjugate(&self, x: u16, a: u16) -> u16 {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn commutes(&self, a: u16, b: u16) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn has_p_power_order(&self, a: u16, p: u64) -> bool {
        let mut ord = u64::from(self.order_of(a));
        while ord % p == 0 {
            ord /= p;
        }
        ord == 1
    }

    pub fn elements_of_p_power_order(&self, p: u64) -> Vec<u16> {
        (0..self.order as u16)
            .filter(|&a| self.has_p_power_order(a, p))
            .collect()
    }

    /// Closure of a set of elements under multiplication.
    pub fn generated_subgroup(&self, gens: &[u16]) -> Vec<u16> {
        let mut member = vec![false; self.order];
        member[usize::from(self.identity)] = true;
        let mut elems = vec![self.identity];
        let mut frontier: Vec<u16> = gens.to_vec();
        while let Some(g) = frontier.pop() {
            if member[usize::from(g)] {
                continue;
            }
            member[usize::from(g)] = true;
            elems.push(g);
            let snapshot = elems.clone();
            for &h in &snapshot {
                frontier.push(self.mul(g, h));
                frontier.push(self.mul(h, g));
            }
        }
        elems.sort_unstable();
        elems
    }
}

/// Constructive descriptor for the group catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u32),
    Abelian(Vec<u32>),
    /// Symmetric group on `n ≤ 5` letters.
    Symmetric(u32),
    /// Dihedral group with `m` rotations (order `2m`).
    Dihedral(u32),
    Quaternion8,
    DirectProduct(Vec<GroupSpec>),
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    match spec {
        GroupSpec::Cyclic(m) => {
            if *m == 0 {
                return Err(GroupError::InvalidSpec("cyclic(0)".into()));
            }
            let m = *m as usize;
            if m > MAX_GROUP_ORDER {
                return Err(GroupError::OrderTooLarge(m));
            }
            let table = (0..m)
                .flat_map(|a| (0..m).map(move |b| ((a + b) % m) as u16))
                .collect();
            FiniteGroup::from_table(format!("C{m}"), m, table, None)
        }
        GroupSpec::Abelian(ms) => {
            let specs: Vec<GroupSpec> = ms.iter().map(|&m| GroupSpec::Cyclic(m)).collect();
            build_group(&GroupSpec::DirectProduct(specs))
        }
        GroupSpec::Symmetric(n) => build_symmetric(*n),
        GroupSpec::Dihedral(m) => build_dihedral(*m),
        GroupSpec::Quaternion8 => build_quaternion8(),
        GroupSpec::DirectProduct(specs) => {
            if specs.is_empty() {
                return build_group(&GroupSpec::Cyclic(1));
            }
            let mut acc = build_group(&specs[0])?;
            for s in &specs[1..] {
                acc = direct_product(&acc, &build_group(s)?)?;
            }
            Ok(acc)
        }
    }
}

fn build_symmetric(n: u32) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > 5 {
        return Err(GroupError::InvalidSpec(format!(
            "symmetric({n}) is out of range 1..=5"
        )));
    }
    let mut perms: Vec<Vec<u8>> = vec![vec![]];
    for i in 0..n as u8 {
        let mut next = Vec::new();
        for p in &perms {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, i);
                next.push(q);
            }
        }
        perms = next;
    }
    perms.sort();
    let order = perms.len();
    let index: HashMap<Vec<u8>, u16> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u16))
        .collect();
    let mut table = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            // (a ∘ b)(x) = a(b(x))
            let c: Vec<u8> = (0..n as usize).map(|x| a[usize::from(b[x])]).collect();
            table.push(index[&c]);
        }
    }
    let labels = perms.iter().map(|p| format!("{p:?}")).collect();
    FiniteGroup::from_table(format!("S{n}"), order, table, Some(labels))
}

fn build_dihedral(m: u32) -> Result<FiniteGroup, GroupError> {
    if m == 0 {
        return Err(GroupError::InvalidSpec("dihedral(0)".into()));
    }
    let m = m as usize;
    let order = 2 * m;
    if order > MAX_GROUP_ORDER {
        return Err(GroupError::OrderTooLarge(order));
    }
    // element i + m*f is r^i s^f; s r = r^{-1} s
    let idx = |i: usize, f: usize| (i + m * f) as u16;
    let mut table = vec![0u16; order * order];
    for i in 0..m {
        for f in 0..2 {
            for j in 0..m {
                for g in 0..2 {
                    let prod = if f == 0 {
                        idx((i + j) % m, g)
                    } else {
                        idx((i + m - j) % m, 1 - g)
                    };
                    table[usize::from(idx(i, f)) * order + usize::from(idx(j, g))] = prod;
                }
            }
        }
    }
    FiniteGroup::from_table(format!("D{order}"), order, table, None)
}

fn build_quaternion8() -> Result<FiniteGroup, GroupError> {
    // element a + 4*s is (axis, sign) with axes 1, i, j, k
    let axis_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) => (x, 0),
            (x, 0) => (x, 0),
            (x, y) if x == y => (0, 1),
            (1, 2) => (3, 0),
            (2, 1) => (3, 1),
            (2, 3) => (1, 0),
            (3, 2) => (1, 1),
            (3, 1) => (2, 0),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        }
    };
    let mut table = vec![0u16; 64];
    for a in 0..4 {
        for s in 0..2 {
            for b in 0..4 {
                for t in 0..2 {
                    let (axis, flip) = axis_mul(a, b);
                    let sign = (s + t + flip) % 2;
                    table[(a + 4 * s) * 8 + (b + 4 * t)] = (axis + 4 * sign) as u16;
                }
            }
        }
    }
    let labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_table("Q8", 8, table, Some(labels))
}

fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let order = a.order * b.order;
    if order > MAX_GROUP_ORDER {
        return Err(GroupError::OrderTooLarge(order));
    }
    let idx = |x: u16, y: u16| u16::try_from(usize::from(x) * b.order + usize::from(y)).unwrap();
    let mut table = vec![0u16; order * order];
    for x1 in 0..a.order as u16 {
        for y1 in 0..b.order as u16 {
            for x2 in 0..a.order as u16 {
                for y2 in 0..b.order as u16 {
                    table[usize::from(idx(x1, y1)) * order + usize::from(idx(x2, y2))] =
                        idx(a.mul(x1, x2), b.mul(y1, y2));
                }
            }
        }
    }
    FiniteGroup::from_table(format!("{}x{}", a.name, b.name), order, table, None)
}

/// Parses catalog names like `S3`, `D8`, `Q8`, `C5xC5`, `C4xC2`.
/// `D<k>` is the dihedral group of order `k`.
pub fn group_by_name(name: &str) -> Result<FiniteGroup, GroupError> {
    let factors: Result<Vec<GroupSpec>, GroupError> = name
        .split('x')
        .map(|part| {
            let err = || GroupError::InvalidSpec(format!("unknown group {part:?}"));
            if part == "Q8" {
                return Ok(GroupSpec::Quaternion8);
            }
            let (head, num) = part.split_at(1);
            let m: u32 = num.parse().map_err(|_| err())?;
            match head {
                "C" => Ok(GroupSpec::Cyclic(m)),
                "S" => Ok(GroupSpec::Symmetric(m)),
                "D" if m.is_multiple_of(2) && m >= 2 => Ok(GroupSpec::Dihedral(m / 2)),
                _ => Err(err()),
            }
        })
        .collect();
    let factors = factors?;
    let mut g = if factors.len() == 1 {
        build_group(&factors[0])?
    } else {
        build_group(&GroupSpec::DirectProduct(factors))?
    };
    g.name = name.to_string();
    Ok(g)
}

/// Named groups the verification suites sweep over (orders ≤ 48, p-ranks ≤ 3).
pub const CATALOG: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C12", "C2xC2", "C4xC2", "C2xC2xC2",
    "C3xC3", "C4xC4", "C9xC3", "C5xC5", "S3", "S4", "D8", "D10", "D12", "Q8", "Q8xC2", "D8xC2",
    "S3xC3", "S3xS3",
];

pub fn catalog() -> Vec<FiniteGroup> {
    CATALOG
        .iter()
        .map(|n| group_by_name(n).expect("catalog entry must build"))
        .collect()
}

/// Exponent of the p-part of `n`.
pub fn p_part_exponent(n: u64, p: u64) -> u32 {
    let mut n = n;
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// The set `G_{n,p}` of n-tuples of pairwise-commuting elements of p-power
/// order, in lexicographic order. Always contains the all-identity tuple.
pub fn commuting_p_tuples(g: &FiniteGroup, p: u64, n: u32) -> Vec<Vec<u16>> {
    assert!(is_prime(p), "p = {p} is not prime");
    assert!(n >= 1, "tuple length must be >= 1");
    let pool = g.elements_of_p_power_order(p);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n as usize);
    fn rec(
        g: &FiniteGroup,
        pool: &[u16],
        n: usize,
        current: &mut Vec<u16>,
        out: &mut Vec<Vec<u16>>,
    ) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for &cand in pool {
            if current.iter().all(|&prev| g.commutes(prev, cand)) {
                current.push(cand);
                rec(g, pool, n, current, out);
                current.pop();
            }
        }
    }
    rec(g, &pool, n as usize, &mut current, &mut out);
    out
}

/// Partition of `tuples` into conjugation orbits; returns one representative
/// index list per orbit.
fn tuple_orbits(g: &FiniteGroup, tuples: &[Vec<u16>]) -> Vec<usize> {
    let index: HashMap<&[u16], usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let mut seen = vec![false; tuples.len()];
    let mut reps = Vec::new();
    for start in 0..tuples.len() {
        if seen[start] {
            continue;
        }
        reps.push(start);
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            for x in 0..g.order() as u16 {
                let img: Vec<u16> = tuples[i].iter().map(|&a| g.conjugate(x, a)).collect();
                let j = index[img.as_slice()];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    reps
}

fn tuple_centralizer_order(g: &FiniteGroup, tuple: &[u16]) -> u64 {
    (0..g.order() as u16)
        .filter(|&x| tuple.iter().all(|&a| g.conjugate(x, a) == a))
        .count() as u64
}

/// `Σ 1/|C⟨g₁..gₙ⟩|` over conjugation-orbit representatives of `G_{n,p}`.
///
/// Computed twice — by the orbit/centralizer sum and as `|G_{n,p}|/|G|` —
/// and asserted equal; a mismatch means the orbit computation is broken.
pub fn tuple_class_sum(g: &FiniteGroup, p: u64, n: u32) -> Rational {
    let tuples = commuting_p_tuples(g, p, n);
    let class_equation_side = Rational::new(tuples.len() as u64, g.order() as u64);
    let orbit_side: Rational = tuple_orbits(g, &tuples)
        .into_iter()
        .map(|i| Rational::new(1, tuple_centralizer_order(g, &tuples[i])))
        .sum();
    assert_eq!(
        orbit_side, class_equation_side,
        "orbit sum disagrees with |G_(n,p)|/|G| for {g:?}, p={p}, n={n}"
    );
    orbit_side
}

/// Number of solutions of `x^d = 1`. When `d` divides `|G|` the Frobenius
/// theorem guarantees `d` divides the count; that is asserted here.
pub fn frobenius_count(g: &FiniteGroup, d: u64) -> u64 {
    assert!(d >= 1);
    let count = (0..g.order() as u16)
        .filter(|&a| g.pow(a, d) == g.identity())
        .count() as u64;
    if (g.order() as u64).is_multiple_of(d) {
        assert!(
            count.is_multiple_of(d),
            "Frobenius divisibility fails for {g:?} at d = {d}: count = {count}"
        );
    }
    count
}

/// Isomorphism type of a finite abelian p-group: the partition
/// `λ₁ ≥ … ≥ λ_B ≥ 1` with `H ≅ ∏ᵢ ℤ/p^{λᵢ}` (empty for the trivial group).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianPType {
    p: u64,
    lambdas: Vec<u32>,
}

impl AbelianPType {
    pub fn new(p: u64, mut lambdas: Vec<u32>) -> Self {
        assert!(is_prime(p), "p = {p} is not prime");
        assert!(
            lambdas.iter().all(|&l| l >= 1),
            "partition parts must be >= 1"
        );
        lambdas.sort_unstable_by(|a, b| b.cmp(a));
        AbelianPType { p, lambdas }
    }

    pub fn trivial(p: u64) -> Self {
        Self::new(p, Vec::new())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn lambdas(&self) -> &[u32] {
        &self.lambdas
    }

    pub fn is_trivial(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// Rank of `H/Φ(H)`, i.e. the number of parts.
    pub fn rank(&self) -> u32 {
        self.lambdas.len() as u32
    }

    /// `A = Σ λᵢ`, so `|H| = p^A`.
    pub fn exponent_sum(&self) -> u32 {
        self.lambdas.iter().sum()
    }

    pub fn order(&self) -> BigInt {
        BigInt::from(self.p).pow(self.exponent_sum())
    }

    pub fn is_elementary(&self) -> bool {
        self.lambdas.iter().all(|&l| l == 1)
    }

    /// Frattini subgroup type: parts `λᵢ - 1` with zero parts dropped.
    pub fn frattini(&self) -> AbelianPType {
        let parts = self
            .lambdas
            .iter()
            .filter(|&&l| l > 1)
            .map(|&l| l - 1)
            .collect();
        AbelianPType::new(self.p, parts)
    }
}

impl fmt::Display for AbelianPType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .lambdas
            .iter()
            .map(|&l| BigInt::from(self.p).pow(l).to_string())
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `|Gen_n(H)|` by direct enumeration over `H^n` with subgroup closure.
pub fn gen_tuples_bruteforce(t: &AbelianPType, n: u32) -> Result<u64, GroupError> {
    assert!(n >= 1);
    let size: u128 = t
        .lambdas
        .iter()
        .try_fold(1u128, |acc, &l| {
            acc.checked_mul(u128::from(t.p).checked_pow(l)?)
        })
        .ok_or(GroupError::ScaleBoundExceeded(u128::MAX))?;
    let total = size
        .checked_pow(n)
        .ok_or(GroupError::ScaleBoundExceeded(u128::MAX))?;
    if total > MAX_BRUTEFORCE_TUPLES {
        return Err(GroupError::ScaleBoundExceeded(total));
    }
    let sizes: Vec<u64> = t.lambdas.iter().map(|&l| t.p.pow(l)).collect();
    let order = size as u64;
    let add = |a: u64, b: u64| -> u64 {
        let (mut a, mut b, mut out, mut mult) = (a, b, 0u64, 1u64);
        for &s in &sizes {
            out += (a + b) % s * mult;
            a /= s;
            b /= s;
            mult *= s;
        }
        out
    };
    // bitset-valued subgroup closures, extended one generator at a time;
    // tuple counts only depend on (depth, subgroup so far), so memoize
    let words = (order as usize).div_ceil(64);
    let full =
        |bits: &[u64]| -> bool { bits.iter().map(|w| w.count_ones() as u64).sum::<u64>() == order };
    let sumset = |bits: &[u64], h: u64| -> Vec<u64> {
        let mut out = vec![0u64; words];
        let mut multiples = vec![0u64];
        let mut x = h;
        while x != 0 {
            multiples.push(x);
            x = add(x, h);
        }
        for idx in 0..order {
            if bits[(idx / 64) as usize] >> (idx % 64) & 1 == 1 {
                for &m in &multiples {
                    let y = add(idx, m);
                    out[(y / 64) as usize] |= 1 << (y % 64);
                }
            }
        }
        out
    };
    fn rec(
        depth: u32,
        n: u32,
        order: u64,
        current: &[u64],
        full: &dyn Fn(&[u64]) -> bool,
        sumset: &dyn Fn(&[u64], u64) -> Vec<u64>,
        memo: &mut HashMap<(u32, Vec<u64>), u64>,
    ) -> u64 {
        if depth == n {
            return u64::from(full(current));
        }
        if let Some(&count) = memo.get(&(depth, current.to_vec())) {
            return count;
        }
        let count = (0..order)
            .map(|h| {
                let next = sumset(current, h);
                rec(depth + 1, n, order, &next, full, sumset, memo)
            })
            .sum();
        memo.insert((depth, current.to_vec()), count);
        count
    }
    let mut start = vec![0u64; words];
    start[0] = 1; // the zero element
    let mut memo = HashMap::new();
    Ok(rec(0, n, order, &start, &full, &sumset, &mut memo))
}

/// Hall's closed form for `|Gen_n(H)|`:
/// `|Φ(H)|^n · Σ_{i=0}^{r} (-1)^i p^{n(r-i) + C(i,2)} [r i]_p`
/// with `r = rank(H/Φ(H))`. Evaluates to 0 exactly when `n < r`.
pub fn hall_gen_count(t: &AbelianPType, n: u32) -> BigInt {
    assert!(n >= 1);
    let p = BigInt::from(t.p);
    let r = t.rank();
    let mut sum = BigInt::zero();
    for i in 0..=r {
        let exp = n * (r - i) + i * i.saturating_sub(1) / 2;
        let term = p.pow(exp) * qbinom(r, i, t.p);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let phi_order = BigInt::from(t.p).pow(t.exponent_sum() - t.rank());
    let count = phi_order.pow(n) * sum;
    assert!(!count.is_negative(), "Hall count must be non-negative");
    assert_eq!(
        count.is_zero(),
        n < r,
        "Hall count vanishes exactly when n < r"
    );
    count
}

/// One conjugacy class of abelian p-subgroups.
#[derive(Debug, Clone)]
pub struct SubgroupClassDatum {
    /// Sorted element indices of one representative subgroup.
    pub representative: Vec<u16>,
    pub ptype: AbelianPType,
    pub normalizer_order: u64,
    pub centralizer_order: u64,
}

impl SubgroupClassDatum {
    pub fn weyl_order(&self) -> u64 {
        debug_assert_eq!(self.normalizer_order % self.centralizer_order, 0);
        self.normalizer_order / self.centralizer_order
    }
}

/// Conjugacy classes of abelian p-subgroups generated by at most `n`
/// elements (including the trivial subgroup), discovered as closures of
/// tuples in `G_{n,p}`.
pub fn abelian_p_subgroup_classes(g: &FiniteGroup, p: u64, n: u32) -> Vec<SubgroupClassDatum> {
    assert!(n >= 1);
    // Subgroup rank is bounded by the Sylow exponent, so longer tuples
    // cannot reach new subgroups.
    let cap = n.min(p_part_exponent(g.order() as u64, p).max(1));
    let mut subgroups: BTreeSet<Vec<u16>> = BTreeSet::new();
    for tuple in commuting_p_tuples(g, p, cap) {
        subgroups.insert(g.generated_subgroup(&tuple));
    }
    // partition into conjugacy classes
    let mut classes: Vec<SubgroupClassDatum> = Vec::new();
    let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
    for sub in &subgroups {
        if seen.contains(sub) {
            continue;
        }
        for x in 0..g.order() as u16 {
            let mut img: Vec<u16> = sub.iter().map(|&a| g.conjugate(x, a)).collect();
            img.sort_unstable();
            seen.insert(img);
        }
        let member = {
            let mut m = vec![false; g.order()];
            for &a in sub {
                m[usize::from(a)] = true;
            }
            m
        };
        let normalizer_order = (0..g.order() as u16)
            .filter(|&x| sub.iter().all(|&a| member[usize::from(g.conjugate(x, a))]))
            .count() as u64;
        let centralizer_order = (0..g.order() as u16)
            .filter(|&x| sub.iter().all(|&a| g.conjugate(x, a) == a))
            .count() as u64;
        assert!((g.order() as u64).is_multiple_of(normalizer_order));
        assert!(normalizer_order.is_multiple_of(centralizer_order));
        classes.push(SubgroupClassDatum {
            representative: sub.clone(),
            ptype: abelian_type_from_order_statistics(g, sub, p),
            normalizer_order,
            centralizer_order,
        });
    }
    classes.sort_by(|a, b| {
        (a.ptype.exponent_sum(), &a.ptype, &a.representative).cmp(&(
            b.ptype.exponent_sum(),
            &b.ptype,
            &b.representative,
        ))
    });
    classes
}

/// Recovers the partition of an abelian p-group from its order statistics:
/// the count of elements of order dividing `p^j` is `p^{Σ min(λᵢ, j)}`, so
/// the successive quotients give the conjugate partition.
fn abelian_type_from_order_statistics(g: &FiniteGroup, elems: &[u16], p: u64) -> AbelianPType {
    let exponents: Vec<u32> = elems
        .iter()
        .map(|&a| p_part_exponent(u64::from(g.order_of(a)), p))
        .collect();
    debug_assert!(
        elems.iter().all(|&a| g.has_p_power_order(a, p)),
        "not a p-group"
    );
    let max_j = exponents.iter().copied().max().unwrap_or(0);
    // tau_j = #{parts >= j} = log_p(c_j / c_{j-1})
    let mut taus = Vec::new();
    let mut prev_count = 1u64; // c_0 = 1
    for j in 1..=max_j {
        let count = exponents.iter().filter(|&&e| e <= j).count() as u64;
        assert_eq!(count % prev_count, 0);
        taus.push(p_part_exponent(count / prev_count, p));
        prev_count = count;
    }
    let total_parts = taus.first().copied().unwrap_or(0);
    let lambdas: Vec<u32> = (1..=total_parts)
        .map(|i| taus.iter().filter(|&&t| t >= i).count() as u32)
        .collect();
    AbelianPType::new(p, lambdas)
}

/// Both sides of the height-n identity for a finite group: the generating
/// tuple sum `Σ χ_orb(N(H))·|Gen_n(H)|` over subgroup classes (with
/// `χ_orb(N(H)) = 1/|N(H)|`) and the tuple class sum `|G_{n,p}|/|G|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremBSides {
    pub hall_side: Rational,
    pub tuple_side: Rational,
}

pub fn theorem_b_sides(g: &FiniteGroup, p: u64, n: u32) -> TheoremBSides {
    let hall_side: Rational = abelian_p_subgroup_classes(g, p, n)
        .iter()
        .map(|class| {
            Rational::new(1, class.normalizer_order)
                * Rational::integer(hall_gen_count(&class.ptype, n))
        })
        .sum();
    TheoremBSides {
        hall_side,
        tuple_side: tuple_class_sum(g, p, n),
    }
}

/// Checks the height-n congruence on a finite group: the subgroup-class sum
/// equals the tuple class sum exactly, and the common value is p-integral.
pub fn theorem_b_finite_check(g: &FiniteGroup, p: u64, n: u32) -> bool {
    let sides = theorem_b_sides(g, p, n);
    sides.hall_side == sides.tuple_side && sides.hall_side.is_p_integral(p)
}

/// The Brown-Quillen sum
/// `Σ (-1)^{r(E)} p^{C(r(E),2)} / |N(E)|`
/// over conjugacy classes of elementary abelian p-subgroups (trivial
/// subgroup included). p-integrality is asserted.
pub fn brown_quillen_sum_finite(g: &FiniteGroup, p: u64) -> Rational {
    let cap = p_part_exponent(g.order() as u64, p).max(1);
    let sum: Rational = abelian_p_subgroup_classes(g, p, cap)
        .iter()
        .filter(|class| class.ptype.is_elementary())
        .map(|class| {
            let r = class.ptype.rank();
            let weight =
                BigInt::from(p).pow(r * r.saturating_sub(1) / 2) * if r % 2 == 0 { 1 } else { -1 };
            Rational::new(weight, class.normalizer_order)
        })
        .sum();
    assert!(
        sum.is_p_integral(p),
        "Brown-Quillen sum is not p-integral for {g:?} at p = {p}"
    );
    sum
}

/// With `p^N` the maximal p-subgroup order, the height-n sum agrees with the
/// Brown-Quillen sum modulo ℤ₍ₚ₎ for every `n ≥ N`; checked for
/// `n = N, N+1, N+2`.
pub fn height_stabilization_check(g: &FiniteGroup, p: u64) -> bool {
    let sylow = p_part_exponent(g.order() as u64, p);
    let bq = brown_quillen_sum_finite(g, p);
    let classes = abelian_p_subgroup_classes(g, p, sylow.max(1));
    (sylow.max(1)..=sylow + 2).all(|n| {
        let height: Rational = classes
            .iter()
            .map(|class| {
                Rational::new(1, class.normalizer_order)
                    * Rational::integer(hall_gen_count(&class.ptype, n))
            })
            .sum();
        (height - &bq).is_p_integral(p)
    })
}

/// Rank-1 form of the Brown-Quillen congruence:
/// `Σ_(P) 1/|N(P)| = (1/(p-1)) Σ_[g] 1/|C⟨g⟩|` where `P` runs over order-p
/// subgroup classes and `g` over order-p element classes. Applicable only
/// when every elementary abelian p-subgroup has rank ≤ 1.
pub fn brown_rank1_identity(g: &FiniteGroup, p: u64) -> CheckOutcome {
    let cap = p_part_exponent(g.order() as u64, p).max(1);
    let classes = abelian_p_subgroup_classes(g, p, cap);
    if classes
        .iter()
        .any(|c| c.ptype.is_elementary() && c.ptype.rank() >= 2)
    {
        return CheckOutcome::HypothesesNotMet {
            reason: format!(
                "{} has an elementary abelian {p}-subgroup of rank >= 2",
                g.name()
            ),
        };
    }
    let lhs: Rational = classes
        .iter()
        .filter(|c| c.ptype.lambdas() == [1])
        .map(|c| Rational::new(1, c.normalizer_order))
        .sum();
    // conjugacy classes of order-p elements
    let mut seen = vec![false; g.order()];
    let mut rhs = Rational::zero();
    for a in 0..g.order() as u16 {
        if seen[usize::from(a)] || u64::from(g.order_of(a)) != p {
            continue;
        }
        for x in 0..g.order() as u16 {
            seen[usize::from(g.conjugate(x, a))] = true;
        }
        rhs = rhs + Rational::new(1, tuple_centralizer_order(g, &[a]));
    }
    rhs = rhs * Rational::new(1, i64::try_from(p - 1).unwrap());
    if lhs == rhs {
        CheckOutcome::Holds { witness: lhs }
    } else {
        CheckOutcome::Fails { witness: lhs - rhs }
    }
}
