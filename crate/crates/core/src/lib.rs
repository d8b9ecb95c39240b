//! Exact-arithmetic engines for congruences of orbifold Euler characteristics.
//!
//! Everything in this crate is computed over arbitrary-precision rationals;
//! there is no floating point anywhere. The crate is organised as a stack:
//!
//! * [`arith`] — rationals, p-adic valuations, residues in ℚ/ℤ₍ₚ₎,
//!   p-binomial (Gaussian) and multinomial coefficients;
//! * [`mod@bernoulli`] — exact Bernoulli numbers, negative zeta values and the
//!   classical congruence checkers (von Staudt–Clausen, Kummer, Carlitz,
//!   Cohen);
//! * [`groups`] — a Cayley-table finite-group oracle: commuting p-power
//!   tuples, conjugacy classes of abelian p-subgroups, Hall's generating
//!   tuple counts, and finite-scale verification of the height-n and
//!   Brown–Quillen congruences;
//! * [`moduli`] — mapping-class-group Euler characteristics, Riemann–Hurwitz
//!   branch-data enumeration and the resulting Bernoulli congruences;
//! * [`chromatic`] — the height-n congruence engine over abstract subgroup
//!   profiles and its p-adic limit;
//! * [`report`] / [`suites`] — batch verification machinery shared with the
//!   command-line front end.

pub mod arith;
pub mod bernoulli;
pub mod chromatic;
pub mod groups;
pub mod moduli;
pub mod report;
pub mod suites;

pub use arith::{congruent_mod_pr, is_prime, multinomial, qbinom, Rational, Valuation};
pub use bernoulli::{bernoulli, zeta_neg};
pub use chromatic::{GroupProfile, SubgroupClassRecord};
pub use groups::{AbelianPType, FiniteGroup, GroupSpec, SubgroupClassDatum};
pub use moduli::{BranchDatum, Prop61Case, Prop61Term, Thm611Case};
pub use report::{CheckReport, CheckStatus, ReportFormat};

/// Three-way outcome of a congruence checker.
///
/// A failed divisibility hypothesis is not a failed congruence; sweeps need
/// to tell counterexamples apart from out-of-range inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    /// The congruence holds; `witness` is the exact quantity that was tested.
    Holds { witness: Rational },
    /// The congruence fails; `witness` is the exact offending value.
    Fails { witness: Rational },
    /// The hypotheses of the statement are not satisfied by the parameters.
    HypothesesNotMet { reason: String },
}

impl CheckOutcome {
    pub fn from_bool(ok: bool, witness: Rational) -> Self {
        if ok {
            CheckOutcome::Holds { witness }
        } else {
            CheckOutcome::Fails { witness }
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, CheckOutcome::Holds { .. })
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self, CheckOutcome::HypothesesNotMet { .. })
    }

    pub fn witness(&self) -> Option<&Rational> {
        match self {
            CheckOutcome::Holds { witness } | CheckOutcome::Fails { witness } => Some(witness),
            CheckOutcome::HypothesesNotMet { .. } => None,
        }
    }
}
