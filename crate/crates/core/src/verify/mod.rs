//! Congruence and identity checking to a finite truncation order.
//!
//! A passing report means the statement holds for every coefficient up to
//! the order used. It is evidence, not a proof.

mod registry;
mod report;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

pub use registry::{
    closed_form_offset, internal_residues, proof_step_table, run_suite, shifted_offset_mutants,
    Entry, ParamBounds, Registry, RunConfig, DEEP_ORDER, DEFAULT_ORDER, SUITES,
};
pub use report::{render_table, reports_to_json, Counterexample, Report, Status};

use crate::colored::ColoredPartitionSpec;
use crate::error::SeriesError;
use crate::recipe::Recipe;
use crate::series::{CoefficientRing, Integers, ModSeries, Series, TruncatedSeries, Zn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Series(#[from] SeriesError),

    #[error("offset ({numerator}) / {denominator} is not an integer")]
    NonIntegralOffset { numerator: String, denominator: u64 },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("bad parameter bounds: {0}")]
    BadParams(String),

    #[error("modulus {0} must be at least 2")]
    BadModulus(u64),
}

/// `c(An + B) = 0 (mod M)` for all `n >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceFamily {
    pub id: String,
    pub recipe: Recipe,
    pub stride: u64,
    pub offset: u64,
    pub modulus: u64,
    /// Parameter bindings this instance was built from, e.g. `("alpha", 1)`.
    pub params: Vec<(String, i64)>,
}

/// `c(A1 n + B1) = c(A2 n + B2) (mod M)` for all `n >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalCongruence {
    pub id: String,
    pub recipe: Recipe,
    pub modulus: u64,
    pub lhs: (u64, u64),
    pub rhs: (u64, u64),
}

/// Two series agreeing coefficientwise, exactly or mod `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesIdentity {
    pub id: String,
    pub lhs: Recipe,
    pub rhs: Recipe,
    pub modulus: Option<u64>,
    pub note: String,
}

impl SeriesIdentity {
    /// Parses both sides from recipe syntax. Panics on a malformed recipe,
    /// so only use it with literals.
    pub fn parse(id: &str, lhs: &str, rhs: &str, modulus: Option<u64>) -> SeriesIdentity {
        let parse = |s: &str| {
            s.parse::<Recipe>()
                .unwrap_or_else(|e| panic!("{id}: {}", e.caret(s)))
        };
        let note = match modulus {
            Some(m) => format!("{lhs} == {rhs} (mod {m})"),
            None => format!("{lhs} == {rhs}"),
        };
        SeriesIdentity {
            id: id.to_string(),
            lhs: parse(lhs),
            rhs: parse(rhs),
            modulus,
            note,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Vanishing(CongruenceFamily),
    Internal(InternalCongruence),
    Identity(SeriesIdentity),
    /// Passes when every part passes.
    Group {
        id: String,
        parts: Vec<Check>,
    },
}

impl Check {
    pub fn id(&self) -> &str {
        match self {
            Check::Vanishing(f) => &f.id,
            Check::Internal(i) => &i.id,
            Check::Identity(i) => &i.id,
            Check::Group { id, .. } => id,
        }
    }

    fn recipes(&self) -> Vec<(&Recipe, Option<u64>)> {
        match self {
            Check::Vanishing(f) => vec![(&f.recipe, Some(f.modulus))],
            Check::Internal(i) => vec![(&i.recipe, Some(i.modulus))],
            Check::Identity(i) => vec![(&i.lhs, i.modulus), (&i.rhs, i.modulus)],
            Check::Group { parts, .. } => parts.iter().flat_map(Check::recipes).collect(),
        }
    }
}

/// Which coefficient arithmetic congruence checks use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Arithmetic {
    /// Residues in `Z/M` throughout.
    #[default]
    Modular,
    /// Exact integers, reduced only for the final comparison.
    Exact,
}

type AkCache<S> = Mutex<HashMap<u32, Arc<S>>>;

/// Runs checks, caching the `a_k` series shared between them.
///
/// The cache only avoids recomputation; a cached prefix is identical to a
/// freshly computed one.
#[derive(Default)]
pub struct Checker {
    arithmetic: Arithmetic,
    exact: AkCache<Series>,
    modular: Mutex<HashMap<u64, Arc<AkCache<ModSeries>>>>,
}

fn lookup<R: CoefficientRing>(
    cache: &AkCache<TruncatedSeries<R>>,
    ring: &R,
    k: u32,
    order: usize,
) -> Result<TruncatedSeries<R>, SeriesError> {
    if let Some(hit) = cache.lock().unwrap().get(&k) {
        if hit.order() >= order {
            return hit.truncate(order);
        }
    }
    let spec = ColoredPartitionSpec::new(k).expect("a_k requires k >= 1");
    let fresh = spec.quotient().eval_in(ring.clone(), order)?;
    let mut guard = cache.lock().unwrap();
    let keep = guard.get(&k).is_none_or(|old| old.order() < order);
    if keep {
        guard.insert(k, Arc::new(fresh.clone()));
    }
    Ok(fresh)
}

impl Checker {
    pub fn new(arithmetic: Arithmetic) -> Checker {
        Checker {
            arithmetic,
            ..Checker::default()
        }
    }

    pub fn arithmetic(&self) -> Arithmetic {
        self.arithmetic
    }

    fn modular_cache(&self, m: u64) -> Arc<AkCache<ModSeries>> {
        self.modular.lock().unwrap().entry(m).or_default().clone()
    }

    pub fn eval_exact(&self, recipe: &Recipe, order: usize) -> Result<Series, SeriesError> {
        recipe.eval_with(&Integers, order, &|k, n| {
            lookup(&self.exact, &Integers, k, n)
        })
    }

    pub fn eval_mod(
        &self,
        recipe: &Recipe,
        modulus: u64,
        order: usize,
    ) -> Result<ModSeries, SeriesError> {
        let ring = Zn::checked(modulus).ok_or(SeriesError::BadModulus(modulus))?;
        let cache = self.modular_cache(modulus);
        recipe.eval_with(&ring, order, &|k, n| lookup(&cache, &ring, k, n))
    }

    /// Residues of `recipe` mod `modulus` up to `order`, along the
    /// configured arithmetic path.
    fn residues(
        &self,
        recipe: &Recipe,
        modulus: u64,
        order: usize,
    ) -> Result<Vec<u64>, SeriesError> {
        let series = match self.arithmetic {
            Arithmetic::Modular => self.eval_mod(recipe, modulus, order)?,
            Arithmetic::Exact => self.eval_exact(recipe, order)?.reduce_mod(modulus)?,
        };
        Ok(series.into_coeffs())
    }

    /// Computes every `a_k` prefix the given checks will need, in parallel.
    pub fn warm<'a>(&self, work: impl IntoIterator<Item = (&'a Check, usize)>) {
        let mut demand: HashMap<(Option<u64>, u32), usize> = HashMap::new();
        for (check, order) in work {
            for (recipe, modulus) in check.recipes() {
                let modulus = match self.arithmetic {
                    Arithmetic::Exact => None,
                    Arithmetic::Modular => modulus,
                };
                for (k, n) in recipe.ak_demands(order) {
                    let slot = demand.entry((modulus, k)).or_insert(0);
                    *slot = (*slot).max(n);
                }
            }
        }
        demand.into_par_iter().for_each(|((modulus, k), n)| {
            let _ = match modulus.and_then(Zn::checked) {
                Some(ring) => lookup(&self.modular_cache(ring.get()), &ring, k, n).map(|_| ()),
                None => lookup(&self.exact, &Integers, k, n).map(|_| ()),
            };
        });
    }

    pub fn check_vanishing(
        &self,
        family: &CongruenceFamily,
        order: usize,
    ) -> Result<Report, VerifyError> {
        let start = Instant::now();
        if family.stride == 0 {
            return Err(VerifyError::BadParams(format!(
                "{}: stride must be positive",
                family.id
            )));
        }
        if family.modulus < 2 {
            return Err(VerifyError::BadModulus(family.modulus));
        }
        if family.offset as usize > order {
            return Ok(Report::skipped(&family.id, order, start.elapsed()));
        }
        let residues = self.residues(&family.recipe, family.modulus, order)?;
        let mut checked = 0;
        let mut counterexample = None;
        for (n, index) in (family.offset as usize..=order)
            .step_by(family.stride as usize)
            .enumerate()
        {
            checked += 1;
            if residues[index] != 0 {
                counterexample = Some(Counterexample {
                    n: n as u64,
                    index: index as u64,
                    residue: BigInt::from(residues[index]),
                });
                break;
            }
        }
        Ok(Report::finish(
            &family.id,
            order,
            checked,
            counterexample,
            start.elapsed(),
        ))
    }

    pub fn check_internal(
        &self,
        congruence: &InternalCongruence,
        order: usize,
    ) -> Result<Report, VerifyError> {
        let start = Instant::now();
        let (a1, b1) = congruence.lhs;
        let (a2, b2) = congruence.rhs;
        if a1 == 0 || a2 == 0 {
            return Err(VerifyError::BadParams(format!(
                "{}: stride must be positive",
                congruence.id
            )));
        }
        if congruence.modulus < 2 {
            return Err(VerifyError::BadModulus(congruence.modulus));
        }
        let order_u = order as u64;
        if b1 > order_u || b2 > order_u {
            return Ok(Report::skipped(&congruence.id, order, start.elapsed()));
        }
        let residues = self.residues(&congruence.recipe, congruence.modulus, order)?;
        let mut checked = 0;
        let mut counterexample = None;
        for n in 0u64.. {
            let (i, j) = (a1 * n + b1, a2 * n + b2);
            if i > order_u || j > order_u {
                break;
            }
            checked += 1;
            let (l, r) = (residues[i as usize], residues[j as usize]);
            if l != r {
                let m = congruence.modulus;
                counterexample = Some(Counterexample {
                    n,
                    index: i,
                    residue: BigInt::from((l + m - r) % m),
                });
                break;
            }
        }
        Ok(Report::finish(
            &congruence.id,
            order,
            checked,
            counterexample,
            start.elapsed(),
        ))
    }

    pub fn check_identity(
        &self,
        identity: &SeriesIdentity,
        order: usize,
    ) -> Result<Report, VerifyError> {
        let start = Instant::now();
        let difference = match identity.modulus {
            Some(m) if m < 2 => return Err(VerifyError::BadModulus(m)),
            Some(m) => {
                let lhs = self.eval_mod(&identity.lhs, m, order)?;
                let rhs = self.eval_mod(&identity.rhs, m, order)?;
                lhs.first_difference(&rhs, order)?
                    .map(|i| (i, lhs.sub(&rhs).lift().coeffs()[i].clone()))
            }
            None => {
                let lhs = self.eval_exact(&identity.lhs, order)?;
                let rhs = self.eval_exact(&identity.rhs, order)?;
                lhs.first_difference(&rhs, order)?
                    .map(|i| (i, &lhs.coeffs()[i] - &rhs.coeffs()[i]))
            }
        };
        let counterexample = difference.map(|(i, residue)| Counterexample {
            n: i as u64,
            index: i as u64,
            residue,
        });
        Ok(Report::finish(
            &identity.id,
            order,
            order as u64 + 1,
            counterexample,
            start.elapsed(),
        ))
    }

    pub fn check(&self, check: &Check, order: usize) -> Result<Report, VerifyError> {
        match check {
            Check::Vanishing(f) => self.check_vanishing(f, order),
            Check::Internal(i) => self.check_internal(i, order),
            Check::Identity(i) => self.check_identity(i, order),
            Check::Group { id, parts } => {
                let start = Instant::now();
                let reports = parts
                    .iter()
                    .map(|p| self.check(p, order))
                    .collect::<Result<Vec<_>, _>>()?;
                if reports.iter().all(|r| r.status == Status::Skipped) {
                    return Ok(Report::skipped(id, order, start.elapsed()));
                }
                let checked = reports.iter().map(|r| r.range_checked).sum();
                let counterexample = reports.into_iter().find_map(|r| r.counterexample);
                Ok(Report::finish(
                    id,
                    order,
                    checked,
                    counterexample,
                    start.elapsed(),
                ))
            }
        }
    }
}

/// [`Checker::check_vanishing`] with modular arithmetic and a fresh cache.
pub fn check_vanishing(family: &CongruenceFamily, order: usize) -> Result<Report, VerifyError> {
    Checker::new(Arithmetic::Modular).check_vanishing(family, order)
}

pub fn check_internal(
    congruence: &InternalCongruence,
    order: usize,
) -> Result<Report, VerifyError> {
    Checker::new(Arithmetic::Modular).check_internal(congruence, order)
}

pub fn check_identity(identity: &SeriesIdentity, order: usize) -> Result<Report, VerifyError> {
    Checker::new(Arithmetic::Modular).check_identity(identity, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(k: u32, stride: u64, offset: u64, modulus: u64) -> CongruenceFamily {
        CongruenceFamily {
            id: format!("a{k}({stride}n+{offset}) mod {modulus}"),
            recipe: Recipe::ak(k),
            stride,
            offset,
            modulus,
            params: vec![],
        }
    }

    #[test]
    fn a5_mod_5_family_passes() {
        let r = check_vanishing(&family(5, 5, 3, 5), 2000).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.range_checked, 400);
    }

    #[test]
    fn mutant_fails_at_first_index() {
        let r = check_vanishing(&family(5, 5, 2, 5), 100).unwrap();
        assert_eq!(r.status, Status::Fail);
        // a_5(2) = 16
        assert_eq!(
            r.counterexample,
            Some(Counterexample {
                n: 0,
                index: 2,
                residue: BigInt::from(1)
            })
        );
    }

    #[test]
    fn order_below_offset_is_skipped() {
        let r = check_vanishing(&family(5, 27, 19, 3), 10).unwrap();
        assert_eq!(r.status, Status::Skipped);
        assert_eq!(r.range_checked, 0);
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn vanishing_rejects_bad_configuration() {
        assert!(matches!(
            check_vanishing(&family(5, 0, 3, 5), 10),
            Err(VerifyError::BadParams(_))
        ));
        assert_eq!(
            check_vanishing(&family(5, 5, 3, 1), 10),
            Err(VerifyError::BadModulus(1))
        );
    }

    #[test]
    fn internal_congruence_and_mutant() {
        let good = InternalCongruence {
            id: "a5 27n+10 vs 3n+1".into(),
            recipe: Recipe::ak(5),
            modulus: 3,
            lhs: (27, 10),
            rhs: (3, 1),
        };
        let r = check_internal(&good, 2000).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.range_checked, 74);
        let bad = InternalCongruence {
            rhs: (3, 2),
            ..good
        };
        assert_eq!(check_internal(&bad, 2000).unwrap().status, Status::Fail);
    }

    #[test]
    fn identity_reports_exact_difference() {
        let id = SeriesIdentity::parse("bogus", "f1", "f1 + q^3", None);
        let r = check_identity(&id, 10).unwrap();
        assert_eq!(
            r.counterexample,
            Some(Counterexample {
                n: 3,
                index: 3,
                residue: BigInt::from(-1)
            })
        );
        let m = SeriesIdentity::parse("bogus mod 5", "f1", "f1 + q^3", Some(5));
        let r = check_identity(&m, 10).unwrap();
        assert_eq!(r.counterexample.unwrap().residue, BigInt::from(4));
    }

    #[test]
    fn exact_and_modular_paths_agree() {
        let f = family(5, 5, 3, 5);
        let modular = Checker::new(Arithmetic::Modular)
            .check_vanishing(&f, 500)
            .unwrap();
        let exact = Checker::new(Arithmetic::Exact)
            .check_vanishing(&f, 500)
            .unwrap();
        assert_eq!(
            (modular.status, modular.range_checked),
            (exact.status, exact.range_checked)
        );
        let g = family(5, 5, 1, 5);
        let modular = Checker::new(Arithmetic::Modular)
            .check_vanishing(&g, 500)
            .unwrap();
        let exact = Checker::new(Arithmetic::Exact)
            .check_vanishing(&g, 500)
            .unwrap();
        assert_eq!(modular.counterexample, exact.counterexample);
    }

    #[test]
    fn cache_does_not_change_results() {
        let checker = Checker::new(Arithmetic::Modular);
        let r = Recipe::ak(8).extract(3, 2);
        let first = checker.eval_mod(&r, 3, 50).unwrap();
        let bigger = checker.eval_mod(&Recipe::ak(8), 3, 400).unwrap();
        let again = checker.eval_mod(&r, 3, 50).unwrap();
        assert_eq!(first, again);
        assert_eq!(
            bigger,
            crate::colored::ak_series(8, 400).reduce_mod(3).unwrap()
        );
    }
}
