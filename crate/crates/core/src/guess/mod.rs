//! Fitting and refuting linear recurrences with polynomial coefficients,
//! `Σ_{i=0}^{L} p_i(n)·a(n+i) = 0` with `deg p_i ≤ D`.
//!
//! A fit of order `L` and degree `D` solves for the `(L+1)(D+1)` unknown
//! coefficients from one equation per available index `n`. Only fits that
//! leave at least `guard` surplus equations are attempted, so a solution is
//! not an artefact of an underdetermined system.

pub mod linalg;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::par::{map_collect, Parallelism};
use linalg::{nullspace, rank_mod_p, to_mod, RANK_PRIMES};

pub const DEFAULT_GUARD: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuessError {
    #[error("order {order}, degree {degree} needs {needed} terms, only {available} available")]
    InsufficientTerms {
        order: usize,
        degree: usize,
        needed: usize,
        available: usize,
    },
    #[error("nullspace vector for order {order}, degree {degree} fails re-verification")]
    InternalVerifyFailure { order: usize, degree: usize },
    #[error("leading coefficient p_L vanishes at n = {0}")]
    LeadingPolyZero(i64),
    #[error("extension at n = {0} is not an integer")]
    NonIntegerExtension(i64),
    #[error("a sequence needs at least one term")]
    EmptySequence,
}

/// Terms `a(start), a(start+1), …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    start: i64,
    terms: Vec<BigInt>,
}

impl Sequence {
    pub fn new(start: i64, terms: Vec<BigInt>) -> Result<Self, GuessError> {
        if terms.is_empty() {
            return Err(GuessError::EmptySequence);
        }
        Ok(Sequence { start, terms })
    }

    pub fn from_unsigned(start: i64, terms: &[num_bigint::BigUint]) -> Result<Self, GuessError> {
        Sequence::new(
            start,
            terms.iter().map(|t| BigInt::from(t.clone())).collect(),
        )
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `a(n)`, if in range.
    pub fn at(&self, n: i64) -> Option<&BigInt> {
        usize::try_from(n - self.start)
            .ok()
            .and_then(|i| self.terms.get(i))
    }

    pub fn last_index(&self) -> i64 {
        self.start + self.terms.len() as i64 - 1
    }

    /// The same terms multiplied by `c`.
    pub fn scaled(&self, c: &BigInt) -> Sequence {
        Sequence {
            start: self.start,
            terms: self.terms.iter().map(|t| t * c).collect(),
        }
    }

    /// Drops the first `k` terms.
    pub fn skip(&self, k: usize) -> Result<Sequence, GuessError> {
        Sequence::new(
            self.start + k as i64,
            self.terms[k.min(self.len())..].to_vec(),
        )
    }

    /// Keeps the first `k` terms.
    pub fn take(&self, k: usize) -> Result<Sequence, GuessError> {
        Sequence::new(self.start, self.terms[..k.min(self.len())].to_vec())
    }
}

fn eval(poly: &[BigInt], n: i64) -> BigInt {
    let n = BigInt::from(n);
    poly.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * &n + c)
}

/// A recurrence `Σ p_i(n) a(n+i) = 0`, primitive, with the leading coefficient
/// of `p_order` positive. `polys[i][d]` is the coefficient of `n^d` in `p_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    order: usize,
    degree: usize,
    polys: Vec<Vec<BigInt>>,
    valid_from: i64,
}

impl Recurrence {
    /// Normalizes a raw coefficient vector laid out as `(i, d) ↦ i·(D+1) + d`.
    /// Trailing zero polynomials and high zero coefficients are trimmed.
    /// Returns `None` for the zero vector.
    pub fn from_coefficients(coeffs: &[BigInt], degree: usize, valid_from: i64) -> Option<Self> {
        let width = degree + 1;
        let mut polys: Vec<Vec<BigInt>> = coeffs.chunks(width).map(|c| c.to_vec()).collect();
        while polys.last().is_some_and(|p| p.iter().all(Zero::is_zero)) {
            polys.pop();
        }
        if polys.is_empty() {
            return None;
        }
        let eff_degree = polys
            .iter()
            .filter_map(|p| p.iter().rposition(|c| !c.is_zero()))
            .max()
            .unwrap_or(0);
        for p in polys.iter_mut() {
            p.truncate(eff_degree + 1);
        }
        let g = polys.iter().flatten().fold(BigInt::zero(), |g, c| g.gcd(c));
        let lead = polys
            .last()
            .and_then(|p| p.iter().rev().find(|c| !c.is_zero()))
            .expect("last polynomial is nonzero");
        let scale = if lead.is_negative() { -g } else { g };
        for c in polys.iter_mut().flatten() {
            *c /= &scale;
        }
        Some(Recurrence {
            order: polys.len() - 1,
            degree: eff_degree,
            polys,
            valid_from,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn polys(&self) -> &[Vec<BigInt>] {
        &self.polys
    }

    pub fn valid_from(&self) -> i64 {
        self.valid_from
    }

    pub fn budget(&self) -> usize {
        (self.order + 1) * (self.degree + 1)
    }

    /// `Σ p_i(n) a(n+i)`, or `None` when some `a(n+i)` is out of range.
    pub fn residual(&self, seq: &Sequence, n: i64) -> Option<BigInt> {
        let mut total = BigInt::zero();
        for (i, p) in self.polys.iter().enumerate() {
            total += eval(p, n) * seq.at(n + i as i64)?;
        }
        Some(total)
    }

    /// True when every equation from `valid_from` on with all terms in range vanishes.
    pub fn annihilates(&self, seq: &Sequence) -> bool {
        let from = self.valid_from.max(seq.start());
        (from..=seq.last_index() - self.order as i64)
            .all(|n| self.residual(seq, n).is_some_and(|r| r.is_zero()))
    }

    /// `p_i(n) = c_D*n^D + … + c_1*n + c_0`, one line per `i`.
    pub fn poly_lines(&self) -> Vec<String> {
        self.polys
            .iter()
            .enumerate()
            .map(|(i, p)| format!("p_{i}(n) = {}", format_poly(p)))
            .collect()
    }
}

fn format_poly(p: &[BigInt]) -> String {
    let mut out = String::new();
    for (d, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let coeff = if mag.is_one() {
            String::new()
        } else {
            format!("{mag}*")
        };
        let term = match d {
            0 => mag.to_string(),
            1 => format!("{coeff}n"),
            _ => format!("{coeff}n^{d}"),
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
            out.push_str(&term);
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly_lines().join("\n"))
    }
}

/// A found recurrence and the dimension of the solution space it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fit {
    pub recurrence: Recurrence,
    pub nullity: usize,
}

fn equations_available(seq: &Sequence, order: usize) -> usize {
    seq.len().saturating_sub(order)
}

/// Whether `(order, degree)` leaves `guard` surplus equations.
pub fn pair_testable(seq: &Sequence, order: usize, degree: usize, guard: usize) -> bool {
    equations_available(seq, order) >= (order + 1) * (degree + 1) + guard
}

fn check_pair(seq: &Sequence, order: usize, degree: usize, guard: usize) -> Result<(), GuessError> {
    if !pair_testable(seq, order, degree, guard) {
        return Err(GuessError::InsufficientTerms {
            order,
            degree,
            needed: (order + 1) * (degree + 1) + guard + order,
            available: seq.len(),
        });
    }
    Ok(())
}

/// Row for index `n`: entry `(i, d)` is `n^d · a(n+i)`.
fn equation_rows(
    seq: &Sequence,
    order: usize,
    degree: usize,
) -> impl Iterator<Item = (i64, Vec<BigInt>)> + '_ {
    (0..equations_available(seq, order)).map(move |r| {
        let n = seq.start() + r as i64;
        let nb = BigInt::from(n);
        let mut row = Vec::with_capacity((order + 1) * (degree + 1));
        for i in 0..=order {
            let mut term = seq.terms()[r + i].clone();
            for _ in 0..=degree {
                row.push(term.clone());
                term *= &nb;
            }
        }
        (n, row)
    })
}

/// Proves the `(order, degree)` system has only the zero solution by finding
/// full column rank modulo one of [`RANK_PRIMES`]. `false` means unproven, not
/// that a solution exists.
pub fn certify_no_solution(seq: &Sequence, order: usize, degree: usize) -> bool {
    let ncols = (order + 1) * (degree + 1);
    if equations_available(seq, order) < ncols {
        return false;
    }
    RANK_PRIMES.iter().any(|&p| {
        let rows: Vec<Vec<u64>> = (0..equations_available(seq, order))
            .map(|r| {
                let n = to_mod(&BigInt::from(seq.start() + r as i64), p);
                let mut row = Vec::with_capacity(ncols);
                for i in 0..=order {
                    let mut term = to_mod(&seq.terms()[r + i], p);
                    for _ in 0..=degree {
                        row.push(term);
                        term = ((term as u128 * n as u128) % p as u128) as u64;
                    }
                }
                row
            })
            .collect();
        rank_mod_p(rows, ncols, p) == ncols
    })
}

/// Exact fit of one `(order, degree)` pair. Among the nullspace basis vectors
/// the one with the smallest (order, degree), then the lexicographically
/// smallest normalized coefficients, is returned.
pub fn fit_recurrence(
    seq: &Sequence,
    order: usize,
    degree: usize,
    guard: usize,
) -> Result<Option<Fit>, GuessError> {
    assert!(order >= 1, "order must be at least 1");
    check_pair(seq, order, degree, guard)?;
    let ncols = (order + 1) * (degree + 1);
    let rows: Vec<Vec<BigInt>> = equation_rows(seq, order, degree).map(|(_, r)| r).collect();
    let basis = nullspace(rows, ncols);
    let nullity = basis.len();
    let best = basis
        .iter()
        .filter_map(|v| Recurrence::from_coefficients(v, degree, seq.start()))
        .min_by(|a, b| {
            (a.order, a.degree)
                .cmp(&(b.order, b.degree))
                .then_with(|| a.polys.cmp(&b.polys))
        });
    let Some(recurrence) = best else {
        return Ok(None);
    };
    if !recurrence.annihilates(seq) {
        return Err(GuessError::InternalVerifyFailure { order, degree });
    }
    Ok(Some(Fit {
        recurrence,
        nullity,
    }))
}

/// How pairs without a solution are ruled out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Refutation {
    /// Full rank modulo a prime first; exact elimination only when that fails.
    #[default]
    ModularCertificate,
    /// Exact elimination for every pair.
    ExactOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GuessOutcome {
    Found {
        fit: Fit,
        budget: usize,
    },
    NoneFound {
        /// Largest `B` such that every pair with budget `≤ B` was tested.
        max_budget_tested: usize,
        terms_used: usize,
        guard: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessReport {
    pub outcome: GuessOutcome,
    pub max_budget_requested: usize,
    /// Pairs with `budget ≤ max_budget_requested` that were tested (and refuted,
    /// unless the outcome is `Found`).
    pub pairs_tested: usize,
    /// Pairs skipped because they would leave fewer than `guard` surplus equations.
    pub untested: Vec<(usize, usize)>,
}

impl GuessReport {
    pub fn is_found(&self) -> bool {
        matches!(self.outcome, GuessOutcome::Found { .. })
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        match &self.outcome {
            GuessOutcome::Found { fit, budget } => {
                let r = &fit.recurrence;
                out.push("Found".to_string());
                out.push(format!("order {}", r.order()));
                out.push(format!("degree {}", r.degree()));
                out.push(format!("budget {budget}"));
                out.push(format!("nullity {}", fit.nullity));
                out.push(format!("valid_from {}", r.valid_from()));
                out.extend(r.poly_lines());
            }
            GuessOutcome::NoneFound {
                max_budget_tested,
                terms_used,
                guard,
            } => {
                out.push("NoneFound".to_string());
                out.push(format!("max_budget_tested {max_budget_tested}"));
                out.push(format!(
                    "max_budget_requested {}",
                    self.max_budget_requested
                ));
                out.push(format!("terms_used {terms_used}"));
                out.push(format!("guard {guard}"));
                out.push(format!("pairs_tested {}", self.pairs_tested));
                let untested: Vec<String> = self
                    .untested
                    .iter()
                    .map(|(l, d)| format!("({l},{d})"))
                    .collect();
                out.push(format!("untested {}", untested.join(" ")));
            }
        }
        out
    }
}

/// All `(order, degree)` with `(order+1)(degree+1) = budget`, order ascending.
pub fn pairs_with_budget(budget: usize) -> Vec<(usize, usize)> {
    (2..=budget)
        .filter(|f| budget.is_multiple_of(*f))
        .map(|f| (f - 1, budget / f - 1))
        .collect()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    pub refutation: Refutation,
    pub par: Parallelism,
}

/// Tries budgets `2..=max_budget` in order and, within a budget, orders
/// ascending; returns the first recurrence found. Pairs within one budget may
/// be tried in parallel, and the first success in that order wins, so the
/// result never depends on the execution mode.
pub fn search_recurrence(
    seq: &Sequence,
    max_budget: usize,
    guard: usize,
    options: SearchOptions,
) -> Result<GuessReport, GuessError> {
    let mut untested = Vec::new();
    let mut pairs_tested = 0;
    let mut complete_through = 1;
    let mut complete = true;
    for budget in 2..=max_budget {
        let pairs = pairs_with_budget(budget);
        let (testable, skipped): (Vec<_>, Vec<_>) = pairs
            .into_iter()
            .partition(|&(l, d)| pair_testable(seq, l, d, guard));
        if !skipped.is_empty() {
            complete = false;
        }
        untested.extend(skipped);
        let results = map_collect(
            options.par,
            &testable,
            |&(l, d)| -> Result<Option<Fit>, GuessError> {
                if options.refutation == Refutation::ModularCertificate
                    && certify_no_solution(seq, l, d)
                {
                    return Ok(None);
                }
                fit_recurrence(seq, l, d, guard)
            },
        );
        for result in results {
            pairs_tested += 1;
            if let Some(fit) = result? {
                return Ok(GuessReport {
                    outcome: GuessOutcome::Found { fit, budget },
                    max_budget_requested: max_budget,
                    pairs_tested,
                    untested,
                });
            }
        }
        if complete {
            complete_through = budget;
        }
    }
    Ok(GuessReport {
        outcome: GuessOutcome::NoneFound {
            max_budget_tested: complete_through,
            terms_used: seq.len(),
            guard,
        },
        max_budget_requested: max_budget,
        pairs_tested,
        untested,
    })
}

/// Extends `seq` by `extend_by` terms, solving each equation for its last term.
pub fn apply_recurrence(
    rec: &Recurrence,
    seq: &Sequence,
    extend_by: usize,
) -> Result<Sequence, GuessError> {
    let order = rec.order();
    if seq.len() < order {
        return Err(GuessError::InsufficientTerms {
            order,
            degree: rec.degree(),
            needed: order,
            available: seq.len(),
        });
    }
    let mut terms = seq.terms().to_vec();
    for _ in 0..extend_by {
        let n = seq.start() + terms.len() as i64 - order as i64;
        let lead = eval(&rec.polys()[order], n);
        if lead.is_zero() {
            return Err(GuessError::LeadingPolyZero(n));
        }
        let base = terms.len() - order;
        let partial: BigInt = rec.polys()[..order]
            .iter()
            .enumerate()
            .map(|(i, p)| eval(p, n) * &terms[base + i])
            .sum();
        let (q, r) = (-partial).div_rem(&lead);
        if !r.is_zero() {
            return Err(GuessError::NonIntegerExtension(n));
        }
        terms.push(q);
    }
    Sequence::new(seq.start(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{factorial, k_catalan};

    fn seq(start: i64, terms: Vec<BigInt>) -> Sequence {
        Sequence::new(start, terms).unwrap()
    }

    fn catalan(count: u32) -> Sequence {
        seq(
            1,
            (1..=count).map(|n| BigInt::from(k_catalan(2, n))).collect(),
        )
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn catalan_first_order() {
        let s = catalan(12);
        let fit = fit_recurrence(&s, 1, 1, 0).unwrap().unwrap();
        let r = &fit.recurrence;
        // (n+2) a(n+1) - (4n+2) a(n) = 0
        assert_eq!(r.polys(), &[ints(&[-2, -4]), ints(&[2, 1])]);
        assert_eq!(fit.nullity, 1);
        assert_eq!(r.poly_lines(), vec!["p_0(n) = -4*n - 2", "p_1(n) = n + 2"]);
    }

    #[test]
    fn constant_sequence() {
        let s = seq(1, ints(&[1; 8]));
        let r = fit_recurrence(&s, 1, 0, 0).unwrap().unwrap().recurrence;
        assert_eq!(r.polys(), &[ints(&[-1]), ints(&[1])]);
    }

    #[test]
    fn factorial_recurrence() {
        let s = seq(1, (1..=10).map(|n| BigInt::from(factorial(n))).collect());
        let r = fit_recurrence(&s, 1, 1, 2).unwrap().unwrap().recurrence;
        // a(n+1) - (n+1) a(n) = 0
        assert_eq!(r.polys(), &[ints(&[-1, -1]), ints(&[1, 0])]);
        assert_eq!(r.degree(), 1);
    }

    #[test]
    fn insufficient_terms() {
        let s = catalan(5);
        assert!(matches!(
            fit_recurrence(&s, 1, 1, 10),
            Err(GuessError::InsufficientTerms { .. })
        ));
    }

    #[test]
    fn no_fit_for_fibonacci_degree_zero_order_one() {
        let mut f = vec![1i64, 1];
        for i in 2..20 {
            f.push(f[i - 1] + f[i - 2]);
        }
        let s = seq(1, ints(&f));
        assert_eq!(fit_recurrence(&s, 1, 2, 2).unwrap(), None);
        assert!(certify_no_solution(&s, 1, 2));
        let r = fit_recurrence(&s, 2, 0, 2).unwrap().unwrap().recurrence;
        assert_eq!(r.polys(), &[ints(&[-1]), ints(&[-1]), ints(&[1])]);
    }

    #[test]
    fn budget_pairs() {
        assert_eq!(pairs_with_budget(6), vec![(1, 2), (2, 1), (5, 0)]);
        assert_eq!(pairs_with_budget(2), vec![(1, 0)]);
        assert_eq!(pairs_with_budget(7), vec![(6, 0)]);
    }

    #[test]
    fn search_finds_catalan_at_budget_four() {
        let s = catalan(20);
        let report = search_recurrence(&s, 12, DEFAULT_GUARD, SearchOptions::default()).unwrap();
        match report.outcome {
            GuessOutcome::Found { fit, budget } => {
                assert_eq!(budget, 4);
                assert_eq!(fit.recurrence.order(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exact_and_modular_searches_agree() {
        let s = catalan(24);
        for refutation in [Refutation::ExactOnly, Refutation::ModularCertificate] {
            let report = search_recurrence(
                &s,
                10,
                2,
                SearchOptions {
                    refutation,
                    par: Parallelism::Sequential,
                },
            )
            .unwrap();
            assert!(report.is_found());
            assert_eq!(report.pairs_tested, 3);
        }
    }

    #[test]
    fn apply_extends_catalan() {
        let s = catalan(12);
        let r = fit_recurrence(&s, 1, 1, 0).unwrap().unwrap().recurrence;
        let ext = apply_recurrence(&r, &s.take(5).unwrap(), 5).unwrap();
        assert_eq!(ext.terms(), &s.terms()[..10]);
    }

    #[test]
    fn apply_constant() {
        let r = Recurrence::from_coefficients(&ints(&[-1, 1]), 0, 1).unwrap();
        let ext = apply_recurrence(&r, &seq(1, ints(&[7])), 3).unwrap();
        assert_eq!(ext.terms(), &ints(&[7, 7, 7, 7])[..]);
    }

    #[test]
    fn apply_errors() {
        // n a(n+1) - a(n) = 0 vanishes at n = 0
        let r = Recurrence::from_coefficients(&ints(&[-1, 0, 0, 1]), 1, 0).unwrap();
        assert_eq!(
            apply_recurrence(&r, &seq(0, ints(&[1])), 1),
            Err(GuessError::LeadingPolyZero(0))
        );
        // 2 a(n+1) - a(n) = 0 from an odd start
        let half = Recurrence::from_coefficients(&ints(&[-1, 2]), 0, 1).unwrap();
        assert_eq!(
            apply_recurrence(&half, &seq(1, ints(&[3])), 1),
            Err(GuessError::NonIntegerExtension(1))
        );
    }
}
