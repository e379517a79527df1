//! Machine checks of the solution axioms and the reconstruction solvers
//! derived from the uniqueness arguments.
//!
//! Every check returns an [`AxiomReport`] whose violations carry exact
//! rationals on both sides, so counterexamples are auditable. The
//! reconstruction solvers intentionally never call the MPW value or the
//! average game on their input: agreement with MPW is a genuine cross-check.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::combo::{Coalition, Partition, PlayerId};
use crate::error::{Error, Result};
use crate::game::{PayoffVector, TuxGame};
use crate::reduction::{hm_reduce_tux, set_hm_reduce_tux, sobolev_reduce_tux};
use crate::restriction::restrict_one;
use crate::solution::SolutionConcept;
use crate::Rational;

/// One failed instance of an axiom: the game it failed on, where, and the
/// two sides that should have been equal.
#[derive(Clone, Debug)]
pub struct Violation {
    pub game: TuxGame,
    pub site: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Outcome of checking one axiom for one solution on one game.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub axiom: String,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    fn new(axiom: &str) -> Self {
        AxiomReport {
            axiom: axiom.to_string(),
            violations: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, game: &TuxGame, site: String, lhs: Rational, rhs: Rational) {
        if lhs != rhs {
            self.violations.push(Violation {
                game: game.clone(),
                site,
                lhs,
                rhs,
            });
        }
    }
}

/// EF^X: Σᵢ φᵢ(w) = w(N, ∅).
pub fn check_efficiency(phi: &dyn SolutionConcept, w: &TuxGame) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("ef");
    let total = phi.evaluate(w)?.total();
    report.record(w, "sum over all players".into(), total, w.grand_worth().clone());
    Ok(report)
}

/// BC^X: φᵢ(w) − φᵢ(w₋ⱼ) = φⱼ(w) − φⱼ(w₋ᵢ) for all i ≠ j.
pub fn check_balanced_contributions(
    phi: &dyn SolutionConcept,
    w: &TuxGame,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("bc");
    let players = w.players().members();
    if players.len() < 2 {
        return Ok(report); // no pairs to compare
    }
    let full = phi.evaluate(w)?;
    let mut sub: HashMap<PlayerId, PayoffVector> = HashMap::new();
    for &j in &players {
        sub.insert(j, phi.evaluate(&restrict_one(w, j)?)?);
    }
    for &i in &players {
        for &j in &players {
            if i >= j {
                continue;
            }
            let lhs = full.get(i) - sub[&j].get(i);
            let rhs = full.get(j) - sub[&i].get(j);
            report.record(w, format!("pair ({i},{j})"), lhs, rhs);
        }
    }
    Ok(report)
}

/// SC^X: φᵢ(w) = φᵢ(w₋ⱼ^{So,φ}) for all i ≠ j.
pub fn check_sobolev_consistency(
    phi: &dyn SolutionConcept,
    w: &TuxGame,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("sc");
    let full = phi.evaluate(w)?;
    for j in w.players().iter() {
        let reduced = sobolev_reduce_tux(w, j, phi)?;
        let reduced_payoffs = phi.evaluate(&reduced)?;
        for i in reduced.players().iter() {
            report.record(
                w,
                format!("i={i}, removed j={j}"),
                full.get(i).clone(),
                reduced_payoffs.get(i).clone(),
            );
        }
    }
    Ok(report)
}

/// HMC^X (set_variant = false): φᵢ(w) = φᵢ(w₋ⱼ^{HM,φ}) for all i ≠ j.
/// SHMC^X (set_variant = true): φᵢ(w) = φᵢ(w₋T^{HM,φ}) for all i and all
/// nonempty T ⊆ N∖{i}.
pub fn check_hm_consistency(
    phi: &dyn SolutionConcept,
    w: &TuxGame,
    set_variant: bool,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new(if set_variant { "shmc" } else { "hmc" });
    let full = phi.evaluate(w)?;
    if set_variant {
        for t in w.players().subsets_canonical() {
            if t.is_empty() || t == w.players() {
                continue;
            }
            let reduced = set_hm_reduce_tux(w, t, phi)?;
            let reduced_payoffs = phi.evaluate(&reduced)?;
            for i in reduced.players().iter() {
                report.record(
                    w,
                    format!("i={i}, removed T={t}"),
                    full.get(i).clone(),
                    reduced_payoffs.get(i).clone(),
                );
            }
        }
    } else {
        for j in w.players().iter() {
            let reduced = hm_reduce_tux(w, j, phi)?;
            let reduced_payoffs = phi.evaluate(&reduced)?;
            for i in reduced.players().iter() {
                report.record(
                    w,
                    format!("i={i}, removed j={j}"),
                    full.get(i).clone(),
                    reduced_payoffs.get(i).clone(),
                );
            }
        }
    }
    Ok(report)
}

/// The 2S^X payoff of a two-player game: stand-alone worth plus half the
/// surplus.
pub fn two_standard_payoff(w: &TuxGame) -> Result<PayoffVector> {
    let players = w.players();
    if players.len() != 2 {
        return Err(Error::WrongPlayerCount {
            need: 2,
            got: players.len(),
        });
    }
    let standalone = |i: PlayerId| {
        let other = players.remove(i);
        w.worth_of(Coalition::singleton(i), &Partition::one_block(other))
            .clone()
    };
    let members = players.members();
    let surplus = w.grand_worth() - standalone(members[0]) - standalone(members[1]);
    let half = surplus / Rational::from_integer(2.into());
    Ok(PayoffVector::from_fn(players, |i| standalone(i) + &half))
}

/// 2S^X: on a two-player game, φ gives each player their stand-alone worth
/// plus half the surplus.
pub fn check_two_standardness(phi: &dyn SolutionConcept, w: &TuxGame) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("2s");
    let expected = two_standard_payoff(w)?;
    let actual = phi.evaluate(w)?;
    for i in w.players().iter() {
        report.record(
            w,
            format!("player {i}"),
            actual.get(i).clone(),
            expected.get(i).clone(),
        );
    }
    Ok(report)
}

/// Payoffs forced by efficiency and balanced contributions, computed by the
/// recursion n·φᵢ(w) = Σ_{j≠i} (φᵢ(w₋ⱼ) − φⱼ(w₋ᵢ)) + w(N,∅).
pub fn reconstruct_bc_ef(w: &TuxGame) -> Result<PayoffVector> {
    if w.num_players() == 0 {
        return Err(Error::TooFewPlayers { need: 1, got: 0 });
    }
    let mut memo = HashMap::new();
    bc_ef_recurse(w, &mut memo)
}

fn bc_ef_recurse(
    w: &TuxGame,
    memo: &mut HashMap<TuxGame, PayoffVector>,
) -> Result<PayoffVector> {
    if let Some(hit) = memo.get(w) {
        return Ok(hit.clone());
    }
    let players = w.players();
    let n = players.len();
    let result = if n == 1 {
        PayoffVector::from_fn(players, |_| w.grand_worth().clone())
    } else {
        let mut sub: HashMap<PlayerId, PayoffVector> = HashMap::new();
        for j in players.iter() {
            sub.insert(j, bc_ef_recurse(&restrict_one(w, j)?, memo)?);
        }
        let denom = Rational::from_integer(n.into());
        PayoffVector::from_fn(players, |i| {
            let mut total = w.grand_worth().clone();
            for j in players.iter() {
                if j == i {
                    continue;
                }
                total += sub[&j].get(i) - sub[&i].get(j);
            }
            total / &denom
        })
    };
    memo.insert(w.clone(), result.clone());
    Ok(result)
}

/// Payoffs forced by efficiency, 2-standardness, and Sobolev consistency.
///
/// For n ≥ 3 the reduced game without a pivot is affine in the pivot's
/// unknown payoff, and the recursively computed payoffs of the reduced game
/// are affine in that unknown too. A single pivot is not enough to pin the
/// unknown (the reduced game's grand worth already absorbs it), so two
/// pivots are crossed: the pivot payoffs solve a 2×2 affine system, and the
/// remaining players follow from the first pivot's affine map.
pub fn reconstruct_sobolev(w: &TuxGame) -> Result<PayoffVector> {
    if w.num_players() == 0 {
        return Err(Error::TooFewPlayers { need: 1, got: 0 });
    }
    let mut memo = HashMap::new();
    sobolev_recurse(w, &mut memo)
}

/// Reduced game with the pivot's payoff fixed at an arbitrary scalar x.
fn sobolev_reduced_at(
    w: &TuxGame,
    subgame: &TuxGame,
    pivot: PlayerId,
    x: &Rational,
) -> Result<TuxGame> {
    let n = w.num_players();
    TuxGame::from_fn(w.players().remove(pivot), |key| {
        let fraction = Rational::from_integer(key.coalition.len().into())
            / Rational::from_integer((n - 1).into());
        let with_pivot = w.worth_of(key.coalition.insert(pivot), &key.outside) - x;
        let without = subgame.worth(key).clone();
        &fraction * with_pivot + (Rational::one() - fraction) * without
    })
}

/// Affine maps x ↦ payoff of every remaining player, identified by
/// evaluating the recursion at x = 0 and x = 1.
struct AffinePayoffs {
    at_zero: PayoffVector,
    slope: HashMap<PlayerId, Rational>,
}

impl AffinePayoffs {
    fn eval(&self, i: PlayerId, x: &Rational) -> Rational {
        self.at_zero.get(i) + &self.slope[&i] * x
    }
}

fn sobolev_affine(
    w: &TuxGame,
    pivot: PlayerId,
    memo: &mut HashMap<TuxGame, PayoffVector>,
) -> Result<AffinePayoffs> {
    let subgame = restrict_one(w, pivot)?;
    let zero = Rational::zero();
    let one = Rational::one();
    let at_zero = sobolev_recurse(&sobolev_reduced_at(w, &subgame, pivot, &zero)?, memo)?;
    let at_one = sobolev_recurse(&sobolev_reduced_at(w, &subgame, pivot, &one)?, memo)?;
    let slope = at_zero
        .players()
        .iter()
        .map(|i| (i, at_one.get(i) - at_zero.get(i)))
        .collect();
    Ok(AffinePayoffs { at_zero, slope })
}

fn sobolev_recurse(
    w: &TuxGame,
    memo: &mut HashMap<TuxGame, PayoffVector>,
) -> Result<PayoffVector> {
    if let Some(hit) = memo.get(w) {
        return Ok(hit.clone());
    }
    let players = w.players();
    let n = players.len();
    let result = if n == 1 {
        PayoffVector::from_fn(players, |_| w.grand_worth().clone())
    } else if n == 2 {
        two_standard_payoff(w)?
    } else {
        let members = players.members();
        let (j, k) = (members[0], members[1]);
        let via_j = sobolev_affine(w, j, memo)?;
        let via_k = sobolev_affine(w, k, memo)?;
        // x_k = a + b·x_j (from pivot j), x_j = c + d·x_k (from pivot k)
        let a = via_j.at_zero.get(k).clone();
        let b = via_j.slope[&k].clone();
        let c = via_k.at_zero.get(j).clone();
        let d = via_k.slope[&j].clone();
        let det = Rational::one() - &d * &b;
        if det.is_zero() {
            return Err(Error::DegenerateSolve);
        }
        let x_j = (c + &d * a) / det;
        PayoffVector::from_fn(players, |i| {
            if i == j {
                x_j.clone()
            } else {
                via_j.eval(i, &x_j)
            }
        })
    };
    memo.insert(w.clone(), result.clone());
    Ok(result)
}

/// Payoffs forced by 2-standardness and (set) HM consistency.
///
/// For each non-pivot player k, reducing to the two-player game on
/// {pivot, k} determines the payoff difference via 2S^X without touching
/// the reduced game's unknown grand worth; efficiency then closes the
/// system.
pub fn reconstruct_hm_2s(w: &TuxGame) -> Result<PayoffVector> {
    if w.num_players() == 0 {
        return Err(Error::TooFewPlayers { need: 1, got: 0 });
    }
    let mut memo = HashMap::new();
    hm_recurse(w, &mut memo)
}

fn hm_recurse(
    w: &TuxGame,
    memo: &mut HashMap<TuxGame, PayoffVector>,
) -> Result<PayoffVector> {
    if let Some(hit) = memo.get(w) {
        return Ok(hit.clone());
    }
    let players = w.players();
    let n = players.len();
    let result = if n == 1 {
        PayoffVector::from_fn(players, |_| w.grand_worth().clone())
    } else if n == 2 {
        two_standard_payoff(w)?
    } else {
        let members = players.members();
        let pivot = members[0];
        // difference φ_pivot − φ_k from the two-player set-HM reduction
        let mut diffs: HashMap<PlayerId, Rational> = HashMap::new();
        for &k in &members[1..] {
            // stand-alone worths of the reduced game on {pivot, k}:
            //   u({pivot},{{k}}) = w(N∖{k}, {{k}}) − Σ_{j∉{pivot,k}} φⱼ(w₋ₖ)
            //   u({k},{{pivot}}) = w(N∖{pivot}, {{pivot}}) − Σ_{j∉{pivot,k}} φⱼ(w₋pivot)
            let sub_k = hm_recurse(&restrict_one(w, k)?, memo)?;
            let sub_p = hm_recurse(&restrict_one(w, pivot)?, memo)?;
            let others = players.remove(pivot).remove(k);
            let comp_k = others
                .iter()
                .fold(Rational::zero(), |acc, j| acc + sub_k.get(j));
            let comp_p = others
                .iter()
                .fold(Rational::zero(), |acc, j| acc + sub_p.get(j));
            let u_pivot = w.worth_of(
                players.remove(k),
                &Partition::one_block(Coalition::singleton(k)),
            ) - comp_k;
            let u_k = w.worth_of(
                players.remove(pivot),
                &Partition::one_block(Coalition::singleton(pivot)),
            ) - comp_p;
            // 2S^X on the reduced game: payoff difference equals the
            // difference of stand-alone worths.
            diffs.insert(k, u_pivot - u_k);
        }
        let diff_total = diffs
            .values()
            .fold(Rational::zero(), |acc, d| acc + d);
        let pivot_payoff =
            (w.grand_worth() + diff_total) / Rational::from_integer(n.into());
        PayoffVector::from_fn(players, |i| {
            if i == pivot {
                pivot_payoff.clone()
            } else {
                &pivot_payoff - &diffs[&i]
            }
        })
    };
    memo.insert(w.clone(), result.clone());
    Ok(result)
}
