//! Exhaustive optimal play for the full game and its subgames.
//!
//! Every level enumerates budget-feasible subsets in canonical order (size
//! ascending, then lexicographic) and keeps the first optimum it meets, so
//! results are deterministic. A level stops early once the remaining
//! candidates cannot change the decision of the level above it.

use num_traits::{PrimInt, Unsigned};

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::instance::{Instance, StrategyTriple};
use crate::poly::{compute_candidates, largest_components_attack};
use crate::propagation::Simulator;

/// Subsets of `items` whose total cost is within `budget`, in canonical order.
///
/// `costs` is indexed by item value (vertex id). A branch is cut as soon as
/// the cheapest completion to the current size overshoots the budget, and the
/// stream ends at the first size with no feasible subset.
#[derive(Debug, Clone)]
pub struct BudgetSubsets<T> {
    cost: Vec<T>,
    items: Vec<usize>,
    budget: T,
    /// `cheapest[s][r]`: sum of the `r` smallest costs among positions `s..`.
    cheapest: Vec<Vec<T>>,
    k: usize,
    combo: Vec<usize>,
    partial: Vec<T>,
    state: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl<T: PrimInt + Unsigned> BudgetSubsets<T> {
    pub fn new(costs: &[T], items: &[usize], budget: T) -> Self {
        let mut items = items.to_vec();
        items.sort_unstable();
        items.dedup();
        let cost: Vec<T> = items.iter().map(|&v| costs[v]).collect();
        let len = items.len();
        let mut cheapest = Vec::with_capacity(len + 1);
        for s in 0..=len {
            let mut tail: Vec<T> = cost[s..].to_vec();
            tail.sort_unstable();
            let mut row = Vec::with_capacity(tail.len() + 1);
            let mut acc = T::zero();
            row.push(acc);
            for c in tail {
                acc = acc.saturating_add(c);
                row.push(acc);
            }
            cheapest.push(row);
        }
        BudgetSubsets {
            cost,
            items,
            budget,
            cheapest,
            k: 0,
            combo: Vec::new(),
            partial: vec![T::zero()],
            state: State::Fresh,
        }
    }

    /// Smallest total when `r` more items are drawn from positions `s..`.
    fn lower(&self, s: usize, r: usize) -> Option<T> {
        self.cheapest.get(s)?.get(r).copied()
    }

    fn fits(&self, base: T, p: usize, remaining: usize) -> bool {
        match self.lower(p + 1, remaining) {
            Some(rest) => base.saturating_add(self.cost[p]).saturating_add(rest) <= self.budget,
            None => false,
        }
    }

    /// Fills `combo[depth..k]` with the lexicographically first feasible
    /// completion starting at position `start`.
    fn fill(&mut self, depth: usize, start: usize) -> bool {
        let k = self.k;
        self.combo.truncate(depth);
        self.partial.truncate(depth + 1);
        let mut from = start;
        for d in depth..k {
            let base = self.partial[d];
            let need = k - d - 1;
            let Some(p) = (from..self.cost.len()).find(|&p| self.fits(base, p, need)) else {
                return false;
            };
            self.combo.push(p);
            self.partial.push(base.saturating_add(self.cost[p]));
            from = p + 1;
        }
        true
    }

    fn advance(&mut self) -> bool {
        let k = self.k;
        for d in (0..k).rev() {
            let base = self.partial[d];
            let need = k - d - 1;
            let next = (self.combo[d] + 1..self.cost.len()).find(|&p| self.fits(base, p, need));
            if let Some(p) = next {
                self.combo.truncate(d);
                self.partial.truncate(d + 1);
                self.combo.push(p);
                self.partial.push(base.saturating_add(self.cost[p]));
                if self.fill(d + 1, p + 1) {
                    return true;
                }
            }
        }
        if self.k < self.cost.len() {
            self.k += 1;
            return self.fill(0, 0);
        }
        false
    }
}

impl<T: PrimInt + Unsigned> Iterator for BudgetSubsets<T> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        match self.state {
            State::Done => return None,
            State::Fresh => self.state = State::Running,
            State::Running => {
                if !self.advance() {
                    self.state = State::Done;
                    return None;
                }
            }
        }
        Some(self.combo.iter().map(|&p| self.items[p]).collect())
    }
}

/// Enumerates every subset of `candidates` within `budget`, canonical order.
pub fn enumerate_budget_subsets(costs: &[u64], candidates: &VertexSet, budget: u64) -> BudgetSubsets<u64> {
    let items: Vec<usize> = candidates.iter().copied().collect();
    BudgetSubsets::new(costs, &items, budget)
}

/// Default bound on inner plays before a search gives up.
pub const DEFAULT_MAX_PLAYS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_plays: u64,
    /// Restrict directed protection to candidate vertices when protection
    /// costs are uniform.
    pub prune_candidates: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_plays: DEFAULT_MAX_PLAYS,
            prune_candidates: true,
        }
    }
}

/// Optimal saved benefit with the moves that realise it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameValue {
    pub value: u64,
    pub witness: StrategyTriple,
    /// Number of propagations evaluated.
    pub plays: u64,
}

/// Saved benefit with the chosen D, I and P.
type Play3 = (u64, Vec<usize>, Vec<usize>, Vec<usize>);

struct Search<'a> {
    inst: &'a Instance,
    limits: SearchLimits,
    sim: Simulator<'a>,
    plays: u64,
}

type Best = Option<(u64, Vec<usize>, Vec<usize>)>;

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, limits: SearchLimits) -> Self {
        Search {
            inst,
            limits,
            sim: Simulator::new(inst),
            plays: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.plays += 1;
        if self.plays > self.limits.max_plays {
            return Err(Error::TooLarge {
                limit: self.limits.max_plays,
            });
        }
        Ok(())
    }

    fn protection_pool(&mut self, d: &[usize], i: &[usize]) -> Result<Vec<usize>> {
        let reach = self.sim.infected_set(i);
        let mut pool: Vec<usize> = reach.into_iter().filter(|v| !i.contains(v)).collect();
        let g = self.inst.graph();
        let c = self.inst.c_prot();
        let uniform = pool.windows(2).all(|w| c[w[0]] == c[w[1]]);
        if self.limits.prune_candidates && g.is_directed() && uniform && pool.len() > 1 {
            let removed: VertexSet = d.iter().copied().collect();
            let sub = g.induced_subgraph(&removed)?;
            let attacked = sub.project(&i.iter().copied().collect());
            let cands = compute_candidates(&sub.graph, &attacked)?;
            pool = cands.members.iter().map(|&v| sub.new_to_old[v]).collect();
        }
        Ok(pool)
    }

    /// Best protection against `i` with `d` already blocked. Stops once the
    /// value reaches `stop_at` (the attacker's current best), since that
    /// attack can then no longer be preferred.
    fn protect(&mut self, d: &[usize], i: &[usize], stop_at: Option<u64>) -> Result<(u64, Vec<usize>)> {
        let lambda = self.inst.lambda;
        let pool = if lambda == 0 {
            Vec::new()
        } else {
            self.protection_pool(d, i)?
        };
        let upper = self.inst.total_benefit() - self.inst.benefit_of(i);
        let mut best: Option<(u64, Vec<usize>)> = None;
        for p in BudgetSubsets::new(self.inst.c_prot(), &pool, lambda) {
            self.tick()?;
            self.sim.set_blocked(&p, true);
            let value = self.sim.saved_value(i);
            self.sim.set_blocked(&p, false);
            if best.as_ref().is_none_or(|b| value > b.0) {
                best = Some((value, p));
            }
            if value >= upper || stop_at.is_some_and(|s| value >= s) {
                break;
            }
        }
        Ok(best.expect("the empty protection is always feasible"))
    }

    /// Attacker's best reply with `d` blocked. Stops once the value drops to
    /// `stop_at` (the defender's current best one level up).
    fn attack(&mut self, d: &[usize], with_protect: bool, stop_at: Option<u64>) -> Result<(u64, Vec<usize>, Vec<usize>)> {
        let blocked: VertexSet = d.iter().copied().collect();
        let pool: Vec<usize> = (0..self.inst.n()).filter(|v| !blocked.contains(v)).collect();
        let lower = self.inst.benefit_of(d);
        let mut best: Best = None;
        for i in BudgetSubsets::new(self.inst.c_att(), &pool, self.inst.phi) {
            let cutoff = best.as_ref().map(|b| b.0);
            let (value, p) = if with_protect {
                self.protect(d, &i, cutoff)?
            } else {
                self.tick()?;
                (self.sim.saved_value(&i), Vec::new())
            };
            if best.as_ref().is_none_or(|b| value < b.0) {
                best = Some((value, i, p));
            }
            let current = best.as_ref().map_or(u64::MAX, |b| b.0);
            if current <= lower || stop_at.is_some_and(|s| current <= s) {
                break;
            }
        }
        Ok(best.expect("the empty attack is always feasible"))
    }

    /// Attack on a unit-weight undirected graph: the largest components.
    fn attack_by_components(&mut self, d: &[usize]) -> Result<(u64, Vec<usize>, Vec<usize>)> {
        self.tick()?;
        let removed: VertexSet = d.iter().copied().collect();
        let sub = self.inst.graph().induced_subgraph(&removed)?;
        let (attacked, infected) = largest_components_attack(&sub.graph, self.inst.phi);
        let i = sub.lift(&attacked).into_iter().collect();
        Ok((self.inst.n() as u64 - infected, i, Vec::new()))
    }

    fn vaccinate(&mut self, with_protect: bool) -> Result<Play3> {
        let all: Vec<usize> = (0..self.inst.n()).collect();
        let total = self.inst.total_benefit();
        let by_components = !with_protect && self.inst.is_unitary() && !self.inst.graph().is_directed();
        let mut best: Option<Play3> = None;
        for d in BudgetSubsets::new(self.inst.c_vacc(), &all, self.inst.omega) {
            let cutoff = best.as_ref().map(|b| b.0);
            self.sim.set_blocked(&d, true);
            let reply = if by_components {
                self.attack_by_components(&d)
            } else {
                self.attack(&d, with_protect, cutoff)
            };
            self.sim.set_blocked(&d, false);
            let (value, i, p) = reply?;
            if best.as_ref().is_none_or(|b| value > b.0) {
                best = Some((value, d, i, p));
            }
            if value >= total {
                break;
            }
        }
        Ok(best.expect("the empty vaccination is always feasible"))
    }
}

fn to_set(v: Vec<usize>) -> VertexSet {
    v.into_iter().collect()
}

fn check_fixed(inst: &Instance, d: &VertexSet, i: &VertexSet) -> Result<()> {
    StrategyTriple::new(d.clone(), i.clone(), VertexSet::new()).validate(inst)
}

/// Best protection for fixed `d` and `i`.
pub fn best_protect(inst: &Instance, d: &VertexSet, i: &VertexSet) -> Result<GameValue> {
    best_protect_with(inst, d, i, SearchLimits::default())
}

pub fn best_protect_with(inst: &Instance, d: &VertexSet, i: &VertexSet, limits: SearchLimits) -> Result<GameValue> {
    check_fixed(inst, d, i)?;
    let mut s = Search::new(inst, limits);
    let dv: Vec<usize> = d.iter().copied().collect();
    let iv: Vec<usize> = i.iter().copied().collect();
    s.sim.set_blocked(&dv, true);
    let (value, p) = s.protect(&dv, &iv, None)?;
    Ok(GameValue {
        value,
        witness: StrategyTriple::new(d.clone(), i.clone(), to_set(p)),
        plays: s.plays,
    })
}

/// Attacker's optimum for fixed `d` with no protection.
pub fn best_attack(inst: &Instance, d: &VertexSet) -> Result<GameValue> {
    best_attack_with(inst, d, SearchLimits::default())
}

pub fn best_attack_with(inst: &Instance, d: &VertexSet, limits: SearchLimits) -> Result<GameValue> {
    attack_level(inst, d, false, limits)
}

/// Attacker's optimum for fixed `d` against a best-responding protector.
pub fn best_attack_protect(inst: &Instance, d: &VertexSet) -> Result<GameValue> {
    best_attack_protect_with(inst, d, SearchLimits::default())
}

pub fn best_attack_protect_with(inst: &Instance, d: &VertexSet, limits: SearchLimits) -> Result<GameValue> {
    attack_level(inst, d, true, limits)
}

fn attack_level(inst: &Instance, d: &VertexSet, with_protect: bool, limits: SearchLimits) -> Result<GameValue> {
    check_fixed(inst, d, &VertexSet::new())?;
    let mut s = Search::new(inst, limits);
    let dv: Vec<usize> = d.iter().copied().collect();
    s.sim.set_blocked(&dv, true);
    let (value, i, p) = s.attack(&dv, with_protect, None)?;
    Ok(GameValue {
        value,
        witness: StrategyTriple::new(d.clone(), to_set(i), to_set(p)),
        plays: s.plays,
    })
}

/// Vaccination then attack, no protection. Unit-weight undirected instances
/// answer the attack level with the largest-components rule.
pub fn best_vaccination_attack(inst: &Instance) -> Result<GameValue> {
    best_vaccination_attack_with(inst, SearchLimits::default())
}

pub fn best_vaccination_attack_with(inst: &Instance, limits: SearchLimits) -> Result<GameValue> {
    top_level(inst, false, limits)
}

/// The full three-level game.
pub fn solve_mcn(inst: &Instance) -> Result<GameValue> {
    solve_mcn_with(inst, SearchLimits::default())
}

pub fn solve_mcn_with(inst: &Instance, limits: SearchLimits) -> Result<GameValue> {
    top_level(inst, inst.lambda > 0, limits)
}

fn top_level(inst: &Instance, with_protect: bool, limits: SearchLimits) -> Result<GameValue> {
    let mut s = Search::new(inst, limits);
    let (value, d, i, p) = s.vaccinate(with_protect)?;
    Ok(GameValue {
        value,
        witness: StrategyTriple::new(to_set(d), to_set(i), to_set(p)),
        plays: s.plays,
    })
}
