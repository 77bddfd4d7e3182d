//! Playing a strategy triple: who gets infected, who is saved, and checks
//! that the outcome satisfies the trilevel program's propagation constraints.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::{Instance, StrategyTriple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayOutcome {
    pub infected: VertexSet,
    pub saved: VertexSet,
    /// `alpha[v] == 1` iff `v` is saved.
    pub alpha: Vec<u8>,
    /// Total benefit of the saved vertices.
    pub value: u64,
}

impl PlayOutcome {
    pub fn infected_benefit(&self, inst: &Instance) -> u64 {
        inst.benefit_of(&self.infected)
    }
}

/// Plays `strat` on `inst`: vaccinated and protected vertices are deleted,
/// the infection spreads from `I` along arcs, everything else is saved.
pub fn play(inst: &Instance, strat: &StrategyTriple) -> Result<PlayOutcome> {
    strat.validate(inst)?;
    Ok(play_unchecked(inst, strat))
}

/// As [`play`] but skips budget checks (sets must still be in range and disjoint).
pub fn play_unchecked(inst: &Instance, strat: &StrategyTriple) -> PlayOutcome {
    let blocked: VertexSet = strat.d.union(&strat.p).copied().collect();
    let sub = inst
        .graph()
        .induced_subgraph(&blocked)
        .expect("strategy vertices are in range");
    let reached = sub
        .graph
        .reachable_set(&sub.project(&strat.i))
        .expect("projected ids are in range");
    let infected = sub.lift(&reached);
    let saved: VertexSet = (0..inst.n()).filter(|v| !infected.contains(v)).collect();
    let alpha = (0..inst.n()).map(|v| u8::from(saved.contains(&v))).collect();
    PlayOutcome {
        value: inst.benefit_of(&saved),
        infected,
        saved,
        alpha,
    }
}

/// One violated condition of the propagation constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `alpha_v <= 1 + z_v - y_v`: an attacked, unvaccinated vertex marked saved.
    AttackedSaved(usize),
    /// `alpha_v <= alpha_u + x_v + z_v` broken on arc `(u, v)`.
    Spread { from: usize, to: usize },
    /// `alpha_v = 0` although some feasible alpha saves `v`.
    NotMaximal(usize),
    /// `alpha` has the wrong length or a non-binary entry.
    BadAlpha(String),
    /// The saved/infected sets or the value disagree with `alpha`.
    Inconsistent(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AttackedSaved(v) => write!(f, "attacked vertex {v} marked saved"),
            Violation::Spread { from, to } => {
                write!(f, "arc ({from}, {to}) carries infection into a saved vertex")
            }
            Violation::NotMaximal(v) => write!(f, "vertex {v} could be saved (alpha not maximal)"),
            Violation::BadAlpha(s) | Violation::Inconsistent(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `outcome.alpha` against both constraint families and confirms it is
/// the componentwise-largest 0/1 vector satisfying them.
///
/// The largest feasible vector is computed here by constraint relaxation,
/// independently of the reachability code used by [`play`].
pub fn check_trilevel_consistency(
    inst: &Instance,
    strat: &StrategyTriple,
    outcome: &PlayOutcome,
) -> Verdict {
    let n = inst.n();
    let mut violations = Vec::new();
    if outcome.alpha.len() != n || outcome.alpha.iter().any(|&a| a > 1) {
        violations.push(Violation::BadAlpha(format!(
            "alpha must be a 0/1 vector of length {n}"
        )));
        return Verdict { violations };
    }
    let z = indicator(n, &strat.d);
    let y = indicator(n, &strat.i);
    let x = indicator(n, &strat.p);
    let alpha = &outcome.alpha;

    for v in 0..n {
        if alpha[v] as i32 > 1 + z[v] as i32 - y[v] as i32 {
            violations.push(Violation::AttackedSaved(v));
        }
    }
    for (u, v) in inst.graph().arcs() {
        if alpha[v] > alpha[u] + x[v] + z[v] {
            violations.push(Violation::Spread { from: u, to: v });
        }
    }
    let best = greatest_feasible_alpha(inst.graph(), &z, &y, &x);
    for v in 0..n {
        if alpha[v] == 0 && best[v] == 1 {
            violations.push(Violation::NotMaximal(v));
        }
    }

    let saved: VertexSet = (0..n).filter(|&v| alpha[v] == 1).collect();
    let infected: VertexSet = (0..n).filter(|&v| alpha[v] == 0).collect();
    if saved != outcome.saved || infected != outcome.infected {
        violations.push(Violation::Inconsistent(
            "saved/infected sets disagree with alpha".into(),
        ));
    }
    if inst.benefit_of(&saved) != outcome.value {
        violations.push(Violation::Inconsistent(format!(
            "value {} differs from saved benefit {}",
            outcome.value,
            inst.benefit_of(&saved)
        )));
    }
    Verdict { violations }
}

fn indicator(n: usize, set: &VertexSet) -> Vec<u8> {
    let mut out = vec![0u8; n];
    for &v in set {
        if v < n {
            out[v] = 1;
        }
    }
    out
}

/// Start from all ones and lower entries until both constraint families hold.
fn greatest_feasible_alpha(g: &Graph, z: &[u8], y: &[u8], x: &[u8]) -> Vec<u8> {
    let n = g.n();
    let mut alpha = vec![1u8; n];
    for v in 0..n {
        if y[v] == 1 && z[v] == 0 {
            alpha[v] = 0;
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for (u, v) in g.arcs() {
            if alpha[v] == 1 && alpha[u] == 0 && x[v] == 0 && z[v] == 0 {
                alpha[v] = 0;
                changed = true;
            }
        }
    }
    alpha
}

/// Value split into the deleted-graph play and the benefit of `D` and `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    /// Saved benefit when `D ∪ P` is deleted and only `I` is played.
    pub reduced_value: u64,
    pub vaccinated_benefit: u64,
    pub protected_benefit: u64,
}

impl Decomposition {
    pub fn total(&self) -> u64 {
        self.reduced_value + self.vaccinated_benefit + self.protected_benefit
    }
}

/// Recomputes the value of `strat` by deleting `D ∪ P` and playing only the
/// attack on what remains, and checks it against [`play`].
pub fn property1_decompose(inst: &Instance, strat: &StrategyTriple) -> Result<Decomposition> {
    let direct = play(inst, strat)?;
    let blocked: VertexSet = strat.d.union(&strat.p).copied().collect();
    let sub = inst.graph().induced_subgraph(&blocked)?;
    let b: Vec<u64> = sub.new_to_old.iter().map(|&v| inst.b()[v]).collect();
    let reduced = Instance::unitary(sub.graph.clone(), 0, 0, 0).with_benefits(b)?;
    let reduced_play = play_unchecked(&reduced, &StrategyTriple::attack_only(sub.project(&strat.i)));
    let parts = Decomposition {
        reduced_value: reduced_play.value,
        vaccinated_benefit: inst.benefit_of(&strat.d),
        protected_benefit: inst.benefit_of(&strat.p),
    };
    if parts.total() != direct.value {
        return Err(Error::Invariant(format!(
            "deletion form gives {} but play gives {}",
            parts.total(),
            direct.value
        )));
    }
    Ok(parts)
}

/// Reusable propagation state for solvers that replay many strategies on one
/// instance. Blocked vertices (vaccinated or protected) are toggled in place.
#[derive(Debug, Clone)]
pub struct Simulator<'a> {
    g: &'a Graph,
    b: &'a [u64],
    total: u64,
    blocked: Vec<bool>,
    stamp: Vec<u32>,
    epoch: u32,
    stack: Vec<usize>,
}

impl<'a> Simulator<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        let n = inst.n();
        Simulator {
            g: inst.graph(),
            b: inst.b(),
            total: inst.total_benefit(),
            blocked: vec![false; n],
            stamp: vec![0; n],
            epoch: 0,
            stack: Vec::with_capacity(n),
        }
    }

    pub fn set_blocked(&mut self, set: &[usize], on: bool) {
        for &v in set {
            self.blocked[v] = on;
        }
    }

    pub fn is_blocked(&self, v: usize) -> bool {
        self.blocked[v]
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    /// Benefit of the vertices infected from `attacked` under the current blocks.
    pub fn infected_benefit(&mut self, attacked: &[usize]) -> u64 {
        self.next_epoch();
        let epoch = self.epoch;
        let mut sum = 0;
        self.stack.clear();
        for &s in attacked {
            if self.stamp[s] != epoch {
                self.stamp[s] = epoch;
                sum += self.b[s];
                self.stack.push(s);
            }
        }
        while let Some(u) = self.stack.pop() {
            for &w in self.g.successors(u) {
                if self.stamp[w] != epoch && !self.blocked[w] {
                    self.stamp[w] = epoch;
                    sum += self.b[w];
                    self.stack.push(w);
                }
            }
        }
        sum
    }

    /// Saved benefit for `attacked` under the current blocks.
    pub fn saved_value(&mut self, attacked: &[usize]) -> u64 {
        self.total - self.infected_benefit(attacked)
    }

    /// Infected set for `attacked` under the current blocks.
    pub fn infected_set(&mut self, attacked: &[usize]) -> VertexSet {
        self.infected_benefit(attacked);
        let epoch = self.epoch;
        (0..self.g.n()).filter(|&v| self.stamp[v] == epoch).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::sample_game;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn labels(inst: &Instance, s: &VertexSet) -> Vec<String> {
        s.iter().map(|&v| inst.label(v)).collect()
    }

    fn sample_strategy(inst: &Instance) -> StrategyTriple {
        let id = |s: &str| inst.vertex_named(s).unwrap();
        StrategyTriple::from_slices(&[id("3")], &[id("2")], &[id("1")])
    }

    #[test]
    fn sample_game_play() {
        let inst = sample_game();
        let strat = sample_strategy(&inst);
        let out = play(&inst, &strat).unwrap();
        assert_eq!(labels(&inst, &out.saved), ["1", "3", "4", "5"]);
        assert_eq!(labels(&inst, &out.infected), ["2", "6"]);
        assert_eq!(out.value, 4);
        assert!(check_trilevel_consistency(&inst, &strat, &out).is_consistent());
        let parts = property1_decompose(&inst, &strat).unwrap();
        assert_eq!(
            (parts.reduced_value, parts.vaccinated_benefit, parts.protected_benefit),
            (2, 1, 1)
        );
    }

    #[test]
    fn no_attack_saves_everything() {
        let inst = sample_game();
        let out = play(&inst, &StrategyTriple::default()).unwrap();
        assert!(out.infected.is_empty());
        assert_eq!(out.value, 6);
    }

    #[test]
    fn path_full_spread() {
        let g = Graph::new(3, false, &[(0, 1), (1, 2)]).unwrap();
        let inst = Instance::unitary(g, 0, 1, 0);
        let strat = StrategyTriple::attack_only(set(&[1]));
        let out = play(&inst, &strat).unwrap();
        assert_eq!(out.infected, set(&[0, 1, 2]));
        assert_eq!(out.value, 0);
        let parts = property1_decompose(&inst, &strat).unwrap();
        assert_eq!(parts.total(), 0);
    }

    #[test]
    fn verdict_flags_tampered_outcomes() {
        let inst = sample_game();
        let strat = sample_strategy(&inst);
        let good = play(&inst, &strat).unwrap();
        let two = inst.vertex_named("2").unwrap();
        let mut bad = good.clone();
        bad.alpha[two] = 1;
        let verdict = check_trilevel_consistency(&inst, &strat, &bad);
        assert!(verdict.violations.contains(&Violation::AttackedSaved(two)));

        let g = Graph::empty(2, false);
        let lone = Instance::unitary(g, 0, 1, 0);
        let strat = StrategyTriple::attack_only(set(&[0]));
        let mut out = play(&lone, &strat).unwrap();
        out.alpha[1] = 0;
        let verdict = check_trilevel_consistency(&lone, &strat, &out);
        assert!(verdict.violations.contains(&Violation::NotMaximal(1)));
    }

    #[test]
    fn play_rejects_invalid_strategies() {
        let inst = sample_game();
        let bad = StrategyTriple::from_slices(&[], &[0], &[0]);
        assert!(matches!(play(&inst, &bad), Err(Error::Overlap { vertex: 0, .. })));
        let over = StrategyTriple::from_slices(&[0, 1], &[], &[]);
        assert!(matches!(play(&inst, &over), Err(Error::BudgetViolation { .. })));
    }

    #[test]
    fn simulator_matches_play() {
        let inst = sample_game();
        let strat = sample_strategy(&inst);
        let mut sim = Simulator::new(&inst);
        let blocked: Vec<usize> = strat.d.union(&strat.p).copied().collect();
        sim.set_blocked(&blocked, true);
        let attacked: Vec<usize> = strat.i.iter().copied().collect();
        assert_eq!(sim.saved_value(&attacked), 4);
        assert_eq!(sim.infected_set(&attacked), play(&inst, &strat).unwrap().infected);
        sim.set_blocked(&blocked, false);
        assert_eq!(sim.saved_value(&attacked), 6 - 6);
    }
}
