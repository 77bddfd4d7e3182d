//! Executable hardness constructions: source problems, gadget compilers,
//! back-mappers and a round-trip harness that compares brute-force answers
//! on both sides.

pub mod cnf;
pub mod gadgets;
pub mod random;
pub mod sources;

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{self, SearchLimits};
use crate::graph::VertexSet;
use crate::instance::{Instance, StrategyTriple};

pub use cnf::CnfFormula;
pub use gadgets::{DigitLayout, Role};
pub use sources::{
    solve_source_bruteforce, BikInstance, DominatingSetInstance, KnapsackInstance, KnapsackItem, OracleCaps,
    SourceAnswer, SourceProblem, SourceWitness, SplitCnpInstance, TikInstance, TikItem,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduction {
    CnpSplit,
    DominatingSet,
    Knapsack,
    /// BIK to Attack-Protect on a weighted star.
    Bik,
    /// BIK to Vaccination-Attack on a weighted star.
    BikVaccination,
    B3CnfTik,
    Tik,
    Sat3,
    B2Cnf,
    CnpSplitDir,
}

impl Reduction {
    pub const ALL: [Reduction; 10] = [
        Reduction::CnpSplit,
        Reduction::DominatingSet,
        Reduction::Knapsack,
        Reduction::Bik,
        Reduction::BikVaccination,
        Reduction::B3CnfTik,
        Reduction::Tik,
        Reduction::Sat3,
        Reduction::B2Cnf,
        Reduction::CnpSplitDir,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reduction::CnpSplit => "cnp-split",
            Reduction::DominatingSet => "dominating-set",
            Reduction::Knapsack => "knapsack",
            Reduction::Bik => "bik",
            Reduction::BikVaccination => "bik-va",
            Reduction::B3CnfTik => "b3cnf-tik",
            Reduction::Tik => "tik",
            Reduction::Sat3 => "3sat",
            Reduction::B2Cnf => "b2cnf",
            Reduction::CnpSplitDir => "cnp-split-dir",
        }
    }

    /// Whether the source document is DIMACS rather than JSON.
    pub fn reads_dimacs(self) -> bool {
        matches!(self, Reduction::B3CnfTik | Reduction::Sat3 | Reduction::B2Cnf)
    }

    /// Parses a source document in the format this reduction expects.
    pub fn parse_source(self, text: &str) -> Result<SourceProblem> {
        Ok(match self {
            Reduction::Sat3 => SourceProblem::Sat3(CnfFormula::from_dimacs(text)?),
            Reduction::B2Cnf => SourceProblem::B2Cnf(CnfFormula::from_dimacs(text)?),
            Reduction::B3CnfTik => SourceProblem::B3Cnf(CnfFormula::from_dimacs(text)?),
            Reduction::Knapsack => SourceProblem::Knapsack(serde_json::from_str(text)?),
            Reduction::Bik | Reduction::BikVaccination => SourceProblem::Bik(serde_json::from_str(text)?),
            Reduction::Tik => SourceProblem::Tik(serde_json::from_str(text)?),
            Reduction::DominatingSet => SourceProblem::DominatingSet(serde_json::from_str(text)?),
            Reduction::CnpSplit | Reduction::CnpSplitDir => SourceProblem::CnpSplit(serde_json::from_str(text)?),
        })
    }

    /// Runs the gadget compiler on a source of the matching kind.
    pub fn apply(self, src: &SourceProblem) -> Result<ReductionCertificate> {
        use SourceProblem as S;
        match (self, src) {
            (Reduction::CnpSplit, S::CnpSplit(x)) => gadgets::reduce_cnp_split_to_protect(x),
            (Reduction::CnpSplitDir, S::CnpSplit(x)) => gadgets::reduce_cnp_split_to_protect_dir(x),
            (Reduction::DominatingSet, S::DominatingSet(x)) => gadgets::reduce_dominating_set_to_attack_protect(x),
            (Reduction::Knapsack, S::Knapsack(x)) => gadgets::reduce_knapsack_to_attack_w(x),
            (Reduction::Bik, S::Bik(x)) => gadgets::reduce_bik_to_attack_protect_w(x),
            (Reduction::BikVaccination, S::Bik(x)) => gadgets::reduce_bik_to_vaccination_attack_w(x),
            (Reduction::Tik, S::Tik(x)) => gadgets::reduce_tik_to_mcn_w(x),
            (Reduction::B3CnfTik, S::B3Cnf(f)) => gadgets::reduce_b3cnf_to_tik(f),
            (Reduction::Sat3, S::Sat3(f)) => gadgets::reduce_3sat_to_attack_dir(f),
            (Reduction::B2Cnf, S::B2Cnf(f)) => gadgets::reduce_b2cnf_to_vaccination_attack_dir(f),
            _ => Err(Error::Precondition(format!(
                "reduction `{}` does not accept this source problem",
                self.name()
            ))),
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reduction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Reduction::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown reduction `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subgame {
    Protect,
    Attack,
    AttackProtect,
    VaccinationAttack,
    Mcn,
}

impl Subgame {
    pub fn name(self) -> &'static str {
        match self {
            Subgame::Protect => "protect",
            Subgame::Attack => "attack",
            Subgame::AttackProtect => "attack-protect",
            Subgame::VaccinationAttack => "vaccination-attack",
            Subgame::Mcn => "mcn",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Saved,
    Infected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    AtLeast,
    AtMost,
    Below,
}

/// "Can the player who moves first force `measure comparison threshold`?"
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Question {
    pub game: Subgame,
    pub measure: Measure,
    pub comparison: Comparison,
    pub threshold: u64,
}

impl Question {
    pub fn holds(&self, measured: u64) -> bool {
        match self.comparison {
            Comparison::AtLeast => measured >= self.threshold,
            Comparison::AtMost => measured <= self.threshold,
            Comparison::Below => measured < self.threshold,
        }
    }

    pub fn to_json(self) -> serde_json::Value {
        let measure = match self.measure {
            Measure::Saved => "saved",
            Measure::Infected => "infected",
        };
        let comparison = match self.comparison {
            Comparison::AtLeast => ">=",
            Comparison::AtMost => "<=",
            Comparison::Below => "<",
        };
        json!({
            "game": self.game.name(),
            "measure": measure,
            "comparison": comparison,
            "K": self.threshold,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTarget {
    pub instance: Instance,
    /// Provenance of each target vertex.
    pub roles: Vec<Role>,
    /// Moves fixed by the construction for subgames that start later.
    pub fixed_d: VertexSet,
    pub fixed_i: VertexSet,
    pub question: Question,
}

impl GameTarget {
    fn vertices_with(&self, set: &VertexSet, mut pick: impl FnMut(Role) -> Option<usize>) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().filter_map(|&v| pick(self.roles[v])).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Game(GameTarget),
    Tik { instance: TikInstance, roles: Vec<Role> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub reduction: Reduction,
    pub source: SourceProblem,
    pub target: Target,
}

/// The first player's move in an optimal target solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetWitness {
    Strategy(StrategyTriple),
    /// Items of the first TIK level.
    TikFirst(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetAnswer {
    pub yes: bool,
    /// Optimal value of the question's measure (absent for TIK targets).
    pub measured: Option<u64>,
    pub witness: Option<TargetWitness>,
    pub plays: u64,
}

impl ReductionCertificate {
    pub fn game(&self) -> Option<&GameTarget> {
        match &self.target {
            Target::Game(g) => Some(g),
            Target::Tik { .. } => None,
        }
    }

    /// Certificate document. Identical sources give byte-identical output.
    pub fn to_json(&self) -> String {
        let target = match &self.target {
            Target::Game(g) => json!({
                "instance": g.instance.to_json_value(),
                "fixed_D": g.fixed_d,
                "fixed_I": g.fixed_i,
                "question": g.question.to_json(),
            }),
            Target::Tik { instance, .. } => json!({ "tik": instance }),
        };
        let doc = json!({
            "reduction": self.reduction.name(),
            "source": self.source.to_text(),
            "target": target,
        });
        serde_json::to_string(&doc).expect("certificate serializes")
    }

    /// Answers the target question exactly.
    pub fn decide_target(&self, limits: SearchLimits, tik_items: usize) -> Result<TargetAnswer> {
        let g = match &self.target {
            Target::Tik { instance, .. } => {
                let first = instance.solve(tik_items)?;
                return Ok(TargetAnswer {
                    yes: first.is_some(),
                    measured: None,
                    witness: first.map(TargetWitness::TikFirst),
                    plays: 0,
                });
            }
            Target::Game(g) => g,
        };
        let inst = &g.instance;
        let gv = match g.question.game {
            Subgame::Protect => exact::best_protect_with(inst, &g.fixed_d, &g.fixed_i, limits)?,
            Subgame::Attack => exact::best_attack_with(inst, &g.fixed_d, limits)?,
            Subgame::AttackProtect => exact::best_attack_protect_with(inst, &g.fixed_d, limits)?,
            Subgame::VaccinationAttack => exact::best_vaccination_attack_with(inst, limits)?,
            Subgame::Mcn => exact::solve_mcn_with(inst, limits)?,
        };
        let measured = match g.question.measure {
            Measure::Saved => gv.value,
            Measure::Infected => inst.total_benefit() - gv.value,
        };
        Ok(TargetAnswer {
            yes: g.question.holds(measured),
            measured: Some(measured),
            witness: Some(TargetWitness::Strategy(gv.witness)),
            plays: gv.plays,
        })
    }

    /// Reads the source certificate off the first mover's target move.
    pub fn back_map(&self, witness: &TargetWitness) -> Result<SourceWitness> {
        let mismatch = || Error::Precondition("witness kind does not match the target".into());
        if let Target::Tik { roles, .. } = &self.target {
            let TargetWitness::TikFirst(first) = witness else {
                return Err(mismatch());
            };
            let SourceProblem::B3Cnf(f) = &self.source else {
                return Err(mismatch());
            };
            let mut a = vec![false; f.num_vars()];
            for &k in first {
                if let Some(Role::Literal(l)) = roles.get(k) {
                    if *l > 0 {
                        a[*l as usize - 1] = true;
                    }
                }
            }
            return Ok(SourceWitness::Assignment(a));
        }
        let Target::Game(g) = &self.target else { unreachable!() };
        let TargetWitness::Strategy(s) = witness else {
            return Err(mismatch());
        };
        let copies = |set| g.vertices_with(set, |r| if let Role::Copy(v) = r { Some(v) } else { None });
        let items = |set, want: u8| {
            g.vertices_with(set, |r| match r {
                Role::Item { item, layer } if layer == want => Some(item),
                _ => None,
            })
        };
        let assignment = |set: &VertexSet, n: usize, flip: bool| {
            let mut a = vec![false; n];
            for &v in set {
                if let Role::Literal(l) = g.roles[v] {
                    if (l > 0) != flip {
                        a[l.unsigned_abs() as usize - 1] = true;
                    }
                }
            }
            a
        };
        Ok(match (self.reduction, &self.source) {
            (Reduction::CnpSplit, _) => SourceWitness::Vertices(copies(&s.p)),
            (Reduction::CnpSplitDir, _) => SourceWitness::Vertices(g.vertices_with(&s.p, |r| match r {
                Role::Split { vertex, layer: 1 } => Some(vertex),
                _ => None,
            })),
            // A winning attack stays winning when extended, and a winning
            // attack of exactly B vertices dominates; pad with the smallest
            // free ids.
            (Reduction::DominatingSet, SourceProblem::DominatingSet(ds)) => {
                let mut u = copies(&s.i);
                for v in 0..ds.n {
                    if u.len() >= ds.budget {
                        break;
                    }
                    if !u.contains(&v) {
                        u.push(v);
                    }
                }
                u.sort_unstable();
                SourceWitness::Vertices(u)
            }
            (Reduction::Knapsack | Reduction::Bik, _) => SourceWitness::Items(items(&s.i, 0)),
            (Reduction::BikVaccination, _) => SourceWitness::Items(items(&s.d, 0)),
            (Reduction::Tik, _) => SourceWitness::Items(items(&s.d, 3)),
            (Reduction::Sat3, SourceProblem::Sat3(f)) => SourceWitness::Assignment(assignment(&s.i, f.num_vars(), false)),
            // x is true when the vaccinated literal is ¬x.
            (Reduction::B2Cnf, SourceProblem::B2Cnf(f)) => {
                SourceWitness::Assignment(assignment(&s.d, f.num_vars(), true))
            }
            _ => return Err(mismatch()),
        })
    }
}

/// One round trip of the verification harness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleOutcome {
    pub index: usize,
    pub seed: u64,
    pub source_yes: bool,
    pub target_yes: bool,
    /// Whether the back-mapped target witness certifies the source; only
    /// checked when both sides answer Yes.
    pub witness_ok: Option<bool>,
    pub plays: u64,
}

impl SampleOutcome {
    pub fn agrees(&self) -> bool {
        self.source_yes == self.target_yes && self.witness_ok != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub reduction: Reduction,
    pub outcomes: Vec<SampleOutcome>,
}

impl VerifyReport {
    pub fn answer_mismatches(&self) -> usize {
        self.outcomes.iter().filter(|o| o.source_yes != o.target_yes).count()
    }

    pub fn witness_failures(&self) -> usize {
        self.outcomes.iter().filter(|o| o.witness_ok == Some(false)).count()
    }

    pub fn yes_count(&self) -> usize {
        self.outcomes.iter().filter(|o| o.source_yes).count()
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(SampleOutcome::agrees)
    }

    pub fn first_disagreement(&self) -> Option<&SampleOutcome> {
        self.outcomes.iter().find(|o| !o.agrees())
    }
}

/// Item cap for brute-forcing TIK targets built from formulas.
pub const TIK_TARGET_ITEMS: usize = 20;

/// Source answer, target answer and witness transport for one source.
pub fn round_trip(reduction: Reduction, src: &SourceProblem, caps: &OracleCaps) -> Result<(SourceAnswer, TargetAnswer, Option<bool>)> {
    let cert = reduction.apply(src)?;
    let source = solve_source_bruteforce(src, caps)?;
    let target = cert.decide_target(SearchLimits::default(), TIK_TARGET_ITEMS)?;
    let witness_ok = match (&source.yes, &target.witness) {
        (true, Some(w)) if target.yes => Some(src.check_witness(&cert.back_map(w)?)?),
        _ => None,
    };
    Ok((source, target, witness_ok))
}

/// Draws `samples` random sources from `seed` and round-trips each one.
/// Samples run on worker threads; results are ordered by sample index.
pub fn verify_reduction(reduction: Reduction, samples: usize, seed: u64, caps: &OracleCaps) -> Result<VerifyReport> {
    let mut rng = crate::gen::SeededRng::new(seed);
    let seeds: Vec<u64> = (0..samples).map(|_| rng.next_u64()).collect();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(samples.max(1));
    let chunk = samples.div_ceil(workers).max(1);
    let results: Vec<Result<SampleOutcome>> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                scope.spawn(move || {
                    part.iter()
                        .enumerate()
                        .map(|(k, &s)| {
                            let src = random::random_source(reduction, s);
                            let (source, target, witness_ok) = round_trip(reduction, &src, caps)?;
                            Ok(SampleOutcome {
                                index: c * chunk + k,
                                seed: s,
                                source_yes: source.yes,
                                target_yes: target.yes,
                                witness_ok,
                                plays: target.plays,
                            })
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verify worker panicked"))
            .collect()
    });
    Ok(VerifyReport {
        reduction,
        outcomes: results.into_iter().collect::<Result<_>>()?,
    })
}
