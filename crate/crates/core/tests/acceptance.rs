//! One pass/fail line per acceptance criterion. Exits non-zero if any fails.

use std::cell::Cell;
use std::time::{Duration, Instant};

use mcn::exact::{best_attack, best_protect, solve_mcn};
use mcn::gen::{gen_random_instance, SeededRng, Shape, WeightMode};
use mcn::poly::{
    attack_components_unitary, attack_components_weighted, compute_candidates, protect_arborescence_greedy,
    protect_tree_dp,
};
use mcn::propagation::{check_trilevel_consistency, property1_decompose};
use mcn::reductions::{verify_reduction, CnfFormula, DigitLayout, OracleCaps, Reduction, TargetWitness};
use mcn::samples::{polytree_attack, polytree_sample, sample_game};
use mcn::{play, Instance, StrategyTriple, VertexSet};

const CRIT1_LIMIT: Duration = Duration::from_secs(1);
const CRIT2_LIMIT: Duration = Duration::from_secs(1);
const CRIT3_LIMIT: Duration = Duration::from_secs(60);
const CRIT4_LIMIT: Duration = Duration::from_secs(30);
const CRIT5_LIMIT: Duration = Duration::from_secs(30);
const CRIT6_LIMIT: Duration = Duration::from_secs(300);
const CRIT7_LIMIT: Duration = Duration::from_secs(30);
const CRIT8_LIMIT: Duration = Duration::from_secs(30);

const ORACLE_SAMPLES: u64 = 200;
const ROUND_TRIP_SAMPLES: usize = 50;
const PROPERTY_PAIRS: u64 = 10_000;

const TIK_FIGURE: &str = include_str!("data/tik_figure.txt");
const TIK_FORMULA: &str = include_str!("data/tik_figure.cnf");

/// Outcomes replayed so far and how many failed the constraint check.
struct Ledger {
    checked: Cell<u64>,
    failed: Cell<u64>,
}

impl Ledger {
    fn play(&self, inst: &Instance, strat: &StrategyTriple) -> u64 {
        let out = play(inst, strat).expect("valid strategy");
        self.checked.set(self.checked.get() + 1);
        if !check_trilevel_consistency(inst, strat, &out).is_consistent() {
            self.failed.set(self.failed.get() + 1);
        }
        out.value
    }
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn report(id: u32, name: &str, limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let took = start.elapsed();
    let in_time = limit.is_none_or(|l| took <= l);
    let ok = out.ok && in_time;
    let budget = limit.map_or(String::new(), |l| format!(" / {:.0?}", l));
    println!(
        "criterion {id} {:<4} {name}: {} [{:.2?}{budget}]",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        took
    );
    ok
}

fn pick(rng: &mut SeededRng, n: usize, k: usize) -> VertexSet {
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    order.into_iter().take(k).collect()
}

fn labels(inst: &Instance, set: &VertexSet) -> Vec<String> {
    set.iter().map(|&v| inst.label(v)).collect()
}

fn criterion1(ledger: &Ledger) -> Outcome {
    let inst = sample_game();
    let gv = solve_mcn(&inst).unwrap();
    ledger.play(&inst, &gv.witness);
    let saved = labels(&inst, &play(&inst, &gv.witness).unwrap().saved);
    let ok = gv.value == 4 && saved == ["1", "3", "4", "5"];
    Outcome {
        ok,
        detail: format!(
            "value {} (want 4), witness D={:?} I={:?} P={:?} saves {:?} (want [1, 3, 4, 5])",
            gv.value,
            labels(&inst, &gv.witness.d),
            labels(&inst, &gv.witness.i),
            labels(&inst, &gv.witness.p),
            saved
        ),
    }
}

fn criterion2(ledger: &Ledger) -> Outcome {
    let inst = polytree_sample().with_budgets(0, 3, 2);
    let attack = polytree_attack(&inst);
    let c = compute_candidates(inst.graph(), &attack).unwrap();
    let members: Vec<String> = c.members.iter().map(|&v| inst.label(v)).collect();
    let cand_ok = members == ["1", "2", "3", "9"] && c.values == [1, 6, 1, 1];

    let gv = best_protect(&inst, &VertexSet::new(), &attack).unwrap();
    ledger.play(&inst, &gv.witness);
    let want = inst.vertices_named(&["1", "3"]).unwrap();
    let free: Vec<usize> = (0..inst.n()).filter(|v| !attack.contains(v)).collect();
    let mut optima = 0;
    for a in 0..free.len() {
        for b in a..free.len() {
            let p: VertexSet = [free[a], free[b]].into();
            let s = StrategyTriple::new(VertexSet::new(), attack.clone(), p);
            if ledger.play(&inst, &s) == gv.value {
                optima += 1;
            }
        }
    }
    let ok = cand_ok && gv.witness.p == want && optima == 1;
    Outcome {
        ok,
        detail: format!(
            "C={members:?} p={:?}, P={:?} saving {}, {optima} optimal protection(s)",
            c.values,
            labels(&inst, &gv.witness.p),
            gv.value
        ),
    }
}

fn criterion3(ledger: &Ledger) -> Outcome {
    let mut rng = SeededRng::new(3);
    let mut mismatches = 0;
    for seed in 0..ORACLE_SAMPLES {
        let n = rng.range(1, 14) as usize;
        let lambda = rng.range(0, 4);
        let k = rng.range(0, 3.min(n as u64)) as usize;
        let attack = pick(&mut rng, n, k);
        let inst = gen_random_instance(Shape::Tree, n, seed, WeightMode::Unit).unwrap().with_budgets(0, 3, lambda);
        let dp = protect_tree_dp(&inst, &attack, lambda).unwrap();
        let bf = best_protect(&inst, &VertexSet::new(), &attack).unwrap();
        let replay = ledger.play(&inst, &StrategyTriple::new(VertexSet::new(), attack, dp.protected));
        ledger.play(&inst, &bf.witness);
        mismatches += usize::from(dp.saved != bf.value || replay != dp.saved);
    }
    Outcome { ok: mismatches == 0, detail: format!("{mismatches} mismatches on {ORACLE_SAMPLES} trees") }
}

fn criterion4(ledger: &Ledger) -> Outcome {
    let mut rng = SeededRng::new(4);
    let mut mismatches = 0;
    for seed in 0..ORACLE_SAMPLES {
        let n = rng.range(1, 14) as usize;
        let lambda = rng.range(0, 4);
        let k = rng.range(1, 3.min(n as u64)) as usize;
        let attack = pick(&mut rng, n, k);
        let mode = if seed % 2 == 0 { WeightMode::Unit } else { WeightMode::Benefits { max: 9 } };
        let inst = gen_random_instance(Shape::Arborescence, n, seed, mode).unwrap().with_budgets(0, 3, lambda);
        let g = protect_arborescence_greedy(&inst, &attack, lambda).unwrap();
        let bf = best_protect(&inst, &VertexSet::new(), &attack).unwrap();
        let replay = ledger.play(&inst, &StrategyTriple::new(VertexSet::new(), attack, g.protected));
        ledger.play(&inst, &bf.witness);
        mismatches += usize::from(g.saved != bf.value || replay != g.saved);
    }
    Outcome { ok: mismatches == 0, detail: format!("{mismatches} mismatches on {ORACLE_SAMPLES} arborescences") }
}

fn criterion5(ledger: &Ledger) -> Outcome {
    let mut rng = SeededRng::new(5);
    let mut mismatches = 0;
    let e = VertexSet::new();
    for seed in 0..ORACLE_SAMPLES {
        let n = rng.range(1, 12) as usize;
        let phi = rng.range(0, 6);
        let shape = [Shape::Random, Shape::Tree, Shape::Star, Shape::Split][seed as usize % 4];
        let unit = gen_random_instance(shape, n, seed, WeightMode::Unit).unwrap().with_budgets(0, phi, 0);
        let plan = attack_components_unitary(&unit, &e).unwrap();
        let bf = best_attack(&unit, &e).unwrap();
        ledger.play(&unit, &bf.witness);
        let replay = ledger.play(&unit, &StrategyTriple::attack_only(plan.attacked));
        mismatches += usize::from(unit.total_benefit() - plan.infected_benefit != bf.value || replay != bf.value);

        let weighted = gen_random_instance(shape, n, seed, WeightMode::Random { max: 5 }).unwrap().with_budgets(0, phi, 0);
        let plan = attack_components_weighted(&weighted, &e).unwrap();
        let bf = best_attack(&weighted, &e).unwrap();
        ledger.play(&weighted, &bf.witness);
        let replay = ledger.play(&weighted, &StrategyTriple::attack_only(plan.attacked));
        mismatches += usize::from(weighted.total_benefit() - plan.infected_benefit != bf.value || replay != bf.value);
    }
    Outcome {
        ok: mismatches == 0,
        detail: format!("{mismatches} mismatches on {ORACLE_SAMPLES} unitary + {ORACLE_SAMPLES} weighted instances"),
    }
}

fn criterion6(ledger: &Ledger) -> Outcome {
    let caps = OracleCaps::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for r in Reduction::ALL {
        let rep = verify_reduction(r, ROUND_TRIP_SAMPLES, 7, &caps).unwrap();
        for o in &rep.outcomes {
            let src = mcn::reductions::random::random_source(r, o.seed);
            let cert = r.apply(&src).unwrap();
            if let Some(g) = cert.game() {
                if let Ok(ans) = cert.decide_target(Default::default(), 0) {
                    if let Some(TargetWitness::Strategy(s)) = ans.witness {
                        ledger.play(&g.instance, &s);
                    }
                }
            }
        }
        ok &= rep.passed();
        if !rep.passed() {
            parts.push(format!(
                "{r}: {} answer / {} witness failures",
                rep.answer_mismatches(),
                rep.witness_failures()
            ));
        }
    }
    let formula = CnfFormula::from_dimacs(TIK_FORMULA).unwrap();
    let table = DigitLayout::new(&formula).unwrap().table();
    let differing: Vec<usize> = table
        .lines()
        .zip(TIK_FIGURE.lines())
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(k, _)| k + 1)
        .collect();
    let table_ok = table == TIK_FIGURE;
    ok &= table_ok;
    if !table_ok {
        parts.push(format!("digit table differs from the figure on lines {differing:?}"));
    }
    let detail = if parts.is_empty() {
        format!("{} reductions x {ROUND_TRIP_SAMPLES} samples agree, digit table identical", Reduction::ALL.len())
    } else {
        parts.join("; ")
    };
    Outcome { ok, detail }
}

fn criterion7(ledger: &Ledger) -> Outcome {
    let mut rng = SeededRng::new(7);
    let mut failures = 0;
    for k in 0..PROPERTY_PAIRS {
        let n = rng.range(1, 10) as usize;
        let shape = Shape::ALL[k as usize % Shape::ALL.len()];
        let inst = gen_random_instance(shape, n, rng.next_u64(), WeightMode::Benefits { max: 9 })
            .unwrap()
            .with_budgets(n as u64, n as u64, n as u64);
        let mut strat = StrategyTriple::default();
        for v in 0..n {
            match rng.below(4) {
                1 => strat.d.insert(v),
                2 => strat.i.insert(v),
                3 => strat.p.insert(v),
                _ => true,
            };
        }
        let direct = ledger.play(&inst, &strat);
        match property1_decompose(&inst, &strat) {
            Ok(parts) if parts.total() == direct => {}
            _ => failures += 1,
        }
    }
    Outcome { ok: failures == 0, detail: format!("{failures} failures on {PROPERTY_PAIRS} pairs") }
}

fn criterion8() -> Outcome {
    let inst = gen_random_instance(Shape::Tree, 60, 8, WeightMode::Unit).unwrap().with_budgets(0, 5, 10);
    let attack = pick(&mut SeededRng::new(8), 60, 5);
    let sol = protect_tree_dp(&inst, &attack, 10).unwrap();
    let ok = sol.protected.len() <= 10;
    Outcome { ok, detail: format!("n=60, lambda=10, |I|=5: {} saved", sol.saved) }
}

fn main() {
    let ledger = Ledger { checked: Cell::new(0), failed: Cell::new(0) };
    let results = [
        report(1, "sample game optimum", Some(CRIT1_LIMIT), || criterion1(&ledger)),
        report(2, "polytree candidates and protection", Some(CRIT2_LIMIT), || criterion2(&ledger)),
        report(3, "tree DP vs brute force", Some(CRIT3_LIMIT), || criterion3(&ledger)),
        report(4, "arborescence greedy vs brute force", Some(CRIT4_LIMIT), || criterion4(&ledger)),
        report(5, "component attacks vs brute force", Some(CRIT5_LIMIT), || criterion5(&ledger)),
        report(6, "reduction round trips", Some(CRIT6_LIMIT), || criterion6(&ledger)),
        report(7, "deletion decomposition", Some(CRIT7_LIMIT), || criterion7(&ledger)),
        report(8, "tree DP at n = 60", Some(CRIT8_LIMIT), criterion8),
        report(9, "constraint consistency of every play", None, || Outcome {
            ok: ledger.failed.get() == 0 && ledger.checked.get() > 0,
            detail: format!("{} of {} outcomes inconsistent", ledger.failed.get(), ledger.checked.get()),
        }),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
