//! Seeded random sources sized so that both sides of a round trip stay
//! within brute-force reach.

use num_bigint::BigUint;

use crate::gen::SeededRng;
use crate::reductions::cnf::CnfFormula;
use crate::reductions::sources::{
    BikInstance, DominatingSetInstance, KnapsackInstance, KnapsackItem, SourceProblem, SplitCnpInstance,
    TikInstance, TikItem,
};
use crate::reductions::Reduction;

fn literal(rng: &mut SeededRng, vars: usize) -> i32 {
    let v = rng.range(1, vars as u64) as i32;
    if rng.chance(1, 2) {
        -v
    } else {
        v
    }
}

fn clauses(rng: &mut SeededRng, vars: usize, count: usize, width: impl Fn(&mut SeededRng) -> usize) -> Vec<Vec<i32>> {
    (0..count)
        .map(|_| {
            let w = width(rng);
            (0..w).map(|_| literal(rng, vars)).collect()
        })
        .collect()
}

/// 1 to 3 variables, 2 to 6 clauses of exactly three (possibly repeated)
/// literals.
pub fn random_3sat(rng: &mut SeededRng) -> CnfFormula {
    let vars = rng.range(1, 3) as usize;
    let count = rng.range(2, 6) as usize;
    CnfFormula::new(vars, clauses(rng, vars, count, |_| 3)).expect("valid formula")
}

/// |X|, |Y| in 1..=2 with at most three variables, 1 to 3 clauses of
/// width three.
pub fn random_b2cnf(rng: &mut SeededRng) -> CnfFormula {
    let nx = rng.range(1, 2) as usize;
    let ny = if nx == 2 { 1 } else { rng.range(1, 2) as usize };
    let vars = nx + ny;
    let count = rng.range(1, 3) as usize;
    CnfFormula::new(vars, clauses(rng, vars, count, |_| 3))
        .and_then(|f| f.with_blocks((1..=nx).collect(), (nx + 1..=vars).collect(), vec![]))
        .expect("valid formula")
}

/// One variable per block, 1 or 2 clauses of width 1 to 3.
pub fn random_b3cnf(rng: &mut SeededRng) -> CnfFormula {
    let count = rng.range(1, 2) as usize;
    CnfFormula::new(3, clauses(rng, 3, count, |r| r.range(1, 3) as usize))
        .and_then(|f| f.with_blocks(vec![1], vec![2], vec![3]))
        .expect("valid formula")
}

fn items(rng: &mut SeededRng, count: usize, max_a: u64, max_p: u64) -> Vec<KnapsackItem> {
    (0..count)
        .map(|_| KnapsackItem {
            a: rng.range(1, max_a),
            p: rng.range(1, max_p),
        })
        .collect()
}

pub fn random_knapsack(rng: &mut SeededRng) -> KnapsackInstance {
    let n = rng.range(1, 5) as usize;
    let items = items(rng, n, 6, 9);
    let (sa, sp) = (items.iter().map(|i| i.a).sum(), items.iter().map(|i| i.p).sum::<u64>());
    KnapsackInstance {
        capacity: rng.range(1, sa),
        goal: rng.range(1, sp + 1),
        items,
    }
}

/// Non-trivial BIK: `K̄ ≤ B < Σp`. The leader capacity may be zero.
pub fn random_bik(rng: &mut SeededRng) -> BikInstance {
    let n = rng.range(2, 4) as usize;
    let items = items(rng, n, 4, 6);
    let (sa, sp) = (items.iter().map(|i| i.a).sum(), items.iter().map(|i| i.p).sum::<u64>());
    let max_profit = rng.range(1, sp - 1);
    BikInstance {
        leader_capacity: rng.range(0, sa),
        goal: rng.range(1, max_profit),
        max_profit,
        items,
    }
}

pub fn random_tik(rng: &mut SeededRng) -> TikInstance {
    let n = rng.range(1, 3) as usize;
    let mut raw = Vec::new();
    for _ in 0..n {
        raw.push([rng.range(1, 3), rng.range(1, 3), rng.range(1, 5)]);
    }
    let sum = |k: usize| raw.iter().map(|r| r[k]).sum::<u64>();
    let max_profit = rng.range(1, sum(2));
    let tik = TikInstance {
        first_capacity: rng.range(1, sum(0)).into(),
        second_capacity: rng.range(1, sum(1)).into(),
        goal: rng.range(1, max_profit).into(),
        max_profit: max_profit.into(),
        items: raw
            .iter()
            .map(|r| TikItem {
                a2: BigUint::from(r[0]),
                a: BigUint::from(r[1]),
                p: BigUint::from(r[2]),
            })
            .collect(),
    };
    tik
}

pub fn random_dominating_set(rng: &mut SeededRng) -> DominatingSetInstance {
    let n = rng.range(1, 6) as usize;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(2, 5) {
                edges.push([u, v]);
            }
        }
    }
    DominatingSetInstance {
        n,
        edges,
        budget: rng.range(0, n as u64) as usize,
    }
}

/// Clique on `0..k`, independent side `k..n`, with the clique and
/// independent sizes drawn from the given ranges.
pub fn random_split(rng: &mut SeededRng, clique: (u64, u64), independent: (u64, u64)) -> SplitCnpInstance {
    let k = rng.range(clique.0, clique.1) as usize;
    let m = rng.range(independent.0, independent.1) as usize;
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push([u, v]);
        }
    }
    for w in k..k + m {
        for u in 0..k {
            if rng.chance(1, 2) {
                edges.push([u, w]);
            }
        }
    }
    let n = (k + m) as u64;
    SplitCnpInstance {
        clique: (0..k).collect(),
        independent: (k..k + m).collect(),
        edges,
        budget: rng.range(0, n) as usize,
        goal: rng.range(0, n * (n - 1) / 2),
    }
}

/// A random source suited to `reduction`, determined by `seed`.
pub fn random_source(reduction: Reduction, seed: u64) -> SourceProblem {
    let rng = &mut SeededRng::new(seed);
    match reduction {
        Reduction::Sat3 => SourceProblem::Sat3(random_3sat(rng)),
        Reduction::B2Cnf => SourceProblem::B2Cnf(random_b2cnf(rng)),
        Reduction::B3CnfTik => SourceProblem::B3Cnf(random_b3cnf(rng)),
        Reduction::Knapsack => SourceProblem::Knapsack(random_knapsack(rng)),
        Reduction::Bik | Reduction::BikVaccination => SourceProblem::Bik(random_bik(rng)),
        Reduction::Tik => SourceProblem::Tik(random_tik(rng)),
        Reduction::DominatingSet => SourceProblem::DominatingSet(random_dominating_set(rng)),
        Reduction::CnpSplit => SourceProblem::CnpSplit(random_split(rng, (1, 4), (0, 3))),
        Reduction::CnpSplitDir => {
            let mut s = random_split(rng, (2, 4), (0, 3));
            s.budget %= s.clique.len();
            SourceProblem::CnpSplit(s)
        }
    }
}
