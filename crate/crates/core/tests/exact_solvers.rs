mod common;

use common::{ids, mask, set};
use mcn::exact::{
    best_attack, best_attack_protect, best_protect, best_protect_with, best_vaccination_attack, solve_mcn,
    GameValue, SearchLimits,
};
use mcn::propagation::check_trilevel_consistency;
use mcn::samples::{polytree_attack, polytree_sample, sample_game};
use mcn::{play, Graph, Instance, VertexSet};
use proptest::prelude::*;

fn replays(inst: &Instance, gv: &GameValue) -> bool {
    let out = play(inst, &gv.witness).unwrap();
    out.value == gv.value && check_trilevel_consistency(inst, &gv.witness, &out).is_consistent()
}

#[test]
fn polytree_protection_is_unique() {
    let inst = polytree_sample().with_budgets(0, 3, 2);
    let attack = polytree_attack(&inst);
    let gv = best_protect(&inst, &VertexSet::new(), &attack).unwrap();
    assert_eq!(gv.value, 8);
    assert_eq!(gv.witness.p, inst.vertices_named(&["1", "3"]).unwrap());
    assert!(replays(&inst, &gv));

    let i = mask(&attack);
    let optima: Vec<u32> = (0u32..1 << 12)
        .filter(|p| p & i == 0 && p.count_ones() <= 2)
        .filter(|&p| common::saved(&inst, 0, i, p) == 8)
        .collect();
    assert_eq!(optima, vec![mask(&gv.witness.p)]);

    let none = best_protect(&inst.clone().with_budgets(0, 3, 0), &VertexSet::new(), &attack).unwrap();
    assert!(none.witness.p.is_empty());
    assert_eq!(none.value, common::saved(&inst, 0, i, 0));
}

#[test]
fn path_protection_saves_one() {
    let inst = Instance::unitary(Graph::new(3, false, &[(0, 1), (1, 2)]).unwrap(), 0, 1, 1);
    assert_eq!(best_protect(&inst, &VertexSet::new(), &ids(&[1])).unwrap().value, 1);
}

#[test]
fn attacks_on_small_graphs() {
    let g = Graph::new(5, false, &[(0, 1), (1, 2), (3, 4)]).unwrap();
    let inst = Instance::unitary(g, 0, 1, 0);
    let gv = best_attack(&inst, &VertexSet::new()).unwrap();
    assert_eq!(gv.value, 2);
    assert!(replays(&inst, &gv));
    let calm = inst.clone().with_budgets(0, 0, 0);
    let gv = best_attack(&calm, &VertexSet::new()).unwrap();
    assert!(gv.witness.i.is_empty());
    assert_eq!(gv.value, 5);

    let edgeless = Instance::new(Graph::empty(3, false), vec![5, 4, 3], vec![1; 3], vec![2; 3], vec![1; 3], 0, 4, 0).unwrap();
    assert_eq!(edgeless.total_benefit() - best_attack(&edgeless, &VertexSet::new()).unwrap().value, 9);
}

#[test]
fn sample_game_subgames() {
    let inst = sample_game();
    let gv = best_attack_protect(&inst, &VertexSet::new()).unwrap();
    assert_eq!(gv.value, common::attack(&inst, 0, true));
    assert!(replays(&inst, &gv));

    let gv = solve_mcn(&inst).unwrap();
    assert_eq!(gv.value, 4);
    assert_eq!(gv.value, common::vaccinate(&inst, true));
    assert!(replays(&inst, &gv));
}

#[test]
fn vaccinating_a_path_centre() {
    let path: Vec<(usize, usize)> = (0..4).map(|v| (v, v + 1)).collect();
    let inst = Instance::unitary(Graph::new(5, false, &path).unwrap(), 1, 1, 0);
    let gv = best_vaccination_attack(&inst).unwrap();
    assert_eq!(gv.value, 3);
    assert_eq!(gv.witness.d, ids(&[2]));
}

#[test]
fn vaccinating_everything_saves_everything() {
    let inst = sample_game().with_benefits(vec![2, 7, 1, 8, 2, 8]).unwrap().with_budgets(6, 2, 0);
    assert_eq!(best_vaccination_attack(&inst).unwrap().value, inst.total_benefit());
}

fn small(directed: bool) -> impl Strategy<Value = Instance> {
    common::arb_instance(6, directed, 3, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn solvers_match_oracle(inst in prop_oneof![small(true), small(false)]) {
        let e = VertexSet::new();
        let gv = best_attack(&inst, &e).unwrap();
        prop_assert_eq!(gv.value, common::attack(&inst, 0, false));
        prop_assert!(replays(&inst, &gv));
        let gv = best_attack_protect(&inst, &e).unwrap();
        prop_assert_eq!(gv.value, common::attack(&inst, 0, true));
        prop_assert!(replays(&inst, &gv));
        let gv = best_vaccination_attack(&inst).unwrap();
        prop_assert_eq!(gv.value, common::vaccinate(&inst, false));
        prop_assert!(replays(&inst, &gv));
        let gv = solve_mcn(&inst).unwrap();
        prop_assert_eq!(gv.value, common::vaccinate(&inst, inst.lambda > 0));
        prop_assert!(replays(&inst, &gv));
    }

    #[test]
    fn levels_nest(inst in prop_oneof![small(true), small(false)], dm in 0u32..64) {
        let d = set(dm & ((1 << inst.n()) - 1));
        if d.iter().map(|&v| inst.c_vacc()[v]).sum::<u64>() <= inst.omega {
            let ap = best_attack_protect(&inst, &d).unwrap().value;
            let a = best_attack(&inst, &d).unwrap().value;
            prop_assert!(ap >= a);
            let flat = inst.clone().with_budgets(inst.omega, inst.phi, 0);
            prop_assert_eq!(best_attack_protect(&flat, &d).unwrap().value, best_attack(&flat, &d).unwrap().value);
        }
        let flat = inst.clone().with_budgets(inst.omega, inst.phi, 0);
        prop_assert_eq!(solve_mcn(&flat).unwrap().value, best_vaccination_attack(&flat).unwrap().value);
    }

    #[test]
    fn candidate_pruning_keeps_the_value(g in common::arb_graph(12, true), im in 0u32..4096, lambda in 0u64..4) {
        let dag: Vec<(usize, usize)> = g.arcs().filter(|&(u, v)| u < v).collect();
        let inst = Instance::unitary(Graph::new(g.n(), true, &dag).unwrap(), 0, 12, lambda);
        let i = set(im & ((1 << g.n()) - 1));
        let e = VertexSet::new();
        let on = SearchLimits { prune_candidates: true, ..SearchLimits::default() };
        let off = SearchLimits { prune_candidates: false, ..SearchLimits::default() };
        let a = best_protect_with(&inst, &e, &i, on).unwrap();
        let b = best_protect_with(&inst, &e, &i, off).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert!(replays(&inst, &a));
    }

    #[test]
    fn vaccination_attack_is_min_max_components(g in common::arb_graph(7, false), omega in 0u64..3, phi in 0u64..3) {
        let inst = Instance::unitary(g, omega, phi, 0);
        let n = inst.n();
        let best = (0u32..1 << n)
            .filter(|d| d.count_ones() as u64 <= omega)
            .map(|d| {
                let sizes = common::component_sizes(&inst, d);
                n as u64 - sizes.iter().take(phi as usize).sum::<u64>()
            })
            .max()
            .unwrap();
        prop_assert_eq!(best_vaccination_attack(&inst).unwrap().value, best);
    }
}
