//! The gadget compilers. Every builder validates its source, lays out the
//! target vertices with a provenance [`Role`] each, and states the decision
//! question the target must answer.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::Instance;
use crate::reductions::cnf::CnfFormula;
use crate::reductions::sources::{
    BikInstance, DominatingSetInstance, KnapsackInstance, SourceProblem, SplitCnpInstance, TikInstance, TikItem,
};
use crate::reductions::{
    Comparison, GameTarget, Measure, Question, Reduction, ReductionCertificate, Subgame, Target,
};

/// What a target vertex (or TIK item) stands for in the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Copy of a source vertex.
    Copy(usize),
    /// The single attacked vertex added to protection gadgets.
    Attacker,
    /// Centre of a star or tree gadget.
    Root,
    /// Knapsack item; `layer` is 1..=3 along the three-vertex item chains
    /// and 0 elsewhere.
    Item { item: usize, layer: u8 },
    /// Literal vertex or item, DIMACS-signed.
    Literal(i32),
    Path { var: usize, k: usize },
    Clique { lit: i32, k: usize },
    Clause(usize),
    /// Slack item `slot` (1-based) of a clause.
    ClauseSlot { clause: usize, slot: u8 },
    /// `t¹_v` or `t²_v` of a clique vertex `v`.
    Split { vertex: usize, layer: u8 },
}

fn literal_name(f: &CnfFormula, lit: i32) -> String {
    let name = f.var_name(lit.unsigned_abs() as usize);
    if lit < 0 {
        format!("~{name}")
    } else {
        name
    }
}

impl Role {
    pub fn label(&self, formula: Option<&CnfFormula>) -> String {
        let lit = |l: i32| match formula {
            Some(f) => literal_name(f, l),
            None => l.to_string(),
        };
        match *self {
            Role::Copy(v) => format!("vertex:{v}"),
            Role::Attacker => "attacker".into(),
            Role::Root => "root".into(),
            Role::Item { item, layer: 0 } => format!("item:{item}"),
            Role::Item { item, layer } => format!("item:{item}:v{layer}"),
            Role::Literal(l) => format!("literal:{}", lit(l)),
            Role::Path { var, k } => format!("path:{}:{k}", lit(var as i32)),
            Role::Clique { lit: l, k } => format!("clique:{}:{k}", lit(l)),
            Role::Clause(c) => format!("clause:{}", c + 1),
            Role::ClauseSlot { clause, slot } => format!("clause:{}:slot{slot}", clause + 1),
            Role::Split { vertex, layer } => format!("t{layer}:{vertex}"),
        }
    }
}

/// Per-vertex weights in the order benefit, ĉ, h, c.
type Weights = [u64; 4];
const UNIT: Weights = [1, 1, 1, 1];

#[derive(Default)]
struct Builder {
    roles: Vec<Role>,
    weights: Vec<Weights>,
    arcs: Vec<(usize, usize)>,
}

impl Builder {
    fn add(&mut self, role: Role, w: Weights) -> usize {
        self.roles.push(role);
        self.weights.push(w);
        self.roles.len() - 1
    }

    fn arc(&mut self, u: usize, v: usize) {
        self.arcs.push((u, v));
    }

    fn find(&self, role: Role) -> usize {
        self.roles.iter().position(|&r| r == role).expect("role was added")
    }

    fn finish(
        self,
        directed: bool,
        budgets: [u64; 3],
        formula: Option<&CnfFormula>,
    ) -> Result<(Instance, Vec<Role>)> {
        let n = self.roles.len();
        let graph = Graph::from_arcs_dedup(n, directed, &self.arcs)?;
        let col = |k: usize| self.weights.iter().map(|w| w[k]).collect::<Vec<_>>();
        let [omega, phi, lambda] = budgets;
        let names = self.roles.iter().map(|r| r.label(formula)).collect();
        let inst = Instance::new(graph, col(0), col(1), col(2), col(3), omega, phi, lambda)?.with_names(names)?;
        Ok((inst, self.roles))
    }
}

fn game(
    reduction: Reduction,
    source: SourceProblem,
    (instance, roles): (Instance, Vec<Role>),
    fixed_i: VertexSet,
    question: Question,
) -> ReductionCertificate {
    ReductionCertificate {
        reduction,
        source,
        target: Target::Game(GameTarget {
            instance,
            roles,
            fixed_d: VertexSet::new(),
            fixed_i,
            question,
        }),
    }
}

fn question(game: Subgame, measure: Measure, comparison: Comparison, threshold: u64) -> Question {
    Question {
        game,
        measure,
        comparison,
        threshold,
    }
}

/// Largest infected count `K` with `binom(K - 1, 2) <= K̄`.
pub fn cnp_split_threshold(kbar: u64) -> u64 {
    (3 + (8 * kbar + 1).isqrt()) / 2
}

/// Threshold of the directed split gadget, `⌊2 + √(8K̄ + 1)⌋`.
pub fn cnp_split_dir_threshold(kbar: u64) -> u64 {
    2 + (8 * kbar + 1).isqrt()
}

/// Adds a vertex `u` joined to the whole clique and attacks it.
pub fn reduce_cnp_split_to_protect(src: &SplitCnpInstance) -> Result<ReductionCertificate> {
    let g = src.graph()?;
    let mut b = Builder::default();
    for v in 0..src.n() {
        b.add(Role::Copy(v), UNIT);
    }
    let u = b.add(Role::Attacker, UNIT);
    b.arcs.extend(g.edge_list());
    for &c in &src.clique {
        b.arc(u, c);
    }
    let built = b.finish(false, [0, 1, src.budget as u64], None)?;
    Ok(game(
        Reduction::CnpSplit,
        SourceProblem::CnpSplit(src.clone()),
        built,
        VertexSet::from([u]),
        question(Subgame::Protect, Measure::Infected, Comparison::AtMost, cnp_split_threshold(src.goal)),
    ))
}

/// Same graph; the attacker gets `B` vertices and the protector all but
/// `B + 1` of the rest.
pub fn reduce_dominating_set_to_attack_protect(src: &DominatingSetInstance) -> Result<ReductionCertificate> {
    let g = src.graph()?;
    let n = src.n;
    if src.budget > n {
        return Err(Error::Precondition(format!("B = {} exceeds |V| = {n}", src.budget)));
    }
    let mut b = Builder::default();
    for v in 0..n {
        b.add(Role::Copy(v), UNIT);
    }
    b.arcs.extend(g.edge_list());
    let phi = src.budget as u64;
    let lambda = (n as u64).saturating_sub(phi + 1);
    let k = (phi + 1).min(n as u64);
    let built = b.finish(false, [0, phi, lambda], None)?;
    Ok(game(
        Reduction::DominatingSet,
        SourceProblem::DominatingSet(src.clone()),
        built,
        VertexSet::new(),
        question(Subgame::AttackProtect, Measure::Infected, Comparison::AtLeast, k),
    ))
}

/// Edgeless graph with one vertex per item; attacking costs the weight.
pub fn reduce_knapsack_to_attack_w(src: &KnapsackInstance) -> Result<ReductionCertificate> {
    src.validate()?;
    let mut b = Builder::default();
    for (k, it) in src.items.iter().enumerate() {
        b.add(Role::Item { item: k, layer: 0 }, [it.p, 1, it.a, 1]);
    }
    let built = b.finish(false, [0, src.capacity, 0], None)?;
    Ok(game(
        Reduction::Knapsack,
        SourceProblem::Knapsack(src.clone()),
        built,
        VertexSet::new(),
        question(Subgame::Attack, Measure::Infected, Comparison::AtLeast, src.goal),
    ))
}

fn star(b: &mut Builder, root: Weights, leaves: impl Iterator<Item = Weights>) {
    let r = b.add(Role::Root, root);
    for (k, w) in leaves.enumerate() {
        let v = b.add(Role::Item { item: k, layer: 0 }, w);
        b.arc(r, v);
    }
}

/// Star whose centre outweighs every leaf together; the leader's
/// interdiction becomes the attack on leaves, the follower's packing the
/// protection.
pub fn reduce_bik_to_attack_protect_w(src: &BikInstance) -> Result<ReductionCertificate> {
    src.require_nontrivial()?;
    let total: u64 = src.items.iter().map(|it| it.p).sum();
    let mut b = Builder::default();
    star(&mut b, [total + 1, 1, 1, 1], src.items.iter().map(|it| [it.p, 1, it.a, it.p]));
    let built = b.finish(false, [0, src.leader_capacity + 1, src.max_profit], None)?;
    Ok(game(
        Reduction::Bik,
        SourceProblem::Bik(src.clone()),
        built,
        VertexSet::new(),
        question(Subgame::AttackProtect, Measure::Saved, Comparison::Below, src.goal),
    ))
}

/// Star whose centre is worth `K̄`; the leader's interdiction becomes
/// vaccination, the follower's packing the attack.
pub fn reduce_bik_to_vaccination_attack_w(src: &BikInstance) -> Result<ReductionCertificate> {
    src.require_nontrivial()?;
    let mut b = Builder::default();
    star(&mut b, [src.goal, 1, 1, 1], src.items.iter().map(|it| [it.p, it.a, it.p, 1]));
    let built = b.finish(false, [src.leader_capacity + 1, src.max_profit, 0], None)?;
    Ok(game(
        Reduction::BikVaccination,
        SourceProblem::Bik(src.clone()),
        built,
        VertexSet::new(),
        question(Subgame::VaccinationAttack, Measure::Infected, Comparison::Below, src.goal),
    ))
}

fn to_u64(v: &BigUint, what: &str) -> Result<u64> {
    v.to_u64()
        .filter(|&x| x < u64::MAX / 2)
        .ok_or_else(|| Error::Precondition(format!("{what} = {v} does not fit the 64-bit weights of a game instance")))
}

fn sentinel(budget: u64) -> Result<u64> {
    budget
        .checked_add(1)
        .ok_or_else(|| Error::Precondition("budget too large for a sentinel cost".into()))
}

/// Root `r` joined to one chain `v¹–v²–v³` per item. Only `v¹` is
/// protectable (cost p), only `v²` carries benefit (p), only `v³` is
/// vaccinable (a′) or attackable (a). Every other cost is one more than the
/// matching budget.
pub fn reduce_tik_to_mcn_w(src: &TikInstance) -> Result<ReductionCertificate> {
    src.validate()?;
    let omega = to_u64(&src.first_capacity, "A'")?;
    let phi = sentinel(to_u64(&src.second_capacity, "A")?)?;
    let lambda = to_u64(&src.max_profit, "B")?;
    let k = to_u64(&src.goal, "Kbar")?;
    let (no_vacc, no_att, no_prot) = (sentinel(omega)?, sentinel(phi)?, sentinel(lambda)?);
    let mut b = Builder::default();
    let r = b.add(Role::Root, [k, sentinel(omega.max(phi))?, 1, 1]);
    for (o, it) in src.items.iter().enumerate() {
        let p = to_u64(&it.p, "p")?;
        let v1 = b.add(Role::Item { item: o, layer: 1 }, [0, no_vacc, no_att, p]);
        let v2 = b.add(Role::Item { item: o, layer: 2 }, [p, no_vacc, no_att, no_prot]);
        let v3 = b.add(
            Role::Item { item: o, layer: 3 },
            [0, to_u64(&it.a2, "a'")?, to_u64(&it.a, "a")?, no_prot],
        );
        b.arc(r, v1);
        b.arc(v1, v2);
        b.arc(v2, v3);
    }
    let built = b.finish(false, [omega, phi, lambda], None)?;
    Ok(game(
        Reduction::Tik,
        SourceProblem::Tik(src.clone()),
        built,
        VertexSet::new(),
        question(Subgame::Mcn, Measure::Saved, Comparison::AtLeast, k),
    ))
}

/// Literal vertices feed a shared directed path per variable and the
/// clauses they satisfy.
pub fn reduce_3sat_to_attack_dir(f: &CnfFormula) -> Result<ReductionCertificate> {
    f.require_width(3, 3)?;
    let (nu, nc) = (f.num_vars(), f.clauses().len());
    if nc == 0 || nu == 0 {
        return Err(Error::Precondition("need at least one variable and one clause".into()));
    }
    let len = nc + nu - 1;
    let mut b = Builder::default();
    for u in 1..=nu {
        let pos = b.add(Role::Literal(u as i32), UNIT);
        let neg = b.add(Role::Literal(-(u as i32)), UNIT);
        let mut prev = None;
        for k in 0..len {
            let node = b.add(Role::Path { var: u, k }, UNIT);
            match prev {
                None => {
                    b.arc(pos, node);
                    b.arc(neg, node);
                }
                Some(p) => b.arc(p, node),
            }
            prev = Some(node);
        }
    }
    link_clauses(&mut b, f);
    let (nu, nc) = (nu as u64, nc as u64);
    let built = b.finish(true, [0, nu, 0], Some(f))?;
    Ok(game(
        Reduction::Sat3,
        SourceProblem::Sat3(f.clone()),
        built,
        VertexSet::new(),
        question(Subgame::Attack, Measure::Infected, Comparison::AtLeast, nu * (nu + nc) + nc),
    ))
}

fn link_clauses(b: &mut Builder, f: &CnfFormula) {
    for (c, clause) in f.clauses().iter().enumerate() {
        let vc = b.add(Role::Clause(c), UNIT);
        for &lit in clause {
            let v = b.find(Role::Literal(lit));
            b.arc(v, vc);
        }
    }
}

fn clique(b: &mut Builder, lit: i32, size: usize) -> usize {
    let first = b.roles.len();
    for k in 0..size {
        b.add(Role::Clique { lit, k }, UNIT);
    }
    for u in first..first + size {
        for v in first..first + size {
            if u != v {
                b.arc(u, v);
            }
        }
    }
    first
}

/// Cliques replace the paths; each X variable gets a clique per literal
/// and an antiparallel arc pair between its two literal vertices.
pub fn reduce_b2cnf_to_vaccination_attack_dir(f: &CnfFormula) -> Result<ReductionCertificate> {
    f.require_width(3, 3)?;
    let blocks = f.require_blocks(false)?;
    let (nx, ny, nc) = (blocks.x.len(), blocks.y.len(), f.clauses().len());
    if nc == 0 {
        return Err(Error::Precondition("need at least one clause".into()));
    }
    let size = nc + ny - 1;
    let mut b = Builder::default();
    for &x in &blocks.x {
        let x = x as i32;
        let pos = b.add(Role::Literal(x), UNIT);
        let neg = b.add(Role::Literal(-x), UNIT);
        let kp = clique(&mut b, x, size);
        let kn = clique(&mut b, -x, size);
        b.arc(pos, kp);
        b.arc(neg, kn);
        b.arc(pos, neg);
        b.arc(neg, pos);
    }
    for &y in &blocks.y {
        let y = y as i32;
        let pos = b.add(Role::Literal(y), UNIT);
        let neg = b.add(Role::Literal(-y), UNIT);
        let k = clique(&mut b, y, size);
        b.arc(pos, k);
        b.arc(neg, k);
    }
    link_clauses(&mut b, f);
    let (nx, ny, nc) = (nx as u64, ny as u64, nc as u64);
    let k = (nx + ny) * (ny + nc) + nc - 1;
    let built = b.finish(true, [nx, nx + ny, 0], Some(f))?;
    Ok(game(
        Reduction::B2Cnf,
        SourceProblem::B2Cnf(f.clone()),
        built,
        VertexSet::new(),
        question(Subgame::VaccinationAttack, Measure::Infected, Comparison::AtMost, k),
    ))
}

/// DAG gadget: each clique vertex becomes an arc `t¹_v → t²_v`, the
/// attacked `u` feeds every `t¹_v`, and `t¹_r` feeds the independent
/// neighbours of `r`.
pub fn reduce_cnp_split_to_protect_dir(src: &SplitCnpInstance) -> Result<ReductionCertificate> {
    let g = src.graph()?;
    if src.budget >= src.clique.len() {
        return Err(Error::Precondition(format!(
            "B = {} must be below the clique size {} (the instance is trivial otherwise)",
            src.budget,
            src.clique.len()
        )));
    }
    let mut b = Builder::default();
    let mut t1 = vec![None; src.n()];
    for &v in &src.clique {
        let a = b.add(Role::Split { vertex: v, layer: 1 }, UNIT);
        let c = b.add(Role::Split { vertex: v, layer: 2 }, UNIT);
        b.arc(a, c);
        t1[v] = Some(a);
    }
    let mut copy = vec![None; src.n()];
    for &w in &src.independent {
        copy[w] = Some(b.add(Role::Copy(w), UNIT));
    }
    let u = b.add(Role::Attacker, UNIT);
    for (x, y) in g.edge_list() {
        for (r, w) in [(x, y), (y, x)] {
            if let (Some(tr), Some(cw)) = (t1[r], copy[w]) {
                b.arc(tr, cw);
            }
        }
    }
    for &v in &src.clique {
        b.arc(u, t1[v].expect("clique vertex"));
    }
    let built = b.finish(true, [0, 1, src.budget as u64], None)?;
    Ok(game(
        Reduction::CnpSplitDir,
        SourceProblem::CnpSplit(src.clone()),
        built,
        VertexSet::from([u]),
        question(Subgame::Protect, Measure::Infected, Comparison::AtMost, cnp_split_dir_threshold(src.goal)),
    ))
}

/// Base-10 digit layout of the quantified-formula to TIK construction.
/// Position 0 is least significant; the clauses take the lowest `|C|`
/// positions with the first clause highest among them, then come X, Y and
/// Z in block order, then the forbidden digit.
pub struct DigitLayout {
    width: usize,
    columns: Vec<String>,
    rows: Vec<(String, String, Vec<u8>)>,
    items: Vec<(Role, [Vec<u8>; 3])>,
    caps: [Vec<u8>; 4],
}

impl DigitLayout {
    pub fn new(f: &CnfFormula) -> Result<Self> {
        f.require_width(1, 3)?;
        let blocks = f.require_blocks(true)?;
        let m = f.clauses().len();
        let vars: Vec<usize> = blocks.x.iter().chain(&blocks.y).chain(&blocks.z).copied().collect();
        let width = vars.len() + m + 1;
        let forbidden = width - 1;
        let clause_pos = |c: usize| m - 1 - c;
        let mut var_pos = vec![0; f.num_vars() + 1];
        for (j, &v) in vars.iter().enumerate() {
            var_pos[v] = m + j;
        }
        let digits = |set: &[(usize, u8)]| {
            let mut d = vec![0u8; width];
            for &(pos, val) in set {
                d[pos] = val;
            }
            d
        };

        let mut columns = vec![String::new(); width];
        columns[forbidden] = "forbidden".into();
        for &v in &vars {
            columns[var_pos[v]] = f.var_name(v);
        }
        for c in 0..m {
            columns[clause_pos(c)] = format!("c{}", c + 1);
        }
        columns.reverse();

        let mut items = Vec::new();
        let mut rows = Vec::new();
        for v in 1..=f.num_vars() {
            for lit in [v as i32, -(v as i32)] {
                let w = digits(&[(var_pos[v], 1)]);
                let mut p = w.clone();
                for (c, clause) in f.clauses().iter().enumerate() {
                    if clause.contains(&lit) {
                        p[clause_pos(c)] = 1;
                    }
                }
                let name = format!("o_{}", literal_name(f, lit));
                rows.push((name, "a'=a".to_string(), w.clone()));
                rows.push((String::new(), "p".to_string(), p.clone()));
                items.push((Role::Literal(lit), [w.clone(), w, p]));
            }
        }
        for (c, clause) in f.clauses().iter().enumerate() {
            for slot in 1..=clause.len() as u8 {
                let w = digits(&[(forbidden, 1)]);
                let p = digits(&[(clause_pos(c), 4 - slot)]);
                let name = format!("o{slot}_c{}", c + 1);
                rows.push((name, "a'".to_string(), w.clone()));
                rows.push((String::new(), "a".to_string(), w.clone()));
                rows.push((String::new(), "p".to_string(), p.clone()));
                items.push((Role::ClauseSlot { clause: c, slot }, [w.clone(), w, p]));
            }
        }

        let mut a1 = Vec::new();
        let mut a2 = Vec::new();
        let mut bb = Vec::new();
        let mut kk = Vec::new();
        for &x in &blocks.x {
            a1.push((var_pos[x], 1));
            a2.push((var_pos[x], 2));
            bb.push((var_pos[x], 1));
            kk.push((var_pos[x], 1));
        }
        for &y in &blocks.y {
            a2.push((var_pos[y], 1));
            bb.push((var_pos[y], 2));
            kk.push((var_pos[y], 1));
        }
        for &z in &blocks.z {
            bb.push((var_pos[z], 1));
            kk.push((var_pos[z], 1));
        }
        for c in 0..m {
            bb.push((clause_pos(c), 4));
            kk.push((clause_pos(c), 4));
        }
        let caps = [digits(&a1), digits(&a2), digits(&bb), digits(&kk)];
        for (label, d) in ["A'", "A", "B", "Kbar"].into_iter().zip(&caps) {
            rows.push((String::new(), label.to_string(), d.clone()));
        }
        Ok(DigitLayout {
            width,
            columns,
            rows,
            items,
            caps,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// The digit table, most significant digit first, one row per weight,
    /// profit or bound.
    pub fn table(&self) -> String {
        let widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        let mut out = String::new();
        let line = |item: &str, row: &str, cells: Vec<String>| {
            let mut s = format!("{item:<8}{row:<6}");
            for (cell, w) in cells.iter().zip(&widths) {
                s.push_str(&format!("{cell:>w$} "));
            }
            s.trim_end().to_string() + "\n"
        };
        out.push_str(&line("O", "", self.columns.clone()));
        for (item, row, digits) in &self.rows {
            let cells = digits.iter().rev().map(|d| d.to_string()).collect();
            out.push_str(&line(item, row, cells));
        }
        out
    }

    fn number(digits: &[u8]) -> BigUint {
        digits
            .iter()
            .rev()
            .fold(BigUint::default(), |acc, &d| acc * 10u32 + BigUint::from(d))
    }
}

/// Subset-sum style digit encoding of ∃X ∀Y ∃Z E into TIK.
pub fn reduce_b3cnf_to_tik(f: &CnfFormula) -> Result<ReductionCertificate> {
    let layout = DigitLayout::new(f)?;
    let num = DigitLayout::number;
    let items = layout
        .items
        .iter()
        .map(|(_, [a2, a, p])| TikItem {
            a2: num(a2),
            a: num(a),
            p: num(p),
        })
        .collect();
    let [c1, c2, b, k] = &layout.caps;
    let tik = TikInstance {
        items,
        first_capacity: num(c1),
        second_capacity: num(c2),
        max_profit: num(b),
        goal: num(k),
    };
    Ok(ReductionCertificate {
        reduction: Reduction::B3CnfTik,
        source: SourceProblem::B3Cnf(f.clone()),
        target: Target::Tik {
            instance: tik,
            roles: layout.items.iter().map(|(r, _)| *r).collect(),
        },
    })
}
