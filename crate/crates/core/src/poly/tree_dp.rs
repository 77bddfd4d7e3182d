//! Optimal protection on undirected forests with unit benefits and unit
//! protection costs, by dynamic programming over rooted subtrees.
//!
//! For a vertex `a` with subtree `T_a`, `F_a(c, m, σ)` is the largest number
//! of vertices of `T_a` that are already known to be saved when exactly `c`
//! vertices of `T_a` are protected. The pair `(m, σ)` encodes the status of
//! `a`:
//!
//! * `(0, 0)`: `a` is protected;
//! * `(0, 1)`: `a` is attacked;
//! * `m ≥ 1`: `a` is neither, its open component inside `T_a` has `m`
//!   vertices, and `σ = 1` iff that component touches an attacked vertex.
//!
//! Vertices of an open component are not counted in `F_a`; they are credited
//! `m(1 − σ)` when a protected parent closes the component, or at the root.
//! Children are merged right to left through `G_{a_i}`, the same table
//! restricted to `a` plus the subtrees of children `a_i..a_s`.

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::instance::Instance;

/// A DP table over `(c, m, σ)`; `None` is −∞.
#[derive(Debug, Clone)]
struct Table {
    cdim: usize,
    mdim: usize,
    data: Vec<Option<u32>>,
}

impl Table {
    fn new(cdim: usize, mdim: usize) -> Self {
        Table {
            cdim,
            mdim,
            data: vec![None; cdim * mdim * 2],
        }
    }

    fn get(&self, c: usize, m: usize, s: usize) -> Option<u32> {
        if c >= self.cdim || m >= self.mdim {
            return None;
        }
        self.data[(c * self.mdim + m) * 2 + s]
    }

    fn raise(&mut self, c: usize, m: usize, s: usize, v: u32) {
        let cell = &mut self.data[(c * self.mdim + m) * 2 + s];
        if cell.is_none_or(|x| v > x) {
            *cell = Some(v);
        }
    }

    /// All finite entries as `(c, m, σ, value)`.
    fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        self.data.iter().enumerate().filter_map(move |(k, v)| {
            v.map(|v| (k / 2 / self.mdim, k / 2 % self.mdim, k % 2, v))
        })
    }
}

/// Closing credit `m(1 − σ)` for an open component.
fn credit(m: usize, s: usize) -> u32 {
    if s == 0 {
        m as u32
    } else {
        0
    }
}

/// DP tables for one rooted tree.
#[derive(Debug, Clone)]
pub struct DpState {
    root: usize,
    lambda: usize,
    children: Vec<Vec<usize>>,
    attacked: Vec<bool>,
    /// `g[a][i]` is `G_{a_i}`; `g[a][0]` is `F_a`. Leaves keep a single table.
    g: Vec<Vec<Table>>,
}

impl DpState {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// `F_a(c, m, σ)`, or `None` for −∞ (including out-of-range indices).
    pub fn f(&self, a: usize, c: usize, m: usize, sigma: usize) -> Option<u32> {
        self.g.get(a)?.first()?.get(c, m, sigma)
    }

    /// Finite root entries `(c, m, σ, F_r)`.
    pub fn root_entries(&self) -> Vec<(usize, usize, usize, u32)> {
        self.g[self.root][0].entries().collect()
    }

    /// Best value with exactly `c` protections, root credit included.
    fn best_exact(&self, c: usize) -> Option<(u32, usize, usize)> {
        let f = &self.g[self.root][0];
        let mut best: Option<(u32, usize, usize)> = None;
        for m in 0..f.mdim {
            for s in 0..2 {
                if let Some(v) = f.get(c, m, s) {
                    let v = v + credit(m, s);
                    if best.is_none_or(|b| v > b.0) {
                        best = Some((v, m, s));
                    }
                }
            }
        }
        best
    }

    fn build(inst: &Instance, attacked: &[bool], comp: &[usize], root: usize, lambda: usize) -> Self {
        let n = inst.n();
        let g = inst.graph();
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(comp.len());
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &w in g.successors(u) {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    children[u].push(w);
                    stack.push(w);
                }
            }
        }
        let mut size = vec![0usize; n];
        let mut tables: Vec<Vec<Table>> = vec![Vec::new(); n];
        for &a in order.iter().rev() {
            size[a] = 1 + children[a].iter().map(|&k| size[k]).sum::<usize>();
            tables[a] = Self::vertex_tables(&children[a], &size, &tables, attacked[a], lambda);
        }
        DpState {
            root,
            lambda,
            children,
            attacked: attacked.to_vec(),
            g: tables,
        }
    }

    fn vertex_tables(
        ch: &[usize],
        size: &[usize],
        tables: &[Vec<Table>],
        is_attacked: bool,
        lambda: usize,
    ) -> Vec<Table> {
        if ch.is_empty() {
            let mut t = Table::new(lambda.min(1) + 1, 2);
            if is_attacked {
                t.raise(0, 0, 1, 0);
            } else {
                t.raise(0, 1, 0, 0);
                if lambda >= 1 {
                    t.raise(1, 0, 0, 1);
                }
            }
            return vec![t];
        }
        let s = ch.len();
        let mut out: Vec<Table> = Vec::with_capacity(s);
        let mut rest = 1;
        for i in (0..s).rev() {
            let k = ch[i];
            let fk = &tables[k][0];
            rest += size[k];
            let mut t = Table::new(lambda.min(rest) + 1, rest + 1);
            if i == s - 1 {
                for (c, m, sg, v) in fk.entries() {
                    if is_attacked {
                        t.raise(c, 0, 1, v);
                    } else {
                        if c < lambda {
                            t.raise(c + 1, 0, 0, 1 + v + credit(m, sg));
                        }
                        t.raise(c, m + 1, sg, v);
                    }
                }
            } else {
                let r = out.last().expect("suffix table exists");
                for (c1, m1, s1, v1) in fk.entries() {
                    for c2 in 0..r.cdim {
                        let c = c1 + c2;
                        if c > lambda {
                            break;
                        }
                        if is_attacked {
                            if let Some(v2) = r.get(c2, 0, 1) {
                                t.raise(c, 0, 1, v1 + v2);
                            }
                            continue;
                        }
                        if let Some(v2) = r.get(c2, 0, 0) {
                            t.raise(c, 0, 0, v1 + credit(m1, s1) + v2);
                        }
                        for m2 in 1..r.mdim {
                            for s2 in 0..2 {
                                if let Some(v2) = r.get(c2, m2, s2) {
                                    t.raise(c, m1 + m2, s1.max(s2), v1 + v2);
                                }
                            }
                        }
                    }
                }
            }
            out.push(t);
        }
        out.reverse();
        out
    }

    /// Collects the protected vertices of an optimal plan reaching
    /// `G_{a_i}(c, m, σ)`.
    fn recover(&self, a: usize, i: usize, c: usize, m: usize, s: usize, out: &mut VertexSet) {
        let target = self.g[a][i].get(c, m, s).expect("backtracking follows finite entries");
        let ch = &self.children[a];
        if ch.is_empty() {
            if (m, s) == (0, 0) {
                out.insert(a);
            }
            return;
        }
        let k = ch[i];
        let fk = &self.g[k][0];
        let last = i + 1 == ch.len();
        if last {
            if self.attacked[a] {
                let (m1, s1) = find(fk, c, |_, _, v| v == target);
                self.recover(k, 0, c, m1, s1, out);
            } else if (m, s) == (0, 0) {
                out.insert(a);
                let (m1, s1) = find(fk, c - 1, |m1, s1, v| 1 + v + credit(m1, s1) == target);
                self.recover(k, 0, c - 1, m1, s1, out);
            } else {
                self.recover(k, 0, c, m - 1, s, out);
            }
            return;
        }
        let r = &self.g[a][i + 1];
        for (c1, m1, s1, v1) in fk.entries() {
            if c1 > c || c - c1 >= r.cdim {
                continue;
            }
            let c2 = c - c1;
            if self.attacked[a] {
                if r.get(c2, 0, 1).map(|v2| v1 + v2) == Some(target) {
                    self.recover(k, 0, c1, m1, s1, out);
                    self.recover(a, i + 1, c2, 0, 1, out);
                    return;
                }
            } else if (m, s) == (0, 0) {
                if r.get(c2, 0, 0).map(|v2| v1 + credit(m1, s1) + v2) == Some(target) {
                    self.recover(k, 0, c1, m1, s1, out);
                    self.recover(a, i + 1, c2, 0, 0, out);
                    return;
                }
            } else if m > m1 {
                for s2 in 0..2 {
                    if s1.max(s2) == s && r.get(c2, m - m1, s2).map(|v2| v1 + v2) == Some(target) {
                        self.recover(k, 0, c1, m1, s1, out);
                        self.recover(a, i + 1, c2, m - m1, s2, out);
                        return;
                    }
                }
            }
        }
        unreachable!("a finite entry always has a predecessor");
    }
}

/// First `(m, σ)` at budget `c` whose value satisfies `ok`.
fn find(t: &Table, c: usize, ok: impl Fn(usize, usize, u32) -> bool) -> (usize, usize) {
    for m in 0..t.mdim {
        for s in 0..2 {
            if let Some(v) = t.get(c, m, s) {
                if ok(m, s, v) {
                    return (m, s);
                }
            }
        }
    }
    unreachable!("a finite entry always has a predecessor")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDpSolution {
    pub protected: VertexSet,
    /// Number of saved vertices.
    pub saved: u64,
}

/// Tree DP solver for one instance and attack; keeps the per-component tables.
#[derive(Debug, Clone)]
pub struct ProtectTreeDp {
    states: Vec<DpState>,
    /// Components without an attacked vertex: saved outright.
    free: u64,
    lambda: usize,
}

impl ProtectTreeDp {
    /// Roots each component at its smallest vertex.
    pub fn new(inst: &Instance, attacked: &VertexSet, lambda: u64) -> Result<Self> {
        Self::with_roots(inst, attacked, lambda, &[])
    }

    /// Like [`ProtectTreeDp::new`], but a component containing one of `roots`
    /// is rooted there instead.
    pub fn with_roots(
        inst: &Instance,
        attacked: &VertexSet,
        lambda: u64,
        roots: &[usize],
    ) -> Result<Self> {
        let g = inst.graph();
        if g.is_directed() || !g.is_forest() {
            return Err(Error::Precondition("tree DP needs an undirected forest".into()));
        }
        if inst.b().iter().chain(inst.c_prot()).any(|&x| x != 1) {
            return Err(Error::Precondition(
                "tree DP needs unit benefits and unit protection costs".into(),
            ));
        }
        if let Some(&v) = attacked.iter().chain(roots).find(|&&v| v >= g.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        let lambda = lambda.min(g.n() as u64) as usize;
        let mut is_attacked = vec![false; g.n()];
        for &v in attacked {
            is_attacked[v] = true;
        }
        let mut states = Vec::new();
        let mut free = 0;
        for comp in g.connected_components() {
            if !comp.iter().any(|&v| is_attacked[v]) {
                free += comp.len() as u64;
                continue;
            }
            let root = roots
                .iter()
                .copied()
                .find(|r| comp.binary_search(r).is_ok())
                .unwrap_or(comp[0]);
            states.push(DpState::build(inst, &is_attacked, &comp, root, lambda));
        }
        Ok(ProtectTreeDp {
            states,
            free,
            lambda,
        })
    }

    pub fn states(&self) -> &[DpState] {
        &self.states
    }

    /// Splits the budget across components and backtracks an optimal plan.
    pub fn solve(&self) -> TreeDpSolution {
        let lambda = self.lambda;
        // per[k][c]: best of component k with at most c protections, and the exact count used.
        let per: Vec<Vec<(u32, usize)>> = self
            .states
            .iter()
            .map(|st| {
                let mut acc: Vec<(u32, usize)> = Vec::with_capacity(lambda + 1);
                for c in 0..=lambda {
                    let here = st.best_exact(c).map(|(v, _, _)| (v, c));
                    let prev = acc.last().copied();
                    acc.push(match (prev, here) {
                        (Some(p), Some(h)) if h.0 > p.0 => h,
                        (Some(p), _) => p,
                        (None, Some(h)) => h,
                        (None, None) => unreachable!("zero protections is always feasible"),
                    });
                }
                acc
            })
            .collect();
        let k = per.len();
        // split[j][c]: best over components j.. with c units.
        let mut split = vec![vec![0u32; lambda + 1]; k + 1];
        for j in (0..k).rev() {
            for c in 0..=lambda {
                split[j][c] = (0..=c)
                    .map(|x| per[j][x].0 + split[j + 1][c - x])
                    .max()
                    .unwrap_or(0);
            }
        }
        let mut protected = VertexSet::new();
        let mut c = lambda;
        for j in 0..k {
            let x = (0..=c)
                .find(|&x| per[j][x].0 + split[j + 1][c - x] == split[j][c])
                .expect("split value is attained");
            let exact = per[j][x].1;
            let st = &self.states[j];
            let (_, m, s) = st.best_exact(exact).expect("recorded budget is feasible");
            st.recover(st.root, 0, exact, m, s, &mut protected);
            c -= x;
        }
        TreeDpSolution {
            protected,
            saved: self.free + split[0][lambda] as u64,
        }
    }
}

/// Optimal protection of a unit-weight forest under attack `attacked` with
/// `lambda` protections.
pub fn protect_tree_dp(inst: &Instance, attacked: &VertexSet, lambda: u64) -> Result<TreeDpSolution> {
    Ok(ProtectTreeDp::new(inst, attacked, lambda)?.solve())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn tree(n: usize, edges: &[(usize, usize)]) -> Instance {
        Instance::unitary(Graph::new(n, false, edges).unwrap(), 0, 0, 0)
    }

    #[test]
    fn attacked_leaf_entry() {
        let inst = tree(1, &[]);
        let dp = ProtectTreeDp::new(&inst, &set(&[0]), 0).unwrap();
        let st = &dp.states()[0];
        assert_eq!(st.f(0, 0, 0, 1), Some(0));
        assert_eq!(st.f(0, 0, 1, 0), None);
        assert_eq!(dp.solve().saved, 0);
    }

    #[test]
    fn path_with_attacked_middle() {
        let inst = tree(3, &[(0, 1), (1, 2)]);
        let sol = protect_tree_dp(&inst, &set(&[1]), 1).unwrap();
        assert_eq!(sol.saved, 1);
        assert_eq!(sol.protected.len(), 1);
    }

    #[test]
    fn star_with_attacked_center() {
        let inst = tree(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        for j in 0..=5 {
            let sol = protect_tree_dp(&inst, &set(&[0]), j).unwrap();
            assert_eq!(sol.saved, j);
        }
    }

    #[test]
    fn protecting_a_cut_vertex_saves_its_side() {
        // 0 - 1 - 2 - 3 - 4 with the attack at 0: protect 1, save 4.
        let inst = tree(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let sol = protect_tree_dp(&inst, &set(&[0]), 1).unwrap();
        assert_eq!(sol.saved, 4);
        assert_eq!(sol.protected, set(&[1]));
        let rooted = ProtectTreeDp::with_roots(&inst, &set(&[0]), 1, &[3]).unwrap().solve();
        assert_eq!(rooted.saved, 4);
    }

    #[test]
    fn forest_budget_split() {
        // Two attacked paths and one untouched edge.
        let inst = tree(8, &[(0, 1), (1, 2), (3, 4), (4, 5), (6, 7)]);
        let sol = protect_tree_dp(&inst, &set(&[0, 3]), 2).unwrap();
        assert_eq!(sol.saved, 2 + 2 + 2);
        assert_eq!(sol.protected, set(&[1, 4]));
    }

    #[test]
    fn rejects_bad_inputs() {
        let cycle = tree(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(protect_tree_dp(&cycle, &set(&[0]), 1).is_err());
        let weighted = tree(2, &[(0, 1)]).with_benefits(vec![2, 1]).unwrap();
        assert!(protect_tree_dp(&weighted, &set(&[0]), 1).is_err());
    }
}
