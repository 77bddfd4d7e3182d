//! Directed or undirected simple graphs over dense vertex ids `0..n`.
//!
//! Undirected graphs keep both orientations of every edge in the adjacency
//! lists, so propagation code only ever follows out-arcs. The `directed`
//! flag is kept for semantics (components, forest checks) and serialization.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type VertexSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from a list of arcs (directed) or edges (undirected).
    ///
    /// For undirected graphs each edge must be listed once; listing both
    /// `(u, v)` and `(v, u)` is reported as a duplicate.
    pub fn new(n: usize, directed: bool, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            if !seen.insert(key) {
                return Err(Error::DuplicateArc(u, v));
            }
            out[u].push(v);
            inc[v].push(u);
            if !directed {
                out[v].push(u);
                inc[u].push(v);
            }
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Graph { n, directed, out, inc })
    }

    /// Like [`Graph::new`] but silently drops repeated arcs. Gadget builders
    /// use this where a clause mentions the same literal twice.
    pub fn from_arcs_dedup(n: usize, directed: bool, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut unique = BTreeSet::new();
        for &(u, v) in arcs {
            unique.insert(if directed { (u, v) } else { (u.min(v), u.max(v)) });
        }
        let arcs: Vec<_> = unique.into_iter().collect();
        Graph::new(n, directed, &arcs)
    }

    pub fn empty(n: usize, directed: bool) -> Self {
        Graph {
            n,
            directed,
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    /// Every stored arc, including both orientations of undirected edges.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// Arcs as they are serialized: undirected edges once, with `u < v`.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.arcs()
            .filter(|&(u, v)| self.directed || u < v)
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Neighbours ignoring arc direction, sorted and deduplicated.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut all: Vec<usize> = self.out[v].iter().chain(&self.inc[v]).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    fn check_range<'a>(&self, set: impl IntoIterator<Item = &'a usize>) -> Result<()> {
        for &v in set {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        Ok(())
    }

    /// Deletes `removed` together with incident arcs.
    pub fn induced_subgraph(&self, removed: &VertexSet) -> Result<InducedSubgraph> {
        self.check_range(removed)?;
        let mut old_to_new = vec![None; self.n];
        let mut new_to_old = Vec::with_capacity(self.n - removed.len());
        for v in (0..self.n).filter(|v| !removed.contains(v)) {
            old_to_new[v] = Some(new_to_old.len());
            new_to_old.push(v);
        }
        let m = new_to_old.len();
        let mut out = vec![Vec::new(); m];
        let mut inc = vec![Vec::new(); m];
        for (u, v) in self.arcs() {
            if let (Some(a), Some(b)) = (old_to_new[u], old_to_new[v]) {
                out[a].push(b);
                inc[b].push(a);
            }
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
        }
        Ok(InducedSubgraph {
            graph: Graph {
                n: m,
                directed: self.directed,
                out,
                inc,
            },
            old_to_new,
            new_to_old,
        })
    }

    /// Weakly connected components, largest first, ties broken by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.out[u].iter().chain(&self.inc[u]) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        comps
    }

    /// Vertices reachable from `sources` along arc directions, sources included.
    pub fn reachable_set(&self, sources: &VertexSet) -> Result<VertexSet> {
        self.check_range(sources)?;
        let mut seen = vec![false; self.n];
        let mut queue: VecDeque<usize> = sources.iter().copied().collect();
        for &s in sources {
            seen[s] = true;
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.out[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        Ok((0..self.n).filter(|&v| seen[v]).collect())
    }

    /// True for an undirected graph without cycles (a forest).
    pub fn is_forest(&self) -> bool {
        if self.directed {
            return false;
        }
        let edges = self.arc_count() / 2;
        edges + self.connected_components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.connected_components().len() <= 1
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn order, smallest available vertex first. `None` if a directed
    /// cycle exists; undirected graphs with an edge always have one.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = self.inc.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = ready.pop_first() {
            order.push(u);
            for &w in &self.out[u] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// Directed forest of arborescences: acyclic and every in-degree ≤ 1.
    pub fn is_arborescence_forest(&self) -> bool {
        self.directed && self.inc.iter().all(|p| p.len() <= 1) && self.is_acyclic()
    }
}

/// Result of deleting a vertex set: the remaining graph plus the id maps.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl InducedSubgraph {
    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|&v| self.new_to_old[v]).collect()
    }

    pub fn project(&self, set: &VertexSet) -> VertexSet {
        set.iter().filter_map(|&v| self.old_to_new[v]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn rejects_bad_arcs() {
        assert!(matches!(
            Graph::new(6, true, &[(0, 7)]),
            Err(Error::VertexOutOfRange { vertex: 7, n: 6 })
        ));
        assert!(matches!(Graph::new(3, true, &[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            Graph::new(3, true, &[(0, 1), (0, 1)]),
            Err(Error::DuplicateArc(0, 1))
        ));
        assert!(matches!(
            Graph::new(3, false, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateArc(1, 0))
        ));
        // antiparallel arcs are fine in a digraph
        assert!(Graph::new(3, true, &[(0, 1), (1, 0)]).is_ok());
    }

    #[test]
    fn undirected_storage_is_symmetric() {
        let g = Graph::new(3, false, &[(2, 0), (0, 1)]).unwrap();
        for (u, v) in g.arcs() {
            assert!(g.has_arc(v, u));
        }
        assert_eq!(g.edge_list(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn induced_identity_and_annihilation() {
        let g = Graph::new(4, false, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let same = g.induced_subgraph(&VertexSet::new()).unwrap();
        assert_eq!(same.graph, g);
        assert_eq!(same.new_to_old, vec![0, 1, 2, 3]);
        let none = g.induced_subgraph(&set(&[0, 1, 2, 3])).unwrap();
        assert_eq!(none.graph.n(), 0);
        assert_eq!(none.graph.arc_count(), 0);
        assert!(g.induced_subgraph(&set(&[9])).is_err());
    }

    #[test]
    fn components_ordering() {
        let edgeless = Graph::empty(4, false);
        assert_eq!(edgeless.connected_components(), vec![vec![0], vec![1], vec![2], vec![3]]);
        let g = Graph::new(4, false, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2], vec![3]]);
        let h = Graph::new(5, false, &[(3, 4), (0, 1)]).unwrap();
        assert_eq!(h.connected_components(), vec![vec![0, 1], vec![3, 4], vec![2]]);
    }

    #[test]
    fn reachability_follows_directions() {
        let g = Graph::new(3, true, &[(0, 1), (2, 1)]).unwrap();
        assert_eq!(g.reachable_set(&set(&[0])).unwrap(), set(&[0, 1]));
        assert_eq!(g.reachable_set(&set(&[1])).unwrap(), set(&[1]));
        assert_eq!(g.reachable_set(&VertexSet::new()).unwrap(), VertexSet::new());
    }

    #[test]
    fn shape_predicates() {
        let path = Graph::new(3, false, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.is_tree());
        let cycle = Graph::new(3, false, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!cycle.is_forest());
        let arb = Graph::new(4, true, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        assert!(arb.is_arborescence_forest());
        let dag = Graph::new(3, true, &[(0, 2), (1, 2)]).unwrap();
        assert!(dag.is_acyclic() && !dag.is_arborescence_forest());
        let cyc = Graph::new(2, true, &[(0, 1), (1, 0)]).unwrap();
        assert!(!cyc.is_acyclic());
    }
}
