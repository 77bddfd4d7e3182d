//! Game instances (graph, per-vertex weights, budgets) and strategy triples.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Level, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    b: Vec<u64>,
    c_vacc: Vec<u64>,
    c_att: Vec<u64>,
    c_prot: Vec<u64>,
    /// Vaccination budget Ω.
    pub omega: u64,
    /// Attack budget Φ.
    pub phi: u64,
    /// Protection budget Λ.
    pub lambda: u64,
    names: Option<Vec<String>>,
}

fn check_len(name: &'static str, v: &[u64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::WeightLength {
            name,
            got: v.len(),
            expected: n,
        });
    }
    Ok(())
}

impl Instance {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        graph: Graph,
        b: Vec<u64>,
        c_vacc: Vec<u64>,
        c_att: Vec<u64>,
        c_prot: Vec<u64>,
        omega: u64,
        phi: u64,
        lambda: u64,
    ) -> Result<Self> {
        let n = graph.n();
        check_len("b", &b, n)?;
        check_len("c_vacc", &c_vacc, n)?;
        check_len("c_att", &c_att, n)?;
        check_len("c_prot", &c_prot, n)?;
        Ok(Instance {
            graph,
            b,
            c_vacc,
            c_att,
            c_prot,
            omega,
            phi,
            lambda,
            names: None,
        })
    }

    /// All benefits and costs equal to 1.
    pub fn unitary(graph: Graph, omega: u64, phi: u64, lambda: u64) -> Self {
        let ones = vec![1; graph.n()];
        Instance {
            b: ones.clone(),
            c_vacc: ones.clone(),
            c_att: ones.clone(),
            c_prot: ones,
            graph,
            omega,
            phi,
            lambda,
            names: None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n() {
            return Err(Error::Malformed(format!(
                "names has length {}, expected {}",
                names.len(),
                self.n()
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::Malformed(format!("duplicate vertex name `{name}`")));
            }
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn with_budgets(mut self, omega: u64, phi: u64, lambda: u64) -> Self {
        self.omega = omega;
        self.phi = phi;
        self.lambda = lambda;
        self
    }

    pub fn with_benefits(mut self, b: Vec<u64>) -> Result<Self> {
        check_len("b", &b, self.n())?;
        self.b = b;
        Ok(self)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn c_vacc(&self) -> &[u64] {
        &self.c_vacc
    }

    pub fn c_att(&self) -> &[u64] {
        &self.c_att
    }

    pub fn c_prot(&self) -> &[u64] {
        &self.c_prot
    }

    pub fn costs(&self, level: Level) -> &[u64] {
        match level {
            Level::Vaccination => &self.c_vacc,
            Level::Attack => &self.c_att,
            Level::Protection => &self.c_prot,
        }
    }

    pub fn budget(&self, level: Level) -> u64 {
        match level {
            Level::Vaccination => self.omega,
            Level::Attack => self.phi,
            Level::Protection => self.lambda,
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of a vertex: its name if the instance has names, else its id.
    pub fn label(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_named(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|s| s == name)
    }

    /// Maps a list of labels to ids. Falls back to numeric ids when the
    /// instance carries no names.
    pub fn vertices_named<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        labels
            .iter()
            .map(|s| {
                let s = s.as_ref();
                let v = match &self.names {
                    Some(_) => self.vertex_named(s),
                    None => s.parse().ok(),
                };
                match v {
                    Some(v) if v < self.n() => Ok(v),
                    _ => Err(Error::Malformed(format!("unknown vertex `{s}`"))),
                }
            })
            .collect()
    }

    pub fn is_unitary(&self) -> bool {
        [&self.b, &self.c_vacc, &self.c_att, &self.c_prot]
            .iter()
            .all(|w| w.iter().all(|&x| x == 1))
    }

    pub fn total_benefit(&self) -> u64 {
        self.b.iter().sum()
    }

    pub fn benefit_of<'a>(&self, set: impl IntoIterator<Item = &'a usize>) -> u64 {
        set.into_iter().map(|&v| self.b[v]).sum()
    }

    pub fn cost_of<'a>(&self, level: Level, set: impl IntoIterator<Item = &'a usize>) -> u64 {
        let costs = self.costs(level);
        set.into_iter()
            .fold(0u64, |acc, &v| acc.saturating_add(costs[v]))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDoc = serde_json::from_str(text)?;
        doc.into_instance()
    }

    /// Canonical one-line JSON; `from_json(to_json(x)) == x`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("instance serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("instance serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("instance serializes")
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let doc: InstanceDoc = serde_json::from_value(value)?;
        doc.into_instance()
    }

    fn to_doc(&self) -> InstanceDoc {
        InstanceDoc {
            directed: self.graph.is_directed(),
            n: self.n(),
            arcs: self.graph.edge_list().into_iter().map(|(u, v)| [u, v]).collect(),
            b: Some(self.b.clone()),
            c_vacc: Some(self.c_vacc.clone()),
            c_att: Some(self.c_att.clone()),
            c_prot: Some(self.c_prot.clone()),
            omega: self.omega,
            phi: self.phi,
            lambda: self.lambda,
            names: self.names.clone(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    directed: bool,
    n: usize,
    arcs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c_vacc: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c_att: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c_prot: Option<Vec<u64>>,
    omega: u64,
    phi: u64,
    lambda: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl InstanceDoc {
    fn into_instance(self) -> Result<Instance> {
        let arcs: Vec<(usize, usize)> = self.arcs.iter().map(|a| (a[0], a[1])).collect();
        let graph = Graph::new(self.n, self.directed, &arcs)?;
        let ones = || vec![1; self.n];
        let inst = Instance::new(
            graph,
            self.b.unwrap_or_else(ones),
            self.c_vacc.unwrap_or_else(ones),
            self.c_att.unwrap_or_else(ones),
            self.c_prot.unwrap_or_else(ones),
            self.omega,
            self.phi,
            self.lambda,
        )?;
        match self.names {
            Some(names) => inst.with_names(names),
            None => Ok(inst),
        }
    }
}

/// Vaccinated, attacked and protected sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct StrategyTriple {
    pub d: VertexSet,
    pub i: VertexSet,
    pub p: VertexSet,
}

impl StrategyTriple {
    pub fn new(d: VertexSet, i: VertexSet, p: VertexSet) -> Self {
        StrategyTriple { d, i, p }
    }

    pub fn from_slices(d: &[usize], i: &[usize], p: &[usize]) -> Self {
        StrategyTriple {
            d: d.iter().copied().collect(),
            i: i.iter().copied().collect(),
            p: p.iter().copied().collect(),
        }
    }

    pub fn attack_only(i: VertexSet) -> Self {
        StrategyTriple {
            i,
            ..Default::default()
        }
    }

    /// Range, disjointness and budget checks against `inst`.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        self.validate_sets(inst)?;
        for (level, set) in [
            (Level::Vaccination, &self.d),
            (Level::Attack, &self.i),
            (Level::Protection, &self.p),
        ] {
            let used = inst.cost_of(level, set);
            let budget = inst.budget(level);
            if used > budget {
                return Err(Error::BudgetViolation {
                    level,
                    used,
                    budget,
                });
            }
        }
        Ok(())
    }

    /// Range and disjointness only; budgets are not checked.
    pub fn validate_sets(&self, inst: &Instance) -> Result<()> {
        let n = inst.n();
        for &v in self.d.iter().chain(&self.i).chain(&self.p) {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        let pairs = [
            (&self.d, Level::Vaccination, &self.i, Level::Attack),
            (&self.i, Level::Attack, &self.p, Level::Protection),
            (&self.d, Level::Vaccination, &self.p, Level::Protection),
        ];
        for (a, la, b, lb) in pairs {
            if let Some(&v) = a.intersection(b).next() {
                return Err(Error::Overlap {
                    vertex: v,
                    first: la,
                    second: lb,
                });
            }
        }
        Ok(())
    }
}
