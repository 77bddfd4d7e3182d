//! CNF formulas with optional quantifier blocks, DIMACS I/O and brute-force
//! evaluation of the one-, two- and three-block quantifier prefixes.
//!
//! Literals use DIMACS conventions: variables are `1..=num_vars`, a negative
//! literal is the negation.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Blocks {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
    blocks: Option<Blocks>,
    names: Option<Vec<String>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for clause in &clauses {
            for &lit in clause {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > num_vars {
                    return Err(Error::Malformed(format!(
                        "literal {lit} does not reference one of {num_vars} variables"
                    )));
                }
            }
        }
        Ok(CnfFormula {
            num_vars,
            clauses,
            blocks: None,
            names: None,
        })
    }

    /// Declares the quantifier blocks. `z` may be empty for two-block
    /// formulas. Blocks must be disjoint and cover every variable.
    pub fn with_blocks(mut self, x: Vec<usize>, y: Vec<usize>, z: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; self.num_vars + 1];
        for &v in x.iter().chain(&y).chain(&z) {
            if v == 0 || v > self.num_vars {
                return Err(Error::Malformed(format!("block variable {v} is not declared")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Malformed(format!("variable {v} appears in two blocks")));
            }
        }
        if let Some(v) = (1..=self.num_vars).find(|&v| !seen[v]) {
            return Err(Error::Malformed(format!("variable {v} is in no block")));
        }
        self.blocks = Some(Blocks { x, y, z });
        Ok(self)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.num_vars {
            return Err(Error::Malformed(format!(
                "{} names for {} variables",
                names.len(),
                self.num_vars
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn blocks(&self) -> Option<&Blocks> {
        self.blocks.as_ref()
    }

    pub fn var_name(&self, var: usize) -> String {
        match &self.names {
            Some(names) => names[var - 1].clone(),
            None => var.to_string(),
        }
    }

    /// `assignment[v - 1]` is the value of variable `v`.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&lit| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0))
        })
    }

    pub fn require_width(&self, lo: usize, hi: usize) -> Result<()> {
        match self.clauses.iter().position(|c| c.len() < lo || c.len() > hi) {
            Some(k) => Err(Error::Precondition(format!(
                "clause {} has {} literals, expected {}",
                k + 1,
                self.clauses[k].len(),
                if lo == hi { lo.to_string() } else { format!("{lo} to {hi}") }
            ))),
            None => Ok(()),
        }
    }

    pub fn require_blocks(&self, three: bool) -> Result<&Blocks> {
        let blocks = self
            .blocks
            .as_ref()
            .ok_or_else(|| Error::Precondition("formula has no quantifier blocks".into()))?;
        let z_ok = if three { !blocks.z.is_empty() } else { blocks.z.is_empty() };
        if blocks.x.is_empty() || blocks.y.is_empty() || !z_ok {
            let want = if three { "non-empty X, Y and Z" } else { "non-empty X and Y, no Z" };
            return Err(Error::Precondition(format!("blocks must be {want}")));
        }
        Ok(blocks)
    }

    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut blocks: Option<Blocks> = None;
        let mut names: Option<Vec<String>> = None;
        let mut literals = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            if let Some(comment) = line.strip_prefix('c') {
                let comment = comment.trim();
                if let Some(spec) = comment.strip_prefix("blocks") {
                    blocks = Some(parse_blocks(spec)?);
                } else if let Some(list) = comment.strip_prefix("names") {
                    names = Some(list.split_whitespace().map(str::to_string).collect());
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 || parts[0] != "cnf" {
                    return Err(Error::Malformed(format!("bad problem line `{line}`")));
                }
                header = Some((parse_num(parts[1])?, parse_num(parts[2])?));
                continue;
            }
            for tok in line.split_whitespace() {
                literals.push(
                    tok.parse::<i32>()
                        .map_err(|_| Error::Malformed(format!("bad literal `{tok}`")))?,
                );
            }
        }
        let (num_vars, num_clauses) =
            header.ok_or_else(|| Error::Malformed("missing `p cnf` line".into()))?;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for lit in literals {
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != num_clauses {
            return Err(Error::Malformed(format!(
                "header declares {num_clauses} clauses, found {}",
                clauses.len()
            )));
        }
        let mut formula = CnfFormula::new(num_vars, clauses)?;
        if let Some(b) = blocks {
            formula = formula.with_blocks(b.x, b.y, b.z)?;
        }
        match names {
            Some(names) => formula.with_names(names),
            None => Ok(formula),
        }
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        if let Some(b) = &self.blocks {
            let join = |vs: &[usize]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
            let _ = write!(out, "c blocks X: {} / Y: {}", join(&b.x), join(&b.y));
            if !b.z.is_empty() {
                let _ = write!(out, " / Z: {}", join(&b.z));
            }
            out.push('\n');
        }
        if let Some(names) = &self.names {
            let _ = writeln!(out, "c names {}", names.join(" "));
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

fn parse_num(tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Malformed(format!("expected a count, got `{tok}`")))
}

fn parse_blocks(spec: &str) -> Result<Blocks> {
    let mut blocks = Blocks::default();
    for part in spec.split('/') {
        let (name, vars) = part
            .split_once(':')
            .ok_or_else(|| Error::Malformed(format!("bad block `{}`", part.trim())))?;
        let vars = vars.split_whitespace().map(parse_num).collect::<Result<Vec<_>>>()?;
        match name.trim() {
            "X" => blocks.x = vars,
            "Y" => blocks.y = vars,
            "Z" => blocks.z = vars,
            other => return Err(Error::Malformed(format!("unknown block `{other}`"))),
        }
    }
    Ok(blocks)
}

/// Writes the bits of `mask` into `assignment` at the given variables.
fn assign(assignment: &mut [bool], vars: &[usize], mask: u64) {
    for (k, &v) in vars.iter().enumerate() {
        assignment[v - 1] = mask >> k & 1 == 1;
    }
}

fn check_cap(formula: &CnfFormula, max_booleans: usize) -> Result<()> {
    if formula.num_vars > max_booleans {
        return Err(Error::CapExceeded(format!(
            "{} variables, oracle cap is {max_booleans}",
            formula.num_vars
        )));
    }
    Ok(())
}

/// First satisfying assignment in binary-counter order.
pub fn solve_sat(formula: &CnfFormula, max_booleans: usize) -> Result<Option<Vec<bool>>> {
    check_cap(formula, max_booleans)?;
    let vars: Vec<usize> = (1..=formula.num_vars).collect();
    let mut a = vec![false; formula.num_vars];
    for mask in 0..1u64 << vars.len() {
        assign(&mut a, &vars, mask);
        if formula.eval(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// With `a` fixed on X: does every Y assignment leave E unsatisfied?
pub fn forall_y_unsat(formula: &CnfFormula, blocks: &Blocks, a: &mut [bool]) -> bool {
    (0..1u64 << blocks.y.len()).all(|ym| {
        assign(a, &blocks.y, ym);
        !formula.eval(a)
    })
}

/// With `a` fixed on X: does every Y assignment admit a satisfying Z?
pub fn forall_y_exists_z(formula: &CnfFormula, blocks: &Blocks, a: &mut [bool]) -> bool {
    (0..1u64 << blocks.y.len()).all(|ym| {
        assign(a, &blocks.y, ym);
        (0..1u64 << blocks.z.len()).any(|zm| {
            assign(a, &blocks.z, zm);
            formula.eval(a)
        })
    })
}

/// ∃X ∀Y ¬E. Returns the first X assignment that works (other entries false).
pub fn solve_b2cnf(formula: &CnfFormula, max_booleans: usize) -> Result<Option<Vec<bool>>> {
    check_cap(formula, max_booleans)?;
    let blocks = formula.require_blocks(false)?.clone();
    solve_exists(formula, &blocks, |a| forall_y_unsat(formula, &blocks, a))
}

/// ∃X ∀Y ∃Z E.
pub fn solve_b3cnf(formula: &CnfFormula, max_booleans: usize) -> Result<Option<Vec<bool>>> {
    check_cap(formula, max_booleans)?;
    let blocks = formula.require_blocks(true)?.clone();
    solve_exists(formula, &blocks, |a| forall_y_exists_z(formula, &blocks, a))
}

fn solve_exists(
    formula: &CnfFormula,
    blocks: &Blocks,
    mut inner: impl FnMut(&mut [bool]) -> bool,
) -> Result<Option<Vec<bool>>> {
    let mut a = vec![false; formula.num_vars];
    for xm in 0..1u64 << blocks.x.len() {
        assign(&mut a, &blocks.x, xm);
        if inner(&mut a) {
            let mut witness = vec![false; formula.num_vars];
            assign(&mut witness, &blocks.x, xm);
            return Ok(Some(witness));
        }
    }
    Ok(None)
}
