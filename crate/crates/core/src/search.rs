//! Backtracking search for maps between finite carriers that satisfy
//! "commutes with" constraints.
//!
//! Positions are assigned in ascending order and values are tried in ascending
//! order. Propagation only removes infeasible branches, so solutions are
//! produced in lexicographic order of their image arrays.

use crate::algebra::{encode_tuple, FiniteAlgebra, Odometer};
use crate::error::{Error, Result};

/// Default limit on search nodes and enumerated candidates.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Environment variable that overrides [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "OMEGA_BUDGET";

/// Budget from `OMEGA_BUDGET`, falling back to the default.
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

const UNSET: usize = usize::MAX;

/// `h(source[t]) == target[h(t)]` for every source tuple `t`.
#[derive(Debug, Clone)]
struct Constraint {
    arity: usize,
    source: Vec<usize>,
    target: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct MapSearch {
    n: usize,
    m: usize,
    constraints: Vec<Constraint>,
    injective: bool,
    allowed: Option<Vec<Vec<bool>>>,
    fixed: Vec<(usize, usize)>,
    budget: u64,
}

struct State {
    h: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
    nodes: u64,
}

impl MapSearch {
    pub fn new(n: usize, m: usize) -> Self {
        MapSearch {
            n,
            m,
            constraints: Vec::new(),
            injective: false,
            allowed: None,
            fixed: Vec::new(),
            budget: DEFAULT_BUDGET,
        }
    }

    /// Maps that are homomorphisms `a → b`.
    pub fn homomorphisms(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Self> {
        crate::algebra::same_domain(a, b)?;
        let mut s = MapSearch::new(a.size(), b.size());
        for op in 0..a.domain().len() {
            s.constrain(a.domain().arity(op), a.table(op).to_vec(), b.table(op).to_vec());
        }
        Ok(s)
    }

    /// Adds `h(source(t)) = target(h(t))`, tables in row-major tuple order.
    pub fn constrain(&mut self, arity: usize, source: Vec<usize>, target: Vec<usize>) {
        self.constraints.push(Constraint {
            arity,
            source,
            target,
        });
    }

    pub fn injective(mut self, yes: bool) -> Self {
        self.injective = yes;
        self
    }

    /// `allowed[x][v]` says whether `x ↦ v` may be tried.
    pub fn allowed(mut self, allowed: Vec<Vec<bool>>) -> Self {
        self.allowed = Some(allowed);
        self
    }

    pub fn fix(mut self, x: usize, v: usize) -> Self {
        self.fixed.push((x, v));
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Calls `visit` on each solution in lexicographic order until it returns
    /// `false`. Returns the number of search nodes used.
    pub fn run(&self, mut visit: impl FnMut(&[usize]) -> bool) -> Result<u64> {
        let mut st = State {
            h: vec![UNSET; self.n],
            used: vec![false; self.m],
            trail: Vec::new(),
            nodes: 0,
        };
        if self.n > 0 && self.m == 0 {
            return Ok(0);
        }
        for &(x, v) in &self.fixed {
            if x >= self.n || v >= self.m || !self.assign(&mut st, x, v) {
                return Ok(0);
            }
        }
        if !self.propagate(&mut st) {
            return Ok(0);
        }
        self.dfs(&mut st, 0, &mut visit)?;
        Ok(st.nodes)
    }

    pub fn first(&self) -> Result<Option<Vec<usize>>> {
        let mut found = None;
        self.run(|h| {
            found = Some(h.to_vec());
            false
        })?;
        Ok(found)
    }

    pub fn all(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.run(|h| {
            out.push(h.to_vec());
            true
        })?;
        Ok(out)
    }

    fn permits(&self, st: &State, x: usize, v: usize) -> bool {
        if self.injective && st.used[v] {
            return false;
        }
        match &self.allowed {
            Some(a) => a[x][v],
            None => true,
        }
    }

    fn assign(&self, st: &mut State, x: usize, v: usize) -> bool {
        if st.h[x] != UNSET {
            return st.h[x] == v;
        }
        if !self.permits(st, x, v) {
            return false;
        }
        st.h[x] = v;
        st.used[v] = true;
        st.trail.push(x);
        true
    }

    fn undo(&self, st: &mut State, mark: usize) {
        while st.trail.len() > mark {
            let x = st.trail.pop().expect("trail entry");
            let v = st.h[x];
            st.used[v] = false;
            st.h[x] = UNSET;
        }
    }

    fn propagate(&self, st: &mut State) -> bool {
        let mut mapped = Vec::new();
        loop {
            let mut changed = false;
            for c in &self.constraints {
                let mut odo = Odometer::new(self.n, c.arity);
                let mut idx = 0;
                while let Some(args) = odo.next() {
                    let t = idx;
                    idx += 1;
                    if args.iter().any(|&a| st.h[a] == UNSET) {
                        continue;
                    }
                    mapped.clear();
                    mapped.extend(args.iter().map(|&a| st.h[a]));
                    let want = c.target[encode_tuple(self.m, &mapped)];
                    let out = c.source[t];
                    if st.h[out] == UNSET {
                        if !self.assign(st, out, want) {
                            return false;
                        }
                        changed = true;
                    } else if st.h[out] != want {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn dfs(
        &self,
        st: &mut State,
        from: usize,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> Result<bool> {
        let pos = match (from..self.n).find(|&x| st.h[x] == UNSET) {
            Some(p) => p,
            None => return Ok(!visit(&st.h)),
        };
        for v in 0..self.m {
            if !self.permits(st, pos, v) {
                continue;
            }
            st.nodes += 1;
            if st.nodes > self.budget {
                return Err(Error::Budget(format!(
                    "map search exceeded {} nodes",
                    self.budget
                )));
            }
            let mark = st.trail.len();
            self.assign(st, pos, v);
            if self.propagate(st) && self.dfs(st, pos + 1, visit)? {
                return Ok(true);
            }
            self.undo(st, mark);
        }
        Ok(false)
    }
}

/// All homomorphisms `a → b` in lexicographic order.
pub fn homomorphisms(a: &FiniteAlgebra, b: &FiniteAlgebra, budget: u64) -> Result<Vec<Vec<usize>>> {
    MapSearch::homomorphisms(a, b)?.budget(budget).all()
}

/// All automorphisms of `a` in lexicographic order.
pub fn automorphisms(a: &FiniteAlgebra, budget: u64) -> Result<Vec<Vec<usize>>> {
    MapSearch::homomorphisms(a, a)?
        .injective(true)
        .budget(budget)
        .all()
}
